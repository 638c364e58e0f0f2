import sys

import pytest

from linkage.homalg import PresentedModule
from linkage.ring import GradedRing


def make_ring(variables, ideal=()):
    return GradedRing.make(variables, list(ideal))


@pytest.fixture(scope="session")
def S2():
    return make_ring("x,y")


@pytest.fixture(scope="session")
def S3():
    return make_ring("x,y,z")


@pytest.fixture(scope="session")
def Rxy():
    return make_ring("x,y", ["x*y"])


@pytest.fixture(scope="session")
def R3():
    return make_ring("x,y,z", ["x*y"])


@pytest.fixture(scope="session")
def CI():
    return make_ring("x,y,z", ["x^2", "y*z"])


@pytest.fixture(scope="session")
def NG1():
    return make_ring("x,y", ["x^2", "x*y"])


@pytest.fixture(scope="session")
def NG2():
    return make_ring("x,y,z", ["x^2", "x*y", "y^2"])


def cyclic(ring, *gens, shift=0):
    return PresentedModule.cyclic(ring, list(gens), shift)


def free(ring, *degrees):
    return PresentedModule.free(ring, degrees or (0,))


def residue_field(ring):
    return PresentedModule.cyclic(ring, list(ring.variables))


def ideal_module(ring, gens):
    """The ideal generated by ``gens`` as a module (its minimal presentation)."""
    from linkage.session import parse_session
    names = ",".join(ring.variables)
    defn = f"F{ring.p}[{names}]"
    if ring.ideal:
        defn += "/(" + ", ".join(str(f) for f in ring.ideal) + ")"
    s = parse_session(f"ring A = {defn}; module I = image ({', '.join(gens)});")
    return s.modules["I"]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, title, detail = results[n]
        terminalreporter.write_line(f"criterion {n:>2} {status}: {title} ({detail})")
