"""Graded linkage calculus over quotients of polynomial rings over F_p.

Typical use::

    from linkage import GradedRing, PresentedModule, report
    R = GradedRing.make("x,y", ["x*y"])
    print(report(PresentedModule.cyclic(R, ["x"])))
"""
from .config import TruncationExceeded
from .homalg import (
    BettiTable,
    HilbertSeries,
    PresentedModule,
    betti,
    dual,
    ext,
    hilbert_series,
    hom,
    minimalize,
    resolve,
    tor,
)
from .invariants import (
    BoundedVerdict,
    canonical_module,
    depth,
    dim,
    gdim,
    gk_dim,
    grade,
    is_gorenstein_ring,
    is_reduced_G_perfect,
    is_semidualizing,
    local_cohomology,
    reduced_grade,
    report,
    satisfies_tilde_S,
)
from .operators import (
    congruent,
    evaluation_map,
    is_horizontally_linked,
    is_stable,
    lambda_,
    link_via_ideal,
    linked_by_ideal,
    syzygy,
    t_functor,
    transpose,
)
from .ring import GradedRing, Polynomial, PolynomialRing, PrimeField
from .session import parse_session, run_session, run_text
from .theorems import THEOREMS, verify

__version__ = "0.1.0"
