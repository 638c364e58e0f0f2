"""Run-time limits shared by the engine: degree cap and scan bound."""
from __future__ import annotations

import contextlib
import contextvars
import os

DEFAULT_DEGREE_CAP = 12
DEFAULT_BOUND = 4
DEFAULT_ORACLE_DEGREE = 8

_degree_cap = contextvars.ContextVar("degree_cap", default=None)


class TruncationExceeded(RuntimeError):
    """A Groebner loop needed internal degrees beyond the degree cap."""


def degree_cap() -> int:
    cap = _degree_cap.get()
    if cap is not None:
        return cap
    env = os.environ.get("LINKAGE_DEGREE_CAP")
    if env:
        return int(env)
    return DEFAULT_DEGREE_CAP


@contextlib.contextmanager
def degree_cap_set(cap: int):
    token = _degree_cap.set(cap)
    try:
        yield
    finally:
        _degree_cap.reset(token)
