"""Prime fields, monomial orders, sparse polynomials and graded rings.

Monomials are exponent tuples.  A polynomial is a mapping from monomials to
nonzero coefficients in ``[0, p)``; the public :class:`Polynomial` wraps such
a mapping and never mutates it.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, Sequence, Tuple

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, int]


class RingError(ValueError):
    """Raised for malformed ring data: bad modulus, mixed contexts, parse errors."""


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = 101

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingError(f"modulus {self.p} is not prime")
        if self.p >= 2**31:
            raise RingError(f"modulus {self.p} too large (must be < 2^31)")

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def __str__(self):
        return f"F{self.p}"


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent vectors of length n and total degree d (d < 0 gives none)."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex (default) or lex on exponent tuples.

    ``key(m)`` is a tuple such that a larger key means a larger monomial.
    """

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise RingError(f"unknown monomial order {self.kind!r}")

    def key(self, m: Monomial):
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))

    def compare(self, m1: Monomial, m2: Monomial) -> Ordering:
        if len(m1) != len(m2):
            raise RingError("monomials over different numbers of variables")
        k1, k2 = self.key(m1), self.key(m2)
        if k1 == k2:
            return Ordering.EQ
        return Ordering.GT if k1 > k2 else Ordering.LT


# ---------------------------------------------------------------- raw terms
# Internal helpers on plain dicts; callers guarantee a common modulus.

def t_add(f: Terms, g: Terms, p: int, scale: int = 1) -> Terms:
    """f + scale*g."""
    out = dict(f)
    for m, c in g.items():
        v = (out.get(m, 0) + scale * c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def t_mul(f: Terms, g: Terms, p: int) -> Terms:
    out: Terms = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = mono_mul(m1, m2)
            v = (out.get(m, 0) + c1 * c2) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def t_scale_shift(f: Terms, c: int, m: Monomial, p: int) -> Terms:
    """c * m * f."""
    if c % p == 0:
        return {}
    return {mono_mul(m, mf): (c * cf) % p for mf, cf in f.items()}


# ------------------------------------------------------------------ parsing
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        num, name, sym = mt.groups()
        start = mt.start(mt.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("sym", sym, start))
        pos = mt.end()
    return out


class _PolyParser:
    def __init__(self, ring: "PolynomialRing", text: str):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg):
        col = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        raise RingError(f"{msg} at column {col + 1} in {self.text!r}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> "Polynomial":
        if not self.toks:
            self.error("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        kind, val, _ = self.peek()
        sign = 1
        if kind == "sym" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                f = f * self.power()
            else:
                return f

    def power(self):
        f = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, e, _ = self.take()
            if kind != "num":
                self.i -= 1
                self.error("expected integer exponent")
            f = f**e
        return f

    def atom(self):
        kind, val, _ = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "name":
            if val not in self.ring.variables:
                self.i -= 1
                self.error(f"unknown variable {val!r}")
            return self.ring.var(val)
        if kind == "sym" and val == "(":
            f = self.expr()
            kind, val, _ = self.take()
            if val != ")":
                self.i -= 1
                self.error("expected ')'")
            return f
        if kind == "sym" and val == "-":
            return -self.atom()
        self.i -= 1
        self.error(f"unexpected token {val!r}")


# --------------------------------------------------------------------- rings
@dataclass(frozen=True)
class PolynomialRing:
    """The ambient ring F_p[x_1..x_n], all variables of degree 1."""

    field: PrimeField
    variables: Tuple[str, ...]
    order: MonomialOrder = MonomialOrder()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise RingError("repeated variable name")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def element(self, terms: Terms) -> "Polynomial":
        return Polynomial(self, {m: c % self.p for m, c in terms.items() if c % self.p})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], c: int = 1) -> "Polynomial":
        return self.element({tuple(exps): c})

    def parse(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, int):
            return self.constant(text)
        return _PolyParser(self, str(text)).parse()

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial over a :class:`PolynomialRing`."""

    __slots__ = ("ring", "_t", "_hash", "_sorted")

    def __init__(self, ring: PolynomialRing, terms: Terms):
        self.ring = ring
        self._t = terms
        self._hash = None
        self._sorted = None

    # -- structure
    @property
    def data(self) -> Terms:
        """The underlying monomial -> coefficient mapping (do not mutate)."""
        return self._t

    @property
    def terms(self) -> Tuple[Tuple[int, Monomial], ...]:
        """(coeff, monomial) pairs, strictly descending in the ring order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = tuple((self._t[m], m) for m in sorted(self._t, key=key, reverse=True))
        return self._sorted

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._t)

    def degree(self) -> int:
        """Total degree (-1 for zero)."""
        return max((sum(m) for m in self._t), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._t}) <= 1

    def leading_term(self):
        return self.terms[0] if self._t else None

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError(f"mixed ring contexts: {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, t_add(self._t, other._t, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: (-c) % p for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, t_add(self._t, other._t, self.ring.p, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.ring.p
            c = other % p
            return Polynomial(self.ring, {m: v * c % p for m, v in self._t.items()} if c else {})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, t_mul(self._t, other._t, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise RingError("negative exponent")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __str__(self):
        if not self._t:
            return "0"
        names = self.ring.variables
        p = self.ring.p
        parts = []
        for c, m in self.terms:
            neg = c > p // 2 and p > 2
            a = p - c if neg else c
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if a != 1 or not factors:
                factors.insert(0, str(a))
            parts.append(("-" if neg else "+", "*".join(factors)))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    """Dispatch for add/sub/mul/scale."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        if not isinstance(g, Polynomial):
            raise RingError("mul expects a polynomial; use 'scale' for scalars")
        return f * g
    if op == "scale":
        if not isinstance(g, int):
            raise RingError("scale expects an integer scalar")
        return f * g
    raise RingError(f"unknown operation {op!r}")


class GradedRing:
    """R = S/I for S a standard graded polynomial ring and I homogeneous.

    The graded maximal ideal is (x_1, ..., x_n).  Instances are immutable;
    equality and hashing go through :attr:`key`.
    """

    def __init__(self, ambient: PolynomialRing, ideal: Iterable = ()):
        gens = []
        for f in ideal:
            f = ambient.parse(f)
            if f.ring != ambient:
                raise RingError("ideal generator from another ring")
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise RingError(f"defining ideal generator {f} is not homogeneous")
            if f.degree() == 0:
                raise RingError("defining ideal is the unit ideal")
            gens.append(f)
        self.ambient = ambient
        self.ideal: Tuple[Polynomial, ...] = tuple(gens)

    @classmethod
    def make(cls, variables, ideal=(), p: int = 101, order: str = "grevlex") -> "GradedRing":
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        S = PolynomialRing(PrimeField(p), tuple(variables), MonomialOrder(order))
        return cls(S, [S.parse(f) for f in ideal])

    @property
    def field(self) -> PrimeField:
        return self.ambient.field

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def variables(self):
        return self.ambient.variables

    @property
    def order(self) -> MonomialOrder:
        return self.ambient.order

    @property
    def is_ambient(self) -> bool:
        return not self.ideal

    @cached_property
    def key(self):
        return (
            self.p,
            self.variables,
            self.order.kind,
            tuple(sorted(tuple(sorted(f.data.items())) for f in self.ideal)),
        )

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def parse(self, text) -> Polynomial:
        return self.ambient.parse(text)

    def ambient_ring(self) -> "GradedRing":
        return GradedRing(self.ambient, ())

    def quotient(self, gens: Iterable) -> "GradedRing":
        """R/(gens), as a new ring over the same ambient polynomial ring."""
        extra = [self.parse(g) for g in gens]
        return GradedRing(self.ambient, list(self.ideal) + extra)

    def maximal_ideal(self) -> list:
        return self.ambient.gens()

    def __str__(self):
        base = str(self.ambient)
        if self.ideal:
            base += "/(" + ", ".join(str(f) for f in self.ideal) + ")"
        return base

    __repr__ = __str__


def iter_monomials_upto(n: int, d: int) -> Iterator[Monomial]:
    for e in range(d + 1):
        yield from monomials_of_degree(n, e)
