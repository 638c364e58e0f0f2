"""The ``.lk`` session language: parsing and execution.

A session is a sequence of ``;``-terminated statements::

    ring R = F101[x,y]/(x*y);
    ideal c = (x*y);
    module M = R/(x);
    module L = lambda(M);
    set bound = 4;
    print report(M);
    verify(MS, all);
    verify(AB-formula, M, gdim=0);

Module expressions: ``RING/(polys)``, ``RING/IDEAL``, ``coker [[..],[..]]``
(optionally followed by ``shifts (d1,...)``), ``free(d1,...)``,
``image (polys)`` or ``image IDEAL`` (the ideal as a module, optionally
``mod (polys)``), and operator calls ``transpose, syzygy, lambda,
tfunctor, link, ext, tor, hom, dual, canonical, shift, sum``.  A module is
declared over the most recently declared ring unless ``over RING`` is
given.  ``#`` and ``//`` start comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from . import config
from .homalg import (
    PresentedModule,
    betti,
    dual,
    ext,
    hilbert_series,
    hom,
    minimalize,
    subquotient,
    tor,
)
from .invariants import canonical_module, jsonable, report
from .operators import (
    lambda_,
    link_via_ideal,
    linked_by_ideal,
    restrict_scalars,
    syzygy,
    t_functor,
    transpose,
)
from .ring import GradedRing, Polynomial, RingError
from .theorems import THEOREMS, VerificationRecord, verify

OPERATORS = ("transpose", "syzygy", "lambda", "tfunctor", "link", "ext", "tor", "hom", "dual",
             "canonical", "shift", "sum")
PRINTABLE = ("report", "betti", "hilbert", "presentation", "linked")

EXIT_OK, EXIT_USAGE, EXIT_COMPUTATION, EXIT_VERIFICATION = 0, 1, 2, 3


class SessionError(ValueError):
    """A parse or resolution error, located by line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0, computation: bool = False):
        super().__init__(f"line {line}, column {column}: {message}")
        self.computation = computation
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Statement:
    kind: str
    text: str
    line: int
    column: int
    data: dict = field(default_factory=dict)


@dataclass
class Session:
    """A fully parsed and resolved session."""

    rings: Dict[str, GradedRing] = field(default_factory=dict)
    ideals: Dict[str, Tuple[str, List[Polynomial]]] = field(default_factory=dict)
    modules: Dict[str, PresentedModule] = field(default_factory=dict)
    commands: List[Statement] = field(default_factory=list)


# ------------------------------------------------------------ lexing helpers
def _strip_comments(text: str) -> str:
    out = []
    for line in text.split("\n"):
        cut = len(line)
        for mark in ("#", "//"):
            k = line.find(mark)
            if k >= 0:
                cut = min(cut, k)
        out.append(line[:cut] + " " * (len(line) - cut))
    return "\n".join(out)


def _statements(text: str):
    """Yield (stripped statement, line, column) for each ';'-terminated statement."""
    text = _strip_comments(text)
    start, depth = 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == ";" and depth == 0:
            raw = text[start:k]
            yield _locate(text, start, raw)
            start = k + 1
    rest = text[start:]
    if rest.strip():
        stmt, line, col = _locate(text, start, rest)
        raise SessionError("statement is missing its terminating ';'", line, col)


def _locate(text: str, start: int, raw: str):
    lead = len(raw) - len(raw.lstrip())
    pos = start + lead
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return raw.strip(), line, col


def split_top(s: str, sep: str = ",") -> List[str]:
    """Split on ``sep`` outside brackets."""
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or parts:
        parts.append(tail)
    return parts


def _unwrap(s: str, open_: str = "(", close: str = ")") -> Optional[str]:
    s = s.strip()
    if s.startswith(open_) and s.endswith(close):
        depth = 0
        for k, ch in enumerate(s):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            if depth == 0 and k < len(s) - 1:
                return None
        return s[1:-1]
    return None


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
RE_RING = re.compile(rf"^ring\s+({_NAME})\s*=\s*F(\d+)\s*\[([^\]]*)\]\s*(?:/\s*(\(.*\)))?\s*$", re.S)
RE_IDEAL = re.compile(rf"^ideal\s+({_NAME})(?:\s+over\s+({_NAME}))?\s*=\s*(.*)$", re.S)
RE_MODULE = re.compile(rf"^module\s+({_NAME})(?:\s+over\s+({_NAME}))?\s*=\s*(.*)$", re.S)
RE_SET = re.compile(rf"^set\s+({_NAME})\s*=\s*(\S+)$")
RE_PRINT = re.compile(rf"^print\s+({_NAME})\s*\((.*)\)$", re.S)
RE_VERIFY = re.compile(r"^verify\s*\((.*)\)$", re.S)
RE_CALL = re.compile(rf"^({_NAME})\s*\((.*)\)$", re.S)
RE_QUOT = re.compile(rf"^({_NAME})\s*/\s*(.*)$", re.S)


# ------------------------------------------------------------------ parser
class _Parser:
    def __init__(self):
        self.s = Session()
        self.current: Optional[str] = None
        self.names: Dict[str, str] = {}
        self.cap: Optional[int] = None

    def error(self, msg, st: Statement, token: Optional[str] = None):
        col = st.column
        if token:
            k = st.text.find(token)
            if k >= 0:
                before = st.text[:k]
                nl = before.count("\n")
                if nl:
                    raise SessionError(msg, st.line + nl, k - before.rfind("\n"))
                col += k
        raise SessionError(msg, st.line, col)

    def declare(self, name, kind, st):
        if name in self.names:
            self.error(f"name {name!r} already declared", st, name)
        self.names[name] = kind

    # -- resolution helpers
    def ring(self, name, st) -> GradedRing:
        if name not in self.s.rings:
            self.error(f"unknown ring {name!r}", st, name)
        return self.s.rings[name]

    def module(self, name, st) -> PresentedModule:
        name = name.strip()
        if name not in self.s.modules:
            self.error(f"unknown module {name!r}", st, name)
        return self.s.modules[name]

    def polys(self, text, ring, st) -> List[Polynomial]:
        inner = _unwrap(text)
        if inner is None:
            name = text.strip()
            if name in self.s.ideals:
                rname, gens = self.s.ideals[name]
                if self.s.rings[rname].ambient != ring.ambient:
                    self.error(f"ideal {name!r} lives over another polynomial ring", st, name)
                return list(gens)
            self.error(f"expected a parenthesised polynomial list or an ideal name, got {name!r}",
                       st, name or None)
        out = []
        for piece in split_top(inner):
            if not piece:
                continue
            try:
                f = ring.parse(piece)
            except (RingError, ValueError) as exc:
                self.error(f"cannot parse polynomial {piece!r}: {exc}", st, piece)
            if not f.is_homogeneous():
                self.error(f"polynomial {piece!r} is not homogeneous", st, piece)
            out.append(f)
        return out

    def ints(self, text, st) -> List[int]:
        inner = _unwrap(text)
        if inner is None:
            self.error("expected a parenthesised integer list", st, text)
        try:
            return [int(x) for x in split_top(inner) if x]
        except ValueError:
            self.error(f"bad integer list {text!r}", st, text)

    # -- statements
    def statement(self, st: Statement):
        t = st.text
        if t.startswith("ring ") or t.startswith("ring\t"):
            return self.ring_decl(st)
        if t.startswith("ideal "):
            return self.ideal_decl(st)
        if t.startswith("module "):
            return self.module_decl(st)
        if t.startswith("set "):
            m = RE_SET.match(t)
            if not m:
                self.error("malformed set statement", st)
            key, val = m.group(1), m.group(2)
            if key not in ("bound", "degree_cap"):
                self.error(f"unknown setting {key!r}", st, key)
            try:
                v = int(val)
            except ValueError:
                self.error(f"setting {key} needs an integer", st, val)
            if v < 0:
                self.error(f"setting {key} must be nonnegative", st, val)
            if key == "degree_cap":
                self.cap = v
            self.s.commands.append(Statement("set", t, st.line, st.column, {"key": key, "value": v}))
            return
        if t.startswith("print"):
            return self.print_cmd(st)
        if t.startswith("verify"):
            return self.verify_cmd(st)
        self.error(f"unknown statement {t.split()[0]!r}", st, t.split()[0])

    def ring_decl(self, st):
        m = RE_RING.match(st.text)
        if not m:
            self.error("malformed ring declaration (expected: ring R = F101[x,y]/(...))", st)
        name, p, vars_, ideal = m.groups()
        self.declare(name, "ring", st)
        variables = [v.strip() for v in vars_.split(",") if v.strip()]
        if not variables:
            self.error("a ring needs at least one variable", st)
        try:
            base = GradedRing.make(variables, (), int(p))
            gens = self.polys(ideal, base, st) if ideal else []
            R = GradedRing.make(variables, [str(g) for g in gens], int(p)) if gens else base
        except RingError as exc:
            self.error(str(exc), st)
        self.s.rings[name] = R
        self.current = name

    def _ring_for(self, over, st) -> Tuple[str, GradedRing]:
        rname = over or self.current
        if rname is None:
            self.error("no ring declared yet", st)
        return rname, self.ring(rname, st)

    def ideal_decl(self, st):
        m = RE_IDEAL.match(st.text)
        if not m:
            self.error("malformed ideal declaration", st)
        name, over, body = m.groups()
        self.declare(name, "ideal", st)
        rname, R = self._ring_for(over, st)
        self.s.ideals[name] = (rname, self.polys(body, R, st))

    def module_decl(self, st):
        m = RE_MODULE.match(st.text)
        if not m:
            self.error("malformed module declaration", st)
        name, over, body = m.groups()
        self.declare(name, "module", st)
        rname, R = self._ring_for(over, st)
        try:
            with config.degree_cap_set(self.cap):
                M = self.expr(body.strip(), R, st)
        except SessionError:
            raise
        except (RingError, ValueError) as exc:
            self.error(str(exc), st)
        except (config.TruncationExceeded, ArithmeticError) as exc:
            raise SessionError(f"{type(exc).__name__}: {exc}", st.line, st.column, computation=True)
        self.s.modules[name] = M

    def expr(self, body: str, R: GradedRing, st) -> PresentedModule:
        shifts = None
        ms = re.search(r"\bshifts\s*(\(.*\))\s*$", body, re.S)
        if ms:
            shifts = self.ints(ms.group(1), st)
            body = body[:ms.start()].strip()
        if body.startswith("coker"):
            rest = body[len("coker"):].strip()
            inner = _unwrap(rest, "[", "]")
            if inner is None:
                self.error("coker needs a matrix [[...],[...]]", st)
            rows = []
            for row in split_top(inner):
                r = _unwrap(row, "[", "]")
                if r is None:
                    self.error(f"bad matrix row {row!r}", st, row)
                rows.append([p for p in split_top(r)])
            parsed = [[self._poly(e, R, st) for e in row] for row in rows]
            try:
                return PresentedModule.from_rows(R, parsed, shifts)
            except ValueError as exc:
                self.error(str(exc), st)
        if body.startswith("image"):
            rest = body[len("image"):].strip()
            rels = []
            mm = re.search(r"\bmod\b", rest)
            if mm:
                rels = self.polys(rest[mm.end():].strip(), R, st)
                rest = rest[:mm.start()].strip()
            gens = self.polys(rest, R, st)
            base = (shifts or [0])[0]
            vec = lambda f: {(0, mono): c for mono, c in f.data.items()}
            return subquotient(R, (base,), [vec(f) for f in gens], [vec(f) for f in rels])
        mc = RE_CALL.match(body)
        if mc and mc.group(1) == "free":
            degs = self.ints("(" + mc.group(2) + ")", st) if mc.group(2).strip() else [0]
            return PresentedModule.free(R, degs)
        if body == "free":
            return PresentedModule.free(R, shifts or [0])
        mq = RE_QUOT.match(body)
        if mq and mq.group(1) in self.s.rings:
            Rq = self.ring(mq.group(1), st)
            if Rq is not R and Rq != R:
                self.error(f"module over {mq.group(1)} declared in another ring's context; use 'over'",
                           st, mq.group(1))
            gens = self.polys(mq.group(2), R, st)
            shift = (shifts or [0])[0]
            return PresentedModule.cyclic(R, gens, shift)
        if mc:
            return self.operator(mc.group(1), split_top(mc.group(2)), R, st)
        if body in self.s.modules:
            return self.s.modules[body]
        self.error(f"cannot parse module expression {body!r}", st, body.split("(")[0] or None)

    def _poly(self, text, R, st) -> Polynomial:
        try:
            return R.parse(text)
        except (RingError, ValueError) as exc:
            self.error(f"cannot parse polynomial {text!r}: {exc}", st, text)

    def _int(self, text, st) -> int:
        try:
            return int(text)
        except ValueError:
            self.error(f"expected an integer, got {text!r}", st, text)

    def operator(self, op, args, R, st) -> PresentedModule:
        if op not in OPERATORS:
            self.error(f"unknown operator {op!r}", st, op)

        def arity(*n):
            if len(args) not in n:
                self.error(f"{op} takes {' or '.join(map(str, n))} argument(s), got {len(args)}", st, op)

        if op == "canonical":
            arity(1)
            return canonical_module(self.ring(args[0], st))
        if op in ("transpose", "lambda", "dual"):
            arity(1)
            M = self.module(args[0], st)
            return {"transpose": transpose, "lambda": lambda_, "dual": dual}[op](M)
        if op in ("syzygy", "tfunctor"):
            arity(1, 2)
            M = self.module(args[0], st)
            k = self._int(args[1], st) if len(args) == 2 else 1
            return syzygy(M, k) if op == "syzygy" else t_functor(M, k)
        if op == "link":
            arity(2)
            M = self.module(args[0], st)
            c = self.polys(args[1], M.ring, st)
            return restrict_scalars(link_via_ideal(M, c), M.ring)
        if op in ("ext", "tor"):
            arity(3)
            M, N = self.module(args[0], st), self.module(args[1], st)
            i = self._int(args[2], st)
            return (ext if op == "ext" else tor)(M, N, i)
        if op == "hom":
            arity(2)
            return hom(self.module(args[0], st), self.module(args[1], st))
        if op == "shift":
            arity(2)
            return self.module(args[0], st).shift(self._int(args[1], st))
        if op == "sum":
            arity(2)
            return self.module(args[0], st).direct_sum(self.module(args[1], st))
        raise AssertionError(op)

    def print_cmd(self, st):
        m = RE_PRINT.match(st.text)
        if not m:
            self.error("malformed print statement (expected: print report(M))", st)
        fn, argtext = m.groups()
        if fn not in PRINTABLE:
            self.error(f"unknown print function {fn!r}", st, fn)
        args = split_top(argtext)
        if fn == "linked":
            if len(args) != 3:
                self.error("linked takes (M, N, ideal)", st, fn)
            M, N = self.module(args[0], st), self.module(args[1], st)
            data = {"fn": fn, "modules": [M, N], "names": args[:2],
                    "ideal": self.polys(args[2], M.ring, st)}
        else:
            if len(args) != 1:
                self.error(f"{fn} takes one module", st, fn)
            data = {"fn": fn, "modules": [self.module(args[0], st)], "names": args}
        self.s.commands.append(Statement("print", st.text, st.line, st.column, data))

    def verify_cmd(self, st):
        m = RE_VERIFY.match(st.text)
        if not m:
            self.error("malformed verify statement (expected: verify(THM, NAME|all, ...))", st)
        args = split_top(m.group(1))
        if len(args) < 2:
            self.error("verify needs a theorem id and a module name (or all)", st)
        thm, target = args[0], args[1]
        if thm not in THEOREMS:
            self.error(f"unknown theorem id {thm!r}", st, thm)
        if target not in ("all", "all-fixtures"):
            self.module(target, st)
        params = {}
        for a in args[2:]:
            if "=" not in a:
                self.error(f"verify options are key=value, got {a!r}", st, a)
            key, val = [x.strip() for x in a.split("=", 1)]
            params[key] = self.value(val, st)
        self.s.commands.append(Statement("verify", st.text, st.line, st.column,
                                         {"theorem": thm, "target": target, "params": params}))

    def value(self, val: str, st):
        if val in self.s.modules:
            return self.s.modules[val]
        if val in self.s.ideals:
            return list(self.s.ideals[val][1])
        inner = _unwrap(val, "[", "]")
        if inner is not None:
            return [self.value(v, st) for v in split_top(inner)]
        if re.fullmatch(r"-?\d+", val):
            return int(val)
        if val.startswith("("):
            # an inline ideal over the current ring
            _, R = self._ring_for(None, st)
            return self.polys(val, R, st)
        return val


def parse_session(text: str) -> Session:
    p = _Parser()
    for raw, line, col in _statements(text):
        if not raw:
            continue
        p.statement(Statement("raw", raw, line, col))
    return p.s


# ----------------------------------------------------------------- runner
@dataclass
class SessionResult:
    outputs: List[dict]
    records: List[VerificationRecord]
    errors: List[dict]

    @property
    def exit_code(self) -> int:
        if self.errors:
            return EXIT_COMPUTATION
        if any(r.status == "fail" for r in self.records):
            return EXIT_VERIFICATION
        return EXIT_OK

    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "inapplicable": 0}
        for r in self.records:
            counts[r.status] += 1
        counts["errors"] = len(self.errors)
        return counts

    def to_json(self) -> dict:
        return jsonable({"outputs": self.outputs,
                         "records": [r.to_json() for r in self.records],
                         "errors": self.errors,
                         "summary": self.summary(),
                         "exit_code": self.exit_code})


def _module_name(session: Session, M: PresentedModule) -> str:
    for name, N in session.modules.items():
        if N is M:
            return name
    return "?"


def _print(fn: str, data: dict, bound: int):
    mods = data["modules"]
    M = mods[0]
    if fn == "report":
        return report(M, bound)
    if fn == "betti":
        return betti(M, bound).truncate(bound).to_json()
    if fn == "hilbert":
        return hilbert_series(M).to_json()
    if fn == "presentation":
        Mm = minimalize(M)
        return {"degrees": list(Mm.degrees), "matrix": Mm.matrix_str(), "ring": str(M.ring)}
    if fn == "linked":
        return linked_by_ideal(mods[0], mods[1], data["ideal"])
    raise AssertionError(fn)


def run_session(session: Session, only: Optional[str] = None) -> SessionResult:
    """Execute the commands in order; ``only`` restricts verification to one theorem id."""
    bound = config.DEFAULT_BOUND
    cap = None
    outputs, records, errors = [], [], []
    for cmd in session.commands:
        if cmd.kind == "set":
            if cmd.data["key"] == "bound":
                bound = cmd.data["value"]
            else:
                cap = cmd.data["value"]
            continue
        try:
            with config.degree_cap_set(cap):
                if cmd.kind == "print":
                    if only is not None:
                        continue
                    outputs.append({"line": cmd.line, "command": " ".join(cmd.text.split()),
                                    "result": _print(cmd.data["fn"], cmd.data, bound)})
                elif cmd.kind == "verify":
                    thm = cmd.data["theorem"]
                    if only is not None and thm != only:
                        continue
                    records.extend(_verify(session, cmd.data, bound))
        except (ValueError, ArithmeticError, config.TruncationExceeded) as exc:
            errors.append({"line": cmd.line, "command": " ".join(cmd.text.split()),
                           "error": f"{type(exc).__name__}: {exc}"})
    return SessionResult(outputs, records, errors)


def _verify(session: Session, data: dict, bound: int) -> List[VerificationRecord]:
    thm, target, params = data["theorem"], data["target"], data["params"]
    if target in ("all", "all-fixtures"):
        rings = {v.ring for v in params.values() if isinstance(v, PresentedModule)}
        rings |= {v[0].ring for v in params.values()
                  if isinstance(v, list) and v and isinstance(v[0], Polynomial)}
        targets = [(n, M) for n, M in session.modules.items()
                   if all(M.ring == r or M.ring.ambient == r for r in rings)]
    else:
        targets = [(target, session.modules[target])]
    return [verify(thm, name, M, params, bound) for name, M in targets]


def run_text(text: str, only: Optional[str] = None) -> SessionResult:
    return run_session(parse_session(text), only)
