"""Command line: ``linkage run | corpus | oracle-check``.

JSON goes to standard output (or ``--json FILE``); human-readable tables go
to standard error.  Exit codes: 0 ok, 1 usage, 2 computation error,
3 verification failure (or an engine/oracle disagreement).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional

from . import config
from .homalg import PresentedModule, ext, hilbert_series, resolve, tor
from .session import (
    EXIT_COMPUTATION,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    SessionError,
    parse_session,
    run_session,
)
from .theorems import THEOREMS


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(obj, out: Optional[str]):
    text = dumps(obj)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


# ------------------------------------------------------------------ run
def run_file(path: str, only: Optional[str] = None) -> dict:
    """Parse and run one session file; returns its JSON result (with exit code)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        return {"file": Path(path).name, "exit_code": EXIT_USAGE, "error": str(exc)}
    try:
        session = parse_session(text)
    except SessionError as exc:
        code = EXIT_COMPUTATION if exc.computation else EXIT_USAGE
        return {"file": Path(path).name, "exit_code": code,
                "error": {"line": exc.line, "column": exc.column, "message": exc.message}}
    result = run_session(session, only)
    out = result.to_json()
    out["file"] = Path(path).name
    return out


def _table(res: dict, stream=sys.stderr):
    name = res.get("file", "")
    if "error" in res and "records" not in res:
        print(f"{name}: error {res['error']}", file=stream)
        return
    for r in res.get("records", []):
        print(f"  {r['theorem']:<14} {r['fixture']:<12} {r['status']:<12} {r['reason']}", file=stream)
    for e in res.get("errors", []):
        print(f"  error at line {e['line']}: {e['error']}", file=stream)
    s = res.get("summary", {})
    print(f"{name}: pass {s.get('pass', 0)}  fail {s.get('fail', 0)}  "
          f"inapplicable {s.get('inapplicable', 0)}  errors {s.get('errors', 0)}", file=stream)


def cmd_run(args) -> int:
    if not Path(args.session).is_file():
        print(f"no such session file: {args.session}", file=sys.stderr)
        return EXIT_USAGE
    res = run_file(args.session, args.only)
    _table(res)
    _emit(res, args.json)
    return res["exit_code"]


# --------------------------------------------------------------- corpus
_SEVERITY = {EXIT_OK: 0, EXIT_USAGE: 1, EXIT_VERIFICATION: 2, EXIT_COMPUTATION: 3}


def worst_exit(a: int, b: int) -> int:
    """Combine exit codes: computation error > verification failure > usage > ok."""
    return a if _SEVERITY[a] >= _SEVERITY[b] else b


def _corpus_files(path: Path) -> List[Path]:
    return sorted(p for p in path.glob("*.lk") if p.is_file())


def _run_one(args):
    path, only, cap = args
    if cap is not None:
        with config.degree_cap_set(cap):
            return run_file(str(path), only)
    return run_file(str(path), only)


def run_corpus(path: str, only: Optional[str] = None, jobs: int = 1) -> dict:
    """Run every ``*.lk`` file of a directory (sorted by name) and aggregate."""
    files = _corpus_files(Path(path))
    work = [(f, only, None) for f in files]
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work))
    else:
        results = [_run_one(w) for w in work]
    per_theorem: Dict[str, Dict[str, int]] = {}
    totals = {"pass": 0, "fail": 0, "inapplicable": 0, "errors": 0}
    code = EXIT_OK
    for res in results:
        for r in res.get("records", []):
            row = per_theorem.setdefault(r["theorem"], {"pass": 0, "fail": 0, "inapplicable": 0})
            row[r["status"]] += 1
            totals[r["status"]] += 1
        if "error" in res and "records" not in res:
            totals["errors"] += 1
        else:
            totals["errors"] += len(res.get("errors", []))
        code = worst_exit(code, res["exit_code"])
    return {"files": results, "per_theorem": per_theorem, "totals": totals,
            "selection": only, "exit_code": code}


def cmd_corpus(args) -> int:
    p = Path(args.directory)
    if not p.is_dir():
        print(f"no such corpus directory: {args.directory}", file=sys.stderr)
        return EXIT_USAGE
    if args.only is not None and args.only not in THEOREMS:
        print(f"unknown theorem id {args.only!r}; known: {', '.join(THEOREMS)}", file=sys.stderr)
        return EXIT_USAGE
    summary = run_corpus(str(p), args.only, args.jobs)
    for res in summary["files"]:
        _table(res)
    for thm in sorted(summary["per_theorem"]):
        c = summary["per_theorem"][thm]
        print(f"{thm:<14} pass {c['pass']:>3}  fail {c['fail']:>3}  inapplicable {c['inapplicable']:>3}",
              file=sys.stderr)
    _emit(summary, args.json)
    return summary["exit_code"]


# --------------------------------------------------------- oracle-check
def oracle_compare(M: PresentedModule, D: int = config.DEFAULT_ORACLE_DEGREE,
                   ext_indices=(0, 1, 2), tor_indices=(0, 1, 2)) -> dict:
    """Compare engine and oracle graded dimensions of M, Ext^i(M, R) and Tor_i(M, k)."""
    from . import oracle

    ring = M.ring
    R = PresentedModule.free(ring)
    k = PresentedModule.cyclic(ring, list(ring.variables))
    compared, mismatches, inconclusive = 0, [], []

    def compare(what, i, engine_series, table):
        nonlocal compared
        for d, v in sorted(table.items()):
            e = engine_series.coefficient(d)
            compared += 1
            if e != v:
                mismatches.append({"quantity": what, "index": i, "degree": d, "engine": e, "oracle": v})

    lo = min(M.degrees, default=0)
    compare("hilbert", None, hilbert_series(M), oracle.hilbert_dims(M, lo - 1, D))
    ores = oracle.OracleResolution(M, D)
    eres = resolve(M, max(ext_indices + tor_indices) + 2)
    for i in ext_indices:
        Fi, Fn = eres.degrees(i), eres.degrees(i + 1)
        top = max(Fi + Fn, default=0)
        elo, ehi = -max(Fi, default=0) - 1, D - top - 1
        if ehi < elo:
            continue
        try:
            compare("ext", i, hilbert_series(ext(M, R, i)), oracle.ext_dims(M, R, i, elo, ehi, D, ores))
        except oracle.Inconclusive as exc:
            inconclusive.append({"quantity": "ext", "index": i, "reason": str(exc)})
    for i in tor_indices:
        tlo = min(eres.degrees(i), default=0) - 1
        try:
            compare("tor", i, hilbert_series(tor(M, k, i)), oracle.tor_dims(M, k, i, tlo, D, D, ores))
        except oracle.Inconclusive as exc:
            inconclusive.append({"quantity": "tor", "index": i, "reason": str(exc)})
    return {"compared": compared, "mismatches": mismatches, "inconclusive": inconclusive}


def cmd_oracle_check(args) -> int:
    p = Path(args.path)
    files = [p] if p.is_file() else _corpus_files(p) if p.is_dir() else None
    if files is None:
        print(f"no such path: {args.path}", file=sys.stderr)
        return EXIT_USAGE
    out, code = {}, EXIT_OK
    for f in files:
        try:
            session = parse_session(f.read_text(encoding="utf-8"))
        except SessionError as exc:
            out[f.name] = {"error": str(exc)}
            code = worst_exit(code, EXIT_COMPUTATION)
            continue
        mods = {}
        for name, M in session.modules.items():
            try:
                r = oracle_compare(M, args.degree)
            except (ValueError, ArithmeticError, config.TruncationExceeded) as exc:
                r = {"error": f"{type(exc).__name__}: {exc}"}
                code = worst_exit(code, EXIT_COMPUTATION)
            if r.get("mismatches"):
                code = worst_exit(code, EXIT_VERIFICATION)
            mods[name] = r
            status = "error" if "error" in r else ("MISMATCH" if r["mismatches"] else "ok")
            print(f"{f.name}:{name:<12} {status:<9} compared {r.get('compared', 0)} "
                  f"inconclusive {len(r.get('inconclusive', []))}", file=sys.stderr)
        out[f.name] = mods
    _emit({"degree": args.degree, "files": out, "exit_code": code}, args.json)
    return code


# ----------------------------------------------------------------- main
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linkage", description="Linkage invariants and theorem checks.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one session file")
    r.add_argument("session")
    r.add_argument("--only", default=None, help="restrict verification to one theorem id")
    r.add_argument("--json", default=None, help="write JSON here instead of stdout")
    r.set_defaults(func=cmd_run)
    c = sub.add_parser("corpus", help="run every .lk file of a directory")
    c.add_argument("directory")
    c.add_argument("--only", default=None, help="restrict verification to one theorem id")
    c.add_argument("--json", default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_corpus)
    o = sub.add_parser("oracle-check", help="compare engine and oracle dimensions")
    o.add_argument("path")
    o.add_argument("--degree", type=int, default=config.DEFAULT_ORACLE_DEGREE)
    o.add_argument("--json", default=None)
    o.set_defaults(func=cmd_oracle_check)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
