"""Command-line front end: verify, basis, poincare, apply, sweep.

Exit codes: 0 when everything checked holds, 2 on a mathematical failure,
1 on a usage or input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .calogero import OperatorHandle
from .dihedral import DihedralConfig, poincare_closed, quasi_basis, quasi_dim, residue
from .errors import QuasinvError
from .harmonic import harmonic_poincare, harmonic_space
from .ratpoly import BiPoly, parse_poly, poly_from_json, render_poly
from .structure import run_full_verification

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for mathematical failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _config(args) -> DihedralConfig:
    try:
        return DihedralConfig(args.N, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(obj, text: str, fmt: str):
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


# -- verify / cache -----------------------------------------------------------


def cache_dir(args) -> Path | None:
    env = os.environ.get("QUASINV_CACHE")
    if env:
        return Path(env)
    return Path(args.cache_dir) if getattr(args, "cache_dir", None) else None


def cache_path(directory: Path, N: int, m: int) -> Path:
    return directory / f"verify_N{N}_m{m}.json"


def report_bytes(N: int, m: int) -> str:
    """Serialized verification report for one cell, tagged with the package version."""
    report = run_full_verification(DihedralConfig(N, m)).to_json()
    report["version"] = __version__
    return json.dumps(report, indent=2) + "\n"


def write_atomic(path: Path, data: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_cache(path: Path) -> str | None:
    try:
        data = path.read_text(encoding="utf-8")
        if json.loads(data).get("version") == __version__:
            return data
    except (OSError, ValueError, AttributeError):
        pass
    return None


def cached_report(N: int, m: int, directory: Path | None) -> str:
    """Report text for (N, m); a cache hit returns the stored text unchanged."""
    if directory is None:
        return report_bytes(N, m)
    path = cache_path(directory, N, m)
    data = read_cache(path)
    if data is None:
        data = report_bytes(N, m)
        write_atomic(path, data)
    return data


def _all_pass(report: dict) -> bool:
    return all(c["status"] == "pass" for c in report["checks"])


def render_report(report: dict) -> str:
    lines = [f"I2({report['N']}), m = {report['m']}"]
    width = max(len(c["name"]) for c in report["checks"])
    for c in report["checks"]:
        mark = "✓" if c["status"] == "pass" else "✗"
        line = f"  {mark} {c['name']:<{width}}  {c['ms']:>10.1f} ms"
        if c["status"] != "pass":
            line += f"\n      witness: {json.dumps(c['witness'])}"
        lines.append(line)
    lines.append("all checks pass" if _all_pass(report) else "FAILED")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    cfg = _config(args)
    data = cached_report(cfg.N, cfg.m, cache_dir(args))
    report = json.loads(data)
    if args.output == "json":
        sys.stdout.write(data)
    else:
        print(render_report(report))
    return EXIT_OK if _all_pass(report) else EXIT_FAIL


def _sweep_cell(cell):
    N, m, directory = cell
    return N, m, cached_report(N, m, directory)


def cmd_sweep(args) -> int:
    Ns = args.N or [2, 3, 4, 5, 6]
    ms = args.m or [0, 1, 2]
    if min(Ns) < 2 or min(ms) < 0:
        raise UsageError("sweep needs N >= 2 and m >= 0")
    cells = [
        (N, m, cache_dir(args))
        for N, m in itertools.product(Ns, ms)
        if args.max_degree is None or (2 * m + 1) * N <= args.max_degree
    ]
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(_sweep_cell, cells))
    summary = []
    for N, m, data in results:
        rep = json.loads(data)
        failed = [c["name"] for c in rep["checks"] if c["status"] != "pass"]
        summary.append({"N": N, "m": m, "passed": not failed, "failed_checks": failed})
    text = "\n".join(
        f"N={s['N']} m={s['m']}: " + ("pass" if s["passed"] else "FAIL " + ", ".join(s["failed_checks"]))
        for s in summary
    )
    _emit({"cells": summary}, text, args.output)
    return EXIT_OK if all(s["passed"] for s in summary) else EXIT_FAIL


# -- basis / poincare -----------------------------------------------------------


def _basis_rows(cfg: DihedralConfig, kind: str):
    if kind == "quasi":
        rows = [(label, p) for label, p in quasi_basis(cfg).labelled()]
    else:
        H = harmonic_space(cfg)
        rows = [(f"h{i}", p) for i, p in enumerate(H.elements())]

    def key(row):
        r = residue(cfg, row[1])
        return (int(row[1].degree()), -1 if r is None else r)

    return sorted(rows, key=key)  # stable: ties keep generator order


def cmd_basis(args) -> int:
    cfg = _config(args)
    rows = _basis_rows(cfg, args.kind)
    obj = {
        "N": cfg.N,
        "m": cfg.m,
        "kind": args.kind,
        "basis": [
            {"label": label, "degree": int(p.degree()), "residue": residue(cfg, p), "poly": render_poly(p)}
            for label, p in rows
        ],
    }
    if args.kind == "harmonic":
        obj.update(harmonic_space(cfg).to_json())
    text = "\n".join(f"{label:>6}  deg {int(p.degree()):>3}  {render_poly(p)}" for label, p in rows)
    _emit(obj, text, args.output)
    return EXIT_OK


def cmd_poincare(args) -> int:
    cfg = _config(args)
    D = args.max_degree if args.max_degree is not None else 2 * cfg.top_degree + 4
    if D < 0:
        raise UsageError("--max-degree must be non-negative")
    closed = poincare_closed(cfg, D)
    rows = [
        {"degree": d, "computed": quasi_dim(cfg, d), "closed_form": closed[d], "match": quasi_dim(cfg, d) == closed[d]}
        for d in range(D + 1)
    ]
    harmonic = harmonic_poincare(cfg)
    lines = [f"{'d':>4} {'dim Q_d':>8} {'series':>8}  match"]
    lines += [
        f"{r['degree']:>4} {r['computed']:>8} {r['closed_form']:>8}  {'yes' if r['match'] else 'NO'}"
        for r in rows
    ]
    lines.append("harmonic: " + " ".join(str(h) for h in harmonic))
    _emit({"N": cfg.N, "m": cfg.m, "rows": rows, "harmonic": harmonic}, "\n".join(lines), args.output)
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_FAIL


# -- apply ---------------------------------------------------------------------


def read_apply_input(text: str) -> tuple[BiPoly, BiPoly]:
    """Two polynomials q then p: a JSON object {"q":..,"p":..}, a JSON pair, or two text lines."""
    stripped = text.strip()
    if stripped.startswith(("{", "[")):
        try:
            obj = json.loads(stripped)
        except ValueError as exc:
            raise UsageError(f"bad JSON input: {exc}") from None
        if isinstance(obj, dict):
            if not {"q", "p"} <= obj.keys():
                raise UsageError('JSON input needs keys "q" and "p"')
            return poly_from_json(obj["q"]), poly_from_json(obj["p"])
        if len(obj) != 2:
            raise UsageError("JSON input must hold exactly two polynomials")
        return poly_from_json(obj[0]), poly_from_json(obj[1])
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 2:
        raise UsageError(f"expected two polynomial lines (q then p), got {len(lines)}")
    return parse_poly(lines[0]), parse_poly(lines[1])


def cmd_apply(args) -> int:
    cfg = _config(args)
    if not args.input:
        raise UsageError("apply needs --input")
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    q, p = read_apply_input(text)
    result = OperatorHandle(cfg, q)(p)
    _emit(result.to_json(), str(result), args.output)
    return EXIT_OK


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=["json", "text"], default="text")
    common.add_argument("--cache-dir", help="report cache directory (QUASINV_CACHE overrides)")

    cell = _Parser(add_help=False)
    cell.add_argument("--N", type=int, required=True, help="dihedral order parameter, N >= 2")
    cell.add_argument("--m", type=int, required=True, help="multiplicity, m >= 0")

    parser = _Parser(prog="quasinv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common, cell], help="run every structural check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("basis", parents=[common, cell], help="print the quasi or harmonic basis")
    p.add_argument("--kind", choices=["quasi", "harmonic"], default="quasi")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("poincare", parents=[common, cell], help="compare dimensions with the series")
    p.add_argument("--max-degree", type=int, help="default 2(2m+1)N + 4")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("apply", parents=[common, cell], help="apply the integral L_q to p")
    p.add_argument("--input", help="file with q then p (text lines or JSON); '-' for stdin")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("sweep", parents=[common], help="verify many (N, m) cells in parallel")
    p.add_argument("--N", type=int, nargs="+", help="values of N (default 2..6)")
    p.add_argument("--m", type=int, nargs="+", help="values of m (default 0..2)")
    p.add_argument("--max-degree", type=int, help="skip cells with (2m+1)N above this")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, QuasinvError) as exc:
        # bad input (unparsable text, non-quasiinvariant symbol, ...) is a usage error
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
