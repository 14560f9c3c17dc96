"""Command line entry point.

Exit codes: 0 certified (or replay/validation ok), 1 not certified (or replay
rejected), 2 input error, 3 internal or data validation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, chartab
from .arith import parse_poly
from .errors import InputError, ValidationError
from .forms import branch_sextic, cubic_basis
from .galois import DEFAULT_FIVE_PART_BUDGET, DEFAULT_PRIME_BOUND, DEFAULT_SEED
from .pipeline import PipelineConfig, dumps, error_report, replay_certificate, run_pipeline

EXIT_OK, EXIT_NOT_CERTIFIED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(data, out: Optional[str]) -> None:
    text = dumps(data)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse(text: str):
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise InputError("PARSE", str(exc)) from exc


def _certify_one(text: str, config: PipelineConfig) -> tuple[dict, int]:
    try:
        report = run_pipeline(_parse(text), config)
    except InputError as err:
        return error_report(err, text), EXIT_INPUT
    report.data["input"]["text"] = text
    return report.data, report.exit_code


def cmd_certify(args) -> int:
    if args.orbit_on_cubic:
        err = InputError("UNSUPPORTED_MODE", "orbit-on-cubic input is reserved and not implemented")
        _emit(error_report(err), args.out)
        return EXIT_INPUT
    config = PipelineConfig(
        prime_bound=args.prime_bound,
        five_part_budget=args.budget,
        seed=args.seed,
        data_dir=args.data_dir,
        cache_dir=args.cache_dir,
        out=args.out,
        verbosity=args.verbose,
    )
    if args.poly is not None:
        data, code = _certify_one(args.poly, config)
        _emit(data, args.out)
        return code
    lines = [ln.strip() for ln in Path(args.poly_file).read_text(encoding="utf-8").splitlines()]
    results, codes = [], []
    for ln in lines:
        if ln and not ln.startswith("#"):
            data, code = _certify_one(ln, config)
            results.append(data)
            codes.append(code)
    _emit(results, args.out)
    return max(codes, default=EXIT_OK)


def cmd_replay(args) -> int:
    try:
        report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        _emit({"error": {"code": "PARSE", "message": f"cannot read report: {exc}"}}, None)
        return EXIT_INPUT
    reports = report if isinstance(report, list) else [report]
    out, code = [], EXIT_OK
    for rep in reports:
        res = replay_certificate(rep, args.data_dir)
        out.append({"ok": res.ok, "checks": len(res.checked), "failures": res.failures})
        if not res.ok:
            code = EXIT_NOT_CERTIFIED
    _emit(out if isinstance(report, list) else out[0], None)
    return code


def cmd_forms(args) -> int:
    try:
        f = _parse(args.poly)
        if f.degree != 7:
            raise InputError("WRONG_DEGREE", f"expected a degree-7 polynomial, got degree {f.degree}")
        u, v, w = cubic_basis(f)
    except InputError as err:
        _emit(error_report(err, args.poly), None)
        return EXIT_INPUT
    s = branch_sextic(u, v, w)
    _emit({"u": str(u), "v": str(v), "w": str(w), "sextic": str(s)}, None)
    return EXIT_OK


def cmd_chartab(args) -> int:
    t = chartab.load_table(args.group, args.data_dir)
    rep = chartab.validate_table(t)
    data = rep.to_json()
    if rep.ok:
        data["indicators"] = {r.label: chartab.frobenius_schur(r, t) for r in t.irreps}
        data["symplectic_degree_6"] = chartab.symplectic_irreps_of_degree(t, 6)
    _emit(data, None)
    return EXIT_OK if rep.ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quartic-forge", description="Certify End(J) = Z hypotheses for degree-7 polynomials over Q.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", help="run the full certificate pipeline")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help='polynomial text, e.g. "t^7 - t - 1"')
    src.add_argument("--poly-file", help="file with one polynomial per line")
    src.add_argument("--orbit-on-cubic", action="store_true", help=argparse.SUPPRESS)
    c.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    c.add_argument("--budget", type=int, default=DEFAULT_FIVE_PART_BUDGET, help="usable primes to try for a 5-part")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--data-dir")
    c.add_argument("--cache-dir")
    c.add_argument("--out")
    c.add_argument("-v", "--verbose", action="count", default=0)
    c.set_defaults(func=cmd_certify)

    r = sub.add_parser("replay", help="re-verify a saved report")
    r.add_argument("report")
    r.add_argument("--data-dir")
    r.set_defaults(func=cmd_replay)

    f = sub.add_parser("forms", help="print the cubic basis and branch sextic")
    f.add_argument("--poly", required=True)
    f.set_defaults(func=cmd_forms)

    t = sub.add_parser("chartab", help="validate a shipped character table")
    t.add_argument("--group", choices=sorted(chartab.TABLE_FILES), required=True)
    t.add_argument("--data-dir")
    t.set_defaults(func=cmd_chartab)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", 0) > 1 else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (ValidationError, OSError, KeyError) as exc:
        sys.stderr.write(f"quartic-forge: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    except Exception as exc:  # last-resort guard so the exit code stays meaningful
        sys.stderr.write(f"quartic-forge: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
