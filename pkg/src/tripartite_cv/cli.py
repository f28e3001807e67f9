"""Command-line interface.

Examples::

    tripartite-cv sweep --model aoki --criteria "DS_MINUS(1,2),VLF_PAIR(1,2)"
    tripartite-cv figure fig2 --out fig2.csv
    tripartite-cv verify asym
    tripartite-cv classify --model aoki --set r=2

Exit codes: 0 success, 2 usage error, 3 unsupported parameter regime,
4 oracle mismatch in ``verify``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import criteria as C
from .models import UnsupportedRegimeError, covariance
from .oracle import EQUIVALENCE_TOL, verify_grid
from .sweep import (
    FIGURES,
    ParameterSweep,
    SpecError,
    SweepSpec,
    classification_map,
    parse_criteria,
    parse_grid,
    point_params,
    reproduce_figure,
    run_sweep,
)

EXIT_USAGE = 2
EXIT_REGIME = 3
EXIT_ORACLE = 4


def _parse_sets(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise SpecError("set", f"expected name=value, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise SpecError("set", f"value for {name!r} is not a number: {value!r}") from None
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write to this path instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripartite-cv",
        description="Entanglement and EPR-steering criteria for tripartite Gaussian optical systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate criteria over a 1-D parameter grid")
    p.add_argument("--model", required=True, help="opa, aoki or asym")
    p.add_argument("--set", action="append", default=[], metavar="PARAM=VALUE",
                   help="fix a model parameter (repeatable)")
    p.add_argument("--param", help="parameter to sweep (default: kt, r or zt)")
    p.add_argument("--grid", help="start:stop:step (default: the model's default grid)")
    p.add_argument("--criteria", required=True, help='e.g. "DS_MINUS(1,2),VLF_PAIR(1,2)"')
    _add_output(p)

    p = sub.add_parser("figure", help="data series for one of the five figures")
    p.add_argument("figure", choices=sorted(FIGURES))
    _add_output(p)

    p = sub.add_parser("verify", help="compare analytic covariances against the oracle")
    p.add_argument("model", choices=("opa", "aoki", "asym"))
    p.add_argument("--variant", choices=("exact", "zeta-squared"), default="exact",
                   help="asym only: coefficient set to test")
    p.add_argument("--out", help="also write the JSON report to this path")

    p = sub.add_parser("classify", help="entanglement regime at a point, or a map over a grid")
    p.add_argument("--model", required=True)
    p.add_argument("--set", action="append", default=[], metavar="PARAM=VALUE")
    p.add_argument("--param")
    p.add_argument("--grid", help="if given, classify every grid point")
    _add_output(p)
    return parser


def _sweep(args) -> int:
    spec = SweepSpec(
        model=args.model,
        criteria=tuple(parse_criteria(args.criteria)),
        swept_parameter=args.param,
        grid=parse_grid(args.grid) if args.grid else None,
        fixed=_parse_sets(args.set),
        output=args.format,
    )
    _emit(run_sweep(spec).render(spec.output), args.out)
    return 0


def _figure(args) -> int:
    _emit(reproduce_figure(args.figure).render(args.format), args.out)
    return 0


def _verify(args) -> int:
    if args.variant != "exact" and args.model != "asym":
        raise SpecError("variant", "only the asym model has alternative coefficient sets")
    report = verify_grid(args.model, args.variant)
    status = "PASS" if report.passed else "FAIL"
    lines = [
        f"model:        {report.model} ({args.variant})",
        f"grid:         {report.grid} ({report.points} points)",
        f"max_abs_diff: {report.max_abs_diff:.3e} (tolerance {EQUIVALENCE_TOL:.0e})",
        f"pure:         {report.pure}",
        f"physical:     {report.physical}",
        f"worst point:  {report.worst}",
        f"result:       {status}",
    ]
    payload = {
        "model": report.model,
        "variant": args.variant,
        "grid": report.grid,
        "max_abs_diff": report.max_abs_diff,
        "pure": report.pure,
        "physical": report.physical,
    }
    text = json.dumps(payload)
    sys.stdout.write("\n".join(lines) + "\n" + text + "\n")
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8", newline="\n")
    return 0 if report.passed else EXIT_ORACLE


def _classify(args) -> int:
    fixed = _parse_sets(args.set)
    if args.grid:
        sweep = ParameterSweep(model=args.model, swept_parameter=args.param,
                               grid=parse_grid(args.grid), fixed=fixed)
        _emit(classification_map(sweep).render(args.format), args.out)
        return 0
    params = point_params(args.model, fixed)
    state = C.classify(covariance(params))
    d = {"params": asdict(params), **state.as_dict()}
    if args.format == "json":
        text = json.dumps(d, indent=1) + "\n"
    else:
        text = "".join(f"{k},{_cell(v)}\n" for k, v in d.items())
    _emit(text, args.out)
    return 0


def _cell(v) -> str:
    if isinstance(v, dict):
        return " ".join(f"{k}={x:g}" for k, x in sorted(v.items()))
    if isinstance(v, list):
        return " ".join("".join(map(str, p)) if isinstance(p, list) else str(p) for p in v)
    return str(v)


COMMANDS = {"sweep": _sweep, "figure": _figure, "verify": _verify, "classify": _classify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UnsupportedRegimeError as exc:
        print(f"unsupported regime: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
