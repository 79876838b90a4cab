# app/cli.py
"""Riga di comando: `python -m app <comando> ...`.

Exit code: 0 esito prodotto, 1 verifica degli esempi fallita, 2 input rifiutato.
CSV/JSON vanno su stdout (o --out), i log su stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bergman.errors import ClaimFailedError, ToeplitzError
from .commands import (
    CommandOutput,
    cmd_berezin,
    cmd_compactness,
    cmd_divide,
    cmd_examples,
    cmd_spectrum,
    error_payload,
    examples_failure_output,
)
from .config import CONFIG, RunConfig, configure_logging

log = logging.getLogger("bergman.cli")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from exc


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from exc


def _common(p: argparse.ArgumentParser) -> None:
    # default None: vince config.json
    p.add_argument("--n", type=int, help="number of variables (default: highest zj in the expression)")
    p.add_argument("--caps", type=_int_list, help="truncation caps, one value or one per variable")
    p.add_argument("--pad", type=int, help="padding used before cropping products")
    p.add_argument("--xi-count", dest="xi_count", type=int, help="unit-circle samples per slice")
    p.add_argument("--qr", type=int, help="radial quadrature order for the float path")
    p.add_argument("--tol-slice", dest="tol_slice", type=float)
    p.add_argument("--tol-decay", dest="tol_decay", type=float)
    p.add_argument("--schedule", type=_float_list, help="approach parameters t in [0,1)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--seed", type=int)
    p.add_argument("--exact", dest="exact", action="store_true", default=None, help="exact rational path (default)")
    p.add_argument("--float", dest="exact", action="store_false", help="quadrature path")
    p.add_argument("--archive", action="store_true", help="also store the result in the reports database")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bergman", description="Toeplitz operators on Bergman spaces of the polydisc.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="exact eigenvalues of a radial one-variable symbol")
    p.add_argument("symbol")
    _common(p)

    p = sub.add_parser("berezin", help="Berezin transform of a symbol or operator on a grid")
    p.add_argument("expression")
    p.add_argument("--grid", default="0,0.5,0.9:4", help="radii:angles per variable, e.g. 0,0.5,0.9:4")
    _common(p)

    p = sub.add_parser("compactness", help="compactness diagnostics for T(f1)*T(f2) + ...")
    p.add_argument("expression")
    _common(p)

    p = sub.add_parser("divide", help="divide a one-variable polynomial symbol by 1 - |z|^2")
    p.add_argument("symbol")
    _common(p)

    p = sub.add_parser("examples", help="rerun the worked examples and check every claim")
    _common(p)
    return parser


def run_config(args: argparse.Namespace, base: RunConfig | None = None) -> RunConfig:
    base = base or CONFIG.run
    return base.with_overrides(
        n=args.n, caps=args.caps, pad=args.pad, xi_count=args.xi_count, qr=args.qr,
        tol_slice=args.tol_slice, tol_decay=args.tol_decay, schedule=args.schedule,
        out=args.out, seed=args.seed, exact=args.exact,
    )


def _emit(result: CommandOutput, out: str | None, archive: bool) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(result.body, encoding="utf-8")
    else:
        sys.stdout.write(result.body)
    if archive:
        from .db import archive as store

        rid = store(result.command, result.expression, result.body, result.verdict, result.config, result.media_type)
        log.info("archived %s as report %s", result.command, rid)


def main(argv: list[str] | None = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    config = run_config(args)
    try:
        if args.command == "spectrum":
            result = cmd_spectrum(config, args.symbol)
        elif args.command == "berezin":
            result = cmd_berezin(config, args.expression, args.grid)
        elif args.command == "compactness":
            result = cmd_compactness(config, args.expression)
        elif args.command == "divide":
            result = cmd_divide(args.symbol)
        else:
            result = cmd_examples(config, CONFIG.examples)
    except ClaimFailedError as exc:
        # il bundle si scrive comunque, poi exit 1
        log.error("%s", exc)
        _emit(examples_failure_output(exc, config), config.out, args.archive)
        return 1
    except (ToeplitzError, ValueError) as exc:
        payload = error_payload(exc) if isinstance(exc, ToeplitzError) else {"error": "ValueError", "detail": str(exc)}
        log.error("%s: %s", payload["error"], payload["detail"])
        print(f"error: {payload['detail']}", file=sys.stderr)
        return 2
    _emit(result, config.out, args.archive)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
