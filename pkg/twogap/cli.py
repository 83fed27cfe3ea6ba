"""Command-line entry point: characteristics, predictions, the Remez oracle and sweeps."""
from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from pydantic import ValidationError

from twogap.logging import configure_logging, get_logger
from twogap.models.common import PrecisionContext, RunConfig, TwoIntervalDomain
from twogap.registry import get_services
from twogap.services.comparison import compare_rows, rows_frame
from twogap.utils.errors import InvalidInputError, TwoGapError

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERIC = 3

CHARS_COLUMNS = ["a", "b", "c_crit", "eta", "eta1", "eta2", "alpha", "omega_c", "p", "rho", "c0_abs"]
REMEZ_COLUMNS = ["n", "digits", "L", "bracket_lower", "bracket_upper", "m", "K", "N", "case_label", "n1", "n2", "iterations"]


def parse_range(text: str) -> Tuple[int, int]:
    """``lo..hi`` (inclusive) or a single integer."""

    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        value = int(text)
    except ValueError as exc:
        raise InvalidInputError(f"bad n-range {text!r}; expected N or LO..HI") from exc
    return value, value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twogap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(cmd: argparse.ArgumentParser, needs_b: bool = True) -> None:
        cmd.add_argument("--a", type=float, required=True, help="left interval is [-A, -1]")
        if needs_b:
            cmd.add_argument("--b", type=float, default=2.0, help="right interval is [1, B]")
        cmd.add_argument("--format", choices=["json", "csv"], default=None)
        cmd.add_argument("--out", default=None, help="output path (stdout by default)")

    add_common(sub.add_parser("chars", help="conformal characteristics of the domain"))
    for name, help_text in (
        ("predict", "asymptotic predictions for n or LO..HI"),
        ("remez", "best approximation by the Remez oracle"),
        ("compare", "prediction against the oracle over an n-range"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        add_common(cmd)
        cmd.add_argument("--n", default="1", help="degree N or inclusive range LO..HI")
        if name != "predict":
            cmd.add_argument("--digits", default="auto", help="decimal digits or 'auto'")
            cmd.add_argument("--tol", type=float, default=None, help="relative Remez bracket width (remez_tol)")

    symmetric = sub.add_parser("symmetric", help="closed-form L_{2m+1} for A = B")
    add_common(symmetric, needs_b=False)
    symmetric.add_argument("--m", type=int, required=True)

    degenerate = sub.add_parser("degenerate", help="closed-form L_n for B = 1")
    add_common(degenerate, needs_b=False)
    degenerate.add_argument("--n", default="0")
    degenerate.add_argument("--digits", default=None)
    return parser


def to_config(args: argparse.Namespace) -> RunConfig:
    lo, hi = parse_range(getattr(args, "n", "0"))
    digits = getattr(args, "digits", None)
    if digits in (None, "auto"):
        digits_value: Optional[int] = None
    else:
        try:
            digits_value = int(digits)
        except ValueError as exc:
            raise InvalidInputError(f"--digits must be an integer or 'auto', got {digits!r}") from exc
    b = 1.0 if args.command == "degenerate" else getattr(args, "b", 2.0)
    if args.command == "symmetric":
        b = args.a
    return RunConfig(
        command=args.command,
        a=args.a,
        b=b,
        n_lo=lo,
        n_hi=hi,
        m=getattr(args, "m", 0),
        digits=digits_value,
        tol=getattr(args, "tol", None),
        format=args.format,
        out=args.out,
    )


def render(records: List[Dict[str, Any]], columns: Sequence[str], fmt: str, single: bool) -> str:
    if fmt == "json":
        payload: Any = records[0] if single else records
        return json.dumps(payload, indent=2) + "\n"
    buffer = io.StringIO()
    pd.DataFrame(records, columns=list(columns)).to_csv(buffer, index=False, float_format="%.17g")
    return buffer.getvalue()


def cmd_chars(config: RunConfig) -> str:
    services = get_services()
    chars = services.characteristics(TwoIntervalDomain(A=config.a, B=config.b))
    return render([chars.model_dump()], CHARS_COLUMNS, config.format or "json", True)


def cmd_predict(config: RunConfig) -> str:
    services = get_services()
    chars = services.characteristics(TwoIntervalDomain(A=config.a, B=config.b))
    records = [services.predictor.predict(n, chars).model_dump() for n in config.n_values]
    columns = list(records[0].keys())
    return render(records, columns, config.format or ("csv" if config.is_sweep else "json"), not config.is_sweep)


def cmd_remez(config: RunConfig) -> str:
    services = get_services()
    domain = TwoIntervalDomain(A=config.a, B=config.b)
    chars = None if domain.degenerate else services.characteristics(domain)
    precision = PrecisionContext(digits=config.digits) if config.digits else None
    records = [
        services.remez.best_approx(domain, n, precision, config.tol, chars).to_payload() for n in config.n_values
    ]
    fmt = config.format or ("csv" if config.is_sweep else "json")
    if fmt == "csv":
        records = [{key: record[key] for key in REMEZ_COLUMNS} for record in records]
    return render(records, REMEZ_COLUMNS, fmt, not config.is_sweep)


def cmd_compare(config: RunConfig) -> Tuple[str, bool]:
    rows = compare_rows(config.a, config.b, config.n_values, config.digits, config.tol)
    all_failed = all(row.error for row in rows)
    if (config.format or "csv") == "json":
        return json.dumps([row.model_dump() for row in rows], indent=2) + "\n", all_failed
    buffer = io.StringIO()
    rows_frame(rows).to_csv(buffer, index=False, float_format="%.17g")
    return buffer.getvalue(), all_failed


def cmd_symmetric(config: RunConfig) -> str:
    value = get_services().predictor.symmetric_reference(config.m, config.a)
    return render([{"a": config.a, "m": config.m, "L": value}], ["a", "m", "L"], config.format or "json", True)


def cmd_degenerate(config: RunConfig) -> str:
    predictor = get_services().predictor
    records: List[Dict[str, Any]] = []
    for n in config.n_values:
        value = predictor.degenerate_reference(n, config.a, config.digits)
        records.append({"a": config.a, "n": n, "L": value if config.digits is None else str(value)})
    fmt = config.format or ("csv" if config.is_sweep else "json")
    return render(records, ["a", "n", "L"], fmt, not config.is_sweep)


def emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        config = to_config(args)
        if config.command == "compare":
            text, all_failed = cmd_compare(config)
            emit(text, config.out)
            if all_failed:
                logger.error("Every sweep row failed")
                return EXIT_NUMERIC
            return EXIT_OK
        handlers = {
            "chars": cmd_chars,
            "predict": cmd_predict,
            "remez": cmd_remez,
            "symmetric": cmd_symmetric,
            "degenerate": cmd_degenerate,
        }
        emit(handlers[config.command](config), config.out)
    except (InvalidInputError, ValidationError) as exc:
        logger.error(f"Invalid input: {exc}")
        return EXIT_INVALID
    except TwoGapError as exc:
        logger.error(f"Numerical failure: {exc}")
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
