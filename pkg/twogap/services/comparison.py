"""Prediction-versus-oracle sweep rows."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
import pandas as pd

from twogap.config import get_settings
from twogap.logging import get_logger
from twogap.models.common import CompareRow, TwoIntervalDomain
from twogap.registry import get_services
from twogap.utils.errors import TwoGapError

settings = get_settings()
logger = get_logger(__name__)

COMPARE_COLUMNS = [
    "n",
    "phase",
    "D_n",
    "G_DC",
    "a_n",
    "L_theorem",
    "L_refined",
    "L_remez",
    "ratio_theorem",
    "ratio_refined",
    "n1",
    "n2",
    "case",
    "normalized_remez",
    "normalized_theorem",
    "error",
]

# Numeric failures that end one row without stopping the sweep.
ROW_ERRORS = (TwoGapError, ArithmeticError, ValueError)

RowTask = Tuple[float, float, int, Optional[int], Optional[float]]


def compare_row(a: float, b: float, n: int, digits: Optional[int] = None, tol: Optional[float] = None) -> Dict[str, Any]:
    """One sweep row as a plain dict; numeric failures land in the error column."""

    services = get_services()
    domain = TwoIntervalDomain(A=a, B=b)
    row: Dict[str, Any] = {"n": n}
    try:
        chars = None if domain.degenerate else services.characteristics(domain)
        record = services.predictor.predict(n, chars) if chars is not None and n >= 1 else None
        if record is not None:
            row.update(
                phase=record.phase,
                D_n=record.D_n,
                G_DC=record.G_DC,
                a_n=record.a_n,
                L_theorem=record.L_theorem,
                L_refined=record.L_refined,
            )
        result = services.remez.best_approx(domain, n, digits, tol, chars)
        row.update(L_remez=mpmath.nstr(result.L, result.digits), n1=result.n1, n2=result.n2, case=result.case_label)
        if record is not None and chars is not None:
            level = float(result.L)
            row.update(
                ratio_theorem=level / record.L_theorem,
                ratio_refined=level / record.L_refined if record.L_refined else None,
                normalized_remez=services.predictor.normalized_error(n, chars, result.L),
                normalized_theorem=chars.constant_c * record.theta_ratio,
            )
    except ROW_ERRORS as exc:
        logger.warning("Sweep row failed", n=n, error=str(exc))
        row["error"] = f"{type(exc).__name__}: {exc}"
    return CompareRow(**row).model_dump()


def _run_task(task: RowTask) -> Dict[str, Any]:
    return compare_row(*task)


def compare_rows(
    a: float, b: float, ns: Sequence[int], digits: Optional[int] = None, tol: Optional[float] = None
) -> List[CompareRow]:
    """Rows for every n, ordered by n whatever the completion order."""

    tasks: List[RowTask] = [(a, b, n, digits, tol) for n in ns]
    workers = min(settings.threads, len(tasks))
    logger.info("Starting sweep", a=a, b=b, rows=len(tasks), workers=workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(_run_task, tasks))
    else:
        raw = [_run_task(task) for task in tasks]
    rows = sorted((CompareRow(**item) for item in raw), key=lambda row: row.n)
    failed = sum(1 for row in rows if row.error)
    logger.info("Sweep finished", rows=len(rows), failed=failed)
    return rows


def rows_frame(rows: Sequence[CompareRow]) -> pd.DataFrame:
    frame = pd.DataFrame([row.model_dump() for row in rows], columns=COMPARE_COLUMNS)
    return frame.astype({"n1": "Int64", "n2": "Int64"})
