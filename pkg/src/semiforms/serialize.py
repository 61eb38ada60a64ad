"""Deterministic report serialization.

All payloads are built from ints, booleans, strings, lists and dicts
only -- no floats -- so JSON output is byte-for-byte reproducible:

* exact rationals render as ``"p/q"`` strings (always with the
  denominator, e.g. ``"3/1"``),
* the infinite ratio renders as ``"inf"`` and the empty dimension as
  ``"empty"``,
* logarithms render as decimals with 15 significant digits.

Run metadata (timings, backend) never enters a payload; the CLI prints
it to the diagnostic stream instead.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import List, Sequence, Union

from .delta import INFINITE, DeltaReport, Ratio
from .errors import SpecError
from .groebner import EMPTY
from .heights import PlaceSet
from .search import (
    AuditReport,
    HypothesisVerdict,
    RatioReport,
    SolutionClass,
    StabilityTable,
)


def frac_str(value: Union[int, Fraction]) -> str:
    """Exact rational as ``"p/q"``, denominator always present."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def ratio_str(value: Ratio) -> str:
    """Rational or the infinite ratio."""
    if value is INFINITE:
        return "inf"
    return frac_str(value)


def dim_str(value) -> str:
    """Projective dimension, with ``"empty"`` for the empty variety."""
    if value is EMPTY:
        return "empty"
    return str(value)


def log_str(value: float) -> str:
    """Real logarithm as a decimal with 15 significant digits."""
    return "%.15g" % value


def place_strs(s: PlaceSet) -> List[str]:
    return [str(v) for v in s.places]


def to_json_bytes(payload: dict) -> bytes:
    """Canonical JSON encoding: sorted keys, two-space indent, trailing
    newline.  Rejects floats outright so drift cannot sneak in."""
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)
    if "NaN" in text:  # pragma: no cover - allow_nan already raises
        raise SpecError("payload contains a non-finite number")
    _reject_floats(payload)
    return (text + "\n").encode("ascii")


def _reject_floats(node) -> None:
    if isinstance(node, float):
        raise SpecError("payloads must not contain floats; format them as strings")
    if isinstance(node, dict):
        for key, value in node.items():
            _reject_floats(key)
            _reject_floats(value)
    elif isinstance(node, (list, tuple)):
        for value in node:
            _reject_floats(value)


def csv_bytes(header: Sequence[str], rows: Sequence[Sequence]) -> bytes:
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue().encode("utf-8")


def _point_list(point: Sequence[int]) -> List[int]:
    return [int(v) for v in point]


# ---------------------------------------------------------------- delta


def delta_payload(report: DeltaReport, spec: dict) -> dict:
    return {
        "spec": spec,
        "delta": ratio_str(report.delta),
        "witness": list(report.witness),
        "complete": report.complete,
        "dim_v": dim_str(report.dim_v),
        "q": report.q,
        "subsets": [
            {
                "gamma": list(record.gamma),
                "intersection_dim": dim_str(record.intersection_dim),
                "ratio": ratio_str(record.ratio),
            }
            for record in report.records
        ],
    }


def delta_csv(report: DeltaReport) -> bytes:
    rows = [
        (
            " ".join(str(j) for j in record.gamma),
            len(record.gamma),
            dim_str(record.intersection_dim),
            ratio_str(record.ratio),
        )
        for record in report.records
    ]
    return csv_bytes(("gamma", "size", "intersection_dim", "ratio"), rows)


# --------------------------------------------------------------- verify


def verdict_payload(verdict: HypothesisVerdict, spec: dict) -> dict:
    return {
        "spec": spec,
        "ell": verdict.ell,
        "d": verdict.d,
        "q": verdict.q,
        "delta": ratio_str(verdict.delta),
        "m": verdict.m,
        "bound": ratio_str(verdict.bound),
        "lambda": frac_str(verdict.lam),
        "degree_ok": verdict.degree_ok,
        "lambda_ok": verdict.lambda_ok,
    }


def verdict_csv(verdict: HypothesisVerdict) -> bytes:
    return csv_bytes(
        ("ell", "d", "q", "delta", "m", "bound", "lambda", "degree_ok", "lambda_ok"),
        [
            (
                verdict.ell,
                verdict.d,
                verdict.q,
                ratio_str(verdict.delta),
                verdict.m,
                ratio_str(verdict.bound),
                frac_str(verdict.lam),
                verdict.degree_ok,
                verdict.lambda_ok,
            )
        ],
    )


# ------------------------------------------------------ search/equation


def classes_payload(classes: Sequence[SolutionClass], spec: dict) -> dict:
    return {
        "spec": spec,
        "count": len(classes),
        "classes": [
            {
                "representative": _point_list(cls.representative),
                "members_found": [_point_list(p) for p in cls.members_found],
                "fs_value": frac_str(cls.fs_value),
                "height_s": frac_str(cls.height_s),
            }
            for cls in classes
        ],
    }


def classes_csv(classes: Sequence[SolutionClass]) -> bytes:
    rows = [
        (
            " ".join(str(v) for v in cls.representative),
            frac_str(cls.height_s),
            frac_str(cls.fs_value),
            len(cls.members_found),
            "; ".join(" ".join(str(v) for v in p) for p in cls.members_found),
        )
        for cls in classes
    ]
    return csv_bytes(
        ("representative", "height_s", "fs_value", "members_count", "members"), rows
    )


# ---------------------------------------------------------------- audit


def _violator_entries(violators) -> list:
    return [
        {
            "point": _point_list(point),
            "lhs_log": log_str(lhs),
            "rhs_log": log_str(rhs),
        }
        for point, lhs, rhs in violators
    ]


def audit_payload(report: AuditReport, spec: dict) -> dict:
    return {
        "spec": spec,
        "epsilon": frac_str(report.epsilon),
        "mode": report.mode.value,
        "rho": frac_str(report.rho),
        "delta": frac_str(report.delta),
        "m": report.m,
        "points_checked": report.points_checked,
        "stabilized": report.stabilized,
        "violators": _violator_entries(report.violators),
        "rungs": [
            {
                "bound": frac_str(rung.bound),
                "points_checked": rung.points_checked,
                "violators": _violator_entries(rung.violators),
            }
            for rung in report.rungs
        ],
    }


def audit_csv(report: AuditReport) -> bytes:
    rows = []
    for rung in report.rungs:
        if not rung.violators:
            rows.append((frac_str(rung.bound), rung.points_checked, "", "", ""))
        for point, lhs, rhs in rung.violators:
            rows.append(
                (
                    frac_str(rung.bound),
                    rung.points_checked,
                    " ".join(str(v) for v in point),
                    log_str(lhs),
                    log_str(rhs),
                )
            )
    return csv_bytes(
        ("bound", "points_checked", "violator", "lhs_log", "rhs_log"), rows
    )


# ------------------------------------------------------------ stability


def stability_payload(table: StabilityTable, spec: dict) -> dict:
    return {
        "spec": spec,
        "bounds": [frac_str(b) for b in table.bounds],
        "counts": list(table.counts),
        "stable": table.stable,
    }


def stability_csv(table: StabilityTable) -> bytes:
    rows = [
        (frac_str(b), count) for b, count in zip(table.bounds, table.counts)
    ]
    return csv_bytes(("bound", "classes"), rows)


# --------------------------------------------------------------- ratios


def ratios_payload(report: RatioReport, spec: dict) -> dict:
    return {
        "spec": spec,
        "ratios": [log_str(r) for r in report.ratios],
        "summary": report.summary,
    }


# -------------------------------------------------------------- heights


def heights_payload(table: dict, spec: dict) -> dict:
    return {"spec": spec, **table}


def heights_csv(table: dict) -> bytes:
    rows = []
    for key in sorted(table):
        value = table[key]
        if isinstance(value, dict):
            for inner, norm in value.items():
                rows.append((f"{key}[{inner}]", norm))
        elif isinstance(value, list):
            rows.append((key, " ".join(str(v) for v in value)))
        else:
            rows.append((key, value))
    return csv_bytes(("quantity", "value"), rows)
