"""Rendering of evaluation results as JSON, CSV, and aligned text tables."""

from __future__ import annotations

import json

from .dataset import format_number
from .metrics import METRIC_FIELDS
from .transforms import TRANSFORM_KINDS, TransformTable
from .validation import ValidationResult

#: column order used by the aligned summary tables
TABLE_METRICS = (("lsd", "LSD"), ("mmre", "MMRE"),
                 ("pred25", "PRED(25)"), ("re_star", "RE*"))


def result_to_json_dict(result: ValidationResult, notes=()) -> dict:
    folds = []
    failed = {f.fold: f for f in result.failures}
    for i in range(result.n_folds):
        if i in failed:
            folds.append({"fold": i, "failed": failed[i].code,
                          "message": failed[i].message})
        else:
            entry = {"fold": i}
            fold_report = result.fold_reports[i]
            if fold_report is not None:
                entry.update(fold_report.to_json_dict())
            else:
                entry["n"] = len(result.fold_predictions[i])
            folds.append(entry)
    return {
        "dataset": result.dataset_name,
        "dataset_fingerprint": result.dataset_fingerprint,
        "plan": result.plan.label(),
        "seed": result.plan.seed,
        "n_folds": result.n_folds,
        "n_succeeded": result.n_succeeded,
        "aggregate": result.summary.to_json_dict() if result.summary else None,
        "pooled": result.pooled_report.to_json_dict() if result.pooled_report else None,
        "folds": folds,
        "failures": [{"fold": f.fold, "code": f.code, "message": f.message}
                     for f in result.failures],
        "notes": list(notes),
    }


def to_json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def result_to_csv_text(result: ValidationResult) -> str:
    header = "fold,status," + ",".join(("n",) + METRIC_FIELDS)
    lines = [header]
    failed = {f.fold: f for f in result.failures}
    for i in range(result.n_folds):
        if i in failed:
            lines.append(f"{i},{failed[i].code}," + "," * len(METRIC_FIELDS))
            continue
        fold_report = result.fold_reports[i]
        if fold_report is None:
            continue
        cells = [str(fold_report.n)] + [format_number(getattr(fold_report, m))
                                        for m in METRIC_FIELDS]
        lines.append(f"{i},ok," + ",".join(cells))
    if result.pooled_report is not None:
        r = result.pooled_report
        cells = [str(r.n)] + [format_number(getattr(r, m)) for m in METRIC_FIELDS]
        lines.append("pooled,ok," + ",".join(cells))
    if result.summary is not None:
        for stat, source in (("mean", result.summary.means), ("std", result.summary.stds)):
            cells = [""] + [format_number(source[m]) for m in METRIC_FIELDS]
            lines.append(f"{stat},," + ",".join(cells))
    return "\n".join(lines) + "\n"


def _pad(cells, widths) -> str:
    return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()


def summary_table(rows) -> str:
    """Aligned table: one row per (label, summary) pair."""
    header = ["dataset"] + [title for _, title in TABLE_METRICS]
    body = []
    for label, summary in rows:
        cells = [label]
        for key, _ in TABLE_METRICS:
            cells.append(f"{summary.means[key]:.2f} +/- {summary.stds[key]:.2f}")
        body.append(cells)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = [_pad(header, widths)]
    lines.extend(_pad(r, widths) for r in body)
    return "\n".join(lines) + "\n"


def result_to_table_text(result: ValidationResult, notes=()) -> str:
    table = summary_table([(result.dataset_name, result.summary)])
    lines = [table.rstrip("\n")]
    lines.append(f"plan {result.plan.label()}  seed {result.plan.seed}  "
                 f"folds {result.n_succeeded}/{result.n_folds} succeeded")
    if result.pooled_report is not None:
        lines.append("metrics computed over the pooled predictions of all folds")
    for note in notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def transform_table_text(ds_name: str, table: TransformTable) -> str:
    header = ["variable", "kind", "chosen"] + [f"b1[{k}]" for k in TRANSFORM_KINDS]
    body = []
    for name, entry in table.entries.items():
        kind = "categorical" if entry.categorical else "numeric"
        row = [name, kind, entry.kind]
        for k in TRANSFORM_KINDS:
            row.append(entry.describe(k) if not entry.categorical else "-")
        body.append(row)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = [f"dataset: {ds_name}", _pad(header, widths)]
    lines.extend(_pad(r, widths) for r in body)
    return "\n".join(lines) + "\n"


def transform_table_json(ds_name: str, table: TransformTable) -> dict:
    payload = table.to_json_dict()
    payload["dataset"] = ds_name
    return payload
