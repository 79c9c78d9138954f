"""Sampling regimes and the evaluation harness.

Fold generation is a pure function of (dataset content hash, plan): the
PCG32 stream is selected by the dataset fingerprint and seeded by the plan
seed, so identical inputs give identical folds on any machine, and two
models evaluated under the same plan see byte-identical splits.

Metric handling differs by regime.  Leave-one-out produces singleton test
sets on which the variance-based measures are undefined, so its metrics
are computed once over the pooled predictions of all folds; k-fold and
repeated holdout compute metrics per fold and aggregate them.  A fold that
fails (transform domain violation, unseen factor level, ...) is recorded
with its reason and excluded from aggregation, never silently dropped.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, split
from .errors import AtlmError, PlanError, ValidationError
from .linear import UNSEEN_ERROR
from .metrics import MetricReport, MetricSummary, aggregate, report
from .pipeline import PredictionSet, atlm_fit, atlm_predict, pooled
from .rng import Pcg32

LOOCV = "loocv"
KFOLD = "kfold"
HOLDOUT = "holdout"

_MAX_SEED = (1 << 64) - 1


@dataclass(frozen=True)
class ValidationPlan:
    kind: str
    seed: int = 1
    k: int | None = None
    test_size: int | None = None
    repeats: int | None = None

    def __post_init__(self) -> None:
        if not (0 <= self.seed <= _MAX_SEED):
            raise PlanError(f"seed must fit in 64 bits, got {self.seed}")
        if self.kind == LOOCV:
            if self.k is not None or self.test_size is not None or self.repeats is not None:
                raise PlanError("loocv takes no k/test_size/repeats")
        elif self.kind == KFOLD:
            if self.k is None or self.k < 2:
                raise PlanError(f"kfold needs k >= 2, got {self.k}")
            if self.test_size is not None or self.repeats is not None:
                raise PlanError("kfold takes no test_size/repeats")
        elif self.kind == HOLDOUT:
            if self.test_size is None or self.test_size < 1:
                raise PlanError(f"holdout needs test_size >= 1, got {self.test_size}")
            if self.repeats is None or self.repeats < 1:
                raise PlanError(f"holdout needs repeats >= 1, got {self.repeats}")
            if self.k is not None:
                raise PlanError("holdout takes no k")
        else:
            raise PlanError(f"unknown plan kind {self.kind!r}")

    def label(self) -> str:
        if self.kind == LOOCV:
            return "loocv"
        if self.kind == KFOLD:
            return f"kfold:{self.k}"
        return f"holdout:{self.test_size}x{self.repeats}"

    @classmethod
    def parse(cls, text: str, seed: int = 1) -> "ValidationPlan":
        """Parse ``loocv``, ``kfold:K`` or ``holdout:SxR``."""
        text = text.strip()
        if text == LOOCV:
            return cls(kind=LOOCV, seed=seed)
        if text.startswith("kfold:"):
            try:
                k = int(text.split(":", 1)[1])
            except ValueError:
                raise PlanError(f"bad kfold spec {text!r}") from None
            return cls(kind=KFOLD, seed=seed, k=k)
        if text.startswith("holdout:"):
            spec = text.split(":", 1)[1]
            parts = spec.split("x")
            if len(parts) != 2:
                raise PlanError(f"bad holdout spec {text!r}, expected holdout:SxR")
            try:
                size, repeats = int(parts[0]), int(parts[1])
            except ValueError:
                raise PlanError(f"bad holdout spec {text!r}") from None
            return cls(kind=HOLDOUT, seed=seed, test_size=size, repeats=repeats)
        raise PlanError(f"unknown plan {text!r}; expected loocv, kfold:K or holdout:SxR")


@dataclass(frozen=True)
class FoldAssignment:
    plan: ValidationPlan
    dataset_fingerprint: str
    folds: tuple

    def __len__(self) -> int:
        return len(self.folds)

    def to_json_dict(self) -> dict:
        return {
            "plan": self.plan.label(),
            "seed": self.plan.seed,
            "dataset_fingerprint": self.dataset_fingerprint,
            "folds": [{"train": list(train), "test": list(test)}
                      for train, test in self.folds],
        }


def _plan_rng(plan: ValidationPlan, fingerprint: str) -> Pcg32:
    stream = int(fingerprint[:16], 16)
    return Pcg32(plan.seed, stream=stream)


def generate_folds(ds: Dataset, plan: ValidationPlan) -> FoldAssignment:
    """Deterministic folds for the plan; see the module docstring."""
    n = len(ds)
    ids = list(ds.ids)
    fingerprint = ds.fingerprint()

    if plan.kind == LOOCV:
        folds = tuple(
            (tuple(i for i in ids if i != test_id), (test_id,))
            for test_id in ids)
        return FoldAssignment(plan, fingerprint, folds)

    rng = _plan_rng(plan, fingerprint)
    if plan.kind == KFOLD:
        if plan.k > n:
            raise PlanError(f"kfold k={plan.k} exceeds {n} rows of {ds.name!r}")
        shuffled = list(ids)
        rng.shuffle(shuffled)
        base, extra = divmod(n, plan.k)
        folds = []
        start = 0
        for i in range(plan.k):
            size = base + (1 if i < extra else 0)
            test = set(shuffled[start:start + size])
            start += size
            folds.append((
                tuple(i for i in ids if i not in test),
                tuple(i for i in ids if i in test),
            ))
        return FoldAssignment(plan, fingerprint, tuple(folds))

    if plan.test_size >= n:
        raise PlanError(
            f"holdout test_size={plan.test_size} must be below {n} rows of {ds.name!r}")
    folds = []
    for _ in range(plan.repeats):
        shuffled = list(ids)
        rng.shuffle(shuffled)
        test = set(shuffled[:plan.test_size])
        folds.append((
            tuple(i for i in ids if i not in test),
            tuple(i for i in ids if i in test),
        ))
    return FoldAssignment(plan, fingerprint, tuple(folds))


@dataclass(frozen=True)
class FoldFailure:
    fold: int
    code: str
    message: str


@dataclass(frozen=True)
class ValidationResult:
    dataset_name: str
    dataset_fingerprint: str
    plan: ValidationPlan
    fold_predictions: tuple
    fold_reports: tuple
    failures: tuple
    pooled_report: MetricReport | None
    summary: MetricSummary | None

    @property
    def n_folds(self) -> int:
        return len(self.fold_predictions)

    @property
    def n_succeeded(self) -> int:
        return self.n_folds - len(self.failures)


def _run_fold(ds: Dataset, fold, unseen_level: str):
    train_ids, test_ids = fold
    train, test = split(ds, train_ids, test_ids)
    model = atlm_fit(train)
    predictions = atlm_predict(model, test, unseen_level=unseen_level)
    training_response = np.asarray(train.response_column(), dtype=float)
    return predictions, training_response


def run_validation(ds: Dataset, plan: ValidationPlan, *,
                   unseen_level: str = UNSEEN_ERROR,
                   jobs: int = 1) -> ValidationResult:
    """Fit/predict/score every fold of the plan."""
    assignment = generate_folds(ds, plan)

    def attempt(index_fold):
        index, fold = index_fold
        try:
            return index, _run_fold(ds, fold, unseen_level), None
        except AtlmError as exc:
            return index, None, FoldFailure(index, exc.code, str(exc))

    work = list(enumerate(assignment.folds))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(attempt, work))
    else:
        outcomes = [attempt(item) for item in work]
    outcomes.sort(key=lambda o: o[0])

    predictions: list[PredictionSet | None] = []
    responses: list[np.ndarray | None] = []
    failures: list[FoldFailure] = []
    for _, result, failure in outcomes:
        if failure is not None:
            failures.append(failure)
            predictions.append(None)
            responses.append(None)
        else:
            ps, training_response = result
            predictions.append(ps)
            responses.append(training_response)

    succeeded = [(ps, tr) for ps, tr in zip(predictions, responses) if ps is not None]
    if not succeeded:
        raise ValidationError(
            f"all {len(assignment.folds)} folds failed for {ds.name!r}; "
            f"first failure: {failures[0].message}")

    pooled_report = None
    fold_reports: list[MetricReport | None] = [None] * len(predictions)
    if plan.kind == LOOCV:
        # singleton test sets: score the pooled predictions once, with the
        # full response sample as the random-guess reference
        all_preds = pooled([ps for ps, _ in succeeded])
        full_response = np.asarray(ds.response_column(), dtype=float)
        pooled_report = report(all_preds, full_response)
        summary = aggregate([pooled_report])
    else:
        for i, (ps, tr) in enumerate(zip(predictions, responses)):
            if ps is not None:
                fold_reports[i] = report(ps, tr)
        summary = aggregate([r for r in fold_reports if r is not None])

    return ValidationResult(
        dataset_name=ds.name,
        dataset_fingerprint=assignment.dataset_fingerprint,
        plan=plan,
        fold_predictions=tuple(predictions),
        fold_reports=tuple(fold_reports),
        failures=tuple(failures),
        pooled_report=pooled_report,
        summary=summary,
    )


@dataclass(frozen=True)
class CvRunSummary:
    run: int
    seed: int
    re_star_mean: float
    re_star_stderr: float
    n_folds: int
    n_succeeded: int


def repeat_cv_experiment(ds: Dataset, k: int, runs: int, base_seed: int = 1, *,
                         unseen_level: str = UNSEEN_ERROR,
                         jobs: int = 1) -> tuple[CvRunSummary, ...]:
    """Independent k-fold runs with seeds base_seed, base_seed+1, ..."""
    if runs < 2:
        raise PlanError(f"repeat experiment needs at least 2 runs, got {runs}")
    summaries = []
    for run in range(runs):
        seed = base_seed + run
        plan = ValidationPlan(kind=KFOLD, seed=seed, k=k)
        result = run_validation(ds, plan, unseen_level=unseen_level, jobs=jobs)
        values = np.array([r.re_star for r in result.fold_reports if r is not None])
        stderr = 0.0 if values.size < 2 else float(values.std(ddof=1) / np.sqrt(values.size))
        summaries.append(CvRunSummary(
            run=run,
            seed=seed,
            re_star_mean=float(values.mean()),
            re_star_stderr=stderr,
            n_folds=result.n_folds,
            n_succeeded=result.n_succeeded,
        ))
    return tuple(summaries)
