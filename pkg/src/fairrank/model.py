"""Domain types: desired distributions, candidate pools, tasks, ranked lists.

A ranking task is (desired distribution over attribute values, one
score-sorted candidate pool per attribute value, target length k_max).
Attribute values are identified positionally: index i everywhere refers to
labels[i] of the task's desired distribution. validate_task() is the single
entry point that turns raw inputs into the aligned, frozen form the
algorithms and metrics assume.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AllZeroCounts,
    DistributionNotNormalized,
    InsufficientCandidates,
    PoolNotSorted,
    UnknownAttribute,
    ValidationError,
)

NORMALIZATION_TOL = 1e-9


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _as_float_array(values, what: str) -> np.ndarray:
    try:
        return np.asarray(list(values), dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what} must be numeric: {exc}") from None


@dataclass(frozen=True)
class DesiredDistribution:
    """Target proportions over attribute values, index-aligned with labels."""

    labels: tuple[str, ...]
    proportions: np.ndarray

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, float]) -> DesiredDistribution:
        labels = tuple(str(k) for k in mapping)
        props = _as_float_array(mapping.values(), "desired proportions")
        return cls(labels=labels, proportions=_freeze(props))

    def as_mapping(self) -> dict[str, float]:
        return {a: float(p) for a, p in zip(self.labels, self.proportions)}

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownAttribute(f"attribute {label!r} is not in the desired distribution") from None

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class ScoredPool:
    """One candidate score array per attribute value, index-aligned with labels.

    Each array is expected to be sorted in non-increasing order; that is
    enforced by validate_task, not by the constructor.
    """

    labels: tuple[str, ...]
    scores: tuple[np.ndarray, ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Sequence[float]]) -> ScoredPool:
        labels = tuple(str(k) for k in mapping)
        scores = tuple(
            _freeze(_as_float_array(v, f"pool scores for {k!r}")) for k, v in mapping.items()
        )
        return cls(labels=labels, scores=scores)

    def total(self) -> int:
        """Number of candidates across all attribute values."""
        return sum(len(s) for s in self.scores)


@dataclass(frozen=True)
class RankingTask:
    desired: DesiredDistribution
    pool: ScoredPool
    k_max: int


@dataclass(frozen=True)
class RankedList:
    """A ranking: parallel arrays of attribute indices and scores.

    attributes[i] indexes into labels; position i of the list (0-based) holds
    a candidate of attribute labels[attributes[i]] with score scores[i].
    fallback_events counts positions where a constrained algorithm had to
    substitute an attribute because the one its rule demanded was exhausted.
    """

    labels: tuple[str, ...]
    attributes: np.ndarray
    scores: np.ndarray
    fallback_events: int = 0

    def __len__(self) -> int:
        return len(self.attributes)

    def attribute_labels(self) -> list[str]:
        return [self.labels[a] for a in self.attributes]

    def to_records(self) -> list[dict]:
        """JSON-friendly rows: position (1-based), attribute label, score."""
        return [
            {"position": i + 1, "attribute": self.labels[a], "score": float(s)}
            for i, (a, s) in enumerate(zip(self.attributes, self.scores))
        ]

    @classmethod
    def from_records(cls, records: Sequence[Mapping], labels: Sequence[str]) -> RankedList:
        """Rebuild a RankedList from to_records()-shaped rows.

        Rows are ordered by their "position" key when every row has one,
        otherwise taken in the given order. Attribute labels must appear in
        `labels`.
        """
        rows = list(records)
        if rows and all(isinstance(r, Mapping) and "position" in r for r in rows):
            rows.sort(key=lambda r: r["position"])
        label_index = {a: i for i, a in enumerate(labels)}
        attrs = np.empty(len(rows), dtype=np.int64)
        scores = np.empty(len(rows), dtype=np.float64)
        for i, row in enumerate(rows):
            try:
                label = row["attribute"]
                scores[i] = float(row["score"])
            except (TypeError, KeyError, ValueError) as exc:
                raise ValidationError(f"ranked row {i}: {exc!r}") from None
            if label not in label_index:
                raise UnknownAttribute(f"attribute {label!r} is not in the desired distribution")
            attrs[i] = label_index[label]
        return cls(labels=tuple(labels), attributes=_freeze(attrs), scores=_freeze(scores))


def empirical_distribution(counts: Mapping[str, float]) -> DesiredDistribution:
    """Normalize raw attribute counts into a distribution.

    Label order follows the mapping's insertion order. Counts must be
    non-negative and finite; a zero total has no distribution and raises
    AllZeroCounts.
    """
    if not counts:
        raise AllZeroCounts("no counts given")
    labels = tuple(str(k) for k in counts)
    values = _as_float_array(counts.values(), "counts")
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ValidationError("counts must be finite and non-negative")
    total = values.sum()
    if total <= 0:
        raise AllZeroCounts("counts sum to zero")
    return DesiredDistribution(labels=labels, proportions=_freeze(values / total))


def validate_distribution(dist: DesiredDistribution) -> None:
    """Check labels are unique and proportions form a distribution."""
    if len(dist.labels) == 0:
        raise DistributionNotNormalized("distribution has no attribute values")
    if len(set(dist.labels)) != len(dist.labels):
        raise ValidationError("duplicate attribute labels in distribution")
    p = np.asarray(dist.proportions, dtype=np.float64)
    if p.ndim != 1 or len(p) != len(dist.labels):
        raise ValidationError("proportions must be one value per label")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise DistributionNotNormalized("proportions must be finite and non-negative")
    if abs(float(p.sum()) - 1.0) > NORMALIZATION_TOL:
        raise DistributionNotNormalized(f"proportions sum to {float(p.sum()):.12f}, expected 1")


def validate_task(task: RankingTask, allow_unsorted: bool = False) -> RankingTask:
    """Validate a task and return its canonical form.

    The returned task has: zero-proportion attribute values dropped (along
    with their pools), pools aligned to the desired label order (attributes
    missing from the pool mapping get empty pools), scores checked finite and
    non-increasing, and all arrays frozen. With allow_unsorted=True, unsorted
    pools are re-sorted descending instead of raising PoolNotSorted.

    Raises InsufficientCandidates when the surviving pools hold fewer than
    k_max candidates in total.
    """
    if not isinstance(task.k_max, int) or isinstance(task.k_max, bool) or task.k_max < 1:
        raise ValidationError(f"k_max must be a positive integer, got {task.k_max!r}")
    validate_distribution(task.desired)

    if len(set(task.pool.labels)) != len(task.pool.labels):
        raise ValidationError("duplicate attribute labels in pool")
    known = set(task.desired.labels)
    for a in task.pool.labels:
        if a not in known:
            raise UnknownAttribute(f"pool attribute {a!r} is not in the desired distribution")
    by_label = dict(zip(task.pool.labels, task.pool.scores))

    labels: list[str] = []
    props: list[float] = []
    pools: list[np.ndarray] = []
    for a, p in zip(task.desired.labels, task.desired.proportions):
        if p == 0:
            continue
        scores = np.asarray(by_label.get(a, ()), dtype=np.float64)
        if not np.all(np.isfinite(scores)):
            raise ValidationError(f"pool for {a!r} contains non-finite scores")
        if scores.size > 1 and np.any(np.diff(scores) > 0):
            if not allow_unsorted:
                raise PoolNotSorted(f"pool for {a!r} is not sorted by non-increasing score")
            scores = np.sort(scores)[::-1]
        labels.append(a)
        props.append(float(p))
        pools.append(_freeze(scores.copy()))

    desired = DesiredDistribution(labels=tuple(labels), proportions=_freeze(np.asarray(props)))
    validate_distribution(desired)
    pool = ScoredPool(labels=tuple(labels), scores=tuple(pools))
    if pool.total() < task.k_max:
        raise InsufficientCandidates(
            f"pools hold {pool.total()} candidates, k_max is {task.k_max}"
        )
    return RankingTask(desired=desired, pool=pool, k_max=task.k_max)


def task_from_dict(obj) -> RankingTask:
    """Build a (not yet validated) task from parsed JSON.

    Expected shape: {"k": int, "desired": {label: proportion},
    "pools": {label: [score, ...]}}.
    """
    if not isinstance(obj, Mapping):
        raise ValidationError("task must be a JSON object")
    missing = [key for key in ("k", "desired", "pools") if key not in obj]
    if missing:
        raise ValidationError(f"task is missing keys: {', '.join(missing)}")
    if not isinstance(obj["desired"], Mapping) or not isinstance(obj["pools"], Mapping):
        raise ValidationError("'desired' and 'pools' must be JSON objects")
    k = obj["k"]
    if isinstance(k, float) and k.is_integer():
        k = int(k)
    return RankingTask(
        desired=DesiredDistribution.from_mapping(obj["desired"]),
        pool=ScoredPool.from_mapping(obj["pools"]),
        k_max=k,
    )
