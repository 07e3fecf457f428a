"""Seeded Monte-Carlo evaluation of the ranking algorithms on random tasks.

For every attribute count in [attr_min, attr_max] the harness draws
num_distributions random desired distributions; each is paired with
`replications` fresh candidate pools, every configured algorithm ranks the
resulting task, and the per-(num_attr, algorithm) means of the measures are
aggregated into AggregateRow records.

Determinism: random streams use the Philox bit generator keyed by
SeedSequence(seed, spawn_key=...) where the spawn key identifies the
(num_attr, distribution index) for desired draws and (num_attr,
distribution index, replication index) for pool draws. Work is split into
fixed-size chunks of distribution indices independent of the worker count,
and per-chunk running means merge in chunk order, so the output is
byte-identical for any --jobs value. Tasks where an algorithm fails (e.g.
InsufficientCandidates) are excluded from that cell's means; task_count
records how many tasks each mean covers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import NamedTuple

import numpy as np

from .errors import EmptyResult, InvalidConfig, RankingError
from .metrics import MetricsReport, measure
from .model import DesiredDistribution, RankingTask, ScoredPool, _freeze, validate_task
from .rerank import _CANONICAL_ORDER, Algorithm, coerce_algorithm, rank

CSV_HEADER = (
    "num_attr,algorithm,mean_infeasible_index,mean_infeasible_count,"
    "mean_min_skew,mean_max_skew,mean_ndkl,mean_ndcg,task_count"
)

# distribution indices per work unit; fixed so results don't depend on --jobs
_CHUNK = 64

_METRIC_WIDTH = 6


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def attribute_labels(num_attr: int) -> tuple[str, ...]:
    return tuple(f"a{i + 1}" for i in range(num_attr))


def gen_desired(num_attr: int, rng: np.random.Generator) -> DesiredDistribution:
    """Random desired distribution: uniform draws normalized to sum 1.

    Proportions are strictly positive (zero draws are resampled).
    """
    u = rng.random(num_attr)
    while not np.all(u > 0):
        u = rng.random(num_attr)
    return DesiredDistribution(
        labels=attribute_labels(num_attr), proportions=_freeze(u / u.sum())
    )


def gen_pool(num_attr: int, pool_size: int, rng: np.random.Generator) -> ScoredPool:
    """pool_size uniform (0, 1) scores per attribute value, sorted descending."""
    s = rng.random((num_attr, pool_size))
    while not np.all(s > 0):
        s = rng.random((num_attr, pool_size))
    s = np.sort(s, axis=1)[:, ::-1]
    return ScoredPool(
        labels=attribute_labels(num_attr),
        scores=tuple(_freeze(row.copy()) for row in s),
    )


@dataclass(frozen=True)
class SimulationConfig:
    attr_min: int = 2
    attr_max: int = 10
    num_distributions: int = 1000
    replications: int = 1
    pool_size: int = 100
    k_max: int = 100
    algorithms: tuple[Algorithm, ...] = tuple(Algorithm)
    seed: int = 42

    def __post_init__(self):
        if self.attr_min < 2 or self.attr_max < self.attr_min:
            raise InvalidConfig(f"bad attribute range {self.attr_min}..{self.attr_max}")
        for name in ("num_distributions", "replications", "pool_size", "k_max"):
            if getattr(self, name) < 1:
                raise InvalidConfig(f"{name} must be >= 1")
        if self.seed < 0:
            raise InvalidConfig("seed must be non-negative")
        if self.attr_min * self.pool_size < self.k_max:
            raise InvalidConfig(
                f"{self.attr_min} pools of {self.pool_size} cannot fill k_max={self.k_max}"
            )
        if not self.algorithms:
            raise InvalidConfig("no algorithms selected")
        algos = tuple(
            sorted({coerce_algorithm(a) for a in self.algorithms}, key=_CANONICAL_ORDER.get)
        )
        object.__setattr__(self, "algorithms", algos)


@dataclass(frozen=True)
class AggregateRow:
    """Mean measures for one (num_attr, algorithm) cell of the grid."""

    num_attr: int
    algorithm: Algorithm
    mean_infeasible_index: float
    mean_infeasible_count: float
    mean_min_skew: float
    mean_max_skew: float
    mean_ndkl: float
    mean_ndcg: float
    task_count: int


class TaskOutcome(NamedTuple):
    reports: dict[Algorithm, MetricsReport]
    failures: dict[Algorithm, str]


def run_task(task: RankingTask, algorithms, fallback: bool = False) -> TaskOutcome:
    """Rank one validated task with each algorithm and measure every result.

    ndcg is measured against the merged pools' descending score order, so
    vanilla scores exactly 1.0. Algorithms that raise a RankingError land in
    failures (exception class name) instead of reports.
    """
    ideal = np.sort(np.concatenate(task.pool.scores))[::-1]
    reports: dict[Algorithm, MetricsReport] = {}
    failures: dict[Algorithm, str] = {}
    for algo in algorithms:
        algo = coerce_algorithm(algo)
        try:
            ranked = rank(task, algo, fallback)
            reports[algo] = measure(ranked, task.desired, ideal_scores=ideal, k=task.k_max)
        except RankingError as exc:
            failures[algo] = type(exc).__name__
    return TaskOutcome(reports, failures)


def _metric_vector(report: MetricsReport) -> np.ndarray:
    return np.array(
        [
            report.infeasible_index,
            report.infeasible_count,
            report.min_skew,
            report.max_skew,
            report.ndkl,
            report.ndcg,
        ],
        dtype=np.float64,
    )


def _run_chunk(config: SimulationConfig, num_attr: int, lo: int, hi: int):
    """Running means over distribution indices [lo, hi) for one num_attr."""
    counts = {a.value: 0 for a in config.algorithms}
    means = {a.value: np.zeros(_METRIC_WIDTH) for a in config.algorithms}
    fails = {a.value: 0 for a in config.algorithms}
    for d in range(lo, hi):
        desired = gen_desired(num_attr, _rng(config.seed, num_attr, d))
        for r in range(config.replications):
            pool = gen_pool(num_attr, config.pool_size, _rng(config.seed, num_attr, d, r))
            task = validate_task(RankingTask(desired=desired, pool=pool, k_max=config.k_max))
            outcome = run_task(task, config.algorithms)
            for algo, report in outcome.reports.items():
                key = algo.value
                counts[key] += 1
                means[key] += (_metric_vector(report) - means[key]) / counts[key]
            for algo in outcome.failures:
                fails[algo.value] += 1
    return counts, means, fails


def run_grid(config: SimulationConfig, jobs: int = 1) -> list[AggregateRow]:
    """Evaluate the whole grid; rows come back sorted by (num_attr, algorithm)."""
    if jobs < 1:
        raise InvalidConfig("jobs must be >= 1")
    spans = [
        (num_attr, lo, min(lo + _CHUNK, config.num_distributions))
        for num_attr in range(config.attr_min, config.attr_max + 1)
        for lo in range(0, config.num_distributions, _CHUNK)
    ]
    if jobs == 1:
        results = [_run_chunk(config, *span) for span in spans]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_chunk, repeat(config), *zip(*spans)))

    # fold chunk partials in span order so merge order is jobs-independent
    folded: dict[tuple[int, Algorithm], list] = {}
    for (num_attr, _, _), (counts, means, _) in zip(spans, results):
        for algo in config.algorithms:
            c = counts[algo.value]
            if c == 0:
                continue
            cell = folded.setdefault((num_attr, algo), [0, np.zeros(_METRIC_WIDTH)])
            total = cell[0] + c
            cell[1] += (means[algo.value] - cell[1]) * (c / total)
            cell[0] = total

    rows = []
    for num_attr in range(config.attr_min, config.attr_max + 1):
        for algo in config.algorithms:
            count, mean = folded.get((num_attr, algo), (0, np.zeros(_METRIC_WIDTH)))
            rows.append(AggregateRow(num_attr, algo, *(float(x) for x in mean), count))
    return rows


def write_csv(rows, path) -> None:
    """Serialize aggregate rows (sorted, floats at 6 decimal places)."""
    if not rows:
        raise EmptyResult("no aggregate rows to write")
    ordered = sorted(rows, key=lambda r: (r.num_attr, _CANONICAL_ORDER[r.algorithm]))
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in ordered:
            fh.write(
                f"{r.num_attr},{r.algorithm.value},"
                f"{r.mean_infeasible_index:.6f},{r.mean_infeasible_count:.6f},"
                f"{r.mean_min_skew:.6f},{r.mean_max_skew:.6f},"
                f"{r.mean_ndkl:.6f},{r.mean_ndcg:.6f},{r.task_count}\n"
            )


def write_diagnostics(rows, config: SimulationConfig, path) -> int:
    """Write a sidecar CSV for cells that excluded failed tasks.

    Returns the number of flagged cells; writes nothing when all cells
    covered every task.
    """
    expected = config.num_distributions * config.replications
    flagged = [
        r
        for r in sorted(rows, key=lambda r: (r.num_attr, _CANONICAL_ORDER[r.algorithm]))
        if r.task_count < expected
    ]
    if not flagged:
        return 0
    with open(path, "w", newline="") as fh:
        fh.write("num_attr,algorithm,excluded_tasks,task_count,expected\n")
        for r in flagged:
            fh.write(
                f"{r.num_attr},{r.algorithm.value},{expected - r.task_count},"
                f"{r.task_count},{expected}\n"
            )
    return len(flagged)
