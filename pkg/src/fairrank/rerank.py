"""Score-ordered merging and deterministic representation-constrained re-ranking.

All algorithms consume a validated RankingTask (see model.validate_task) and
emit a RankedList of exactly k_max candidates. Pools are consumed strictly
in order, so every algorithm preserves score order within each attribute
value.

vanilla merges the pools by descending score and ignores the desired
distribution (the utility-maximizing baseline).

The constrained algorithms maintain per-attribute counts against the quotas
floor(k * p_a) and ceil(k * p_a) at each prefix length k:

- detgreedy: serve any attribute below its floor (highest next score first);
  otherwise pick the highest next score among attributes below their ceiling.
- detcons: once floors are satisfied, prefer the attribute whose ceiling
  constraint will bind soonest, i.e. minimal ceil(k * p_a) / p_a; ties prefer
  the higher next score, then the lower attribute index.
- detrelaxed: like detcons but compares ceil(ceil(k * p_a) / p_a), which
  groups attributes into coarser equivalence classes; within the argmin
  class the highest next score wins.
- detconstsort: walks a virtual prefix counter; whenever an attribute's
  floor quota increments, its next candidate is appended with a movement
  bound equal to the counter value, then swapped toward the front while the
  left neighbor has a lower score and may still sit that far down.

Every tie anywhere resolves by ascending attribute index (the order labels
appear in the desired distribution), which makes all algorithms fully
deterministic.

When an algorithm demands an attribute whose pool is exhausted it raises
InsufficientCandidates. With fallback=True it instead re-applies its
selection rule over widening candidate sets (below-ceiling attributes with
candidates remaining, then any attribute with candidates remaining) and
counts each substitution in RankedList.fallback_events.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import EmptyCandidateSets, InsufficientCandidates, UnknownAlgorithm
from .model import RankedList, RankingTask, _freeze
from .quota import ceil_quota, ceil_quotas, floor_quota, floor_quotas


class Algorithm(Enum):
    """Ranking algorithms, in canonical reporting order."""

    VANILLA = "vanilla"
    DET_GREEDY = "detgreedy"
    DET_CONS = "detcons"
    DET_RELAXED = "detrelaxed"
    DET_CONST_SORT = "detconstsort"


_CANONICAL_ORDER = {algo: i for i, algo in enumerate(Algorithm)}


def coerce_algorithm(value) -> Algorithm:
    if isinstance(value, Algorithm):
        return value
    try:
        return Algorithm(value)
    except ValueError:
        names = ", ".join(a.value for a in Algorithm)
        raise UnknownAlgorithm(f"unknown algorithm {value!r}; expected one of: {names}") from None


_NEG_INF = float("-inf")


def _pick_greedy(cands, counts, pools, p, ce):
    """Highest next score among cands; None if every pool there is empty."""
    best = None
    best_score = _NEG_INF
    for a in cands:
        c = counts[a]
        if c < len(pools[a]):
            s = pools[a][c]
            if s > best_score:
                best, best_score = a, s
    return best


def _pick_cons(cands, counts, pools, p, ce):
    """Minimal ceil-quota pressure ce[a] / p[a]; ties by next score, then index.

    Exhausted attributes lose score ties but can still win outright on the
    pressure key; in that case the rule's demand cannot be served and None
    is returned.
    """
    best = None
    best_key = None
    for a in cands:
        c = counts[a]
        score = pools[a][c] if c < len(pools[a]) else _NEG_INF
        key = (ce[a] / p[a], -score, a)
        if best_key is None or key < best_key:
            best, best_key = a, key
    if best is not None and counts[best] >= len(pools[best]):
        return None
    return best


def _pick_relaxed(cands, counts, pools, p, ce):
    """Integerized pressure ceil(ce[a] / p[a]) groups cands; best score wins."""
    levels = {a: ceil_quota(ce[a] / p[a]) for a in cands}
    cutoff = min(levels.values())
    return _pick_greedy([a for a in cands if levels[a] == cutoff], counts, pools, p, ce)


_RULES = {
    Algorithm.DET_GREEDY: _pick_greedy,
    Algorithm.DET_CONS: _pick_cons,
    Algorithm.DET_RELAXED: _pick_relaxed,
}


def _select(rule, counts, pools, p, fl, ce):
    """One greedy-family selection step. Returns (phase, attribute or None).

    Attributes below their floor are mandatory and served best-score-first;
    only when none are does the algorithm-specific rule choose among
    attributes below their ceiling.
    """
    below_min = [a for a in range(len(p)) if counts[a] < fl[a]]
    if below_min:
        return "min", _pick_greedy(below_min, counts, pools, p, ce)
    below_max = [a for a in range(len(p)) if counts[a] < ce[a]]
    if not below_max:
        raise EmptyCandidateSets("no attribute below its ceiling quota")
    return "max", rule(below_max, counts, pools, p, ce)


def _choose_next(algorithm, k: int, proportions, counts, pools):
    """Greedy-family decision for prefix length k given mid-ranking state.

    Exposed for tests: proportions/counts/pools describe the state after
    k - 1 selections; returns the attribute index the algorithm picks next,
    or None when its demand cannot be served.
    """
    algo = coerce_algorithm(algorithm)
    p = [float(x) for x in proportions]
    fl = [floor_quota(k * x) for x in p]
    ce = [ceil_quota(k * x) for x in p]
    _, pick = _select(_RULES[algo], list(counts), pools, p, fl, ce)
    return pick


def _fallback_pick(rule, counts, pools, p, ce):
    """Re-apply rule over widening sets of attributes with candidates left."""
    available = [a for a in range(len(p)) if counts[a] < len(pools[a])]
    for tier in ([a for a in available if counts[a] < ce[a]], available):
        if tier:
            pick = rule(tier, counts, pools, p, ce)
            if pick is not None:
                return pick
    raise EmptyCandidateSets("no attribute has remaining candidates")


def _rank_greedy_family(task: RankingTask, algorithm: Algorithm, fallback: bool) -> RankedList:
    rule = _RULES[algorithm]
    p = task.desired.proportions.tolist()
    pools = [s.tolist() for s in task.pool.scores]
    k_max = task.k_max
    products = np.outer(np.arange(1, k_max + 1, dtype=np.float64), task.desired.proportions)
    floors = floor_quotas(products).tolist()
    ceils = ceil_quotas(products).tolist()

    counts = [0] * len(p)
    out_attrs = np.empty(k_max, dtype=np.int64)
    out_scores = np.empty(k_max, dtype=np.float64)
    events = 0
    for k in range(1, k_max + 1):
        fl, ce = floors[k - 1], ceils[k - 1]
        phase, pick = _select(rule, counts, pools, p, fl, ce)
        if pick is None:
            if not fallback:
                raise InsufficientCandidates(
                    f"{algorithm.value}: required attribute pool exhausted at position {k}"
                )
            phase_rule = _pick_greedy if phase == "min" else rule
            pick = _fallback_pick(phase_rule, counts, pools, p, ce)
            events += 1
        out_attrs[k - 1] = pick
        out_scores[k - 1] = pools[pick][counts[pick]]
        counts[pick] += 1
    return RankedList(
        labels=task.desired.labels,
        attributes=_freeze(out_attrs),
        scores=_freeze(out_scores),
        fallback_events=events,
    )


def rank_vanilla(task: RankingTask) -> RankedList:
    """Merge all pools by descending score; ties by attribute index, then pool order."""
    lengths = [len(s) for s in task.pool.scores]
    scores = np.concatenate(task.pool.scores)
    attrs = np.repeat(np.arange(len(lengths), dtype=np.int64), lengths)
    pool_pos = np.concatenate([np.arange(n, dtype=np.int64) for n in lengths])
    order = np.lexsort((pool_pos, attrs, -scores))[: task.k_max]
    return RankedList(
        labels=task.desired.labels,
        attributes=_freeze(attrs[order]),
        scores=_freeze(scores[order]),
    )


def rank_det_greedy(task: RankingTask, fallback: bool = False) -> RankedList:
    """Serve floor quotas first, then the best next score below ceilings."""
    return _rank_greedy_family(task, Algorithm.DET_GREEDY, fallback)


def rank_det_cons(task: RankingTask, fallback: bool = False) -> RankedList:
    """Serve floor quotas first, then the soonest-binding ceiling constraint."""
    return _rank_greedy_family(task, Algorithm.DET_CONS, fallback)


def rank_det_relaxed(task: RankingTask, fallback: bool = False) -> RankedList:
    """detcons with integerized constraint pressure; better scores within a class."""
    return _rank_greedy_family(task, Algorithm.DET_RELAXED, fallback)


def rank_det_const_sort(task: RankingTask, fallback: bool = False) -> RankedList:
    """Insert candidates as floor quotas increment; sort back within movement bounds.

    A virtual prefix counter k advances from 1. Whenever floor(k * p_a)
    increments for some attribute a, the next candidate of a is appended
    with movement bound k (1-based: it may never sit below position k), then
    bubbled toward the front while the left neighbor both scores lower and
    has a movement bound allowing it to shift one position down. Multiple
    increments at one counter insert in descending next-score order.
    """
    p = task.desired.proportions.tolist()
    pools = [s.tolist() for s in task.pool.scores]
    k_max = task.k_max
    n_attrs = len(p)
    # floor quotas strictly exceed k - n_attrs, so the counter never needs
    # to run past k_max + n_attrs + 1 to fill k_max slots
    n_rows = k_max + n_attrs + 2
    products = np.outer(np.arange(1, n_rows + 1, dtype=np.float64), task.desired.proportions)
    floors = floor_quotas(products).tolist()
    ceils = ceil_quotas(products).tolist()

    counts = [0] * n_attrs
    out_attrs: list[int] = []
    out_scores: list[float] = []
    bounds: list[int] = []
    events = 0

    def insert(a: int, k: int) -> None:
        out_attrs.append(a)
        out_scores.append(pools[a][counts[a]])
        bounds.append(k)
        counts[a] += 1
        i = len(out_scores) - 1
        while i > 0 and out_scores[i - 1] < out_scores[i] and bounds[i - 1] >= i + 1:
            out_attrs[i - 1], out_attrs[i] = out_attrs[i], out_attrs[i - 1]
            out_scores[i - 1], out_scores[i] = out_scores[i], out_scores[i - 1]
            bounds[i - 1], bounds[i] = bounds[i], bounds[i - 1]
            i -= 1

    last_floor = [0] * n_attrs
    for k in range(1, n_rows + 1):
        if len(out_attrs) >= k_max:
            break
        fl = floors[k - 1]
        changed = [a for a in range(n_attrs) if fl[a] > last_floor[a]]
        if not changed:
            continue
        serving = [a for a in changed if counts[a] < len(pools[a])]
        starved = [a for a in changed if counts[a] >= len(pools[a])]
        if starved and not fallback:
            label = task.desired.labels[starved[0]]
            raise InsufficientCandidates(
                f"detconstsort: pool for {label!r} exhausted at counter {k}"
            )
        serving.sort(key=lambda a: (-pools[a][counts[a]], a))
        for a in serving:
            insert(a, k)
        for _ in starved:
            insert(_fallback_pick(_pick_greedy, counts, pools, p, ceils[k - 1]), k)
            events += 1
        last_floor = fl
    if len(out_attrs) < k_max:
        raise EmptyCandidateSets("quota counter exhausted before the list filled")
    return RankedList(
        labels=task.desired.labels,
        attributes=_freeze(np.asarray(out_attrs[:k_max], dtype=np.int64)),
        scores=_freeze(np.asarray(out_scores[:k_max], dtype=np.float64)),
        fallback_events=events,
    )


def rank(task: RankingTask, algorithm, fallback: bool = False) -> RankedList:
    """Rank a validated task with the named algorithm."""
    algo = coerce_algorithm(algorithm)
    if algo is Algorithm.VANILLA:
        return rank_vanilla(task)
    if algo is Algorithm.DET_CONST_SORT:
        return rank_det_const_sort(task, fallback)
    return _rank_greedy_family(task, algo, fallback)
