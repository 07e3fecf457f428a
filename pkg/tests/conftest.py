import numpy as np

import fairrank as fr


def make_task(desired, pools, k, allow_unsorted=False):
    """Validated task from plain dicts."""
    task = fr.RankingTask(
        desired=fr.DesiredDistribution.from_mapping(desired),
        pool=fr.ScoredPool.from_mapping(pools),
        k_max=k,
    )
    return fr.validate_task(task, allow_unsorted=allow_unsorted)


def make_ranked(sequence, labels, scores=None):
    """RankedList from a sequence of attribute labels; scores default to 1.0."""
    labels = tuple(labels)
    if scores is None:
        scores = [1.0] * len(sequence)
    records = [
        {"position": i + 1, "attribute": a, "score": s}
        for i, (a, s) in enumerate(zip(sequence, scores))
    ]
    return fr.RankedList.from_records(records, labels)


def random_task(rng, num_attr, pool_size=100, k=100):
    """Validated random task drawn with the simulation generators."""
    return fr.validate_task(
        fr.RankingTask(
            desired=fr.gen_desired(num_attr, rng),
            pool=fr.gen_pool(num_attr, pool_size, rng),
            k_max=k,
        )
    )


def spawn_rng(seed, *key):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))
