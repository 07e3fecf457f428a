"""
Measuring representation bias in a ranked list
==============================================

A ranked list is biased when its top-k prefixes drift away from a desired
distribution over some attribute (gender, age group, ...). This script walks
through the bias metrics on a small hand-built example:

* skew@k: log-ratio of an attribute's top-k share to its desired share
* MinSkew / MaxSkew: the worst disadvantage and the largest unfair advantage
* NDKL: a position-discounted average divergence over every prefix
* InfeasibleIndex / InfeasibleCount: how many prefixes miss a floor quota
* NDCG: utility of the ordering relative to an ideal one
"""

import numpy as np

import fairrank as fr

# A recruiter searches; 48,000 of the 80,000 qualified candidates are female.
# Using the qualified population as the target is the equal-opportunity
# convention; using all candidates instead would be demographic parity.
desired = fr.empirical_distribution({"female": 48_000, "male": 32_000})
print("desired:", desired.as_mapping())

# The model returns a top-10 slate: 7 males, 3 females, mixed order.
sequence = ["male", "male", "female", "male", "male",
            "male", "female", "male", "male", "female"]
scores = np.linspace(0.95, 0.50, num=10)
records = [
    {"position": i + 1, "attribute": a, "score": float(s)}
    for i, (a, s) in enumerate(zip(sequence, scores))
]
ranked = fr.RankedList.from_records(records, desired.labels)

# skew@k at a few depths. Negative means under-represented.
for k in (3, 5, 10):
    s = fr.skew_at_k(ranked, desired, "female", k)
    print(f"skew@{k:2d} for female: {s:+.3f}")

# 30% female in the top 10 against a 60% target: ln(0.3/0.6) = -0.69
print("MinSkew@10:", round(fr.min_skew_at_k(ranked, desired, 10), 3))
print("MaxSkew@10:", round(fr.max_skew_at_k(ranked, desired, 10), 3))

# NDKL rolls every prefix into one number; 0 means perfectly representative.
print("NDKL:", round(fr.ndkl(ranked, desired), 4))

# Feasibility: prefix k should hold at least floor(k * p) of each attribute.
print("infeasible prefixes:", fr.infeasible_prefixes(ranked, desired).tolist())
print("InfeasibleIndex:", fr.infeasible_index(ranked, desired))
print("InfeasibleCount:", fr.infeasible_count(ranked, desired))

# measure() bundles everything, including NDCG against an ideal ordering.
report = fr.measure(ranked, desired)
print("\nfull report:")
for key, value in report.to_dict().items():
    print(f"  {key}: {value}")
