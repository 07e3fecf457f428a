import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fairrank as fr
from conftest import make_ranked, make_task

HALF = fr.DesiredDistribution.from_mapping({"a": 0.5, "b": 0.5})


def naive_ndkl(labels_seq, desired):
    """Brute-force per-prefix recomputation, independent of the library path."""
    total, z = 0.0, 0.0
    for i in range(1, len(labels_seq) + 1):
        prefix = labels_seq[:i]
        kl = 0.0
        for label, p in zip(desired.labels, desired.proportions):
            observed = prefix.count(label) / i
            if observed > 0:
                kl += observed * math.log(observed / p)
        weight = 1.0 / math.log2(i + 1)
        total += kl * weight
        z += weight
    return total / z


class TestProportions:
    def test_direct_counts(self):
        ranked = make_ranked("abab", ("a", "b"))
        assert fr.proportions_at_k(ranked, 2).tolist() == [0.5, 0.5]

    def test_uneven_counts(self):
        ranked = make_ranked("aaab", ("a", "b"))
        assert fr.proportions_at_k(ranked, 4).tolist() == [0.75, 0.25]

    def test_singleton(self):
        ranked = make_ranked("a", ("a",))
        assert fr.proportions_at_k(ranked, 1).tolist() == [1.0]

    def test_depth_out_of_range(self):
        ranked = make_ranked("ab", ("a", "b"))
        for k in (0, 3, -1, 1.5):
            with pytest.raises(fr.KOutOfRange):
                fr.proportions_at_k(ranked, k)


class TestSkew:
    def test_under_representation_log_half(self):
        # 20 of the top 100 vs a desired proportion of 0.4
        desired = fr.DesiredDistribution.from_mapping({"male": 0.4, "female": 0.6})
        ranked = make_ranked(["male"] * 20 + ["female"] * 80, desired.labels)
        assert fr.skew_at_k(ranked, desired, "male", 100) == pytest.approx(
            math.log(0.5), abs=1e-12
        )

    def test_matching_proportion_is_zero(self):
        ranked = make_ranked("abab", ("a", "b"))
        assert fr.skew_at_k(ranked, HALF, "a", 4) == 0.0

    def test_over_representation_log_three_halves(self):
        ranked = make_ranked("aaab", ("a", "b"))
        assert fr.skew_at_k(ranked, HALF, "a", 4) == pytest.approx(
            math.log(1.5), abs=1e-12
        )

    def test_min_max_pair(self):
        ranked = make_ranked("aaab", ("a", "b"))
        assert fr.min_skew_at_k(ranked, HALF, 4) == pytest.approx(math.log(0.5))
        assert fr.max_skew_at_k(ranked, HALF, 4) == pytest.approx(math.log(1.5))

    def test_single_attribute_zero(self):
        one = fr.DesiredDistribution.from_mapping({"a": 1.0})
        ranked = make_ranked("aaa", ("a",))
        assert fr.min_skew_at_k(ranked, one, 3) == 0.0
        assert fr.max_skew_at_k(ranked, one, 3) == 0.0

    def test_absent_attribute_uses_epsilon_floor(self):
        ranked = make_ranked("aa", ("a", "b"))
        value = fr.skew_at_k(ranked, HALF, "b", 2)
        assert value == pytest.approx(math.log((1e-6 / 2) / 0.5))
        assert math.isfinite(value)

    def test_zero_desired_proportion_rejected(self):
        zero = fr.DesiredDistribution.from_mapping({"a": 1.0, "b": 0.0})
        ranked = make_ranked("ab", ("a", "b"))
        with pytest.raises(fr.ZeroDesiredProportion):
            fr.skew_at_k(ranked, zero, "a", 2)

    def test_label_and_index_agree(self):
        ranked = make_ranked("aaab", ("a", "b"))
        assert fr.skew_at_k(ranked, HALF, "b", 4) == fr.skew_at_k(ranked, HALF, 1, 4)

    def test_mismatched_labels_rejected(self):
        other = fr.DesiredDistribution.from_mapping({"x": 0.5, "y": 0.5})
        ranked = make_ranked("ab", ("a", "b"))
        with pytest.raises(fr.SupportMismatch):
            fr.skews_at_k(ranked, other, 2)


class TestKlDivergence:
    def test_identical_is_exactly_zero(self):
        assert fr.kl_divergence([0.3, 0.7], [0.3, 0.7]) == 0.0

    def test_point_mass_vs_uniform(self):
        assert fr.kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(
            math.log(2), abs=1e-12
        )

    def test_two_term_value(self):
        assert fr.kl_divergence([0.75, 0.25], [0.5, 0.5]) == pytest.approx(
            0.75 * math.log(1.5) + 0.25 * math.log(0.5), abs=1e-12
        )

    def test_support_mismatch(self):
        with pytest.raises(fr.SupportMismatch):
            fr.kl_divergence([1.0], [0.5, 0.5])

    def test_zero_denominator(self):
        with pytest.raises(fr.ZeroDenominator):
            fr.kl_divergence([0.5, 0.5], [1.0, 0.0])

    @given(
        st.integers(1, 6).flatmap(
            lambda n: st.tuples(
                st.lists(st.floats(1e-3, 1.0), min_size=n, max_size=n),
                st.lists(st.floats(1e-3, 1.0), min_size=n, max_size=n),
            )
        )
    )
    def test_gibbs_inequality(self, pair):
        d1 = np.asarray(pair[0])
        d1 /= d1.sum()
        d2 = np.asarray(pair[1])
        d2 /= d2.sum()
        assert fr.kl_divergence(d1, d1) == 0.0
        assert fr.kl_divergence(d1, d2) >= -1e-12


class TestNdkl:
    def test_two_item_oracle(self):
        ranked = make_ranked("ab", ("a", "b"))
        assert fr.ndkl(ranked, HALF) == pytest.approx(0.42500124793362276, abs=1e-12)

    def test_four_item_oracle(self):
        ranked = make_ranked("abab", ("a", "b"))
        assert fr.ndkl(ranked, HALF) == pytest.approx(0.2816450300785086, abs=1e-12)

    def test_single_attribute_is_zero(self):
        one = fr.DesiredDistribution.from_mapping({"a": 1.0})
        assert fr.ndkl(make_ranked("aaaa", ("a",)), one) == 0.0

    def test_zero_desired_with_presence_rejected(self):
        zero = fr.DesiredDistribution.from_mapping({"a": 1.0, "b": 0.0})
        with pytest.raises(fr.ZeroDesiredProportion):
            fr.ndkl(make_ranked("ab", ("a", "b")), zero)

    @settings(max_examples=60)
    @given(
        st.integers(2, 5).flatmap(
            lambda n_attr: st.tuples(
                st.just(n_attr),
                st.lists(st.integers(0, n_attr - 1), min_size=1, max_size=100),
                st.lists(st.floats(1e-3, 1.0), min_size=n_attr, max_size=n_attr),
            )
        )
    )
    def test_streaming_matches_naive_oracle(self, case):
        n_attr, seq, weights = case
        labels = tuple(f"g{i}" for i in range(n_attr))
        p = np.asarray(weights)
        desired = fr.DesiredDistribution(labels=labels, proportions=p / p.sum())
        ranked = make_ranked([labels[i] for i in seq], labels)
        value = fr.ndkl(ranked, desired)
        assert value >= 0.0
        assert value == pytest.approx(
            naive_ndkl([labels[i] for i in seq], desired), abs=1e-9
        )


class TestNdcg:
    def test_sorted_list_is_one(self):
        assert fr.ndcg([0.9, 0.8, 0.7], [0.9, 0.8, 0.7, 0.6]) == 1.0

    def test_singleton_is_one(self):
        assert fr.ndcg([0.4], [0.4]) == 1.0

    def test_adjacent_swap(self):
        assert fr.ndcg([0.7, 0.9], [0.9, 0.7]) == pytest.approx(
            0.9449826677905079, abs=1e-12
        )

    def test_short_ideal_rejected(self):
        with pytest.raises(fr.LengthMismatch):
            fr.ndcg([0.9, 0.8], [0.9])

    def test_accepts_ranked_list(self):
        ranked = make_ranked("ab", ("a", "b"), scores=[0.9, 0.8])
        assert fr.ndcg(ranked, [0.9, 0.8]) == 1.0


class TestInfeasibility:
    def test_table_style_trace(self):
        desired = fr.DesiredDistribution.from_mapping(
            {"a1": 0.4, "a2": 0.4, "a3": 0.1, "a4": 0.1}
        )
        ranked = make_ranked(
            ["a4", "a3", "a2", "a1"], desired.labels, scores=[0.4, 0.3, 0.2, 0.1]
        )
        assert fr.infeasible_index(ranked, desired) == 1
        assert fr.infeasible_count(ranked, desired) == 1
        assert fr.infeasible_prefixes(ranked, desired).tolist() == [3]

    def test_feasible_list(self):
        ranked = make_ranked("abab", ("a", "b"))
        assert fr.infeasible_index(ranked, HALF) == 0
        assert fr.infeasible_count(ranked, HALF) == 0

    def test_missing_attribute_violates_floor(self):
        ranked = make_ranked("bb", ("a", "b"))
        assert fr.infeasible_index(ranked, HALF) == 1
        assert fr.infeasible_count(ranked, HALF) == 1
        assert fr.infeasible_prefixes(ranked, HALF).tolist() == [2]


@st.composite
def list_with_desired(draw):
    n_attr = draw(st.integers(1, 5))
    seq = draw(st.lists(st.integers(0, n_attr - 1), min_size=1, max_size=60))
    weights = draw(st.lists(st.floats(1e-3, 1.0), min_size=n_attr, max_size=n_attr))
    labels = tuple(f"g{i}" for i in range(n_attr))
    p = np.asarray(weights)
    desired = fr.DesiredDistribution(labels=labels, proportions=p / p.sum())
    ranked = make_ranked([labels[i] for i in seq], labels)
    return ranked, desired


class TestInvariants:
    @settings(max_examples=80)
    @given(list_with_desired())
    def test_skew_straddles_zero_and_counts_agree(self, case):
        ranked, desired = case
        k = len(ranked)
        assert fr.min_skew_at_k(ranked, desired, k) <= 0.0
        assert fr.max_skew_at_k(ranked, desired, k) >= 0.0
        ii = fr.infeasible_index(ranked, desired)
        ic = fr.infeasible_count(ranked, desired)
        assert 0 <= ii <= ic
        assert (ii == 0) == (ic == 0)


class TestMeasure:
    def test_report_fields_and_keys(self):
        task = make_task({"a": 0.5, "b": 0.5}, {"a": [0.9, 0.8], "b": [0.7, 0.6]}, 4)
        ranked = fr.rank(task, "detgreedy")
        report = fr.measure(ranked, task.desired)
        assert report.k == 4
        assert report.feasible
        assert report.min_skew <= 0.0 <= report.max_skew
        assert report.infeasible_index <= report.infeasible_count
        assert set(report.to_dict()) == {
            "k",
            "skew",
            "min_skew",
            "max_skew",
            "ndkl",
            "ndcg",
            "infeasible_index",
            "infeasible_count",
            "feasible",
        }
        assert set(report.to_dict()["skew"]) == {"a", "b"}

    def test_default_depth_caps_at_100(self):
        labels = ("a", "b")
        ranked = make_ranked("ab" * 75, labels)
        report = fr.measure(ranked, HALF)
        assert report.k == 100

    def test_self_ideal_ndcg_is_one_for_sorted(self):
        ranked = make_ranked("ab", ("a", "b"), scores=[0.9, 0.2])
        assert fr.measure(ranked, HALF).ndcg == 1.0

    def test_explicit_ideal_penalizes_reordering(self):
        task = make_task({"a": 0.5, "b": 0.5}, {"a": [0.9, 0.8], "b": [0.7, 0.6]}, 4)
        ranked = fr.rank(task, "detgreedy")
        ideal = np.sort(np.concatenate(task.pool.scores))[::-1]
        report = fr.measure(ranked, task.desired, ideal_scores=ideal)
        assert 0 < report.ndcg < 1.0

    def test_empty_list_rejected(self):
        empty = fr.RankedList.from_records([], ("a", "b"))
        with pytest.raises(fr.ValidationError):
            fr.measure(empty, HALF)
