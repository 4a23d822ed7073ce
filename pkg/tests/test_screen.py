import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankscreen.core import DataMatrix, ResponseVector, ScreenConfig, SeedSpec
from rankscreen.screen import cr_sis, rank_features, soft_threshold


def _dataset(seed, n, p):
    rng = np.random.default_rng(seed)
    return DataMatrix(rng.normal(size=(n, p))), ResponseVector(rng.normal(size=n))


def test_rank_features_descending():
    assert rank_features({0: 0.3, 1: 0.9, 2: 0.5}) == [1, 2, 0]


def test_rank_features_tie_takes_smaller_index():
    assert rank_features({0: 0.5, 1: 0.5}) == [0, 1]
    assert rank_features({7: 0.5, 2: 0.5, 4: 0.9}) == [4, 2, 7]


def test_rank_features_singleton_and_nan():
    assert rank_features({3: 0.1}) == [3]
    with pytest.raises(ValueError):
        rank_features({0: float("nan")})
    with pytest.raises(ValueError):
        rank_features({})


def test_soft_threshold_cases():
    assert soft_threshold({0: 0.0, 1: 0.0}, c=0.5, kappa=0.1, n=100) == []
    # boundary is inclusive
    assert soft_threshold({0: 0.1}, c=0.1, kappa=0.0, n=50) == [0]
    assert soft_threshold({0: 0.2, 1: 0.05}, c=0.1, kappa=0.0, n=50) == [0]
    with pytest.raises(ValueError):
        soft_threshold({0: 0.2}, c=0.0, kappa=0.1, n=50)


@given(st.integers(0, 10**6), st.floats(0.01, 5.0), st.floats(0.01, 5.0))
def test_soft_selection_shrinks_as_c_grows(seed, c_low, extra):
    scores = {j: s for j, s in enumerate(np.random.default_rng(seed).uniform(0, 0.3, size=20))}
    small = soft_threshold(scores, c=c_low, kappa=0.1, n=200)
    large = soft_threshold(scores, c=c_low + extra, kappa=0.1, n=200)
    assert set(large) <= set(small)


def test_cr_sis_single_feature():
    data, y = _dataset(0, 30, 1)
    res = cr_sis(data, y, ScreenConfig(mode="hard", d=1))
    assert res.selected == (0,)
    assert res.ranking == (0,)
    assert res.trace == ()


def test_cr_sis_hard_size_is_min_d_p():
    data, y = _dataset(1, 40, 6)
    res = cr_sis(data, y, ScreenConfig(mode="hard", d=100))
    assert len(res.selected) == 6
    res2 = cr_sis(data, y, ScreenConfig(mode="hard", d=3))
    assert len(res2.selected) == 3
    assert res2.selected == res2.ranking[:3]


def test_cr_sis_ranks_exact_dependence_first():
    rng = np.random.default_rng(5)
    vals = rng.normal(size=(60, 8))
    y = ResponseVector(np.sin(vals[:, 4]) * 3.0)  # y is a function of feature 4
    res = cr_sis(DataMatrix(vals), y, ScreenConfig(mode="hard", d=2))
    assert res.ranking[0] == 4


def test_cr_sis_soft_mode_above_bound_selects_nothing():
    data, y = _dataset(2, 50, 5)
    res = cr_sis(data, y, ScreenConfig(mode="soft", c=10.0, kappa=0.1))
    assert res.selected == ()
    assert len(res.ranking) == 5  # scores still reported


def test_cr_sis_constant_response_gives_zero_scores():
    data, _ = _dataset(3, 20, 4)
    y = ResponseVector(np.full(20, 7.0))
    res = cr_sis(data, y, ScreenConfig(mode="hard", d=2))
    assert all(s == 0.0 for s in res.scores.values())
    assert res.selected == (0, 1)  # index tie-break


def test_cr_sis_default_d_is_n_over_log_n():
    data, y = _dataset(4, 150, 40)
    res = cr_sis(data, y, ScreenConfig(mode="hard"))
    assert len(res.selected) == int(150 / math.log(150))


def test_cr_sis_row_permutation_invariance():
    data, y = _dataset(6, 45, 5)
    perm = np.random.default_rng(7).permutation(45)
    res = cr_sis(data, y, ScreenConfig(mode="hard", d=3))
    res_p = cr_sis(
        DataMatrix(data.values[perm]),
        ResponseVector(y.values[perm]),
        ScreenConfig(mode="hard", d=3),
    )
    assert res_p.scores == res.scores
    assert res_p.selected == res.selected


def test_cr_sis_ranking_is_sorted_permutation():
    data, y = _dataset(8, 35, 9)
    res = cr_sis(data, y, ScreenConfig(mode="hard", d=4))
    assert sorted(res.ranking) == list(range(9))
    s = [res.scores[j] for j in res.ranking]
    assert all(a >= b for a, b in zip(s, s[1:]))
