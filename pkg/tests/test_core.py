import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankscreen.core import (
    BanditConfig,
    DataMatrix,
    ResponseVector,
    ScreenConfig,
    SeedSpec,
    StreamPurpose,
    default_model_size,
    derive_seed,
    derive_stream,
)


def _prefix(seed, purpose, feature=0, round_index=0, k=64):
    gen = derive_stream(seed, purpose, feature, round_index)
    return gen.integers(0, 2**63, size=k).tolist()


def test_same_arguments_give_identical_stream():
    a = _prefix(SeedSpec(7), StreamPurpose.TIEBREAK, feature=3, round_index=2)
    b = _prefix(SeedSpec(7), StreamPurpose.TIEBREAK, feature=3, round_index=2)
    assert a == b


def test_distinct_features_give_distinct_streams():
    a = _prefix(SeedSpec(7), StreamPurpose.TIEBREAK, feature=1)
    b = _prefix(SeedSpec(7), StreamPurpose.TIEBREAK, feature=2)
    assert a != b


def test_distinct_seeds_give_distinct_streams():
    a = _prefix(SeedSpec(0), StreamPurpose.TIEBREAK)
    b = _prefix(SeedSpec(1), StreamPurpose.TIEBREAK)
    assert a != b


def test_distinct_purposes_and_rounds_give_distinct_streams():
    base = _prefix(SeedSpec(5), StreamPurpose.TIEBREAK, feature=1, round_index=1)
    assert base != _prefix(SeedSpec(5), StreamPurpose.SHUFFLE, feature=1, round_index=1)
    assert base != _prefix(SeedSpec(5), StreamPurpose.TIEBREAK, feature=1, round_index=2)


def test_derive_seed_is_deterministic_and_splits():
    assert derive_seed(SeedSpec(9), StreamPurpose.REPLICATE, 4) == derive_seed(SeedSpec(9), StreamPurpose.REPLICATE, 4)
    assert derive_seed(SeedSpec(9), StreamPurpose.REPLICATE, 4) != derive_seed(SeedSpec(9), StreamPurpose.REPLICATE, 5)


def test_default_model_size_known_values():
    assert default_model_size(1500) == 205
    assert default_model_size(3000) == 374
    assert default_model_size(3) == 2


def test_default_model_size_rejects_tiny_n():
    with pytest.raises(ValueError):
        default_model_size(2)


@given(st.integers(min_value=3, max_value=10**6), st.integers(min_value=0, max_value=10**5))
def test_default_model_size_nondecreasing(n, gap):
    assert default_model_size(n) <= default_model_size(n + gap)


def test_data_matrix_basic():
    m = DataMatrix(np.arange(6.0).reshape(3, 2), names=("a", "b"))
    assert (m.n, m.p) == (3, 2)
    assert m.column(1).tolist() == [1.0, 3.0, 5.0]
    assert m.column(0).flags["C_CONTIGUOUS"]  # columns are contiguous


def test_data_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        DataMatrix(np.array([[1.0, np.nan], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        DataMatrix(np.zeros((1, 3)))
    with pytest.raises(ValueError):
        DataMatrix(np.zeros((3, 2)), names=("only-one",))


def test_response_vector_rejects_bad_input():
    with pytest.raises(ValueError):
        ResponseVector(np.array([1.0, np.inf]))
    with pytest.raises(ValueError):
        ResponseVector(np.array([1.0]))
    # constant responses are allowed at construction
    assert ResponseVector(np.array([2.0, 2.0, 2.0])).n == 3


def test_screen_config_validation():
    ScreenConfig(mode="hard", d=10)
    ScreenConfig(mode="soft", c=0.5, kappa=0.1)
    with pytest.raises(ValueError):
        ScreenConfig(mode="soft", c=0.5, kappa=0.3)  # kappa >= 1/4
    with pytest.raises(ValueError):
        ScreenConfig(mode="soft", c=-1.0, kappa=0.1)
    with pytest.raises(ValueError):
        ScreenConfig(mode="hard", d=0)
    with pytest.raises(ValueError):
        ScreenConfig(mode="hard", c=1.0)
    with pytest.raises(ValueError):
        ScreenConfig(mode="ranked")


def test_bandit_config_validation():
    BanditConfig(d=5, alpha0=0.0)
    with pytest.raises(ValueError):
        BanditConfig(d=0)
    with pytest.raises(ValueError):
        BanditConfig(alpha0=-0.1)
    with pytest.raises(ValueError):
        BanditConfig(eta=1.0)


def test_seed_spec_range():
    SeedSpec(2**64 - 1)
    with pytest.raises(ValueError):
        SeedSpec(-1)
    with pytest.raises(ValueError):
        SeedSpec(2**64)
