import numpy as np
import pytest

from rankscreen.core import DataMatrix, SeedSpec, StreamPurpose, derive_stream
from rankscreen.simgen import (
    ACTIVE_SETS,
    SimModelSpec,
    SimulationError,
    gen_ar_gaussian,
    gen_response,
    gen_t1,
    make_dataset,
)


class _ZeroNoise:
    """Stream stub: deterministic zero noise, real draws passed through."""

    def __init__(self, inner=None):
        self.inner = inner or np.random.default_rng(0)

    def standard_normal(self, size):
        return np.zeros(size)

    def standard_cauchy(self, size):
        return np.zeros(size)

    def poisson(self, lam):
        return self.inner.poisson(lam)


def _spec(mid, n=4, p=6, seed=0):
    return SimModelSpec(mid, n=n, p=p, seed=SeedSpec(seed))


def _matrix(rows):
    return DataMatrix(np.asarray(rows, dtype=float))


# ------------------------------------------------------------- spec type


def test_active_sets_per_model():
    assert ACTIVE_SETS["1a"] == (0, 1, 2, 3, 4)
    assert ACTIVE_SETS["2a"] == (0, 1, 2, 3)
    assert ACTIVE_SETS["2b"] == (1, 2, 3)
    assert ACTIVE_SETS["2e"] == (0, 1, 2)
    assert _spec("2c").active_set == (0, 1, 2, 3)


def test_spec_validation():
    with pytest.raises(ValueError):
        SimModelSpec("3z", n=10, p=10)
    with pytest.raises(ValueError):
        SimModelSpec("1a", n=10, p=4)  # needs p >= 5
    with pytest.raises(ValueError):
        SimModelSpec("1a", n=10, p=10, rho=1.0)
    SimModelSpec("2b", n=10, p=4)  # x4 is the largest active column


# ------------------------------------------------------------- predictors


def test_ar_gaussian_reproducible():
    a = gen_ar_gaussian(50, 8, 0.5, derive_stream(SeedSpec(1), StreamPurpose.PREDICTORS))
    b = gen_ar_gaussian(50, 8, 0.5, derive_stream(SeedSpec(1), StreamPurpose.PREDICTORS))
    assert np.array_equal(a.values, b.values)


def test_ar_gaussian_correlation_structure():
    X = gen_ar_gaussian(100_000, 4, 0.5, derive_stream(SeedSpec(2), StreamPurpose.PREDICTORS)).values
    c = np.corrcoef(X, rowvar=False)
    assert abs(c[0, 1] - 0.5) <= 0.02
    assert abs(c[1, 2] - 0.5) <= 0.02
    assert abs(c[0, 2] - 0.25) <= 0.02
    assert np.allclose(X.var(axis=0), 1.0, atol=0.03)


def test_ar_gaussian_independent_when_rho_zero():
    X = gen_ar_gaussian(100_000, 3, 0.0, derive_stream(SeedSpec(3), StreamPurpose.PREDICTORS)).values
    c = np.corrcoef(X, rowvar=False)
    assert abs(c[0, 1]) <= 0.02
    assert abs(c[1, 2]) <= 0.02


def _spearman(a, b):
    ra = np.argsort(np.argsort(a)).astype(float)
    rb = np.argsort(np.argsort(b)).astype(float)
    return np.corrcoef(ra, rb)[0, 1]


def test_t1_finite_heavy_tailed_and_dependent():
    X = gen_t1(100_000, 3, 0.5, derive_stream(SeedSpec(4), StreamPurpose.PREDICTORS)).values
    assert np.isfinite(X).all()
    assert np.median(np.abs(X[:, 0])) > 0
    # heavy tails: far more mass beyond 10 than a standard normal would give
    assert (np.abs(X[:, 0]) > 10).mean() > 0.01
    assert _spearman(X[:, 0], X[:, 1]) > 0.2


def test_t1_reproducible():
    a = gen_t1(30, 5, 0.5, derive_stream(SeedSpec(5), StreamPurpose.PREDICTORS))
    b = gen_t1(30, 5, 0.5, derive_stream(SeedSpec(5), StreamPurpose.PREDICTORS))
    assert np.array_equal(a.values, b.values)


# ------------------------------------------------------------- responses


def test_model_1a_formula_with_zero_noise():
    X = _matrix([[1, 1, 1, 1, 1, 0], [2, 0, 0, 0, 1, 9]])
    y = gen_response(_spec("1a", n=2, p=6), X, _ZeroNoise())
    assert y.values.tolist() == [5.0, 3.0]


def test_model_2c_formula_with_zero_noise():
    X = _matrix([[0, 0, 0, 0], [1, 1, 0, 0]])
    y = gen_response(_spec("2c", n=2, p=4), X, _ZeroNoise())
    assert y.values[0] == 1.0
    assert y.values[1] == pytest.approx(1.0 - 5.0 * np.exp(-5.0))


def test_model_2e_heteroscedastic_formula():
    X = _matrix([[0.0, 1.0, -1.0], [0.5, 0.0, 0.0]])
    y = gen_response(_spec("2e", n=2, p=3), X, _ZeroNoise())
    assert y.values[0] == pytest.approx(np.cos(0.0) + 1.0 + np.exp(0.0))
    assert y.values[1] == pytest.approx(np.cos(0.5) + 1.0)


def test_model_1d_poisson_unit_rate_mean():
    X = DataMatrix(np.zeros((10_000, 5)))
    y = gen_response(_spec("1d", n=10_000, p=5), X, _ZeroNoise())
    assert abs(y.values.mean() - 1.0) <= 0.05
    assert (y.values >= 0).all()
    assert np.array_equal(y.values, np.rint(y.values))


def test_model_1d_large_rate_uses_normal_approximation():
    row = np.full(5, 2.0)  # rate = exp(20) >> 1e7
    X = DataMatrix(np.vstack([row, row]))
    y = gen_response(_spec("1d", n=2, p=5), X, _ZeroNoise())
    rate = np.exp(20.0)
    assert np.all(np.abs(y.values / rate - 1.0) < 1e-3)


def test_model_2b_pole_errors_loudly():
    X = _matrix([[1.0, 0.0, 1.0, 1.0], [1.0, 2.0, 1.0, 1.0]])
    with pytest.raises(SimulationError, match="row 0"):
        gen_response(_spec("2b", n=2, p=4), X, _ZeroNoise())


def test_gen_response_checks_shape():
    X = _matrix([[1.0] * 6, [2.0] * 6])
    with pytest.raises(ValueError):
        gen_response(_spec("1a", n=3, p=6), X, _ZeroNoise())


# ------------------------------------------------------------- datasets


def test_make_dataset_deterministic():
    spec = SimModelSpec("2d", n=100, p=20, seed=SeedSpec(11))
    X1, y1 = make_dataset(spec)
    X2, y2 = make_dataset(spec)
    assert np.array_equal(X1.values, X2.values)
    assert np.array_equal(y1.values, y2.values)
    assert X1.names[:2] == ("x1", "x2")


def test_make_dataset_seed_changes_data():
    a = make_dataset(SimModelSpec("1a", n=50, p=8, seed=SeedSpec(0)))
    b = make_dataset(SimModelSpec("1a", n=50, p=8, seed=SeedSpec(1)))
    assert not np.array_equal(a[0].values, b[0].values)


def test_make_dataset_all_models_run():
    for mid in ACTIVE_SETS:
        X, y = make_dataset(SimModelSpec(mid, n=60, p=8, seed=SeedSpec(3)))
        assert X.values.shape == (60, 8)
        assert y.n == 60
