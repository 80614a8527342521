import numpy as np
import pytest
from scipy import stats

from morphokit import Configuration
from morphokit.errors import SingularCovariance
from morphokit.inference import ks_pvalue, ks_statistic, mahalanobis_ks_diagnostic
from morphokit.inference.diagnostics import mahalanobis_sq


def test_arrows_1_3(std_arrows):
    d = mahalanobis_ks_diagnostic(std_arrows["punta3"], std_arrows["punta1"])
    assert d.reference_df == 7
    assert d.ks_statistic_D == pytest.approx(0.76612, abs=1e-4)
    assert d.ks_pvalue == pytest.approx(8.265e-05, rel=0.02)


def test_arrows_5_6(std_arrows):
    d = mahalanobis_ks_diagnostic(std_arrows["punta5"], std_arrows["punta6"])
    assert d.ks_statistic_D == pytest.approx(0.76677, abs=1e-4)
    assert d.ks_pvalue == pytest.approx(8.093e-05, rel=0.02)


def test_sign_of_difference_is_irrelevant(std_arrows):
    a = mahalanobis_ks_diagnostic(std_arrows["punta1"], std_arrows["punta3"])
    b = mahalanobis_ks_diagnostic(std_arrows["punta3"], std_arrows["punta1"])
    np.testing.assert_allclose(a.mahalanobis_distances, b.mahalanobis_distances)


def test_mahalanobis_oracle(rng):
    D = rng.normal(size=(9, 2))
    S = np.cov(D.T)
    mu = D.mean(axis=0)
    oracle = [float((r - mu) @ np.linalg.inv(S) @ (r - mu)) for r in D]
    np.testing.assert_allclose(mahalanobis_sq(D), oracle, rtol=1e-10)


@pytest.mark.parametrize("p", [5, 7, 20])
def test_statistic_at_quantiles(p):
    df = 7
    x = stats.chi2(df).ppf((np.arange(1, p + 1) - 0.5) / p)
    assert ks_statistic(x, stats.chi2(df).cdf) == pytest.approx(0.5 / p, abs=1e-12)


def test_statistic_matches_scipy(rng):
    x = rng.chisquare(3, size=15)
    assert ks_statistic(x, stats.chi2(3).cdf) == pytest.approx(stats.kstest(x, stats.chi2(3).cdf).statistic, abs=1e-14)


@pytest.mark.parametrize("n", [1, 3, 7, 12, 40, 100])
def test_exact_pvalue_matches_kstwo(n):
    for d in np.linspace(0.02, 0.98, 25):
        if d <= 0.5 / n:
            continue
        assert ks_pvalue(d, n) == pytest.approx(stats.kstwo.sf(d, n), rel=1e-6, abs=1e-12)


def test_asymptotic_above_100():
    assert ks_pvalue(0.1, 400) == pytest.approx(stats.kstwobign.sf(0.1 * 20), rel=1e-10)


def test_pvalue_edges():
    assert ks_pvalue(0.0, 7) == 1.0
    assert ks_pvalue(1.0, 7) == 0.0


def test_singular_covariance():
    X1 = Configuration("a", [[0, 0], [1, 0], [0, 1], [1, 1]])
    X2 = Configuration("b", [[0, 0], [2, 0], [0, 1], [2, 1]])  # differences only along x
    with pytest.raises(SingularCovariance):
        mahalanobis_ks_diagnostic(X1, X2)
