import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy import stats

from morphokit import (
    CentroidSpec,
    Configuration,
    SizeSpec,
    center,
    centroid,
    centroid_mean_size,
    centroid_median_size,
    mad,
    standardize,
)
from morphokit.errors import DegenerateSize, InvalidConfiguration
from morphokit.geometry import location

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
configs = st.tuples(st.integers(3, 12), st.sampled_from([2, 3])).flatmap(
    lambda pk: arrays(float, pk, elements=finite)
)


class TestConfiguration:
    def test_rejects_bad_shapes(self):
        with pytest.raises(InvalidConfiguration):
            Configuration("x", [[0, 0], [1, 1]])
        with pytest.raises(InvalidConfiguration):
            Configuration("x", np.zeros((4, 4)))
        with pytest.raises(InvalidConfiguration):
            Configuration("x", [[0, 0], [1, np.nan], [2, 2]])

    def test_coords_are_read_only(self, config_a):
        with pytest.raises(ValueError):
            config_a.coords[0, 0] = 5.0


class TestCentroid:
    def test_mean(self, config_a):
        np.testing.assert_allclose(centroid(config_a).values, [1.0, -0.4])

    def test_median(self, config_a):
        np.testing.assert_array_equal(centroid(config_a, CentroidSpec.median()).values, [1, 0])

    def test_trimmed_mean(self, config_a):
        got = centroid(config_a, CentroidSpec.trimmed(0.2)).values
        oracle = stats.trim_mean(np.array(config_a.coords), 0.2, axis=0)
        np.testing.assert_allclose(got, oracle)
        np.testing.assert_allclose(got, [1.0, -1.0 / 3.0])

    def test_even_p_median_is_midpoint(self):
        M = Configuration("m", [[0, 0], [1, 4], [3, 1], [10, 2]])
        np.testing.assert_allclose(centroid(M, CentroidSpec.median()).values, [2, 1.5])

    @pytest.mark.parametrize("alpha", [0.0, 0.1, 0.2, 0.3, 0.45])
    def test_trim_matches_sort_oracle(self, rng, alpha):
        x = rng.normal(size=(17, 2))
        cut = int(np.floor(alpha * 17))
        oracle = np.sort(x, axis=0)[cut:17 - cut].mean(axis=0)
        np.testing.assert_allclose(location(x, CentroidSpec.trimmed(alpha)), oracle)

    def test_spec_parse(self):
        assert CentroidSpec.parse("median") == CentroidSpec.median()
        assert CentroidSpec.parse("trim:0.1") == CentroidSpec.trimmed(0.1)
        with pytest.raises(ValueError):
            CentroidSpec.parse("trim:0.5")
        with pytest.raises(ValueError):
            CentroidSpec.parse("mode")


class TestSizes:
    def test_cs_values(self, config_a, config_b):
        assert centroid_mean_size(config_a) == pytest.approx(3.03315, abs=1e-5)
        assert centroid_mean_size(config_b) == pytest.approx(17.44706, abs=1e-5)

    def test_cs_variance_identity(self, config_a):
        X = np.asarray(config_a.coords)
        assert centroid_mean_size(config_a) == pytest.approx(np.sqrt((X.shape[0] * X.var(axis=0)).sum()))

    def test_cs_degenerate(self):
        assert centroid_mean_size(Configuration("d", np.ones((4, 2)))) == 0.0

    @pytest.mark.parametrize("x", [(2, 1, 0, 0, 2), (20, 1, 0, 0, 2)])
    def test_mad_examples(self, x):
        assert mad(x) == pytest.approx(1.4826, abs=1e-12)

    def test_mad_constant_vector(self):
        assert mad([3.0] * 6) == 0.0

    def test_ms_values(self, config_a, config_b):
        assert round(centroid_median_size(config_a), 4) == 2.9652
        assert centroid_median_size(config_a) == centroid_median_size(config_b)
        doubled = Configuration("2A", 2 * np.asarray(config_a.coords))
        assert centroid_median_size(doubled) == pytest.approx(5.9304, abs=1e-12)

    @given(configs, st.floats(0.01, 100), arrays(float, 3, elements=finite))
    def test_cs_similarity(self, X, a, beta):
        M = Configuration("m", X)
        cs = centroid_mean_size(M)
        assert centroid_mean_size(Configuration("m", a * X)) == pytest.approx(a * cs, rel=1e-9, abs=1e-9)
        assert centroid_mean_size(Configuration("m", -a * X)) == pytest.approx(a * cs, rel=1e-9, abs=1e-9)
        shifted = Configuration("m", X + beta[: X.shape[1]])
        assert centroid_mean_size(shifted) == pytest.approx(cs, rel=1e-9, abs=1e-6)

    @given(configs, st.floats(0.01, 100), arrays(float, 3, elements=finite))
    def test_ms_similarity(self, X, a, beta):
        M = Configuration("m", X)
        ms = centroid_median_size(M)
        assert centroid_median_size(Configuration("m", a * X)) == pytest.approx(a * ms, rel=1e-9, abs=1e-9)
        shifted = Configuration("m", X + beta[: X.shape[1]])
        assert centroid_median_size(shifted) == pytest.approx(ms, rel=1e-9, abs=1e-6)

    @settings(max_examples=200)
    @given(
        st.integers(2, 5).map(lambda h: 2 * h + 1),
        st.integers(0, 2**32 - 1),
        st.floats(0.1, 1e4),
    )
    def test_ms_resists_outward_single_landmark(self, p, seed, delta):
        X = np.random.default_rng(seed).normal(size=(p, 2))
        med = np.median(X, axis=0)
        dev = np.abs(X - med)
        mad_med = np.median(dev, axis=0)
        # landmark whose deviation ranks above the median window in every column
        candidates = [i for i in range(p) if np.all(dev[i] > mad_med) and np.all(X[i] != med)]
        assume(candidates)
        i = candidates[0]
        Y = X.copy()
        Y[i] += delta * np.sign(X[i] - med)
        assert centroid_median_size(Configuration("y", Y)) == centroid_median_size(Configuration("x", X))


class TestCenterStandardize:
    def test_center_mean(self, config_a):
        np.testing.assert_allclose(
            center(config_a).coords, [[1, 0.4], [0, 1.4], [-1, 0.4], [-1, -0.6], [1, -1.6]], atol=1e-15
        )

    def test_center_median(self, config_a):
        np.testing.assert_array_equal(
            center(config_a, CentroidSpec.median()).coords, [[1, 0], [0, 1], [-1, 0], [-1, -1], [1, -2]]
        )

    @pytest.mark.parametrize("spec", [CentroidSpec.mean(), CentroidSpec.median()])
    @given(X=configs)
    def test_center_idempotent(self, spec, X):
        once = center(Configuration("m", X), spec)
        twice = center(once, spec)
        np.testing.assert_allclose(twice.coords, once.coords, atol=1e-9)
        np.testing.assert_allclose(centroid(once, spec).values, 0, atol=1e-9)

    def test_standardize_arrow(self, arrows):
        s = standardize(arrows.get("punta1"))
        assert centroid_mean_size(s) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(centroid(s).values, 0, atol=1e-14)

    def test_standardize_scale_invariant(self, arrows):
        M = arrows.get("punta3")
        big = Configuration("big", 3 * np.asarray(M.coords))
        np.testing.assert_allclose(standardize(big).coords, standardize(M).coords, atol=1e-14)

    def test_standardize_idempotent(self, arrows):
        s = standardize(arrows.get("punta5"))
        np.testing.assert_allclose(standardize(s).coords, s.coords, atol=1e-14)

    def test_robust_standardize_keeps_outlier(self, config_a, config_b):
        robust = (CentroidSpec.median(), SizeSpec.CENTROID_MEDIAN)
        sa = standardize(config_a, *robust)
        sb = standardize(config_b, *robust)
        assert centroid_median_size(sa) == pytest.approx(1.0)
        np.testing.assert_allclose(centroid(sb, CentroidSpec.median()).values, 0, atol=1e-15)
        assert np.linalg.norm(sb.coords[0] - sa.coords[0]) > 5
        np.testing.assert_allclose(sb.coords[1:], sa.coords[1:], atol=1e-15)

    def test_degenerate_size(self):
        with pytest.raises(DegenerateSize):
            standardize(Configuration("d", np.ones((4, 2))))
        with pytest.raises(DegenerateSize):
            standardize(Configuration("d", [[0, 0], [0, 0], [0, 0], [5, 5]]), s=SizeSpec.CENTROID_MEDIAN)
