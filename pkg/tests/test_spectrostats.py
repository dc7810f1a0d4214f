import math

import numpy as np
import pytest

from mbzero import spectrostats as st
from mbzero.errors import LimitTooLarge, SeriesDivergent, WindowTooSparse


class TestUnfold:
    def test_mean_spacing_near_one(self, zeta_catalog_full):
        spec = st.unfold(zeta_catalog_full, (0.0, 201.0))
        mean = float(np.mean(spec.spacings))
        assert 0.9 <= mean <= 1.1
        assert len(spec.raw) >= 50

    def test_translation_acts_through_smooth_term(self, zeta_catalog_110):
        delta = 1e-6
        spec = st.unfold(zeta_catalog_110, (0.0, 111.0))
        shifted = [t + delta for t in spec.raw]
        diffs_orig = np.diff(spec.unfolded)
        diffs_shift = np.diff([st.smooth_count(t) for t in shifted])
        # translation changes unfolded differences only at O(delta rho-bar')
        assert float(np.max(np.abs(diffs_shift - diffs_orig))) < 1e-6

    def test_sparse_window(self, zeta_catalog_110):
        with pytest.raises(WindowTooSparse):
            st.unfold(zeta_catalog_110, (0.0, 30.0))


class TestSpacingVsGue:
    def test_synthetic_gue_sample(self):
        sample = st.wigner_dyson_sample(10_000)
        rep = st.spacing_vs_gue(sample)
        assert rep.lhs.real < 0.02
        assert rep.verdict == "pass"

    def test_poisson_sample_rejected(self):
        rng = np.random.Generator(np.random.PCG64(99))
        rep = st.spacing_vs_gue(rng.exponential(size=10_000))
        assert rep.verdict == "fail"

    def test_real_zeros_sample_limited(self, zeta_catalog_full):
        spec = st.unfold(zeta_catalog_full, (0.0, 201.0))
        rep = st.spacing_vs_gue(spec)
        assert rep.verdict in ("pass", "inconclusive")
        assert "sample-limited" in rep.notes

    def test_wigner_dyson_cdf_properties(self):
        s = np.linspace(0.0, 6.0, 200)
        cdf = st.wigner_dyson_cdf(s)
        assert abs(float(cdf[-1]) - 1.0) < 1e-9
        assert np.all(np.diff(cdf) >= 0)
        # unit mean of the surmise
        mean = np.trapezoid(s * st.wigner_dyson_pdf(s), s)
        assert abs(mean - 1.0) < 1e-6

    def test_deterministic_sampling(self):
        assert np.array_equal(st.wigner_dyson_sample(500),
                              st.wigner_dyson_sample(500))


class TestPairCorrelation:
    def test_level_repulsion_near_zero(self, zeta_catalog_full):
        spec = st.unfold(zeta_catalog_full, (0.0, 201.0))
        est = st.pair_correlation_estimate(spec.unfolded, [0.05])
        assert est[0] < 0.35

    def test_large_separation_tends_to_one(self, zeta_catalog_full):
        spec = st.unfold(zeta_catalog_full, (0.0, 201.0))
        est = st.pair_correlation_estimate(spec.unfolded, [2.5, 3.0])
        assert np.all(np.abs(est - 1.0) < 0.45)

    def test_report_against_sine_kernel(self, zeta_catalog_full):
        spec = st.unfold(zeta_catalog_full, (0.0, 201.0))
        rep = st.pair_correlation(spec)
        assert rep.verdict == "pass"
        assert rep.lhs.real < 0.2

    def test_picket_fence_sanity(self):
        est = st.pair_correlation_estimate(np.arange(240.0),
                                           [0.5, 1.0, 1.5, 2.0])
        assert est[0] < 1e-3 and est[2] < 1e-3
        assert est[1] > 2.0 and est[3] > 2.0


class TestOscillatoryDensity:
    def test_peak_alignment_first_ordinates(self, zeta_catalog_60):
        grid = np.linspace(12.0, 34.0, 4000)
        peaks = st.density_peaks(grid, 100_000)
        for r in zeta_catalog_60:
            if 13.0 < r.ordinate < 33.0:
                assert float(np.min(np.abs(peaks - r.ordinate))) < 0.2

    def test_single_prime_cosine_train(self):
        grid = np.linspace(5.0, 30.0, 5000)
        vals = st.oscillatory_density(grid, 2, sigma=0.05)
        # only p = 2 contributes: minima of -cos(E log 2) repeat at 2pi/log 2
        idx = np.flatnonzero((vals[1:-1] > vals[:-2]) & (vals[1:-1] > vals[2:])) + 1
        gaps = np.diff(grid[idx])
        assert np.allclose(gaps, 2.0 * math.pi / math.log(2.0), atol=0.05)

    def test_sigma_stability(self, zeta_catalog_60):
        grid = np.linspace(12.0, 27.0, 4000)
        p1 = st.density_peaks(grid, 100_000, sigma=0.3)
        p2 = st.density_peaks(grid, 100_000, sigma=0.6)
        t1 = zeta_catalog_60[0].ordinate
        near1 = p1[np.argmin(np.abs(p1 - t1))]
        near2 = p2[np.argmin(np.abs(p2 - t1))]
        assert abs(near1 - near2) < 0.05

    def test_prime_limit_guard(self):
        with pytest.raises(LimitTooLarge):
            st.oscillatory_density([10.0], 2_000_000)


class TestTraceAudits:
    def test_trace_I_even_part_converges(self, zeta_catalog_full):
        rep = st.trace_I_of_a(0.2, zeta_catalog_full)
        assert rep.verdict == "pass"
        tail = rep.extra["even_partial_tail"]
        assert all(b > a for a, b in zip(tail, tail[1:]))  # monotone increasing

    def test_trace_I_log_a_vanishes_at_one(self, zeta_catalog_full):
        r1 = st.trace_I_of_a(1.0, zeta_catalog_full)
        r2 = st.trace_I_of_a(0.2, zeta_catalog_full)
        gap = r1.extra["bracket_value"] - r2.extra["bracket_value"]
        assert abs(gap - (-math.log(0.2))) < 1e-12

    def test_trace_I_odd_part_symmetrized_zero(self, zeta_catalog_full):
        rep = st.trace_I_of_a(0.2, zeta_catalog_full)
        assert rep.extra["odd_symmetrized"] == 0.0

    def test_trace_I_reorder_invariance(self, zeta_catalog_full):
        shuffled = list(zeta_catalog_full)
        rng = np.random.RandomState(0)
        rng.shuffle(shuffled)
        a = st.trace_I_of_a(0.2, zeta_catalog_full)
        b = st.trace_I_of_a(0.2, shuffled)
        assert a.lhs == b.lhs

    def test_weil_prime_side_divergence_rate(self, zeta_catalog_full):
        rep = st.weil_prime_side(1_000_000, zeta_catalog_full)
        assert rep.verdict == "divergent"
        # fitted growth per log X matches the pi/2 prediction within 2%
        assert abs(rep.rel_discrepancy - 1.0) < 0.02

    def test_trace_class_p2(self, zeta_catalog_full):
        rep = st.trace_class_audit(2.0, 0.2, zeta_catalog_full)
        assert rep.verdict == "fail"  # printed closed form disagrees
        want = -(0.4 ** 2) * math.pi ** 2 / 6.0
        assert abs(rep.rhs - want) < 1e-12

    def test_trace_class_p4_rhs(self, zeta_catalog_full):
        rep = st.trace_class_audit(4.0, 0.2, zeta_catalog_full)
        assert abs(rep.rhs - (0.4 ** 4) * math.pi ** 4 / 90.0) < 1e-12

    def test_trace_class_slow_convergence_flagged(self, zeta_catalog_full):
        rep = st.trace_class_audit(1.01, 0.2, zeta_catalog_full)
        assert rep.verdict == "inconclusive"
        assert "slow" in rep.notes

    def test_fredholm_branch_flag(self):
        rep = st.fredholm_audit(0.4, 0.2)
        assert rep.verdict == "fail"
        assert abs(rep.rhs.imag - math.pi) < 1e-12  # log of negative real
        assert "branch" in rep.notes or "sign" in rep.notes

    def test_fredholm_kmax_stability(self):
        a = st.fredholm_audit(0.4, 0.2, k_max=40)
        b = st.fredholm_audit(0.4, 0.2, k_max=80)
        assert abs(a.lhs - b.lhs) < 1e-14

    def test_fredholm_divergence_guard(self):
        with pytest.raises(SeriesDivergent):
            st.fredholm_audit(3.0, 0.9)

    def test_reports_deterministic(self, zeta_catalog_full):
        a = st.trace_I_of_a(0.2, zeta_catalog_full).to_json_dict()
        b = st.trace_I_of_a(0.2, zeta_catalog_full).to_json_dict()
        assert a == b
