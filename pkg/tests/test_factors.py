"""Powers / Araki-Woods approximants and their spectral signatures."""

import numpy as np
import pytest

from vnlab.factors import (araki_woods_approximant, log_ratio_rational_quality,
                           max_gap_in_window, powers_approximant,
                           powers_purity, signature)
from vnlab.modular import modular_defects, tomita
from vnlab.numkit import norm2
from vnlab.vnalg import commutant, cyclic_separating


class TestPowers:
    def test_n1_spectrum_multiset(self):
        approx = powers_approximant(0.5, 1)
        assert np.allclose(approx.modular.delta_spectrum, [0.5, 1, 1, 2],
                           atol=1e-12)

    def test_n2_spectrum_set(self):
        approx = powers_approximant(0.5, 2)
        got = np.unique(np.round(approx.modular.delta_spectrum, 9))
        assert np.allclose(got, [0.25, 0.5, 1.0, 2.0, 4.0])

    def test_spectrum_law_across_lambda_and_n(self):
        for lam in (0.3, 0.5, 0.7):
            for n in range(1, 5):
                approx = powers_approximant(lam, n)
                targets = lam ** np.arange(-n, n + 1)
                for v in approx.modular.delta_spectrum:
                    assert np.min(np.abs(v - targets) / targets) < 1e-9
                for t in targets:
                    assert np.min(np.abs(approx.modular.delta_spectrum - t)) \
                        < 1e-9 * t

    def test_tracial_edge(self):
        approx = powers_approximant(1.0, 2)
        assert norm2(approx.modular.delta - np.eye(16)) < 1e-12

    def test_log_spectrum_symmetric(self):
        for lam, n in [(0.3, 2), (0.7, 3)]:
            sig = signature(powers_approximant(lam, n))
            assert np.max(np.abs(np.sort(sig.log_spectrum)
                                 + np.sort(sig.log_spectrum)[::-1])) < 1e-9

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            powers_approximant(0.5, 7)
        with pytest.raises(ValueError):
            powers_approximant(1.5, 1)


class TestPurity:
    def test_closed_form_value(self):
        sig = signature(powers_approximant(0.5, 3))
        assert abs(sig.reduced_purity - 0.17146776406035663) < 1e-10
        assert abs(sig.reduced_purity - powers_purity(0.5, 3)) < 1e-10

    def test_tracial_purity(self):
        for n in (1, 2, 3):
            sig = signature(powers_approximant(1.0, n))
            assert abs(sig.reduced_purity - 2.0 ** (-n)) < 1e-12

    def test_strictly_decreasing_in_n(self):
        for lam in (0.3, 0.5, 0.7):
            purities = [signature(powers_approximant(lam, n)).reduced_purity
                        for n in range(1, 5)]
            assert all(b < a for a, b in zip(purities, purities[1:]))
            assert all(p < 1 for p in purities)

    def test_reduced_density_matches_kron_power(self):
        lam, n = 0.45, 2
        approx = powers_approximant(lam, n)
        site = np.diag([1.0, lam]) / (1.0 + lam)
        assert norm2(approx.reduced_density() - np.kron(site, site)) < 1e-12


class TestArakiWoods:
    def test_n1_log_spectrum_set(self):
        lam, mu = 0.5, 0.3
        sig = signature(araki_woods_approximant(lam, mu, 1))
        la, lm = np.log(lam), np.log(mu)
        expected = np.unique([0.0, la, -la, lm, -lm, la - lm, lm - la])
        got = np.unique(np.round(sig.log_spectrum, 9))
        assert got.size == expected.size
        assert np.max(np.abs(got - np.sort(expected))) < 1e-9

    def test_equal_ratios_collapse(self):
        lam = 0.4
        sig = signature(araki_woods_approximant(lam, lam, 2))
        # every log eigenvalue is an integer multiple of log(lam)
        ks = sig.log_spectrum / np.log(lam)
        assert np.max(np.abs(ks - np.round(ks))) < 1e-9

    def test_gap_densification(self):
        gaps = [signature(araki_woods_approximant(0.5, 0.3, n), 1.0).max_gap
                for n in (1, 2, 3)]
        assert all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))
        assert gaps[2] < gaps[0]

    def test_sorted_weights_regardless_of_order(self):
        a = araki_woods_approximant(0.3, 0.5, 1)
        b = araki_woods_approximant(0.5, 0.3, 1)
        assert np.allclose(a.modular.delta_spectrum, b.modular.delta_spectrum)


class TestMaxGap:
    def test_empty_window(self):
        assert max_gap_in_window(np.array([5.0, -5.0]), 1.0) == 2.0

    def test_walls_count(self):
        assert abs(max_gap_in_window(np.array([0.0]), 1.0) - 1.0) < 1e-15
        assert abs(max_gap_in_window(np.array([-0.5, 0.5]), 1.0) - 1.0) < 1e-15


class TestAgainstTomita:
    @pytest.mark.parametrize("lam,n", [(0.5, 1), (0.35, 2)])
    def test_powers_closed_form_matches_engine(self, lam, n):
        approx = powers_approximant(lam, n)
        md = tomita(approx.algebra, approx.omega)
        assert norm2(md.delta - approx.modular.delta) < 1e-9
        assert norm2(md.j.mat - approx.modular.j.mat) < 1e-9
        assert norm2(md.s.mat - approx.modular.s.mat) < 1e-9

    def test_araki_woods_n1_matches_engine(self):
        approx = araki_woods_approximant(0.5, 0.3, 1)
        md = tomita(approx.algebra, approx.omega)
        assert norm2(md.delta - approx.modular.delta) < 1e-9

    def test_closed_form_invariants(self):
        approx = araki_woods_approximant(0.6, 0.2, 2)
        d = modular_defects(approx.modular)
        assert max(d.values()) < 1e-9

    def test_omega_cyclic_separating_for_algebra(self):
        approx = powers_approximant(0.5, 2)
        assert cyclic_separating(approx.algebra, approx.omega) == (True, True)

    def test_algebra_commutant_hint_consistent(self):
        approx = powers_approximant(0.5, 1)
        alg = approx.algebra
        generic = commutant(alg, use_hint=False)
        hinted = commutant(alg)
        fa, fb = generic._flat(), hinted._flat()
        assert norm2(fa.conj().T @ fa - fb.conj().T @ fb) < 1e-10


class TestReportRecord:
    def test_approximant_report_fields(self):
        import json

        from vnlab.factors import approximant_report

        rec = approximant_report(araki_woods_approximant(0.5, 0.3, 2), 1.0)
        assert set(rec) == {"kind", "lambda", "mu", "N", "log_spectrum",
                            "max_gap", "purity"}
        assert rec["N"] == 2 and rec["kind"] == "araki-woods"
        assert len(rec["log_spectrum"]) == 81
        json.dumps(rec)


class TestRationalQuality:
    def test_reports_best_fraction(self):
        q = log_ratio_rational_quality(0.5, 0.3, max_denominator=100)
        assert q["denominator"] <= 100
        assert q["error"] < 1e-2
        assert abs(q["ratio"] - np.log(0.5) / np.log(0.3)) < 1e-15

    def test_rational_pair_detected(self):
        # log(0.25)/log(0.5) = 2 exactly
        q = log_ratio_rational_quality(0.25, 0.5, max_denominator=10)
        assert q["numerator"] == 2 and q["denominator"] == 1
        assert q["error"] < 1e-14
