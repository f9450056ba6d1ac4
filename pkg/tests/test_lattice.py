"""Chain vacuum: correlations, decay, entropy, local differences, causality."""

import numpy as np
import pytest

from vnlab.lattice import (ChainSpec, causality_probe, causality_probe_scan,
                           cluster_function, decay_rate_fit,
                           expected_decay_rate, ground_state,
                           local_difference, local_difference_bruteforce,
                           reduced_entropy, region_fock_rep,
                           symplectic_eigenvalues)


def rand_density(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


class TestGroundState:
    def test_translation_invariance(self):
        state = ground_state(ChainSpec(12, 0.7))
        n = 12
        for shift in (1, 5):
            rolled = np.roll(np.roll(state.g_phi, shift, axis=0), shift, axis=1)
            assert np.max(np.abs(rolled - state.g_phi)) <= 1e-12

    def test_two_site_closed_form(self):
        # N = 2, m = 1: modes at omega = 1 and sqrt(5)
        state = ground_state(ChainSpec(2, 1.0))
        expected = 0.25 * (1.0 + 1.0 / np.sqrt(5.0))
        assert abs(state.g_phi[0, 0] - expected) < 1e-12
        assert abs(expected - 0.36180) < 5e-6

    def test_per_mode_uncertainty_product(self):
        spec = ChainSpec(8, 1.3)
        omega = spec.dispersion()
        prod = (1.0 / (2.0 * omega)) * (omega / 2.0)
        assert np.allclose(prod, 0.25)

    def test_full_chain_symplectic_values_saturate(self):
        state = ground_state(ChainSpec(10, 0.5))
        nu = symplectic_eigenvalues(state, np.arange(10))
        assert np.max(np.abs(nu - 0.5)) < 1e-10

    def test_heisenberg_bound_on_regions(self):
        rng = np.random.default_rng(0)
        state = ground_state(ChainSpec(24, 1.0))
        for _ in range(10):
            size = int(rng.integers(1, 24))
            region = rng.choice(24, size=size, replace=False)
            nu = symplectic_eigenvalues(state, region)
            assert nu.min() >= 0.5 - 1e-10

    def test_massless_needs_policy(self):
        with pytest.raises(ValueError):
            ground_state(ChainSpec(8, 0.0))
        state = ground_state(ChainSpec(8, 0.0), zero_mode="exclude")
        assert state.zero_mode_excluded


class TestCluster:
    def test_f0_positive_and_monotone_decay(self):
        state = ground_state(ChainSpec(64, 1.0))
        vals = [cluster_function(state, r) for r in range(33)]
        assert vals[0] > 0
        assert all(b < a for a, b in zip(vals[:20], vals[1:21]))

    def test_even_and_periodic(self):
        state = ground_state(ChainSpec(16, 0.8))
        for r in range(1, 8):
            assert abs(cluster_function(state, r)
                       - cluster_function(state, -r)) < 1e-14
            assert abs(cluster_function(state, r)
                       - cluster_function(state, r + 16)) < 1e-14

    def test_far_correlation_below_bound(self):
        state = ground_state(ChainSpec(400, 1.0))
        assert abs(cluster_function(state, 40)) < 1e-6


class TestDecayFit:
    @pytest.mark.parametrize("m,hi", [(1.0, 28), (0.5, 40), (2.0, 15)])
    def test_rate_matches_lattice_asymptotics(self, m, hi):
        state = ground_state(ChainSpec(400, m))
        fit = decay_rate_fit(state, (10, hi))
        assert fit.rel_deviation <= 0.10
        assert fit.is_exponential

    def test_expected_rate_values(self):
        assert abs(expected_decay_rate(1.0) - 0.96242365) < 1e-7
        assert abs(expected_decay_rate(0.5) - 0.49493292) < 1e-7

    def test_massless_flagged_non_exponential(self):
        state = ground_state(ChainSpec(400, 0.0), zero_mode="exclude")
        fit = decay_rate_fit(state, (10, 40))
        assert not fit.is_exponential

    def test_floor_guard(self):
        state = ground_state(ChainSpec(400, 2.0))
        with pytest.raises(ValueError, match="floor"):
            decay_rate_fit(state, (10, 60))

    def test_range_validation(self):
        state = ground_state(ChainSpec(64, 1.0))
        with pytest.raises(ValueError):
            decay_rate_fit(state, (0, 10))
        with pytest.raises(ValueError):
            decay_rate_fit(state, (5, 40))


class TestEntropy:
    def test_full_chain_is_pure(self):
        state = ground_state(ChainSpec(16, 1.0))
        assert reduced_entropy(state, np.arange(16)) < 1e-10

    def test_single_site_positive(self):
        state = ground_state(ChainSpec(64, 1.0))
        assert reduced_entropy(state, [0]) > 1e-3

    def test_region_complement_symmetry(self):
        rng = np.random.default_rng(5)
        state = ground_state(ChainSpec(20, 0.8))
        for _ in range(20):
            size = int(rng.integers(1, 20))
            region = rng.choice(20, size=size, replace=False)
            comp = np.setdiff1d(np.arange(20), region)
            assert abs(reduced_entropy(state, region)
                       - reduced_entropy(state, comp)) < 1e-8

    def test_empty_region_rejected(self):
        state = ground_state(ChainSpec(8, 1.0))
        with pytest.raises(ValueError):
            reduced_entropy(state, [])


class TestLocalDifference:
    def test_identical_states(self):
        rng = np.random.default_rng(1)
        rho = rand_density(rng, 4)
        assert local_difference(rho, rho.copy()) < 1e-14

    def test_orthogonal_pure_states(self):
        rho1 = np.diag([1.0, 0, 0, 0]).astype(complex)
        rho2 = np.diag([0, 1.0, 0, 0]).astype(complex)
        assert abs(local_difference(rho1, rho2) - 2.0) < 1e-14

    def test_duality_oracle_within_2pct(self):
        rng = np.random.default_rng(7)
        for i in range(5):
            r1, r2 = rand_density(rng, 4), rand_density(rng, 4)
            tn = local_difference(r1, r2)
            bf = local_difference_bruteforce(r1, r2, budget=10_000, seed=50 + i)
            assert abs(tn - bf) / tn <= 0.02
            assert bf <= tn + 1e-9  # search never exceeds the true sup

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            local_difference(np.eye(2) / 2, np.eye(3) / 3)


class TestOutsideOperations:
    def test_outside_unitary_invisible_in_region(self):
        rep = region_fock_rep(ChainSpec(6, 1.0), region=(0, 1),
                              n_max_region=2, n_max_complement=2)
        g = rep.vacuum_vector
        rho_before = rep.reduced_region(g)
        psi_c = np.zeros(4, dtype=complex)
        psi_c[1], psi_c[3] = 1.1, -0.4j
        moved = rep.apply_outside(g, rep.outside_weyl(psi_c))
        rho_after = rep.reduced_region(moved)
        assert local_difference(rho_before, rho_after) <= 1e-12

    def test_inside_operation_is_visible(self):
        rep = region_fock_rep(ChainSpec(6, 1.0), region=(0, 1),
                              n_max_region=2, n_max_complement=2)
        g = rep.vacuum_vector
        from vnlab.fock import weyl_operator
        u_r = weyl_operator(rep.fock_region, np.array([0.9, 0.2j]))
        dr, dc = rep.fock_region.total_dim, rep.fock_complement.total_dim
        moved = (np.kron(u_r, np.eye(dc)) @ g)
        assert local_difference(rep.reduced_region(g),
                                rep.reduced_region(moved)) > 1e-3

    def test_ground_vector_entangles_region(self):
        rep = region_fock_rep(ChainSpec(6, 1.0), region=(0, 1),
                              n_max_region=2, n_max_complement=2)
        rho = rep.reduced_region(rep.vacuum_vector)
        w = np.linalg.eigvalsh(rho)
        purity = float(np.sum(w ** 2))
        assert purity < 1.0 - 1e-4  # coupling across the cut mixes the region


class TestCausalityProbe:
    def test_amplitude_zero_at_t0(self):
        spec = ChainSpec(256, 1.0)
        a0 = causality_probe(spec, np.arange(100, 108), np.arange(112, 120), 0.0)
        assert abs(a0) < 1e-14

    def test_amplitude_nonzero_at_half(self):
        spec = ChainSpec(256, 1.0)
        a = causality_probe(spec, np.arange(100, 108), np.arange(112, 120), 0.5)
        assert abs(a) > 1e-8

    def test_grid_max_positive_for_all_gaps(self):
        spec = ChainSpec(128, 1.0)
        grid = np.linspace(0.05, 1.0, 20)
        for gap in (2, 4, 8, 16):
            supp_in = np.arange(40, 48)
            supp_out = np.arange(48 + gap, 56 + gap)
            amps = np.abs(causality_probe_scan(spec, supp_in, supp_out, grid))
            assert amps.max() > 1e-13  # 10x the inner-product roundoff floor

    def test_scan_matches_pointwise(self):
        spec = ChainSpec(64, 1.0)
        supp_in, supp_out = np.arange(10, 14), np.arange(20, 24)
        grid = [0.3, 0.7]
        scan = causality_probe_scan(spec, supp_in, supp_out, grid)
        for t, a in zip(grid, scan):
            assert abs(a - causality_probe(spec, supp_in, supp_out, t)) < 1e-12

    def test_overlapping_supports_rejected(self):
        spec = ChainSpec(64, 1.0)
        with pytest.raises(ValueError):
            causality_probe(spec, np.arange(0, 8), np.arange(7, 12), 0.1)
