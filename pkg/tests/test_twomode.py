import itertools

import numpy as np
import pytest

from bellqfi.correlators import CorrelatorSpec, bell_correlator
from bellqfi.hilbert import SpinTriad
from bellqfi.qfi import bound_correlator_sum, qfi_pure
from bellqfi.twomode import (
    DickeState,
    TwoModeParams,
    coherent_plus_dicke,
    collective_matrix,
    dicke_to_full,
    ghz_dicke,
    random_dicke_state,
    symmetric_bound_correlator_sum,
    symmetric_correlator,
    two_mode_ground_state,
    two_mode_hamiltonian,
    two_mode_tridiagonal,
)

from oracles import two_mode_matrix


class TestHamiltonian:
    def test_single_atom_structure(self):
        # N = 1 reduces to J_x = sigma_x / 2: off-diagonal exactly 1/2
        jx = collective_matrix(1, "x")
        assert np.allclose(jx, [[0.0, 0.5], [0.5, 0.0]])

    def test_two_atom_tridiagonal(self):
        d, e = two_mode_tridiagonal(TwoModeParams(2, 0.0))
        assert np.allclose(d, 0.0)
        assert np.allclose(e, [-np.sqrt(2.0) / 2, -np.sqrt(2.0) / 2])
        mat = two_mode_hamiltonian(TwoModeParams(2, 0.0))
        assert np.allclose(mat, mat.T)

    def test_two_atoms_zero_coupling_spectrum(self):
        # pure -J_x for spin 1: eigenvalues -1, 0, +1
        mat = two_mode_hamiltonian(TwoModeParams(2, 0.0))
        assert np.allclose(np.linalg.eigvalsh(mat), [-1.0, 0.0, 1.0], atol=1e-12)

    def test_raising_matrix_element(self):
        # <k+1| J_x |k> = sqrt((N-k)(k+1)) / 2
        n = 5
        jx = collective_matrix(n, "x")
        for k in range(n):
            assert abs(jx[k + 1, k] - 0.5 * np.sqrt((n - k) * (k + 1))) < 1e-12

    def test_matches_full_space_restriction(self):
        # project the dense 2^N Hamiltonian onto symmetric states and compare
        n, u = 6, -1.3
        params = TwoModeParams(n, u)
        dense = two_mode_matrix(n, params.u_effective)
        basis = []
        for k in range(n + 1):
            amps = np.zeros(n + 1, dtype=complex)
            amps[k] = 1.0
            basis.append(dicke_to_full(DickeState(n, amps)).amplitudes)
        basis = np.array(basis)
        projected = basis.conj() @ dense @ basis.T
        assert np.max(np.abs(projected - two_mode_hamiltonian(params))) < 1e-10

    def test_scaled_convention_divides_by_n(self):
        assert TwoModeParams(40, -2.0).u_effective == -0.05
        assert TwoModeParams(40, -2.0, convention="raw").u_effective == -2.0

    def test_params_validated(self):
        with pytest.raises(ValueError):
            TwoModeParams(1, 0.0)
        with pytest.raises(ValueError):
            TwoModeParams(10, 0.0, convention="other")


class TestGroundState:
    def test_two_atom_hand_oracle(self):
        # 3x3 at u=0: ground state of -J_x is (1, sqrt(2), 1)/2 with energy -1
        energy, state = two_mode_ground_state(TwoModeParams(2, 0.0))
        assert abs(energy + 1.0) < 1e-12
        assert np.allclose(state.amplitudes.real, np.array([1, np.sqrt(2), 1]) / 2, atol=1e-12)

    def test_matches_unfolded_solver_where_gap_is_resolvable(self):
        for n, u in ((6, -0.8), (7, -1.4), (12, 0.0), (13, -2.0)):
            e_fold, s_fold = two_mode_ground_state(TwoModeParams(n, u))
            e_plain, s_plain = two_mode_ground_state(TwoModeParams(n, u), even_parity=False)
            assert abs(e_fold - e_plain) < 1e-10
            assert np.allclose(s_fold.amplitudes, s_plain.amplitudes, atol=1e-7)

    def test_cat_limit(self):
        # u -> -infinity: weight collapses onto k = 0 and k = N
        _, state = two_mode_ground_state(TwoModeParams(8, -500.0))
        probs = np.abs(state.amplitudes) ** 2
        assert probs[0] + probs[-1] > 0.999
        e_full = symmetric_correlator(state, 8, 0).value
        assert abs(e_full - 0.25) < 1e-3

    def test_zero_coupling_qfi_is_shot_noise(self):
        # coherent-state variance; brute force against the full space at small N
        for n in (4, 7, 10):
            _, state = two_mode_ground_state(TwoModeParams(n, 0.0))
            assert abs(qfi_pure(state) - n) < 1e-9
            full = dicke_to_full(state)
            assert abs(qfi_pure(full) - n) < 1e-9

    def test_ground_state_eigenvector_residual(self):
        n, u = 30, -1.5
        params = TwoModeParams(n, u)
        energy, state = two_mode_ground_state(params)
        mat = two_mode_hamiltonian(params)
        resid = mat @ state.amplitudes.real - energy * state.amplitudes.real
        assert np.max(np.abs(resid)) < 1e-10

    def test_phase_convention_deterministic(self):
        _, first = two_mode_ground_state(TwoModeParams(25, -1.1))
        _, second = two_mode_ground_state(TwoModeParams(25, -1.1))
        assert np.array_equal(first.amplitudes, second.amplitudes)
        peak = np.argmax(np.abs(first.amplitudes))
        assert first.amplitudes[peak].real > 0


class TestDickeEmbedding:
    def test_single_down_atom(self):
        state = dicke_to_full(DickeState(1, [1.0, 0.0]))
        assert np.allclose(state.amplitudes, [1.0, 0.0])

    def test_symmetrized_pair(self):
        state = dicke_to_full(DickeState(2, [0.0, 1.0, 0.0]))
        assert np.allclose(state.amplitudes, [0, 1 / np.sqrt(2), 1 / np.sqrt(2), 0])

    def test_norm_preserved(self, rng):
        for n in (2, 5, 10):
            state = random_dicke_state(n, rng)
            assert abs(dicke_to_full(state).norm() - 1.0) < 1e-12

    def test_cap(self, rng):
        with pytest.raises(ValueError):
            dicke_to_full(random_dicke_state(13, rng))


class TestSymmetricCorrelator:
    def test_ghz_full_order(self):
        for n in (2, 5, 9):
            res = symmetric_correlator(ghz_dicke(n), n, 0)
            assert abs(res.value - 0.25) < 1e-12
            assert abs(symmetric_correlator(ghz_dicke(n), 0, n).value - 0.25) < 1e-12

    def test_full_order_is_edge_amplitude_product(self, rng):
        state = random_dicke_state(7, rng)
        want = (abs(state.amplitudes[0]) * abs(state.amplitudes[-1])) ** 2
        assert abs(symmetric_correlator(state, 7, 0).value - want) < 1e-14

    def test_coherent_state_thresholds(self):
        # the +x coherent state sits exactly on the entanglement threshold 4^-q
        n = 9
        state = coherent_plus_dicke(n)
        for n_plus in range(3):
            for n_minus in range(3):
                if n_plus + n_minus == 0:
                    continue
                res = symmetric_correlator(state, n_plus, n_minus)
                assert abs(res.value - 4.0 ** (-res.order)) < 1e-12

    def test_matches_full_space_oracle_all_orders(self, rng):
        for n in (4, 6, 8):
            state = random_dicke_state(n, rng)
            full = dicke_to_full(state)
            for n_plus in range(n + 1):
                for n_minus in range(n - n_plus + 1):
                    if n_plus + n_minus == 0:
                        continue
                    plus = tuple(range(n_plus))
                    minus = tuple(range(n_plus, n_plus + n_minus))
                    want = bell_correlator(full, CorrelatorSpec(plus, minus)).value
                    got = symmetric_correlator(state, n_plus, n_minus).value
                    assert abs(got - want) < 1e-12

    def test_site_choice_irrelevant_via_dispatch(self, rng):
        state = random_dicke_state(6, rng)
        values = set()
        for plus in itertools.combinations(range(6), 2):
            rest = [s for s in range(6) if s not in plus]
            for minus in itertools.combinations(rest, 1):
                res = bell_correlator(state, CorrelatorSpec(plus, minus))
                values.add(round(res.value, 15))
        assert len(values) == 1

    def test_invalid_sizes(self, rng):
        state = random_dicke_state(4, rng)
        with pytest.raises(ValueError):
            symmetric_correlator(state, 3, 2)
        with pytest.raises(ValueError):
            symmetric_correlator(state, 0, 0)


class TestSymmetricBound:
    def test_coherent_state_gives_shot_noise(self):
        for n in (2, 5, 10):
            got = symmetric_bound_correlator_sum(coherent_plus_dicke(n))
            assert abs(got - n) < 1e-6

    def test_large_n_coherent_state_no_overflow(self):
        # log-space multiplicities: C(400, 200) alone overflows double precision
        got = symmetric_bound_correlator_sum(coherent_plus_dicke(400))
        assert abs(got - 400) < 1e-6

    def test_ghz_beats_half_heisenberg(self):
        for n in (4, 10, 40):
            assert symmetric_bound_correlator_sum(ghz_dicke(n)) >= n ** 2 / 2

    def test_matches_bitmask_bound_on_embedding(self, rng):
        for n in (3, 6, 10):
            state = random_dicke_state(n, rng)
            want = bound_correlator_sum(dicke_to_full(state))
            got = symmetric_bound_correlator_sum(state)
            assert abs(got - want) < 1e-8

    def test_truncation_is_monotone(self, rng):
        state = random_dicke_state(12, rng)
        full = symmetric_bound_correlator_sum(state)
        prev = 0.0
        for cap in (1, 3, 6, 12):
            part = symmetric_bound_correlator_sum(state, max_order=cap)
            assert part >= prev - 1e-12
            assert part <= full + 1e-9
            prev = part

    def test_atom_cap(self, rng):
        with pytest.raises(ValueError):
            symmetric_bound_correlator_sum(random_dicke_state(1200, rng))


class TestDickeQfi:
    def test_z_axis_variance(self, rng):
        state = random_dicke_state(8, rng)
        full = dicke_to_full(state)
        assert abs(qfi_pure(state) - qfi_pure(full)) < 1e-9

    def test_x_axis_through_collective_matrix(self, rng):
        state = random_dicke_state(6, rng)
        full = dicke_to_full(state)
        assert abs(qfi_pure(state, SpinTriad.x()) - qfi_pure(full, SpinTriad.x())) < 1e-9
