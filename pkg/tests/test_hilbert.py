import itertools

import numpy as np
import pytest

from bellqfi.hilbert import (
    DensityMatrix,
    PureState,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    SpinTriad,
    collective_generator_apply,
    dimension,
    fix_global_phase,
    generator_eigenvalue,
    ghz_state,
    ladder_apply,
    pauli_apply,
    product_plus_state,
    qubit_rotation,
    random_density_matrix,
    random_pure_state,
    spin_flip_apply,
    to_generator_basis,
)

from oracles import site_operator

UP = PureState(1, [0.0, 1.0])
DOWN = PureState(1, [1.0, 0.0])


def amps(state):
    return state.amplitudes


class TestPauliApply:
    def test_sigma_z_on_up_is_eigenstate(self):
        assert np.allclose(amps(pauli_apply("z", 0, UP)), [0, 1])
        assert np.allclose(amps(pauli_apply("z", 0, DOWN)), [-1, 0])

    def test_sigma_x_flips(self):
        assert np.allclose(amps(pauli_apply("x", 0, UP)), [1, 0])

    def test_sigma_y_phase_convention(self):
        # fixed by demanding a right-handed triad: sigma_y |up> = +i |down>
        assert np.allclose(amps(pauli_apply("y", 0, UP)), [1j, 0])
        assert np.allclose(amps(pauli_apply("y", 0, DOWN)), [0, -1j])

    def test_xy_product_equals_i_z_on_basis_states(self):
        # derived check of the convention: sigma_x sigma_y = i sigma_z
        for state in (UP, DOWN):
            lhs = pauli_apply("x", 0, pauli_apply("y", 0, state))
            rhs = 1j * amps(pauli_apply("z", 0, state))
            assert np.allclose(amps(lhs), rhs)

    def test_matches_dense_oracle_on_random_states(self, rng):
        for n in (2, 3):
            state = random_pure_state(n, rng)
            for site in range(n):
                for axis, mat in (("x", SIGMA_X), ("y", SIGMA_Y), ("z", SIGMA_Z)):
                    fast = amps(pauli_apply(axis, site, state))
                    dense = site_operator(mat, site, n) @ amps(state)
                    assert np.allclose(fast, dense, atol=1e-14)

    def test_general_axis_is_linear_combination(self, rng):
        state = random_pure_state(2, rng)
        axis = np.array([1.0, 2.0, -1.0]) / np.sqrt(6.0)
        fast = amps(pauli_apply(axis, 1, state))
        dense = (axis[0] * site_operator(SIGMA_X, 1, 2)
                 + axis[1] * site_operator(SIGMA_Y, 1, 2)
                 + axis[2] * site_operator(SIGMA_Z, 1, 2)) @ amps(state)
        assert np.allclose(fast, dense, atol=1e-14)

    def test_site_out_of_range(self):
        with pytest.raises(ValueError):
            pauli_apply("x", 1, UP)

    def test_algebra_invariants_random_states(self, rng):
        # sigma_a^2 = 1 and [sigma_x, sigma_y] = 2i sigma_z, elementwise
        for n in range(1, 5):
            state = random_pure_state(n, rng)
            for site in range(n):
                for axis in "xyz":
                    twice = pauli_apply(axis, site, pauli_apply(axis, site, state))
                    assert np.allclose(amps(twice), amps(state), atol=1e-12)
                xy = pauli_apply("x", site, pauli_apply("y", site, state))
                yx = pauli_apply("y", site, pauli_apply("x", site, state))
                zz = pauli_apply("z", site, state)
                assert np.allclose(amps(xy) - amps(yx), 2j * amps(zz), atol=1e-12)


class TestGenerator:
    def test_eigenvalue_examples(self):
        assert generator_eigenvalue(0b11, 2) == 1.0
        assert generator_eigenvalue(0b00, 2) == -1.0
        assert generator_eigenvalue(0b101, 3) == 0.5

    def test_trace_free_for_every_n(self):
        for n in range(1, 11):
            total = sum(generator_eigenvalue(b, n) for b in range(dimension(n)))
            assert total == 0.0

    def test_apply_scales_amplitudes(self, rng):
        state = random_pure_state(3, rng)
        out = collective_generator_apply(state)
        for b in range(8):
            assert out.amplitudes[b] == state.amplitudes[b] * generator_eigenvalue(b, 3)

    def test_general_axis_matches_dense(self, rng):
        from oracles import generator_matrix
        state = random_pure_state(3, rng)
        out = collective_generator_apply(state, SpinTriad.x())
        assert np.allclose(out.amplitudes, generator_matrix(3, "x") @ state.amplitudes)


class TestLadderApply:
    def test_raise_down_gives_up(self):
        assert np.allclose(amps(ladder_apply(DOWN, (0,), ())), [0, 1])

    def test_raise_up_annihilates(self):
        assert np.allclose(amps(ladder_apply(UP, (0,), ())), [0, 0])

    def test_two_qubit_derived_example(self):
        # raising qubit 0 and lowering qubit 1 on (|01> + |10>)/sqrt(2), indices b1 b0:
        # only b = 10 survives (bit0 clear, bit1 set), mapping to b = 01
        state = PureState(2, np.array([0, 1, 1, 0]) / np.sqrt(2.0))
        out = ladder_apply(state, (0,), (1,))
        expect = np.zeros(4)
        expect[0b01] = 1 / np.sqrt(2.0)
        assert np.allclose(amps(out), expect)

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            ladder_apply(DOWN, (0,), (0,))

    def test_projector_property_all_small_specs(self):
        # apply(S+,S-) then apply(S-,S+) projects; repeating it changes nothing
        for n in (1, 2):
            combos = []
            for k in range(n + 1):
                for plus in itertools.combinations(range(n), k):
                    rest = [s for s in range(n) if s not in plus]
                    for km in range(len(rest) + 1):
                        for minus in itertools.combinations(rest, km):
                            if plus or minus:
                                combos.append((plus, minus))
            for plus, minus in combos:
                for b in range(dimension(n)):
                    vec = np.zeros(dimension(n), dtype=complex)
                    vec[b] = 1.0
                    state = PureState(n, vec)
                    once = ladder_apply(ladder_apply(state, plus, minus), minus, plus)
                    again = ladder_apply(ladder_apply(once, plus, minus), minus, plus)
                    assert np.allclose(amps(once), amps(again), atol=1e-15)


class TestReferenceStates:
    def test_ghz_two_qubits(self):
        state = ghz_state(2)
        assert np.allclose(amps(state), [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])

    def test_product_plus_single_qubit(self):
        assert np.allclose(amps(product_plus_state(1)), [1 / np.sqrt(2), 1 / np.sqrt(2)])

    def test_norms(self):
        for n in (1, 3, 7, 12):
            assert abs(ghz_state(n).norm() - 1) < 1e-12
            assert abs(product_plus_state(n).norm() - 1) < 1e-12

    def test_memory_cap(self):
        with pytest.raises(ValueError):
            ghz_state(25)
        with pytest.raises(ValueError):
            product_plus_state(30, max_qubits=24)


class TestStateTypes:
    def test_pure_state_length_check(self):
        with pytest.raises(ValueError):
            PureState(2, [1.0, 0.0])

    def test_normalization_check(self):
        with pytest.raises(ValueError):
            PureState(1, [1.0, 1.0]).require_normalized()

    def test_density_matrix_validation(self, rng):
        rho = random_density_matrix(3, rng)
        rho.check()
        bad = DensityMatrix(1, np.array([[0.5, 0.5], [0.2, 0.5]]))
        with pytest.raises(ValueError):
            bad.check()

    def test_density_matrix_qubit_cap(self):
        with pytest.raises(ValueError):
            DensityMatrix(13, np.eye(2))


class TestSpinTriad:
    def test_standard_triads_valid(self):
        for triad in (SpinTriad.z(), SpinTriad.x(), SpinTriad.y()):
            assert np.allclose(np.cross(triad.xi1, triad.xi2), triad.xi)

    def test_rejects_left_handed(self):
        with pytest.raises(ValueError):
            SpinTriad(np.array([0.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0]),
                      np.array([1.0, 0.0, 0.0]))

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            SpinTriad(np.array([0.0, 0.0, 2.0]), np.array([1.0, 0.0, 0.0]),
                      np.array([0.0, 1.0, 0.0]))

    def test_from_xi_right_handed(self):
        triad = SpinTriad.from_xi([1.0, 1.0, 1.0])
        assert np.allclose(np.cross(triad.xi1, triad.xi2), triad.xi, atol=1e-12)

    def test_rotation_diagonalizes_all_three_axes(self):
        for triad in (SpinTriad.x(), SpinTriad.y(), SpinTriad.from_xi([0.3, -0.5, 0.8])):
            u = qubit_rotation(triad)
            assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
            sx = sum(c * m for c, m in zip(triad.xi1, (SIGMA_X, SIGMA_Y, SIGMA_Z)))
            sy = sum(c * m for c, m in zip(triad.xi2, (SIGMA_X, SIGMA_Y, SIGMA_Z)))
            sz = sum(c * m for c, m in zip(triad.xi, (SIGMA_X, SIGMA_Y, SIGMA_Z)))
            assert np.allclose(u.conj().T @ sz @ u, SIGMA_Z, atol=1e-12)
            assert np.allclose(u.conj().T @ sx @ u, SIGMA_X, atol=1e-12)
            assert np.allclose(u.conj().T @ sy @ u, SIGMA_Y, atol=1e-12)

    def test_basis_change_preserves_norm_and_diagonalizes(self, rng):
        triad = SpinTriad.x()
        state = random_pure_state(3, rng)
        rotated = to_generator_basis(state, triad)
        assert abs(rotated.norm() - 1) < 1e-12
        # the x-axis generator acts diagonally after the rotation
        from oracles import generator_matrix
        gen_x = generator_matrix(3, "x")
        direct = gen_x @ state.amplitudes
        via_basis = collective_generator_apply(rotated)
        back = to_generator_basis(PureState(3, direct), triad)
        assert np.allclose(via_basis.amplitudes, back.amplitudes, atol=1e-12)


class TestMisc:
    def test_spin_flip_reverses(self, rng):
        state = random_pure_state(3, rng)
        assert np.allclose(amps(spin_flip_apply(state)), amps(state)[::-1])

    def test_fix_global_phase(self):
        vec = np.array([0.1, -0.9j, 0.3])
        fixed = fix_global_phase(vec)
        assert fixed[1].real > 0 and abs(fixed[1].imag) < 1e-15
