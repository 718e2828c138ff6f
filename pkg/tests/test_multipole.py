"""Tensor-operator basis, state multipoles, strengths, degrees, classification."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import qpolar.catalog as catalog
from qpolar.angmom import half
from qpolar.multipole import (
    analyze,
    axial_profile,
    coherent_cumulative_max,
    cumulative,
    degree,
    state_multipoles,
    strengths,
    tensor_matrix,
    tensor_operator,
    unpolarization_order,
)
from qpolar.states import (
    Direction,
    diag_sector,
    fock_sector,
    maximally_mixed,
    random_angles,
    random_direction,
    random_sector,
    rotate,
    su2_coherent,
)
from qpolar.stokes import stokes_matrices


def all_tensors(S):
    t = half(S).twice
    return [(K, q, tensor_matrix(S, K, q)) for K in range(t + 1) for q in range(-K, K + 1)]


class TestTensorBasis:
    @pytest.mark.parametrize("twice_s", range(1, 13))
    def test_orthonormal_basis(self, twice_s):
        mats = np.stack([m for _, _, m in all_tensors(twice_s / 2)])
        flat = mats.reshape(len(mats), -1)
        gram = flat @ flat.conj().T
        assert_allclose(gram, np.eye(len(mats)), atol=1e-12)

    @pytest.mark.parametrize("twice_s", range(1, 13))
    def test_adjoint_pairing(self, twice_s):
        S = twice_s / 2
        for K in range(twice_s + 1):
            for q in range(-K, K + 1):
                lhs = tensor_matrix(S, K, q).conj().T
                rhs = (-1) ** q * tensor_matrix(S, K, -q)
                assert_allclose(lhs, rhs, atol=1e-12)

    def test_monopole_and_dipole_anchors(self):
        assert_allclose(tensor_matrix(1.5, 0, 0), np.eye(4) / 2, atol=1e-15)
        assert_allclose(
            np.diag(tensor_matrix(1, 1, 0)), [1 / math.sqrt(2), 0, -1 / math.sqrt(2)], atol=1e-15
        )
        assert_allclose(np.diag(tensor_matrix(1.5, 2, 0)), [0.5, -0.5, -0.5, 0.5], atol=1e-15)

    @pytest.mark.parametrize("twice_s", [2, 3, 5, 8])
    def test_proportional_to_spin_polynomials(self, twice_s):
        # T_10 ~ Sz, T_20 ~ 3Sz^2 - S(S+1), T_2-+1 ~ {Sz, S+-}, T_2-+2 ~ S+-^2,
        # all with unit Hilbert-Schmidt norm
        S = twice_s / 2
        ops = stokes_matrices(S)
        sp = ops.sx + 1j * ops.sy
        sm = ops.sx - 1j * ops.sy
        sz = ops.sz
        casimir = S * (S + 1) * np.eye(twice_s + 1)
        candidates = {
            (1, 0): sz,
            (1, 1): sp,
            (1, -1): sm,
            (2, 0): 3 * sz @ sz - casimir,
            (2, 1): sz @ sp + sp @ sz,
            (2, -1): sz @ sm + sm @ sz,
            (2, 2): sp @ sp,
            (2, -2): sm @ sm,
        }
        for (K, q), raw in candidates.items():
            if K > twice_s:
                continue
            t = tensor_matrix(S, K, q)
            norm = np.linalg.norm(raw)
            # proportionality with |constant| fixed by unit HS norm
            ratio = np.vdot(raw / norm, t)
            assert_allclose(abs(ratio), 1.0, atol=1e-12)
            assert_allclose(t, ratio * raw / norm, atol=1e-12)
            assert_allclose(np.linalg.norm(t), 1.0, atol=1e-12)

    def test_quadrupole_constant_requires_extra_spin_factor(self):
        # the closed-form constant 30/[(2S+3)(2S+1)(2S-1)(S+1)] does not
        # HS-normalize the quadrupole: at S = 3/2 it gives norm^2 = 3/2;
        # dividing it by S fixes the normalization
        S = 1.5
        ops = stokes_matrices(S)
        raw = 3 * ops.sz @ ops.sz - S * (S + 1) * np.eye(4)
        c_closed = 30 / ((2 * S + 3) * (2 * S + 1) * (2 * S - 1) * (S + 1))
        t_closed = math.sqrt(c_closed / 6) * raw
        assert_allclose(np.vdot(t_closed, t_closed).real, 1.5, atol=1e-12)
        t_fixed = math.sqrt(c_closed / S / 6) * raw
        assert_allclose(np.vdot(t_fixed, t_fixed).real, 1.0, atol=1e-12)
        assert_allclose(t_fixed, tensor_matrix(S, 2, 0), atol=1e-12)

    def test_rank_component_range_errors(self):
        with pytest.raises(ValueError):
            tensor_matrix(1, 3, 0)
        with pytest.raises(ValueError):
            tensor_matrix(1, 2, 3)
        with pytest.raises(ValueError):
            tensor_operator(1, -1, 0)


class TestStateMultipoles:
    def test_reconstruction(self):
        rng = np.random.default_rng(21)
        for twice_s in (1, 2, 3, 6):
            sec = random_sector(twice_s / 2, rng)
            spec = state_multipoles(sec)
            rebuilt = sum(
                spec.component(K, q) * tensor_matrix(sec.spin, K, q)
                for K in range(twice_s + 1)
                for q in range(-K, K + 1)
            )
            assert_allclose(rebuilt, sec.rho, atol=1e-12)

    def test_hermiticity_pairing_of_components(self):
        rng = np.random.default_rng(22)
        spec = state_multipoles(random_sector(2, rng))
        for (K, q), c in spec.components.items():
            assert abs(spec.component(K, -q) - (-1) ** q * c.conjugate()) < 1e-10

    @pytest.mark.parametrize("twice_s", [1, 2, 3, 4])
    def test_maximally_mixed_keeps_only_monopole(self, twice_s):
        spec = state_multipoles(maximally_mixed(twice_s / 2))
        assert_allclose(spec.strengths[0], 1 / (twice_s + 1), atol=1e-15)
        assert np.all(spec.strengths[1:] < 1e-28)
        assert spec.unpol_order == twice_s

    def test_two_photon_diagonal_family(self):
        for lam in (0.1, 0.45):
            spec = state_multipoles(diag_sector(1, [lam, 1 - 2 * lam, lam]))
            assert abs(spec.component(1, 0)) < 1e-15
            assert_allclose(spec.strengths[2], (3 * lam - 1) ** 2 * 2 / 3, atol=1e-14)
            assert_allclose(degree(spec, 2), abs(3 * lam - 1), atol=1e-12)

    def test_fock_three_half_dipole_value(self):
        spec = state_multipoles(fock_sector(1.5, 0.5))
        assert_allclose(spec.component(1, 0), 1 / (2 * math.sqrt(5)), atol=1e-14)

    def test_parseval_random_states(self):
        rng = np.random.default_rng(23)
        for twice_s in range(1, 13):
            for _ in range(60):
                sec = random_sector(twice_s / 2, rng)
                spec = state_multipoles(sec)
                assert abs(spec.strengths.sum() - sec.purity()) < 1e-10

    def test_rotation_invariance_of_scalars(self):
        rng = np.random.default_rng(24)
        for twice_s in (1, 2, 3, 6):
            sec = random_sector(twice_s / 2, rng)
            spec = state_multipoles(sec)
            for _ in range(5):
                rspec = state_multipoles(rotate(sec, random_angles(rng)))
                assert np.max(np.abs(spec.strengths - rspec.strengths)) < 1e-10
                assert np.max(np.abs(spec.cumulative_all - rspec.cumulative_all)) < 1e-10
                assert np.max(np.abs(spec.degrees_all - rspec.degrees_all)) < 1e-10
                assert spec.unpol_order == rspec.unpol_order


class TestCoherentMaxAndDegrees:
    def test_closed_form_values(self):
        assert_allclose(coherent_cumulative_max(1, 1), 0.5, atol=1e-15)
        assert_allclose(coherent_cumulative_max(1, 2), 2 / 3, atol=1e-15)
        assert_allclose(coherent_cumulative_max(1.5, 1), 9 / 20, atol=1e-15)

    def test_k_range_errors(self):
        with pytest.raises(ValueError):
            coherent_cumulative_max(1, 0)
        with pytest.raises(ValueError):
            coherent_cumulative_max(1, 3)

    @pytest.mark.parametrize("twice_s", range(1, 13))
    def test_matches_direct_coherent_cumulative(self, twice_s):
        rng = np.random.default_rng(twice_s)
        spec = state_multipoles(su2_coherent(twice_s / 2, random_direction(rng)))
        for K in range(1, twice_s + 1):
            assert abs(cumulative(spec, K) - coherent_cumulative_max(twice_s / 2, K)) < 1e-9

    def test_coherent_degrees_are_one(self):
        spec = state_multipoles(su2_coherent(2, Direction(0.9, 1.7)))
        for K in range(1, 5):
            assert_allclose(degree(spec, K), 1.0, atol=1e-9)

    def test_first_order_degree_is_bloch_length(self):
        spec = state_multipoles(fock_sector(0.5, 0.5))
        assert_allclose(degree(spec, 1), 1.0, atol=1e-12)

    def test_bound_audit_random_pure_states(self):
        # falsification attempt on the coherent maximality of A_K:
        # 10^4 Haar-random pure states per shell, S <= 25/2
        rng = np.random.default_rng(7)
        worst = -np.inf
        for twice_s in range(1, 26):
            d = twice_s + 1
            n = 10_000
            psi = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
            psi /= np.linalg.norm(psi, axis=0)
            labels = [(K, q) for K in range(1, twice_s + 1) for q in range(-K, K + 1)]
            T = np.stack([tensor_matrix(twice_s / 2, K, q) for K, q in labels])
            tv = (T.reshape(-1, d) @ psi).reshape(len(labels), d, n)
            comps = np.einsum("in,lin->ln", psi.conj(), tv)
            W = np.zeros((twice_s + 1, n))
            for (K, _), row in zip(labels, np.abs(comps) ** 2):
                W[K] += row
            A = np.cumsum(W[1:], axis=0)
            for K in range(1, twice_s + 1):
                worst = max(worst, A[K - 1].max() - coherent_cumulative_max(twice_s / 2, K))
        assert worst <= 1e-8


class TestClassification:
    def test_maximally_mixed_spin2(self):
        assert state_multipoles(maximally_mixed(2)).unpol_order == 4

    def test_pole_superposition_is_first_order_only(self):
        spec = state_multipoles(catalog.three_photon_pole_superposition())
        assert spec.unpol_order == 1
        assert spec.strengths[1] < 1e-12 and spec.strengths[2] > 0.2

    def test_fig4_right_state_is_second_order(self):
        spec = state_multipoles(diag_sector(1.5, [1 / 3, 0, 0.5, 1 / 6]))
        assert spec.unpol_order == 2

    def test_order_tolerance_validated(self):
        spec = state_multipoles(maximally_mixed(1))
        with pytest.raises(ValueError):
            unpolarization_order(spec, tol=0.0)

    def test_strengths_copy_and_cumulative_range(self):
        spec = state_multipoles(maximally_mixed(1))
        w = strengths(spec)
        w[0] = 99.0
        assert spec.strengths[0] != 99.0
        with pytest.raises(ValueError):
            cumulative(spec, 0)
        with pytest.raises(ValueError):
            cumulative(spec, 3)


class TestAxialProfile:
    def test_diagonal_states_are_axial(self):
        prof = axial_profile(diag_sector(1.5, [0.4, 0.3, 0.2, 0.1]))
        assert prof.axial_about_z and not prof.even_ranks_only

    def test_palindrome_is_even_rank_only(self):
        prof = axial_profile(diag_sector(1.5, [0.5, 0, 0, 0.5]))
        assert prof.axial_about_z and prof.even_ranks_only

    def test_rotated_diagonal_loses_z_axiality(self):
        from qpolar.angmom import EulerAngles

        sec = rotate(diag_sector(1.5, [0.4, 0.3, 0.2, 0.1]), EulerAngles(0.0, math.pi / 3, 0.0))
        prof = axial_profile(sec)
        assert not prof.axial_about_z
        # rotation invariants unchanged: still unitarily equivalent to an axial state
        assert_allclose(
            state_multipoles(sec).strengths,
            state_multipoles(diag_sector(1.5, [0.4, 0.3, 0.2, 0.1])).strengths,
            atol=1e-12,
        )


class TestAnalyze:
    def test_single_shell_report(self):
        rep = analyze(diag_sector(1.5, [1 / 3, 0, 0.5, 1 / 6]))
        assert len(rep.shells) == 1
        assert rep.aggregate_order == 2
        assert_allclose(rep.block_purity, 7 / 18, atol=1e-14)

    def test_multi_shell_aggregate(self):
        from qpolar.states import assemble

        state = assemble([
            (0.5, maximally_mixed(0.5)),
            (0.5, catalog.three_photon_pole_superposition()),
        ])
        rep = analyze(state)
        assert rep.aggregate_order == 1
        # aggregate A_2 = 0.5 * A_2(shell 3/2) since the S=1/2 shell saturates at 0
        assert_allclose(rep.aggregate_cumulative[1], 0.5 * 0.25, atol=1e-12)
