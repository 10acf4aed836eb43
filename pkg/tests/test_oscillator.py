import math

import numpy as np
import pytest

from hhres.oscillator import (BasisTruncation, ScalingParams, SectorError,
                              TruncationTooSmallError, assemble,
                              coercivity_check, numerical_range_check,
                              sector_membership)

SEED = 20260808

# parameter sets inside the admissible parallelogram, as (rho, s, t)
PARAM_SETS = [
    (0.1, math.pi / 2, 0.10),
    (0.2, math.pi / 4, 0.12),
    (0.05, 3 * math.pi / 4, 0.05),
]


def ham(rho, s, t, n_max=16):
    params = ScalingParams.from_polar(rho, s, 1j * t)
    return assemble(params, BasisTruncation(n_max))


class TestAssembly:
    def test_unperturbed_diagonal(self):
        h = ham(0.0, 0.0, 0.0, n_max=5)
        off = h.matrix - np.diag(np.diag(h.matrix))
        assert np.count_nonzero(off) == 0
        expected = [2.0 * (n1 + n2 + 1) for n1, n2 in h.trunc.index_set]
        assert np.array_equal(np.diag(h.matrix).real, expected)

    def test_dimension(self):
        assert BasisTruncation(20).dim == 231
        assert len(BasisTruncation(20).index_set) == 231

    def test_truncation_too_small(self):
        with pytest.raises(TruncationTooSmallError):
            assemble(ScalingParams.from_beta(0.1, 0.1j), BasisTruncation(2))

    def test_cubic_column_from_ground(self):
        h = ham(0.0, 0.0, 0.0, n_max=6)
        idx = {k: i for i, k in enumerate(h.trunc.index_set)}
        col = h.cubic[:, idx[(0, 0)]]
        nz = {h.trunc.index_set[i]: col[i]
              for i in np.nonzero(np.abs(col) > 1e-15)[0]}
        assert set(nz) == {(2, 1), (0, 3)}
        assert abs(nz[(2, 1)] - 0.5) < 1e-14
        assert abs(nz[(0, 3)] + math.sqrt(3) / 6) < 1e-14

    def test_complex_symmetric_exact(self):
        h = ham(*PARAM_SETS[0])
        assert np.max(np.abs(h.matrix - h.matrix.T)) == 0.0

    def test_parity_similarity_exact(self):
        h = ham(0.17, math.pi / 3, 0.08, n_max=8)
        p2 = h.parity_matrix()
        flipped = p2[:, None] * h.matrix * p2[None, :]
        neg = assemble(ScalingParams.from_beta(-h.params.beta, h.params.theta),
                       h.trunc)
        assert np.array_equal(flipped, neg.matrix)

    def test_conjugation_exact(self):
        params = ScalingParams.from_beta(0.11 + 0.07j, 0.1 + 0.2j)
        trunc = BasisTruncation(6)
        h = assemble(params, trunc)
        hbar = assemble(params.conjugated(), trunc)
        assert np.array_equal(hbar.matrix, np.conj(h.matrix))

    def test_negated_params(self):
        params = ScalingParams.from_beta(0.1 * np.exp(0.4j), 0.2j)
        neg = params.negated()
        assert neg.beta == -params.beta
        assert neg.beta_arg == params.beta_arg + math.pi

    def test_re_theta_bound(self):
        with pytest.raises(ValueError):
            ScalingParams.from_beta(0.1, 1.5 + 0.1j)

    def test_json_export(self):
        h = ham(0.0, 0.0, 0.0, n_max=3)
        obj = h.to_json_obj()
        assert obj["shape"] == [10, 10]
        assert len(obj["matrix"]) == 100
        assert obj["basis"][0] == [0, 0]


class TestSector:
    def test_interior_point(self):
        assert sector_membership(math.pi / 2, math.pi / 20)

    def test_boundary_origin(self):
        assert not sector_membership(0.0, 0.0)

    def test_second_constraint_violated(self):
        # t + s fine but 5t + s above pi
        assert not sector_membership(0.1, 0.7)


class TestNumericalRange:
    @pytest.mark.parametrize("rho,s,t", PARAM_SETS)
    def test_half_plane_containment(self, rho, s, t):
        rep = numerical_range_check(ham(rho, s, t), 500, SEED)
        assert rep.passed and rep.max_violation <= 1e-10

    def test_beta_zero_real_quotients(self):
        rep = numerical_range_check(ham(0.0, 0.0, 0.0), 100, SEED)
        # harmonic quotients are real positive: closed half-line limit
        assert rep.max_violation <= 1e-12

    def test_ground_basis_vector_quotient(self):
        h = ham(0.0, 0.0, 0.0)
        e0 = np.zeros(h.dim, dtype=complex)
        e0[0] = 1.0
        quotient = e0.conj() @ (h.k_matrix() @ e0)
        assert quotient == 2.0 + 0.0j

    def test_sector_precondition(self):
        params = ScalingParams.from_polar(0.1, -0.5, 0.0j)
        with pytest.raises(SectorError):
            numerical_range_check(
                assemble(params, BasisTruncation(4)), 10, SEED)

    def test_report_serializes(self):
        rep = numerical_range_check(ham(*PARAM_SETS[0]), 50, SEED)
        obj = rep.to_json_obj()
        assert obj["seed"] == SEED and "max_violation" in obj


class TestCoercivity:
    def test_right_angle_case(self):
        # alpha = pi/2, xi = 1: slack reduces to <u, x^2 u> >= 0
        rep = coercivity_check(ham(0.05, math.pi / 2, 0.0), 200, SEED)
        assert rep.xi == 1.0
        assert rep.min_slack >= 0.0

    @pytest.mark.parametrize("rho,s,t", PARAM_SETS)
    def test_parameter_sets(self, rho, s, t):
        rep = coercivity_check(ham(rho, s, t), 500, SEED)
        assert rep.passed and rep.min_slack >= -1e-10

    def test_alpha_zero_rejected(self):
        with pytest.raises(SectorError, match="arg"):
            coercivity_check(ham(0.05, 0.0, 0.0), 10, SEED)

    def test_smallness_condition_rejected(self):
        # |gamma|^2 = 1 while 4 |beta'| sin(alpha) > 1
        with pytest.raises(SectorError, match="gamma"):
            coercivity_check(ham(0.3, math.pi / 2, 0.0), 10, SEED)


class TestSpectralBaselineFeasible:
    """The dilation-invariance statement at reachable precision.

    The pinned acceptance combination (N_max = 20, t = 0.3, 1e-12) is not
    reachable (see test_acceptance); the physics holds where the truncation
    has converged.
    """

    def test_ground_level_theta_independent_nmax28(self):
        for t in (0.1, 0.2, 0.3):
            ev = np.linalg.eigvals(ham(0.0, 0.0, t, n_max=28).matrix)
            e0 = ev[np.argmin(np.abs(ev - 2.0))]
            assert abs(e0 - 2.0) < 1e-12

    def test_low_levels_at_small_t(self):
        exact = sorted(2.0 * (l + 1) for l in range(5) for _ in range(l + 1))
        ev = np.linalg.eigvals(ham(0.0, 0.0, 0.1, n_max=20).matrix)
        low = ev[np.argsort(ev.real)][:len(exact)]
        assert np.max(np.abs(low - np.array(exact))) < 1e-12
