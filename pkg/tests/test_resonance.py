import math

import numpy as np
import pytest

from hhres.oscillator import BasisTruncation, ScalingParams, assemble
from hhres.resonance import (AmbiguousEigenvalueError, BranchJumpError,
                             Resonance, all_eigenvalues, continue_argument,
                             converge_resonance, default_theta_im,
                             locate_resonance)


class TestAllEigenvalues:
    def test_unperturbed_multiset(self):
        h = assemble(ScalingParams.from_beta(0.0, 0.0), BasisTruncation(3))
        ev = all_eigenvalues(h)
        expected = sorted([2, 4, 4, 6, 6, 6, 8, 8, 8, 8])
        assert np.allclose(sorted(ev.real), expected, atol=1e-12)
        assert np.max(np.abs(ev.imag)) < 1e-12

    def test_one_by_one(self):
        z = 1.5 - 2.5j
        assert all_eigenvalues(np.array([[z]])) == np.array([z])

    def test_theta_independent_low_part(self):
        h0 = assemble(ScalingParams.from_beta(0.0, 0.0), BasisTruncation(24))
        ht = assemble(ScalingParams.from_beta(0.0, 0.2j), BasisTruncation(24))
        low0 = np.sort(all_eigenvalues(h0).real)[:6]
        lowt = all_eigenvalues(ht)
        lowt = lowt[np.argsort(lowt.real)][:6]
        assert np.max(np.abs(lowt - low0)) < 1e-12


class TestLocate:
    def test_unperturbed(self):
        r = locate_resonance(ScalingParams.from_beta(0.0, 0.0),
                             BasisTruncation(6))
        assert abs(r.value - 2.0) < 1e-12
        assert isinstance(r, Resonance)

    def test_ambiguity_guard(self):
        # seed midway between the 2 and 4 levels: both candidates compete
        with pytest.raises(AmbiguousEigenvalueError):
            locate_resonance(ScalingParams.from_beta(0.0, 0.0),
                             BasisTruncation(6), seed_value=3.0 + 0.0j)

    def test_sector_enforced(self):
        with pytest.raises(Exception, match="parallelogram"):
            locate_resonance(ScalingParams.from_beta(0.1, 0.0),
                             BasisTruncation(6))

    def test_half_plane_membership(self):
        # located value obeys the numerical-range half-plane for H
        params = ScalingParams.from_beta(0.2, 0.35j)
        r = locate_resonance(params, BasisTruncation(24))
        alpha_h = params.s + 3.0 * params.t
        w = r.value * np.exp(-1j * (alpha_h - math.pi / 2))
        assert abs(np.angle(w)) <= math.pi / 2 + 1e-12

    def test_regression_beta_02(self):
        # pinned converged output at beta = 0.2, theta = 0.35i, N_max = 40;
        # second-order check: Re E ~ 2 - 0.04/18 = 1.99778 (next term ~2e-5)
        r = locate_resonance(ScalingParams.from_beta(0.2, 0.35j),
                             BasisTruncation(40))
        assert abs(r.value.real - 1.9977569765546475) < 1e-9
        # true width here is far below the eigensolver floor: Im is noise
        assert abs(r.value.imag) < 1e-10
        assert abs(r.value.real - (2.0 - 0.04 / 18.0)) < 3e-5


class TestConverge:
    def test_beta_zero_immediate(self):
        r = converge_resonance(0.0)
        assert r.value == 2.0 + 0.0j and r.n_max == 0 and r.converged

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            converge_resonance(0.1, tol=-1.0)

    def test_beta_01_against_series(self, vctx):
        r = vctx.resonance_at(0.1)
        assert r.converged and r.est_error < 1e-8
        # second-order truncation: next term is a4 g^2 ~ 1.3e-6
        assert abs(r.value.real - (2.0 - 0.01 / 18.0)) < 1e-5
        assert abs(r.value.imag) < 1e-10

    def test_default_theta_rule(self):
        assert math.isclose(default_theta_im(0.0), math.pi / 10)
        # mirror symmetry of the rule
        assert math.isclose(default_theta_im(math.pi), -math.pi / 10)

    def test_conjugate_pair(self):
        kw = dict(tol=1e-8, schedule=(12, 20, 28, 36, 44))
        r_pos = converge_resonance(0.2, **kw)
        r_neg = converge_resonance(-0.2, **kw)
        assert abs(r_pos.value.real - r_neg.value.real) < 1e-10
        assert abs(r_pos.value.imag + r_neg.value.imag) < 1e-10

    def test_theta_plateau(self, vctx):
        # dilation-parameter independence within the admissible region
        kw = dict(tol=1e-8, schedule=(12, 20, 28, 36, 44))
        r1 = converge_resonance(0.2, theta_im=0.30, t_grid=(0.30,), **kw)
        r2 = converge_resonance(0.2, theta_im=0.40, t_grid=(0.40,), **kw)
        bound = 10.0 * max(r1.est_error, r2.est_error)
        assert abs(r1.value - r2.value) <= bound

    def test_nonconverged_report(self):
        r = converge_resonance(0.2, tol=1e-14, schedule=(8, 12))
        assert not r.converged
        assert r.est_error > 1e-14 and math.isfinite(r.est_error)


class TestContinuation:
    def test_track_closes_on_conjugate(self):
        track = continue_argument(0.15, 64)
        assert track.endpoint_mismatch < 1e-6
        assert track.max_step <= track.step_bound
        # path stays on the alpha = pi/2 centre line
        for s, t in zip(track.s_values, track.t_values):
            assert abs(5.0 * t + s - math.pi / 2) < 1e-12

    def test_degenerate_rho_zero(self):
        # constant track at the unperturbed level, up to truncation error
        track = continue_argument(0.0, 16)
        assert all(abs(e - 2.0) < 1e-9 for e in track.energies)

    def test_single_step_rejected(self):
        with pytest.raises(BranchJumpError, match="step"):
            continue_argument(0.15, 1)

    def test_zero_steps_rejected(self):
        with pytest.raises(ValueError):
            continue_argument(0.15, 0)

    def test_rows_export(self):
        track = continue_argument(0.05, 16, n_max=10)
        rows = track.rows()
        assert len(rows) == 17
        assert rows[0][0] == 0.0 and abs(rows[-1][0] - math.pi) < 1e-15
