"""Locating E(beta) near the ground level and continuing it in arg(beta).

The resonance is the isolated eigenvalue of the dilated matrix that the
unperturbed level 2 deforms into.  For small |beta| it is separated from
the rest of the spectrum (the next level sits near 4), so nearest-to-seed
selection with an ambiguity guard is reliable; convergence is driven by
enlarging N_max until the last increment drops below tolerance, and a
short scan over Im(theta) probes the dilation-independence plateau.

Continuation tracks E along beta = rho e^{is}, s: 0 -> pi, holding
t(s) = pi/10 - s/5.  That line keeps alpha = s + 5t = pi/2 (dead centre of
the admissible parallelogram) and is mirror symmetric, t(pi) = -t(0), so
the endpoint matrices are parity-similar entrywise conjugates up to the
float rounding of the path parameters and the endpoint comparison
E(pi) = conj(E(0)) holds to solver precision at any truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .oscillator import (BasisTruncation, ScaledHamiltonian, ScalingParams,
                         SectorError, assemble, sector_membership)

DEFAULT_SEED_VALUE = 2.0 + 0.0j
DEFAULT_TOL = 1e-8
DEFAULT_SCHEDULE = (12, 20, 28, 36, 44, 52, 60)
DEFAULT_SEPARATION = 2.0
MAX_STEP_ANGLE = math.pi / 8  # coarser continuation steps cannot certify a branch


class SolverError(RuntimeError):
    """Dense eigenvalue iteration failed to converge."""


class AmbiguousEigenvalueError(RuntimeError):
    """Two candidate eigenvalues compete for the seed."""


class BranchJumpError(RuntimeError):
    """Continuation step bound violated (possible branch jump)."""


def all_eigenvalues(ham: ScaledHamiltonian | np.ndarray) -> np.ndarray:
    """All eigenvalues of the dense complex matrix, sorted by (Re, Im)."""
    mat = ham.matrix if isinstance(ham, ScaledHamiltonian) else np.asarray(ham)
    try:
        ev = np.linalg.eigvals(mat)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigenvalue iteration did not converge on a "
                          f"{mat.shape[0]}x{mat.shape[0]} matrix: {exc}") from exc
    return ev[np.lexsort((ev.imag, ev.real))]


@dataclass(frozen=True)
class Resonance:
    """A located eigenvalue with its convergence diagnostics.

    est_error and theta_sensitivity are assessed by converge_resonance;
    locate_resonance reports zeros there (single solve, nothing measured).
    """

    value: complex
    beta: complex
    theta: complex
    n_max: int
    est_error: float = 0.0
    theta_sensitivity: float = 0.0
    converged: bool = True

    def to_json_obj(self) -> dict:
        return {"re_E": self.value.real, "im_E": self.value.imag,
                "beta": [self.beta.real, self.beta.imag],
                "theta": [self.theta.real, self.theta.imag],
                "n_max": self.n_max, "est_error": self.est_error,
                "theta_sensitivity": self.theta_sensitivity,
                "converged": self.converged}


def _nearest(eigenvalues: np.ndarray, seed: complex,
             separation_factor: float) -> complex:
    dist = np.abs(eigenvalues - seed)
    order = np.argsort(dist)
    best = eigenvalues[order[0]]
    if len(order) > 1:
        d1, d2 = dist[order[0]], dist[order[1]]
        if d1 > 0 and d2 <= separation_factor * d1:
            raise AmbiguousEigenvalueError(
                f"eigenvalues {best} and {eigenvalues[order[1]]} are "
                f"within factor {separation_factor} of the seed distance "
                f"({d1:.3e} vs {d2:.3e})")
    return complex(best)


def locate_resonance(params: ScalingParams, trunc: BasisTruncation,
                     seed_value: complex = DEFAULT_SEED_VALUE,
                     separation_factor: float = DEFAULT_SEPARATION) -> Resonance:
    """Eigenvalue of H(beta, theta) closest to the seed, guarded for ambiguity."""
    if params.beta_mod != 0 and not params.in_sector():
        raise SectorError(
            f"(s, t) = ({params.s}, {params.t}) outside the parallelogram")
    ev = all_eigenvalues(assemble(params, trunc))
    value = _nearest(ev, seed_value, separation_factor)
    return Resonance(value=value, beta=params.beta, theta=params.theta,
                     n_max=trunc.n_max)


def default_theta_im(s: float) -> float:
    """Centre line of the parallelogram: alpha = s + 5t pinned to pi/2."""
    return (math.pi / 2 - s) / 5.0


def converge_resonance(beta: complex, tol: float = DEFAULT_TOL,
                       schedule: tuple[int, ...] = DEFAULT_SCHEDULE,
                       theta_im: float | None = None,
                       t_grid: tuple[float, ...] | None = None,
                       seed_value: complex = DEFAULT_SEED_VALUE,
                       separation_factor: float = DEFAULT_SEPARATION) -> Resonance:
    """Drive N_max until |Delta E| < tol, then scan t for stationarity.

    Returns a non-converged Resonance carrying the best estimate if the
    N_max budget runs out.  The reported value is taken at the grid point
    of least theta-sensitivity (central or one-sided difference on the
    t-grid at the final truncation).
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    beta = complex(beta)
    if beta == 0:
        return Resonance(value=2.0 + 0.0j, beta=beta, theta=0.0j, n_max=0)
    s = np.angle(beta)
    t0 = default_theta_im(s) if theta_im is None else theta_im
    if not sector_membership(s, t0):
        raise SectorError(f"(s, t) = ({s}, {t0}) outside the parallelogram")

    value = None
    est_error = math.inf
    n_used = schedule[0]
    seed = seed_value
    for n_max in schedule:
        params = ScalingParams.from_beta(beta, 1j * t0)
        res = locate_resonance(params, BasisTruncation(n_max), seed,
                               separation_factor)
        if value is not None:
            est_error = abs(res.value - value)
        value, seed, n_used = res.value, res.value, n_max
        if est_error < tol:
            break
    converged = est_error < tol

    if t_grid is None:
        width = 0.05
        t_grid = tuple(t for t in (t0 - width, t0, t0 + width)
                       if sector_membership(s, t))
    values = []
    for t in t_grid:
        if t == t0:
            values.append(value)
            continue
        params = ScalingParams.from_beta(beta, 1j * t)
        values.append(locate_resonance(params, BasisTruncation(n_used), value,
                                       separation_factor).value)
    sens = []
    for i in range(len(t_grid)):
        if 0 < i < len(t_grid) - 1:
            sens.append(abs(values[i + 1] - values[i - 1]) / 2.0)
        elif len(t_grid) > 1:
            j = i + 1 if i == 0 else i - 1
            sens.append(abs(values[j] - values[i]))
        else:
            sens.append(0.0)
    best = int(np.argmin(sens))
    return Resonance(value=values[best], beta=beta, theta=1j * t_grid[best],
                     n_max=n_used, est_error=est_error,
                     theta_sensitivity=float(sens[best]), converged=converged)


@dataclass(frozen=True)
class ContinuationResult:
    """Eigenvalue track along s: 0 -> pi at fixed |beta| = rho."""

    rho: float
    s_values: tuple[float, ...]
    t_values: tuple[float, ...]
    energies: tuple[complex, ...] = field(repr=False)
    n_max: int
    step_bound: float
    max_step: float
    endpoint_mismatch: float      # |E(pi) - conj(E(0))|

    def rows(self) -> list[tuple[float, float, float, float]]:
        return [(s, t, e.real, e.imag) for s, t, e in
                zip(self.s_values, self.t_values, self.energies)]


def continuation_theta_im(s: float) -> float:
    """Track line t(s) = pi/10 - s/5: alpha = pi/2 all along, t(pi) = -t(0)."""
    return math.pi / 10.0 - s / 5.0


def continue_argument(rho: float, steps: int, n_max: int = 20,
                      step_bound: float | None = None,
                      separation_factor: float = DEFAULT_SEPARATION) -> ContinuationResult:
    """Track the resonance along arg(beta): 0 -> pi and compare endpoints.

    Each step reseeds nearest-eigenvalue selection from the previous value;
    a per-step increment above `step_bound` (default 2 rho^2 * step, about
    an order of magnitude above the analytic track speed |dE/ds| ~ rho^2/9)
    or an angular step above pi/8 raises BranchJumpError.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    ds = math.pi / steps
    if ds > MAX_STEP_ANGLE and rho > 0:
        raise BranchJumpError(
            f"angular step {ds:.4f} exceeds {MAX_STEP_ANGLE:.4f}; "
            f"use at least {math.ceil(math.pi / MAX_STEP_ANGLE)} steps")
    if step_bound is None:
        step_bound = max(2.0 * rho * rho * ds, 1e-9)
    trunc = BasisTruncation(n_max)
    s_values = tuple(i * ds for i in range(steps + 1))
    t_values = tuple(continuation_theta_im(s) for s in s_values)
    energies: list[complex] = []
    seed = DEFAULT_SEED_VALUE
    max_step = 0.0
    for s, t in zip(s_values, t_values):
        if rho > 0 and not sector_membership(s, t):
            raise SectorError(f"path point (s, t) = ({s}, {t}) left the sector")
        params = ScalingParams.from_polar(rho, s, 1j * t)
        value = locate_resonance(params, trunc, seed, separation_factor).value
        if energies:
            inc = abs(value - energies[-1])
            if inc > step_bound:
                raise BranchJumpError(
                    f"step at s = {s:.4f} moved the eigenvalue by {inc:.3e} "
                    f"(> bound {step_bound:.3e})")
            max_step = max(max_step, inc)
        energies.append(value)
        seed = value
    mismatch = abs(energies[-1] - energies[0].conjugate())
    return ContinuationResult(rho=rho, s_values=s_values, t_values=t_values,
                              energies=tuple(energies), n_max=n_max,
                              step_bound=step_bound, max_step=max_step,
                              endpoint_mismatch=mismatch)
