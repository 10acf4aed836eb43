"""Cross-pillar verification suite binding series, spectra and resummation.

Each check is a named criterion with a pinned tolerance and an explicit
provenance for its expected value (exact arithmetic, a closed form, an
independent quadrature oracle, or another module of this package).  The
two checks marked infeasible_at_desk_scale compare quantities that sit
below double-precision resolution at the pinned parameters; they are run
and reported honestly rather than loosened (see the README notes).
"""

from __future__ import annotations

import math
import platform
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import oscillator, resonance, resummation, series
from .oscillator import BasisTruncation, ScalingParams, assemble

RANGE_SEED = 20260808
RANGE_SAMPLES = 500

# (|beta|, arg beta, Im theta) triples inside the admissible parallelogram
RANGE_PARAM_SETS = (
    (0.1, math.pi / 2, 0.10),
    (0.2, math.pi / 4, 0.12),
    (0.05, 3 * math.pi / 4, 0.05),
)

STABILITY_BETAS = (0.2, 0.1, 0.05, 0.025)
CROSS_PILLAR_BETAS = (0.1, 0.15, 0.2)
WIDTH_BETA = 0.25
G_ORDERS = 20                      # coefficients of the g-series fed to Pade
BETA_ORDERS = 2 * G_ORDERS         # matching beta-series length

QUICK_SUITE = (
    "exact-low-orders", "parity-zeros", "constant-signs", "spectral-baseline",
    "numerical-range", "coercivity", "synthetic-borel-oracle",
    "borel-pole-obstruction", "kernel-normalization",
)

FULL_SUITE = QUICK_SUITE + (
    "stability-small-beta", "argument-symmetry", "cross-pillar-agreement",
    "width-consistency",
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    expectation_source: str
    runtime_s: float
    runtime_limit_s: float | None = None
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lim = f" (limit {self.runtime_limit_s:.0f}s)" if self.runtime_limit_s else ""
        return (f"[{status}] {self.name}: measured {self.measured:.3e} vs "
                f"tolerance {self.tolerance:.1e}; {self.runtime_s:.2f}s{lim}"
                + (f" -- {self.note}" if self.note else ""))

    def to_json_obj(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "measured": self.measured, "tolerance": self.tolerance,
                "expectation_source": self.expectation_source,
                "runtime_s": self.runtime_s,
                "runtime_limit_s": self.runtime_limit_s, "note": self.note}


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult]
    environment: dict
    seeds: dict
    runtime_s: float

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {"suite": self.suite,
                "checks": [c.to_json_obj() for c in self.checks],
                "environment": self.environment, "seeds": self.seeds,
                "runtime_s": self.runtime_s, "all_passed": self.all_passed}

    def summary(self) -> str:
        lines = [c.line() for c in self.checks]
        n_pass = sum(c.passed for c in self.checks)
        lines.append(f"{n_pass}/{len(self.checks)} checks passed "
                     f"({self.runtime_s:.1f}s total)")
        return "\n".join(lines)


class VerifyContext:
    """Caches the expensive artifacts shared between checks."""

    def __init__(self):
        self._series = None
        self._series_runtime = 0.0
        self._resonances: dict[float, resonance.Resonance] = {}

    @property
    def series(self) -> series.PerturbationSeries:
        if self._series is None:
            t0 = time.perf_counter()
            self._series = series.perturbation_series(series.DEFAULT_ORDERS)
            self._series_runtime = time.perf_counter() - t0
        return self._series

    @property
    def series_runtime(self) -> float:
        _ = self.series
        return self._series_runtime

    @property
    def g_coeffs(self) -> list[Fraction]:
        return list(self.series.reindex_to_g().coeffs)

    def resonance_at(self, beta: float) -> resonance.Resonance:
        if beta not in self._resonances:
            self._resonances[beta] = resonance.converge_resonance(beta, tol=1e-8)
        return self._resonances[beta]


# ---------------------------------------------------------------------------
# the criteria
# ---------------------------------------------------------------------------

def check_exact_low_orders(ctx: VerifyContext) -> CheckResult:
    """a0 = 2, a1 = 0 and a2 = -1/18 against the two-state oracle."""
    t0 = time.perf_counter()
    ps = series.perturbation_series(4)
    # second-order sum over the only states the cubic coupling reaches from
    # the ground state: squared elements 1/4 and 1/12, both at energy 8
    oracle_a2 = (Fraction(1, 4) + Fraction(1, 12)) / (2 - 8)
    ok = (ps.a[0] == 2 and ps.a[1] == 0 and ps.a[2] == oracle_a2
          and ps.a[2] == Fraction(-1, 18))
    dt = time.perf_counter() - t0
    return CheckResult("exact-low-orders", ok and dt < 1.0,
                       measured=float(ps.a[2] - oracle_a2), tolerance=0.0,
                       expectation_source="sum-over-states oracle (exact)",
                       runtime_s=dt, runtime_limit_s=1.0)


def check_parity_zeros(ctx: VerifyContext) -> CheckResult:
    """All odd beta-orders vanish exactly through order 40."""
    dt = ctx.series_runtime
    t0 = time.perf_counter()
    odd = [ctx.series.a[s] for s in range(1, ctx.series.orders + 1, 2)]
    ok = all(c == 0 for c in odd)
    dt += time.perf_counter() - t0
    return CheckResult("parity-zeros", ok and dt < 30.0,
                       measured=float(max(map(abs, odd))), tolerance=0.0,
                       expectation_source="x2-parity argument (exact)",
                       runtime_s=dt, runtime_limit_s=30.0)


def check_constant_signs(ctx: VerifyContext) -> CheckResult:
    """g-series coefficients 1..20 all strictly negative."""
    t0 = time.perf_counter()
    g = ctx.g_coeffs
    ok = all(c < 0 for c in g[1:21])
    measured = float(max(g[1:21]))
    return CheckResult("constant-signs", ok, measured=measured, tolerance=0.0,
                       expectation_source="series module (computed orders)",
                       runtime_s=time.perf_counter() - t0)


def check_spectral_baseline(ctx: VerifyContext, n_max: int = 20,
                            t_values: tuple[float, ...] = (0.1, 0.2, 0.3),
                            tol: float = 1e-12, levels: int = 5) -> CheckResult:
    """Low-lying spectrum of the coupling-free matrix vs 2(l+1) multisets.

    At the pinned (N_max, t, tol) this is infeasible: the graded truncation
    is not invariant under dilation, so the truncated spectrum is only
    theta-independent up to a truncation error that reaches ~3e-10 for the
    lowest eigenvalue at t = 0.3, N_max = 20.  Run and reported honestly.
    """
    t0 = time.perf_counter()
    exact = sorted(2.0 * (l + 1) for l in range(levels) for _ in range(l + 1))
    n_check = len(exact)
    worst = 0.0
    details = []
    for t in t_values:
        params = ScalingParams.from_beta(0.0, 1j * t)
        ev = resonance.all_eigenvalues(assemble(params, BasisTruncation(n_max)))
        low = ev[np.argsort(ev.real)][:n_check]
        dev = float(np.max(np.abs(low - np.array(exact))))
        details.append(f"t={t}: {dev:.2e}")
        worst = max(worst, dev)
    return CheckResult("spectral-baseline", worst <= tol, measured=worst,
                       tolerance=tol,
                       expectation_source="oscillator spectrum 2(l+1), mult. l+1",
                       runtime_s=time.perf_counter() - t0,
                       note="; ".join(details)
                            + "; infeasible_at_desk_scale at t=0.3 (see README)")


def _range_hams():
    for rho, s, t in RANGE_PARAM_SETS:
        params = ScalingParams.from_polar(rho, s, 1j * t)
        yield assemble(params, BasisTruncation(20))


def check_numerical_range(ctx: VerifyContext) -> CheckResult:
    """Rayleigh quotients of K confined to the alpha half-plane."""
    t0 = time.perf_counter()
    worst = 0.0
    for ham in _range_hams():
        rep = oscillator.numerical_range_check(ham, RANGE_SAMPLES, RANGE_SEED)
        worst = max(worst, rep.max_violation)
    dt = time.perf_counter() - t0
    return CheckResult("numerical-range", worst <= 1e-10 and dt < 10.0,
                       measured=worst, tolerance=1e-10,
                       expectation_source="half-plane containment (exact compression)",
                       runtime_s=dt, runtime_limit_s=10.0)


def check_coercivity(ctx: VerifyContext) -> CheckResult:
    """Kinetic-domination slack nonnegative on the same parameter sets."""
    t0 = time.perf_counter()
    worst = math.inf
    for ham in _range_hams():
        rep = oscillator.coercivity_check(ham, RANGE_SAMPLES, RANGE_SEED)
        worst = min(worst, rep.min_slack)
    return CheckResult("coercivity", worst >= -1e-10, measured=worst,
                       tolerance=-1e-10,
                       expectation_source="xi = 1/sin(alpha) form inequality",
                       runtime_s=time.perf_counter() - t0)


def check_stability_small_beta(ctx: VerifyContext) -> CheckResult:
    """|E(beta) - 2| decreases monotonically on the geometric beta grid."""
    t0 = time.perf_counter()
    gaps, errs = [], []
    for beta in STABILITY_BETAS:
        r = ctx.resonance_at(beta)
        gaps.append(abs(r.value - 2.0))
        errs.append(r.est_error)
    ok = all(a > b for a, b in zip(gaps, gaps[1:])) and all(e < 1e-8 for e in errs)
    dt = time.perf_counter() - t0
    return CheckResult("stability-small-beta", ok and dt < 120.0,
                       measured=max(errs), tolerance=1e-8,
                       expectation_source="resonance module convergence ladder",
                       runtime_s=dt, runtime_limit_s=120.0,
                       note="gaps " + ", ".join(f"{g:.3e}" for g in gaps))


def check_argument_symmetry(ctx: VerifyContext) -> CheckResult:
    """Continuation endpoint E(pi) = conj(E(0)) and the exact parity flip."""
    t0 = time.perf_counter()
    track = resonance.continue_argument(rho=0.15, steps=64)
    params = ScalingParams.from_beta(0.3 * np.exp(1j * math.pi / 5), 0.15j)
    ham = assemble(params, BasisTruncation(10))
    p2 = ham.parity_matrix()
    flipped = p2[:, None] * ham.matrix * p2[None, :]
    neg = assemble(params.negated(), ham.trunc)
    parity_exact = np.array_equal(flipped, neg.matrix)
    ok = track.endpoint_mismatch < 1e-6 and parity_exact
    return CheckResult("argument-symmetry", ok,
                       measured=track.endpoint_mismatch, tolerance=1e-6,
                       expectation_source="parity similarity + conjugation",
                       runtime_s=time.perf_counter() - t0,
                       note=f"parity identity exact: {parity_exact}")


def _pv_oracle_geometric(beta: float) -> float:
    """PV integral of e^{-u/beta}/(1 - u) du / beta by QUADPACK qawc."""
    from scipy.integrate import quad
    pv, _ = quad(lambda u: math.exp(-u / beta) / beta, 0.0, 2.0,
                 weight="cauchy", wvar=1.0)
    tail, _ = quad(lambda u: math.exp(-u / beta) / (1.0 - u) / beta,
                   2.0, np.inf)
    return -pv + tail


def check_synthetic_borel_oracle(ctx: VerifyContext) -> CheckResult:
    """Factorial series: f vs the PV oracle, |d| vs 2 pi e^{-1/beta}/beta."""
    t0 = time.perf_counter()
    coeffs = [Fraction(math.factorial(n)) for n in range(20)]
    worst_f, worst_d = 0.0, 0.0
    for beta in (0.05, 0.1, 0.2):
        res = resummation.distributional_sum(coeffs, beta, q=Fraction(1),
                                             reduce_on_degeneracy=True)
        worst_f = max(worst_f, abs(res.f - _pv_oracle_geometric(beta)))
        d_exact = 2.0 * math.pi * math.exp(-1.0 / beta) / beta
        worst_d = max(worst_d, abs(abs(res.d) - d_exact) / d_exact)
    ok = worst_f <= 1e-8 and worst_d <= 0.01
    return CheckResult("synthetic-borel-oracle", ok, measured=worst_f,
                       tolerance=1e-8,
                       expectation_source="QUADPACK qawc PV oracle + closed form",
                       runtime_s=time.perf_counter() - t0,
                       note=f"max |d| relative deviation {worst_d:.2e}")


def check_cross_pillar(ctx: VerifyContext) -> CheckResult:
    """Distributional sum vs Re E(beta), and q=1/2 vs q=1 pipelines."""
    t0 = time.perf_counter()
    g = ctx.g_coeffs[:G_ORDERS]
    beta_coeffs = list(ctx.series.a)[:BETA_ORDERS]
    worst, worst_pipe = 0.0, 0.0
    for beta in CROSS_PILLAR_BETAS:
        r_g = resummation.distributional_sum(g, beta * beta, q=Fraction(1))
        r_b = resummation.distributional_sum(beta_coeffs, beta,
                                             q=Fraction(1, 2))
        e = ctx.resonance_at(beta).value
        worst = max(worst, abs(r_g.f - e.real) / max(1.0, abs(e)))
        worst_pipe = max(worst_pipe, abs(r_g.f - r_b.f))
    ok = worst <= 1e-4 and worst_pipe <= 1e-10
    dt = time.perf_counter() - t0
    return CheckResult("cross-pillar-agreement", ok and dt < 120.0,
                       measured=worst, tolerance=1e-4,
                       expectation_source="resonance module (converged eigenvalue)",
                       runtime_s=dt, runtime_limit_s=120.0,
                       note=f"pipeline disagreement {worst_pipe:.2e} (tol 1e-10)")


def check_borel_pole_obstruction(ctx: VerifyContext) -> CheckResult:
    """Smallest Borel-Pade pole on the positive real axis."""
    t0 = time.perf_counter()
    B = resummation.borel_transform(ctx.g_coeffs[:G_ORDERS], q=Fraction(1))
    L, M = resummation.near_diagonal_degrees(G_ORDERS)
    approx = resummation.pade_fit(B, L, M)
    smallest = min(approx.poles, key=abs)
    ratio = abs(smallest.imag) / abs(smallest.real) if smallest.real else math.inf
    ok = smallest.real > 0 and ratio < 0.1
    return CheckResult("borel-pole-obstruction", ok, measured=ratio,
                       tolerance=0.1,
                       expectation_source="Pade pole locations (companion matrix)",
                       runtime_s=time.perf_counter() - t0,
                       note=f"smallest pole {smallest:.6f}")


def check_width_consistency(ctx: VerifyContext, beta: float = WIDTH_BETA
                            ) -> CheckResult:
    """|d(beta)|/2 vs |Im E(beta)| within a factor of two.

    At the pinned beta = 0.25 the width scale is e^{-t1/beta^2} ~ 1e-33
    (leading Borel pole t1 ~ 4.83) while the eigensolver noise floor is
    ~1e-13, so the comparison is infeasible in double precision; run and
    reported honestly.  The same comparison passes in the resolvable
    window (see tests: beta ~ 0.5).
    """
    t0 = time.perf_counter()
    g = ctx.g_coeffs[:G_ORDERS]
    res = resummation.distributional_sum(g, beta * beta, q=Fraction(1))
    im_e = abs(ctx.resonance_at(beta).value.imag)
    half_d = abs(res.d) / 2.0
    ratio = half_d / im_e if im_e > 0 else math.inf
    ok = 0.5 <= ratio <= 2.0
    return CheckResult("width-consistency", ok, measured=ratio, tolerance=2.0,
                       expectation_source="resonance module Im E vs resummation d",
                       runtime_s=time.perf_counter() - t0,
                       note=f"|d|/2 = {half_d:.3e}, |Im E| = {im_e:.3e}; "
                            "order-of-magnitude check, "
                            "infeasible_at_desk_scale at beta=0.25 (see README)")


def check_kernel_normalization(ctx: VerifyContext) -> CheckResult:
    """Summing the constant series returns the constant for both orders."""
    t0 = time.perf_counter()
    worst = 0.0
    for q in (Fraction(1, 2), Fraction(1)):
        for beta in (0.05, 0.1, 0.3):
            res = resummation.distributional_sum([Fraction(2)], beta, q=q)
            worst = max(worst, abs(res.f - 2.0))
    return CheckResult("kernel-normalization", worst <= 1e-12, measured=worst,
                       tolerance=1e-12,
                       expectation_source="unit-mass Laplace kernel (closed form)",
                       runtime_s=time.perf_counter() - t0)


CHECKS = {
    "exact-low-orders": check_exact_low_orders,
    "parity-zeros": check_parity_zeros,
    "constant-signs": check_constant_signs,
    "spectral-baseline": check_spectral_baseline,
    "numerical-range": check_numerical_range,
    "coercivity": check_coercivity,
    "stability-small-beta": check_stability_small_beta,
    "argument-symmetry": check_argument_symmetry,
    "synthetic-borel-oracle": check_synthetic_borel_oracle,
    "cross-pillar-agreement": check_cross_pillar,
    "borel-pole-obstruction": check_borel_pole_obstruction,
    "width-consistency": check_width_consistency,
    "kernel-normalization": check_kernel_normalization,
}


def run_suite(suite: str = "full", ctx: VerifyContext | None = None
              ) -> VerificationReport:
    names = FULL_SUITE if suite == "full" else QUICK_SUITE
    ctx = ctx or VerifyContext()
    t0 = time.perf_counter()
    checks = [CHECKS[name](ctx) for name in names]
    env = {"python": platform.python_version(),
           "numpy": np.__version__,
           "platform": platform.platform()}
    return VerificationReport(suite=suite, checks=checks, environment=env,
                              seeds={"range_checks": RANGE_SEED},
                              runtime_s=time.perf_counter() - t0)
