"""Complex-dilated Hamiltonian in a truncated 2-D oscillator basis.

The dilated operator is assembled as the dense complex-symmetric matrix

    H(beta, theta) = e^{-2 theta} T + e^{2 theta} X2 + beta e^{3 theta} VM

on the tensor-Hermite basis |n1, n2> truncated by total quantum number
n1 + n2 <= N_max (graded ordering, n1 ascending within a level).  T, X2, VM
are the real symmetric compressions of -Lap, x^2 and the cubic coupling
x1^2 x2 - x2^3/3.  At beta = theta = 0 the matrix is diagonal with entries
2(n1 + n2 + 1).

1-D matrix elements come from <n|x|n+1> = sqrt((n+1)/2) for the convention
H0 = p^2 + x^2 (each axis contributes 2n+1).  The bands of x, x^2, x^3 and
p^2 are written out analytically, so every stored block is the exact
compression of the corresponding operator; Rayleigh quotients of the
truncated matrix are therefore honest quotients of the full operator, and
the half-plane / coercivity bounds must hold on them up to float roundoff.

Sector bookkeeping: with s = arg beta and t = Im theta, admissible
parameters live in the open parallelogram 0 < t + s < pi, 0 < 5t + s < pi.
Writing K = e^{2 theta} H and alpha = s + 5t, the numerical range of K lies
in {-pi + alpha <= arg z <= alpha}, and with xi = 1/sin(alpha)

    xi * Re[e^{-i(alpha - pi/2)} <u, K u>] >= <u, -Lap u>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

DEFAULT_RANGE_TOL = 1e-10


class TruncationTooSmallError(ValueError):
    """Basis too small to represent the cubic coupling."""


class SectorError(ValueError):
    """Scaling parameters outside the admissible region for the check."""


@dataclass(frozen=True)
class ScalingParams:
    """Coupling (exact complex value plus its argument) and dilation.

    The argument is carried separately and is not reduced mod 2 pi, so
    analytic-continuation paths can distinguish beta = rho e^{i pi} from
    -rho given directly; the complex value itself is stored unmodified so
    matrix-level identities (parity flip, conjugation) stay bitwise exact.
    |Re theta| < 1 is assumed throughout.
    """

    beta: complex
    beta_arg: float
    theta: complex

    def __post_init__(self):
        if abs(self.theta.real) >= 1:
            raise ValueError("require |Re theta| < 1")

    @classmethod
    def from_beta(cls, beta: complex, theta: complex) -> "ScalingParams":
        beta = complex(beta)
        return cls(beta=beta,
                   beta_arg=cmath.phase(beta) if beta != 0 else 0.0,
                   theta=complex(theta))

    @classmethod
    def from_polar(cls, beta_mod: float, beta_arg: float,
                   theta: complex) -> "ScalingParams":
        if beta_mod < 0:
            raise ValueError("beta_mod must be >= 0")
        return cls(beta=beta_mod * cmath.exp(1j * beta_arg),
                   beta_arg=beta_arg, theta=complex(theta))

    def negated(self) -> "ScalingParams":
        """Exact sign flip of the coupling (argument shifted by pi)."""
        return ScalingParams(beta=-self.beta, beta_arg=self.beta_arg + math.pi,
                             theta=self.theta)

    def conjugated(self) -> "ScalingParams":
        return ScalingParams(beta=self.beta.conjugate(),
                             beta_arg=-self.beta_arg,
                             theta=self.theta.conjugate())

    @property
    def beta_mod(self) -> float:
        return abs(self.beta)

    @property
    def s(self) -> float:
        return self.beta_arg

    @property
    def t(self) -> float:
        return self.theta.imag

    def in_sector(self) -> bool:
        return sector_membership(self.s, self.t)


def sector_membership(s: float, t: float) -> bool:
    """Strict membership in the parallelogram 0 < t+s < pi, 0 < 5t+s < pi."""
    return 0.0 < t + s < math.pi and 0.0 < 5.0 * t + s < math.pi


@dataclass(frozen=True)
class BasisTruncation:
    """Graded truncation n1 + n2 <= N_max of the tensor oscillator basis."""

    n_max: int

    @property
    def dim(self) -> int:
        return (self.n_max + 1) * (self.n_max + 2) // 2

    @property
    def index_set(self) -> tuple[tuple[int, int], ...]:
        return _index_set(self.n_max)


@lru_cache(maxsize=None)
def _index_set(n_max: int) -> tuple[tuple[int, int], ...]:
    return tuple((n1, tot - n1) for tot in range(n_max + 1) for n1 in range(tot + 1))


@lru_cache(maxsize=8)
def _blocks(n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Real symmetric compressions (T, X2, VM) on the truncated basis.

    The 1-D bands are written out analytically (not as products of
    truncated ladder matrices), so each block is the exact compression up
    to one float rounding per entry, the bands of p^2 and x^2 cancel
    bitwise, and the diagonal of T + X2 is the exact float 2(n1 + n2 + 1).
    """
    m = n_max + 1
    n = np.arange(m, dtype=float)
    x1d = np.zeros((m, m))
    x2_1d = np.zeros((m, m))
    x3_1d = np.zeros((m, m))
    p2_1d = np.zeros((m, m))

    def band(mat: np.ndarray, offset: int, values: np.ndarray) -> None:
        i = np.arange(m - offset)
        mat[i, i + offset] = values
        mat[i + offset, i] = values

    band(x1d, 1, np.sqrt((n[:-1] + 1) / 2.0))
    x2_1d[np.diag_indices(m)] = n + 0.5
    band(x2_1d, 2, np.sqrt((n[:-2] + 1) * (n[:-2] + 2)) / 2.0)
    p2_1d[np.diag_indices(m)] = n + 0.5
    band(p2_1d, 2, -np.sqrt((n[:-2] + 1) * (n[:-2] + 2)) / 2.0)
    band(x3_1d, 1, 3.0 * (n[:-1] + 1) * np.sqrt((n[:-1] + 1) / 2.0) / 2.0)
    band(x3_1d, 3, np.sqrt((n[:-3] + 1) * (n[:-3] + 2) * (n[:-3] + 3))
         / (2.0 * math.sqrt(2.0)))

    idx = _index_set(n_max)
    n1 = np.array([i for i, _ in idx])
    n2 = np.array([j for _, j in idx])
    same1 = n1[:, None] == n1[None, :]
    same2 = n2[:, None] == n2[None, :]
    T = p2_1d[np.ix_(n1, n1)] * same2 + same1 * p2_1d[np.ix_(n2, n2)]
    X2 = x2_1d[np.ix_(n1, n1)] * same2 + same1 * x2_1d[np.ix_(n2, n2)]
    VM = x2_1d[np.ix_(n1, n1)] * x1d[np.ix_(n2, n2)] \
        - (1.0 / 3.0) * same1 * x3_1d[np.ix_(n2, n2)]
    for b in (T, X2, VM):
        b.setflags(write=False)
    return T, X2, VM


@dataclass
class ScaledHamiltonian:
    """Dense matrix of H(beta, theta) plus its real component blocks."""

    matrix: np.ndarray
    params: ScalingParams
    trunc: BasisTruncation
    kinetic: np.ndarray = field(repr=False)
    harmonic: np.ndarray = field(repr=False)
    cubic: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def k_matrix(self) -> np.ndarray:
        """K(beta, theta) = e^{2 theta} H(beta, theta)."""
        return np.exp(2 * self.params.theta) * self.matrix

    def parity_matrix(self) -> np.ndarray:
        """Diagonal of (-1)^{n2}: conjugation flips the sign of beta."""
        return np.array([(-1) ** n2 for _, n2 in self.trunc.index_set], dtype=float)

    def to_json_obj(self) -> dict:
        return {
            "basis": [list(k) for k in self.trunc.index_set],
            "matrix": [[z.real, z.imag] for z in self.matrix.ravel()],
            "shape": list(self.matrix.shape),
            "beta": [self.params.beta.real, self.params.beta.imag],
            "theta": [self.params.theta.real, self.params.theta.imag],
        }


def assemble(params: ScalingParams, trunc: BasisTruncation) -> ScaledHamiltonian:
    """Build the dilated matrix; needs N_max >= 3 to hold V's couplings."""
    if trunc.n_max < 3:
        raise TruncationTooSmallError(
            f"N_max = {trunc.n_max} < 3 cannot represent the cubic coupling")
    T, X2, VM = _blocks(trunc.n_max)
    th = params.theta
    mat = np.exp(-2 * th) * T + np.exp(2 * th) * X2 \
        + params.beta * np.exp(3 * th) * VM
    return ScaledHamiltonian(matrix=mat, params=params, trunc=trunc,
                             kinetic=T, harmonic=X2, cubic=VM)


def _random_unit_vectors(dim: int, n_samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((n_samples, dim)) + 1j * rng.standard_normal((n_samples, dim))
    return u / np.linalg.norm(u, axis=1, keepdims=True)


@dataclass(frozen=True)
class RangeReport:
    """Angular containment of sampled Rayleigh quotients of K(beta, theta)."""

    n_samples: int
    seed: int
    alpha: float
    tolerance: float
    max_violation: float          # radians beyond the closed half-plane
    worst_quotient: complex
    passed: bool

    def to_json_obj(self) -> dict:
        return {"n_samples": self.n_samples, "seed": self.seed,
                "alpha": self.alpha, "tolerance": self.tolerance,
                "max_violation": self.max_violation,
                "worst_quotient": [self.worst_quotient.real, self.worst_quotient.imag],
                "passed": self.passed}


def numerical_range_check(ham: ScaledHamiltonian, n_samples: int, seed: int,
                          tol: float = DEFAULT_RANGE_TOL) -> RangeReport:
    """Sample Rayleigh quotients of K and test -pi+alpha <= arg z <= alpha.

    Since the blocks are exact compressions, the numerical range of the
    truncated K is contained in that of the full operator; any violation
    beyond float roundoff is a failure.  The same statement for H itself
    is the alpha -> s + 3t half-plane, reached by rotating by e^{-2it}.
    """
    p = ham.params
    if p.beta_mod != 0 and not p.in_sector():
        raise SectorError(f"(s, t) = ({p.s}, {p.t}) outside the parallelogram")
    alpha = p.s + 5.0 * p.t
    u = _random_unit_vectors(ham.dim, n_samples, seed)
    k = ham.k_matrix()
    quotients = np.einsum("ij,ij->i", u.conj(), u @ k.T)
    # containment <=> |arg(z e^{-i(alpha - pi/2)})| <= pi/2
    w = quotients * np.exp(-1j * (alpha - math.pi / 2))
    viol = np.abs(np.angle(w)) - math.pi / 2
    worst = int(np.argmax(viol))
    max_viol = float(max(viol[worst], 0.0))
    return RangeReport(n_samples=n_samples, seed=seed, alpha=alpha,
                       tolerance=tol, max_violation=max_viol,
                       worst_quotient=complex(quotients[worst]),
                       passed=max_viol <= tol)


@dataclass(frozen=True)
class CoercivityReport:
    """Minimum kinetic-domination slack over sampled vectors."""

    n_samples: int
    seed: int
    alpha: float
    xi: float
    tolerance: float
    min_slack: float
    passed: bool

    def to_json_obj(self) -> dict:
        return {"n_samples": self.n_samples, "seed": self.seed,
                "alpha": self.alpha, "xi": self.xi,
                "tolerance": self.tolerance, "min_slack": self.min_slack,
                "passed": self.passed}


def coercivity_check(ham: ScaledHamiltonian, n_samples: int, seed: int,
                     tol: float = DEFAULT_RANGE_TOL) -> CoercivityReport:
    """Test xi*Re[e^{-i(alpha-pi/2)} <u,Ku>] >= <u,-Lap u> on samples.

    K corresponds to -Lap + gamma x^2 + beta' V with gamma = e^{4 theta},
    beta' = beta e^{5 theta}; the inequality holds with xi = 1/sin(alpha),
    alpha = arg beta', under the conditions checked below.
    """
    p = ham.params
    alpha = p.s + 5.0 * p.t
    arg_gamma = 4.0 * p.t
    abs_gamma_sq = math.exp(8.0 * p.theta.real)
    abs_beta_p = p.beta_mod * math.exp(5.0 * p.theta.real)
    if not 0.0 < alpha < math.pi:
        raise SectorError(f"need 0 < arg(beta') < pi, got alpha = {alpha}")
    if not (-math.pi + alpha < arg_gamma < alpha):
        raise SectorError(
            f"need -pi + alpha < arg(gamma) < alpha, got arg(gamma) = {arg_gamma}")
    if not abs_gamma_sq > 4.0 * abs_beta_p * math.sin(alpha):
        raise SectorError(
            f"need |gamma|^2 > 4 |beta'| sin(alpha): "
            f"{abs_gamma_sq} <= {4.0 * abs_beta_p * math.sin(alpha)}")
    xi = 1.0 / math.sin(alpha)
    u = _random_unit_vectors(ham.dim, n_samples, seed)
    k = ham.k_matrix()
    ku = np.einsum("ij,ij->i", u.conj(), u @ k.T)
    tu = np.einsum("ij,ij->i", u.conj(), u @ ham.kinetic.T).real
    slack = xi * (np.exp(-1j * (alpha - math.pi / 2)) * ku).real - tu
    min_slack = float(slack.min())
    return CoercivityReport(n_samples=n_samples, seed=seed, alpha=alpha,
                            xi=xi, tolerance=tol, min_slack=min_slack,
                            passed=min_slack >= -tol)
