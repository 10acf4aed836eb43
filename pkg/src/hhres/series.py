"""Exact perturbation expansion of the ground level around E0 = 2.

The nondegenerate Rayleigh-Schrodinger recursion for H0 + beta*V, run on
polynomial-times-Gaussian states with intermediate normalisation
<psi_0, psi_n> = 0:

    a_n = <1, V P_{n-1}>
    D P_n = sum_{k=1..n} a_k P_{n-k} - V P_{n-1},   <P_n, 1> = 0,

with P_0 = 1, a_0 = 2 and D the Hermite operator from `poly`.  Everything
stays a Fraction, so the parity zeros a_{2n+1} = 0 are exact and checkable.
The x2 -> -x2 reflection sends V to -V, so the energy is a function of
beta^2; the series is exposed in the squared coupling g = beta^2 as well.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import (ONE, Poly2, format_rational, gaussian_inner,
                   multiply_by_potential, parse_rational, solve_hermite)

GROUND_ENERGY = Fraction(2)

DEFAULT_ORDERS = 40


class ParityError(ValueError):
    """A coefficient that must vanish by x2-parity is nonzero."""


class UnderLengthError(ValueError):
    """Too few computed orders for the requested diagnostic."""


@dataclass(frozen=True)
class GSeries:
    """Energy series in the squared coupling g = beta^2."""

    coeffs: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.coeffs)

    def as_floats(self, precision: str = "double") -> np.ndarray:
        return project_floats(self.coeffs, precision)


@dataclass(frozen=True)
class PerturbationSeries:
    """Exact coefficients a_s of E(beta) ~ sum a_s beta^s, plus corrections."""

    orders: int
    a: tuple[Fraction, ...]
    corrections: tuple[Poly2, ...] = field(repr=False)

    def reindex_to_g(self) -> GSeries:
        """Compress to the g = beta^2 variable; odd orders must vanish."""
        return reindex_to_g(self.a)

    # -- serialization -------------------------------------------------
    def to_json_obj(self) -> dict:
        g = [format_rational(c) for c in self.reindex_to_g().coeffs]
        return {
            "E0": format_rational(self.a[0]),
            "beta_coeffs": [format_rational(c) for c in self.a],
            "g_coeffs": g,
            "orders": self.orders,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PerturbationSeries":
        a = tuple(parse_rational(s) for s in obj["beta_coeffs"])
        return cls(orders=int(obj["orders"]), a=a, corrections=())

    def write_csv(self, path, header_lines: Sequence[str] = ()) -> None:
        with open(path, "w", newline="") as fh:
            for line in header_lines:
                fh.write(f"# {line}\n")
            w = csv.writer(fh)
            w.writerow(["n", "a_n", "a_n_float64"])
            for n, c in enumerate(self.a):
                w.writerow([n, format_rational(c), repr(float(c))])

    def write_json(self, path, extra: dict | None = None) -> None:
        payload = self.to_json_obj()
        if extra:
            payload.update(extra)
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)


def perturbation_series(orders: int) -> PerturbationSeries:
    """Generate the expansion exactly through beta^orders."""
    if orders < 0:
        raise ValueError("orders must be >= 0")
    a: list[Fraction] = [GROUND_ENERGY]
    corr: list[Poly2] = [ONE]
    for n in range(1, orders + 1):
        v_prev = multiply_by_potential(corr[n - 1])
        a_n = gaussian_inner(v_prev)
        a.append(a_n)
        rhs = -v_prev
        for k in range(1, n + 1):
            if a[k]:
                rhs = rhs + corr[n - k].scale(a[k])
        corr.append(solve_hermite(rhs))
    return PerturbationSeries(orders=orders, a=tuple(a), corrections=tuple(corr))


def reindex_to_g(a: Sequence[Fraction]) -> GSeries:
    """Keep a[2n] as the g-series; error out on any nonzero odd order."""
    for s in range(1, len(a), 2):
        if a[s] != 0:
            raise ParityError(f"odd-order coefficient a_{s} = {a[s]} is nonzero")
    return GSeries(coeffs=tuple(a[0::2]))


def project_floats(coeffs: Sequence[Fraction], precision: str = "double") -> np.ndarray:
    """Float projection of exact coefficients ('double' or 'longdouble')."""
    dtypes = {"double": np.float64, "longdouble": np.longdouble}
    try:
        dt = dtypes[precision]
    except KeyError:
        raise ValueError(f"unknown precision {precision!r}; use {sorted(dtypes)}") from None
    return np.array([dt(c.numerator) / dt(c.denominator) for c in coeffs], dtype=dt)


@dataclass(frozen=True)
class GrowthReport:
    """Sign pattern and factorial-growth diagnostics of a g-series."""

    n_orders: int
    signs: tuple[int, ...]            # sign of coeff n, n >= 1
    constant_sign: bool
    sign: int                         # the common sign if constant, else 0
    sigma: tuple[float, ...]          # sigma_n = |c_{n+1}| / ((n+1) |c_n|)
    sigma_last: float
    sigma_monotone_tail: bool         # last half of the sigma_n nondecreasing


def growth_diagnostics(g: GSeries, min_orders: int = 5) -> GrowthReport:
    """Report sign constancy and n!-type growth-rate estimates.

    sigma_n trending to a finite positive limit is the signature of
    coefficients growing like n! * sigma^n, i.e. a Borel transform with a
    finite convergence radius 1/sigma.
    """
    tail = g.coeffs[1:]
    nonzero = [c for c in tail if c != 0]
    if len(nonzero) < min_orders:
        raise UnderLengthError(
            f"need at least {min_orders} nonzero coefficients beyond the "
            f"constant term, have {len(nonzero)}")
    signs = tuple(1 if c > 0 else -1 if c < 0 else 0 for c in tail)
    constant = all(s == signs[0] and s != 0 for s in signs)
    sigma = []
    for n in range(1, len(tail)):
        if tail[n - 1] == 0:
            continue
        sigma.append(float(abs(tail[n]) / ((n + 1) * abs(tail[n - 1]))))
    half = sigma[len(sigma) // 2:]
    monotone = all(y >= x for x, y in zip(half, half[1:]))
    return GrowthReport(
        n_orders=len(g.coeffs) - 1,
        signs=signs,
        constant_sign=constant,
        sign=signs[0] if constant else 0,
        sigma=tuple(sigma),
        sigma_last=sigma[-1],
        sigma_monotone_tail=monotone,
    )
