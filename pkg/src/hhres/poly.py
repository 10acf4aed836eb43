"""Exact rational arithmetic on bivariate polynomials with a Gaussian weight.

A polynomial in x1, x2 is stored sparsely as a dict mapping exponent pairs
(d1, d2) to `fractions.Fraction` coefficients; zero coefficients are never
stored.  All arithmetic is exact.

States of the 2-D harmonic oscillator H0 = -Lap + x^2 are written in the
polynomial-times-Gaussian form P(x) exp(-x^2/2).  Conjugating H0 by the
ground-state Gaussian gives

    H0 (P e^{-x^2/2}) = ((D + 2) P) e^{-x^2/2},   D := -Lap + 2 x.grad,

so on the polynomial part the shifted oscillator H0 - 2 acts as the Hermite
operator D.  On a monomial x^a the operator D is upper triangular in the
total-degree grading with diagonal 2|a|:

    D x^a = 2|a| x^a - d1(d1-1) x^(a-2e1) - d2(d2-1) x^(a-2e2),

which is why `solve_hermite` is a pure back-substitution.

The inner product is normalised so the weight has unit mass,

    <P, Q> = pi^{-1} integral P Q exp(-|x|^2) dx,

making <1, 1> = 1 and every inner product of rational polynomials rational:
<x1^{2a} x2^{2b}> = (2a-1)!! (2b-1)!! / 2^{a+b} and odd moments vanish.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = tuple[int, int]
Coeff = Union[Fraction, int, str]


class SolvabilityError(ValueError):
    """Right-hand side of the Hermite equation is not mean-zero."""


def _double_factorial(n: int) -> int:
    """(n)!! with the convention (-1)!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gaussian_moment(d1: int, d2: int) -> Fraction:
    """Exact weighted moment <x1^d1 x2^d2> of the unit-mass Gaussian."""
    if d1 % 2 or d2 % 2:
        return Fraction(0)
    num = _double_factorial(d1 - 1) * _double_factorial(d2 - 1)
    return Fraction(num, 2 ** ((d1 + d2) // 2))


class Poly2:
    """Sparse exact polynomial in two variables over the rationals."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, Coeff] | Iterable[tuple[Exponent, Coeff]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for (d1, d2), c in items:
            if d1 < 0 or d2 < 0:
                raise ValueError(f"negative exponent in monomial ({d1}, {d2})")
            c = Fraction(c)
            if c:
                clean[(int(d1), int(d2))] = c
        self._terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def constant(cls, c: Coeff) -> "Poly2":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def monomial(cls, d1: int, d2: int, c: Coeff = 1) -> "Poly2":
        return cls({(d1, d2): Fraction(c)})

    # -- basic queries ------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def coefficient(self, d1: int, d2: int) -> Fraction:
        return self._terms.get((d1, d2), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Max d1+d2 over stored monomials; -1 for the zero polynomial."""
        return max((d1 + d2 for d1, d2 in self._terms), default=-1)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly2):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly2.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        p = Poly2.__new__(Poly2)
        p._terms = out
        return p

    def __neg__(self) -> "Poly2":
        p = Poly2.__new__(Poly2)
        p._terms = {k: -c for k, c in self._terms.items()}
        return p

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def scale(self, c: Coeff) -> "Poly2":
        c = Fraction(c)
        p = Poly2.__new__(Poly2)
        p._terms = {} if not c else {k: v * c for k, v in self._terms.items()}
        return p

    def __mul__(self, other: Union["Poly2", Coeff]) -> "Poly2":
        if not isinstance(other, Poly2):
            return self.scale(other)
        out: dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, Fraction(0)) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        p = Poly2.__new__(Poly2)
        p._terms = out
        return p

    def __rmul__(self, other: Coeff) -> "Poly2":
        return self.scale(other)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (d1, d2), c in sorted(self._terms.items(), key=_graded_lex_key):
            factors = [f"{name}^{d}" if d > 1 else name
                       for name, d in (("x1", d1), ("x2", d2)) if d]
            mono = "*".join(factors)
            if mono:
                parts.append(mono if c == 1 else f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    # -- serialization ------------------------------------------------
    def to_json_obj(self) -> dict:
        """{"terms": [[d1, d2, "num/den"], ...]} with graded-lex ordering."""
        rows = [[d1, d2, format_rational(c)]
                for (d1, d2), c in sorted(self._terms.items(), key=_graded_lex_key)]
        return {"terms": rows}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Poly2":
        return cls({(int(d1), int(d2)): parse_rational(c) for d1, d2, c in obj["terms"]})


def _graded_lex_key(item: tuple[Exponent, Fraction]):
    d1, d2 = item[0]
    return (d1 + d2, d1, d2)


def format_rational(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


ONE = Poly2.constant(1)

# Cubic coupling of the Henon-Heiles oscillator: V(x) = x1^2 x2 - x2^3 / 3.
POTENTIAL = Poly2({(2, 1): Fraction(1), (0, 3): Fraction(-1, 3)})


def multiply_by_potential(p: Poly2) -> Poly2:
    """Exact product V * p; raises the total degree of nonzero p by 3."""
    return POTENTIAL * p


def apply_hermite(p: Poly2) -> Poly2:
    """Apply the conjugated oscillator (D + 2) to the polynomial part.

    D = -Lap + 2 x.grad, so this realises H0 acting on p(x) exp(-x^2/2):
    constants are eigenvectors with eigenvalue 2, the ground level.
    """
    out: dict[Exponent, Fraction] = {}

    def acc(k: Exponent, v: Fraction) -> None:
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)

    for (d1, d2), c in p._terms.items():
        acc((d1, d2), (2 * (d1 + d2) + 2) * c)
        if d1 >= 2:
            acc((d1 - 2, d2), -d1 * (d1 - 1) * c)
        if d2 >= 2:
            acc((d1, d2 - 2), -d2 * (d2 - 1) * c)
    q = Poly2.__new__(Poly2)
    q._terms = out
    return q


def gaussian_inner(p: Poly2, q: Poly2 | None = None) -> Fraction:
    """Exact weighted inner product <p, q>; with q omitted, <p, 1>."""
    prod = p if q is None else p * q
    return sum((c * gaussian_moment(d1, d2) for (d1, d2), c in prod._terms.items()),
               Fraction(0))


def solve_hermite(rhs: Poly2) -> Poly2:
    """Invert D = -Lap + 2 x.grad on the mean-zero subspace.

    Returns the unique p with D p = rhs and <p, 1> = 0.  Requires
    <rhs, 1> = 0 (rhs orthogonal to the kernel of D, which is spanned by
    the constants); otherwise raises SolvabilityError.  Solved by
    back-substitution in descending total degree: the diagonal of D is
    2|a| and the -Lap part only lowers the degree by two.
    """
    if gaussian_inner(rhs) != 0:
        raise SolvabilityError(
            "right-hand side is not orthogonal to the kernel of the Hermite "
            "operator (<rhs, 1> != 0)")
    sol: dict[Exponent, Fraction] = {}
    max_deg = rhs.total_degree()
    for deg in range(max_deg, 0, -1):
        keys = {k for k in rhs._terms if k[0] + k[1] == deg}
        # monomials fed from degree deg+2 through -Lap
        keys.update((k[0] - 2, k[1]) for k in sol if k[0] + k[1] == deg + 2 and k[0] >= 2)
        keys.update((k[0], k[1] - 2) for k in sol if k[0] + k[1] == deg + 2 and k[1] >= 2)
        for (g1, g2) in keys:
            val = rhs._terms.get((g1, g2), Fraction(0))
            val += (g1 + 2) * (g1 + 1) * sol.get((g1 + 2, g2), Fraction(0))
            val += (g2 + 2) * (g2 + 1) * sol.get((g1, g2 + 2), Fraction(0))
            if val:
                sol[(g1, g2)] = val / (2 * deg)
    p = Poly2.__new__(Poly2)
    p._terms = sol
    c0 = -gaussian_inner(p)
    if c0:
        p._terms[(0, 0)] = c0
    return p
