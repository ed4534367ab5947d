"""Exact polynomial arithmetic and binomial-basis coefficient vectors.

Everything here is exact: coefficients are `fractions.Fraction`, values at
integer arguments are Python ints.  A counting polynomial p of degree <= D
has a rational generating function

    sum_{n >= start} p(n) z^n  =  v(z) / (1 - z)^(D+1),      start in {0, 1},

and `StarVector` stores the numerator coefficients of v together with
(D, start).  Writing p in the shifted binomial basis C(n+D-i, D) recovers
the same numbers: p(n) = sum_i v_i * C(n+D-i, D).

Two length conventions follow from the algebra and are enforced at
construction:

* start=0: v has degree <= D and is stored with D+1 entries.
* start=1: dropping the n=0 term adds -p(0)*(1-z)^(D+1) to the numerator,
  which forces v_0 = 0 but can push the degree up to D+1, so v is stored
  with D+2 entries.

Counting polynomials with p(0) = 0 (e.g. order counts) have identical
numerators under both conventions; such vectors are built with start=0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Polynomial",
    "StarVector",
    "binomial",
    "binomial_poly_value",
    "binomial_transform",
    "interpolate",
    "inverse_transform",
]


def binomial(a: int, b: int) -> int:
    """C(a, b) as a subset count: zero whenever b < 0 or a < b."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def binomial_poly_value(a: int, d: int) -> int:
    """C(a, d) read as the degree-d polynomial a(a-1)...(a-d+1)/d!.

    Valid for negative a, which is what reciprocity checks evaluate;
    a product of d consecutive integers is always divisible by d!.
    """
    num = 1
    for t in range(d):
        num *= a - t
    return num // math.factorial(d)


def _fraction_to_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} is not an integer: {x}")
    return x.numerator


class Polynomial:
    """Dense exact univariate polynomial, coefficients ascending by power."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int | Fraction] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def monomial(cls, power: int, coeff: int | Fraction = 1) -> "Polynomial":
        return cls([0] * power + [coeff])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | float:
        """Highest power with nonzero coefficient; -inf for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else float("-inf")

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        return tuple(_fraction_to_int(c, "coefficient") for c in self._coeffs)

    def __call__(self, n: int | Fraction) -> int | Fraction:
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * n + c
        if isinstance(acc, Fraction) and acc.denominator == 1:
            return acc.numerator
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] += c
        return Polynomial(merged)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self._coeffs])

    def __mul__(self, other: "Polynomial | int | Fraction") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self._coeffs])
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1 or 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self.pretty()})"

    def pretty(self, var: str = "n") -> str:
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            mag = abs(c)
            mag_str = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if power == 0:
                term = mag_str
            else:
                head = "" if mag == 1 else f"{mag_str}*"
                term = f"{head}{var}" if power == 1 else f"{head}{var}^{power}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def to_json(self) -> dict:
        den = math.lcm(*(c.denominator for c in self._coeffs)) if self._coeffs else 1
        return {
            "numerators": [int(c * den) for c in self._coeffs],
            "denominator": den,
        }


def interpolate(
    points: Sequence[tuple[int, int]],
    expected_degree: int,
    *,
    integral: bool = True,
) -> Polynomial:
    """Unique polynomial of degree <= expected_degree through the given points.

    Requires exactly expected_degree+1 points with distinct abscissae; uses
    Newton divided differences over Fractions.  With ``integral=True``,
    non-integer monomial coefficients raise, since for the counting
    polynomials interpolated here that means a miscount or a wrong degree
    bound.
    """
    if len(points) != expected_degree + 1:
        raise ValueError(
            f"need exactly {expected_degree + 1} points for degree {expected_degree}, got {len(points)}"
        )
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation points")
    coef = [Fraction(y) for _, y in points]
    for level in range(1, len(points)):
        for i in range(len(points) - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = Polynomial([coef[-1]])
    for i in range(len(points) - 2, -1, -1):
        poly = poly * Polynomial([-xs[i], 1]) + Polynomial([coef[i]])
    if integral and not poly.is_integral:
        raise ValueError(f"interpolation produced non-integer coefficients: {poly.pretty()}")
    return poly


@dataclass(frozen=True)
class StarVector:
    """Numerator of sum_{n >= start} p(n) z^n over (1-z)^(degree_bound+1).

    entries[i] is the coefficient of z^i.  See the module docstring for the
    two length conventions.
    """

    entries: tuple[int, ...]
    degree_bound: int
    start: int = 0

    def __post_init__(self):
        if self.start not in (0, 1):
            raise ValueError(f"start must be 0 or 1, got {self.start}")
        if self.degree_bound < 0:
            raise ValueError("degree_bound must be nonnegative")
        expected = self.degree_bound + 1 + self.start
        if len(self.entries) != expected:
            raise ValueError(
                f"start={self.start} vector with degree_bound={self.degree_bound} "
                f"must have {expected} entries, got {len(self.entries)}"
            )
        if self.start == 1 and self.entries[0] != 0:
            raise ValueError("start=1 vectors have zero constant term")
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def degree(self) -> int:
        """Highest index with a nonzero entry; the zero vector has none."""
        for i in range(len(self.entries) - 1, -1, -1):
            if self.entries[i] != 0:
                return i
        raise ValueError("zero star vector has no degree")

    @property
    def codegree(self) -> int:
        return self.degree_bound + 1 - self.degree

    def interior_reversal(self) -> "StarVector":
        """z^(D+1) * v(1/z) for a start=0 vector.

        By reciprocity this is the numerator of the interior-count series of
        the same polytope, which starts at n=1; hence the result is start=1.
        """
        if self.start != 0:
            raise ValueError("interior_reversal is defined for start=0 vectors")
        return StarVector((0,) + tuple(reversed(self.entries)), self.degree_bound, start=1)

    def to_json(self) -> dict:
        return {
            "entries": list(self.entries),
            "degree_bound": self.degree_bound,
            "start": self.start,
        }


def binomial_transform(p: Polynomial, degree_bound: int, start: int = 0) -> StarVector:
    """Numerator of (1-z)^(degree_bound+1) * sum_{n >= start} p(n) z^n.

    Entry i is sum_k (-1)^k C(D+1, k) p(i-k) over i-k >= start.  The series
    tail is checked to vanish, which it must whenever deg p <= D; a nonzero
    tail means the degree bound is wrong.
    """
    if start not in (0, 1):
        raise ValueError("start must be 0 or 1")
    D = degree_bound
    if p.degree > D:
        raise ValueError(f"polynomial degree {p.degree} exceeds bound {D}")
    top = D + 3
    values = {}
    for n in range(start, top + 1):
        values[n] = _fraction_to_int(Fraction(p(n)), f"p({n})")
    signs = [(-1) ** k * binomial(D + 1, k) for k in range(D + 2)]

    def numerator_coeff(i: int) -> int:
        return sum(signs[k] * values[i - k] for k in range(min(i - start, D + 1) + 1))

    raw = [numerator_coeff(i) for i in range(top + 1)]
    for i in range(D + 2, top + 1):
        if raw[i] != 0:
            raise ValueError(f"series numerator has unexpected z^{i} term: {raw[i]}")
    if start == 0:
        if raw[D + 1] != 0:
            raise ValueError(f"start=0 numerator has unexpected z^{D + 1} term: {raw[D + 1]}")
        return StarVector(tuple(raw[: D + 1]), D, start=0)
    return StarVector(tuple(raw[: D + 2]), D, start=1)


def inverse_transform(v: StarVector) -> Polynomial:
    """The polynomial p with p(n) = sum_i v_i * C(n+D-i, D).

    Exact inverse of `binomial_transform` for either start convention; the
    result may have rational coefficients (it is always integer-valued).
    """
    D = v.degree_bound
    inv_fact = Fraction(1, math.factorial(D))
    total = Polynomial.zero()
    for i, entry in enumerate(v.entries):
        if entry == 0:
            continue
        basis = Polynomial([1])
        for t in range(D):
            basis = basis * Polynomial([D - i - t, 1])
        total = total + basis * (entry * inv_fact)
    return total
