"""Exact quasi-polynomials in one variable.

A quasi-polynomial of period ``q`` is stored as ``q`` polynomials (the
*constituents*); constituent ``r`` is used for arguments ``n`` with
``n % q == r``.  Coefficients are :class:`fractions.Fraction` and each
constituent is a polynomial in ``n`` itself (not in ``(n - r) / q``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DemeritError


class QuasiPolynomialError(DemeritError, ValueError):
    """Raised when a quasi-polynomial cannot be built from the given data."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _strip(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_eval(coeffs: Sequence[Fraction], n) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def _poly_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    size = max(len(a), len(b))
    return _strip(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)
    )


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


class QuasiPolynomial:
    """Immutable quasi-polynomial with exact rational coefficients.

    >>> q = QuasiPolynomial([[0, -2, 1], [1, -2, 1]])  # (n^2 - 2n [+1]) by parity
    >>> q.period, q.degree
    (2, 2)
    >>> q(6), q(7)
    (Fraction(24, 1), Fraction(36, 1))

    Construction always normalizes to the minimal period, so two
    quasi-polynomials are equal exactly when they agree as functions on the
    nonnegative integers.
    """

    __slots__ = ("_constituents",)

    def __init__(self, constituents: Sequence[Sequence]):
        if len(constituents) == 0:
            raise QuasiPolynomialError("a quasi-polynomial needs at least one constituent")
        cons = [_strip(c) for c in constituents]
        period = len(cons)
        for d in _divisors(period):
            if all(cons[r] == cons[r % d] for r in range(period)):
                cons = cons[:d]
                break
        self._constituents: tuple[tuple[Fraction, ...], ...] = tuple(cons)

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "QuasiPolynomial":
        return cls([coeffs])

    @classmethod
    def constant(cls, value) -> "QuasiPolynomial":
        return cls([[value]])

    @classmethod
    def zero(cls) -> "QuasiPolynomial":
        return cls([[]])

    @classmethod
    def from_cases(cls, period: int, cases: dict) -> "QuasiPolynomial":
        """Build from a ``{residues: coeffs}`` table, e.g. ``{(1, 3): [...]}``.

        Keys may be single residues or iterables of residues; every residue
        ``0 <= r < period`` must be covered exactly once.
        """
        table: list = [None] * period
        for key, coeffs in cases.items():
            residues = (key,) if isinstance(key, int) else tuple(key)
            for r in residues:
                r %= period
                if table[r] is not None:
                    raise QuasiPolynomialError(f"residue {r} given twice")
                table[r] = coeffs
        missing = [r for r, c in enumerate(table) if c is None]
        if missing:
            raise QuasiPolynomialError(f"residues {missing} not covered")
        return cls(table)

    @property
    def period(self) -> int:
        return len(self._constituents)

    @property
    def constituents(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._constituents

    @property
    def degree(self) -> int:
        """Maximal constituent degree; ``-1`` for the zero quasi-polynomial."""
        return max(len(c) for c in self._constituents) - 1

    def is_zero(self) -> bool:
        return self.degree < 0

    def constituent(self, n: int) -> tuple[Fraction, ...]:
        return self._constituents[n % self.period]

    def __call__(self, n: int) -> Fraction:
        return _poly_eval(self.constituent(n), n)

    def eval(self, n: int) -> Fraction:
        return self(n)

    def unfold(self, period: int) -> list[tuple[Fraction, ...]]:
        """Constituents listed over ``period`` (a multiple of the minimal one)."""
        if period % self.period:
            raise QuasiPolynomialError(
                f"period {period} is not a multiple of the minimal period {self.period}"
            )
        return [self._constituents[r % self.period] for r in range(period)]

    def coefficient(self, j: int) -> list[Fraction]:
        """The periodic coefficient of ``n**j`` as a list over one period."""
        return [c[j] if j < len(c) else Fraction(0) for c in self._constituents]

    def _aligned(self, other: "QuasiPolynomial"):
        period = _lcm(self.period, other.period)
        return period, self.unfold(period), other.unfold(period)

    def __add__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        period, a, b = self._aligned(other)
        return QuasiPolynomial([_poly_add(a[r], b[r]) for r in range(period)])

    def __neg__(self) -> "QuasiPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "QuasiPolynomial":
        if isinstance(other, QuasiPolynomial):
            period, a, b = self._aligned(other)
            return QuasiPolynomial([_poly_mul(a[r], b[r]) for r in range(period)])
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, factor) -> "QuasiPolynomial":
        factor = Fraction(factor)
        return QuasiPolynomial([[factor * c for c in cons] for cons in self._constituents])

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        return self._constituents == other._constituents

    def __hash__(self) -> int:
        return hash(self._constituents)

    def __repr__(self) -> str:
        return f"QuasiPolynomial({[[str(c) for c in cons] for cons in self._constituents]})"

    def __str__(self) -> str:
        if self.period == 1:
            return format_polynomial(self._constituents[0])
        parts = [f"n≡{r} (mod {self.period}): {format_polynomial(c)}" for r, c in enumerate(self._constituents)]
        return "\n".join(parts)

    # serialization: rationals are "num/den" strings so nothing goes through floats
    def to_json(self) -> dict:
        return {
            "period": self.period,
            "constituents": [[_frac_str(c) for c in cons] for cons in self._constituents],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuasiPolynomial":
        cons = [[parse_fraction(c) for c in row] for row in data["constituents"]]
        if len(cons) != int(data["period"]):
            raise QuasiPolynomialError("period does not match number of constituents")
        return cls(cons)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` without ever touching floating point."""
    text = str(text).strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise QuasiPolynomialError(f"not an exact fraction: {text!r}") from None


def format_polynomial(coeffs: Sequence[Fraction], var: str = "n") -> str:
    if not coeffs:
        return "0"
    terms = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if j == 0:
            body = str(mag)
        else:
            power = var if j == 1 else f"{var}^{j}"
            body = power if mag == 1 else f"{mag}*{power}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def interpolate(points: Sequence[tuple[int, Fraction]]) -> tuple[Fraction, ...]:
    """Coefficients of the unique polynomial of degree < len(points) through ``points``."""
    # Newton divided differences, then expand to the monomial basis.
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    k = len(xs)
    newton = [table[0]]
    for level in range(1, k):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(k - level)]
        newton.append(table[0])
    coeffs: list[Fraction] = [Fraction(0)]
    for i in range(k - 1, -1, -1):
        # coeffs = coeffs * (x - xs[i]) + newton[i]
        shifted = [Fraction(0)] + coeffs
        for j in range(len(coeffs)):
            shifted[j] -= xs[i] * coeffs[j]
        shifted[0] += newton[i]
        coeffs = shifted
    return _strip(coeffs)


def fit(
    samples: Iterable[tuple[int, int]],
    degree_bound: int,
    period: int,
) -> QuasiPolynomial:
    """Interpolate a quasi-polynomial and check it against every extra sample.

    For each residue class the first ``degree_bound + 1`` samples (in
    increasing ``n``) determine the constituent; the remaining samples are
    held out and must agree, otherwise the ``(degree, period)`` hypothesis
    is wrong and :class:`QuasiPolynomialError` is raised.
    """
    if period < 1 or degree_bound < 0:
        raise QuasiPolynomialError("period must be positive and degree_bound nonnegative")
    by_residue: dict[int, dict[int, Fraction]] = {r: {} for r in range(period)}
    for n, value in samples:
        bucket = by_residue[n % period]
        value = Fraction(value)
        if n in bucket and bucket[n] != value:
            raise QuasiPolynomialError(f"conflicting samples at n={n}")
        bucket[n] = value
    constituents = []
    for r in range(period):
        pts = sorted(by_residue[r].items())
        if len(pts) < degree_bound + 1:
            raise QuasiPolynomialError(
                f"residue {r} mod {period}: need {degree_bound + 1} samples, got {len(pts)}"
            )
        coeffs = interpolate(pts[: degree_bound + 1])
        for n, value in pts[degree_bound + 1 :]:
            if _poly_eval(coeffs, n) != value:
                raise QuasiPolynomialError(
                    f"held-out sample n={n} disagrees (degree {degree_bound}, period {period})"
                )
        constituents.append(coeffs)
    return QuasiPolynomial(constituents)
