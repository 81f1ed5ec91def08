"""Central moments of the SSAC and demerit-factor distributions.

The ``p``-th central moment of SSAC over all binary sequences of length
``n`` is the sum, over isomorphism classes of contributory partitions, of
orbit size times the number of distinct-valued solutions.  That makes it a
quasi-polynomial in ``n``.  The demerit factor is ``SSAC / n**2 - 1``, so its
central moments are the SSAC ones divided by ``n**(2p)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .classify import bruteforce_con, isom_representatives
from .errors import DemeritError, UndefinedInputError, UsageError
from .latcount import sols_quasipoly
from .partitions import coefficient_matrix
from .qpoly import QuasiPolynomial
from .wreath import IsoClass


class ZeroVarianceError(DemeritError, ZeroDivisionError):
    """Standardized moments are undefined when the variance vanishes."""


def class_sols(cls: IsoClass) -> QuasiPolynomial:
    if cls.sols is not None:
        return cls.sols
    return sols_quasipoly(coefficient_matrix(cls.representative))


def with_sols(classes: Iterable[IsoClass]) -> list[IsoClass]:
    return [c if c.sols is not None else c.with_sols(class_sols(c)) for c in classes]


def moment_from_classes(classes: Iterable[IsoClass]) -> QuasiPolynomial:
    total = QuasiPolynomial.zero()
    for c in classes:
        total = total + class_sols(c).scale(c.orbit_size)
    return total


def ssac_central_moment(
    p: int,
    *,
    classes: Iterable[IsoClass] | None = None,
    allow_long_running: bool = False,
) -> QuasiPolynomial:
    """``p``-th central moment of SSAC as a quasi-polynomial in the length."""
    if p < 1:
        raise UsageError("moment order must be positive")
    if p == 1:
        return QuasiPolynomial.zero()
    if classes is None:
        return _default_moment(p, allow_long_running)
    return moment_from_classes(classes)


@lru_cache(maxsize=None)
def _default_moment(p: int, allow_long_running: bool) -> QuasiPolynomial:
    return moment_from_classes(isom_representatives(p, allow_long_running=allow_long_running))


def ssac_central_moment_bruteforce_partitions(p: int) -> QuasiPolynomial:
    """Same moment, summed over every contributory partition individually.

    Partitions are grouped only when their coefficient matrices agree up to
    column order and row signs, which leaves the solution count unchanged.
    """
    if p < 1:
        raise UsageError("moment order must be positive")
    groups: Counter = Counter()
    for part in bruteforce_con(p):
        m = coefficient_matrix(part)
        cols = sorted(zip(*m))
        rows = tuple(r if next((x for x in r if x), 0) >= 0 else tuple(-x for x in r) for r in zip(*cols))
        groups[rows] += 1
    total = QuasiPolynomial.zero()
    for m, count in groups.items():
        total = total + sols_quasipoly(m).scale(count)
    return total


def _check_length(length: int) -> None:
    if length < 1:
        raise UndefinedInputError("sequence length must be positive")


def adf_mean(length: int) -> Fraction:
    _check_length(length)
    return 1 - Fraction(1, length)


def ssac_mean(length: int) -> Fraction:
    _check_length(length)
    return Fraction(2 * length * length - length)


def adf_central_moment(p: int, length: int, *, moment: QuasiPolynomial | None = None) -> Fraction:
    _check_length(length)
    q = moment if moment is not None else ssac_central_moment(p)
    return q(length) / Fraction(length) ** (2 * p)


def standardized_moment(
    p: int,
    length: int,
    precision: int = 30,
    *,
    moment: QuasiPolynomial | None = None,
    variance: QuasiPolynomial | None = None,
) -> Decimal:
    """``mu_p / mu_2**(p/2)`` to ``precision`` significant digits.

    The ratio is the same for SSAC and for the demerit factor.
    """
    _check_length(length)
    if precision < 1:
        raise UsageError("precision must be positive")
    mu_p = (moment if moment is not None else ssac_central_moment(p))(length)
    mu_2 = (variance if variance is not None else ssac_central_moment(2))(length)
    return standardized_from_values(mu_p, mu_2, p, precision)


def standardized_from_values(mu_p: Fraction, mu_2: Fraction, p: int, precision: int) -> Decimal:
    if mu_2 == 0:
        raise ZeroVarianceError("variance is zero, so standardized moments are undefined")
    with localcontext() as ctx:
        ctx.prec = precision + 20
        if p % 2 == 0:
            value = Decimal(mu_p.numerator) / Decimal(mu_p.denominator)
            value /= (Decimal(mu_2.numerator) / Decimal(mu_2.denominator)) ** (p // 2)
        else:
            # mu_p / mu_2^(p/2) = sign(mu_p) * sqrt(mu_p^2 / mu_2^p), one square root
            ratio = mu_p * mu_p / mu_2**p
            root = (Decimal(ratio.numerator) / Decimal(ratio.denominator)).sqrt()
            value = root if mu_p >= 0 else -root
        ctx.prec = precision
        return +value


def skewness_squared(length: int, *, moment3: QuasiPolynomial | None = None,
                     variance: QuasiPolynomial | None = None) -> Fraction:
    """Exact ``mu_3**2 / mu_2**3``."""
    _check_length(length)
    m3 = (moment3 if moment3 is not None else ssac_central_moment(3))(length)
    m2 = (variance if variance is not None else ssac_central_moment(2))(length)
    if m2 == 0:
        raise ZeroVarianceError("variance is zero")
    return m3 * m3 / m2**3


def positivity_rule(p: int, length: int) -> str:
    """Predicted sign class of the ``p``-th central moment at a length."""
    if p == 1:
        return "zero"
    if p % 2 == 1 and length <= 3:
        return "zero"
    if p % 2 == 0 and length <= 2:
        return "zero"
    return "positive"


def positivity_report(p_max: int, length_max: int) -> dict[tuple[int, int], str]:
    """Sign class (``zero``/``positive``/``negative``) of every evaluated moment."""
    out: dict[tuple[int, int], str] = {}
    for p in range(1, p_max + 1):
        q = ssac_central_moment(p)
        for length in range(1, length_max + 1):
            v = q(length)
            out[(p, length)] = "zero" if v == 0 else ("positive" if v > 0 else "negative")
    return out


@dataclass(frozen=True)
class MomentReport:
    """The ``p``-th central moment with its demerit-factor and standardized forms."""

    p: int
    ssac_moment: QuasiPolynomial
    variance: QuasiPolynomial = field(repr=False)

    @classmethod
    def build(cls, p: int, **kwargs) -> "MomentReport":
        moment = ssac_central_moment(p, **kwargs)
        variance = moment if p == 2 else ssac_central_moment(2)
        return cls(p, moment, variance)

    @property
    def adf_divisor_exponent(self) -> int:
        return 2 * self.p

    def ssac(self, length: int) -> Fraction:
        _check_length(length)
        return self.ssac_moment(length)

    def adf(self, length: int) -> Fraction:
        return adf_central_moment(self.p, length, moment=self.ssac_moment)

    def standardized(self, length: int, precision: int = 30) -> Decimal:
        return standardized_moment(
            self.p, length, precision, moment=self.ssac_moment, variance=self.variance
        )


__all__ = [
    "MomentReport",
    "ZeroVarianceError",
    "adf_central_moment",
    "adf_mean",
    "moment_from_classes",
    "positivity_report",
    "positivity_rule",
    "skewness_squared",
    "ssac_central_moment",
    "ssac_central_moment_bruteforce_partitions",
    "ssac_mean",
    "standardized_from_values",
    "standardized_moment",
    "with_sols",
]
