"""Binary sequences, their autocorrelations, and exhaustive moment oracles.

Everything here is exact; the exhaustive oracle is the ground truth that the
class-based moment formulas are tested against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ResourceLimitError, UndefinedInputError, UsageError
from .qpoly import QuasiPolynomial

EXHAUSTIVE_MAX_LENGTH = 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class BinarySequence:
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if any(x not in (1, -1) for x in self.entries):
            raise UsageError("binary sequence entries must be +1 or -1")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def length(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MomentSample:
    p: int
    length: int
    value: Fraction


def _entries(f) -> tuple[int, ...]:
    return f.entries if isinstance(f, BinarySequence) else BinarySequence(tuple(f)).entries


def autocorrelation(f: BinarySequence | Sequence[int], s: int) -> int:
    """Aperiodic autocorrelation at shift ``s``; zero once ``|s| >= len(f)``.

    >>> autocorrelation((1, 1, 1, -1), 1)
    1
    """
    x = _entries(f)
    s = abs(s)
    return sum(x[j + s] * x[j] for j in range(len(x) - s)) if s < len(x) else 0


def ssac(f: BinarySequence | Sequence[int]) -> int:
    """Sum of squared autocorrelations over all shifts.

    >>> ssac((1, 1, 1, -1))
    20
    """
    x = _entries(f)
    n = len(x)
    return n * n + 2 * sum(autocorrelation(x, s) ** 2 for s in range(1, n))


def adf(f: BinarySequence | Sequence[int]) -> Fraction:
    """Demerit factor ``-1 + ssac(f)/len(f)**2`` as an exact rational."""
    x = _entries(f)
    if not x:
        raise UndefinedInputError("the demerit factor is undefined for the empty sequence")
    return Fraction(ssac(x), len(x) ** 2) - 1


def _gray_block(start: int, stop: int, length: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    gray = idx ^ (idx >> 1)
    bits = (gray[:, None] >> np.arange(length, dtype=np.int64)) & 1
    return (1 - 2 * bits).astype(np.int64)


def ssac_distribution(length: int) -> Counter:
    """Multiset of SSAC values over all ``2**length`` sequences.

    Sequences are visited in binary-reflected Gray-code order, but only the
    value histogram is kept, so the result does not depend on traversal order.
    """
    if length < 0:
        raise UsageError("length must be nonnegative")
    if length > EXHAUSTIVE_MAX_LENGTH:
        raise ResourceLimitError(
            f"exhaustive enumeration limited to length <= {EXHAUSTIVE_MAX_LENGTH}"
        )
    if length == 0:
        return Counter({0: 1})
    hist: Counter = Counter()
    total = 1 << length
    for start in range(0, total, _CHUNK):
        block = _gray_block(start, min(total, start + _CHUNK), length)
        acc = np.full(block.shape[0], length * length, dtype=np.int64)
        for s in range(1, length):
            c = np.einsum("ij,ij->i", block[:, s:], block[:, : length - s])
            acc += 2 * c * c
        values, counts = np.unique(acc, return_counts=True)
        hist.update(dict(zip(values.tolist(), counts.tolist())))
    return hist


def _central_moment(hist: Counter, p: int) -> Fraction:
    total = sum(hist.values())
    s1 = sum(v * c for v, c in hist.items())
    # sum (N x - S1)^p / N^(p+1) keeps everything integral until the end
    num = sum(c * (total * v - s1) ** p for v, c in hist.items())
    return Fraction(num, total ** (p + 1))


def exhaustive_mean(length: int, statistic: str = "ADF") -> Fraction:
    statistic = _statistic(statistic)
    if length < 1:
        raise UndefinedInputError("length must be positive")
    hist = ssac_distribution(length)
    mean = Fraction(sum(v * c for v, c in hist.items()), sum(hist.values()))
    return mean if statistic == "SSAC" else mean / length**2 - 1


def exhaustive_central_moment(p: int, length: int, statistic: str = "ADF") -> Fraction:
    """Exact ``p``-th central moment of SSAC or ADF over all sequences of a length."""
    statistic = _statistic(statistic)
    if p < 1:
        raise UsageError("moment order must be positive")
    if length < 1:
        raise UndefinedInputError("length must be positive")
    mu = _central_moment(ssac_distribution(length), p)
    return mu if statistic == "SSAC" else mu / Fraction(length) ** (2 * p)


def _statistic(name: str) -> str:
    key = str(name).upper()
    if key not in ("SSAC", "ADF"):
        raise UsageError(f"unknown statistic {name!r}; expected SSAC or ADF")
    return key


def monomial_average(length: int, indices: Iterable[int]) -> Fraction:
    """Average of the product ``f[i0] f[i1] ...`` over every sequence of a length."""
    idx = list(indices)
    if any(not 0 <= i < length for i in idx):
        raise UsageError("indices must lie in [0, length)")
    total = 0
    count = 1 << length
    for start in range(0, count, _CHUNK):
        block = _gray_block(start, min(count, start + _CHUNK), length)
        total += int(np.prod(block[:, idx], axis=1).sum()) if idx else block.shape[0]
    return Fraction(total, count)


def fixture_ap_count(length: int, k: int) -> int:
    """Number of ``(k+1)``-term arithmetic progressions inside ``[0, length)``."""
    if k < 1:
        raise UsageError("k must be positive")
    r = length % k
    value = Fraction((length - r) * (length + r - k), 2 * k)
    return int(value)


def _qp(period: int, cases: dict, denominator: int = 1) -> QuasiPolynomial:
    return QuasiPolynomial.from_cases(period, cases).scale(Fraction(1, denominator))


FIXTURES: dict[str, QuasiPolynomial] = {
    # A + B = 2C with A, B, C distinct, i.e. floor((n-1)^2 / 2)
    "persephone": _qp(2, {0: [0, -2, 1], 1: [1, -2, 1]}, 2),
    # B - A = C - B = E - D, A < B < C, D < E, all five distinct
    "light": _qp(
        6,
        {0: [0, 52, -32, 5], (1, 5): [-28, 55, -32, 5], (2, 4): [-16, 52, -32, 5], 3: [-12, 55, -32, 5]},
        24,
    ),
    # A + B = C + D over [0, n)^4
    "wowzers_i": _qp(1, {0: [0, 1, 0, 2]}, 3),
    # ... with A, B, C, D distinct
    "wowzers_ii": _qp(2, {0: [0, 10, -9, 2], 1: [-3, 10, -9, 2]}, 3),
    # ... with A and B of equal parity
    "wowzers_iii": _qp(2, {0: [0, -1, 0, 1], 1: [0, 2, 0, 1]}, 3),
    # ... distinct and A, B of equal parity
    "wowzers_iv": _qp(2, {0: [0, 8, -6, 1], 1: [-6, 11, -6, 1]}, 3),
    "solomon_c1": _qp(2, {0: [0, -2, 1], 1: [1, -2, 1]}, 2),
    "solomon_c2": _qp(2, {0: [0, 10, -9, 2], 1: [-3, 10, -9, 2]}, 3),
}


def fixture_quasipolynomial(name: str) -> QuasiPolynomial:
    try:
        return FIXTURES[name]
    except KeyError:
        raise UsageError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


def fixture_counts(name: str, length: int) -> int:
    """Evaluate one of the named closed-form counting fixtures."""
    value = fixture_quasipolynomial(name)(length)
    if value.denominator != 1:
        raise AssertionError(f"fixture {name} is not integral at {length}")
    return int(value)
