"""Exact counting of integer solutions of ``M x = 0`` inside a cube.

``weak_count(M, n)`` counts ``x in [0, n-1]^t`` with ``M x = 0``.  The
solutions form the lattice points of the ``(n-1)``-th dilate of the polytope
``{x in [0,1]^t : M x = 0}``, so the count is a quasi-polynomial in ``n``.
Its degree is the polytope dimension and its period divides the least common
denominator of the vertex coordinates.  That quasi-polynomial is found by
exact interpolation and then checked on held-out values.

Counts with pairwise distinct coordinates come from Moebius inversion over
the lattice of set partitions of the columns.

The counting routine itself parametrizes the integer kernel lattice,
``x = K y``, enumerates all but the last coordinate of ``y`` in vectorized
blocks and counts the admissible values of the last coordinate as an
interval length.  For fixed ``M`` this costs ``O(n^(d-1))`` with
``d = dim``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial, floor, ceil, lcm
from typing import Iterator, Sequence

import numpy as np

from .partitions import rref
from .qpoly import QuasiPolynomial, QuasiPolynomialError, fit

Matrix = tuple[tuple[int, ...], ...]

_BLOCK = 1 << 18


def _as_matrix(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    rows = tuple(tuple(int(x) for x in r) for r in m)
    if ncols is not None and rows and len(rows[0]) != ncols:
        raise ValueError("column count mismatch")
    return rows


def _columns(m: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    if m:
        return list(zip(*m))
    return [()] * (ncols or 0)


def set_partitions(n: int) -> Iterator[list[list[int]]]:
    """All set partitions of ``range(n)`` as lists of blocks."""
    if n == 0:
        yield []
        return
    for part in set_partitions(n - 1):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [n - 1]] + part[i + 1 :]
        yield part + [[n - 1]]


def mobius_partition(blocks: Sequence[Sequence[int]]) -> int:
    """Moebius value from the finest partition up to ``blocks``."""
    out = 1
    for b in blocks:
        k = len(b)
        out *= (-1) ** (k - 1) * factorial(k - 1)
    return out


def merge_columns(m: Sequence[Sequence[int]], blocks: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(sum(row[j] for j in b) for b in blocks) for row in m)


def _split_zero_columns(m: Matrix, ncols: int) -> tuple[Matrix, int]:
    """Drop all-zero columns (each contributes a free factor) and zero rows."""
    cols = [c for c in _columns(m, ncols) if any(c)]
    zeros = ncols - len(cols)
    if not cols:
        return (), zeros
    rows = tuple(r for r in zip(*cols) if any(r))
    return rows, zeros


def _ncols(m: Sequence[Sequence[int]], ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if not m:
        raise ValueError("a matrix without rows needs an explicit column count")
    return len(m[0])


# kernel lattice ---------------------------------------------------------------


def kernel_lattice(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Integer matrices ``K`` (t x d) and ``W`` (d x t) with ``W K = I``.

    The columns of ``K`` form a basis of ``{x in Z^t : M x = 0}``; for any
    such ``x`` the coordinates are ``y = W x``.
    """
    t = _ncols(m, ncols)
    a = [list(r) for r in _as_matrix(m)]
    u = [[int(i == j) for j in range(t)] for i in range(t)]
    uinv = [[int(i == j) for j in range(t)] for i in range(t)]

    def col_op(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src  (on A and U); row src += q * row dst on U^-1
        for r in a:
            r[dst] -= q * r[src]
        for r in u:
            r[dst] -= q * r[src]
        uinv[src] = [x + q * y for x, y in zip(uinv[src], uinv[dst])]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]
        uinv[i], uinv[j] = uinv[j], uinv[i]

    pivot = 0
    for row in a:
        if pivot == t:
            break
        while True:
            nz = [j for j in range(pivot, t) if row[j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(row[j]))
            swap(pivot, j0)
            done = True
            for j in range(pivot + 1, t):
                if row[j]:
                    col_op(j, pivot, row[j] // row[pivot])
                    if row[j]:
                        done = False
            if done:
                pivot += 1
                break
    k = [r[pivot:] for r in u]
    w = uinv[pivot:]
    return k, w


def _lll(basis: list[list[int]]) -> list[list[int]]:
    """LLL reduction (delta = 3/4) of row vectors, in exact arithmetic."""
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return b

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / dot(bstar[j], bstar[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bstar, mu = gram_schmidt()
        if dot(bstar[k], bstar[k]) >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * dot(bstar[k - 1], bstar[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu = gram_schmidt()
            k = max(k - 1, 1)
    return b


def _reduced_kernel(m: Matrix, t: int) -> tuple[np.ndarray, list[tuple[Fraction, Fraction]]]:
    """LLL-reduced kernel basis ``K`` (t x d) and, per coordinate, the range of
    ``y`` over the unit polytope (scaled by ``n - 1`` when counting)."""
    k, _ = kernel_lattice(m, t)
    d = len(k[0]) if k else 0
    basis = _lll([[k[i][j] for i in range(t)] for j in range(d)])
    kmat = [[basis[j][i] for j in range(d)] for i in range(t)]
    # left inverse through the normal equations: (K^T K)^-1 K^T
    gram = [[sum(basis[a][i] * basis[b][i] for i in range(t)) for b in range(d)] for a in range(d)]
    aug = rref([gram[a] + [int(a == b) for b in range(d)] for a in range(d)])
    ginv = [row[d:] for row in aug]
    left = [[sum(ginv[a][c] * basis[c][i] for c in range(d)) for i in range(t)] for a in range(d)]
    verts = polytope_vertices(m, t)
    box = []
    for a in range(d):
        vals = [sum(left[a][i] * v[i] for i in range(t)) for v in verts]
        box.append((min(vals), max(vals)))
    return np.array(kmat, dtype=np.int64).reshape(t, d), box


# vertices ---------------------------------------------------------------------


def polytope_vertices(m: Sequence[Sequence[int]], ncols: int | None = None) -> set[tuple[Fraction, ...]]:
    """Vertices of ``{x in [0,1]^t : M x = 0}`` in exact arithmetic."""
    t = _ncols(m, ncols)
    reduced = [list(r) for r in rref(m) if any(r)] if m else []
    r = len(reduced)
    out: set[tuple[Fraction, ...]] = set()
    for basis in combinations(range(t), r):
        sub = [[row[j] for j in basis] for row in reduced]
        if r and any(not any(x) for x in rref(sub)):
            continue
        free = [j for j in range(t) if j not in basis]
        for vals in product((0, 1), repeat=len(free)):
            rhs = [-sum(row[j] * v for j, v in zip(free, vals)) for row in reduced]
            solved = rref([s + [b] for s, b in zip(sub, rhs)]) if r else []
            x: list[Fraction] = [Fraction(0)] * t
            for j, v in zip(free, vals):
                x[j] = Fraction(v)
            for i, j in enumerate(basis):
                x[j] = solved[i][-1]
            if all(0 <= xi <= 1 for xi in x):
                out.add(tuple(x))
    return out


def ehrhart_shape(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[int, int]:
    """``(degree, period bound)`` of the weak count of ``m``."""
    t = _ncols(m, ncols)
    verts = polytope_vertices(m, t)
    if not verts:
        return -1, 1
    period = 1
    for v in verts:
        for x in v:
            period = lcm(period, x.denominator)
    rank = sum(1 for r in rref(m) if any(r)) if m else 0
    return t - rank, period


# counting ---------------------------------------------------------------------


def _count_core(m: Matrix, t: int, n: int, kernel) -> int:
    """Lattice points of ``{x in [0, n-1]^t : M x = 0}`` with every column nonzero."""
    if n <= 0:
        return 0
    top = n - 1
    kmat, box = kernel
    d = kmat.shape[1]
    if d == 0:
        return 1  # only x = 0
    lo = [floor(a * top) for a, _ in box[: d - 1]]
    hi = [ceil(b * top) for _, b in box[: d - 1]]
    last = kmat[:, d - 1]
    outer = kmat[:, : d - 1]
    total = 0
    ranges = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    for ys in _grid_blocks(ranges):
        base = outer @ ys if d > 1 else np.zeros((t, 1), dtype=np.int64)
        low = np.full(base.shape[1], np.iinfo(np.int64).min // 4, dtype=np.int64)
        high = np.full(base.shape[1], np.iinfo(np.int64).max // 4, dtype=np.int64)
        ok = np.ones(base.shape[1], dtype=bool)
        for i in range(t):
            a, c = int(last[i]), base[i]
            if a > 0:
                low = np.maximum(low, -(c // a))  # ceil(-c / a)
                high = np.minimum(high, (top - c) // a)
            elif a < 0:
                low = np.maximum(low, -((top - c) // -a))  # ceil((c - top) / -a)
                high = np.minimum(high, c // -a)  # floor(-c / a)
            else:
                ok &= (c >= 0) & (c <= top)
        total += int(np.where(ok, np.maximum(high - low + 1, 0), 0).sum())
    return total


def _grid_blocks(ranges: list[np.ndarray]) -> Iterator[np.ndarray]:
    """Cartesian product of integer ranges as column blocks of shape (k, N)."""
    if not ranges:
        yield np.zeros((0, 1), dtype=np.int64)
        return
    head, rest = ranges[0], ranges[1:]
    rest_size = int(np.prod([len(r) for r in rest])) if rest else 1
    if rest_size > _BLOCK:
        for h in head:
            for block in _grid_blocks(rest):
                yield np.vstack([np.full((1, block.shape[1]), h, dtype=np.int64), block])
        return
    rest_grid = (
        np.array(np.meshgrid(*rest, indexing="ij")).reshape(len(rest), -1)
        if rest
        else np.zeros((0, 1), dtype=np.int64)
    )
    step = max(1, _BLOCK // rest_size)
    for s in range(0, len(head), step):
        h = head[s : s + step]
        block = np.vstack(
            [np.repeat(h, rest_grid.shape[1])[None, :], np.tile(rest_grid, (1, len(h)))]
        )
        yield block


@lru_cache(maxsize=None)
def _core_kernel(m: Matrix, t: int):
    return _reduced_kernel(m, t)


def weak_count(m: Sequence[Sequence[int]], n: int, ncols: int | None = None) -> int:
    """Number of ``x in [0, n-1]^t`` with ``M x = 0``.

    >>> weak_count([[1, 1, -1, -1]], 4)
    44
    """
    t = _ncols(m, ncols)
    if n <= 0:
        return 0 if t else 1
    core, zeros = _split_zero_columns(_as_matrix(m, t), t)
    if not core:
        return n**zeros
    width = len(core[0])
    return n**zeros * _count_core(core, width, n, _core_kernel(core, width))


def brute_weak_count(m: Sequence[Sequence[int]], n: int, ncols: int | None = None) -> int:
    t = _ncols(m, ncols)
    return sum(
        1
        for x in product(range(n), repeat=t)
        if all(sum(a * b for a, b in zip(row, x)) == 0 for row in m)
    )


def brute_distinct_count(m: Sequence[Sequence[int]], n: int, ncols: int | None = None) -> int:
    t = _ncols(m, ncols)
    return sum(
        1
        for x in permutations(range(n), t)
        if all(sum(a * b for a, b in zip(row, x)) == 0 for row in m)
    )


def distinct_count(m: Sequence[Sequence[int]], n: int, ncols: int | None = None) -> int:
    """Solutions in ``[0, n-1]^t`` whose coordinates are pairwise distinct."""
    t = _ncols(m, ncols)
    if t > n:
        return 0
    mat = _as_matrix(m, t)
    total = 0
    for blocks in set_partitions(t):
        total += mobius_partition(blocks) * weak_count(merge_columns(mat, blocks), n, len(blocks))
    return total


# quasi-polynomials ------------------------------------------------------------


def _canonical_core(m: Matrix, t: int) -> tuple[Matrix, int]:
    core, zeros = _split_zero_columns(m, t)
    if not core:
        return (), zeros
    cols = sorted(zip(*core))
    reduced = [r for r in rref(list(zip(*cols))) if any(r)]
    scaled = []
    for r in reduced:
        den = lcm(*(x.denominator for x in r))
        scaled.append(tuple(int(x * den) for x in r))
    return tuple(scaled), zeros


def held_out_limit(degree: int, period: int) -> int:
    """Largest argument sampled: every residue gets ``degree + 2`` values and
    every ``n <= 3 * period + degree`` is checked."""
    return max(3 * period + degree, (degree + 2) * period)


@lru_cache(maxsize=None)
def _core_quasipoly(core: Matrix) -> QuasiPolynomial:
    t = len(core[0])
    degree, period = ehrhart_shape(core, t)
    if degree < 0:
        return QuasiPolynomial.zero()
    kernel = _core_kernel(core, t)
    limit = held_out_limit(degree, period)
    samples = [(n, _count_core(core, t, n, kernel)) for n in range(0, limit + 1)]
    return fit(samples, degree, period)


def weak_quasipoly(m: Sequence[Sequence[int]], ncols: int | None = None) -> QuasiPolynomial:
    """Quasi-polynomial ``n -> weak_count(m, n)``, valid for all ``n >= 0``."""
    t = _ncols(m, ncols)
    core, zeros = _canonical_core(_as_matrix(m, t), t)
    power = QuasiPolynomial.polynomial([0] * zeros + [1])
    if not core:
        return power
    return power * _core_quasipoly(core)


_SOLS_CACHE: dict[Matrix, QuasiPolynomial] = {}


def sols_quasipoly(m: Sequence[Sequence[int]], ncols: int | None = None) -> QuasiPolynomial:
    """Quasi-polynomial counting solutions with pairwise distinct coordinates."""
    t = _ncols(m, ncols)
    mat = _as_matrix(m, t)
    key = (t,) + mat
    hit = _SOLS_CACHE.get(key)
    if hit is not None:
        return hit
    terms: dict[tuple, int] = {}
    cheap_cache: dict[tuple, tuple] = {}
    for blocks in set_partitions(t):
        merged = merge_columns(mat, blocks)
        cheap = _cheap_key(merged, len(blocks))
        canon = cheap_cache.get(cheap)
        if canon is None:
            canon = _canonical_core(merged, len(blocks))
            cheap_cache[cheap] = canon
        terms[canon] = terms.get(canon, 0) + mobius_partition(blocks)
    total = QuasiPolynomial.zero()
    for (core, zeros), coeff in terms.items():
        if coeff == 0:
            continue
        q = QuasiPolynomial.polynomial([0] * zeros + [1])
        if core:
            q = q * _core_quasipoly(core)
        total = total + q.scale(coeff)
    _SOLS_CACHE[key] = total
    return total


def _cheap_key(m: Matrix, t: int) -> tuple:
    cols = sorted(c for c in _columns(m, t) if any(c))
    rows = set()
    for r in zip(*cols):
        if any(r):
            if next(x for x in r if x) < 0:
                r = tuple(-x for x in r)
            rows.add(r)
    return (len(cols), t - len(cols), tuple(sorted(rows)))


def clear_caches() -> None:
    _SOLS_CACHE.clear()
    _core_quasipoly.cache_clear()
    _core_kernel.cache_clear()


__all__ = [
    "QuasiPolynomialError",
    "brute_distinct_count",
    "brute_weak_count",
    "distinct_count",
    "ehrhart_shape",
    "held_out_limit",
    "kernel_lattice",
    "merge_columns",
    "mobius_partition",
    "polytope_vertices",
    "set_partitions",
    "sols_quasipoly",
    "weak_count",
    "weak_quasipoly",
]
