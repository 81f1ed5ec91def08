"""The symmetry group acting on triples and partitions.

A group element is described by a permutation ``eps`` of the equations, a
side swap ``sigma[f]`` for every target equation ``f`` and a place swap
``flips[f][s]`` for every target equation and target side.  It sends

    (e, s, v)  ->  (f, sigma[f] ^ s, flips[f][sigma[f] ^ s] ^ v),   f = eps[e].

The group has ``p! * 8**p`` elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .errors import ResourceLimitError
from .partitions import Partition
from .qpoly import QuasiPolynomial

MAX_P = 5


def group_order(p: int) -> int:
    return factorial(p) * 8**p


def _guard(p: int) -> None:
    if p > MAX_P:
        raise ResourceLimitError(f"group scans are limited to p <= {MAX_P}")


@dataclass(frozen=True)
class GroupElement:
    eps: tuple[int, ...]
    sigma: tuple[int, ...]
    flips: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        p = len(self.eps)
        if sorted(self.eps) != list(range(p)) or len(self.sigma) != p or len(self.flips) != p:
            raise ValueError("malformed group element")

    @property
    def p(self) -> int:
        return len(self.eps)

    @classmethod
    def identity(cls, p: int) -> "GroupElement":
        return cls(tuple(range(p)), (0,) * p, ((0, 0),) * p)

    @classmethod
    def from_perm(cls, perm: Sequence[int]) -> "GroupElement":
        """Recover the element from its action on flat triple indices."""
        p = len(perm) // 4
        eps = tuple(perm[4 * e] // 4 for e in range(p))
        sigma = [0] * p
        flips = [[0, 0] for _ in range(p)]
        for e, f in enumerate(eps):
            sigma[f] = (perm[4 * e] // 2) % 2
            for s in range(2):
                flips[f][sigma[f] ^ s] = perm[4 * e + 2 * s] % 2
        g = cls(eps, tuple(sigma), tuple(tuple(x) for x in flips))
        if g.perm() != tuple(perm):
            raise ValueError("permutation is not in the group")
        return g

    def perm(self) -> tuple[int, ...]:
        out = []
        for e in range(self.p):
            f = self.eps[e]
            for s in range(2):
                s2 = self.sigma[f] ^ s
                for v in range(2):
                    out.append(4 * f + 2 * s2 + (self.flips[f][s2] ^ v))
        return tuple(out)

    def __call__(self, x: int) -> int:
        return self.perm()[x]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        """``(g * h)(x) == g(h(x))``."""
        a, b = self.perm(), other.perm()
        return GroupElement.from_perm([a[b[x]] for x in range(len(b))])

    def inverse(self) -> "GroupElement":
        a = self.perm()
        inv = [0] * len(a)
        for x, y in enumerate(a):
            inv[y] = x
        return GroupElement.from_perm(inv)


def act_triple(g: GroupElement, triple: tuple[int, int, int]) -> tuple[int, int, int]:
    e, s, v = triple
    f = g.eps[e]
    s2 = g.sigma[f] ^ s
    return (f, s2, g.flips[f][s2] ^ v)


def act_partition(g: GroupElement, part: Partition) -> Partition:
    perm = g.perm()
    return Partition(part.p, tuple(tuple(perm[x] for x in c) for c in part.classes))


def elements(p: int) -> Iterator[GroupElement]:
    for eps in permutations(range(p)):
        for sigma in product((0, 1), repeat=p):
            for fl in product(((0, 0), (0, 1), (1, 0), (1, 1)), repeat=p):
                yield GroupElement(eps, sigma, fl)


@lru_cache(maxsize=None)
def _local_images(p: int) -> np.ndarray:
    """For equation order fixed, images of the 4 local triples under all 8**p local moves.

    Shape ``(8**p, p, 4)``: entry ``[k, f, 2s+v]`` is ``2*s' + v'`` inside
    target equation ``f``.
    """
    out = np.empty((8**p, p, 4), dtype=np.int8)
    for k, moves in enumerate(product(range(8), repeat=p)):
        for f, m in enumerate(moves):
            sig, f0, f1 = m >> 2, (m >> 1) & 1, m & 1
            fl = (f0, f1)
            for s in range(2):
                s2 = sig ^ s
                for v in range(2):
                    out[k, f, 2 * s + v] = 2 * s2 + (fl[s2] ^ v)
    return out


def perm_blocks(p: int) -> Iterator[np.ndarray]:
    """All group elements as permutation rows, one block per equation permutation."""
    _guard(p)
    local = _local_images(p).astype(np.int64)
    for eps in permutations(range(p)):
        block = np.empty((local.shape[0], 4 * p), dtype=np.int64)
        for e, f in enumerate(eps):
            block[:, 4 * e : 4 * e + 4] = 4 * f + local[:, f, :]
        yield block


def _encode_images(labels: np.ndarray, perms: np.ndarray, nclasses: int) -> np.ndarray:
    """Encode every image partition as a row comparable lexicographically.

    The row lists each class's sorted triples followed by ``-1``, with classes
    ordered by their least triple.  Lexicographic order on these rows is the
    order "sorted class lists compared by sorted triple lists".
    """
    n, size = perms.shape
    rows = np.arange(n)[:, None]
    image = np.empty_like(perms)
    image[rows, perms] = labels[None, :]
    first = np.full((n, nclasses), size, dtype=np.int64)
    for x in range(size - 1, -1, -1):
        first[np.arange(n), image[:, x]] = x
    rank = np.argsort(np.argsort(first, axis=1), axis=1)
    relabeled = np.take_along_axis(rank, image, axis=1)
    keys = np.sort(relabeled * size + np.arange(size)[None, :], axis=1)
    lab, pos = keys // size, keys % size
    out = np.full((n, size + nclasses), -1, dtype=np.int8)
    out[rows, np.arange(size)[None, :] + lab] = pos
    return out


def _decode(row: np.ndarray, p: int) -> Partition:
    classes, cur = [], []
    for x in row.tolist():
        if x < 0:
            classes.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    return Partition(p, tuple(classes))


def _lexmin(a: np.ndarray) -> np.ndarray:
    idx = np.lexsort(a.T[::-1])
    return a[idx[0]]


def canonical_form(part: Partition) -> Partition:
    """Least member of the orbit of ``part`` in the sorted-class-list order."""
    _guard(part.p)
    if part.p == 0:
        return part
    labels = np.asarray(part.labels(), dtype=np.int64)
    best = None
    for block in perm_blocks(part.p):
        cand = _lexmin(_encode_images(labels, block, len(part)))
        if best is None or tuple(cand) < tuple(best):
            best = cand
    return _decode(best, part.p)


def orbit(part: Partition) -> set[Partition]:
    """The explicit orbit (materialized; intended for small p)."""
    _guard(part.p)
    labels = np.asarray(part.labels(), dtype=np.int64)
    seen: set[bytes] = set()
    rows = []
    for block in perm_blocks(part.p):
        enc = np.unique(_encode_images(labels, block, len(part)), axis=0)
        for r in enc:
            key = r.tobytes()
            if key not in seen:
                seen.add(key)
                rows.append(r)
    return {_decode(r, part.p) for r in rows}


def stabilizer_order(part: Partition) -> int:
    """Number of group elements fixing ``part``, by backtracking over equations."""
    p = part.p
    _guard(p)
    labels = part.labels()
    local = _local_images(1)[:, 0, :].tolist()  # 8 moves of a single equation
    forward: dict[int, int] = {}
    backward: dict[int, int] = {}
    used = [False] * p

    def extend(e: int) -> int:
        if e == p:
            return 1
        total = 0
        for f in range(p):
            if used[f]:
                continue
            used[f] = True
            for move in local:
                added = []
                ok = True
                for i in range(4):
                    a = labels[4 * e + i]
                    b = labels[4 * f + move[i]]
                    fa, bb = forward.get(a), backward.get(b)
                    if fa is None and bb is None:
                        forward[a] = b
                        backward[b] = a
                        added.append((a, b))
                    elif fa != b or bb != a:
                        ok = False
                        break
                if ok:
                    total += extend(e + 1)
                for a, b in added:
                    del forward[a]
                    del backward[b]
            used[f] = False
        return total

    return extend(0)


def orbit_size(part: Partition) -> int:
    return group_order(part.p) // stabilizer_order(part)


@dataclass(frozen=True)
class IsoClass:
    """An isomorphism class of partitions: a representative and its orbit size."""

    representative: Partition
    orbit_size: int
    sols: QuasiPolynomial | None = None

    def with_sols(self, sols: QuasiPolynomial) -> "IsoClass":
        return IsoClass(self.representative, self.orbit_size, sols)
