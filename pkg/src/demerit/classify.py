"""Enumerate isomorphism classes of contributory partitions.

The search works on matrices rather than partitions.  First come absolute
matrices up to row and column permutations, then their sign patterns up to
row/column permutations and row negation.  The satisfiable patterns are then
coloured into display matrices.  A direct scan over all even partitions
serves as an independent oracle for small ``p``.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from .errors import ResourceLimitError
from .partitions import (
    Partition,
    Symbol,
    is_gelo,
    is_partition_satisfiable,
    is_satisfiable,
    partition_of_display,
)
from .wreath import IsoClass, orbit_size

Matrix = tuple[tuple[int, ...], ...]

MAX_P = 5
LONG_RUNNING_P = 5
BRUTEFORCE_MAX_P = 3


def _guard(p: int, allow_long_running: bool) -> None:
    if p > MAX_P:
        raise ResourceLimitError(f"classification is limited to p <= {MAX_P}")
    if p >= LONG_RUNNING_P and not allow_long_running:
        raise ResourceLimitError(
            f"p = {p} takes hours; pass allow_long_running=True to run it"
        )


def _transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def _sorted_columns(rows: Sequence[Sequence[int]]) -> Matrix:
    return _transpose(sorted(_transpose(rows)))


def canonical_absolute(m: Sequence[Sequence[int]]) -> Matrix:
    """Least form of ``m`` under row and column permutations."""
    return min(_sorted_columns([m[i] for i in order]) for order in permutations(range(len(m))))


def canonical_monochrome(m: Sequence[Sequence[int]]) -> Matrix:
    """Least form of ``m`` under row/column permutations and row negations."""
    best = None
    rows = [tuple(r) for r in m]
    for signs in product((1, -1), repeat=len(rows)):
        signed = [tuple(c * x for x in r) for c, r in zip(signs, rows)]
        cand = canonical_absolute(signed)
        if best is None or cand < best:
            best = cand
    return best


def _row_patterns(t: int) -> list[tuple[int, ...]]:
    out = []
    for two in range(t):
        for a, b in combinations([j for j in range(t) if j != two], 2):
            row = [0] * t
            row[two], row[a], row[b] = 2, 1, 1
            out.append(tuple(row))
    for cols in combinations(range(t), 4):
        out.append(tuple(1 if j in cols else 0 for j in range(t)))
    return out


def _column_count_range(p: int) -> range:
    return range(4 if p % 2 else 3, 2 * p + 1)


def _feasible(rows: Sequence[Sequence[int]], remaining: int, t: int) -> bool:
    sums = [sum(col) for col in zip(*rows)]
    zero = sum(1 for s in sums if s == 0)
    odd = sum(1 for s in sums if s % 2)
    # every extra row touches at most four columns
    return zero <= 4 * remaining and odd <= 4 * remaining


def enumerate_absolute(p: int, *, allow_long_running: bool = False) -> list[Matrix]:
    """One absolute matrix per class under row and column permutations."""
    _guard(p, allow_long_running)
    if p < 2:
        return []
    found: list[Matrix] = []
    for t in _column_count_range(p):
        patterns = _row_patterns(t)
        level = {canonical_absolute([r]) for r in patterns}
        for k in range(2, p + 1):
            nxt = set()
            for partial in level:
                for r in patterns:
                    cand = list(partial) + [r]
                    if _feasible(cand, p - k, t):
                        nxt.add(canonical_absolute(cand))
            level = nxt
        for m in sorted(level):
            sums = [sum(col) for col in zip(*m)]
            if all(s > 0 and s % 2 == 0 for s in sums):
                found.append(m)
    return found


def _row_signings(row: Sequence[int]) -> list[tuple[int, ...]]:
    nz = [j for j, x in enumerate(row) if x]
    if 2 in row:
        return [tuple(x if x == 2 else -x for x in row)]
    out = []
    first = nz[0]
    # fix the sign of the first nonzero entry to quotient by row negation
    for partner in nz[1:]:
        out.append(tuple((1 if j in (first, partner) else -1) if row[j] else 0 for j in range(len(row))))
    return out


def enumerate_signings(absolute_matrix: Sequence[Sequence[int]]) -> list[Matrix]:
    """Sign patterns of an absolute matrix, one per monochrome equivalence class."""
    choices = [_row_signings(r) for r in absolute_matrix]
    seen = set()
    out = []
    for rows in product(*choices):
        key = canonical_monochrome(rows)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return sorted(out)


def color(monochrome_matrix: Sequence[Sequence[int]]) -> tuple[tuple[Symbol, ...], ...]:
    """Colour a monochrome matrix: within each row the first 1 (or -1) is red."""
    out = []
    for row in monochrome_matrix:
        seen_pos = seen_neg = False
        syms = []
        for x in row:
            if x == 0:
                syms.append(Symbol.ZERO)
            elif x == 2:
                syms.append(Symbol.TWO)
            elif x == -2:
                syms.append(Symbol.NEG_TWO)
            elif x == 1:
                syms.append(Symbol.ONE_B if seen_pos else Symbol.ONE_R)
                seen_pos = True
            elif x == -1:
                syms.append(Symbol.NEG_ONE_B if seen_neg else Symbol.NEG_ONE_R)
                seen_neg = True
            else:
                raise ValueError(f"entry {x} cannot occur in a monochrome matrix")
        out.append(tuple(syms))
    return tuple(out)


def satisfiable_signings(p: int, *, allow_long_running: bool = False) -> list[Matrix]:
    out = []
    for a in enumerate_absolute(p, allow_long_running=allow_long_running):
        out.extend(m for m in enumerate_signings(a) if is_satisfiable(m))
    return out


def isom_representatives(p: int, *, allow_long_running: bool = False) -> list[IsoClass]:
    """One :class:`IsoClass` per isomorphism class of contributory partitions.

    Ordered by column count, then absolute matrix, then monochrome matrix.
    """
    classes = []
    for m in satisfiable_signings(p, allow_long_running=allow_long_running):
        rep = partition_of_display(color(m))
        classes.append(IsoClass(rep, orbit_size(rep)))
    return classes


def _even_partitions(elements: list[int]) -> Iterator[list[tuple[int, ...]]]:
    if not elements:
        yield []
        return
    head, rest = elements[0], elements[1:]
    for size in range(1, len(rest) + 1, 2):
        for mates in combinations(rest, size):
            left = [x for x in rest if x not in mates]
            for tail in _even_partitions(left):
                yield [(head,) + mates] + tail


def even_partitions(p: int) -> Iterator[Partition]:
    """Every partition of the 4p triples whose classes all have even size."""
    for classes in _even_partitions(list(range(4 * p))):
        yield Partition(p, tuple(classes))


def bruteforce_con(p: int) -> set[Partition]:
    """All contributory partitions, found by scanning every even partition."""
    if p > BRUTEFORCE_MAX_P:
        raise ResourceLimitError(f"brute-force scan is limited to p <= {BRUTEFORCE_MAX_P}")
    return {
        part
        for part in even_partitions(p)
        if is_gelo(part) and is_partition_satisfiable(part)
    }
