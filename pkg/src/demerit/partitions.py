"""Partitions of the triple set ``[p] x [2] x [2]`` and their matrix encodings.

A triple ``(e, s, v)`` names equation ``e``, side ``s`` and place ``v``.  It
is stored as the flat index ``4*e + 2*s + v``, so sorting flat indices is the
same as sorting triples lexicographically.  Partitions keep their classes in
canonical order (each class sorted, classes sorted by their least element),
which makes structural equality and hashing meaningful.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import EncodingError, PreconditionError, UsageError

Triple = tuple[int, int, int]


def flat(e: int, s: int, v: int) -> int:
    return 4 * e + 2 * s + v


def unflat(x: int) -> Triple:
    return (x // 4, (x // 2) % 2, x % 2)


def parse_triple(text: str) -> int:
    """``"110"`` -> flat index of ``(1, 1, 0)``; only single-digit equations."""
    if len(text) != 3 or not text.isdigit() or text[1] not in "01" or text[2] not in "01":
        raise UsageError(f"bad triple literal {text!r}")
    return flat(int(text[0]), int(text[1]), int(text[2]))


def _canonical(classes: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    cls = [tuple(sorted(c)) for c in classes]
    if any(not c for c in cls):
        raise UsageError("partition classes must be nonempty")
    return tuple(sorted(cls))


@dataclass(frozen=True)
class Partition:
    p: int
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        classes = _canonical(self.classes)
        object.__setattr__(self, "classes", classes)

    @classmethod
    def of(cls, p: int, classes: Iterable[Iterable[int]], *, ground: Iterable[int] | None = None) -> "Partition":
        """Build and validate against the ground set (default ``range(4p)``)."""
        part = cls(p, tuple(tuple(c) for c in classes))
        seen = [x for c in part.classes for x in c]
        expected = sorted(range(4 * p) if ground is None else ground)
        if sorted(seen) != expected:
            raise UsageError("classes do not cover the ground set exactly once")
        return part

    @classmethod
    def parse(cls, p: int, text: Sequence[Sequence[str]]) -> "Partition":
        return cls.of(p, [[parse_triple(t) for t in c] for c in text])

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def labels(self) -> tuple[int, ...]:
        """Class number of each triple in the partition's ground set."""
        out = {}
        for i, c in enumerate(self.classes):
            for x in c:
                out[x] = i
        return tuple(out[x] for x in sorted(out))

    def type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.classes), reverse=True))

    def to_strings(self) -> list[list[str]]:
        return [["".join(map(str, unflat(x))) for x in c] for c in self.classes]

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(c) + "}" for c in self.to_strings()) + "}"


def partition_from_labels(p: int, labels: Sequence[int]) -> Partition:
    groups: dict[int, list[int]] = {}
    for x, lab in enumerate(labels):
        groups.setdefault(lab, []).append(x)
    return Partition(p, tuple(tuple(g) for g in groups.values()))


def induced_partition(values: Mapping[int, int] | Sequence[int], p: int | None = None) -> Partition:
    """Fibers of an assignment given in flat-index order (or as a mapping)."""
    items = values.items() if isinstance(values, Mapping) else enumerate(values)
    fibers: dict[int, list[int]] = {}
    for x, val in items:
        fibers.setdefault(val, []).append(x)
    if p is None:
        p = (max((x for f in fibers.values() for x in f), default=-1) + 4) // 4
    return Partition(p, tuple(tuple(f) for f in fibers.values()))


def restrict(part: Partition, equations: Iterable[int]) -> Partition:
    keep = set(equations)
    if any(not 0 <= e < part.p for e in keep):
        raise UsageError("restriction set must lie inside [p]")
    classes = []
    for c in part.classes:
        sub = tuple(x for x in c if x // 4 in keep)
        if sub:
            classes.append(sub)
    return Partition(part.p, tuple(classes))


def is_even(part: Partition) -> bool:
    return all(len(c) % 2 == 0 for c in part.classes)


def is_gelo(part: Partition) -> bool:
    """Every class even, yet no single-equation restriction is even."""
    if not is_even(part):
        return False
    return all(not is_even(restrict(part, [e])) for e in range(part.p))


class Symbol(enum.Enum):
    """Entries of a display matrix.  ``R`` marks place 0 and ``B`` place 1."""

    ZERO = "0"
    ONE_R = "1r"
    ONE_B = "1b"
    TWO = "2"
    NEG_ONE_R = "-1r"
    NEG_ONE_B = "-1b"
    NEG_TWO = "-2"

    @property
    def mono(self) -> int:
        return _MONO[self]

    @property
    def places(self) -> tuple[tuple[int, int], ...]:
        """The (side, place) pairs this symbol stands for."""
        return _PLACES[self]

    def __str__(self) -> str:
        return self.value


_PLACES: dict[Symbol, tuple[tuple[int, int], ...]] = {
    Symbol.ZERO: (),
    Symbol.ONE_R: ((0, 0),),
    Symbol.ONE_B: ((0, 1),),
    Symbol.TWO: ((0, 0), (0, 1)),
    Symbol.NEG_ONE_R: ((1, 0),),
    Symbol.NEG_ONE_B: ((1, 1),),
    Symbol.NEG_TWO: ((1, 0), (1, 1)),
}
_BY_PLACES = {v: k for k, v in _PLACES.items()}
_MONO = {sym: sum(1 - 2 * s for s, _ in pl) for sym, pl in _PLACES.items()}

DisplayMatrix = tuple[tuple[Symbol, ...], ...]


def display_matrix(part: Partition) -> DisplayMatrix:
    """Rows are equations, columns are classes (in canonical class order)."""
    cols = []
    for c in part.classes:
        col = []
        for e in range(part.p):
            here = tuple(sorted((x // 2 % 2, x % 2) for x in c if x // 4 == e))
            sym = _BY_PLACES.get(here)
            if sym is None:
                raise EncodingError(f"class {c} is split in equation {e}")
            col.append(sym)
        cols.append(col)
    return tuple(tuple(cols[j][e] for j in range(len(cols))) for e in range(part.p))


def partition_of_display(matrix: Sequence[Sequence[Symbol]]) -> Partition:
    p = len(matrix)
    t = len(matrix[0]) if p else 0
    classes = []
    for j in range(t):
        classes.append(tuple(flat(e, s, v) for e in range(p) for s, v in Symbol(matrix[e][j]).places))
    return Partition.of(p, classes)


def parse_display(rows: Sequence[Sequence[str]]) -> DisplayMatrix:
    return tuple(tuple(Symbol(x) for x in row) for row in rows)


def monochrome(display: Sequence[Sequence[Symbol]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sym.mono for sym in row) for row in display)


def absolute(matrix: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(abs(x) for x in row) for row in matrix)


def coefficient_matrix(part: Partition) -> tuple[tuple[int, ...], ...]:
    """Signed incidence matrix: entry (e, class) is the sum of (-1)^s over the class.

    Agrees with ``monochrome(display_matrix(part))`` when no class is split,
    and is defined for every partition.
    """
    rows = [[0] * len(part.classes) for _ in range(part.p)]
    for j, c in enumerate(part.classes):
        for x in c:
            e, s, _ = unflat(x)
            rows[e][j] += 1 - 2 * s
    return tuple(tuple(r) for r in rows)


def rref(matrix: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form over the rationals (same shape as the input)."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return ()
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        pr = next((i for i in range(pivot_row, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        lead = rows[pivot_row][col]
        rows[pivot_row] = [x / lead for x in rows[pivot_row]]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return tuple(tuple(r) for r in rows)


def rank(matrix: Sequence[Sequence]) -> int:
    return sum(1 for r in rref(matrix) if any(r))


def _weight(row: Sequence[Fraction]) -> int:
    return sum(1 for x in row if x != 0)


def is_satisfiable(matrix: Sequence[Sequence]) -> bool:
    """Whether ``M x = 0`` has a solution with pairwise distinct coordinates.

    Requires zero row sums.  The test is exact: in the reduced row echelon
    form no row may have exactly two nonzero entries and no two rows may
    differ in exactly two places.
    """
    if any(sum(Fraction(x) for x in row) != 0 for row in matrix):
        raise PreconditionError("every row of the matrix must sum to zero")
    reduced = [r for r in rref(matrix) if any(r)]
    if any(_weight(r) == 2 for r in reduced):
        return False
    for a, b in combinations(reduced, 2):
        if sum(1 for x, y in zip(a, b) if x != y) == 2:
            return False
    return True


def is_partition_satisfiable(part: Partition) -> bool:
    return is_satisfiable(coefficient_matrix(part))


def is_contributory(part: Partition) -> bool:
    return is_gelo(part) and is_partition_satisfiable(part)


def format_display(display: Sequence[Sequence[Symbol]]) -> str:
    width = max((len(str(s)) for row in display for s in row), default=1)
    return "\n".join(" ".join(str(s).rjust(width) for s in row) for row in display)
