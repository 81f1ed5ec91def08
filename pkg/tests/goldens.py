"""Published closed forms used as golden values.

Quasi-polynomials are written as ``{residues: numerator coefficients}`` with
a shared denominator; coefficients run from the constant term upward.
"""

from __future__ import annotations

from demerit.qpoly import QuasiPolynomial


def qp(period: int, cases: dict, denominator: int = 1) -> QuasiPolynomial:
    from fractions import Fraction

    return QuasiPolynomial.from_cases(period, cases).scale(Fraction(1, denominator))


VARIANCE = qp(2, {0: [0, 56, -60, 16], 1: [-12, 56, -60, 16]}, 3)

THIRD_MOMENT = qp(
    4,
    {
        0: [0, -2496, 3296, -1296, 160],
        (1, 3): [576, -2736, 3296, -1296, 160],
        2: [-384, -2496, 3296, -1296, 160],
    },
)

# The eight p = 3 classes: representative, orbit size, solution count.
P3_CLASSES = [
    (
        [["000", "001", "110", "200"], ["100", "101", "010", "201"], ["011", "210"], ["111", "211"]],
        384,
        # printed with a cubic leading term in the source; the quadratic is the
        # only reading that is integral (see the decisions ledger)
        qp(3, {0: [0, -3, 1], (1, 2): [2, -3, 1]}, 3),
    ),
    (
        [["000", "001", "100", "101"], ["010", "200"], ["011", "201"], ["110", "210"], ["111", "211"]],
        96,
        qp(2, {0: [0, 8, -6, 1], 1: [-6, 11, -6, 1]}, 3),
    ),
    (
        [["000", "001", "110", "210"], ["100", "101"], ["200", "201"], ["010", "111"], ["011", "211"]],
        192,
        qp(4, {0: [0, -4, 1], (1, 3): [3, -4, 1], 2: [4, -4, 1]}, 4),
    ),
    (
        [["000", "001", "100", "200"], ["010", "110"], ["011", "210"], ["101", "211"], ["111", "201"]],
        768,
        qp(
            6,
            {0: [0, 52, -32, 5], (1, 5): [-28, 55, -32, 5], (2, 4): [-16, 52, -32, 5], 3: [-12, 55, -32, 5]},
            12,
        ),
    ),
    (
        [["000", "001"], ["100", "101"], ["200", "201"], ["110", "211"], ["210", "011"], ["010", "111"]],
        64,
        qp(4, {0: [0, 20, -9, 1], (1, 3): [-15, 23, -9, 1], 2: [-12, 20, -9, 1]}, 4),
    ),
    (
        [["000", "001"], ["100", "101"], ["010", "200"], ["011", "210"], ["110", "201"], ["111", "211"]],
        192,
        qp(
            12,
            {
                0: [0, 17, -8, 1],
                (1, 11, 2, 10, 5, 7): [-10, 17, -8, 1],
                (3, 9, 6): [-6, 17, -8, 1],
                (4, 8): [-4, 17, -8, 1],
            },
            3,
        ),
    ),
    (
        [["000", "110"], ["001", "111"], ["100", "210"], ["101", "211"], ["200", "010"], ["201", "011"]],
        64,
        qp(2, {0: [0, -32, 32, -10, 1], 1: [15, -38, 32, -10, 1]}, 2),
    ),
    (
        [["000", "111"], ["010", "101"], ["100", "211"], ["110", "201"], ["200", "011"], ["210", "001"]],
        256,
        qp(
            6,
            {
                0: [0, -46, 39, -11, 1],
                (1, 5): [20, -49, 39, -11, 1],
                (2, 4): [8, -46, 39, -11, 1],
                3: [12, -49, 39, -11, 1],
            },
            2,
        ),
    ),
]

# 45 * (fourth central moment) = sum_j a_j(l) l^j
A6, A5, A4 = 3840, 501120, -6786480
A3 = {0: 27078080, 1: 27072320}
A2 = {0: -17638464, 1: -18213024}
A1_MOD12 = {
    0: -69561600,
    1: -71342400, 11: -71342400, 5: -71342400, 7: -71342400,
    2: -75982080, 10: -75982080,
    3: -68516160, 9: -68516160,
    4: -72387840, 8: -72387840,
    6: -73155840,
}

_A0_ROWS = [
    ((0,), 0),
    ((1, 49), 68764624),
    ((2, 38, 62, 98), 98195456),
    ((3, 27), 63657936),
    ((4, 76), 48062464),
    ((5,), 58385360),
    ((6, 54, 66, 114), 61323264),
    ((7, 103), 78690256),
    ((8, 32), 49258496),
    ((9, 81), 52626384),
    ((10, 70), 82401280),
    ((11, 59), 74504144),
    ((12, 108), 20791296),
    ((13, 37), 76063696),
    ((14, 26, 74, 86), 92002304),
    ((15,), 43972560),
    ((16, 64), 45850624),
    ((17, 113), 75858896),
    ((18, 42, 78, 102), 67516416),
    ((19, 91), 73603024),
    ((20,), 32890880),
    ((21, 69), 53732304),
    ((22, 58, 82, 118), 100980736),
    ((23, 47), 79591376),
    ((24, 96), 12386304),
    ((25,), 56378320),
    ((28, 52), 54255616),
    ((29, 101), 70771664),
    ((30, 90), 48936960),
    ((31, 79), 72497104),
    ((33, 57), 58819536),
    ((34, 46, 94, 106), 94787584),
    ((35,), 62117840),
    ((36, 84), 14598144),
    ((39, 111), 56358864),
    ((40,), 33464320),
    ((41, 89), 69665744),
    ((43, 67), 79796176),
    ((44, 116), 45277184),
    ((45,), 41346000),
    ((48, 72), 18579456),
    ((50, 110), 79616000),
    ((51, 99), 57464784),
    ((53, 77), 76964816),
    ((55,), 60110800),
    ((56, 104), 43065344),
    ((60,), 2211840),
    ((61, 109), 69870544),
    ((63, 87), 62552016),
    ((65,), 57279440),
    ((68, 92), 51470336),
    ((71, 119), 73398224),
    ((73, 97), 74957776),
    ((75,), 45078480),
    ((80,), 30679040),
    ((83, 107), 80697296),
    ((85,), 57484240),
    ((88, 112), 52043776),
    ((93, 117), 59925456),
    ((95,), 61011920),
    ((100,), 35676160),
    ((105,), 40240080),
    ((115,), 61216720),
]

A0 = {r: value for residues, value in _A0_ROWS for r in residues}
assert sorted(A0) == list(range(120)), "a0 table must cover every residue once"
