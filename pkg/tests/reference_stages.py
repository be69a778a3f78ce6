"""Hand-checked stage interval tables for the bundled presets.

Each entry maps a stage index to the exact interval list produced by that
many deletion rounds, written as (lo, hi) fraction strings. The tables
were derived by hand from the construction rules and double-checked via
measure bookkeeping (the stage-n total must follow the closed recursion
for the family).
"""

from fractions import Fraction

from cantorkit import IntervalUnion


def table(pairs) -> IntervalUnion:
    return IntervalUnion.from_pairs(
        (Fraction(lo), Fraction(hi)) for lo, hi in pairs)


EXPECTED_STAGES: dict[str, dict[int, list[tuple[str, str]]]] = {
    "cantor": {
        1: [("0", "1/3"), ("2/3", "1")],
        2: [("0", "1/9"), ("2/9", "1/3"), ("2/3", "7/9"), ("8/9", "1")],
        3: [("0", "1/27"), ("2/27", "1/9"), ("2/9", "7/27"), ("8/27", "1/3"),
            ("2/3", "19/27"), ("20/27", "7/9"), ("8/9", "25/27"), ("26/27", "1")],
    },
    "c12": {
        1: [("0", "1/4"), ("3/4", "1")],
        2: [("0", "1/16"), ("3/16", "1/4"), ("3/4", "13/16"), ("15/16", "1")],
        3: [("0", "1/64"), ("3/64", "1/16"), ("3/16", "13/64"), ("15/64", "1/4"),
            ("3/4", "49/64"), ("51/64", "13/16"), ("15/16", "61/64"), ("63/64", "1")],
    },
    "c14": {
        1: [("0", "3/8"), ("5/8", "1")],
        2: [("0", "9/64"), ("15/64", "3/8"), ("5/8", "49/64"), ("55/64", "1")],
        3: [("0", "27/512"), ("45/512", "9/64"), ("15/64", "147/512"),
            ("165/512", "3/8"), ("5/8", "347/512"), ("365/512", "49/64"),
            ("55/64", "467/512"), ("485/512", "1")],
    },
    "c34": {
        1: [("0", "1/8"), ("7/8", "1")],
        2: [("0", "1/64"), ("7/64", "1/8"), ("7/8", "57/64"), ("63/64", "1")],
        3: [("0", "1/512"), ("7/512", "1/64"), ("7/64", "57/512"), ("63/512", "1/8"),
            ("7/8", "449/512"), ("455/512", "57/64"), ("63/64", "505/512"),
            ("511/512", "1")],
    },
    "svc:4": {
        1: [("0", "3/8"), ("5/8", "1")],
        2: [("0", "5/32"), ("7/32", "3/8"), ("5/8", "25/32"), ("27/32", "1")],
        3: [("0", "9/128"), ("11/128", "5/32"), ("7/32", "37/128"), ("39/128", "3/8"),
            ("5/8", "89/128"), ("91/128", "25/32"), ("27/32", "117/128"),
            ("119/128", "1")],
    },
    "ac": {
        1: [("0", "1/2"), ("3/4", "1")],
        2: [("0", "1/4"), ("3/8", "1/2"), ("3/4", "7/8"), ("15/16", "1")],
        3: [("0", "1/8"), ("3/16", "1/4"), ("3/8", "7/16"), ("15/32", "1/2"),
            ("3/4", "13/16"), ("27/32", "7/8"), ("15/16", "31/32"), ("63/64", "1")],
    },
    "ac-reflected": {
        1: [("0", "1/4"), ("1/2", "1")],
    },
    "ac5a": {
        1: [("0", "3/5"), ("4/5", "1")],
    },
    "ac5b": {
        1: [("0", "2/5"), ("4/5", "1")],
    },
    "svc:2": {
        1: [("0", "1/4"), ("3/4", "1")],
        2: [("0", "0"), ("1/4", "1/4"), ("3/4", "3/4"), ("1", "1")],
    },
}
