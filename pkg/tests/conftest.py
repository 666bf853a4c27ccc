"""Shared golden fixtures.

The 5-relay worked example is hardcoded twice, on purpose: once with the
symbol numbering used by the worked delivery table (rows X_1..X_10 below),
once in canonical first-occurrence numbering. Everything else in the suite
is derived; these literals are the anchor.
"""

from __future__ import annotations

import pytest

from cpda.model import PdaArray

_ = None  # star, kept short so the literal rows line up

EX1_COLS = (
    (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5),
    (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5),
)

# symbol ids as printed in the worked example
EX1_ROWS_WORKED = (
    (5, 6, 7, 8, 9, 10, _, _, _, _),
    (2, 3, 4, _, _, _, 8, 9, 10, _),
    (1, _, _, 3, 4, _, 6, 7, _, 10),
    (_, 1, _, 2, _, 4, 5, _, 7, 9),
    (_, _, 1, _, 2, 3, _, 5, 6, 8),
)

# same array after first-occurrence row-major renaming
EX1_ROWS_CANONICAL = (
    (1, 2, 3, 4, 5, 6, _, _, _, _),
    (7, 8, 9, _, _, _, 4, 5, 6, _),
    (10, _, _, 8, 9, _, 2, 3, _, 6),
    (_, 10, _, 7, _, 9, 1, _, 3, 5),
    (_, _, 10, _, 7, 8, _, 1, 2, 4),
)

# delivery table for demands (1..10): symbol -> ((file, packet) terms, relays)
EX1_DELIVERY = {
    1: (((1, 3), (2, 4), (3, 5)), (1, 2)),
    2: (((1, 2), (4, 4), (5, 5)), (1, 3)),
    3: (((2, 2), (4, 3), (6, 5)), (1, 4)),
    4: (((3, 2), (5, 3), (6, 4)), (1, 5)),
    5: (((1, 1), (7, 4), (8, 5)), (2, 3)),
    6: (((2, 1), (7, 3), (9, 5)), (2, 4)),
    7: (((3, 1), (8, 3), (9, 4)), (2, 5)),
    8: (((4, 1), (7, 2), (10, 5)), (3, 4)),
    9: (((5, 1), (8, 2), (10, 4)), (3, 5)),
    10: (((6, 1), (9, 2), (10, 3)), (4, 5)),
}


@pytest.fixture
def worked_ex1() -> PdaArray:
    return PdaArray(5, 3, EX1_COLS, EX1_ROWS_WORKED)


@pytest.fixture
def canonical_ex1() -> PdaArray:
    return PdaArray(5, 3, EX1_COLS, EX1_ROWS_CANONICAL)
