"""Fixture games used across the suite.

EX1 is the worked 3x2 example (one player with strategies s1..s3, one with
t1, t2) together with its two known promises; CE1 is the 2x2 game on which
the all-zero promise is not an exact implementation.
"""

import pytest

from gimpl import Game, PaymentPromise, RectRegion


@pytest.fixture
def ex1() -> Game:
    return Game.make(
        ["p1", "p2"],
        [["s1", "s2", "s3"], ["t1", "t2"]],
        [
            {(0, 0): 1, (0, 1): 1, (1, 0): 2, (1, 1): 0, (2, 0): 0, (2, 1): 1},
            {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1, (2, 0): 0, (2, 1): 0},
        ],
    )


@pytest.fixture
def ex1_region() -> RectRegion:
    # O = {s1, s3} x {t1}
    return RectRegion.make([[0, 2], [0]])


@pytest.fixture
def ex1_promise(ex1) -> PaymentPromise:
    # pay p1 one extra and p2 a tenth extra at (s1, t1); costs 11/10
    return PaymentPromise.make(ex1, [{(0, 0): 1}, {(0, 0): "1/10"}])


@pytest.fixture
def ex1_promise_cheap(ex1) -> PaymentPromise:
    # p2's tenth moves to (s2, t1), which ends up dominated; costs 1
    return PaymentPromise.make(ex1, [{(0, 0): 1}, {(1, 0): "1/10"}])


@pytest.fixture
def ce1() -> Game:
    return Game.make(
        ["p1", "p2"],
        [["s1", "s2"], ["s1", "s2"]],
        [
            {(0, 0): 2, (0, 1): 1, (1, 0): 1, (1, 1): 0},
            {(0, 0): 2, (0, 1): 1, (1, 0): 1, (1, 1): 0},
        ],
    )


@pytest.fixture
def ce1_region() -> RectRegion:
    # O = {s1, s2} x {s1}
    return RectRegion.make([[0, 1], [0]])
