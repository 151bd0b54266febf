"""Cost of a payment promise and verification of (exact) implementation.

The cost of a promise is the worst-case total payment over the modified
game's undominated region only; payments attached to dominated profiles are
free. A promise implements a desired region when every undominated strategy
is desired (subset mode) and implements it exactly when, in addition, every
desired strategy stays undominated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .domination import undominated_region
from .model import AnyGame, ModifiedGameView, PaymentPromise, RectRegion
from .values import ZERO, ExtValue


@dataclass(frozen=True)
class VerifyReport:
    mode: str  # "subset" | "exact"
    holds: bool
    undominated_region: RectRegion
    cost: ExtValue
    budget: ExtValue
    violation: tuple[int, int] | None  # (player, strategy), first in index order


def _max_payment_over(view: ModifiedGameView, region: RectRegion) -> ExtValue:
    worst = ZERO
    n = view.n_players
    for profile in itertools.product(*region.sets):
        total: ExtValue = ZERO
        for i in range(n):
            total = total + view.promise_at(i, profile)
            if not total.is_finite:
                break
        if worst < total:
            worst = total
        if not worst.is_finite:
            break
    return worst


def cost(game: AnyGame, promise: PaymentPromise | None) -> ExtValue:
    """Worst-case total payment over the modified game's undominated region."""
    view = ModifiedGameView(game, promise)
    return _max_payment_over(view, undominated_region(view))


def verify(
    game: AnyGame,
    promise: PaymentPromise | None,
    region: RectRegion,
    budget: ExtValue,
    mode: str = "subset",
) -> VerifyReport:
    """Check whether ``promise`` implements ``region`` within ``budget``."""
    if mode not in ("subset", "exact"):
        raise ValueError(f"mode must be 'subset' or 'exact', got {mode!r}")
    region.validate_for(game)
    view = ModifiedGameView(game, promise)
    star = undominated_region(view)

    violation: tuple[int, int] | None = None
    for i in range(game.n_players):
        star_i = set(star.sets[i])
        desired_i = set(region.sets[i])
        for s in range(game.sizes[i]):
            outside = s in star_i and s not in desired_i
            missing = mode == "exact" and s in desired_i and s not in star_i
            if outside or missing:
                violation = (i, s)
                break
        if violation is not None:
            break

    total = _max_payment_over(view, star)
    holds = violation is None and total <= budget
    return VerifyReport(
        mode=mode,
        holds=holds,
        undominated_region=star,
        cost=total,
        budget=budget,
        violation=violation,
    )
