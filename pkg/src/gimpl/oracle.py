"""Definition-level cross-checks for the solver.

Everything here recomputes results from first principles: promises are
rebuilt from the raw payment formula, dominations are re-verified through
the domination module, and worst-case payments are re-summed directly over
the desired region. None of the solver's code paths are reused, so an
agreement between the two is meaningful evidence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .checking import verify
from .domination import dominates
from .model import (
    Game,
    GraphicalGame,
    ModifiedGameView,
    PaymentPromise,
    Profile,
    RectRegion,
)
from .solver import DominatorMapping
from .values import INF, ZERO, ExtValue

MAX_MAPPINGS = 10**6


@dataclass(frozen=True)
class OracleResult:
    """The full landscape of worst-case payments over the assignment space."""

    delta: ExtValue
    all_optimal_mappings: tuple[DominatorMapping, ...]
    per_mapping_costs: dict[DominatorMapping, ExtValue]


def _require_normal(game):
    if isinstance(game, GraphicalGame):
        raise ValueError("the oracle works on normal-form games; expand the graphical game first")
    return game


def _embed(opp: tuple[int, ...], player: int, strategy: int) -> Profile:
    return opp[:player] + (strategy,) + opp[player:]


def _promise_for(game: Game, region: RectRegion, mapping: DominatorMapping) -> PaymentPromise:
    desired_sets = [set(members) for members in region.sets]
    tables: list[dict[Profile, ExtValue]] = []
    for i in range(game.n_players):
        table: dict[Profile, ExtValue] = {}
        opp_players = [j for j in range(game.n_players) if j != i]
        for o_i in region.sets[i]:
            preimage = mapping.preimage(i, o_i)
            if preimage:
                for opp in itertools.product(*(region.sets[j] for j in opp_players)):
                    profile = _embed(opp, i, o_i)
                    base = game.utility(i, profile)
                    lift = ZERO
                    for x in preimage:
                        gap = game.utility(i, _embed(opp, i, x)) - base
                        if lift < gap:
                            lift = gap
                    if lift != ZERO:
                        table[profile] = lift
        for opp in itertools.product(*(range(game.sizes[j]) for j in opp_players)):
            if all(s in desired_sets[j] for s, j in zip(opp, opp_players)):
                continue
            for o_i in region.sets[i]:
                table[_embed(opp, i, o_i)] = INF
        tables.append(table)
    return PaymentPromise.make(game, tables)


def oracle_min_budget(game: Game, region: RectRegion) -> OracleResult:
    """Exhaustively price every dominator assignment from first principles.

    For each assignment the promise is rebuilt from the raw formula, every
    undesired strategy is re-checked to be dominated by its assigned desired
    strategy, and the worst-case payment over the desired region is re-summed
    directly. Raises if any assignment fails its domination check, which
    would signal an implementation bug.
    """
    game = _require_normal(game)
    region.validate_for(game)
    domains = tuple(region.complement(game, i) for i in range(game.n_players))
    space_size = 1
    for i in range(game.n_players):
        space_size *= len(region.sets[i]) ** len(domains[i])
    if space_size > MAX_MAPPINGS:
        raise ValueError(f"assignment space has {space_size} elements, above the {MAX_MAPPINGS} cap")

    landscape: dict[DominatorMapping, ExtValue] = {}
    best: ExtValue | None = None
    optima: list[DominatorMapping] = []
    per_player = [
        itertools.product(region.sets[i], repeat=len(domains[i]))
        for i in range(game.n_players)
    ]
    for targets in itertools.product(*[list(p) for p in per_player]):
        mapping = DominatorMapping(domains=domains, targets=targets)
        promise = _promise_for(game, region, mapping)
        view = ModifiedGameView(game, promise)
        for i in range(game.n_players):
            for x, t in zip(domains[i], targets[i]):
                if dominates(view, i, t, x) is None:
                    raise ValueError(
                        f"assignment {t}<-{x} for player {i} fails its domination "
                        "check; this signals an implementation bug"
                    )
        worst = ZERO
        for profile in region.profiles():
            total: ExtValue = ZERO
            for i in range(game.n_players):
                total = total + promise.value(i, profile)
            if worst < total:
                worst = total
        landscape[mapping] = worst
        if best is None or worst < best:
            best = worst
            optima = [mapping]
        elif worst == best:
            optima.append(mapping)
    assert best is not None
    return OracleResult(
        delta=best,
        all_optimal_mappings=tuple(optima),
        per_mapping_costs=landscape,
    )


def oracle_zero_cost(game: Game, region: RectRegion) -> bool:
    """Decide zero-budget implementability of a stable region end to end:
    build the pay-infinity-off-region promise and verify it at budget 0."""
    game = _require_normal(game)
    region.validate_for(game)
    desired_sets = [set(members) for members in region.sets]
    tables: list[dict[Profile, ExtValue]] = []
    for i in range(game.n_players):
        table: dict[Profile, ExtValue] = {}
        opp_players = [j for j in range(game.n_players) if j != i]
        for opp in itertools.product(*(range(game.sizes[j]) for j in opp_players)):
            if all(s in desired_sets[j] for s, j in zip(opp, opp_players)):
                continue
            for p in region.sets[i]:
                table[_embed(opp, i, p)] = INF
        tables.append(table)
    promise = PaymentPromise.make(game, tables)
    return verify(game, promise, region, ZERO, "subset").holds
