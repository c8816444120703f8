"""Model reduction under strategy compliance and outcome verification.

A player complies with a strategy when every move they make belongs to
it.  Operationally the model is reduced: the complying player's legality
becomes the original legality intersected with the strategy, other
players are untouched, and reachability is recomputed.  Strategies are
interpreted against the *original* model and only then applied as
legality filters; they are not re-evaluated inside the reduced model.

Reduction can strand non-terminal states with no strategic
continuation; those branches are pruned by co-reachability (a reachable
path is still a segment of a complete path) and reported through
:func:`reduction_dead_ends`.
"""

from __future__ import annotations

import logging
from typing import Iterator, Mapping

from .errors import PreconditionError
from .formulas import Formula
from .games import (
    Move,
    Path,
    PlayerId,
    complete_paths,
    dead_end_states,
    omega_i,
    restrict_legality,
)
from .semantics import Judgment, Model, model_valid
from .strategies import Strategy

log = logging.getLogger(__name__)

ComplianceSpec = Mapping[PlayerId, Strategy]


def reduce_model(model: Model, spec: ComplianceSpec) -> Model:
    """The model under compliance: assigned players may only take moves
    from their strategy.  Each strategy must be a valid (non-empty)
    strategy of its player in the original model."""
    allowed: dict[PlayerId, frozenset[Move]] = {}
    for player, strategy in spec.items():
        if strategy.player != player:
            raise PreconditionError(
                f"strategy of player {strategy.player} assigned to player {player}")
        if not strategy.moves:
            raise PreconditionError(f"player {player} was assigned an empty strategy")
        stray = strategy.moves - omega_i(model.game, player)
        if stray:
            raise PreconditionError(
                f"strategy of player {player} contains non-reachable moves: "
                f"{sorted(str(m) for m in stray)[0]}")
        allowed[player] = strategy.moves
    if not allowed:
        return model
    reduced_game = restrict_legality(model.game, allowed)
    reduced = Model(game=reduced_game, valuation=model.valuation, props=model.props)
    dead = dead_end_states(reduced_game)
    if dead:
        log.info("compliance reduction strands %d state(s) without a completion: %s",
                 len(dead), ", ".join(dead[:5]))
    return reduced


def reduction_dead_ends(model: Model) -> list[str]:
    """States reachable in the (reduced) model that cannot complete."""
    return dead_end_states(model.game)


def playouts(model: Model) -> Iterator[Path]:
    """All complete paths of the model."""
    return complete_paths(model.game)


def verify_claim(model: Model, claim: Formula) -> Judgment:
    """Validity of the claim over the model's surviving reachable paths,
    with a falsifying path on failure."""
    return model_valid(model, claim)
