"""Strategies as move sets, their properties, and rule interpretation.

A strategy is a finite set of one player's reachable moves.  The four
classic properties: *valid* (non-empty), *complete* (offers a move at
every reachable state where the player can act), *deterministic* (at
most one move per state), *functional* (both).

Prioritised rule trees are interpreted per state: a prioritised
disjunction uses the first branch with any applicable move, a
prioritised conjunction intersects branch strategies along the longest
prefix that stays non-empty at the state.  The conjunction is evaluated
n-ary exactly as defined — folding it into binary applications changes
the result, and the two known counterexamples are regression-tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DomainError, PreconditionError
from .formulas import (
    Bot,
    Does,
    Formula,
    Not,
    Prop,
    PrioConj,
    PrioDisj,
    Rule,
    RuleLeaf,
    conj,
    disj,
)
from .games import Move, PlayerId, StateId, analyze, omega_i, player_moves_at
from .semantics import Model, strategy_of_formula


@dataclass(frozen=True)
class Strategy:
    player: PlayerId
    moves: frozenset[Move]

    def sorted_moves(self) -> list[Move]:
        return sorted(self.moves, key=lambda m: (m.state, m.action))

    def states(self) -> set[StateId]:
        return {m.state for m in self.moves}


def make_strategy(model: Model, player: PlayerId, moves) -> Strategy:
    """Build a strategy and check it against the player's reachable moves."""
    moves = frozenset(Move(*m) if isinstance(m, tuple) else m for m in moves)
    allowed = omega_i(model.game, player)
    stray = moves - allowed
    if stray:
        example = sorted(stray, key=lambda m: (m.state, m.action))[0]
        raise DomainError(f"{example} is not a reachable legal move of player {player}")
    return Strategy(player=player, moves=moves)


def restrict(strategy: Strategy, state: StateId) -> Strategy:
    """The strategy's moves at one state."""
    return Strategy(strategy.player,
                    frozenset(m for m in strategy.moves if m.state == state))


def is_valid(strategy: Strategy) -> bool:
    return bool(strategy.moves)


def is_deterministic(strategy: Strategy) -> bool:
    seen: dict[StateId, str] = {}
    for move in strategy.moves:
        if seen.setdefault(move.state, move.action) != move.action:
            return False
    return True


def is_complete(model: Model, strategy: Strategy) -> bool:
    """Does the strategy offer a move wherever the player could act?"""
    states_covered = strategy.states()
    for state in analyze(model.game).reachable_states():
        if state in states_covered:
            continue
        if player_moves_at(model.game, state, strategy.player):
            return False
    return True


def is_functional(model: Model, strategy: Strategy) -> bool:
    return is_complete(model, strategy) and is_deterministic(strategy)


def is_markovian(model: Model, strategy: Strategy) -> bool:
    """Closed under valuation-equality of reachable states: whenever the
    strategy picks an action at one state it picks it at every reachable
    state with the same valuation."""
    classes: dict[frozenset[str], list[StateId]] = {}
    for state in analyze(model.game).reachable_states():
        classes.setdefault(model.valuation(state), []).append(state)
    for move in strategy.moves:
        for state in classes.get(model.valuation(move.state), ()):
            if Move(state, move.action) not in strategy.moves:
                return False
    return True


def represent_markovian(model: Model, strategy: Strategy) -> Formula:
    """A formula denoting exactly this Markovian strategy: one disjunct
    per move describing the state's full valuation plus the action taken.
    The empty strategy is represented by ``false``."""
    if not is_markovian(model, strategy):
        raise PreconditionError("strategy is not Markovian under this model")
    disjuncts = []
    seen = set()
    for move in strategy.sorted_moves():
        val = model.valuation(move.state)
        key = (val, move.action)
        if key in seen:
            continue
        seen.add(key)
        parts = [Prop(p) for p in sorted(val)]
        parts += [Not(Prop(p)) for p in sorted(model.props - val)]
        parts.append(Does(move.action))
        disjuncts.append(conj(parts))
    if not disjuncts:
        return Bot()
    return disj(disjuncts)


# -- rule interpretation -------------------------------------------------


class LeafResolver:
    """Maps rule leaves to strategies.  Implementations must be pure."""

    def resolve(self, leaf: RuleLeaf) -> Strategy:
        raise NotImplementedError


class ModelLeafResolver(LeafResolver):
    """Resolve leaves through the formula denotation on a model."""

    def __init__(self, model: Model, player: PlayerId):
        self.model = model
        self.player = player
        self._cache: dict[Formula, Strategy] = {}

    def resolve(self, leaf: RuleLeaf) -> Strategy:
        formula = leaf.formula
        if formula not in self._cache:
            self._cache[formula] = strategy_of_formula(self.model, self.player, formula)
        return self._cache[formula]


class TableLeafResolver(LeafResolver):
    """Resolve leaves named by bare propositions through a fixed table.

    Lets abstract strategy equations (stated directly as move sets, with
    no game behind them) run as unit tests.
    """

    def __init__(self, player: PlayerId, table: Mapping[str, Strategy]):
        self.player = player
        self.table = dict(table)
        for name, strategy in self.table.items():
            if strategy.player != player:
                raise DomainError(f"table entry {name!r} belongs to player {strategy.player}")

    def resolve(self, leaf: RuleLeaf) -> Strategy:
        if not isinstance(leaf.formula, Prop):
            raise DomainError(f"abstract leaf expected a name, got {leaf.formula}")
        name = leaf.formula.name
        if name not in self.table:
            raise DomainError(f"no strategy bound to leaf {name!r}")
        return self.table[name]


def _by_state(strategy: Strategy) -> dict[StateId, set[Move]]:
    out: dict[StateId, set[Move]] = {}
    for move in strategy.moves:
        out.setdefault(move.state, set()).add(move)
    return out


def interpret_rule(resolver: LeafResolver, rule: Rule) -> Strategy:
    """The move set a rule denotes.

    Disjunction: at each state, the first branch with any move there
    supplies the moves.  Conjunction: at each state, intersect the branch
    move sets left to right and keep the last non-empty intersection
    (prefix intersections only shrink, so that is well-defined).
    """
    if isinstance(rule, RuleLeaf):
        return resolver.resolve(rule)
    if isinstance(rule, (PrioDisj, PrioConj)):
        parts = [interpret_rule(resolver, b) for b in rule.branches]
        players = {s.player for s in parts}
        if len(players) != 1:
            raise DomainError(f"rule mixes strategies of players {sorted(players)}")
        player = players.pop()
        maps = [_by_state(s) for s in parts]
        moves: set[Move] = set()
        if isinstance(rule, PrioDisj):
            for state in {w for m in maps for w in m}:
                for branch in maps:
                    at_state = branch.get(state)
                    if at_state:
                        moves |= at_state
                        break
        else:
            for state, first in maps[0].items():
                current = set(first)
                for branch in maps[1:]:
                    narrowed = current & branch.get(state, set())
                    if not narrowed:
                        break
                    current = narrowed
                moves |= current
        return Strategy(player=player, moves=frozenset(moves))
    raise TypeError(f"not a rule node: {rule!r}")


@dataclass(frozen=True)
class RuleProperties:
    consistent: bool
    complete: bool
    deterministic: bool
    functional: bool


def rule_properties(model: Model, player: PlayerId, rule: Rule) -> RuleProperties:
    strategy = interpret_rule(ModelLeafResolver(model, player), rule)
    consistent = is_valid(strategy)
    complete = is_complete(model, strategy)
    deterministic = is_deterministic(strategy)
    return RuleProperties(
        consistent=consistent,
        complete=complete,
        deterministic=deterministic,
        functional=complete and deterministic,
    )
