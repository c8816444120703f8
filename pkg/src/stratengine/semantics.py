"""Path satisfaction, validity and the strategy denotation of formulas.

Satisfaction follows the path clauses literally: atoms read the first
state, ``does`` reads the first action, ``X`` strips one move.  On a
singleton path (no actions) both ``does(a)`` and ``X f`` hold for every
``a`` and ``f`` — the limit case.  Model validity quantifies over every
reachable path, singletons and interior segments included; this makes
``does``-formulas behave unintuitively under plain validity (a singleton
never refutes ``does(a)``), which is the documented cost of reading the
definition literally.

Move validity ``valid_under_move`` quantifies over the *plays* that
start with the move: every continuation is followed to a terminal state
(not cut off early), because a strategy condition such as "if the
opponent could win next turn, block" must see the opponent's actual
replies.  Evaluating a formula of modal depth d only ever inspects the
first d+1 moves of a play, so the implementation enumerates the
continuation tree truncated at depth d+1, with branches that reach a
terminal state earlier kept as complete plays.  The equivalence of the
truncated and the untruncated quantification is property-tested against
a brute-force oracle rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .errors import DomainError, PreconditionError
from .formulas import (
    And,
    Bot,
    Does,
    Formula,
    Iff,
    Imp,
    Init,
    Legal,
    Next,
    Not,
    Or,
    Prop,
    Terminal,
    Top,
    Wins,
    modal_depth,
    subformulas,
)
from .games import Game, Move, Path, PlayerId, StateId, analyze, omega, omega_i

Valuation = Callable[[StateId], frozenset[str]]


@dataclass(frozen=True, eq=False)
class Model:
    """A game together with a valuation over a declared proposition set."""

    game: Game
    valuation: Valuation
    props: frozenset[str]

    def props_at(self, state: StateId) -> frozenset[str]:
        return self.valuation(state)


@dataclass(frozen=True)
class Judgment:
    """Outcome of a universally quantified query; a falsifying path is
    attached exactly when the query fails."""

    holds: bool
    witness: Path | None = None


def check_vocabulary(model: Model, formula: Formula) -> None:
    game = model.game
    for node in subformulas(formula):
        if isinstance(node, Prop) and node.name not in model.props:
            raise DomainError(f"unknown proposition {node.name!r}")
        if isinstance(node, (Does, Legal)) and node.action not in game.actions:
            raise DomainError(f"unknown action {node.action!r}")
        if isinstance(node, Wins) and node.player not in game.players:
            raise DomainError(f"unknown player {node.player!r}")


def satisfies(model: Model, path: Path, formula: Formula) -> bool:
    """Truth of ``formula`` on ``path`` under ``model``."""
    check_vocabulary(model, formula)
    return _eval(model, path, formula, 0)


def _eval(model: Model, path: Path, formula: Formula, pos: int) -> bool:
    game = model.game
    end = len(path.actions)
    if isinstance(formula, Prop):
        return formula.name in model.valuation(path.states[pos])
    if isinstance(formula, Does):
        return pos == end or path.actions[pos] == formula.action
    if isinstance(formula, Next):
        return pos == end or _eval(model, path, formula.body, pos + 1)
    if isinstance(formula, Not):
        return not _eval(model, path, formula.body, pos)
    if isinstance(formula, And):
        return _eval(model, path, formula.left, pos) and _eval(model, path, formula.right, pos)
    if isinstance(formula, Or):
        return _eval(model, path, formula.left, pos) or _eval(model, path, formula.right, pos)
    if isinstance(formula, Imp):
        return (not _eval(model, path, formula.left, pos)) or _eval(model, path, formula.right, pos)
    if isinstance(formula, Iff):
        return _eval(model, path, formula.left, pos) == _eval(model, path, formula.right, pos)
    if isinstance(formula, Init):
        return path.states[pos] == game.initial
    if isinstance(formula, Terminal):
        return game.terminal(path.states[pos])
    if isinstance(formula, Legal):
        return game.legal(path.states[pos], formula.action)
    if isinstance(formula, Wins):
        return game.goal(formula.player, path.states[pos])
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Bot):
        return False
    raise TypeError(f"not a formula node: {formula!r}")


def model_valid(model: Model, formula: Formula) -> Judgment:
    """Validity in the model: satisfaction on every reachable path.

    A formula of modal depth d cannot distinguish a path from its first
    d+1 moves, and every such truncation is itself a reachable path, so
    quantifying over all segments with at most d+1 actions (singletons
    included) is exhaustive.
    """
    check_vocabulary(model, formula)
    bound = modal_depth(formula) + 1
    from .games import reachable_paths

    for path in reachable_paths(model.game, max_len=bound):
        if not _eval(model, path, formula, 0):
            return Judgment(False, path)
    return Judgment(True)


def move_plays(model: Model, move: Move, depth: int) -> Iterator[Path]:
    """Plays starting with ``move``, truncated at ``depth`` actions.

    Yields every continuation branch cut at ``depth`` moves, plus every
    shorter branch that ends in a terminal state (a complete play).
    """
    game = model.game
    graph = analyze(game)
    start = Path((move.state, game.update(move.action, move.state)), (move.action,))
    stack = [start]
    while stack:
        path = stack.pop()
        end_state = path.states[-1]
        at_terminal = game.terminal(end_state)
        if at_terminal:
            yield path
        if len(path) >= depth:
            if not at_terminal:
                yield path
            continue
        for action, nxt in reversed(graph.live_edges(end_state)):
            stack.append(path.extend(action, nxt))


def valid_under_move(model: Model, move: Move, formula: Formula) -> Judgment:
    """Validity under a move: satisfaction on every play starting with it."""
    check_vocabulary(model, formula)
    graph = analyze(model.game)
    graph.require_terminating()
    if move not in omega(model.game):
        raise PreconditionError(f"{move} is not a reachable legal move")
    depth = modal_depth(formula) + 1
    for path in move_plays(model, move, depth):
        if not _eval(model, path, formula, 0):
            return Judgment(False, path)
    return Judgment(True)


def strategy_of_formula(model: Model, player: PlayerId, formula: Formula):
    """The strategy a formula denotes for a player: all of the player's
    reachable moves under which the formula is valid."""
    from .strategies import Strategy

    check_vocabulary(model, formula)
    moves = []
    for move in sorted(omega_i(model.game, player), key=lambda m: (m.state, m.action)):
        if valid_under_move(model, move, formula).holds:
            moves.append(move)
    return Strategy(player=player, moves=frozenset(moves))
