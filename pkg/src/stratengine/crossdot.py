"""The m-box line-filling benchmark game, its axioms and strategy library.

Two players alternately mark an empty box in a line of m, player 1 with
a cross and player 2 with a dot; the first to own k consecutive boxes
wins, and a full line without a winner is a tie.  States are rendered
as ``(t1,t2,c1,...,cm)`` where the leading bits say whose turn it is and
each cell is ``x``, ``o`` or ``_``; actions are ``a(i,j)`` for player i
marking box j.  The second turn flag is redundant but kept so states
match their conventional tuple form byte for byte.

The module also emits the game's axiom set over the proposition
vocabulary ``p(i,j)`` / ``turn(i)`` and a small library of named
strategy rules (``fill_next``, ``thoughtful``, ``defence``, ...) used
throughout the tests and the CLI.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, ParseError
from .formulas import (
    And,
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
    Rule,
    Terminal,
    Wins,
    conj,
    disj,
    leaf,
    prio_conj,
    prio_disj,
)
from .games import Game, StateId
from .semantics import Model

EMPTY, CROSS, DOT = "_", "x", "o"
_MARK = {"1": CROSS, "2": DOT}
PLAYERS = ("1", "2")


@dataclass(frozen=True)
class CrossDotParams:
    boxes: int
    win_length: int

    def __post_init__(self):
        if self.boxes < 2:
            raise DomainError("need at least 2 boxes")
        if not 1 < self.win_length <= self.boxes:
            raise DomainError("win length must satisfy 1 < k <= m")


def action_id(player: str, box: int) -> str:
    return f"a({player},{box})"


def prop_cell(player: str, box: int) -> str:
    return f"p({player},{box})"


def prop_turn(player: str) -> str:
    return f"turn({player})"


def opponent(player: str) -> str:
    if player not in PLAYERS:
        raise DomainError(f"unknown player {player!r}")
    return "2" if player == "1" else "1"


def render_state(turn1: int, turn2: int, cells) -> StateId:
    return "(" + ",".join([str(turn1), str(turn2), *cells]) + ")"


@lru_cache(maxsize=None)
def parse_state(text: str) -> tuple[int, int, tuple[str, ...]]:
    match = re.fullmatch(r"\(([^()]*)\)", text.strip())
    if not match:
        raise ParseError(f"bad state literal {text!r}: expected (t1,t2,c,...,c)")
    fields = match.group(1).split(",")
    if len(fields) < 3:
        raise ParseError(f"bad state literal {text!r}: too few fields")
    if fields[0] not in ("0", "1") or fields[1] not in ("0", "1"):
        raise ParseError(f"bad state literal {text!r}: turn flags must be 0 or 1")
    cells = tuple(fields[2:])
    for cell in cells:
        if cell not in (EMPTY, CROSS, DOT):
            raise ParseError(f"bad state literal {text!r}: cell {cell!r} not one of x/o/_")
    return int(fields[0]), int(fields[1]), cells


def _parse_action(action: str) -> tuple[str, int]:
    match = re.fullmatch(r"a\(([12]),([0-9]+)\)", action)
    if not match:
        raise DomainError(f"unknown action {action!r}")
    return match.group(1), int(match.group(2))


def _has_win(cells, mark: str, k: int) -> bool:
    run = 0
    for cell in cells:
        run = run + 1 if cell == mark else 0
        if run >= k:
            return True
    return False


def generate(params: CrossDotParams) -> Model:
    """The game instance together with its standard valuation."""
    m, k = params.boxes, params.win_length

    def valid_state(state: StateId) -> bool:
        try:
            return len(parse_state(state)[2]) == m
        except ParseError:
            return False

    def wins(player: str, state: StateId) -> bool:
        return _has_win(parse_state(state)[2], _MARK[player], k)

    def terminal(state: StateId) -> bool:
        cells = parse_state(state)[2]
        return (_has_win(cells, CROSS, k) or _has_win(cells, DOT, k)
                or all(c != EMPTY for c in cells))

    def legal(state: StateId, action: str) -> bool:
        if not valid_state(state):
            return False
        player, box = _parse_action(action)
        turn1, turn2, cells = parse_state(state)
        my_turn = turn1 if player == "1" else turn2
        return bool(my_turn) and 1 <= box <= m and cells[box - 1] == EMPTY \
            and not terminal(state)

    def update(action: str, state: StateId) -> StateId:
        player, box = _parse_action(action)
        turn1, turn2, cells = parse_state(state)
        new_cells = list(cells)
        new_cells[box - 1] = _MARK[player]
        return render_state(turn2, turn1, new_cells)

    def valuation(state: StateId) -> frozenset[str]:
        turn1, turn2, cells = parse_state(state)
        props = set()
        if turn1:
            props.add(prop_turn("1"))
        if turn2:
            props.add(prop_turn("2"))
        for j, cell in enumerate(cells, start=1):
            if cell == CROSS:
                props.add(prop_cell("1", j))
            elif cell == DOT:
                props.add(prop_cell("2", j))
        return frozenset(props)

    game = Game(
        players=PLAYERS,
        actions={action_id(i, j): i for i in PLAYERS for j in range(1, m + 1)},
        initial=render_state(1, 0, [EMPTY] * m),
        terminal=terminal,
        legal=legal,
        update=update,
        goal=wins,
        has_state=valid_state,
    )
    props = frozenset(
        {prop_cell(i, j) for i in PLAYERS for j in range(1, m + 1)}
        | {prop_turn(i) for i in PLAYERS}
    )
    return Model(game=game, valuation=valuation, props=props)


# -- axioms --------------------------------------------------------------


@dataclass(frozen=True)
class NamedFormula:
    name: str
    formula: Formula


def _cell_free(j: int) -> Formula:
    return Not(Or(Prop(prop_cell("1", j)), Prop(prop_cell("2", j))))


def _wins_body(player: str, m: int, k: int) -> Formula:
    return disj(
        conj(Prop(prop_cell(player, box)) for box in range(j, j + k))
        for j in range(1, m - k + 2)
    )


def axioms(params: CrossDotParams) -> list[NamedFormula]:
    """The game's axiom set: initial state, winning and termination
    conditions, legality, effects with frame, and turn alternation."""
    m, k = params.boxes, params.win_length
    out: list[NamedFormula] = []
    for i in PLAYERS:
        for j in range(1, m + 1):
            out.append(NamedFormula(
                f"init_empty({i},{j})",
                Imp(Init(), Not(Prop(prop_cell(i, j))))))
    out.append(NamedFormula(
        "init_turn",
        Imp(Init(), And(Prop(prop_turn("1")), Not(Prop(prop_turn("2")))))))
    for i in PLAYERS:
        out.append(NamedFormula(f"wins({i})", Iff(Wins(i), _wins_body(i, m, k))))
    out.append(NamedFormula(
        "terminal_def",
        Iff(Terminal(),
            Or(Or(Wins("1"), Wins("2")),
               conj(Or(Prop(prop_cell("1", j)), Prop(prop_cell("2", j)))
                    for j in range(1, m + 1))))))
    for i in PLAYERS:
        for j in range(1, m + 1):
            out.append(NamedFormula(
                f"legal_def({i},{j})",
                Iff(And(And(_cell_free(j), Prop(prop_turn(i))), Not(Terminal())),
                    Legal(action_id(i, j)))))
    for i in PLAYERS:
        for j in range(1, m + 1):
            out.append(NamedFormula(
                f"effect({i},{j})",
                Iff(Or(Prop(prop_cell(i, j)), Does(action_id(i, j))),
                    Next(Prop(prop_cell(i, j))))))
    for i in PLAYERS:
        out.append(NamedFormula(
            f"turn_flip({i})",
            Imp(Prop(prop_turn(i)),
                And(Next(Not(Prop(prop_turn(i)))),
                    Next(Prop(prop_turn(opponent(i))))))))
    return out


# -- strategy library ----------------------------------------------------


def _fill_next(player: str, m: int) -> Formula:
    right = disj(
        conj([_cell_free(j), Prop(prop_cell(player, j - 1)), Does(action_id(player, j))])
        for j in range(2, m + 1))
    left = disj(
        conj([_cell_free(j), Prop(prop_cell(player, j + 1)), Does(action_id(player, j))])
        for j in range(1, m))
    return Or(right, left)


def _fill_isolated(player: str, m: int) -> Formula:
    return disj(
        conj([_cell_free(j - 1), _cell_free(j + 1), _cell_free(j),
              Does(action_id(player, j))])
        for j in range(2, m))


def _fill_any(player: str, m: int) -> Formula:
    return disj(
        conj([_cell_free(j), Does(action_id(player, j))])
        for j in range(1, m + 1))


def _boxes_up_to(player: str, t: int) -> Formula:
    return disj(Does(action_id(player, j)) for j in range(1, t + 1))


def _defence(player: str, m: int) -> Formula:
    other = opponent(player)
    return conj(
        Imp(Next(And(Does(action_id(other, j)), Next(Wins(other)))),
            Does(action_id(player, j)))
        for j in range(1, m + 1))


def _fill_o_next(player: str, m: int) -> Rule:
    other = opponent(player)
    right_of_me = disj(
        conj([_cell_free(j), Prop(prop_cell(other, j + 1)), Does(action_id(player, j))])
        for j in range(1, m))
    left_of_me = disj(
        conj([_cell_free(j), Prop(prop_cell(other, j - 1)), Does(action_id(player, j))])
        for j in range(2, m + 1))
    return prio_disj([leaf(right_of_me), leaf(left_of_me)])


def library(params: CrossDotParams, player: str) -> dict[str, Rule]:
    """Named strategy rules for one player, instantiated for this game
    size.  ``c1 .. cm`` are the leftmost-bias building blocks: ``ct``
    allows marking any box between 1 and t."""
    if player not in PLAYERS:
        raise DomainError(f"unknown player {player!r}")
    m = params.boxes
    fill_next = leaf(_fill_next(player, m))
    fill_isolated = leaf(_fill_isolated(player, m))
    fill_any = leaf(_fill_any(player, m))
    combined = prio_disj([fill_next, fill_isolated, fill_any])
    cs = {t: leaf(_boxes_up_to(player, t)) for t in range(1, m + 1)}
    leftmost_chain = [cs[t] for t in range(m, 0, -1)]
    thoughtful = prio_conj([combined, *leftmost_chain])
    fill_leftmost = prio_conj(leftmost_chain)
    defence = leaf(_defence(player, m))
    cautious = prio_disj([prio_conj([defence, *leftmost_chain]), thoughtful])
    fill_o_next = _fill_o_next(player, m)
    passive_defence = prio_conj([
        prio_disj([prio_conj([defence, fill_o_next]), fill_any]),
        *leftmost_chain,
    ])
    rules: dict[str, Rule] = {
        "fill_next": fill_next,
        "fill_isolated": fill_isolated,
        "fill_any": fill_any,
        "combined": combined,
        "thoughtful": thoughtful,
        "fill_leftmost": fill_leftmost,
        "defence": defence,
        "cautious": cautious,
        "fill_o_next": fill_o_next,
        "passive_defence": passive_defence,
    }
    for t, rule in cs.items():
        rules[f"c{t}"] = rule
    return rules


def library_environment(params: CrossDotParams) -> dict[str, Rule]:
    """All library rules for both players keyed ``name@player``, ready to
    use as a parser environment."""
    env: dict[str, Rule] = {}
    for player in PLAYERS:
        for name, rule in library(params, player).items():
            env[f"{name}@{player}"] = rule
    return env
