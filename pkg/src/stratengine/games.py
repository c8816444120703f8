"""Finite state-transition games and their reachability machinery.

A game is a tuple of players, owned actions, an initial state, and
callables for the terminal set, the legality relation, the update
function and the per-player goal sets.  States are opaque string ids;
the engine discovers the reachable fragment lazily from the initial
state, so the full state space never needs to be materialised.

A *complete path* runs from the initial state to a terminal state along
legal moves; a *reachable path* is any contiguous segment of one
(a single state counts).  A *move* ``(w, a)`` is reachable-legal when it
starts a reachable path.  All path-quantified queries require the game
to be finitely terminating, which is checked by looking for cycles in
the forward-reachable move graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Iterator, Mapping

from .errors import DomainError, GameFileError, NonTerminatingGameError

PlayerId = str
ActionId = str
StateId = str


@dataclass(frozen=True)
class Move:
    state: StateId
    action: ActionId

    def __str__(self) -> str:
        return f"({self.state}, {self.action})"


@dataclass(frozen=True)
class Path:
    """Alternating state/action sequence; one more state than actions."""

    states: tuple[StateId, ...]
    actions: tuple[ActionId, ...]

    def __post_init__(self):
        if len(self.states) != len(self.actions) + 1:
            raise ValueError("a path needs exactly one more state than actions")

    def __len__(self) -> int:
        return len(self.actions)

    @property
    def is_singleton(self) -> bool:
        return not self.actions

    def extend(self, action: ActionId, state: StateId) -> "Path":
        return Path(self.states + (state,), self.actions + (action,))

    def first_move(self) -> Move:
        if self.is_singleton:
            raise ValueError("singleton path has no move")
        return Move(self.states[0], self.actions[0])

    def __str__(self) -> str:
        if self.is_singleton:
            return self.states[0]
        parts = [self.states[0]]
        for action, state in zip(self.actions, self.states[1:]):
            parts.append(f"-{action}->")
            parts.append(state)
        return " ".join(parts)


def singleton(state: StateId) -> Path:
    return Path((state,), ())


@dataclass(frozen=True, eq=False)
class Game:
    """Immutable game description.  Queries go through the free functions
    below; the reachable fragment is computed once per instance."""

    players: tuple[PlayerId, ...]
    actions: Mapping[ActionId, PlayerId]  # action id -> owning player
    initial: StateId
    terminal: Callable[[StateId], bool]
    legal: Callable[[StateId, ActionId], bool]
    update: Callable[[ActionId, StateId], StateId]
    goal: Callable[[PlayerId, StateId], bool]
    has_state: Callable[[StateId], bool]

    def owner(self, action: ActionId) -> PlayerId:
        try:
            return self.actions[action]
        except KeyError:
            raise DomainError(f"unknown action {action!r}") from None

    def player_actions(self, player: PlayerId) -> list[ActionId]:
        if player not in self.players:
            raise DomainError(f"unknown player {player!r}")
        return sorted(a for a, p in self.actions.items() if p == player)

    def check_state(self, state: StateId) -> None:
        if not self.has_state(state):
            raise DomainError(f"unknown state {state!r}")


class GameGraph:
    """Forward-reachable move graph plus co-reachability, computed eagerly."""

    def __init__(self, game: Game):
        self.game = game
        self._sorted_actions = sorted(game.actions)
        self.edges: dict[StateId, tuple[tuple[ActionId, StateId], ...]] = {}
        self.forward: list[StateId] = []
        self._discover()
        self.cycle = self._find_cycle()
        self.coreach = self._coreachable() if self.cycle is None else frozenset()

    def _discover(self) -> None:
        game = self.game
        seen = set()
        frontier = [game.initial]
        seen.add(game.initial)
        while frontier:
            state = frontier.pop(0)
            self.forward.append(state)
            out = []
            for action in self._sorted_actions:
                if game.legal(state, action):
                    nxt = game.update(action, state)
                    out.append((action, nxt))
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
            self.edges[state] = tuple(out)

    def _find_cycle(self) -> Path | None:
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {state: WHITE for state in self.forward}
        chain_states: list[StateId] = []
        chain_actions: list[ActionId] = []

        def visit(root: StateId) -> Path | None:
            stack: list[tuple[StateId, int]] = [(root, 0)]
            color[root] = GRAY
            chain_states.append(root)
            while stack:
                state, idx = stack[-1]
                edges = self.edges[state]
                if idx < len(edges):
                    stack[-1] = (state, idx + 1)
                    action, nxt = edges[idx]
                    if color[nxt] == GRAY:
                        start = chain_states.index(nxt)
                        states = tuple(chain_states[start:]) + (nxt,)
                        actions = tuple(chain_actions[start:]) + (action,)
                        return Path(states, actions)
                    if color[nxt] == WHITE:
                        color[nxt] = GRAY
                        chain_states.append(nxt)
                        chain_actions.append(action)
                        stack.append((nxt, 0))
                else:
                    color[state] = BLACK
                    stack.pop()
                    chain_states.pop()
                    if chain_actions:
                        chain_actions.pop()
            return None

        for state in self.forward:
            if color[state] == WHITE:
                found = visit(state)
                if found is not None:
                    return found
        return None

    def _coreachable(self) -> frozenset[StateId]:
        reverse: dict[StateId, list[StateId]] = {}
        for state, out in self.edges.items():
            for _action, nxt in out:
                reverse.setdefault(nxt, []).append(state)
        frontier = [s for s in self.forward if self.game.terminal(s)]
        seen = set(frontier)
        while frontier:
            state = frontier.pop()
            for prev in reverse.get(state, ()):
                if prev not in seen:
                    seen.add(prev)
                    frontier.append(prev)
        return frozenset(seen)

    # -- derived views --------------------------------------------------

    def require_terminating(self) -> None:
        if self.cycle is not None:
            raise NonTerminatingGameError(self.cycle)

    def reachable_states(self) -> list[StateId]:
        """States on complete paths, in sorted order."""
        return sorted(s for s in self.forward if s in self.coreach)

    def live_edges(self, state: StateId) -> tuple[tuple[ActionId, StateId], ...]:
        """Outgoing legal moves whose target can still reach a terminal."""
        return tuple((a, n) for (a, n) in self.edges.get(state, ()) if n in self.coreach)

    def moves(self) -> list[Move]:
        out = []
        for state in self.reachable_states():
            for action, _nxt in self.live_edges(state):
                out.append(Move(state, action))
        return out

    def dead_ends(self) -> list[StateId]:
        """Forward-reachable states from which no terminal is reachable."""
        return sorted(s for s in self.forward if s not in self.coreach)


@lru_cache(maxsize=None)
def analyze(game: Game) -> GameGraph:
    return GameGraph(game)


def legal_actions(game: Game, state: StateId, player: PlayerId) -> set[ActionId]:
    """Raw legality: the player's actions allowed at ``state`` by ``legal``
    alone, with no reachability filtering."""
    game.check_state(state)
    return {a for a in game.player_actions(player) if game.legal(state, a)}


def check_finitely_terminating(game: Game) -> Path | None:
    """``None`` when every legal play terminates; otherwise one witness
    cycle (first and last state coincide)."""
    return analyze(game).cycle


def reachable_paths(game: Game, max_len: int | None = None) -> Iterator[Path]:
    """All segments of complete paths, singletons included, with at most
    ``max_len`` actions when a bound is given."""
    graph = analyze(game)
    graph.require_terminating()
    for start in graph.reachable_states():
        stack = [singleton(start)]
        while stack:
            path = stack.pop()
            yield path
            if max_len is not None and len(path) >= max_len:
                continue
            for action, nxt in reversed(graph.live_edges(path.states[-1])):
                stack.append(path.extend(action, nxt))


def complete_paths(game: Game) -> Iterator[Path]:
    """All complete paths, i.e. plays from the initial state to a terminal
    state.  Plays may pass through terminal states when the game allows
    moves there; each terminal visit yields the play up to that point."""
    graph = analyze(game)
    graph.require_terminating()
    if game.initial not in graph.coreach:
        return
    stack = [singleton(game.initial)]
    while stack:
        path = stack.pop()
        end = path.states[-1]
        if game.terminal(end):
            yield path
        for action, nxt in reversed(graph.live_edges(end)):
            stack.append(path.extend(action, nxt))


def omega(game: Game) -> frozenset[Move]:
    """All reachable legal moves."""
    graph = analyze(game)
    graph.require_terminating()
    return frozenset(graph.moves())


def omega_i(game: Game, player: PlayerId) -> frozenset[Move]:
    """The reachable legal moves owned by ``player``."""
    if player not in game.players:
        raise DomainError(f"unknown player {player!r}")
    return frozenset(m for m in omega(game) if game.actions[m.action] == player)


def player_moves_at(game: Game, state: StateId, player: PlayerId) -> set[ActionId]:
    """Reachability-filtered legal actions: the projection of the player's
    reachable moves onto ``state``."""
    game.check_state(state)
    if player not in game.players:
        raise DomainError(f"unknown player {player!r}")
    graph = analyze(game)
    graph.require_terminating()
    if state not in graph.coreach or state not in graph.edges:
        return set()
    return {a for a, n in graph.live_edges(state) if game.actions[a] == player}


def dead_end_states(game: Game) -> list[StateId]:
    return analyze(game).dead_ends()


def restrict_legality(game: Game, allowed: Mapping[PlayerId, frozenset[Move]]) -> Game:
    """A copy of the game where each listed player's legality is cut down
    to the given move set; other players are untouched."""
    base_legal = game.legal
    owners = game.actions
    allowed = {p: frozenset(ms) for p, ms in allowed.items()}

    def legal(state: StateId, action: ActionId) -> bool:
        if not base_legal(state, action):
            return False
        moves = allowed.get(owners.get(action))
        if moves is None:
            return True
        return Move(state, action) in moves

    return replace(game, legal=legal)


# -- explicit game files ------------------------------------------------


@dataclass(frozen=True)
class GameFile:
    """Parsed explicit game: the game itself plus valuation data."""

    game: Game
    valuation: Mapping[StateId, frozenset[str]]
    props: frozenset[str]


def load_game_file(text: str) -> GameFile:
    """Parse the JSON game format (see README for the schema)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GameFileError("top level must be an object")
    for key in ("players", "actions", "initial", "states", "legal", "update"):
        if key not in doc:
            raise GameFileError(f"missing top-level key {key!r}")

    players = tuple(str(p) for p in doc["players"])
    if not players:
        raise GameFileError("players: must be non-empty")

    actions: dict[ActionId, PlayerId] = {}
    for i, entry in enumerate(doc["actions"]):
        where = f"actions[{i}]"
        if not isinstance(entry, dict) or "id" not in entry or "owner" not in entry:
            raise GameFileError(f"{where}: expected an object with 'id' and 'owner'")
        aid, owner = str(entry["id"]), str(entry["owner"])
        if owner not in players:
            raise GameFileError(f"{where}: unknown owner {owner!r}")
        if aid in actions:
            raise GameFileError(f"{where}: duplicate action id {aid!r}")
        actions[aid] = owner

    states: dict[StateId, dict] = {}
    valuation: dict[StateId, frozenset[str]] = {}
    props: set[str] = set()
    for i, entry in enumerate(doc["states"]):
        where = f"states[{i}]"
        if not isinstance(entry, dict) or "id" not in entry:
            raise GameFileError(f"{where}: expected an object with 'id'")
        sid = str(entry["id"])
        if sid in states:
            raise GameFileError(f"{where}: duplicate state id {sid!r}")
        goal_players = [str(p) for p in entry.get("goal", [])]
        for p in goal_players:
            if p not in players:
                raise GameFileError(f"{where}.goal: unknown player {p!r}")
        state_props = frozenset(str(p) for p in entry.get("props", []))
        states[sid] = {
            "terminal": bool(entry.get("terminal", False)),
            "goal": frozenset(goal_players),
        }
        valuation[sid] = state_props
        props |= state_props

    initial = str(doc["initial"])
    if initial not in states:
        raise GameFileError(f"initial: unknown state {initial!r}")

    legal_pairs: set[tuple[StateId, ActionId]] = set()
    for i, entry in enumerate(doc["legal"]):
        where = f"legal[{i}]"
        if not isinstance(entry, list) or len(entry) != 2:
            raise GameFileError(f"{where}: expected [state, action]")
        sid, aid = str(entry[0]), str(entry[1])
        if sid not in states:
            raise GameFileError(f"{where}: unknown state {sid!r}")
        if aid not in actions:
            raise GameFileError(f"{where}: unknown action {aid!r}")
        legal_pairs.add((sid, aid))

    update_map: dict[tuple[ActionId, StateId], StateId] = {}
    for i, entry in enumerate(doc["update"]):
        where = f"update[{i}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise GameFileError(f"{where}: expected [action, state, next_state]")
        aid, sid, nid = str(entry[0]), str(entry[1]), str(entry[2])
        if aid not in actions:
            raise GameFileError(f"{where}: unknown action {aid!r}")
        if sid not in states:
            raise GameFileError(f"{where}: unknown state {sid!r}")
        if nid not in states:
            raise GameFileError(f"{where}: unknown next state {nid!r}")
        update_map[(aid, sid)] = nid

    for sid, aid in sorted(legal_pairs):
        if (aid, sid) not in update_map:
            raise GameFileError(f"legal move [{sid}, {aid}] has no update entry")

    def update(action: ActionId, state: StateId) -> StateId:
        try:
            return update_map[(action, state)]
        except KeyError:
            raise DomainError(f"update undefined for ({action!r}, {state!r})") from None

    game = Game(
        players=players,
        actions=actions,
        initial=initial,
        terminal=lambda s: states[s]["terminal"],
        legal=lambda s, a: (s, a) in legal_pairs,
        update=update,
        goal=lambda p, s: p in states[s]["goal"],
        has_state=lambda s: s in states,
    )
    return GameFile(game=game, valuation=valuation, props=frozenset(props))
