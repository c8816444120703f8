"""Recursive-descent parser for formulas, strategy rules and definition files.

Concrete syntax:

* atoms: identifiers, optionally applied to comma-separated arguments,
  e.g. ``p(1,3)``, ``turn(2)``, ``q``; the rendered text is the
  proposition name
* reserved forms: ``does(a(1,2))``, ``legal(a(1,2))``, ``wins(1)``,
  ``init``, ``terminal``, ``true``, ``false``
* operators, tightest first: ``~`` and prefix ``X``, then ``&``, ``|``,
  ``->`` (right-associative), ``<->``
* strategy rules: ``PD[r1, r2, ...]`` and ``PC[r1, r2, ...]``; arguments
  are again rules, a bare formula is a leaf

A definitions file holds one ``name := <rule-or-formula>`` per line
(blank lines and ``#`` comments allowed); later definitions may use
earlier names, which are substituted at parse time.
"""

from __future__ import annotations

import re
from typing import Mapping, Union

from .errors import ParseError, RuleInFormulaError
from .formulas import (
    FALSE,
    TRUE,
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
    RuleLeaf,
    Terminal,
    Wins,
    prio_conj,
    prio_disj,
)

Definition = Union[Formula, Rule]
Environment = Mapping[str, Definition]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<def>:=)
  | (?P<sym>[()\[\],~&|])
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_@]*)
    """,
    re.VERBOSE,
)

_RESERVED = {"X", "PD", "PC", "does", "legal", "wins", "init", "terminal", "true", "false"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            value = match.group()
            tokens.append((kind if kind in ("int", "ident") else value, value, pos))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, env: Environment | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.env = env or {}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def next(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> tuple[str, str, int]:
        token = self.next()
        if token[0] != kind:
            raise ParseError(f"expected {kind!r} but found {token[1] or 'end of input'!r}", token[2])
        return token

    def at_end(self) -> bool:
        return self.peek()[0] == "end"

    # -- rules ---------------------------------------------------------

    def rule(self) -> Rule:
        kind, value, pos = self.peek()
        if kind == "ident" and value in ("PD", "PC"):
            self.next()
            self.expect("[")
            branches = [self.rule()]
            while self.peek()[0] == ",":
                self.next()
                branches.append(self.rule())
            self.expect("]")
            return (prio_disj if value == "PD" else prio_conj)(branches)
        if kind == "ident" and value in self.env and self._ends_operand(self.index + 1):
            bound = self.env[value]
            self.next()
            if isinstance(bound, Rule):
                return bound
            return RuleLeaf(bound)
        return RuleLeaf(self.formula())

    def _ends_operand(self, index: int) -> bool:
        return self.tokens[index][0] in (",", "]", "end")

    # -- formulas, loosest precedence first ----------------------------

    def formula(self) -> Formula:
        left = self.imp()
        while self.peek()[0] == "<->":
            self.next()
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.next()
            return Imp(left, self.imp())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek()[0] == "|":
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek()[0] == "&":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "~":
            self.next()
            return Not(self.unary())
        if kind == "ident" and value == "X":
            self.next()
            return Next(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, value, pos = self.next()
        if kind == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if kind == "ident":
            if value in ("PD", "PC"):
                raise RuleInFormulaError(
                    f"rule connective {value} in formula position", pos)
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            if value == "init":
                return Init()
            if value == "terminal":
                return Terminal()
            if value == "does":
                return Does(self._term_args_required(pos))
            if value == "legal":
                return Legal(self._term_args_required(pos))
            if value == "wins":
                self.expect("(")
                player = self._arg()
                self.expect(")")
                return Wins(player)
            if value == "X":
                return Next(self.unary())
            if value in self.env and self.peek()[0] != "(":
                bound = self.env[value]
                if isinstance(bound, Rule):
                    raise RuleInFormulaError(
                        f"strategy rule name {value!r} in formula position", pos)
                return bound
            return Prop(self._atom_text(value))
        raise ParseError(f"expected a formula but found {value or 'end of input'!r}", pos)

    def _atom_text(self, name: str) -> str:
        """Canonical text of ``name`` or ``name(arg,...)``."""
        if self.peek()[0] != "(":
            return name
        self.next()
        args = [self._arg()]
        while self.peek()[0] == ",":
            self.next()
            args.append(self._arg())
        self.expect(")")
        return f"{name}({','.join(args)})"

    def _term_args_required(self, pos: int) -> str:
        """An action term such as ``a(1,2)`` inside does(...)/legal(...)."""
        self.expect("(")
        kind, value, term_pos = self.next()
        if kind != "ident":
            raise ParseError("expected an action term", term_pos)
        term = self._atom_text(value)
        self.expect(")")
        return term

    def _arg(self) -> str:
        kind, value, pos = self.next()
        if kind not in ("int", "ident"):
            raise ParseError(f"expected an argument but found {value!r}", pos)
        return value


def parse_formula(text: str, env: Environment | None = None) -> Formula:
    parser = _Parser(text, env)
    formula = parser.formula()
    if not parser.at_end():
        kind, value, pos = parser.peek()
        if kind == "[":
            raise RuleInFormulaError("rule connective in formula position", pos)
        raise ParseError(f"unexpected trailing input {value!r}", pos)
    return formula


def parse_rule(text: str, env: Environment | None = None) -> Rule:
    parser = _Parser(text, env)
    rule = parser.rule()
    if not parser.at_end():
        kind, value, pos = parser.peek()
        raise ParseError(f"unexpected trailing input {value!r}", pos)
    return rule


def parse_definitions(text: str, env: Environment | None = None) -> dict[str, Definition]:
    """Parse a ``name := expr`` definitions file into an ordered mapping.

    Earlier names are visible to later definitions; entries from ``env``
    are visible to all of them.  Formula-valued definitions are stored as
    plain formulas so they can be spliced into larger formulas.
    """
    defined: dict[str, Definition] = dict(env) if env else {}
    out: dict[str, Definition] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":=" not in line:
            raise ParseError(f"line {lineno}: expected 'name := expression'")
        name_part, expr_part = line.split(":=", 1)
        name = name_part.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_@]*", name):
            raise ParseError(f"line {lineno}: bad definition name {name!r}")
        if name in _RESERVED:
            raise ParseError(f"line {lineno}: {name!r} is reserved")
        try:
            rule = parse_rule(expr_part.strip(), defined)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        value: Definition = rule.formula if isinstance(rule, RuleLeaf) else rule
        defined[name] = value
        out[name] = value
    return out
