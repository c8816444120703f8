"""Syntax trees for the temporal game language and for strategy rules.

Formulas are built from propositions, the pseudo-atoms ``does(a)``,
``legal(a)`` and ``wins(i)``, the constants ``init``/``terminal`` and
``true``/``false``, negation, conjunction and the one-step temporal
operator ``X``.  Disjunction, implication and equivalence are kept as
explicit node kinds so that printed output (and the first-order
translation) preserves the shape a user wrote; :func:`desugar` rewrites
them into the ``~``/``&`` core when a normal form is wanted.

Strategy rules form a second, separate layer: a rule is either a plain
formula (a leaf) or a prioritised disjunction/conjunction of rules.
The prioritised connectives are combinators over rules, not logical
connectives, so they never appear inside a formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class Formula:
    """Base class for formula nodes.  All nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return formula_to_text(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Does(Formula):
    action: str


@dataclass(frozen=True)
class Legal(Formula):
    action: str


@dataclass(frozen=True)
class Wins(Formula):
    player: str


@dataclass(frozen=True)
class Init(Formula):
    pass


@dataclass(frozen=True)
class Terminal(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class Next(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


#: Node kinds that survive desugaring.
CORE_KINDS = (Top, Bot, Prop, Does, Legal, Wins, Init, Terminal, Not, And, Next)

TRUE = Top()
FALSE = Bot()


def conj(formulas) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``true``."""
    out = None
    for f in formulas:
        out = f if out is None else And(out, f)
    return TRUE if out is None else out


def disj(formulas) -> Formula:
    """Left-folded disjunction; the empty disjunction is ``false``."""
    out = None
    for f in formulas:
        out = f if out is None else Or(out, f)
    return FALSE if out is None else out


def modal_depth(formula: Formula) -> int:
    """Maximum nesting of the temporal operator ``X``."""
    if isinstance(formula, Next):
        return 1 + modal_depth(formula.body)
    if isinstance(formula, Not):
        return modal_depth(formula.body)
    if isinstance(formula, (And, Or, Imp, Iff)):
        return max(modal_depth(formula.left), modal_depth(formula.right))
    return 0


def desugar(formula: Formula) -> Formula:
    """Rewrite ``|``, ``->`` and ``<->`` into the ``~``/``&`` core."""
    if isinstance(formula, Not):
        return Not(desugar(formula.body))
    if isinstance(formula, Next):
        return Next(desugar(formula.body))
    if isinstance(formula, And):
        return And(desugar(formula.left), desugar(formula.right))
    if isinstance(formula, Or):
        return Not(And(Not(desugar(formula.left)), Not(desugar(formula.right))))
    if isinstance(formula, Imp):
        return Not(And(desugar(formula.left), Not(desugar(formula.right))))
    if isinstance(formula, Iff):
        return And(desugar(Imp(formula.left, formula.right)),
                   desugar(Imp(formula.right, formula.left)))
    return formula


def subformulas(formula: Formula) -> Iterator[Formula]:
    """Pre-order traversal of the tree, the node itself included."""
    yield formula
    if isinstance(formula, (Not, Next)):
        yield from subformulas(formula.body)
    elif isinstance(formula, (And, Or, Imp, Iff)):
        yield from subformulas(formula.left)
        yield from subformulas(formula.right)


# Printer precedence, loosest first.  `->` is right-associative, the
# other binary connectives associate to the left.
_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_PREFIX, _PREC_ATOM = range(6)


def _prec(formula: Formula) -> int:
    if isinstance(formula, Iff):
        return _PREC_IFF
    if isinstance(formula, Imp):
        return _PREC_IMP
    if isinstance(formula, Or):
        return _PREC_OR
    if isinstance(formula, And):
        return _PREC_AND
    if isinstance(formula, (Not, Next)):
        return _PREC_PREFIX
    return _PREC_ATOM


def _wrap(formula: Formula, limit: int) -> str:
    text = formula_to_text(formula)
    if _prec(formula) < limit:
        return f"({text})"
    return text


def formula_to_text(formula: Formula) -> str:
    """Render a formula in the concrete syntax accepted by the parser."""
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Bot):
        return "false"
    if isinstance(formula, Prop):
        return formula.name
    if isinstance(formula, Does):
        return f"does({formula.action})"
    if isinstance(formula, Legal):
        return f"legal({formula.action})"
    if isinstance(formula, Wins):
        return f"wins({formula.player})"
    if isinstance(formula, Init):
        return "init"
    if isinstance(formula, Terminal):
        return "terminal"
    if isinstance(formula, Not):
        return "~" + _wrap(formula.body, _PREC_PREFIX)
    if isinstance(formula, Next):
        return "X " + _wrap(formula.body, _PREC_PREFIX)
    if isinstance(formula, And):
        return f"{_wrap(formula.left, _PREC_AND)} & {_wrap(formula.right, _PREC_AND + 1)}"
    if isinstance(formula, Or):
        return f"{_wrap(formula.left, _PREC_OR)} | {_wrap(formula.right, _PREC_OR + 1)}"
    if isinstance(formula, Imp):
        return f"{_wrap(formula.left, _PREC_IMP + 1)} -> {_wrap(formula.right, _PREC_IMP)}"
    if isinstance(formula, Iff):
        return f"{_wrap(formula.left, _PREC_IFF)} <-> {_wrap(formula.right, _PREC_IFF + 1)}"
    raise TypeError(f"not a formula node: {formula!r}")


class Rule:
    """Base class for strategy-rule nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return rule_to_text(self)


@dataclass(frozen=True)
class RuleLeaf(Rule):
    formula: Formula


@dataclass(frozen=True)
class PrioDisj(Rule):
    branches: tuple[Rule, ...]


@dataclass(frozen=True)
class PrioConj(Rule):
    branches: tuple[Rule, ...]


def leaf(formula: Formula) -> RuleLeaf:
    return RuleLeaf(formula)


def prio_disj(branches) -> Rule:
    """Prioritised disjunction; a single argument is the rule itself."""
    branches = tuple(branches)
    if not branches:
        raise ValueError("prioritised disjunction needs at least one argument")
    if len(branches) == 1:
        return branches[0]
    return PrioDisj(branches)


def prio_conj(branches) -> Rule:
    """Prioritised conjunction; a single argument is the rule itself."""
    branches = tuple(branches)
    if not branches:
        raise ValueError("prioritised conjunction needs at least one argument")
    if len(branches) == 1:
        return branches[0]
    return PrioConj(branches)


def rule_leaves(rule: Rule) -> Iterator[RuleLeaf]:
    """All leaves of a rule tree in left-to-right order."""
    if isinstance(rule, RuleLeaf):
        yield rule
    elif isinstance(rule, (PrioDisj, PrioConj)):
        for branch in rule.branches:
            yield from rule_leaves(branch)
    else:
        raise TypeError(f"not a rule node: {rule!r}")


def rule_modal_depth(rule: Rule) -> int:
    """Largest modal depth among the rule's leaf formulas."""
    return max(modal_depth(lf.formula) for lf in rule_leaves(rule))


def rule_to_text(rule: Rule) -> str:
    if isinstance(rule, RuleLeaf):
        return formula_to_text(rule.formula)
    if isinstance(rule, PrioDisj):
        return "PD[" + ", ".join(rule_to_text(b) for b in rule.branches) + "]"
    if isinstance(rule, PrioConj):
        return "PC[" + ", ".join(rule_to_text(b) for b in rule.branches) + "]"
    raise TypeError(f"not a rule node: {rule!r}")
