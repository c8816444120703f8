"""Engine for finite state-transition games and declarative strategies.

The package models turn-taking games as explicit state-transition
systems, evaluates temporal formulas over their reachable paths, reads
formulas a second way as per-player move recommendations, combines
recommendations with prioritised connectives, verifies game outcomes
under strategy compliance, and emits first-order (Situation Calculus
style) and answer-set-program translations of games plus strategies.
"""

from .compliance import ComplianceSpec, playouts, reduce_model, reduction_dead_ends, verify_claim
from .errors import (
    DomainError,
    GameFileError,
    NonTerminatingGameError,
    ParseError,
    PreconditionError,
    RuleInFormulaError,
    SolverUnavailableError,
    StratEngineError,
    TranslationError,
)
from .formulas import (
    Formula,
    PrioConj,
    PrioDisj,
    Rule,
    RuleLeaf,
    desugar,
    formula_to_text,
    modal_depth,
    rule_to_text,
)
from .games import (
    Game,
    GameFile,
    Move,
    Path,
    check_finitely_terminating,
    complete_paths,
    dead_end_states,
    legal_actions,
    load_game_file,
    omega,
    omega_i,
    player_moves_at,
    reachable_paths,
)
from .parser import parse_definitions, parse_formula, parse_rule
from .semantics import Judgment, Model, model_valid, satisfies, strategy_of_formula, valid_under_move
from .strategies import (
    ModelLeafResolver,
    RuleProperties,
    Strategy,
    TableLeafResolver,
    interpret_rule,
    is_complete,
    is_deterministic,
    is_functional,
    is_markovian,
    is_valid,
    make_strategy,
    represent_markovian,
    restrict,
    rule_properties,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
