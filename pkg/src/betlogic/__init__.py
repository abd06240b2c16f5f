"""Exact propositional probability logic with bets as conclusions.

A sentence is accepted on some evidence when its conditional probability,
computed by summing world masses of a joint density, strictly exceeds the
breakeven probability of the payoff attached to the bet.
"""

from .decision import UNBOUNDED, BetDecision, Payoff, Unbounded, breakeven, decide, decide_pair
from .errors import (
    ContradictionError,
    InvalidDensityError,
    KBSyntaxError,
    ParseError,
    ReasonerError,
    UnknownAtomError,
    ZeroEvidenceError,
)
from .kbfile import KnowledgeBase, dump_kb, load_kb, parse_kb, read_kb
from .sentence import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Const,
    Iff,
    Implies,
    Not,
    Or,
    ProbAssertion,
    Sentence,
    atoms_of,
    conjoin,
    eval_sentence,
    parse_assertion,
    parse_sentence,
    render,
)
from .session import ConclusionRecord, Session, new_session
from .worlds import (
    Density,
    DensityReport,
    World,
    cond_prob,
    dense_from_table,
    eval_assertion,
    lottery_density,
    make_density,
    prob,
    roulette_density,
    tweety_density,
    validate_density,
    worlds_where,
)

__version__ = "0.1.0"
