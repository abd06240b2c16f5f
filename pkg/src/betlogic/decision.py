"""Payoffs, breakeven thresholds and the acceptance rule.

A sentence is accepted on evidence exactly when its conditional probability
is strictly greater than the breakeven probability of the bet.  Utilities are
linear in the stakes, so for a bet that wins ``w`` when right and loses ``l``
when wrong the expected value ``p*w - (1-p)*l`` is zero at ``p = l/(w+l)``.

The familiar "accept if P(S) > 1 - eps" rule is the special case of a payoff
whose breakeven is ``1 - eps`` (``win = eps``, ``loss = 1 - eps``).  Pushing
the threshold towards 1 makes the reasoner cautious; pushing it towards 0
makes it accept any sentence with positive probability.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import to_rational
from .sentence import Not, ProbAssertion, Sentence, as_sentence
from .worlds import Density, cond_prob


class Unbounded(enum.Enum):
    """A loss no finite gain can compensate (the bettor's life)."""

    LOSS = "life"

    def __str__(self):
        return "life"


UNBOUNDED = Unbounded.LOSS

Loss = Union[Fraction, Unbounded]


@dataclass(frozen=True)
class Payoff:
    """Stakes of a bet: gain ``win`` if right, lose ``loss`` if wrong."""

    win: Fraction
    loss: Loss

    def __post_init__(self):
        win = to_rational(self.win)
        if win <= 0:
            raise ValueError(f"win must be positive, got {win}")
        object.__setattr__(self, "win", win)
        if self.loss is not UNBOUNDED:
            loss = to_rational(self.loss)
            if loss <= 0:
                raise ValueError(f"loss must be positive, got {loss}")
            object.__setattr__(self, "loss", loss)

    @property
    def unbounded(self) -> bool:
        return self.loss is UNBOUNDED

    def __str__(self):
        return f"win {self.win} lose {self.loss}"


def breakeven(p: Payoff) -> Fraction:
    """Probability at which the bet has zero expected value; 1 for unbounded loss."""
    if p.unbounded:
        return Fraction(1)
    return p.loss / (p.win + p.loss)


@dataclass(frozen=True)
class BetDecision:
    query: Sentence
    evidence: Sentence
    probability: Fraction
    threshold: Fraction
    accepted: bool
    conclusion: ProbAssertion


def decide(d: Density, s: Sentence | str, e: Sentence | str, p: Payoff) -> BetDecision:
    """Bet on ``s`` given ``e`` under payoff ``p`` iff ``P(s | e) > breakeven(p)``.

    An unbounded loss is never accepted, not even at probability 1.
    """
    s, e = as_sentence(s), as_sentence(e)
    probability = cond_prob(d, s, e)
    threshold = breakeven(p)
    accepted = probability > threshold and not p.unbounded
    conclusion = ProbAssertion(s, e, threshold, negated=not accepted)
    return BetDecision(s, e, probability, threshold, accepted, conclusion)


def decide_pair(
    d: Density, s: Sentence | str, e: Sentence | str, p_for: Payoff, p_against: Payoff
) -> tuple[BetDecision, BetDecision]:
    """Independent decisions on ``s`` (stakes ``p_for``) and ``~s`` (``p_against``)."""
    s = as_sentence(s)
    return decide(d, s, e, p_for), decide(d, Not(s), e, p_against)
