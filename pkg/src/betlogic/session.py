"""Reasoning sessions: tell facts, ask for bets, watch conclusions get superseded.

Evidence only grows (by conjunction).  Every answer is stored as a
probability assertion indexed by the evidence it was drawn from, so an old
conclusion stays a true statement after new facts arrive; what changes is the
answer to the same question under the richer evidence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .decision import BetDecision, Payoff, decide
from .errors import ContradictionError, InvalidDensityError
from .sentence import Sentence, as_sentence, conjoin, render
from .worlds import Density, prob, validate_density


@dataclass(frozen=True)
class ConclusionRecord:
    sequence_number: int
    query: Sentence
    evidence_snapshot: Sentence
    payoff: Payoff
    decision: BetDecision
    timestamp: int

    @property
    def accepted(self) -> bool:
        return self.decision.accepted


class Session:
    """A single-writer reasoning session over a fixed density.

    ``tell`` returns the session itself so calls can be chained.
    """

    def __init__(self, density: Density):
        report = validate_density(density)
        if not report.ok:
            raise InvalidDensityError(report)
        self.density = density
        self._evidence: list[Sentence] = []
        self._conjunction: Sentence = conjoin(())
        self._records: list[ConclusionRecord] = []
        self._clock = itertools.count(1)

    @property
    def evidence_log(self) -> tuple[Sentence, ...]:
        return tuple(self._evidence)

    @property
    def conclusion_log(self) -> tuple[ConclusionRecord, ...]:
        return tuple(self._records)

    @property
    def evidence(self) -> Sentence:
        """Conjunction of every told fact (``true`` before the first)."""
        return self._conjunction

    def tell(self, fact: Sentence | str) -> Session:
        fact = as_sentence(fact)
        combined = fact if not self._evidence else self._conjunction & fact
        if prob(self.density, combined) == 0:
            raise ContradictionError(render(fact), render(self._conjunction))
        self._evidence.append(fact)
        self._conjunction = combined
        next(self._clock)
        return self

    def ask(self, query: Sentence | str, payoff: Payoff) -> ConclusionRecord:
        query = as_sentence(query)
        snapshot = self._conjunction
        decision = decide(self.density, query, snapshot, payoff)
        record = ConclusionRecord(
            sequence_number=len(self._records),
            query=query,
            evidence_snapshot=snapshot,
            payoff=payoff,
            decision=decision,
            timestamp=next(self._clock),
        )
        self._records.append(record)
        return record

    def retractions(
        self, include_adoptions: bool = False
    ) -> list[tuple[ConclusionRecord, ConclusionRecord]]:
        """Consecutive answers to the same (query, payoff) that changed verdict.

        Only accepted -> rejected flips are retractions; pass
        ``include_adoptions`` to also list rejected -> accepted flips.
        """
        last: dict[tuple[Sentence, Payoff], ConclusionRecord] = {}
        flips = []
        for record in self._records:
            key = (record.query, record.payoff)
            earlier = last.get(key)
            if earlier is not None and earlier.accepted != record.accepted:
                if earlier.accepted or include_adoptions:
                    flips.append((earlier, record))
            last[key] = record
        return flips


def new_session(density: Density) -> Session:
    return Session(density)
