"""Scripted, self-checking scenarios: the bird, the lottery and the revolver.

Each demo prints every probability, threshold and conclusion it derives and
compares its outcomes with the expected ones; ``DemoResult.failures`` lists
the differences (empty when the demo reproduces every expected outcome).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .decision import UNBOUNDED, BetDecision, Payoff, breakeven
from .exact import format_decimal, format_fraction
from .sentence import parse_sentence, render
from .session import ConclusionRecord, Session
from .worlds import Density, lottery_density, roulette_density, tweety_density

_LOSER = re.compile(r"\bloser_(\d+)\b")


def expand_lottery_sugar(text: str) -> str:
    """Rewrite the shorthand ``loser_k`` as ``~winner_k``."""
    return _LOSER.sub(r"~winner_\1", text)


def abbreviate(text: str, keep: int = 2) -> str:
    """Shorten long conjunctions to ``a & b & ... & z`` for display."""
    parts = text.split(" & ")
    if len(parts) <= 2 * keep + 2:
        return text
    return " & ".join(parts[:keep] + ["..."] + parts[-1:])


def _rational(q: Fraction) -> str:
    return f"{format_fraction(q)} ≈ {format_decimal(q)}"


def describe(decision: BetDecision) -> list[str]:
    q = render(decision.query, bar_safe=True)
    e = render(decision.evidence)
    verdict = "accept" if decision.accepted else "reject"
    return [
        abbreviate(f"  P({q} | {e}) = {_rational(decision.probability)}"),
        f"  breakeven {_rational(decision.threshold)} -> {verdict}",
        "  conclusion: " + abbreviate(decision.conclusion.render()),
    ]


@dataclass
class DemoResult:
    name: str
    lines: list[str] = field(default_factory=list)
    conclusions: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    sessions: list[Session] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def records(self) -> list[ConclusionRecord]:
        return [r for s in self.sessions for r in s.conclusion_log]

    def expect(self, label: str, actual, expected):
        if actual != expected:
            self.failures.append(f"{label}:\n  - expected: {expected}\n  + actual:   {actual}")

    def note(self, record: ConclusionRecord, header: str):
        self.lines.append(header)
        self.lines.extend(describe(record.decision))
        self.conclusions.append(abbreviate(record.decision.conclusion.render()))


def _density_lines(d: Density) -> list[str]:
    lines = [f"density over {{{', '.join(d.universe)}}}:"]
    for world, mass in d.entries:
        lines.append(f"  {world.id:<10} {{{', '.join(sorted(world.true_atoms))}}} {mass}")
    return lines


def tweety() -> DemoResult:
    out = DemoResult("tweety")
    d = tweety_density()
    out.lines.extend(_density_lines(d))
    for_fly = Payoff(1, Fraction(3, 2))
    against_fly = Payoff(Fraction(3, 2), 1)
    out.lines.append(f"say fly:  {for_fly} (breakeven {breakeven(for_fly)})")
    out.lines.append(f"say ~fly: {against_fly} (breakeven {breakeven(against_fly)})")

    sess = Session(d)
    out.sessions.append(sess)
    probabilities = []
    for fact in ("bird", "penguin"):
        sess.tell(fact)
        out.lines.append(f"tell {fact}")
        for query, payoff in (("fly", for_fly), ("~fly", against_fly)):
            record = sess.ask(query, payoff)
            out.note(record, f"ask {query} ({payoff})")
            probabilities.append(record.decision.probability)

    flips = sess.retractions()
    out.lines.append(f"retractions: {len(flips)}")
    for earlier, later in flips:
        out.lines.append(f"  #{earlier.sequence_number} {earlier.decision.conclusion}")
        out.lines.append(f"  #{later.sequence_number} {later.decision.conclusion}")

    out.expect("probabilities", probabilities,
               [Fraction(9, 11), Fraction(2, 11), Fraction(0), Fraction(1)])
    out.expect("conclusions", out.conclusions, [
        "P(fly | bird) > 3/5",
        "~(P(~fly | bird) > 2/5)",
        "~(P(fly | bird & penguin) > 3/5)",
        "P(~fly | bird & penguin) > 2/5",
    ])
    out.expect("retractions", [(a.sequence_number, b.sequence_number) for a, b in flips], [(0, 2)])
    return out


def lottery(n: int = 10000) -> DemoResult:
    out = DemoResult("lottery")
    d = lottery_density(n)
    payoff = Payoff(1, 9)
    threshold = breakeven(payoff)
    out.lines.append(f"{n} tickets, exactly one wins; every ticket equally likely")
    out.lines.append(f"bet on each loser: {payoff} (breakeven {threshold})")

    sess = Session(d)
    out.sessions.append(sess)
    individual = []
    for k in range(1, n + 1):
        record = sess.ask(parse_sentence(expand_lottery_sugar(f"loser_{k}")), payoff)
        dec = record.decision
        verdict = "accept" if dec.accepted else "reject"
        out.lines.append(
            f"loser_{k}: P({render(dec.query)} | true) = {_rational(dec.probability)}"
            f" vs {threshold} -> {verdict}: {dec.conclusion}"
        )
        out.conclusions.append(str(dec.conclusion))
        individual.append(record)

    out.lines.append("chaining the accepted conclusions would claim that no ticket wins;")
    out.lines.append("evaluated directly, the conjunction is impossible:")
    everyone = " & ".join(f"loser_{k}" for k in range(1, n + 1))
    conj = sess.ask(parse_sentence(expand_lottery_sugar(everyone)), payoff)
    out.note(conj, "ask " + abbreviate(everyone))

    out.expect("individual bets accepted",
               sum(r.accepted for r in individual), n)
    out.expect("individual probability",
               {r.decision.probability for r in individual}, {Fraction(n - 1, n)})
    out.expect("conjunction probability", conj.decision.probability, Fraction(0))
    out.expect("conjunction accepted", conj.accepted, False)
    return out


def roulette() -> DemoResult:
    out = DemoResult("roulette")
    d = roulette_density()
    out.lines.append("one bullet, five empty chambers, cylinder spun")
    out.lines.extend(_density_lines(d))
    sess = Session(d)
    out.sessions.append(sess)

    even = sess.ask("~fires", Payoff(1, 1))
    out.note(even, "scenario 1: win $1, lose $1")
    life = sess.ask("~fires", Payoff(1, UNBOUNDED))
    out.note(life, "scenario 2: win $1, lose your life")

    out.lines.append("breakeven for a loss of i against a win of 1 tends to 1:")
    verdicts = []
    for i in (1, 2, 4, 5, 10, 100, 1000, 10**6):
        record = sess.ask("~fires", Payoff(1, i))
        dec = record.decision
        verdicts.append(dec.accepted)
        out.lines.append(
            f"  i = {i}: breakeven {_rational(dec.threshold)}"
            f" -> {'accept' if dec.accepted else 'reject'}"
        )

    out.expect("scenario 1", (even.decision.probability, even.decision.threshold, even.accepted),
               (Fraction(5, 6), Fraction(1, 2), True))
    out.expect("scenario 2", (life.decision.threshold, life.accepted), (Fraction(1), False))
    out.expect("limit verdicts", verdicts, [True, True, True, False, False, False, False, False])
    return out


DEMOS = {"tweety": tweety, "lottery": lottery, "roulette": roulette}


def run_demo(name: str) -> DemoResult:
    if name not in DEMOS:
        raise ValueError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    return DEMOS[name]()
