"""Sweep the acceptance threshold over the bird density.

Shows which sentences a reasoner accepts as it moves from brave (threshold
near 0: anything possible is accepted) to cautious (threshold near 1: only
what holds in every world of positive mass).  The familiar rule "accept S
when P(S) > 1 - eps" is the row with threshold 1 - eps.
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from betlogic import Payoff, breakeven, decide, tweety_density
from betlogic.exact import format_decimal

DEFAULT_SENTENCES = ["fly", "~fly", "bird -> fly", "penguin -> ~fly", "penguin -> bird", "true"]


@dataclass
class Config:
    thresholds: list[Fraction] = field(default_factory=lambda: [
        Fraction(1, 1000), Fraction(1, 10), Fraction(1, 2), Fraction(3, 5),
        Fraction(9, 10), Fraction(99, 100), Fraction(999, 1000),
    ])
    sentences: list[str] = field(default_factory=lambda: list(DEFAULT_SENTENCES))
    evidence: str = "true"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--given", default=Config.evidence)
    parser.add_argument("--sentence", action="append", dest="sentences")
    args = parser.parse_args(argv)
    cfg = Config(evidence=args.given)
    if args.sentences:
        cfg.sentences = args.sentences

    d = tweety_density()
    width = max(len(s) for s in cfg.sentences)
    print(f"evidence: {cfg.evidence}")
    print(f"{'threshold':>10}  " + "  ".join(f"{s:^{width}}" for s in cfg.sentences))
    for b in cfg.thresholds:
        payoff = Payoff(1 - b, b)  # breakeven b
        assert breakeven(payoff) == b
        marks = [
            "yes" if decide(d, s, cfg.evidence, payoff).accepted else "-"
            for s in cfg.sentences
        ]
        print(f"{format_decimal(b):>10}  " + "  ".join(f"{m:^{width}}" for m in marks))


if __name__ == "__main__":
    main()
