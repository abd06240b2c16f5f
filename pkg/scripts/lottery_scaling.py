"""Time the lottery scenario as the number of tickets grows.

For each n the script builds the uniform n-ticket density, asks every
``~winner_k`` and the full conjunction, and reports wall time per phase.
"""

import argparse
import time
from dataclasses import dataclass

from betlogic import Payoff, Session, lottery_density
from betlogic.sentence import conjoin, parse_sentence


@dataclass
class Config:
    sizes: tuple[int, ...] = (100, 1000, 5000, 10000, 20000)
    win: int = 1
    loss: int = 9
    repeats: int = 1


def run(n: int, cfg: Config) -> dict:
    t0 = time.perf_counter()
    d = lottery_density(n)
    sess = Session(d)
    t1 = time.perf_counter()
    payoff = Payoff(cfg.win, cfg.loss)
    losers = [parse_sentence(f"~winner_{k}") for k in range(1, n + 1)]
    accepted = sum(sess.ask(s, payoff).accepted for s in losers)
    t2 = time.perf_counter()
    conj = sess.ask(conjoin(losers), payoff)
    t3 = time.perf_counter()
    return {
        "n": n, "build": t1 - t0, "individual": t2 - t1, "conjunction": t3 - t2,
        "accepted": accepted, "conj_p": conj.decision.probability,
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=Config.sizes)
    parser.add_argument("--repeats", type=int, default=Config.repeats)
    args = parser.parse_args(argv)
    cfg = Config(sizes=tuple(args.sizes), repeats=args.repeats)

    print(f"{'n':>7} {'build':>8} {'asks':>8} {'conj':>8} {'accepted':>9}  P(conj)")
    for n in cfg.sizes:
        best = min((run(n, cfg) for _ in range(cfg.repeats)), key=lambda r: r["individual"])
        print(f"{best['n']:>7} {best['build']:8.3f} {best['individual']:8.3f} "
              f"{best['conjunction']:8.3f} {best['accepted']:>9}  {best['conj_p']}")


if __name__ == "__main__":
    main()
