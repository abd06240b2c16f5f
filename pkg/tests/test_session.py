import random
from fractions import Fraction

import pytest

from betlogic.decision import UNBOUNDED, Payoff, decide
from betlogic.errors import ContradictionError, InvalidDensityError
from betlogic.sentence import TOP, And, Atom, conjoin, parse_sentence
from betlogic.session import Session, new_session
from betlogic.worlds import Density, World, lottery_density, tweety_density

from oracles import random_density, random_sentence

F = Fraction
FOR_FLY = Payoff(1, F(3, 2))
AGAINST_FLY = Payoff(F(3, 2), 1)


@pytest.fixture
def tweety():
    return new_session(tweety_density())


def test_new_session_starts_empty(tweety):
    assert tweety.evidence == TOP
    assert tweety.evidence_log == () and tweety.conclusion_log == ()


def test_invalid_density_refused():
    with pytest.raises(InvalidDensityError):
        Session(Density(("a",), ((World("w"), F(1, 2)),)))


def test_sessions_are_independent():
    d = tweety_density()
    one, two = Session(d), Session(d)
    one.tell("bird").ask("fly", FOR_FLY)
    assert two.evidence == TOP and two.conclusion_log == ()


def test_tell_accumulates_by_conjunction(tweety):
    tweety.tell("bird").tell("penguin")
    assert tweety.evidence == And(Atom("bird"), Atom("penguin"))
    assert tweety.evidence_log == (Atom("bird"), Atom("penguin"))


def test_contradiction_leaves_session_unchanged(tweety):
    tweety.tell("bird")
    with pytest.raises(ContradictionError):
        tweety.tell("false")
    with pytest.raises(ContradictionError):
        tweety.tell("~bird")
    assert tweety.evidence == Atom("bird") and len(tweety.evidence_log) == 1


def test_lottery_winners_are_exclusive():
    sess = Session(lottery_density(5))
    sess.tell("winner_1")
    with pytest.raises(ContradictionError):
        sess.tell("winner_2")


def test_entailed_fact_is_still_appended(tweety):
    tweety.tell("bird & penguin").tell("bird")
    assert len(tweety.evidence_log) == 2


def test_ask_follows_the_evidence(tweety):
    tweety.tell("bird")
    assert tweety.ask("fly", FOR_FLY).accepted
    tweety.tell("penguin")
    record = tweety.ask("fly", FOR_FLY)
    assert not record.accepted
    assert record.evidence_snapshot == parse_sentence("bird & penguin")
    assert record.decision.evidence == record.evidence_snapshot


def test_tautology_accepted_under_finite_stakes(tweety):
    assert tweety.ask(TOP, Payoff(1, 10**9)).accepted


def test_tweety_walkthrough_has_one_retraction(tweety):
    tweety.tell("bird")
    tweety.ask("fly", FOR_FLY)
    tweety.ask("~fly", AGAINST_FLY)
    tweety.tell("penguin")
    tweety.ask("fly", FOR_FLY)
    tweety.ask("~fly", AGAINST_FLY)
    flips = tweety.retractions()
    assert len(flips) == 1
    earlier, later = flips[0]
    assert earlier.query == later.query == Atom("fly")
    assert earlier.accepted and not later.accepted
    # the ~fly bet goes the other way: adopted, not retracted
    both = tweety.retractions(include_adoptions=True)
    assert len(both) == 2 and both[1][0].query == parse_sentence("~fly")


def test_no_retractions_without_repeats(tweety):
    tweety.tell("bird")
    tweety.ask("fly", FOR_FLY)
    tweety.ask("penguin", FOR_FLY)
    assert tweety.retractions() == []


def test_same_query_same_evidence_never_flips(tweety):
    tweety.tell("bird")
    tweety.ask("fly", FOR_FLY)
    tweety.ask("fly", FOR_FLY)
    assert tweety.retractions() == []


def test_different_payoffs_are_different_questions(tweety):
    tweety.tell("bird")
    tweety.ask("fly", FOR_FLY)
    tweety.tell("penguin")
    tweety.ask("fly", Payoff(1, 1))
    assert tweety.retractions() == []


def test_log_is_append_only(tweety):
    tweety.tell("bird")
    first = tweety.ask("fly", FOR_FLY)
    snapshot = tweety.conclusion_log
    tweety.tell("penguin")
    tweety.ask("fly", FOR_FLY)
    assert tweety.conclusion_log[: len(snapshot)] == snapshot
    assert tweety.conclusion_log[0] is first
    stamps = [r.timestamp for r in tweety.conclusion_log]
    assert stamps == sorted(set(stamps))
    assert [r.sequence_number for r in tweety.conclusion_log] == [0, 1]


def test_snapshot_replay_on_random_sessions():
    rng = random.Random(99)
    for _ in range(100):
        d = random_density(rng, max_atoms=5)
        sess = Session(d)
        for _ in range(6):
            if rng.random() < 0.4:
                try:
                    sess.tell(random_sentence(rng, d.universe, depth=2))
                except ContradictionError:
                    pass
            else:
                win, loss = rng.randint(1, 9), rng.choice([rng.randint(1, 9), UNBOUNDED])
                sess.ask(random_sentence(rng, d.universe), Payoff(win, loss))
        assert sess.evidence == conjoin(sess.evidence_log)
        for r in sess.conclusion_log:
            assert decide(d, r.query, r.evidence_snapshot, r.payoff) == r.decision


def test_lottery_at_breakeven_is_rejected():
    # with ten tickets each loser has probability exactly 9/10
    assert not Session(lottery_density(10)).ask("~winner_3", Payoff(1, 9)).accepted


@pytest.mark.parametrize("n", [11, 50, 400])
def test_no_chaining_in_lottery(n):
    sess = Session(lottery_density(n))
    payoff = Payoff(1, 9)  # breakeven 9/10 < (n-1)/n once n > 10
    for k in range(1, n + 1):
        assert sess.ask(f"~winner_{k}", payoff).accepted
    everyone = conjoin(parse_sentence(f"~winner_{k}") for k in range(1, n + 1))
    record = sess.ask(everyone, payoff)
    assert record.decision.probability == 0 and not record.accepted
