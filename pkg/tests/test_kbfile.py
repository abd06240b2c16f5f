from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from betlogic.decision import UNBOUNDED, Payoff
from betlogic.errors import InvalidDensityError, KBSyntaxError
from betlogic.kbfile import dump_kb, load_kb, parse_kb, read_kb
from betlogic.worlds import lottery_density, roulette_density, tweety_density, worlds_where

from oracles import densities

KB = Path(__file__).resolve().parent.parent / "kb"
F = Fraction


def test_tweety_file_matches_builtin_density():
    assert load_kb(KB / "tweety.kb").distribution() == tweety_density().distribution()


def test_roulette_and_lottery_files():
    assert load_kb(KB / "roulette.kb").distribution() == roulette_density().distribution()
    assert load_kb(KB / "lottery10.kb").distribution() == lottery_density(10).distribution()


def test_payoffs_are_read():
    kb = read_kb(KB / "tweety.kb")
    assert kb.payoffs == {"say_fly": Payoff(1, F(3, 2)), "say_not_fly": Payoff(F(3, 2), 1)}
    assert read_kb(KB / "roulette.kb").payoffs["life"] == Payoff(1, UNBOUNDED)


def test_worlds_keep_file_order():
    d = load_kb(KB / "tweety.kb")
    hits = worlds_where(d, "bird & penguin")
    assert [(w.id, m) for w, m in hits] == [("b_p_f", 0), ("b_p_nf", F(1, 100))]


def test_deficit_is_reported_with_amount():
    text = "atoms a\nworld x {a} 0.5\nworld y {} 0.4\n"
    with pytest.raises(InvalidDensityError) as info:
        parse_kb(text)
    assert "masses sum to 9/10 (deficit 1/10)" in str(info.value)
    assert info.value.report.deficit == F(1, 10)


def test_violations_point_at_lines():
    text = "atoms a\n\nworld x {a} 1/2\nworld y {a} 1/2\nworld z {} -1/2\n"
    with pytest.raises(InvalidDensityError) as info:
        parse_kb(text, "bad.kb")
    message = str(info.value)
    assert message.startswith("bad.kb: invalid density")
    assert "line 3, 4: worlds x, y assign the same truth values {a}" in message
    assert "line 5: world z has negative mass -1/2" in message
    assert {v.kind for v in info.value.report.violations} == {
        "duplicate-world", "negative-mass", "sum"}


def test_undeclared_atom_position():
    text = "atoms bird fly\nworld w1 {bird, penguin} 1\n"
    with pytest.raises(KBSyntaxError) as info:
        parse_kb(text, "t.kb")
    err = info.value
    assert (err.line, err.column) == (2, 17)
    assert "penguin" in str(err) and str(err).startswith("t.kb:2:17:")


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("world w {} 1\n", 1, 1, "before atoms"),
        ("atoms a\nworld w {} 1\nfoo bar\n", 3, 1, "unknown directive"),
        ("atoms a\nworld w {a} one\n", 2, 13, "bad probability"),
        ("atoms a\nworld w {a}\n", 2, 12, "missing probability"),
        ("atoms a\nworld w {a} 1 extra\n", 2, 15, "unexpected"),
        ("atoms a a\n", 1, 9, "declared twice"),
        ("atoms a true\n", 1, 9, "invalid atom"),
        ("atoms a\natoms b\n", 2, 1, "declared twice"),
        ("atoms a\nworld w-1 {a} 1\n", 2, 7, "invalid world id"),
        ("atoms a\npayoff p win 0 lose 1\n", 2, 14, "bad payoff"),
        ("atoms a\npayoff p lose 1\n", 2, 1, "expected"),
        ("# nothing here\n", 1, 1, "missing atoms"),
    ],
)
def test_syntax_errors(text, line, column, fragment):
    with pytest.raises(KBSyntaxError) as info:
        parse_kb(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in str(info.value)


def test_comments_blank_lines_and_indentation():
    text = "# header\n  atoms a b   # trailing\n\n  world w {a,b} 1/3\nworld v {} 2/3\n"
    d = parse_kb(text).density
    assert d.universe == ("a", "b")
    assert d.distribution() == {frozenset("ab"): F(1, 3), frozenset(): F(2, 3)}


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_kb(tmp_path / "absent.kb")


def test_dump_round_trip_with_payoffs():
    payoffs = {"even": Payoff(1, 1), "life": Payoff(1, UNBOUNDED), "odd": Payoff(F(1, 3), "2.5")}
    d = roulette_density()
    kb = parse_kb(dump_kb(d, payoffs))
    assert kb.density == d and kb.payoffs == payoffs


@given(densities())
def test_dump_parse_round_trip(d):
    assert parse_kb(dump_kb(d)).density == d
