"""Independent reference implementations used to check the library.

Nothing here goes through the bitset evaluator or the density index: sentences
are evaluated by plain recursion on a dict of truth values and probabilities
by enumerating every assignment of the universe.
"""

import functools
import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from betlogic.sentence import And, Atom, Const, Iff, Implies, Not, Or
from betlogic.worlds import World, dense_from_table, make_density


def truth(s, assignment):
    if isinstance(s, Const):
        return s.value
    if isinstance(s, Atom):
        return assignment[s.name]
    if isinstance(s, Not):
        return not truth(s.child, assignment)
    left, right = truth(s.left, assignment), truth(s.right, assignment)
    if isinstance(s, And):
        return left and right
    if isinstance(s, Or):
        return left or right
    if isinstance(s, Implies):
        return (not left) or right
    if isinstance(s, Iff):
        return left == right
    raise TypeError(s)


def assignments(universe):
    for values in itertools.product((False, True), repeat=len(universe)):
        yield dict(zip(universe, values))


def brute_prob(d, s):
    masses = {w.true_atoms: m for w, m in d.entries}
    total = Fraction(0)
    for a in assignments(d.universe):
        if truth(s, a):
            total += masses.get(frozenset(k for k, v in a.items() if v), Fraction(0))
    return total


def brute_cond_prob(d, s, e):
    p_e = brute_prob(d, e)
    if p_e == 0:
        return None
    return brute_prob(d, And(s, e)) / p_e


def equivalent(s, t, universe):
    return all(truth(s, a) == truth(t, a) for a in assignments(universe))


# -- seeded generators for fixed-count trials --------------------------------

def random_sentence(rng: random.Random, atoms, depth=4):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.1:
            return Const(rng.random() < 0.5)
        return Atom(rng.choice(atoms))
    kind = rng.randrange(6)
    if kind == 0:
        return Not(random_sentence(rng, atoms, depth - 1))
    node = (And, And, Or, Implies, Iff)[kind - 1]
    return node(random_sentence(rng, atoms, depth - 1), random_sentence(rng, atoms, depth - 1))


def random_density(rng: random.Random, max_atoms=8, sparse=None):
    n = rng.randint(1, max_atoms)
    universe = [f"a{i}" for i in range(n)]
    weights = [rng.choice((0, 0, rng.randint(1, 50))) for _ in range(1 << n)]
    if not any(weights):
        weights[rng.randrange(len(weights))] = 1
    total = sum(weights)
    masses = [Fraction(w, total) for w in weights]
    dense = dense_from_table(universe, masses)
    if sparse is None:
        sparse = rng.random() < 0.5
    if sparse:
        return to_sparse(dense, rng)
    return dense


def to_sparse(d, rng=None):
    """Same distribution, zero-mass worlds dropped, entries shuffled, fresh ids."""
    entries = [(w, m) for w, m in d.entries if m]
    if rng is not None:
        rng.shuffle(entries)
    return make_density(
        d.universe, [(World(f"s{i}", w.true_atoms), m) for i, (w, m) in enumerate(entries)]
    )


# -- hypothesis strategies ---------------------------------------------------

ATOMS = ("a", "b", "c", "d", "e")


@functools.lru_cache(maxsize=None)
def sentences(atoms=ATOMS, max_leaves=16):
    leaves = st.one_of(
        st.sampled_from(atoms).map(Atom),
        st.booleans().map(Const),
    )

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.tuples(children, children).map(lambda t: And(*t)),
            st.tuples(children, children).map(lambda t: Or(*t)),
            st.tuples(children, children).map(lambda t: Implies(*t)),
            st.tuples(children, children).map(lambda t: Iff(*t)),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@st.composite
def densities(draw, atoms=ATOMS[:4]):
    n = draw(st.integers(1, len(atoms)))
    universe = list(atoms[:n])
    weights = draw(st.lists(st.integers(0, 30), min_size=1 << n, max_size=1 << n))
    if not any(weights):
        weights[draw(st.integers(0, len(weights) - 1))] = 1
    total = sum(weights)
    return dense_from_table(universe, [Fraction(w, total) for w in weights])


def payoffs():
    from betlogic.decision import UNBOUNDED, Payoff

    stakes = st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=100)
    return st.one_of(
        st.builds(Payoff, stakes, stakes),
        st.builds(Payoff, stakes, st.just(UNBOUNDED)),
    )
