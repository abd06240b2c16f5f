"""Possible worlds, joint densities and exact (conditional) probabilities.

A density is a sparse list of worlds with rational masses; worlds it does not
list have mass 0.  Probabilities are computed by enumerating the listed worlds
and adding the masses of those where a sentence is true.  The enumeration runs
bitwise: every atom gets an integer whose bit ``i`` says whether it holds in
world ``i``, so one pass over the sentence evaluates it in all worlds at once.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import InvalidDensityError, UnknownAtomError, ZeroEvidenceError
from .exact import to_rational
from .sentence import ATOM_NAME, RESERVED, ProbAssertion, Sentence, as_sentence, atoms_of, render, truth_mask

TABLE_ATOM_LIMIT = 20


@dataclass(frozen=True)
class World:
    """A truth assignment: atoms in ``true_atoms`` are true, all others false."""

    id: str
    true_atoms: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "true_atoms", frozenset(self.true_atoms))

    def __str__(self):
        return f"{self.id} {{{', '.join(sorted(self.true_atoms))}}}"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    entries: tuple[int, ...] = ()


@dataclass(frozen=True)
class DensityReport:
    total: Fraction
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def deficit(self) -> Fraction:
        """``1 - total``; negative when the masses overshoot."""
        return 1 - self.total


class _Index:
    """Bitset view of a density, built once per density on first query."""

    def __init__(self, density: Density):
        self.full = (1 << len(density.entries)) - 1
        self.universe = frozenset(density.universe)
        self.atom_masks = dict.fromkeys(density.universe, 0)
        by_mass: dict[Fraction, int] = defaultdict(int)
        for i, (world, mass) in enumerate(density.entries):
            bit = 1 << i
            for name in world.true_atoms:
                if name in self.atom_masks:
                    self.atom_masks[name] |= bit
            if mass:
                by_mass[mass] |= bit
        self.denominator = lcm(*(m.denominator for m in by_mass)) if by_mass else 1
        # worlds sharing a mass are summed with one popcount
        self.groups = [
            (m.numerator * (self.denominator // m.denominator), bits)
            for m, bits in by_mass.items()
        ]

    def mass(self, mask: int) -> Fraction:
        total = sum(num * (mask & bits).bit_count() for num, bits in self.groups)
        return Fraction(total, self.denominator)


@dataclass(frozen=True)
class Density:
    """Joint probability density over the worlds of ``universe``.

    Construct through :func:`make_density` (or the table/lottery builders) to
    get a validated instance; the query functions assume validity.
    """

    universe: tuple[str, ...]
    entries: tuple[tuple[World, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(
            self, "entries", tuple((w, to_rational(m)) for w, m in self.entries)
        )

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def worlds(self) -> tuple[World, ...]:
        return tuple(w for w, _ in self.entries)

    def distribution(self) -> dict[frozenset[str], Fraction]:
        """Assignment -> mass mapping, for order-insensitive comparison."""
        return {w.true_atoms: m for w, m in self.entries}

    @cached_property
    def _index(self) -> _Index:
        return _Index(self)

    def mask(self, s: Sentence) -> int:
        """Bitset of the entries whose world satisfies ``s``."""
        index = self._index
        unknown = atoms_of(s) - index.universe
        if unknown:
            raise UnknownAtomError(unknown)
        return truth_mask(s, index.atom_masks.__getitem__, index.full)


def validate_density(d: Density) -> DensityReport:
    """Check every density invariant and report all violations found."""
    violations = []
    seen_atoms = set()
    for name in d.universe:
        if not isinstance(name, str) or not ATOM_NAME.fullmatch(name) or name in RESERVED:
            violations.append(Violation("bad-atom", f"invalid atom name {name!r}"))
        elif name in seen_atoms:
            violations.append(Violation("duplicate-atom", f"atom {name} declared twice"))
        seen_atoms.add(name)

    by_assignment: dict[frozenset[str], list[int]] = defaultdict(list)
    by_id: dict[str, list[int]] = defaultdict(list)
    total = Fraction(0)
    for i, (world, mass) in enumerate(d.entries):
        total += mass
        if mass < 0:
            violations.append(
                Violation("negative-mass", f"world {world.id} has negative mass {mass}", (i,))
            )
        stray = world.true_atoms - seen_atoms
        if stray:
            violations.append(Violation(
                "unknown-atom",
                f"world {world.id} uses undeclared atom(s) {', '.join(sorted(stray))}",
                (i,),
            ))
        by_assignment[world.true_atoms].append(i)
        by_id[world.id].append(i)

    for assignment, idx in by_assignment.items():
        if len(idx) > 1:
            ids = ", ".join(d.entries[i][0].id for i in idx)
            violations.append(Violation(
                "duplicate-world",
                f"worlds {ids} assign the same truth values {{{', '.join(sorted(assignment))}}}",
                tuple(idx),
            ))
    for world_id, idx in by_id.items():
        if len(idx) > 1:
            violations.append(
                Violation("duplicate-id", f"world id {world_id} used {len(idx)} times", tuple(idx))
            )
    if total != 1:
        gap = "deficit" if total < 1 else "excess"
        violations.append(
            Violation("sum", f"masses sum to {total} ({gap} {abs(1 - total)})")
        )
    return DensityReport(total, tuple(violations))


def make_density(universe: Iterable[str], entries: Iterable[tuple[World, object]]) -> Density:
    """Build a density and raise InvalidDensityError unless it is valid."""
    d = Density(tuple(universe), tuple(entries))
    report = validate_density(d)
    if not report.ok:
        raise InvalidDensityError(report)
    return d


def prob(d: Density, s: Sentence | str) -> Fraction:
    """Total mass of the worlds where ``s`` holds."""
    return d._index.mass(d.mask(as_sentence(s)))


def cond_prob(d: Density, s: Sentence | str, e: Sentence | str) -> Fraction:
    """``P(s | e) = P(s & e) / P(e)``; ZeroEvidenceError when ``P(e) = 0``."""
    s, e = as_sentence(s), as_sentence(e)
    index = d._index
    evidence_mask = d.mask(e)
    p_e = index.mass(evidence_mask)
    if p_e == 0:
        raise ZeroEvidenceError(render(e))
    return index.mass(d.mask(s) & evidence_mask) / p_e


def eval_assertion(d: Density, a: ProbAssertion) -> bool:
    return a.holds_for(cond_prob(d, a.sentence, a.evidence))


def worlds_where(d: Density, s: Sentence | str) -> list[tuple[World, Fraction]]:
    """Entries whose world satisfies ``s``, in declaration order."""
    mask = d.mask(as_sentence(s))
    return [entry for i, entry in enumerate(d.entries) if mask >> i & 1]


def dense_from_table(universe: Sequence[str], masses: Sequence[object]) -> Density:
    """Density from a full joint table.

    Row ``i`` of the table is the assignment whose bits, first atom most
    significant, spell ``i`` in binary (false before true).
    """
    universe = tuple(universe)
    n = len(universe)
    if n > TABLE_ATOM_LIMIT:
        raise ValueError(f"table over {n} atoms exceeds the {TABLE_ATOM_LIMIT}-atom limit")
    if len(masses) != 1 << n:
        raise ValueError(f"{n} atoms need {1 << n} masses, got {len(masses)}")
    entries = []
    for i, mass in enumerate(masses):
        bits = format(i, f"0{n}b") if n else ""
        true_atoms = frozenset(a for a, b in zip(universe, bits) if b == "1")
        entries.append((World(f"w{bits}", true_atoms), mass))
    return make_density(universe, entries)


def lottery_density(n: int) -> Density:
    """``n`` equally likely worlds; in world ``k`` exactly ticket ``k`` wins."""
    if n < 1:
        raise ValueError("a lottery needs at least one ticket")
    universe = tuple(f"winner_{k}" for k in range(1, n + 1))
    mass = Fraction(1, n)
    return make_density(
        universe, ((World(f"ticket_{k}", {f"winner_{k}"}), mass) for k in range(1, n + 1))
    )


TWEETY_ATOMS = ("bird", "penguin", "fly")
# rows in dense_from_table order: (bird, penguin, fly) from 000 to 111
TWEETY_MASSES = ("0.888", "0.002", "0", "0", "0.010", "0.090", "0.010", "0")


def tweety_density() -> Density:
    """Joint density over bird, penguin and fly used by the bird demo."""
    return dense_from_table(TWEETY_ATOMS, TWEETY_MASSES)


def roulette_density(chambers: int = 6) -> Density:
    """A spun revolver with one bullet: the spin lands on each chamber equally.

    Chamber atoms keep the worlds distinct; ``fires`` holds only in the world
    where the loaded chamber comes up.
    """
    universe = ("fires",) + tuple(f"chamber_{k}" for k in range(1, chambers + 1))
    entries = []
    for k in range(1, chambers + 1):
        atoms = {f"chamber_{k}"} | ({"fires"} if k == 1 else set())
        entries.append((World(f"chamber_{k}", atoms), Fraction(1, chambers)))
    return make_density(universe, entries)
