"""Line-oriented knowledge-base files.

::

    # the bird example
    atoms bird penguin fly
    world w1 {} 0.888
    world w2 {fly} 0.002
    world w5 {bird, fly} 9/100
    payoff bold win 1 lose 1.5
    payoff reckless win 1 lose life

``atoms`` must come before any ``world``.  Masses are decimals or fractions
and are read exactly.  Worlds left out have mass 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .decision import UNBOUNDED, Payoff
from .errors import InvalidDensityError, KBSyntaxError
from .exact import to_rational
from .sentence import ATOM_NAME, RESERVED
from .worlds import Density, World, validate_density

_WORLD = re.compile(r"world\s+(?P<id>\S+)\s+\{(?P<atoms>[^}]*)\}\s*(?P<mass>\S*)\s*(?P<rest>.*)$")
_PAYOFF = re.compile(
    r"payoff\s+(?P<name>\S+)\s+win\s+(?P<win>\S+)\s+lose\s+(?P<lose>\S+)\s*(?P<rest>.*)$"
)
_ID = re.compile(r"[A-Za-z0-9_]+")


@dataclass
class KnowledgeBase:
    density: Density
    payoffs: dict[str, Payoff] = field(default_factory=dict)
    world_lines: tuple[int, ...] = ()
    path: str | None = None


def parse_kb(text: str, path: str | None = None) -> KnowledgeBase:
    universe: list[str] | None = None
    entries: list[tuple[World, object]] = []
    world_lines: list[int] = []
    payoffs: dict[str, Payoff] = {}

    def fail(message, lineno, column=1):
        raise KBSyntaxError(message, lineno, column, path)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        keyword = stripped.split()[0]

        if keyword == "atoms":
            if universe is not None:
                fail("atoms declared twice", lineno, indent + 1)
            universe = []
            for m in re.finditer(r"\S+", stripped):
                if m.start() == 0:
                    continue
                name = m.group()
                if not ATOM_NAME.fullmatch(name) or name in RESERVED:
                    fail(f"invalid atom name {name!r}", lineno, indent + m.start() + 1)
                if name in universe:
                    fail(f"atom {name} declared twice", lineno, indent + m.start() + 1)
                universe.append(name)

        elif keyword == "world":
            if universe is None:
                fail("world before atoms declaration", lineno, indent + 1)
            m = _WORLD.match(stripped)
            if m is None:
                fail("expected: world <id> {<atoms>} <mass>", lineno, indent + 1)
            col = lambda group: indent + m.start(group) + 1  # noqa: E731
            if not _ID.fullmatch(m["id"]):
                fail(f"invalid world id {m['id']!r}", lineno, col("id"))
            true_atoms = set()
            for a in re.finditer(r"[^\s,]+", m["atoms"]):
                if a.group() not in universe:
                    fail(
                        f"undeclared atom {a.group()!r}",
                        lineno,
                        indent + m.start("atoms") + a.start() + 1,
                    )
                true_atoms.add(a.group())
            if not m["mass"]:
                fail("missing probability", lineno, col("mass"))
            if m["rest"]:
                fail(f"unexpected {m['rest']!r}", lineno, col("rest"))
            try:
                mass = to_rational(m["mass"])
            except ValueError:
                fail(f"bad probability literal {m['mass']!r}", lineno, col("mass"))
            entries.append((World(m["id"], true_atoms), mass))
            world_lines.append(lineno)

        elif keyword == "payoff":
            m = _PAYOFF.match(stripped)
            if m is None:
                fail("expected: payoff <name> win <r> lose <r|life>", lineno, indent + 1)
            if m["rest"]:
                fail(f"unexpected {m['rest']!r}", lineno, indent + m.start("rest") + 1)
            try:
                loss = UNBOUNDED if m["lose"] == "life" else to_rational(m["lose"])
                payoffs[m["name"]] = Payoff(to_rational(m["win"]), loss)
            except ValueError as exc:
                fail(f"bad payoff: {exc}", lineno, indent + m.start("win") + 1)

        else:
            fail(f"unknown directive {keyword!r}", lineno, indent + 1)

    if universe is None:
        raise KBSyntaxError("missing atoms declaration", 1, 1, path)

    density = Density(tuple(universe), tuple(entries))
    report = validate_density(density)
    if not report.ok:
        lines = []
        for v in report.violations:
            where = ", ".join(str(world_lines[i]) for i in v.entries)
            lines.append(f"line {where}: {v.message}" if where else v.message)
        prefix = f"{path}: " if path else ""
        raise InvalidDensityError(report, prefix + "invalid density:\n  " + "\n  ".join(lines))
    return KnowledgeBase(density, payoffs, tuple(world_lines), path)


def read_kb(path) -> KnowledgeBase:
    return parse_kb(Path(path).read_text(encoding="utf-8"), str(path))


def load_kb(path) -> Density:
    """Read, parse and validate a KB file; returns its density."""
    return read_kb(path).density


def dump_kb(density: Density, payoffs: dict[str, Payoff] | None = None) -> str:
    lines = ["atoms " + " ".join(density.universe)]
    for world, mass in density.entries:
        atoms = ", ".join(a for a in density.universe if a in world.true_atoms)
        lines.append(f"world {world.id} {{{atoms}}} {mass}")
    for name, p in (payoffs or {}).items():
        lines.append(f"payoff {name} win {p.win} lose {p.loss}")
    return "\n".join(lines) + "\n"
