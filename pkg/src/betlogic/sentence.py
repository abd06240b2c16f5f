"""Propositional sentences, flat probability assertions, and their text syntax.

Grammar, loosest binding first::

    assertion := '~' '(' prob ')' | '~' prob | prob
    prob      := 'P' '(' sentence [ '|' sentence ] ')' '>' NUMBER
    sentence  := imp ( '<->' imp )*        right-associative
    imp       := or ( '->' or )*           right-associative
    or        := and ( '|' and )*          left-associative
    and       := unary ( '&' unary )*      left-associative
    unary     := '~' unary | primary
    primary   := IDENT | 'true' | 'false' | '(' sentence ')'

Inside ``P( ... )`` the first top-level ``|`` is the conditioning bar, so a
disjunctive query must be parenthesised: ``P((a | b) | c) > 1/2``.  Everything
after the bar is evidence and may use ``|`` freely.

All traversals are iterative along the associative spines so that sentences
with tens of thousands of conjuncts (the lottery) parse, render, compare and
evaluate without hitting the recursion limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, ClassVar, Iterable, Iterator, NamedTuple

from .errors import ParseError, UnknownAtomError
from .exact import to_rational

RESERVED = frozenset({"true", "false", "P"})
ATOM_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

# binding strength, higher binds tighter
IFF, IMP, OR, AND, NOT, ATOMIC = 1, 2, 3, 4, 5, 6


class Sentence:
    """Base of the propositional AST.

    Nodes are immutable, compare structurally and hash consistently.  ``&``,
    ``|`` and ``~`` build conjunctions, disjunctions and negations.
    """

    precedence: ClassVar[int] = ATOMIC

    def children(self) -> tuple[Sentence, ...]:
        return ()

    def _leaf_key(self):
        return None

    def __eq__(self, other):
        if not isinstance(other, Sentence):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b):
                return False
            ha, hb = a.__dict__.get("_hash"), b.__dict__.get("_hash")
            if ha is not None and hb is not None and ha != hb:
                return False
            if a._leaf_key() != b._leaf_key():
                return False
            stack.extend(zip(a.children(), b.children()))
        return True

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            for node in postorder(self, skip=lambda n: "_hash" in n.__dict__):
                key = node._leaf_key()
                if key is None:
                    key = tuple(c.__dict__["_hash"] for c in node.children())
                object.__setattr__(node, "_hash", hash((type(node).__name__, key)))
            h = self.__dict__["_hash"]
        return h

    def __and__(self, other: Sentence) -> Sentence:
        return And(self, other)

    def __or__(self, other: Sentence) -> Sentence:
        return Or(self, other)

    def __invert__(self) -> Sentence:
        return Not(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"{type(self).__name__}<{render(self)}>"


@dataclass(frozen=True, eq=False, repr=False)
class Const(Sentence):
    value: bool

    def _leaf_key(self):
        return ("const", self.value)


@dataclass(frozen=True, eq=False, repr=False)
class Atom(Sentence):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not ATOM_NAME.fullmatch(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"{self.name!r} is reserved and cannot name an atom")

    def _leaf_key(self):
        return ("atom", self.name)


@dataclass(frozen=True, eq=False, repr=False)
class Not(Sentence):
    child: Sentence
    precedence: ClassVar[int] = NOT

    def children(self):
        return (self.child,)


@dataclass(frozen=True, eq=False, repr=False)
class _Binary(Sentence):
    left: Sentence
    right: Sentence
    symbol: ClassVar[str] = ""
    right_assoc: ClassVar[bool] = False

    def children(self):
        return (self.left, self.right)

    @staticmethod
    def combine(left: int, right: int, full: int) -> int:
        raise NotImplementedError


class And(_Binary):
    precedence = AND
    symbol = "&"

    @staticmethod
    def combine(left, right, full):
        return left & right


class Or(_Binary):
    precedence = OR
    symbol = "|"

    @staticmethod
    def combine(left, right, full):
        return left | right


class Implies(_Binary):
    precedence = IMP
    symbol = "->"
    right_assoc = True

    @staticmethod
    def combine(left, right, full):
        return (full ^ left) | right


class Iff(_Binary):
    precedence = IFF
    symbol = "<->"
    right_assoc = True

    @staticmethod
    def combine(left, right, full):
        return full ^ (left ^ right)


TOP = Const(True)
BOTTOM = Const(False)


def conjoin(sentences: Iterable[Sentence]) -> Sentence:
    """Left-nested conjunction; ``true`` for an empty iterable."""
    result = None
    for s in sentences:
        result = s if result is None else And(result, s)
    return TOP if result is None else result


def postorder(s: Sentence, skip: Callable[[Sentence], bool] | None = None) -> Iterator[Sentence]:
    """Yield every node after its children, without recursion.

    Subtrees whose root satisfies ``skip`` are not visited at all.
    """
    stack = [(s, False)]
    while stack:
        node, expanded = stack.pop()
        if skip is not None and skip(node):
            continue
        kids = node.children()
        if expanded or not kids:
            yield node
            continue
        stack.append((node, True))
        stack.extend((c, False) for c in reversed(kids))


def atoms_of(s: Sentence) -> frozenset[str]:
    """Names of all atoms referenced in ``s``."""
    return frozenset(n.name for n in postorder(s) if isinstance(n, Atom))


def truth_mask(s: Sentence, lookup: Callable[[str], int], full: int) -> int:
    """Evaluate ``s`` bitwise over many assignments at once.

    Bit ``i`` of ``lookup(name)`` is the value of atom ``name`` in assignment
    ``i`` and ``full`` has one bit per assignment.  With ``full == 1`` this is
    plain two-valued evaluation of a single assignment.
    """
    values: list[int] = []
    for node in postorder(s):
        if isinstance(node, Atom):
            values.append(lookup(node.name))
        elif isinstance(node, Const):
            values.append(full if node.value else 0)
        elif isinstance(node, Not):
            values.append(full ^ values.pop())
        else:
            right = values.pop()
            left = values.pop()
            values.append(node.combine(left, right, full))
    return values.pop()


def eval_sentence(s: Sentence, world, universe: Iterable[str] | None = None) -> bool:
    """Truth of ``s`` in ``world`` (a World or any set of true atom names).

    Atoms absent from the world are false.  When ``universe`` is given, every
    atom of ``s`` must belong to it.
    """
    true_atoms = getattr(world, "true_atoms", world)
    if universe is not None:
        unknown = atoms_of(s) - frozenset(universe)
        if unknown:
            raise UnknownAtomError(unknown)
    return truth_mask(s, lambda name: 1 if name in true_atoms else 0, 1) == 1


# -- rendering --------------------------------------------------------------

def render(s: Sentence, *, bar_safe: bool = False) -> str:
    """Canonical ASCII text for ``s``; reparsing gives back the same tree.

    With ``bar_safe`` every disjunction that would appear at the top level is
    parenthesised, as required for the query slot of ``P( ... | ... )``.
    """
    if isinstance(s, Atom):
        return s.name
    if isinstance(s, Const):
        return "true" if s.value else "false"
    if isinstance(s, Not):
        depth = 0
        while isinstance(s, Not):
            depth += 1
            s = s.child
        return "~" * depth + _operand(s, s.precedence < NOT, bar_safe)
    if isinstance(s, Or) and bar_safe:
        return "(" + render(s) + ")"

    kind = type(s)
    # collect the associative spine iteratively
    operands = []
    node = s
    if kind.right_assoc:
        while type(node) is kind:
            operands.append(node.left)
            node = node.right
        operands.append(node)
        inner, last = operands[:-1], operands[-1]
        parts = [_operand(o, o.precedence <= kind.precedence, bar_safe) for o in inner]
        parts.append(_operand(last, last.precedence < kind.precedence, bar_safe))
    else:
        while type(node) is kind:
            operands.append(node.right)
            node = node.left
        operands.append(node)
        operands.reverse()
        first, rest = operands[0], operands[1:]
        parts = [_operand(first, first.precedence < kind.precedence, bar_safe)]
        parts.extend(_operand(o, o.precedence <= kind.precedence, bar_safe) for o in rest)
    return f" {kind.symbol} ".join(parts)


def _operand(s: Sentence, parens: bool, bar_safe: bool) -> str:
    if parens:
        return "(" + render(s) + ")"
    return render(s, bar_safe=bar_safe)


# -- lexing -----------------------------------------------------------------

class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d+)?|\.\d+)(?:/\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op><->|->|[~&|()>])
    """,
    re.VERBOSE,
)

_DESCRIBE = {"ident": "identifier", "number": "number", "eof": "end of input"}
_OPERAND_START = ("ident", "true", "false", "(", "~")
_CONTINUATIONS = ("&", "|", "->", "<->")


def _describe(kind: str) -> str:
    return _DESCRIBE.get(kind, repr(kind))


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, found=text[pos])
        kind = m.lastgroup
        if kind == "op":
            kind = m.group()
        elif kind == "ident" and m.group() in RESERVED:
            kind = m.group()
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


# -- parsing ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        # set while parsing the query slot of P( ... | ... )
        self.bar_stops = False

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: Iterable[str], message: str | None = None):
        tok = self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(
            message or f"unexpected {found}",
            tok.pos,
            expected=[_describe(k) for k in expected],
            found=tok.text,
        )

    def expect(self, kind: str) -> Token:
        if self.peek().kind != kind:
            self.fail([kind])
        return self.advance()

    def expect_end(self, continuations: Iterable[str] = ()):
        if self.peek().kind != "eof":
            self.fail([*continuations, "eof"])

    # sentence levels

    def sentence(self) -> Sentence:
        return self._right_chain(Iff, "<->", self.implication)

    def implication(self) -> Sentence:
        return self._right_chain(Implies, "->", self.disjunction)

    def _right_chain(self, node_type, symbol, operand) -> Sentence:
        operands = [operand()]
        while self.peek().kind == symbol:
            self.advance()
            operands.append(operand())
        result = operands.pop()
        while operands:
            result = node_type(operands.pop(), result)
        return result

    def disjunction(self) -> Sentence:
        left = self.conjunction()
        while self.peek().kind == "|" and not self.bar_stops:
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Sentence:
        left = self.unary()
        while self.peek().kind == "&":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Sentence:
        depth = 0
        while self.peek().kind == "~":
            self.advance()
            depth += 1
        s = self.primary()
        for _ in range(depth):
            s = Not(s)
        return s

    def primary(self) -> Sentence:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return Atom(tok.text)
        if tok.kind in ("true", "false"):
            self.advance()
            return TOP if tok.kind == "true" else BOTTOM
        if tok.kind == "(":
            self.advance()
            saved, self.bar_stops = self.bar_stops, False
            s = self.sentence()
            if self.peek().kind != ")":
                self.fail([")", *_CONTINUATIONS])
            self.advance()
            self.bar_stops = saved
            return s
        if tok.kind == "P":
            if self.tokens[self.i + 1].kind == "(":
                raise ParseError(
                    "probability operator cannot appear inside a sentence", tok.pos, found="P"
                )
            raise ParseError("'P' is reserved and cannot name an atom", tok.pos, found="P")
        self.fail(_OPERAND_START)

    # assertion level

    def assertion(self) -> ProbAssertion:
        negated = False
        if self.peek().kind == "~":
            self.advance()
            negated = True
            if self.peek().kind == "(":
                self.advance()
                a = self.probability()
                self.expect(")")
            else:
                a = self.probability()
        else:
            a = self.probability()
        self.expect_end()
        return a.negate() if negated else a

    def probability(self) -> ProbAssertion:
        self.expect("P")
        self.expect("(")
        self.bar_stops = True
        query = self.sentence()
        self.bar_stops = False
        evidence = TOP
        if self.peek().kind == "|":
            self.advance()
            evidence = self.sentence()
        if self.peek().kind != ")":
            self.fail([")", *_CONTINUATIONS])
        self.advance()
        self.expect(">")
        tok = self.expect("number")
        bound = to_rational(tok.text)
        if not 0 <= bound <= 1:
            raise ParseError(f"bound {tok.text} outside [0, 1]", tok.pos, found=tok.text)
        return ProbAssertion(query, evidence, bound)


def parse_sentence(text: str) -> Sentence:
    """Parse a propositional sentence; raises ParseError on bad input."""
    p = _Parser(text)
    s = p.sentence()
    p.expect_end(_CONTINUATIONS)
    return s


def parse_assertion(text: str) -> ProbAssertion:
    """Parse ``P(S | e) > b`` or its negation ``~(P(S | e) > b)``.

    A missing ``| e`` means the evidence is ``true``.  ``b`` may be a decimal
    or a fraction and is read exactly.
    """
    return _Parser(text).assertion()


def as_sentence(s: Sentence | str) -> Sentence:
    return parse_sentence(s) if isinstance(s, str) else s


@dataclass(frozen=True)
class ProbAssertion:
    """``P(sentence | evidence) > bound``, or its negation when ``negated``."""

    sentence: Sentence
    evidence: Sentence
    bound: Fraction
    negated: bool = False
    comparator: ClassVar[str] = ">"

    def __post_init__(self):
        bound = to_rational(self.bound)
        if not 0 <= bound <= 1:
            raise ValueError(f"bound {bound} outside [0, 1]")
        object.__setattr__(self, "bound", bound)

    def negate(self) -> ProbAssertion:
        return ProbAssertion(self.sentence, self.evidence, self.bound, not self.negated)

    def holds_for(self, probability: Fraction) -> bool:
        return (probability > self.bound) != self.negated

    def render(self) -> str:
        core = (
            f"P({render(self.sentence, bar_safe=True)} | {render(self.evidence)})"
            f" {self.comparator} {self.bound}"
        )
        return f"~({core})" if self.negated else core

    def __str__(self):
        return self.render()
