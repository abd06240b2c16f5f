"""Command-line front end.

Commands: ``check``, ``query``, ``decide``, ``repl`` and ``demo``.  ``--json``
makes every command print one JSON document with a fixed set of fields.

Exit codes: 0 success, 1 usage or parse error, 2 semantic error (zero
evidence, invalid density, failed demo), 3 I/O error.
"""

from __future__ import annotations

import argparse
import cmd
import json
import re
import sys
from fractions import Fraction
from typing import TextIO

from .decision import UNBOUNDED, BetDecision, Payoff, decide
from .demos import DEMOS, abbreviate, describe, expand_lottery_sugar, run_demo
from .errors import ContradictionError, KBSyntaxError, ParseError, ReasonerError
from .exact import format_decimal, to_rational
from .kbfile import KnowledgeBase, read_kb
from .sentence import Sentence, parse_sentence, render
from .session import Session
from .worlds import cond_prob, worlds_where

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational_triple(q: Fraction | None):
    if q is None:
        return None
    return {"num": q.numerator, "den": q.denominator, "dec": format_decimal(q)}


def json_document(command: str, *, query=None, evidence=None, probability=None,
                  threshold=None, accepted=None, conclusion=None, error=None) -> dict:
    return {
        "command": command,
        "query": query,
        "evidence": evidence,
        "probability": rational_triple(probability),
        "threshold": rational_triple(threshold),
        "accepted": accepted,
        "conclusion": conclusion,
        "error": error,
    }


def decision_document(command: str, d: BetDecision) -> dict:
    return json_document(
        command,
        query=abbreviate(render(d.query)),
        evidence=abbreviate(render(d.evidence)),
        probability=d.probability,
        threshold=d.threshold,
        accepted=d.accepted,
        conclusion=abbreviate(d.conclusion.render()),
    )


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, OSError):
        return EXIT_IO
    if isinstance(exc, (UsageError, ParseError, KBSyntaxError)):
        return EXIT_USAGE
    return EXIT_SEMANTIC


def parse_payoff(win: str, lose: str) -> Payoff:
    loss = UNBOUNDED if lose == "life" else to_rational(lose)
    return Payoff(to_rational(win), loss)


class _Sentences:
    """Sentence parsing bound to a KB: applies the ``loser_k`` shorthand for lotteries."""

    def __init__(self, kb: KnowledgeBase):
        names = kb.density.universe
        self.sugar = any(a.startswith("winner_") for a in names) and not any(
            a.startswith("loser_") for a in names
        )

    def __call__(self, text: str) -> Sentence:
        text = text.strip()
        if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
            text = text[1:-1]
        return parse_sentence(expand_lottery_sugar(text) if self.sugar else text)


# -- commands ---------------------------------------------------------------

def _split_operands(args, wants_query: bool):
    """Resolve ``[KB] QUERY`` operands against the global ``--kb`` flag."""
    operands = list(args.operands)
    needed = 1 if wants_query else 0
    if len(operands) == needed + 1:
        args.kb = operands.pop(0)
    elif len(operands) != needed:
        raise UsageError(f"expected {'[KB] QUERY' if wants_query else '[KB]'}, "
                         f"got {len(operands)} operand(s)")
    if not args.kb:
        raise UsageError("no knowledge base given (positional argument or --kb)")
    args.query = operands[0] if wants_query else None


def _kb_path(args) -> str:
    return args.kb


def cmd_check(args, out: TextIO) -> int:
    kb = read_kb(_kb_path(args))
    d = kb.density
    if args.json:
        _emit(out, json_document("check"))
    else:
        print(f"{kb.path}: valid density over {len(d.universe)} atoms, "
              f"{len(d)} worlds, total mass 1", file=out)
    return EXIT_OK


def cmd_query(args, out: TextIO) -> int:
    kb = read_kb(_kb_path(args))
    sentence = _Sentences(kb)
    s, e = sentence(args.query), sentence(args.given)
    p = cond_prob(kb.density, s, e)
    q_text, e_text = render(s, bar_safe=True), render(e)
    if args.json:
        _emit(out, json_document("query", query=abbreviate(render(s)),
                                 evidence=abbreviate(e_text), probability=p))
    else:
        print(abbreviate(f"P({q_text} | {e_text}) = {p.numerator}/{p.denominator}"
                         f" ≈ {format_decimal(p)}"), file=out)
    return EXIT_OK


def cmd_decide(args, out: TextIO) -> int:
    kb = read_kb(_kb_path(args))
    sentence = _Sentences(kb)
    if args.payoff:
        if args.payoff not in kb.payoffs:
            raise UsageError(f"no payoff named {args.payoff!r} in {kb.path}")
        payoff = kb.payoffs[args.payoff]
    else:
        if args.win is None or (args.lose is None and not args.lose_life):
            raise UsageError("decide needs --win with --lose or --lose-life, or --payoff")
        payoff = parse_payoff(args.win, "life" if args.lose_life else args.lose)
    d = decide(kb.density, sentence(args.query), sentence(args.given), payoff)
    if args.json:
        _emit(out, decision_document("decide", d))
    else:
        print(f"bet on {abbreviate(render(d.query))} ({payoff})", file=out)
        for line in describe(d):
            print(line, file=out)
    return EXIT_OK


def cmd_demo(args, out: TextIO, err: TextIO) -> int:
    result = run_demo(args.name)
    if args.json:
        _emit(out, json_document(
            f"demo {args.name}",
            accepted=result.ok,
            conclusion="\n".join(result.conclusions),
            error="\n".join(result.failures) or None,
        ))
    else:
        for line in result.lines:
            print(line, file=out)
        print(f"demo {args.name}: {'all expected outcomes hold' if result.ok else 'FAILED'}",
              file=out)
    if not result.ok:
        for failure in result.failures:
            print(failure, file=err)
        return EXIT_SEMANTIC
    return EXIT_OK


def cmd_repl(args, out: TextIO, stdin: TextIO | None) -> int:
    kb = read_kb(_kb_path(args))
    Repl(kb, json_mode=args.json, stdin=stdin, stdout=out).cmdloop()
    return EXIT_OK


# -- REPL -------------------------------------------------------------------

_ASK = re.compile(r"(?P<s>.+?)\s+win\s+(?P<win>\S+)\s+lose\s+(?P<lose>\S+)\s*$")
_ASK_NAMED = re.compile(r"(?P<s>.+?)\s+payoff\s+(?P<name>\S+)\s*$")


class Repl(cmd.Cmd):
    """Interactive session: tell facts, ask for bets, inspect retractions."""

    intro = ("tell <sentence> | ask <sentence> win <r> lose <r|life> | "
             "history | retractions | explain <sentence> | quit")

    def __init__(self, kb: KnowledgeBase, json_mode: bool = False,
                 stdin: TextIO | None = None, stdout: TextIO | None = None):
        super().__init__(stdin=stdin, stdout=stdout)
        if stdin is not None:
            self.use_rawinput = False
        self.kb = kb
        self.session = Session(kb.density)
        self.parse = _Sentences(kb)
        self.json_mode = json_mode
        self.prompt = "" if json_mode else "betlogic> "
        if json_mode:
            self.intro = None

    def _say(self, text: str):
        print(text, file=self.stdout)

    def _doc(self, command: str, **fields):
        _emit(self.stdout, json_document(command, **fields))

    def onecmd(self, line):
        try:
            return super().onecmd(line)
        except (ReasonerError, ValueError) as exc:
            command = line.split(maxsplit=1)[0] if line.strip() else ""
            if self.json_mode:
                self._doc(command, error=str(exc))
            else:
                self._say(f"error: {exc}")
            return False

    def emptyline(self):
        return False

    def default(self, line):
        raise ValueError(f"unknown command {line.split()[0]!r}")

    def do_tell(self, arg):
        """tell <sentence>: add a fact to the evidence."""
        try:
            self.session.tell(self.parse(arg))
        except ContradictionError as exc:
            raise ValueError(f"{exc}; evidence unchanged") from None
        evidence = render(self.session.evidence)
        if self.json_mode:
            self._doc("tell", evidence=abbreviate(evidence))
        else:
            self._say("evidence: " + abbreviate(evidence))

    def do_ask(self, arg):
        """ask <sentence> win <r> lose <r|life>  (or: ask <sentence> payoff <name>)"""
        m = _ASK.match(arg.strip())
        if m:
            payoff = parse_payoff(m["win"], m["lose"])
        else:
            m = _ASK_NAMED.match(arg.strip())
            if not m:
                raise ValueError("usage: ask <sentence> win <r> lose <r|life>")
            if m["name"] not in self.kb.payoffs:
                raise ValueError(f"no payoff named {m['name']!r}")
            payoff = self.kb.payoffs[m["name"]]
        record = self.session.ask(self.parse(m["s"]), payoff)
        if self.json_mode:
            self._doc_record("ask", record)
        else:
            self._say(f"#{record.sequence_number} bet on {render(record.query)} ({payoff})")
            for line in describe(record.decision):
                self._say(line)

    def _doc_record(self, command, record):
        _emit(self.stdout, decision_document(command, record.decision))

    def do_history(self, arg):
        """history: told facts and every conclusion drawn so far."""
        lines = ["told: " + (", ".join(render(f) for f in self.session.evidence_log) or "nothing")]
        for r in self.session.conclusion_log:
            lines.append(f"#{r.sequence_number} " + abbreviate(r.decision.conclusion.render()))
        self._listing("history", lines)

    def do_retractions(self, arg):
        """retractions: accepted conclusions later rejected under more evidence."""
        flips = self.session.retractions()
        lines = [f"{len(flips)} retraction(s)"]
        for earlier, later in flips:
            lines.append(f"#{earlier.sequence_number} {abbreviate(earlier.decision.conclusion.render())}"
                         f"  =>  #{later.sequence_number} "
                         f"{abbreviate(later.decision.conclusion.render())}")
        self._listing("retractions", lines)

    def do_explain(self, arg):
        """explain <sentence>: the worlds where it holds and their masses."""
        s = self.parse(arg)
        rows = worlds_where(self.kb.density, s)
        total = sum((m for _, m in rows), Fraction(0))
        lines = [f"{world} {mass}" for world, mass in rows]
        lines.append(f"total {total}")
        if self.json_mode:
            self._doc("explain", query=render(s), probability=total, conclusion="\n".join(lines))
        else:
            for line in lines:
                self._say(line)

    def _listing(self, command, lines):
        if self.json_mode:
            self._doc(command, conclusion="\n".join(lines))
        else:
            for line in lines:
                self._say(line)

    def do_quit(self, arg):
        """quit: leave the REPL."""
        return True

    do_exit = do_quit

    def do_EOF(self, arg):
        return True


# -- entry point ------------------------------------------------------------

def _emit(out: TextIO, doc: dict):
    print(json.dumps(doc, ensure_ascii=False), file=out)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON document")
    common.add_argument("--kb", metavar="PATH", help="knowledge-base file")

    parser = _Parser(prog="betlogic", parents=[common],
                     description="Decision-theoretic nonmonotonic reasoning over exact densities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="validate a KB file")
    p.add_argument("operands", nargs="*", metavar="KB")

    p = sub.add_parser("query", parents=[common], help="exact conditional probability")
    p.add_argument("operands", nargs="*", metavar="[KB] QUERY")
    p.add_argument("--given", default="true", metavar="SENTENCE")

    p = sub.add_parser("decide", parents=[common], help="accept or reject a bet")
    p.add_argument("operands", nargs="*", metavar="[KB] QUERY")
    p.add_argument("--given", default="true", metavar="SENTENCE")
    p.add_argument("--win", metavar="R")
    stakes = p.add_mutually_exclusive_group()
    stakes.add_argument("--lose", metavar="R")
    stakes.add_argument("--lose-life", action="store_true", dest="lose_life",
                        help="unbounded loss: the bet is never taken")
    stakes.add_argument("--payoff", metavar="NAME", help="named payoff from the KB file")

    p = sub.add_parser("repl", parents=[common], help="interactive session")
    p.add_argument("operands", nargs="*", metavar="KB")

    p = sub.add_parser("demo", parents=[common], help="run a self-checking scenario")
    p.add_argument("name", choices=sorted(DEMOS))
    return parser


def main(argv=None, stdout: TextIO | None = None, stderr: TextIO | None = None,
         stdin: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    for stream in (out, err):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    json_mode = "--json" in (argv if argv is not None else sys.argv[1:])
    command = "?"
    try:
        parser = build_parser()
        args, extra = parser.parse_known_args(argv)
        command = args.command
        args.json = getattr(args, "json", False)
        args.kb = getattr(args, "kb", None)
        # argparse stops filling positionals once an option intervenes
        stray = [a for a in extra if a.startswith("-") and a != "-"]
        if stray or (extra and command == "demo"):
            parser.error(f"unrecognized arguments: {' '.join(stray or extra)}")
        if command != "demo":
            args.operands = list(args.operands) + extra
            _split_operands(args, wants_query=command in ("query", "decide"))
        args.lose = getattr(args, "lose", None)
        args.lose_life = getattr(args, "lose_life", False)
        args.payoff = getattr(args, "payoff", None)
        if command == "check":
            return cmd_check(args, out)
        if command == "query":
            return cmd_query(args, out)
        if command == "decide":
            return cmd_decide(args, out)
        if command == "repl":
            return cmd_repl(args, out, stdin)
        return cmd_demo(args, out, err)
    except (UsageError, ReasonerError, ValueError, OSError) as exc:
        code = exit_code_for(exc)
        if isinstance(exc, ValueError) and not isinstance(exc, ReasonerError):
            code = EXIT_USAGE
        message = str(exc)
        if isinstance(exc, OSError) and exc.filename:
            message = f"{exc.strerror}: {exc.filename}"
        if json_mode:
            _emit(out, json_document(command, error=message))
        else:
            print(f"betlogic {command}: error: {message}", file=err)
        return code

