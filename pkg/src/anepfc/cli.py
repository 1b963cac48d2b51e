"""Command-line entry point: ``anepfc <subcommand> ...``.

Exit codes: 0 success / accepted / halted, 1 a well-formed negative answer,
2 usage, parse or validation errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import documents
from .compiler import InvalidTagSystem, compile_tag_system
from .documents import DocumentError
from .engine import (
    InputOutsideAlphabet,
    NetworkInvalid,
    StepBudget,
    TraceMismatch,
    replay,
    run,
)
from .harness import (
    DEFAULT_MAX_STATES,
    MilestoneMissed,
    acceptance_crossing,
    equivalence_check,
    milestone_check,
    path_milestones,
    traced_run,
    word_corpus,
)
from .model import errors, validate_network
from .tag import run_tag, validate_tag

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE


def _word(text: str, alphabet) -> tuple:
    w = documents.parse_word(text, alphabet)
    bad = sorted(set(w) - set(alphabet))
    if bad:
        raise UsageError(f"word uses symbols outside the input alphabet: {bad}")
    return w


def _load_tag(path):
    t = documents.read_tag(path)
    bad = errors(validate_tag(t))
    if bad:
        raise InvalidTagSystem(bad)
    return t


def cmd_validate(args) -> int:
    doc = json.loads(Path(args.file).read_text(encoding="utf-8"))
    if isinstance(doc, dict) and "productions" in doc:
        violations = validate_tag(documents.tag_from_dict(doc))
    else:
        violations = validate_network(documents.network_from_dict(doc))
    for v in violations:
        print(f"{v.severity.upper()} {v.code}: {v.message}")
    if errors(violations):
        return NEGATIVE
    print("VALID")
    return OK


def cmd_run(args) -> int:
    net = documents.read_network(args.net)
    w = _word(args.word, net.input_alphabet)
    if args.replay:
        trace = documents.read_trace(args.replay)
        outcome = replay(net, w, trace, StepBudget(max_steps=args.max_steps))
        print(outcome)
        return OK if outcome.accepted else NEGATIVE
    budget = StepBudget(args.max_steps, args.max_words_per_node, args.max_word_length,
                        args.max_states)
    level = args.trace_level if args.trace else "none"
    result = run(net, w, budget, trace_level=level, detect_cycles=args.detect_cycles,
                 optimize=not args.literal)
    if args.trace:
        documents.write_trace(result.trace, args.trace)
    print(result.outcome)
    return OK if result.outcome.accepted else NEGATIVE


def cmd_tag_run(args) -> int:
    t = _load_tag(args.tag)
    w = _word(args.word, t.alphabet)
    outcome = run_tag(t, w, args.max_iterations)
    print(outcome)
    return OK if outcome.halted else NEGATIVE


def cmd_compile(args) -> int:
    t = _load_tag(args.tag)
    compiled = compile_tag_system(t, prune_reachable=args.prune_reachable)
    net = compiled.network
    documents.write_network(net, args.output)
    if args.provenance:
        Path(args.provenance).write_text(documents.dumps(compiled.provenance), encoding="utf-8")
    print(f"nodes={len(net.nodes)} edges={len(net.edges)} symbols={len(net.alphabet)}")
    return OK


def cmd_verify(args) -> int:
    t = _load_tag(args.tag)
    if args.words:
        corpus = [_word(x, t.working) for x in args.words]
    else:
        corpus = word_corpus(t, args.max_len)
    report = equivalence_check(t, corpus, tag_budget=args.tag_budget,
                               net_budget=args.net_budget, max_states=args.max_states)
    if args.report:
        report.write(args.report)
    if args.golden:
        Path(args.golden).write_text(json.dumps(report.golden, indent=2, sort_keys=True) + "\n",
                                     encoding="utf-8")
    for r in report.records:
        if r.verdict != "consistent":
            print(f"  {' '.join(r.word)}: {r.verdict} ({r.tag} / {r.network})")
    s = report.summary
    head = "MISMATCH" if s["mismatch"] else "OK"
    print(f"{head} consistent={s['consistent']} mismatch={s['mismatch']} "
          f"inconclusive={s['inconclusive']}")
    return NEGATIVE if s["mismatch"] else OK


def cmd_milestones(args) -> int:
    t = _load_tag(args.tag)
    w = _word(args.word, t.working)
    expected = path_milestones(t, w)
    try:
        result = traced_run(t, w, args.max_steps)
        milestone_check(t, w, expected, result=result)
        step, crossing = acceptance_crossing(t, w, result=result)
    except MilestoneMissed as exc:
        print(f"MILESTONE_MISSED {exc}")
        return NEGATIVE
    words = ", ".join(" ".join(x) for x in crossing)
    print(f"MILESTONES_OK count={len(expected)} accepted_via=9-10 time={step} words={words}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anepfc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="validate a network or tag-system document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("run", help="run a network on an input word")
    s.add_argument("net")
    s.add_argument("word")
    s.add_argument("--max-steps", type=int, default=20000)
    s.add_argument("--max-words-per-node", type=int)
    s.add_argument("--max-word-length", type=int)
    s.add_argument("--max-states", type=int)
    s.add_argument("--trace", metavar="FILE", help="write a JSON-lines trace")
    s.add_argument("--trace-level", choices=("full", "delta"), default="full")
    s.add_argument("--replay", metavar="FILE", help="re-verify a recorded trace instead")
    s.add_argument("--detect-cycles", action="store_true")
    s.add_argument("--literal", action="store_true", help="disable the exact accelerations")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("tag-run", help="run the tag-system interpreter")
    s.add_argument("tag")
    s.add_argument("word")
    s.add_argument("--max-iterations", type=int, default=1000)
    s.set_defaults(func=cmd_tag_run)

    s = sub.add_parser("compile", help="compile a tag system into a 10-node network")
    s.add_argument("tag")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--prune-reachable", action="store_true")
    s.add_argument("--provenance", metavar="FILE")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("verify", help="cross-check network acceptance against tag halting")
    s.add_argument("tag")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--max-len", type=int, default=4)
    g.add_argument("--words", nargs="+")
    s.add_argument("--tag-budget", type=int, default=1000)
    s.add_argument("--net-budget", type=int, default=20000)
    s.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    s.add_argument("--report", metavar="FILE")
    s.add_argument("--golden", metavar="FILE", help="write the acceptance-time map")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("milestones", help="check the accepting-path milestones in a full trace")
    s.add_argument("tag")
    s.add_argument("word")
    s.add_argument("--max-steps", type=int, default=20000)
    s.set_defaults(func=cmd_milestones)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (OSError, DocumentError, json.JSONDecodeError, UsageError,
            InvalidTagSystem, NetworkInvalid, InputOutsideAlphabet, TraceMismatch) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
