"""Cross-validation of compiled networks against the tag-system oracle.

Also provides word corpora, seeded random tag systems and the accepting-path
milestones a compiled network must pass through on a given input.
"""
from __future__ import annotations

import itertools
import json
import random
import string
from dataclasses import dataclass, field
from pathlib import Path

from .compiler import (
    DOLLAR,
    GUIL_ZERO,
    GUIL_ZERO_PRIME,
    ZERO,
    angle,
    circ,
    compile_tag_system,
    dprime,
    guil,
    prime,
    square,
)
from .engine import OutcomeKind, StepBudget, run
from .model import filter_pass
from .tag import TagOutcome, TagSystem, is_halting_word, run_tag, tag_step

CONSISTENT, MISMATCH, INCONCLUSIVE = "consistent", "mismatch", "inconclusive"

# search states explored per word before a run is declared inconclusive
DEFAULT_MAX_STATES = 3_000_000
# tighter guard for words whose tag computation does not halt: the network
# can only fail to accept them, and proving that is the expensive case
NONHALTING_MAX_STATES = 100_000


def word_corpus(t: TagSystem, max_len: int) -> list[tuple]:
    """All words over V' with ``2 <= |w| <= max_len``, shortest first, then
    lexicographically by alphabet order."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    return [w for k in range(2, max_len + 1) for w in itertools.product(t.working, repeat=k)]


def tag_loops(t: TagSystem, w, max_iterations: int) -> bool:
    """True when the tag computation on ``w`` provably revisits a word."""
    seen = set()
    w = tuple(w)
    for _ in range(max_iterations):
        if is_halting_word(t, w):
            return False
        if w in seen:
            return True
        seen.add(w)
        w = tag_step(t, w)
    return False


@dataclass
class WordRecord:
    word: tuple
    tag: str
    network: str
    verdict: str
    time: int | None = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {"word": " ".join(self.word), "tagOutcome": self.tag,
             "networkOutcome": self.network, "verdict": self.verdict}
        if self.time is not None:
            d["time"] = self.time
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class EquivalenceReport:
    records: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {CONSISTENT: 0, MISMATCH: 0, INCONCLUSIVE: 0}
        for r in self.records:
            out[r.verdict] += 1
        return out

    @property
    def golden(self) -> dict:
        """Acceptance time per accepted word, keyed by the rendered word."""
        return {" ".join(r.word): r.time for r in self.records if r.time is not None}

    @property
    def mismatches(self) -> list:
        return [r for r in self.records if r.verdict == MISMATCH]

    def to_dict(self) -> dict:
        return {"summary": self.summary, "records": [r.to_dict() for r in self.records]}

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")


def classify(t: TagSystem, w, tag: TagOutcome, outcome, tag_budget: int) -> tuple[str, str]:
    """Verdict for one word from the two outcomes; returns ``(verdict, note)``."""
    if outcome.accepted:
        if tag.halted:
            return CONSISTENT, ""
        # tag-iteration estimate: every network iteration takes well over 2 steps
        budget = max(tag_budget, 10 * (outcome.time // 2))
        if run_tag(t, w, budget).halted:
            return CONSISTENT, f"tag oracle halted within extended budget {budget}"
        return MISMATCH, f"network accepted but tag did not halt within {budget} iterations"
    if outcome.kind is OutcomeKind.REJECTED_STAGNATION:
        if tag.halted:
            return MISMATCH, "tag halted but network rejected"
        if tag_loops(t, w, tag_budget):
            return CONSISTENT, "tag computation loops"
        return INCONCLUSIVE, "network rejected; tag budget exhausted"
    if not tag.halted and tag_loops(t, w, tag_budget):
        return CONSISTENT, "tag computation loops; network did not accept within budget"
    return INCONCLUSIVE, "budget or guard exhausted"


def equivalence_check(t: TagSystem, corpus, tag_budget: int = 1000, net_budget: int = 20000,
                      max_states: int | None = DEFAULT_MAX_STATES,
                      nonhalting_max_states: int | None = NONHALTING_MAX_STATES,
                      network=None) -> EquivalenceReport:
    """Run the tag oracle and the compiled network on every corpus word."""
    net = network if network is not None else compile_tag_system(t).network
    halting = StepBudget(max_steps=net_budget, max_states=max_states)
    other = StepBudget(max_steps=net_budget, max_states=nonhalting_max_states)
    report = EquivalenceReport()
    for w in corpus:
        w = tuple(w)
        tag = run_tag(t, w, tag_budget)
        outcome = run(net, w, halting if tag.halted else other).outcome
        verdict, note = classify(t, w, tag, outcome, tag_budget)
        time = outcome.time if outcome.accepted else None
        report.records.append(WordRecord(w, str(tag), str(outcome), verdict, time, note))
    return report


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int
    n: int
    max_production_length: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.max_production_length < 2:
            raise ValueError("max_production_length must be at least 2")
        if self.n > len(string.ascii_lowercase):
            raise ValueError("n is limited to 26 working symbols")


def random_tag_system(spec: GeneratorSpec) -> TagSystem:
    """A restricted 2-tag system drawn from ``random.Random(spec.seed)``.

    Working symbols are ``a, b, c, ...`` and ``H`` is last; one working symbol
    is mapped to ``H``, the rest to words over V of length
    ``2..max_production_length``.
    """
    rng = random.Random(spec.seed)
    working = tuple(string.ascii_lowercase[:spec.n])
    alphabet = working + ("H",)
    halter = rng.choice(working)
    productions = {}
    for a in working:
        if a == halter:
            productions[a] = ("H",)
        else:
            k = rng.randint(2, spec.max_production_length)
            productions[a] = tuple(rng.choice(alphabet) for _ in range(k))
    return TagSystem(alphabet, productions)


# ---- accepting-path milestones ----------------------------------------

class MilestoneMissed(AssertionError):
    def __init__(self, step: int, expected, excerpt: str = ""):
        self.step = step
        self.expected = expected
        self.excerpt = excerpt
        node, word = expected
        msg = f"milestone ({node}, {' '.join(word)}) not found after step {step}"
        super().__init__(msg + (f"\n{excerpt}" if excerpt else ""))


def path_milestones(t: TagSystem, w, max_iterations: int = 1000) -> list[tuple]:
    """(node, word) pairs the network's accepting path visits, in order.

    For one tag iteration on ``a b y`` with ``φ(a) = x_1..x_k`` and each
    ``x_m = a_i``: the bracket word arrives in node 2, then in node 4 with a
    fresh counter and ``$``; every decrement passes through nodes 5 and 6
    (and back to 3 while the counter is still primed); the exhausted bracket
    reaches nodes 7 and 8, the circled symbol is deleted in node 9, and
    ``y φ(a)`` arrives in node 1, or in the output node once it holds H.
    """
    a = ((ZERO,) + t.alphabet).__getitem__
    out = []
    w = tuple(w)
    for _ in range(max_iterations):
        if is_halting_word(t, w):
            break
        x = t.productions[w[0]]
        marked = (circ(w[1]),) + w[2:]
        for m in range(1, len(x) + 1):
            rest = x[m:]
            bracket = square(x) if m == 1 else guil((ZERO,) + x[m - 1:])
            tail = marked + x[:m - 1]
            out.append(("2", (bracket,) + tail))
            out.append(("4", (bracket,) + tail + (prime(ZERO), DOLLAR)))
            i = t.index(x[m - 1])
            for j in range(1, i + 1):
                out.append(("5", (angle((a(i - j),) + rest),) + tail + (dprime(a(j - 1)), DOLLAR)))
                counter = prime(a(j)) if j < i else a(i)
                g = guil((a(i - j),) + rest)
                out.append(("6", (g,) + tail + (counter, DOLLAR)))
                if j < i:
                    out.append(("3", (g,) + tail + (counter,)))
        out.append(("7", (GUIL_ZERO,) + marked + x))
        out.append(("8", (GUIL_ZERO_PRIME,) + marked + x))
        out.append(("9", marked + x))
        w = tag_step(t, w)
        out.append(("9", w))
        out.append(("10" if t.halt in w else "1", w))
    return out


def _excerpt(trace, step: int, span: int = 2, per_node: int = 3) -> str:
    lines = []
    for rec in trace[max(0, step - span):step + span]:
        parts = []
        for nid, ws in sorted(rec.nodes.items()):
            if ws:
                shown = sorted(" ".join(x) for x in ws)[:per_node]
                more = f" (+{len(ws) - per_node} more)" if len(ws) > per_node else ""
                parts.append(f"{nid}: {shown}{more}")
        lines.append(f"  step {rec.step} ({rec.type}): " + "; ".join(parts))
    return "\n".join(lines)


def traced_run(t: TagSystem, w, max_steps: int = 20000):
    """Literal run of the compiled network on ``w`` with a full trace."""
    net = compile_tag_system(t).network
    return run(net, tuple(w), StepBudget(max_steps=max_steps), trace_level="full")


def milestone_check(t: TagSystem, w, milestones=None, max_steps: int = 20000,
                    result=None) -> bool:
    """Check that the milestones occur in order in the full trace on ``w``.

    ``result`` may be a :func:`traced_run` result to reuse.  Raises
    :class:`MilestoneMissed` naming the first milestone not found.
    """
    if milestones is None:
        milestones = path_milestones(t, w)
    result = result or traced_run(t, w, max_steps)
    trace = result.trace
    pos = 0
    for node, word in milestones:
        word = tuple(word)
        start = pos
        while pos < len(trace) and word not in trace[pos].nodes.get(node, ()):
            pos += 1
        if pos == len(trace):
            raise MilestoneMissed(start, (node, word), _excerpt(trace, start))
    return True


def acceptance_crossing(t: TagSystem, w, max_steps: int = 20000,
                        result=None) -> tuple[int, list]:
    """Step and words by which the output node is first reached.

    Every word must cross the edge between nodes 9 and 10 and carry the
    halting symbol; otherwise :class:`MilestoneMissed` is raised.
    """
    net = compile_tag_system(t).network
    result = result or traced_run(t, w, max_steps)
    if not result.outcome.accepted:
        raise MilestoneMissed(len(result.trace), ("10", (t.halt,)), str(result.outcome))
    m = result.outcome.time
    edge = next(e for e in net.edges if e.ends == frozenset(("9", "10")))
    before = result.trace[m - 2].nodes["9"] if m >= 2 else frozenset()
    crossing = sorted(result.trace[m - 1].nodes["10"])
    for x in crossing:
        if x not in before or t.halt not in x or not filter_pass(x, edge.filter):
            raise MilestoneMissed(m, ("10", x), _excerpt(result.trace, m - 1))
    return m, crossing
