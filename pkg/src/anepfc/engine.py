"""Step semantics and the run loop.

Two exact accelerations are applied when no trace is requested:

* Inert growing lineages.  A word sitting in a node whose only rule is a
  single end insertion ``ε -> a`` and which, with ``a`` added, can never pass
  any incident filter will stay there forever, growing by one symbol per
  evolutionary step.  Such words are kept symbolically (core, offset) instead
  of being rewritten every step.  Their presence also proves that no two
  same-type configurations can ever coincide again.
* Earliest-acceptance search.  Words evolve independently of one another, so
  once stagnation is ruled out (an inert growing lineage exists, or the
  configuration has repeated with a period above two) the acceptance time is
  a breadth-first distance; see :mod:`anepfc.search`.

Both are invisible in the returned :class:`Outcome`; pass ``optimize=False``
for the literal step-by-step computation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import (
    Configuration,
    Mode,
    Network,
    RuleKind,
    RuleSet,
    Word,
    errors,
    passes,
    validate_network,
)
from .search import earliest_acceptance


class InputOutsideAlphabet(ValueError):
    pass


class NetworkInvalid(ValueError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


class UndefinedTime(ValueError):
    pass


@dataclass(frozen=True)
class StepBudget:
    max_steps: int = 20000
    max_words_per_node: int | None = None
    max_word_length: int | None = None
    max_states: int | None = None  # limit on states explored by the search


class OutcomeKind(str, enum.Enum):
    ACCEPTED = "ACCEPTED"
    REJECTED_STAGNATION = "REJECTED_STAGNATION"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"
    GUARD_TRIPPED = "GUARD_TRIPPED"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    time: int
    reason: str | None = None

    @property
    def accepted(self) -> bool:
        return self.kind is OutcomeKind.ACCEPTED

    @property
    def halted(self) -> bool:
        return self.kind in (OutcomeKind.ACCEPTED, OutcomeKind.REJECTED_STAGNATION)

    def __str__(self):
        if self.halted:
            return f"{self.kind.value} time={self.time}"
        if self.kind is OutcomeKind.GUARD_TRIPPED:
            return f"{self.kind.value} {self.reason}"
        return self.kind.value


def time_of(outcome: Outcome) -> int:
    if not outcome.halted:
        raise UndefinedTime(f"time is undefined for {outcome.kind.value}")
    return outcome.time


@dataclass(frozen=True)
class TraceRecord:
    """One step of a trace.

    ``nodes`` is the full configuration, or for delta traces a map from each
    changed node to ``{"+": added words, "-": removed words}``.
    """

    step: int
    type: str  # "evo" | "comm"
    nodes: dict
    delta: bool = False


@dataclass
class RunResult:
    outcome: Outcome
    trace: list | None = None
    final: Configuration | None = None

    def __iter__(self):
        return iter((self.outcome, self.trace))


def initial_config(net: Network, w) -> Configuration:
    w = tuple(w)
    bad = set(w) - net.input_alphabet
    if bad:
        raise InputOutsideAlphabet(f"input uses symbols outside V: {sorted(bad)}")
    c = {nid: frozenset() for nid in net.nodes}
    c[net.input_node] = frozenset((w,))
    return c


class Machine:
    """Pre-compiled network: rule sets and incident filters per node."""

    def __init__(self, net: Network):
        self.net = net
        self.order = list(net.nodes)
        self.rulesets = {nid: RuleSet(n.rules, n.mode) for nid, n in net.nodes.items()}
        self.links = {nid: [] for nid in net.nodes}
        for e in net.edges:
            self.links[e.a].append((e.b, e.filter))
            self.links[e.b].append((e.a, e.filter))
        # nodes where a stuck word grows deterministically at one end
        self.growers = {}
        for nid, n in net.nodes.items():
            if (nid != net.output_node and n.mode is not Mode.STAR and len(n.rules) == 1
                    and next(iter(n.rules)).kind is RuleKind.INSERTION):
                self.growers[nid] = (next(iter(n.rules)).rhs, n.mode)

    def evolve(self, c: Configuration) -> Configuration:
        return {nid: frozenset(self.rulesets[nid].apply_all(c.get(nid, ()))) for nid in self.order}

    def communicate(self, c: Configuration) -> Configuration:
        out = {nid: set() for nid in self.order}
        for nid in self.order:
            links = self.links[nid]
            keep = out[nid]
            for w in c.get(nid, ()):
                symbols = set(w)
                moved = False
                for other, f in links:
                    if passes(symbols, f):
                        out[other].add(w)
                        moved = True
                if not moved:
                    keep.add(w)
        return {nid: frozenset(ws) for nid, ws in out.items()}

    def inert(self, nid: str, w: Word) -> bool:
        a, _ = self.growers[nid]
        symbols = set(w)
        symbols.add(a)
        return not any(passes(symbols, f) for _, f in self.links[nid])


def evolutionary_step(net: Network, c: Configuration) -> Configuration:
    return Machine(net).evolve(c)


def communication_step(net: Network, c: Configuration) -> Configuration:
    return Machine(net).communicate(c)


def _key(c: Configuration) -> tuple:
    return tuple(sorted((nid, ws) for nid, ws in c.items() if ws))


class _Frozen:
    """Inert growing lineages of one node, stored as (core, offset) pairs.

    A lineage's word after ``e`` evolutionary steps in total is ``core`` with
    ``offset + e`` copies of the grown symbol at the growing end.
    """

    def __init__(self, symbol, mode):
        self.symbol = symbol
        self.left = mode is Mode.LEFT
        self.keys = set()
        self.top = None  # max of len(core) + offset

    def add(self, w: Word, evo: int) -> None:
        a, n = self.symbol, 0
        if self.left:
            while n < len(w) and w[n] == a:
                n += 1
            core = w[n:]
        else:
            while n < len(w) and w[-1 - n] == a:
                n += 1
            core = w[:len(w) - n]
        key = (core, n - evo)
        if key not in self.keys:
            self.keys.add(key)
            base = len(core) + n - evo
            self.top = base if self.top is None else max(self.top, base)

    def words(self, evo: int) -> set:
        a = self.symbol
        if self.left:
            return {(a,) * (off + evo) + core for core, off in self.keys}
        return {core + (a,) * (off + evo) for core, off in self.keys}


def _guard(budget: StepBudget, counts: dict, longest: int) -> str | None:
    if budget.max_words_per_node is not None:
        for nid, n in counts.items():
            if n > budget.max_words_per_node:
                return f"words-per-node node={nid} count={n} limit={budget.max_words_per_node}"
    if budget.max_word_length is not None and longest > budget.max_word_length:
        return f"word-length length={longest} limit={budget.max_word_length}"
    return None


def _delta(prev: Configuration, cur: Configuration) -> dict:
    out = {}
    for nid in sorted(cur):
        before = prev.get(nid, frozenset())
        added, removed = cur[nid] - before, before - cur[nid]
        if added or removed:
            out[nid] = {"+": added, "-": removed}
    return out


def apply_delta(c: Configuration, delta: dict) -> Configuration:
    c = dict(c)
    for nid, d in delta.items():
        c[nid] = (c.get(nid, frozenset()) - frozenset(d["-"])) | frozenset(d["+"])
    return c


def run(net: Network, w, budget: StepBudget | None = None, trace_level: str = "none",
        detect_cycles: bool = False, optimize: bool = True,
        check: bool = True) -> RunResult:
    """Compute C0, C1, ... until acceptance, stagnation, a guard or the budget.

    ``trace_level`` is ``"none"``, ``"full"`` or ``"delta"``; a trace forces
    the literal computation.  ``detect_cycles`` also rejects as soon as a
    configuration repeats one produced earlier by the same step type.

    With ``optimize`` and no per-configuration guards, the run switches to
    :func:`anepfc.search.earliest_acceptance` once stagnation has become
    impossible; ``RunResult.final`` is then ``None``.
    """
    budget = budget or StepBudget()
    if check:
        bad = errors(validate_network(net))
        if bad:
            raise NetworkInvalid(bad)
    machine = Machine(net)
    c = initial_config(net, w)
    tracing = trace_level != "none"
    optimize = optimize and not tracing
    can_search = optimize and budget.max_words_per_node is None and budget.max_word_length is None
    out_node = net.output_node
    trace = [] if tracing else None

    frozen = {nid: _Frozen(*g) for nid, g in machine.growers.items()} if optimize else {}
    any_frozen = False
    evo = 0
    history: dict = {}  # (parity, key) -> first step producing it
    prev_same: dict = {}  # parity -> key of the previous same-type configuration

    def freeze(c: Configuration) -> Configuration:
        nonlocal any_frozen
        for nid, fz in frozen.items():
            stuck = [x for x in c[nid] if machine.inert(nid, x)]
            if stuck:
                for x in stuck:
                    fz.add(x, evo)
                c = dict(c)
                c[nid] = c[nid].difference(stuck)
                any_frozen = True
        return c

    def result(outcome, c):
        if c is not None and any_frozen:
            c = {nid: ws | frozen[nid].words(evo) if nid in frozen else ws
                 for nid, ws in c.items()}
        return RunResult(outcome, trace, c)

    def guard(m, c):
        counts = {nid: len(ws) for nid, ws in c.items()}
        longest = max((len(x) for ws in c.values() for x in ws), default=0)
        for nid, fz in frozen.items():
            if fz.keys:
                counts[nid] += len(fz.keys)
                longest = max(longest, fz.top + evo)
        return _guard(budget, counts, longest)

    def search(m, c):
        found = earliest_acceptance(machine, c, m, budget.max_steps, budget.max_states)
        if found[0] == "accepted":
            return result(Outcome(OutcomeKind.ACCEPTED, found[1]), None)
        if found[0] == "guard":
            return result(Outcome(OutcomeKind.GUARD_TRIPPED, found[1], found[2]), None)
        return result(Outcome(OutcomeKind.BUDGET_EXHAUSTED, budget.max_steps), None)

    if frozen:
        c = freeze(c)
    if c[out_node]:
        return result(Outcome(OutcomeKind.ACCEPTED, 0), c)
    reason = guard(0, c)
    if reason:
        return result(Outcome(OutcomeKind.GUARD_TRIPPED, 0, reason), c)
    if can_search and any_frozen:
        return search(0, c)

    for m in range(1, budget.max_steps + 1):
        prev = c
        if m % 2:
            c = machine.evolve(c)
            evo += 1
        else:
            c = machine.communicate(c)
            if frozen:
                c = freeze(c)
        if tracing:
            nodes = _delta(prev, c) if trace_level == "delta" else c
            trace.append(TraceRecord(m, "evo" if m % 2 else "comm", nodes,
                                     trace_level == "delta"))
        if c[out_node]:
            return result(Outcome(OutcomeKind.ACCEPTED, m), c)
        parity = m % 2
        key = _key(c)
        repeated = (parity, key) in history
        if not any_frozen:
            # a growing inert lineage rules out any later repetition
            if m >= 3 and prev_same.get(parity) == key:
                return result(Outcome(OutcomeKind.REJECTED_STAGNATION, m), c)
            if detect_cycles and repeated:
                return result(Outcome(OutcomeKind.REJECTED_STAGNATION, m,
                                      f"cycle since step {history[(parity, key)]}"), c)
        prev_same[parity] = key
        reason = guard(m, c)
        if reason:
            return result(Outcome(OutcomeKind.GUARD_TRIPPED, m, reason), c)
        if can_search and (any_frozen or repeated):
            # a repeat with period > 2 is periodic forever and never stagnates
            return search(m, c)
        if optimize or detect_cycles:
            history.setdefault((parity, key), m)
    return result(Outcome(OutcomeKind.BUDGET_EXHAUSTED, budget.max_steps), c)


class TraceMismatch(ValueError):
    pass


def configurations(net: Network, w, trace: list):
    """Yield C0, C1, ... reconstructed from a full or delta trace."""
    c = initial_config(net, w)
    yield c
    for rec in trace:
        c = apply_delta(c, rec.nodes) if rec.delta else {
            nid: frozenset(rec.nodes.get(nid, ())) for nid in net.nodes}
        yield c


def replay(net: Network, w, trace: list, budget: StepBudget | None = None) -> Outcome:
    """Re-execute a recorded trace step by step and re-derive its outcome.

    Every recorded configuration is checked against the step functions;
    :class:`TraceMismatch` is raised on the first disagreement.
    """
    budget = budget or StepBudget(max_steps=len(trace))
    machine = Machine(net)
    out_node = net.output_node
    seen: dict = {}
    configs = configurations(net, w, trace)
    prev = next(configs)
    if prev[out_node]:
        return Outcome(OutcomeKind.ACCEPTED, 0)
    for m, (rec, c) in enumerate(zip(trace, configs), start=1):
        kind = "evo" if m % 2 else "comm"
        if rec.step != m or rec.type != kind:
            raise TraceMismatch(f"record {m}: expected step {m} ({kind}), "
                                f"got step {rec.step} ({rec.type})")
        expected = machine.evolve(prev) if m % 2 else machine.communicate(prev)
        if expected != c:
            raise TraceMismatch(f"step {m}: recorded configuration differs from the "
                                f"{kind} step result")
        if c[out_node]:
            return Outcome(OutcomeKind.ACCEPTED, m)
        key = _key(c)
        if m >= 3 and seen.get(m % 2) == key:
            return Outcome(OutcomeKind.REJECTED_STAGNATION, m)
        seen[m % 2] = key
        counts = {nid: len(ws) for nid, ws in c.items()}
        longest = max((len(x) for ws in c.values() for x in ws), default=0)
        reason = _guard(budget, counts, longest)
        if reason:
            return Outcome(OutcomeKind.GUARD_TRIPPED, m, reason)
        prev = c
        if m >= budget.max_steps:
            break
    return Outcome(OutcomeKind.BUDGET_EXHAUSTED, budget.max_steps)
