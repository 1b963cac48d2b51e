"""Data model and single-word semantics of accepting networks of
evolutionary processors with filtered connections (ANEPFCs).

Symbols are plain strings and words are tuples of symbols.  Everything in
this module is immutable and side-effect free.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Symbol = str
Word = tuple  # tuple[Symbol, ...]

EMPTY: Word = ()


class RuleKind(str, enum.Enum):
    SUBSTITUTION = "substitution"
    DELETION = "deletion"
    INSERTION = "insertion"


class Mode(str, enum.Enum):
    STAR = "*"
    LEFT = "l"
    RIGHT = "r"


class FilterType(str, enum.Enum):
    STRONG = "s"
    WEAK = "w"


@dataclass(frozen=True, order=True)
class Rule:
    """A point mutation ``lhs -> rhs``; ``None`` stands for the empty word."""

    lhs: Symbol | None
    rhs: Symbol | None

    def __post_init__(self):
        if self.lhs is None and self.rhs is None:
            raise ValueError("rule cannot rewrite the empty word to itself")
        if self.lhs == self.rhs:
            raise ValueError(f"substitution {self.lhs}->{self.rhs} needs distinct symbols")

    @property
    def kind(self) -> RuleKind:
        if self.lhs is None:
            return RuleKind.INSERTION
        if self.rhs is None:
            return RuleKind.DELETION
        return RuleKind.SUBSTITUTION

    def symbols(self) -> set[Symbol]:
        return {s for s in (self.lhs, self.rhs) if s is not None}

    def __str__(self):
        return f"{self.lhs or 'ε'}->{self.rhs or 'ε'}"


def substitution(a: Symbol, b: Symbol) -> Rule:
    return Rule(a, b)


def deletion(a: Symbol) -> Rule:
    return Rule(a, None)


def insertion(a: Symbol) -> Rule:
    return Rule(None, a)


@dataclass(frozen=True)
class EdgeFilter:
    permitting: frozenset = frozenset()
    forbidding: frozenset = frozenset()
    type: FilterType = FilterType.WEAK

    def __post_init__(self):
        object.__setattr__(self, "permitting", frozenset(self.permitting))
        object.__setattr__(self, "forbidding", frozenset(self.forbidding))
        object.__setattr__(self, "type", FilterType(self.type))


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    filter: EdgeFilter

    @property
    def ends(self) -> frozenset:
        return frozenset((self.a, self.b))

    def other(self, node: str) -> str:
        return self.b if node == self.a else self.a


@dataclass(frozen=True)
class ProcessorNode:
    id: str
    kind: RuleKind
    mode: Mode
    rules: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "kind", RuleKind(self.kind))
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "rules", frozenset(self.rules))


@dataclass(frozen=True)
class Network:
    input_alphabet: frozenset
    alphabet: frozenset
    nodes: Mapping[str, ProcessorNode]
    edges: tuple
    input_node: str
    output_node: str

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not isinstance(self.nodes, dict):
            object.__setattr__(self, "nodes", {n.id: n for n in self.nodes})

    def __hash__(self):
        return hash((self.input_alphabet, self.alphabet, tuple(self.nodes), self.edges,
                     self.input_node, self.output_node))

    @property
    def size(self) -> int:
        return len(self.nodes)

    def incident(self, node: str) -> list[Edge]:
        return [e for e in self.edges if node in (e.a, e.b)]


# node id -> set of words
Configuration = dict


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    severity: str = "error"

    def __str__(self):
        return f"{self.severity}: {self.message}"


def errors(violations: Iterable[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == "error"]


# -- single-word semantics ---------------------------------------------------

def alph(w: Word) -> frozenset:
    return frozenset(w)


def apply_rule(rule: Rule, mode: Mode, w: Word) -> set:
    """Return the set of words obtained by acting with ``rule`` on ``w``."""
    mode = Mode(mode)
    w = tuple(w)
    a, b = rule.lhs, rule.rhs
    kind = rule.kind
    if kind is RuleKind.SUBSTITUTION:
        out = {w[:i] + (b,) + w[i + 1:] for i, s in enumerate(w) if s == a}
        return out or {w}
    if kind is RuleKind.DELETION:
        if mode is Mode.STAR:
            out = {w[:i] + w[i + 1:] for i, s in enumerate(w) if s == a}
            return out or {w}
        if mode is Mode.LEFT:
            return {w[1:]} if w[:1] == (a,) else {w}
        return {w[:-1]} if w[-1:] == (a,) else {w}
    if mode is Mode.STAR:
        return {w[:i] + (b,) + w[i:] for i in range(len(w) + 1)}
    if mode is Mode.LEFT:
        return {(b,) + w}
    return {w + (b,)}


class RuleSet:
    """Compiled form of a node's rules, applied to many words quickly.

    Results are identical to the union of :func:`apply_rule` over all rules.
    """

    def __init__(self, rules: Iterable[Rule], mode: Mode):
        self.rules = frozenset(rules)
        self.mode = Mode(mode)
        kinds = {r.kind for r in self.rules}
        if len(kinds) > 1:
            raise ValueError("rule set mixes rule kinds")
        self.kind = kinds.pop() if kinds else None
        self.lhs = frozenset(r.lhs for r in self.rules if r.lhs is not None)
        self.inserted = tuple(sorted(r.rhs for r in self.rules if r.lhs is None))
        targets: dict = {}
        for r in sorted(self.rules):
            if r.kind is RuleKind.SUBSTITUTION:
                targets.setdefault(r.lhs, []).append(r.rhs)
        self.targets = {k: tuple(v) for k, v in targets.items()}

    def apply(self, w: Word) -> set:
        kind, mode = self.kind, self.mode
        if kind is None:
            return set()
        if kind is RuleKind.INSERTION:
            if mode is Mode.RIGHT:
                return {w + (a,) for a in self.inserted}
            if mode is Mode.LEFT:
                return {(a,) + w for a in self.inserted}
            return {w[:i] + (a,) + w[i:] for a in self.inserted for i in range(len(w) + 1)}
        out = set()
        if kind is RuleKind.SUBSTITUTION or mode is Mode.STAR:
            # w survives iff at least one rule has no occurrence to act on
            if not self.lhs <= set(w):
                out.add(w)
            if kind is RuleKind.SUBSTITUTION:
                targets = self.targets
                for i, s in enumerate(w):
                    for b in targets.get(s, ()):
                        out.add(w[:i] + (b,) + w[i + 1:])
            else:
                lhs = self.lhs
                out.update(w[:i] + w[i + 1:] for i, s in enumerate(w) if s in lhs)
            return out
        end = w[:1] if mode is Mode.LEFT else w[-1:]
        if not end or end[0] not in self.lhs:
            return {w}
        if len(self.lhs) > 1:
            out.add(w)
        out.add(w[1:] if mode is Mode.LEFT else w[:-1])
        return out

    def apply_all(self, words: Iterable[Word]) -> set:
        out = set()
        for w in words:
            out |= self.apply(w)
        return out


def apply_ruleset(node: ProcessorNode, words: Iterable[Word]) -> set:
    return RuleSet(node.rules, node.mode).apply_all(tuple(w) for w in words)


def passes(symbols: frozenset | set, f: EdgeFilter) -> bool:
    """Filter predicate evaluated on an already computed ``alph(w)``."""
    if not f.forbidding.isdisjoint(symbols):
        return False
    if f.type is FilterType.STRONG:
        return f.permitting <= symbols
    return not f.permitting.isdisjoint(symbols)


def filter_pass(w: Word, f: EdgeFilter) -> bool:
    return passes(set(w), f)


# -- structural validation -------------------------------------------------

def validate_network(net: Network) -> list[Violation]:
    out: list[Violation] = []
    U = net.alphabet

    def bad(code, msg, severity="error"):
        out.append(Violation(code, msg, severity))

    if not net.input_alphabet <= U:
        extra = sorted(net.input_alphabet - U)
        bad("input-alphabet", f"input alphabet not contained in network alphabet: {extra}")
    for which, nid in (("input", net.input_node), ("output", net.output_node)):
        if nid not in net.nodes:
            bad("missing-node", f"{which} node {nid!r} does not exist")
    for nid, node in net.nodes.items():
        if nid != node.id:
            bad("node-id", f"node keyed {nid!r} has id {node.id!r}")
        kinds = {r.kind for r in node.rules}
        if len(kinds) > 1:
            bad("mixed-rules", f"node {nid}: mixed rule kinds {sorted(k.value for k in kinds)}")
        elif kinds and kinds != {node.kind}:
            bad("rule-kind", f"node {nid}: declared {node.kind.value} but has "
                             f"{kinds.pop().value} rules")
        for r in sorted(node.rules):
            missing = r.symbols() - U
            if missing:
                bad("symbol", f"node {nid}: rule {r} uses symbols outside U: {sorted(missing)}")
        if not node.rules and nid != net.output_node:
            bad("empty-rules", f"node {nid}: empty rule set on a non-output node", "warning")
    seen = set()
    for e in net.edges:
        label = f"edge {{{e.a},{e.b}}}"
        if e.a == e.b:
            bad("self-loop", f"{label}: self-loop")
        for end in (e.a, e.b):
            if end not in net.nodes:
                bad("missing-node", f"{label}: unknown node {end!r}")
        if e.ends in seen:
            bad("duplicate-edge", f"{label}: duplicate edge")
        seen.add(e.ends)
        f = e.filter
        if f.permitting & f.forbidding:
            bad("filter-overlap", f"{label}: filter sets not disjoint "
                                  f"({sorted(f.permitting & f.forbidding)})")
        missing = (f.permitting | f.forbidding) - U
        if missing:
            bad("symbol", f"{label}: filter symbols outside U: {sorted(missing)}")
    if net.input_node in net.nodes:
        adj: dict = {n: set() for n in net.nodes}
        for e in net.edges:
            if e.a in adj and e.b in adj:
                adj[e.a].add(e.b)
                adj[e.b].add(e.a)
        reached = {net.input_node}
        todo = deque(reached)
        while todo:
            for m in adj[todo.popleft()] - reached:
                reached.add(m)
                todo.append(m)
        for nid in net.nodes:
            if nid not in reached:
                bad("unreachable", f"node {nid} is unreachable from the input node", "warning")
    return out
