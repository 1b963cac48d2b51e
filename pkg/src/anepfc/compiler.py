"""Compile a restricted 2-tag system into the 10-node universal ANEPFC.

The network decrements the first symbol of a bracketed copy of ``φ(a)`` one
index at a time while a counter symbol appended at the right end is
incremented in lock step; when the bracket's head reaches ``a_0`` the counter
has become that head symbol.  Repeating this for every symbol of the
production appends ``φ(a)`` to the word.

Symbol naming (all ids are plain strings):

=================  ===================
structured symbol  id
=================  ===================
``a_k``            user name
``a_0``            ``_0``
``a'`` / ``a''``   ``a'`` / ``a''``
``a°``             ``a^o``
``$`` / ``#``      ``$`` / ``#``
``[x]``            ``[x1.x2]``
``⟨x⟩``            ``<x1.x2>``
``≺x≻``            ``<<x1.x2>>``
``≺a_0≻'``         ``<<_0>>'``
=================  ===================
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import (
    Edge,
    EdgeFilter,
    FilterType,
    Mode,
    Network,
    ProcessorNode,
    Rule,
    RuleKind,
)
from .tag import TagSystem, validate_tag

ZERO = "_0"
DOLLAR = "$"
HASH = "#"
RESERVED = set(".[]<>'^$#")


class InvalidTagSystem(ValueError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def square(x) -> str:
    return "[" + ".".join(x) + "]"


def angle(x) -> str:
    return "<" + ".".join(x) + ">"


def guil(x) -> str:
    return "<<" + ".".join(x) + ">>"


def prime(a: str) -> str:
    return a + "'"


def dprime(a: str) -> str:
    return a + "''"


def circ(a: str) -> str:
    return a + "^o"


GUIL_ZERO = guil((ZERO,))
GUIL_ZERO_PRIME = GUIL_ZERO + "'"


def enumerate_X(t: TagSystem) -> set:
    """All words over ``V ∪ {a_0}`` no longer than the longest production."""
    base = (ZERO,) + t.alphabet
    maxlen = t.max_production_length
    return {x for k in range(maxlen + 1) for x in itertools.product(base, repeat=k)}


@dataclass(frozen=True)
class CompiledNetwork:
    network: Network
    provenance: dict
    tag: TagSystem


NODE_ROLES = {
    "1": "input; marks the production of the head symbol as a bracket and circles the second symbol",
    "2": "appends the fresh counter a_0'",
    "3": "appends the $ end marker",
    "4": "primes the counter twice and decrements the bracket head",
    "5": "increments the counter (primed, or final plain symbol) and turns <x> into <<x>>",
    "6": "removes the $ end marker from the right",
    "7": "marks an exhausted bracket <<_0>> as <<_0>>'",
    "8": "deletes the exhausted bracket from the left end",
    "9": "deletes the circled second symbol from the left end",
    "10": "output; empty rule set",
}


def _check_names(t: TagSystem) -> None:
    for a in t.alphabet:
        if not a or any(ch.isspace() for ch in a) or RESERVED & set(a) or a == ZERO:
            raise InvalidTagSystem([f"symbol name {a!r} is not allowed in compiled networks"])


def _reachable(t: TagSystem) -> set:
    """Bracket symbols reachable from the initial ``[φ(a)]`` under nodes 4 and 5."""
    idx = {a: k for k, a in enumerate((ZERO,) + t.alphabet)}
    base = (ZERO,) + t.alphabet
    todo = [("[", t.productions[a]) for a in t.working]
    seen = set(todo)
    while todo:
        kind, x = todo.pop()
        nxt = []
        if kind in "[«" and x and idx[x[0]] >= 1:
            nxt.append(("<", (base[idx[x[0]] - 1],) + x[1:]))
        if kind == "«" and len(x) >= 2 and x[0] == ZERO and idx[x[1]] >= 1:
            nxt.append(("<", (base[idx[x[1]] - 1],) + x[2:]))
        if kind == "<":
            nxt.append(("«", x))
        for s in nxt:
            if s not in seen:
                seen.add(s)
                todo.append(s)
    render = {"[": square, "<": angle, "«": guil}
    return {render[k](x) for k, x in seen}


def compile_tag_system(t: TagSystem, prune_reachable: bool = False) -> CompiledNetwork:
    bad = [v for v in validate_tag(t) if v.severity == "error"]
    if bad:
        raise InvalidTagSystem(bad)
    _check_names(t)

    n = t.n
    H = t.halt
    V = set(t.alphabet)
    Vp = t.working
    a = ((ZERO,) + t.alphabet).__getitem__  # a(k) is the name of a_k, 0 <= k <= n+1
    X = sorted(enumerate_X(t))
    maxlen = t.max_production_length
    keep = _reachable(t) if prune_reachable else None

    def fam(render, xs):
        out = {render(x) for x in xs}
        return out if keep is None else out & keep

    squares, angles, guils = fam(square, X), fam(angle, X), fam(guil, X)
    primes = {prime(a(k)) for k in range(n + 1)}
    dprimes = {dprime(a(k)) for k in range(n + 1)}
    circles = {circ(s) for s in Vp}

    U = (V | {DOLLAR, HASH, prime(ZERO), dprime(ZERO), GUIL_ZERO_PRIME}
         | {prime(s) for s in Vp} | {dprime(s) for s in Vp} | circles
         | squares | angles | guils)
    expected = (len(V) + 5 + 3 * len(Vp) + len(squares) + len(angles) + len(guils))
    if len(U) != expected:
        raise InvalidTagSystem(["symbol naming is not injective for this alphabet"])

    def sub_rules(pairs):
        return {Rule(lhs, rhs) for lhs, rhs in pairs if lhs in U and rhs in U}

    r4 = {Rule(prime(a(k)), dprime(a(k))) for k in range(n + 1)}
    pairs = []
    for k in range(1, n + 2):
        for x in X:
            if len(x) <= maxlen - 1:
                target = angle((a(k - 1),) + x)
                pairs.append((square((a(k),) + x), target))
                pairs.append((guil((a(k),) + x), target))
            if len(x) <= maxlen - 2:
                pairs.append((guil((ZERO, a(k)) + x), angle((a(k - 1),) + x)))
    r4 |= sub_rules(pairs)
    r5 = ({Rule(dprime(a(k - 1)), prime(a(k))) for k in range(1, n + 1)}
          | {Rule(dprime(a(k - 1)), a(k)) for k in range(1, n + 2)}
          | sub_rules((angle(x), guil(x)) for x in X))

    nodes = [
        ProcessorNode("1", RuleKind.SUBSTITUTION, Mode.STAR,
                      {Rule(s, square(t.productions[s])) for s in Vp}
                      | {Rule(s, circ(s)) for s in Vp}),
        ProcessorNode("2", RuleKind.INSERTION, Mode.RIGHT, {Rule(None, prime(ZERO))}),
        ProcessorNode("3", RuleKind.INSERTION, Mode.RIGHT, {Rule(None, DOLLAR)}),
        ProcessorNode("4", RuleKind.SUBSTITUTION, Mode.STAR, r4),
        ProcessorNode("5", RuleKind.SUBSTITUTION, Mode.STAR, r5),
        ProcessorNode("6", RuleKind.DELETION, Mode.RIGHT, {Rule(DOLLAR, None)}),
        ProcessorNode("7", RuleKind.SUBSTITUTION, Mode.STAR, {Rule(GUIL_ZERO, GUIL_ZERO_PRIME)}),
        ProcessorNode("8", RuleKind.DELETION, Mode.LEFT, {Rule(GUIL_ZERO_PRIME, None)}),
        ProcessorNode("9", RuleKind.DELETION, Mode.LEFT, {Rule(s, None) for s in circles}),
        ProcessorNode("10", RuleKind.SUBSTITUTION, Mode.STAR, set()),
    ]

    zero_led = {guil(x) for x in X if x[:1] == (ZERO,)} & U
    zero_led_long = {guil(x) for x in X if x[:1] == (ZERO,) and len(x) > 1} & U
    other_guils = guils - zero_led
    starts = {square(t.productions[s]) for s in Vp}
    non_v = U - V

    def w(P, F):
        return EdgeFilter(frozenset(P) & U, frozenset(F) & U, FilterType.WEAK)

    listing = [
        ("1", "2", w(circles, primes | {H}),
         "circled word leaves the input node"),
        ("2", "3", w(starts | zero_led_long, {DOLLAR, GUIL_ZERO}),
         "word carrying a fresh counter moves on to receive $"),
        ("3", "4", w({DOLLAR}, {GUIL_ZERO} | angles | dprimes),
         "marked word enters the decrement node"),
        ("4", "5", w(dprimes, squares | guils),
         "decremented word goes to the increment node"),
        ("5", "6", w(guils, dprimes | squares | angles),
         "incremented word goes to have $ removed"),
        ("6", "2", w(zero_led_long, {DOLLAR} | primes | squares | angles | other_guils),
         "next bracket symbol: fetch a new counter"),
        ("6", "3", w(other_guils, {DOLLAR} | squares | angles | zero_led),
         "bracket head not exhausted: continue decrementing"),
        ("6", "7", w({GUIL_ZERO}, {DOLLAR, GUIL_ZERO_PRIME} | (guils - {GUIL_ZERO}) | squares | angles),
         "bracket exhausted"),
        ("7", "8", w({GUIL_ZERO_PRIME}, {GUIL_ZERO}),
         "single exhausted bracket goes to be deleted"),
        ("7", "3", w({GUIL_ZERO}, {DOLLAR}),
         "several exhausted brackets: blocked in node 3"),
        ("8", "9", w(circles, {GUIL_ZERO_PRIME}),
         "word goes to lose its circled symbol"),
        ("9", "10", w({H}, non_v),
         "halting symbol present: accept"),
        ("9", "1", w(set(Vp), {H} | non_v),
         "next tag iteration"),
    ]
    edges = [Edge(x, y, f) for x, y, f, _ in listing]
    net = Network(set(Vp), U, {nd.id: nd for nd in nodes}, edges, "1", "10")
    provenance = {
        "nodes": dict(NODE_ROLES),
        "edges": {f"{x}-{y}": note for x, y, _, note in listing},
        "symbols": {HASH: "declared, never used"},
    }
    return CompiledNetwork(net, provenance, t)
