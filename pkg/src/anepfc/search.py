"""Earliest-acceptance search over (node, word, parity) states.

Every word of a configuration evolves and travels independently of the
others, so ``C_t`` is exactly the set of states reachable from the initial
state by walks of length ``t``.  Once no stagnation halt can occur any more,
the acceptance time is the breadth-first distance to the output node, and a
breadth-first search visits every state once where the literal run would
re-simulate every time-shifted copy of it.

Words are run-length encoded here, as tuples of ``(symbol, count)`` pairs,
so that long runs of an inserted marker cost O(1).
"""
from __future__ import annotations

from .model import Mode, RuleKind, RuleSet, passes


def encode(w) -> tuple:
    runs = []
    for s in w:
        if runs and runs[-1][0] == s:
            runs[-1][1] += 1
        else:
            runs.append([s, 1])
    return tuple((s, c) for s, c in runs)


def decode(runs) -> tuple:
    return tuple(s for s, c in runs for _ in range(c))


def _join(*parts) -> tuple:
    out = []
    for part in parts:
        for s, c in part:
            if c <= 0:
                continue
            if out and out[-1][0] == s:
                out[-1] = (s, out[-1][1] + c)
            else:
                out.append((s, c))
    return tuple(out)


def _replace(runs, i, s, c, j, b, left, right) -> tuple:
    """Replace occurrence ``j`` of run ``i`` (symbol ``s`` repeated ``c``) by ``b``."""
    lo, hi = i, i + 1
    mid = []
    if j:
        mid.append((s, j))
    elif left is not None and left[0] == b:
        lo -= 1
        b_count = left[1] + 1
        mid.append((b, b_count))
    if not mid or mid[-1][0] != b:
        mid.append((b, 1))
    if j < c - 1:
        mid.append((s, c - 1 - j))
    elif right is not None and right[0] == b:
        hi += 1
        mid[-1] = (b, mid[-1][1] + right[1])
    return runs[:lo] + tuple(mid) + runs[hi:]


def apply_runs(rs: RuleSet, runs: tuple) -> set:
    """``RuleSet.apply`` on a run-length encoded word."""
    kind, mode = rs.kind, rs.mode
    if kind is None:
        return set()
    if kind is RuleKind.INSERTION:
        out = set()
        for a in rs.inserted:
            if mode is Mode.RIGHT:
                out.add(_join(runs, ((a, 1),)))
            elif mode is Mode.LEFT:
                out.add(_join(((a, 1),), runs))
            else:
                for i in range(len(runs) + 1):
                    out.add(_join(runs[:i], ((a, 1),), runs[i:]))
                for i, (s, c) in enumerate(runs):
                    if s != a:
                        for j in range(1, c):
                            out.add(runs[:i] + ((s, j), (a, 1), (s, c - j)) + runs[i + 1:])
        return out
    symbols = {s for s, _ in runs}
    out = set()
    if kind is RuleKind.SUBSTITUTION or mode is Mode.STAR:
        if not rs.lhs <= symbols:
            out.add(runs)
        last = len(runs) - 1
        targets = rs.targets
        for i, (s, c) in enumerate(runs):
            if s not in rs.lhs:
                continue
            if kind is RuleKind.DELETION:
                out.add(_join(runs[:i], ((s, c - 1),), runs[i + 1:]))
                continue
            left = runs[i - 1] if i else None
            right = runs[i + 1] if i < last else None
            for b in targets[s]:
                for j in range(c):
                    out.add(_replace(runs, i, s, c, j, b, left, right))
        return out
    if not runs:
        return {runs}
    i = 0 if mode is Mode.LEFT else len(runs) - 1
    s, c = runs[i]
    if s not in rs.lhs:
        return {runs}
    if len(rs.lhs) > 1:
        out.add(runs)
    out.add(_join(runs[:i], ((s, c - 1),), runs[i + 1:]))
    return out


def earliest_acceptance(machine, config, start: int, max_steps: int,
                        max_states: int | None = None):
    """Breadth-first search from the configuration formed at step ``start``.

    Returns ``("accepted", t)``, ``("exhausted", max_steps)`` or
    ``("guard", t, reason)``.  States that can provably never leave a growing
    node are not expanded.
    """
    out_node = machine.net.output_node
    growers = machine.growers
    links = machine.links
    rulesets = machine.rulesets

    def inert(nid, runs):
        a, _ = growers[nid]
        symbols = {s for s, _ in runs}
        symbols.add(a)
        return not any(passes(symbols, f) for _, f in links[nid])

    frontier = set()
    for nid, ws in config.items():
        for w in ws:
            runs = encode(w)
            if nid in growers and inert(nid, runs):
                continue
            frontier.add((nid, runs))
    seen = [set(), set()]
    seen[start % 2].update(frontier)
    total = len(frontier)
    for t in range(start + 1, max_steps + 1):
        if not frontier:
            break
        nxt = set()
        if t % 2:
            for nid, runs in frontier:
                rs = rulesets[nid]
                for r in apply_runs(rs, runs):
                    nxt.add((nid, r))
        else:
            for nid, runs in frontier:
                symbols = {s for s, _ in runs}
                moved = False
                for other, f in links[nid]:
                    if passes(symbols, f):
                        nxt.add((other, runs))
                        moved = True
                if not moved:
                    nxt.add((nid, runs))
        layer = seen[t % 2]
        nxt -= layer
        if t % 2 == 0:
            nxt = {(nid, r) for nid, r in nxt if nid not in growers or not inert(nid, r)}
        if any(nid == out_node for nid, _ in nxt):
            return ("accepted", t)
        layer |= nxt
        total += len(nxt)
        if max_states is not None and total > max_states:
            return ("guard", t, f"search-states count={total} limit={max_states}")
        frontier = nxt
    return ("exhausted", max_steps)
