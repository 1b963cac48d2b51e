"""JSON documents: networks, tag systems, traces and reports.

Networks are serialized canonically (every array sorted) so that equal
networks always produce byte-identical files.
"""
from __future__ import annotations

import json
from pathlib import Path

from .engine import TraceRecord
from .model import Edge, EdgeFilter, Network, ProcessorNode, Rule
from .tag import TagSystem


class DocumentError(ValueError):
    pass


def network_to_dict(net: Network) -> dict:
    nodes = []
    for node in net.nodes.values():
        rules = sorted(({"from": r.lhs, "to": r.rhs} for r in node.rules),
                       key=lambda r: (r["from"] or "", r["to"] or ""))
        nodes.append({"id": node.id, "kind": node.kind.value, "mode": node.mode.value,
                      "rules": rules})
    edges = []
    for e in net.edges:
        a, b = sorted((e.a, e.b))
        edges.append({"a": a, "b": b, "beta": e.filter.type.value,
                      "P": sorted(e.filter.permitting), "F": sorted(e.filter.forbidding)})
    return {
        "inputAlphabet": sorted(net.input_alphabet),
        "networkAlphabet": sorted(net.alphabet),
        "nodes": sorted(nodes, key=lambda n: n["id"]),
        "edges": sorted(edges, key=lambda e: (e["a"], e["b"])),
        "input": net.input_node,
        "output": net.output_node,
    }


def network_from_dict(doc: dict) -> Network:
    try:
        nodes = {}
        for nd in doc["nodes"]:
            rules = {Rule(r.get("from"), r.get("to")) for r in nd.get("rules", ())}
            nodes[nd["id"]] = ProcessorNode(nd["id"], nd["kind"], nd["mode"], rules)
        edges = [Edge(e["a"], e["b"], EdgeFilter(e.get("P", ()), e.get("F", ()), e["beta"]))
                 for e in doc["edges"]]
        return Network(doc["inputAlphabet"], doc["networkAlphabet"], nodes, edges,
                       doc["input"], doc["output"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed network document: {exc!r}") from exc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_network(net: Network, path) -> None:
    Path(path).write_text(dumps(network_to_dict(net)), encoding="utf-8")


def read_network(path) -> Network:
    return network_from_dict(_load(path))


def tag_to_dict(t: TagSystem) -> dict:
    return {"alphabet": list(t.alphabet), "halt": t.halt,
            "productions": {a: list(p) for a, p in t.productions.items()}}


def tag_from_dict(doc: dict) -> TagSystem:
    try:
        alphabet = list(doc["alphabet"])
        halt = doc.get("halt", alphabet[-1] if alphabet else None)
        prods = doc["productions"]
        if not isinstance(prods, dict):
            raise TypeError("productions must be an object")
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed tag-system document: {exc!r}") from exc
    if not alphabet or halt != alphabet[-1]:
        raise DocumentError("'halt' must equal the last alphabet entry")
    return TagSystem(tuple(alphabet), {a: tuple(p) for a, p in prods.items()})


def read_tag(path) -> TagSystem:
    return tag_from_dict(_load(path))


def _load(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc


def render_word(w) -> str:
    return " ".join(w)


def parse_word(text: str, alphabet) -> tuple:
    """Parse whitespace-separated ids; single-character shorthand is allowed
    only when every id of ``alphabet`` is one character long."""
    text = text.strip()
    if not text:
        return ()
    if any(ch.isspace() for ch in text):
        return tuple(text.split())
    if text in alphabet:
        return (text,)
    if all(len(a) == 1 for a in alphabet):
        return tuple(text)
    return (text,)


def _word(text: str) -> tuple:
    return tuple(text.split())


def trace_to_lines(trace) -> list[str]:
    lines = []
    for rec in trace:
        if rec.delta:
            nodes = {nid: {"+": sorted(map(render_word, d["+"])),
                           "-": sorted(map(render_word, d["-"]))}
                     for nid, d in sorted(rec.nodes.items())}
        else:
            nodes = {nid: sorted(map(render_word, ws)) for nid, ws in sorted(rec.nodes.items())}
        doc = {"step": rec.step, "type": rec.type, "nodes": nodes}
        if rec.delta:
            doc["delta"] = True
        lines.append(json.dumps(doc, sort_keys=True, ensure_ascii=False))
    return lines


def write_trace(trace, path) -> None:
    Path(path).write_text("".join(line + "\n" for line in trace_to_lines(trace)), encoding="utf-8")


def read_trace(path) -> list:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        nodes = rec["nodes"]
        delta = rec.get("delta", False) or any(isinstance(v, dict) for v in nodes.values())
        if delta:
            nodes = {nid: {"+": frozenset(map(_word, d.get("+", ()))),
                           "-": frozenset(map(_word, d.get("-", ())))}
                     for nid, d in nodes.items()}
        else:
            nodes = {nid: frozenset(map(_word, ws)) for nid, ws in nodes.items()}
        out.append(TraceRecord(rec["step"], rec["type"], nodes, delta))
    return out
