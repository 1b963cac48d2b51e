import json

import pytest
from hypothesis import given, settings

from anepfc import documents
from anepfc.documents import DocumentError
from anepfc.engine import StepBudget, run

from conftest import T2
from test_engine import inputs, networks


def test_tag_roundtrip():
    assert documents.tag_from_dict(documents.tag_to_dict(T2)) == T2


def test_tag_halt_must_be_last():
    with pytest.raises(DocumentError):
        documents.tag_from_dict({"alphabet": ["a", "H"], "halt": "a", "productions": {}})
    with pytest.raises(DocumentError):
        documents.tag_from_dict({"alphabet": ["a", "H"]})


def test_malformed_network():
    with pytest.raises(DocumentError):
        documents.network_from_dict({"nodes": []})


def test_invalid_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{nope")
    with pytest.raises(DocumentError):
        documents.read_network(p)


def test_parse_word():
    assert documents.parse_word("ab", {"a", "b"}) == ("a", "b")
    assert documents.parse_word("a b", {"a", "b"}) == ("a", "b")
    assert documents.parse_word("", {"a"}) == ()
    assert documents.parse_word("aa", {"aa", "b"}) == ("aa",)


@settings(max_examples=60, deadline=None)
@given(networks())
def test_network_roundtrip(net):
    doc = documents.network_to_dict(net)
    back = documents.network_from_dict(json.loads(documents.dumps(doc)))
    assert documents.network_to_dict(back) == doc


def test_compiled_network_roundtrip(net2):
    doc = documents.network_to_dict(net2)
    assert documents.network_to_dict(documents.network_from_dict(doc)) == doc


@settings(max_examples=40, deadline=None)
@given(networks(), inputs)
def test_trace_roundtrip(tmp_path_factory, net, w):
    path = tmp_path_factory.mktemp("t") / "trace.jsonl"
    for level in ("full", "delta"):
        trace = run(net, w, StepBudget(12), trace_level=level).trace
        documents.write_trace(trace, path)
        assert documents.read_trace(path) == trace
