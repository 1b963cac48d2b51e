import pytest
from hypothesis import given
from hypothesis import strategies as st

from anepfc.harness import GeneratorSpec, random_tag_system
from anepfc.model import errors
from anepfc.tag import HaltingWordGiven, TagSystem, is_halting_word, run_tag, tag_step, validate_tag

from conftest import T2, T3


def W(s: str) -> tuple:
    return tuple(s)


def test_t2_run():
    history = []
    out = run_tag(T2, W("ab"), history=history)
    assert out.halted and out.word == ("H",) and out.iterations == 2
    assert history == [W("ab"), W("bb"), ("H",)]
    assert str(out) == "HALTED word=H iterations=2"


def test_t2_halts_on_H():
    out = run_tag(T2, W("bb"))
    assert out.word == W("H") and out.iterations == 1


def test_t3_loops():
    out = run_tag(T3, W("aa"), 1000)
    assert not out.halted
    assert str(out) == "TAG_BUDGET_EXHAUSTED"
    assert tag_step(T3, W("aa")) == W("aa")


def test_halting_inputs_take_zero_iterations():
    for w in [(), W("a"), W("aH"), W("Hb")]:
        assert run_tag(T2, w).iterations == 0
        assert is_halting_word(T2, w)


def test_step_on_halting_word_raises():
    with pytest.raises(HaltingWordGiven):
        tag_step(T2, W("a"))


def test_accessors():
    assert T2.halt == "H" and T2.n == 2 and T2.working == ("a", "b")
    assert T2.index("a") == 1 and T2.index("H") == 3
    assert T2.max_production_length == 2


@pytest.mark.parametrize("prods,code", [
    ({"a": ("b", "b")}, "missing-production"),
    ({"a": ("b",), "b": ("H",)}, "short-production"),
    ({"a": ("H",), "b": ("H",)}, "halt-unique"),
    ({"a": ("b", "b"), "b": ("a", "a")}, "halt-unique"),
    ({"a": ("b", "q"), "b": ("H",)}, "symbol"),
    ({"a": ("b", "b"), "b": ("H",), "H": ("a", "a")}, "halt-production"),
])
def test_validation_errors(prods, code):
    assert code in {v.code for v in errors(validate_tag(TagSystem(("a", "b", "H"), prods)))}


def test_inner_halt_is_a_warning():
    out = validate_tag(TagSystem(("a", "b", "H"), {"a": ("b", "H"), "b": ("H",)}))
    assert [v.code for v in out] == ["inner-halt"]
    assert not errors(out)


def test_examples_valid():
    assert validate_tag(T2) == [] and validate_tag(T3) == []


words = st.lists(st.sampled_from("ab"), min_size=2, max_size=8).map(tuple)


@given(words)
def test_step_length(w):
    for t in (T2, T3):
        assert len(tag_step(t, w)) == len(w) - 2 + len(t.productions[w[0]])


@given(words, st.integers(0, 30), st.integers(0, 30))
def test_budget_monotone(w, k, extra):
    first = run_tag(T2, w, k)
    if first.halted:
        assert run_tag(T2, w, k + extra) == first


@given(st.integers(0, 10_000), st.integers(1, 4), st.integers(2, 4))
def test_generator_deterministic_and_valid(seed, n, maxlen):
    spec = GeneratorSpec(seed, n, maxlen)
    t = random_tag_system(spec)
    assert t == random_tag_system(spec) and t.productions == random_tag_system(spec).productions
    assert validate_tag(t) == [] or not errors(validate_tag(t))
    assert t.n == n and t.halt == "H"
    assert all(2 <= len(p) <= maxlen for p in t.productions.values() if p != ("H",))
