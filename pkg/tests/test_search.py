from hypothesis import given
from hypothesis import strategies as st

from anepfc.model import Mode, Rule, RuleSet
from anepfc.search import apply_runs, decode, encode

words = st.lists(st.sampled_from("ab$"), max_size=8).map(tuple)
SYMS = "ab$"
rule_sets = st.one_of(
    st.sets(st.sampled_from([Rule(x, y) for x in SYMS for y in SYMS if x != y]), max_size=3),
    st.sets(st.sampled_from([Rule(x, None) for x in SYMS]), max_size=3),
    st.sets(st.sampled_from([Rule(None, x) for x in SYMS]), max_size=3),
)


def test_encode_example():
    assert encode(("a", "a", "$", "$", "$", "a")) == (("a", 2), ("$", 3), ("a", 1))
    assert encode(()) == ()


@given(words)
def test_roundtrip(w):
    runs = encode(w)
    assert decode(runs) == w
    # adjacent runs always differ and counts are positive
    assert all(c > 0 for _, c in runs)
    assert all(x[0] != y[0] for x, y in zip(runs, runs[1:]))


@given(rule_sets, st.sampled_from(list(Mode)), words)
def test_apply_runs_matches_word_semantics(rules, mode, w):
    rs = RuleSet(rules, mode)
    assert apply_runs(rs, encode(w)) == {encode(x) for x in rs.apply(w)}
