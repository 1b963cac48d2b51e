import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from anepfc.engine import (
    InputOutsideAlphabet,
    NetworkInvalid,
    Outcome,
    OutcomeKind,
    StepBudget,
    TraceMismatch,
    TraceRecord,
    UndefinedTime,
    communication_step,
    configurations,
    evolutionary_step,
    initial_config,
    replay,
    run,
    time_of,
)
from anepfc.model import Edge, EdgeFilter, Network, ProcessorNode, Rule, RuleKind

from conftest import faithful_time


def W(s: str) -> tuple:
    return tuple(s)


def stagnating_net() -> Network:
    return Network({"x", "y", "z"}, {"x", "y", "z"},
                   {"1": ProcessorNode("1", "substitution", "*", {Rule("x", "y")}),
                    "2": ProcessorNode("2", "substitution", "*", set())},
                   [Edge("1", "2", EdgeFilter({"y"}, set()))], "1", "2")


class TestInitialConfig:
    def test_input_node_holds_word(self, net2):
        c = initial_config(net2, W("ab"))
        assert c["1"] == {W("ab")}
        assert all(not ws for nid, ws in c.items() if nid != "1")

    def test_empty_word(self, net2):
        assert initial_config(net2, ())["1"] == {()}

    def test_outside_alphabet(self, net2):
        with pytest.raises(InputOutsideAlphabet):
            initial_config(net2, W("aH"))


class TestSteps:
    def test_first_evolution_of_t2(self, net2):
        c1 = evolutionary_step(net2, initial_config(net2, W("ab")))
        assert c1["1"] == {("[b.b]", "b"), ("a^o", "b"), ("a", "[H]"), ("a", "b^o")}
        assert all(not ws for nid, ws in c1.items() if nid != "1")

    def test_first_communication_of_t2(self, net2):
        c1 = evolutionary_step(net2, initial_config(net2, W("ab")))
        c2 = communication_step(net2, c1)
        assert c2["1"] == {("[b.b]", "b"), ("a", "[H]")}
        assert c2["2"] == {("a^o", "b"), ("a", "b^o")}

    def test_empty_configuration(self, net2):
        empty = {nid: frozenset() for nid in net2.nodes}
        assert evolutionary_step(net2, empty) == empty
        assert communication_step(net2, empty) == empty

    def test_word_copied_to_every_passing_neighbour(self):
        net = Network({"a"}, {"a"},
                      {n: ProcessorNode(n, "substitution", "*", set()) for n in "123"},
                      [Edge("1", "2", EdgeFilter({"a"}, set())),
                       Edge("1", "3", EdgeFilter({"a"}, set()))], "1", "3")
        c = communication_step(net, {"1": {W("a")}, "2": set(), "3": set()})
        assert c == {"1": set(), "2": {W("a")}, "3": {W("a")}}


class TestRun:
    def test_t2_bb_accepted(self, net2, t2):
        out = run(net2, W("bb")).outcome
        assert out == Outcome(OutcomeKind.ACCEPTED, faithful_time(t2, "bb"))
        assert str(out) == "ACCEPTED time=48"

    def test_t3_loop_not_accepted(self, net3):
        out = run(net3, W("aa"), StepBudget(20000)).outcome
        assert out.kind is OutcomeKind.BUDGET_EXHAUSTED
        assert str(out) == "BUDGET_EXHAUSTED"

    def test_stagnation_at_three(self):
        out = run(stagnating_net(), W("z")).outcome
        assert out == Outcome(OutcomeKind.REJECTED_STAGNATION, 3)
        assert time_of(out) == 3

    def test_accepts_initial_configuration(self):
        net = Network({"a"}, {"a"}, {"1": ProcessorNode("1", "substitution", "*", set())},
                      [], "1", "1")
        assert run(net, W("a")).outcome == Outcome(OutcomeKind.ACCEPTED, 0)

    def test_guards(self, net2):
        out = run(net2, W("ab"), StepBudget(200, max_words_per_node=3)).outcome
        assert out.kind is OutcomeKind.GUARD_TRIPPED
        assert "words" in out.reason
        out = run(net2, W("ab"), StepBudget(200, max_word_length=4)).outcome
        assert out.kind is OutcomeKind.GUARD_TRIPPED
        out = run(net2, W("aaaaa"), StepBudget(20000, max_states=1000)).outcome
        assert out.kind is OutcomeKind.GUARD_TRIPPED
        assert str(out).startswith("GUARD_TRIPPED ")

    def test_invalid_network_refused(self):
        net = Network({"x"}, {"x", "y"}, stagnating_net().nodes,
                      [Edge("1", "2", EdgeFilter({"y"}, {"y"}))], "1", "2")
        with pytest.raises(NetworkInvalid):
            run(net, W("x"))

    def test_time_undefined_without_halt(self):
        with pytest.raises(UndefinedTime):
            time_of(Outcome(OutcomeKind.BUDGET_EXHAUSTED, 20000))

    def test_detect_cycles(self):
        # the word bounces between two nodes forever: period 4, never stagnates
        net = Network({"a"}, {"a", "o"},
                      {"1": ProcessorNode("1", "substitution", "*", {Rule("o", "a")}),
                       "2": ProcessorNode("2", "substitution", "*", {Rule("o", "a")}),
                       "3": ProcessorNode("3", "substitution", "*", set())},
                      [Edge("1", "2", EdgeFilter({"a"}, set())),
                       Edge("2", "3", EdgeFilter({"o"}, set()))], "1", "3")
        assert run(net, W("a"), StepBudget(50), optimize=False).outcome.kind \
            is OutcomeKind.BUDGET_EXHAUSTED
        out = run(net, W("a"), StepBudget(50), detect_cycles=True, optimize=False).outcome
        assert out.kind is OutcomeKind.REJECTED_STAGNATION
        assert "cycle" in out.reason


class TestTraces:
    def test_full_trace_shape(self, net2):
        result = run(net2, W("bb"), trace_level="full")
        assert [r.step for r in result.trace] == list(range(1, len(result.trace) + 1))
        assert all(r.type == ("evo" if r.step % 2 else "comm") for r in result.trace)
        assert result.trace[-1].nodes["10"] == {W("H")}

    def test_delta_trace_reconstructs(self, net2):
        full = run(net2, W("ab"), trace_level="full").trace
        delta = run(net2, W("ab"), trace_level="delta").trace
        rebuilt = list(configurations(net2, W("ab"), delta))[1:]
        assert [dict(c) for c in rebuilt] == [
            {nid: rec.nodes.get(nid, frozenset()) for nid in net2.nodes} for rec in full]

    def test_replay(self, net2):
        result = run(net2, W("ab"), trace_level="delta")
        assert replay(net2, W("ab"), result.trace) == result.outcome

    def test_replay_detects_tampering(self, net2):
        trace = run(net2, W("bb"), trace_level="full").trace
        rec = trace[5]
        nodes = dict(rec.nodes)
        nodes["1"] = frozenset({W("ba")})
        trace[5] = TraceRecord(rec.step, rec.type, nodes)
        with pytest.raises(TraceMismatch):
            replay(net2, W("bb"), trace)


# ---- properties on random small networks --------------------------------

NODE_IDS = ("1", "2", "3", "4")
SYMS = ("a", "b", "c")


@st.composite
def networks(draw):
    k = draw(st.integers(2, 4))
    ids = NODE_IDS[:k]
    nodes = {}
    for nid in ids:
        kind = draw(st.sampled_from(list(RuleKind)))
        mode = draw(st.sampled_from("*lr"))
        most = 2
        if kind is RuleKind.SUBSTITUTION:
            pool = [Rule(x, y) for x in SYMS for y in SYMS if x != y]
        elif kind is RuleKind.DELETION:
            pool = [Rule(x, None) for x in SYMS]
        else:
            # one end-insertion rule: anything wider makes the literal run exponential
            pool = [Rule(None, x) for x in SYMS]
            mode = draw(st.sampled_from("lr"))
            most = 1
        rules = draw(st.sets(st.sampled_from(pool), min_size=0 if nid == ids[-1] else 1,
                             max_size=most))
        nodes[nid] = ProcessorNode(nid, kind, mode, rules)
    pairs = [(x, y) for i, x in enumerate(ids) for y in ids[i + 1:]]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    edges = []
    for x, y in chosen:
        P = draw(st.sets(st.sampled_from(SYMS)))
        F = draw(st.sets(st.sampled_from(SYMS))) - P
        edges.append(Edge(x, y, EdgeFilter(P, F, draw(st.sampled_from("sw")))))
    return Network({"a", "b"}, set(SYMS), nodes, edges, ids[0], ids[-1])


inputs = st.lists(st.sampled_from("ab"), max_size=3).map(tuple)
prop = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@prop
@given(networks(), inputs)
def test_optimized_run_equals_literal_run(net, w):
    budget = StepBudget(40)
    fast = run(net, w, budget).outcome
    slow = run(net, w, budget, optimize=False).outcome
    assert fast == slow


@prop
@given(networks(), inputs)
def test_trace_alternation_and_early_stagnation(net, w):
    result = run(net, w, StepBudget(30), trace_level="full")
    for m, rec in enumerate(result.trace, start=1):
        assert rec.step == m
        assert rec.type == ("evo" if m % 2 else "comm")
    if result.outcome.kind is OutcomeKind.REJECTED_STAGNATION:
        assert result.outcome.time >= 3


@prop
@given(networks(), inputs)
def test_no_loss_and_determinism(net, w):
    trace = run(net, w, StepBudget(20), trace_level="full").trace
    again = run(net, w, StepBudget(20), trace_level="full").trace
    assert trace == again
    configs = list(configurations(net, w, trace))
    for m in range(2, len(configs), 2):
        before, after = configs[m - 1], configs[m]
        for nid, ws in before.items():
            reach = set(after[nid])
            for e in net.incident(nid):
                reach |= after[e.other(nid)]
            assert ws <= reach


@prop
@given(networks(), inputs, st.integers(1, 30), st.integers(0, 30))
def test_budget_monotone(net, w, k, extra):
    first = run(net, w, StepBudget(k)).outcome
    if first.halted:
        assert run(net, w, StepBudget(k + extra)).outcome == first


@prop
@given(networks(), inputs)
def test_replay_reproduces_outcome(net, w):
    result = run(net, w, StepBudget(25), trace_level="delta")
    if result.outcome.halted:
        assert replay(net, w, result.trace) == result.outcome
