"""Compile the two-symbol system a -> b b, b -> H and follow one input
through the ten-node network, printing each milestone word as it appears."""
from anepfc import TagSystem, compile_tag_system, run_tag
from anepfc.harness import acceptance_crossing, milestone_check, path_milestones, traced_run

t = TagSystem(("a", "b", "H"), {"a": ("b", "b"), "b": ("H",)})
w = ("a", "b")

history = []
print("tag computation:", run_tag(t, w, history=history))
print("  " + " -> ".join(" ".join(x) for x in history))

net = compile_tag_system(t).network
print(f"network: {len(net.nodes)} nodes, {len(net.edges)} edges, {len(net.alphabet)} symbols")

result = traced_run(t, w)
print("outcome:", result.outcome)

milestones = path_milestones(t, w)
milestone_check(t, w, milestones, result=result)
for node, word in milestones:
    print(f"  node {node:>2}: {' '.join(word)}")

step, crossing = acceptance_crossing(t, w, result=result)
print(f"accepted at step {step} by {crossing} crossing 9 -> 10")
