"""a -> a a, b -> H: "a a" rewrites to itself forever, "b a" halts.
The compiled network accepts exactly the halting one."""
import time

from anepfc import StepBudget, TagSystem, compile_tag_system, run, run_tag

t = TagSystem(("a", "b", "H"), {"a": ("a", "a"), "b": ("H",)})
net = compile_tag_system(t).network

for w in [("b", "a"), ("a", "b"), ("a", "a")]:
    t0 = time.perf_counter()
    out = run(net, w, StepBudget(max_steps=20000)).outcome
    print(f"{' '.join(w)}: tag {run_tag(t, w, 100)}; network {out} "
          f"({time.perf_counter() - t0:.1f}s)")
