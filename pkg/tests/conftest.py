import pytest

from anepfc.compiler import compile_tag_system
from anepfc.tag import TagSystem

T2 = TagSystem(("a", "b", "H"), {"a": ("b", "b"), "b": ("H",)})
T3 = TagSystem(("a", "b", "H"), {"a": ("a", "a"), "b": ("H",)})


def faithful_time(t: TagSystem, w) -> int:
    """Acceptance time of the step-by-step simulation, counted by hand from
    the construction: 4 steps in node 1, 2 each in nodes 7, 8 and 9, and for
    every appended symbol a_i one visit to node 2 (2 steps) plus i rounds of
    3 -> 4 -> 5 -> 6 (2 + 4 + 4 + 2 steps)."""
    total = 0
    w = tuple(w)
    while len(w) >= 2 and t.halt not in w:
        x = t.productions[w[0]]
        total += 10 + sum(2 + 12 * t.index(s) for s in x)
        w = w[2:] + x
    return total


@pytest.fixture(scope="session")
def t2():
    return T2


@pytest.fixture(scope="session")
def t3():
    return T3


@pytest.fixture(scope="session")
def net2():
    return compile_tag_system(T2).network


@pytest.fixture(scope="session")
def net3():
    return compile_tag_system(T3).network
