"""Restricted 2-tag systems and their interpreter (the halting oracle)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .model import Violation, Word


class HaltingWordGiven(ValueError):
    pass


@dataclass(frozen=True)
class TagSystem:
    """A 2-tag system over ``alphabet``; the last symbol is the halting symbol.

    >>> t = TagSystem(("a", "b", "H"), {"a": ("b", "b"), "b": ("H",)})
    >>> t.halt, t.n
    ('H', 2)
    """

    alphabet: tuple
    productions: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "productions",
                           {a: tuple(p) for a, p in self.productions.items()})

    @property
    def halt(self) -> str:
        return self.alphabet[-1]

    @property
    def n(self) -> int:
        return len(self.alphabet) - 1

    @property
    def working(self) -> tuple:
        """V' = V minus the halting symbol, in alphabet order."""
        return self.alphabet[:-1]

    def index(self, symbol: str) -> int:
        """1-based position of ``symbol`` in the alphabet."""
        return self.alphabet.index(symbol) + 1

    @property
    def max_production_length(self) -> int:
        return max((len(p) for p in self.productions.values()), default=1)


def validate_tag(t: TagSystem) -> list[Violation]:
    out = []
    if not t.alphabet:
        return [Violation("alphabet", "alphabet is empty")]
    if len(set(t.alphabet)) != len(t.alphabet):
        out.append(Violation("alphabet", "alphabet has repeated symbols"))
    halt = t.halt
    if halt in t.productions:
        out.append(Violation("halt-production", f"halting symbol {halt} has a production"))
    to_halt = []
    for a in t.working:
        if a not in t.productions:
            out.append(Violation("missing-production", f"symbol {a} has no production"))
            continue
        p = t.productions[a]
        if p == (halt,):
            to_halt.append(a)
        elif len(p) < 2:
            out.append(Violation("short-production",
                                 f"production of {a} has length {len(p)}; needs >= 2 or {halt}"))
        elif halt in p:
            out.append(Violation("inner-halt",
                                 f"production of {a} contains {halt}; halts once appended",
                                 "warning"))
        unknown = set(p) - set(t.alphabet)
        if unknown:
            out.append(Violation("symbol", f"production of {a} uses unknown symbols {sorted(unknown)}"))
    extra = set(t.productions) - set(t.alphabet)
    if extra:
        out.append(Violation("symbol", f"productions for unknown symbols {sorted(extra)}"))
    if len(to_halt) != 1:
        what = "missing" if not to_halt else f"not unique ({', '.join(to_halt)})"
        out.append(Violation("halt-unique", f"H production {what}"))
    return out


def is_halting_word(t: TagSystem, w: Word) -> bool:
    return len(w) < 2 or t.halt in w


def tag_step(t: TagSystem, w: Word) -> Word:
    w = tuple(w)
    if is_halting_word(t, w):
        raise HaltingWordGiven(f"{' '.join(w) or 'ε'} is a halting word")
    return w[2:] + t.productions[w[0]]


@dataclass(frozen=True)
class TagOutcome:
    halted: bool
    word: Word
    iterations: int

    def __str__(self):
        if self.halted:
            return f"HALTED word={' '.join(self.word)} iterations={self.iterations}"
        return "TAG_BUDGET_EXHAUSTED"


def run_tag(t: TagSystem, w: Word, max_iterations: int = 1000,
            history: list | None = None) -> TagOutcome:
    """Iterate the tag operation until a halting word or the budget.

    When ``history`` is a list, every word of the computation is appended.
    """
    w = tuple(w)
    if history is not None:
        history.append(w)
    for k in range(max_iterations):
        if is_halting_word(t, w):
            return TagOutcome(True, w, k)
        w = tag_step(t, w)
        if history is not None:
            history.append(w)
    return TagOutcome(is_halting_word(t, w), w, max_iterations)
