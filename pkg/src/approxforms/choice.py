"""Binary choice on a chain of states driven by mixed theta-evaluations.

Each intent bit ``b_i`` selects the pure evaluation ``theta_i^b`` on the
chain ``x1 < x2 < ...``; the evaluation of the whole problem is the
primal boolean form ``theta_1 - (theta_2 - (theta_3 - ...))`` with
``a - b = a and not b``.  Two searches walk the chain from ``x1``, one
stage per theta, alternately maximizing and minimizing:

* exact: jump to the nearest state attaining the stage's global extremum;
* approx: step to an adjacent state only while the value strictly improves.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .algebra import BOOLEAN_PRIMAL
from .decompose import ApproximatingForm
from .errors import LengthMismatchError
from .poset import BOOL, FinitePoset, PosetMap, chain


@dataclass(frozen=True)
class StateChain:
    states: tuple[str, ...] = ("x1", "x2", "x3")

    @cached_property
    def poset(self) -> FinitePoset:
        return chain(self.states)

    @classmethod
    def of_length(cls, m: int) -> "StateChain":
        return cls(tuple(f"x{i}" for i in range(1, m + 1)))

    def __len__(self) -> int:
        return len(self.states)


DEFAULT_CHAIN = StateChain()
INTENTS = tuple((a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1))


def _bits(intents: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(b) for b in intents)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"intent values must be 0 or 1, got {tuple(intents)}")
    return out


def theta(i: int, b: int, states: StateChain = DEFAULT_CHAIN) -> PosetMap:
    """Pure evaluation of rank ``i`` (1-based): 0 below x_i, ``b`` at x_i, 1 above."""
    m = len(states)
    if not 1 <= i <= m:
        raise IndexError(f"rank {i} outside 1..{m}")
    b = _bits([b])[0]
    vals = [1 if i < k else b if i == k else 0 for k in range(1, m + 1)]
    return PosetMap.from_indices(states.poset, BOOL, vals)


def mixed_form(intents: Sequence[int], states: StateChain = DEFAULT_CHAIN) -> ApproximatingForm:
    intents = _bits(intents)
    if len(intents) != len(states):
        raise LengthMismatchError(f"{len(intents)} intents for a chain of {len(states)} states")
    comps = tuple(theta(i, b, states) for i, b in enumerate(intents, start=1))
    return ApproximatingForm(comps, BOOLEAN_PRIMAL, "primal", theorem=2)


def mix_evaluation(t: Sequence[int], states: StateChain = DEFAULT_CHAIN) -> PosetMap:
    return mixed_form(t, states).as_map()


def argmax_states(psi: PosetMap) -> tuple[str, ...]:
    best = max(psi.values)
    return tuple(x for x, v in zip(psi.domain.elements, psi.values) if v == best)


def lefebvre_boolean(b1: int, b2: int, b3: int) -> int:
    """``(b3 -> b2) -> b1``."""
    inner = (1 - b3) | b2
    return (1 - inner) | b1


@dataclass(frozen=True)
class ChoiceTrace:
    intent: tuple[int, ...]
    stage_states: tuple[str, ...]
    chosen: str
    chosen_value: int
    algorithm: str

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "intent": list(self.intent),
            "stages": list(self.stage_states),
            "chosen": self.chosen,
            "value": self.chosen_value,
        }


def _nearest_extremum(values: Sequence[int], start: int, maximize: bool) -> int:
    target = max(values) if maximize else min(values)
    hits = [k for k, v in enumerate(values) if v == target]
    return min(hits, key=lambda k: (abs(k - start), k))


def _greedy_walk(values: Sequence[int], start: int, maximize: bool) -> int:
    pos = start
    while True:
        here = values[pos]
        moves = [k for k in (pos - 1, pos + 1)
                 if 0 <= k < len(values) and (values[k] > here if maximize else values[k] < here)]
        if not moves:
            return pos
        pos = moves[0]


STAGE_RULES: dict[str, Callable[[Sequence[int], int, bool], int]] = {
    "exact": _nearest_extremum,
    "approx": _greedy_walk,
}


def run_generalized(intents: Sequence[int], states: StateChain | None = None,
                    algorithm: str = "approx") -> ChoiceTrace:
    intents = _bits(intents)
    if states is None:
        states = StateChain.of_length(len(intents))
    if len(intents) != len(states):
        raise LengthMismatchError(f"{len(intents)} intents for a chain of {len(states)} states")
    try:
        step = STAGE_RULES[algorithm]
    except KeyError:
        raise ValueError(f"algorithm must be one of {sorted(STAGE_RULES)}") from None
    pos = 0
    visited = []
    for i, b in enumerate(intents):
        pos = step(theta(i + 1, b, states).values, pos, i % 2 == 0)
        visited.append(states.states[pos])
    return ChoiceTrace(intents, tuple(visited), states.states[pos], intents[pos], algorithm)


def run_exact(t: Sequence[int]) -> ChoiceTrace:
    return run_generalized(t, DEFAULT_CHAIN, "exact")


def run_approx(t: Sequence[int]) -> ChoiceTrace:
    return run_generalized(t, DEFAULT_CHAIN, "approx")


@dataclass(frozen=True)
class ChoiceRow:
    intent: tuple[int, int, int]
    exact_state: str
    F: int
    approx_state: str
    f: int

    def as_tuple(self) -> tuple:
        return (self.intent, self.exact_state, self.F, self.approx_state, self.f)


# intent -> (exact state, F, approx state, f), reference values
EXPECTED_CHOICE_TABLE = {
    (0, 0, 0): ("x2", 0, "x2", 0),
    (0, 0, 1): ("x3", 1, "x3", 1),
    (0, 1, 0): ("x1", 0, "x1", 0),
    (0, 1, 1): ("x3", 1, "x1", 0),
    (1, 0, 0): ("x1", 1, "x1", 1),
    (1, 0, 1): ("x3", 1, "x1", 1),
    (1, 1, 0): ("x1", 1, "x1", 1),
    (1, 1, 1): ("x3", 1, "x1", 1),
}


def choice_table() -> list[ChoiceRow]:
    rows = []
    for t in INTENTS:
        ex, ap = run_exact(t), run_approx(t)
        rows.append(ChoiceRow(t, ex.chosen, ex.chosen_value, ap.chosen, ap.chosen_value))
    return rows


def choice_table_diff(rows: Sequence[ChoiceRow] | None = None) -> list[str]:
    """Cells where the computed table departs from the reference values."""
    rows = choice_table() if rows is None else rows
    out = []
    labels = ("exact state", "F", "approx state", "f")
    for row in rows:
        want = EXPECTED_CHOICE_TABLE[row.intent]
        got = row.as_tuple()[1:]
        for lab, g, w in zip(labels, got, want):
            if g != w:
                out.append(f"{row.intent}: {lab} is {g}, expected {w}")
    return out
