"""Seeded random decomposition instances and the batch verification suite."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import DUAL, PRIMAL, OperationSystem, check_axioms, search_boolean_interpretations
from .decompose import decompose
from .errors import DecompositionError
from .poset import BOOL, FinitePoset, PosetMap, chain

CLAUSES = ("recompose", "monotone", "bound", "support", "shrink")


@dataclass(frozen=True)
class Instance:
    index: int
    psi: PosetMap
    system: OperationSystem
    theorem: int


def random_poset(rng: np.random.Generator, max_size: int = 7) -> FinitePoset:
    """Random order on ``m0..m{n-1}``; the canonical order is not a linear extension."""
    n = int(rng.integers(1, max_size + 1))
    perm = rng.permutation(n)
    density = rng.uniform(0.15, 0.7)
    names = [f"m{i}" for i in range(n)]
    pairs = [(names[perm[i]], names[perm[j]])
             for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return FinitePoset(names, pairs)


def random_upper_bound_table(rng: np.random.Generator, size: int) -> tuple[tuple[int, ...], ...]:
    """Uniform binary table on the chain ``0 < ... < size-1`` with ``t(x, y) >= max(x, y)``."""
    return tuple(tuple(int(rng.integers(max(x, y), size)) for y in range(size)) for x in range(size))


def random_chain_system(rng: np.random.Generator, size: int, polarity: str = PRIMAL) -> OperationSystem:
    """Random system on a chain passing A and B (or their duals).

    On a chain the dissociation axioms force the null operation to be the
    constant bottom (the top needs ``rank`` distinct witnesses above its
    null); each dissociation row is then random apart from the entries
    required as witnesses.
    """
    L = chain([f"l{i}" for i in range(size)])
    rows = []
    for top in range(size):
        row = [int(rng.integers(0, size)) for _ in range(size)]
        row[0] = top
        slots = rng.permutation(np.arange(1, size))
        for lower in range(top):
            row[int(slots[lower])] = lower
        rows.append(tuple(row))
    codomain = L if polarity == PRIMAL else L.dual()
    return OperationSystem(codomain, tuple(rows), (0,) * size, random_upper_bound_table(rng, size),
                           combine_join=True, polarity=polarity)


def random_boolean_system(rng: np.random.Generator, polarity: str = PRIMAL) -> OperationSystem:
    interps = search_boolean_interpretations(False, polarity)
    pick = interps[int(rng.integers(len(interps)))]
    d = pick.dissociate
    # primal frame is 0 < 1; the dual frame is 1 < 0, where upper bounds lie towards 0
    comb = random_upper_bound_table(rng, 2)
    if polarity == DUAL:
        comb = tuple(tuple(1 - comb[1 - x][1 - y] for y in range(2)) for x in range(2))
    return OperationSystem(BOOL, ((d[0], d[1]), (d[2], d[3])), pick.null, comb,
                           combine_join=True, polarity=polarity)


def random_instance(rng: np.random.Generator, index: int = 0, max_size: int = 7) -> Instance:
    M = random_poset(rng, max_size)
    polarity = PRIMAL if rng.random() < 0.5 else DUAL
    if rng.random() < 0.5:
        system = random_boolean_system(rng, polarity)
    else:
        system = random_chain_system(rng, int(rng.integers(2, 6)), polarity)
    L = system.codomain
    psi = PosetMap.from_indices(M, L, [int(rng.integers(len(L))) for _ in M.elements])
    theorem = int(rng.integers(1, 4))
    return Instance(index, psi, system, theorem)


def instances(count: int, seed: int, max_size: int = 7):
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(count)):
        yield random_instance(np.random.default_rng(child), i, max_size)


@dataclass
class SuiteResult:
    count: int
    seed: int
    seconds: float = 0.0
    failures: dict[str, list[tuple[int, int, str]]] = field(default_factory=lambda: {c: [] for c in CLAUSES})
    errors: list[tuple[int, int, str]] = field(default_factory=list)
    by_theorem: dict[int, int] = field(default_factory=lambda: {1: 0, 2: 0, 3: 0})

    def passed(self, clause: str) -> bool:
        return not self.failures[clause] and not self.errors

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "instances_per_theorem": {str(k): v for k, v in self.by_theorem.items()},
            "errors": [list(e) for e in self.errors],
            "failures": {c: [list(f) for f in fs] for c, fs in self.failures.items()},
        }


def run_suite(count: int = 1000, seed: int = 0, max_size: int = 7) -> SuiteResult:
    """Decompose ``count`` random instances and check every postcondition.

    Failures are recorded as ``(instance index, theorem, detail)``.
    """
    result = SuiteResult(count, seed)
    start = time.perf_counter()
    for inst in instances(count, seed, max_size):
        result.by_theorem[inst.theorem] += 1
        tag = ("A" if inst.theorem == 1 else "B") + ("*" if inst.system.polarity == DUAL else "")
        if not check_axioms(inst.system, tag).passed:
            result.errors.append((inst.index, inst.theorem, f"generated system fails {tag}"))
            continue
        try:
            form, report = decompose(inst.psi, inst.system, inst.theorem)
        except DecompositionError as exc:
            result.errors.append((inst.index, inst.theorem, f"{type(exc).__name__}: {exc}"))
            continue
        probs = report.problems
        where = (inst.index, inst.theorem)
        for p in probs:
            if p.startswith("value mismatch"):
                result.failures["recompose"].append(where + (p,))
            elif "not monotone" in p or "theta-function" in p:
                result.failures["monotone"].append(where + (p,))
            elif "exceeds chain length" in p or "components for" in p:
                result.failures["bound"].append(where + (p,))
            elif p.startswith("support"):
                result.failures["support"].append(where + (p,))
        if not report.nonmono_strictly_shrinks:
            result.failures["shrink"].append(where + (f"sizes {list(report.nonmono_sizes)}",))
    result.seconds = time.perf_counter() - start
    return result
