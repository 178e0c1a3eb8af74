"""Lefebvre's choice function, L-ensembles and the golden-section ensemble.

Characteristics ``p[k]`` are indexed by the integer ``k = 4*n1 + 2*n2 + n3``.
Each subject of an ensemble behaves as ``(n3 -> n2) -> n1``, which is 1 at
``k in {1, 4, 5, 6, 7}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, InfeasibleMarginalsError, InvalidCharacteristicError

SUM_TOL = 1e-12
EXACT_TOL = 1e-12

# (n3 -> n2) -> n1 at k = 0..7
CHOICE_BITS = (0, 1, 0, 0, 1, 1, 1, 1)
REALIST_AREA = (0, 1, 2, 5, 7)   # 000, 001, 010, 101, 111


def _unit(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name} = {x} is outside [0, 1]")
    return x


def f_real(x1: float, x2: float, x3: float) -> float:
    """Multilinear extension of ``(x3 -> x2) -> x1``."""
    x1, x2, x3 = _unit("x1", x1), _unit("x2", x2), _unit("x3", x3)
    return x1 + (1 - x1 - x2 + x1 * x2) * x3


def f_printed(x1: float, x2: float, x3: float) -> float:
    """Variant with ``x2*x3`` in place of ``x1*x2``; kept for regression tests."""
    return x1 + (1 - x1 - x2 + x2 * x3) * x3


def realist_boolean(k: int) -> bool:
    return CHOICE_BITS[k] == (k & 1)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    worst: float
    at: tuple[float, ...] | None


@dataclass(frozen=True)
class LAxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def check_L_axioms(f: Callable[[float, float, float], float], grid_step: float = 0.1,
                   tol: float = EXACT_TOL) -> LAxiomReport:
    """Check L1-L3 on grid points and L4 by collinearity along each axis.

    For L4 every grid line parallel to an axis must lie on the straight line
    through its two endpoints.
    """
    if not 0 < grid_step < 1:
        raise ValueError("grid_step must lie in (0, 1)")
    steps = round(1 / grid_step)
    grid = [k / steps for k in range(steps + 1)]

    def scan(name, points, expected):
        worst, at = 0.0, None
        for pt in points:
            dev = abs(f(*pt) - expected(*pt))
            if dev > worst:
                worst, at = dev, pt
        return AxiomCheck(name, worst <= tol, worst, at)

    l1 = scan("L1", [(0.0, 0.0, t) for t in grid], lambda a, b, c: c)
    l2 = scan("L2", [(0.0, 1.0, t) for t in grid], lambda a, b, c: 0.0)
    l3 = scan("L3", [(1.0, s, t) for s in grid for t in grid], lambda a, b, c: 1.0)

    worst, at = 0.0, None
    for axis in range(3):
        for others in itertools.product(grid, repeat=2):
            def at_t(t):
                pt = list(others)
                pt.insert(axis, t)
                return tuple(pt)
            lo, hi = f(*at_t(0.0)), f(*at_t(1.0))
            for t in grid:
                dev = abs(f(*at_t(t)) - (lo + t * (hi - lo)))
                if dev > worst:
                    worst, at = dev, at_t(t)
    l4 = AxiomCheck("L4", worst <= tol, worst, at)
    return LAxiomReport((l1, l2, l3, l4))


@dataclass(frozen=True)
class EnsembleCharacteristic:
    p: tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(v) for v in self.p)
        object.__setattr__(self, "p", p)
        if len(p) != 8:
            raise InvalidCharacteristicError(f"a characteristic has 8 entries, got {len(p)}")
        for k, v in enumerate(p):
            if not 0.0 <= v <= 1.0:
                raise InvalidCharacteristicError(f"p{k} = {v} is not a probability")
        total = math.fsum(p)
        if abs(total - 1.0) > SUM_TOL:
            raise InvalidCharacteristicError(
                f"probabilities sum to {total!r}; they must sum to 1 within {SUM_TOL}")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, v in enumerate(self.p) if v > 0)


@dataclass(frozen=True)
class Marginals:
    x1: float
    x2: float
    x3: float
    z: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.z)


def _marginals_of(p: Sequence[float]) -> Marginals:
    return Marginals(
        x1=math.fsum(p[k] for k in (4, 5, 6, 7)),
        x2=math.fsum(p[k] for k in (2, 3, 6, 7)),
        x3=math.fsum(p[k] for k in (1, 3, 5, 7)),
        z=math.fsum(p[k] for k in (1, 4, 5, 6, 7)),
    )


def marginals(P: EnsembleCharacteristic | Sequence[float]) -> Marginals:
    if not isinstance(P, EnsembleCharacteristic):
        P = EnsembleCharacteristic(tuple(P))
    return _marginals_of(P.p)


def pl_characteristic(x1: float, x2: float, x3: float) -> EnsembleCharacteristic:
    """Product distribution of three independent booleans with the given means."""
    xs = (_unit("x1", x1), _unit("x2", x2), _unit("x3", x3))
    p = []
    for k in range(8):
        prob = 1.0
        for j in range(3):
            bit = k >> (2 - j) & 1
            prob *= xs[j] if bit else 1 - xs[j]
        p.append(prob)
    return EnsembleCharacteristic(tuple(p))


def golden_section_root(xtol: float = 1e-13) -> float:
    """Root of ``x^3 - 2x + 1`` in (0, 1), by bisection.

    The bracket ``[0, sqrt(2/3)]`` ends at the minimum of ``g`` on (0, 1),
    which keeps the other root ``x = 1`` outside it.
    """
    return bisect(lambda x: x ** 3 - 2 * x + 1, 0.0, math.sqrt(2 / 3), xtol=xtol)


def golden_ensemble(x3: float) -> EnsembleCharacteristic:
    """Realist ensemble: n1, n2 independent with mean ``1 - x3``, n3 per the solution table."""
    x3 = float(x3)
    if not 0.0 < x3 < 1.0:
        raise DomainError(f"x3 = {x3} must lie strictly inside (0, 1)")
    q = 1 - x3
    p = [0.0] * 8
    p[0] = x3 * x3 * q
    p[1] = x3 ** 3
    p[2] = x3 * q
    p[5] = q * x3
    p[7] = q * q
    return EnsembleCharacteristic(tuple(p))


def sample_ensemble(P: EnsembleCharacteristic, N: int, seed: int) -> Marginals:
    """Empirical marginals of ``N`` subjects drawn from ``P``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    rng = np.random.default_rng(seed)
    probs = np.asarray(P.p, dtype=float)
    counts = rng.multinomial(N, probs / probs.sum())
    return _marginals_of([c / N for c in counts])


_CONSTRAINTS = np.array([
    [1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 1, 1, 0, 0, 1, 1],
    [0, 1, 0, 1, 0, 1, 0, 1],
], dtype=float)
_Z_ROW = np.array(CHOICE_BITS, dtype=float)


def characteristic_vertices(x1: float, x2: float, x3: float, tol: float = 1e-12) -> list[tuple[float, ...]]:
    """Vertices of the polytope of characteristics with the given marginals.

    Enumerates every basic feasible solution of the four equality
    constraints; duplicates from degenerate bases are merged.
    """
    rhs = np.array([1.0, x1, x2, x3])
    found: dict[tuple[float, ...], None] = {}
    for basis in itertools.combinations(range(8), 4):
        A = _CONSTRAINTS[:, basis]
        if abs(np.linalg.det(A)) < 1e-9:
            continue
        sol = np.linalg.solve(A, rhs)
        if (sol < -tol).any():
            continue
        p = np.zeros(8)
        p[list(basis)] = np.clip(sol, 0.0, None)
        found[tuple(round(float(v), 12) + 0.0 for v in p)] = None
    return sorted(found, reverse=True)


@dataclass(frozen=True)
class RegionReport:
    x: tuple[float, float, float]
    f: float
    z_min: float
    z_max: float
    worst_deviation: float
    counterexample: tuple[float, ...] | None
    vertices: int
    samples: int

    @property
    def holds_for_all(self) -> bool:
        return self.counterexample is None


def equality_region_scan(x1: float, x2: float, x3: float, samples: int = 1000, seed: int = 0,
                         tol: float = EXACT_TOL) -> RegionReport:
    """Search all characteristics with marginals ``(x1, x2, x3)`` for ``z != f``.

    ``z`` is linear in the characteristic, so its extremes sit on polytope
    vertices; random convex combinations of the vertices are scanned too.
    Ties in the worst deviation go to the first vertex in descending
    lexicographic order.
    """
    xs = (_unit("x1", x1), _unit("x2", x2), _unit("x3", x3))
    target = f_real(*xs)
    verts = characteristic_vertices(*xs)
    if not verts:
        raise InfeasibleMarginalsError(f"no characteristic has marginals {xs}")
    V = np.array(verts)
    zs = V @ _Z_ROW
    worst_i = int(np.argmax(np.abs(zs - target)))
    worst = float(abs(zs[worst_i] - target))
    worst_p = verts[worst_i]
    if samples and len(verts) > 1:
        rng = np.random.default_rng(seed)
        W = rng.dirichlet(np.ones(len(verts)), size=samples)
        interior = W @ V
        dev = np.abs(interior @ _Z_ROW - target)
        j = int(np.argmax(dev))
        if dev[j] > worst + tol:
            worst, worst_p = float(dev[j]), tuple(float(v) for v in interior[j])
    return RegionReport(
        x=xs, f=target, z_min=float(zs.min()), z_max=float(zs.max()),
        worst_deviation=worst,
        counterexample=worst_p if worst > tol else None,
        vertices=len(verts), samples=samples,
    )
