"""Operation systems over a finite codomain and exhaustive axiom checking.

An :class:`OperationSystem` carries the dissociation table, the null
operation and a combination operation (lattice join, an explicit binary
table, or both).  Dual systems reuse the same code by checking the primal
axioms on the order-reversed codomain; this is what "mirror with >=" means
for every axiom, including the witness condition of dissociation.

Argument convention for dissociation: ``dissociate(l, null(l)) == l`` and
for ``l <= l'`` some ``w`` with ``null(l') <= w`` gives
``dissociate(l', w) == l``.  The witness always sits in the second slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import AlgebraError, ArityMismatchError, NotDualIsomorphismError, SubsetExplosionError
from .poset import BOOL, FinitePoset, _bits

PRIMAL = "primal"
DUAL = "dual"
TAGS = ("A", "B", "A*", "B*")
DEFAULT_SUBSET_LIMIT = 12


def _binary_table(codomain: FinitePoset, op, name: str) -> tuple[tuple[int, ...], ...]:
    els = codomain.elements
    n = len(els)
    if callable(op):
        rows = [[op(a, b) for b in els] for a in els]
    else:
        rows = [list(r) for r in op]
        if len(rows) == n * n and all(not isinstance(r, (list, tuple)) for r in op):
            flat = list(op)
            rows = [flat[i * n:(i + 1) * n] for i in range(n)]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ArityMismatchError(f"{name} table must be {n}x{n}")
    return tuple(tuple(codomain.index(v) for v in r) for r in rows)


def _unary_table(codomain: FinitePoset, op, name: str) -> tuple[int, ...]:
    els = codomain.elements
    vals = [op(a) for a in els] if callable(op) else list(op)
    if len(vals) != len(els) or any(isinstance(v, (list, tuple)) for v in vals):
        raise ArityMismatchError(f"{name} must be a unary table of length {len(els)}")
    return tuple(codomain.index(v) for v in vals)


@dataclass(frozen=True, eq=False)
class OperationSystem:
    """Dissociate / combine / null operations over ``codomain``.

    Tables hold codomain indices.  Use :func:`make_system` to build one
    from element names or Python callables.
    """

    codomain: FinitePoset
    dissociate: tuple[tuple[int, ...], ...]
    null_op: tuple[int, ...]
    combine_binary: tuple[tuple[int, ...], ...] | None = None
    combine_join: bool = False
    polarity: str = PRIMAL
    _reports: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.polarity not in (PRIMAL, DUAL):
            raise AlgebraError(f"polarity must be 'primal' or 'dual', got {self.polarity!r}")
        n = len(self.codomain)
        if len(self.dissociate) != n or any(len(r) != n for r in self.dissociate):
            raise ArityMismatchError("dissociate table is not total over L x L")
        if len(self.null_op) != n:
            raise ArityMismatchError("null table is not total over L")
        if self.combine_binary is not None and (
                len(self.combine_binary) != n or any(len(r) != n for r in self.combine_binary)):
            raise ArityMismatchError("combine table is not total over L x L")

    @property
    def frame(self) -> FinitePoset:
        """The codomain order in which this system obeys the primal axioms."""
        return self.codomain if self.polarity == PRIMAL else self.codomain.dual()

    def diss(self, a: str, b: str) -> str:
        c = self.codomain
        return c.elements[self.dissociate[c.index(a)][c.index(b)]]

    def null(self, a: str) -> str:
        c = self.codomain
        return c.elements[self.null_op[c.index(a)]]

    def combine(self, a: str, b: str) -> str:
        if self.combine_binary is None:
            raise AlgebraError("system has no binary combination table")
        c = self.codomain
        return c.elements[self.combine_binary[c.index(a)][c.index(b)]]

    @cached_property
    def null_constant(self) -> int | None:
        """Index of the null value if the null operation is constant."""
        vals = set(self.null_op)
        return vals.pop() if len(vals) == 1 else None

    def join_idx(self, mask: int) -> int | None:
        """Least upper bound (in the frame order) of a non-empty index set."""
        return _join(self.frame, mask)

    def to_dict(self) -> dict:
        els = self.codomain.elements
        out = {
            "codomain": self.codomain.to_dict(),
            "polarity": self.polarity,
            "dissociate": [[els[v] for v in row] for row in self.dissociate],
            "null_op": [els[v] for v in self.null_op],
            "combine_join": self.combine_join,
        }
        if self.combine_binary is not None:
            out["combine_binary"] = [[els[v] for v in row] for row in self.combine_binary]
        return out


def make_system(codomain: FinitePoset, dissociate, null_op, combine_binary=None,
                combine_join: bool = False, polarity: str = PRIMAL) -> OperationSystem:
    """Build a system from callables on element names or name tables."""
    return OperationSystem(
        codomain=codomain,
        dissociate=_binary_table(codomain, dissociate, "dissociate"),
        null_op=_unary_table(codomain, null_op, "null_op"),
        combine_binary=None if combine_binary is None else _binary_table(codomain, combine_binary, "combine_binary"),
        combine_join=combine_join,
        polarity=polarity,
    )


def _b(x: str) -> int:
    return int(x)


BOOLEAN_PRIMAL = make_system(
    BOOL,
    dissociate=lambda a, b: str(_b(a) & (1 - _b(b))),
    null_op=lambda a: "0",
    combine_binary=lambda a, b: str(_b(a) | _b(b)),
    combine_join=True,
)

BOOLEAN_DUAL = make_system(
    BOOL,
    dissociate=lambda a, b: str((1 - _b(b)) | _b(a)),
    null_op=lambda a: "1",
    combine_binary=lambda a, b: str(_b(a) & _b(b)),
    combine_join=True,
    polarity=DUAL,
)


def _join(p: FinitePoset, mask: int) -> int | None:
    above = p._above
    ub = (1 << len(p)) - 1
    for i in _bits(mask):
        ub &= above[i]
    for u in _bits(ub):
        if ub & ~above[u] == 0:
            return u
    return None


@dataclass(frozen=True)
class Violation:
    axiom: str
    args: tuple[str, ...]
    detail: str


@dataclass(frozen=True)
class AxiomReport:
    system_tag: str
    violations: tuple[Violation, ...]
    vacuous: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "system": self.system_tag,
            "passed": self.passed,
            "vacuous": list(self.vacuous),
            "violations": [{"axiom": v.axiom, "args": list(v.args), "detail": v.detail}
                           for v in self.violations],
        }


def _normalize_tag(tag: str) -> str:
    t = tag.strip().replace("star", "*").replace("⋆", "*").replace("∗", "*")
    t = t.replace("𝒜", "A").replace("ℬ", "B").upper()
    if t not in TAGS:
        raise AlgebraError(f"unknown axiom system {tag!r}; expected one of {TAGS}")
    return t


def _dissociation_violations(sys: OperationSystem, prefix: str) -> list[Violation]:
    frame = sys.frame
    els = frame.elements
    below = frame._below
    diss = sys.dissociate
    null = sys.null_op
    n = len(els)
    rel = "<=" if sys.polarity == PRIMAL else ">="
    out = []
    for l in range(n):
        got = diss[l][null[l]]
        if got != l:
            out.append(Violation(f"{prefix}3", (els[l],),
                                 f"dissociate({els[l]}, null({els[l]})={els[null[l]]}) = {els[got]} != {els[l]}"))
    for l, lp in frame.pairs_idx:
        if not below[null[lp]] >> null[l] & 1:
            out.append(Violation(f"{prefix}3", (els[l], els[lp]),
                                 f"null not monotone: null({els[l]})={els[null[l]]} vs null({els[lp]})={els[null[lp]]}"))
    for l, lp in frame.pairs_idx:
        if not any(diss[lp][w] == l and below[w] >> null[lp] & 1 for w in range(n)):
            out.append(Violation(f"{prefix}4", (els[l], els[lp]),
                                 f"no w with dissociate({els[lp]}, w) = {els[l]} and null({els[lp]}) {rel} w"))
    return out


def check_axioms(sys: OperationSystem, tag: str, subset_limit: int = DEFAULT_SUBSET_LIMIT) -> AxiomReport:
    """Exhaustively model-check one of the systems A, B, A*, B*.

    Axiom 1 of every system (no infinite descending chains) holds for any
    finite poset and is reported as vacuous.  For axiom A2 the subset
    monotonicity is checked on one-element extensions ``L' < L' + {x}``,
    which by transitivity covers every pair ``L' <= L''``.
    """
    tag = _normalize_tag(tag)
    dual = tag.endswith("*")
    if dual != (sys.polarity == DUAL):
        raise AlgebraError(f"system {tag} does not match a {sys.polarity} operation system")
    kind = tag[0]
    if kind == "A" and not sys.combine_join:
        raise AlgebraError(f"system {tag} needs combine_join (lattice join/meet) to be set")
    if kind == "B" and sys.combine_binary is None:
        raise AlgebraError(f"system {tag} needs a combine_binary table")
    prefix = kind + ("*" if dual else "")
    frame = sys.frame
    els = frame.elements
    below = frame._below
    n = len(els)
    violations: list[Violation] = []

    if kind == "A":
        if n > subset_limit:
            raise SubsetExplosionError(
                f"|L| = {n} exceeds the subset-enumeration limit {subset_limit} for {prefix}2")
        joins = [None] * (1 << n)
        for mask in range(1, 1 << n):
            joins[mask] = _join(frame, mask)
            if joins[mask] is None:
                violations.append(Violation(f"{prefix}2", frame._names(mask),
                                            "subset has no least upper bound in the frame order"))
        for mask in range(1, 1 << n):
            j = joins[mask]
            if j is None:
                continue
            for x in range(n):
                if mask >> x & 1:
                    continue
                k = joins[mask | 1 << x]
                if k is not None and not below[k] >> j & 1:
                    violations.append(Violation(
                        f"{prefix}2", frame._names(mask) + ("+" + els[x],),
                        f"combine not monotone: {els[j]} for the subset, {els[k]} after adding {els[x]}"))
    else:
        comb = sys.combine_binary
        for x in range(n):
            for y in range(n):
                u = comb[x][y]
                if not (below[u] >> x & 1 and below[u] >> y & 1):
                    violations.append(Violation(f"{prefix}2", (els[x], els[y]),
                                                f"combine({els[x]}, {els[y]}) = {els[u]} is not an upper bound"))
    violations.extend(_dissociation_violations(sys, prefix))
    return AxiomReport(tag, tuple(violations), vacuous=(f"{prefix}1",))


def check_dissociation(sys: OperationSystem) -> AxiomReport:
    """Axioms 3 and 4 only, for the system's own polarity."""
    prefix = "A" if sys.polarity == PRIMAL else "A*"
    return AxiomReport(prefix + "[3,4]", tuple(_dissociation_violations(sys, prefix)))


def cached_check(sys: OperationSystem, tag: str, subset_limit: int = DEFAULT_SUBSET_LIMIT) -> AxiomReport:
    key = (tag, subset_limit)
    if key not in sys._reports:
        sys._reports[key] = check_dissociation(sys) if tag == "diss" else check_axioms(sys, tag, subset_limit)
    return sys._reports[key]


def is_dual_isomorphism(L: FinitePoset, eta: Mapping[str, str]) -> bool:
    if sorted(eta) != sorted(L.elements) or sorted(eta.values()) != sorted(L.elements):
        return False
    return all(L.leq(a, b) == L.leq(eta[b], eta[a]) for a in L.elements for b in L.elements)


def find_dual_isomorphism(L: FinitePoset) -> dict[str, str] | None:
    """Lexicographically first order-reversing bijection of ``L``, or None."""
    n = len(L)
    image = [0] * n
    used = [False] * n

    def fits(i: int, v: int) -> bool:
        for j in range(i):
            w = image[j]
            if L.leq_idx(j, i) != L.leq_idx(v, w) or L.leq_idx(i, j) != L.leq_idx(w, v):
                return False
        return True

    def extend(i: int) -> bool:
        if i == n:
            return True
        for v in range(n):
            if not used[v] and fits(i, v):
                used[v] = True
                image[i] = v
                if extend(i + 1):
                    return True
                used[v] = False
        return False

    if not extend(0):
        return None
    return {L.elements[i]: L.elements[image[i]] for i in range(n)}


def conjugate_system(sys: OperationSystem, eta: Mapping[str, str]) -> OperationSystem:
    """The system ``eta^-1 . chi . eta`` with the opposite polarity."""
    L = sys.codomain
    if not is_dual_isomorphism(L, eta):
        raise NotDualIsomorphismError("eta is not an order-reversing bijection of L")
    e = [L.index(eta[x]) for x in L.elements]
    inv = [0] * len(e)
    for i, v in enumerate(e):
        inv[v] = i
    n = len(e)

    def conj2(t):
        return tuple(tuple(inv[t[e[a]][e[b]]] for b in range(n)) for a in range(n))

    return OperationSystem(
        codomain=L,
        dissociate=conj2(sys.dissociate),
        null_op=tuple(inv[sys.null_op[e[a]]] for a in range(n)),
        combine_binary=None if sys.combine_binary is None else conj2(sys.combine_binary),
        combine_join=sys.combine_join,
        polarity=DUAL if sys.polarity == PRIMAL else PRIMAL,
    )


def check_dual_identity(sys: OperationSystem, dual_sys: OperationSystem, eta: Mapping[str, str]) -> bool:
    """True iff every operation of ``dual_sys`` equals ``eta^-1 . chi . eta``.

    Raises :class:`NotDualIsomorphismError` when ``eta`` does not reverse
    the order, and :class:`ArityMismatchError` when one system has a binary
    combination table and the other does not.
    """
    if sys.codomain != dual_sys.codomain:
        raise AlgebraError("systems must share the same codomain")
    if (sys.combine_binary is None) != (dual_sys.combine_binary is None):
        raise ArityMismatchError("cannot compare a binary combine table with a missing one")
    expected = conjugate_system(sys, eta)
    return (expected.dissociate == dual_sys.dissociate
            and expected.null_op == dual_sys.null_op
            and expected.combine_binary == dual_sys.combine_binary
            and sys.combine_join == dual_sys.combine_join)


BOOLEAN_TABLE_NAMES = {
    (0, 0, 0, 0): "0", (0, 0, 0, 1): "a&b", (0, 0, 1, 0): "a&~b", (0, 0, 1, 1): "a",
    (0, 1, 0, 0): "~a&b", (0, 1, 0, 1): "b", (0, 1, 1, 0): "a^b", (0, 1, 1, 1): "a|b",
    (1, 0, 0, 0): "~(a|b)", (1, 0, 0, 1): "a<->b", (1, 0, 1, 0): "~b", (1, 0, 1, 1): "b->a",
    (1, 1, 0, 0): "~a", (1, 1, 0, 1): "a->b", (1, 1, 1, 0): "~(a&b)", (1, 1, 1, 1): "1",
}
UNARY_TABLE_NAMES = {(0, 0): "0", (0, 1): "id", (1, 0): "~", (1, 1): "1"}


@dataclass(frozen=True)
class BooleanInterpretation:
    """A dissociation table (values at (0,0),(0,1),(1,0),(1,1)) and a null table."""

    dissociate: tuple[int, int, int, int]
    null: tuple[int, int]

    @property
    def name(self) -> tuple[str, str]:
        return BOOLEAN_TABLE_NAMES[self.dissociate], UNARY_TABLE_NAMES[self.null]


def _shape_ok(table: Sequence[int]) -> bool:
    def t(a, b):
        return table[2 * a + b]
    return all(t(0, b) <= t(1, b) for b in (0, 1)) and all(t(a, 1) <= t(a, 0) for a in (0, 1))


def search_boolean_interpretations(require_shape_monotone: bool = False,
                                   polarity: str = PRIMAL) -> list[BooleanInterpretation]:
    """All (dissociate, null) pairs on {0<1} obeying the dissociation axioms.

    With ``require_shape_monotone`` the dissociation must also be
    non-decreasing in its first argument and non-increasing in its second
    (the mirrored condition for the dual frame coincides with this one).
    """
    found = []
    for t in range(16):
        table = tuple(t >> (3 - k) & 1 for k in range(4))
        if require_shape_monotone and not _shape_ok(table):
            continue
        for u in range(4):
            null = (u >> 1 & 1, u & 1)
            sys = OperationSystem(BOOL, ((table[0], table[1]), (table[2], table[3])), null, polarity=polarity)
            if not _dissociation_violations(sys, "A"):
                found.append(BooleanInterpretation(table, null))
    return found

