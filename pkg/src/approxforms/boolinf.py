"""Truth tables and implicative normal forms.

A truth table of arity ``n`` lists ``f`` at the points of ``B^n`` in
integer order, with ``x1`` the most significant bit, so the leftmost
character of a bit string is ``f(0, ..., 0)``.

An implicative normal form stores ``P_k, ..., P_0`` (outermost antecedent
first) and means ``((P_k -> P_{k-1}) -> ...) -> P_0``.  Synthesis runs the
dual boolean decomposition over the cube: with ``dissociate*(a, b) = b -> a``
the dual form ``d*(phi1, d*(phi2, phi3))`` reads ``(phi3 -> phi2) -> phi1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import BOOLEAN_DUAL
from .decompose import decompose
from .errors import LengthMismatchError
from .poset import BOOL, PosetMap, boolean_cube

DEFAULT_ARITY_LIMIT = 16


@dataclass(frozen=True)
class TruthTable:
    arity: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 0 or self.arity > DEFAULT_ARITY_LIMIT:
            raise ValueError(f"arity must be in 0..{DEFAULT_ARITY_LIMIT}, got {self.arity}")
        if len(self.bits) != 1 << self.arity:
            raise LengthMismatchError(f"arity {self.arity} needs {1 << self.arity} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("truth table entries must be 0 or 1")

    @classmethod
    def from_string(cls, arity: int, text: str) -> "TruthTable":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise ValueError(f"bit string may only contain 0 and 1, got {text!r}")
        return cls(arity, tuple(int(ch) for ch in text))

    @classmethod
    def from_int(cls, arity: int, code: int) -> "TruthTable":
        """Bit ``k`` of ``code`` is ``f`` at point ``k``."""
        return cls(arity, tuple(code >> k & 1 for k in range(1 << arity)))

    @classmethod
    def from_function(cls, arity: int, fn) -> "TruthTable":
        return cls(arity, tuple(int(bool(fn(*point(arity, k)))) for k in range(1 << arity)))

    @classmethod
    def constant(cls, arity: int, value: int) -> "TruthTable":
        return cls(arity, (value,) * (1 << arity))

    @classmethod
    def variable(cls, arity: int, i: int) -> "TruthTable":
        """The projection onto ``x_i`` (1-based)."""
        return cls.from_function(arity, lambda *xs: xs[i - 1])

    def __call__(self, *xs: int) -> int:
        if len(xs) != self.arity:
            raise LengthMismatchError(f"expected {self.arity} arguments, got {len(xs)}")
        return self.bits[index_of(xs)]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def is_constant_one(self) -> bool:
        return all(self.bits)


def point(arity: int, k: int) -> tuple[int, ...]:
    return tuple(k >> (arity - 1 - v) & 1 for v in range(arity))


def index_of(xs: Sequence[int]) -> int:
    k = 0
    for b in xs:
        k = k << 1 | int(b)
    return k


def is_monotone(t: TruthTable) -> bool:
    """No single 0 -> 1 flip of a variable decreases the value."""
    bits = t.bits
    for v in range(t.arity):
        step = 1 << v
        for k in range(len(bits)):
            if not k & step and bits[k] > bits[k | step]:
                return False
    return True


@dataclass(frozen=True)
class ImplicativeNormalForm:
    arity: int
    components: tuple[TruthTable, ...]

    @property
    def k(self) -> int:
        return len(self.components) - 1

    def table(self) -> TruthTable:
        comps = self.components
        out = []
        for idx in range(1 << self.arity):
            acc = comps[0].bits[idx]
            for c in comps[1:]:
                acc = (1 - acc) | c.bits[idx]
            out.append(acc)
        return TruthTable(self.arity, tuple(out))

    def render(self) -> str:
        """Implication chain such as ``(P2 -> P1) -> P0``."""
        text = f"P{self.k}"
        for i in range(self.k - 1, -1, -1):
            text = f"({text}) -> P{i}" if "->" in text else f"{text} -> P{i}"
        return text


def inf_evaluate(form: ImplicativeNormalForm, pt: Sequence[int]) -> int:
    if len(pt) != form.arity:
        raise LengthMismatchError(f"point has {len(pt)} coordinates, form has arity {form.arity}")
    idx = index_of(pt)
    acc = form.components[0].bits[idx]
    for c in form.components[1:]:
        acc = (1 - acc) | c.bits[idx]
    return acc


def inf_synthesize(f: TruthTable) -> ImplicativeNormalForm:
    cube = boolean_cube(f.arity)
    psi = PosetMap.from_indices(cube, BOOL, f.bits)
    form, _ = decompose(psi, BOOLEAN_DUAL, theorem=1, verify=False)
    comps = [TruthTable(f.arity, c.values) for c in form.components]
    while len(comps) > 1 and comps[-1].is_constant_one:
        comps.pop()
    return ImplicativeNormalForm(f.arity, tuple(reversed(comps)))


@dataclass(frozen=True)
class VerifySummary:
    arity: int
    checked: int
    failures: tuple[tuple[str, str], ...]
    max_k: int

    @property
    def passed(self) -> bool:
        return not self.failures


def check_inf(f: TruthTable, form: ImplicativeNormalForm) -> str | None:
    """Why ``form`` is not a valid INF of ``f``, or None."""
    if form.table() != f:
        return "not equivalent"
    if form.k > f.arity:
        return f"k = {form.k} exceeds arity"
    for i, c in enumerate(form.components):
        if not is_monotone(c):
            return f"component P{form.k - i} not monotone"
    return None


def exhaustive_verify(n: int) -> VerifySummary:
    """Synthesize and check every boolean function of arity ``n`` (n <= 4)."""
    if not 0 <= n <= 4:
        raise ValueError("exhaustive verification is limited to arity 0..4")
    failures = []
    max_k = 0
    count = 1 << (1 << n)
    for code in range(count):
        f = TruthTable.from_int(n, code)
        form = inf_synthesize(f)
        max_k = max(max_k, form.k)
        why = check_inf(f, form)
        if why:
            failures.append((str(f), why))
    return VerifySummary(n, count, tuple(failures), max_k)
