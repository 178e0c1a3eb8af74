"""Finite posets, maps between them, and their structural queries.

Orders are stored as bitmasks: ``_below[j]`` has bit ``i`` set iff
element ``i`` is ``<=`` element ``j``.  The element list fixes the
canonical enumeration used for every deterministic tie-break, and every
set-valued result is returned as a tuple in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import CycleError, LengthMismatchError, PosetError, UnknownElementError


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class FinitePoset:
    """A finite partial order over named elements.

    ``pairs`` may be any generating set of the order (covering pairs are
    enough); the reflexive-transitive closure is taken here.
    """

    def __init__(self, elements: Iterable[str], pairs: Iterable[tuple[str, str]] = ()):
        elements = tuple(elements)
        if not elements:
            raise PosetError("a poset needs at least one element")
        index: dict[str, int] = {}
        for pos, name in enumerate(elements):
            if not isinstance(name, str) or not name:
                raise PosetError(f"element names must be non-empty strings, got {name!r}")
            if name in index:
                raise PosetError(f"duplicate element {name!r}")
            index[name] = pos
        n = len(elements)
        below = [1 << i for i in range(n)]
        for pair in pairs:
            a, b = pair
            for name in (a, b):
                if name not in index:
                    raise UnknownElementError(f"order pair references undeclared element {name!r}")
            below[index[b]] |= 1 << index[a]
        # Warshall closure on bit rows
        for k in range(n):
            bit = 1 << k
            row_k = below[k]
            for j in range(n):
                if below[j] & bit:
                    below[j] |= row_k
        for j in range(n):
            for i in _bits(below[j] & ~(1 << j)):
                if below[i] >> j & 1:
                    raise CycleError(
                        f"order is not antisymmetric: {elements[i]!r} and {elements[j]!r} "
                        "are mutually below each other"
                    )
        self.elements = elements
        self._index = index
        self._below = tuple(below)

    @classmethod
    def _from_masks(cls, elements: tuple[str, ...], below: Sequence[int]) -> "FinitePoset":
        obj = cls.__new__(cls)
        obj.elements = elements
        obj._index = {name: i for i, name in enumerate(elements)}
        obj._below = tuple(below)
        return obj

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self._below == other._below

    def __hash__(self) -> int:
        return hash((self.elements, self._below))

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.elements)!r}, covers={list(self.covers)!r})"

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElementError(f"{x!r} is not an element of this poset") from None

    def leq(self, a: str, b: str) -> bool:
        return bool(self._below[self.index(b)] >> self.index(a) & 1)

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self._below[j] >> i & 1)

    def _names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in _bits(mask))

    @cached_property
    def _above(self) -> tuple[int, ...]:
        above = [0] * len(self.elements)
        for j, row in enumerate(self._below):
            for i in _bits(row):
                above[i] |= 1 << j
        return tuple(above)

    @cached_property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        """All order pairs ``(a, b)`` with ``a <= b``, reflexive ones included."""
        return tuple((self.elements[i], self.elements[j]) for i, j in self.pairs_idx)

    @cached_property
    def pairs_idx(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(len(self)) for j in _bits(self._above[i]))

    @cached_property
    def strict_pairs_idx(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in self.pairs_idx if i != j)

    @cached_property
    def covers(self) -> tuple[tuple[str, str], ...]:
        """Hasse diagram edges."""
        out = []
        for i, j in self.strict_pairs_idx:
            between = self._above[i] & self._below[j] & ~(1 << i) & ~(1 << j)
            if not between:
                out.append((self.elements[i], self.elements[j]))
        return tuple(out)

    def down_set(self, x: str) -> tuple[str, ...]:
        return self._names(self._below[self.index(x)])

    def up_set(self, x: str) -> tuple[str, ...]:
        return self._names(self._above[self.index(x)])

    @cached_property
    def down_idx(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_bits(row)) for row in self._below)

    def minimal_elements(self, subset: Iterable[str] | None = None) -> tuple[str, ...]:
        mask = self._mask(subset)
        return self._names(self._minimal_mask(mask))

    def maximal_elements(self, subset: Iterable[str] | None = None) -> tuple[str, ...]:
        mask = self._mask(subset)
        keep = 0
        for i in _bits(mask):
            if not (self._above[i] & mask & ~(1 << i)):
                keep |= 1 << i
        return self._names(keep)

    def _mask(self, subset) -> int:
        if subset is None:
            return (1 << len(self)) - 1
        mask = 0
        for x in subset:
            mask |= 1 << self.index(x)
        return mask

    def _minimal_mask(self, mask: int) -> int:
        keep = 0
        for i in _bits(mask):
            if not (self._below[i] & mask & ~(1 << i)):
                keep |= 1 << i
        return keep

    def greatest(self) -> str | None:
        top = self.maximal_elements()
        return top[0] if len(top) == 1 else None

    def least(self) -> str | None:
        bottom = self.minimal_elements()
        return bottom[0] if len(bottom) == 1 else None

    def is_chain(self) -> bool:
        return all(self.leq_idx(i, j) or self.leq_idx(j, i)
                   for i in range(len(self)) for j in range(i))

    @cached_property
    def layers(self) -> "LayerDecomposition":
        return layer_decompose(self)

    @cached_property
    def layer_idx(self) -> tuple[int, ...]:
        """Layer number (0-based) of each element."""
        out = [0] * len(self)
        for depth, layer in enumerate(self.layers.layers):
            for x in layer:
                out[self._index[x]] = depth
        return tuple(out)

    def dual(self) -> "FinitePoset":
        return self._dual

    @cached_property
    def _dual(self) -> "FinitePoset":
        d = FinitePoset._from_masks(self.elements, self._above)
        d.__dict__["_dual"] = self
        return d

    def subposet(self, subset: Iterable[str]) -> "FinitePoset":
        keep = [x for x in self.elements if x in set(subset)]
        return FinitePoset(keep, [(a, b) for a, b in self.pairs if a in keep and b in keep])

    def to_dict(self) -> dict:
        return {"elements": list(self.elements), "le": [list(p) for p in self.covers]}


@dataclass(frozen=True)
class LayerDecomposition:
    """Successive minimal-element layers ``M1, M2, ...`` of a poset."""

    layers: tuple[tuple[str, ...], ...]
    max_chain_length: int


def build_poset(elements: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> FinitePoset:
    return FinitePoset(elements, pairs)


def down_set(p: FinitePoset, x: str) -> tuple[str, ...]:
    return p.down_set(x)


def dualize(p: FinitePoset) -> FinitePoset:
    return p.dual()


def layer_decompose(p: FinitePoset) -> LayerDecomposition:
    remaining = (1 << len(p)) - 1
    layers = []
    while remaining:
        layer = p._minimal_mask(remaining)
        layers.append(p._names(layer))
        remaining &= ~layer
    return LayerDecomposition(tuple(layers), len(layers) - 1)


def embed_into_cube(p: FinitePoset) -> dict[str, tuple[int, ...]]:
    """Map each element to the indicator vector of its principal down-set.

    The vector has one coordinate per element, in canonical order, so
    ``a <= b`` iff ``vec(a)`` is bitwise below ``vec(b)``.
    """
    n = len(p)
    return {x: tuple(p._below[j] >> i & 1 for i in range(n)) for j, x in enumerate(p.elements)}


def chain(names: Sequence[str]) -> FinitePoset:
    names = list(names)
    return FinitePoset(names, zip(names, names[1:]))


def antichain(names: Sequence[str]) -> FinitePoset:
    return FinitePoset(names)


def cube_point_name(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits) if len(bits) else "()"


_CUBES: dict[int, FinitePoset] = {}


def boolean_cube(n: int) -> FinitePoset:
    """``B^n`` with points named by bit strings, x1 first, in integer order."""
    if n not in _CUBES:
        if n < 0:
            raise ValueError("cube dimension must be non-negative")
        size = 1 << n
        names = [cube_point_name([k >> (n - 1 - v) & 1 for v in range(n)]) for k in range(size)]
        below = []
        for j in range(size):
            row = 0
            for i in range(size):
                if i & j == i:
                    row |= 1 << i
            below.append(row)
        _CUBES[n] = FinitePoset._from_masks(tuple(names), below)
    return _CUBES[n]


BOOL = chain(["0", "1"])


class PosetMap:
    """A total map between the elements of two finite posets."""

    __slots__ = ("domain", "codomain", "values")

    def __init__(self, domain: FinitePoset, codomain: FinitePoset,
                 assignment: Mapping[str, str] | Sequence[str]):
        if isinstance(assignment, Mapping):
            extra = set(assignment) - set(domain.elements)
            if extra:
                raise UnknownElementError(f"map references elements outside the domain: {sorted(extra)}")
            missing = [x for x in domain.elements if x not in assignment]
            if missing:
                raise PosetError(f"map is not total, missing images for {missing}")
            images = [assignment[x] for x in domain.elements]
        else:
            images = list(assignment)
            if len(images) != len(domain):
                raise LengthMismatchError(f"expected {len(domain)} images, got {len(images)}")
        self.domain = domain
        self.codomain = codomain
        self.values = tuple(codomain.index(y) for y in images)

    @classmethod
    def from_indices(cls, domain: FinitePoset, codomain: FinitePoset, values: Sequence[int]) -> "PosetMap":
        obj = cls.__new__(cls)
        obj.domain = domain
        obj.codomain = codomain
        obj.values = tuple(values)
        return obj

    def __call__(self, x: str) -> str:
        return self.codomain.elements[self.values[self.domain.index(x)]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PosetMap):
            return NotImplemented
        return (self.values == other.values and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"PosetMap({self.as_dict()!r})"

    def as_dict(self) -> dict[str, str]:
        cod = self.codomain.elements
        return {x: cod[v] for x, v in zip(self.domain.elements, self.values)}

    def images(self) -> tuple[str, ...]:
        cod = self.codomain.elements
        return tuple(cod[v] for v in self.values)

    @property
    def is_monotone(self) -> bool:
        return not _nonmono_idx(self.domain, self.codomain, self.values)


def _nonmono_idx(domain: FinitePoset, codomain: FinitePoset, values: Sequence[int]) -> list[tuple[int, int]]:
    cb = codomain._below
    return [(i, j) for i, j in domain.strict_pairs_idx if not cb[values[j]] >> values[i] & 1]


def non_monotonicity_domain(f: PosetMap) -> tuple[tuple[str, str], ...]:
    """Pairs ``(m, m')`` with ``m <= m'`` whose images are not ordered."""
    names = f.domain.elements
    return tuple((names[i], names[j]) for i, j in _nonmono_idx(f.domain, f.codomain, f.values))


def is_monotone(f: PosetMap) -> bool:
    return f.is_monotone
