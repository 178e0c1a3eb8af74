"""Successive-approximation decomposition of evaluation mappings.

Given ``psi: M -> L`` and an operation system, :func:`decompose` produces
monotone components ``phi1, ..., phi_{k+1}`` with

    psi(x) = dissociate(phi1(x), dissociate(phi2(x), ... dissociate(phi_k(x), phi_{k+1}(x))))

Three constructions are available:

* theorem 1 -- combine by lattice join over the image of each down-set;
* theorem 2 -- theta-functions, one per layer of ``M``;
* theorem 3 -- combine by a right-nested fold of a binary operation over
  the down-set, enumerated in canonical order.

Dual forms run the same code on the order-reversed ``M`` and ``L`` (the
dual tables are primal tables on the reversed codomain) and map back by
identity, since dualization keeps the element enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import DUAL, PRIMAL, OperationSystem, _join, cached_check
from .errors import (AxiomPreconditionError, AlgebraError, DecompositionError, NoGreatestElementError,
                     TooManyComponentsError, WitnessNotFoundError)
from .poset import FinitePoset, PosetMap, _bits, _nonmono_idx


@dataclass(frozen=True)
class ApproximatingForm:
    components: tuple[PosetMap, ...]
    system: OperationSystem
    polarity: str
    theorem: int

    def __post_init__(self):
        if not self.components:
            raise DecompositionError("a form needs at least one component")
        first = self.components[0]
        for c in self.components[1:]:
            if c.domain != first.domain or c.codomain != first.codomain:
                raise DecompositionError("all components must share domain and codomain")

    @property
    def domain(self) -> FinitePoset:
        return self.components[0].domain

    @property
    def codomain(self) -> FinitePoset:
        return self.components[0].codomain

    @property
    def dissociation_count(self) -> int:
        return len(self.components) - 1

    def value_indices(self) -> tuple[int, ...]:
        return _fold_all(self.system.dissociate, [c.values for c in self.components])

    def evaluate(self, x: str) -> str:
        i = self.domain.index(x)
        diss = self.system.dissociate
        acc = self.components[-1].values[i]
        for c in reversed(self.components[:-1]):
            acc = diss[c.values[i]][acc]
        return self.codomain.elements[acc]

    def as_map(self) -> PosetMap:
        return PosetMap.from_indices(self.domain, self.codomain, self.value_indices())

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "polarity": self.polarity,
            "components": [c.as_dict() for c in self.components],
        }


def _fold_all(diss, comps) -> tuple[int, ...]:
    acc = list(comps[-1])
    for comp in reversed(comps[:-1]):
        acc = [diss[a][b] for a, b in zip(comp, acc)]
    return tuple(acc)


def evaluate_form(form: ApproximatingForm, x: str) -> str:
    return form.evaluate(x)


@dataclass(frozen=True)
class ThetaFunction:
    rank: int
    assignment: PosetMap


def _frames(domain: FinitePoset, system: OperationSystem) -> tuple[FinitePoset, FinitePoset]:
    if system.polarity == PRIMAL:
        return domain, system.codomain
    return domain.dual(), system.codomain.dual()


def is_theta_function(f: PosetMap, rank: int, system: OperationSystem) -> bool:
    """Monotone, null below layer ``rank`` and maximal above it (1-based ranks).

    Layers and maximality are taken in the system's frame, so for a dual
    system "maximal" means minimal in the original codomain order.
    """
    o = system.null_constant
    if o is None:
        raise AlgebraError("theta-functions are only defined for a constant null operation")
    Mf, Lf = _frames(f.domain, system)
    if _nonmono_idx(Mf, Lf, f.values):
        return False
    top = {Lf.index(t) for t in Lf.maximal_elements()}
    for x, layer in enumerate(Mf.layer_idx):
        v = f.values[x]
        if layer < rank - 1 and v != o:
            return False
        if layer > rank - 1 and v not in top:
            return False
    return True


@dataclass(frozen=True)
class DecompositionReport:
    """Postcondition checks of a form against the map it should represent.

    ``nonmono_sizes[k]`` is the size of the non-monotonicity domain of the
    k-th tail ``psi_k`` (``psi_0`` is the full form); ``region_sizes[k]``
    is the number of points whose down-set contains a violating pair of
    ``psi_k``.
    """

    dissociation_count: int
    max_chain_length: int
    nonmono_sizes: tuple[int, ...]
    region_sizes: tuple[int, ...]
    support_chain: tuple[tuple[str, ...], ...]
    verified: bool
    problems: tuple[str, ...] = ()

    @property
    def nonmono_strictly_shrinks(self) -> bool:
        """Sizes strictly decrease until they reach zero, then stay zero."""
        return _shrinks(self.nonmono_sizes)

    @property
    def regions_strictly_shrink(self) -> bool:
        return _shrinks(self.region_sizes)

    def to_dict(self) -> dict:
        return {
            "dissociation_count": self.dissociation_count,
            "max_chain_length": self.max_chain_length,
            "nonmono_sizes": list(self.nonmono_sizes),
            "region_sizes": list(self.region_sizes),
            "support_chain": [list(s) for s in self.support_chain],
            "verified": self.verified,
            "problems": list(self.problems),
        }


def _shrinks(sizes) -> bool:
    return all(b < a or a == b == 0 for a, b in zip(sizes, sizes[1:]))


def _support(values, null, Lf: FinitePoset) -> int:
    below = Lf._below
    mask = 0
    for x, v in enumerate(values):
        o = null[v]
        if o != v and below[v] >> o & 1:
            mask |= 1 << x
    return mask


def verify_form(form: ApproximatingForm, psi: PosetMap) -> DecompositionReport:
    if form.domain != psi.domain or form.codomain != psi.codomain:
        raise ValueError("form and map must share domain and codomain")
    system = form.system
    M = psi.domain
    Mf, Lf = _frames(M, system)
    names = M.elements
    problems = []
    D = M.layers.max_chain_length
    comps = [c.values for c in form.components]
    diss = system.dissociate

    tails = [None] * len(comps)
    tails[-1] = tuple(comps[-1])
    for k in range(len(comps) - 2, -1, -1):
        tails[k] = tuple(diss[a][b] for a, b in zip(comps[k], tails[k + 1]))
    for x, (got, want) in enumerate(zip(tails[0], psi.values)):
        if got != want:
            problems.append(f"value mismatch at {names[x]}: form gives {Lf.elements[got]}, "
                            f"map gives {Lf.elements[want]}")
    for k, comp in enumerate(comps, start=1):
        bad = _nonmono_idx(Mf, Lf, comp)
        if bad:
            i, j = bad[0]
            problems.append(f"component {k} is not monotone ({len(bad)} violating pairs, "
                            f"e.g. {names[i]}, {names[j]})")
    if form.dissociation_count > D:
        problems.append(f"dissociation count {form.dissociation_count} exceeds chain length {D}")
    supports = [_support(c, system.null_op, Lf) for c in comps]
    for k in range(1, len(supports)):
        if supports[k] & ~supports[k - 1]:
            problems.append(f"support of component {k + 1} is not inside support of component {k}")
    if form.theorem == 2:
        if len(comps) != len(M.layers.layers):
            problems.append(f"theorem-2 form has {len(comps)} components for {len(M.layers.layers)} layers")
        for k, c in enumerate(form.components, start=1):
            if not is_theta_function(c, k, system):
                problems.append(f"component {k} is not a theta-function of rank {k}")

    sizes, regions = [], []
    for t in tails:
        bad = _nonmono_idx(Mf, Lf, t)
        sizes.append(len(bad))
        region = 0
        for _, j in bad:
            region |= Mf._above[j]
        regions.append(bin(region).count("1"))
    return DecompositionReport(
        dissociation_count=form.dissociation_count,
        max_chain_length=D,
        nonmono_sizes=tuple(sizes),
        region_sizes=tuple(regions),
        support_chain=tuple(M._names(s) for s in supports),
        verified=not problems,
        problems=tuple(problems),
    )


def _precondition(system: OperationSystem, theorem: int, subset_limit: int) -> None:
    dual = system.polarity == DUAL
    if theorem == 1:
        tag = "A*" if dual else "A"
    elif theorem == 3:
        tag = "B*" if dual else "B"
    elif theorem == 2:
        tag = "diss"
    else:
        raise ValueError(f"theorem must be 1, 2 or 3, got {theorem!r}")
    try:
        report = cached_check(system, tag, subset_limit)
    except AlgebraError as exc:
        raise AxiomPreconditionError(str(exc)) from None
    if not report.passed:
        first = report.violations[0]
        raise AxiomPreconditionError(
            f"operation system fails {report.system_tag}: {len(report.violations)} violation(s), "
            f"first {first.axiom} at {first.args}: {first.detail}")


def _witness(diss, below, n_L: int, target: int, phi: int, floor: int) -> int | None:
    row = diss[phi]
    for w in range(n_L):
        if row[w] == target and below[w] >> floor & 1:
            return w
    return None


def _successive(Mf: FinitePoset, Lf: FinitePoset, system: OperationSystem, values, theorem: int):
    diss, null = system.dissociate, system.null_op
    below = Lf._below
    n_L = len(Lf)
    n = len(Mf)
    down = Mf.down_idx
    above = Mf._above
    comb = system.combine_binary

    comps = []
    cur = list(values)
    while True:
        bad = _nonmono_idx(Mf, Lf, cur)
        if not bad:
            comps.append(cur)
            return comps
        if len(comps) > n:
            raise DecompositionError("construction did not converge; the region failed to shrink")
        region = 0
        for _, j in bad:
            region |= above[j]
        phi = list(cur)
        for x in _bits(region):
            if theorem == 1:
                mask = 0
                for z in down[x]:
                    mask |= 1 << cur[z]
                j = _join(Lf, mask)
                if j is None:
                    raise DecompositionError(f"no join for the down-set image of {Mf.elements[x]}")
                phi[x] = j
            else:
                d = down[x]
                acc = cur[d[-1]]
                for z in reversed(d[:-1]):
                    acc = comb[cur[z]][acc]
                phi[x] = acc
        nxt = [0] * n
        for x in range(n):
            if phi[x] == cur[x]:
                nxt[x] = null[cur[x]]
                continue
            w = _witness(diss, below, n_L, cur[x], phi[x], null[phi[x]])
            if w is None:
                raise WitnessNotFoundError(
                    f"no witness at {Mf.elements[x]}: dissociate({Lf.elements[phi[x]]}, w) = "
                    f"{Lf.elements[cur[x]]} with null bound {Lf.elements[null[phi[x]]]}")
            nxt[x] = w
        comps.append(phi)
        cur = nxt


def _thetas(Mf: FinitePoset, Lf: FinitePoset, system: OperationSystem, values):
    gamma_name = Lf.greatest()
    if gamma_name is None:
        which = "greatest" if system.polarity == PRIMAL else "least"
        raise NoGreatestElementError(f"codomain has no {which} element")
    gamma = Lf.index(gamma_name)
    o = system.null_constant
    if o is None:
        raise AxiomPreconditionError("theta-function decomposition needs a constant null operation")
    diss = system.dissociate
    below = Lf._below
    n_L = len(Lf)
    layer = Mf.layer_idx
    depth = len(Mf.layers.layers)
    cur = list(values)
    comps = []
    for i in range(depth):
        comps.append([o if layer[x] < i else cur[x] if layer[x] == i else gamma
                      for x in range(len(Mf))])
        if i == depth - 1:
            break
        nxt = []
        for x in range(len(Mf)):
            if layer[x] <= i:
                nxt.append(o)
                continue
            w = _witness(diss, below, n_L, cur[x], gamma, o)
            if w is None:
                raise WitnessNotFoundError(
                    f"no witness at {Mf.elements[x]}: dissociate({gamma_name}, w) = {Lf.elements[cur[x]]}")
            nxt.append(w)
        cur = nxt
    return comps


def decompose(psi: PosetMap, system: OperationSystem, theorem: int = 1, polarity: str | None = None,
              subset_limit: int = 12, verify: bool = True) -> tuple[ApproximatingForm, DecompositionReport | None]:
    """Decompose ``psi`` into an approximating form with monotone components.

    Witnesses are the first admissible element in the canonical
    enumeration of ``L``.  Pass ``verify=False`` to skip building the
    report (it is then ``None``).
    """
    if polarity is None:
        polarity = system.polarity
    if polarity != system.polarity:
        raise AxiomPreconditionError(
            f"requested {polarity} decomposition with a {system.polarity} operation system")
    if psi.codomain != system.codomain:
        raise ValueError("map codomain differs from the operation system's codomain")
    _precondition(system, theorem, subset_limit)
    Mf, Lf = _frames(psi.domain, system)
    if theorem == 2:
        comps = _thetas(Mf, Lf, system, psi.values)
    else:
        if theorem == 3 and system.combine_binary is None:
            raise AxiomPreconditionError("theorem 3 needs a binary combine table")
        comps = _successive(Mf, Lf, system, psi.values, theorem)
    M, L = psi.domain, psi.codomain
    form = ApproximatingForm(tuple(PosetMap.from_indices(M, L, c) for c in comps), system, polarity, theorem)
    return form, (verify_form(form, psi) if verify else None)


def pad_to_universal(form: ApproximatingForm, D: int) -> ApproximatingForm:
    """Extend a form to exactly ``D + 1`` components by repeating the null map."""
    if len(form.components) > D + 1:
        raise TooManyComponentsError(f"form has {len(form.components)} components, more than {D + 1}")
    comps = list(form.components)
    null = form.system.null_op
    while len(comps) < D + 1:
        last = comps[-1]
        comps.append(PosetMap.from_indices(last.domain, last.codomain, [null[v] for v in last.values]))
    if len(comps) == len(form.components):
        return form
    return ApproximatingForm(tuple(comps), form.system, form.polarity, form.theorem)
