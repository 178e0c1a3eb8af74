import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxforms.algebra import BOOLEAN_DUAL, BOOLEAN_PRIMAL, OperationSystem, check_axioms, make_system
from approxforms.decompose import decompose, is_theta_function, pad_to_universal, verify_form
from approxforms.errors import AxiomPreconditionError, NoGreatestElementError, TooManyComponentsError
from approxforms.poset import BOOL, FinitePoset, PosetMap, boolean_cube, chain

from oracles import fold_right, nonmono_pairs
from strategies import posets
from test_algebra import truncated_system

SYSTEMS = {
    "bool": BOOLEAN_PRIMAL,
    "bool*": BOOLEAN_DUAL,
    "trunc3": truncated_system(3),
    "trunc4": truncated_system(4),
}


def independent_check(form, psi):
    """Recompose with the named operations and test monotonicity naively."""
    system = form.system
    comps = [c.as_dict() for c in form.components]
    M = psi.domain
    for x in M.elements:
        assert fold_right(system.diss, comps, x) == psi(x)
    rel_m = set(M.pairs)
    rel_l = set(system.frame.pairs)
    if system.polarity == "dual":
        rel_m = {(b, a) for a, b in rel_m}
    for c in comps:
        assert not nonmono_pairs(M.elements, rel_m, rel_l, c)
    assert form.dissociation_count <= M.layers.max_chain_length


def _maps(codomain):
    return st.builds(lambda M, data: PosetMap(M, codomain, [data.draw(st.sampled_from(codomain.elements))
                                                            for _ in M.elements]),
                     posets(6), st.data())


@pytest.mark.parametrize("name", sorted(SYSTEMS))
@pytest.mark.parametrize("theorem", [1, 2, 3])
def test_decomposition_recomposes(name, theorem):
    system = SYSTEMS[name]

    @settings(max_examples=60, deadline=None)
    @given(_maps(system.codomain))
    def run(psi):
        form, rep = decompose(psi, system, theorem)
        independent_check(form, psi)
        assert rep.verified, rep.problems

    # every combine table here is isotone, so theorem 3 is safe as well
    run()


def test_monotone_map_needs_one_component():
    M = chain(["a", "b", "c"])
    psi = PosetMap(M, BOOL, ["0", "1", "1"])
    form, rep = decompose(psi, BOOLEAN_PRIMAL)
    assert form.dissociation_count == 0
    assert rep.nonmono_sizes == (0,)


def test_three_chain_by_hand():
    M = chain(["a", "b", "c"])
    psi = PosetMap(M, BOOL, ["1", "0", "1"])
    form, rep = decompose(psi, BOOLEAN_PRIMAL)
    # phi1 joins psi over down-sets; the tail psi1 = (0, 1, 0) is still not monotone
    assert [c.images() for c in form.components] == [("1", "1", "1"), ("0", "1", "1"), ("0", "0", "1")]
    assert rep.verified


def test_theta_decomposition_of_three_chain():
    M = chain(["a", "b", "c"])
    psi = PosetMap(M, BOOL, ["1", "0", "1"])
    form, rep = decompose(psi, BOOLEAN_PRIMAL, theorem=2)
    assert [c.images() for c in form.components] == [("1", "1", "1"), ("0", "1", "1"), ("0", "0", "1")]
    for k, c in enumerate(form.components, start=1):
        assert is_theta_function(c, k, BOOLEAN_PRIMAL)
    assert rep.verified


def test_shrink_fails_on_three_chain():
    """|n(psi_k)| stays at 1 for one step: the witness is forced by the tables."""
    M = chain(["a", "b", "c"])
    psi = PosetMap(M, BOOL, ["1", "0", "1"])
    _, rep = decompose(psi, BOOLEAN_PRIMAL)
    assert rep.nonmono_sizes == (1, 1, 0)
    assert rep.region_sizes == (2, 1, 0)
    assert not rep.nonmono_strictly_shrinks
    assert rep.regions_strictly_shrink


def non_isotone_upper_bound_system():
    L = chain(["l0", "l1", "l2"])
    return make_system(
        L,
        dissociate=[["l0", "l1", "l0"], ["l1", "l0", "l0"], ["l2", "l1", "l0"]],
        null_op=["l0", "l0", "l0"],
        combine_binary=[["l1", "l1", "l2"], ["l2", "l1", "l2"], ["l2", "l2", "l2"]],
        combine_join=True,
    )


def test_upper_bound_combine_can_break_monotonicity():
    """The fold over {m0, m1} gives l2, over {m0, m1, m2} only l1."""
    system = non_isotone_upper_bound_system()
    assert check_axioms(system, "B").passed
    assert system.combine("l1", "l0") == "l2"
    assert system.combine("l1", system.combine("l0", "l0")) == "l1"
    M = chain(["m0", "m1", "m2"])
    psi = PosetMap(M, system.codomain, ["l1", "l0", "l0"])
    form, rep = decompose(psi, system, theorem=3)
    assert form.components[0].images() == ("l1", "l2", "l1")
    assert not rep.verified
    assert any("component 1 is not monotone" in p for p in rep.problems)
    # the join-based construction has no such problem
    _, rep1 = decompose(psi, system, theorem=1)
    assert rep1.verified


def test_dual_boolean_on_cube():
    cube = boolean_cube(2)
    # xor is neither monotone nor antitone
    psi = PosetMap(cube, BOOL, ["0", "1", "1", "0"])
    form, rep = decompose(psi, BOOLEAN_DUAL)
    assert rep.verified
    independent_check(form, psi)


def test_precondition_failure():
    bad = OperationSystem(BOOL, ((0, 0), (0, 0)), (0, 0), combine_join=True)
    psi = PosetMap(chain(["a", "b"]), BOOL, ["1", "0"])
    with pytest.raises(AxiomPreconditionError):
        decompose(psi, bad)
    with pytest.raises(AxiomPreconditionError):
        decompose(psi, BOOLEAN_PRIMAL, polarity="dual")


def test_theta_needs_greatest_element():
    L = FinitePoset(["o", "a", "b"], [("o", "a"), ("o", "b")])
    system = make_system(L, lambda x, y: x if y == "o" else "o", lambda x: "o")
    psi = PosetMap(chain(["p", "q"]), L, ["a", "b"])
    with pytest.raises(NoGreatestElementError):
        decompose(psi, system, theorem=2)


def test_pad_to_universal():
    M = chain(["a", "b", "c", "d"])
    psi = PosetMap(M, BOOL, ["1", "0", "0", "0"])
    form, _ = decompose(psi, BOOLEAN_PRIMAL)
    assert form.dissociation_count == 1
    padded = pad_to_universal(form, 3)
    assert padded.dissociation_count == 3
    assert padded.as_map() == psi
    assert verify_form(padded, psi).verified
    with pytest.raises(TooManyComponentsError):
        pad_to_universal(padded, 1)


def test_evaluate_matches_value_indices():
    M = chain(["a", "b", "c"])
    psi = PosetMap(M, BOOL, ["1", "0", "1"])
    form, _ = decompose(psi, BOOLEAN_PRIMAL)
    assert [form.evaluate(x) for x in M.elements] == list(psi.images())


@settings(max_examples=100, deadline=None)
@given(_maps(BOOL), st.sampled_from([1, 2, 3]))
def test_dual_equals_primal_run_on_reversed_orders(psi, theorem):
    form, _ = decompose(psi, BOOLEAN_DUAL, theorem)
    s = BOOLEAN_DUAL
    mirrored = OperationSystem(s.codomain.dual(), s.dissociate, s.null_op, s.combine_binary, s.combine_join)
    flipped = PosetMap.from_indices(psi.domain.dual(), s.codomain.dual(), psi.values)
    primal_form, _ = decompose(flipped, mirrored, theorem)
    assert [c.values for c in form.components] == [c.values for c in primal_form.components]


def test_mutated_form_fails_verification():
    M = chain(["a", "b", "c"])
    psi = PosetMap(M, BOOL, ["1", "0", "1"])
    form, _ = decompose(psi, BOOLEAN_PRIMAL)
    first = form.components[0]
    swapped = PosetMap.from_indices(M, BOOL, (0,) + first.values[1:])
    bad = type(form)((swapped,) + form.components[1:], form.system, form.polarity, form.theorem)
    rep = verify_form(bad, psi)
    assert not rep.verified
    assert any("not monotone" in p or "value mismatch" in p for p in rep.problems)


def test_theta_ranks_on_three_chain_for_every_map():
    M = chain(["a", "b", "c"])
    for code in range(8):
        psi = PosetMap.from_indices(M, BOOL, [code >> 2 & 1, code >> 1 & 1, code & 1])
        form, rep = decompose(psi, BOOLEAN_PRIMAL, theorem=2)
        assert len(form.components) == 3
        assert all(is_theta_function(c, k, BOOLEAN_PRIMAL) for k, c in enumerate(form.components, start=1))
        assert rep.verified
