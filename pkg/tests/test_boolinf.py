import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from approxforms.boolinf import (ImplicativeNormalForm, TruthTable, check_inf, exhaustive_verify, inf_evaluate,
                                 inf_synthesize, is_monotone)
from approxforms.errors import LengthMismatchError

from oracles import cube_points, implies, truth_table


def test_bit_order_leftmost_is_all_zero_point():
    t = TruthTable.from_string(2, "0001")
    assert t(1, 1) == 1 and t(0, 0) == 0 and t(0, 1) == 0
    assert str(TruthTable.variable(3, 1)) == "00001111"
    assert str(TruthTable.variable(3, 3)) == "01010101"
    assert str(t) == truth_table(lambda a, b: a and b, 2)


def test_from_int_bit_k_is_point_k():
    assert str(TruthTable.from_int(2, 0b0110)) == "0110"
    assert str(TruthTable.from_int(2, 0b0001)) == "1000"


def test_bad_strings():
    with pytest.raises(LengthMismatchError):
        TruthTable.from_string(2, "011")
    with pytest.raises(ValueError):
        TruthTable.from_string(1, "0x")


def test_monotone_check_against_pairwise_definition():
    for code in range(1 << 8):
        t = TruthTable.from_int(3, code)
        pts = cube_points(3)
        naive = all(t(*p) <= t(*q) for p in pts for q in pts if all(a <= b for a, b in zip(p, q)))
        assert is_monotone(t) == naive


def test_lefebvre_formula_is_its_own_form():
    f = TruthTable.from_function(3, lambda x1, x2, x3: implies(implies(x3, x2), x1))
    form = inf_synthesize(f)
    assert form.table() == f
    assert form.k == 2
    assert form.render() == "(P2 -> P1) -> P0"
    assert [str(c) for c in form.components] == ["01111111", "00111111", "00001111"]


def test_constant_and_monotone_functions_need_no_implication():
    for bits in ("0000", "1111", "0001", "0111"):
        form = inf_synthesize(TruthTable.from_string(2, bits))
        assert form.k == 0
        assert form.render() == "P0"


def test_negation():
    form = inf_synthesize(TruthTable.from_string(1, "10"))
    assert form.k == 1
    assert [str(c) for c in form.components] == ["01", "00"]


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1))))
def test_synthesized_form_evaluates_like_the_table(arg):
    n, code = arg
    f = TruthTable.from_int(n, code)
    form = inf_synthesize(f)
    assert check_inf(f, form) is None
    for p in cube_points(n):
        # left-nested chain evaluated directly from the component tables
        acc = form.components[0](*p)
        for c in form.components[1:]:
            acc = implies(acc, c(*p))
        assert inf_evaluate(form, p) == acc == f(*p)


def test_evaluate_rejects_wrong_length():
    form = inf_synthesize(TruthTable.from_string(2, "0110"))
    with pytest.raises(LengthMismatchError):
        inf_evaluate(form, (0, 1, 1))


def test_check_inf_flags_bad_forms():
    f = TruthTable.from_string(1, "10")
    bad = ImplicativeNormalForm(1, (TruthTable.from_string(1, "10"),))
    assert check_inf(f, bad) == "component P0 not monotone"
    wrong = ImplicativeNormalForm(1, (TruthTable.from_string(1, "01"),))
    assert check_inf(f, wrong) == "not equivalent"


@pytest.mark.parametrize("n,count", [(0, 2), (1, 4), (2, 16), (3, 256)])
def test_exhaustive_small_arities(n, count):
    s = exhaustive_verify(n)
    assert s.checked == count
    assert s.passed
    assert s.max_k == n


def test_exhaustive_limit():
    with pytest.raises(ValueError):
        exhaustive_verify(5)
