import pytest
from hypothesis import given, settings, strategies as st

from cyclofactor import closedform, ffield, oracle


def test_cyclotomic_cosets_small():
    part = oracle.cyclotomic_cosets(7, 2)
    assert part.cosets == ((0,), (1, 2, 4), (3, 5, 6))
    part = oracle.cyclotomic_cosets(1, 3)
    assert part.cosets == ((0,),)
    with pytest.raises(ValueError):
        oracle.cyclotomic_cosets(6, 3)


def test_cosets_partition_everything():
    part = oracle.cyclotomic_cosets(73, 2)
    sizes = sorted(len(c) for c in part.cosets)
    assert sizes == [1] + [9] * 8
    assert sorted(i for c in part.cosets for i in c) == list(range(73))


def test_cosets_are_singletons_when_q_is_1_mod_n():
    part = oracle.cyclotomic_cosets(5, 11)
    assert part.cosets == tuple((i,) for i in range(5))


def test_count_by_cosets():
    assert oracle.count_by_cosets(1, 2) == 1
    assert oracle.count_by_cosets(7, 2) == 3
    assert oracle.count_by_cosets(73, 2) == 9
    assert oracle.count_by_cosets(151, 2) == 11
    assert oracle.count_by_cosets(36488, 3) == 1525


@settings(derandomize=True, max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=150), st.sampled_from([2, 3, 5, 7]))
def test_count_depends_only_on_q_mod_n(n, q):
    if n % q == 0:
        return
    assert oracle.count_by_cosets(n, q) == oracle.count_by_cosets(n, q + n)


def test_factor_by_cosets_7_over_f2():
    report = oracle.factor_by_cosets(7, 2)
    assert report.method == "oracle"
    assert report.num_factors == 3
    coeff_sets = {f.poly.coeffs for f in report.factors}
    assert coeff_sets == {(1, 1), (1, 1, 0, 1), (1, 0, 1, 1)}
    assert report.checks["product_ok"] is True
    assert report.checks["all_irreducible"] is True


def test_factor_by_cosets_over_extension_field():
    report = oracle.factor_by_cosets(8, 9)
    assert report.num_factors == 8
    assert all(f.degree == 1 for f in report.factors)
    ctx = closedform.field_for(9)
    for f in report.factors:
        assert f.poly.ctx is ctx


def test_factor_by_cosets_budget():
    # ord_199(2) = 99, so the splitting field needs 99 bits.
    with pytest.raises(ffield.BudgetError):
        oracle.factor_by_cosets(199, 2)
    assert oracle.count_by_cosets(199, 2) == 3


def test_factor_metadata():
    report = oracle.factor_by_cosets(7, 2)
    for f in report.factors:
        assert f.form == closedform.FORM_MINPOLY
        assert f.orbit_len == f.degree
    assert [f.degree for f in report.factors] == [1, 3, 3]
