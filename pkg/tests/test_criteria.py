import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import best_divisor_bound, ratio_brute_force
from wpkstab.core import HypersurfaceFamily, fano_index, is_linear_cone
from wpkstab.criteria import (
    BoundError,
    FanoIndexError,
    LinearConeError,
    PreconditionError,
    SmoothCase,
    VerdictTag,
    classify_smooth,
    corollary3_verdict,
    delta_lower_bound,
    is_item0_locus,
    johnson_kollar,
    kstability_verdict,
    lemma_bound1_check,
    projective_space_bound,
    ratio_extremum_search,
)

fam = HypersurfaceFamily.of


# --- delta_lower_bound -----------------------------------------------------

def test_bound_no18():
    b = delta_lower_bound(fam((1, 2, 2, 3, 5), 12))
    assert b.witness_weight == 3
    assert b.witness_r == 3
    assert b.bound == 1


def test_bound_absent_when_weight_does_not_divide():
    assert delta_lower_bound(fam((1, 1, 1, 1, 2), 5)) is None


def test_bound_absent_for_unit_weights():
    assert delta_lower_bound(fam((1, 1, 1, 1, 1), 4)) is None


def test_bound_linear_cone_raises():
    with pytest.raises(LinearConeError):
        delta_lower_bound(fam((1, 1, 2, 3), 3))


def test_tie_break_smallest_index():
    b = delta_lower_bound(fam((1, 1, 3, 3, 4), 9))
    assert (b.witness_r, b.witness_weight) == (2, 3)


def test_projective_space_bound():
    b = projective_space_bound(fam((1, 1, 1, 1, 1), 4))
    assert b.projective and b.bound == 1 and b.witness_weight == 1
    assert projective_space_bound(fam((1, 1, 1, 1, 2), 5)) is None
    assert projective_space_bound(fam((1, 1, 1), 1)) is None


nonlinear = st.lists(st.integers(1, 30), min_size=3, max_size=7).flatmap(
    lambda ws: st.tuples(st.just(ws), st.integers(1, 200).filter(lambda d: d not in ws))
)


@given(nonlinear, st.randoms())
def test_bound_properties(data, rnd):
    ws, d = data
    f = fam(ws, d)
    b = delta_lower_bound(f)
    expected = best_divisor_bound(sorted(ws), d)
    if expected is None:
        assert b is None
        return
    assert b.bound == expected
    assert b.witness_weight > 1 and d % b.witness_weight == 0
    assert b.bound == Fraction((f.dim + 1) * b.witness_weight, d)
    assert 2 * b.witness_weight <= d
    assert b.bound <= Fraction(f.dim + 1, 2)
    sh = list(ws)
    rnd.shuffle(sh)
    assert delta_lower_bound(fam(sh, d)) == b
    assert kstability_verdict(fam(sh, d)) == kstability_verdict(f)


# --- kstability_verdict ----------------------------------------------------

def test_verdict_no4():
    v = kstability_verdict(fam((1, 1, 1, 2, 2), 6))
    assert v.tag is VerdictTag.KSTABLE
    assert v.detail.bound == Fraction(4, 3)
    assert v.delta_anticanonical_bound == Fraction(4, 3)
    assert not v.equality


def test_verdict_x5_inconclusive():
    assert kstability_verdict(fam((1, 1, 1, 1, 2), 5)).tag is VerdictTag.INCONCLUSIVE


def test_verdict_not_fano():
    assert kstability_verdict(fam((1, 1, 2, 3), 7)).tag is VerdictTag.NOT_FANO


def test_verdict_linear_cone():
    v = kstability_verdict(fam((1, 1, 2, 3), 3))
    assert v.tag is VerdictTag.NOT_APPLICABLE and v.reason == "LinearCone"


def test_verdict_equality_annotated():
    v = kstability_verdict(fam((1, 2, 2, 3, 5), 12))
    assert v.tag is VerdictTag.KSTABLE and v.equality


def test_verdict_surface_is_delta_ge_one():
    # X_6 ⊂ P(1,1,2,3): bound 3*3/6 = 3/2 >= 1 but n = 2
    v = kstability_verdict(fam((1, 1, 2, 3), 6))
    assert v.tag is VerdictTag.DELTA_GE_ONE
    assert v.delta_anticanonical_bound == Fraction(3, 2)


def test_verdict_index_two_rescales():
    # X_6 ⊂ P(1,1,1,1,2,3): index 3, bound 5*3/6 = 5/2 < 3
    v = kstability_verdict(fam((1, 1, 1, 1, 2, 3), 6))
    assert v.tag is VerdictTag.INCONCLUSIVE
    assert v.delta_anticanonical_bound == Fraction(5, 6)


def test_quartic_threefold_uses_projective_bound():
    v = kstability_verdict(fam((1, 1, 1, 1, 1), 4))
    assert v.tag is VerdictTag.KSTABLE and v.detail.projective and v.equality


@given(nonlinear)
def test_verdict_invariants(data):
    ws, d = data
    f = fam(ws, d)
    v = kstability_verdict(f)
    iota = fano_index(f)
    if v.tag is VerdictTag.KSTABLE:
        assert iota >= 1 and f.dim >= 3 and v.detail.bound >= iota
    if v.tag is VerdictTag.DELTA_GE_ONE:
        assert iota >= 1 and f.dim < 3 and v.detail.bound >= iota
    if v.detail is not None and iota >= 1:
        assert v.delta_anticanonical_bound == v.detail.bound / iota
    if iota <= 0:
        assert v.tag is VerdictTag.NOT_FANO


# --- Johnson-Kollar ----------------------------------------------------------

@pytest.mark.parametrize(
    "ws, d, expected",
    [((5, 15, 17, 18, 18, 18), 90, True), ((1, 1, 1, 2, 2), 6, False), ((1, 1, 1, 1, 1), 4, False)],
)
def test_johnson_kollar(ws, d, expected):
    assert johnson_kollar(fam(ws, d)) is expected


def test_johnson_kollar_needs_index_one():
    with pytest.raises(FanoIndexError):
        johnson_kollar(fam((1, 1, 1, 1, 1), 3))


@given(st.lists(st.integers(1, 30), min_size=3, max_size=7))
def test_johnson_kollar_matches_rational_form(ws):
    d = sum(ws) - 1
    if d < 1:
        return
    f = fam(ws, d)
    a0, a1 = f.weights[:2]
    assert johnson_kollar(f) == (d < Fraction(f.dim + 1, f.dim) * a0 * a1)


# --- bound-one lemma -------------------------------------------------------

def test_bound1_x90_equality():
    r = lemma_bound1_check(fam((5, 15, 17, 18, 18, 18), 90, quasi_smooth=True))
    assert r.holds and r.equality and r.a0_gt1_on_equality
    assert r.ratio == 1


def test_bound1_no4_strict():
    r = lemma_bound1_check(fam((1, 1, 1, 2, 2), 6, quasi_smooth=True))
    assert r.holds and not r.equality


def test_bound1_divisibility_failure():
    with pytest.raises(PreconditionError) as exc:
        lemma_bound1_check(fam((1, 1, 2, 3, 5), 12, quasi_smooth=True))
    assert any("does not divide" in m for m in exc.value.failed)


def test_bound1_needs_quasi_smooth_flag():
    with pytest.raises(PreconditionError) as exc:
        lemma_bound1_check(fam((1, 1, 1, 2, 2), 6))
    assert exc.value.failed == ("quasi_smooth flag not set",)


@given(st.lists(st.integers(1, 25), min_size=3, max_size=7))
def test_bound1_holds_whenever_applicable(ws):
    f = fam(ws, sum(ws) - 1, quasi_smooth=True) if sum(ws) > 1 else None
    try:
        r = lemma_bound1_check(f)
    except PreconditionError:
        return
    assert r.holds
    if r.equality and f.weights[-1] > 1:
        assert r.a0_gt1_on_equality


def test_bound1_equality_in_projective_space():
    # all weights 1 and d = n + 1: equality with a_0 = 1, the one case the
    # well-formedness argument cannot exclude
    r = lemma_bound1_check(fam((1, 1, 1, 1, 1), 4, quasi_smooth=True))
    assert r.equality and not r.a0_gt1_on_equality


# --- ratio search ----------------------------------------------------------

def test_ratio_small():
    res = ratio_extremum_search(3, 3, 10)
    assert res.max_ratio == Fraction(1, 3)
    assert res.argmax == (2, 3, 5)
    assert res.ratio_of((2, 3, 7)) == Fraction(2, 7)


def test_ratio_no_violations():
    assert ratio_extremum_search(3, 4, 12).violations == []


@pytest.mark.parametrize("args", [(2, 3, 10), (4, 3, 10), (3, 3, 4)])
def test_ratio_bad_bounds(args):
    with pytest.raises(BoundError):
        ratio_extremum_search(*args)


@pytest.mark.parametrize("k_min, k_max, b_max", [(3, 3, 10), (3, 4, 14), (3, 5, 16), (4, 4, 20)])
def test_ratio_pruned_matches_unpruned(k_min, k_max, b_max):
    brute = ratio_brute_force(k_min, k_max, b_max)
    best = max(r for _, r in brute)
    res = ratio_extremum_search(k_min, k_max, b_max)
    assert res.max_ratio == best
    assert sorted(res.argmax_all) == sorted(t for t, r in brute if r == best)
    assert sorted(res.violations) == sorted((t, r) for t, r in brute if r > Fraction(1, 3))


# --- smooth classification ---------------------------------------------------

def test_classify_iota2_row():
    c = classify_smooth(fam((1, 1, 1, 2, 3), 6))
    assert c.gamma == 1
    assert c.case_label is SmoothCase.AN1_EQUALS_1_AN_GT_1
    assert c.exception.tag == "2a"


def test_classify_iota3_row():
    c = classify_smooth(fam((1, 1, 1, 1, 2, 3), 6))
    assert c.gamma == Fraction(5, 6) == 1 - Fraction(1, 6)
    assert c.exception.tag == "2b"


def test_classify_item0_equality():
    f = fam((1, 1, 1, 1, 2, 5), 10)
    c = classify_smooth(f)
    assert c.gamma == Fraction(5, 2)
    assert c.item0_equality and is_item0_locus(f) and f.dim % 2 == 0
    assert c.exception is None


@pytest.mark.parametrize(
    "ws, d",
    [((1, 1, 1, 2, 2), 6), ((1, 1, 1, 1, 1), 4), ((1, 1, 2, 3, 5), 8), ((1, 1, 2, 3), 3)],
)
def test_classify_preconditions(ws, d):
    with pytest.raises(PreconditionError):
        classify_smooth(fam(ws, d))


def test_corollary3_index1():
    v = corollary3_verdict(fam((1, 1, 1, 1, 2, 5), 10))
    assert v.tag is VerdictTag.KSTABLE
    assert v.delta_anticanonical_bound == Fraction(5, 2)


def test_corollary3_exception_shape():
    v = corollary3_verdict(fam((1, 1, 1, 1, 2, 3), 6))
    assert v.tag is VerdictTag.INCONCLUSIVE
    assert v.shape == "X_{6k} ⊂ P(1,...,1,2,3), k=1"


def test_corollary3_even_degree_shape():
    # index 3 with weights 1^(n+1),2 and d = 2k: n + 3 = 2k + 3
    f = fam((1,) * 5 + (2,), 4)
    v = corollary3_verdict(f)
    assert v.tag is VerdictTag.INCONCLUSIVE and v.shape.startswith("X_{2k}")


def test_corollary3_gamma_one_rows_are_kstable():
    v = corollary3_verdict(fam((1, 1, 1, 2, 3), 6))
    assert v.tag is VerdictTag.KSTABLE and v.equality


def test_corollary3_index_four_out_of_scope():
    with pytest.raises(PreconditionError):
        corollary3_verdict(fam((1, 1, 1, 1, 1, 1, 2), 4))


def test_corollary3_surface_strict_bound():
    # smooth sextic del Pezzo X_6 ⊂ P(1,1,2,3): gamma = 3/2 > 1
    v = corollary3_verdict(fam((1, 1, 2, 3), 6))
    assert v.tag is VerdictTag.KSTABLE
