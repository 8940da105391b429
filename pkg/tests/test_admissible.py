import random

import pytest

from adlv.admissible import (
    adm,
    adm_parahoric,
    audit_downward_closed,
    in_adm,
    maximal_translations,
    tau_mu,
    verify_s_tau_membership,
    verify_straight_class_containment,
)
from adlv.errors import BudgetExceeded, HypothesisViolated, InfiniteParabolic
from adlv.frobenius import FrobeniusDatum
from adlv.presets import catalog, preset

from helpers import naive_in_adm, subword_set


def test_adm_zero_is_identity():
    for name in ("A1_sc", "C2_sc", "GL2"):
        d = preset(name).datum
        aset = adm(d, (0,) * d.rank)
        assert set(aset.elements) == {d.weyl.identity()}
        assert aset.tau.element.is_identity()


def test_adm_a1_example():
    d = preset("A1_sc").datum
    w = d.weyl
    aset = adm(d, (1,))
    assert len(aset) == 5
    expected = {
        w.identity(),
        w.simple(0),
        w.simple(1),
        w.translation((1,)),
        w.translation((-1,)),
    }
    assert set(aset.elements) == expected
    assert aset.max_length == 2


def test_adm_equals_union_of_subword_intervals():
    for name in ("A1_ad", "C2_sc", "A1xA1_sc", "GU_odd(2)"):
        p = preset(name)
        d = p.datum
        for _label, mu in p.mu_grid:
            aset = adm(d, mu)
            oracle = set()
            for t in maximal_translations(d, mu):
                oracle |= subword_set(d.weyl, t)
            assert set(aset.elements) == oracle


def test_adm_downward_closed_and_maximal_structure():
    for name in ("A1_ad", "A2_sc", "C2_sc", "GU_odd(2)"):
        p = preset(name)
        d = p.datum
        w = d.weyl
        for _label, mu in p.mu_grid:
            aset = adm(d, mu)
            assert audit_downward_closed(d, aset.elements) == []
            covered = set()
            for x in aset.elements:
                covered.update(c for c, _ in w.covers_below(x))
            maximal = set(aset.elements) - covered
            assert maximal == set(aset.maximal)
            for t in aset.maximal:
                assert w.length(t) == aset.max_length
            # tau is the unique Bruhat minimum
            for x in aset.elements:
                assert w.bruhat_leq(aset.tau.element, x)


def test_adm_size_invariant_under_orbit_duality():
    d = preset("C2_sc").datum
    mu = (1, 1)
    neg_dom, _ = d.dominant_rep(tuple(-x for x in mu))
    assert len(adm(d, mu)) == len(adm(d, tuple(int(x) for x in neg_dom)))


def test_tau_mu_examples():
    assert tau_mu(preset("A1_sc").datum, (1,)).element.is_identity()
    d = preset("A1_ad").datum
    tau = tau_mu(d, (1,))
    assert tau.element == d.weyl.from_finite_word((1,), (0,))
    # GU_odd: the shimura cocharacter has central tau = t^z
    gu = preset("GU_odd(2)").datum
    tau_gu = tau_mu(gu, (1, 0, 1))
    assert gu.weyl.length(tau_gu.element) == 0
    assert gu.is_central(tau_gu.element.lam)
    assert gu.pi1.project(tau_gu.element.lam) == gu.pi1.project((1, 0, 1))
    assert tau_gu.element.lam == (0, 0, 1)


def test_in_adm_examples_and_naive_agreement():
    d = preset("A1_sc").datum
    w = d.weyl
    assert in_adm(d, (1,), w.identity())
    assert not in_adm(d, (1,), w.translation((2,)))
    rng = random.Random(21)
    for name in ("A1_ad", "C2_sc", "GL2"):
        p = preset(name)
        dd = p.datum
        ww = dd.weyl
        mu = p.mu_grid[0][1]
        ball = ww.ball(6, [o.element for o in ww.omega_elements()])
        for _ in range(80):
            x = rng.choice(ball)
            assert in_adm(dd, mu, x) == naive_in_adm(dd, mu, x)


def test_tau_in_adm_and_members():
    for p in catalog():
        d = p.datum
        for _label, mu in p.mu_grid:
            assert in_adm(d, mu, tau_mu(d, mu).element)


def test_budget_exceeded():
    d = preset("C2_sc").datum
    with pytest.raises(BudgetExceeded):
        adm(d, (1, 1), budget=3)


def test_adm_parahoric_trivial_k():
    d = preset("A1_sc").datum
    aset = adm(d, (1,))
    closed, reps = adm_parahoric(d, (1,), ())
    assert closed == aset.elements
    assert set(reps) == set(aset.elements)


def test_adm_parahoric_example():
    d = preset("A1_sc").datum
    w = d.weyl
    aset = adm(d, (1,))
    closed, reps = adm_parahoric(d, (1,), (1,))
    assert set(aset.elements) <= closed
    # brute force W_K Adm W_K
    wk = w.parabolic_elements((1,))
    brute = {u * x * v for u in wk for x in aset.elements for v in wk}
    assert closed == brute
    for r in reps:
        assert not w.has_left_descent_in(r, (1,))
        assert not w.has_right_descent_in(r, (1,))
    assert w.min_double_coset_rep(w.translation((1,)), (1,)) in reps


def test_adm_parahoric_infinite():
    d = preset("A1_sc").datum
    with pytest.raises(InfiniteParabolic):
        adm_parahoric(d, (1,), (0, 1))


def test_lemma_containment_runs():
    d = preset("A1_sc").datum
    sig = FrobeniusDatum(d)
    rep = verify_straight_class_containment(d, sig, (1,))
    assert rep["pass"] and rep["straight_classes"] == 2
    rep0 = verify_straight_class_containment(d, sig, (0,))
    assert rep0["pass"] and rep0["straight_elements_checked"] == 1


def test_s_tau_verifier():
    d = preset("A1_sc").datum
    sig = FrobeniusDatum(d)
    rep = verify_s_tau_membership(d, sig, (1,))
    assert rep["pass"] and rep["checked"] == 2
    with pytest.raises(HypothesisViolated):
        verify_s_tau_membership(d, sig, (0,))  # central mu
    d2 = preset("A1xA1_sc").datum
    with pytest.raises(HypothesisViolated):
        verify_s_tau_membership(d2, FrobeniusDatum(d2), (1, 1))  # not simple
    c2 = preset("C2_sc").datum
    rep2 = verify_s_tau_membership(c2, FrobeniusDatum(c2), (1, 0))
    assert rep2["pass"]
