import random
from fractions import Fraction

import pytest

from adlv.errors import BallExhausted, SchemaError
from adlv.frobenius import FrobeniusDatum
from adlv.presets import catalog, preset

from helpers import conjugation_orbit_min


def split(name, q=2):
    p = preset(name)
    return p.datum, FrobeniusDatum(p.datum, q=q)


def test_sigma_validation():
    d = preset("A2_sc").datum
    with pytest.raises(SchemaError):
        FrobeniusDatum(d, ((1, 1), (0, 1)))  # not a root permutation
    with pytest.raises(SchemaError):
        FrobeniusDatum(d, q=1)
    flip = FrobeniusDatum(d, preset("A2_sc").sigmas["flip"])
    assert not flip.residually_split
    assert flip.order == 2


def test_sigma_on_simples_flip():
    p = preset("A2_sc")
    sig = FrobeniusDatum(p.datum, p.sigmas["flip"])
    # finite nodes are S-indices 1 and 2; the flip swaps them and fixes
    # the affine node 0
    assert sig.s_permutation == (0, 2, 1)
    w = p.datum.weyl
    assert sig.apply(w.simple(1)) == w.simple(2)


def test_sigma_length_preserving_and_involutive_step():
    p = preset("A2_sc")
    w = p.datum.weyl
    sig = FrobeniusDatum(p.datum, p.sigmas["flip"])
    ball = w.ball(5)
    for x in ball:
        assert w.length(sig.apply(x)) == w.length(x)
    # sigma_conj twice by a sigma-fixed s returns to start
    s0 = w.simple(0)
    for x in ball[:40]:
        assert sig.conj_step(0, sig.conj_step(0, x)) == x


def test_triality_has_order_three():
    p = preset("D4_sc")
    sig = FrobeniusDatum(p.datum, p.sigmas["triality"])
    assert sig.order == 3
    perm = sig.s_permutation
    seen = set()
    cur = 1
    # S-index order: 0 = affine node, 1..4 = finite nodes
    for _ in range(3):
        seen.add(cur)
        cur = perm[cur]
    assert cur == 1 and len(seen) == 3


def test_newton_examples():
    d, sig = split("A1_sc")
    w = d.weyl
    np1 = sig.newton_point(w.translation((1,)))
    assert np1.nu_bar == (Fraction(1),) and np1.period == 1
    np2 = sig.newton_point(w.translation((-1,)))
    assert np2.nu_bar == (Fraction(1),)
    assert sig.newton_point(w.simple(1)).nu_bar == (Fraction(0),)
    assert sig.newton_point(w.simple(0)).nu_bar == (Fraction(0),)
    assert sig.newton_vector(w.simple(0)) == (Fraction(0),)


def test_newton_sigma_trivial_translation():
    d, sig = split("C2_sc")
    w = d.weyl
    nu = sig.newton_point(w.translation((0, -2)))
    dom, _ = d.dominant_rep((0, -2))
    assert nu.nu_bar == dom


def test_kottwitz_examples():
    d, sig = split("A1_sc")
    assert sig.kottwitz(d.weyl.translation((1,))) == ((), ())
    d2, sig2 = split("A1_ad")
    tau = d2.weyl.from_finite_word((1,), (0,))
    k0, ks = sig2.kottwitz(tau)
    assert k0 == (1,) and ks == (1,)


def test_straight_examples():
    d, sig = split("A1_sc")
    w = d.weyl
    assert sig.is_straight(w.identity())
    assert sig.is_straight(w.translation((1,)))
    assert not sig.is_straight(w.simple(0))
    for p in catalog():
        s = FrobeniusDatum(p.datum)
        for om in p.datum.weyl.omega_elements():
            assert s.is_straight(om.element)


def test_straight_iff_power_additive():
    for name in ("A1_ad", "A2_sc", "C2_sc"):
        p = preset(name)
        for sig_name in sorted(p.sigmas):
            sig = FrobeniusDatum(p.datum, p.sigmas[sig_name])
            w = p.datum.weyl
            for x in w.ball(4, [o.element for o in w.omega_elements()]):
                powers = []
                cur = w.identity()
                twist = x
                for _k in range(1, 7):
                    cur = cur * twist
                    twist = sig.apply(twist)
                    powers.append(w.length(cur))
                additive = all(
                    powers[k] == (k + 1) * w.length(x) for k in range(6)
                )
                assert additive == sig.is_straight(x)


def test_newton_invariant_under_twisted_conjugation():
    for name in ("A1_ad", "A2_sc"):
        p = preset(name)
        for sig_name in sorted(p.sigmas):
            sig = FrobeniusDatum(p.datum, p.sigmas[sig_name])
            w = p.datum.weyl
            for x in w.ball(6):
                nu = sig.newton_point(x).nu_bar
                for s in w.simple_affine:
                    y = sig.conj_step(s.index, x)
                    assert sig.newton_point(y).nu_bar == nu


def test_kappa_constant_on_classes_in_coinvariants():
    p = preset("A1_ad")
    sig = FrobeniusDatum(p.datum)
    w = p.datum.weyl
    rng = random.Random(12)
    ball = w.ball(4, [o.element for o in w.omega_elements()])
    for _ in range(60):
        x, g = rng.choice(ball), rng.choice(ball)
        tw = g * x * sig.apply(g.inverse())
        assert sig.kottwitz(tw)[1] == sig.kottwitz(x)[1]


def test_reduce_examples():
    d, sig = split("A1_sc")
    w = d.weyl
    # s0 s1 s0 = t^{2 alpha^vee} s_alpha reduces to length 1
    x = w.simple(0) * w.simple(1) * w.simple(0)
    m, path = sig.reduce_to_minimal(x)
    assert w.length(m) == 1
    assert path.verify(sig)
    assert path.end() == m
    # already-minimal elements come back unchanged with an empty path
    t = w.translation((1,))
    m2, path2 = sig.reduce_to_minimal(t)
    assert m2 == t and path2.steps == ()


def test_reduce_against_orbit_oracle():
    for name in ("A1_sc", "A1_ad", "A2_sc", "GL2"):
        p = preset(name)
        for sig_name in sorted(p.sigmas):
            sig = FrobeniusDatum(p.datum, p.sigmas[sig_name])
            w = p.datum.weyl
            for x in w.ball(5, [o.element for o in w.omega_elements()]):
                m, path = sig.reduce_to_minimal(x)
                assert w.length(m) == conjugation_orbit_min(sig, x)
                assert path.verify(sig)


def test_straight_class_is_single_plateau():
    # all minimal length elements of a straight class form one plateau
    p = preset("C2_sc")
    sig = FrobeniusDatum(p.datum)
    w = p.datum.weyl
    straights = sig.straight_elements_in(w.ball(8))
    seen = set()
    for x in straights:
        if x in seen:
            continue
        members = sig._plateau_info(x, 100000).members
        seen.update(members)
        for y in members:
            assert sig.is_straight(y)
        # every other straight with the same tag at the same length and
        # kappa must be in this plateau
        tag = sig.tag_of(x)
        for y in straights:
            if y not in members and sig.tag_of(y) == tag:
                assert w.length(y) != w.length(x) or y in members


def test_plateau_budget():
    d, sig = split("C2_sc")
    w = d.weyl
    x = w.simple(0) * w.simple(1)
    with pytest.raises(BallExhausted):
        sig.plateau(x, node_budget=1)


def test_tags_group_translations():
    d, sig = split("A1_sc")
    w = d.weyl
    tags = sig.straight_class_tags([w.translation((1,)), w.translation((-1,)), w.identity()])
    assert len(tags) == 2
    sizes = sorted(len(members) for _tag, members in tags)
    assert sizes == [1, 2]


def test_sigma_json_roundtrip():
    p = preset("A2_sc")
    sig = FrobeniusDatum(p.datum, p.sigmas["flip"], q=5)
    blob = sig.to_json()
    sig2 = FrobeniusDatum.from_json(p.datum, blob)
    assert sig2.matrix == sig.matrix and sig2.q == 5
    with pytest.raises(SchemaError):
        FrobeniusDatum.from_json(p.datum, {"lattice_matrix": [[1, 0]]})
    with pytest.raises(SchemaError):
        FrobeniusDatum.from_json(p.datum, {"lattice_matrix": [[1, "x"], [0, 1]]})
