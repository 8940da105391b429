from fractions import Fraction

import pytest

from adlv.errors import AdlvError, NotStraight, SupportViolation
from adlv.frobenius import FrobeniusDatum
from adlv.linalg import identity_matrix, mat_mul
from adlv.picard import (
    DescentCertificate,
    PicardLattice,
    PicClass,
    descends_to_parahoric,
    descent_certificate,
    is_ample,
    prime_of_residue_cardinality,
)
from adlv.presets import catalog, preset


def test_prime_of_residue_cardinality():
    assert prime_of_residue_cardinality(2) == 2
    assert prime_of_residue_cardinality(9) == 3
    assert prime_of_residue_cardinality(32) == 2
    with pytest.raises(AdlvError):
        prime_of_residue_cardinality(6)
    with pytest.raises(AdlvError):
        prime_of_residue_cardinality(1)


def test_pic_class_p_power_denominators():
    cls = PicClass.from_fractions(2, [Fraction(3, 4), Fraction(-1), Fraction(0)])
    assert cls.nums == (3, -1, 0)
    assert cls.exps == (2, 0, 0)
    assert cls.values() == (Fraction(3, 4), Fraction(-1), Fraction(0))
    with pytest.raises(AdlvError):
        PicClass.from_fractions(2, [Fraction(1, 3)])
    normalized = PicClass.from_fractions(3, [Fraction(6, 9)])
    assert normalized.nums == (2,) and normalized.exps == (1,)


def test_reflection_action_affine_a1():
    w = preset("A1_sc").datum.weyl
    pic = PicardLattice(w)
    s1 = pic.reflection_action(1)
    # s1 eps1 = -eps1 + 2 eps0 per the Cartan matrix ((2,-2),(-2,2))
    assert [row[1] for row in s1.matrix] == [2, -1]
    assert [row[0] for row in s1.matrix] == [1, 0]
    assert mat_mul(s1.matrix, s1.matrix) == identity_matrix(2)


def test_involutions_and_coxeter_relations_all_presets():
    bond = {0: 2, 1: 3, 2: 4, 3: 6}
    for p in catalog():
        pic = PicardLattice(p.datum.weyl)
        n = pic.n
        for i in range(n):
            m = pic.reflection_action(i).matrix
            assert mat_mul(m, m) == identity_matrix(n)
        for i in range(n):
            for j in range(i + 1, n):
                prod = pic.cartan[i][j] * pic.cartan[j][i]
                m_ij = bond.get(prod)
                if m_ij is None:
                    continue
                two = mat_mul(
                    pic.reflection_action(i).matrix, pic.reflection_action(j).matrix
                )
                power = identity_matrix(n)
                for _ in range(m_ij):
                    power = mat_mul(power, two)
                assert power == identity_matrix(n)


def test_word_and_sigma_actions():
    p = preset("A1_sc")
    w = p.datum.weyl
    pic = PicardLattice(w)
    assert pic.word_action([]).is_identity()
    sig = FrobeniusDatum(p.datum, q=2)
    assert pic.sigma_action(sig).matrix == ((2, 0), (0, 2))
    # word of t^{alpha^vee} = s0 s1 equals the direct matrix product
    t_op = pic.element_action(w.translation((1,)))
    manual = mat_mul(pic.reflection_action(0).matrix, pic.reflection_action(1).matrix)
    assert t_op.matrix == manual
    # translation operators are unipotent: (M - 1)^2 = 0 in rank 2
    m_minus = tuple(
        tuple(t_op.matrix[r][c] - (1 if r == c else 0) for c in range(2))
        for r in range(2)
    )
    assert mat_mul(m_minus, m_minus) == ((0, 0), (0, 0))


def test_omega_action_has_factor_one():
    p = preset("A1_ad")
    w = p.datum.weyl
    pic = PicardLattice(w)
    om = w.omega_elements()[1]
    op = pic.element_action(om.element)
    assert sorted(x for row in op.matrix for x in row) == [0, 0, 1, 1]


def test_is_ample():
    assert is_ample(PicClass.ones(2, 3))
    assert not is_ample(PicClass.from_fractions(2, [Fraction(1), Fraction(0)]))
    assert is_ample(PicClass.from_fractions(2, [Fraction(1, 2), Fraction(2)]))
    cls = PicClass.from_fractions(2, [Fraction(0), Fraction(3)])
    assert is_ample(cls, k_set=(0,))
    assert descends_to_parahoric(cls, (0,))
    assert not descends_to_parahoric(PicClass.ones(2, 2), (0,))
    with pytest.raises(SupportViolation):
        is_ample(PicClass.ones(2, 2), k_set=(0,))


def test_descent_certificate_split_examples():
    p = preset("A1_sc")
    d = p.datum
    w = d.weyl
    t = w.translation((1,))
    cert2 = descent_certificate(FrobeniusDatum(d, q=2), t, t)
    assert isinstance(cert2, DescentCertificate)
    assert cert2.operator.matrix == ((2, 0), (0, 2))
    assert cert2.pic_class.values() == (Fraction(1), Fraction(1))
    assert cert2.difference == (Fraction(1), Fraction(1))
    cert3 = descent_certificate(FrobeniusDatum(d, q=3), t, t)
    assert cert3.pic_class.values() == (Fraction(1), Fraction(1))
    assert cert3.difference == (Fraction(2), Fraction(2))


def test_descent_certificate_rotation_case():
    # basic tau with a diagram rotation: operator is q times a
    # permutation, eigenvalues q.zeta never 1
    p = preset("A1_ad")
    d = p.datum
    w = d.weyl
    sig = FrobeniusDatum(d, q=2)
    tau = w.from_finite_word((1,), (0,))
    cert = descent_certificate(sig, tau, tau)
    assert all(v > 0 for v in cert.difference)
    vals = sorted(x for row in cert.operator.matrix for x in row)
    assert vals == [0, 0, 2, 2]  # 2 . permutation


def test_descent_certificate_custom_target_and_errors():
    p = preset("A1_sc")
    d = p.datum
    w = d.weyl
    t = w.translation((1,))
    sig = FrobeniusDatum(d, q=2)
    cert = descent_certificate(sig, t, t, target=(Fraction(1, 2), Fraction(3)))
    assert all(v > 0 for v in cert.difference)
    with pytest.raises(AdlvError):
        descent_certificate(sig, t, t, target=(Fraction(0), Fraction(1)))
    with pytest.raises(NotStraight):
        descent_certificate(sig, w.simple(0), w.simple(0))


def test_descent_certificate_mixed_tag_pairs():
    # w and x straight with the same tag but different elements
    p = preset("A1_sc")
    d = p.datum
    w = d.weyl
    sig = FrobeniusDatum(d, q=5)
    t_plus, t_minus = w.translation((1,)), w.translation((-1,))
    assert sig.tag_of(t_plus) == sig.tag_of(t_minus)
    cert = descent_certificate(sig, t_plus, t_minus)
    assert all(v > 0 for v in cert.difference)
    assert all(e == 0 or n % 5 != 0 for n, e in zip(cert.pic_class.nums, cert.pic_class.exps))
