import doctest
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import adlv.fgab as fgab_module
from adlv.errors import NoSolution
from adlv.fgab import (
    FinAbGroup,
    int_kernel_basis,
    lattice_basis,
    smith_normal_form,
    solve_int,
)
from adlv.linalg import (
    identity_matrix,
    mat_det,
    mat_inv_fraction,
    mat_inv_unimodular,
    mat_mul,
    mat_vec,
    matrix_order,
    principal_minors_positive,
    solve_fraction,
)


def test_doctests():
    failures, _ = doctest.testmod(fgab_module)
    assert failures == 0


small_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-6, 6), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
).map(lambda rows: tuple(tuple(r) for r in rows))


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_snf_properties(a):
    d, u, v = smith_normal_form(a)
    assert mat_det(u) in (1, -1)
    assert mat_det(v) in (1, -1)
    assert mat_mul(mat_mul(u, a), v) == d
    rows, cols = len(a), len(a[0])
    diag = [d[i][i] for i in range(min(rows, cols))]
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert d[i][j] == 0
    for x, y in zip(diag, diag[1:]):
        assert x >= 0 and y >= 0
        if x == 0:
            assert y == 0
        else:
            assert y % x == 0


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_kernel_and_solve(a):
    for k in int_kernel_basis(a):
        assert all(x == 0 for x in mat_vec(a, k))
    rows = len(a)
    cols = len(a[0])
    x = tuple(1 if i % 2 else -1 for i in range(cols))
    b = mat_vec(a, x)
    sol = solve_int(a, b)
    assert sol is not None
    assert mat_vec(a, sol) == tuple(b)


def test_lattice_basis_spans():
    basis = lattice_basis([(2, 0), (0, 2), (1, 1)], 2)
    # index-2 sublattice of Z^2 containing (1,1)
    assert len(basis) == 2
    assert solve_int(tuple(zip(*basis)), (1, 1)) is not None
    assert solve_int(tuple(zip(*basis)), (1, 0)) is None


def test_finabgroup_shapes():
    assert FinAbGroup.from_columns(1, [(2,)]).invariant_factors == (2,)
    assert FinAbGroup.from_columns(1, [(1,)]).invariant_factors == ()
    assert FinAbGroup.free(2).invariant_factors == (0, 0)
    g = FinAbGroup.from_columns(2, [(2, 0), (0, 4)])
    assert g.invariant_factors == (2, 4)
    assert g.order() == 8
    assert FinAbGroup.free(1).order() is None


def test_projection_and_lift():
    g = FinAbGroup.from_columns(2, [(1, -1)])
    for x in [(0, 0), (3, 1), (-2, 5)]:
        assert g.project(x) == g.project(tuple(a + b for a, b in zip(x, (1, -1))))
        lift = g.lift(g.project(x))
        assert g.project(lift) == g.project(x)


def test_torsion_enumeration():
    g = FinAbGroup.from_columns(2, [(2, 0), (0, 3)])
    elts = list(g.torsion_elements())
    assert len(elts) == 6
    assert len(set(elts)) == 6


def test_coinvariants_and_fixed():
    # Z^2 with the swap action: coinvariants Z, fixed subgroup Z(1,1).
    g = FinAbGroup.free(2)
    swap = ((0, 1), (1, 0))
    co = g.coinvariants(swap)
    assert co.invariant_factors == (0,)
    fixed, gens = g.fixed_subgroup(swap)
    assert fixed.invariant_factors == (0,)
    assert len(gens) == 1
    assert gens[0] in ((1, 1), (-1, -1))
    # (Z/2)^2 with swap: fixed is the diagonal Z/2.
    h = FinAbGroup.from_columns(2, [(2, 0), (0, 2)])
    fixed_h, gens_h = h.fixed_subgroup(swap)
    assert fixed_h.invariant_factors == (2,)
    assert h.project(gens_h[0]) == h.project((1, 1))


def test_solve_crossed():
    g = FinAbGroup.from_columns(2, [(2, 0), (0, 2)])
    swap = ((0, 1), (1, 0))
    # d = (1, -1) = (1-swap)(1, 0) is solvable
    c = g.solve_crossed(swap, (1, -1))
    back = tuple(a - b for a, b in zip(c, mat_vec(swap, c)))
    assert g.project(back) == g.project((1, -1))
    with pytest.raises(NoSolution):
        g.solve_crossed(swap, (1, 0))


def test_matrix_helpers():
    m = ((2, 1), (1, 1))
    assert mat_det(m) == 1
    assert mat_mul(m, mat_inv_unimodular(m)) == identity_matrix(2)
    inv = mat_inv_fraction(((2, 0), (0, 4)))
    assert inv == ((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 4)))
    assert matrix_order(((0, -1), (1, 0))) == 4
    assert principal_minors_positive(((2, -1), (-1, 2)))
    assert not principal_minors_positive(((2, -2), (-2, 2)))
    assert solve_fraction(((1, 1),), (3,)) == (Fraction(3), Fraction(0))
    assert solve_fraction(((1,), (1,)), (1, 2)) is None
