import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dtoric.exactlinalg import (
    determinant,
    dot,
    fm_feasible_point,
    hermite_normal_form,
    kernel_basis,
    mat_mul,
    mat_vec,
    primitive_vector,
    rational_solve,
    smith_normal_form,
    solve_diophantine,
)

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-12, 12), min_size=c, max_size=c),
            min_size=r, max_size=r,
        )
    )
)


@given(matrices)
@settings(max_examples=120, deadline=None)
def test_snf_reconstruction(M):
    S, U, V = smith_normal_form(M)
    assert mat_mul(mat_mul(U, M), V) == S
    assert determinant(U) in (-1, 1)
    assert determinant(V) in (-1, 1)
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    for i in range(len(S)):
        for j in range(len(S[0])):
            if i != j:
                assert S[i][j] == 0
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0


@given(matrices)
@settings(max_examples=100, deadline=None)
def test_hnf_reconstruction(M):
    H, U = hermite_normal_form(M)
    assert mat_mul(U, M) == H
    assert determinant(U) in (-1, 1)
    # row echelon with positive pivots, entries above reduced
    lastpiv = -1
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        assert nz[0] > lastpiv
        lastpiv = nz[0]
        assert row[nz[0]] > 0


@given(matrices)
@settings(max_examples=100, deadline=None)
def test_kernel_basis_annihilates(M):
    nc = len(M[0])
    for v in kernel_basis(M, nc):
        assert mat_vec(M, v) == (0,) * len(M)


@given(matrices, st.lists(st.integers(-6, 6), min_size=1, max_size=5))
@settings(max_examples=100, deadline=None)
def test_solve_diophantine_sound(M, x):
    x = (x * 5)[: len(M[0])]
    b = mat_vec(M, x)
    sol = solve_diophantine(M, b)
    assert sol is not None
    part, kern = sol
    assert mat_vec(M, part) == b
    for k in kern:
        assert mat_vec(M, k) == (0,) * len(M)


def test_solve_diophantine_insoluble():
    assert solve_diophantine([[2, 0], [0, 2]], [1, 2]) is None
    assert solve_diophantine([[3, 0]], [2]) is None


def test_primitive_vector():
    assert primitive_vector((4, -6, 2)) == (2, -3, 1)
    assert primitive_vector((0, 5)) == (0, 1)
    with pytest.raises(ValueError):
        primitive_vector((0, 0))


def test_rational_solve_roundtrip():
    rows = [[2, 1, 0], [0, 1, 1]]
    part, null = rational_solve(rows, [1, 2])
    assert [sum(Fraction(r[j]) * part[j] for j in range(3)) for r in rows] == [1, 2]
    assert len(null) == 1
    for vec in null:
        assert all(sum(Fraction(r[j]) * vec[j] for j in range(3)) == 0 for r in rows)


def test_rational_solve_insoluble():
    assert rational_solve([[1, 1], [1, 1]], [0, 1]) is None


def test_fm_feasible_and_infeasible():
    # x >= 1, y >= 1, x + y <= 3
    pt = fm_feasible_point([((1, 0), 1), ((0, 1), 1), ((-1, -1), -3)], 2)
    assert pt is not None
    x, y = pt
    assert x >= 1 and y >= 1 and x + y <= 3
    # x >= 1 and -x >= 0 is infeasible
    assert fm_feasible_point([((1,), 1), ((-1,), 0)], 1) is None


def test_fm_random_feasibility_agrees_with_sampling():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 3)
        cons = [
            (tuple(rng.randint(-3, 3) for _ in range(n)), rng.randint(-4, 4))
            for _ in range(rng.randint(1, 5))
        ]
        pt = fm_feasible_point(cons, n)
        if pt is not None:
            assert all(dot(cs, pt) >= r for cs, r in cons)
