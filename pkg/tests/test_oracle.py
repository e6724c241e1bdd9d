from fractions import Fraction
from itertools import product as iproduct

import pytest

from dtoric.cone import normality_check, validate_presentation
from dtoric.dring import RadicalMonomialIdealSpec, d_into_piece, d_piece, idealizer_piece
from dtoric.errors import WindowError
from dtoric.oracle import (
    TruncatedAction,
    commutator_with_monomial,
    maps_into,
    order_check,
    realize,
    truncated_algebra_from_presentation,
)
from dtoric.thetapoly import ThetaPolynomial

RNC2 = [[1, 1, 1], [0, 1, 2]]


def presentation(matrix=RNC2):
    P = validate_presentation(matrix)
    assert normality_check(P, 10).verified
    return P


def test_truncated_algebra_basis():
    P = presentation()
    alg = truncated_algebra_from_presentation(P, 2)
    assert alg.basis == (
        (0, 0), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (2, 3), (2, 4),
    )
    assert alg.generators == ((1, 0), (1, 1), (1, 2))


def test_realize_flags_escapes():
    P = presentation()
    # t^(-1,0) with q = 1 throws monomials out of the ring
    act = realize(P, (-1, 0), ThetaPolynomial.constant(2, 1), 6)
    assert act.escapes  # e.g. the unit monomial
    assert (0, 0) in act.escapes
    # the honest degree piece has no escapes
    piece = d_piece(P, (-1, 0))
    good = realize(P, (-1, 0), piece.ideal.generators[0], 6)
    assert not good.escapes


def test_multiplication_operators_have_order_zero():
    P = presentation()
    act = realize(P, (1, 1), ThetaPolynomial.constant(2, 3), 6)
    assert order_check(act, 0)
    assert order_check(act, 2)


def test_euler_operator_has_order_one():
    P = presentation()
    theta = ThetaPolynomial.variable(2, 0)
    act = realize(P, (0, 0), theta, 6)
    assert not order_check(act, 0)
    assert order_check(act, 1)


def test_commutator_of_multiplications_vanishes():
    P = presentation()
    act = realize(P, (1, 1), ThetaPolynomial.constant(2, 1), 6)
    c = commutator_with_monomial(act, (1, 0))
    assert all(not out for out in c.mapping.values())


def test_order_matches_generator_degree_rnc2():
    P = presentation()
    for m in [(-1, -1), (-1, 0), (-2, -2)]:
        piece = d_piece(P, m)
        deg = piece.ideal.factored[0].degree()
        act = realize(P, m, piece.ideal.generators[0], 8)
        assert not act.escapes
        assert order_check(act, deg)
        assert not order_check(act, deg - 1)


def test_window_error_when_bound_too_small():
    P = presentation()
    piece = d_piece(P, (-2, -2))
    act = realize(P, (-2, -2), piece.ideal.generators[0], 2)
    with pytest.raises(WindowError):
        order_check(act, 4)


def test_maps_into_contracts():
    P = presentation()
    J = RadicalMonomialIdealSpec.interior(P)
    in_j = J.monomial_predicate(P)
    m = (-1, -1)
    den = d_into_piece(P, J, m)
    act = realize(P, m, den.ideal.generators[0], 8)
    assert maps_into(act, in_j)
    num = idealizer_piece(P, J, m)
    act2 = realize(P, m, num.ideal.generators[0], 8)
    assert maps_into(act2, in_j, source=in_j)
    # the bare degree piece does not map everything into the interior
    bare = realize(P, m, d_piece(P, m).ideal.generators[0], 8)
    assert not maps_into(bare, in_j)


def test_weyl_algebra_cross_check():
    # on k[x, y] the piece in degree (-1, 0) is generated by theta_1,
    # i.e. the operator d_x up to a unit; order 1
    P = presentation([[1, 0], [0, 1]])
    piece = d_piece(P, (-1, 0))
    act = realize(P, (-1, 0), piece.ideal.generators[0], 6)
    assert not act.escapes
    assert order_check(act, 1)
    assert not order_check(act, 0)
    # and x^2 d_x^2 style pieces in degree 0 have order equal to their degree
    q = ThetaPolynomial.variable(2, 0) * (
        ThetaPolynomial.variable(2, 0) - ThetaPolynomial.constant(2, 1)
    )
    act2 = realize(P, (0, 0), q, 6)
    assert order_check(act2, 2)
    assert not order_check(act2, 1)
