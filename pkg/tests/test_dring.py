from fractions import Fraction
from itertools import product as iproduct

import pytest

from dtoric.cone import interior_ideal_generators, normality_check, validate_presentation
from dtoric.dring import (
    GorensteinReport,
    RadicalMonomialIdealSpec,
    d_into_piece,
    d_piece,
    g_product,
    gorenstein_certificate,
    gorenstein_report,
    h_form,
    idealizer_piece,
    omega_times_d_piece,
    quotient_piece,
)
from dtoric.errors import NormalityError, ValidationError
from dtoric.thetapoly import (
    LinearFactor,
    expand,
    format_product,
    ideal_equal,
    ideal_member,
)

RNC2 = [[1, 1, 1], [0, 1, 2]]
RNC3 = [[1, 1, 1, 1], [0, 1, 2, 3]]
PYRAMID = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]]


def presentation(matrix, bound=8):
    P = validate_presentation(matrix)
    assert normality_check(P, bound).verified
    return P


def test_g_product_values():
    P = presentation(RNC2)
    assert format_product(g_product(P, (-1, -1))) == "(t2)(2t1 - t2)"
    assert format_product(g_product(P, (-2, -2))) == "(t2)(t2 - 1)(2t1 - t2)(2t1 - t2 - 1)"
    assert format_product(g_product(P, (1, 1))) == "1"
    Q = presentation(PYRAMID)
    assert format_product(g_product(Q, (-1, 0, 0))) == "(t1 - t2)(t1 - t3)"
    assert format_product(g_product(Q, (-1, -1, -1))) == "(t3)(t2)"


def test_g_product_degree_is_sum_of_negative_form_values():
    P = presentation(RNC3)
    for m in iproduct(range(-2, 3), repeat=2):
        expected = sum(-F(m) for F in P.facets if F(m) < 0)
        assert g_product(P, m).degree() == expected


def test_h_form():
    P = presentation(RNC2)
    F = P.facets[1]  # 2 t1 - t2
    h = h_form(F, (-1, -1))
    assert h.form == (2, -1) and h.shift == 1
    assert expand_one(h) is not None


def expand_one(factor: LinearFactor):
    return factor.to_polynomial()


def test_d_piece_strict_requires_normality_evidence():
    P = validate_presentation(RNC2)
    with pytest.raises(NormalityError):
        d_piece(P, (-1, -1))
    piece = d_piece(P, (-1, -1), strict=False)
    assert P.normality_status == "assumed"
    assert len(piece.ideal.generators) == 1


def test_ideal_spec_validation():
    P = presentation(RNC2)
    with pytest.raises(ValidationError):
        RadicalMonomialIdealSpec.from_faces([[5]], P)
    with pytest.raises(ValidationError):
        RadicalMonomialIdealSpec.from_faces([[]], P)
    J = RadicalMonomialIdealSpec.interior(P)
    assert J.faces == ((0,), (1,))


def test_d_into_piece_rnc2_interior():
    P = presentation(RNC2)
    J = RadicalMonomialIdealSpec.interior(P)
    piece = d_into_piece(P, J, (-1, -1))
    assert [format_product(f) for f in piece.ideal.factored] == [
        "(t2)(t2 - 1)(2t1 - t2)(2t1 - t2 - 1)"
    ]


def test_idealizer_vs_d_into_single_facet_at_zero():
    # J the prime of one facet, degree 0: idealizer is everything,
    # mapping into J forces the support form itself
    P = presentation(RNC2)
    J = RadicalMonomialIdealSpec.from_faces([[0]], P)
    num = idealizer_piece(P, J, (0, 0))
    den = d_into_piece(P, J, (0, 0))
    assert [format_product(f) for f in num.ideal.factored] == ["1"]
    assert [format_product(f) for f in den.ideal.factored] == ["(t2)"]
    q = quotient_piece(P, J, (0, 0))
    assert q.nonzero
    assert format_product(num.ideal.factored[0]) == "1"


def test_quotient_zero_when_inequalities_coincide():
    # at strictly negative form values the strict and weak pieces agree
    P = presentation(RNC3)
    J = RadicalMonomialIdealSpec.interior(P)
    q = quotient_piece(P, J, (-1, -1))
    assert ideal_equal(q.numerator.ideal, q.denominator.ideal)
    assert not q.nonzero


def test_omega_times_d_rnc2_equals_maps_into_omega():
    # principal interior ideal: J * D(R) = D(R, J) in every degree
    P = presentation(RNC2)
    om = interior_ideal_generators(P)
    J = RadicalMonomialIdealSpec.interior(P)
    for m in iproduct(range(-3, 4), repeat=2):
        lhs = omega_times_d_piece(P, om.points, m)
        rhs = d_into_piece(P, J, m)
        assert ideal_equal(lhs.ideal, rhs.ideal), m


def test_omega_times_d_rnc3_separates_at_minus_one():
    P = presentation(RNC3)
    om = interior_ideal_generators(P)
    m = (-1, -1)
    lhs = omega_times_d_piece(P, om.points, m)
    rhs = d_into_piece(P, RadicalMonomialIdealSpec.interior(P), m)
    assert [format_product(f) for f in rhs.ideal.factored] == [
        "(t2)(t2 - 1)(3t1 - t2)(3t1 - t2 - 1)(3t1 - t2 - 2)"
    ]
    assert [format_product(f) for f in lhs.ideal.factored] == [
        "(t2)(t2 - 1)(t2 - 2)(3t1 - t2)(3t1 - t2 - 1)(3t1 - t2 - 2)",
        "(t2)(t2 - 1)(3t1 - t2)(3t1 - t2 - 1)(3t1 - t2 - 2)(3t1 - t2 - 3)",
    ]
    witness = rhs.ideal.generators[0]
    assert not ideal_member(witness, lhs.ideal)
    assert not ideal_equal(lhs.ideal, rhs.ideal)


def test_gorenstein_certificates():
    assert gorenstein_certificate(presentation(RNC2)) == (1, 1)
    assert gorenstein_certificate(presentation(RNC3)) is None
    assert gorenstein_certificate(presentation(PYRAMID)) == (2, 1, 1)
    # polynomial ring k[x, y]
    assert gorenstein_certificate(presentation([[1, 0], [0, 1]])) == (1, 1)


def test_gorenstein_report_consistency():
    rep = gorenstein_report(presentation(RNC2), (-2, 2))
    assert isinstance(rep, GorensteinReport)
    assert rep.is_gorenstein and rep.certificate == (1, 1)
    assert rep.box_consistent
    assert all(eq for _, eq in rep.operator_check)
    rep3 = gorenstein_report(presentation(RNC3), (-2, 2))
    assert not rep3.is_gorenstein
    assert rep3.box_consistent
    assert not all(eq for _, eq in rep3.operator_check)
    assert dict(rep3.operator_check)[(-1, -1)] is False
