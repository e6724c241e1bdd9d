from itertools import product as iproduct

import pytest

from dtoric.cone import (
    assume_normal,
    cone_lattice_points,
    face_lattice,
    facets,
    interior_ideal_generators,
    normality_check,
    semigroup_member,
    validate_presentation,
)
from dtoric.errors import ValidationError
from dtoric.exactlinalg import dot

RNC2 = [[1, 1, 1], [0, 1, 2]]
RNC3 = [[1, 1, 1, 1], [0, 1, 2, 3]]
PYRAMID = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]]


def brute_members(columns, bound, grading):
    """Independent enumeration of the semigroup: all bounded sums of columns."""
    seen = {(0,) * len(columns[0])}
    frontier = [(0,) * len(columns[0])]
    while frontier:
        nxt = []
        for p in frontier:
            for a in columns:
                q = tuple(x + y for x, y in zip(p, a))
                if dot(grading, q) <= bound and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def test_validate_rnc2():
    P = validate_presentation(RNC2)
    assert P.grading == (1, 0)
    assert [F.normal for F in facets(P)] == [(0, 1), (2, -1)]


def test_validate_rnc3_and_pyramid_facets():
    P = validate_presentation(RNC3)
    assert [F.normal for F in P.facets] == [(0, 1), (3, -1)]
    Q = validate_presentation(PYRAMID)
    assert {F.normal for F in Q.facets} == {(0, 0, 1), (0, 1, 0), (1, -1, 0), (1, 0, -1)}


def test_validate_rejects_sublattice():
    with pytest.raises(ValidationError, match="lattice not full"):
        validate_presentation([[2, 0], [0, 1]])


def test_validate_rejects_unpointed_cone():
    with pytest.raises(ValidationError, match="not pointed"):
        validate_presentation([[1, -1]])


def test_explicit_grading_checked():
    with pytest.raises(ValidationError, match="grading"):
        validate_presentation(RNC2, grading=(0, 1))
    P = validate_presentation(RNC2, grading=(2, 0))
    assert P.grading == (2, 0)


def test_face_lattice_rnc2():
    P = validate_presentation(RNC2)
    assert [sorted(f.vanishing_facets) for f in face_lattice(P)] == [[], [0], [1], [0, 1]]


def test_face_lattice_pyramid():
    # cone, 4 facets, 4 rays and the apex
    P = validate_presentation(PYRAMID)
    sizes = [len(f.vanishing_facets) for f in face_lattice(P)]
    assert len(sizes) == 10
    assert sizes.count(0) == 1 and sizes.count(1) == 4 and sizes.count(2) == 4


@pytest.mark.parametrize("matrix", [RNC2, RNC3, PYRAMID])
def test_membership_matches_brute_enumeration(matrix):
    P = validate_presentation(matrix)
    bound = 5
    expected = brute_members(P.columns, bound, P.grading)
    box = [range(-1, bound + 1)] * P.d
    for p in iproduct(*box):
        if 0 <= P.degree(p) <= bound:
            assert semigroup_member(P, p) == (p in expected), p


def test_normality_verified_for_corpus():
    for matrix in (RNC2, RNC3, PYRAMID):
        P = validate_presentation(matrix)
        res = normality_check(P, 8)
        assert res.verified
        assert P.normality_status == "verified-to-bound"
        assert P.normality_bound == 8


def test_normality_counterexample():
    # generators (1,0), (1,1), (1,3): the cone point (1,2) is missing
    P = validate_presentation([[1, 1, 1], [0, 1, 3]])
    res = normality_check(P, 6)
    assert not res.verified
    assert res.counterexample == (1, 2)
    assert P.normality_status == "unknown"


def test_assume_normal():
    P = validate_presentation(RNC2)
    assume_normal(P)
    assert P.normality_status == "assumed"


def test_cone_lattice_points_small():
    P = validate_presentation(RNC2)
    pts = cone_lattice_points(P, 1)
    assert pts == [(0, 0), (1, 0), (1, 1), (1, 2)]


def test_interior_ideal_generators():
    P = validate_presentation(RNC2)
    om = interior_ideal_generators(P)
    assert om.points == ((1, 1),)
    assert not om.top_shell_warning
    P3 = validate_presentation(RNC3)
    assert interior_ideal_generators(P3).points == ((1, 1), (1, 2))
    Q = validate_presentation(PYRAMID)
    assert interior_ideal_generators(Q).points == ((2, 1, 1),)
