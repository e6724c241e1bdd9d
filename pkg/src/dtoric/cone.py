"""Affine semigroups, their cones and primitive support forms.

A presentation is a d x n integer matrix A whose columns generate a
semigroup NA inside Z^d.  We require the columns to generate Z^d as a group
and the cone over them to be pointed, certified by an integer grading
vector w with w . a_j >= 1 for every column.  Each facet of the cone
carries its primitive integral support form: nonnegative on the cone,
vanishing on the facet, surjective onto Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from math import ceil, floor, gcd

from .errors import ValidationError
from .exactlinalg import (
    Vector,
    dot,
    fm_feasible_point,
    kernel_basis,
    primitive_vector,
    rational_rank,
    smith_normal_form,
    vec_sub,
)


@dataclass(frozen=True)
class SupportForm:
    """Primitive integral support form of a facet."""

    normal: Vector
    facet_id: int

    def __call__(self, v) -> int:
        return dot(self.normal, v)


@dataclass(frozen=True)
class FaceDescriptor:
    """A face of the cone, named by the facets it lies on."""

    vanishing_facets: frozenset[int]


@dataclass
class SemigroupPresentation:
    columns: tuple[Vector, ...]
    d: int
    grading: Vector
    facets: tuple[SupportForm, ...]
    normality_status: str = "unknown"  # unknown | assumed | verified-to-bound
    normality_bound: int = 0
    _member_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.columns)

    def degree(self, p) -> int:
        return dot(self.grading, p)


def _search_grading(columns, d) -> Vector:
    for radius in (1, 2):
        for w in iproduct(range(-radius, radius + 1), repeat=d):
            if all(dot(w, a) >= 1 for a in columns):
                return tuple(w)
    # exact rational fallback decides feasibility outright
    pt = fm_feasible_point([(a, 1) for a in columns], d)
    if pt is None:
        raise ValidationError("cone not pointed: no grading with w . a_j >= 1 exists")
    denom = 1
    for x in pt:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    return tuple(int(x * denom) for x in pt)


def _compute_facets(columns, d) -> tuple[SupportForm, ...]:
    n = len(columns)
    found = set()
    for subset in combinations(range(n), d - 1):
        rows = [columns[j] for j in subset]
        kern = kernel_basis(rows, d)
        if len(kern) != 1:
            continue
        f = primitive_vector(kern[0])
        vals = [dot(f, a) for a in columns]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            f = tuple(-x for x in f)
            vals = [-v for v in vals]
        else:
            continue
        zero_cols = [columns[j] for j, v in enumerate(vals) if v == 0]
        if rational_rank(zero_cols) != d - 1:
            continue
        found.add(f)
    return tuple(SupportForm(f, i) for i, f in enumerate(sorted(found)))


def validate_presentation(matrix, grading=None) -> SemigroupPresentation:
    """Validate a d x n matrix and build the presentation.

    Checks that the columns generate the full lattice Z^d (Smith normal
    form has unit diagonal) and that the cone is pointed (a grading vector
    exists), then enumerates the facets with their support forms.
    """
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        raise ValidationError("matrix must be nonempty")
    d = len(rows)
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValidationError("matrix rows must have equal length")
    if any(not all(isinstance(x, int) for x in r) for r in rows):
        raise ValidationError("matrix entries must be integers")
    columns = tuple(tuple(rows[i][j] for i in range(d)) for j in range(n))
    if n < d:
        raise ValidationError("lattice not full: fewer columns than ambient rank")
    S, _, _ = smith_normal_form(rows)
    if any(S[i][i] != 1 for i in range(d)):
        raise ValidationError("lattice not full: columns do not generate Z^d")
    if grading is not None:
        grading = tuple(int(x) for x in grading)
        if len(grading) != d:
            raise ValidationError("grading has wrong length")
        if any(dot(grading, a) < 1 for a in columns):
            raise ValidationError("supplied grading is not positive on the columns")
    else:
        grading = _search_grading(columns, d)
    facets = _compute_facets(columns, d)
    for F in facets:
        assert all(F(a) >= 0 for a in columns)
    return SemigroupPresentation(columns=columns, d=d, grading=grading, facets=facets)


def facets(P: SemigroupPresentation) -> tuple[SupportForm, ...]:
    return P.facets


def face_lattice(P: SemigroupPresentation) -> list[FaceDescriptor]:
    """All faces of the cone, each named by its full set of vanishing facets.

    For every subset T of facets, the columns vanishing on all of T generate
    the smallest face containing them; summing those columns lands in its
    relative interior, and the facets vanishing there name the face.
    """
    nf = len(P.facets)
    faces = set()
    for size in range(nf + 1):
        for T in combinations(range(nf), size):
            cols = [a for a in P.columns if all(P.facets[i](a) == 0 for i in T)]
            pt = tuple(sum(c[i] for c in cols) for i in range(P.d)) if cols else (0,) * P.d
            faces.add(frozenset(i for i in range(nf) if P.facets[i](pt) == 0))
    ordered = sorted(faces, key=lambda s: (len(s), sorted(s)))
    return [FaceDescriptor(s) for s in ordered]


def semigroup_member(P: SemigroupPresentation, p) -> bool:
    """Exact membership of a lattice point in NA, by graded descent."""
    p = tuple(int(x) for x in p)
    cache = P._member_cache

    def rec(q: Vector) -> bool:
        if all(x == 0 for x in q):
            return True
        hit = cache.get(q)
        if hit is not None:
            return hit
        cache[q] = False  # cut cycles; degree strictly drops so none occur
        ok = False
        if P.degree(q) > 0 and all(F(q) >= 0 for F in P.facets):
            for a in P.columns:
                r = vec_sub(q, a)
                if P.degree(r) >= 0 and all(F(r) >= 0 for F in P.facets) and rec(r):
                    ok = True
                    break
        cache[q] = ok
        return ok

    return rec(p)


def cone_lattice_points(P: SemigroupPresentation, bound: int) -> list[Vector]:
    """Lattice points of the real cone with grading degree <= bound.

    The slice is contained in the convex hull of 0 and the scaled columns
    bound * a_j / (w . a_j), which gives an integer bounding box to scan.
    """
    if bound < 0:
        return []
    lows = [0] * P.d
    highs = [0] * P.d
    for a in P.columns:
        s = Fraction(bound, P.degree(a))
        for i in range(P.d):
            v = s * a[i]
            lows[i] = min(lows[i], floor(v))
            highs[i] = max(highs[i], ceil(v))
    out = []
    for p in iproduct(*[range(lo, hi + 1) for lo, hi in zip(lows, highs)]):
        if 0 <= P.degree(p) <= bound and all(F(p) >= 0 for F in P.facets):
            out.append(p)
    out.sort(key=lambda q: (P.degree(q), q))
    return out


@dataclass(frozen=True)
class NormalityResult:
    verified: bool
    bound: int
    counterexample: Vector | None = None


def normality_check(P: SemigroupPresentation, bound: int) -> NormalityResult:
    """Compare NA with cone(A) geq Z^d on all degrees up to the bound.

    On success the status is recorded on the presentation so later
    operations can rely on it.
    """
    for p in cone_lattice_points(P, bound):
        if not semigroup_member(P, p):
            return NormalityResult(False, bound, p)
    P.normality_status = "verified-to-bound"
    P.normality_bound = max(P.normality_bound, bound)
    return NormalityResult(True, bound)


def assume_normal(P: SemigroupPresentation) -> None:
    if P.normality_status == "unknown":
        P.normality_status = "assumed"


@dataclass(frozen=True)
class InteriorIdealGenerators:
    points: tuple[Vector, ...]
    bound: int
    top_shell_warning: bool


def interior_ideal_generators(P: SemigroupPresentation, bound: int | None = None) -> InteriorIdealGenerators:
    """Minimal monomial generators of the interior ideal (canonical module).

    A lattice point m with all support forms >= 1 is a generator exactly
    when no m - a_j stays in the interior.  The search is truncated at the
    given grading degree; a warning flag is raised when a generator sits in
    the top shell, where completeness past the bound is not certified.
    """
    maxcol = max(P.degree(a) for a in P.columns)
    if bound is None:
        bound = 3 * maxcol
    interior = [p for p in cone_lattice_points(P, bound) if all(F(p) >= 1 for F in P.facets)]

    def is_interior(q):
        return all(F(q) >= 1 for F in P.facets)

    gens = [p for p in interior if not any(is_interior(vec_sub(p, a)) for a in P.columns)]
    gens.sort(key=lambda q: (P.degree(q), q))
    warning = any(P.degree(g) > bound - maxcol for g in gens)
    return InteriorIdealGenerators(tuple(gens), bound, warning)
