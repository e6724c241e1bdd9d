"""Graded pieces of operator rings on a normal affine semigroup ring.

Fix a presentation with support forms F_1, ..., F_r.  In degree m the ring
of operators is t^m <G_m> where

    G_m = prod over F with F(m) < 0 of prod_{i=0}^{-F(m)-1} (F(theta) - i).

For a radical monomial ideal J cut out by faces, the idealizer piece and
the piece of operators mapping the ring into J are generated by G_m times
radicals of products of the translated forms H_{F,m} = F(theta) + F(m),
one choice of facet per face; the strict inequality F(m) < 0 selects the
idealizer, the weak one F(m) <= 0 the maps into J.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .cone import SemigroupPresentation, SupportForm, interior_ideal_generators
from .errors import NormalityError, ValidationError
from .exactlinalg import Vector, solve_diophantine, vec_sub
from .thetapoly import (
    LinearFactor,
    LinearFactorProduct,
    ThetaIdeal,
    expand,
    ideal_equal,
    ideal_member,
    nonmembership_certificate,
    radical_of_linear_product,
)


def g_product(P: SemigroupPresentation, m) -> LinearFactorProduct:
    """The factored generator G_m of the degree-m piece of the operator ring."""
    m = tuple(int(x) for x in m)
    factors = []
    for F in P.facets:
        v = F(m)
        if v < 0:
            for i in range(-v):
                factors.append(LinearFactor(F.normal, i))
    return LinearFactorProduct(P.d, tuple(factors))


def h_form(F: SupportForm, m) -> LinearFactor:
    """The translated support form H_{F,m} = F(theta) + F(m)."""
    return LinearFactor(F.normal, -F(m))


@dataclass(frozen=True)
class RadicalMonomialIdealSpec:
    """A radical monomial ideal as an intersection of face primes.

    Each face is given by the facet ids it lies on; the corresponding prime
    is spanned by the monomials outside that face.
    """

    faces: tuple[tuple[int, ...], ...]

    @classmethod
    def from_faces(cls, faces, P: SemigroupPresentation | None = None) -> "RadicalMonomialIdealSpec":
        cleaned = []
        for face in faces:
            ids = tuple(sorted(set(int(i) for i in face)))
            if not ids:
                raise ValidationError("a face needs at least one facet id")
            if P is not None and any(i < 0 or i >= len(P.facets) for i in ids):
                raise ValidationError("facet id out of range")
            cleaned.append(ids)
        if not cleaned:
            raise ValidationError("an ideal spec needs at least one face")
        return cls(tuple(sorted(set(cleaned))))

    @classmethod
    def interior(cls, P: SemigroupPresentation) -> "RadicalMonomialIdealSpec":
        """The interior ideal: the intersection of all facet primes."""
        return cls.from_faces([(F.facet_id,) for F in P.facets], P)

    def monomial_predicate(self, P: SemigroupPresentation):
        """Predicate deciding whether t^a lies in the ideal (a in NA assumed)."""

        def pred(a):
            return all(any(P.facets[j](a) > 0 for j in face) for face in self.faces)

        return pred


@dataclass(frozen=True)
class GradedOperatorPiece:
    m: Vector
    ideal: ThetaIdeal


def _require_normal(P: SemigroupPresentation, strict: bool) -> None:
    if P.normality_status == "unknown":
        if strict:
            raise NormalityError(
                "normality of the semigroup is unknown; run normality_check or assume_normal first"
            )
        P.normality_status = "assumed"


def d_piece(P: SemigroupPresentation, m, strict: bool = True) -> GradedOperatorPiece:
    """Degree-m piece of the operator ring: the principal ideal <G_m>."""
    _require_normal(P, strict)
    m = tuple(int(x) for x in m)
    G = g_product(P, m)
    return GradedOperatorPiece(m, ThetaIdeal(P.d, [expand(G)], factored=[G]))


def _mixed_piece(P, J: RadicalMonomialIdealSpec, m, weak: bool) -> GradedOperatorPiece:
    m = tuple(int(x) for x in m)
    G = g_product(P, m)
    prods = []
    seen = set()
    for choice in iproduct(*J.faces):
        hfs = []
        for fid in choice:
            F = P.facets[fid]
            v = F(m)
            if (v <= 0) if weak else (v < 0):
                hfs.append(h_form(F, m))
        rad = radical_of_linear_product(LinearFactorProduct(P.d, tuple(hfs)))
        full = LinearFactorProduct(P.d, G.factors + rad.factors)
        poly = expand(full)
        key = tuple(sorted(poly.terms.items()))
        if key not in seen:
            seen.add(key)
            prods.append((full, poly))
    prods.sort(key=lambda fp: (fp[1].degree(), fp[1].sort_key()))
    return GradedOperatorPiece(
        m, ThetaIdeal(P.d, [p for _, p in prods], factored=[f for f, _ in prods])
    )


def idealizer_piece(P, J: RadicalMonomialIdealSpec, m, strict: bool = True) -> GradedOperatorPiece:
    """Degree-m piece of the idealizer I(J) = {d : d(J) inside J}."""
    _require_normal(P, strict)
    return _mixed_piece(P, J, m, weak=False)


def d_into_piece(P, J: RadicalMonomialIdealSpec, m, strict: bool = True) -> GradedOperatorPiece:
    """Degree-m piece of the operators mapping the whole ring into J."""
    _require_normal(P, strict)
    return _mixed_piece(P, J, m, weak=True)


@dataclass(frozen=True)
class QuotientPiece:
    numerator: GradedOperatorPiece
    denominator: GradedOperatorPiece
    nonzero: bool
    witness: object  # ThetaPolynomial or None
    witness_point: object  # rational point certificate or None


def quotient_piece(P, J: RadicalMonomialIdealSpec, m, strict: bool = True) -> QuotientPiece:
    """The degree-m piece of I(J) / D(R, J), with a witness when nonzero."""
    num = idealizer_piece(P, J, m, strict)
    den = d_into_piece(P, J, m, strict)
    witness = None
    point = None
    for g in num.ideal.generators:
        cert = nonmembership_certificate(g, den.ideal)
        if cert is not None:
            witness, point = g, cert
            break
        if not ideal_member(g, den.ideal):
            witness = g
            break
    return QuotientPiece(num, den, witness is not None, witness, point)


def omega_times_d_piece(P, omega_generators, m, strict: bool = True) -> GradedOperatorPiece:
    """Degree-m piece of (interior ideal) * D(R): generated by the G_{m-c}."""
    _require_normal(P, strict)
    m = tuple(int(x) for x in m)
    prods = []
    seen = set()
    for c in omega_generators:
        G = g_product(P, vec_sub(m, tuple(int(x) for x in c)))
        poly = expand(G)
        key = tuple(sorted(poly.terms.items()))
        if key not in seen:
            seen.add(key)
            prods.append((G, poly))
    prods.sort(key=lambda fp: (fp[1].degree(), fp[1].sort_key()))
    return GradedOperatorPiece(
        m, ThetaIdeal(P.d, [p for _, p in prods], factored=[f for f, _ in prods])
    )


def gorenstein_certificate(P: SemigroupPresentation):
    """The lattice point with F(c) = 1 on every facet, if one exists."""
    rows = [list(F.normal) for F in P.facets]
    sol = solve_diophantine(rows, [1] * len(rows))
    if sol is None:
        return None
    c, _ = sol
    assert all(F(c) == 1 for F in P.facets)
    return c


@dataclass(frozen=True)
class GorensteinReport:
    is_gorenstein: bool
    certificate: Vector | None
    omega_generators: tuple[Vector, ...]
    omega_top_shell_warning: bool
    operator_check: tuple  # ((m, equal), ...) over the degree box
    box_consistent: bool


def gorenstein_report(P: SemigroupPresentation, box: tuple[int, int],
                      strict: bool = True, omega_bound: int | None = None) -> GorensteinReport:
    """Classify Gorensteinness and cross-check it degree by degree.

    The lattice certificate decides the answer; over the degree box the
    report also compares omega * D(R) with the operators mapping R into
    omega, which agree in every degree exactly in the Gorenstein case.
    """
    _require_normal(P, strict)
    cert = gorenstein_certificate(P)
    omega = interior_ideal_generators(P, omega_bound)
    J = RadicalMonomialIdealSpec.interior(P)
    lo, hi = box
    checks = []
    degrees = set(iproduct(range(lo, hi + 1), repeat=P.d))
    degrees.add((0,) * P.d)
    for m in sorted(degrees):
        lhs = omega_times_d_piece(P, omega.points, m, strict)
        rhs = d_into_piece(P, J, m, strict)
        checks.append((m, ideal_equal(lhs.ideal, rhs.ideal)))
    all_equal = all(eq for _, eq in checks)
    return GorensteinReport(
        is_gorenstein=cert is not None,
        certificate=cert,
        omega_generators=omega.points,
        omega_top_shell_warning=omega.top_shell_warning,
        operator_check=tuple(checks),
        box_consistent=(all_equal == (cert is not None)),
    )
