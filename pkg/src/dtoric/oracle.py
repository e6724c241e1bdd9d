"""Brute-force operator oracle on truncated monomial algebras.

Independent of the closed-form machinery: algebras are realized as their
monomial bases up to a grading degree bound, operators as explicit linear
actions on those bases, and the order filtration is checked directly from
its inductive definition (an operator has order <= i when all commutators
with ring elements have order <= i-1; commutators against the algebra
generators suffice).

Window contract: an order-i check run at degree bound B certifies the
behavior on degrees up to B - i * (max generator degree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import WindowError
from .exactlinalg import Vector, dot, vec_add


@dataclass
class TruncatedAlgebra:
    dim: int
    basis: tuple[Vector, ...]
    generators: tuple[Vector, ...]
    grading: Vector
    bound: int
    member: object  # point -> bool, exact membership in the full monomial set
    product: object  # (point, point) -> point | None, None meaning 0

    def degree(self, p) -> int:
        return dot(self.grading, p)


@dataclass
class TruncatedAction:
    """A linear map given on the basis monomials up to the domain bound."""

    algebra: TruncatedAlgebra
    mapping: dict  # point -> {point: Fraction}
    domain_bound: int
    escapes: tuple = ()

    def domain(self):
        return [a for a in self.algebra.basis if self.algebra.degree(a) <= self.domain_bound]

    def apply(self, a) -> dict:
        return self.mapping.get(a, {})

    def fingerprint(self):
        return (
            self.domain_bound,
            tuple(
                (a, tuple(sorted(self.mapping.get(a, {}).items())))
                for a in self.domain()
            ),
        )


def truncated_algebra_from_presentation(P, bound: int) -> TruncatedAlgebra:
    from .cone import cone_lattice_points, semigroup_member

    basis = tuple(p for p in cone_lattice_points(P, bound) if semigroup_member(P, p))
    gens = tuple(sorted(set(P.columns)))
    return TruncatedAlgebra(
        dim=P.d,
        basis=basis,
        generators=gens,
        grading=P.grading,
        bound=bound,
        member=lambda p: semigroup_member(P, p),
        product=lambda a, b: vec_add(a, b),
    )


def truncated_algebra_from_complex(C, bound: int) -> TruncatedAlgebra:
    from .tfr import monoid_points, tfr_member, tfr_multiply

    pts = set()
    for i in C.maximal:
        pts.update(monoid_points(C, i, bound))
    gens = sorted({g for c in C.cones for g in c.generators})
    return TruncatedAlgebra(
        dim=C.dim,
        basis=tuple(sorted(pts, key=lambda q: (C.degree(q), q))),
        generators=tuple(gens),
        grading=C.grading,
        bound=bound,
        member=lambda p: tfr_member(C, p),
        product=lambda a, b: tfr_multiply(C, a, b),
    )


def _as_algebra(target, bound: int) -> TruncatedAlgebra:
    if isinstance(target, TruncatedAlgebra):
        return target
    if hasattr(target, "facets"):
        return truncated_algebra_from_presentation(target, bound)
    return truncated_algebra_from_complex(target, bound)


def realize(target, m, q, bound: int = 8) -> TruncatedAction:
    """Realize t^m q(theta) as an explicit action on the truncated algebra.

    Every basis monomial t^a with q(a) != 0 must land back in the algebra;
    violations are collected on the ``escapes`` list of the result.
    """
    alg = _as_algebra(target, bound)
    m = tuple(int(x) for x in m)
    mapping = {}
    escapes = []
    for a in alg.basis:
        v = q.evaluate(a)
        if v == 0:
            mapping[a] = {}
            continue
        tgt = vec_add(a, m)
        if alg.member(tgt):
            mapping[a] = {tgt: v}
        else:
            mapping[a] = {}
            escapes.append(a)
    return TruncatedAction(algebra=alg, mapping=mapping, domain_bound=alg.bound,
                           escapes=tuple(escapes))


def _is_multiplication(act: TruncatedAction) -> bool:
    alg = act.algebra
    dom = act.domain()
    if act.domain_bound < 0 or not dom:
        raise WindowError("window too small: no degrees left to check")
    origin = (0,) * alg.dim
    r = act.apply(origin)
    for a in dom:
        expect: dict[Vector, Fraction] = {}
        for p, c in r.items():
            t = alg.product(p, a)
            if t is not None:
                expect[t] = expect.get(t, Fraction(0)) + c
        expect = {k: v for k, v in expect.items() if v}
        if act.apply(a) != expect:
            return False
    return True


def commutator_with_monomial(act: TruncatedAction, g: Vector) -> TruncatedAction:
    """[act, t^g] restricted to the degrees where it is determined."""
    alg = act.algebra
    nb = act.domain_bound - alg.degree(g)
    mapping = {}
    for a in alg.basis:
        if alg.degree(a) > nb:
            continue
        out: dict[Vector, Fraction] = {}
        ga = alg.product(g, a)
        if ga is not None:
            for p, c in act.apply(ga).items():
                out[p] = out.get(p, Fraction(0)) + c
        for p, c in act.apply(a).items():
            gp = alg.product(g, p)
            if gp is not None:
                out[gp] = out.get(gp, Fraction(0)) - c
        mapping[a] = {k: v for k, v in out.items() if v}
    return TruncatedAction(algebra=alg, mapping=mapping, domain_bound=nb)


def order_check(act: TruncatedAction, order: int) -> bool:
    """Does the action lie in the order-<= i filtration layer on the window?

    Inductive definition, taken literally; nested commutators against the
    generators commute with each other, so results are memoized on the
    action's restriction to its window.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    alg = act.algebra
    maxdeg = max((alg.degree(g) for g in alg.generators), default=1)
    if act.domain_bound - order * maxdeg < 0:
        raise WindowError(
            f"window too small: order-{order} check needs degree bound >= {order * maxdeg}"
        )
    memo: dict = {}

    def rec(cur: TruncatedAction, i: int) -> bool:
        key = (cur.fingerprint(), i)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if _is_multiplication(cur):
            res = True
        elif i == 0:
            res = False
        else:
            res = all(rec(commutator_with_monomial(cur, g), i - 1) for g in alg.generators)
        memo[key] = res
        return res

    return rec(act, order)


def maps_into(act: TruncatedAction, target, source=None) -> bool:
    """Check image containment on the window.

    ``target`` decides membership for image monomials, the optional
    ``source`` restricts which basis monomials to feed in.
    """
    for a in act.domain():
        if source is not None and not source(a):
            continue
        for p, c in act.apply(a).items():
            if c and not target(p):
                return False
    return True


def retract_condition_check(C, act: TruncatedAction) -> bool:
    """Operator test on a toric face ring via its cone retracts.

    For every maximal cone: monomials retracting to zero must keep doing so
    after the action, and the retracted action must have finite order (at
    most the certifiable window order).
    """
    from .tfr import monoid_member, monoid_points

    alg = act.algebra
    for ell in C.maximal:
        in_cone = lambda p: monoid_member(C, ell, p)  # noqa: E731
        for a in act.domain():
            if in_cone(a):
                continue
            if any(c and in_cone(p) for p, c in act.apply(a).items()):
                return False
        gens = C.cones[ell].generators
        rbasis = tuple(monoid_points(C, ell, act.domain_bound))
        ralg = TruncatedAlgebra(
            dim=alg.dim,
            basis=rbasis,
            generators=tuple(sorted(set(gens))) or ((0,) * alg.dim,),
            grading=C.grading,
            bound=act.domain_bound,
            member=in_cone,
            product=lambda a, b: vec_add(a, b),
        )
        mapping = {
            a: {p: c for p, c in act.apply(a).items() if c and in_cone(p)}
            for a in rbasis
        }
        ract = TruncatedAction(algebra=ralg, mapping=mapping, domain_bound=act.domain_bound)
        maxdeg = max((C.degree(g) for g in gens), default=1)
        cap = act.domain_bound // maxdeg
        if not order_check(ract, cap):
            return False
    return True
