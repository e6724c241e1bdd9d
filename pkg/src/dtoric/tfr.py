"""Toric face rings from monoidal complexes, and Stanley-Reisner rings.

A monoidal complex glues affine monoids along shared faces inside a common
lattice Z^d.  Its ring has k-basis the monomials of the union of the
monoids, with t^a t^b = t^{a+b} when a and b lie in a common cone and 0
otherwise.  Operators are described cone by cone: a tuple assigns to each
maximal cone either 0 or a pair (b, q) acting by t^a -> q(a) t^{a+b}, and
compatible tuples glue to an operator on the whole ring by
inclusion-exclusion over the maximal cones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as iproduct

from .errors import IncompatibleTupleError, ValidationError
from .exactlinalg import Vector, dot, fm_feasible_point, solve_diophantine, vec_add
from .thetapoly import ThetaPolynomial


@dataclass(frozen=True)
class SimplicialComplex:
    """An abstract simplicial complex given by its facets."""

    vertices: int
    facets: tuple[frozenset[int], ...]

    @classmethod
    def build(cls, vertices: int, facets) -> "SimplicialComplex":
        sets = tuple(frozenset(int(v) for v in f) for f in facets)
        if not sets:
            raise ValidationError("a simplicial complex needs at least one facet")
        for f in sets:
            if not f:
                raise ValidationError("facets must be nonempty")
            if any(v < 1 or v > vertices for v in f):
                raise ValidationError("vertex out of range")
        for f, g in combinations(sets, 2):
            if f <= g or g <= f:
                raise ValidationError("facets must be pairwise incomparable")
        return cls(vertices, tuple(sorted(sets, key=sorted)))

    def faces(self) -> list[frozenset[int]]:
        out = {frozenset()}
        for f in self.facets:
            members = sorted(f)
            for size in range(1, len(members) + 1):
                out.update(frozenset(c) for c in combinations(members, size))
        return sorted(out, key=lambda s: (len(s), sorted(s)))


@dataclass
class MonoidCone:
    """One cone of a monoidal complex with its monoid generators."""

    name: str
    generators: tuple[Vector, ...]


@dataclass
class MonoidalComplex:
    dim: int
    cones: tuple[MonoidCone, ...]
    containments: frozenset  # (sub, super) pairs, reflexively/transitively closed
    maximal: tuple[int, ...]
    grading: Vector
    _member_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _points_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def degree(self, p) -> int:
        return dot(self.grading, p)


def _close_containments(pairs, n):
    rel = set(pairs) | {(i, i) for i in range(n)}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, dd in list(rel):
                if b == c and (a, dd) not in rel:
                    rel.add((a, dd))
                    changed = True
    return frozenset(rel)


def _search_complex_grading(cones, dim) -> Vector:
    gens = [g for c in cones for g in c.generators]
    if not gens:
        return (0,) * dim
    for radius in (1, 2):
        for w in iproduct(range(-radius, radius + 1), repeat=dim):
            if all(dot(w, g) >= 1 for g in gens):
                return tuple(w)
    pt = fm_feasible_point([(g, 1) for g in gens], dim)
    if pt is None:
        raise ValidationError("no positive grading for the complex: cones are not pointed")
    denom = 1
    for x in pt:
        denom = denom * x.denominator
    return tuple(int(x * denom) for x in pt)


def cone_contains_point(cone: MonoidCone, p) -> bool:
    """Real-cone membership: p = sum x_i g_i with rational x_i >= 0."""
    gens = cone.generators
    if not gens:
        return all(x == 0 for x in p)
    ng = len(gens)
    cons = []
    for i in range(ng):
        e = [0] * ng
        e[i] = 1
        cons.append((tuple(e), 0))
    dim = len(p)
    for c in range(dim):
        row = tuple(g[c] for g in gens)
        cons.append((row, p[c]))
        cons.append((tuple(-x for x in row), -p[c]))
    return fm_feasible_point(cons, ng) is not None


def build_complex(dim: int, cones, containments, maximal=None, grading=None,
                  validation_bound: int = 4) -> MonoidalComplex:
    """Assemble and validate a monoidal complex.

    The zero cone is added when missing.  Containments are closed
    reflexively and transitively, compatibility of the monoids along
    containments is checked on generators and on a degree window, and every
    pair of maximal cones must meet in a cone of the complex.
    """
    cones = list(cones)
    if not any(not c.generators for c in cones):
        cones.append(MonoidCone("0", ()))
    zero = next(i for i, c in enumerate(cones) if not c.generators)
    pairs = {(int(a), int(b)) for a, b in containments}
    pairs.update((zero, i) for i in range(len(cones)))
    rel = _close_containments(pairs, len(cones))
    if grading is None:
        grading = _search_complex_grading(cones, dim)
    else:
        grading = tuple(int(x) for x in grading)
        gens = [g for c in cones for g in c.generators]
        if any(dot(grading, g) < 1 for g in gens):
            raise ValidationError("supplied grading is not positive on the generators")
    if maximal is None:
        maximal = tuple(i for i in range(len(cones))
                        if not any(a == i and b != i for a, b in rel))
    else:
        maximal = tuple(int(i) for i in maximal)
    C = MonoidalComplex(dim=dim, cones=tuple(cones), containments=rel,
                        maximal=maximal, grading=grading)
    for a, b in rel:
        if a == b:
            continue
        for g in C.cones[a].generators:
            if not monoid_member(C, b, g):
                raise ValidationError(
                    f"cone {C.cones[a].name} is not a submonoid of {C.cones[b].name}")
        # M_sub must be all of (sub cone) meet M_super, checked on a window
        for p in monoid_points(C, b, validation_bound):
            if cone_contains_point(C.cones[a], p) and not monoid_member(C, a, p):
                raise ValidationError(
                    f"monoid of {C.cones[a].name} misses the point {p} of its cone")
    for i, j in combinations(maximal, 2):
        intersection_face(C, i, j)  # raises when absent or ambiguous
    return C


def monoid_member(C: MonoidalComplex, idx: int, p) -> bool:
    p = tuple(int(x) for x in p)
    key = (idx, p)
    cache = C._member_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    if all(x == 0 for x in p):
        cache[key] = True
        return True
    ok = False
    if C.degree(p) > 0:
        for g in C.cones[idx].generators:
            r = tuple(a - b for a, b in zip(p, g))
            if C.degree(r) >= 0 and monoid_member(C, idx, r):
                ok = True
                break
    cache[key] = ok
    return ok


def monoid_points(C: MonoidalComplex, idx: int, bound: int) -> list[Vector]:
    """All monoid elements of one cone with grading degree <= bound."""
    key = (idx, bound)
    hit = C._points_cache.get(key)
    if hit is not None:
        return hit
    seen = {(0,) * C.dim}
    frontier = [(0,) * C.dim]
    while frontier:
        nxt = []
        for p in frontier:
            for g in C.cones[idx].generators:
                q = vec_add(p, g)
                if C.degree(q) <= bound and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    out = sorted(seen, key=lambda q: (C.degree(q), q))
    C._points_cache[key] = out
    return out


def tfr_member(C: MonoidalComplex, p) -> bool:
    return any(monoid_member(C, i, p) for i in C.maximal)


def tfr_multiply(C: MonoidalComplex, a, b):
    """Product of two monomials; None encodes the ring element 0."""
    if a is None or b is None:
        return None
    for i in C.maximal:
        if monoid_member(C, i, a) and monoid_member(C, i, b):
            return vec_add(a, b)
    return None


def project_to_cone(C: MonoidalComplex, idx: int, combination: dict) -> dict:
    """Retract a formal sum of monomials onto one cone's monomials."""
    return {a: c for a, c in combination.items() if c and monoid_member(C, idx, a)}


def intersection_face(C: MonoidalComplex, i: int, j: int) -> int:
    """Index of the cone realizing the intersection of two cones."""
    return intersection_face_of(C, (i, j))


def intersection_face_of(C: MonoidalComplex, indices) -> int:
    indices = tuple(indices)
    if len(indices) == 1:
        return indices[0]
    cands = [c for c in range(len(C.cones))
             if all((c, i) in C.containments for i in indices)]
    if not cands:
        raise ValidationError("complex is missing an intersection face")
    for c in cands:
        if all((o, c) in C.containments for o in cands):
            return c
    raise ValidationError("intersection face is ambiguous")


def lattice_member(cone: MonoidCone, b) -> bool:
    """Is b in the group generated by the cone's monoid?"""
    if not cone.generators:
        return all(x == 0 for x in b)
    cols = [[g[i] for g in cone.generators] for i in range(len(b))]
    return solve_diophantine(cols, list(b)) is not None


# ---------------------------------------------------------------------------
# Stanley-Reisner rings as monoidal complexes


def sr_to_complex(sc: SimplicialComplex) -> MonoidalComplex:
    """Embed a Stanley-Reisner ring as a toric face ring.

    A vertex i of the complex becomes the ray through e_i + e_d in Z^d with
    d = vertices + 1; a face F becomes the cone its vertices span.  The
    monomial x^a (supp(a) a face) corresponds to the lattice point
    (a, sum(a)).
    """
    d = sc.vertices + 1
    faces = sc.faces()
    cones = []
    index = {}
    for f in faces:
        gens = []
        for v in sorted(f):
            e = [0] * d
            e[v - 1] = 1
            e[d - 1] = 1
            gens.append(tuple(e))
        name = "C{" + ",".join(str(v) for v in sorted(f)) + "}"
        index[f] = len(cones)
        cones.append(MonoidCone(name, tuple(gens)))
    pairs = [(index[f], index[g]) for f in faces for g in faces if f <= g]
    maximal = [index[f] for f in sc.facets]
    grading = tuple(0 if i < d - 1 else 1 for i in range(d))
    return build_complex(d, cones, pairs, maximal=maximal, grading=grading)


def sr_monomial(sc: SimplicialComplex, a) -> Vector:
    return tuple(list(a) + [sum(a)])


def sr_generator_admissible(sc: SimplicialComplex, a, b) -> bool:
    """Whether x^a d^b is an operator on the Stanley-Reisner ring.

    The criterion: for every facet F, either supp(a) is not contained in F
    or supp(b) is contained in F.
    """
    if len(a) != sc.vertices or len(b) != sc.vertices:
        raise ValidationError("exponent length must match the vertex count")
    sa = frozenset(i + 1 for i, x in enumerate(a) if x)
    sb = frozenset(i + 1 for i, x in enumerate(b) if x)
    return all((not sa <= F) or (sb <= F) for F in sc.facets)


# ---------------------------------------------------------------------------
# operator tuples


@dataclass(frozen=True)
class OperatorTuple:
    """One entry per maximal cone: None for 0, else (multidegree, q)."""

    components: tuple  # of None | (Vector, ThetaPolynomial)


def homogeneous_component_admissible(C: MonoidalComplex, sigma: int, b, q: ThetaPolynomial,
                                     bound: int) -> bool:
    """Window check that t^a -> q(a) t^{a+b} is an operator on one cone's ring
    compatible with the rest of the complex.

    (i)  q(a) = 0 whenever a is in the monoid but a + b is not;
    (ii) for every other maximal cone tau with shared face mu:
         q(a) = 0 whenever a lies outside M_mu but a + b inside it.
    Only degrees up to the window bound are inspected.
    """
    b = tuple(int(x) for x in b)
    if not lattice_member(C.cones[sigma], b):
        return False
    others = [t for t in C.maximal if t != sigma]
    mus = [intersection_face(C, sigma, t) for t in others]
    for a in monoid_points(C, sigma, bound):
        if q.evaluate(a) == 0:
            continue
        ab = vec_add(a, b)
        if not monoid_member(C, sigma, ab):
            return False
        for mu in mus:
            if not monoid_member(C, mu, a) and monoid_member(C, mu, ab):
                return False
    return True


def _component_value(C, comp, mu, a):
    """Action of one component on t^a, retracted to the face mu.

    Returns None for zero, else (target point, coefficient).
    """
    if comp is None:
        return None
    b, q = comp
    v = q.evaluate(a)
    if v == 0:
        return None
    tgt = vec_add(a, tuple(int(x) for x in b))
    if not monoid_member(C, mu, tgt):
        return None
    return (tgt, v)


def tuple_check(C: MonoidalComplex, T: OperatorTuple, bound: int) -> bool:
    """Decide (on a window) whether a tuple glues to an operator.

    Each nonzero component must be admissible on its cone, and on every
    shared face of every subset of maximal cones the retracted actions of
    the members must agree.
    """
    if len(T.components) != len(C.maximal):
        raise ValidationError("tuple length must match the number of maximal cones")
    for comp, sigma in zip(T.components, C.maximal):
        if comp is None:
            continue
        b, q = comp
        if not homogeneous_component_admissible(C, sigma, b, q, bound):
            return False
    nmax = len(C.maximal)
    for size in range(2, nmax + 1):
        for lam in combinations(range(nmax), size):
            mu = intersection_face_of(C, tuple(C.maximal[i] for i in lam))
            for a in monoid_points(C, mu, bound):
                vals = [_component_value(C, T.components[i], mu, a) for i in lam]
                if any(v != vals[0] for v in vals[1:]):
                    return False
    return True


def lift_tuple(C: MonoidalComplex, T: OperatorTuple, bound: int):
    """Glue a compatible tuple to an operator on the toric face ring.

    Inclusion-exclusion over nonempty subsets of the maximal cones, each
    contributing the retraction of (any) one of its members to the shared
    face.  Returns a truncated action on the degree window.
    """
    from .oracle import TruncatedAction, truncated_algebra_from_complex

    if not tuple_check(C, T, bound):
        raise IncompatibleTupleError("tuple fails the compatibility conditions")
    alg = truncated_algebra_from_complex(C, bound)
    nmax = len(C.maximal)
    subsets = []
    for size in range(1, nmax + 1):
        for lam in combinations(range(nmax), size):
            mu = intersection_face_of(C, tuple(C.maximal[i] for i in lam))
            sign = 1 if size % 2 else -1
            subsets.append((lam, mu, sign))
    mapping = {}
    for a in alg.basis:
        out: dict[Vector, object] = {}
        for lam, mu, sign in subsets:
            if not monoid_member(C, mu, a):
                continue
            val = _component_value(C, T.components[lam[0]], mu, a)
            if val is None:
                continue
            tgt, v = val
            out[tgt] = out.get(tgt, 0) + sign * v
        mapping[a] = {k: v for k, v in out.items() if v}
    return TruncatedAction(algebra=alg, mapping=mapping, domain_bound=bound)
