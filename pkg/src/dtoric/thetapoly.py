"""Polynomials in the Euler operators.

A graded degree-m piece of an operator ring is ``t^m q(theta)`` for q in a
commutative polynomial ring k[theta_1, ..., theta_d]; everything at a fixed
degree therefore reduces to ideal arithmetic in k[theta].  Coefficients are
exact rationals and the monomial order is graded reverse lexicographic with
theta_1 > ... > theta_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd

from .exactlinalg import Vector, rational_solve

Exponent = tuple[int, ...]


def grevlex_key(e: Exponent):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def _divides(e: Exponent, f: Exponent) -> bool:
    return all(a <= b for a, b in zip(e, f))


class ThetaPolynomial:
    """Exact multivariate polynomial in theta_1 .. theta_d."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms=None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.d = d
        self.terms = clean

    @classmethod
    def zero(cls, d: int) -> "ThetaPolynomial":
        return cls(d)

    @classmethod
    def constant(cls, d: int, c) -> "ThetaPolynomial":
        return cls(d, {(0,) * d: Fraction(c)})

    @classmethod
    def variable(cls, d: int, i: int) -> "ThetaPolynomial":
        e = [0] * d
        e[i] = 1
        return cls(d, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, form, shift=0) -> "ThetaPolynomial":
        """form . theta - shift"""
        d = len(form)
        terms = {}
        for i, c in enumerate(form):
            if c:
                e = [0] * d
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        p = cls(d, terms)
        if shift:
            p = p - cls.constant(d, shift)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def monic(self) -> "ThetaPolynomial":
        if not self.terms:
            return self
        _, c = self.leading()
        return self * (1 / c)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def mono_mul(self, exp: Exponent, coeff) -> "ThetaPolynomial":
        coeff = Fraction(coeff)
        return ThetaPolynomial(
            self.d,
            {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()},
        )

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return ThetaPolynomial(self.d, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return ThetaPolynomial(self.d, out)

    def __neg__(self):
        return ThetaPolynomial(self.d, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ThetaPolynomial):
            out: dict[Exponent, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return ThetaPolynomial(self.d, out)
        return ThetaPolynomial(self.d, {e: c * Fraction(other) for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ThetaPolynomial) and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, tuple(sorted(self.terms.items()))))

    def sort_key(self):
        return tuple(sorted(((grevlex_key(e), c) for e, c in self.terms.items()), reverse=True))

    def __repr__(self):
        return f"ThetaPolynomial({format_polynomial(self)!r})"


@dataclass(frozen=True)
class LinearFactor:
    """A factor form . theta - shift with primitive, sign-normalized form."""

    form: Vector
    shift: Fraction

    def __post_init__(self):
        form = tuple(int(x) for x in self.form)
        g = 0
        for a in form:
            g = gcd(g, abs(a))
        if g != 1:
            raise ValueError("linear factor form must be primitive")
        shift = Fraction(self.shift)
        lead = next(x for x in form if x)
        if lead < 0:
            form = tuple(-x for x in form)
            shift = -shift
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "shift", shift)

    def evaluate(self, point) -> Fraction:
        return sum(Fraction(c) * Fraction(x) for c, x in zip(self.form, point)) - self.shift

    def to_polynomial(self) -> ThetaPolynomial:
        return ThetaPolynomial.linear(self.form, self.shift)

    def sort_key(self):
        return (self.form, self.shift)


@dataclass(frozen=True)
class LinearFactorProduct:
    """A scalar times a multiset of linear factors, kept in factored form."""

    dim: int
    factors: tuple[LinearFactor, ...]
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=LinearFactor.sort_key)))
        object.__setattr__(self, "scalar", Fraction(self.scalar))

    def degree(self) -> int:
        return len(self.factors)

    def evaluate(self, point) -> Fraction:
        v = self.scalar
        for f in self.factors:
            v *= f.evaluate(point)
        return v


def expand(p: LinearFactorProduct) -> ThetaPolynomial:
    out = ThetaPolynomial.constant(p.dim, p.scalar)
    for f in p.factors:
        out = out * f.to_polynomial()
    return out


def radical_of_linear_product(p: LinearFactorProduct) -> LinearFactorProduct:
    """Drop repeated factors and the scalar: the radical of a principal
    product-of-linear-forms ideal is generated by the squarefree product."""
    return LinearFactorProduct(p.dim, tuple(set(p.factors)), Fraction(1))


class ThetaIdeal:
    """Ideal of k[theta], with an optional factored form of its generators."""

    __slots__ = ("d", "generators", "factored", "_gb")

    def __init__(self, d: int, generators, factored=None):
        self.d = d
        self.generators = [g for g in generators if not g.is_zero()]
        self.factored = list(factored) if factored is not None else None
        self._gb = None

    def __repr__(self):
        return f"ThetaIdeal({[format_polynomial(g) for g in self.generators]})"


def normal_form(p: ThetaPolynomial, basis) -> ThetaPolynomial:
    """Full reduction of p modulo a list of polynomials."""
    rem = ThetaPolynomial.zero(p.d)
    cur = p
    leads = [(g.leading()[0], g.leading()[1], g) for g in basis if not g.is_zero()]
    while not cur.is_zero():
        le, lc = cur.leading()
        for ge, gc, g in leads:
            if _divides(ge, le):
                shift = tuple(a - b for a, b in zip(le, ge))
                cur = cur - g.mono_mul(shift, lc / gc)
                break
        else:
            rem = rem + ThetaPolynomial(p.d, {le: lc})
            cur = cur - ThetaPolynomial(p.d, {le: lc})
    return rem


def _spoly(f: ThetaPolynomial, g: ThetaPolynomial) -> ThetaPolynomial:
    fe, fc = f.leading()
    ge, gc = g.leading()
    lcm = tuple(max(a, b) for a, b in zip(fe, ge))
    return f.mono_mul(tuple(a - b for a, b in zip(lcm, fe)), 1 / fc) - g.mono_mul(
        tuple(a - b for a, b in zip(lcm, ge)), 1 / gc
    )


def groebner(ideal: ThetaIdeal) -> list[ThetaPolynomial]:
    """Reduced grevlex Groebner basis via Buchberger's algorithm.

    Both classical pair-skipping criteria are applied: coprime leading
    terms, and the chain criterion.
    """
    if ideal._gb is not None:
        return ideal._gb
    basis = []
    for g in ideal.generators:
        r = normal_form(g, basis)
        if not r.is_zero():
            basis.append(r.monic())
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done = set()

    def lead(i):
        return basis[i].leading()[0]

    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: grevlex_key(tuple(max(a, b) for a, b in zip(lead(ij[0]), lead(ij[1])))),
        )
        pairs.discard((i, j))
        done.add((i, j))
        li, lj = lead(i), lead(j)
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        if lcm == tuple(a + b for a, b in zip(li, lj)):
            continue  # coprime leading terms
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lead(k), lcm):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 in done and p2 in done:
                chain = True
                break
        if chain:
            continue
        r = normal_form(_spoly(basis[i], basis[j]), basis)
        if not r.is_zero():
            basis.append(r.monic())
            n = len(basis) - 1
            pairs.update((k, n) for k in range(n))
    # interreduce to the reduced basis
    changed = True
    while changed:
        changed = False
        minimal = []
        for i, g in enumerate(basis):
            le = g.leading()[0]
            if any(j != i and _divides(basis[j].leading()[0], le) and
                   (grevlex_key(basis[j].leading()[0]) != grevlex_key(le) or j < i)
                   for j in range(len(basis))):
                changed = True
                continue
            minimal.append(g)
        basis = minimal
        out = []
        for i, g in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            r = normal_form(g, others)
            if r.is_zero():
                changed = True
                continue
            r = r.monic()
            if r != g:
                changed = True
            out.append(r)
        basis = out
    basis.sort(key=lambda g: grevlex_key(g.leading()[0]))
    ideal._gb = basis
    return basis


def ideal_member(p: ThetaPolynomial, ideal: ThetaIdeal) -> bool:
    return normal_form(p, groebner(ideal)).is_zero()


def ideal_equal(a: ThetaIdeal, b: ThetaIdeal) -> bool:
    return groebner(a) == groebner(b)


def nonmembership_certificate(p: ThetaPolynomial, ideal: ThetaIdeal):
    """A rational point where every generator vanishes but p does not.

    Only available when the ideal carries its factored generators: candidate
    points come from intersecting one factor hyperplane per generator.
    Returns a tuple of Fractions, or None when no certificate was found
    (which is inconclusive).
    """
    if ideal.factored is None:
        return None
    if not ideal.generators:
        if p.is_zero():
            return None
        d = p.d
        for pt in iproduct(range(p.degree() + 2), repeat=d):
            if p.evaluate(pt):
                return tuple(Fraction(x) for x in pt)
        return None
    if any(not prod.factors for prod in ideal.factored):
        return None  # a unit generator: the ideal is the whole ring
    d = p.d
    span = p.degree() + 1
    for combo in iproduct(*[prod.factors for prod in ideal.factored]):
        rows = [f.form for f in combo]
        rhs = [f.shift for f in combo]
        sol = rational_solve(rows, rhs)
        if sol is None:
            continue
        part, null = sol
        if len(null) > 3:
            null = null[:3]
        for coeffs in iproduct(range(span + 1), repeat=len(null)):
            pt = list(part)
            for c, vec in zip(coeffs, null):
                if c:
                    pt = [a + c * b for a, b in zip(pt, vec)]
            pt = tuple(pt)
            if p.evaluate(pt) == 0:
                continue
            if all(g.evaluate(pt) == 0 for g in ideal.generators):
                return pt
    return None


def linear_membership(p: ThetaPolynomial, ideal: ThetaIdeal, slack: int = 2) -> bool:
    """Degree-bounded membership test by exact rational row reduction.

    Tests whether p is a k-linear combination of monomial multiples of the
    generators up to total degree deg(p) + slack.  A True answer certifies
    membership; False only rules it out below the bound.
    """
    if p.is_zero():
        return True
    bound = p.degree() + slack
    # echelon rows keyed by their grevlex-leading monomial
    pivots: dict[Exponent, ThetaPolynomial] = {}

    def reduce(q: ThetaPolynomial) -> ThetaPolynomial:
        while not q.is_zero():
            le, lc = q.leading()
            row = pivots.get(le)
            if row is None:
                return q
            q = q - lc * row
        return q

    for g in ideal.generators:
        gd = g.degree()
        if gd > bound:
            continue
        for exp in iproduct(range(bound - gd + 1), repeat=p.d):
            if sum(exp) > bound - gd:
                continue
            q = reduce(g.mono_mul(exp, 1))
            if not q.is_zero():
                le, lc = q.leading()
                pivots[le] = q * (1 / lc)
    return reduce(p).is_zero()


# ---------------------------------------------------------------------------
# canonical text rendering


def _format_monomial(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 0:
            continue
        parts.append(f"t{i + 1}" if k == 1 else f"t{i + 1}^{k}")
    return "".join(parts)


def _format_coeff(c: Fraction) -> str:
    return str(c)


def format_polynomial(p: ThetaPolynomial) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda ec: grevlex_key(ec[0]), reverse=True)
    out = []
    for e, c in items:
        mono = _format_monomial(e)
        if not mono:
            chunk = _format_coeff(abs(c))
        elif abs(c) == 1:
            chunk = mono
        else:
            chunk = f"{_format_coeff(abs(c))}{mono}"
        if not out:
            out.append(chunk if c > 0 else f"-{chunk}")
        else:
            out.append(f" + {chunk}" if c > 0 else f" - {chunk}")
    return "".join(out)


def format_factor(f: LinearFactor) -> str:
    return format_polynomial(f.to_polynomial())


def format_product(p: LinearFactorProduct) -> str:
    if p.scalar == 0:
        return "0"
    body = "".join(f"({format_factor(f)})" for f in p.factors)
    if not body:
        return _format_coeff(p.scalar)
    if p.scalar == 1:
        return body
    return f"{_format_coeff(p.scalar)}{body}"
