"""Command line interface.

Problem instances travel as JSON documents; every command takes one with
``--input`` and renders a deterministic report as text or JSON.  JSON
reports echo the input document with a ``result`` block added, so a report
is itself a valid input document.

Exit codes: 0 success, 1 a boolean question was answered negatively,
2 validation failure, 3 a truncation window or search bound was too small.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import cone, dring, oracle, tfr
from .errors import DtoricError, ValidationError, WindowError
from .thetapoly import (
    LinearFactor,
    LinearFactorProduct,
    ThetaPolynomial,
    expand,
    format_polynomial,
    format_product,
)

ALLOWED_KEYS = {
    "matrix", "grading", "ideal_faces", "box", "bound", "degree",
    "normality_bound", "fan", "tuple", "sr_complex", "a", "b",
    "operator", "result",
}

EXIT_FALSE = 1
EXIT_INVALID = 2
EXIT_BOUND = 3


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    unknown = set(doc) - ALLOWED_KEYS
    if unknown:
        raise ValidationError(f"unknown document fields: {', '.join(sorted(unknown))}")
    return doc


def parse_vector(value, length=None, what="vector"):
    if isinstance(value, str):
        try:
            value = [int(x) for x in value.replace(" ", "").split(",") if x != ""]
        except ValueError as exc:
            raise ValidationError(f"bad {what}: {value!r}") from exc
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise ValidationError(f"bad {what}: expected a list of integers")
    if length is not None and len(value) != length:
        raise ValidationError(f"bad {what}: expected length {length}")
    return tuple(value)


def parse_polynomial(obj, dim: int) -> ThetaPolynomial:
    if not isinstance(obj, dict):
        raise ValidationError("polynomial must be an object")
    if "factors" in obj:
        factors = []
        for f in obj["factors"]:
            form = parse_vector(f.get("form"), dim, "factor form")
            shift = Fraction(str(f.get("shift", 0)))
            factors.append(LinearFactor(form, shift))
        scalar = Fraction(str(obj.get("scalar", 1)))
        return expand(LinearFactorProduct(dim, tuple(factors), scalar))
    if "terms" in obj:
        terms = {}
        for t in obj["terms"]:
            e = parse_vector(t.get("exp"), dim, "term exponent")
            terms[e] = terms.get(e, Fraction(0)) + Fraction(str(t.get("coeff", 1)))
        return ThetaPolynomial(dim, terms)
    raise ValidationError("polynomial needs 'factors' or 'terms'")


def build_presentation(doc: dict) -> cone.SemigroupPresentation:
    if "matrix" not in doc:
        raise ValidationError("document needs a 'matrix'")
    P = cone.validate_presentation(doc["matrix"], doc.get("grading"))
    bound = doc.get("normality_bound", 2 * max(P.degree(a) for a in P.columns) + 4)
    res = cone.normality_check(P, bound)
    if not res.verified:
        raise ValidationError(
            f"semigroup is not normal: {res.counterexample} is in the cone but not the semigroup")
    return P

def build_ideal(doc: dict, P) -> dring.RadicalMonomialIdealSpec:
    if "ideal_faces" in doc:
        return dring.RadicalMonomialIdealSpec.from_faces(doc["ideal_faces"], P)
    return dring.RadicalMonomialIdealSpec.interior(P)


def get_box(doc, box_opt, default=(-2, 2)):
    raw = box_opt or doc.get("box")
    if raw is None:
        return default
    if isinstance(raw, str):
        try:
            lo, hi = (int(x) for x in raw.split(":"))
        except ValueError as exc:
            raise ValidationError(f"bad box: {raw!r}") from exc
    else:
        lo, hi = parse_vector(raw, 2, "box")
    if lo > hi:
        raise ValidationError("box lower bound exceeds upper bound")
    return lo, hi


def get_degree(doc, degree_opt, d):
    raw = degree_opt if degree_opt is not None else doc.get("degree")
    if raw is None:
        raise ValidationError("no degree given (use --degree or the 'degree' field)")
    return parse_vector(raw, d, "degree")


def emit(doc: dict, result: dict, fmt: str, lines) -> None:
    if fmt == "json":
        payload = {k: v for k, v in doc.items() if k != "result"}
        payload["result"] = result
        click.echo(json.dumps(payload, sort_keys=True, indent=2, default=str))
    else:
        for line in lines:
            click.echo(line)


def run(body):
    try:
        code = body()
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    except WindowError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BOUND)
    except DtoricError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    sys.exit(code or 0)


input_opt = click.option("--input", "-i", "path", required=True,
                         type=click.Path(), help="JSON problem document")
format_opt = click.option("--format", "fmt", type=click.Choice(["text", "json"]),
                          default="text", show_default=True)
degree_opt = click.option("--degree", "-m", "degree", default=None,
                          help="comma separated degree, e.g. '-1,-1'")
box_opt = click.option("--box", default=None, help="degree box lo:hi, e.g. '-2:2'")
bound_opt = click.option("--bound", "-B", type=int, default=None,
                         help="truncation window degree bound")


@click.group()
@click.version_option(package_name="artifact", prog_name="dtoric")
def main():
    """Differential operators on toric and monomial rings, degree by degree."""


@main.command("facets")
@input_opt
@format_opt
def cmd_facets(path, fmt):
    """Support forms of the facets of the cone."""

    def body():
        doc = load_document(path)
        P = build_presentation(doc)
        lines = [f"grading: {','.join(str(x) for x in P.grading)}"]
        lines += [f"facet {F.facet_id}: {format_polynomial(ThetaPolynomial.linear(F.normal))}"
                  for F in P.facets]
        emit(doc, {
            "grading": list(P.grading),
            "facets": [list(F.normal) for F in P.facets],
        }, fmt, lines)

    run(body)


@main.command("dpiece")
@input_opt
@degree_opt
@format_opt
def cmd_dpiece(path, degree, fmt):
    """Degree piece of the ring of operators on the semigroup ring."""

    def body():
        doc = load_document(path)
        P = build_presentation(doc)
        m = get_degree(doc, degree, P.d)
        piece = dring.d_piece(P, m)
        G = piece.ideal.factored[0]
        lines = [
            f"degree: {','.join(str(x) for x in m)}",
            f"generator: {format_product(G)}",
            f"expanded: {format_polynomial(piece.ideal.generators[0])}",
        ]
        emit(doc, {
            "degree": list(m),
            "generator": format_product(G),
            "expanded": format_polynomial(piece.ideal.generators[0]),
        }, fmt, lines)

    run(body)


@main.command("ipiece")
@input_opt
@degree_opt
@format_opt
def cmd_ipiece(path, degree, fmt):
    """Degree piece of the idealizer of a radical monomial ideal."""

    def body():
        doc = load_document(path)
        P = build_presentation(doc)
        J = build_ideal(doc, P)
        m = get_degree(doc, degree, P.d)
        piece = dring.idealizer_piece(P, J, m)
        gens = [format_product(f) for f in piece.ideal.factored]
        lines = [f"degree: {','.join(str(x) for x in m)}"]
        lines += [f"generator: {g}" for g in gens]
        emit(doc, {"degree": list(m), "generators": gens}, fmt, lines)

    run(body)


@main.command("quotient")
@input_opt
@degree_opt
@format_opt
def cmd_quotient(path, degree, fmt):
    """Degree piece of idealizer modulo operators mapping into the ideal."""

    def body():
        doc = load_document(path)
        P = build_presentation(doc)
        J = build_ideal(doc, P)
        m = get_degree(doc, degree, P.d)
        q = dring.quotient_piece(P, J, m)
        lines = [f"degree: {','.join(str(x) for x in m)}"]
        lines += [f"numerator generator: {format_product(f)}" for f in q.numerator.ideal.factored]
        lines += [f"denominator generator: {format_product(f)}" for f in q.denominator.ideal.factored]
        lines.append(f"nonzero: {'true' if q.nonzero else 'false'}")
        if q.witness is not None:
            lines.append(f"witness: {format_polynomial(q.witness)}")
        emit(doc, {
            "degree": list(m),
            "numerator": [format_product(f) for f in q.numerator.ideal.factored],
            "denominator": [format_product(f) for f in q.denominator.ideal.factored],
            "nonzero": q.nonzero,
            "witness": None if q.witness is None else format_polynomial(q.witness),
        }, fmt, lines)

    run(body)


@main.command("gorenstein")
@input_opt
@box_opt
@format_opt
def cmd_gorenstein(path, box, fmt):
    """Gorenstein classification with a degree-by-degree operator cross-check."""

    def body():
        doc = load_document(path)
        P = build_presentation(doc)
        rep = dring.gorenstein_report(P, get_box(doc, box))
        agree = sum(1 for _, eq in rep.operator_check if eq)
        lines = [
            f"gorenstein: {'true' if rep.is_gorenstein else 'false'}",
            "certificate: " + (",".join(str(x) for x in rep.certificate)
                               if rep.certificate else "none"),
            "omega generators: " + "; ".join(",".join(str(x) for x in g)
                                             for g in rep.omega_generators),
            f"operator check: {agree}/{len(rep.operator_check)} degrees agree",
            f"consistent: {'true' if rep.box_consistent else 'false'}",
        ]
        emit(doc, {
            "gorenstein": rep.is_gorenstein,
            "certificate": None if rep.certificate is None else list(rep.certificate),
            "omega_generators": [list(g) for g in rep.omega_generators],
            "degrees_checked": len(rep.operator_check),
            "degrees_agreeing": agree,
            "consistent": rep.box_consistent,
        }, fmt, lines)
        return 0 if rep.is_gorenstein else EXIT_FALSE

    run(body)


@main.command("sr")
@input_opt
@click.option("--a", "a_opt", default=None, help="monomial exponent, e.g. '1,0'")
@click.option("--b", "b_opt", default=None, help="derivative exponent, e.g. '1,0'")
@format_opt
def cmd_sr(path, a_opt, b_opt, fmt):
    """Admissibility of x^a d^b on a Stanley-Reisner ring."""

    def body():
        doc = load_document(path)
        sc_doc = doc.get("sr_complex")
        if not isinstance(sc_doc, dict):
            raise ValidationError("document needs an 'sr_complex' object")
        sc = tfr.SimplicialComplex.build(sc_doc.get("vertices", 0), sc_doc.get("facets", []))
        a = parse_vector(a_opt if a_opt is not None else doc.get("a"), sc.vertices, "a")
        b = parse_vector(b_opt if b_opt is not None else doc.get("b"), sc.vertices, "b")
        ok = tfr.sr_generator_admissible(sc, a, b)
        lines = [f"admissible: {'true' if ok else 'false'}"]
        emit(doc, {"a": list(a), "b": list(b), "admissible": ok}, fmt, lines)
        return 0 if ok else EXIT_FALSE

    run(body)


def build_fan(doc: dict) -> tfr.MonoidalComplex:
    fan = doc.get("fan")
    if not isinstance(fan, dict):
        raise ValidationError("document needs a 'fan' object")
    cones_doc = fan.get("cones")
    if not cones_doc:
        raise ValidationError("fan needs a nonempty 'cones' list")
    dim = len(cones_doc[0]["matrix"])
    cones = []
    for i, c in enumerate(cones_doc):
        rows = c.get("matrix", [])
        ncols = len(rows[0]) if rows and rows[0] else 0
        gens = tuple(tuple(rows[r][j] for r in range(dim)) for j in range(ncols))
        cones.append(tfr.MonoidCone(str(c.get("name", f"cone{i}")), gens))
    return tfr.build_complex(
        dim, cones,
        fan.get("containments", []),
        maximal=fan.get("maximal"),
        grading=fan.get("grading"),
    )


def parse_tuple(doc: dict, C: tfr.MonoidalComplex) -> tfr.OperatorTuple:
    raw = doc.get("tuple")
    if not isinstance(raw, list):
        raise ValidationError("document needs a 'tuple' list")
    if len(raw) != len(C.maximal):
        raise ValidationError("tuple length must match the number of maximal cones")
    comps = []
    for entry in raw:
        if entry is None:
            comps.append(None)
            continue
        b = parse_vector(entry.get("b"), C.dim, "multidegree")
        q = parse_polynomial(entry.get("q", {}), C.dim)
        comps.append((b, q))
    return tfr.OperatorTuple(tuple(comps))


@main.command("tfr-verify")
@input_opt
@bound_opt
@format_opt
def cmd_tfr_verify(path, bound, fmt):
    """Check an operator tuple on a toric face ring and its glued lift."""

    def body():
        doc = load_document(path)
        C = build_fan(doc)
        T = parse_tuple(doc, C)
        B = bound or doc.get("bound", 8)
        ok = tfr.tuple_check(C, T, B)
        lifted = None
        if ok:
            act = tfr.lift_tuple(C, T, B)
            lifted = oracle.retract_condition_check(C, act)
        lines = [f"compatible: {'true' if ok else 'false'}"]
        if lifted is not None:
            lines.append(f"lift passes retract conditions: {'true' if lifted else 'false'}")
        emit(doc, {"bound": B, "compatible": ok, "lift_ok": lifted}, fmt, lines)
        return 0 if ok and (lifted is not False) else EXIT_FALSE

    run(body)


@main.command("oracle")
@input_opt
@degree_opt
@bound_opt
@format_opt
def cmd_oracle(path, degree, bound, fmt):
    """Brute-force realization and order check of one graded operator."""

    def body():
        doc = load_document(path)
        P = build_presentation(doc)
        op = doc.get("operator")
        if not isinstance(op, dict):
            raise ValidationError("document needs an 'operator' object")
        m = parse_vector(degree if degree is not None else op.get("degree"), P.d, "degree")
        q = parse_polynomial(op.get("q", {}), P.d)
        B = bound or doc.get("bound", 8)
        act = oracle.realize(P, m, q, B)
        maxdeg = max(P.degree(a) for a in P.columns)
        cap = B // maxdeg
        found = None
        for i in range(cap + 1):
            if oracle.order_check(act, i):
                found = i
                break
        lines = [f"escapes: {len(act.escapes)}"]
        for a in act.escapes[:5]:
            lines.append(f"  escape at {','.join(str(x) for x in a)}")
        lines.append("certified order: " + (str(found) if found is not None else
                                            f"none up to {cap}"))
        emit(doc, {
            "degree": list(m),
            "bound": B,
            "escapes": [list(a) for a in act.escapes],
            "order": found,
            "order_cap": cap,
        }, fmt, lines)
        return 0 if not act.escapes and found is not None else EXIT_FALSE

    run(body)


if __name__ == "__main__":
    main()
