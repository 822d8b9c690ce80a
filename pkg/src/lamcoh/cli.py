"""Command-line front end: build complexes from recipe files, run the
cohomology / L2 / dynamics computations, and emit TSV tables plus optional
JSON reports.

Exit status: 0 on success, 1 when a check or invariant fails, 2 on input
errors (unparsable recipes, unknown keys, wrong backend).  Output is
deterministic: identical inputs give byte-identical output.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from .arcs import ArcSet, indicator_coboundary, is_rotation_invariant, \
    one_is_coboundary, zero_set
from .builders import (FiniteComplex, SuspensionData, kronecker_model,
                       product_complex, suspension, wedge)
from .checkers import excision_check, mayer_vietoris_check
from .cohomology import CohomologyGroup, cohomology_dim, pair_sequence_check
from .complexes import (Cochain, Subcomplex, Transversal, complex_from_dict,
                        complex_to_dict, format_fraction, parse_fraction)
from .corpus import random_complex
from .geometry import (LinearRegion, attach_decompose, prism_decompose,
                       triangulate, union_volume)
from .homotopy import homotopy_operator, prism_complex
from .l2 import hodge_report, l2_betti
from .quadfield import QuadReal
from .subdivision import barycentric_subdivide


class RecipeError(ValueError):
    pass


_NAMED_BASES = {
    "point": FiniteComplex.point,
    "segment": FiniteComplex.segment,
    "circle3": lambda: FiniteComplex.circle(3),
    "circle4": lambda: FiniteComplex.circle(4),
    "circle6": lambda: FiniteComplex.circle(6),
    "torus7": FiniteComplex.torus7,
}


# instance-triple keys consumed by the check commands
_AUX_KEYS = ("u", "v", "a", "z")


def _require_keys(data, required, optional=()):
    keys = set(data)
    missing = set(required) - keys
    if missing:
        raise RecipeError("recipe is missing keys: %s" % sorted(missing))
    extra = keys - set(required) - set(optional) - {"kind"} - set(_AUX_KEYS)
    if extra:
        raise RecipeError("unknown recipe keys: %s" % sorted(extra))


def _parse_weights(raw):
    if not isinstance(raw, list) or not raw:
        raise RecipeError("weights must be a nonempty list of rational strings")
    try:
        return [parse_fraction(w) for w in raw]
    except (ValueError, ZeroDivisionError) as e:
        raise RecipeError("bad rational weight: %s" % e)


def _parse_endpoint(raw, d):
    if isinstance(raw, str):
        return QuadReal(parse_fraction(raw), 0, d)
    if isinstance(raw, dict):
        extra = set(raw) - {"a", "b", "d"}
        if extra:
            raise RecipeError("unknown endpoint keys: %s" % sorted(extra))
        return QuadReal(parse_fraction(raw["a"]),
                        parse_fraction(raw.get("b", "0")), raw.get("d", d))
    raise RecipeError("endpoints must be rational strings or {a, b, d} maps")


def build_complex(recipe, seed=0):
    """A FiberedComplex from a complex-producing recipe."""
    kind = recipe.get("kind")
    if kind == "explicit-complex":
        _require_keys(recipe, ["complex"])
        try:
            return complex_from_dict(recipe["complex"])
        except (KeyError, ValueError, TypeError) as e:
            raise RecipeError("bad explicit complex: %s" % e)
    if kind == "product":
        _require_keys(recipe, ["base", "weights"])
        base = recipe["base"]
        if isinstance(base, str):
            if base not in _NAMED_BASES:
                raise RecipeError("unknown named base %r" % base)
            C = _NAMED_BASES[base]()
        elif isinstance(base, dict) and set(base) == {"simplices"}:
            C = FiniteComplex([tuple(s) for s in base["simplices"]])
        else:
            raise RecipeError("base must be a name or {'simplices': [...]}")
        return product_complex(C, Transversal(_parse_weights(recipe["weights"])))
    if kind == "suspension":
        _require_keys(recipe, ["base", "weights", "perms"])
        weights = _parse_weights(recipe["weights"])
        try:
            data = SuspensionData(recipe["base"], Transversal(weights),
                                  recipe["perms"])
        except ValueError as e:
            raise RecipeError(str(e))
        return suspension(data)
    if kind == "kronecker":
        _require_keys(recipe, ["q"], ["p", "weights"])
        q = int(recipe["q"])
        p = int(recipe.get("p", 1))
        weights = _parse_weights(recipe["weights"]) if "weights" in recipe else None
        if q <= 0:
            raise RecipeError("q must be positive")
        return kronecker_model(q, p, weights)
    if kind == "wedge":
        _require_keys(recipe, ["left", "right", "glue"])
        F = build_complex(recipe["left"], seed)
        G = build_complex(recipe["right"], seed)
        pairs = [((int(a), int(b)), (int(c), int(d)))
                 for a, b, c, d in recipe["glue"]]
        try:
            return wedge(F, G, pairs)[0]
        except ValueError as e:
            raise RecipeError("bad glue data: %s" % e)
    if kind == "random-complex":
        _require_keys(recipe, [], ["index"])
        rng = random.Random(seed)
        idx = int(recipe.get("index", 0))
        X = None
        for _ in range(idx + 1):
            X = random_complex(rng)
        return X
    raise RecipeError("recipe kind %r does not build a complex" % (kind,))


def _subcomplex_from(recipe, key, X, default=None, closed=True):
    if key not in recipe:
        if default is not None:
            return default
        raise RecipeError("recipe needs key %r with instance triples" % key)
    triples = []
    for item in recipe[key]:
        n, fi, t = (int(x) for x in item)
        if not (0 <= n <= X.top_dim) or not (0 <= fi < len(X.families[n])) \
                or t not in X.families[n][fi].base:
            raise RecipeError("instance %s does not exist" % ([n, fi, t],))
        triples.append((n, fi, t))
    if closed:
        return Subcomplex.from_instances(X, triples)
    sel = [[set() for _ in fl] for fl in X.families]
    for n, fi, t in triples:
        sel[n][fi].add(t)
    return Subcomplex(X, sel)


def _load_recipe(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise RecipeError("cannot read recipe: %s" % e)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise RecipeError("parse error at line %d column %d: %s"
                          % (e.lineno, e.colno, e.msg))
    if not isinstance(data, dict) or "kind" not in data:
        raise RecipeError("recipe must be a JSON object with a 'kind' key")
    return data


class Report:
    def __init__(self):
        self.rows = []
        self.doc = {}

    def row(self, *cells):
        self.rows.append("\t".join(str(c) for c in cells))

    def emit(self, args):
        out = sys.stdout
        for r in self.rows:
            out.write(r + "\n")
        payload = json.dumps(self.doc, indent=2, sort_keys=True)
        if args.json:
            out.write(payload + "\n")
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")


def _degrees(args, top):
    if args.degree is not None:
        return [args.degree]
    return list(range(top + 1))


# -- commands ---------------------------------------------------------------------

def cmd_validate(args, recipe):
    X = build_complex(recipe, args.seed)
    rep = Report()
    vrep = X.validate()
    rep.row("valid", "true" if vrep.ok else "false")
    for kind, msg in vrep.violations:
        rep.row("violation", kind, msg)
    rep.doc = {"valid": vrep.ok,
               "violations": [{"kind": k, "message": m} for k, m in vrep.violations]}
    rep.emit(args)
    return 0 if vrep.ok else 1


def cmd_cohomology(args, recipe):
    if args.coeff == "r":
        raise RecipeError("real coefficients use the hodge backend, not exact ranks")
    X = build_complex(recipe, args.seed)
    rep = Report()
    dims = {}
    rep.row("degree", "dim_H")
    for n in _degrees(args, X.top_dim):
        d, _ = cohomology_dim(X, n, args.coeff)
        dims[n] = d
        rep.row(n, d)
    doc = {"coeff": args.coeff, "dims": {str(n): d for n, d in dims.items()}}
    if recipe.get("kind") == "kronecker":
        q = int(recipe["q"])
        p = int(recipe.get("p", 1))
        solvable, _ = one_is_coboundary(q, p)
        H1 = CohomologyGroup(X, 1, "z2")
        one = Cochain.constant(X, 1, "z2")
        trivial = H1.is_trivial_class(H1.vector_from_cochain(one))
        rep.row("one_cochain", "coboundary" if trivial else "nontrivial")
        doc["one_cochain_nontrivial"] = not trivial
        if trivial != solvable:
            rep.row("warning", "suspension and cyclic model disagree")
            rep.doc = doc
            rep.emit(args)
            return 1
    rep.doc = doc
    rep.emit(args)
    return 0


def cmd_betti(args, recipe):
    X = build_complex(recipe, args.seed)
    rep = Report()
    rep.row("degree", "betti_exact", "betti_float")
    doc = {"betti": {}}
    for n in _degrees(args, X.top_dim):
        exact = l2_betti(X, n, exact=True)
        approx = l2_betti(X, n, exact=False, tol=args.tol)
        rep.row(n, format_fraction(exact), "%.17g" % approx)
        doc["betti"][str(n)] = {"exact": format_fraction(exact),
                                "float": "%.17g" % approx}
    rep.doc = doc
    rep.emit(args)
    return 0


def cmd_hodge(args, recipe):
    if args.coeff == "z2":
        raise RecipeError("the Hodge backend needs q or r coefficients")
    X = build_complex(recipe, args.seed)
    rep = Report()
    doc = {"reports": []}
    rep.row("degree", "harmonic_dim", "lambda_betti", "max_residual")
    for n in _degrees(args, X.top_dim):
        hr = hodge_report(X, n, args.coeff, tol=args.tol)
        lb = (format_fraction(hr.lambda_betti)
              if isinstance(hr.lambda_betti, Fraction) else "%.17g" % hr.lambda_betti)
        mres = max(hr.residuals.values(), default=0.0)
        rep.row(n, len(hr.harmonic_basis), lb, "%.3e" % mres)
        doc["reports"].append(hr.to_dict())
    rep.doc = doc
    rep.emit(args)
    return 0


def cmd_check_mv(args, recipe):
    X = build_complex(recipe, args.seed)
    U = _subcomplex_from(recipe, "u", X)
    if "v" in recipe:
        V = _subcomplex_from(recipe, "v", X)
    else:
        rest = Subcomplex.full(X).difference(U)
        V = Subcomplex.from_instances(X, rest.triples())
    try:
        report = mayer_vietoris_check(X, U, V)
    except ValueError as e:
        raise RecipeError(str(e))
    return _emit_exactness(args, report, "mayer-vietoris")


def cmd_check_pair(args, recipe):
    X = build_complex(recipe, args.seed)
    A = _subcomplex_from(recipe, "a", X, default=Subcomplex.empty(X))
    report = pair_sequence_check(X, A)
    return _emit_exactness(args, report, "pair-sequence")


def _emit_exactness(args, report, name):
    rep = Report()
    rep.row("check", name, "exact" if report.ok else "failed")
    for node in report.nodes:
        if not node.ok:
            rep.row("failure", "H^%d" % node.degree, node.node, node.detail)
    rep.doc = {
        "check": name,
        "ok": report.ok,
        "nodes": [{"degree": n.degree, "node": n.node, "ok": n.ok,
                   "detail": n.detail} for n in report.nodes],
    }
    rep.emit(args)
    return 0 if report.ok else 1


def cmd_check_excision(args, recipe):
    X = build_complex(recipe, args.seed)
    U = _subcomplex_from(recipe, "u", X)
    # Z is an open selection: taken literally, never face-closed
    Z = _subcomplex_from(recipe, "z", X, default=Subcomplex.empty(X), closed=False)
    try:
        results = excision_check(X, U, Z)
    except ValueError as e:
        raise RecipeError(str(e))
    rep = Report()
    ok = all(r.equal for r in results)
    rep.row("check", "excision", "equal" if ok else "differs")
    for r in results:
        rep.row(r.kind, " ".join(map(str, r.dims_pair)),
                " ".join(map(str, r.dims_excised)))
    rep.doc = {"check": "excision", "ok": ok,
               "results": [{"kind": r.kind, "pair": r.dims_pair,
                            "excised": r.dims_excised} for r in results]}
    rep.emit(args)
    return 0 if ok else 1


def cmd_homotopy(args, recipe):
    K = build_complex(recipe, args.seed)
    L, bottom, top, H = prism_complex(K)
    cert = homotopy_operator(K, L, bottom, top, H)
    rep = Report()
    rep.row("check", "homotopy-operator", "exact" if cert.ok else "failed")
    rep.row("degrees", cert.degrees)
    rep.doc = {"check": "homotopy-operator", "ok": cert.ok,
               "exact_over_q": cert.exact_over_q,
               "exact_over_z2": cert.exact_over_z2,
               "degrees": cert.degrees}
    rep.emit(args)
    return 0 if cert.ok else 1


def cmd_subdivide(args, recipe):
    X = build_complex(recipe, args.seed)
    S = barycentric_subdivide(X)
    rep = Report()
    ok = S.validate().ok
    rep.row("degree", "instances_before", "instances_after", "dim_before", "dim_after")
    dims_equal = True
    for n in range(max(X.top_dim, S.top_dim) + 1):
        db = cohomology_dim(X, n, args.coeff if args.coeff != "r" else "q")[0]
        da = cohomology_dim(S, n, args.coeff if args.coeff != "r" else "q")[0]
        dims_equal = dims_equal and db == da
        rep.row(n, X.instance_count(n), S.instance_count(n), db, da)
    rep.doc = {"valid": ok, "dims_equal": dims_equal,
               "complex": complex_to_dict(S)}
    rep.emit(args)
    return 0 if ok and dims_equal else 1


def cmd_geometry(args, recipe):
    if recipe.get("kind") != "geometry":
        raise RecipeError("geometry command needs a geometry recipe")
    _require_keys(recipe, [], ["boxes", "prism"])
    rep = Report()
    doc = {}
    status = 0
    if "boxes" in recipe:
        regions = []
        for bounds in recipe["boxes"]:
            try:
                regions.append(LinearRegion.box(
                    [(parse_fraction(lo), parse_fraction(hi)) for lo, hi in bounds]))
            except (ValueError, TypeError) as e:
                raise RecipeError("bad box bounds: %s" % e)
        before = union_volume([p for r in regions for p in r.pieces])
        pieces = attach_decompose(regions)
        after = union_volume([p for r in pieces for p in r.pieces])
        simplices = triangulate(pieces)
        tri_vol = sum((s.volume() for s in simplices), Fraction(0))
        ok = before == after == tri_vol
        rep.row("regions_in", len(regions))
        rep.row("regions_out", len(pieces))
        rep.row("simplices", len(simplices))
        rep.row("volume", format_fraction(before), format_fraction(after),
                format_fraction(tri_vol))
        doc["boxes"] = {"regions_out": len(pieces), "simplices": len(simplices),
                        "volume": format_fraction(before), "volume_ok": ok}
        if not ok:
            status = 1
    if "prism" in recipe:
        n = int(recipe["prism"])
        pieces = prism_decompose(n)
        total = sum((s.volume() for s, _ in pieces), Fraction(0))
        rep.row("prism_n", n)
        rep.row("prism_simplices", len(pieces))
        rep.row("prism_signs", " ".join("%+d" % sg for _, sg in pieces))
        rep.row("prism_volume", format_fraction(total))
        doc["prism"] = {"n": n, "count": len(pieces),
                        "volume": format_fraction(total)}
    rep.doc = doc
    rep.emit(args)
    return status


def cmd_arcs(args, recipe):
    if recipe.get("kind") != "arcs":
        raise RecipeError("arcs command needs an arcs recipe")
    _require_keys(recipe, ["sets"], ["angles", "d"])
    d = int(recipe.get("d", 5))
    sets = []
    for raw in recipe["sets"]:
        pairs = [(_parse_endpoint(lo, d), _parse_endpoint(hi, d)) for lo, hi in raw]
        sets.append(ArcSet.from_unreduced(pairs, d))
    angles = [_parse_endpoint(a, d) for a in recipe.get("angles", [])]
    rep = Report()
    doc = {"sets": []}
    for i, A in enumerate(sets):
        rep.row("set", i, "arcs", len(A.arcs), "length", _qstr(A.length()))
        entry = {"arcs": A.to_list(), "length": _qstr(A.length()),
                 "length_float": "%.17g" % float(A.length())}
        if i < len(angles):
            ic = indicator_coboundary(A, angles[i])
            inv, _ = is_rotation_invariant(A, angles[i])
            rep.row("coboundary", i, "length", _qstr(ic.length()))
            rep.row("invariant", i, "true" if inv else "false")
            entry["coboundary_length"] = _qstr(ic.length())
            entry["rotation_invariant"] = inv
        doc["sets"].append(entry)
    if angles and len(angles) == len(sets):
        Z = zero_set(sets, angles)
        rep.row("zero_set_length", _qstr(Z.length()),
                "%.17g" % float(Z.length()))
        doc["zero_set_length"] = _qstr(Z.length())
    rep.doc = doc
    rep.emit(args)
    return 0


def _qstr(q):
    return "%s+%s*sqrt(%d)" % (format_fraction(q.a), format_fraction(q.b), q.d) \
        if q.b else format_fraction(q.a)


def cmd_kronecker(args, recipe):
    if recipe.get("kind") != "kronecker":
        raise RecipeError("kronecker command needs a kronecker recipe")
    _require_keys(recipe, ["q"], ["p", "weights"])
    q = int(recipe["q"])
    p = int(recipe.get("p", 1))
    try:
        solvable, witness = one_is_coboundary(q, p)
    except ValueError as e:
        raise RecipeError(str(e))
    X = build_complex(recipe, args.seed)
    H0 = cohomology_dim(X, 0, "z2")[0]
    H1g = CohomologyGroup(X, 1, "z2")
    one = Cochain.constant(X, 1, "z2")
    trivial = H1g.is_trivial_class(H1g.vector_from_cochain(one))
    rep = Report()
    rep.row("q", q, "p", p)
    rep.row("one_is_coboundary", "true" if solvable else "false")
    if solvable:
        rep.row("witness", " ".join(map(str, witness)))
    else:
        rep.row("obstruction", "parity", q % 2)
    rep.row("dim_H0_z2", H0)
    rep.row("dim_H1_z2", H1g.dim)
    rep.row("one_cochain", "coboundary" if trivial else "nontrivial")
    rep.doc = {"q": q, "p": p, "one_is_coboundary": solvable,
               "dim_H0_z2": H0, "dim_H1_z2": H1g.dim,
               "one_cochain_nontrivial": not trivial}
    rep.emit(args)
    return 0 if solvable == trivial else 1


_COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "betti": cmd_betti,
    "hodge": cmd_hodge,
    "check-mv": cmd_check_mv,
    "check-excision": cmd_check_excision,
    "check-pair": cmd_check_pair,
    "homotopy": cmd_homotopy,
    "subdivide": cmd_subdivide,
    "geometry": cmd_geometry,
    "arcs": cmd_arcs,
    "kronecker": cmd_kronecker,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lamcoh",
        description="Cohomology of measurable laminations at desk scale.")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("recipe", help="path to a JSON recipe file")
    parser.add_argument("--coeff", choices=["z2", "q", "r"], default="q")
    parser.add_argument("--degree", type=int, default=None)
    parser.add_argument("--json", action="store_true",
                        help="print the full JSON report to stdout")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized corpus recipes")
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="eigenvalue threshold for the float path")
    parser.add_argument("--out", default=None,
                        help="write the JSON report to this path")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        recipe = _load_recipe(args.recipe)
        return _COMMANDS[args.command](args, recipe)
    except RecipeError as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except (ValueError, KeyError, TypeError) as e:
        sys.stderr.write("error: invalid input: %s\n" % e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
