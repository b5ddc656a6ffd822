"""Command line front end: parse a JSON problem, run one subcommand, emit JSON.

Exit codes: 0 ok, 1 oracle disagreement, 2 incomplete search, 3 duality
violation flagged, 4 schema error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product

from .chains import FieldChoice, reduced_cohomology, signed_complex_of
from .cones import (MissingFace, PolyComplex, all_regions, hidden_regions, make_cone)
from .degspace import BoxExhausted, HiddenRegionsPresent, toric_data
from .duality import (compare_at_degree, link_cohomology, table_generate, verify_duality)
from .exactlin import Inconclusive, LatticeData, transpose
from .ishida import (SupportComplex, aggregated, graded_piece, ishida_for, piece_cohomology,
                     support_section)
from .oracle import cech_graded, h0_expected, hochster_link_formula, naive_homology, simplicial_chain_data
from .report import (CellularPresentation, IncompleteCoverage, PresentationError, Stratum,
                     cellular_report, cm_verdict, lattice_report, verdict_in_characteristic)

EXIT_OK, EXIT_DISAGREE, EXIT_INCOMPLETE, EXIT_VIOLATION, EXIT_SCHEMA = 0, 1, 2, 3, 4


class SchemaError(ValueError):
    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


@dataclass
class ProblemSpec:
    kind: str
    n: int
    lattice: list = dc_field(default_factory=list)
    grading: list | None = None  # rows
    order: list | None = None
    character: list | None = None
    cellular: CellularPresentation | None = None
    support: object = "maximal"
    quotient: object = None
    field: int = 0
    box: int = 6
    radius: int = 64
    degrees: list = dc_field(default_factory=list)

    def data(self):
        return LatticeData.from_generators(self.lattice, self.n, self.grading)

    def cone(self, data=None):
        data = data or self.data()
        return make_cone([list(r) for r in data.A], self.order)


def _int_vector(x, ptr, length=None):
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise SchemaError(ptr, "expected an array of integers")
    if length is not None and len(x) != length:
        raise SchemaError(ptr, f"expected length {length}, got {len(x)}")
    return list(x)


def _index_set(x, ptr, n):
    v = _int_vector(x, ptr)
    for k, i in enumerate(v):
        if not 0 <= i < n:
            raise SchemaError(f"{ptr}/{k}", f"index {i} out of range 0..{n - 1}")
    return sorted(set(v))


def _support_spec(x, ptr, n):
    if x in ("maximal", "zero"):
        return x
    if isinstance(x, dict) and set(x) == {"delta_facets"} and isinstance(x["delta_facets"], list):
        return {"delta_facets": [_index_set(f, f"{ptr}/delta_facets/{k}", n)
                                 for k, f in enumerate(x["delta_facets"])]}
    raise SchemaError(ptr, 'expected "maximal", "zero" or {"delta_facets": [...]}')


def parse(source):
    """Build a ProblemSpec from a path, a JSON string or an already-loaded dict."""
    if isinstance(source, dict):
        doc = source
    else:
        try:
            with open(source) as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("", "expected an object")
    kind = doc.get("kind")
    if kind not in ("lattice", "cellular"):
        raise SchemaError("/kind", 'must be "lattice" or "cellular"')
    opts = {}
    for key, lo in (("field", 0), ("box", 0), ("radius", 1)):
        if key in doc:
            v = doc[key]
            if not isinstance(v, int) or v < lo:
                raise SchemaError(f"/{key}", f"expected an integer >= {lo}")
            opts[key] = v
    if "field" in opts:
        try:
            FieldChoice(opts["field"])
        except ValueError as exc:
            raise SchemaError("/field", str(exc)) from exc
    if kind == "cellular":
        spec = _parse_cellular(doc, opts)
    else:
        spec = _parse_lattice(doc, opts)
    return spec


def _parse_lattice(doc, opts):
    gens = doc.get("lattice", [])
    if not isinstance(gens, list):
        raise SchemaError("/lattice", "expected an array of generator columns")
    n = doc.get("n")
    if n is None:
        if gens:
            n = len(gens[0])
        elif "grading" in doc and doc["grading"]:
            n = len(doc["grading"])
        else:
            raise SchemaError("/n", "ambient dimension missing")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("/n", "expected a positive integer")
    gens = [_int_vector(g, f"/lattice/{k}", n) for k, g in enumerate(gens)]
    grading = None
    if doc.get("grading") is not None:
        cols = doc["grading"]
        if not isinstance(cols, list) or len(cols) != n:
            raise SchemaError("/grading", f"expected {n} columns")
        d = len(cols[0]) if cols and isinstance(cols[0], list) else 0
        cols = [_int_vector(c, f"/grading/{k}", d) for k, c in enumerate(cols)]
        grading = transpose(cols, d)
    order = None
    if doc.get("facet_order") is not None:
        order = [_index_set(f, f"/facet_order/{k}", n) for k, f in enumerate(doc["facet_order"])]
    character = None
    if doc.get("character") is not None:
        try:
            character = [Fraction(str(v)) % 1 for v in doc["character"]]
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError("/character", f"values must be rationals: {exc}") from exc
    support = _support_spec(doc.get("support", "maximal"), "/support", n)
    quotient = None
    if doc.get("quotient") is not None:
        quotient = _support_spec(doc["quotient"], "/quotient", n)
    degrees = [_int_vector(v, f"/degrees/{k}") for k, v in enumerate(doc.get("degrees", []))]
    spec = ProblemSpec("lattice", n, gens, grading, order, character, None, support, quotient,
                       degrees=degrees, **opts)
    try:
        data = spec.data()
    except ValueError as exc:
        raise SchemaError("/grading", str(exc)) from exc
    if character is not None and len(character) != data.lattice.rank:
        raise SchemaError("/character", f"expected {data.lattice.rank} values")
    cone = spec.cone(data)
    for key in ("support", "quotient"):
        sup = getattr(spec, key)
        if isinstance(sup, dict):
            for k, cols in enumerate(sup["delta_facets"]):
                try:
                    f = cone.face_by_columns(cols)
                except MissingFace:
                    raise SchemaError(f"/{key}/delta_facets/{k}", f"{cols} is not a face of the cone") from None
                if f == cone.top():
                    raise SchemaError(f"/{key}/delta_facets/{k}", 'the whole cone is not a proper subcomplex; use "zero"')
    for k, v in enumerate(degrees):
        if len(v) != data.d:
            raise SchemaError(f"/degrees/{k}", f"expected an A-degree of length {data.d}")
    return spec


def _parse_cellular(doc, opts):
    c = doc.get("cellular")
    if not isinstance(c, dict):
        raise SchemaError("/cellular", "expected an object")
    cv = _int_vector(c.get("cellular_vars"), "/cellular/cellular_vars")
    nv = _int_vector(c.get("nilpotent_vars", []), "/cellular/nilpotent_vars")
    nd = len(cv)
    base = [_int_vector(g, f"/cellular/base/{k}", nd) for k, g in enumerate(c.get("base", []))]
    strata = []
    raw = c.get("strata")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("/cellular/strata", "expected a nonempty array")
    for k, s in enumerate(raw):
        if not isinstance(s, dict):
            raise SchemaError(f"/cellular/strata/{k}", "expected an object")
        mono = _int_vector(s.get("monomial"), f"/cellular/strata/{k}/monomial", len(nv))
        gens = [_int_vector(g, f"/cellular/strata/{k}/lattice/{j}", nd)
                for j, g in enumerate(s.get("lattice", []))]
        strata.append(Stratum(tuple(mono), gens, s.get("character")))
    pres = CellularPresentation(tuple(cv), tuple(nv), base, strata)
    try:
        pres.validate()
    except PresentationError as exc:
        raise SchemaError("/cellular", str(exc)) from exc
    support = _support_spec(doc.get("support", "maximal"), "/support", nd)
    return ProblemSpec("cellular", nd, base, None, None, None, pres, support, None, **opts)


# ------------------------------------------------------------ commands

def _face_json(f):
    return {"columns": list(f.columns), "tight": sorted(i + 1 for i in f.tight), "dim": f.dim}


def _support_of(spec, cone, which="support"):
    s = getattr(spec, which)
    if s is None:
        return None
    if s == "maximal":
        return SupportComplex.maximal(cone)
    if s == "zero":
        return SupportComplex.zero(cone)
    return SupportComplex.from_columns(cone, s["delta_facets"])


def _require_lattice(spec, cmd):
    if spec.kind != "lattice":
        raise SchemaError("/kind", f"`{cmd}` needs a lattice problem")


def cmd_saturate(spec, args):
    if spec.kind == "cellular":
        out = []
        for s in spec.cellular.strata:
            data = LatticeData.from_generators(s.generators, spec.n)
            out.append(dict(_saturation_json(data), stratum=list(s.monomial)))
        return {"strata": out}, EXIT_OK
    return _saturation_json(spec.data()), EXIT_OK


def _saturation_json(data):
    T = data.torsion
    return {
        "lattice_basis": [list(b) for b in data.lattice.basis],
        "saturation_basis": [list(b) for b in data.sat.basis],
        "torsion_invariant_factors": list(T.invariant_factors),
        "torsion_order": T.order,
        "torsion_representatives": [{"class": list(t), "representative": list(r)}
                                    for t, r in zip(T.elements(), T.representatives)],
        "grading_columns": [list(c) for c in zip(*data.A)] if data.A else [],
    }


def cmd_faces(spec, args):
    _require_lattice(spec, "faces")
    cone = spec.cone()
    return {"hyperplanes": [list(h.normal) for h in cone.hyperplanes],
            "faces": [_face_json(f) for f in cone.faces]}, EXIT_OK


def cmd_regions(spec, args):
    _require_lattice(spec, "regions")
    cone = spec.cone()
    hidden = {r.label for r in hidden_regions(cone.A, cone.hyperplanes, cone.faces)}
    out = []
    for r in all_regions(cone.hyperplanes, cone.d):
        f = cone.face_by_tight(r.label)
        out.append({"label": sorted(i + 1 for i in r.label), "hidden": r.label in hidden,
                     "face": None if f is None else list(f.columns)})
    return {"regions": out, "hidden_count": len(hidden)}, EXIT_OK


def cmd_section(spec, args):
    _require_lattice(spec, "section")
    cone = spec.cone()
    sec = support_section(cone, _support_of(spec, cone))
    if sec.polytope is None:
        return {"vertices": [], "faces": []}, EXIT_OK
    P = sec.polytope
    return {
        "vertices": [[str(x) for x in v] for v in P.vertices],
        "faces": [{"vertices": sorted(f), "dim": k, "barmap": list(b.columns)}
                  for f, k, b in zip(P.faces, P.dims, sec.barmap)],
    }, EXIT_OK


def cmd_ishida(spec, args):
    _require_lattice(spec, "ishida")
    cone = spec.cone()
    ish = ishida_for(cone, _support_of(spec, cone), _support_of(spec, cone, "quotient"))
    levels = []
    for k, lvl in enumerate(ish.levels()):
        levels.append({"level": k, "localizations": [list(ish.keys[i].columns) for i in lvl]})
    return {"level_sizes": ish.level_sizes(), "levels": levels}, EXIT_OK


def _degrees(spec, args):
    if args.degree:
        return [tuple(int(x) for x in s.split(",")) for s in args.degree]
    return [tuple(v) for v in spec.degrees]


def cmd_graded(spec, args):
    _require_lattice(spec, "graded")
    data = spec.data()
    cone = spec.cone(data)
    ish = ishida_for(cone, _support_of(spec, cone), _support_of(spec, cone, "quotient"))
    f = FieldChoice(spec.field)
    out = []
    for a in _degrees(spec, args):
        if len(a) != data.d:
            raise SchemaError("/degrees", f"A-degree {list(a)} must have length {data.d}")
        per = []
        for t in data.torsion.elements():
            u = data.preimage(t, a)
            if u is None:
                continue
            p = graded_piece(ish, data, u, spec.radius)
            per.append({"torsion": list(t), "exponent": list(u), "level_dims": p.dims(ish),
                        "cohomology": _prof(piece_cohomology(p, f))})
        dims, coh = aggregated(ish, data, a, f, spec.radius)
        out.append({"degree": list(a), "pieces": per,
                    "aggregated": {"level_dims": dims, "cohomology": _prof(coh)}})
    return {"degrees": out}, EXIT_OK


def _prof(p):
    return {str(k): v for k, v in p.nonzero().items()}


def _report(spec):
    f = FieldChoice(spec.field)
    if spec.kind == "cellular":
        return cellular_report(spec.cellular, spec.support, f, spec.box, spec.radius)
    return lattice_report(spec.data(), spec.support, f, spec.box, spec.quotient, spec.radius, spec.order)


def _warn_exit(rep):
    return EXIT_INCOMPLETE if rep.warnings else EXIT_OK


def _character_json(spec):
    if spec.kind == "cellular":
        return {str(list(s.monomial)): s.character for s in spec.cellular.strata if s.character is not None}
    return None if spec.character is None else [str(c) for c in spec.character]


def cmd_report(spec, args):
    rep = _report(spec)
    # echoed only: graded dimensions never depend on the character
    return dict(rep.to_json(), character=_character_json(spec)), _warn_exit(rep)


def cmd_cm(spec, args):
    rep = _report(spec)
    ok, wit = cm_verdict(rep)
    out = {"cohen_macaulay": ok, "dimension": rep.d, "field": spec.field,
           "witnesses": [rep.entries[i].to_json() for i in wit], "warnings": list(rep.warnings)}
    # verdict stability under the characteristic
    others = {}
    for p in (0, 2, 3):
        if p == spec.field:
            continue
        others[str(p)] = verdict_in_characteristic(rep, p)[0]
    out["verdict_by_characteristic"] = dict(others, **{str(spec.field): ok})
    warnings = list(rep.warnings)
    if any(v != ok for v in others.values()):
        warnings.append("characteristic disagreement in the Cohen-Macaulay verdict")
    out["warnings"] = warnings
    if any(w.startswith(("Inconclusive", "BoxExhausted")) for w in rep.warnings):
        out["cohen_macaulay"] = None
    return out, EXIT_INCOMPLETE if warnings else EXIT_OK


def cmd_duality(spec, args):
    _require_lattice(spec, "duality")
    data = toric_data(spec.data())
    cone = spec.cone(data)
    delta = _support_of(spec, cone)
    f = FieldChoice(spec.field)
    try:
        recs = verify_duality(cone, delta, f, min(spec.box, 3), data)
        out = {"mode": "open sets", "records": [r.to_json() for r in recs]}
        bad = any(not r.verdict for r in recs)
    except HiddenRegionsPresent:
        hidden = {r.label for r in hidden_regions(cone.A, cone.hyperplanes, cone.faces)}
        from .cones import region_of
        degs = list(_degrees(spec, args))
        for a in product(range(-min(spec.box, 2), min(spec.box, 2) + 1), repeat=cone.d):
            if region_of(cone.hyperplanes, a).label in hidden and a not in degs:
                degs.append(a)
        recs = []
        for a in degs:
            u = data.preimage((), a)
            if u is None:
                continue
            r = compare_at_degree(cone, delta, u, field=f, data=data)
            recs.append(dict(r.to_json(), region=sorted(i + 1 for i in region_of(cone.hyperplanes, a).label)))
        bad = any(not r["verdict"] for r in recs)
        out = {"mode": "per degree (hidden regions present)", "records": recs}
    out["violation"] = bad
    return out, EXIT_VIOLATION if bad else EXIT_OK


def cmd_table(spec, args):
    f = FieldChoice(args.field if args.field is not None else 0)
    if args.json:
        return {"dim": args.dim, "rows": table_generate(args.dim, None, f, "json")}, EXIT_OK
    return table_generate(args.dim, None, f), EXIT_OK


# ------------------------------------------------------------ oracle suites

def suite_chains(spec, rng):
    bad = 0
    for _ in range(100):
        nv = rng.randint(1, 5)
        facets = [tuple(sorted(rng.sample(range(nv), rng.randint(1, nv)))) for _ in range(rng.randint(1, 4))]
        faces = set()
        for fc in facets:
            for k in range(1, len(fc) + 1):
                faces.update(combinations(fc, k))
        faces = sorted(faces, key=lambda x: (len(x), x))
        K = PolyComplex(list(range(nv)), [frozenset(x) for x in faces], [len(x) - 1 for x in faces])
        C = signed_complex_of(K, abstract=True)
        dims, bd = simplicial_chain_data(faces)
        for p in (0, 2):
            if reduced_cohomology(C, FieldChoice(p)) != naive_homology(dims, bd, FieldChoice(p)):
                bad += 1
    return bad, 200


def suite_hochster(spec, rng):
    bad = total = 0
    for d in range(1, 5):
        cone = make_cone([[int(i == j) for j in range(d)] for i in range(d)])
        from .duality import all_subcomplexes
        for delta in all_subcomplexes(cone):
            if delta.full:
                continue
            facets = [f.columns for f in delta.facets]
            for F in delta.faces():
                u = tuple(-1 if i in F.columns else 0 for i in range(d))
                total += 1
                if link_cohomology(cone, delta, F) != hochster_link_formula(facets, u):
                    bad += 1
    return bad, total


def _sampled(spec, data, rng, count):
    box = min(spec.box, 3)
    pts = [(t, a) for t in data.torsion.elements()
           for a in product(range(-box, box + 1), repeat=data.d)]
    return pts if len(pts) <= count else rng.sample(pts, count)


def suite_cech(spec, rng):
    data = spec.data()
    cone = spec.cone(data)
    delta = _support_of(spec, cone)
    ish = ishida_for(cone, delta)
    gens = [[1 if i in f.columns else 0 for i in range(data.n)] for f in delta.generator_faces()]
    bad = total = 0
    for t, a in _sampled(spec, data, rng, 100):
        u = data.preimage(t, a)
        if u is None:
            continue
        total += 1
        if piece_cohomology(graded_piece(ish, data, u)) != cech_graded(data.lattice.basis, gens, u):
            bad += 1
    return bad, total


def suite_h0(spec, rng):
    data = spec.data()
    cone = spec.cone(data)
    delta = _support_of(spec, cone)
    ish = ishida_for(cone, delta)
    cols = [f.columns for f in delta.generator_faces()]
    bad = total = 0
    for t, a in _sampled(spec, data, rng, 100):
        u = data.preimage(t, a)
        if u is None:
            continue
        total += 1
        if piece_cohomology(graded_piece(ish, data, u)).get(0) != h0_expected(data, cols, u):
            bad += 1
    return bad, total


SUITES = {"chains": suite_chains, "hochster": suite_hochster, "cech": suite_cech, "h0": suite_h0}


def cmd_oracle(spec, args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    out = {}
    status = EXIT_OK
    for name in names:
        if name in ("cech", "h0") and (spec is None or spec.kind != "lattice"):
            out[name] = {"skipped": "needs a lattice spec"}
            continue
        rng = random.Random(args.seed)
        start = time.perf_counter()
        bad, total = SUITES[name](spec, rng)
        out[name] = {"disagreements": bad, "checked": total,
                     "seconds": round(time.perf_counter() - start, 3)}
        if bad:
            status = EXIT_DISAGREE
    return out, status


COMMANDS = {
    "saturate": cmd_saturate, "faces": cmd_faces, "regions": cmd_regions, "section": cmd_section,
    "ishida": cmd_ishida, "graded": cmd_graded, "report": cmd_report, "cm": cmd_cm,
    "duality": cmd_duality, "table": cmd_table, "oracle": cmd_oracle,
}


def build_parser():
    p = argparse.ArgumentParser(prog="gishida", description="Local cohomology via generalized Ishida complexes")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--spec")
    p.add_argument("--field", type=int)
    p.add_argument("--box", type=int)
    p.add_argument("--radius", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", action="append")
    p.add_argument("--json")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--dim", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    return p


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        spec = None
        if args.spec:
            spec = parse(args.spec)
            for key in ("field", "box", "radius"):
                v = getattr(args, key)
                if v is not None:
                    setattr(spec, key, v)
            FieldChoice(spec.field)
        elif args.command not in ("table", "oracle"):
            raise SchemaError("", "--spec is required for this command")
        result, status = COMMANDS[args.command](spec, args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ValueError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (Inconclusive, BoxExhausted, IncompleteCoverage) as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    if isinstance(result, str):
        text = result
    else:
        text = json.dumps(result, sort_keys=True, indent=2, default=str)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    elif not args.quiet:
        print(text, file=stdout)
    return status


def main(argv=None):
    sys.exit(run(argv))
