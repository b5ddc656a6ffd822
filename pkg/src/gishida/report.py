"""Cohomology reports over a box of degrees, Cohen-Macaulay verdicts and
truncated Hilbert-series data, for lattice ideals and cellular presentations."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .chains import CohomologyProfile, FieldChoice
from .cones import hidden_regions, make_cone, region_of
from .degspace import fingerprints
from .exactlin import Inconclusive, Lattice, LatticeData
from .ishida import SupportComplex, graded_local_cohomology, graded_piece, ishida_for, piece_cohomology


class IncompleteCoverage(RuntimeError):
    pass


class PresentationError(ValueError):
    pass


INCOMPLETE = ("Inconclusive", "BoxExhausted")


@dataclass
class Stratum:
    monomial: tuple  # exponent vector on the non-cellular variables
    generators: list  # generators of the lattice on the cellular variables
    character: tuple | None = None


@dataclass
class CellularPresentation:
    cellular_vars: tuple
    nilpotent_vars: tuple
    base: list  # generators of L for the ideal restricted to the cellular variables
    strata: list

    def validate(self):
        nd = len(self.cellular_vars)
        if not any(not any(s.monomial) for s in self.strata):
            raise PresentationError("stratum m = 0 is missing")
        for s in self.strata:
            if len(s.monomial) != len(self.nilpotent_vars):
                raise PresentationError(f"stratum {s.monomial} has the wrong length")
            Lm = Lattice.from_generators(s.generators, nd)
            for g in self.base:
                if not Lm.contains(tuple(g)):
                    raise PresentationError(f"stratum {s.monomial} lattice does not contain {list(g)}")
        keys = [tuple(s.monomial) for s in self.strata]
        if len(set(keys)) != len(keys):
            raise PresentationError("repeated stratum")


@dataclass
class ReportEntry:
    stratum: tuple
    torsion: tuple
    label: tuple
    description: str
    profile: CohomologyProfile
    level_dims: list
    witness: tuple  # A-degree
    witness_u: tuple
    size: int = 1  # sampled degrees carrying this label

    def to_json(self):
        return {
            "stratum": list(self.stratum),
            "torsion": list(self.torsion),
            "label": self.description,
            "profile": {str(k): v for k, v in self.profile.nonzero().items()},
            "level_dims": self.level_dims,
            "witness": list(self.witness),
            "witness_exponent": list(self.witness_u),
            "sampled_degrees": self.size,
        }


@dataclass
class CohomologyReport:
    d: int
    entries: list
    degree_labels: dict  # (stratum, t, a) -> index into entries
    warnings: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    mode: str = "fingerprint"
    box: int = 0
    contexts: dict = field(default_factory=dict)  # stratum -> (ish, data)
    field: FieldChoice = FieldChoice(0)

    def to_json(self):
        ok, wit = cm_verdict(self)
        return {
            "dimension": self.d,
            "mode": self.mode,
            "box": self.box,
            "field": self.field.characteristic,
            "entries": [e.to_json() for e in self.entries],
            "cohen_macaulay": ok,
            "cm_witnesses": [self.entries[i].description for i in wit],
            "warnings": list(self.warnings),
            "notes": list(self.notes),
        }


def _degree_box(d, box):
    pts = list(product(range(-box, box + 1), repeat=d))
    return sorted(pts, key=lambda a: (sum(abs(x) for x in a), a))


def ring_dimension(cone, quotient):
    if quotient is None or quotient.full:
        return cone.d
    return max((f.dim for f in quotient.maximal_faces()), default=0)


def _stratum_entries(data, support_spec, quotient_spec, field, box, radius, stratum, out, labels, warnings, contexts, notes):
    if data.d == 0:
        # finite ring: every torsion class is a single degree with H^0 = k
        for t in data.torsion.elements():
            u = data.preimage(t, ())
            labels[(stratum, t, ())] = len(out)
            out.append(ReportEntry(stratum, t, ("point",), "single degree", CohomologyProfile({0: 1}),
                                   [1], (), tuple(u)))
        contexts[stratum] = (None, data)
        return None
    cone = make_cone([list(r) for r in data.A], support_spec.get("order"))
    support = _support(cone, support_spec)
    quotient = _support(cone, quotient_spec) if quotient_spec else None
    ish = ishida_for(cone, support, quotient)
    contexts[stratum] = (ish, data)
    hidden = bool(hidden_regions(cone.A, cone.hyperplanes, cone.faces))
    if hidden:
        notes.append(f"hidden regions in stratum {list(stratum)}: fingerprint partition used")
    qdelta = quotient if quotient is not None else SupportComplex.zero(cone)
    index = {}
    for t in data.torsion.elements():
        for a in _degree_box(data.d, box):
            u = data.preimage(t, a)
            if u is None:
                continue
            try:
                plain, quot = fingerprints(data, cone, qdelta, u)
            except Inconclusive as exc:
                warnings.append(f"Inconclusive at {list(a)}: {exc}")
                continue
            region = tuple(sorted(region_of(cone.hyperplanes, a).label))
            key = (stratum, t, region, plain, quot)
            if key in index:
                labels[(stratum, t, a)] = index[key]
                out[index[key]].size += 1
                continue
            piece = graded_piece(ish, data, u, radius)
            prof = piece_cohomology(piece, field)
            desc = (f"stratum {list(stratum)} torsion {list(t)} region {[i + 1 for i in region]} "
                    f"localizations {[list(f) for f in plain]}")
            if quotient is not None:
                desc += f" quotient {[list(f) for f in quot]}"
            index[key] = len(out)
            labels[(stratum, t, a)] = len(out)
            out.append(ReportEntry(stratum, t, key, desc, prof, piece.dims(ish), a, tuple(u)))
    return ring_dimension(cone, quotient)


def _support(cone, spec):
    if spec is None or spec == "maximal" or spec.get("support") == "maximal":
        return SupportComplex.maximal(cone)
    if spec == "zero" or spec.get("support") == "zero":
        return SupportComplex.zero(cone)
    return SupportComplex.from_columns(cone, spec["delta_facets"])


def lattice_report(data, support="maximal", field=FieldChoice(0), box=6, quotient=None, radius=64, order=None):
    """Report for k[x]/I_L (optionally modulo J_quotient) with the given support.

    support/quotient: "maximal", "zero" or {"delta_facets": [...]}.
    """
    sup = support if isinstance(support, dict) else {"support": support}
    if order is not None:
        sup = dict(sup, order=order)
    entries, labels, warnings, contexts, notes = [], {}, [], {}, []
    d = _stratum_entries(data, sup, quotient, field, box, radius, (), entries, labels, warnings, contexts, notes)
    return CohomologyReport(d if d is not None else 0, entries, labels, warnings, notes, "fingerprint", box, contexts, field)


def cellular_report(pres, support="maximal", field=FieldChoice(0), box=6, radius=64):
    pres.validate()
    nd = len(pres.cellular_vars)
    entries, labels, warnings, contexts, notes = [], {}, [], {}, []
    d0 = None
    sup = support if isinstance(support, dict) else {"support": support}
    if "delta_facets" in sup and len(pres.strata) > 1:
        raise PresentationError("explicit support complexes are only accepted for a single stratum")
    for s in sorted(pres.strata, key=lambda s: (sum(s.monomial), tuple(s.monomial))):
        data = LatticeData.from_generators(s.generators, nd)
        d = _stratum_entries(data, sup, None, field, box, radius, tuple(s.monomial),
                             entries, labels, warnings, contexts, notes)
        if not any(s.monomial):
            d0 = d if d is not None else 0
    return CohomologyReport(d0, entries, labels, warnings, notes, "fingerprint", box, contexts, field)


def cm_verdict(report):
    wit = [i for i, e in enumerate(report.entries)
           if any(k != report.d for k in e.profile.nonzero())]
    return not wit, wit


def verdict_in_characteristic(report, p):
    """CM verdict with every entry's profile recomputed at its witness over GF(p) (or Q)."""
    f = FieldChoice(p)
    wit = []
    for i, e in enumerate(report.entries):
        ish, data = report.contexts[e.stratum]
        prof = e.profile if ish is None else graded_local_cohomology(ish, data, e.witness_u, f)
        if any(k != report.d for k in prof.nonzero()):
            wit.append(i)
    return not wit, wit


def cm_check(report):
    blocking = [w for w in report.warnings if w.startswith(INCOMPLETE)]
    if blocking:
        raise IncompleteCoverage("; ".join(blocking))
    return cm_verdict(report)


def hilbert_truncation(report, box=None):
    """{i: {(stratum, t, a): dim}} for every degree in the box, read off labels."""
    box = report.box if box is None else box
    out = {}
    for (stratum, t, a), idx in report.degree_labels.items():
        if a and max(abs(x) for x in a) > box:
            continue
        for i, v in report.entries[idx].profile.nonzero().items():
            out.setdefault(i, {})[(stratum, t, a)] = v
    return out


def truncation_check(report, samples=50, seed=0):
    """Recompute sampled degrees directly; returns the list of disagreements."""
    rng = random.Random(seed)
    keys = sorted(report.degree_labels)
    picks = keys if len(keys) <= samples else rng.sample(keys, samples)
    trunc = hilbert_truncation(report)
    bad = []
    for stratum, t, a in picks:
        ish, data = report.contexts[stratum]
        if ish is None:
            direct = CohomologyProfile({0: 1})
        else:
            direct = graded_local_cohomology(ish, data, data.preimage(t, a), report.field)
        table = CohomologyProfile({i: m[(stratum, t, a)] for i, m in trunc.items() if (stratum, t, a) in m})
        if direct != table:
            bad.append(((stratum, t, a), direct.nonzero(), table.nonzero()))
    return bad, len(picks)
