"""Link formulas, punctured-section complexes, the maximal/radical duality
check and the low-dimensional table of local cohomology degrees."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .chains import CohomologyProfile, FieldChoice, poset_cohomology, reduced_cohomology, signed_complex_of
from .cones import hidden_regions, make_cone, region_of
from .degspace import HiddenRegionsPresent, classify_degree
from .exactlin import LatticeData, identity
from .ishida import SupportComplex, graded_local_cohomology, ishida_for, support_section, localization_member

LETTERS = "xyzwvu"


def _require_no_hidden(cone):
    if hidden_regions(cone.A, cone.hyperplanes, cone.faces):
        raise HiddenRegionsPresent("the semigroup has hidden regions")


def link_cohomology(cone, delta, F, field=FieldChoice(0)):
    """Cohomology at degrees labeled (F, F) of the quotient by J_delta, from the
    link of F inside delta.  Zero unless F is an intersection of maximal faces."""
    if delta.full:
        # quotient by the zero ideal: only the top degree
        return CohomologyProfile({cone.d: 1} if F == cone.top() else {})
    if F not in delta.intersections():
        return CohomologyProfile({})
    above = [G for G in delta.faces() if G.dim > 0 and G != F and cone.leq(F, G)]
    h = poset_cohomology(above, cone.leq, field)
    return h.shifted(F.dim + 1)


def pi_faces(cone, delta, F):
    """Cell indices (0 = empty cell) of the section of J_delta whose barmap
    does not contain the complement of F."""
    comp = cone.complement(F)
    if comp is None:
        raise HiddenRegionsPresent(f"face {list(F.columns)} has no complementary face")
    sec = support_section(cone, delta)
    keep = [] if comp == cone.zero() else [0]
    for i, b in enumerate(sec.barmap):
        if not cone.leq(comp, b):
            keep.append(i + 1)
    return sec, keep


def pi_complex_cohomology(cone, delta, F, field=FieldChoice(0)):
    """Radical-support cohomology at degrees in the region of the complement of F."""
    _require_no_hidden(cone)
    if delta.full:
        return CohomologyProfile({0: 1} if F == cone.top() else {})
    if F not in delta.intersections():
        return CohomologyProfile({})
    sec, keep = pi_faces(cone, delta, F)
    C = signed_complex_of(sec.polytope).restrict(keep)
    return reduced_cohomology(C, field).shifted(2)


def pi_cw_cohomology(cone, delta, F, field=FieldChoice(0)):
    """Unshifted reduced cohomology of the punctured section complex."""
    sec, keep = pi_faces(cone, delta, F)
    return reduced_cohomology(signed_complex_of(sec.polytope).restrict(keep), field)


def link_simplicial_cohomology(cone, delta, F, field=FieldChoice(0)):
    above = [G for G in delta.faces() if G.dim > 0 and G != F and cone.leq(F, G)]
    return poset_cohomology(above, cone.leq, field)


# ------------------------------------------------------------- duality

@dataclass
class DualityRecord:
    face: tuple
    lhs: CohomologyProfile
    rhs: CohomologyProfile
    witness_u: tuple | None
    witness_v: tuple | None
    d: int
    status: str = "checked"  # or "vacuous"

    @property
    def verdict(self):
        if self.status == "vacuous":
            return True
        return all(self.lhs.get(i) == self.rhs.get(self.d - i) for i in range(-1, self.d + 2))

    def to_json(self):
        return {
            "face": None if self.face is None else list(self.face),
            "lhs": {str(k): v for k, v in self.lhs.nonzero().items()},
            "rhs": {str(k): v for k, v in self.rhs.nonzero().items()},
            "witness_u": None if self.witness_u is None else list(self.witness_u),
            "witness_v": None if self.witness_v is None else list(self.witness_v),
            "status": self.status,
            "verdict": self.verdict,
        }


def sample_degrees(cone, box):
    """A-degrees to sample.  On N^d the sign cube is complete."""
    if cone.A == identity(cone.d):
        return list(product((-1, 0, 1), repeat=cone.d))
    return list(product(range(-box, box + 1), repeat=cone.d))


def _sorted_by_norm(points):
    return sorted(points, key=lambda a: (sum(abs(x) for x in a), a))


def _labelled(cone, delta, data, points):
    out = []
    for a in _sorted_by_norm(points):
        u = data.preimage((), a)
        if u is not None:
            out.append((a, u, classify_degree(data, cone, delta, u, hidden=False)))
    return out


def verify_duality(cone, delta, field=FieldChoice(0), box=2, data=None, max_box=8):
    """Compare both sides at one witness degree per face.

    An intersection of maximal faces whose (F, F) open set misses the sampled box gets the box
    widened, shell by shell, up to max_box before falling back to a region witness.
    """
    _require_no_hidden(cone)
    data = data or LatticeData.from_matrix(cone.A)
    lhs_ish = ishida_for(cone, SupportComplex.maximal(cone), quotient=delta)
    rhs_ish = ishida_for(cone, delta)
    labels = _labelled(cone, delta, data, sample_degrees(cone, box))
    records = []
    full_tight = frozenset(range(cone.m))
    orthant = cone.A == identity(cone.d)
    inter = set(delta.intersections())
    for F in cone.faces:
        u_w = next((u for a, u, lab in labels if lab.pair == (F.columns, F.columns)), None)
        r = box
        while u_w is None and not orthant and F in inter and r < max_box:
            r += 1
            shell = [a for a in product(range(-r, r + 1), repeat=cone.d) if max(map(abs, a)) == r]
            more = _labelled(cone, delta, data, shell)
            labels.extend(more)
            u_w = next((u for a, u, lab in more if lab.pair == (F.columns, F.columns)), None)
        if u_w is None:
            # fallback: region of F inside the degree space of the original ring
            for a, u, lab in labels:
                if lab.region == F.tight and any(localization_member(data, u, G) for G in cone.faces):
                    u_w = u
                    break
        v_w = next((u for a, u, lab in labels if lab.region == full_tight - F.tight), None)
        if u_w is None or v_w is None:
            records.append(DualityRecord(F.columns, CohomologyProfile({}), CohomologyProfile({}),
                                         u_w, v_w, cone.d, "vacuous"))
            continue
        lhs = graded_local_cohomology(lhs_ish, data, u_w, field)
        rhs = graded_local_cohomology(rhs_ish, data, v_w, field)
        records.append(DualityRecord(F.columns, lhs, rhs, data.degree(u_w)[1], data.degree(v_w)[1], cone.d))
    return records


def compare_at_degree(cone, delta, u, v=None, field=FieldChoice(0), data=None):
    """Per-degree comparison used when the semigroup has hidden regions."""
    data = data or LatticeData.from_matrix(cone.A)
    v = u if v is None else v
    lhs_ish = ishida_for(cone, SupportComplex.maximal(cone), quotient=delta)
    rhs_ish = ishida_for(cone, delta)
    lhs = graded_local_cohomology(lhs_ish, data, u, field)
    rhs = graded_local_cohomology(rhs_ish, data, v, field)
    return DualityRecord(None, lhs, rhs, data.degree(u)[1], data.degree(v)[1], cone.d)


# --------------------------------------------------------------- table

def all_subcomplexes(cone):
    """Every support complex on the nonzero proper-or-full faces, as facet antichains."""
    nonzero = [f for f in cone.faces if f.dim > 0]
    out = []
    for k in range(len(nonzero) + 1):
        for fam in combinations(nonzero, k):
            if any(f != g and cone.leq(f, g) for f in fam for g in fam):
                continue
            out.append(SupportComplex.from_columns(cone, [f.columns for f in fam]))
    seen, uniq = set(), []
    for D in out:
        key = (D.full, tuple(f.columns for f in D.facets))
        if key not in seen:
            seen.add(key)
            uniq.append(D)
    return uniq


def _word(cols):
    return "".join(LETTERS[c] for c in cols)


def delta_name(delta):
    if delta.full:
        return f"{delta.cone.d}-sim"
    if not delta.facets:
        return "∅"
    return "(" + ",".join(_word(f.columns) for f in delta.facets) + ")"


def ideal_name(delta):
    if delta.full:
        return "0"
    if not delta.facets:
        return "m"
    gens = sorted((_word(f.columns) for f in delta.generator_faces()), key=lambda w: (len(w), w))
    return "⟨" + ",".join(gens) + "⟩"


def region_token(label):
    return "r_{" + ",".join(str(i + 1) for i in sorted(label)) + "}"


def _token(base, mult):
    return base if mult == 1 else f"{base}^{mult}"


@dataclass
class TableRow:
    d: int
    delta: str
    ideal: str
    facets: list
    lhs: list  # per i, sorted tokens
    rhs: list

    def to_json(self):
        return {"d": self.d, "delta": self.delta, "J": self.ideal, "delta_facets": self.facets,
                "lhs": self.lhs, "rhs": self.rhs}

    def render(self):
        def cell(col):
            return "(" + ", ".join("∪".join(t) if t else "∅" for t in col) + ")"
        return f"{self.d} | {self.delta} | {self.ideal} | {cell(self.lhs)} | {cell(self.rhs)}"


def _profile_regions(ish, data, cone, degrees, field, zero_separate):
    d = cone.d
    acc = [dict() for _ in range(d + 1)]
    for a, u in degrees:
        h = graded_local_cohomology(ish, data, u, field)
        for i, v in h.nonzero().items():
            if not 0 <= i <= d:
                continue
            if zero_separate and not any(a):
                key = "{0}"
            else:
                key = region_token(region_of(cone.hyperplanes, a).label)
            acc[i][key] = max(acc[i].get(key, 0), v)
    return [sorted(_token(k, v) for k, v in col.items()) for col in acc]


def table_rows(d, A=None, field=FieldChoice(0), box=2):
    A = A or identity(d)
    cone = make_cone(A)
    data = LatticeData.from_matrix(cone.A)
    degrees = []
    for a in sample_degrees(cone, box):
        u = data.preimage((), a)
        if u is not None:
            degrees.append((a, u))
    maximal = SupportComplex.maximal(cone)
    rows = []
    for delta in all_subcomplexes(cone):
        lhs_ish = ishida_for(cone, maximal, quotient=delta)
        rhs_ish = ishida_for(cone, delta)
        rows.append(TableRow(
            d, delta_name(delta), ideal_name(delta), [list(f.columns) for f in delta.facets] if not delta.full else [list(cone.top().columns)],
            _profile_regions(lhs_ish, data, cone, degrees, field, True),
            _profile_regions(rhs_ish, data, cone, degrees, field, False)))
    return rows


def table_generate(d, A=None, field=FieldChoice(0), fmt="text"):
    if d not in (1, 2, 3):
        raise ValueError("table dimension must be 1, 2 or 3")
    rows = table_rows(d, A, field)
    if fmt == "json":
        return [r.to_json() for r in rows]
    return "\n".join(r.render() for r in rows)
