"""Generalized Ishida complexes with radical monomial support.

Graded pieces are decided combinatorially: the piece of a localization at a
face is nonzero exactly when the degree's coset meets the corresponding
localized exponent region, so dimensions never depend on character values.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations

from .chains import CohomologyProfile, FieldChoice, reduced_cohomology, signed_complex_of
from .cones import Cone, cut_faces, barmap_of, transverse_section
from .exactlin import feasible_with_radius, restricted_coset


@dataclass(frozen=True)
class SupportComplex:
    """Downward-closed set of nonzero cone faces; the zero face is implicit.

    full=True is the zero ideal.  No facets means the maximal ideal.
    """
    cone: Cone
    facets: tuple  # maximal faces (Face objects)
    full: bool = False

    @classmethod
    def from_columns(cls, cone, facet_columns):
        facets = []
        for cols in facet_columns:
            f = cone.face_by_columns(cols)
            if f.dim == 0:
                continue
            facets.append(f)
        full = any(f == cone.top() for f in facets)
        if full:
            return cls(cone, (cone.top(),), True)
        mx = [f for f in facets if not any(f != g and cone.leq(f, g) for g in facets)]
        mx = sorted(set(mx), key=lambda f: (f.dim, f.columns))
        return cls(cone, tuple(mx), False)

    @classmethod
    def maximal(cls, cone):
        return cls(cone, (), False)

    @classmethod
    def zero(cls, cone):
        return cls(cone, (cone.top(),), True)

    def maximal_faces(self):
        return list(self.facets) if self.facets else [self.cone.zero()]

    def faces(self):
        """All faces of the complex, zero face included."""
        return [f for f in self.cone.faces
                if any(self.cone.leq(f, g) for g in self.maximal_faces())]

    def contains(self, f):
        return any(self.cone.leq(f, g) for g in self.maximal_faces())

    def intersections(self):
        """Faces that are intersections of nonempty families of maximal faces."""
        mx = self.maximal_faces()
        out = set()
        for k in range(1, len(mx) + 1):
            for fam in combinations(mx, k):
                cols = set(fam[0].columns)
                for g in fam[1:]:
                    cols &= set(g.columns)
                out.add(self.cone.smallest_face_containing(cols))
        return sorted(out, key=lambda f: (f.dim, f.columns))

    def generator_faces(self):
        """Minimal faces outside the complex; their relint monomials generate
        the ideal up to radical."""
        outside = [f for f in self.cone.faces if not self.contains(f)]
        return [f for f in outside if not any(g != f and self.cone.leq(g, f) for g in outside)]

    def key(self):
        return [list(f.columns) for f in self.facets]


@dataclass
class SupportSection:
    polytope: object  # PolyComplex or None when the section is empty
    barmap: list  # Face per polytope face
    support: SupportComplex


def support_section(cone, delta, w=None, level=None):
    if delta.full:
        return SupportSection(None, [], delta)
    P = transverse_section(cone, w, level)
    cuts = []
    for G in delta.facets:
        c = [0] * cone.d
        for i in G.tight:
            c = [a + b for a, b in zip(c, cone.hyperplanes[i].normal)]
        cuts.append((tuple(c), 1))
    PJ = cut_faces(P, cuts)
    bar = [barmap_of(cone, PJ, f) for f in PJ.faces]
    return SupportSection(PJ, bar, delta)


@dataclass
class IshidaComplex:
    section: SupportSection
    complex: object  # SignedComplex, cell 0 = empty face
    keys: list  # cone Face localizing each cell
    quotient: SupportComplex | None = None

    @property
    def cone(self):
        return self.section.support.cone

    def levels(self):
        out = {}
        for i, (k, _) in enumerate(self.complex.cells):
            out.setdefault(k + 1, []).append(i)
        return [out[k] for k in sorted(out)]

    def level_sizes(self):
        return [len(x) for x in self.levels()]


def build_ishida(section):
    if section.polytope is None:
        from .chains import SignedComplex
        C = SignedComplex([(-1, frozenset())], {})
        return IshidaComplex(section, C, [section.support.cone.zero()])
    C = signed_complex_of(section.polytope)
    keys = [section.support.cone.zero()] + list(section.barmap)
    return IshidaComplex(section, C, keys)


def quotient_mode(ish, delta_q):
    """Same indexing, membership additionally restricted to k[Q]/J for delta_q."""
    return replace(ish, quotient=None if delta_q.full else delta_q)


@dataclass
class GradedPiece:
    degree: tuple
    present: frozenset  # cell indices
    complex: object

    def dims(self, ish):
        return [len([c for c in lvl if c in self.present]) for lvl in ish.levels()]


def localization_member(data, u, face, quotient=None, radius=64):
    """Is the coset of u a degree of (R)_face, R = k[x]/I or its quotient by J?"""
    L = data.lattice
    if quotient is None:
        return feasible_with_radius(L, u, face.columns, radius)
    cone = quotient.cone
    n = L.ambient_dim
    for G in quotient.maximal_faces():
        if not cone.leq(face, G):
            continue
        zero = [i for i in range(n) if i not in G.columns]
        rc = restricted_coset(L, u, zero)
        if rc is None:
            continue
        L2, v = rc
        if feasible_with_radius(L2, v, set(face.columns) | set(zero), radius):
            return True
    return False


def resolve_degree(data, degree):
    """Accept an exponent vector u (length n) or a pair (t, a)."""
    if isinstance(degree, tuple) and len(degree) == 2 and isinstance(degree[0], tuple):
        return data.preimage(degree[0], degree[1])
    return tuple(degree)


def graded_piece(ish, data, degree, radius=64):
    u = resolve_degree(data, degree)
    if u is None:
        return GradedPiece(tuple(degree), frozenset(), ish.complex.restrict(()))
    memo = {}
    present = []
    for i, f in enumerate(ish.keys):
        if f not in memo:
            memo[f] = localization_member(data, u, f, ish.quotient, radius)
        if memo[f]:
            present.append(i)
    present = frozenset(present)
    return GradedPiece(u, present, ish.complex.restrict(present))


def piece_cohomology(piece, field=FieldChoice(0)):
    """Ishida-indexed cohomology (level k = cell dimension + 1)."""
    return reduced_cohomology(piece.complex, field).shifted(1)


def graded_local_cohomology(ish, data, degree, field=FieldChoice(0), radius=64):
    return piece_cohomology(graded_piece(ish, data, degree, radius), field)


def aggregated(ish, data, a, field=FieldChoice(0), radius=64):
    """Sum over torsion classes at A-degree a: (level dims, cohomology dims)."""
    dims = [0] * len(ish.levels())
    coh = {}
    for t in data.torsion.elements():
        p = graded_piece(ish, data, (t, tuple(a)), radius)
        for k, x in enumerate(p.dims(ish)):
            dims[k] += x
        for k, v in piece_cohomology(p, field).dims.items():
            coh[k] = coh.get(k, 0) + v
    return dims, CohomologyProfile(coh)


def ishida_for(cone, delta, quotient=None, w=None, level=None):
    ish = build_ishida(support_section(cone, delta, w, level))
    if quotient is not None:
        ish = quotient_mode(ish, quotient)
    return ish
