"""Polyhedral cones over an integer matrix: facets, faces, regions, sections."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .exactlin import (fm_feasible, integer_kernel, primitive, rank,
                       solve_rational)


class NotPointed(ValueError):
    pass


class BadFunctional(ValueError):
    pass


class DegenerateCut(ValueError):
    pass


class MissingFace(KeyError):
    pass


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple

    def value(self, u):
        return dot(self.normal, u)


@dataclass(frozen=True)
class Face:
    columns: tuple  # sorted generator indices on the face
    tight: frozenset  # indices of hyperplanes vanishing on the face
    dim: int


@dataclass(frozen=True)
class Region:
    label: frozenset


# ------------------------------------------------------------------ facets

def _columns(A):
    return [tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0]))]


def facet_normals(A, order=None):
    """Primitive inner normals of the facets of the cone over the columns of A.

    Canonical order is descending lexicographic on the normal vectors, which
    makes the standard basis come out as H_i = {x_i >= 0}.  `order` may give
    the facets explicitly as a list of column-index sets.
    """
    A = [list(r) for r in A]
    d = len(A)
    cols = _columns(A)
    if rank(A) != d:
        raise ValueError("A must have full row rank")
    if any(not any(c) for c in cols):
        raise ValueError("zero column")
    normals = set()
    for sub in combinations(range(len(cols)), max(d - 1, 0)):
        M = [list(cols[j]) for j in sub]
        if M and rank(M) != d - 1:
            continue
        ker = integer_kernel(M, d) if M else [tuple(int(i == j) for i in range(d)) for j in range(d)]
        if len(ker) != 1:
            continue
        c = primitive(ker[0])
        vals = [dot(c, a) for a in cols]
        if all(v >= 0 for v in vals):
            normals.add(c)
        elif all(v <= 0 for v in vals):
            normals.add(tuple(-x for x in c))
    normals = sorted(normals, reverse=True)
    if len(normals) < d or rank([list(c) for c in normals]) < d:
        raise NotPointed("cone is not pointed")
    if order is not None:
        by_cols = {tuple(j for j, a in enumerate(cols) if dot(c, a) == 0): c for c in normals}
        ordered = []
        for s in order:
            key = tuple(sorted(s))
            if key not in by_cols:
                raise ValueError(f"{list(key)} is not a facet")
            ordered.append(by_cols[key])
        if len(ordered) != len(normals):
            raise ValueError("facet order must list every facet once")
        normals = ordered
    return [Hyperplane(c) for c in normals]


@dataclass
class Cone:
    A: list
    hyperplanes: list
    faces: list  # Face objects, sorted by (dim, columns)

    @property
    def d(self):
        return len(self.A)

    @property
    def n(self):
        return len(self.A[0])

    @property
    def m(self):
        return len(self.hyperplanes)

    def columns(self):
        return _columns(self.A)

    def face_by_columns(self, cols):
        cols = tuple(sorted(cols))
        for f in self.faces:
            if f.columns == cols:
                return f
        raise MissingFace(cols)

    def face_by_tight(self, tight):
        tight = frozenset(tight)
        for f in self.faces:
            if f.tight == tight:
                return f
        return None

    def zero(self):
        return self.faces[0]

    def top(self):
        return self.faces[-1]

    def leq(self, f, g):
        return set(f.columns) <= set(g.columns)

    def smallest_face_containing(self, cols):
        cols = set(cols)
        best = None
        for f in self.faces:
            if cols <= set(f.columns) and (best is None or f.dim < best.dim):
                best = f
        return best

    def is_simplicial(self):
        return self.m == self.d

    def complement(self, f):
        """Face whose tight set is the complement of f's, if there is one."""
        return self.face_by_tight(frozenset(range(self.m)) - f.tight)


def face_lattice(A, hyperplanes=None):
    A = [list(r) for r in A]
    H = hyperplanes if hyperplanes is not None else facet_normals(A)
    cols = _columns(A)
    n = len(cols)
    found = {}

    def make(colset):
        colset = tuple(sorted(colset))
        if colset in found:
            return None
        tight = frozenset(i for i, h in enumerate(H) if all(h.value(cols[j]) == 0 for j in colset))
        dim = rank([list(cols[j]) for j in colset]) if colset else 0
        found[colset] = Face(colset, tight, dim)
        return colset

    stack = [make(range(n))]
    while stack:
        cur = stack.pop()
        for h in H:
            nxt = [j for j in cur if h.value(cols[j]) == 0]
            key = make(nxt)
            if key is not None:
                stack.append(key)
    faces = sorted(found.values(), key=lambda f: (f.dim, f.columns))
    return faces


def make_cone(A, order=None):
    A = [list(map(int, r)) for r in A]
    H = facet_normals(A, order)
    return Cone(A, H, face_lattice(A, H))


# ----------------------------------------------------------------- regions

def region_of(H, u):
    return Region(frozenset(i for i, h in enumerate(H) if h.value(u) >= 0))


def region_realized(H, label, d):
    """Is there a point with <c_i,u> >= 0 exactly for i in label?"""
    ineqs = []
    for i, h in enumerate(H):
        if i in label:
            ineqs.append((h.normal, 0, False))
        else:
            ineqs.append((tuple(-x for x in h.normal), 0, True))
    return fm_feasible(ineqs, d)


def all_regions(H, d):
    m = len(H)
    out = []
    for bits in product((0, 1), repeat=m):
        label = frozenset(i for i in range(m) if bits[i])
        if region_realized(H, label, d):
            out.append(Region(label))
    return sorted(out, key=lambda r: (len(r.label), sorted(r.label)))


def hidden_regions(A, H, faces):
    d = len(A)
    image = {f.tight for f in faces}
    return [r for r in all_regions(H, d) if r.label not in image]


# ------------------------------------------------------------- polytopes

@dataclass
class PolyComplex:
    """A polytope (or a subcomplex of one) given by vertices and faces.

    faces: nonempty vertex-index sets; the empty face is implicit.
    ineqs/eqs: H-representation of the ambient polytope ((normal, level)
    meaning <normal,u> >= level, resp. == level), when geometric.
    tags: optional per-face origin (e.g. the original face it came from).
    """
    vertices: list
    faces: list
    dims: list
    ineqs: list = field(default_factory=list)
    eqs: list = field(default_factory=list)
    tags: list | None = None

    def index(self, vset):
        vset = frozenset(vset)
        for i, f in enumerate(self.faces):
            if f == vset:
                return i
        raise MissingFace(sorted(vset))

    def dimension(self):
        return max(self.dims, default=-1)

    def maximal_faces(self):
        return [i for i, f in enumerate(self.faces)
                if not any(f < g for g in self.faces)]

    def restrict(self, keep):
        keep = sorted(set(keep))
        return PolyComplex(self.vertices, [self.faces[i] for i in keep],
                           [self.dims[i] for i in keep], self.ineqs, self.eqs,
                           None if self.tags is None else [self.tags[i] for i in keep])

    def closure(self, idx):
        """Indices of all faces contained in some face of idx."""
        out = set()
        for i in idx:
            for j, g in enumerate(self.faces):
                if g <= self.faces[i]:
                    out.add(j)
        return out

    def tight_constraints(self, vset):
        pts = [self.vertices[v] for v in vset]
        return frozenset(k for k, (c, lvl) in enumerate(self.ineqs)
                         if all(dot(c, p) == lvl for p in pts))


def affine_rank(points):
    if not points:
        return -1
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def polytope_from_hrep(ineqs, eqs, ambient):
    ineqs = [(tuple(c), Fraction(l)) for c, l in ineqs]
    eqs = [(tuple(c), Fraction(l)) for c, l in eqs]
    eq_rank = rank([list(c) for c, _ in eqs]) if eqs else 0
    k = ambient - eq_rank
    verts = []
    for sub in combinations(range(len(ineqs)), k):
        rows = [list(c) for c, _ in eqs] + [list(ineqs[i][0]) for i in sub]
        rhs = [l for _, l in eqs] + [ineqs[i][1] for i in sub]
        if rank(rows) < ambient:
            continue
        x = solve_rational(rows, rhs)
        if x is None:
            continue
        x = tuple(x)
        if all(dot(c, x) >= l for c, l in ineqs) and x not in verts:
            verts.append(x)
    verts.sort()
    if not verts:
        return PolyComplex([], [], [], ineqs, eqs)
    allv = frozenset(range(len(verts)))
    found = {allv}
    stack = [allv]
    tightsets = [frozenset(v for v in range(len(verts)) if dot(c, verts[v]) == l) for c, l in ineqs]
    while stack:
        cur = stack.pop()
        for t in tightsets:
            nxt = cur & t
            if nxt and nxt not in found:
                found.add(nxt)
                stack.append(nxt)
    faces = sorted(found, key=lambda f: (affine_rank([verts[v] for v in f]), sorted(f)))
    dims = [affine_rank([verts[v] for v in f]) for f in faces]
    return PolyComplex(verts, faces, dims, ineqs, eqs)


def default_functional(cone):
    w = [0] * cone.d
    for h in cone.hyperplanes:
        w = [a + b for a, b in zip(w, h.normal)]
    return tuple(w)


def transverse_section(cone, w=None, level=None):
    """Slice {<c,u> >= 0, <w,u> = level}; faces correspond to nonzero cone faces."""
    w = tuple(w) if w is not None else default_functional(cone)
    vals = [dot(w, a) for a in cone.columns()]
    if any(v <= 0 for v in vals):
        raise BadFunctional("functional must be positive on every column")
    if level is None:
        level = 4 * max(vals) * (cone.m + 1)
    ineqs = [(h.normal, 0) for h in cone.hyperplanes]
    P = polytope_from_hrep(ineqs, [(w, level)], cone.d)
    return P


def cut_faces(P, cuts):
    """Cut faces off P by the half-spaces <c,u> >= level."""
    if not cuts:
        return P
    for c, lvl in cuts:
        if any(dot(c, v) == lvl for v in P.vertices):
            raise DegenerateCut(f"cut {c} >= {lvl} passes through a vertex")
    ambient = len(P.vertices[0]) if P.vertices else len(cuts[0][0])
    return polytope_from_hrep(list(P.ineqs) + [(tuple(c), l) for c, l in cuts], P.eqs, ambient)


def _vertex_figure_geometric(P, v):
    tight = [k for k, (c, l) in enumerate(P.ineqs) if dot(c, P.vertices[v]) == l]
    ell = [Fraction(0)] * len(P.vertices[v])
    base = Fraction(0)
    for k in tight:
        c, l = P.ineqs[k]
        ell = [a + b for a, b in zip(ell, c)]
        base += l
    gaps = [dot(ell, P.vertices[j]) - base for j in range(len(P.vertices)) if j != v]
    delta = min(gaps) / 2
    Q = polytope_from_hrep(P.ineqs, list(P.eqs) + [(tuple(ell), base + delta)], len(ell))
    # origin: each face of Q lies in a unique smallest face of P containing v
    tags = []
    for f in Q.faces:
        t = Q.tight_constraints(f)
        verts = frozenset(j for j in range(len(P.vertices))
                          if all(dot(P.ineqs[k][0], P.vertices[j]) == P.ineqs[k][1] for k in t))
        tags.append(P.index(verts))
    Q.tags = tags
    return Q


def vertex_figure(P, F, complex_faces=None):
    """Section P/F, optionally restricted to faces of a subcomplex.

    F is a vertex set of a face of P.  complex_faces (vertex sets) restricts
    the result to cells coming from faces of that subcomplex.  Returned tags
    give, for each face, the index of the face of P it comes from.
    """
    F = frozenset(F)
    if F not in P.faces:
        raise MissingFace(sorted(F))
    keep = None if complex_faces is None else {frozenset(g) for g in complex_faces}
    cur, cur_F = P, F
    back = list(range(len(P.faces)))  # face index in cur -> face index in P
    while True:
        v = min(cur_F)
        Q = _vertex_figure_geometric(cur, v)
        back = [back[t] for t in Q.tags]
        Q.tags = back
        orig_F = P.index(F)
        if len(cur_F) == 1:
            break
        # face of Q coming from the current F
        nxt = [i for i, t in enumerate(back) if t == orig_F]
        cur, cur_F = Q, Q.faces[nxt[0]]
    # drop the cell that is the image of F itself and faces not strictly above F
    idx = [i for i, t in enumerate(Q.tags) if P.faces[t] > F]
    if keep is not None:
        idx = [i for i in idx if P.faces[Q.tags[i]] in keep]
    return Q.restrict(idx)


def combinatorial_connectivity(D):
    """Dimension of the intersection of all maximal faces (-1 if empty)."""
    mx = D.maximal_faces()
    common = frozenset.intersection(*[D.faces[i] for i in mx]) if mx else frozenset()
    if not common:
        return -1
    return affine_rank([D.vertices[v] for v in common]) if D.vertices else len(common) - 1


# ------------------------------------------------------- support sections

def barmap_of(cone, P, vset):
    """Smallest cone face whose span contains the face of P with these vertices."""
    pts = [P.vertices[v] for v in vset]
    tight = frozenset(i for i, h in enumerate(cone.hyperplanes) if all(h.value(p) == 0 for p in pts))
    cols = [j for j, a in enumerate(cone.columns())
            if all(cone.hyperplanes[i].value(a) == 0 for i in tight)]
    return cone.face_by_columns(cols)


def section_intersection_is_face(cone, P, barmaps, F):
    """Faces of P lying in span(F); returns the unique maximal one or a violation string."""
    inside = [i for i, b in enumerate(barmaps) if set(b.columns) <= set(F.columns)]
    if not inside:
        return None
    mx = [i for i in inside if not any(P.faces[i] < P.faces[j] for j in inside)]
    if len(mx) != 1:
        return f"violation: {len(mx)} maximal faces inside span of {list(F.columns)}"
    top = mx[0]
    if any(not P.faces[i] <= P.faces[top] for i in inside):
        return "violation: not closed"
    return top
