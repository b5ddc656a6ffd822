"""Degree-space bookkeeping: torsion slices, degree pairs, overlap classes,
open-set labels and per-degree classification."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cones import hidden_regions, region_of
from .exactlin import LatticeData, feasible_with_radius, restricted_coset, solve_integer
from .ishida import localization_member


class BoxExhausted(RuntimeError):
    pass


class HiddenRegionsPresent(RuntimeError):
    pass


def toric_data(data):
    """Toric (saturated, torsion-free) data with the same grading matrix."""
    return LatticeData(data.sat, data.sat, type(data.torsion)((), ((0,) * data.n,)), data.A)


def in_semigroup(toric, cone, a, face=None):
    """a in NA + Z A_face (face None means the zero face)."""
    u = toric.preimage((), tuple(a))
    if u is None:
        return False
    cols = face.columns if face is not None else ()
    return feasible_with_radius(toric.lattice, u, cols)


def in_face_semigroup(toric, a, face):
    """a in N A_face."""
    u = toric.preimage((), tuple(a))
    if u is None:
        return False
    zero = [i for i in range(toric.n) if i not in face.columns]
    rc = restricted_coset(toric.lattice, u, zero)
    if rc is None:
        return False
    L2, v = rc
    return feasible_with_radius(L2, v, zero)


def box_points(d, box):
    return product(range(-box, box + 1), repeat=d)


@dataclass
class MonomialIdealInQ:
    toric: LatticeData
    cone: object
    generators: list

    def contains(self, a):
        return any(in_semigroup(self.toric, self.cone, [x - y for x, y in zip(a, g)]) for g in self.generators)


@dataclass(frozen=True)
class Pair:
    base: tuple
    face: object


@dataclass
class OverlapClass:
    face: object
    members: list


@dataclass(frozen=True)
class OpenSetLabel:
    region: frozenset
    torsion: tuple = ()
    pair: tuple | None = None  # (F columns, G columns)
    fingerprint: tuple | None = None
    quotient_fingerprint: tuple | None = None

    def key(self):
        if self.pair is not None:
            return ("pair", self.torsion, self.pair)
        if self.fingerprint is None:
            return ("region", self.torsion, tuple(sorted(self.region)))
        return ("fingerprint", self.torsion, tuple(sorted(self.region)),
                self.fingerprint, self.quotient_fingerprint)

    def describe(self):
        k = self.key()
        if k[0] == "pair":
            return f"pair F={list(self.pair[0])} G={list(self.pair[1])}"
        if k[0] == "region":
            return f"region {sorted(self.region)}"
        return (f"region {sorted(self.region)} localizations "
                f"{[list(f) for f in self.fingerprint]} quotient {[list(f) for f in self.quotient_fingerprint]}")


def torsion_ideal(data, cone, t, box=12):
    """Minimal A-degrees (inside the box) of monomials x^u with torsion class t."""
    toric = toric_data(data)
    found = []
    for a in box_points(data.d, box):
        u = data.preimage(tuple(t), a)
        if u is None:
            continue
        if feasible_with_radius(data.lattice, u, ()):
            found.append(a)
    if not found:
        raise BoxExhausted(f"no monomial of torsion class {t} within box {box}")
    gens = []
    for a in found:
        if not any(b != a and in_semigroup(toric, cone, [x - y for x, y in zip(a, b)]) for b in found):
            gens.append(a)
    return MonomialIdealInQ(toric, cone, sorted(gens))


def _proper(I, a, face):
    return all(not in_semigroup(I.toric, I.cone, [x - y for x, y in zip(a, g)], face) for g in I.generators)


def degree_pairs(I, box=6):
    cone = I.cone
    d = cone.d
    cands = []
    for a in box_points(d, box):
        if not in_semigroup(I.toric, cone, a):
            continue
        for f in cone.faces:
            if _proper(I, a, f):
                cands.append(Pair(tuple(a), f))
    out = []
    for p in cands:
        dominated = False
        for q in cands:
            if q == p or not cone.leq(p.face, q.face):
                continue
            diff = [x - y for x, y in zip(p.base, q.base)]
            if in_face_semigroup(I.toric, diff, q.face):
                dominated = True
                break
        if not dominated:
            out.append(p)
    return sorted(out, key=lambda p: (p.face.dim, p.face.columns, p.base))


def overlap_classes(pairs, A):
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, p in enumerate(pairs):
        for j in range(i):
            q = pairs[j]
            if p.face != q.face:
                continue
            diff = tuple(x - y for x, y in zip(p.base, q.base))
            AF = [[A[r][c] for c in p.face.columns] for r in range(len(A))]
            if not p.face.columns:
                ok = not any(diff)
            else:
                ok = solve_integer(AF, diff)[0] is not None
            if ok:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(len(pairs)):
        groups.setdefault(find(i), []).append(pairs[i])
    return [OverlapClass(g[0].face, [p.base for p in g]) for g in groups.values()]


def minimal_open_sets(cone, delta):
    if hidden_regions(cone.A, cone.hyperplanes, cone.faces):
        raise HiddenRegionsPresent("hidden regions present; use per-degree classification")
    inter = delta.intersections()
    labels = []
    for F in cone.faces:
        for G in inter:
            if cone.leq(F, G):
                labels.append(OpenSetLabel(F.tight, (), (F.columns, G.columns)))
    for F in cone.faces:
        labels.append(OpenSetLabel(F.tight))
    return labels


def fingerprints(data, cone, delta, u):
    plain = tuple(f.columns for f in cone.faces if localization_member(data, u, f))
    quot = tuple(f.columns for f in cone.faces if localization_member(data, u, f, delta))
    return plain, quot


def classify_degree(data, cone, delta, u, hidden=None):
    """Open-set label of the degree of u (an exponent vector)."""
    t, a = data.degree(u)
    region = region_of(cone.hyperplanes, a).label
    if hidden is None:
        hidden = bool(hidden_regions(cone.A, cone.hyperplanes, cone.faces))
    if hidden:
        plain, quot = fingerprints(data, cone, delta, u)
        return OpenSetLabel(region, t, None, plain, quot)
    F = cone.face_by_tight(region)
    Gs = [G for G in delta.maximal_faces()
          if cone.leq(F, G) and localization_member(data, u, F, _single(delta, G))]
    if not Gs:
        return OpenSetLabel(region, t)
    cols = set(Gs[0].columns)
    for G in Gs[1:]:
        cols &= set(G.columns)
    G = cone.smallest_face_containing(cols)
    return OpenSetLabel(region, t, (F.columns, G.columns))


def _single(delta, G):
    from .ishida import SupportComplex
    return SupportComplex(delta.cone, (G,), False)
