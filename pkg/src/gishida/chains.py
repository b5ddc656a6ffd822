"""Finite cochain complexes with incidence signs over Q or GF(p)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cones import PolyComplex, affine_rank
from .exactlin import solve_rational, det


class SignConsistencyFailure(RuntimeError):
    pass


class NotProper(ValueError):
    pass


@dataclass(frozen=True)
class FieldChoice:
    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p > 0 and any(p % q == 0 for q in range(2, int(p ** 0.5) + 1))) or p == 1:
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")


@dataclass
class CohomologyProfile:
    dims: dict

    def get(self, i):
        return self.dims.get(i, 0)

    def nonzero(self):
        return {i: v for i, v in sorted(self.dims.items()) if v}

    def is_zero(self):
        return not self.nonzero()

    def shifted(self, s):
        return CohomologyProfile({i + s: v for i, v in self.dims.items()})

    def as_list(self, lo, hi):
        return [self.get(i) for i in range(lo, hi + 1)]

    def __eq__(self, other):
        return isinstance(other, CohomologyProfile) and self.nonzero() == other.nonzero()


def matrix_rank(rows, ncols, p=0):
    """Rank of a dense matrix over Q (p = 0) or GF(p)."""
    if not rows or ncols == 0:
        return 0
    if p:
        a = [[x % p for x in r] for r in rows]
    else:
        a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if p:
            inv = pow(a[r][c], p - 2, p)
            a[r] = [(x * inv) % p for x in a[r]]
        else:
            pv = a[r][c]
            a[r] = [x / pv for x in a[r]]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                if p:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
                else:
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


@dataclass
class SignedComplex:
    """Cells (dim, key) with boundary incidences eps(face, coface).

    Cell 0 is always the (-1)-dimensional empty cell.  `active` marks the
    cells kept by a restriction; unrestricted complexes keep everything.
    """
    cells: list
    incidence: dict  # (face index, coface index) -> +-1
    active: frozenset = None
    fallback: bool = False

    def __post_init__(self):
        if self.active is None:
            self.active = frozenset(range(len(self.cells)))

    def restrict(self, keep):
        return SignedComplex(self.cells, self.incidence, frozenset(keep) & self.active, self.fallback)

    def by_dim(self, cells=None):
        out = {}
        for i in sorted(cells if cells is not None else self.active):
            out.setdefault(self.cells[i][0], []).append(i)
        return out

    def coboundary_matrix(self, k, cells=None):
        """Matrix of delta: C^k -> C^{k+1} restricted to the active cells."""
        groups = self.by_dim(cells)
        src = groups.get(k, [])
        dst = groups.get(k + 1, [])
        pos = {c: j for j, c in enumerate(src)}
        rows = []
        for g in dst:
            row = [0] * len(src)
            for f in src:
                e = self.incidence.get((f, g))
                if e:
                    row[pos[f]] = e
            rows.append(row)
        return rows, len(src)

    def check_dd(self):
        groups = self.by_dim(range(len(self.cells)))
        for k in sorted(groups):
            for h in groups.get(k + 2, []):
                for f in groups[k]:
                    s = sum(self.incidence.get((f, g), 0) * self.incidence.get((g, h), 0)
                            for g in groups.get(k + 1, []))
                    if s:
                        return False
        return True


# --------------------------------------------------------------- signs

def _orientation_basis(P, vset):
    verts = sorted(vset)
    chosen = []
    for v in verts:
        trial = chosen + [v]
        if affine_rank([P.vertices[x] for x in trial]) == len(trial) - 1:
            chosen = trial
    p0 = P.vertices[chosen[0]]
    return chosen, [[a - b for a, b in zip(P.vertices[x], p0)] for x in chosen[1:]]


def _coords(basis, vec):
    cols = [[basis[j][i] for j in range(len(basis))] for i in range(len(vec))]
    return solve_rational(cols, list(vec))


def _geometric_sign(P, F, G, bases):
    if not F:
        return 1
    chosenF, bF = bases[F]
    chosenG, bG = bases[G]
    extra = next(v for v in sorted(G) if v not in F)
    base = P.vertices[chosenF[0]]
    outward = [b - a for a, b in zip(P.vertices[extra], base)]
    vecs = [outward] + bF
    M = [_coords(bG, v) for v in vecs]
    s = det(M)
    if s == 0:
        raise SignConsistencyFailure("degenerate orientation")
    return 1 if s > 0 else -1


def _simplicial_sign(F, G):
    g = sorted(G)
    missing = next(v for v in g if v not in F)
    return -1 if g.index(missing) % 2 else 1


def signed_complex_of(P, restrict=None, abstract=False):
    """Cellular cochain data of the face poset of P (plus the empty cell).

    restrict: optional iterable of face vertex-sets to keep (the empty cell is
    kept iff frozenset() is listed; when restrict is None everything is kept).
    abstract=True treats faces as simplices and uses the standard simplicial
    signs; otherwise signs come from orientations of vertex coordinates.
    """
    faces = [frozenset()] + [frozenset(f) for f in P.faces]
    dims = [-1] + list(P.dims)
    cells = list(zip(dims, faces))
    idx = {f: i for i, f in enumerate(faces)}
    bases = {}
    if not abstract:
        for f in faces[1:]:
            bases[f] = _orientation_basis(P, f)
    inc = {}
    by_dim = {}
    for i, (k, f) in enumerate(cells):
        by_dim.setdefault(k, []).append(i)
    for k in sorted(by_dim):
        for gi in by_dim.get(k + 1, []):
            G = faces[gi]
            for fi in by_dim[k]:
                F = faces[fi]
                if F < G or (not F and k == -1):
                    if abstract:
                        e = 1 if not F else _simplicial_sign(F, G)
                    else:
                        e = _geometric_sign(P, F, G, bases)
                    inc[(fi, gi)] = e
    C = SignedComplex(cells, inc)
    if not C.check_dd():
        raise SignConsistencyFailure("boundary of boundary is nonzero")
    if restrict is not None:
        keep = {idx[frozenset(f)] for f in restrict if frozenset(f) in idx}
        C = C.restrict(keep)
    return C


def reduced_cohomology(C, field=FieldChoice(0)):
    """Reduced cohomology dims indexed by cell dimension (-1 is the empty cell)."""
    p = field.characteristic if isinstance(field, FieldChoice) else int(field)
    groups = C.by_dim()
    if not groups:
        return CohomologyProfile({})
    lo, hi = min(groups), max(groups)
    ranks = {}
    for k in range(lo - 1, hi + 1):
        rows, nc = C.coboundary_matrix(k)
        ranks[k] = matrix_rank(rows, nc, p)
    dims = {}
    for k in range(lo, hi + 1):
        n = len(groups.get(k, []))
        h = n - ranks[k] - ranks.get(k - 1, 0)
        if h:
            dims[k] = h
    return CohomologyProfile(dims)


def euler_characteristic(C):
    return sum((-1) ** k * len(v) for k, v in C.by_dim().items())


# -------------------------------------------------------- order complexes

def order_complex(elements, leq):
    """Simplicial complex of chains of a finite poset (abstract vertices)."""
    elements = list(elements)
    n = len(elements)
    below = {i: [j for j in range(n) if j != i and leq(elements[j], elements[i])] for i in range(n)}
    chains = []

    def extend(chain):
        chains.append(frozenset(chain))
        top = chain[-1]
        for j in range(n):
            if j != top and leq(elements[top], elements[j]) and not leq(elements[j], elements[top]):
                extend(chain + [j])

    for i in range(n):
        if not below[i]:
            pass
        extend([i])
    faces = sorted(set(chains), key=lambda f: (len(f), sorted(f)))
    return PolyComplex(list(elements), faces, [len(f) - 1 for f in faces])


def poset_cohomology(elements, leq, field=FieldChoice(0)):
    """Reduced cohomology of the order complex of a poset."""
    K = order_complex(elements, leq)
    return reduced_cohomology(signed_complex_of(K, abstract=True), field)


# --------------------------------------------------------- Alexander dual

def unmoved_alexander_dual(P, delta_faces, check=True):
    """Signed complex of P with the cells of the subcomplex deleted.

    A nonempty subcomplex also owns the empty cell.  Indices are unchanged.
    """
    delta = {frozenset(f) for f in delta_faces}
    if check:
        top = max(P.faces, key=len) if P.faces else frozenset()
        if top in delta:
            raise NotProper("subcomplex contains the whole polytope")
        for f in delta:
            if f not in set(P.faces):
                raise NotProper(f"{sorted(f)} is not a face")
            for g in P.faces:
                if g <= f and g not in delta:
                    raise NotProper("not closed under taking faces")
    C = signed_complex_of(P)
    keep = [i for i, (k, f) in enumerate(C.cells) if f not in delta and not (k == -1 and delta)]
    return C.restrict(keep)
