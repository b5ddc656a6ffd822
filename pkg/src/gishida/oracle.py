"""Brute-force reference computations, written without the main chain and
feasibility code so that agreement means something."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .chains import CohomologyProfile, FieldChoice

MAX_GENERATORS = 12


def _rank(rows, ncols, p):
    if not rows or ncols == 0:
        return 0
    dom = GF(p) if p else QQ
    M = DomainMatrix([[dom(x) for x in r] for r in rows], (len(rows), ncols), dom)
    return M.rank()


def naive_homology(dims, boundaries, field=FieldChoice(0)):
    """Homology dims of a chain complex.

    dims: {k: rank of C_k}; boundaries: {k: matrix of C_k -> C_{k-1}} with
    dims[k-1] rows.  Missing maps are zero.
    """
    p = field.characteristic
    ranks = {k: _rank(M, dims.get(k, 0), p) for k, M in boundaries.items()}
    out = {}
    for k, n in dims.items():
        h = n - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if h:
            out[k] = h
    return CohomologyProfile(out)


def simplicial_chain_data(faces):
    """Augmented chain complex of an abstract simplicial complex given by
    all of its faces (the empty face is added)."""
    faces = {tuple(sorted(f)) for f in faces} | {()}
    by_dim = {}
    for f in sorted(faces, key=lambda f: (len(f), f)):
        by_dim.setdefault(len(f) - 1, []).append(f)
    dims = {k: len(v) for k, v in by_dim.items()}
    bd = {}
    for k, cells in by_dim.items():
        if k < 0:
            continue
        lower = {f: i for i, f in enumerate(by_dim[k - 1])}
        M = [[0] * len(cells) for _ in by_dim[k - 1]]
        for j, f in enumerate(cells):
            for pos in range(len(f)):
                g = f[:pos] + f[pos + 1:]
                M[lower[g]][j] = (-1) ** pos
        bd[k] = M
    return dims, bd


def closure(facets):
    """All faces of the complex generated by the facets; the empty face is
    always present, so no facets means the complex {empty}."""
    out = {()}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(len(f) + 1):
            out.update(combinations(f, k))
    return out


def hochster_link_formula(facets, u, field=FieldChoice(0)):
    """Local cohomology of a Stanley-Reisner ring at the maximal ideal, degree u."""
    if any(x > 0 for x in u):
        return CohomologyProfile({})
    F = tuple(i for i, x in enumerate(u) if x < 0)
    faces = closure(facets)
    if F not in faces:
        return CohomologyProfile({})
    link = [g for g in faces if not set(g) & set(F) and tuple(sorted(set(g) | set(F))) in faces]
    dims, bd = simplicial_chain_data(link)
    # reduced homology and cohomology agree in dimension over a field
    return naive_homology(dims, bd, field).shifted(len(F) + 1)


# ---------------------------------------------------------------- Cech

def _nonneg_member(u, basis, e, radius):
    """Is there z with |z_i| <= radius and N >= 0 such that u + Bz + N e >= 0?"""
    n = len(u)
    r = len(basis)
    for z in product(range(-radius, radius + 1), repeat=r):
        v = list(u)
        for c, b in zip(z, basis):
            for i in range(n):
                v[i] += c * b[i]
        if all(v[i] >= 0 for i in range(n) if e[i] == 0):
            return True
    return False


@dataclass
class CechComplex:
    generators: list  # exponent vectors
    basis: list  # lattice basis vectors
    radius: int = 8

    def member(self, u, subset):
        e = [0] * len(u)
        for s in subset:
            e = [a + b for a, b in zip(e, self.generators[s])]
        return _nonneg_member(u, self.basis, e, self.radius)


def cech_graded(basis, generators, u, field=FieldChoice(0), radius=8):
    """Graded Cech cohomology of k[x]/I_L on the given monomials at degree u.

    basis: generators of L (vectors in Z^n); generators: exponent vectors.
    """
    s = len(generators)
    if s > MAX_GENERATORS:
        raise ValueError("too many generators for the Cech oracle")
    C = CechComplex([list(g) for g in generators], [list(b) for b in basis], radius)
    cells = {}
    for k in range(s + 1):
        cells[k] = [S for S in combinations(range(s), k) if C.member(u, S)]
    dims = {k: len(v) for k, v in cells.items()}
    # write as a chain complex in negative degrees so naive_homology applies
    bd = {}
    for k in range(s):
        src = cells[k]
        dst = {S: j for j, S in enumerate(cells[k + 1])}
        M = [[0] * len(src) for _ in cells[k + 1]]
        for i, S in enumerate(src):
            for g in range(s):
                if g in S:
                    continue
                T = tuple(sorted(S + (g,)))
                if T in dst:
                    sign = (-1) ** sum(1 for x in S if x < g)
                    M[dst[T]][i] = sign
        # the coboundary out of C^k is the boundary out of C_{-k}
        bd[-k] = M
    h = naive_homology({-k: v for k, v in dims.items()}, bd, field)
    return CohomologyProfile({-k: v for k, v in h.dims.items()})


def standard_monomials(data, box):
    """One exponent vector per graded piece reached inside [0, box]^n."""
    seen = {}
    for u in product(range(box + 1), repeat=data.n):
        t, a = data.degree(u)
        key = (tuple(t), tuple(a))
        if key not in seen:
            seen[key] = tuple(u)
    return sorted((u, t, a) for (t, a), u in seen.items())


def h0_expected(data, generator_columns, u, radius=8):
    """One-dimensional H^0 at u iff the monomial is a degree of the ring and is
    killed by a power of J, i.e. missing from every localization at a generator."""
    basis = [list(b) for b in data.lattice.basis]
    zero = [0] * data.n
    if not _nonneg_member(list(u), basis, zero, radius):
        return 0
    for cols in generator_columns:
        e = [1 if i in cols else 0 for i in range(data.n)]
        if _nonneg_member(list(u), basis, e, radius):
            return 0
    return 1
