"""Exact integer linear algebra: normal forms, saturation, torsion, gradings
and integer feasibility of lattice cosets.

Matrices are plain lists of rows of Python ints.  Vectors are tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import gcd, prod

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

IntMatrix = list  # list[list[int]], row-major


class Inconclusive(Exception):
    """Search radius exhausted before a feasibility decision was certified."""

    def __init__(self, radius):
        super().__init__(f"search radius {radius} exhausted")
        self.radius = radius


# ---------------------------------------------------------------- helpers

def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(r) for r in zip(*M)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(ncols)]
            for i in range(len(A))]


def matvec(M, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def columns_to_matrix(cols, n):
    """n x r matrix whose columns are the given vectors."""
    return [[c[i] for c in cols] for i in range(n)]


def matrix_columns(M):
    if not M:
        return []
    return [tuple(M[i][j] for i in range(len(M))) for j in range(len(M[0]))]


def det(M):
    """Exact determinant (Fraction-based elimination)."""
    n = len(M)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in M]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return d.numerator if d.denominator == 1 else d


def rank(M):
    return len(rref(M)[1])


def rref(M):
    """Reduced row echelon form over Q.  Returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in M]
    if not a:
        return a, []
    nr, nc = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots


def solve_rational(M, b):
    """One rational solution x of M x = b, or None."""
    nr = len(M)
    nc = len(M[0]) if M else 0
    aug = [list(M[i]) + [b[i]] for i in range(nr)]
    R, piv = rref(aug)
    if nc in piv:
        return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(piv):
        x[c] = R[i][nc]
    return x


def primitive(v):
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def integer_direction(v):
    """Scale a rational vector to a primitive integer vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


# ------------------------------------------------------------ normal forms

def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(M):
    """Row-style Hermite form by left multiplication.

    Returns (H, U) with U unimodular and U*M = H; H is in echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(r) for r in M]
    U = identity(m)
    row = 0
    for c in range(n):
        if row >= m:
            break
        for i in range(row + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[row][c], H[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            r1 = [x * s + y * t for s, t in zip(H[row], H[i])]
            r2 = [-q * s + p * t for s, t in zip(H[row], H[i])]
            H[row], H[i] = r1, r2
            u1 = [x * s + y * t for s, t in zip(U[row], U[i])]
            u2 = [-q * s + p * t for s, t in zip(U[row], U[i])]
            U[row], U[i] = u1, u2
        if H[row][c] == 0:
            continue
        if H[row][c] < 0:
            H[row] = [-v for v in H[row]]
            U[row] = [-v for v in U[row]]
        piv = H[row][c]
        for i in range(row):
            f = H[i][c] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[row])]
                U[i] = [s - f * t for s, t in zip(U[i], U[row])]
        row += 1
    return H, U


@dataclass(frozen=True)
class SmithData:
    S: list
    U: list
    V: list

    @property
    def diagonal(self):
        k = min(len(self.S), len(self.S[0]) if self.S else 0)
        return [self.S[i][i] for i in range(k)]

    @property
    def rank(self):
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(M):
    """U*M*V = S with S diagonal, d1 | d2 | ..., U and V unimodular."""
    m = len(M)
    n = len(M[0]) if m else 0
    if m == 0 or n == 0 or all(x == 0 for row in M for x in row):
        return SmithData([[0] * n for _ in range(m)], identity(m), identity(n))
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in M], (m, n), ZZ)
    S, U, V = smith_normal_decomp(dm)
    S = [[int(x) for x in row] for row in S.to_Matrix().tolist()]
    U = [[int(x) for x in row] for row in U.to_Matrix().tolist()]
    V = [[int(x) for x in row] for row in V.to_Matrix().tolist()]
    # normalize signs so that the diagonal is nonnegative
    for i in range(min(m, n)):
        if S[i][i] < 0:
            S[i][i] = -S[i][i]
            U[i] = [-x for x in U[i]]
    return SmithData(S, U, V)


def inverse_unimodular(U):
    n = len(U)
    aug = [list(U[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, _ = rref(aug)
    return [[int(x) for x in row[n:]] for row in R]


def integer_kernel(M, n=None):
    """Basis (list of column vectors) of ker_Z M."""
    if not M:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    sd = smith_normal_form(M)
    r = sd.rank
    ncols = len(M[0])
    return [tuple(sd.V[i][j] for i in range(ncols)) for j in range(r, ncols)]


def solve_integer(M, b, ncols=None):
    """Integer solution x of M x = b and kernel basis, or (None, kernel)."""
    if not M:
        ncols = ncols or 0
        if any(b):
            return None, []
        return tuple([0] * ncols), integer_kernel([], ncols)
    ncols = len(M[0])
    sd = smith_normal_form(M)
    c = matvec(sd.U, b)
    diag = sd.diagonal
    y = [0] * ncols
    for i, ci in enumerate(c):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ci != 0:
                return None, None
        else:
            if ci % di:
                return None, None
            y[i] = ci // di
    x = matvec(sd.V, y)
    kern = [tuple(sd.V[i][j] for i in range(ncols)) for j in range(sd.rank, ncols)]
    return x, kern


# ---------------------------------------------------------------- lattices

@dataclass(frozen=True)
class Lattice:
    ambient_dim: int
    basis: tuple  # tuple of column vectors (tuples)

    @property
    def rank(self):
        return len(self.basis)

    def matrix(self):
        return columns_to_matrix(self.basis, self.ambient_dim)

    @classmethod
    def from_generators(cls, gens, n):
        """Reduce an arbitrary generating set to a basis."""
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            return cls(n, ())
        # rows of the Hermite form of the generator rows give a basis
        H, _ = hermite_normal_form([list(g) for g in gens])
        basis = tuple(tuple(r) for r in H if any(r))
        return cls(n, basis)

    def contains(self, v):
        if not any(v):
            return True
        if not self.basis:
            return False
        x, _ = solve_integer(self.matrix(), tuple(v))
        return x is not None


@dataclass(frozen=True)
class TorsionGroup:
    invariant_factors: tuple
    representatives: tuple  # coset representatives in Z^n, indexed like elements()

    @property
    def order(self):
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def elements(self):
        return list(product(*[range(d) for d in self.invariant_factors]))

    def identity(self):
        return tuple(0 for _ in self.invariant_factors)

    def add(self, s, t):
        return tuple((a + b) % d for a, b, d in zip(s, t, self.invariant_factors))

    def neg(self, s):
        return tuple((-a) % d for a, d in zip(s, self.invariant_factors))


@dataclass(frozen=True)
class PartialCharacter:
    lattice: Lattice
    values: tuple  # one Fraction (mod 1) per basis column; carried, never evaluated


@lru_cache(maxsize=None)
def _smith_of_basis(n, basis):
    B = columns_to_matrix(basis, n)
    return smith_normal_form(B)


def saturate(L):
    """Return (L_sat, T) with L_sat = (Q L) cap Z^n and T = L_sat / L."""
    n = L.ambient_dim
    if L.rank == 0:
        return Lattice(n, ()), TorsionGroup((), ((0,) * n,))
    sd = _smith_of_basis(n, L.basis)
    r = sd.rank
    Uinv = inverse_unimodular(sd.U)
    w = [tuple(Uinv[i][j] for i in range(n)) for j in range(n)]
    sat = Lattice(n, tuple(w[:r]))
    diag = sd.diagonal[:r]
    tors_idx = [i for i, d in enumerate(diag) if d > 1]
    factors = tuple(diag[i] for i in tors_idx)
    reps = []
    for coeffs in product(*[range(diag[i]) for i in tors_idx]):
        v = [0] * n
        for c, i in zip(coeffs, tors_idx):
            for k in range(n):
                v[k] += c * w[i][k]
        reps.append(tuple(v))
    if not tors_idx:
        reps = [(0,) * n]
    return sat, TorsionGroup(factors, tuple(reps))


def grading_matrix(L_sat, n):
    """Integer matrix A with ker_Z A = L_sat, canonicalized by row Hermite form."""
    if L_sat.rank == 0:
        return identity(n)
    sd = _smith_of_basis(n, L_sat.basis)
    rows = [list(sd.U[i]) for i in range(sd.rank, n)]
    if not rows:
        return []
    H, _ = hermite_normal_form(rows)
    return [r for r in H if any(r)]


def kernel_lattice(A):
    """Saturated lattice ker_Z A for an integer matrix A (rows)."""
    n = len(A[0])
    return Lattice(n, tuple(integer_kernel(A, n)))


def torsion_and_degree(L, T, A, u):
    """(t, A u): torsion class of u under the fixed Smith splitting, and degree."""
    n = L.ambient_dim
    a = matvec(A, u)
    if not T.invariant_factors:
        return (), a
    sd = _smith_of_basis(n, L.basis)
    y = matvec(sd.U, u)
    diag = sd.diagonal[:sd.rank]
    t = tuple(y[i] % d for i, d in enumerate(diag) if d > 1)
    return t, a


# ------------------------------------------------------ Fourier-Motzkin core

def fm_feasible(ineqs, nvars):
    """Rational feasibility of {x : c.x >= b} via Fourier-Motzkin.

    ineqs: list of (c, b, strict) with c a coefficient tuple.
    """
    rows = [(tuple(Fraction(x) for x in c), Fraction(b), bool(s)) for c, b, s in ineqs]
    for k in range(nvars):
        pos, neg, rest = [], [], []
        for c, b, s in rows:
            if c[k] > 0:
                pos.append((c, b, s))
            elif c[k] < 0:
                neg.append((c, b, s))
            else:
                rest.append((c, b, s))
        new = set(rest)
        for cp, bp, sp in pos:
            for cn, bn, sn in neg:
                fp, fn = -cn[k], cp[k]
                c = tuple(fp * x + fn * y for x, y in zip(cp, cn))
                b = fp * bp + fn * bn
                new.add(_normalize_row(c, b, sp or sn))
        rows = list(new)
        if any(all(x == 0 for x in c) and (b > 0 or (b == 0 and s)) for c, b, s in rows):
            return False
    return all(b < 0 or (b == 0 and not s) for c, b, s in rows)


def _normalize_row(c, b, s):
    m = max((abs(x) for x in c), default=0)
    if m == 0:
        return (c, b, s)
    return (tuple(x / m for x in c), b / m, s)


def _interval(rows, k, nvars):
    """Bounds on variable k over the rational polyhedron {c.x >= b}."""
    order = [j for j in range(nvars) if j != k]
    cur = [(tuple(Fraction(x) for x in c), Fraction(b)) for c, b in rows]
    for j in order:
        pos = [r for r in cur if r[0][j] > 0]
        neg = [r for r in cur if r[0][j] < 0]
        new = {r for r in cur if r[0][j] == 0}
        for cp, bp in pos:
            for cn, bn in neg:
                fp, fn = -cn[j], cp[j]
                c = tuple(fp * x + fn * y for x, y in zip(cp, cn))
                c2, b2, _ = _normalize_row(c, fp * bp + fn * bn, False)
                new.add((c2, b2))
        cur = list(new)
    lo, hi = None, None
    for c, b in cur:
        if c[k] > 0:
            v = b / c[k]
            lo = v if lo is None else max(lo, v)
        elif c[k] < 0:
            v = b / c[k]
            hi = v if hi is None else min(hi, v)
        elif b > 0:
            return 1, 0  # empty
    return lo, hi


def _ceil(q):
    return -((-q.numerator) // q.denominator)


def _floor(q):
    return q.numerator // q.denominator


@lru_cache(maxsize=4096)
def _feasibility_frame(n, basis, constrained):
    """Reparametrize the lattice so the constraint matrix has full column rank.

    Returns (M, rays) where M is the constraint matrix in the reduced
    coordinates (rows indexed like `constrained`) and rays are integral
    extreme rays of its recession cone {y : M y >= 0}.
    """
    B = columns_to_matrix(basis, n)
    BC = [B[i] for i in constrained]
    r = len(basis)
    sd = smith_normal_form(BC) if BC else SmithData([], identity(r), identity(r))
    rho = sd.rank
    BV = matmul(BC, sd.V) if BC else []
    M = tuple(tuple(row[:rho]) for row in BV)
    rays = []
    if rho > 0:
        for sub in combinations(range(len(M)), rho - 1):
            T = [list(M[i]) for i in sub]
            if T and rank(T) != rho - 1:
                continue
            ker = integer_kernel(T, rho) if T else [tuple(int(i == j) for i in range(rho)) for j in range(rho)]
            if len(ker) != 1:
                continue
            for sgn in (1, -1):
                d = tuple(sgn * x for x in ker[0])
                if all(sum(a * b for a, b in zip(row, d)) >= 0 for row in M):
                    rays.append(d)
    return M, tuple(sorted(set(rays)))


def coset_feasible(L, u, free=(), radius=64):
    """Is there v in u + L with v_i >= 0 for every i outside `free`?

    Exact decision: the lineality of the feasibility region is factored out
    by a unimodular change of lattice coordinates; the remaining pointed
    polyhedron is enumerated inside the box spanned by its vertices plus its
    integral recession parallelepiped, coordinate intervals coming from
    Fourier-Motzkin.  If that box is wider than 2*radius in some coordinate
    the search is clipped and Inconclusive is raised on failure.
    """
    n = L.ambient_dim
    u = tuple(int(x) for x in u)
    free = frozenset(free)
    constrained = tuple(i for i in range(n) if i not in free)
    if not constrained:
        return True
    if all(u[i] >= 0 for i in constrained):
        return True
    if L.rank == 0:
        return False
    M, rays = _feasibility_frame(n, L.basis, constrained)
    rho = len(M[0]) if M else 0
    uc = [u[i] for i in constrained]
    if rho == 0:
        return all(x >= 0 for x in uc)
    # constraints: M y >= -uc
    rows = [(M[i], -uc[i]) for i in range(len(M))]
    verts = []
    for sub in combinations(range(len(M)), rho):
        T = [list(M[i]) for i in sub]
        x = solve_rational(T, [rows[i][1] for i in sub])
        if x is None or rank(T) < rho:
            continue
        if all(sum(Fraction(a) * b for a, b in zip(M[i], x)) >= rows[i][1] for i in range(len(M))):
            verts.append(tuple(x))
    if not verts:
        return False
    lo = [min(v[k] for v in verts) + sum(min(0, r[k]) for r in rays) for k in range(rho)]
    hi = [max(v[k] for v in verts) + sum(max(0, r[k]) for r in rays) for k in range(rho)]
    clipped = False
    box = []
    for k in range(rho):
        a, b = _ceil(Fraction(lo[k])), _floor(Fraction(hi[k]))
        if b - a > 2 * radius:
            mid = _floor(Fraction(verts[0][k]))
            a, b = max(a, mid - radius), min(b, mid + radius)
            clipped = True
        box.append((a, b))
    found = _search(rows, box, rho, [])
    if found:
        return True
    if clipped:
        raise Inconclusive(radius)
    return False


def _search(rows, box, rho, fixed):
    k = len(fixed)
    if k == rho:
        return all(sum(a * b for a, b in zip(c, fixed)) >= b0 for c, b0 in rows)
    # substitute the fixed coordinates, keep the box as extra constraints
    sub = []
    for c, b0 in rows:
        rest = sum(c[j] * fixed[j] for j in range(k))
        sub.append((tuple(c[k:]), b0 - rest))
    m = rho - k
    for j in range(m):
        e = tuple(int(i == j) for i in range(m))
        sub.append((e, box[k + j][0]))
        sub.append((tuple(-x for x in e), -box[k + j][1]))
    lo, hi = _interval(sub, 0, m)
    a = box[k][0] if lo is None else max(box[k][0], _ceil(Fraction(lo)))
    b = box[k][1] if hi is None else min(box[k][1], _floor(Fraction(hi)))
    for val in range(a, b + 1):
        if _search(rows, box, rho, fixed + [val]):
            return True
    return False


def feasible_with_radius(L, u, free=(), radius=64, escalations=2):
    """coset_feasible with the standard x4 radius escalation."""
    r = radius
    for attempt in range(escalations + 1):
        try:
            return coset_feasible(L, u, free, r)
        except Inconclusive:
            if attempt == escalations:
                raise
            r *= 4


def restricted_coset(L, u, zero):
    """Sublattice {l in L : l_i = 0 for i in zero} and a point of u + L with
    zeros there.  Returns None when no such point exists."""
    n = L.ambient_dim
    zero = sorted(set(zero))
    if not zero:
        return L, tuple(u)
    if L.rank == 0:
        return (L, tuple(u)) if all(u[i] == 0 for i in zero) else None
    B = columns_to_matrix(L.basis, n)
    BZ = [B[i] for i in zero]
    rhs = tuple(-u[i] for i in zero)
    z, ker = solve_integer(BZ, rhs)
    if z is None:
        return None
    v = tuple(u[i] + sum(B[i][j] * z[j] for j in range(L.rank)) for i in range(n))
    sub = [tuple(sum(B[i][j] * k[j] for j in range(L.rank)) for i in range(n)) for k in ker]
    return Lattice(n, tuple(sub)), v


# ------------------------------------------------------------ lattice data

@dataclass(frozen=True)
class LatticeData:
    """Everything about k[x]/I_L needed downstream: L, L_sat, T, A."""
    lattice: Lattice
    sat: Lattice
    torsion: TorsionGroup
    A: tuple  # rows
    character: PartialCharacter | None = None

    @property
    def n(self):
        return self.lattice.ambient_dim

    @property
    def d(self):
        return len(self.A)

    @classmethod
    def from_generators(cls, gens, n, A=None, character=None):
        L = Lattice.from_generators(gens, n)
        sat, T = saturate(L)
        if A is None:
            A = grading_matrix(sat, n)
        else:
            A = [list(map(int, r)) for r in A]
            check_grading(A, sat, n)
        return cls(L, sat, T, tuple(tuple(r) for r in A), character)

    @classmethod
    def from_matrix(cls, A):
        """Toric data k[NA] = k[x]/I_A for an integer matrix A of full row rank."""
        A = [list(map(int, r)) for r in A]
        if rank(A) != len(A):
            raise ValueError("grading matrix must have full row rank")
        L = kernel_lattice(A)
        return cls(L, L, TorsionGroup((), ((0,) * len(A[0]),)), tuple(tuple(r) for r in A))

    def degree(self, u):
        return torsion_and_degree(self.lattice, self.torsion, [list(r) for r in self.A], u)

    def preimage(self, t, a):
        """Some u in Z^n with degree (t, a), or None if a is not in ZA."""
        u0, _ = solve_integer([list(r) for r in self.A], tuple(a))
        if u0 is None:
            return None
        if not self.torsion.invariant_factors:
            return tuple(u0)
        t0, _ = self.degree(u0)
        shift = self.torsion.add(tuple(t), self.torsion.neg(t0))
        rep = self.torsion.representatives[self.torsion.elements().index(shift)]
        return tuple(x + y for x, y in zip(u0, rep))


def check_grading(A, sat, n):
    if any(len(r) != n for r in A):
        raise ValueError("grading matrix has wrong column count")
    for b in sat.basis:
        if any(matvec(A, b)):
            raise ValueError("grading matrix does not vanish on the saturated lattice")
    if rank(A) + sat.rank != n or rank(A) != len(A):
        raise ValueError("grading matrix rank does not match the lattice")
