"""Exact integer linear algebra on small lattices.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
everything is arbitrary precision and hashable.  Sublattices are stored by a
column-style Hermite normal form, which makes equality of subgroups a plain
tuple comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

IntVec = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[int, ...], ...], row major


# ---------------------------------------------------------------------------
# small vector / matrix helpers
# ---------------------------------------------------------------------------

def vec(coords: Iterable[int]) -> IntVec:
    return tuple(int(c) for c in coords)


def vadd(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: int, v: Sequence[int]) -> IntVec:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def cross(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def is_zero(v: Sequence[int]) -> bool:
    return not any(v)


def content(v: Sequence[int]) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    return reduce(math.gcd, (abs(c) for c in v), 0)


def is_primitive(v: Sequence[int]) -> bool:
    """True iff the coordinates of the nonzero vector ``v`` are coprime."""
    if is_zero(v):
        raise DomainError("the zero vector is neither primitive nor imprimitive")
    return content(v) == 1


def primitive_part(v: Sequence[int]) -> IntVec:
    c = content(v)
    if c == 0:
        raise DomainError("zero vector has no primitive part")
    return tuple(a // c for a in v)


def canonical_direction(v: Sequence[int]) -> IntVec:
    """Primitive part of ``v`` with its first nonzero coordinate positive."""
    w = primitive_part(v)
    for a in w:
        if a:
            return w if a > 0 else tuple(-b for b in w)
    raise AssertionError("unreachable")


def parallel(u: Sequence[int], v: Sequence[int]) -> bool:
    """Linear dependence of two vectors of the same dimension."""
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in a)


def column(m: Sequence[Sequence[int]], j: int) -> IntVec:
    return tuple(row[j] for row in m)


def from_columns(cols: Sequence[Sequence[int]]) -> Matrix:
    return transpose(cols)


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of a list of integer vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors if any(v)]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_rational(m: Sequence[Sequence[int]], b: Sequence) -> tuple | None:
    """Solve ``m x = b`` exactly for square invertible ``m``; None if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(m, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def inverse_unimodular(m: Sequence[Sequence[int]]) -> Matrix:
    """Integer inverse of a matrix with determinant +-1."""
    n = len(m)
    if abs(det(m)) != 1:
        raise DomainError("matrix is not unimodular")
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = solve_rational(m, e)
        cols.append(tuple(int(c) for c in x))
    return from_columns(cols)


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return len(m) > 0 and all(len(r) == len(m) for r in m) and abs(det(m)) == 1


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``D = U M V`` diagonal, ``d1 | d2 | ...``, ``di >= 0``.

    ``U`` and ``V`` are unimodular.  Works for any rectangular integer matrix.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if a[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return (tuple(map(tuple, u)), tuple(map(tuple, a)), tuple(map(tuple, v)))


def kernel_basis(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[IntVec]:
    """Basis of the integer null space ``{x in Z^n : M x = 0}`` (saturated)."""
    if not m:
        n = ncols or 0
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    _, d, v = smith_normal_form(m)
    n = len(m[0])
    r = sum(1 for i in range(min(len(d), n)) if d[i][i] != 0)
    return [column(v, j) for j in range(r, n)]


# ---------------------------------------------------------------------------
# Sublattices in Hermite normal form
# ---------------------------------------------------------------------------

def _column_hnf(vectors: Iterable[Sequence[int]], n: int) -> tuple[IntVec, ...]:
    """Column-style echelon Hermite form of the group generated by ``vectors``.

    Pivot rows strictly increase; each pivot is positive; entries of earlier
    columns in a later pivot row lie in ``[0, pivot)``.
    """
    remaining = [list(map(int, v)) for v in vectors if any(v)]
    basis: list[list[int]] = []
    pivot_rows: list[int] = []
    for r in range(n):
        while True:
            nz = [c for c in remaining if c[r] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda c: abs(c[r]))
            for c in nz:
                if c is not piv:
                    q = c[r] // piv[r]
                    for k in range(n):
                        c[k] -= q * piv[k]
        nz = [c for c in remaining if c[r] != 0]
        if nz:
            piv = nz[0]
            remaining = [c for c in remaining if c is not piv]
            if piv[r] < 0:
                piv = [-x for x in piv]
            for b in basis:
                q = b[r] // piv[r]
                if q:
                    for k in range(n):
                        b[k] -= q * piv[k]
            basis.append(piv)
            pivot_rows.append(r)
        remaining = [c for c in remaining if any(c)]
    return tuple(tuple(b) for b in basis)


@dataclass(frozen=True)
class Sublattice:
    """A subgroup of ``Z^n`` given by its Hermite basis (columns)."""

    ambient_dim: int
    basis: tuple  # tuple of IntVec columns, in Hermite normal form

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], dim: int | None = None) -> "Sublattice":
        vectors = [tuple(map(int, v)) for v in vectors]
        if dim is None:
            if not vectors:
                raise DomainError("cannot infer dimension of an empty generating set")
            dim = len(vectors[0])
        if any(len(v) != dim for v in vectors):
            raise DomainError("generators have inconsistent dimension")
        return cls(dim, _column_hnf(vectors, dim))

    @classmethod
    def full(cls, dim: int) -> "Sublattice":
        return cls.span(identity(dim), dim)

    @classmethod
    def diagonal(cls, *entries: int) -> "Sublattice":
        n = len(entries)
        return cls.span([tuple(e if i == j else 0 for i in range(n))
                         for j, e in enumerate(entries)], n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)

    def matrix(self) -> Matrix:
        """``ambient_dim x rank`` matrix whose columns are the basis."""
        return from_columns(self.basis) if self.basis else ()

    @property
    def index(self) -> int:
        if not self.is_full_rank:
            raise DomainError("index is only finite for full-rank sublattices")
        return math.prod(b[i] for b, i in zip(self.basis, self.pivots))

    def contains(self, v: Sequence[int]) -> bool:
        w = list(map(int, v))
        for b, r in zip(self.basis, self.pivots):
            if any(w[:r]):
                return False
            if w[r] % b[r]:
                return False
            q = w[r] // b[r]
            w = [x - q * y for x, y in zip(w, b)]
        return not any(w)

    def coordinates(self, v: Sequence[int]) -> IntVec | None:
        """Integer coefficients of ``v`` in the Hermite basis, or None if ``v`` is not in L."""
        w = list(map(int, v))
        coeffs = []
        for b, r in zip(self.basis, self.pivots):
            if any(w[:r]) or w[r] % b[r]:
                return None
            q = w[r] // b[r]
            coeffs.append(q)
            w = [x - q * y for x, y in zip(w, b)]
        return tuple(coeffs) if not any(w) else None

    def contains_lattice(self, other: "Sublattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def reduce(self, v: Sequence[int]) -> IntVec:
        """Canonical representative of ``v + L`` in the Hermite box."""
        return reduce_mod_lattice(v, self)

    def coset_representatives(self) -> list[IntVec]:
        """All points of the box ``prod [0, h_ii)``, one per class of ``Z^n / L``."""
        if not self.is_full_rank:
            raise DomainError("only full-rank sublattices have finitely many cosets")
        diag = [b[i] for b, i in zip(self.basis, self.pivots)]
        return [tuple(p) for p in itertools.product(*(range(d) for d in diag))]

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return Sublattice.span(self.basis + other.basis, self.ambient_dim)


def reduce_mod_lattice(v: Sequence[int], lattice: Sublattice) -> IntVec:
    """Canonical representative of ``v`` modulo a full-rank sublattice.

    With a lower-triangular Hermite basis, clearing coordinates top to bottom
    lands in the box ``0 <= x_i < h_ii``; the result is idempotent and differs
    from ``v`` by a lattice vector.
    """
    if not lattice.is_full_rank:
        raise DomainError("reduction needs a full-rank lattice")
    w = list(map(int, v))
    if len(w) != lattice.ambient_dim:
        raise DomainError("dimension mismatch")
    for b, r in zip(lattice.basis, lattice.pivots):
        q = w[r] // b[r]
        if q:
            w = [x - q * y for x, y in zip(w, b)]
    return tuple(w)


def _ordered_factorizations(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for d in range(1, n + 1):
        if n % d == 0:
            for rest in _ordered_factorizations(n // d, parts - 1):
                yield (d,) + rest


def enumerate_hnf(dim: int, index: int) -> list[Sublattice]:
    """Every full-rank sublattice of ``Z^dim`` with the given index.

    Order: diagonal lattices first (fewest nonzero off-diagonal entries), then
    lexicographic on the diagonal, then on the off-diagonal entries.
    """
    out = []
    for diag in _ordered_factorizations(index, dim):
        slots = [(i, j) for i in range(dim) for j in range(i)]
        for off in itertools.product(*(range(diag[i]) for i, _ in slots)):
            h = [[0] * dim for _ in range(dim)]
            for i in range(dim):
                h[i][i] = diag[i]
            for (i, j), x in zip(slots, off):
                h[i][j] = x
            cols = tuple(column(h, j) for j in range(dim))
            key = (sum(1 for x in off if x), diag, off)
            out.append((key, Sublattice(dim, cols)))
    out.sort(key=lambda kv: kv[0])
    return [lat for _, lat in out]


# ---------------------------------------------------------------------------
# unimodular transformations
# ---------------------------------------------------------------------------

def complete_to_basis(a: Sequence[int]) -> Matrix:
    """Unimodular ``T`` whose last column is the primitive vector ``a``.

    The quotient ``Z^n / Za`` is free, so a basis of it lifted to ``Z^n`` and
    followed by ``a`` is a basis of ``Z^n``; Smith form supplies the lift.
    """
    a = vec(a)
    if not is_primitive(a):
        raise DomainError(f"{a} is not primitive")
    n = len(a)
    e_last = tuple(int(i == n - 1) for i in range(n))
    if a == e_last:
        return identity(n)
    u, d, v = smith_normal_form(tuple((x,) for x in a))
    # U a = d1 e1 * V^-1 with d1 = 1, so the first column of U^-1 is +-a.
    w = inverse_unimodular(u)
    sign = v[0][0]
    first = tuple(sign * x for x in column(w, 0))
    assert first == a
    cols = [column(w, j) for j in range(1, n)] + [a]
    t = from_columns(cols)
    assert abs(det(t)) == 1
    return t


def flatten_subgroup(lattice: Sublattice) -> Matrix:
    """Unimodular ``T`` with ``T(L)`` inside ``Z^k x {0}``, ``k = rank(L)``."""
    k = lattice.rank
    n = lattice.ambient_dim
    if k == 0:
        raise DomainError("cannot flatten the zero subgroup")
    if all(not any(b[k:]) for b in lattice.basis):
        return identity(n)
    u, _, _ = smith_normal_form(lattice.matrix())
    return u


def apply(t: Sequence[Sequence[int]], points: Iterable[Sequence[int]]) -> list[IntVec]:
    return [mat_vec(t, p) for p in points]
