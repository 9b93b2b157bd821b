"""Exact integer and rational linear algebra.

All computations use Python ints and fractions.Fraction, so nothing here
rounds.  The main objects are lattices (subgroups of Z^n) kept in a
canonical column Hermite basis, affine lattices (cosets) with canonical
base points, finite unions of affine lattices, and rational-span
utilities: reduced column echelon form, minimal polynomials, and cyclic
invariant subspaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]


def add_vec(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub_vec(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def neg_vec(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def scale_vec(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def zero_vec(n: int) -> IntVec:
    return (0,) * n


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def rat_vec(u: Sequence) -> RatVec:
    return tuple(Fraction(a) for a in u)


def is_integral_vec(u: Sequence[Fraction]) -> bool:
    return all(a.denominator == 1 for a in u)


def int_vec(u: Sequence[Fraction]) -> IntVec:
    if not is_integral_vec(u):
        raise ValueError(f"vector is not integral: {u}")
    return tuple(int(a) for a in u)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) >= 0 and g == s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[IntVec, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("column count mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in row) for row in rows]
        if cols is None:
            if not rows:
                raise ValueError("need explicit column count for an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        columns = [tuple(int(x) for x in col) for col in columns]
        if rows is None:
            if not columns:
                raise ValueError("need explicit row count for an empty column list")
            rows = len(columns[0])
        entries = tuple(tuple(col[i] for col in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def column(self, j: int) -> IntVec:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[IntVec]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, tuple(self.columns()))

    def mul(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = other.transpose().entries
        prod = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, prod)

    def mul_vec(self, v: Sequence[int]) -> IntVec:
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)),
        )

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries))

    def rational(self) -> RatMatrix:
        return RatMatrix(
            self.rows, self.cols, tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


@dataclass(frozen=True)
class RatMatrix:
    """Immutable matrix over Fraction, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[RatVec, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("column count mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [tuple(Fraction(x) for x in row) for row in rows]
        if cols is None:
            if not rows:
                raise ValueError("need explicit column count for an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> RatMatrix:
        columns = [tuple(Fraction(x) for x in col) for col in columns]
        if rows is None:
            if not columns:
                raise ValueError("need explicit row count for an empty column list")
            rows = len(columns[0])
        entries = tuple(tuple(col[i] for col in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return IntMatrix.identity(n).rational()

    def column(self, j: int) -> RatVec:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[RatVec]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows, tuple(self.columns()))

    def mul(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = other.transpose().entries
        prod = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries
        )
        return RatMatrix(self.rows, other.cols, prod)

    def mul_vec(self, v: Sequence) -> RatVec:
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.entries)

    def hstack(self, other: RatMatrix) -> RatMatrix:
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return RatMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)),
        )

    def scale(self, c) -> RatMatrix:
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries))

    def clear_denominators(self) -> tuple[int, IntMatrix]:
        """Return (d, d*self) with d the least common denominator."""
        d = 1
        for row in self.entries:
            for x in row:
                d = math.lcm(d, x.denominator)
        scaled = tuple(tuple(int(x * d) for x in row) for row in self.entries)
        return d, IntMatrix(self.rows, self.cols, scaled)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def integral(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols, tuple(tuple(int(x) for x in row) for row in self.entries))


def column_hnf_with_transform(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form: H = mat * U with U unimodular.

    Nonzero columns of H come first, their pivot rows strictly increase,
    pivots are positive, and in each pivot row the entries to the left of
    the pivot lie in [0, pivot).
    """
    m, n = mat.rows, mat.cols
    cols = [list(mat.column(j)) for j in range(n)]
    ucols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    c = 0
    for r in range(m):
        if c == n:
            break
        for j in range(c + 1, n):
            if cols[j][r] == 0:
                continue
            a, b = cols[c][r], cols[j][r]
            g, s, t = xgcd(a, b)
            p, q = a // g, b // g
            # [[s, -q], [t, p]] has determinant s*p + t*q = 1
            for vecs in (cols, ucols):
                vc, vj = vecs[c], vecs[j]
                for i in range(len(vc)):
                    x, y = vc[i], vj[i]
                    vc[i] = s * x + t * y
                    vj[i] = p * y - q * x
        pivot = cols[c][r]
        if pivot == 0:
            continue
        if pivot < 0:
            cols[c] = [-x for x in cols[c]]
            ucols[c] = [-x for x in ucols[c]]
            pivot = -pivot
        for j in range(c):
            f = cols[j][r] // pivot
            if f:
                for i in range(m):
                    cols[j][i] -= f * cols[c][i]
                for i in range(n):
                    ucols[j][i] -= f * ucols[c][i]
        c += 1
    H = IntMatrix.from_columns(cols, rows=m)
    U = IntMatrix.from_columns(ucols, rows=n)
    return H, U


def integer_kernel(mat: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the integer kernel {x : mat @ x = 0}."""
    H, U = column_hnf_with_transform(mat)
    rank = sum(1 for j in range(H.cols) if not is_zero_vec(H.column(j)))
    return IntMatrix.from_columns([U.column(j) for j in range(rank, mat.cols)], rows=mat.cols)


def _first_nonzero(v: Sequence[int]) -> int:
    for i, x in enumerate(v):
        if x != 0:
            return i
    raise ValueError("zero column has no pivot")


@dataclass(frozen=True)
class Lattice:
    """Subgroup of Z^n in a canonical column Hermite basis.

    Equal subgroups compare and hash equal because the stored basis is
    canonical and has no zero columns.
    """

    ambient_dim: int
    basis: IntMatrix

    def __post_init__(self) -> None:
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis does not live in the ambient space")
        H, _ = column_hnf_with_transform(self.basis)
        nonzero = [H.column(j) for j in range(H.cols) if not is_zero_vec(H.column(j))]
        object.__setattr__(self, "basis", IntMatrix.from_columns(nonzero, rows=self.ambient_dim))

    @classmethod
    def full(cls, n: int) -> Lattice:
        return cls(n, IntMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> Lattice:
        return cls(n, IntMatrix.from_columns([], rows=n))

    @classmethod
    def from_generators(cls, n: int, generators: Sequence[Sequence[int]]) -> Lattice:
        return cls(n, IntMatrix.from_columns(generators, rows=n))

    @property
    def rank(self) -> int:
        return self.basis.cols

    @cached_property
    def _pivot_rows(self) -> tuple[int, ...]:
        return tuple(_first_nonzero(self.basis.column(j)) for j in range(self.basis.cols))

    def member_coords(self, v: Sequence[int]) -> IntVec | None:
        """Integer coordinates of v in the basis, or None if v is not a member."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector has wrong dimension")
        residual = list(v)
        coords = []
        for j in range(self.basis.cols):
            col = self.basis.column(j)
            r = self._pivot_rows[j]
            q, rem = divmod(residual[r], col[r])
            if rem:
                return None
            if q:
                for i in range(r, self.ambient_dim):
                    residual[i] -= q * col[i]
            coords.append(q)
        if any(residual):
            return None
        return tuple(coords)

    def contains(self, v: Sequence[int]) -> bool:
        return self.member_coords(v) is not None

    def contains_lattice(self, other: Lattice) -> bool:
        return all(self.contains(other.basis.column(j)) for j in range(other.basis.cols))

    def reduce_vector(self, v: Sequence[int]) -> IntVec:
        """Canonical representative of v + self; constant on cosets."""
        residual = list(v)
        for j in range(self.basis.cols):
            col = self.basis.column(j)
            r = self._pivot_rows[j]
            q = residual[r] // col[r]
            if q:
                for i in range(r, self.ambient_dim):
                    residual[i] -= q * col[i]
        return tuple(residual)

    def span(self) -> RatSubspace:
        return RatSubspace(self.ambient_dim, self.basis.rational())


def hermite_basis(n: int, generators: Sequence[Sequence[int]]) -> Lattice:
    return Lattice.from_generators(n, generators)


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Lattice(a.ambient_dim, a.basis.hstack(b.basis))


def intersect_lattices(a: Lattice, b: Lattice) -> Lattice:
    """Intersection, via the kernel of [basis_a | -basis_b]."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    stacked = a.basis.hstack(b.basis.scale(-1))
    kernel = integer_kernel(stacked)
    gens = []
    for j in range(kernel.cols):
        x = kernel.column(j)[: a.basis.cols]
        gens.append(a.basis.mul_vec(x))
    return Lattice.from_generators(a.ambient_dim, gens)


def saturate_lattice(lat: Lattice) -> Lattice:
    """Smallest lattice containing lat whose quotient in Z^n is torsion-free.

    Equivalently the integer points of the rational span of lat.
    """
    left_kernel = integer_kernel(lat.basis.transpose()).transpose()
    return Lattice(lat.ambient_dim, integer_kernel(left_kernel))


def image_lattice(map_matrix: RatMatrix, lat: Lattice) -> Lattice:
    """Image of lat under a rational map that is integer-valued on it."""
    if map_matrix.cols != lat.ambient_dim:
        raise ValueError("shape mismatch")
    gens = []
    for j in range(lat.basis.cols):
        img = map_matrix.mul_vec(lat.basis.column(j))
        gens.append(int_vec(img))
    return Lattice.from_generators(map_matrix.rows, gens)


def solve_linear_system_integer(mat: IntMatrix, rhs: Sequence[int]) -> AffineLattice | None:
    """All integer solutions x of mat @ x = rhs, or None if there are none."""
    if len(rhs) != mat.rows:
        raise ValueError("right-hand side has wrong dimension")
    H, U = column_hnf_with_transform(mat)
    rank = sum(1 for j in range(H.cols) if not is_zero_vec(H.column(j)))
    residual = list(rhs)
    y = [0] * mat.cols
    for j in range(rank):
        col = H.column(j)
        r = _first_nonzero(col)
        q, rem = divmod(residual[r], col[r])
        if rem:
            return None
        if q:
            for i in range(r, mat.rows):
                residual[i] -= q * col[i]
        y[j] = q
    if any(residual):
        return None
    base = U.mul_vec(y)
    kernel = IntMatrix.from_columns([U.column(j) for j in range(rank, mat.cols)], rows=mat.cols)
    return AffineLattice(base, Lattice(mat.cols, kernel))


@dataclass(frozen=True)
class AffineLattice:
    """Coset base + L of a lattice L <= Z^n, with a canonical base point."""

    base: IntVec
    lattice: Lattice

    def __post_init__(self) -> None:
        base = tuple(int(x) for x in self.base)
        if len(base) != self.lattice.ambient_dim:
            raise ValueError("base point has wrong dimension")
        object.__setattr__(self, "base", self.lattice.reduce_vector(base))

    @classmethod
    def full(cls, n: int) -> AffineLattice:
        return cls(zero_vec(n), Lattice.full(n))

    @classmethod
    def point(cls, v: Sequence[int]) -> AffineLattice:
        return cls(tuple(v), Lattice.zero(len(v)))

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def dim(self) -> int:
        return self.lattice.rank

    def contains(self, v: Sequence[int]) -> bool:
        return self.lattice.contains(sub_vec(v, self.base))

    def shift(self, v: Sequence[int]) -> AffineLattice:
        return AffineLattice(add_vec(self.base, v), self.lattice)

    def is_subset(self, other: AffineLattice) -> bool:
        return other.contains(self.base) and other.lattice.contains_lattice(self.lattice)


def intersect_affine(a: AffineLattice, b: AffineLattice) -> AffineLattice | None:
    """Intersection of two cosets; None when they are disjoint."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    stacked = a.lattice.basis.hstack(b.lattice.basis.scale(-1))
    sols = solve_linear_system_integer(stacked, sub_vec(b.base, a.base))
    if sols is None:
        return None
    na = a.lattice.basis.cols
    base = add_vec(a.base, a.lattice.basis.mul_vec(sols.base[:na]))
    gens = []
    kb = sols.lattice.basis
    for j in range(kb.cols):
        gens.append(a.lattice.basis.mul_vec(kb.column(j)[:na]))
    return AffineLattice(base, Lattice.from_generators(a.ambient_dim, gens))


def affine_preimage(const: Sequence, coeff: RatMatrix, target: Lattice) -> AffineLattice | None:
    """Integer vectors k with const + coeff @ k inside the target lattice.

    const and coeff may be rational; the target is an integer lattice in
    the codomain.  Returns None when no integer k works.
    """
    if coeff.rows != target.ambient_dim or len(const) != target.ambient_dim:
        raise ValueError("codomain dimension mismatch")
    aug = coeff.hstack(RatMatrix.from_columns([const], rows=coeff.rows))
    d, aug_int = aug.clear_denominators()
    coeff_int = IntMatrix.from_columns([aug_int.column(j) for j in range(coeff.cols)], rows=coeff.rows)
    const_int = aug_int.column(coeff.cols)
    stacked = coeff_int.hstack(target.basis.scale(-d))
    sols = solve_linear_system_integer(stacked, neg_vec(const_int))
    if sols is None:
        return None
    q = coeff.cols
    gens = [sols.lattice.basis.column(j)[:q] for j in range(sols.lattice.basis.cols)]
    return AffineLattice(sols.base[:q], Lattice.from_generators(q, gens))


@dataclass(frozen=True)
class AffineLatticeUnion:
    """Finite union of affine lattices in Z^n, canonically pruned and sorted."""

    ambient_dim: int
    parts: tuple[AffineLattice, ...]

    def __post_init__(self) -> None:
        parts = set(self.parts)
        for p in parts:
            if p.ambient_dim != self.ambient_dim:
                raise ValueError("part has wrong ambient dimension")
        kept = [
            p
            for p in parts
            if not any(q is not p and p.is_subset(q) and not q.is_subset(p) for q in parts)
        ]
        kept = sorted(set(kept), key=lambda p: (p.dim, p.base, p.lattice.basis.entries))
        object.__setattr__(self, "parts", tuple(kept))

    @classmethod
    def empty(cls, n: int) -> AffineLatticeUnion:
        return cls(n, ())

    @classmethod
    def everything(cls, n: int) -> AffineLatticeUnion:
        return cls(n, (AffineLattice.full(n),))

    @classmethod
    def single(cls, part: AffineLattice) -> AffineLatticeUnion:
        return cls(part.ambient_dim, (part,))

    def is_empty(self) -> bool:
        return not self.parts

    def contains(self, v: Sequence[int]) -> bool:
        return any(p.contains(v) for p in self.parts)

    def union(self, other: AffineLatticeUnion) -> AffineLatticeUnion:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return AffineLatticeUnion(self.ambient_dim, self.parts + other.parts)

    def intersect_part(self, a: AffineLattice) -> AffineLatticeUnion:
        hits = [x for p in self.parts if (x := intersect_affine(p, a)) is not None]
        return AffineLatticeUnion(self.ambient_dim, tuple(hits))

    def intersect(self, other: AffineLatticeUnion) -> AffineLatticeUnion:
        out: list[AffineLattice] = []
        for p in self.parts:
            for q in other.parts:
                x = intersect_affine(p, q)
                if x is not None:
                    out.append(x)
        return AffineLatticeUnion(self.ambient_dim, tuple(out))


def rat_solve(mat: RatMatrix, rhs: Sequence) -> RatVec | None:
    """One rational solution of mat @ x = rhs, or None."""
    m, n = mat.rows, mat.cols
    rows = [list(row) + [Fraction(b)] for row, b in zip(mat.entries, rhs, strict=True)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for pr, pc in pivots:
        x[pc] = rows[pr][n] - sum((rows[pr][c] * x[c] for c in range(pc + 1, n)), Fraction(0))
    # full reduction already cleared the other pivot columns, so back
    # substitution only sees free columns; verify to be safe
    if mat.mul_vec(x) != tuple(Fraction(b) for b in rhs):
        raise AssertionError("rational solve produced a bad solution")
    return tuple(x)


def rat_inverse(mat: RatMatrix) -> RatMatrix:
    if mat.rows != mat.cols:
        raise ValueError("only square matrices can be inverted")
    n = mat.rows
    cols = []
    for j in range(n):
        e = tuple(Fraction(int(i == j)) for i in range(n))
        x = rat_solve(mat, e)
        if x is None:
            raise ValueError("matrix is singular")
        cols.append(x)
    return RatMatrix.from_columns(cols, rows=n)


def left_inverse(mat: RatMatrix) -> RatMatrix:
    """Left inverse of a full-column-rank matrix: (A^T A)^-1 A^T."""
    At = mat.transpose()
    gram = At.mul(mat)
    try:
        return rat_inverse(gram).mul(At)
    except ValueError:
        raise ValueError("matrix does not have full column rank") from None


def rcef(mat: RatMatrix) -> RatMatrix:
    """Reduced column echelon form with zero columns dropped.

    Canonical basis of the column space: pivot rows strictly increase,
    pivots are 1, and every other entry in a pivot row is 0.
    """
    m, n = mat.rows, mat.cols
    cols = [list(mat.column(j)) for j in range(n)]
    c = 0
    for r in range(m):
        if c == n:
            break
        pj = next((j for j in range(c, n) if cols[j][r] != 0), None)
        if pj is None:
            continue
        cols[c], cols[pj] = cols[pj], cols[c]
        inv = 1 / cols[c][r]
        cols[c] = [x * inv for x in cols[c]]
        for j in range(n):
            if j != c and cols[j][r] != 0:
                f = cols[j][r]
                cols[j] = [x - f * y for x, y in zip(cols[j], cols[c])]
        c += 1
    return RatMatrix.from_columns(cols[:c], rows=m)


@dataclass(frozen=True)
class RatSubspace:
    """Rational subspace of Q^n in a canonical reduced-column-echelon basis."""

    ambient_dim: int
    basis: RatMatrix

    def __post_init__(self) -> None:
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis does not live in the ambient space")
        object.__setattr__(self, "basis", rcef(self.basis))

    @classmethod
    def full(cls, n: int) -> RatSubspace:
        return cls(n, RatMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> RatSubspace:
        return cls(n, RatMatrix.from_columns([], rows=n))

    @property
    def dim(self) -> int:
        return self.basis.cols

    @cached_property
    def _pivot_rows(self) -> tuple[int, ...]:
        return tuple(
            next(i for i in range(self.ambient_dim) if self.basis.entries[i][j] != 0)
            for j in range(self.basis.cols)
        )

    def coords(self, v: Sequence) -> RatVec | None:
        """Coordinates of v in the echelon basis, or None if v is outside."""
        v = tuple(Fraction(x) for x in v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector has wrong dimension")
        x = tuple(v[r] for r in self._pivot_rows)
        if self.basis.mul_vec(x) != v:
            return None
        return x

    def contains(self, v: Sequence) -> bool:
        return self.coords(v) is not None


def restriction_matrix(basis: RatMatrix, mat: RatMatrix) -> RatMatrix:
    """Matrix of mat on the subspace spanned by basis, in that basis.

    Requires the subspace to be invariant; raises ValueError otherwise.
    """
    cols = []
    for j in range(basis.cols):
        img = mat.mul_vec(basis.column(j))
        x = rat_solve(basis, img)
        if x is None:
            raise ValueError("subspace is not invariant under the map")
        cols.append(x)
    return RatMatrix.from_columns(cols, rows=basis.cols)


@dataclass(frozen=True)
class RatPolynomial:
    """Monic polynomial over Q, coefficients from degree 0 upward."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def eval_matrix(self, mat: RatMatrix) -> RatMatrix:
        if mat.rows != mat.cols:
            raise ValueError("polynomial evaluation needs a square matrix")
        acc = RatMatrix.identity(mat.rows).scale(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc.mul(mat)
            acc = RatMatrix(
                acc.rows,
                acc.cols,
                tuple(
                    tuple(x + (c if i == j else 0) for j, x in enumerate(row))
                    for i, row in enumerate(acc.entries)
                ),
            )
        return acc


def minimal_polynomial(mat: RatMatrix) -> RatPolynomial:
    """Minimal polynomial of a square rational matrix (1 for the 0x0 matrix)."""
    if mat.rows != mat.cols:
        raise ValueError("minimal polynomial needs a square matrix")
    n = mat.rows
    power = RatMatrix.identity(n)
    echelon: list[tuple[int, list[Fraction], list[Fraction]]] = []
    for k in range(n + 1):
        vec = [x for row in power.entries for x in row]
        combo = [Fraction(0)] * (n + 1)
        combo[k] = Fraction(1)
        for pivot, evec, ecombo in echelon:
            f = vec[pivot]
            if f != 0:
                vec = [x - f * y for x, y in zip(vec, evec)]
                combo = [x - f * y for x, y in zip(combo, ecombo)]
        pivot = next((i for i, x in enumerate(vec) if x != 0), None)
        if pivot is None:
            # combo gives the first dependency among I, M, ..., M^k
            lead = combo[k]
            return RatPolynomial(tuple(c / lead for c in combo[: k + 1]))
        inv = 1 / vec[pivot]
        echelon.append((pivot, [x * inv for x in vec], [x * inv for x in combo]))
        power = power.mul(mat)
    raise AssertionError("no dependency found up to the ambient dimension")


def smallest_invariant_subspace(mat: RatMatrix, v: Sequence) -> tuple[RatSubspace, RatMatrix]:
    """Smallest mat-invariant subspace containing v, with the restricted map.

    Returns (subspace, restriction) where the restriction is written in the
    cyclic basis v, mat v, mat^2 v, ...; for v = 0 both parts are trivial.
    """
    if mat.rows != mat.cols:
        raise ValueError("invariant subspaces need a square matrix")
    n = mat.rows
    v = tuple(Fraction(x) for x in v)
    basis_cols: list[RatVec] = []
    echelon: list[tuple[int, list[Fraction]]] = []
    cur = v
    while True:
        vec = list(cur)
        for pivot, evec in echelon:
            f = vec[pivot]
            if f != 0:
                vec = [x - f * y for x, y in zip(vec, evec)]
        pivot = next((i for i, x in enumerate(vec) if x != 0), None)
        if pivot is None:
            break
        inv = 1 / vec[pivot]
        echelon.append((pivot, [x * inv for x in vec]))
        basis_cols.append(cur)
        cur = mat.mul_vec(cur)
    cyclic = RatMatrix.from_columns(basis_cols, rows=n)
    return RatSubspace(n, cyclic), restriction_matrix(cyclic, mat)
