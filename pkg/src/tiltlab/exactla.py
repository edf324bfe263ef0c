"""Exact linear algebra over the rationals.

Every Hom-space, kernel, cokernel and quotient in the package is computed
here.  Matrices act on column vectors; subspaces are stored as row spaces in
reduced row-echelon form so that equality of subspaces is equality of their
canonical bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in entries)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence[Fraction]) -> Vector:
    c = as_fraction(c)
    return tuple(c * a for a in v)


def vcomb(coeffs: Sequence, vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    """Linear combination sum(c_i * v_i) of length-n vectors."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return not any(v)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionError(f"entry count does not match {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Matrix:
        columns = [vec(c) for c in columns]
        data = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls(rows, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, tuple(zero_vec(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(unit_vec(n, i) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> Matrix:
        return Matrix(self.cols, self.rows,
                      tuple(tuple(r[j] for r in self.data) for j in range(self.cols)))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        orows = [[(j, y) for j, y in enumerate(row) if y] for row in other.data]
        data = []
        for r in self.data:
            acc = [ZERO] * other.cols
            for k, x in enumerate(r):
                if x:
                    for j, y in orows[k]:
                        acc[j] += x * y
            data.append(tuple(acc))
        return Matrix(self.rows, other.cols, tuple(data))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        nz = [(k, x) for k, x in enumerate(v) if x]
        return tuple(sum((x * r[k] for k, x in nz), ZERO) for r in self.data)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols,
                      tuple(vadd(a, b) for a, b in zip(self.data, other.data)))

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols,
                      tuple(vsub(a, b) for a, b in zip(self.data, other.data)))

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(vscale(c, r) for r in self.data))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def flatten(self) -> Vector:
        return tuple(x for r in self.data for x in r)

    @classmethod
    def unflatten(cls, v: Sequence[Fraction], rows: int, cols: int) -> Matrix:
        v = vec(v)
        return cls(rows, cols, tuple(v[i * cols:(i + 1) * cols] for i in range(rows)))

    def hstack(self, other: Matrix) -> Matrix:
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return Matrix(self.rows, self.cols + other.cols,
                      tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(len(rows), len(cols),
                      tuple(tuple(self.data[i][j] for j in cols) for i in rows))

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), ZERO)

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        reduced, pivots = rref_rows([list(r) for r in self.data], self.cols)
        return Matrix(len(reduced), self.cols, tuple(tuple(r) for r in reduced)), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> Subspace:
        return linear_solve(self).kernel

    def image(self) -> Subspace:
        return Subspace.span(self.columns(), self.rows)

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self.data)]
        reduced, pivots = rref_rows(aug, 2 * n)
        if pivots[:n] != tuple(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(n, n, tuple(tuple(r[n:]) for r in reduced[:n]))

    def power(self, k: int) -> Matrix:
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = []
    offset = 0
    for b in blocks:
        for r in b.data:
            data.append((ZERO,) * offset + r + (ZERO,) * (cols - offset - b.cols))
        offset += b.cols
    return Matrix(rows, cols, tuple(data))


def rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    """Gauss-Jordan elimination in place; returns nonzero rows and pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr[:] = [x * inv for x in pr]
        nz = [k for k in range(c, ncols) if pr[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in nz:
                        row[k] -= f * pr[k]
        pivots.append(c)
        r += 1
    return rows[:r], tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """Row space of `basis`, kept in reduced row-echelon form."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [list(vec(v)) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise DimensionError("spanning vector has the wrong length")
        reduced, _ = rref_rows(rows, ambient_dim)
        return cls(ambient_dim, Matrix(len(reduced), ambient_dim,
                                       tuple(tuple(r) for r in reduced)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, Matrix.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Matrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return self.basis.data

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(r) if x) for r in self.basis.data)

    def coords(self, v: Sequence[Fraction]) -> Vector | None:
        """Coordinates of v in the canonical basis, or None if v is not in the span."""
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        c = tuple(v[p] for p in self.pivots)
        rest = vsub(v, vcomb(c, self.basis.data, self.ambient_dim))
        return c if is_zero_vec(rest) else None

    def __contains__(self, v) -> bool:
        return self.coords(v) is not None

    def contains_space(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return all(v in self for v in other.vectors)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_calc(self, other, "sum")

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_calc(self, other, "intersection")

    def complement_in(self, ambient: Subspace) -> list[Vector]:
        """Vectors of `ambient` completing this subspace's basis to a basis of `ambient`."""
        current = self
        extra = []
        for v in ambient.vectors:
            if v not in current:
                extra.append(v)
                current = Subspace.span(current.vectors + (v,), self.ambient_dim)
        return extra

    def annihilator(self) -> Subspace:
        """Functionals vanishing on this subspace, as a subspace of the dual."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return self.basis.kernel()


@dataclass(frozen=True)
class QuotientCoords:
    """Coordinate map on u whose kernel is exactly v.

    `matrix` is (dim u - dim v) x ambient and is applied to column vectors;
    `lifts` holds one representative in u for each coordinate.
    """

    matrix: Matrix
    lifts: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return self.matrix.rows

    def __call__(self, x: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(vec(x))

    def lift(self, c: Sequence[Fraction]) -> Vector:
        return vcomb(c, self.lifts, self.matrix.cols)


@dataclass(frozen=True)
class SolveResult:
    particular: Vector | None
    kernel: Subspace
    rank: int


def linear_solve(a: Matrix, b: Sequence | None = None) -> SolveResult:
    """Solve a.x = b exactly; the kernel is always returned."""
    if b is not None:
        b = vec(b)
        if len(b) != a.rows:
            raise DimensionError(f"right-hand side of length {len(b)} for {a.rows} rows")
    n = a.cols
    rows = [list(r) + ([b[i]] if b is not None else []) for i, r in enumerate(a.data)]
    reduced, pivots = rref_rows(rows, n + (1 if b is not None else 0))
    particular = None
    if b is not None:
        if n in pivots:
            pivots = pivots[:-1]
            reduced = reduced[:-1]
        else:
            x = [ZERO] * n
            for r, p in zip(reduced, pivots):
                x[p] = r[n]
            particular = tuple(x)
    free = [c for c in range(n) if c not in set(pivots)]
    kernel_vectors = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r, p in zip(reduced, pivots):
            x[p] = -r[f]
        kernel_vectors.append(x)
    kernel = Subspace.span(kernel_vectors, n)
    assert len(pivots) + kernel.dim == n
    return SolveResult(particular, kernel, len(pivots))


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"ambient dimensions {u.ambient_dim} and {v.ambient_dim} differ")


def subspace_calc(u: Subspace, v: Subspace, mode: str):
    """Sum, intersection, or quotient coordinates u/v of two subspaces."""
    _check_ambient(u, v)
    n = u.ambient_dim
    if mode == "sum":
        return Subspace.span(u.vectors + v.vectors, n)
    if mode == "intersection":
        if u.dim == 0 or v.dim == 0:
            return Subspace.zero(n)
        # x = a.U = b.V  <=>  [U^T | -V^T] (a; b) = 0
        stacked = Matrix.from_columns(list(u.vectors) + [vscale(-1, w) for w in v.vectors], n)
        sol = stacked.kernel()
        return Subspace.span((vcomb(k[:u.dim], u.vectors, n) for k in sol.vectors), n)
    if mode == "quotient_coords":
        if not u.contains_space(v):
            raise ContainmentError("quotient requires v to be contained in u")
        comp = v.complement_in(u)
        rest = u.complement_in(Subspace.full(n))
        # change of basis W with rows [comp; v; rest]; coordinates of x are x.W^{-1}
        w = Matrix.from_rows(comp + list(v.vectors) + rest, n) if n else Matrix.zeros(0, 0)
        winv = w.inverse() if n else w
        k = len(comp)
        coords = Matrix(k, n, tuple(tuple(winv.data[i][j] for i in range(n)) for j in range(k)))
        return QuotientCoords(coords, tuple(comp))
    raise ValueError(f"unknown mode {mode!r}")
