"""Exact rational linear algebra: matrices, multilinear coefficient tensors,
rank / kernel / solve over Fraction entries.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely.  No floats anywhere: ranks and kernels are
exact, which the cohomology dimensions downstream depend on.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rat",
    "parse_rational",
    "render_rational",
    "Vector",
    "vec",
    "zero_vector",
    "basis_vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_is_zero",
    "Matrix",
    "MultiMap",
    "LinAlgError",
]


class LinAlgError(ValueError):
    """Shape mismatch or malformed input to a linear-algebra operation."""


def parse_rational(value) -> Fraction:
    """Parse a JSON-style rational: a bare int or a string like "-3/2"."""
    if isinstance(value, bool):
        raise LinAlgError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise LinAlgError(f"unparseable rational {value!r}: {exc}") from None
    raise LinAlgError(f"not a rational: {value!r}")


def render_rational(q: Fraction) -> Union[int, str]:
    """Inverse of parse_rational: ints stay ints, proper fractions render "p/q"."""
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# vectors: plain tuples of Fractions
# ---------------------------------------------------------------------------

Vector = tuple  # tuple of Fraction


def vec(entries: Iterable[Scalar]) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def basis_vector(i: int, n: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise LinAlgError(f"vector length mismatch: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise LinAlgError(f"vector length mismatch: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, u: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)


def vec_is_zero(u: Vector) -> bool:
    return all(a == 0 for a in u)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Dense rows x cols matrix of Fractions, row-major, immutable."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Scalar]):
        if rows < 0 or cols < 0:
            raise LinAlgError("negative matrix dimension")
        data = tuple(Fraction(x) for x in data)
        if len(data) != rows * cols:
            raise LinAlgError(
                f"matrix data length {len(data)} != {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "Matrix":
        nrows = len(rows)
        if nrows == 0:
            return Matrix(0, 0 if cols is None else cols, ())
        ncols = len(rows[0]) if cols is None else cols
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise LinAlgError("ragged rows")
            flat.extend(r)
        return Matrix(nrows, ncols, flat)

    @staticmethod
    def from_cols(cols: Sequence[Sequence[Scalar]], rows: Optional[int] = None) -> "Matrix":
        ncols = len(cols)
        if ncols == 0:
            return Matrix(0 if rows is None else rows, 0, ())
        nrows = len(cols[0]) if rows is None else rows
        return Matrix(nrows, ncols,
                      [cols[j][i] for i in range(nrows) for j in range(ncols)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [0] * (rows * cols))

    # -- access ----------------------------------------------------------------

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.data[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    # -- algebra ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.data])

    def scale(self, c: Scalar) -> "Matrix":
        c = Fraction(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinAlgError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.data[k * other.cols + j]
                                for k in range(self.cols)), Fraction(0)))
        return Matrix(self.rows, other.cols, out)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise LinAlgError(f"matrix {self.rows}x{self.cols} applied to length-{len(v)} vector")
        return tuple(sum((self.row(i)[k] * v[k] for k in range(self.cols)), Fraction(0))
                     for i in range(self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [self.data[i * self.cols + j]
                       for j in range(self.cols) for i in range(self.rows)])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise LinAlgError("power of non-square matrix")
        if k < 0:
            raise LinAlgError("negative matrix power")
        acc = Matrix.identity(self.rows)
        for _ in range(k):
            acc = acc @ self
        return acc

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise LinAlgError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # -- elimination -------------------------------------------------------------

    def _echelon(self):
        """Row echelon form by exact Gaussian elimination.

        Returns (rows, pivot_cols) where rows is a list of reduced row lists.
        """
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = None
            for i in range(r, self.rows):
                if m[i][c] != 0:
                    pivot = i
                    break
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            pr = m[r]
            inv = 1 / pr[c]
            for j in range(c, self.cols):
                pr[j] *= inv
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    row_i = m[i]
                    for j in range(c, self.cols):
                        row_i[j] -= f * pr[j]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        _, pivots = self._echelon()
        return len(pivots)

    def kernel_basis(self) -> list:
        """Basis of the right kernel {v : self @ v = 0}, as a list of vectors.

        Size is always cols - rank; each vector satisfies M v = 0 exactly.
        """
        m, pivots = self._echelon()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            # pivot rows are normalized to 1 and pivot columns are cleared,
            # so each pivot variable reads off directly
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Vector) -> Optional[Vector]:
        """Some exact solution x of self @ x = b, or None if inconsistent."""
        if len(b) != self.rows:
            raise LinAlgError(f"rhs length {len(b)} != rows {self.rows}")
        aug = Matrix(self.rows, self.cols + 1,
                     [x for i in range(self.rows)
                      for x in (*self.row(i), b[i])])
        m, pivots = aug._echelon()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return tuple(x)

    def inverse(self) -> Optional["Matrix"]:
        """Exact inverse, or None when the matrix is singular or non-square."""
        if not self.is_square():
            return None
        n = self.rows
        aug = Matrix(n, 2 * n,
                     [x for i in range(n)
                      for x in (*self.row(i),
                                *(Fraction(1 if i == j else 0) for j in range(n)))])
        m, pivots = aug._echelon()
        if pivots != list(range(n)):
            return None
        return Matrix(n, n, [m[i][n + j] for i in range(n) for j in range(n)])

    def __repr__(self):
        rows = "; ".join(
            " ".join(str(render_rational(x)) for x in self.row(i))
            for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {rows})"


# ---------------------------------------------------------------------------
# dense coefficient tensors of multilinear maps V^(x)n -> V
# ---------------------------------------------------------------------------

class MultiMap:
    """Multilinear map V^(x)arity -> V on a dim-d space, stored densely.

    Entries are indexed by (i_1, ..., i_arity, k): the e_k-coefficient of the
    image of the basis tuple (e_{i_1}, ..., e_{i_arity}).  Arity 0 is allowed
    and is just a vector (a constant).
    """

    __slots__ = ("arity", "dim", "data")

    def __init__(self, arity: int, dim: int, data: Sequence[Scalar]):
        if arity < 0 or dim < 0:
            raise LinAlgError("negative arity or dimension")
        data = tuple(Fraction(x) for x in data)
        if len(data) != dim ** (arity + 1):
            raise LinAlgError(
                f"tensor data length {len(data)} != {dim}^{arity + 1}")
        self.arity = arity
        self.dim = dim
        self.data = data

    @staticmethod
    def zero(arity: int, dim: int) -> "MultiMap":
        return MultiMap(arity, dim, [0] * dim ** (arity + 1))

    @staticmethod
    def from_function(arity: int, dim: int, fn) -> "MultiMap":
        """Build from fn(basis index tuple) -> image vector of length dim."""
        data = []
        for idx in itertools.product(range(dim), repeat=arity):
            img = fn(idx)
            if len(img) != dim:
                raise LinAlgError("image vector has wrong length")
            data.extend(img)
        return MultiMap(arity, dim, data)

    @staticmethod
    def from_matrix(m: Matrix) -> "MultiMap":
        if not m.is_square():
            raise LinAlgError("only square matrices embed as arity-1 maps")
        return MultiMap.from_function(1, m.rows, lambda idx: m.col(idx[0]))

    @staticmethod
    def constant(v: Vector) -> "MultiMap":
        return MultiMap(0, len(v), v)

    def _offset(self, idx) -> int:
        off = 0
        for i in idx:
            if not 0 <= i < self.dim:
                raise IndexError(idx)
            off = off * self.dim + i
        return off * self.dim

    def value(self, idx: Sequence[int]) -> Vector:
        """Image of a basis tuple, as a coefficient vector."""
        if len(idx) != self.arity:
            raise LinAlgError(f"expected {self.arity} indices, got {len(idx)}")
        off = self._offset(idx)
        return self.data[off:off + self.dim]

    def coeff(self, idx: Sequence[int], k: int) -> Fraction:
        return self.value(idx)[k]

    def evaluate(self, *args: Vector) -> Vector:
        """Multilinear extension to arbitrary coefficient vectors."""
        if len(args) != self.arity:
            raise LinAlgError(f"expected {self.arity} arguments, got {len(args)}")
        for a in args:
            if len(a) != self.dim:
                raise LinAlgError("argument has wrong dimension")
        out = [Fraction(0)] * self.dim
        for idx in itertools.product(range(self.dim), repeat=self.arity):
            c = Fraction(1)
            for a, i in zip(args, idx):
                c *= a[i]
                if c == 0:
                    break
            if c == 0:
                continue
            val = self.value(idx)
            for k in range(self.dim):
                if val[k]:
                    out[k] += c * val[k]
        return tuple(out)

    def as_matrix(self) -> Matrix:
        if self.arity != 1:
            raise LinAlgError("only arity-1 maps convert to matrices")
        return Matrix.from_cols([self.value((j,)) for j in range(self.dim)],
                                rows=self.dim)

    # -- linear structure --------------------------------------------------------

    def _same_shape(self, other: "MultiMap"):
        if self.arity != other.arity or self.dim != other.dim:
            raise LinAlgError(
                f"tensor shape mismatch: arity {self.arity}/dim {self.dim}"
                f" vs arity {other.arity}/dim {other.dim}")

    def __add__(self, other: "MultiMap") -> "MultiMap":
        self._same_shape(other)
        return MultiMap(self.arity, self.dim,
                        [a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "MultiMap") -> "MultiMap":
        self._same_shape(other)
        return MultiMap(self.arity, self.dim,
                        [a - b for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "MultiMap":
        return MultiMap(self.arity, self.dim, [-a for a in self.data])

    def scale(self, c: Scalar) -> "MultiMap":
        c = Fraction(c)
        return MultiMap(self.arity, self.dim, [c * a for a in self.data])

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiMap) and self.arity == other.arity
                and self.dim == other.dim and self.data == other.data)

    def __hash__(self):
        return hash((self.arity, self.dim, self.data))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.data)

    def permute_inputs(self, perm: Sequence[int]) -> "MultiMap":
        """Pull back along a permutation: result(x_1..x_n) = self(x_{perm[0]+1}, ...).

        perm is 0-based: perm[slot] tells which input of the result feeds
        that slot of self.
        """
        if sorted(perm) != list(range(self.arity)):
            raise LinAlgError(f"not a permutation of {self.arity} inputs: {perm}")
        def fn(idx):
            return self.value(tuple(idx[p] for p in perm))
        return MultiMap.from_function(self.arity, self.dim, fn)

    def __repr__(self):
        nz = sum(1 for a in self.data if a != 0)
        return f"MultiMap(arity={self.arity}, dim={self.dim}, nonzeros={nz})"
