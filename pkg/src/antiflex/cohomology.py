"""The cochain complex of a Rota-Baxter operator and its cohomology.

The differential d_H is realized structurally: the operator induces an
algebra (M, star) together with actions (l_T, r_T) of M on A, and d_H is
(-1)^n times the bracket of the degree-1 element star + l_T + r_T with the
cochain, computed on the swapped sum space M + A.  The degree-0 case is

    d_H(a)(m) = T(m).a - T(r(a)m) - a.T(m) + T(l(a)m),

and d_T f = (-1)^n d_H f relates it to the derived-bracket differential.

The differential squares to zero exactly at degree 1 for every Rota-Baxter
operator; away from degree 1 that property can fail on noncommutative
anti-flexible data, so dimension reports verify the complex property
explicitly (and refuse to report sham quotients).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .algebra import Algebra
from .bimodule import Bimodule, induced_bimodule_on_base, lie_representation
from .glie import (Cochain, CochainSpace, embed_blocks, graded_bracket,
                   restrict_blocks, rb_differential, structure_element,
                   HARD_ARITY_CAP)
from .linalg import (LinAlgError, Matrix, Vector, basis_vector, vec_add,
                     vec_is_zero, vec_sub)
from .operators import is_rota_baxter, star_algebra
from .reports import CheckReport

__all__ = [
    "RBComplex",
    "ComplexReport",
    "ComplexError",
    "check_sign_relation",
    "h0_description_check",
    "one_cocycle_check",
    "skew_symmetrize",
    "ce_differential",
    "hochschild_module_differential",
    "hochschild_to_ce_morphism_check",
    "DEFAULT_MAX_DEGREE",
]

DEFAULT_MAX_DEGREE = 3


class ComplexError(ValueError):
    """The differential fails to square to zero at the requested degree."""


class RBComplex:
    """Cochains Hom(M^(x)n, A) with the Hochschild-style differential of the
    induced structure; built once per (algebra, bimodule, operator) triple."""

    def __init__(self, alg: Algebra, mod: Bimodule, op: Matrix):
        check = is_rota_baxter(alg, mod, op)
        if not check.ok:
            raise ValueError(f"operator is not Rota-Baxter: {check.describe()}")
        self.alg = alg
        self.mod = mod
        self.op = op
        self.space = CochainSpace(alg, mod)
        self.adim = alg.dim
        self.mdim = mod.mdim
        # induced algebra on M and its actions on A, assembled on M + A
        # (module block first) as the degree-1 structure element
        self.star = star_algebra(alg, mod, op, _checked=True)
        induced = induced_bimodule_on_base(alg, mod, op)
        self.induced = induced
        self.pi_swapped = structure_element(self.star.mul, induced.left,
                                            induced.right, alg.dim)
        self.total = self.mdim + self.adim
        self._matrices = {}

    def cochain(self, degree: int, data) -> Cochain:
        return Cochain(degree, self.mdim, self.adim, data)

    def zero_cochain(self, degree: int) -> Cochain:
        return Cochain.zero(degree, self.mdim, self.adim)

    def dim_cochains(self, degree: int) -> int:
        return self.mdim ** degree * self.adim

    def differential(self, f: Cochain, cap: Optional[int] = None) -> Cochain:
        """d_H f = (-1)^n [star + l_T + r_T, f] on the swapped space."""
        if f.mdim != self.mdim or f.adim != self.adim:
            raise LinAlgError("cochain does not match this complex")
        cap = HARD_ARITY_CAP if cap is None else cap
        embedded = embed_blocks(f, 0, self.mdim, self.total)
        br = graded_bracket(self.pi_swapped, embedded, cap)
        out, report = restrict_blocks(br, 0, self.mdim, self.mdim, self.adim)
        if not report.ok:
            raise ComplexError(f"differential left the cochain space: {report.describe()}")
        return out if f.degree % 2 == 0 else out.scale(-1)

    def derived_differential(self, f: Cochain, cap: Optional[int] = None) -> Cochain:
        """d_T f = [[T, f]], the derived-bracket route on A + M."""
        return rb_differential(self.space, self.op, f, cap, _checked=True)

    def differential_matrix(self, degree: int) -> Matrix:
        """Flattened d_H: C^degree -> C^{degree+1} in the cochain coordinate
        order (j_1, ..., j_n, k)."""
        if degree in self._matrices:
            return self._matrices[degree]
        src = self.dim_cochains(degree)
        dst = self.dim_cochains(degree + 1)
        cols = []
        for pos in range(src):
            delta = [0] * src
            delta[pos] = 1
            img = self.differential(self.cochain(degree, delta))
            cols.append(img.data)
        out = Matrix.from_cols(cols, rows=dst)
        self._matrices[degree] = out
        return out

    def dims(self, max_degree: int = DEFAULT_MAX_DEGREE) -> "ComplexReport":
        """Exact cocycle/coboundary/cohomology dimensions up to max_degree.

        Asserts the complex property: the image of each differential must lie
        in the kernel of the next, checked by exact solving against a kernel
        basis; a violation raises ComplexError rather than reporting bogus
        quotient dimensions.
        """
        rows = []
        prev_matrix = None
        for n in range(max_degree + 1):
            dmat = self.differential_matrix(n)
            c = self.dim_cochains(n)
            z = c - dmat.rank()
            if prev_matrix is None:
                b = 0
            else:
                b = prev_matrix.rank()
                kernel = dmat.kernel_basis()
                kmat = (Matrix.from_cols(kernel, rows=c) if kernel
                        else Matrix.zeros(c, 0))
                for j in range(prev_matrix.cols):
                    img = prev_matrix.col(j)
                    if vec_is_zero(img):
                        continue
                    if kmat.solve(img) is None:
                        raise ComplexError(
                            f"image of d_{n - 1} not contained in kernel of d_{n}"
                            f" (generator {j})")
            rows.append((n, c, z, b, z - b))
            prev_matrix = dmat
        return ComplexReport(rows)


@dataclass
class ComplexReport:
    """Per-degree (n, dim C, dim Z, dim B, dim H) with exact integers."""

    degrees: list

    def __post_init__(self):
        for (n, c, z, b, h) in self.degrees:
            if not (0 <= b <= z <= c and h == z - b):
                raise ValueError(f"inconsistent dimension row {(n, c, z, b, h)}")

    def h(self, n: int) -> int:
        for row in self.degrees:
            if row[0] == n:
                return row[4]
        raise KeyError(n)

    def to_json(self) -> list:
        return [{"degree": n, "c": c, "z": z, "b": b, "h": h}
                for (n, c, z, b, h) in self.degrees]


def check_sign_relation(alg: Algebra, mod: Bimodule, op: Matrix, f: Cochain,
                        complex_: Optional[RBComplex] = None) -> bool:
    """d_T f = (-1)^n d_H f, comparing the two independently computed routes."""
    cx = complex_ if complex_ is not None else RBComplex(alg, mod, op)
    lhs = cx.derived_differential(f)
    rhs = cx.differential(f)
    if f.degree % 2:
        rhs = rhs.scale(-1)
    return lhs == rhs


def h0_description_check(alg: Algebra, mod: Bimodule, op: Matrix,
                         complex_: Optional[RBComplex] = None):
    """Compute H^0 two ways: kernel of the degree-0 differential, and the
    membership condition a.T(m) - T(m).a = T(l(a)m - r(a)m) for all m.

    Returns (basis, report); the report records whether the two subspaces
    coincide (they must).
    """
    cx = complex_ if complex_ is not None else RBComplex(alg, mod, op)
    d0 = cx.differential_matrix(0)
    kernel_a = d0.kernel_basis()

    rows = []
    for j in range(cx.mdim):
        tm = op.col(j)
        cond_cols = []
        for i in range(cx.adim):
            ei = basis_vector(i, cx.adim)
            lhs = vec_sub(alg.multiply(ei, tm), alg.multiply(tm, ei))
            rhs = op.apply(vec_sub(mod.left[i].col(j), mod.right[i].col(j)))
            cond_cols.append(vec_sub(lhs, rhs))
        for k in range(cx.adim):
            rows.append([cond_cols[i][k] for i in range(cx.adim)])
    membership = Matrix.from_rows(rows, cols=cx.adim)
    kernel_b = membership.kernel_basis()

    report = CheckReport("h0_two_routes")
    if len(kernel_a) != len(kernel_b):
        report.fail("subspace dimensions differ", (),
                    (len(kernel_a), len(kernel_b)))
    else:
        for v in kernel_a:
            if not vec_is_zero(membership.apply(v)):
                report.fail("kernel vector violates membership condition", (), v)
                break
        for v in kernel_b:
            if not vec_is_zero(d0.apply(v)):
                report.fail("membership vector not in differential kernel", (), v)
                break
    return kernel_a, report


def one_cocycle_check(alg: Algebra, mod: Bimodule, op: Matrix, f: Cochain,
                      complex_: Optional[RBComplex] = None) -> Tuple[bool, bool]:
    """(direct degree-1 cocycle condition, d_H f = 0); the two agree.

    The displayed condition is evaluated in its type-correct reading:

        T(u).f(v) + f(u).T(v) - T(r(f(v))u + l(f(u))v)
                              - f(l(T(u))v + r(T(v))u) = 0.
    """
    if f.degree != 1:
        raise LinAlgError("cocycle condition applies to degree-1 cochains")
    cx = complex_ if complex_ is not None else RBComplex(alg, mod, op)
    direct = True
    for u, v in itertools.product(range(mod.mdim), repeat=2):
        fu, fv = f.value((u,)), f.value((v,))
        tu, tv = op.col(u), op.col(v)
        term = vec_add(alg.multiply(tu, fv), alg.multiply(fu, tv))
        inner_m = vec_add(mod.right_of(fv).col(u), mod.left_of(fu).col(v))
        star_uv = vec_add(mod.left_of(tu).col(v), mod.right_of(tv).col(u))
        fs = _evaluate_cochain_1(f, star_uv)
        total = vec_sub(vec_sub(term, op.apply(inner_m)), fs)
        if not vec_is_zero(total):
            direct = False
            break
    vanishing = cx.differential(f).is_zero()
    return direct, vanishing


def _evaluate_cochain_1(f: Cochain, m: Vector) -> Vector:
    out = [Fraction(0)] * f.adim
    for j, c in enumerate(m):
        if c:
            val = f.value((j,))
            for k in range(f.adim):
                out[k] += c * val[k]
    return tuple(out)


# ---------------------------------------------------------------------------
# skew-symmetrization into the Chevalley-Eilenberg complex
# ---------------------------------------------------------------------------

def skew_symmetrize(f: Cochain) -> Cochain:
    """S_n(f)(a_1, ..., a_n) = sum_sigma sign(sigma) f(a_sigma(1), ...).

    Input and output are cochains with algebra-indexed inputs (here the
    mdim field is the input dimension)."""
    n = f.degree
    if n == 0:
        return f
    data = []
    for idx in itertools.product(range(f.mdim), repeat=n):
        acc = [Fraction(0)] * f.adim
        for perm in itertools.permutations(range(n)):
            sign = _perm_sign(perm)
            val = f.value(tuple(idx[p] for p in perm))
            for k in range(f.adim):
                acc[k] += sign * val[k]
        data.extend(acc)
    return Cochain(n, f.mdim, f.adim, data)


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def is_alternating(f: Cochain) -> bool:
    n = f.degree
    for idx in itertools.product(range(f.mdim), repeat=n):
        for a in range(n - 1):
            swapped = list(idx)
            swapped[a], swapped[a + 1] = swapped[a + 1], swapped[a]
            if not vec_is_zero(vec_add(f.value(idx), f.value(tuple(swapped)))):
                return False
    return True


def ce_differential(lie, rep, g: Cochain) -> Cochain:
    """Chevalley-Eilenberg differential with coefficients in a representation:

        (dg)(x_1..x_{n+1}) = sum_i (-1)^{i+1} rho(x_i) g(.. x_i ..)
                           + sum_{i<j} (-1)^{i+j} g([x_i,x_j], .. x_i .. x_j ..)
    """
    n = g.degree
    d = lie.dim
    if g.mdim != d:
        raise LinAlgError("cochain inputs must match the Lie algebra dimension")
    data = []
    for idx in itertools.product(range(d), repeat=n + 1):
        acc = [Fraction(0)] * g.adim
        for i in range(n + 1):
            rest = idx[:i] + idx[i + 1:]
            term = rep.rho[idx[i]].apply(g.value(rest))
            sign = 1 if i % 2 == 0 else -1
            for k in range(g.adim):
                acc[k] += sign * term[k]
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                br = lie.bracket.value((idx[i], idx[j]))
                rest = tuple(x for t, x in enumerate(idx) if t != i and t != j)
                term = [Fraction(0)] * g.adim
                for s, c in enumerate(br):
                    if c:
                        val = g.value((s,) + rest)
                        for k in range(g.adim):
                            term[k] += c * val[k]
                sign = 1 if (i + j) % 2 == 0 else -1
                for k in range(g.adim):
                    acc[k] += sign * term[k]
        data.extend(acc)
    return Cochain(n + 1, d, g.adim, data)


def hochschild_module_differential(alg: Algebra, mod: Bimodule, f: Cochain,
                                   cap: Optional[int] = None) -> Cochain:
    """Differential of module-valued cochains Hom(A^(x)n, M), realized as the
    bracket with mu + l + r on A + M (sign +1 at degrees 0 and 1, classical
    alternation beyond)."""
    if f.mdim != alg.dim or f.adim != mod.mdim:
        raise LinAlgError("cochain shape does not match Hom(A^n, M)")
    space = CochainSpace(alg, mod)
    cap = HARD_ARITY_CAP if cap is None else cap
    embedded = embed_blocks(f, 0, alg.dim, space.total)
    br = graded_bracket(space.pi, embedded, cap)
    out, report = restrict_blocks(br, 0, alg.dim, alg.dim, mod.mdim)
    if not report.ok:
        raise ComplexError(f"differential left the cochain space: {report.describe()}")
    n = f.degree
    if n >= 1 and (n - 1) % 2:
        out = out.scale(-1)
    return out


def hochschild_to_ce_morphism_check(alg: Algebra, mod: Bimodule, f: Cochain) -> bool:
    """Whether skew-symmetrization intertwines the two differentials:
    S_{n+1}(d f) = d_CE(S_n f) over the commutator Lie algebra with the
    l - r representation."""
    rep = lie_representation(alg, mod)
    lhs = skew_symmetrize(hochschild_module_differential(alg, mod, f))
    rhs = ce_differential(rep.lie, rep, skew_symmetrize(f))
    return lhs == rhs
