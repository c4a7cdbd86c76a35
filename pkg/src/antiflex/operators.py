"""Operator-level predicates and constructions: Rota-Baxter operators,
Nijenhuis operators, graph characterizations, induced pre-anti-flexible
products, operator morphisms, and the Lie-algebra Rota-Baxter check.

Operators are plain Matrix values; a map M -> A is a (dim A) x (dim M)
matrix acting on coefficient columns.
"""

from __future__ import annotations

import itertools
from typing import Tuple

from .algebra import (Algebra, LieAlgebra, classify, deformed_product,
                      direct_sum, semidirect_product)
from .bimodule import Bimodule, LieRepresentation
from .linalg import (LinAlgError, Matrix, MultiMap, Vector, basis_vector,
                     vec_add, vec_is_zero, vec_sub, zero_vector)
from .reports import CheckReport

__all__ = [
    "is_rota_baxter",
    "rb_graph_is_subalgebra",
    "is_nijenhuis",
    "nijenhuis_power_suite",
    "nt_nijenhuis_equivalence",
    "PreAntiFlexible",
    "induced_pre_anti_flexible",
    "star_algebra",
    "is_rb_morphism",
    "rb_morphism_graph_check",
    "rb_morphism_preserves_pre_structure",
    "is_lie_rota_baxter",
]


def _check_operator_shape(op: Matrix, src_dim: int, dst_dim: int, what: str):
    if op.rows != dst_dim or op.cols != src_dim:
        raise LinAlgError(
            f"{what} must be {dst_dim}x{src_dim}, got {op.rows}x{op.cols}")


def is_rota_baxter(alg: Algebra, mod: Bimodule, op: Matrix) -> CheckReport:
    """T(m).T(n) = T(l(T(m))n + r(T(n))m) on all basis pairs of the module."""
    _check_operator_shape(op, mod.mdim, alg.dim, "Rota-Baxter candidate")
    report = CheckReport("rota_baxter")
    md = mod.mdim
    for i, j in itertools.product(range(md), repeat=2):
        tm, tn = op.col(i), op.col(j)
        lhs = alg.multiply(tm, tn)
        inner = vec_add(mod.left_of(tm).col(j), mod.right_of(tn).col(i))
        res = vec_sub(lhs, op.apply(inner))
        if not vec_is_zero(res):
            report.fail("T(m).T(n) = T(l(Tm)n + r(Tn)m)", (i, j), res)
            return report
    return report


def rb_graph_is_subalgebra(alg: Algebra, mod: Bimodule, op: Matrix) -> bool:
    """Whether Gr(T) = {(T(m), m)} is closed in the semidirect product.

    Independent route to the Rota-Baxter identity: multiplies embedded graph
    vectors inside the semidirect algebra and tests graph membership.
    """
    _check_operator_shape(op, mod.mdim, alg.dim, "Rota-Baxter candidate")
    semi = semidirect_product(alg, mod)
    d, md = alg.dim, mod.mdim

    def embed(i: int) -> Vector:
        return tuple(op.col(i)) + basis_vector(i, md)

    for i, j in itertools.product(range(md), repeat=2):
        w = semi.multiply(embed(i), embed(j))
        a_part, m_part = w[:d], w[d:]
        if not vec_is_zero(vec_sub(a_part, op.apply(m_part))):
            return False
    return True


def is_nijenhuis(alg: Algebra, op: Matrix) -> CheckReport:
    """Vanishing Nijenhuis torsion: N(a).N(b) = N(Na.b + a.Nb - N(a.b))."""
    if not op.is_square() or op.rows != alg.dim:
        raise LinAlgError("Nijenhuis candidate must be square of the algebra dimension")
    report = CheckReport("nijenhuis")
    d = alg.dim
    for i, j in itertools.product(range(d), repeat=2):
        na, nb = op.col(i), op.col(j)
        lhs = alg.multiply(na, nb)
        inner = vec_sub(vec_add(alg.multiply(na, alg._basis(j)),
                                alg.multiply(alg._basis(i), nb)),
                        op.apply(alg.basis_product(i, j)))
        res = vec_sub(lhs, op.apply(inner))
        if not vec_is_zero(res):
            report.fail("N(a)N(b) = N(Na.b + a.Nb - N(ab))", (i, j), res)
            return report
    return report


def _anti_flexible_mixed_defect(p: MultiMap, q: MultiMap) -> MultiMap:
    """D(p,q)(a,b,c) = p(q(a,b),c) - p(a,q(b,c)) - p(q(c,b),a) + p(c,q(b,a)).

    Bilinear polarization of the anti-flexible defect: the defect of a
    product mu is D(mu, mu).
    """
    if p.arity != 2 or q.arity != 2 or p.dim != q.dim:
        raise LinAlgError("mixed defect needs two products on the same space")
    d = p.dim

    def fn(idx):
        i, j, k = idx
        ei, ek = basis_vector(i, d), basis_vector(k, d)
        t1 = p.evaluate(q.value((i, j)), ek)
        t2 = p.evaluate(ei, q.value((j, k)))
        t3 = p.evaluate(q.value((k, j)), ei)
        t4 = p.evaluate(ek, q.value((j, i)))
        return [t1[s] - t2[s] - t3[s] + t4[s] for s in range(d)]

    return MultiMap.from_function(3, d, fn)


def nijenhuis_power_suite(alg: Algebra, op: Matrix, k: int, l: int,
                          cap: int = 3) -> dict:
    """Five exact checks on the powers of a Nijenhuis operator.

    Returns a dict of named booleans:
      deformed_anti_flexible   (A, ._{N^k}) is anti-flexible
      power_nijenhuis          N^l is Nijenhuis on (A, ._{N^k})
      tower_composition        (._{N^k})_{N^l} equals ._{N^{k+l}} as tensors
      linear_combinations      every a ._{N^k} + b ._{N^l} combination is
                               anti-flexible, verified coefficientwise in (a, b)
      power_homomorphism       N^l : (A, ._{N^{k+l}}) -> (A, ._{N^k})
    """
    if k < 0 or l < 0 or k > cap or l > cap:
        raise ValueError(f"powers must lie in [0, {cap}]")
    check = is_nijenhuis(alg, op)
    if not check.ok:
        raise ValueError(f"operator is not Nijenhuis: {check.describe()}")

    nk = op.power(k)
    nl = op.power(l)
    alg_k = deformed_product(alg, nk)
    alg_l = deformed_product(alg, nl)
    alg_kl = deformed_product(alg, op.power(k + l))

    out = {}
    out["deformed_anti_flexible"] = classify(alg_k).anti_flexible
    out["power_nijenhuis"] = bool(is_nijenhuis(alg_k, nl))
    out["tower_composition"] = deformed_product(alg_k, nl).mul == alg_kl.mul

    pk, pl = alg_k.mul, alg_l.mul
    coeff_sq_k = _anti_flexible_mixed_defect(pk, pk)
    coeff_sq_l = _anti_flexible_mixed_defect(pl, pl)
    coeff_mixed = _anti_flexible_mixed_defect(pk, pl) + _anti_flexible_mixed_defect(pl, pk)
    out["linear_combinations"] = (coeff_sq_k.is_zero() and coeff_sq_l.is_zero()
                                  and coeff_mixed.is_zero())

    ok = True
    for i, j in itertools.product(range(alg.dim), repeat=2):
        lhs = nl.apply(alg_kl.basis_product(i, j))
        rhs = alg_k.multiply(nl.col(i), nl.col(j))
        if not vec_is_zero(vec_sub(lhs, rhs)):
            ok = False
            break
    out["power_homomorphism"] = ok
    return out


def nt_operator(alg: Algebra, mod: Bimodule, op: Matrix) -> Matrix:
    """The block operator [[0, T], [0, 0]] on A + M (A indices first)."""
    d, md = alg.dim, mod.mdim
    n = d + md
    cols = []
    for j in range(n):
        if j < d:
            cols.append(zero_vector(n))
        else:
            cols.append(tuple(op.col(j - d)) + zero_vector(md))
    return Matrix.from_cols(cols, rows=n)


def nt_nijenhuis_equivalence(alg: Algebra, mod: Bimodule, op: Matrix) -> Tuple[bool, bool]:
    """(is Rota-Baxter, induced block operator is Nijenhuis on the semidirect)."""
    rb = bool(is_rota_baxter(alg, mod, op))
    semi = semidirect_product(alg, mod)
    nij = bool(is_nijenhuis(semi, nt_operator(alg, mod, op)))
    return rb, nij


class PreAntiFlexible:
    """Two products (prec, succ) subject to the splitting identities."""

    __slots__ = ("dim", "prec", "succ")

    def __init__(self, prec: MultiMap, succ: MultiMap, check: bool = True):
        if prec.arity != 2 or succ.arity != 2 or prec.dim != succ.dim:
            raise LinAlgError("both products must be arity-2 tensors on the same space")
        self.prec = prec
        self.succ = succ
        self.dim = prec.dim
        if check:
            report = self.validate()
            if not report.ok:
                raise ValueError(f"not pre-anti-flexible: {report.describe()}")

    def total(self) -> MultiMap:
        """The sum product a*b = a<b + a>b."""
        return self.prec + self.succ

    def validate(self) -> CheckReport:
        report = CheckReport("pre_anti_flexible")
        d = self.dim
        star = self.total()
        prec, succ = self.prec, self.succ
        for i, j, k in itertools.product(range(d), repeat=3):
            ei, ek = basis_vector(i, d), basis_vector(k, d)
            lhs = vec_sub(prec.evaluate(succ.value((i, j)), ek),
                          succ.evaluate(ei, prec.value((j, k))))
            rhs = vec_sub(prec.evaluate(succ.value((k, j)), ei),
                          succ.evaluate(ek, prec.value((j, i))))
            if not vec_is_zero(vec_sub(lhs, rhs)):
                report.fail("(a>b)<c - a>(b<c) = (c>b)<a - c>(b<a)", (i, j, k),
                            vec_sub(lhs, rhs))
                return report
        for i, j, k in itertools.product(range(d), repeat=3):
            ei, ek = basis_vector(i, d), basis_vector(k, d)
            lhs = vec_sub(succ.evaluate(star.value((i, j)), ek),
                          succ.evaluate(ei, succ.value((j, k))))
            rhs = vec_sub(prec.evaluate(prec.value((i, j)), ek),
                          prec.evaluate(ei, star.value((j, k))))
            if not vec_is_zero(vec_sub(lhs, rhs)):
                report.fail("(a*b)>c - a>(b>c) = (a<b)<c - a<(b*c)", (i, j, k),
                            vec_sub(lhs, rhs))
                return report
        return report


def induced_pre_anti_flexible(alg: Algebra, mod: Bimodule, op: Matrix) -> PreAntiFlexible:
    """The splitting on M induced by a Rota-Baxter operator:
    m > n = l(T(m))n and m < n = r(T(n))m."""
    check = is_rota_baxter(alg, mod, op)
    if not check.ok:
        raise ValueError(f"operator is not Rota-Baxter: {check.describe()}")
    md = mod.mdim

    def succ_fn(idx):
        i, j = idx
        return mod.left_of(op.col(i)).col(j)

    def prec_fn(idx):
        i, j = idx
        return mod.right_of(op.col(j)).col(i)

    return PreAntiFlexible(MultiMap.from_function(2, md, prec_fn),
                           MultiMap.from_function(2, md, succ_fn))


def star_algebra(alg: Algebra, mod: Bimodule, op: Matrix,
                 _checked: bool = False) -> Algebra:
    """The induced algebra on M: m star n = r(T(n))m + l(T(m))n."""
    if not _checked:
        check = is_rota_baxter(alg, mod, op)
        if not check.ok:
            raise ValueError(f"operator is not Rota-Baxter: {check.describe()}")
    md = mod.mdim

    def fn(idx):
        i, j = idx
        return vec_add(mod.right_of(op.col(j)).col(i),
                       mod.left_of(op.col(i)).col(j))

    labels = tuple(f"m{i + 1}" for i in range(md))
    return Algebra(MultiMap.from_function(2, md, fn), labels)


def _is_algebra_morphism(src: Algebra, dst: Algebra, phi: Matrix) -> bool:
    for i, j in itertools.product(range(src.dim), repeat=2):
        lhs = phi.apply(src.basis_product(i, j))
        rhs = dst.multiply(phi.col(i), phi.col(j))
        if not vec_is_zero(vec_sub(lhs, rhs)):
            return False
    return True


def is_rb_morphism(alg: Algebra, mod: Bimodule, op: Matrix,
                   alg2: Algebra, mod2: Bimodule, op2: Matrix,
                   phi: Matrix, psi: Matrix) -> CheckReport:
    """Morphism of Rota-Baxter operators: phi an algebra morphism with

        T' psi = phi T,
        l(phi(a)) psi(m) = psi(l(a)m),   r(phi(a)) psi(m) = psi(r(a)m).
    """
    _check_operator_shape(op, mod.mdim, alg.dim, "source operator")
    _check_operator_shape(op2, mod2.mdim, alg2.dim, "target operator")
    _check_operator_shape(phi, alg.dim, alg2.dim, "algebra map")
    _check_operator_shape(psi, mod.mdim, mod2.mdim, "module map")
    for name, a, m, t in (("source", alg, mod, op), ("target", alg2, mod2, op2)):
        check = is_rota_baxter(a, m, t)
        if not check.ok:
            raise ValueError(f"{name} operator is not Rota-Baxter: {check.describe()}")

    report = CheckReport("rb_morphism")
    if not _is_algebra_morphism(alg, alg2, phi):
        report.fail("phi(a.b) = phi(a).phi(b)", (), None)
        return report
    res = op2 @ psi - phi @ op
    if not res.is_zero():
        report.fail("T' psi = phi T", (), res)
        return report
    for i in range(alg.dim):
        pa = phi.col(i)
        left_res = mod2.left_of(pa) @ psi - psi @ mod.left[i]
        if not left_res.is_zero():
            report.fail("l(phi(a)) psi = psi l(a)", (i,), left_res)
            return report
        right_res = mod2.right_of(pa) @ psi - psi @ mod.right[i]
        if not right_res.is_zero():
            report.fail("r(phi(a)) psi = psi r(a)", (i,), right_res)
            return report
    return report


def rb_morphism_graph_check(alg: Algebra, mod: Bimodule, op: Matrix,
                            alg2: Algebra, mod2: Bimodule, op2: Matrix,
                            phi: Matrix, psi: Matrix) -> bool:
    """Graph route to the morphism property.

    Checks that the graph of (phi, psi) is closed under the componentwise
    product of the two semidirect algebras, and that (phi, psi) carries the
    graph of the source operator into the graph of the target one.
    """
    _check_operator_shape(phi, alg.dim, alg2.dim, "algebra map")
    _check_operator_shape(psi, mod.mdim, mod2.mdim, "module map")
    semi1 = semidirect_product(alg, mod)
    semi2 = semidirect_product(alg2, mod2)
    both = direct_sum(semi1, semi2)
    d1, n1 = alg.dim, alg.dim + mod.mdim
    d2 = alg2.dim

    def pair_map(x: Vector) -> Vector:
        a, m = x[:d1], x[d1:]
        return tuple(phi.apply(a)) + tuple(psi.apply(m))

    def embed(x: Vector) -> Vector:
        return tuple(x) + pair_map(x)

    for i, j in itertools.product(range(n1), repeat=2):
        u = embed(basis_vector(i, n1))
        v = embed(basis_vector(j, n1))
        w = both.multiply(u, v)
        first, second = w[:n1], w[n1:]
        if not vec_is_zero(vec_sub(second, pair_map(first))):
            return False
    for i in range(mod.mdim):
        graph_image = tuple(phi.apply(op.col(i))) + tuple(psi.col(i))
        expected = tuple(op2.apply(psi.col(i))) + tuple(psi.col(i))
        if not vec_is_zero(vec_sub(graph_image, expected)):
            return False
    return True


def rb_morphism_preserves_pre_structure(alg: Algebra, mod: Bimodule, op: Matrix,
                                        alg2: Algebra, mod2: Bimodule, op2: Matrix,
                                        phi: Matrix, psi: Matrix) -> bool:
    """Whether psi intertwines the induced pre-anti-flexible products."""
    check = is_rb_morphism(alg, mod, op, alg2, mod2, op2, phi, psi)
    if not check.ok:
        raise ValueError(f"not a Rota-Baxter morphism: {check.describe()}")
    src = induced_pre_anti_flexible(alg, mod, op)
    dst = induced_pre_anti_flexible(alg2, mod2, op2)
    for i, j in itertools.product(range(mod.mdim), repeat=2):
        pi, pj = psi.col(i), psi.col(j)
        if not vec_is_zero(vec_sub(psi.apply(src.prec.value((i, j))),
                                   dst.prec.evaluate(pi, pj))):
            return False
        if not vec_is_zero(vec_sub(psi.apply(src.succ.value((i, j))),
                                   dst.succ.evaluate(pi, pj))):
            return False
    return True


def is_lie_rota_baxter(lie: LieAlgebra, rep: LieRepresentation, op: Matrix) -> CheckReport:
    """[T(m), T(n)] = T(rho(Tm)n - rho(Tn)m) on all basis pairs."""
    _check_operator_shape(op, rep.mdim, lie.dim, "Lie Rota-Baxter candidate")
    report = CheckReport("lie_rota_baxter")
    for i, j in itertools.product(range(rep.mdim), repeat=2):
        tm, tn = op.col(i), op.col(j)
        lhs = lie.bracket.evaluate(tm, tn)
        inner = vec_sub(rep.of(tm).col(j), rep.of(tn).col(i))
        res = vec_sub(lhs, op.apply(inner))
        if not vec_is_zero(res):
            report.fail("[Tm,Tn] = T(rho(Tm)n - rho(Tn)m)", (i, j), res)
            return report
    return report
