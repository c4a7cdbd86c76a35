"""Shared corpus: small named algebras, their bimodules, and the operators
the structural checks exercise.  Everything non-trivial here is either
verified analytically in its own test module or discovered by the search
oracle (deterministically, so the corpus is stable across runs)."""

import random
from fractions import Fraction

import pytest

from antiflex.algebra import Algebra, direct_sum
from antiflex.bimodule import regular_bimodule, zero_bimodule
from antiflex.linalg import Matrix
from antiflex.search import search_algebras, search_operators


@pytest.fixture(scope="session")
def a0_1():
    return Algebra.zero(1)


@pytest.fixture(scope="session")
def a0_2():
    return Algebra.zero(2)


@pytest.fixture(scope="session")
def a1():
    return Algebra.from_products(1, {(0, 0): {0: 1}})


@pytest.fixture(scope="session")
def a2():
    return Algebra.from_products(2, {(0, 0): {1: 1}})


@pytest.fixture(scope="session")
def na2():
    """Not anti-flexible: e1.e1 = e2, e1.e2 = e1."""
    return Algebra.from_products(2, {(0, 0): {1: 1}, (0, 1): {0: 1}})


@pytest.fixture(scope="session")
def a2_plus_a1(a2, a1):
    return direct_sum(a2, a1)


@pytest.fixture(scope="session")
def af_nonassoc():
    """First anti-flexible non-associative dim-2 algebra in the sweep order."""
    hits = search_algebras(2, (-1, 0, 1), ("anti-flexible", "not-associative"),
                           limit=1)
    assert hits
    return hits[0]


@pytest.fixture(scope="session")
def m_a1(a1):
    return regular_bimodule(a1)


@pytest.fixture(scope="session")
def m_a2(a2):
    return regular_bimodule(a2)


@pytest.fixture(scope="session")
def m_a0_2(a0_2):
    return regular_bimodule(a0_2)


@pytest.fixture(scope="session")
def m_a2_plus_a1(a2_plus_a1):
    return regular_bimodule(a2_plus_a1)


@pytest.fixture(scope="session")
def m_zero_on_a2(a2):
    return zero_bimodule(a2, 2)


@pytest.fixture(scope="session")
def t_inv():
    """Invertible Rota-Baxter operator on A2 with its regular bimodule."""
    return Matrix.from_rows([[2, 0], [0, 1]])


@pytest.fixture(scope="session")
def t_nil():
    return Matrix.from_rows([[0, 0], [1, 0]])


@pytest.fixture(scope="session")
def e21():
    return Matrix.from_rows([[0, 0], [1, 0]])


@pytest.fixture(scope="session")
def noncommutative_rb(af_nonassoc):
    """A noncommutative anti-flexible algebra carrying a nonzero Rota-Baxter
    operator over its regular bimodule, found by the oracle."""
    candidates = search_algebras(
        2, (-1, 0, 1), ("anti-flexible", "not-associative", "not-commutative"))
    for alg in candidates:
        mod = regular_bimodule(alg)
        hits = search_operators(alg, mod, (-1, 0, 1),
                                ("rota-baxter", "nonzero"), limit=1)
        if hits:
            return alg, mod, hits[0]
    pytest.skip("no noncommutative Rota-Baxter fixture in the grid")


@pytest.fixture(scope="session")
def defect_rb():
    """A Rota-Baxter fixture whose differential fails to square to zero at
    degree 0 (possible on noncommutative anti-flexible data).  Found
    deterministically by sweeping the oracle's noncommutative corpus."""
    from antiflex.glie import Cochain, CochainSpace, HARD_ARITY_CAP, rb_differential

    candidates = search_algebras(
        2, (-1, 0, 1), ("anti-flexible", "not-associative", "not-commutative"))
    scanned = 0
    for alg in candidates:
        mod = regular_bimodule(alg)
        hits = search_operators(alg, mod, (-1, 0, 1),
                                ("rota-baxter", "nonzero"), limit=4)
        if not hits:
            continue
        scanned += 1
        if scanned > 12:
            break
        space = CochainSpace(alg, mod)
        for op in hits:
            for pos in range(alg.dim):
                data = [0] * alg.dim
                data[pos] = 1
                c0 = Cochain(0, mod.mdim, alg.dim, data)
                once = rb_differential(space, op, c0, HARD_ARITY_CAP)
                if not rb_differential(space, op, once, HARD_ARITY_CAP).is_zero():
                    return alg, mod, op
    pytest.skip("no degree-0 square-defect fixture in the scanned grid")


@pytest.fixture(scope="session")
def rb_pairs(a1, m_a1, a2, m_a2, a0_2, m_a0_2, a2_plus_a1, m_a2_plus_a1,
             m_zero_on_a2):
    """(algebra, bimodule) pairs used for randomized operator sweeps."""
    return [
        (a1, m_a1),
        (a2, m_a2),
        (a2, m_zero_on_a2),
        (a0_2, m_a0_2),
        (a2_plus_a1, m_a2_plus_a1),
    ]


@pytest.fixture(scope="session")
def cohomology_corpus(a0_1, a1, m_a1, a2, m_a2, a0_2, m_a0_2, a2_plus_a1,
                      m_a2_plus_a1):
    """Rota-Baxter fixtures whose cochain complexes are genuine complexes;
    dims below are frozen regression anchors (first computed, then pinned)."""
    return [
        ("A0_1/zero/T=id", a0_1, zero_bimodule(a0_1, 1), Matrix.identity(1),
         [(0, 1, 1, 0, 1), (1, 1, 1, 0, 1), (2, 1, 1, 0, 1), (3, 1, 1, 0, 1)]),
        ("A1/reg/T=0", a1, m_a1, Matrix.zeros(1, 1),
         [(0, 1, 1, 0, 1), (1, 1, 1, 0, 1), (2, 1, 1, 0, 1), (3, 1, 1, 0, 1)]),
        ("A2/reg/T_inv", a2, m_a2, Matrix.from_rows([[2, 0], [0, 1]]),
         [(0, 2, 2, 0, 2), (1, 4, 2, 0, 2), (2, 8, 6, 2, 4), (3, 16, 8, 2, 6)]),
        ("A2/reg/T_nil", a2, m_a2, Matrix.from_rows([[0, 0], [1, 0]]),
         [(0, 2, 2, 0, 2), (1, 4, 4, 0, 4), (2, 8, 8, 0, 8), (3, 16, 16, 0, 16)]),
        ("A0_2/reg/T_gen", a0_2, m_a0_2, Matrix.from_rows([[1, 2], [3, 4]]),
         [(0, 2, 2, 0, 2), (1, 4, 4, 0, 4), (2, 8, 8, 0, 8), (3, 16, 16, 0, 16)]),
        ("A2A1/reg/T_blk", a2_plus_a1, m_a2_plus_a1,
         Matrix.from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 0]]),
         [(0, 3, 3, 0, 3), (1, 9, 5, 0, 5), (2, 27, 20, 4, 16)]),
    ]


def random_matrix(rng: random.Random, rows: int, cols: int, lo=-2, hi=2) -> Matrix:
    return Matrix(rows, cols, [Fraction(rng.randint(lo, hi))
                               for _ in range(rows * cols)])


@pytest.fixture(scope="session")
def rand_matrix():
    return random_matrix
