import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpoints import linalg
from fatpoints.interpolation import HOMOGENEOUS, conditions_matrix
from fatpoints.linalg import ExactMatrix, kernel_basis, rank
from fatpoints.points import PointConfig, evaluation_matrix, sample_config

from oracles import naive_rank, sympy_rank


def random_matrix(rng, rows, cols, rank_cap=None, span=20):
    """Random rational matrix, optionally of rank at most ``rank_cap``."""
    def q():
        return Fraction(rng.randint(-span, span), rng.randint(1, 5))
    if rank_cap is None:
        return ExactMatrix.from_rows([[q() for _ in range(cols)] for _ in range(rows)], cols)
    if rank_cap == 0:
        return ExactMatrix(rows, cols, [0] * (rows * cols))
    A = [[q() for _ in range(rank_cap)] for _ in range(rows)]
    B = [[q() for _ in range(cols)] for _ in range(rank_cap)]
    return ExactMatrix.from_rows([[sum(a * b for a, b in zip(ra, cb)) for cb in zip(*B)] for ra in A], cols)


def corpus(seed=0, count=100, max_dim=30):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
        cap = rng.choice([None, rng.randint(0, min(r, c))])
        out.append(random_matrix(rng, r, c, cap))
    return out


@pytest.mark.parametrize("strategy", linalg.STRATEGIES)
def test_identity_rank(strategy):
    eye = ExactMatrix.from_rows([[int(i == j) for j in range(3)] for i in range(3)])
    assert rank(eye, strategy).rank == 3


@pytest.mark.parametrize("strategy", linalg.STRATEGIES)
def test_proportional_rows(strategy):
    assert rank(ExactMatrix.from_rows([[1, 2], [2, 4]]), strategy).rank == 1


def test_conditions_matrix_three_points_rank_nine():
    cfg = PointConfig.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    B = conditions_matrix(cfg, 2, 3, HOMOGENEOUS).matrix
    assert (B.rows, B.cols) == (12, 10)
    assert naive_rank(B.to_rows()) == 9
    assert rank(B, linalg.EXACT).rank == 9
    (v,) = kernel_basis(B)
    # x0*x1*x2 is the product of the three coordinate lines through pairs
    assert v == [Fraction(int(i == 4)) for i in range(10)]


def test_conditions_matrix_general_triangle_kernel_is_product_of_lines():
    cfg = PointConfig.of([[1, 2, 3], [2, -1, 1], [1, 1, -1]])
    B = conditions_matrix(cfg, 2, 3, HOMOGENEOUS).matrix
    assert naive_rank(B.to_rows()) == 9
    (v,) = kernel_basis(B)
    import sympy
    x = sympy.symbols("x0:3")
    P = [sympy.Matrix(p.coords) for p in cfg.points]
    lines = [sympy.Matrix.hstack(P[i], P[j], sympy.Matrix(x)).det() for i, j in [(0, 1), (0, 2), (1, 2)]]
    prod = sympy.Poly(sympy.expand(lines[0] * lines[1] * lines[2]), *x)
    from fatpoints.polys import monomials
    coeffs = [prod.coeff_monomial(sympy.prod([xi**e for xi, e in zip(x, a)])) for a in monomials(3, 3)]
    lead = next(c for c in coeffs if c)
    assert v == [Fraction(int(sympy.fraction(c / lead)[0]), int(sympy.fraction(c / lead)[1])) for c in coeffs]


def test_empty_dimensions_rank_zero():
    assert rank(ExactMatrix(0, 3, [])).rank == 0
    assert rank(ExactMatrix(3, 0, [])).rank == 0


def test_bad_primes_rejected():
    M = ExactMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(linalg.InvalidArgument):
        rank(M, linalg.MULTIMODULAR, primes=[2, 32771])
    with pytest.raises(linalg.InvalidArgument):
        rank(M, linalg.MULTIMODULAR, primes=[32771, 32771])
    with pytest.raises(linalg.InvalidArgument):
        rank(M, linalg.MULTIMODULAR, primes=[32769])


def test_malformed_matrix():
    with pytest.raises(linalg.InvalidArgument):
        ExactMatrix(2, 2, [1, 2, 3])


def test_kernel_identity_empty():
    assert kernel_basis(ExactMatrix.from_rows([[int(i == j) for j in range(3)] for i in range(3)])) == []


def test_kernel_zero_matrix_standard_basis():
    ker = kernel_basis(ExactMatrix(2, 3, [0] * 6))
    assert ker == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


def test_kernel_unique_conic():
    cfg = sample_config(5, 2, 5)
    E = evaluation_matrix(cfg, 2)
    assert naive_rank(E.to_rows()) == 5
    (v,) = kernel_basis(E)
    assert all(c == 0 for c in E.apply(v))
    assert next(c for c in v if c) == 1


def test_modular_rank_drops_for_dividing_prime():
    p = 32771
    M = ExactMatrix.from_rows([[1, 1], [1, 1 + p]])  # det = p
    assert rank(M, linalg.MODULAR, primes=[p]).rank == 1
    assert rank(M, linalg.MULTIMODULAR_CERTIFY, primes=[p, 32779]).rank == 2


def test_multimodular_disagreement_is_reported():
    p = 32771
    M = ExactMatrix.from_rows([[1, 1], [1, 1 + p], [0, 0]])
    r = rank(M, linalg.MULTIMODULAR, primes=[p, 32779])
    assert r.rank == 2 and r.warnings


def test_heuristic_rank_flagged():
    M = ExactMatrix.from_rows([[1, 2], [2, 4]])
    r = rank(M, linalg.MULTIMODULAR)
    assert r.strategy == "multimodular-heuristic" and not r.certified
    assert rank(M, linalg.MULTIMODULAR_CERTIFY).certified


def test_random_primes_range():
    ps = linalg.random_primes(5, seed=3)
    assert len(set(ps)) == 5
    assert all(2**15 <= p < 2**16 and linalg._is_prime(p) for p in ps)


@pytest.mark.parametrize("M", corpus(seed=1, count=40, max_dim=20), ids=lambda m: repr(m))
def test_bareiss_matches_naive_up_to_20(M):
    r = naive_rank(M.to_rows())
    assert rank(M, linalg.EXACT).rank == r
    assert len(kernel_basis(M)) == M.cols - r


@pytest.mark.parametrize("M", corpus(seed=2, count=10, max_dim=12), ids=lambda m: repr(m))
def test_bareiss_matches_sympy(M):
    assert rank(M, linalg.EXACT).rank == sympy_rank(M.to_rows())


def test_modular_is_lower_bound_and_agrees():
    rng = random.Random(9)
    for M in corpus(seed=3, count=100):
        exact = rank(M, linalg.EXACT).rank
        p, q = linalg.random_primes(2, seed=rng.randrange(10**6))
        rows = linalg.integer_rows(M)
        rp, rq = linalg.modular_rank(rows, p), linalg.modular_rank(rows, q)
        assert rp <= exact and rq <= exact
        assert rp == rq == exact


small_q = st.fractions(min_value=-9, max_value=9, max_denominator=4)


@st.composite
def matrices(draw, max_dim=7):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return ExactMatrix(r, c, draw(st.lists(small_q, min_size=r * c, max_size=r * c)))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_transpose_invariant(M):
    assert rank(M, linalg.EXACT).rank == rank(M.transpose(), linalg.EXACT).rank


@settings(max_examples=80, deadline=None)
@given(matrices(), st.data())
def test_row_scaling_invariant(M, data):
    i = data.draw(st.integers(0, M.rows - 1))
    s = data.draw(small_q.filter(bool))
    rows = M.to_rows()
    rows[i] = [s * e for e in rows[i]]
    S = ExactMatrix.from_rows(rows, M.cols)
    assert rank(S, linalg.EXACT).rank == rank(M, linalg.EXACT).rank
    assert kernel_basis(S) == kernel_basis(M)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilated_and_count(M):
    ker = kernel_basis(M)
    r = rank(M, linalg.EXACT).rank
    assert r + len(ker) == M.cols
    for v in ker:
        assert all(c == 0 for c in M.apply(v))
        assert next(c for c in v if c) == 1
    if ker:
        assert rank(ExactMatrix.from_rows(ker, M.cols), linalg.EXACT).rank == len(ker)
