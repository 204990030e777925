from __future__ import annotations

import json
import random

import pytest

from conftest import el
from oracles import matrix_mul
from superband.errors import DimensionError, DomainError, GradingError, ShapeError
from superband.grassmann import GrassmannElement
from superband.supermatrix import (
    Supermatrix,
    berezinian,
    berezinian_11,
    berezinian_block,
    det_even,
    inverse_even,
    is_odd_closed,
    odd_power_closed_form,
    reduce_even,
    reduce_odd,
    smul,
    supertrace,
)

N = 4


def m11(a, alpha, beta, b, n=N):
    conv = lambda x: el(x, n) if isinstance(x, str) else x  # noqa: E731
    return Supermatrix.from_11(conv(a), conv(alpha), conv(beta), conv(b), n=n)


def rand_even(rng, n=N, body=None):
    masks = [m for m in range(1 << n) if m.bit_count() % 2 == 0]
    x = GrassmannElement(n, {m: rng.randint(-2, 2) for m in masks if rng.random() < 0.5})
    if body is not None:
        x = x - x.body + body
    return x


def rand_odd(rng, n=N):
    masks = [m for m in range(1 << n) if m.bit_count() % 2]
    return GrassmannElement(n, {m: rng.randint(-2, 2) for m in masks if rng.random() < 0.5})


def rand_matrix(rng, p=1, q=1, n=N, invertible=True):
    size = p + q
    grid = []
    for i in range(size):
        row = []
        for j in range(size):
            if (i < p) != (j < p):
                row.append(rand_odd(rng, n))
            elif invertible and i == j:
                row.append(rand_even(rng, n, body=rng.choice([-2, -1, 1, 2, 3])))
            else:
                row.append(rand_even(rng, n))
        grid.append(row)
    return Supermatrix(p, q, grid, n=n)


# -- construction ------------------------------------------------------------------------


def test_grading_is_enforced():
    with pytest.raises(GradingError):
        m11("g1", "g1", "g2", "1")
    with pytest.raises(GradingError):
        m11("1", "1", "g2", "1")
    with pytest.raises(ShapeError):
        Supermatrix(1, 1, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], n=2)
    with pytest.raises(DimensionError):
        Supermatrix(1, 1, [[el("1", 2), el("g1", 3)], [0, 1]])


def test_zero_allowed_in_every_block():
    Z = Supermatrix.zero(2, 1, 3)
    assert all(x.is_zero() for row in Z.entries for x in row)


# -- spec examples -----------------------------------------------------------------------


def test_smul_examples():
    M = m11("3", "g1", "g2", "1 + g1.g2")
    assert smul(Supermatrix.identity(1, 1, N), M) == M
    X = m11("0", "g1", "g2", "1")
    assert smul(X, X) == m11("g1.g2", "g1", "g2", "1 - g1.g2")
    A, B = m11("0", "g1", "g2", "2"), m11("0", "g3", "g4", "1")
    assert smul(A, B) == m11("g1.g4", "g1", "2*g4", "2 + g2.g3")


def test_supertrace_examples():
    assert supertrace(m11("1", "g1", "g2", "1")) == 0
    assert supertrace(m11("2", "0", "0", "1")) == 1
    assert supertrace(m11("g1.g2", "0", "0", "0")) == el("g1.g2")


def test_berezinian_examples():
    assert berezinian(Supermatrix.identity(1, 1, N)) == 1
    assert berezinian(m11("1", "g1", "g2", "1")) == el("1 - g1.g2")
    odd = m11("0", "g1", "g2", "1")
    assert berezinian(odd) == -el("g1.g2")
    assert berezinian(odd) * berezinian(odd) == 0


def test_berezinian_domain_error():
    with pytest.raises(DomainError, match="non-invertible body"):
        berezinian(m11("1", "g1", "g2", "g1.g2"))


def test_reductions():
    M = m11("2 + g1.g2", "g1", "g3", "1 - g2.g4")
    assert reduce_even(M) == m11("2 + g1.g2", "g1", "0", "1 - g2.g4")
    assert reduce_odd(M) == m11("0", "g1", "g3", "1 - g2.g4")


def test_closed_form_examples():
    X = m11("0", "g1", "g2", "1")
    assert odd_power_closed_form(X, 2) == m11("g1.g2", "g1", "g2", "1 - g1.g2")
    assert odd_power_closed_form(X, 3) == m11("g1.g2", "g1", "g2", "1 - 2*g1.g2")
    assert odd_power_closed_form(X, 1) == X
    with pytest.raises(ShapeError):
        odd_power_closed_form(m11("1", "g1", "g2", "1"), 2)


def test_is_odd_closed_examples():
    assert is_odd_closed(m11("0", "g1", "g1", "1"))
    assert not is_odd_closed(m11("0", "g1", "g2", "1"))
    assert is_odd_closed(m11("0", "g1.g2.g3", "g1", "1"))


# -- formulas against independent computations ---------------------------------------------


def test_berezinian_identity_random():
    rng = random.Random(1)
    for _ in range(300):
        M = rand_matrix(rng)
        ber = berezinian(M)
        # multiplied-out form of a/b + beta*alpha/b^2
        assert ber * M.b * M.b == M.a * M.b + M.beta * M.alpha
        assert ber == berezinian_block(M) == berezinian_11(M)


def test_berezinian_multiplicative_random():
    rng = random.Random(2)
    for _ in range(150):
        M, K = rand_matrix(rng), rand_matrix(rng)
        assert berezinian(M @ K) == berezinian(M) * berezinian(K)


def test_berezinian_addition_random():
    rng = random.Random(3)
    for _ in range(300):
        M = rand_matrix(rng)
        assert berezinian(M) == berezinian(reduce_even(M)) + berezinian(reduce_odd(M))


def matrix_mul_rect(X, Y):
    return [[sum((X[i][k] * Y[k][j] for k in range(len(Y))), GrassmannElement.zero(4))
             for j in range(len(Y[0]))] for i in range(len(X))]


@pytest.mark.parametrize("shape", [(2, 1), (1, 2), (2, 2)])
def test_block_berezinian_against_dual_formula(shape):
    # Ber = det(A) / det(D - C A^-1 B) whenever A is invertible too
    rng = random.Random(sum(shape))
    p, q = shape
    for _ in range(12):
        M = rand_matrix(rng, p, q, n=4)
        A, B, C, D = M.blocks()
        A_inv = inverse_even(A, 4)
        CAB = matrix_mul_rect(matrix_mul_rect(C, A_inv), B)
        S = [[D[i][j] - CAB[i][j] for j in range(q)] for i in range(q)]
        dual = det_even(A, 4) * det_even(S, 4).inverse()
        assert berezinian(M) == dual


def test_block_berezinian_multiplicative():
    rng = random.Random(11)
    for _ in range(10):
        M, K = rand_matrix(rng, 2, 1, n=3), rand_matrix(rng, 2, 1, n=3)
        assert berezinian(M @ K) == berezinian(M) * berezinian(K)


def test_smul_matches_plain_product():
    rng = random.Random(4)
    for p, q in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        for _ in range(10):
            M, K = rand_matrix(rng, p, q, invertible=False), rand_matrix(rng, p, q, invertible=False)
            expected = matrix_mul([list(r) for r in M.entries], [list(r) for r in K.entries])
            prod = M @ K
            assert [list(r) for r in prod.entries] == expected
            # even morphisms compose to even morphisms
            Supermatrix(p, q, prod.entries, n=N)


def test_odd_reduced_powers_match_iteration():
    rng = random.Random(5)
    for _ in range(60):
        M = reduce_odd(rand_matrix(rng))
        acc = M
        for k in range(1, 7):
            assert odd_power_closed_form(M, k) == acc
            acc = acc @ M


def test_odd_berezinian_nilpotent():
    rng = random.Random(6)
    for _ in range(200):
        M = reduce_odd(rand_matrix(rng))
        ber = berezinian(M)
        assert (ber * ber).is_zero()


def test_supertrace_is_a_minus_b():
    rng = random.Random(8)
    for _ in range(50):
        M = rand_matrix(rng, invertible=False)
        assert supertrace(M) == M.a - M.b
        K = rand_matrix(rng, invertible=False)
        assert supertrace(M @ K) == supertrace(K @ M)


# -- odd-reduced semigroup ideals --------------------------------------------------------------


def odd_family(gamma, rng, count, kind):
    out = []
    for _ in range(count):
        a = gamma * rand_even(rng) if kind != "alpha0" else GrassmannElement.zero(N)
        b_ = gamma * rand_even(rng) if kind != "beta0" else GrassmannElement.zero(N)
        bb = rand_even(rng) if kind != "b0" else GrassmannElement.zero(N)
        out.append(Supermatrix.from_11(0, a, b_, bb, n=N))
    return out


@pytest.mark.parametrize("kind", ["any", "beta0", "alpha0", "b0"])
def test_odd_closed_family_products(kind):
    rng = random.Random(9)
    gamma = el("g1 + g2.g3.g4")
    fam = odd_family(gamma, rng, 15, "any")
    sub = odd_family(gamma, rng, 15, kind)
    for M in fam + sub:
        assert is_odd_closed(M)
    for X in sub:
        for S in fam:
            for P in (X @ S, S @ X):
                assert P.a.is_zero() and is_odd_closed(P)
            if kind == "beta0":
                assert (S @ X).beta.is_zero()
            if kind == "alpha0":
                assert (X @ S).alpha.is_zero()
            if kind == "b0":
                assert (X @ S).b.is_zero() and (S @ X).b.is_zero()


def test_pointwise_condition_is_not_closed():
    X = m11("0", "g1", "g1", "1")
    Y = m11("0", "g2", "g2", "1")
    assert is_odd_closed(X) and is_odd_closed(Y)
    P = X @ Y
    assert P.a == el("g1.g2")


# -- serialization ------------------------------------------------------------------------------


def test_json_round_trip():
    rng = random.Random(10)
    for p, q in [(1, 1), (2, 1), (1, 3)]:
        M = rand_matrix(rng, p, q, invertible=False)
        data = json.loads(json.dumps(M.to_json()))
        assert data["shape"] == [p, q]
        assert Supermatrix.from_json(data, N) == M


def test_text_form():
    assert m11("1", "g1", "g2", "1").to_text() == "[[1, g1], [g2, 1]]"
