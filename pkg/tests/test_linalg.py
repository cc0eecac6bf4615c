import itertools

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from tracekernel.gf import GF
from tracekernel.linalg import (
    Subspace,
    image,
    inverse,
    kernel,
    lift_matrix,
    lift_subspace,
    quotient,
    rank,
    rref,
    solve,
)


def all_vectors(F, n):
    return np.array(list(itertools.product(range(F.q), repeat=n)), dtype=np.int64).reshape(-1, n)


def brute_kernel(F, A):
    A = np.asarray(A)
    V = all_vectors(F, A.shape[1])
    return {tuple(v) for v in V if not np.any(F.matmul(A, v))}


@st.composite
def small_matrix(draw, fields=(GF(2), GF(3), GF(2, 2))):
    F = draw(st.sampled_from(fields))
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=n * m, max_size=n * m))
    return F, np.array(vals, dtype=np.int64).reshape(n, m)


def test_solve_examples(F2):
    sol = solve(F2, np.eye(2, dtype=int), [1, 0])
    assert sol.particular.tolist() == [1, 0] and sol.kernel.dim == 0
    sol = solve(F2, np.zeros((2, 2), dtype=int), [0, 0])
    assert sol.particular.tolist() == [0, 0] and sol.kernel.dim == 2
    sol = solve(F2, [[1, 1], [1, 1]], [1, 1])
    assert sol.particular.tolist() == [1, 0]
    assert sol.kernel == Subspace.span(F2, 2, [[1, 1]])
    assert not solve(F2, [[1, 1], [1, 1]], [1, 0]).consistent


def test_kernel_image_examples(F2, F3):
    assert kernel(F2, np.eye(3, dtype=int)).dim == 0
    assert image(F2, np.eye(3, dtype=int)).dim == 3
    Z = np.zeros((2, 3), dtype=int)
    assert kernel(F2, Z).dim == 3 and image(F2, Z).dim == 0
    assert kernel(F3, [[1, 2], [2, 1]]).dim == 1


def test_subspace_examples(F2):
    U = Subspace.span(F2, 3, [[1, 1, 0], [0, 1, 1]])
    V = Subspace.span(F2, 3, [[1, 0, 1]])
    assert V <= U and (U + V).dim == 2
    assert U + U == U and U & U == U
    e1, e2 = Subspace.span(F2, 2, [[1, 0]]), Subspace.span(F2, 2, [[0, 1]])
    assert (e1 + e2).dim == 2 and (e1 & e2).dim == 0


def test_quotient_examples(F2):
    assert quotient(F2, 3, Subspace.full(F2, 3)).dim == 0
    Q = quotient(F2, 2, Subspace.zero(F2, 2))
    assert np.array_equal(Q.projection, np.eye(2, dtype=int))
    Q = quotient(F2, 2, Subspace.span(F2, 2, [[1, 0]]))
    assert Q.dim == 1 and not np.any(F2.matmul(np.array([1, 0]), Q.projection))


def test_field_extension_preserves_rank(F2, F4):
    assert rank(F4, lift_matrix([[1, 1], [1, 1]], F2, F4)) == 1
    K = kernel(F2, [[1, 1, 0], [0, 1, 1]])
    assert lift_subspace(K, F4) == kernel(F4, lift_matrix([[1, 1, 0], [0, 1, 1]], F2, F4))


@given(small_matrix())
def test_kernel_matches_enumeration(data):
    F, A = data
    K = kernel(F, A)
    assert {tuple(v) for v in K.elements()} == brute_kernel(F, A)
    assert rank(F, A) + K.dim == A.shape[1]


@given(small_matrix())
def test_rref_is_canonical_and_idempotent(data):
    F, A = data
    R, piv = rref(F, A)
    R2, piv2 = rref(F, R)
    assert np.array_equal(R, R2) and piv == piv2
    for i, c in enumerate(piv):
        col = R[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


@given(small_matrix(), st.integers(0, 2**31))
def test_solve_returns_a_solution(data, seed):
    F, A = data
    rng = np.random.default_rng(seed)
    x = rng.integers(0, F.q, size=A.shape[1])
    b = F.matmul(A, x)
    sol = solve(F, A, b)
    assert sol.consistent
    assert np.array_equal(F.matmul(A, sol.particular), b)


@given(small_matrix(), small_matrix())
def test_dimension_formula(a, b):
    F, A = a
    G, B = b
    if G is not F or A.shape[1] != B.shape[1]:
        return
    U = Subspace.span(F, A.shape[1], A)
    V = Subspace.span(F, B.shape[1], B)
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    assert (U & V) <= U and U <= U + V


@given(st.integers(1, 5), st.integers(0, 2**31))
def test_inverse(n, seed):
    F = GF(5)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 5, size=(n, n))
    if rank(F, A) < n:
        return
    assert np.array_equal(F.matmul(A, inverse(F, A)), np.eye(n, dtype=int))
