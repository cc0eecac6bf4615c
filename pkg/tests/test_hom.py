import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracekernel.artin import (
    canonical_module,
    cyclic_quotient,
    direct_sum,
    dual_numbers,
    free_module,
    maximal_ideal,
    residue_field,
    square_zero,
    truncated_poly,
)
from tracekernel.gf import GF
from tracekernel.hom import center_via_hom_over_end, compose, end_ring, hom, ring_center


def brute_hom_dim(M, N):
    """log_q of the number of all matrices commuting with the actions."""
    F = M.field
    count = 0
    for entries in itertools.product(range(F.q), repeat=N.dim * M.dim):
        X = np.array(entries, dtype=np.int64).reshape(N.dim, M.dim)
        if all(
            np.array_equal(F.matmul(X, M.act[i]), F.matmul(N.act[i], X)) for i in range(M.algebra.dim)
        ):
            count += 1
    d = round(np.log(count) / np.log(F.q))
    assert F.q**d == count
    return d


def small_modules(F):
    A = dual_numbers(F)
    R, k = free_module(A), residue_field(A)
    out = [R, k, direct_sum(R, k), direct_sum(k, k)]
    B = square_zero(F, 2)
    out += [free_module(B), residue_field(B), canonical_module(B), maximal_ideal(B)]
    return out


@pytest.mark.parametrize("p", [2, 3])
def test_hom_dims_match_enumeration(p):
    mods = small_modules(GF(p))
    for M, N in itertools.product(mods, repeat=2):
        if M.algebra is not N.algebra or M.dim * N.dim > (12 if p == 2 else 8):
            continue
        assert hom(M, N).dim == brute_hom_dim(M, N), (M.name, N.name)


def test_hom_examples(dual):
    assert hom(dual["k"], dual["R"]).dim == 1
    assert hom(dual["R"], dual["k"]).dim == 1
    assert hom(dual["R"], dual["R"]).dim == 2
    E = end_ring(dual["Rk"])
    assert E.dim == 5 and E.center.dim == 2
    k2 = direct_sum(dual["k"], dual["k"])
    E2 = end_ring(k2)
    assert E2.dim == 4 and E2.center.dim == 1


def test_end_ring_axioms(dual):
    E = end_ring(dual["Rk"])
    ring = E.ring
    assert ring.is_associative() and not ring.is_commutative()
    u = E.unit
    for a in range(E.dim):
        e = np.eye(E.dim, dtype=np.int64)[a]
        assert np.array_equal(ring.mul(u, e), e)
        assert np.array_equal(ring.mul(e, u), e)


def test_homothety_for_free_module(dual):
    E = end_ring(dual["R"])
    assert E.homothety.shape[0] == 2
    F = dual["A"].field
    from tracekernel.linalg import rank

    assert rank(F, E.homothety) == 2


def test_composition_is_associative(dual):
    F = dual["A"].field
    R, k, Rk = dual["R"], dual["k"], dual["Rk"]
    H1, H2, H3 = hom(k, Rk), hom(Rk, R), hom(R, Rk)
    for f in H1.basis:
        for g in H2.basis:
            for h in H3.basis:
                lhs = F.matmul(F.matmul(h, g), f)
                rhs = F.matmul(h, F.matmul(g, f))
                assert np.array_equal(lhs, rhs)
    T = compose(H2, H1, hom(k, R))
    for a, g in enumerate(H2.basis):
        for b, f in enumerate(H1.basis):
            assert np.array_equal(hom(k, R).element(T[a, b]), F.matmul(g, f))


@st.composite
def quotient_module(draw):
    F = draw(st.sampled_from([GF(2), GF(3)]))
    A = draw(st.sampled_from([truncated_poly(F, 3), square_zero(F, 2)]))
    R2 = free_module(A, 2)
    v = np.array(draw(st.lists(st.integers(0, F.q - 1), min_size=R2.dim, max_size=R2.dim)))
    return cyclic_quotient(R2, v)


@given(quotient_module())
def test_center_two_ways(M):
    E = end_ring(M)
    assert E.center == ring_center(E.ring)
    assert E.center == center_via_hom_over_end(E)
    # scalars from R are central
    F = M.field
    assert E.center.contains(E.hom.coords(np.eye(M.dim, dtype=np.int64)))
    assert F is E.field
