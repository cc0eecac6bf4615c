import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracekernel.gf import GF, FieldError, field_from_name, is_prime

FIELDS = [GF(2), GF(3), GF(5), GF(2, 2), GF(2, 3), GF(3, 2), GF(65521)]


def poly_mul_mod(a, b, p, poly):
    """Schoolbook product of coefficient lists reduced by a monic polynomial."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(poly) - 1
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top]
        if c:
            for i in range(k + 1):
                prod[top - k + i] = (prod[top - k + i] - c * poly[i]) % p
    return (prod + [0] * k)[:k]


def test_field_names():
    assert field_from_name("F4") is GF(2, 2)
    assert field_from_name("GF(9)") is GF(3, 2)
    assert field_from_name("F2^3") is GF(2, 3)
    with pytest.raises(FieldError):
        field_from_name("F6")


def test_reducible_polynomial_rejected():
    with pytest.raises(FieldError):
        GF(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("F", [GF(2, 2), GF(2, 3), GF(3, 2)])
def test_extension_multiplication_matches_polynomial_arithmetic(F):
    p, k = F.p, F.k
    elems = list(F.elements())
    for a, b in itertools.product(elems, repeat=2):
        ca = [int(c) for c in F.to_coeffs(a)]
        cb = [int(c) for c in F.to_coeffs(b)]
        expect = F.from_coeffs(np.array(poly_mul_mod(ca, cb, p, F.poly)))
        assert F.mul(a, b) == expect


@pytest.mark.parametrize("F", FIELDS[:-1])
def test_every_nonzero_element_has_an_inverse(F):
    nz = F.elements()[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)


@st.composite
def field_and_triple(draw):
    F = draw(st.sampled_from(FIELDS))
    x = st.integers(0, F.q - 1)
    return F, draw(x), draw(x), draw(x)


@given(field_and_triple())
def test_field_axioms(data):
    F, a, b, c = data
    assert F.add(a, F.neg(a)) == 0
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)


@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**31))
def test_large_prime_matmul_is_exact(n, m, r, seed):
    F = GF(65521)
    rng = np.random.default_rng(seed)
    a = rng.integers(0, F.q, size=(n, m))
    b = rng.integers(0, F.q, size=(m, r))
    expect = [[sum(int(a[i, t]) * int(b[t, j]) for t in range(m)) % F.p for j in range(r)] for i in range(n)]
    assert F.matmul(a, b).tolist() == expect
    assert F.einsum("ij,jk->ik", a, b).tolist() == expect


@given(st.integers(0, 2**31))
def test_extension_matmul_matches_elementwise(seed):
    F = GF(3, 2)
    rng = np.random.default_rng(seed)
    a = rng.integers(0, F.q, size=(3, 4))
    b = rng.integers(0, F.q, size=(4, 2))
    out = F.matmul(a, b)
    for i in range(3):
        for j in range(2):
            acc = 0
            for t in range(4):
                acc = F.add(acc, F.mul(a[i, t], b[t, j]))
            assert out[i, j] == acc


def test_out_of_range_entries_rejected():
    with pytest.raises(FieldError):
        GF(2, 2).array([4])
