"""Finite fields F_{p^k} with vectorized arithmetic on integer codes.

An element of F_{p^k} is stored as the integer ``sum(c_i * p**i)`` where
``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` is its residue modulo the defining
polynomial.  Arrays of elements are plain ``numpy.int64`` arrays.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

import numpy as np

__all__ = ["GF", "FieldError", "field_from_name", "is_prime"]

MAX_CHARACTERISTIC = 1 << 16
# float64 sums of nonnegative integers below this bound are exact
_EXACT_FLOAT = float(1 << 53)
_TABLE_LIMIT = 4096


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic b; coefficient lists are low-to-high."""
    a = [x % p for x in a]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        shift = len(a) - 1 - db
        lead = a[-1]
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - lead * c) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    k = len(poly) - 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_rem(list(poly), list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def _default_poly(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    # smallest monic irreducible in lexicographic order of (c_0, ..., c_{k-1})
    for low in itertools.product(range(p), repeat=k):
        poly = tuple(low) + (1,)
        if low[0] != 0 and _is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


class GF:
    """The field F_{p^k}.

    Instances are cached, so ``GF(2, 2) is GF(2, 2)``; equality is identity of
    (p, k, defining polynomial).
    """

    _cache: dict[tuple[int, int, tuple[int, ...]], GF] = {}

    def __new__(cls, p: int, k: int = 1, poly: tuple[int, ...] | None = None):
        if not is_prime(p) or p > MAX_CHARACTERISTIC:
            raise FieldError(f"characteristic must be a prime <= 2^16, got {p}")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if poly is None:
            poly = _default_poly(p, k)
        poly = tuple(int(c) % p for c in poly)
        if len(poly) != k + 1 or poly[-1] != 1:
            raise FieldError(f"defining polynomial must be monic of degree {k}")
        if k > 1 and not _is_irreducible(poly, p):
            raise FieldError(f"polynomial {poly} is reducible over F_{p}")
        key = (p, k, poly)
        inst = cls._cache.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._setup(p, k, poly)
            cls._cache[key] = inst
        return inst

    def __reduce__(self):
        return (GF, (self.p, self.k, self.poly))

    def _setup(self, p: int, k: int, poly: tuple[int, ...]) -> None:
        self.p = p
        self.k = k
        self.poly = poly
        self.q = p**k
        self.prime = k == 1
        if self.prime:
            self._inv = None
            return
        q = self.q
        self._pw = p ** np.arange(k, dtype=np.int64)
        # x^k reduces to -sum(poly[i] x^i)
        self._red = np.array([(-c) % p for c in poly[:k]], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        coeffs = self.to_coeffs(codes)
        # multiplicative group is cyclic: find a generator by brute force
        order = q - 1
        primes = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        gen = None
        for g in range(2, q) if q > 2 else [1]:
            if all(self._pow_slow(g, order // r) != 1 for r in primes):
                gen = g
                break
        assert gen is not None
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, gen)
        exp[order:] = exp[:order]
        self._exp = exp
        self._log = log
        self.generator = gen
        if q <= _TABLE_LIMIT:
            self._add_tab = self.from_coeffs((coeffs[:, None, :] + coeffs[None, :, :]) % p)
            self._neg_tab = self.from_coeffs((-coeffs) % p)
        else:
            self._add_tab = None
            self._neg_tab = self.from_coeffs((-coeffs) % p)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(order - log[1:]) % order]
        self._inv = inv

    # -- scalar helpers used only while building tables --------------------
    def _mul_slow(self, a: int, b: int) -> int:
        ca = [(a // self.p**i) % self.p for i in range(self.k)]
        cb = [(b // self.p**i) % self.p for i in range(self.k)]
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] += x * y
        rem = _poly_rem(prod, list(self.poly), self.p)
        return sum(c * self.p**i for i, c in enumerate(rem))

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    # -- representation -----------------------------------------------------
    def __repr__(self) -> str:
        if self.prime:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    @property
    def name(self) -> str:
        return f"F{self.q}"

    def to_coeffs(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.prime:
            return a[..., None]
        return (a[..., None] // self._pw) % self.p

    def from_coeffs(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        if self.prime:
            return c[..., 0] % self.p
        return (c % self.p) @ self._pw

    def array(self, x) -> np.ndarray:
        a = np.array(x, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            if self.prime:
                a %= self.p
            else:
                raise FieldError(f"element codes must lie in [0, {self.q})")
        return a

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # -- arithmetic -----------------------------------------------------------
    def add(self, a, b):
        if self.prime:
            return (np.asarray(a) + b) % self.p
        if self._add_tab is not None:
            return self._add_tab[a, b]
        return self.from_coeffs((self.to_coeffs(a) + self.to_coeffs(b)) % self.p)

    def neg(self, a):
        if self.prime:
            return (-np.asarray(a)) % self.p
        return self._neg_tab[a]

    def sub(self, a, b):
        if self.prime:
            return (np.asarray(a) - b) % self.p
        return self.add(a, self._neg_tab[b])

    def mul(self, a, b):
        if self.prime:
            return (np.asarray(a) * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.prime:
            return np.asarray(pow_mod_array(a, self.p - 2, self.p))
        return self._inv[a]

    def power(self, a: int, e: int) -> int:
        a = int(a)
        if self.prime:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def sum(self, a, axis=None):
        if self.prime:
            return np.sum(a, axis=axis) % self.p
        c = self.to_coeffs(a)
        if axis is None:
            return self.from_coeffs(c.reshape(-1, self.k).sum(axis=0))
        ax = axis if axis >= 0 else axis - 1
        return self.from_coeffs(c.sum(axis=ax))

    def einsum(self, subscripts: str, a, b) -> np.ndarray:
        """Bilinear contraction of two field arrays (``np.einsum`` semantics)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.prime:
            if _terms_per_entry(subscripts, a, b) * (self.p - 1) ** 2 < _EXACT_FLOAT:
                out = np.einsum(subscripts, a.astype(np.float64), b.astype(np.float64), optimize=True)
                return np.fmod(out, self.p).astype(np.int64)
            return np.einsum(subscripts, a, b) % self.p
        ca = np.moveaxis(self.to_coeffs(a), -1, 0)
        cb = np.moveaxis(self.to_coeffs(b), -1, 0)
        k = self.k
        parts = [None] * (2 * k - 1)
        for i in range(k):
            if not ca[i].any():
                continue
            for j in range(k):
                term = np.einsum(subscripts, ca[i], cb[j])
                parts[i + j] = term if parts[i + j] is None else parts[i + j] + term
        shape = np.einsum(subscripts, ca[0], cb[0]).shape
        parts = [np.zeros(shape, dtype=np.int64) if x is None else x % self.p for x in parts]
        for t in range(2 * k - 2, k - 1, -1):
            top = parts[t]
            for i in range(k):
                if self._red[i]:
                    parts[t - k + i] = (parts[t - k + i] + top * self._red[i]) % self.p
        return self.from_coeffs(np.stack(parts[:k], axis=-1))

    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[-1] == 0:
            return np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
        if self.prime:
            if a.shape[-1] * (self.p - 1) ** 2 < _EXACT_FLOAT:
                out = np.matmul(a.astype(np.float64), b.astype(np.float64))
                return np.fmod(out, self.p).astype(np.int64)
            return (a @ b) % self.p
        if a.ndim == 1 or b.ndim == 1:
            sa, oa = ("j", "") if a.ndim == 1 else ("...ij", "...i")
            sb, ob = ("j", "") if b.ndim == 1 else ("...jk", "k")
            if a.ndim == 1 and ob:
                ob = "...k"
            return self.einsum(f"{sa},{sb}->{oa}{ob}", a, b)
        return self.einsum("...ij,...jk->...ik", a, b)

    def kron(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.mul(a[:, None, :, None], b[None, :, None, :])
        return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def extension(self, degree: int) -> GF:
        """The field F_{q^degree}; requires a prime base field."""
        if not self.prime:
            raise FieldError("extension() is only provided from prime fields")
        return GF(self.p, degree)

    def element_str(self, a: int) -> str:
        return str(int(a))


def _terms_per_entry(subscripts: str, a: np.ndarray, b: np.ndarray) -> float:
    """Number of products summed into one output entry (infinite if unknown)."""
    if "->" not in subscripts or "." in subscripts:
        return float("inf")
    ins, out = subscripts.replace(" ", "").split("->")
    sa, sb = ins.split(",")
    if len(sa) != a.ndim or len(sb) != b.ndim:
        return float("inf")
    dims = dict(zip(sa, a.shape))
    dims.update(zip(sb, b.shape))
    n = 1
    for ch in set(sa + sb) - set(out):
        n *= dims[ch]
    return float(n)


def pow_mod_array(a, e: int, m: int):
    a = np.asarray(a, dtype=np.int64) % m
    r = np.ones_like(a)
    while e:
        if e & 1:
            r = (r * a) % m
        a = (a * a) % m
        e >>= 1
    return r


_NAME = re.compile(r"^(?:F|GF)\(?(\d+)(?:\^(\d+))?\)?$", re.IGNORECASE)


def field_from_name(name: str, poly: tuple[int, ...] | None = None) -> GF:
    """Parse ``F4``, ``GF(9)``, ``F2^3`` into a field."""
    m = _NAME.match(name.strip())
    if not m:
        raise FieldError(f"unrecognised field name {name!r}")
    base = int(m.group(1))
    exp = int(m.group(2) or 1)
    q = base**exp
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k = 0
    r = q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or not is_prime(p):
        raise FieldError(f"{name!r} is not a prime power")
    return GF(p, k, poly)
