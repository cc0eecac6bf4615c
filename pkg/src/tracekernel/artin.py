"""Commutative Artinian local algebras over finite fields and their modules.

An algebra of dimension d is given by structure constants ``const[i, j, l]``,
the coefficient of ``b_l`` in ``b_i * b_j``.  A module of dimension n is given
by one ``n x n`` action matrix per algebra basis element; module elements are
column vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .gf import GF
from .linalg import (
    QuotientSpace,
    Subspace,
    image,
    intertwiners,
    kernel,
    quotient,
    rank,
    solve,
)

__all__ = [
    "ValidationError",
    "AlgebraPresentation",
    "ModulePresentation",
    "validate_algebra",
    "validate_module",
    "monomial_algebra",
    "truncated_poly",
    "dual_numbers",
    "square_zero",
    "field_extension_algebra",
    "split_algebra",
    "algebra_preset",
    "ALGEBRA_PRESETS",
    "free_module",
    "residue_field",
    "canonical_module",
    "maximal_ideal",
    "matlis_dual",
    "direct_sum",
    "submodule",
    "quotient_module",
    "cyclic_quotient",
    "annihilator",
    "is_faithful",
    "nilradical",
    "minimal_generators",
    "minimal_free_cover",
    "FreeCover",
    "syzygy",
    "ext_dims",
    "hom_dim",
    "lift_algebra",
    "lift_module",
]


class ValidationError(ValueError):
    """Input violates an axiom; ``witness`` names the offending basis indices."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


def _first_violation(mask: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(mask)
    return tuple(int(x) for x in idx[0]) if idx.size else None


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    field: GF
    const: np.ndarray = field(repr=False)
    unit: np.ndarray = field(repr=False)
    labels: tuple[str, ...] = ()
    name: str = ""

    @property
    def dim(self) -> int:
        return self.const.shape[0]

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<Algebra{nm} dim={self.dim} over {self.field!r}>"

    # -- arithmetic -----------------------------------------------------------
    @cached_property
    def left_mult(self) -> np.ndarray:
        """``left_mult[i]`` is the matrix of x -> b_i x on coordinate columns."""
        return np.ascontiguousarray(np.transpose(self.const, (0, 2, 1)))

    def mul(self, x, y) -> np.ndarray:
        F = self.field
        return F.matmul(self.mult_matrix(x), np.asarray(y, dtype=np.int64))

    def mult_matrix(self, x) -> np.ndarray:
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        return F.einsum("i,ijk->jk", x, self.left_mult)

    def power(self, x, e: int) -> np.ndarray:
        r = self.unit.copy()
        x = np.asarray(x, dtype=np.int64)
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def is_unit(self, x) -> bool:
        return rank(self.field, self.mult_matrix(x)) == self.dim

    def inverse(self, x) -> np.ndarray | None:
        sol = solve(self.field, self.mult_matrix(x), self.unit)
        return sol.particular

    # -- cached structure ------------------------------------------------------
    @cached_property
    def maximal_ideal(self) -> Subspace:
        return nilradical(self)

    @cached_property
    def residue_degree(self) -> int:
        return self.dim - self.maximal_ideal.dim

    @cached_property
    def maximal_ideal_basis(self) -> np.ndarray:
        return self.maximal_ideal.basis


def validate_algebra(
    F: GF,
    const,
    unit,
    labels: tuple[str, ...] | None = None,
    name: str = "",
    require_local: bool = True,
) -> AlgebraPresentation:
    """Build an algebra after checking commutativity, associativity, unit, locality."""
    c = F.array(const)
    if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
        raise ValidationError(f"structure constants must be d x d x d, got {c.shape}")
    d = c.shape[0]
    u = F.array(unit).reshape(-1)
    if u.shape != (d,):
        raise ValidationError("unit coordinates have the wrong length")
    bad = _first_violation(c != np.transpose(c, (1, 0, 2)))
    if bad:
        i, j, _ = bad
        raise ValidationError(f"not commutative: b{i}*b{j} != b{j}*b{i}", (i, j))
    # (b_i b_j) b_l vs b_i (b_j b_l)
    lhs = F.einsum("ijm,mln->ijln", c, c)
    rhs = F.einsum("jlm,imn->ijln", c, c)
    bad = _first_violation(np.any(lhs != rhs, axis=-1))
    if bad:
        raise ValidationError(f"not associative on basis triple {bad}", bad)
    ucheck = F.einsum("i,ijl->jl", u, c)
    bad = _first_violation(ucheck != np.eye(d, dtype=np.int64))
    if bad:
        raise ValidationError(f"unit does not act as identity on b{bad[0]}", (bad[0],))
    c.setflags(write=False)
    u.setflags(write=False)
    labels = tuple(labels) if labels else tuple(f"b{i}" for i in range(d))
    A = AlgebraPresentation(F, c, u, labels, name)
    if require_local:
        _check_local(A)
    return A


def _frobenius_matrix(A: AlgebraPresentation, e: int) -> np.ndarray:
    """Matrix of x -> x^e on coordinates; F_q-linear when e is a power of q."""
    cols = [A.power(A.basis_vector(i), e) for i in range(A.dim)]
    return np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64)


def nilradical(A: AlgebraPresentation) -> Subspace:
    """Nilpotent elements: the kernel of x -> x^(q^m) with q^m >= dim A."""
    q = A.field.q
    e = q
    while e < A.dim:
        e *= q
    return kernel(A.field, _frobenius_matrix(A, e))


def _reduced_quotient(A: AlgebraPresentation) -> tuple[QuotientSpace, np.ndarray]:
    """A / nilradical and the matrices of multiplication by its basis elements."""
    F = A.field
    Q = quotient(F, A.dim, A.maximal_ideal)
    P = Q.projection
    S = Q.section
    mats = []
    for i in range(Q.dim):
        x = S[i]
        mats.append(F.matmul(F.matmul(P.T, A.mult_matrix(x)), S.T))
    return Q, np.array(mats, dtype=np.int64).reshape(Q.dim, Q.dim, Q.dim)


def _check_local(A: AlgebraPresentation) -> None:
    # A/N is a product of fields; its fixed points under x -> x^q form F_q^(#factors)
    F = A.field
    Q, mats = _reduced_quotient(A)
    if Q.dim == 0:
        raise ValidationError("zero algebra is not local")
    cols = []
    for i in range(Q.dim):
        x = np.zeros(Q.dim, dtype=np.int64)
        x[i] = 1
        # x^q by square-and-multiply in the quotient
        acc = Q.project(A.unit)[0]
        base = x
        e = F.q
        while e:
            if e & 1:
                acc = F.matmul(F.einsum("i,ijk->jk", acc, mats), base)
            base = F.matmul(F.einsum("i,ijk->jk", base, mats), base)
            e >>= 1
        cols.append(F.sub(acc, x))
    fixed = kernel(F, np.stack(cols, axis=1))
    if fixed.dim > 1:
        witness = _nontrivial_idempotent(A, Q, fixed)
        raise ValidationError(
            f"not local: A/rad(A) splits into {fixed.dim} fields (idempotent {witness})",
            witness,
        )


def _nontrivial_idempotent(A: AlgebraPresentation, Q: QuotientSpace, fixed: Subspace) -> tuple:
    F = A.field
    one = Q.project(A.unit)[0]
    for v in fixed.elements():
        x = Q.lift(v)[0]
        if not v.any() or np.array_equal(v, one):
            continue
        if np.array_equal(Q.project(A.mul(x, x))[0], v):
            return tuple(int(t) for t in x)
    return ()


# -- algebra presets ------------------------------------------------------------


def monomial_algebra(
    F: GF, nvars: int, monomials: list[tuple[int, ...]], varnames: str = "xyzw", name: str = ""
) -> AlgebraPresentation:
    """k[x_1..x_v]/I for a monomial ideal I, given the standard monomials."""
    index = {m: i for i, m in enumerate(monomials)}
    d = len(monomials)
    const = np.zeros((d, d, d), dtype=np.int64)
    for (a, i), (b, j) in itertools.product(index.items(), repeat=2):
        prod = tuple(x + y for x, y in zip(a, b))
        if prod in index:
            const[i, j, index[prod]] = 1
    unit = np.zeros(d, dtype=np.int64)
    unit[index[(0,) * nvars]] = 1

    def label(m):
        parts = []
        for v, e in zip(varnames, m):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) or "1"

    return validate_algebra(F, const, unit, tuple(label(m) for m in monomials), name)


def truncated_poly(F: GF, n: int) -> AlgebraPresentation:
    """k[x]/(x^n)."""
    return monomial_algebra(F, 1, [(i,) for i in range(n)], name=f"k[x]/(x^{n})")


def dual_numbers(F: GF) -> AlgebraPresentation:
    return truncated_poly(F, 2)


def square_zero(F: GF, nvars: int) -> AlgebraPresentation:
    """k[x_1..x_v]/(x_1..x_v)^2."""
    mons = [(0,) * nvars] + [tuple(int(i == j) for j in range(nvars)) for i in range(nvars)]
    return monomial_algebra(F, nvars, mons, name=f"k[{nvars} vars]/m^2")


def _ci_x2_y2(F: GF) -> AlgebraPresentation:
    return monomial_algebra(F, 2, [(0, 0), (1, 0), (0, 1), (1, 1)], name="k[x,y]/(x^2,y^2)")


def _x2_xy_y3(F: GF) -> AlgebraPresentation:
    return monomial_algebra(F, 2, [(0, 0), (1, 0), (0, 1), (0, 2)], name="k[x,y]/(x^2,xy,y^3)")


def field_extension_algebra(F: GF, degree: int) -> AlgebraPresentation:
    """F_{q^degree} viewed as an F_q-algebra (a reduced local ring)."""
    if not F.prime:
        raise ValueError("field_extension_algebra expects a prime base field")
    E = F.extension(degree)
    p = F.p
    # basis 1, a, ..., a^{deg-1}; a^i a^j expanded through E's arithmetic
    d = degree
    const = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            code = E.power(p, i + j) if E.k > 1 else 0
            const[i, j] = E.to_coeffs(code)
    unit = np.zeros(d, dtype=np.int64)
    unit[0] = 1
    return validate_algebra(F, const, unit, tuple(f"a^{i}" for i in range(d)), f"F{E.q}")


def split_algebra(F: GF, factors: int = 2) -> AlgebraPresentation:
    """F_q x ... x F_q; never local when factors > 1 (used as a negative control)."""
    d = factors
    const = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        const[i, i, i] = 1
    return validate_algebra(F, const, np.ones(d, dtype=np.int64), name=f"F^{d}")


ALGEBRA_PRESETS = {
    "dual_numbers": lambda F, **kw: dual_numbers(F),
    "truncated_poly": lambda F, n=2, **kw: truncated_poly(F, int(n)),
    "square_zero": lambda F, vars=2, **kw: square_zero(F, int(vars)),
    "ci_x2_y2": lambda F, **kw: _ci_x2_y2(F),
    "x2_xy_y3": lambda F, **kw: _x2_xy_y3(F),
    "field_ext": lambda F, degree=2, **kw: field_extension_algebra(F, int(degree)),
}


def algebra_preset(F: GF, family: str, **params) -> AlgebraPresentation:
    try:
        build = ALGEBRA_PRESETS[family]
    except KeyError:
        raise ValidationError(f"unknown algebra family {family!r}") from None
    return build(F, **params)


# -- modules ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModulePresentation:
    algebra: AlgebraPresentation
    act: np.ndarray = field(repr=False)
    name: str = ""

    @property
    def dim(self) -> int:
        return self.act.shape[1]

    @property
    def field(self) -> GF:
        return self.algebra.field

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<Module{nm} dim={self.dim} over {self.algebra!r}>"

    def action(self, x) -> np.ndarray:
        return self.field.einsum("i,ijk->jk", np.asarray(x, dtype=np.int64), self.act)

    @cached_property
    def nontrivial_ops(self) -> list[np.ndarray]:
        """Action matrices of the basis elements that are not the identity."""
        eye = np.eye(self.dim, dtype=np.int64)
        return [m for m in self.act if not np.array_equal(m, eye)]

    def span_of(self, vectors) -> Subspace:
        """The A-submodule generated by the given (row) vectors."""
        F = self.field
        V = np.asarray(vectors, dtype=np.int64).reshape(-1, self.dim)
        if V.shape[0] == 0:
            return Subspace.zero(F, self.dim)
        imgs = F.matmul(self.act, V.T)  # (d, n, k)
        return Subspace.span(F, self.dim, np.transpose(imgs, (0, 2, 1)).reshape(-1, self.dim))

    def is_stable(self, U: Subspace) -> bool:
        if U.dim == 0:
            return True
        return self.span_of(U.basis) == U

    def renamed(self, name: str) -> ModulePresentation:
        return ModulePresentation(self.algebra, self.act, name)


def validate_module(A: AlgebraPresentation, act, name: str = "") -> ModulePresentation:
    F = A.field
    R = F.array(act)
    if R.ndim == 2 and A.dim == 1:
        R = R[None]
    if R.ndim != 3 or R.shape[0] != A.dim or R.shape[1] != R.shape[2]:
        raise ValidationError(f"need {A.dim} square action matrices, got shape {R.shape}")
    n = R.shape[1]
    unit_act = F.einsum("i,ijk->jk", A.unit, R)
    if not np.array_equal(unit_act, np.eye(n, dtype=np.int64)):
        raise ValidationError("the unit does not act as the identity", ())
    lhs = F.einsum("iab,jbc->ijac", R, R)
    rhs = F.einsum("ijl,lac->ijac", A.const, R)
    bad = _first_violation(np.any(lhs != rhs, axis=(-1, -2)))
    if bad:
        i, j = bad
        raise ValidationError(
            f"action violates b{i}*b{j} relation: rho(b{i}) rho(b{j}) != rho(b{i} b{j})", (i, j)
        )
    R.setflags(write=False)
    return ModulePresentation(A, R, name)


def _make(A: AlgebraPresentation, act: np.ndarray, name: str) -> ModulePresentation:
    act = np.array(act, dtype=np.int64)
    act.setflags(write=False)
    return ModulePresentation(A, act, name)


def free_module(A: AlgebraPresentation, rank_: int = 1, name: str = "") -> ModulePresentation:
    d = A.dim
    n = d * rank_
    act = np.zeros((d, n, n), dtype=np.int64)
    for r in range(rank_):
        act[:, r * d : (r + 1) * d, r * d : (r + 1) * d] = A.left_mult
    return _make(A, act, name or ("R" if rank_ == 1 else f"R^{rank_}"))


def submodule(M: ModulePresentation, U: Subspace, name: str = "") -> ModulePresentation:
    """The submodule spanned by an A-stable subspace, in its RREF basis."""
    F = M.field
    if U.ambient != M.dim:
        raise ValueError("subspace lives in the wrong module")
    if U.dim == 0:
        return _make(M.algebra, np.zeros((M.algebra.dim, 0, 0), dtype=np.int64), name)
    imgs = F.matmul(M.act, U.basis.T)  # (d, n, k)
    piv = list(U.pivots)
    for i in range(imgs.shape[0]):
        if not U.contains(imgs[i].T):
            raise ValueError("subspace is not a submodule")
    return _make(M.algebra, imgs[:, piv, :], name)


def quotient_module(M: ModulePresentation, U: Subspace, name: str = "") -> ModulePresentation:
    F = M.field
    if not M.is_stable(U):
        raise ValueError("subspace is not a submodule")
    Q = quotient(F, M.dim, U)
    act = F.matmul(F.matmul(Q.projection.T, M.act), Q.section.T)
    return _make(M.algebra, act, name)


def cyclic_quotient(M: ModulePresentation, vectors, name: str = "") -> ModulePresentation:
    """M / (submodule generated by the given vectors)."""
    return quotient_module(M, M.span_of(vectors), name)


def residue_field(A: AlgebraPresentation, name: str = "k") -> ModulePresentation:
    R = free_module(A)
    return quotient_module(R, A.maximal_ideal, name)


def maximal_ideal(A: AlgebraPresentation, name: str = "m") -> ModulePresentation:
    return submodule(free_module(A), A.maximal_ideal, name)


def matlis_dual(M: ModulePresentation, name: str = "") -> ModulePresentation:
    act = np.ascontiguousarray(np.transpose(M.act, (0, 2, 1)))
    return _make(M.algebra, act, name or (f"D({M.name})" if M.name else ""))


def canonical_module(A: AlgebraPresentation, name: str = "omega") -> ModulePresentation:
    return matlis_dual(free_module(A), name)


def direct_sum(*mods: ModulePresentation, name: str = "") -> ModulePresentation:
    A = mods[0].algebra
    if any(m.algebra is not A for m in mods):
        raise ValueError("direct sum of modules over different algebras")
    n = sum(m.dim for m in mods)
    act = np.zeros((A.dim, n, n), dtype=np.int64)
    off = 0
    for m in mods:
        act[:, off : off + m.dim, off : off + m.dim] = m.act
        off += m.dim
    return _make(A, act, name or "+".join(m.name or "?" for m in mods))


def annihilator(M: ModulePresentation) -> Subspace:
    """{a in A : rho(a) = 0}."""
    A = M.algebra
    flat = M.act.reshape(A.dim, -1)
    return kernel(M.field, flat.T)


def is_faithful(M: ModulePresentation) -> bool:
    return annihilator(M).dim == 0


def _m_times(M: ModulePresentation) -> Subspace:
    """The subspace mM."""
    F = M.field
    A = M.algebra
    mb = A.maximal_ideal.basis
    if mb.shape[0] == 0 or M.dim == 0:
        return Subspace.zero(F, M.dim)
    ops = F.einsum("ri,ijk->rjk", mb, M.act)  # (r, n, n)
    return image(F, np.concatenate(list(ops), axis=1))


def minimal_generators(M: ModulePresentation) -> tuple[int, np.ndarray]:
    """mu_R(M) and a generating set of that size (rows)."""
    A = M.algebra
    mM = _m_times(M)
    span = mM
    chosen = []
    for c in mM.complement_pivots():
        v = np.zeros(M.dim, dtype=np.int64)
        v[c] = 1
        if span.contains(v):
            continue
        chosen.append(v)
        span = span + M.span_of(v)
        if span.dim == M.dim:
            break
    gens = np.array(chosen, dtype=np.int64).reshape(len(chosen), M.dim)
    mu = (M.dim - mM.dim) // A.residue_degree
    assert gens.shape[0] == mu
    return mu, gens


@dataclass(frozen=True, eq=False)
class FreeCover:
    """A surjection R^mu -> M (``cover`` acts on free-module columns) and its kernel."""

    module: ModulePresentation
    free: ModulePresentation
    cover: np.ndarray
    kernel_space: Subspace
    kernel: ModulePresentation

    @property
    def is_minimal(self) -> bool:
        if self.kernel_space.dim == 0:
            return True
        return self.kernel_space.issubspace(_m_times(self.free))


def minimal_free_cover(M: ModulePresentation) -> FreeCover:
    F = M.field
    A = M.algebra
    mu, gens = minimal_generators(M)
    Fm = free_module(A, mu)
    cols = []
    for j in range(mu):
        for i in range(A.dim):
            cols.append(F.matmul(M.act[i], gens[j]))
    C = np.stack(cols, axis=1) if cols else np.zeros((M.dim, 0), dtype=np.int64)
    K = kernel(F, C) if C.shape[1] else Subspace.zero(F, 0)
    kmod = submodule(Fm, K, name=f"syz({M.name})" if M.name else "")
    return FreeCover(M, Fm, C, K, kmod)


def syzygy(M: ModulePresentation, times: int = 1, name: str = "") -> ModulePresentation:
    out = M
    for _ in range(times):
        out = minimal_free_cover(out).kernel
    return out.renamed(name) if name else out


def hom_dim(M: ModulePresentation, N: ModulePresentation) -> int:
    if M.dim == 0 or N.dim == 0:
        return 0
    return intertwiners(M.field, M.act, N.act, M.dim, N.dim).dim


def ext_dims(M: ModulePresentation, N: ModulePresentation, bound: int | None = None) -> list[int]:
    """dim Ext^j(M, N) for 0 <= j <= bound, by dimension shifting along syzygies.

    From 0 -> K -> R^mu -> M -> 0:  dim Ext^1(M,N) = dim Hom(K,N) - mu dim N + dim Hom(M,N),
    and Ext^{j+1}(M,N) = Ext^1(Omega^j M, N).
    """
    if bound is None:
        bound = 2 * M.algebra.dim
    dims = [hom_dim(M, N)]
    cur = M
    h_cur = dims[0]
    for _ in range(bound):
        cover = minimal_free_cover(cur)
        mu = cover.free.dim // M.algebra.dim
        K = cover.kernel
        h_k = hom_dim(K, N)
        dims.append(h_k - mu * N.dim + h_cur)
        cur, h_cur = K, h_k
    return dims


# -- base change ---------------------------------------------------------------


def lift_algebra(A: AlgebraPresentation, target: GF) -> AlgebraPresentation:
    """A tensor_{F_q} F_{q^k}: same basis, structure constants embedded."""
    from .linalg import field_extend

    c = field_extend(A.const, A.field, target)
    u = field_extend(A.unit, A.field, target)
    c.setflags(write=False)
    u.setflags(write=False)
    return AlgebraPresentation(target, c, u, A.labels, A.name)


def lift_module(M: ModulePresentation, target_algebra: AlgebraPresentation) -> ModulePresentation:
    from .linalg import field_extend

    act = field_extend(M.act, M.field, target_algebra.field)
    act.setflags(write=False)
    return ModulePresentation(target_algebra, act, M.name)
