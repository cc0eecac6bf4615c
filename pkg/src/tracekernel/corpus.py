"""Deterministic corpora of small Artinian local algebras and modules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .artin import (
    AlgebraPresentation,
    ModulePresentation,
    algebra_preset,
    canonical_module,
    cyclic_quotient,
    direct_sum,
    free_module,
    maximal_ideal,
    residue_field,
    syzygy,
)
from .gf import GF
from .oracle import DEFAULT_MAX_PAIRS

__all__ = [
    "DEFAULT_FAMILIES",
    "CorpusSpec",
    "CorpusAlgebra",
    "Triple",
    "generate_corpus",
    "sample_triples",
]

# (family, params) in preset terms
DEFAULT_FAMILIES: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = (
    ("truncated_poly", (("n", 1),)),
    ("truncated_poly", (("n", 2),)),
    ("truncated_poly", (("n", 3),)),
    ("truncated_poly", (("n", 4),)),
    ("square_zero", (("vars", 2),)),
    ("ci_x2_y2", ()),
    ("x2_xy_y3", ()),
    ("square_zero", (("vars", 3),)),
)


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 0
    fields: tuple[int, ...] = (2, 3)
    families: tuple = DEFAULT_FAMILIES
    max_dim: int = 8
    random_quotients: int = 2
    triples_per_algebra: int = 16
    max_oracle_pairs: int = DEFAULT_MAX_PAIRS
    ext_bound: int | None = None

    @classmethod
    def empty(cls) -> CorpusSpec:
        return cls(fields=(), families=())

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "fields": list(self.fields),
            "families": [[f, dict(p)] for f, p in self.families],
            "max_dim": self.max_dim,
            "random_quotients": self.random_quotients,
            "triples_per_algebra": self.triples_per_algebra,
            "max_oracle_pairs": self.max_oracle_pairs,
            "ext_bound": self.ext_bound,
        }


@dataclass(frozen=True, eq=False)
class CorpusAlgebra:
    label: str
    algebra: AlgebraPresentation
    base: tuple[ModulePresentation, ...]
    modules: tuple[ModulePresentation, ...]
    triples: tuple = field(default=(), repr=False)

    def module(self, name: str) -> ModulePresentation:
        for m in self.modules:
            if m.name == name:
                return m
        raise KeyError(name)


@dataclass(frozen=True, eq=False)
class Triple:
    """An instance (M, L, N) plus a partner module B used by the two-module checks."""

    corpus: CorpusAlgebra
    M: ModulePresentation
    L: ModulePresentation
    N: ModulePresentation
    B: ModulePresentation

    @property
    def ident(self) -> str:
        return f"{self.corpus.label}:M={self.M.name},L={self.L.name},N={self.N.name},B={self.B.name}"


def _base_modules(A: AlgebraPresentation, rng: np.random.Generator, spec: CorpusSpec) -> list:
    R = free_module(A)
    k = residue_field(A)
    w = canonical_module(A)
    out = [R, k, w]
    if A.dim > 1:
        m = maximal_ideal(A)
        out.append(m)
        for src in (w, m):
            s = syzygy(src, name=f"syz({src.name})")
            if 0 < s.dim <= spec.max_dim:
                out.append(s)
    R2 = free_module(A, 2)
    F = A.field
    for i in range(spec.random_quotients):
        v = rng.integers(0, F.q, size=R2.dim)
        Q = cyclic_quotient(R2, v, name=f"Q{i + 1}")
        if 0 < Q.dim <= spec.max_dim:
            out.append(Q)
    return out


def _build(F: GF, family: str, params: tuple, spec: CorpusSpec, index: int) -> CorpusAlgebra:
    A = algebra_preset(F, family, **dict(params))
    label = f"{F.name}/{family}" + "".join(f",{k}={v}" for k, v in params)
    rng = np.random.default_rng([spec.seed, F.q, index])
    base = [m for m in _base_modules(A, rng, spec) if m.dim <= spec.max_dim]
    mods = list(base)
    for i, X in enumerate(base):
        for Y in base[i:]:
            if X.dim + Y.dim <= spec.max_dim:
                mods.append(direct_sum(X, Y, name=f"{X.name}+{Y.name}"))
    ca = CorpusAlgebra(label, A, tuple(base), tuple(mods))
    object.__setattr__(ca, "triples", tuple(sample_triples(ca, spec, rng)))
    return ca


def sample_triples(ca: CorpusAlgebra, spec: CorpusSpec, rng: np.random.Generator) -> list[Triple]:
    """Alternate draws from the base modules and from all modules, without repeats."""
    pools = (ca.base, ca.modules)
    seen: set[tuple[int, int, int]] = set()
    out = []
    tries = 0
    want = min(spec.triples_per_algebra, len(ca.modules) ** 3)
    while len(out) < want and tries < 50 * spec.triples_per_algebra:
        pool = pools[tries % 2]
        tries += 1
        picks = [pool[int(x)] for x in rng.integers(0, len(pool), size=3)]
        key = tuple(ca.modules.index(m) for m in picks)
        if key in seen:
            continue
        seen.add(key)
        B = ca.base[int(rng.integers(0, len(ca.base)))]
        out.append(Triple(ca, *picks, B))
    return out


def generate_corpus(spec: CorpusSpec) -> list[CorpusAlgebra]:
    out = []
    for p in spec.fields:
        F = GF(p)
        for idx, (family, params) in enumerate(spec.families):
            out.append(_build(F, family, tuple(params), spec, idx))
    return out
