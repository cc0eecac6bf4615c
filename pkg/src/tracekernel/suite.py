"""Pass/fail checks of the trace-theoretic statements over a generated corpus.

Every check returns a :class:`CheckReport`.  ``fail`` means a hypothesis held and
the conclusion did not; it always carries a replayable witness document.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .artin import (
    ModulePresentation,
    canonical_module,
    direct_sum,
    free_module,
    is_faithful,
    lift_algebra,
    lift_module,
)
from .corpus import CorpusAlgebra, CorpusSpec, Triple, generate_corpus
from .gf import GF
from .hom import center_via_hom_over_end, end_ring, hom
from .linalg import lift_subspace, rank
from .oracle import factoring_maps, trace_elements
from .trace import (
    add_membership,
    build_center_isomorphism,
    build_general_isomorphism,
    epsilon_map,
    generation_predicates,
    is_reflexive,
    is_torsionless,
    pi_map,
    restriction_is_bijective,
    tensor_over_end,
    trace_image,
    trace_map,
)

__all__ = [
    "CheckReport",
    "SuiteReport",
    "CHECKS",
    "MIN_SATISFIED",
    "check_tracetheory",
    "check_oracle",
    "check_theorem_general",
    "check_faithref",
    "check_lindo",
    "check_center",
    "check_lessgeneral",
    "check_canonical_artinian",
    "run_suite",
]

PASS, FAIL, UNMET, SKIPPED = "pass", "fail", "hypothesis-not-met", "skipped"
MIN_SATISFIED = 5

CLAIMS = {
    "tracetheory1": "tr_{L,N}(A+B) = tr_{L,N}(A) + tr_{L,N}(B)",
    "tracetheory2": "L or N in Add(M) implies phi^M_{L,N} bijective",
    "tracetheory3": "A generates B (cov. w.r.t. L or contra. w.r.t. N) implies tr_{L,N}(B) in tr_{L,N}(A)",
    "tracetheory4": "M generates N cov. w.r.t. L or L contra. w.r.t. N implies phi^M_{L,N} surjective",
    "tracetheory5": "reflexive pair implies Hom_E(tr, tr) -> Hom_E(tr, Hom(L,N)) bijective",
    "tracetheory6": "trace commutes with flat base change F_q -> F_q^2",
    "oracle": "tr_{L,N}(M) equals the set of maps factoring through M^n",
    "general1": "End_{End L}(tr_{L,N}(M)) = End_{End M}(Hom(M,N)) under the hypotheses",
    "general2": "End_{End N}(tr_{L,N}(M)) = End_{End M}(Hom(L,M)) under the hypotheses",
    "faithref": "M torsionless: M faithful iff R in Add(M)",
    "lindo": "M faithful and reflexive: Z(End M) = End_R(tr_R(M))",
    "center": "Z(End M) = End_{End M}(M)",
    "lessgeneral": "M reflexive w.r.t. N and R or N in Add(M): Z(End M) = End_{End N}(tr_N(M))",
    "canonical": "R or omega in Add(M): Z(End M) = End_R(tr_omega(M))",
}

CHECKS = tuple(CLAIMS)


@dataclass(frozen=True)
class CheckReport:
    check: str
    instance: str
    hypothesis_met: bool
    verdict: str
    details: dict = field(default_factory=dict)
    witness: dict | None = None

    @property
    def claim(self) -> str:
        return CLAIMS[self.check]

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "claim": self.claim,
            "instance": self.instance,
            "hypothesis_met": self.hypothesis_met,
            "verdict": self.verdict,
            "details": self.details,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _witness(algebra, modules: dict[str, ModulePresentation], task: str) -> dict:
    from .document import dump_instance

    return {"document": dump_instance(algebra, modules, [task]), "task": task}


def _report(check, instance, hyp, ok, details=None, witness_fn=None) -> CheckReport:
    if not hyp:
        return CheckReport(check, instance, False, UNMET, details or {})
    if ok:
        return CheckReport(check, instance, True, PASS, details or {})
    return CheckReport(check, instance, True, FAIL, details or {}, witness_fn() if witness_fn else None)


def _triple_witness(t: Triple, check: str, extra: dict | None = None):
    mods = {"M": t.M, "L": t.L, "N": t.N, "B": t.B}
    if extra:
        mods.update(extra)

    def build():
        return _witness(t.corpus.algebra, mods, f"check name={check} M=M L=L N=N B=B")

    return build


# -- the trace-theory properties ---------------------------------------------------------


def _lift_field(F: GF) -> GF:
    return GF(F.p, 2 * F.k)


_LIFTS: dict = {}


def _lifted(M: ModulePresentation) -> ModulePresentation:
    A = M.algebra
    key = id(A)
    if key not in _LIFTS:
        _LIFTS[key] = (A, lift_algebra(A, _lift_field(A.field)), {})
    _, LA, mods = _LIFTS[key]
    if id(M) not in mods:
        mods[id(M)] = (M, lift_module(M, LA))
    return mods[id(M)][1]


def check_tracetheory(t: Triple, prop: int) -> CheckReport:
    M, L, N, B = t.M, t.L, t.N, t.B
    name = f"tracetheory{prop}"
    wit = _triple_witness(t, name)
    if prop == 1:
        AB = direct_sum(M, B)
        lhs = trace_image(AB, L, N)
        rhs = trace_image(M, L, N) + trace_image(B, L, N)
        return _report(name, t.ident, True, lhs == rhs, {"dim": lhs.dim}, wit)
    if prop == 2:
        hyp = add_membership(L, M) or add_membership(N, M)
        td = trace_map(M, L, N) if hyp else None
        ok = td is not None and td.bijective
        det = {"tensor_dim": td.tensor.dim, "hom_dim": td.hom_LN.dim} if td else {}
        return _report(name, t.ident, hyp, ok, det, wit)
    if prop == 3:
        cov = generation_predicates(M, B, L)["covariantly_generates"]
        contra = generation_predicates(M, B, N)["contravariantly_generates"]
        hyp = cov or contra
        ok = hyp and trace_image(B, L, N) <= trace_image(M, L, N)
        return _report(name, t.ident, hyp, ok, {"covariant": cov, "contravariant": contra}, wit)
    if prop == 4:
        cov = generation_predicates(M, N, L)["covariantly_generates"]
        contra = generation_predicates(M, L, N)["contravariantly_generates"]
        hyp = cov or contra
        ok = False
        if hyp:
            tens = tensor_over_end(M, L, N)
            r = rank(M.field, tens.phi) if tens.phi.size else 0
            ok = r == hom(L, N).dim
        return _report(name, t.ident, hyp, ok, {"covariant": cov, "contravariant": contra}, wit)
    if prop == 5:
        cov = epsilon_map(M, N, L).bijective
        contra = pi_map(L, M, N).bijective
        hyp = cov or contra
        ok = (not cov or restriction_is_bijective(M, L, N, "covariant")) and (
            not contra or restriction_is_bijective(M, L, N, "contravariant")
        )
        return _report(name, t.ident, hyp, ok, {"covariant": cov, "contravariant": contra}, wit)
    if prop == 6:
        big = _lift_field(M.field)
        lM, lL, lN = _lifted(M), _lifted(L), _lifted(N)
        lifted = lift_subspace(trace_image(M, L, N), big)
        direct = trace_image(lM, lL, lN)
        return _report(name, t.ident, True, lifted == direct, {"field": big.name, "dim": direct.dim}, wit)
    raise ValueError(f"property index must be 1..6, got {prop}")


def check_oracle(t: Triple, max_pairs: int) -> CheckReport:
    M, L, N = t.M, t.L, t.N
    res = factoring_maps(M, L, N, max_pairs)
    if res.status != "ok":
        return CheckReport("oracle", t.ident, False, SKIPPED, {"pairs": res.pairs})
    H = hom(L, N)
    tr = trace_image(M, L, N)
    elems = trace_elements(H.element(tr.basis), M.field, tr.dim)
    det = {"pairs": res.pairs, "copies": res.copies, "size": res.size}
    return _report("oracle", t.ident, True, elems == res.maps, det, _triple_witness(t, "oracle"))


def check_theorem_general(t: Triple, variant: int) -> CheckReport:
    cert = build_general_isomorphism(t.M, t.L, t.N, variant)
    name = f"general{variant}"
    det = {
        "hypotheses": cert.hypotheses,
        "flags": [cert.well_defined, cert.additive_bijective, cert.multiplicative, cert.unital],
        "dims": [cert.source_dim, cert.target_dim],
    }
    return _report(name, t.ident, cert.hypotheses_met, cert.certified, det, _triple_witness(t, name))


# -- single-module checks --------------------------------------------------------------


def _module_witness(ca: CorpusAlgebra, M: ModulePresentation, check: str, N=None):
    def build():
        mods = {"M": M} if N is None else {"M": M, "N": N}
        task = f"check name={check} M=M" + (" N=N" if N is not None else "")
        return _witness(ca.algebra, mods, task)

    return build


def check_faithref(ca: CorpusAlgebra, M: ModulePresentation) -> CheckReport:
    ident = f"{ca.label}:M={M.name}"
    hyp = is_torsionless(M)
    if not hyp:
        return _report("faithref", ident, False, False)
    faithful = is_faithful(M)
    gen = add_membership(free_module(M.algebra), M)
    det = {"faithful": faithful, "generator": gen}
    return _report("faithref", ident, True, faithful == gen, det, _module_witness(ca, M, "faithref"))


def check_lindo(ca: CorpusAlgebra, M: ModulePresentation) -> CheckReport:
    ident = f"{ca.label}:M={M.name}"
    hyp = is_faithful(M) and is_reflexive(M)
    if not hyp:
        return _report("lindo", ident, False, False)
    cert = build_center_isomorphism(M, free_module(M.algebra))
    det = {"dims": [cert.source_dim, cert.target_dim], "hypotheses": cert.hypotheses}
    return _report("lindo", ident, True, cert.certified, det, _module_witness(ca, M, "lindo"))


def check_center(ca: CorpusAlgebra, M: ModulePresentation) -> CheckReport:
    E = end_ring(M)
    ok = E.center == center_via_hom_over_end(E)
    return _report("center", f"{ca.label}:M={M.name}", True, ok, {"dim": E.center.dim}, _module_witness(ca, M, "center"))


def check_lessgeneral(ca: CorpusAlgebra, M: ModulePresentation, N: ModulePresentation) -> CheckReport:
    cert = build_center_isomorphism(M, N)
    det = {"hypotheses": cert.hypotheses, "dims": [cert.source_dim, cert.target_dim]}
    ident = f"{ca.label}:M={M.name},N={N.name}"
    wit = _module_witness(ca, M, "lessgeneral", N)
    return _report("lessgeneral", ident, cert.hypotheses_met, cert.certified, det, wit)


def check_canonical_artinian(ca: CorpusAlgebra, M: ModulePresentation) -> CheckReport:
    w = canonical_module(M.algebra)
    cert = build_center_isomorphism(M, w)
    det = {"hypotheses": cert.hypotheses, "dims": [cert.source_dim, cert.target_dim]}
    ident = f"{ca.label}:M={M.name}"
    return _report("canonical", ident, cert.hypotheses_met, cert.certified, det, _module_witness(ca, M, "canonical"))


# -- aggregation -----------------------------------------------------------------------


@dataclass
class SuiteReport:
    spec: CorpusSpec
    checks: tuple[str, ...] = CHECKS
    reports: list[CheckReport] = field(default_factory=list)
    triples: int = 0
    modules: int = 0

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, Counter] = {c: Counter() for c in self.checks}
        for r in self.reports:
            out[r.check][r.verdict] += 1
        return {c: {v: cnt[v] for v in (PASS, FAIL, UNMET, SKIPPED)} for c, cnt in out.items()}

    def satisfied(self, check: str) -> int:
        return sum(1 for r in self.reports if r.check == check and r.hypothesis_met)

    @property
    def failures(self) -> list[CheckReport]:
        return sorted((r for r in self.reports if r.verdict == FAIL), key=lambda r: (r.check, r.instance))

    def vacuous(self) -> list[str]:
        """Checks exercised too rarely to mean anything (only when the corpus is non-empty)."""
        if not self.reports:
            return []
        return [c for c in self.checks if self.satisfied(c) < MIN_SATISFIED]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.vacuous()

    def to_dict(self) -> dict:
        counts = self.counts()
        rates = {}
        for c in self.checks:
            total = sum(counts[c].values())
            rates[c] = f"{self.satisfied(c)}/{total}"
        return {
            "spec": self.spec.to_dict(),
            "triples": self.triples,
            "modules": self.modules,
            "counts": counts,
            "hypothesis_rates": rates,
            "vacuous": self.vacuous(),
            "failures": [r.to_dict() for r in self.failures],
            "ok": self.ok,
        }


def run_suite(
    spec: CorpusSpec,
    checks: Iterable[str] | None = None,
    progress: Callable[[str], None] | None = None,
    corpus: list[CorpusAlgebra] | None = None,
) -> SuiteReport:
    wanted = set(checks) if checks is not None else set(CHECKS)
    unknown = wanted - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    corpus = generate_corpus(spec) if corpus is None else corpus
    rep = SuiteReport(spec, tuple(c for c in CHECKS if c in wanted))
    add = rep.reports.append
    for ca in corpus:
        if progress:
            progress(ca.label)
        rep.modules += len(ca.modules)
        rep.triples += len(ca.triples)
        for t in ca.triples:
            for i in range(1, 7):
                if f"tracetheory{i}" in wanted:
                    add(check_tracetheory(t, i))
            if "oracle" in wanted:
                add(check_oracle(t, spec.max_oracle_pairs))
            for v in (1, 2):
                if f"general{v}" in wanted:
                    add(check_theorem_general(t, v))
            if "lessgeneral" in wanted:
                add(check_lessgeneral(ca, t.M, t.N))
        for M in ca.modules:
            if "faithref" in wanted:
                add(check_faithref(ca, M))
            if "lindo" in wanted:
                add(check_lindo(ca, M))
            if "center" in wanted:
                add(check_center(ca, M))
            if "canonical" in wanted:
                add(check_canonical_artinian(ca, M))
    return rep
