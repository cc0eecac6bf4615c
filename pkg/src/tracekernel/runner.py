"""Task execution and report emission for input documents."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .artin import ModulePresentation, free_module
from .corpus import DEFAULT_FAMILIES, CorpusAlgebra, CorpusSpec, Triple
from .document import Document, DocumentError, dump_semigroup_instance, ideal_from_values, ideal_preset
from .hom import center_via_hom_over_end, end_ring, hom
from .numsgp import (
    FracIdealVal,
    NumericalSemigroup,
    canonical_ideal,
    canonical_sweep,
    check_corollary_canonical,
    colon,
    end_semigroup,
    equiv_sweep,
    format_values,
    graded_presentation,
    hw_probe,
    hw_sweep,
    ideal_sum,
    omega_reflexive_check,
    semigroup,
    tensor_torsion_length,
    trace_ideal,
    trace_omega,
)
from .oracle import DEFAULT_MAX_PAIRS, factoring_maps, trace_elements
from .suite import (
    CHECKS,
    FAIL,
    check_canonical_artinian,
    check_center,
    check_faithref,
    check_lessgeneral,
    check_lindo,
    check_oracle,
    check_theorem_general,
    check_tracetheory,
    run_suite,
)
from .trace import (
    add_membership,
    build_center_isomorphism,
    build_general_isomorphism,
    evaluation_map,
    generation_predicates,
    reflexivity_predicates,
    semidualizing_check,
    theta_map,
    trace_map,
    trace_submodule,
)

__all__ = ["SCHEMA", "Options", "TaskResult", "Report", "OPS", "run_task", "run_document", "emit"]

SCHEMA = "v1"
OK, FAILED, ERROR = "ok", "fail", "error"


@dataclass(frozen=True)
class Options:
    seed: int = 0
    cutoff: int | None = None
    ext_bound: int | None = None
    max_oracle: int = DEFAULT_MAX_PAIRS
    fail_fast: bool = False


@dataclass
class TaskResult:
    op: str
    args: dict
    status: str
    result: dict = field(default_factory=dict)
    error: str | None = None

    def to_dict(self) -> dict:
        out = {"op": self.op, "args": dict(self.args), "status": self.status, "result": self.result}
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class Report:
    tasks: list[TaskResult] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(t.status == OK for t in self.tasks)

    def to_dict(self) -> dict:
        out = dict(self.meta)
        if self.meta:
            out["ok"] = self.ok
        out["tasks"] = [t.to_dict() for t in self.tasks]
        return out


# -- argument helpers ------------------------------------------------------------------


def _module(doc: Document, args: dict, key: str, default: str | None = None) -> ModulePresentation:
    name = args.get(key, default)
    if name is None:
        raise DocumentError(f"missing argument {key}=")
    return doc.module(name)


def _int(args: dict, key: str, default):
    if key not in args:
        return default
    try:
        return int(args[key])
    except ValueError:
        raise DocumentError(f"{key}= expects an integer, got {args[key]!r}") from None


def _is_free_rank_one(L: ModulePresentation) -> bool:
    R = free_module(L.algebra)
    return L.dim == R.dim and np.array_equal(L.act, R.act)


def _element_str(A, v) -> str:
    labels = A.labels or tuple(f"b{i}" for i in range(A.dim))
    F = A.field
    terms = []
    for i in np.flatnonzero(v):
        c = F.element_str(v[i])
        terms.append(labels[i] if c == "1" else f"{c}*{labels[i]}")
    return " + ".join(terms) or "0"


def _maps(X) -> list:
    return [m.tolist() for m in X]


# -- Artinian operations --------------------------------------------------------------


def op_validate(doc, args, opts):
    return OK, doc.summary()


def op_hom(doc, args, opts):
    H = hom(_module(doc, args, "M"), _module(doc, args, "N"))
    return OK, {"dim": H.dim, "basis": _maps(H.basis)}


def op_end(doc, args, opts):
    E = end_ring(_module(doc, args, "M"))
    return OK, {
        "dim": E.dim,
        "commutative": bool(E.ring.is_commutative()),
        "center_dim": E.center.dim,
        "unit": E.unit.tolist(),
    }


def op_center(doc, args, opts):
    E = end_ring(_module(doc, args, "M"))
    agree = E.center == center_via_hom_over_end(E)
    res = {"dim": E.center.dim, "basis": E.center.basis.tolist(), "equals_end_over_end": bool(agree)}
    return (OK if agree else FAILED), res


def op_trace(doc, args, opts):
    M = _module(doc, args, "M")
    L = _module(doc, args, "L", "R")
    N = _module(doc, args, "N", "R")
    td = trace_map(M, L, N, args.get("method", "auto"))
    res = {
        "tensor_dim": td.tensor.dim,
        "tensor_method": td.tensor.method,
        "hom_dim": td.hom_LN.dim,
        "dim": td.image.dim,
        "kernel_dim": td.kernel.dim,
        "surjective": td.surjective,
        "injective": td.injective,
        "generators": [list(g) for g in td.generators],
        "maps": _maps(td.image_maps()),
    }
    if _is_free_rank_one(L):
        sub = trace_submodule(M, N)
        res["submodule_basis"] = sub.basis.tolist()
        if _is_free_rank_one(N):
            res["basis"] = [_element_str(M.algebra, v) for v in sub.basis]
    return OK, res


def op_theta(doc, args, opts):
    th = theta_map(_module(doc, args, "L"), _module(doc, args, "N"))
    res = {"dim": th.image.dim, "matches_phi": th.matches_phi, "images_equal": th.images_equal}
    return (OK if th.matches_phi and th.images_equal else FAILED), res


def op_reflexive(doc, args, opts):
    M = _module(doc, args, "M")
    L = _module(doc, args, "L", "R")
    res = {}
    if "N" in args:
        res.update(reflexivity_predicates(M, _module(doc, args, "N"), L))
    ev = evaluation_map(M, L)
    res["torsionless"] = ev.injective
    res["reflexive"] = ev.bijective
    return OK, res


def op_add(doc, args, opts):
    return OK, {"member": add_membership(_module(doc, args, "N"), _module(doc, args, "M"))}


def op_generate(doc, args, opts):
    M, N = _module(doc, args, "M"), _module(doc, args, "N")
    return OK, generation_predicates(M, N, _module(doc, args, "L", "R"))


def op_semidualizing(doc, args, opts):
    C = _module(doc, args, "C", args.get("M"))
    res = semidualizing_check(C, _int(args, "bound", opts.ext_bound))
    res["semidualizing"] = res["homothety_iso"] and res["ext_vanishing_up_to_bound"]
    return OK, res


def op_iso(doc, args, opts):
    kind = args.get("kind", "general")
    M = _module(doc, args, "M")
    if kind == "general":
        variant = _int(args, "variant", 1)
        if variant not in (1, 2):
            raise DocumentError("variant= must be 1 or 2")
        cert = build_general_isomorphism(M, _module(doc, args, "L", "R"), _module(doc, args, "N", "R"), variant)
    elif kind == "center":
        cert = build_center_isomorphism(M, _module(doc, args, "N", "R"))
    else:
        raise DocumentError(f"kind= must be general or center, got {kind!r}")
    res = cert.to_dict()
    res.pop("matrix")
    return (FAILED if cert.verdict == FAIL else OK), res


def op_oracle(doc, args, opts):
    M = _module(doc, args, "M")
    L = _module(doc, args, "L", "R")
    N = _module(doc, args, "N", "R")
    out = factoring_maps(M, L, N, _int(args, "max_pairs", opts.max_oracle))
    res = {"status": out.status, "copies": out.copies, "pairs": out.pairs}
    if out.status != "ok":
        return OK, res
    from .trace import trace_image

    tr = trace_image(M, L, N)
    elems = trace_elements(hom(L, N).element(tr.basis), M.field, tr.dim)
    res.update({"size": out.size, "trace_size": len(elems), "equal": elems == out.maps})
    return (OK if elems == out.maps else FAILED), res


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise DocumentError(f"expected a comma separated integer list, got {text!r}") from None


def _suite_spec(args: dict, opts: Options) -> CorpusSpec:
    base = CorpusSpec()
    families = base.families
    if "families" in args:
        want = set(args["families"].split(","))
        families = tuple(f for f in DEFAULT_FAMILIES if f[0] in want)
    return CorpusSpec(
        seed=opts.seed,
        fields=_parse_ints(args["fields"]) if "fields" in args else base.fields,
        families=families,
        max_dim=_int(args, "max_dim", base.max_dim),
        random_quotients=_int(args, "random_quotients", base.random_quotients),
        triples_per_algebra=_int(args, "triples", base.triples_per_algebra),
        max_oracle_pairs=opts.max_oracle,
        ext_bound=opts.ext_bound,
    )


def op_suite(doc, args, opts):
    checks = args["checks"].split(",") if "checks" in args else None
    if checks and set(checks) - set(CHECKS):
        raise DocumentError(f"unknown checks {sorted(set(checks) - set(CHECKS))}")
    rep = run_suite(_suite_spec(args, opts), checks)
    return (OK if rep.ok else FAILED), rep.to_dict()


_TRIPLE_CHECKS = {f"tracetheory{i}" for i in range(1, 7)} | {"oracle", "general1", "general2"}


def op_check(doc, args, opts):
    """Replay a single corpus check on the document's modules."""
    name = args.get("name")
    if name not in CHECKS:
        raise DocumentError(f"name= must be one of {', '.join(CHECKS)}")
    M = _module(doc, args, "M")
    ca = CorpusAlgebra("replay", M.algebra, (), ())
    if name in _TRIPLE_CHECKS:
        t = Triple(ca, M, _module(doc, args, "L", "R"), _module(doc, args, "N", "R"), _module(doc, args, "B", "R"))
        if name == "oracle":
            rep = check_oracle(t, opts.max_oracle)
        elif name.startswith("general"):
            rep = check_theorem_general(t, int(name[-1]))
        else:
            rep = check_tracetheory(t, int(name[-1]))
    elif name == "lessgeneral":
        rep = check_lessgeneral(ca, M, _module(doc, args, "N"))
    else:
        fn = {
            "faithref": check_faithref,
            "lindo": check_lindo,
            "center": check_center,
            "canonical": check_canonical_artinian,
        }[name]
        rep = fn(ca, M)
    res = rep.to_dict()
    res.pop("witness", None)
    return (FAILED if rep.verdict == FAIL else OK), res


# -- semigroup operations --------------------------------------------------------------


def _semigroup(doc: Document, args: dict) -> NumericalSemigroup:
    if "gens" in args:
        try:
            return semigroup(_parse_ints(args["gens"]))
        except ValueError as e:
            raise DocumentError(str(e)) from None
    if "semigroup" in args:
        try:
            return doc.semigroups[args["semigroup"]]
        except KeyError:
            raise DocumentError(f"unknown semigroup {args['semigroup']!r}") from None
    if doc.semigroups:
        return next(iter(doc.semigroups.values()))
    raise DocumentError("no semigroup: give gens= or define one")


def _ideal(doc: Document, S: NumericalSemigroup, text: str) -> FracIdealVal:
    I = doc.ideals.get(text)
    if I is not None and I.S == S:
        return I
    if text in ("R", "omega", "m"):
        return ideal_preset(S, text, [])
    return ideal_from_values(S, text)


def _ideal_arg(doc, S, args, key, default=None) -> FracIdealVal:
    text = args.get(key, default)
    if text is None:
        raise DocumentError(f"missing argument {key}=")
    return _ideal(doc, S, text)


def _sgp_fail(S, ideals: dict, task: str) -> dict:
    return {"document": dump_semigroup_instance(S, ideals, [task]), "task": task}


def op_sgp_info(doc, args, opts):
    return OK, _semigroup(doc, args).to_dict()


def op_sgp_canonical(doc, args, opts):
    S = _semigroup(doc, args)
    return OK, {"canonical": format_values(canonical_ideal(S)), "symmetric": S.symmetric}


def op_sgp_colon(doc, args, opts):
    S = _semigroup(doc, args)
    J, I = _ideal_arg(doc, S, args, "J"), _ideal_arg(doc, S, args, "I")
    C = colon(J, I)
    ok = ideal_sum(C, I) <= J
    return (OK if ok else FAILED), {"colon": format_values(C), "contained": ok}


def op_sgp_sum(doc, args, opts):
    S = _semigroup(doc, args)
    return OK, {"sum": format_values(ideal_sum(_ideal_arg(doc, S, args, "I"), _ideal_arg(doc, S, args, "J")))}


def op_sgp_trace(doc, args, opts):
    S = _semigroup(doc, args)
    I = _ideal_arg(doc, S, args, "ideal")
    return OK, {"trace_R": format_values(trace_ideal(I)), "trace_omega": format_values(trace_omega(I))}


def op_sgp_end(doc, args, opts):
    S = _semigroup(doc, args)
    E = end_semigroup(_ideal_arg(doc, S, args, "ideal"))
    return OK, E.to_dict()


def op_sgp_reflexive(doc, args, opts):
    S = _semigroup(doc, args)
    ok = omega_reflexive_check(_ideal_arg(doc, S, args, "ideal"))
    return (OK if ok else FAILED), {"omega_reflexive": ok}


def op_sgp_check_canonical(doc, args, opts):
    S = _semigroup(doc, args)
    I = _ideal_arg(doc, S, args, "ideal")
    rep = check_corollary_canonical(I)
    res = rep.to_dict()
    if rep.verdict != "pass":
        res["witness"] = _sgp_fail(S, {"I": I}, "sgp.check_canonical ideal=I")
        return FAILED, res
    return OK, res


def op_sgp_presentation(doc, args, opts):
    S = _semigroup(doc, args)
    I = _ideal_arg(doc, S, args, "ideal")
    return OK, graded_presentation(I, _int(args, "cutoff", opts.cutoff)).to_dict()


def op_sgp_torsion(doc, args, opts):
    S = _semigroup(doc, args)
    I, J = _ideal_arg(doc, S, args, "I"), _ideal_arg(doc, S, args, "J")
    return OK, tensor_torsion_length(I, J, _int(args, "cutoff", opts.cutoff)).to_dict()


def op_sgp_hw_probe(doc, args, opts):
    S = _semigroup(doc, args)
    rep = hw_probe(_ideal_arg(doc, S, args, "ideal"), _int(args, "cutoff", opts.cutoff))
    ok = rep.prop_equiv_consistent and rep.gorenstein_consistent
    return (OK if ok else FAILED), rep.to_dict()


def op_sgp_sweep(doc, args, opts):
    kind = args.get("kind", "canonical")
    if kind == "canonical":
        out = canonical_sweep(_int(args, "genus", 8))
    elif kind == "equiv":
        out = equiv_sweep(_int(args, "genus", 6), opts.cutoff)
    elif kind == "hw":
        out = hw_sweep(_int(args, "genus", 6), opts.cutoff)
    else:
        raise DocumentError(f"kind= must be canonical, equiv or hw, got {kind!r}")
    return (OK if out.ok else FAILED), out.to_dict()


OPS: dict[str, Callable] = {
    "validate": op_validate,
    "hom": op_hom,
    "end": op_end,
    "center": op_center,
    "trace": op_trace,
    "theta": op_theta,
    "reflexive": op_reflexive,
    "add": op_add,
    "generate": op_generate,
    "semidualizing": op_semidualizing,
    "iso": op_iso,
    "oracle": op_oracle,
    "suite": op_suite,
    "check": op_check,
    "sgp.info": op_sgp_info,
    "sgp.canonical": op_sgp_canonical,
    "sgp.colon": op_sgp_colon,
    "sgp.sum": op_sgp_sum,
    "sgp.trace": op_sgp_trace,
    "sgp.end": op_sgp_end,
    "sgp.reflexive": op_sgp_reflexive,
    "sgp.check_canonical": op_sgp_check_canonical,
    "sgp.presentation": op_sgp_presentation,
    "sgp.torsion": op_sgp_torsion,
    "sgp.hw_probe": op_sgp_hw_probe,
    "sgp.sweep": op_sgp_sweep,
}


def run_task(doc: Document, op: str, args: dict, opts: Options) -> TaskResult:
    fn = OPS.get(op)
    if fn is None:
        return TaskResult(op, args, ERROR, error=f"unknown operation {op!r}")
    try:
        status, result = fn(doc, args, opts)
    except (DocumentError, ValueError, KeyError) as e:
        return TaskResult(op, args, ERROR, error=str(e))
    return TaskResult(op, args, status, result)


def run_document(doc: Document, opts: Options, tasks=None) -> Report:
    """Run ``tasks`` (default: every task in the document) in order."""
    rep = Report(meta={"schema": SCHEMA, "seed": opts.seed})
    for t in doc.tasks if tasks is None else tasks:
        res = run_task(doc, t.op, t.args, opts)
        rep.tasks.append(res)
        if opts.fail_fast and res.status != OK:
            break
    return rep


# -- emission ------------------------------------------------------------------------------


def _plain(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _scalar(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, default=_plain)
    return str(v)


def emit(report: Report, mode: str = "json") -> str:
    if mode == "json":
        return json.dumps(report.to_dict(), sort_keys=True, default=_plain)
    if mode != "human":
        raise ValueError(f"unknown mode {mode!r}")
    lines = []
    for n, t in enumerate(report.tasks, 1):
        head = " ".join([t.op] + [f"{k}={v}" for k, v in t.args.items()])
        lines.append(f"[{n}] {head}  {t.status}")
        if t.error:
            lines.append(f"    error: {t.error}")
        width = max((len(k) for k in t.result), default=0)
        for k in sorted(t.result):
            lines.append(f"    {k.ljust(width)}  {_scalar(t.result[k])}")
    failed = sum(1 for t in report.tasks if t.status != OK)
    lines.append(f"{len(report.tasks)} task(s), {failed} not ok")
    return "\n".join(lines)
