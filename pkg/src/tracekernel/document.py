"""Line-oriented input documents: algebras, modules, semigroups, ideals and tasks.

Grammar (``#`` starts a comment, blank lines are ignored)::

    version = 1                 # optional, must be 1
    field = F2                  # default field for algebra blocks

    [algebra A]                 # explicit: structure constants
    field = F3                  # optional override; poly = c0 c1 ... 1 for F_{p^k}
    dim = 2
    labels = 1 x                # optional
    unit = 1 0                  # optional, default e0
    mult 1 1 = 0 0              # b1 * b1; unset products are 0, b_j b_i defaults to b_i b_j

    [algebra B]                 # preset
    fam = truncated_poly
    n = 3

    [module M]
    algebra = A                 # default: the first algebra
    dim = 2
    act 1 = 0 0; 1 0            # matrix of b1, rows separated by ';'

    [module N]
    preset = syzygy(M)          # free(n) R k omega m matlis_dual(X) syzygy(X[,t]) direct_sum(X,Y,..) quotient(X)
    vectors = 1 0 1 0           # generators killed by quotient(X), rows separated by ';'

    [semigroup S]
    gens = 3,4,5

    [ideal I]
    semigroup = S               # default: the first semigroup
    values = 0,1,3..            # or preset = R | omega | m | colon(J,I) | sum(J,I) | trace(I) | trace_omega(I)

    [tasks]
    trace M=k L=R N=R
    sgp.check_canonical gens=3,4,5 ideal=m

A block may also be written on one line, ``algebra A fam=dual_numbers field=F2``;
the name may be omitted there and defaults to ``A``, ``M``, ``S`` or ``I``.
Every algebra brings implicit modules ``R k omega m`` (also ``A.R`` etc.) and every
semigroup brings implicit ideals ``R omega m``; explicit blocks of the same name win.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .artin import (
    AlgebraPresentation,
    ModulePresentation,
    ValidationError,
    algebra_preset,
    canonical_module,
    cyclic_quotient,
    direct_sum,
    free_module,
    matlis_dual,
    maximal_ideal,
    residue_field,
    syzygy,
    validate_algebra,
    validate_module,
)
from .gf import GF, FieldError, field_from_name
from .numsgp import (
    FracIdealVal,
    NumericalSemigroup,
    SemigroupError,
    canonical_ideal,
    colon,
    format_values,
    ideal_sum,
    parse_values,
    semigroup,
    semigroup_ideal,
    trace_ideal,
    trace_omega,
    value_set,
)
from .numsgp import maximal_ideal as sgp_maximal_ideal

__all__ = ["DocumentError", "Task", "Document", "parse", "parse_file", "dump_instance", "dump_semigroup_instance"]

KINDS = ("algebra", "module", "semigroup", "ideal")
DEFAULT_NAMES = {"algebra": "A", "module": "M", "semigroup": "S", "ideal": "I"}
IMPLICIT_MODULES = ("R", "k", "omega", "m")
IMPLICIT_IDEALS = ("R", "omega", "m")


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class _Block:
    kind: str
    name: str
    line: int
    entries: dict = field(default_factory=dict)  # key -> (value, line)
    mult: list = field(default_factory=list)  # (i, j, values, line)
    act: list = field(default_factory=list)  # (i, rows, line)


@dataclass(frozen=True)
class Task:
    op: str
    args: dict
    line: int

    def text(self) -> str:
        return " ".join([self.op] + [f"{k}={v}" for k, v in self.args.items()])


@dataclass
class Document:
    field: GF | None
    algebras: dict[str, AlgebraPresentation]
    modules: dict[str, ModulePresentation]
    semigroups: dict[str, NumericalSemigroup]
    ideals: dict[str, FracIdealVal]
    tasks: list[Task]

    def module(self, name: str) -> ModulePresentation:
        try:
            return self.modules[name]
        except KeyError:
            raise DocumentError(f"unknown module {name!r}") from None

    def ideal(self, name: str) -> FracIdealVal:
        try:
            return self.ideals[name]
        except KeyError:
            raise DocumentError(f"unknown ideal {name!r}") from None

    def summary(self) -> dict:
        return {
            "field": self.field.name if self.field else None,
            "algebras": {n: {"dim": A.dim, "field": A.field.name} for n, A in self.algebras.items()},
            "modules": {n: M.dim for n, M in sorted(self.modules.items())},
            "semigroups": {n: list(S.generators) for n, S in self.semigroups.items()},
            "ideals": {n: format_values(I) for n, I in sorted(self.ideals.items())},
            "tasks": len(self.tasks),
        }


# -- lexing ------------------------------------------------------------------------

_HEADER = re.compile(r"^\[\s*(\w+)(?:\s+([\w.+()-]+))?\s*\]$")
_KV = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.*)$")
_MULT = re.compile(r"^mult\s+(\d+)\s+(\d+)\s*=\s*(.*)$")
_ACT = re.compile(r"^act\s+(\d+)\s*=\s*(.*)$")
_TOKEN_KV = re.compile(r"^([A-Za-z_]\w*)=(\S*)$")


def _ints(text: str, line: int) -> list[int]:
    try:
        return [int(t) for t in re.split(r"[,\s]+", text.strip()) if t]
    except ValueError:
        raise DocumentError(f"expected integers, got {text!r}", line) from None


def _rows(text: str, line: int) -> list[list[int]]:
    return [_ints(r, line) for r in text.split(";") if r.strip()]


def _task_args(tokens: list[str], line: int) -> dict:
    args = {}
    for tok in tokens:
        m = _TOKEN_KV.match(tok)
        if not m:
            raise DocumentError(f"expected key=value, got {tok!r}", line)
        if m.group(1) in args:
            raise DocumentError(f"argument {m.group(1)!r} given twice", line)
        args[m.group(1)] = m.group(2)
    return args


def _lex(text: str):
    top: dict = {}
    blocks: list[_Block] = []
    tasks: list[Task] = []
    current: _Block | None = None
    in_tasks = False
    for n, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        h = _HEADER.match(s)
        if h:
            kind, name = h.group(1), h.group(2)
            if kind == "tasks":
                if name:
                    raise DocumentError("[tasks] takes no name", n)
                in_tasks, current = True, None
                continue
            if kind not in KINDS:
                raise DocumentError(f"unknown section kind {kind!r}", n)
            in_tasks = False
            current = _Block(kind, name or DEFAULT_NAMES[kind], n)
            blocks.append(current)
            continue
        if in_tasks:
            toks = s.split()
            tasks.append(Task(toks[0], _task_args(toks[1:], n), n))
            continue
        first = s.split()[0]
        if first in KINDS and "=" not in first and not _KV.match(s):
            toks = s.split()[1:]
            name = DEFAULT_NAMES[first]
            if toks and "=" not in toks[0]:
                name, toks = toks[0], toks[1:]
            b = _Block(first, name, n)
            for k, v in _task_args(toks, n).items():
                b.entries[k] = (v, n)
            blocks.append(b)
            current = None
            continue
        target = current.entries if current is not None else top
        m = _MULT.match(s)
        if m and current is not None:
            current.mult.append((int(m.group(1)), int(m.group(2)), _ints(m.group(3), n), n))
            continue
        m = _ACT.match(s)
        if m and current is not None:
            current.act.append((int(m.group(1)), _rows(m.group(2), n), n))
            continue
        m = _KV.match(s)
        if not m:
            raise DocumentError(f"cannot parse {s!r}", n)
        key, val = m.group(1), m.group(2).strip()
        if key in target:
            raise DocumentError(f"key {key!r} repeated (first on line {target[key][1]})", n)
        target[key] = (val, n)
    return top, blocks, tasks


# -- resolution ---------------------------------------------------------------------

_CALL = re.compile(r"^(\w+)(?:\((.*)\))?$")


def _field(entries: dict, default: GF | None, line: int) -> GF:
    if "field" not in entries:
        if default is None:
            raise DocumentError("no field given", line)
        return default
    name, ln = entries["field"]
    poly = tuple(_ints(entries["poly"][0], entries["poly"][1])) if "poly" in entries else None
    try:
        return field_from_name(name, poly)
    except FieldError as e:
        raise DocumentError(str(e), ln) from None


class _Resolver:
    def __init__(self, top: dict, blocks: list[_Block]):
        self.default_field = None
        if "version" in top and top["version"][0] != "1":
            raise DocumentError(f"unsupported version {top['version'][0]!r}", top["version"][1])
        for key, (_, ln) in top.items():
            if key not in ("version", "field", "poly"):
                raise DocumentError(f"unknown top-level key {key!r}", ln)
        if "field" in top:
            self.default_field = _field(top, None, top["field"][1])
        self.blocks: dict[str, dict[str, _Block]] = {k: {} for k in KINDS}
        for b in blocks:
            seen = self.blocks[b.kind]
            if b.name in seen:
                raise DocumentError(
                    f"duplicate {b.kind} name {b.name!r} (lines {seen[b.name].line} and {b.line})", b.line
                )
            seen[b.name] = b
        self.algebras: dict[str, AlgebraPresentation] = {}
        self.modules: dict[str, ModulePresentation] = {}
        self.semigroups: dict[str, NumericalSemigroup] = {}
        self.ideals: dict[str, FracIdealVal] = {}
        self._busy: set = set()

    # algebras
    def algebra(self, name: str, line: int) -> AlgebraPresentation:
        if name in self.algebras:
            return self.algebras[name]
        b = self.blocks["algebra"].get(name)
        if b is None:
            raise DocumentError(f"unknown algebra {name!r}", line)
        F = _field(b.entries, self.default_field, b.line)
        try:
            A = self._build_algebra(F, b)
        except (ValidationError, ValueError, TypeError) as e:
            if isinstance(e, DocumentError):
                raise
            raise DocumentError(f"algebra {name}: {e}", b.line) from None
        self.algebras[name] = A
        return A

    def _build_algebra(self, F: GF, b: _Block) -> AlgebraPresentation:
        e = b.entries
        if "fam" in e:
            params = {k: v for k, (v, _) in e.items() if k not in ("fam", "field", "poly")}
            params = {k: int(v) if re.fullmatch(r"-?\d+", v) else v for k, v in params.items()}
            A = algebra_preset(F, e["fam"][0], **params)
            return AlgebraPresentation(A.field, A.const, A.unit, A.labels, b.name)
        if "dim" not in e:
            raise DocumentError("algebra block needs fam= or dim=", b.line)
        d = int(e["dim"][0])
        unit = np.zeros(d, dtype=np.int64)
        if "unit" in e:
            unit = np.array(_ints(*e["unit"]), dtype=np.int64)
        else:
            unit[0] = 1
        const = np.zeros((d, d, d), dtype=np.int64)
        given = set()
        for i, j, vals, ln in b.mult:
            if not (0 <= i < d and 0 <= j < d) or len(vals) != d:
                raise DocumentError(f"mult {i} {j}: need indices < {d} and {d} coefficients", ln)
            if (i, j) in given:
                raise DocumentError(f"mult {i} {j} given twice", ln)
            const[i, j] = vals
            given.add((i, j))
        for i, j in list(given):
            if (j, i) not in given:
                const[j, i] = const[i, j]
                given.add((j, i))
        nz = np.flatnonzero(unit)
        if len(nz) == 1 and unit[nz[0]] == 1:
            u = int(nz[0])
            for i in range(d):
                if (u, i) not in given:
                    const[u, i, i] = 1
                if (i, u) not in given:
                    const[i, u, i] = 1
        labels = tuple(e["labels"][0].split()) if "labels" in e else None
        if labels is not None and len(labels) != d:
            raise DocumentError(f"need {d} labels", e["labels"][1])
        return validate_algebra(F, const, unit, labels, b.name)

    def first_algebra(self, line: int) -> str:
        names = list(self.blocks["algebra"])
        if not names:
            raise DocumentError("no algebra defined", line)
        return names[0]

    # modules
    def module(self, name: str, line: int) -> ModulePresentation:
        if name in self.modules:
            return self.modules[name]
        b = self.blocks["module"].get(name)
        if b is None:
            alg, _, base = name.rpartition(".")
            if base in IMPLICIT_MODULES and (alg in self.blocks["algebra"] or (not alg and self.blocks["algebra"])):
                A = self.algebra(alg or self.first_algebra(line), line)
                M = _implicit_module(A, base)
                self.modules[name] = M
                return M
            raise DocumentError(f"unknown module {name!r}", line)
        if name in self._busy:
            raise DocumentError(f"module {name!r} refers to itself", b.line)
        self._busy.add(name)
        try:
            M = self._build_module(b)
        except (ValidationError, ValueError) as e:
            if isinstance(e, DocumentError):
                raise
            raise DocumentError(f"module {name}: {e}", b.line) from None
        finally:
            self._busy.discard(name)
        self.modules[name] = M
        return M

    def _build_module(self, b: _Block) -> ModulePresentation:
        e = b.entries
        alg_name, ln = e.get("algebra", (None, b.line))
        A = self.algebra(alg_name or self.first_algebra(b.line), ln)
        if "preset" in e:
            text, pl = e["preset"]
            m = _CALL.match(text.replace(" ", ""))
            if not m:
                raise DocumentError(f"cannot parse preset {text!r}", pl)
            op, arg = m.group(1), m.group(2)
            args = [a for a in (arg or "").split(",") if a]
            M = self._module_preset(A, op, args, b, pl)
            if M.algebra is not A:
                raise DocumentError("preset argument lives over a different algebra", pl)
            return M.renamed(b.name)
        if "dim" not in e:
            raise DocumentError("module block needs preset= or dim=", b.line)
        n = int(e["dim"][0])
        act = np.zeros((A.dim, n, n), dtype=np.int64)
        given = set()
        for i, rows, al in b.act:
            mat = np.array(rows, dtype=np.int64).reshape(-1, n) if n else np.zeros((0, 0), dtype=np.int64)
            if not 0 <= i < A.dim or mat.shape != (n, n):
                raise DocumentError(f"act {i}: need index < {A.dim} and a {n} x {n} matrix", al)
            if i in given:
                raise DocumentError(f"act {i} given twice", al)
            act[i] = mat
            given.add(i)
        nz = np.flatnonzero(A.unit)
        if len(nz) == 1 and A.unit[nz[0]] == 1 and int(nz[0]) not in given:
            act[int(nz[0])] = np.eye(n, dtype=np.int64)
            given.add(int(nz[0]))
        missing = sorted(set(range(A.dim)) - given)
        if missing:
            raise DocumentError(f"missing act lines for basis elements {missing}", b.line)
        return validate_module(A, act, b.name)

    def _module_preset(self, A, op: str, args: list[str], b: _Block, line: int) -> ModulePresentation:
        def mod(i):
            if i >= len(args):
                raise DocumentError(f"{op} needs a module argument", line)
            return self.module(args[i], line)

        if op in ("R", "free"):
            return free_module(A, int(args[0]) if args else 1)
        if op in ("k", "residue_field"):
            return residue_field(A)
        if op in ("omega", "canonical", "canonical_module"):
            return canonical_module(A)
        if op in ("m", "maximal_ideal"):
            return maximal_ideal(A)
        if op == "matlis_dual":
            return matlis_dual(mod(0))
        if op == "syzygy":
            return syzygy(mod(0), int(args[1]) if len(args) > 1 else 1)
        if op == "direct_sum":
            if not args:
                raise DocumentError("direct_sum needs arguments", line)
            return direct_sum(*[self.module(a, line) for a in args])
        if op == "quotient":
            base = mod(0)
            vecs = _rows(*b.entries["vectors"]) if "vectors" in b.entries else []
            return cyclic_quotient(base, np.array(vecs, dtype=np.int64).reshape(-1, base.dim))
        raise DocumentError(f"unknown module preset {op!r}", line)

    # semigroups and ideals
    def semigroup(self, name: str, line: int) -> NumericalSemigroup:
        if name in self.semigroups:
            return self.semigroups[name]
        b = self.blocks["semigroup"].get(name)
        if b is None:
            raise DocumentError(f"unknown semigroup {name!r}", line)
        if "gens" not in b.entries:
            raise DocumentError("semigroup block needs gens=", b.line)
        try:
            S = semigroup(_ints(*b.entries["gens"]))
        except SemigroupError as e:
            raise DocumentError(str(e), b.entries["gens"][1]) from None
        self.semigroups[name] = S
        return S

    def ideal(self, name: str, line: int) -> FracIdealVal:
        if name in self.ideals:
            return self.ideals[name]
        b = self.blocks["ideal"].get(name)
        if b is None:
            if name in IMPLICIT_IDEALS and self.blocks["semigroup"]:
                S = self.semigroup(next(iter(self.blocks["semigroup"])), line)
                I = ideal_preset(S, name, [])
                self.ideals[name] = I
                return I
            raise DocumentError(f"unknown ideal {name!r}", line)
        if name in self._busy:
            raise DocumentError(f"ideal {name!r} refers to itself", b.line)
        self._busy.add(name)
        try:
            sg, sl = b.entries.get("semigroup", (None, b.line))
            if sg is None:
                if not self.blocks["semigroup"]:
                    raise DocumentError("no semigroup defined", b.line)
                sg = next(iter(self.blocks["semigroup"]))
            S = self.semigroup(sg, sl)
            if "values" in b.entries:
                I = ideal_from_values(S, *b.entries["values"])
            elif "preset" in b.entries:
                text, pl = b.entries["preset"]
                m = _CALL.match(text.replace(" ", ""))
                if not m:
                    raise DocumentError(f"cannot parse preset {text!r}", pl)
                args = [self.ideal(a, pl) for a in (m.group(2) or "").split(",") if a]
                I = ideal_preset(S, m.group(1), args, pl)
            else:
                raise DocumentError("ideal block needs values= or preset=", b.line)
        finally:
            self._busy.discard(name)
        self.ideals[name] = I
        return I


def _implicit_module(A: AlgebraPresentation, base: str) -> ModulePresentation:
    if base == "R":
        return free_module(A)
    if base == "k":
        return residue_field(A)
    if base == "omega":
        return canonical_module(A)
    return maximal_ideal(A)


def ideal_from_values(S: NumericalSemigroup, text: str, line: int | None = None) -> FracIdealVal:
    try:
        vals, tail = parse_values(text)
        return value_set(S, vals, tail)
    except ValueError as e:
        raise DocumentError(f"ideal values {text!r}: {e}", line) from None


def ideal_preset(S: NumericalSemigroup, op: str, args: list, line: int | None = None) -> FracIdealVal:
    """R, omega, m, colon(J,I), sum(J,I), trace(I), trace_omega(I)."""
    nargs = {"R": 0, "omega": 0, "m": 0, "colon": 2, "sum": 2, "trace": 1, "trace_omega": 1}
    if op not in nargs:
        raise DocumentError(f"unknown ideal preset {op!r}", line)
    if len(args) != nargs[op]:
        raise DocumentError(f"{op} takes {nargs[op]} arguments", line)
    if any(a.S != S for a in args):
        raise DocumentError("ideal arguments over a different semigroup", line)
    if op == "R":
        return semigroup_ideal(S)
    if op == "omega":
        return canonical_ideal(S)
    if op == "m":
        return sgp_maximal_ideal(S)
    if op == "colon":
        return colon(*args)
    if op == "sum":
        return ideal_sum(*args)
    if op == "trace":
        return trace_ideal(args[0])
    return trace_omega(args[0])


def parse(text: str) -> Document:
    """Parse and fully resolve a document; every block is validated."""
    top, blocks, tasks = _lex(text)
    r = _Resolver(top, blocks)
    for b in blocks:
        getattr(r, b.kind)(b.name, b.line)
    if r.blocks["algebra"]:
        for base in IMPLICIT_MODULES:
            if base not in r.blocks["module"]:
                r.module(base, 0)
    if r.blocks["semigroup"]:
        for base in IMPLICIT_IDEALS:
            if base not in r.blocks["ideal"]:
                r.ideal(base, 0)
    return Document(r.default_field, r.algebras, r.modules, r.semigroups, r.ideals, tasks)


def parse_file(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- dumping ----------------------------------------------------------------------------


def _field_lines(F: GF) -> list[str]:
    out = [f"field = {F.name}"]
    if not F.prime:
        out.append("poly = " + " ".join(map(str, F.poly)))
    return out


def _vec(v) -> str:
    return " ".join(str(int(x)) for x in v)


def _mat(m) -> str:
    return "; ".join(_vec(r) for r in m)


def dump_instance(algebra: AlgebraPresentation, modules: dict[str, ModulePresentation], tasks: list[str]) -> str:
    """A self-contained document with explicit structure constants and action matrices."""
    A = algebra
    lines = ["version = 1"] + _field_lines(A.field) + ["", "[algebra A]", f"dim = {A.dim}"]
    if A.labels:
        lines.append("labels = " + " ".join(A.labels))
    lines.append("unit = " + _vec(A.unit))
    for i in range(A.dim):
        for j in range(A.dim):
            lines.append(f"mult {i} {j} = {_vec(A.const[i, j])}")
    for name, M in modules.items():
        lines += ["", f"[module {name}]", "algebra = A", f"dim = {M.dim}"]
        for i in range(A.dim):
            lines.append(f"act {i} = {_mat(M.act[i])}" if M.dim else f"act {i} =")
    lines += ["", "[tasks]"] + list(tasks)
    return "\n".join(lines) + "\n"


def dump_semigroup_instance(S: NumericalSemigroup, ideals: dict[str, FracIdealVal], tasks: list[str]) -> str:
    lines = ["version = 1", "", "[semigroup S]", "gens = " + ",".join(map(str, S.generators))]
    for name, I in ideals.items():
        lines += ["", f"[ideal {name}]", "semigroup = S", f"values = {format_values(I)}"]
    lines += ["", "[tasks]"] + list(tasks)
    return "\n".join(lines) + "\n"
