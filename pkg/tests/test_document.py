import numpy as np
import pytest

from tracekernel.artin import direct_sum, free_module, residue_field, square_zero, syzygy
from tracekernel.document import DocumentError, dump_instance, dump_semigroup_instance, parse
from tracekernel.gf import GF
from tracekernel.hom import hom
from tracekernel.numsgp import canonical_ideal, format_values, maximal_ideal, semigroup

EXPLICIT = """
version = 1
field = F2

[algebra A]
dim = 3
labels = 1 x x^2
mult 1 1 = 0 0 1

[module M]
dim = 2
act 1 = 0 0; 1 0
act 2 = 0 0; 0 0

[module N]
preset = syzygy(M)

[semigroup S]
gens = 3,4,5

[ideal I]
values = 0,3..

[ideal J]
preset = colon(omega,I)

[tasks]
trace M=M L=R N=R
sgp.torsion I=I J=J
"""


def test_explicit_document():
    doc = parse(EXPLICIT)
    A = doc.algebras["A"]
    assert A.dim == 3 and A.labels == ("1", "x", "x^2")
    x = A.basis_vector(1)
    assert A.mul(x, A.mul(x, x)).tolist() == [0, 0, 0]
    assert doc.module("M").dim == 2
    assert doc.module("N").dim == syzygy(doc.module("M")).dim
    assert {"R", "k", "omega", "m"} <= set(doc.modules)
    assert format_values(doc.ideal("I")) == "0,3.."
    assert doc.ideal("J") is not None and "omega" in doc.ideals
    assert [t.op for t in doc.tasks] == ["trace", "sgp.torsion"]
    assert doc.tasks[0].args == {"M": "M", "L": "R", "N": "R"}
    assert doc.tasks[0].text() == "trace M=M L=R N=R"


def test_one_line_blocks_and_presets():
    doc = parse("algebra fam=truncated_poly n=3 field=F3\nmodule X preset=direct_sum(R,k)\nsemigroup gens=3,4\n")
    A = doc.algebras["A"]
    assert A.dim == 3 and A.field is GF(3)
    assert doc.module("X").dim == 4
    assert doc.semigroups["S"].generators == (3, 4)
    assert format_values(doc.ideal("m")) == "3,4,6.."


def test_extension_field_header():
    doc = parse("field = F4\nalgebra fam=dual_numbers\n")
    assert doc.algebras["A"].field is GF(2, 2)


@pytest.mark.parametrize(
    "text,line",
    [
        ("field = F2\n[algebra A]\ndim = 2\nmult 1 1 = 1 0 0\n", 4),
        ("algebra fam=nope\n", 1),
        ("[module M]\ndim = 1\n", 1),
        ("[algebra A]\ndim = 1\n", 1),
        ("field = F2\nalgebra fam=dual_numbers\n[module M]\ndim = 2\nact 1 = 0 1; 1 0\n", 3),
        ("version = 2\n", 1),
        ("field = F2\nalgebra fam=dual_numbers\n[module Q]\npreset = syzygy(Z)\n", 4),
        ("semigroup gens=3,4\n[ideal I]\nvalues = 0,1,6..\n", 3),
        ("[algebra A]\nbogus line here\n", 2),
    ],
)
def test_errors_report_line_numbers(text, line):
    with pytest.raises(DocumentError) as info:
        parse(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_duplicate_names_report_both_lines():
    with pytest.raises(DocumentError) as info:
        parse("algebra A fam=dual_numbers\n\nalgebra A fam=dual_numbers\n")
    assert info.value.line == 3 and "1" in str(info.value)


def test_non_local_algebra_rejected():
    text = "[algebra A]\ndim = 2\nunit = 1 1\nmult 0 0 = 1 0\nmult 1 1 = 0 1\n"
    with pytest.raises(DocumentError):
        parse(text)


def test_dump_round_trip(F2):
    A = square_zero(F2, 2)
    mods = {"P": direct_sum(free_module(A), residue_field(A)), "Q": syzygy(residue_field(A))}
    text = dump_instance(A, mods, ["hom M=P N=Q"])
    doc = parse(text)
    B = next(iter(doc.algebras.values()))
    assert np.array_equal(B.const, A.const) and np.array_equal(B.unit, A.unit)
    for name, M in mods.items():
        assert np.array_equal(doc.module(name).act, M.act)
    assert hom(doc.module("P"), doc.module("Q")).dim == hom(mods["P"], mods["Q"]).dim
    assert doc.tasks[0].op == "hom"


def test_semigroup_dump_round_trip():
    S = semigroup((3, 4, 5))
    ideals = {"X": maximal_ideal(S), "Y": canonical_ideal(S).translate(-2)}
    doc = parse(dump_semigroup_instance(S, ideals, ["sgp.hw_probe ideal=X"]))
    assert next(iter(doc.semigroups.values())) == S
    for name, I in ideals.items():
        assert doc.ideal(name) == I
