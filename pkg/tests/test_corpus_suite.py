import json

import numpy as np

from tracekernel.corpus import CorpusSpec, generate_corpus
from tracekernel.document import parse
from tracekernel.runner import Options, run_document
from tracekernel.suite import CHECKS, _triple_witness, run_suite

SMALL = CorpusSpec(fields=(2,), families=(("dual_numbers", ()), ("truncated_poly", (("n", 3),))), triples_per_algebra=6)


def test_corpus_is_deterministic():
    a = generate_corpus(SMALL)
    b = generate_corpus(SMALL)
    assert [c.label for c in a] == [c.label for c in b]
    for x, y in zip(a, b):
        assert [m.name for m in x.modules] == [m.name for m in y.modules]
        assert all(np.array_equal(m.act, n.act) for m, n in zip(x.modules, y.modules))
        assert [t.ident for t in x.triples] == [t.ident for t in y.triples]


def test_seed_changes_sampling():
    a = generate_corpus(SMALL)
    b = generate_corpus(CorpusSpec(**{**SMALL.__dict__, "seed": 5}))
    assert [t.ident for c in a for t in c.triples] != [t.ident for c in b for t in c.triples]


def test_empty_corpus():
    rep = run_suite(CorpusSpec.empty())
    assert rep.reports == [] and rep.vacuous() == [] and rep.ok
    assert rep.to_dict()["failures"] == []


def test_small_suite_has_no_failures():
    rep = run_suite(SMALL)
    assert rep.failures == []
    counts = rep.counts()
    assert set(counts) == set(CHECKS)
    for check in ("tracetheory1", "center", "lindo"):
        assert rep.satisfied(check) > 0
    js = json.dumps(rep.to_dict(), sort_keys=True)
    assert js == json.dumps(run_suite(SMALL).to_dict(), sort_keys=True)


def test_witness_round_trip():
    ca = generate_corpus(SMALL)[1]
    t = ca.triples[0]
    w = _triple_witness(t, "tracetheory1")()
    doc = parse(w["document"])
    rep = run_document(doc, Options())
    assert rep.tasks[0].op == "check"
    direct = run_suite(SMALL, ["tracetheory1"], corpus=[ca])
    replay = rep.tasks[0].result
    original = next(r for r in direct.reports if r.instance == t.ident)
    assert replay["verdict"] == original.verdict
    assert replay["hypothesis_met"] == original.hypothesis_met
