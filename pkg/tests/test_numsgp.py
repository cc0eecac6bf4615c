import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracekernel.numsgp import (
    COUNTEREXAMPLE,
    NumericalSemigroup,
    canonical_ideal,
    check_corollary_canonical,
    colon,
    end_semigroup,
    enumerate_semigroups,
    format_values,
    graded_presentation,
    hw_probe,
    ideal_sum,
    maximal_ideal,
    omega_reflexive_check,
    parse_values,
    semigroup,
    semigroup_ideal,
    stable_sets,
    tensor_torsion_length,
    trace_ideal,
    trace_omega,
    value_set,
)

SEMIGROUPS = [semigroup(g) for g in [(2, 3), (3, 4), (3, 5), (3, 4, 5), (4, 5, 6), (4, 6, 7), (5, 6, 7, 8, 9), (3, 7, 8)]]


# -- independent oracles -------------------------------------------------------------


def gap_sets(max_genus):
    """Counts of numerical semigroups per genus from closed complements of gap sets."""
    counts = [0] * (max_genus + 1)
    for g in range(max_genus + 1):
        universe = range(1, 2 * g)
        for gaps in itertools.combinations(universe, g):
            gs = set(gaps)
            top = 2 * g + 1
            members = [z for z in range(top) if z not in gs]
            if all((a + b) not in gs for a in members for b in members):
                counts[g] += 1
    return counts


def window(I, hi):
    return {z for z in range(I.m0, hi) if z in I}


def components(nodes, edges):
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in nodes})


def torsion_by_components(I, J, top):
    """Sum over degrees of (#classes of value pairs under moving S across the tensor sign) - 1."""
    S = I.S
    total = 0
    for d in range(I.m0 + J.m0, top + 1):
        nodes = [(a, d - a) for a in range(I.m0, d - J.m0 + 1) if a in I and (d - a) in J]
        if not nodes:
            continue
        present = set(nodes)
        edges = []
        for a, b in nodes:
            for s in S.generators:
                # (a, b) = (a' + s, b) ~ (a', b + s)
                if (a - s, b + s) in present and (a - s) in I:
                    edges.append(((a, b), (a - s, b + s)))
        total += components(nodes, edges) - 1
    return total


def syzygy_degrees_by_components(I, top):
    S = I.S
    gens = I.minimal_generators
    out = []
    for d in range(min(gens), top + 1):
        P = [i for i, a in enumerate(gens) if (d - a) in S]
        if len(P) < 2:
            continue
        edges = []
        for g in S.generators:
            lower = [i for i in P if (d - g - gens[i]) in S]
            edges += [(lower[0], j) for j in lower[1:]]
        out += [d] * (components(P, edges) - 1)
    return out


# -- semigroups ----------------------------------------------------------------------


def test_semigroup_invariants():
    S = semigroup((3, 4))
    assert S.gaps == (1, 2, 5) and S.frobenius == 5 and S.conductor == 6
    assert S.genus == 3 and S.multiplicity == 3 and S.symmetric
    T = semigroup((3, 4, 5))
    assert T.gaps == (1, 2) and not T.symmetric and T.embedding_dimension == 3
    assert semigroup((6, 9, 10, 4)).generators == (4, 6, 9)
    assert NumericalSemigroup.from_gaps([1, 2, 5]) == S


def test_genus_counts_match_gap_set_enumeration():
    levels = enumerate_semigroups(8)
    counts = [len(level) for level in levels]
    assert counts == gap_sets(8)
    assert counts == [1, 1, 2, 4, 7, 12, 23, 39, 67]
    for g, level in enumerate(levels):
        assert all(S.genus == g for S in level)
        assert len(set(S.gaps for S in level)) == len(level)


@pytest.mark.parametrize("S", SEMIGROUPS, ids=str)
def test_symmetry_matches_canonical_ideal(S):
    K = canonical_ideal(S)
    assert S.symmetric == (K == semigroup_ideal(S))
    assert 2 * S.genus >= S.conductor


# -- value sets ----------------------------------------------------------------------


def test_value_set_parsing():
    S = semigroup((3, 4))
    I = value_set(S, *parse_values("0,3,4,6.."))
    assert format_values(I) == "0,3,4,6.."
    assert I == semigroup_ideal(S)
    with pytest.raises(ValueError):
        value_set(S, [0, 1], 6)


@st.composite
def two_ideals(draw):
    S = draw(st.sampled_from(SEMIGROUPS))
    sets = stable_sets(S)
    I = draw(st.sampled_from(sets)).translate(draw(st.integers(-4, 4)))
    J = draw(st.sampled_from(sets)).translate(draw(st.integers(-4, 4)))
    return I, J


@given(two_ideals())
def test_sum_and_colon_match_windowed_sets(pair):
    I, J = pair
    top = 60
    Iw, Jw = window(I, top), window(J, top)
    P = ideal_sum(I, J)
    expect = {a + b for a in Iw for b in Jw if a + b < top - 30}
    assert {z for z in window(P, top - 30)} == expect
    C = colon(J, I)
    for z in range(-25, 25):
        inside = all((z + a) in J for a in Iw)
        assert (z in C) == inside


@given(two_ideals())
def test_colon_is_the_largest_multiplier(pair):
    I, J = pair
    C = colon(J, I)
    assert ideal_sum(C, I) <= J
    assert C <= colon(ideal_sum(C, I), I)


@given(two_ideals())
def test_omega_duality(pair):
    I, _ = pair
    K = canonical_ideal(I.S)
    assert omega_reflexive_check(I)
    assert colon(K, colon(K, I)) == I
    # (R:(K:I)) = (I:K)
    R = semigroup_ideal(I.S)
    assert colon(R, colon(K, I)) == colon(I, K)


@given(two_ideals())
def test_traces_are_ideals_of_r(pair):
    I, _ = pair
    S = I.S
    R = semigroup_ideal(S)
    assert trace_ideal(I) <= R
    assert trace_omega(I) <= canonical_ideal(S)
    assert trace_ideal(I) == trace_ideal(I.translate(3))
    assert end_semigroup(I).conductor <= S.conductor


# -- graded computations ---------------------------------------------------------------


def test_presentation_of_maximal_ideal():
    S = semigroup((3, 4, 5))
    p = graded_presentation(maximal_ideal(S))
    assert p.generators == (3, 4, 5)
    assert p.relation_degrees() == [7, 8, 8, 9, 9, 10]
    assert p.stable


@given(two_ideals())
def test_presentation_matches_component_count(pair):
    I, _ = pair
    I0 = I.normalized()
    S = I.S
    p = graded_presentation(I0)
    top = max(I0.minimal_generators) + S.conductor + S.multiplicity
    assert p.stable
    assert p.relation_degrees() == syzygy_degrees_by_components(I0, top)


@given(two_ideals())
def test_torsion_matches_component_count(pair):
    I, J = pair
    t = tensor_torsion_length(I, J)
    assert t.stable
    I0, J0 = I.normalized(), J.normalized()
    top = max(I0.minimal_generators) + max(J0.minimal_generators) + 2 * I.S.conductor
    assert t.length == torsion_by_components(I0, J0, top)
    # the torsion of a tensor with R vanishes
    assert tensor_torsion_length(I, semigroup_ideal(I.S)).length == 0


def test_torsion_of_maximal_ideal():
    S = semigroup((3, 4))
    m = maximal_ideal(S)
    R = semigroup_ideal(S)
    t = tensor_torsion_length(colon(R, m), m)
    assert t.stable and t.length == 2


def test_short_cutoff_is_flagged():
    S = semigroup((3, 4))
    m = maximal_ideal(S)
    t = tensor_torsion_length(m, m, cutoff=4)
    assert not t.stable and t.tag.startswith("lower bound")


# -- probes ----------------------------------------------------------------------------


def test_hw_probe_maximal_ideal():
    S = semigroup((3, 4))
    rep = hw_probe(maximal_ideal(S))
    assert rep.torsion_len_star == rep.torsion_len_vee_mix == 2
    assert rep.chain.length == 2
    assert rep.flags == () and rep.stable
    assert rep.prop_equiv_consistent and rep.gorenstein_consistent


def test_hw_probe_flags_free_ideal_never():
    S = semigroup((3, 4, 5))
    rep = hw_probe(semigroup_ideal(S).translate(2))
    assert rep.is_free and rep.torsion_len_star == 0
    assert not any(f.endswith(":hwc") for f in rep.flags)
    K = canonical_ideal(S)
    assert not any(f.endswith(":hwcalt") for f in hw_probe(K).flags)
    assert all(f.startswith(COUNTEREXAMPLE) for f in hw_probe(maximal_ideal(S)).flags)


def test_canonical_check_examples():
    S = semigroup((3, 4, 5))
    rep = check_corollary_canonical(maximal_ideal(S))
    assert rep.verdict == "pass"
    assert rep.end_semigroup.generators == (1,)
    assert rep.shift == 3
    T = semigroup((3, 4))
    assert check_corollary_canonical(semigroup_ideal(T)).verdict == "pass"


@given(two_ideals())
def test_canonical_check_holds(pair):
    I, _ = pair
    assert check_corollary_canonical(I).verdict == "pass"
