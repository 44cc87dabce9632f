"""Property tests over random corpus members, random maps and random interval sets."""
import numpy as np
from hypothesis import given, settings, strategies as st

import oracles
from conftest import corpus, nuclei_of
from idiomkit import intervals as iv
from idiomkit.derivatives import derivative_bundle
from idiomkit.lattice import essentially_above, format_lattice, parse_lattice
from idiomkit.nuclei import (assembly, classify_inflator, closure_infty, map_leq, nucleus_to_division,
                             pointwise_join, quotient)

LATS = corpus()
lattices = st.sampled_from(LATS)


@st.composite
def lattice_and_nucleus(draw):
    L = draw(lattices)
    return L, draw(st.sampled_from(nuclei_of(L)))


@st.composite
def lattice_and_two_nuclei(draw):
    L = draw(lattices)
    return L, draw(st.sampled_from(nuclei_of(L))), draw(st.sampled_from(nuclei_of(L)))


@st.composite
def lattice_and_map(draw):
    L = draw(lattices)
    return L, tuple(draw(st.lists(st.integers(0, L.n - 1), min_size=L.n, max_size=L.n)))


@st.composite
def lattice_and_intervals(draw):
    L = draw(lattices)
    U = sorted(iv.all_intervals(L))
    return L, frozenset(draw(st.lists(st.sampled_from(U), max_size=4)))


@settings(max_examples=60, deadline=None)
@given(lattices)
def test_format_parse_roundtrip(L):
    K = parse_lattice(format_lattice(L))
    assert K.labels == L.labels and np.array_equal(K.leq, L.leq)


@settings(max_examples=200, deadline=None)
@given(lattice_and_map())
def test_inflator_flags(Lf):
    L, f = Lf
    info = classify_inflator(L, f)
    assert info.is_nucleus == oracles.is_nucleus_literal(L, f)
    if info.is_nucleus:
        assert info.is_stable and info.is_prenucleus and info.is_closure


@settings(max_examples=100, deadline=None)
@given(lattice_and_map())
def test_inflationary_part_closes(Lf):
    # x |-> join of x and f(x) over monotone hull is an inflator; its closure is a closure operator
    L, f = Lf
    g = list(range(L.n))
    for x in L.linear_extension:
        g[x] = L.join_all([x, f[x]] + [g[y] for y in L.lower_covers[x]])
    info = classify_inflator(L, g)
    assert info.is_inflator
    c = closure_infty(L, g)
    assert classify_inflator(L, c.map).is_closure
    assert map_leq(L, tuple(g), c.map)


@settings(max_examples=80, deadline=None)
@given(lattice_and_intervals())
def test_closure_and_dvs_are_closure_operators(LS):
    L, S = LS
    B = iv.closure(L, S)
    assert S <= B and iv.is_basic(L, B) and iv.closure(L, B) == B
    D = iv.dvs(L, B)
    assert B <= D and iv.is_division(L, D) and iv.dvs(L, D) == D


@settings(max_examples=80, deadline=None)
@given(lattice_and_two_nuclei())
def test_pointwise_meet_of_nuclei_is_nucleus(Ljk):
    L, j, k = Ljk
    m = tuple(L.mt[a][b] for a, b in zip(j, k))
    assert classify_inflator(L, m).is_nucleus
    join = closure_infty(L, pointwise_join(L, j, k)).map
    A = assembly(L)
    assert A.nuclei[A.frame.jn[A.lookup(j)][A.lookup(k)]] == join


@settings(max_examples=100, deadline=None)
@given(lattice_and_nucleus())
def test_division_roundtrip_and_quotient(Lj):
    L, j = Lj
    D = nucleus_to_division(L, j)
    assert D == oracles.division_of(L, j)
    Q = quotient(L, j)
    assert Q.n == sum(1 for x in range(L.n) if j[x] == x)


@settings(max_examples=100, deadline=None)
@given(lattice_and_nucleus())
def test_derivative_laws(Lj):
    L, j = Lj
    b = derivative_bundle(L, j)
    assert map_leq(L, j, b.soc) and map_leq(L, b.soc, b.cbd) and map_leq(L, b.cbd, b.boy)
    assert b.semicritical == b.gab_division & b.full
    for a in range(L.n):
        assert b.soc[a] == L.mt[b.fbl[a]][b.cbd[a]]


@settings(max_examples=100, deadline=None)
@given(lattices)
def test_essential_reflexive_only_at_top(L):
    for a in range(L.n):
        assert essentially_above(L, a, a) == (a == L.top)
        assert essentially_above(L, a, L.top) == oracles.essential_literal(L, a, L.top)
