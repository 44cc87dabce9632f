import pytest

import oracles
from conftest import corpus, nuclei_of, small_modular
from idiomkit import intervals as iv
from idiomkit.corpus import load_fixture
from idiomkit.derivatives import (NotAnIdiomError, assembly_operators, bundle_table, cbd_rel, check_admissible,
                                  derivative_bundle, iterate_to_fixpoint, ls, operator_meet, rs, soc_rel)
from idiomkit.lattice import chain, pentagon
from idiomkit.nuclei import (NucleusError, assembly, closure_infty, identity, map_leq, nucleus_to_division,
                             pointwise_meet, top_map)


def _oracle_full_top(L, j, a):
    D = oracles.division_of(L, j)
    return L.join_all(b for b in range(L.n) if L.le[a][b] and oracles.full_literal(L, D, a, b))


def _oracle_critical(L, D, a, b):
    return all(x == a or (x, b) in D for x in range(L.n) if L.le[a][x] and L.le[x][b])


def test_cbd_examples(m3):
    i = identity(m3)
    assert cbd_rel(m3, i, 0) == m3.top
    assert derivative_bundle(m3, i).cbd == top_map(m3)
    for L in (m3, chain(3), load_fixture("b3")):
        t = top_map(L)
        assert all(cbd_rel(L, t, a) == L.top for a in range(L.n))


def test_cbd_p6_definition_value(p6):
    b = derivative_bundle(p6, identity(p6))
    assert p6.labels[b.cbd[0]] == "c"
    assert p6.labels[cbd_rel(p6, identity(p6), 0)] == "c"


def test_cbd_matches_full_oracle():
    for L in corpus():
        for j in nuclei_of(L):
            cbd = derivative_bundle(L, j).cbd
            for a in range(L.n):
                assert cbd[a] == _oracle_full_top(L, j, a)


def test_cbd_formula_on_fixed_points():
    for L in corpus():
        for j in nuclei_of(L):
            b = derivative_bundle(L, j)
            for a in range(L.n):
                if j[a] == a:
                    assert b.cbd_formula[a] == b.cbd[a]
                    lit = L.meet_all(j[x] for x in range(L.n) if oracles.essential_literal(L, a, x))
                    assert lit == b.cbd[a]


def test_cbd_formula_differs_off_fixed_points(chain3):
    j = (1, 1, 2)
    assert cbd_rel(chain3, j, 0) == 2
    assert derivative_bundle(chain3, j).cbd[0] == 1


def test_soc_examples(m3, chain3):
    assert soc_rel(m3, identity(m3), 0) == m3.top
    assert soc_rel(chain3, identity(chain3), 0) == chain3.index("m")
    for L in (m3, chain3):
        assert derivative_bundle(L, top_map(L)).soc == top_map(L)


def test_soc_matches_critical_oracle():
    for L in corpus():
        for j in nuclei_of(L):
            D = oracles.division_of(L, j)
            soc = derivative_bundle(L, j).soc
            for a in range(L.n):
                crit = L.join_all(x for x in range(L.n) if L.le[a][x] and _oracle_critical(L, D, a, x))
                assert soc[a] == j[crit]


def test_bundle_at_top(m3):
    b = derivative_bundle(m3, top_map(m3))
    t = top_map(m3)
    assert b.cbd == b.soc == b.boy == b.gab == b.fbl == t


def test_bundle_m3_and_p6(m3, p6):
    assert derivative_bundle(m3, identity(m3)).boy == top_map(m3)
    # P6 as drawn is distributive with a boolean assembly, so Boy(id) reaches tp
    b = derivative_bundle(p6, identity(p6))
    assert b.boy == top_map(p6)
    assert b.boy_index == 2


def test_boy_gab_are_least_division_closures():
    for L in small_modular(6) + (load_fixture("p6"),):
        nuc = nuclei_of(L)
        for j in nuc:
            b = derivative_bundle(L, j)
            boy_div = oracles.least_division_via_nuclei(L, iv.closure(L, b.full), nuc)
            gab_div = oracles.least_division_via_nuclei(L, iv.closure(L, b.critical), nuc)
            assert nucleus_to_division(L, b.boy) == boy_div
            assert nucleus_to_division(L, b.gab) == gab_div
            assert closure_infty(L, b.cbd).map == b.boy


def test_ordering_and_soc_as_meet():
    for L in corpus():
        for j in nuclei_of(L):
            b = derivative_bundle(L, j)
            assert map_leq(L, j, b.soc) and map_leq(L, b.soc, b.gab) and map_leq(L, b.gab, b.fbl)
            assert map_leq(L, b.soc, b.cbd) and map_leq(L, b.cbd, b.boy)
            assert b.soc == pointwise_meet(L, b.fbl, b.cbd)
            assert map_leq(L, b.gab, b.boy)


def test_iterate_to_fixpoint(m3, chain3):
    ch = iterate_to_fixpoint(m3, identity(m3), "Boy")
    assert ch == [identity(m3), top_map(m3)]
    ch = iterate_to_fixpoint(chain(4), identity(chain(4)), "Gab")
    assert ch[-1] == top_map(chain(4))
    # one Gab step already reaches tp; the soc closure inside it takes three
    assert len(ch) == 2
    assert derivative_bundle(chain(4), identity(chain(4))).gab_index == 3


def test_rejects_non_modular():
    L = pentagon()
    with pytest.raises(NotAnIdiomError):
        derivative_bundle(L, identity(L))


def test_rejects_non_nucleus(m3):
    with pytest.raises(NucleusError):
        derivative_bundle(m3, (1, 1, 2, 3, 4))


def test_assembly_operator_examples(chain3):
    A = assembly(chain3)
    ops = assembly_operators(A)
    assert ops.boy[A.top] == A.top and ops.gab[A.top] == A.top
    assert ops.boy[A.bottom] == A.top
    for S in (ops.boy, ops.cbd, ops.soc):
        assert rs(A, S)[A.top] == A.top


def test_boy_operator_on_corpus_assemblies():
    for L in corpus():
        A = assembly(L)
        ops = assembly_operators(A)
        F = A.frame
        check_admissible(A, ops.boy)
        assert ops.boy == ops.cbd
        assert closure_infty(F, ops.cbd).map == ops.boy
        assert map_leq(F, ops.soc, ops.gab)
        for S in (ops.boy, ops.gab):
            left = operator_meet(A, ops.cbd, ls(A, S))
            right = operator_meet(A, S, ops.cbd)
            assert left == right


def test_admissibility_rejects_large_operator(chain3):
    A = assembly(chain3)
    with pytest.raises(NucleusError):
        check_admissible(A, [A.bottom] * len(A))  # below Cbd but not inflationary


def test_bundle_table_shape(m3):
    rows = bundle_table(m3, [identity(m3)])
    assert rows[0]["cbd"] == ["1"] * 5
    assert set(rows[0]) == {"nucleus", "cbd", "soc", "boy", "gab", "fbl", "boy_index", "gab_index"}
