import numpy as np
import pytest

import oracles
from idiomkit.corpus import (FIXTURES, CorpusSpec, acceptance_corpus, canonical_key, enumerate_corpus,
                             find_isomorphism, fixture_path, is_isomorphism, lattice_key, load_fixture,
                             random_modular)
from idiomkit.lattice import chain, diamond, is_distributive, is_modular


def test_small_sizes():
    assert [L.n for L in enumerate_corpus(CorpusSpec(2))] == [1, 2]


def test_counts_match_generate_and_test_oracle():
    got = enumerate_corpus(CorpusSpec(5, "all"))
    for n in range(1, 6):
        mine = [L for L in got if L.n == n]
        ref = oracles.lattices_up_to_iso(n)
        assert len(mine) == len(ref)
        for leq in ref:
            assert sum(oracles.orders_isomorphic(leq, L.leq) for L in mine) == 1


def test_counts_up_to_seven():
    # integer sequences for lattices, modular and distributive lattices
    want = {"all": [1, 1, 1, 2, 5, 15, 53], "modular": [1, 1, 1, 2, 4, 8, 16],
            "distributive": [1, 1, 1, 2, 3, 5, 8]}
    for f, counts in want.items():
        got = enumerate_corpus(CorpusSpec(7, f))
        assert [sum(L.n == n for L in got) for n in range(1, 8)] == counts


def test_pairwise_non_isomorphic_at_six():
    lats = [L for L in enumerate_corpus(CorpusSpec(6)) if L.n == 6]
    for i, L in enumerate(lats):
        for K in lats[i + 1:]:
            assert find_isomorphism(L, K) is None


def test_filters_consistent():
    for L in enumerate_corpus(CorpusSpec(6, "modular")):
        assert is_modular(L)
    for L in enumerate_corpus(CorpusSpec(6, "distributive")):
        assert is_distributive(L)


def test_only_nondistributive_modular_up_to_five_is_m3():
    odd = [L for L in enumerate_corpus(CorpusSpec(5, "modular")) if not is_distributive(L)]
    assert len(odd) == 1
    assert find_isomorphism(odd[0], diamond()) is not None


def test_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(0)
    with pytest.raises(ValueError):
        CorpusSpec(8)
    with pytest.raises(ValueError):
        CorpusSpec(4, "boolean")


def test_canonical_key_invariant_under_relabel():
    rng = np.random.default_rng(1)
    for L in enumerate_corpus(CorpusSpec(6)):
        perm = [int(v) for v in rng.permutation(L.n)]
        assert lattice_key(L.relabel(perm)) == lattice_key(L)
    assert canonical_key(chain(4).leq) != canonical_key(load_fixture("b2").leq)


def test_random_modular_seeded():
    a, b = random_modular(7, 10), random_modular(7, 10)
    assert [L.name for L in a] == [f"rand7_s7_{i}" for i in range(10)]
    for L, K in zip(a, b):
        assert np.array_equal(L.leq, K.leq)
        assert is_modular(L) and L.n == 7
    assert any(not np.array_equal(L.leq, K.leq) for L, K in zip(a, random_modular(8, 10)))


def test_isomorphism_search(b2):
    R = b2.relabel([0, 2, 1, 3])
    f = find_isomorphism(b2, R)
    assert f is not None and is_isomorphism(b2, R, f)
    assert find_isomorphism(b2, chain(4)) is None
    assert not is_isomorphism(b2, chain(4), {0: 0, 1: 1, 2: 2, 3: 3})


def test_fixtures_load():
    for name in FIXTURES:
        L = load_fixture(name)
        assert L.name == name
        assert fixture_path(name).read_text().strip()
    assert load_fixture("b3").n == 8
    assert not is_modular(load_fixture("n5"))


def test_acceptance_corpus_shape():
    C = acceptance_corpus(0)
    assert len(C) == 17 + 4 + 50
    assert all(is_modular(L) for L in C)
