"""A six-element lattice where the stated claims and the definitions part ways.

The fixture carries annotated claims. Evaluating them shows which follow
from the definitions and which are flagged as expected discrepancies."""
from idiomkit import derivative_bundle, load_fixture
from idiomkit.analysis import fixture_claims
from idiomkit.corpus import find_isomorphism
from idiomkit.lattice import chain, essential_table, is_distributive, product
from idiomkit.nuclei import identity

L = load_fixture("p6")
print(f"{L.name}: covers " + " ".join(f"{L.labels[x]}<{L.labels[y]}" for x, y in L.covers))
print("distributive:", is_distributive(L))
print("isomorphic to 2x3:", find_isomorphism(L, product(chain(2), chain(3))) is not None)

ess = essential_table(L)
print("essentially above 0:", ", ".join(L.labels[b] for b in range(L.n) if ess[0][b]))

b = derivative_bundle(L, identity(L))
print("cbd:", " ".join(f"{L.labels[a]}->{L.labels[v]}" for a, v in enumerate(b.cbd)))
print("Boy chain reaches", " ".join(L.labels[v] for v in b.boy), f"in {b.boy_index} steps")

for c in fixture_claims(L):
    status = "holds" if c["holds"] else ("expected discrepancy" if c["expected_discrepancy"] else "FAILS")
    print(f"  claim {c['claim']!r}: {status}")
