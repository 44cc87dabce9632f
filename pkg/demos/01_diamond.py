"""The diamond M3: the smallest modular lattice that is not distributive.

Walks through the essential-above relation, the cbd derivative at the
identity nucleus, and why the assembly of M3 comes out boolean."""
from idiomkit import assembly, booleanity, classify_lattice, derivative_bundle, load_fixture
from idiomkit.lattice import essential_table, is_boolean
from idiomkit.nuclei import identity

L = load_fixture("m3")
c = classify_lattice(L)
print(f"{L.name}: modular={c.is_modular} frame={c.is_distributive_frame} complemented={c.is_complemented}")

# each atom has two complements, so nothing but 1 is essentially above 0
ess = essential_table(L)
for a in range(L.n):
    above = [L.labels[b] for b in range(L.n) if ess[a][b]]
    print(f"  essentially above {L.labels[a]}: {', '.join(above)}")

b = derivative_bundle(L, identity(L))
print("cbd at the identity:", " ".join(L.labels[v] for v in b.cbd))
print("Boy(id):", " ".join(L.labels[v] for v in b.boy), f"(reached after {b.boy_index} step)")

rep = booleanity(L, identity(L))
print(f"assembly boolean: {rep.cond_assembly_boolean}, Boy(id) = tp: {rep.cond_boy_top}, "
      f"essential test: {rep.cond_essential_cbd}")

A = assembly(L)
print(f"N(M3) has {len(A)} nuclei; boolean as a lattice: {is_boolean(A.frame)}")
for k, m in enumerate(A.nuclei):
    print(f"  {A.label(k)}: " + " ".join(L.labels[v] for v in m))
