"""Spectral nuclei: those whose quotient is complemented.

For one random seven-element modular lattice, list every nucleus, whether
its quotient is complemented, and its negation in the assembly."""
from idiomkit import assembly, spectral_check
from idiomkit.corpus import random_modular
from idiomkit.nuclei import quotient

L = random_modular(seed=3, count=1)[0]
print(f"{L.name}: " + " ".join(f"{L.labels[x]}<{L.labels[y]}" for x, y in L.covers))
A = assembly(L)
for k, j in enumerate(A.nuclei):
    rep = spectral_check(L, j, A)
    Q = quotient(L, j)
    neg = A.label(A.negate(k))
    mark = "spectral" if rep.is_spectral else "        "
    print(f"  {A.label(k):>4} {mark}  quotient size {Q.n}, negation {neg}, checks ok: {rep.ok}")
