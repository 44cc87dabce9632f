"""Sweep the identity suite over every modular lattice with at most six
elements plus a seeded batch of random seven-element ones."""
import sys
import time
from collections import Counter

from idiomkit import acceptance_corpus, theorem_suite

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
t = time.perf_counter()
lattices = acceptance_corpus(seed)
status: Counter = Counter()
nuclei = 0
for L in lattices:
    rep = theorem_suite(L)
    nuclei += rep.nuclei or 0
    for e in rep.entries:
        status["expected" if e.expected_discrepancy else e.status] += 1
    for e in rep.failed:
        print(f"REFUTED {L.name} {e.theorem}: {e.witness}")

print(f"{len(lattices)} lattices, {nuclei} nuclei, {time.perf_counter() - t:.1f}s")
for k, v in sorted(status.items()):
    print(f"  {k}: {v}")
