"""Lattices up to isomorphism, fixtures, and seeded random batches."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import permutations

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from .lattice import (Lattice, LatticeError, from_order, is_distributive, is_modular, parse_lattice)

MAX_EXHAUSTIVE = 7
FILTERS = ("all", "modular", "distributive")


@dataclass(frozen=True)
class CorpusSpec:
    max_n: int
    filter: str = "all"
    seed: int = 0

    def __post_init__(self):
        if self.filter not in FILTERS:
            raise ValueError(f"unknown corpus filter {self.filter!r}")
        if not 1 <= self.max_n <= MAX_EXHAUSTIVE:
            raise ValueError(f"exhaustive enumeration supports 1 <= max_n <= {MAX_EXHAUSTIVE}")


def _labels(n: int) -> list[str]:
    if n == 1:
        return ["1"]
    return ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"]


def canonical_key(leq: np.ndarray) -> bytes:
    """Smallest row-major order-matrix string over all relabelings that keep
    bottom first and top last. Isomorphic bounded lattices share a key."""
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    inner = [x for x in range(n) if x not in (bottom, top)]
    best = None
    for p in permutations(inner):
        order = [bottom, *p, top] if n > 1 else [bottom]
        s = np.packbits(leq[np.ix_(order, order)]).tobytes()
        if best is None or s < best:
            best = s
    return best


def lattice_key(L: Lattice) -> bytes:
    return canonical_key(L.leq)


def _inner_orders(k: int):
    """Strict orders on k points compatible with index order, as boolean
    matrices (every poset has such a presentation via a linear extension)."""
    slots = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for mask in range(1 << len(slots)):
        rel = np.zeros((k, k), dtype=bool)
        for bit, (i, j) in enumerate(slots):
            if mask >> bit & 1:
                rel[i, j] = True
        # transitive?
        if k and ((rel.astype(np.int8) @ rel.astype(np.int8) > 0) & ~rel).any():
            continue
        yield rel


@lru_cache(maxsize=None)
def _lattices_of_size(n: int) -> tuple[Lattice, ...]:
    if n == 1:
        return (from_order("lat1_0", ["1"], np.ones((1, 1), dtype=bool)),)
    k = n - 2
    seen: set[bytes] = set()
    for rel in _inner_orders(k):
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] |= rel
        try:
            L = from_order("tmp", _labels(n), leq)
        except LatticeError:
            continue
        key = canonical_key(L.leq)
        seen.add(key)
    out = []
    for i, key in enumerate(sorted(seen)):
        leq = np.unpackbits(np.frombuffer(key, dtype=np.uint8))[: n * n].reshape(n, n).astype(bool)
        out.append(from_order(f"lat{n}_{i}", _labels(n), leq))
    return tuple(out)


def _keep(L: Lattice, filt: str) -> bool:
    if filt == "modular":
        return is_modular(L)
    if filt == "distributive":
        return is_distributive(L)
    return True


def enumerate_corpus(spec: CorpusSpec) -> list[Lattice]:
    """Every lattice with at most ``spec.max_n`` elements up to isomorphism,
    filtered, in a deterministic order (by size, then canonical key)."""
    out = []
    for n in range(1, spec.max_n + 1):
        out += [L for L in _lattices_of_size(n) if _keep(L, spec.filter)]
    return out


def random_modular(seed: int, count: int = 50, n: int = 7) -> list[Lattice]:
    """``count`` modular lattices with ``n`` elements, each an isomorphism type
    drawn uniformly from the enumeration and given a random element order
    (so bottom and top sit at arbitrary indices)."""
    pool = [L for L in _lattices_of_size(n) if is_modular(L)]
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        L = pool[int(rng.integers(len(pool)))]
        perm = [int(v) for v in rng.permutation(n)]
        out.append(L.relabel(perm, name=f"rand{n}_s{seed}_{i}"))
    return out


# --- isomorphism ----------------------------------------------------------------

def _hasse(L: Lattice) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(L.n))
    g.add_edges_from(L.covers)
    return g


def find_isomorphism(L: Lattice, K: Lattice) -> dict[int, int] | None:
    """An order isomorphism L -> K as an element map, or None."""
    if L.n != K.n:
        return None
    m = DiGraphMatcher(_hasse(L), _hasse(K))
    for iso in m.isomorphisms_iter():
        return dict(iso)
    return None


def is_isomorphism(L: Lattice, K: Lattice, f: dict[int, int]) -> bool:
    if sorted(f) != list(range(L.n)) or sorted(f.values()) != list(range(K.n)):
        return False
    return all(L.le[x][y] == K.le[f[x]][f[y]] for x in range(L.n) for y in range(L.n))


# --- fixtures --------------------------------------------------------------------

FIXTURES = ("chain2", "chain3", "b2", "b3", "m3", "n5", "p6")


def load_fixture(name: str) -> Lattice:
    text = resources.files("idiomkit").joinpath("data", f"{name}.lat").read_text()
    return parse_lattice(text)


def fixture_path(name: str):
    return resources.files("idiomkit").joinpath("data", f"{name}.lat")


def acceptance_corpus(seed: int = 0) -> list[Lattice]:
    """All modular lattices with at most 6 elements, the fixtures B2, B3, M3
    and P6, and 50 seeded random 7-element modular lattices."""
    out = enumerate_corpus(CorpusSpec(6, "modular"))
    out += [load_fixture(f) for f in ("b2", "b3", "m3", "p6")]
    out += random_modular(seed)
    return out
