"""Inflators, nuclei, the nucleus/division-set correspondence, quotients and
the assembly N(A) of all nuclei.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import intervals as iv
from .lattice import Lattice, LatticeError, from_order, from_tables, is_modular

Map = tuple[int, ...]

DEFAULT_CAP = 10_000
CAP_ENV = "IDIOMKIT_CAP"
VERIFY_LIMIT = 512  # frame law re-check is O(N^3); skipped above this size


class NucleusError(ValueError):
    pass


class AssemblyCapExceeded(RuntimeError):
    def __init__(self, cap: int, found: int):
        super().__init__(f"more than {cap} nuclei (stopped after {found})")
        self.cap = cap
        self.found = found


def default_cap() -> int:
    return int(os.environ.get(CAP_ENV, DEFAULT_CAP))


@dataclass(frozen=True)
class InflatorMap:
    map: Map
    is_inflator: bool
    is_stable: bool
    is_prenucleus: bool
    is_closure: bool
    is_nucleus: bool


def classify_inflator(L: Lattice, f: Sequence[int]) -> InflatorMap:
    f = tuple(int(v) for v in f)
    if len(f) != L.n:
        raise NucleusError(f"map has {len(f)} entries, lattice {L.name} has {L.n} elements")
    le, mt = L.le, L.mt
    rng = range(L.n)
    inflator = all(le[x][f[x]] for x in rng) and all(le[f[x]][f[y]] for x in rng for y in L.up[x])
    stable = inflator and all(le[mt[f[x]][y]][f[mt[x][y]]] for x in rng for y in rng)
    prenucleus = inflator and all(f[mt[x][y]] == mt[f[x]][f[y]] for x in rng for y in rng)
    closure = inflator and all(f[f[x]] == f[x] for x in rng)
    return InflatorMap(f, inflator, stable, prenucleus, closure, prenucleus and closure)


def identity(L: Lattice) -> Map:
    return tuple(range(L.n))


def top_map(L: Lattice) -> Map:
    return (L.top,) * L.n


def compose(f: Map, g: Map) -> Map:
    """f after g."""
    return tuple(f[x] for x in g)


def pointwise_meet(L: Lattice, f: Map, g: Map) -> Map:
    return tuple(L.mt[a][b] for a, b in zip(f, g))


def pointwise_join(L: Lattice, f: Map, g: Map) -> Map:
    return tuple(L.jn[a][b] for a, b in zip(f, g))


def map_leq(L: Lattice, f: Map, g: Map) -> bool:
    le = L.le
    return all(le[a][b] for a, b in zip(f, g))


class Closure(NamedTuple):
    map: Map
    index: int


def closure_infty(L: Lattice, d: Sequence[int]) -> Closure:
    """Iterate d^(k+1) = d o d^k from d^0 = id until it stops changing.

    ``index`` is the first k with d^(k+1) = d^k. The result is a closure
    operator; when d is stable it is also a nucleus (checked)."""
    d = tuple(d)
    info = classify_inflator(L, d)
    if not info.is_inflator:
        raise NucleusError("closure_infty needs an inflator")
    cur = identity(L)
    for k in range(L.n + 1):
        nxt = compose(d, cur)
        if nxt == cur:
            break
        cur = nxt
    else:  # pragma: no cover - an inflator stabilises within n steps
        raise AssertionError("inflator did not stabilise")
    if info.is_stable:
        assert classify_inflator(L, cur).is_nucleus, "closure of a stable inflator must be a nucleus"
    return Closure(cur, k)


def require_nucleus(L: Lattice, j: Sequence[int]) -> Map:
    j = tuple(j)
    if not classify_inflator(L, j).is_nucleus:
        raise NucleusError(f"{j} is not a nucleus on {L.name}")
    return j


def nucleus_to_division(L: Lattice, j: Sequence[int]) -> frozenset:
    """D_j: the intervals [a,b] with b <= j(a)."""
    j = require_nucleus(L, j)
    le = L.le
    D = frozenset((a, b) for a, b in iv.geometry(L).universe if le[b][j[a]])
    assert iv.is_division(L, D)
    return D


def division_to_nucleus(L: Lattice, D) -> Map:
    D = frozenset(D)
    if not iv.is_division(L, D):
        raise iv.IntervalSetError("not a division set")
    j = iv.associated_inflator(L, D)
    assert classify_inflator(L, j).is_nucleus
    return j


def fixed_points(j: Map) -> tuple[int, ...]:
    return tuple(x for x, y in enumerate(j) if x == y)


def quotient(L: Lattice, j: Sequence[int], name: str | None = None) -> Lattice:
    """A_j: the fixed points of j, with inherited meets and joins j(a v b)."""
    j = require_nucleus(L, j)
    fix = fixed_points(j)
    sub = L.leq[np.ix_(fix, fix)]
    Q = from_order(name or f"{L.name}_j", [L.labels[x] for x in fix], sub)
    pos = {x: i for i, x in enumerate(fix)}
    for i, x in enumerate(fix):
        for k, y in enumerate(fix):
            assert Q.mt[i][k] == pos[L.mt[x][y]]
            assert Q.jn[i][k] == pos[j[L.jn[x][y]]]
    return Q


def quotient_embedding(L: Lattice, j: Map) -> tuple[int, ...]:
    """Element of L for each element index of ``quotient(L, j)``."""
    return fixed_points(j)


# --- enumeration ----------------------------------------------------------------

def enumerate_nuclei(L: Lattice, cap: int | None = None) -> list[Map]:
    """All nuclei on L by depth-first search over map images.

    Elements are assigned top-down. A candidate image y for x must lie above
    x, be a fixed point already (or x itself), stay below the image of every
    upper cover of x, and keep j(p ^ q) = j(p) ^ j(q) for every pair whose
    meet is x."""
    cap = default_cap() if cap is None else cap
    le, mt = L.le, L.mt
    order = list(reversed(L.linear_extension))
    upper = [[y for x2, y in L.covers if x2 == x] for x in range(L.n)]
    pairs_with_meet: list[list[tuple[int, int]]] = [[] for _ in range(L.n)]
    for p in range(L.n):
        for q in range(p + 1, L.n):
            if not le[p][q] and not le[q][p]:
                pairs_with_meet[mt[p][q]].append((p, q))
    j = [-1] * L.n
    out: list[Map] = []

    def dfs(pos: int) -> None:
        if pos == len(order):
            if len(out) >= cap:
                raise AssemblyCapExceeded(cap, len(out))
            out.append(tuple(j))
            return
        x = order[pos]
        for y in L.up[x]:
            if y != x and j[y] != y:
                continue
            if not all(le[y][j[z]] for z in upper[x]):
                continue
            j[x] = y
            if all(y == mt[j[p]][j[q]] for p, q in pairs_with_meet[x]):
                dfs(pos + 1)
        j[x] = -1

    dfs(0)
    return sorted(out, key=lambda m: (sum(L.height[v] for v in m), m))


@dataclass(eq=False)
class Assembly:
    """The frame N(A) of all nuclei on ``base`` under the pointwise order."""

    base: Lattice
    nuclei: tuple[Map, ...]
    frame: Lattice
    index: dict[Map, int] = field(repr=False)

    @property
    def bottom(self) -> int:
        return self.frame.bottom

    @property
    def top(self) -> int:
        return self.frame.top

    def __len__(self) -> int:
        return len(self.nuclei)

    def nucleus(self, k: int) -> InflatorMap:
        return classify_inflator(self.base, self.nuclei[k])

    def lookup(self, m: Sequence[int]) -> int:
        try:
            return self.index[tuple(m)]
        except KeyError:
            raise NucleusError(f"{tuple(m)} is not a nucleus of {self.base.name}") from None

    def label(self, k: int) -> str:
        return self.frame.labels[k]

    def implic(self, j: int, k: int) -> int:
        """(j > k): the join of every l with l ^ j <= k."""
        F = self.frame
        return F.join_all(l for l in range(F.n) if F.le[F.mt[l][j]][k])

    def negate(self, j: int) -> int:
        return self.implic(j, self.bottom)

    @cached_property
    def negations(self) -> tuple[int, ...]:
        return tuple(self.negate(j) for j in range(len(self)))

    def chi(self, a: int, b: int) -> int:
        """The largest nucleus j with j(a) ^ b = a."""
        L = self.base
        if not L.le[a][b]:
            raise NucleusError(f"chi needs a <= b, got {L.labels[a]}, {L.labels[b]}")
        good = [k for k, m in enumerate(self.nuclei) if L.mt[m[a]][b] == a]
        top = self.frame.join_all(good)
        assert top in good
        return top


class FrameNav(NamedTuple):
    negate: Callable[[int], int]
    implic: Callable[[int, int], int]
    chi: Callable[[int, int], int]


def frame_nav(asm: Assembly) -> FrameNav:
    return FrameNav(asm.negate, asm.implic, asm.chi)


def _encode(M: np.ndarray, n: int) -> np.ndarray:
    weights = np.array([n ** i for i in range(M.shape[-1])], dtype=np.int64)
    return (M.astype(np.int64) * weights).sum(axis=-1)


def _pointwise_tables(L: Lattice, M: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Order, meet and join tables of the nuclei listed as rows of M.

    Meets are pointwise. Joins are the closure of the pointwise join,
    computed by repeated squaring of the composite map."""
    N, n = M.shape
    codes = _encode(M, n)
    sorter = np.argsort(codes)
    sorted_codes = codes[sorter]

    def lookup(rows: np.ndarray) -> np.ndarray:
        c = _encode(rows, n)
        pos = np.searchsorted(sorted_codes, c)
        pos = np.clip(pos, 0, N - 1)
        if not (sorted_codes[pos] == c).all():
            raise AssertionError("pointwise operation left the set of nuclei")
        return sorter[pos]

    leq = np.empty((N, N), dtype=bool)
    meet = np.empty((N, N), dtype=np.int64)
    join = np.empty((N, N), dtype=np.int64)
    step = max(1, 2_000_000 // max(1, N * n))
    for s in range(0, N, step):
        A = M[s:s + step, None, :]
        leq[s:s + step] = L.leq[A, M[None, :, :]].all(axis=-1)
        meet[s:s + step] = lookup(L.meet[A, M[None, :, :]])
        P = L.join[A, M[None, :, :]]
        while True:
            P2 = np.take_along_axis(P, P, axis=-1)
            if (P2 == P).all():
                break
            P = P2
        join[s:s + step] = lookup(P)
    return leq, meet, join


def assembly(L: Lattice, cap: int | None = None, name: str | None = None) -> Assembly:
    """Enumerate N(L) and build its frame. Modularity is not required for the
    enumeration itself; non-modular input is accepted as is."""
    nuclei = enumerate_nuclei(L, cap)
    M = np.array(nuclei, dtype=np.int64).reshape(len(nuclei), L.n)
    leq, meet, join = _pointwise_tables(L, M)
    labels = [f"j{k}" for k in range(len(nuclei))]
    fname = name or f"N({L.name})"
    if len(nuclei) <= VERIFY_LIMIT:
        frame = from_order(fname, labels, leq)
        if not (np.array_equal(frame.meet, meet) and np.array_equal(frame.join, join)):
            raise AssertionError("pointwise tables disagree with the nucleus order")
        from .lattice import distributive_witness
        if distributive_witness(frame) is not None:
            raise AssertionError(f"assembly of {L.name} is not a frame")
    else:
        frame = from_tables(fname, labels, leq, meet, join)
    asm = Assembly(L, tuple(nuclei), frame, {m: k for k, m in enumerate(nuclei)})
    assert nuclei[frame.bottom] == identity(L) and nuclei[frame.top] == top_map(L)
    return asm


def format_assembly(asm: Assembly) -> tuple[str, str]:
    """The assembly frame as a lattice document plus a sidecar table giving
    each nucleus label's image of every base element."""
    from .lattice import format_lattice
    L = asm.base
    lines = ["nucleus " + " ".join(L.labels)]
    for k, m in enumerate(asm.nuclei):
        lines.append(f"{asm.label(k)} " + " ".join(L.labels[v] for v in m))
    return format_lattice(asm.frame), "\n".join(lines) + "\n"


def nucleus_from_spec(L: Lattice, spec: str, asm: Assembly | None = None) -> Map:
    """Resolve a user-facing nucleus selector: ``id``, ``tp``, an assembly
    label ``jK``, or comma-separated image labels in element order."""
    spec = spec.strip()
    if spec == "id":
        return identity(L)
    if spec == "tp":
        return top_map(L)
    if spec.startswith("j") and spec[1:].isdigit() and asm is not None:
        k = int(spec[1:])
        if k >= len(asm):
            raise NucleusError(f"no nucleus {spec} (assembly has {len(asm)})")
        return asm.nuclei[k]
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != L.n:
        raise NucleusError(f"cannot read nucleus selector {spec!r}")
    try:
        return require_nucleus(L, [L.index(p) for p in parts])
    except LatticeError as e:
        raise NucleusError(str(e)) from None


def warn_if_not_idiom(L: Lattice) -> str | None:
    if not is_modular(L):
        return f"{L.name} is not modular; nuclei are still enumerated"
    return None
