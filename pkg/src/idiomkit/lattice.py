"""Finite bounded lattices: construction, parsing, law checks and the
essential-extension relation.

Elements are dense indices ``0..n-1`` with a label table. The order is held
as a boolean numpy matrix and meets/joins as index tables. Every finite
lattice is complete and upper-continuous, so a finite modular lattice is an
idiom without further checks; this module never tests upper-continuity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class LatticeError(ValueError):
    """Raised for malformed lattice input or an order that is not a lattice."""


class NotAFrameError(LatticeError):
    def __init__(self, message: str, witness: tuple[int, int, int]):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class Lattice:
    name: str
    labels: tuple[str, ...]
    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Lattice({self.name!r}, n={self.n})"

    # Python-level views; tuple indexing is much faster than numpy scalars
    # inside the exhaustive loops of the other modules.
    @cached_property
    def le(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(bool(v) for v in row) for row in self.leq)

    @cached_property
    def mt(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.meet)

    @cached_property
    def jn(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.join)

    @cached_property
    def up(self) -> tuple[tuple[int, ...], ...]:
        """``up[a]`` lists every x with a <= x."""
        le = self.le
        return tuple(tuple(x for x in range(self.n) if le[a][x]) for a in range(self.n))

    @cached_property
    def down(self) -> tuple[tuple[int, ...], ...]:
        le = self.le
        return tuple(tuple(x for x in range(self.n) if le[x][a]) for a in range(self.n))

    @cached_property
    def height(self) -> tuple[int, ...]:
        """Length of the longest chain from bottom to each element."""
        h = [0] * self.n
        for x in self.linear_extension:
            for c in self.lower_covers[x]:
                h[x] = max(h[x], h[c] + 1)
        return tuple(h)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Elements sorted so that x < y implies x comes first."""
        return tuple(sorted(range(self.n), key=lambda x: (len(self.down[x]), x)))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs (x, y) with x < y and nothing strictly between."""
        out = []
        le = self.le
        for x in range(self.n):
            for y in self.up[x]:
                if y == x:
                    continue
                if not any(z != x and z != y and le[z][y] for z in self.up[x]):
                    out.append((x, y))
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        lc: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self.covers:
            lc[y].append(x)
        return tuple(tuple(v) for v in lc)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LatticeError(f"{self.name}: no element labelled {label!r}") from None

    def interval(self, a: int, b: int) -> tuple[int, ...]:
        le = self.le
        return tuple(x for x in self.up[a] if le[x][b])

    def meet_all(self, xs: Iterable[int]) -> int:
        m = self.top
        mt = self.mt
        for x in xs:
            m = mt[m][x]
        return m

    def join_all(self, xs: Iterable[int]) -> int:
        j = self.bottom
        jn = self.jn
        for x in xs:
            j = jn[j][x]
        return j

    def relabel(self, perm: Sequence[int], name: str | None = None) -> "Lattice":
        """Return the isomorphic lattice whose element ``perm[i]`` is old element ``i``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        inv_arr = np.array(inv)
        perm_arr = np.array(perm)
        labels = tuple(self.labels[inv[i]] for i in range(n))
        leq = self.leq[np.ix_(inv_arr, inv_arr)]
        meet = perm_arr[self.meet[np.ix_(inv_arr, inv_arr)]]
        join = perm_arr[self.join[np.ix_(inv_arr, inv_arr)]]
        return Lattice(name or self.name, labels, leq, meet, join, perm[self.bottom], perm[self.top])


class LatticeClass(NamedTuple):
    is_lattice: bool
    is_modular: bool
    is_distributive_frame: bool
    is_complemented: bool
    is_boolean: bool


# --- construction -----------------------------------------------------------

def _bounds(name: str, leq: np.ndarray) -> tuple[int, int]:
    n = leq.shape[0]
    bottoms = [x for x in range(n) if leq[x].all()]
    tops = [x for x in range(n) if leq[:, x].all()]
    if not bottoms:
        raise LatticeError(f"{name}: no bottom element")
    if not tops:
        raise LatticeError(f"{name}: no top element")
    return bottoms[0], tops[0]


def _check_partial_order(name: str, leq: np.ndarray) -> None:
    n = leq.shape[0]
    if not leq[np.arange(n), np.arange(n)].all():
        raise LatticeError(f"{name}: order is not reflexive")
    anti = leq & leq.T
    np.fill_diagonal(anti, False)
    if anti.any():
        a, b = map(int, np.argwhere(anti)[0])
        raise LatticeError(f"{name}: cycle in the order through elements {a} and {b}")
    # leq∘leq ⊆ leq
    comp = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    if (comp & ~leq).any():
        raise LatticeError(f"{name}: order is not transitive")


def _bound_table(name: str, labels: Sequence[str], leq: np.ndarray, lower: bool) -> np.ndarray:
    """glb (lower=True) or lub table. The candidate bound with the most
    elements below it (resp. above it) is chosen, then checked to dominate
    every other candidate."""
    n = leq.shape[0]
    rel = leq if lower else leq.T  # rel[c, a]: c is below (above) a
    size = rel.sum(axis=0)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        cand = rel[:, a][:, None] & rel  # cand[c, b]
        best = np.where(cand, size[:, None], -1).argmax(axis=0)
        bad = (cand & ~rel[:, best]).any(axis=0) | ~cand.any(axis=0)
        if bad.any():
            b = int(np.flatnonzero(bad)[0])
            what = "greatest lower bound" if lower else "least upper bound"
            raise LatticeError(f"{name}: {labels[a]} and {labels[b]} have no {what} (not a lattice)")
        table[a] = best
    return table


def from_order(name: str, labels: Sequence[str], leq: np.ndarray) -> Lattice:
    """Build a lattice from a full order matrix, verifying every invariant."""
    leq = np.asarray(leq, dtype=bool).copy()
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise LatticeError(f"{name}: duplicate element names")
    if leq.shape != (len(labels), len(labels)) or not labels:
        raise LatticeError(f"{name}: order matrix shape does not match labels")
    _check_partial_order(name, leq)
    bottom, top = _bounds(name, leq)
    meet = _bound_table(name, labels, leq, lower=True)
    join = _bound_table(name, labels, leq, lower=False)
    for arr in (leq, meet, join):
        arr.setflags(write=False)
    return Lattice(name, labels, leq, meet, join, bottom, top)


def from_covers(name: str, labels: Sequence[str], covers: Iterable[tuple[int, int]]) -> Lattice:
    """Build a lattice from cover pairs ``(lower, upper)``; the order is their
    reflexive-transitive closure."""
    n = len(labels)
    rel = np.eye(n, dtype=bool)
    for lo, hi in covers:
        rel[lo, hi] = True
    # Warshall closure
    for k in range(n):
        rel |= rel[:, k][:, None] & rel[k, :][None, :]
    return from_order(name, labels, rel)


def from_tables(name: str, labels: Sequence[str], leq: np.ndarray, meet: np.ndarray,
                join: np.ndarray) -> Lattice:
    """Wrap precomputed tables without re-deriving bounds (used for large
    assemblies whose tables are built pointwise)."""
    leq = np.asarray(leq, dtype=bool)
    bottom, top = _bounds(name, leq)
    for arr in (leq, meet, join):
        arr.setflags(write=False)
    return Lattice(name, tuple(labels), leq, np.asarray(meet), np.asarray(join), bottom, top)


_COVER_RE = re.compile(r"^(\S+)\s*<\s*(\S+)$")


def parse_lattice(text: str) -> Lattice:
    """Parse the line-oriented lattice format::

        lattice m3
        elements 0 a b c 1
        covers
        0 < a
        ...
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 3:
        raise LatticeError("lattice document needs 'lattice', 'elements' and 'covers' lines")
    head = lines[0].split()
    if head[0] != "lattice" or len(head) != 2:
        raise LatticeError(f"expected 'lattice <name>', got {lines[0]!r}")
    name = head[1]
    elems = lines[1].split()
    if elems[0] != "elements" or len(elems) < 2:
        raise LatticeError(f"{name}: expected 'elements <label> ...', got {lines[1]!r}")
    labels = elems[1:]
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        raise LatticeError(f"{name}: duplicate element names {dup}")
    if lines[2] != "covers":
        raise LatticeError(f"{name}: expected 'covers', got {lines[2]!r}")
    index = {lab: i for i, lab in enumerate(labels)}
    covers = []
    for line in lines[3:]:
        m = _COVER_RE.match(line)
        if not m:
            raise LatticeError(f"{name}: malformed cover line {line!r}")
        lo, hi = m.groups()
        for lab in (lo, hi):
            if lab not in index:
                raise LatticeError(f"{name}: unknown element {lab!r} in {line!r}")
        covers.append((index[lo], index[hi]))
    return from_covers(name, labels, covers)


def format_lattice(L: Lattice) -> str:
    """Inverse of :func:`parse_lattice` (covers listed in index order)."""
    out = [f"lattice {L.name}", "elements " + " ".join(L.labels), "covers"]
    out += [f"{L.labels[x]} < {L.labels[y]}" for x, y in sorted(L.covers)]
    return "\n".join(out) + "\n"


def to_dot(L: Lattice) -> str:
    """Hasse diagram as a graphviz digraph, bottom drawn lowest."""
    out = [f'digraph "{L.name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    by_height: dict[int, list[int]] = {}
    for x in range(L.n):
        by_height.setdefault(L.height[x], []).append(x)
    for h in sorted(by_height):
        members = " ".join(f'"{L.labels[x]}";' for x in by_height[h])
        out.append(f"  {{ rank=same; {members} }}")
    for x, y in sorted(L.covers):
        out.append(f'  "{L.labels[x]}" -> "{L.labels[y]}" [arrowhead=none];')
    out.append("}")
    return "\n".join(out) + "\n"


# --- law checks -------------------------------------------------------------

def modular_witness(L: Lattice) -> tuple[int, int, int] | None:
    """A triple (a, c, b) with a <= b and (a v c) ^ b != a v (c ^ b), if any."""
    M, J = L.meet, L.join
    for a in range(L.n):
        lhs = M[J[a][:, None], np.arange(L.n)[None, :]]       # (a v c) ^ b, indexed [c, b]
        rhs = J[a][M.T]                                          # a v (c ^ b), indexed [c, b]
        bad = (lhs != rhs) & L.leq[a][None, :]
        if bad.any():
            c, b = map(int, np.argwhere(bad)[0])
            return a, c, b
    return None


def distributive_witness(L: Lattice) -> tuple[int, int, int] | None:
    """A triple (a, b, c) with a ^ (b v c) != (a ^ b) v (a ^ c), if any."""
    M, J = L.meet, L.join
    for a in range(L.n):
        lhs = M[a][J]                                  # [b, c]
        rhs = J[M[a][:, None], M[a][None, :]]          # [b, c]
        bad = lhs != rhs
        if bad.any():
            b, c = map(int, np.argwhere(bad)[0])
            return a, b, c
    return None


def complements(L: Lattice, x: int) -> list[int]:
    mt, jn = L.mt, L.jn
    return [y for y in range(L.n) if mt[x][y] == L.bottom and jn[x][y] == L.top]


def is_complemented(L: Lattice) -> bool:
    return all(complements(L, x) for x in range(L.n))


def is_boolean(L: Lattice) -> bool:
    """Finite boolean test via atoms: L is boolean iff x -> {atoms below x}
    is an order isomorphism onto the power set of atoms. Runs in O(n^2),
    so it is usable on large assemblies."""
    atoms = [y for x, y in L.covers if x == L.bottom]
    k = len(atoms)
    if L.n != 2 ** k:
        return False
    if k > 62:
        return False
    masks = np.zeros(L.n, dtype=np.int64)
    for i, a in enumerate(atoms):
        masks |= np.where(L.leq[a], np.int64(1) << i, 0)
    if len(np.unique(masks)) != L.n:
        return False
    sub = (masks[:, None] & ~masks[None, :]) == 0
    return bool((sub == L.leq).all())


def classify_lattice(L: Lattice) -> LatticeClass:
    modular = modular_witness(L) is None
    frame = modular and distributive_witness(L) is None
    comp = is_complemented(L)
    return LatticeClass(True, modular, frame, comp, frame and comp)


def is_modular(L: Lattice) -> bool:
    return modular_witness(L) is None


def is_distributive(L: Lattice) -> bool:
    return distributive_witness(L) is None


def implication(L: Lattice, a: int, b: int) -> int:
    """Relative pseudo-complement: the largest x with x ^ a <= b."""
    w = distributive_witness(L)
    if w is not None:
        x, y, z = (L.labels[i] for i in w)
        raise NotAFrameError(f"{L.name} is not a frame: {x}^({y}v{z}) != ({x}^{y})v({x}^{z})", w)
    return _implication(L, a, b)


def _implication(L: Lattice, a: int, b: int) -> int:
    mt, le = L.mt, L.le
    return L.join_all(x for x in range(L.n) if le[mt[x][a]][b])


def essentially_above(L: Lattice, a: int, b: int) -> bool:
    """True when a <= b and every y with b ^ y <= a lies below a."""
    le, mt = L.le, L.mt
    if not le[a][b]:
        return False
    row = mt[b]
    return all(le[y][a] for y in range(L.n) if le[row[y]][a])


def essential_table(L: Lattice) -> tuple[tuple[bool, ...], ...]:
    """``ess[a][b]`` is ``essentially_above(L, a, b)`` for all pairs."""
    n = L.n
    # b ^ y <= a  ->  y <= a, vectorised over y
    below = L.leq[L.meet]                         # below[b, y, a] = (b ^ y) <= a
    ok = (~below | L.leq[:, None, :].transpose(1, 0, 2)).all(axis=1)  # ok[b, a]
    tab = ok.T & L.leq
    return tuple(tuple(bool(v) for v in tab[a]) for a in range(n))


# --- standard lattices ------------------------------------------------------

def chain(k: int, name: str | None = None) -> Lattice:
    labels = ["0"] + [f"m{i}" for i in range(1, k - 1)] + (["1"] if k > 1 else [])
    if k == 3:
        labels = ["0", "m", "1"]
    return from_covers(name or f"chain{k}", labels, [(i, i + 1) for i in range(k - 1)])


def boolean_lattice(k: int, name: str | None = None) -> Lattice:
    n = 2 ** k
    if k == 0:
        labels = ["1"]
    else:
        labels = ["".join(chr(ord("a") + i) for i in range(k) if m >> i & 1) or "0" for m in range(n)]
        labels[-1] = "1"
    leq = np.array([[(x & ~y) == 0 for y in range(n)] for x in range(n)], dtype=bool)
    return from_order(name or f"B{k}", labels, leq)


def diamond(name: str = "m3") -> Lattice:
    return from_covers(name, ["0", "a", "b", "c", "1"], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def pentagon(name: str = "n5") -> Lattice:
    return from_covers(name, ["0", "a", "b", "c", "1"], [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])


def product(L: Lattice, K: Lattice, name: str | None = None) -> Lattice:
    labels = [f"{x}{y}" if len(x) + len(y) == 2 else f"{x},{y}" for x in L.labels for y in K.labels]
    leq = np.einsum("ac,bd->abcd", L.leq, K.leq).reshape(L.n * K.n, L.n * K.n)
    return from_order(name or f"{L.name}x{K.name}", labels, leq)
