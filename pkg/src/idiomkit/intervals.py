"""Intervals of a finite lattice and sets of intervals.

An interval set is a plain ``frozenset`` of ``(lo, hi)`` index pairs drawn
from the universe ``{(a, b) : a <= b}``. The closure conditions (abstract,
basic, congruence, pre-division, division) are decided by exhaustive
evaluation, as are the special classes in :class:`SpecialClass`.
"""
from __future__ import annotations

import enum
from itertools import combinations
from typing import Iterable, NamedTuple
from weakref import WeakKeyDictionary

from .lattice import Lattice

IntervalSet = frozenset  # of (lo, hi) pairs


class IntervalSetError(ValueError):
    pass


class Interval(NamedTuple):
    lo: int
    hi: int

    @property
    def trivial(self) -> bool:
        return self.lo == self.hi


class SpecialClass(str, enum.Enum):
    SMP = "Smp"
    CMP = "Cmp"
    CRT = "Crt"
    FLL = "Fll"
    SCT = "Sct"
    WA = "WA"
    FA = "FA"
    SSP = "SSp"
    SA = "SA"
    UNIFORM = "uniform"


RELATIVE = {SpecialClass.SMP, SpecialClass.CMP, SpecialClass.CRT, SpecialClass.FLL, SpecialClass.SCT}

KINDS = ("none", "abstract", "basic", "pre-division", "congruence", "division")


class _Geometry:
    """Per-lattice tables shared by every interval computation."""

    def __init__(self, L: Lattice):
        le, mt, jn = L.le, L.mt, L.jn
        self.universe = tuple((a, b) for a in range(L.n) for b in L.up[a])
        self.members = {I: L.interval(*I) for I in self.universe}
        self.trivial = frozenset((a, a) for a in range(L.n))
        sim = {}
        for a, b in self.universe:
            nbrs = set()
            for d in range(L.n):
                if jn[a][d] == b:
                    nbrs.add((mt[a][d], d))
            for c in range(L.n):
                if mt[c][b] == a:
                    nbrs.add((c, jn[c][b]))
            sim[(a, b)] = tuple(sorted(nbrs))
        self.similar = sim
        self.sub = {
            (a, b): tuple((x, y) for x in self.members[(a, b)] for y in self.members[(a, b)] if le[x][y])
            for (a, b) in self.universe
        }


_GEOMETRY: "WeakKeyDictionary[Lattice, _Geometry]" = WeakKeyDictionary()


def geometry(L: Lattice) -> _Geometry:
    g = _GEOMETRY.get(L)
    if g is None:
        g = _GEOMETRY[L] = _Geometry(L)
    return g


def all_intervals(L: Lattice) -> frozenset:
    return frozenset(geometry(L).universe)


def trivial_intervals(L: Lattice) -> frozenset:
    return geometry(L).trivial


def check_interval(L: Lattice, I: tuple[int, int]) -> Interval:
    a, b = I
    if not (0 <= a < L.n and 0 <= b < L.n) or not L.le[a][b]:
        raise IntervalSetError(f"[{a},{b}] is not an interval of {L.name}")
    return Interval(a, b)


def similar(L: Lattice, I: tuple[int, int], J: tuple[int, int]) -> bool:
    """I ~ J: some l, r give {I, J} = {[l, l v r], [l ^ r, r]}."""
    (a, b), (c, d) = check_interval(L, I), check_interval(L, J)
    mt, jn = L.mt, L.jn
    return (jn[a][d] == b and mt[a][d] == c) or (jn[c][b] == d and mt[c][b] == a)


def closure(L: Lattice, S: Iterable[tuple[int, int]], target: str = "basic") -> frozenset:
    """Least set containing S and all trivial intervals, closed under
    similarity and, for ``target='basic'``, under subintervals."""
    if target not in ("abstract", "basic"):
        raise ValueError(f"unknown closure target {target!r}")
    g = geometry(L)
    out = set(g.trivial)
    todo = [check_interval(L, I) for I in S]
    todo = [tuple(I) for I in todo] + list(g.trivial)
    while todo:
        I = todo.pop()
        out.add(I)
        nxt = list(g.similar[I])
        if target == "basic":
            nxt += g.sub[I]
        for J in nxt:
            if J not in out:
                out.add(J)
                todo.append(J)
    return frozenset(out)


# --- closure conditions -------------------------------------------------------

def is_abstract(L: Lattice, S: frozenset) -> bool:
    g = geometry(L)
    return bool(S) and all(J in S for I in S for J in g.similar[I])


def is_basic(L: Lattice, S: frozenset) -> bool:
    g = geometry(L)
    return is_abstract(L, S) and all(J in S for I in S for J in g.sub[I])


def _abutting_closed(L: Lattice, S: frozenset) -> bool:
    for a, b in S:
        for c in L.up[b]:
            if (b, c) in S and (a, c) not in S:
                return False
    return True


def _join_closed(L: Lattice, S: frozenset) -> bool:
    """For each a, {x : [a,x] in S} contains a and is closed under binary
    joins; for a finite lattice this is the pre-division condition."""
    jn = L.jn
    for a in range(L.n):
        xs = [x for x in L.up[a] if (a, x) in S]
        if a not in xs:
            return False
        for x, y in combinations(xs, 2):
            if (a, jn[x][y]) not in S:
                return False
    return True


def predivision_by_subsets(L: Lattice, S: frozenset) -> bool:
    """Literal pre-division test over every subset X of [a, 1]; exponential,
    intended as a cross-check for small lattices."""
    for a in range(L.n):
        ups = L.up[a]
        for r in range(len(ups) + 1):
            for X in combinations(ups, r):
                if all((a, x) in S for x in X):
                    top = L.join_all(X) if X else a
                    if (a, L.jn[a][top]) not in S:
                        return False
    return True


def is_congruence(L: Lattice, S: frozenset) -> bool:
    return is_basic(L, S) and _abutting_closed(L, S)


def is_division(L: Lattice, S: frozenset) -> bool:
    return is_congruence(L, S) and _join_closed(L, S)


def classify_set(L: Lattice, S: Iterable[tuple[int, int]]) -> str:
    S = frozenset(S)
    if not is_abstract(L, S):
        return "none"
    if not is_basic(L, S):
        return "abstract"
    cong = _abutting_closed(L, S)
    pre = _join_closed(L, S)
    if cong and pre:
        return "division"
    if cong:
        return "congruence"
    if pre:
        return "pre-division"
    return "basic"


def _require_basic(L: Lattice, S: frozenset, what: str) -> None:
    if not is_basic(L, S):
        raise IntervalSetError(f"{what} is not a basic set of intervals")


# --- division sets ------------------------------------------------------------

def _dvs_pass(L: Lattice, B: frozenset) -> frozenset:
    le = L.le
    g = geometry(L)
    keep = []
    for a, b in g.universe:
        I = g.members[(a, b)]
        if all(any((x, y) in B for y in I if y != x and le[x][y]) for x in I if x != b):
            keep.append((a, b))
    return frozenset(keep)


def dvs(L: Lattice, B: Iterable[tuple[int, int]]) -> frozenset:
    """Least division set containing the basic set B.

    [a,b] is kept when every a <= x < b has some x < y <= b with [x,y] in the
    current set; the pass is repeated until nothing changes."""
    cur = frozenset(B)
    _require_basic(L, cur, "dvs input")
    for _ in range(len(geometry(L).universe) + 1):
        nxt = _dvs_pass(L, cur)
        if nxt == cur:
            break
        cur = nxt
    else:  # pragma: no cover - bounded by the universe size
        raise RuntimeError("dvs iteration did not stabilise")
    if not is_division(L, cur):
        raise AssertionError(f"dvs produced a non-division set on {L.name}")
    return cur


def set_implication(L: Lattice, A: Iterable[tuple[int, int]], B: Iterable[tuple[int, int]]) -> frozenset:
    """(A > B): intervals all of whose subintervals in A also lie in B."""
    A, B = frozenset(A), frozenset(B)
    _require_basic(L, A, "antecedent")
    if not is_division(L, B):
        raise IntervalSetError("consequent is not a division set")
    g = geometry(L)
    return frozenset(I for I in g.universe if all(J in B for J in g.sub[I] if J in A))


def associated_inflator(L: Lattice, B: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """|B|(a) = join of every x with [a,x] in B."""
    B = frozenset(B)
    return tuple(L.join_all(x for x in L.up[a] if (a, x) in B) for a in range(L.n))


# --- special classes ----------------------------------------------------------

def _smp(L, B, a, b, I):
    return all((a, x) in B or (x, b) in B for x in I)


def _cmp(L, B, a, b, I):
    mt, jn = L.mt, L.jn
    return all(any((a, mt[x][y]) in B and (jn[x][y], b) in B for y in I) for x in I)


def _fll(L, B, a, b, I):
    mt, jn = L.mt, L.jn
    return all(any(mt[x][y] == a and (jn[x][y], b) in B for y in I) for x in I)


def _crt(L, B, a, b, I):
    return all(x == a or (x, b) in B for x in I)


def _sct(L, B, a, b, I):
    # canonical witness: every x whose lower interval [a,x] is B-critical;
    # the gap between their join and b must itself lie in B
    crit = [x for x in I if _crt(L, B, a, x, L.interval(a, x))]
    return (L.join_all(crit), b) in B


def _wa(L, B, a, b, I):
    le = L.le
    covers = set(L.covers)
    for c in I:
        for d in I:
            if c != d and le[c][d]:
                inner = L.interval(c, d)
                if not any((x, y) in covers for x in inner for y in inner):
                    return False
    return True


def _fa(L, B, a, b, I):
    le = L.le
    covers = set(L.covers)
    O = geometry(L).trivial
    for c in I:
        for d in I:
            if c != d and le[c][d] and _cmp(L, O, c, d, L.interval(c, d)):
                if not any((c, z) in covers for z in L.interval(c, d)):
                    return False
    return True


def _uniform(L, B, a, b, I):
    mt = L.mt
    return a != b and all(x == a or y == a for x in I for y in I if mt[x][y] == a)


def _ssp(L, B, a, b, I):
    return _sct(L, geometry(L).trivial, a, b, I)


_PREDICATES = {
    SpecialClass.SMP: _smp,
    SpecialClass.CMP: _cmp,
    SpecialClass.CRT: _crt,
    SpecialClass.FLL: _fll,
    SpecialClass.SCT: _sct,
    SpecialClass.WA: _wa,
    SpecialClass.FA: _fa,
    SpecialClass.UNIFORM: _uniform,
    SpecialClass.SSP: _ssp,
}


def member_special(L: Lattice, B: Iterable[tuple[int, int]] | None, I: tuple[int, int],
                   tag: SpecialClass | str) -> bool:
    tag = SpecialClass(tag)
    a, b = check_interval(L, I)
    if tag is SpecialClass.SA:
        return (a, b) in semi_atomic(L)
    B = frozenset(B) if B is not None else geometry(L).trivial
    if tag in RELATIVE:
        _require_basic(L, B, "relative set")
    return _PREDICATES[tag](L, B, a, b, geometry(L).members[(a, b)])


def special_set(L: Lattice, B: Iterable[tuple[int, int]] | None, tag: SpecialClass | str) -> frozenset:
    """Every interval of L in the class ``tag`` (relative to B where needed)."""
    tag = SpecialClass(tag)
    if tag is SpecialClass.SA:
        return semi_atomic(L)
    g = geometry(L)
    B = frozenset(B) if B is not None else g.trivial
    if tag in RELATIVE:
        _require_basic(L, B, "relative set")
    pred = _PREDICATES[tag]
    return frozenset(I for I in g.universe if pred(L, B, I[0], I[1], g.members[I]))


def semi_atomic(L: Lattice) -> frozenset:
    """SA, taken as the division closure of the semi-simple intervals."""
    return dvs(L, special_set(L, None, SpecialClass.SSP))


def format_set(L: Lattice, S: Iterable[tuple[int, int]]) -> list[list[str]]:
    """Sorted label pairs, the serialised form of an interval set."""
    return [[L.labels[a], L.labels[b]] for a, b in sorted(S)]
