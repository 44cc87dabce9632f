"""Relative Cantor-Bendixson and socle derivatives, the Boyle and Gabriel
nuclei, fbl, and the same operators lifted to the assembly."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence
from weakref import WeakKeyDictionary

from . import intervals as iv
from .intervals import SpecialClass
from .lattice import Lattice, LatticeError, essential_table, is_modular
from .nuclei import (Assembly, Map, NucleusError, classify_inflator, closure_infty, division_to_nucleus,
                     identity, map_leq, nucleus_to_division, pointwise_meet, require_nucleus)

_ESS: "WeakKeyDictionary[Lattice, tuple]" = WeakKeyDictionary()
_BUNDLES: "WeakKeyDictionary[Lattice, dict]" = WeakKeyDictionary()


def essentials(L: Lattice) -> tuple[tuple[bool, ...], ...]:
    e = _ESS.get(L)
    if e is None:
        e = _ESS[L] = essential_table(L)
    return e


def cbd_rel(L: Lattice, j: Sequence[int], a: int) -> int:
    """Meet of j(x) over every x essentially above j(a).

    On fixed points of j this is the top of the largest j-full interval
    above a; elsewhere it equals that value at j(a), not at a."""
    ess = essentials(L)
    ja = j[a]
    return L.meet_all(j[x] for x in range(L.n) if ess[ja][x])


def cbd_map(L: Lattice, j: Sequence[int]) -> Map:
    return tuple(cbd_rel(L, j, a) for a in range(L.n))


def soc_rel(L: Lattice, j: Sequence[int], a: int) -> int:
    """soc_j(a): the largest b with [a,b] j-semicritical, which is j applied
    to the join of the j-critical tops over a."""
    return derivative_bundle(L, j).soc[a]


@dataclass(frozen=True, eq=False)
class DerivativeBundle:
    j: Map
    division: frozenset      # D_j
    full: frozenset          # Fll(D_j)
    critical: frozenset      # Crt(D_j)
    semicritical: frozenset  # Sct(D_j)
    gab_division: frozenset  # Dvs(Crt(D_j))
    fbl_division: frozenset  # Fll(D_j) > Gab(D_j)
    cbd: Map          # |Fll(D_j)|
    cbd_formula: Map  # cbd_rel at every element
    soc: Map
    boy: Map
    gab: Map
    fbl: Map
    boy_index: int
    gab_index: int


def derivative_bundle(L: Lattice, j: Sequence[int]) -> DerivativeBundle:
    j = tuple(j)
    cache = _BUNDLES.get(L)
    if cache is None:
        cache = _BUNDLES[L] = {}
    b = cache.get(j)
    if b is None:
        b = cache[j] = _bundle(L, require_nucleus(L, j))
    return b


class NotAnIdiomError(LatticeError):
    pass


def require_idiom(L: Lattice) -> None:
    if not is_modular(L):
        raise NotAnIdiomError(f"{L.name} is not modular; derivatives are defined on idioms only")


def _bundle(L: Lattice, j: Map) -> DerivativeBundle:
    require_idiom(L)
    D = nucleus_to_division(L, j)
    full = iv.special_set(L, D, SpecialClass.FLL)
    crit = iv.special_set(L, D, SpecialClass.CRT)
    sct = iv.special_set(L, D, SpecialClass.SCT)

    # |Fll(D_j)|; the meet formula only agrees with it on the fixed points of j
    cbd = iv.associated_inflator(L, full)
    formula = cbd_map(L, j)

    soc = []
    for a in range(L.n):
        tops = [b for b in L.up[a] if (a, b) in sct]
        s = L.join_all(tops)
        assert s in tops, "semicritical intervals over a must have a largest member"
        soc.append(s)
    soc = tuple(soc)
    if soc != tuple(j[v] for v in iv.associated_inflator(L, crit)):
        raise AssertionError(f"{L.name}: soc via Sct differs from j o |Crt(D_j)| for j={j}")

    for name, m in (("cbd", cbd), ("soc", soc)):
        if not classify_inflator(L, m).is_stable:
            raise AssertionError(f"{L.name}: {name}_j is not a stable inflator for j={j}")
    boy, boy_k = closure_infty(L, cbd)
    gab, gab_k = closure_infty(L, soc)

    gab_div = iv.dvs(L, iv.closure(L, crit, "basic"))
    if division_to_nucleus(L, gab_div) != gab:
        raise AssertionError(f"{L.name}: soc closure differs from Dvs(Crt(D_j)) for j={j}")
    if division_to_nucleus(L, iv.dvs(L, iv.closure(L, full, "basic"))) != boy:
        raise AssertionError(f"{L.name}: cbd closure differs from Dvs(Fll(D_j)) for j={j}")
    fbl_div = iv.set_implication(L, iv.closure(L, full, "basic"), gab_div)
    fbl = division_to_nucleus(L, fbl_div)
    return DerivativeBundle(j, D, full, crit, sct, gab_div, fbl_div, cbd, formula, soc,
                            boy, gab, fbl, boy_k, gab_k)


def boy_nucleus(L: Lattice, j: Sequence[int]) -> Map:
    return derivative_bundle(L, j).boy


def gab_nucleus(L: Lattice, j: Sequence[int]) -> Map:
    return derivative_bundle(L, j).gab


def iterate_to_fixpoint(L: Lattice, j: Sequence[int], kind: str) -> list[Map]:
    """The chain j <= S(j) <= S^2(j) <= ... for S = Boy or Gab, up to and
    including its first repeated element."""
    step = boy_nucleus if kind == "Boy" else gab_nucleus
    chain = [tuple(j)]
    while True:
        nxt = step(L, chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


# --- operators on the assembly ---------------------------------------------------

class AssemblyOperators(NamedTuple):
    boy: tuple[int, ...]
    gab: tuple[int, ...]
    cbd: tuple[int, ...]
    soc: tuple[int, ...]


_OPS: "WeakKeyDictionary[Assembly, AssemblyOperators]" = WeakKeyDictionary()


def assembly_operators(asm: Assembly) -> AssemblyOperators:
    """Boy and Gab through per-nucleus bundles of the base lattice; Cbd and
    Soc as the assembly frame's own derivatives at its identity nucleus."""
    ops = _OPS.get(asm)
    if ops is None:
        L, F = asm.base, asm.frame
        boy = tuple(asm.lookup(boy_nucleus(L, m)) for m in asm.nuclei)
        gab = tuple(asm.lookup(gab_nucleus(L, m)) for m in asm.nuclei)
        bF = derivative_bundle(F, identity(F))
        ops = _OPS[asm] = AssemblyOperators(boy, gab, bF.cbd, bF.soc)
    return ops


def check_admissible(asm: Assembly, S: Sequence[int]) -> None:
    F = asm.frame
    ops = assembly_operators(asm)
    if not map_leq(F, tuple(S), ops.cbd):
        raise NucleusError("operator is not below Cbd")
    if not classify_inflator(F, S).is_stable:
        raise NucleusError("operator is not a stable inflator on the assembly")


def rs(asm: Assembly, S: Sequence[int]) -> tuple[int, ...]:
    """RS(j) = (S(j) > j) in the assembly."""
    check_admissible(asm, S)
    return tuple(asm.implic(S[j], j) for j in range(len(asm)))


def ls(asm: Assembly, S: Sequence[int]) -> tuple[int, ...]:
    """LS(j) = (RS(j) > j) in the assembly."""
    r = rs(asm, S)
    return tuple(asm.implic(r[j], j) for j in range(len(asm)))


def operator_meet(asm: Assembly, f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return pointwise_meet(asm.frame, tuple(f), tuple(g))


def bundle_table(L: Lattice, nuclei: Sequence[Map]) -> list[dict]:
    """Serialisable per-nucleus table of the five maps and both indices."""
    lab = L.labels
    rows = []
    for j in nuclei:
        b = derivative_bundle(L, j)
        rows.append({
            "nucleus": [lab[v] for v in j],
            "cbd": [lab[v] for v in b.cbd],
            "soc": [lab[v] for v in b.soc],
            "boy": [lab[v] for v in b.boy],
            "gab": [lab[v] for v in b.gab],
            "fbl": [lab[v] for v in b.fbl],
            "boy_index": b.boy_index,
            "gab_index": b.gab_index,
        })
    return rows
