"""Result dictionaries for each CLI verb and their text / structured renderings.

The structured form is a YAML document with sorted keys and a versioned
header. Everything in it is a label, an integer or a boolean, so two runs on
the same input produce identical bytes."""
from __future__ import annotations

from typing import Iterable

import yaml

from . import intervals as iv
from .analysis import (FBL_CONDITIONS, booleanity, dimension, feebly_atomic_report, fixture_claims,
                       n2_boolean_check, spectral_check, theorem_suite)
from .derivatives import bundle_table
from .intervals import SpecialClass
from .lattice import Lattice, classify_lattice, distributive_witness, modular_witness
from .nuclei import Assembly, Map, fixed_points

FORMAT_NAME = "idiomkit-report"
FORMAT_VERSION = 1


def dump_structured(command: str, result: dict) -> str:
    doc = {"format": FORMAT_NAME, "version": FORMAT_VERSION, "command": command, "result": result}
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=False, allow_unicode=False, width=100)


def load_structured(text: str) -> dict:
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise ValueError("not an idiomkit report")
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported report version {doc.get('version')}")
    return doc


def yn(flag: bool | None) -> str:
    return "skipped" if flag is None else ("yes" if flag else "no")


def _labs(L: Lattice, xs: Iterable[int]) -> list[str]:
    return [L.labels[x] for x in xs]


def nucleus_label(L: Lattice, j: Map) -> str:
    return ",".join(L.labels[v] for v in j)


# --- per-verb results -----------------------------------------------------------

def classify_result(L: Lattice) -> dict:
    c = classify_lattice(L)
    out = {"lattice": L.name, "elements": L.n, "modular": c.is_modular, "frame": c.is_distributive_frame,
           "complemented": c.is_complemented, "boolean": c.is_boolean}
    w = modular_witness(L)
    if w is not None:
        out["modular_witness"] = _labs(L, w)
    w = distributive_witness(L)
    if w is not None:
        out["distributive_witness"] = _labs(L, w)
    return out


def classify_text(r: dict) -> str:
    lines = [f"modular: {yn(r['modular'])}, frame: {yn(r['frame'])}",
             f"complemented: {yn(r['complemented'])}, boolean: {yn(r['boolean'])}"]
    if "modular_witness" in r:
        lines.append("modular law fails at (a, b, c) = (" + ", ".join(r["modular_witness"]) + ")")
    if "distributive_witness" in r:
        lines.append("distributive law fails at (a, b, c) = (" + ", ".join(r["distributive_witness"]) + ")")
    return "\n".join(lines)


def intervals_result(L: Lattice, special: str | None, j: Map | None, to_classify: list | None) -> dict:
    out: dict = {"lattice": L.name}
    if to_classify is not None:
        out["set"] = iv.format_set(L, to_classify)
        out["kind"] = iv.classify_set(L, to_classify)
        return out
    if special is None:
        S = iv.all_intervals(L)
        out["class"] = "all"
    else:
        tag = SpecialClass(special)
        B = None
        if tag in iv.RELATIVE and j is not None:
            from .nuclei import nucleus_to_division
            B = nucleus_to_division(L, j)
            out["relative_to"] = nucleus_label(L, j)
        S = iv.special_set(L, B, tag)
        out["class"] = tag.value
    out["count"] = len(S)
    out["intervals"] = iv.format_set(L, S)
    return out


def intervals_text(r: dict) -> str:
    if "kind" in r:
        return f"kind: {r['kind']}"
    head = f"{r['class']}: {r['count']} intervals"
    if "relative_to" in r:
        head += f" (relative to j = {r['relative_to']})"
    return "\n".join([head] + [f"  [{a},{b}]" for a, b in r["intervals"]])


def nuclei_result(asm: Assembly) -> dict:
    L = asm.base
    rows = []
    for k, m in enumerate(asm.nuclei):
        rows.append({"label": asm.label(k), "images": _labs(L, m), "fixed": _labs(L, fixed_points(m))})
    return {"lattice": L.name, "count": len(asm), "nuclei": rows}


def nuclei_text(r: dict) -> str:
    lines = [f"{r['count']} nuclei on {r['lattice']}"]
    for row in r["nuclei"]:
        lines.append(f"  {row['label']}: {' '.join(row['images'])}   fixed {{{', '.join(row['fixed'])}}}")
    return "\n".join(lines)


def assembly_result(asm: Assembly) -> dict:
    F = asm.frame
    c = classify_lattice(F)
    out = nuclei_result(asm)
    out.update({"frame": F.name, "boolean": c.is_boolean, "covers": [[F.labels[a], F.labels[b]]
                                                                    for a, b in F.covers]})
    return out


def assembly_text(r: dict) -> str:
    return "\n".join([f"N({r['lattice']}): {r['count']} nuclei, boolean: {yn(r['boolean'])}",
                      nuclei_text(r).split("\n", 1)[1] if r["count"] else "",
                      "covers: " + " ".join(f"{a}<{b}" for a, b in r["covers"])])


def derive_result(L: Lattice, nuclei: list[Map]) -> dict:
    out = {"lattice": L.name, "nuclei": bundle_table(L, nuclei)}
    claims = fixture_claims(L)
    if claims:
        out["claims"] = claims
    return out


def derive_text(r: dict) -> str:
    lines = []
    for row in r["nuclei"]:
        lines.append(f"j = {' '.join(row['nucleus'])}")
        for key in ("cbd", "soc", "boy", "gab", "fbl"):
            lines.append(f"  {key}: {' '.join(row[key])}")
        lines.append(f"  boy index: {row['boy_index']}, gab index: {row['gab_index']}")
    for c in r.get("claims", []):
        detail = ", ".join(f"{k}: {v}" for k, v in sorted(c.items())
                           if k not in ("claim", "holds", "expected_discrepancy"))
        tag = "holds" if c["holds"] else ("expected discrepancy" if c["expected_discrepancy"] else "FAILS")
        lines.append(f"claim '{c['claim']}': {tag} ({detail})")
    return "\n".join(lines)


def booleanity_result(L: Lattice, j: Map, cap: int | None, n2: Assembly | None = None) -> dict:
    rep = booleanity(L, j, cap)
    out = {"lattice": L.name, "nucleus": _labs(L, j), "identity": j == tuple(range(L.n)),
           "assembly_boolean": rep.cond_assembly_boolean, "boy_top": rep.cond_boy_top,
           "essential_cbd": rep.cond_essential_cbd, "witness": _labs(L, rep.witness)}
    if n2 is not None:
        out["n2_boolean"] = n2_boolean_check(L, n2, cap)
    return out


def booleanity_text(r: dict) -> str:
    name = "N(A)" if r["identity"] else "N(A_j)"
    lines = [f"{name} boolean: {yn(r['assembly_boolean'])}",
             f"Boy(j) = tp: {yn(r['boy_top'])}",
             f"every fixed a essentially below cbd_j(a): {yn(r['essential_cbd'])}"]
    if r["witness"]:
        lines.append("  fails at: " + ", ".join(r["witness"]))
    if "n2_boolean" in r:
        lines.append(f"N2(A) boolean: {yn(r['n2_boolean'])}")
    return "\n".join(lines)


def dimension_result(L: Lattice, j: Map, kind: str) -> dict:
    d = dimension(L, j, kind)
    return {"lattice": L.name, "nucleus": _labs(L, j), "kind": kind, "value": d.value,
            "chain": [_labs(L, m) for m in d.chain]}


def dimension_text(r: dict) -> str:
    v = "none" if r["value"] is None else str(r["value"])
    lines = [f"{r['kind']}-dimension: {v}"]
    for k, m in enumerate(r["chain"]):
        lines.append(f"  step {k}: {' '.join(m)}")
    return "\n".join(lines)


def spectral_result(L: Lattice, j: Map, asm: Assembly | None, cap: int | None) -> dict:
    s = spectral_check(L, j, asm, cap)
    fa = feebly_atomic_report(L, j)
    return {"lattice": L.name, "nucleus": _labs(L, j), "spectral": s.is_spectral,
            "cbd_quotient_top": s.cbd_quotient_top, "chi_intervals_full": s.chi_intervals_full,
            "failures": s.failures, "feebly_atomic": fa.value,
            "feebly_atomic_conditions": dict(zip(FBL_CONDITIONS, fa.conditions))}


def spectral_text(r: dict) -> str:
    lines = [f"spectral: {yn(r['spectral'])}",
             f"cbd of the quotient is tp: {yn(r['cbd_quotient_top'])}",
             f"every [a,b] with j <= chi(a,b) is full: {yn(r['chi_intervals_full'])}",
             f"feebly atomic: {yn(r['feebly_atomic'])}"]
    for k, w in sorted(r["failures"].items()):
        lines.append(f"  check {k} failed: {w}")
    return "\n".join(lines)


def theorems_result(lattices: Iterable[Lattice], cap: int | None) -> tuple[dict, bool]:
    reports = [theorem_suite(L, cap) for L in lattices]
    return merge_suites(reports)


def merge_suites(reports) -> tuple[dict, bool]:
    summary = {"verified": 0, "refuted": 0, "skipped": 0, "expected_discrepancies": 0}
    for r in reports:
        for e in r.entries:
            if e.status == "refuted" and e.expected_discrepancy:
                summary["expected_discrepancies"] += 1
            else:
                summary[e.status] += 1
    ok = all(r.ok for r in reports)
    return {"lattices": [r.as_dict() for r in reports], "summary": summary, "ok": ok}, ok


def theorems_text(r: dict) -> str:
    lines = []
    for lat in r["lattices"]:
        lines.append(f"{lat['lattice']} ({lat['nuclei']} nuclei)")
        for e in lat["entries"]:
            flag = e["status"]
            if e.get("expected_discrepancy"):
                flag += " (expected discrepancy)"
            lines.append(f"  {e['theorem']}: {flag} [{e['checked']}]")
            if "witness" in e:
                lines.append(f"    witness: {e['witness']}")
            if "note" in e:
                lines.append(f"    {e['note']}")
    s = r["summary"]
    lines.append(f"summary: {s['verified']} verified, {s['refuted']} refuted, {s['skipped']} skipped, "
                 f"{s['expected_discrepancies']} expected discrepancies")
    return "\n".join(lines)
