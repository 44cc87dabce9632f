"""idiomkit command line.

Exit status: 0 on success, 1 when a theorem check is refuted (or, with
--strict, when the assembly cap stops a computation), 2 on bad input."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report as rp
from .corpus import FIXTURES, CorpusSpec, acceptance_corpus, enumerate_corpus, load_fixture, random_modular
from .intervals import IntervalSetError, SpecialClass
from .lattice import LatticeError, format_lattice, parse_lattice, to_dot
from .nuclei import AssemblyCapExceeded, NucleusError, assembly, format_assembly, nucleus_from_spec, \
    warn_if_not_idiom

EXIT_OK, EXIT_REFUTED, EXIT_INPUT = 0, 1, 2

VERBS = ("validate", "classify", "intervals", "nuclei", "assembly", "derive", "booleanity", "dimension",
         "spectral", "theorems", "enumerate", "export-dot")


class InputError(Exception):
    pass


def read_lattice(path: str):
    p = Path(path)
    if not p.exists():
        stem = p.name[:-4] if p.name.endswith(".lat") else p.name
        if stem in FIXTURES and p.parent == Path("."):
            return load_fixture(stem)  # bundled fixture by bare name
        raise InputError(f"no such file: {path}")
    try:
        return parse_lattice(p.read_text())
    except LatticeError as e:
        raise InputError(f"{path}: {e}") from None


def _parse_set(L, text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InputError(f"interval {part!r} should look like lo:hi")
        lo, hi = (s.strip() for s in part.split(":", 1))
        try:
            out.append((L.index(lo), L.index(hi)))
        except LatticeError as e:
            raise InputError(str(e)) from None
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="idiomkit", description="Nuclei, assemblies and derivatives on finite "
                                                                 "modular lattices.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--cap", type=int, help="largest assembly to enumerate (default from IDIOMKIT_CAP)")
    common.add_argument("--strict", action="store_true", help="treat an exceeded cap as a failure")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, help_, lattice=True, nucleus=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        if lattice:
            p.add_argument("lattice", help="lattice file (or a bundled fixture name)")
        if nucleus:
            p.add_argument("--nucleus", "-j", default="id",
                           help="id, tp, jK (assembly label) or comma-separated images")
        return p

    add("validate", "parse a lattice file and check the lattice laws")
    add("classify", "modular / frame / complemented / boolean")
    p = add("intervals", "list intervals, a special class, or classify an interval set", nucleus=True)
    p.add_argument("--special", choices=[t.value for t in SpecialClass])
    p.add_argument("--classify", metavar="SET", help="comma-separated lo:hi pairs")
    add("nuclei", "enumerate every nucleus")
    p = add("assembly", "the frame N(A) of all nuclei")
    p.add_argument("--table", help="also write the nucleus image table to this path")
    p = add("derive", "cbd, soc, Boy, Gab and fbl for one or every nucleus")
    p.add_argument("--nucleus", "-j", help="default: every nucleus")
    p = add("booleanity", "the three booleanity conditions for a nucleus", nucleus=True)
    p.add_argument("--n2", action="store_true", help="also decide whether N(N(A)) is boolean")
    p = add("dimension", "Boy- or Gab-dimension of a nucleus", nucleus=True)
    p.add_argument("--kind", choices=("Boy", "Gab"), default="Boy")
    add("spectral", "spectral test and its consequences for a nucleus", nucleus=True)
    p = add("theorems", "run the identity suite", lattice=False)
    p.add_argument("lattices", nargs="*", help="lattice files")
    p.add_argument("--corpus", action="store_true",
                   help="modular lattices up to 6 elements, the fixtures and a seeded random batch")
    p.add_argument("--max-n", type=int, help="use every lattice up to this size instead")
    p.add_argument("--filter", choices=("all", "modular", "distributive"), default="modular")
    p.add_argument("--seed", type=int, default=0)
    p = add("enumerate", "lattices up to isomorphism", lattice=False)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--filter", choices=("all", "modular", "distributive"), default="all")
    p.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="also draw COUNT random modular 7-element lattices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--write-dir", help="write each lattice as NAME.lat into this directory")
    p = add("export-dot", "graphviz source for a lattice or its assembly")
    p.add_argument("--assembly", action="store_true")
    return ap


def _emit(args, command: str, result: dict, text: str) -> None:
    out = rp.dump_structured(command, result) if args.format == "structured" else text + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _nucleus(L, spec, args):
    asm = None
    if spec.startswith("j"):
        asm = assembly(L, args.cap)
    try:
        return nucleus_from_spec(L, spec, asm)
    except NucleusError as e:
        raise InputError(str(e)) from None


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (LatticeError, NucleusError, IntervalSetError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AssemblyCapExceeded as e:
        print(f"assembly cap exceeded: {e}", file=sys.stderr)
        return EXIT_REFUTED if args.strict else EXIT_OK


def _dispatch(args) -> int:
    v = args.verb
    if v == "enumerate":
        return _enumerate(args)
    if v == "theorems":
        return _theorems(args)
    L = read_lattice(args.lattice)
    warn = warn_if_not_idiom(L)
    if warn and v not in ("validate", "classify", "export-dot"):
        print(f"warning: {warn}", file=sys.stderr)

    if v == "validate":
        _emit(args, v, {"lattice": L.name, "elements": L.n, "valid": True},
              f"valid: {L.name} ({L.n} elements, {len(L.covers)} covers)")
    elif v == "classify":
        r = rp.classify_result(L)
        _emit(args, v, r, rp.classify_text(r))
    elif v == "intervals":
        to_classify = _parse_set(L, args.classify) if args.classify is not None else None
        j = _nucleus(L, args.nucleus, args) if args.special else None
        r = rp.intervals_result(L, args.special, j, to_classify)
        _emit(args, v, r, rp.intervals_text(r))
    elif v == "nuclei":
        r = rp.nuclei_result(assembly(L, args.cap))
        _emit(args, v, r, rp.nuclei_text(r))
    elif v == "assembly":
        asm = assembly(L, args.cap)
        if args.table:
            doc, table = format_assembly(asm)
            Path(args.table).write_text(table)
        r = rp.assembly_result(asm)
        _emit(args, v, r, rp.assembly_text(r))
    elif v == "derive":
        nuclei = [_nucleus(L, args.nucleus, args)] if args.nucleus else list(assembly(L, args.cap).nuclei)
        r = rp.derive_result(L, nuclei)
        _emit(args, v, r, rp.derive_text(r))
    elif v == "booleanity":
        j = _nucleus(L, args.nucleus, args)
        r = rp.booleanity_result(L, j, args.cap, assembly(L, args.cap) if args.n2 else None)
        if r["assembly_boolean"] is None and args.strict:
            raise AssemblyCapExceeded(args.cap or 0, -1)
        _emit(args, v, r, rp.booleanity_text(r))
    elif v == "dimension":
        j = _nucleus(L, args.nucleus, args)
        r = rp.dimension_result(L, j, args.kind)
        _emit(args, v, r, rp.dimension_text(r))
    elif v == "spectral":
        j = _nucleus(L, args.nucleus, args)
        r = rp.spectral_result(L, j, None, args.cap)
        _emit(args, v, r, rp.spectral_text(r))
        if r["failures"]:
            return EXIT_REFUTED
    elif v == "export-dot":
        target = assembly(L, args.cap).frame if args.assembly else L
        text = to_dot(target)
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    else:  # pragma: no cover - argparse restricts the verb
        raise InputError(f"unknown verb {v}")
    return EXIT_OK


def _theorems(args) -> int:
    if args.corpus and args.max_n is None:
        lattices = acceptance_corpus(args.seed)
    elif args.max_n is not None:
        try:
            lattices = enumerate_corpus(CorpusSpec(args.max_n, args.filter, args.seed))
        except ValueError as e:
            raise InputError(str(e)) from None
    else:
        if not args.lattices:
            raise InputError("theorems needs lattice files, --corpus or --max-n")
        lattices = [read_lattice(p) for p in args.lattices]
    r, ok = rp.theorems_result(lattices, args.cap)
    skipped = r["summary"]["skipped"]
    _emit(args, "theorems", r, rp.theorems_text(r))
    if not ok:
        return EXIT_REFUTED
    if skipped and args.strict:
        return EXIT_REFUTED
    return EXIT_OK


def _enumerate(args) -> int:
    try:
        lattices = enumerate_corpus(CorpusSpec(args.max_n, args.filter, args.seed))
    except ValueError as e:
        raise InputError(str(e)) from None
    if args.random:
        lattices += random_modular(args.seed, args.random)
    if args.write_dir:
        d = Path(args.write_dir)
        d.mkdir(parents=True, exist_ok=True)
        for L in lattices:
            (d / f"{L.name}.lat").write_text(format_lattice(L))
    by_size: dict[int, int] = {}
    for L in lattices:
        by_size[L.n] = by_size.get(L.n, 0) + 1
    r = {"filter": args.filter, "max_n": args.max_n, "count": len(lattices),
         "by_size": {str(k): by_size[k] for k in sorted(by_size)},
         "lattices": [{"name": L.name, "elements": L.n, "covers": len(L.covers)} for L in lattices]}
    text = "\n".join([f"{len(lattices)} lattices ({args.filter}, up to {args.max_n} elements)"]
                     + [f"  {n} elements: {c}" for n, c in r["by_size"].items()])
    _emit(args, "enumerate", r, text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
