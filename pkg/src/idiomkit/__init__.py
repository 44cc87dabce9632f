"""Nuclei, assemblies and relative derivatives on finite modular lattices."""
from .analysis import booleanity, dimension, feebly_atomic_report, largest_cohesive, spectral_check, theorem_suite
from .corpus import CorpusSpec, acceptance_corpus, enumerate_corpus, load_fixture
from .derivatives import derivative_bundle
from .lattice import Lattice, classify_lattice, essentially_above, parse_lattice
from .nuclei import assembly, enumerate_nuclei, quotient

__version__ = "0.1.0"

__all__ = [
    "Lattice", "parse_lattice", "classify_lattice", "essentially_above",
    "assembly", "enumerate_nuclei", "quotient", "derivative_bundle",
    "booleanity", "dimension", "feebly_atomic_report", "largest_cohesive", "spectral_check", "theorem_suite",
    "CorpusSpec", "enumerate_corpus", "acceptance_corpus", "load_fixture",
]
