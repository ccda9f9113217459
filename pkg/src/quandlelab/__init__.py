"""Finite quandles, their iterated operations, and conjugation quandles in GL(2, C)."""
from .core import (
    AxiomReport, Conj, Core, Dihedral, FromTable, ParseError, Permutation, QuandleTable, StructureError,
    Trivial, build, dual, iterate, iterate_fast, load_table, loads_table, parse_spec, save_table, validate,
)
from .groups import Cyclic, DihedralGroup, GroupTable, Symmetric, build_group
from .analysis import analyze, connectivity_degree, embed, find_isomorphism, is_latin, orbits, type_of
from .words import QuandleWord, compose, evaluate, normalize, presentation

__version__ = "0.1.0"
