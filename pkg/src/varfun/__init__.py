"""Checkers, factorizations and census tools for variadic functions on finite alphabets."""
from ._fast import BACKEND
from .funcrep import Codomain, VariadicFn, dump_table, load_table
from .words import Alphabet

__all__ = ["Alphabet", "BACKEND", "Codomain", "VariadicFn", "dump_table", "load_table"]
__version__ = "0.1.0"
