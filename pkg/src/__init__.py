"""
coxrig: words, automorphisms and outer automorphisms of the universal Coxeter group W_n
"""

# Words and automorphisms
from .word_core import GroupWord, generator
from .automorphism import CoxAutomorphism, OuterClass, outer, parse_automorphism

# Presentations, subgroups, marked graphs, rank 3
from .finite_subgroup import FiniteSubgroup, closure
from .gilbert_presentation import enumerate_relators, verify_presentation
from .spine import GraphShape, SpineVertex, enumerate_shapes
from .rank3_bridge import FreeWord2, induced_matrix

# Make key names available at package level
__all__ = [
    'GroupWord',
    'generator',
    'CoxAutomorphism',
    'OuterClass',
    'outer',
    'parse_automorphism',
    'FiniteSubgroup',
    'closure',
    'enumerate_relators',
    'verify_presentation',
    'GraphShape',
    'SpineVertex',
    'enumerate_shapes',
    'FreeWord2',
    'induced_matrix',
]

__version__ = "0.1.0"
