"""Slim rectangular lattices: construction, congruence colorings, swings and diagrams."""
from .congruence import Congruence, ji_poset, leq_oracle, principal_congruence
from .construct import Recipe, apply_recipe, enumerate_corpus, grid, insert_fork, random_recipe, s7
from .lattice import Edge, Lattice, LatticeError, NotALattice, build_lattice, lattice_from_dict
from .layout import coordinates, render_svg, render_tikz, validate_c1
from .poset import FinitePoset, PROPERTIES
from .swing import classify_edges, equal_pattern, cover_pattern, swing_leq, trajectories

__version__ = "0.1.0"

__all__ = [
    "Congruence", "Edge", "FinitePoset", "Lattice", "LatticeError", "NotALattice", "PROPERTIES",
    "Recipe", "apply_recipe", "build_lattice", "classify_edges", "coordinates", "cover_pattern",
    "enumerate_corpus", "equal_pattern", "grid", "insert_fork", "ji_poset", "lattice_from_dict",
    "leq_oracle", "principal_congruence", "random_recipe", "render_svg", "render_tikz", "s7",
    "swing_leq", "trajectories", "validate_c1",
]
