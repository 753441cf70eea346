"""Exact search for small zeros of integral quadratic polynomials avoiding sublattices."""
from .errors import LatzeroError
from .intmat import IntMatrix, hnf_lower, integer_kernel
from .lattice import Lattice, SublatticeSystem, coset_representatives, intersect_sublattices, member
from .quadratic import QuadraticPolynomial, evaluate, height, restrict
from .solver import Instance, SearchResult, find_avoiding_zero, minimal_zero_in_box, point_outside_union

__all__ = [
    "IntMatrix", "Instance", "Lattice", "LatzeroError", "QuadraticPolynomial", "SearchResult",
    "SublatticeSystem", "coset_representatives", "evaluate", "find_avoiding_zero", "height",
    "hnf_lower", "integer_kernel", "intersect_sublattices", "member", "minimal_zero_in_box",
    "point_outside_union", "restrict",
]
