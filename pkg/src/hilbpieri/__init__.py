"""Products with the incidence divisor on the Hilbert scheme of points in the plane,
computed in the Mallavibarrena-Sols basis by combinatorial degeneration rules."""
from .classes import FormalSum, MSTriple, Term
from .dag import build_dag, check_conjecture, path_weight_sum
from .pieri import PieriRow, enumerate_basis, intersect_with_h, pieri_matrix
from .rewrite import rewrite_to_ms, split_h_product

__all__ = [
    "FormalSum", "MSTriple", "Term", "PieriRow",
    "build_dag", "check_conjecture", "path_weight_sum",
    "enumerate_basis", "intersect_with_h", "pieri_matrix",
    "rewrite_to_ms", "split_h_product",
]
__version__ = "0.1.0"
