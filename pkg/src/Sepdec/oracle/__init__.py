from Sepdec.oracle.exact import AlignmentGraph, alignment_graph, exact_decompose_finite
from Sepdec.oracle.path_condition import find_short_bridge, verify_theorem1_exhaustive

__all__ = [
    "AlignmentGraph",
    "alignment_graph",
    "exact_decompose_finite",
    "find_short_bridge",
    "verify_theorem1_exhaustive",
]
