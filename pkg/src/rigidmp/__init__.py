"""Exact rigidity analysis of linear multiports.

Spaces are rational vector or affine spaces on labelled columns; multiports
pair a topology space with a device space; rigidity means the pair admits
solutions for every source value and unique ones once the ports are fixed.
"""

from .colspace import (AffineSpace, Label, VectorSpace, VOID, affine_intersect, affine_matched, direct_sum,
                       implicit_inverse_check, intersect, matched, parse_space, format_space, skewed, vsum)
from .graph import Graph, kcl_space, kvl_space
from .matroid import (Cographic, DirectSum, Dual, Free, Graphic, Linear, Matroid, Partition, Union, Zero,
                      linking, matroid_pair_rigid, meet, union_max_distant)
from .rigidity import AssocFamily, GeneralizedMultiport, family_rigid, family_rigid_recursive, pair_rigid
from .multiport import (CCCS, CCVS, VCCS, VCVS, ISource, Multiport, Resistor, VSource, analyse, dirac_check,
                        dirac_sufficiency_check, exact_rigidity, hybrid_rep, matroidal_rigidity,
                        necessity_check, port_behaviour, solve, sufficiency_check,
                        topo_space, device_space)
from .portxform import (graph_port_minimize, internal_model, is_port_transformation, lift_behaviour,
                        minimize_ports, port_independence, port_reduce_matrix, visible_minor_form)
from .netlist import emit_netlist, parse_netlist, read_netlist

__all__ = [
    "AffineSpace", "Label", "VectorSpace", "VOID", "affine_intersect", "affine_matched", "direct_sum",
    "implicit_inverse_check", "intersect", "matched", "parse_space", "format_space", "skewed", "vsum",
    "Graph", "kcl_space", "kvl_space", "Cographic", "DirectSum", "Dual", "Free", "Graphic", "Linear",
    "Matroid", "Partition", "Union", "Zero", "linking", "matroid_pair_rigid", "meet", "union_max_distant",
    "AssocFamily", "GeneralizedMultiport", "family_rigid", "family_rigid_recursive", "pair_rigid", "CCCS",
    "CCVS", "VCCS", "VCVS", "ISource", "Multiport", "Resistor", "VSource", "analyse", "dirac_check",
    "dirac_sufficiency_check", "exact_rigidity", "hybrid_rep", "matroidal_rigidity", "necessity_check",
    "port_behaviour", "solve", "sufficiency_check", "topo_space", "device_space", "graph_port_minimize",
    "internal_model", "is_port_transformation", "lift_behaviour", "minimize_ports", "port_independence",
    "port_reduce_matrix", "visible_minor_form", "emit_netlist", "parse_netlist", "read_netlist",
]
__version__ = "0.1.0"
