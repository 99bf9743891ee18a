"""Geometric lattices, minimal EL-labelings and facet-ridge diameters of their order complexes."""

from .chain_graph import (
    build_facet_ridge_graph,
    build_glex,
    diameter,
    directed_distance_to_sink,
    distance,
    max_directed_eccentricity,
)
from .descent_order import build_descent_order, check_hasse_equals_glex, polygon_moves
from .descent_path import apply_t, atom_order_for_chain, connect, reversal_chain, straighten
from .errors import CapExceededError, ClaimViolation, DisconnectedGraphError, GeolatError, InputError
from .labeling import (
    AtomOrder,
    ascending_chain,
    descents,
    enumerate_maximal_chains,
    label_sequence,
    minimal_label,
    verify_el,
)
from .lattice import FlatsLattice, build_lattice, interval, verify_geometric
from .matroid import Matroid, closure, make_from_flats, make_graphic, make_linear, make_uniform, rank

__version__ = "0.1.0"
