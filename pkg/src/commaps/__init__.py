"""Commuting maps on incidence algebras of finite pre-ordered sets."""

from .algebra import (
    CenterElement,
    IncidenceElement,
    basis_element,
    center_basis,
    commutator,
    convolve,
    corner,
    restrict,
    unity,
)
from .circles import Circle, EdgePartition, equiv_classes, equiv_classes_bruteforce, properness_guaranteed
from .commuting import (
    BasisLinearMap,
    MapSpace,
    ProperDecomposition,
    build_from_coefficients,
    commuting_space,
    component_split,
    decompose_proper,
    improper_witness,
    is_commuting,
    proper_space,
    relations_check,
    shape_check,
)
from .preorder import (
    PreOrder,
    build_preorder,
    comparability_graph,
    connected_components,
    directed_edges,
)
from .ring import Ring, RingSpec, is_field, make_ring

__version__ = "0.1.0"
