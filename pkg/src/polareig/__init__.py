"""Exact-arithmetic polar spaces, their strongly regular graphs, and
minimum-support eigenfunctions, with a brute-force oracle for every
closed-form claim."""

from .gf import (
    FieldContext, FieldElement, NormOneSubgroup,
    field_new, field_from_order, frobenius_sqrt, norm_one_subgroup,
    norm_minus_one_unit, primitive_element,
)
from .forms import Form, standard_form, eval_form, polarise, eval_pairing, perp
from .polarspace import (
    PolarSpace, PolarSpaceDescriptor, ProjectivePoint, SingularSubspace,
    polar_space, points, singular_subspaces, rank_and_order,
)
from .graphs import (
    PolarGraph, SrgParams, SpectrumInfo, CliqueInfo,
    collinearity_graph, affine_polar_graph, unitary_graph,
    srg_check, spectrum, delsarte_cliques, max_intersecting_delsarte_pair,
)
from .eigenfunctions import (
    Eigenfunction, WdbReport, wdb, verify_eigenfunction,
    theta1_polar, theta1_hyperbolic, theta1_elliptic,
    theta1_from_clique_pair, theta2_unitary,
)
from .oracle import (
    PairCatalog, CountComparison, enumerate_isolated_clique_pairs,
    enumerate_bipartite_pairs, check_characterisation, count_comparison,
)

__version__ = "0.1.0"
