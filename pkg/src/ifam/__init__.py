"""Exact toolkit for P-intersecting families of labeled graphs."""

__version__ = "0.1.0"

from ifam.errors import CapacityError
from ifam.graphspace import (
    Graph,
    Kind,
    PropertySpec,
    VertexSet,
    bipartite_complete,
    complement,
    decode,
    edge_index,
    encode,
    enumerate_graphs,
    intersect,
    is_subgraph,
    satisfies,
    xor,
)
from ifam.cosets import (
    AnticlusterReport,
    canonical_rep,
    disconnection_witness,
    subspace_W,
    verify_anticluster,
)
from ifam.constructions import (
    Family,
    TreePairSpec,
    block_product,
    exceptional_n4,
    in_tensor_family,
    iterate_treepair,
    star_family,
    tensor_density,
    tensor_family,
    treepair_family,
    union_pattern,
)
from ifam.search import (
    Budget,
    SearchReport,
    brute_force_mu,
    classify_extremal,
    max_family,
    verify_family,
)
from ifam.bounds import (
    BoundReport,
    connected_value,
    entropy_term_check,
    known_values_table,
    trivial_bounds,
    union_bracket,
    union_lower_binomial,
)

__all__ = [
    "AnticlusterReport",
    "BoundReport",
    "Budget",
    "CapacityError",
    "Family",
    "Graph",
    "Kind",
    "PropertySpec",
    "SearchReport",
    "TreePairSpec",
    "VertexSet",
    "bipartite_complete",
    "block_product",
    "brute_force_mu",
    "canonical_rep",
    "classify_extremal",
    "complement",
    "connected_value",
    "decode",
    "disconnection_witness",
    "edge_index",
    "encode",
    "entropy_term_check",
    "enumerate_graphs",
    "exceptional_n4",
    "in_tensor_family",
    "intersect",
    "is_subgraph",
    "iterate_treepair",
    "known_values_table",
    "max_family",
    "satisfies",
    "star_family",
    "subspace_W",
    "tensor_density",
    "tensor_family",
    "treepair_family",
    "trivial_bounds",
    "union_bracket",
    "union_lower_binomial",
    "union_pattern",
    "verify_anticluster",
    "verify_family",
    "xor",
]
