"""Vertex-transitive graphs as coset graphs, Cayley recognition, and an
audit of semiregular automorphisms obtained from double-coset classes."""

from .graphcore import (
    Graph,
    GraphIso,
    are_isomorphic,
    automorphism_group,
    emit_graph6,
    is_vertex_transitive,
    parse_edge_list,
    parse_graph6,
)
from .permgroup import (
    CapExceeded,
    Permutation,
    PermutationGroup,
    classify_semiregular,
    compose,
    generate,
    inverse,
    parse_cycles,
)
from .polycirculant import AuditReport, find_semiregular_bruteforce, theorem1_procedure
from .sabidussi import (
    cayley_by_normal_stabilizer,
    coset_graph,
    connection_set,
    find_regular_subgroup,
    sabidussi_isomorphism,
)

__version__ = "0.1.0"
