"""Spectral extremal graph workbench.

Construct complete split graphs and their bipartite relatives, compute
spectral radii and Perron vectors, enumerate free-tree families, decide tree
containment, run brute-force spectral and edge Turán searches over small
vertex counts, and audit the structural inequalities that govern the
extremal graphs.
"""

from .graphs import (
    Graph,
    ShellDecomposition,
    complete_split,
    complete_split_plus,
    complete_bipartite,
    bipartite_plus_edge,
    bipartite_plus_path,
    bipartite_plus_matching,
    path_graph,
    clique,
    cycle,
    join,
    disjoint_union,
    construct,
    from_edges,
    shells,
)
from .canon import CanonicalForm, canonical_form, canonical_graph, canonical_g6
from .graph6 import encode as graph6_encode, decode as graph6_decode
from .trees import Tree, TreeFamily, generate_trees, bipartition, tree_from_graph
from .spectral import (
    PerronData,
    Constants,
    VertexPartition,
    AuditEntry,
    AuditReport,
    spectral_radius,
    split_radius_closed_form,
    default_constants,
    constants_with,
    classify_vertices,
    audit_extremal_lemmas,
)
from .embed import (
    Embedding,
    FamilyMembership,
    contains_tree,
    family_membership,
    embed_constructive,
)
from .search import SearchReport, enumerate_graphs, spex_search, ex_search

__version__ = "0.1.0"
