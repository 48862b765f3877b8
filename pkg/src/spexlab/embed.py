"""Tree containment and the constructive bipartite-host embeddings.

``contains_tree`` is exhaustive backtracking: pattern vertices are taken in
BFS order from a tree centroid, so every vertex after the first has exactly
one placed neighbor and candidate sets are host-neighborhood bitmasks
filtered by degree. ``embed_constructive`` instead places trees into
complete bipartite hosts (possibly with an edge, path or matching added to
the large side) by explicit case analysis on the bipartition, and validates
its output before returning; a dead end there is a bug, not an answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmbeddingCaseError, ParameterError
from .graphs import (
    Graph,
    bipartite_plus_edge,
    bipartite_plus_matching,
    bipartite_plus_path,
    complete_bipartite,
)
from .trees import Tree, TreeFamily, _centroids

__all__ = [
    "Embedding",
    "FamilyMembership",
    "verify_embedding",
    "contains_tree",
    "family_membership",
    "embed_constructive",
]


@dataclass(frozen=True)
class Embedding:
    """Injective map pattern vertex -> host vertex covering all pattern edges."""

    mapping: tuple[int, ...]


@dataclass(frozen=True)
class FamilyMembership:
    """Whether a host misses at least one tree of a family.

    ``witness`` is the first missing tree in family order (with its index)
    when ``in_family`` holds.
    """

    in_family: bool
    witness_index: int | None
    witness: Tree | None


def verify_embedding(host: Graph, pattern: Graph, emb: Embedding) -> bool:
    m = emb.mapping
    if len(m) != pattern.n or len(set(m)) != pattern.n:
        return False
    if any(not 0 <= v < host.n for v in m):
        return False
    return all(host.has_edge(m[u], m[v]) for u, v in pattern.edges())


def _bfs_order(tree: Tree) -> tuple[list[int], list[int]]:
    """Pattern vertices in BFS order from the lowest-index centroid.

    Returns (order, parent position in order) with parent[0] = -1.
    """
    adj = [list(tree.graph.neighbors(v)) for v in range(tree.graph.n)]
    root = min(_centroids(adj))
    order = [root]
    parent_pos = [-1]
    pos_of = {root: 0}
    for v in order:
        for u in adj[v]:
            if u not in pos_of:
                pos_of[u] = len(order)
                order.append(u)
                parent_pos.append(pos_of[v])
    return order, parent_pos


def contains_tree(host: Graph, tree: Tree) -> Embedding | None:
    """An embedding of the tree into the host, or None if there is none.

    Candidates that are host twins of an already-failed candidate (same open
    or same closed neighborhood) are skipped: swapping twins is a host
    automorphism fixing the partial assignment, so the retry cannot succeed.
    This keeps misses polynomial on hosts with large interchangeable classes
    (independent parts, bipartite sides).
    """
    t = tree.graph.n
    if t > host.n:
        return None
    order, parent_pos = _bfs_order(tree)
    pdeg = [tree.graph.degree(v) for v in order]
    hdeg = host.degrees()
    hrows = host.rows
    assign = [0] * t
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == t:
            return True
        need = pdeg[i]
        if i == 0:
            cand = range(host.n)
        else:
            cand = _bits(hrows[assign[parent_pos[i]]] & ~used)
        failed_open: set[int] = set()
        failed_closed: set[int] = set()
        for hv in cand:
            if hdeg[hv] < need:
                continue
            row = hrows[hv]
            if row in failed_open or row | (1 << hv) in failed_closed:
                continue
            assign[i] = hv
            used |= 1 << hv
            if place(i + 1):
                return True
            used &= ~(1 << hv)
            failed_open.add(row)
            failed_closed.add(row | (1 << hv))
        return False

    if not place(0):
        return None
    mapping = [0] * t
    for i, v in enumerate(order):
        mapping[v] = assign[i]
    return Embedding(tuple(mapping))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def family_membership(host: Graph, family: TreeFamily) -> FamilyMembership:
    """First tree of the family missing from the host, if any."""
    if not family.trees:
        raise ParameterError("family must be non-empty")
    for i, tree in enumerate(family.trees):
        if contains_tree(host, tree) is None:
            return FamilyMembership(True, i, tree)
    return FamilyMembership(False, None, None)


# ---------------------------------------------------------------------------
# constructive embeddings


_TARGETS = {
    "K": complete_bipartite,
    "K_plus": bipartite_plus_edge,
    "K_path": bipartite_plus_path,
    "K_matching": bipartite_plus_matching,
}


def embed_constructive(tree: Tree, target: str, a: int, b: int) -> Embedding:
    """Embed a tree into its bipartite host by case analysis, not search.

    Supported targets: K(floor(t/2), t-1) for any tree on t vertices;
    K_plus(a, 2a+1) for trees on 2a+2 vertices; K_path(a, 2a+2) and
    K_matching(a, 2a+2) for trees on 2a+3 vertices.
    """
    emb, _ = constructive_with_case(tree, target, a, b)
    return emb


def constructive_with_case(tree: Tree, target: str, a: int, b: int) -> tuple[Embedding, str]:
    if target not in _TARGETS:
        raise ParameterError(f"unknown target {target!r}; expected one of {sorted(_TARGETS)}")
    t = tree.graph.n
    if target == "K":
        if t < 2 or (a, b) != (t // 2, t - 1):
            raise ParameterError(
                f"bipartite target for a tree on {t} vertices must be K({t // 2}, {t - 1})"
            )
    elif target == "K_plus":
        if b != 2 * a + 1 or t != 2 * a + 2:
            raise ParameterError(
                f"K_plus target needs b = 2a+1 and |T| = 2a+2, got a={a}, b={b}, |T|={t}"
            )
    else:
        if b != 2 * a + 2 or t != 2 * a + 3:
            raise ParameterError(
                f"{target} target needs b = 2a+2 and |T| = 2a+3, got a={a}, b={b}, |T|={t}"
            )
    host = _TARGETS[target](a, b)
    emb, case = _place(tree, target, a, b)
    if not verify_embedding(host, tree.graph, emb):
        raise EmbeddingCaseError(
            f"constructive case {case!r} produced an invalid embedding; this falsifies the case analysis"
        )
    return emb, case


def _direct(part_small, part_big, a: int) -> Embedding:
    mapping = [0] * (len(part_small) + len(part_big))
    for slot, v in enumerate(sorted(part_small)):
        mapping[v] = slot
    for slot, v in enumerate(sorted(part_big), start=a):
        mapping[v] = slot
    return Embedding(tuple(mapping))


def _leaves(tree: Tree, within) -> list[int]:
    return [v for v in sorted(within) if tree.graph.degree(v) == 1]


def _place(tree: Tree, target: str, a: int, b: int) -> tuple[Embedding, str]:
    pa, pb = tree.part_a, tree.part_b
    t = tree.graph.n

    if target == "K" or len(pa) <= a:
        # the small part always fits beside the a-side
        return _direct(pa, pb, a), "direct"

    if target == "K_plus":
        # both parts have a+1 vertices: drop the lowest leaf, embed the rest
        # into K(a, a+1), and reattach the leaf along the added edge
        leaf = min(_leaves(tree, range(t)))
        (anchor,) = tree.graph.neighbors(leaf)
        leaf_side = pa if leaf in pa else pb
        other_side = pb if leaf in pa else pa
        mapping = [0] * t
        for slot, v in enumerate(sorted(set(leaf_side) - {leaf})):
            mapping[v] = slot
        mapping[anchor] = a
        mapping[leaf] = a + 1
        for slot, v in enumerate(sorted(set(other_side) - {anchor}), start=a + 2):
            mapping[v] = slot
        return Embedding(tuple(mapping)), "leaf"

    # K_path or K_matching with parts (a+1, a+2)
    small_leaves = _leaves(tree, pa)
    if small_leaves:
        # same one-leaf surgery; both hosts contain the edge (a, a+1)
        leaf = min(small_leaves)
        (anchor,) = tree.graph.neighbors(leaf)
        mapping = [0] * t
        for slot, v in enumerate(sorted(set(pa) - {leaf})):
            mapping[v] = slot
        mapping[anchor] = a
        mapping[leaf] = a + 1
        for slot, v in enumerate(sorted(set(pb) - {anchor}), start=a + 2):
            mapping[v] = slot
        return Embedding(tuple(mapping)), "leaf"

    if target == "K_path":
        # no leaf in the small part forces every small-part degree to be 2;
        # remove one such vertex and bridge its two neighbors with the path
        v0 = min(pa)
        if tree.graph.degree(v0) != 2:
            raise EmbeddingCaseError(
                "small part without leaves must be all degree 2; found degree "
                f"{tree.graph.degree(v0)} at vertex {v0}"
            )
        w1, w2 = sorted(tree.graph.neighbors(v0))
        mapping = [0] * t
        for slot, v in enumerate(sorted(set(pa) - {v0})):
            mapping[v] = slot
        mapping[w1] = a
        mapping[v0] = a + 1
        mapping[w2] = a + 2
        for slot, v in enumerate(sorted(set(pb) - {w1, w2}), start=a + 3):
            mapping[v] = slot
        return Embedding(tuple(mapping)), "degree-two"

    # K_matching residual case: two large-part leaves with distinct anchors
    big_leaves = _leaves(tree, pb)
    if len(big_leaves) < 2:
        raise EmbeddingCaseError(
            "residual matching case needs two leaves in the large part, found "
            f"{len(big_leaves)}"
        )
    l1 = big_leaves[0]
    (u1,) = tree.graph.neighbors(l1)
    l2 = next((l for l in big_leaves[1:] if tree.graph.neighbors(l) != (u1,)), None)
    if l2 is None:
        raise EmbeddingCaseError(
            "all large-part leaves share one anchor, which the case analysis excludes"
        )
    (u2,) = tree.graph.neighbors(l2)
    mapping = [0] * t
    for slot, v in enumerate(sorted(set(pb) - {l1, l2})):
        mapping[v] = slot
    mapping[u1] = a
    mapping[l1] = a + 1
    mapping[u2] = a + 2
    mapping[l2] = a + 3
    for slot, v in enumerate(sorted(set(pa) - {u1, u2}), start=a + 4):
        mapping[v] = slot
    return Embedding(tuple(mapping)), "two-leaves"
