import random

import pytest

from oracles import naive_contains

from spexlab.embed import (
    constructive_with_case,
    contains_tree,
    embed_constructive,
    family_membership,
    verify_embedding,
)
from spexlab.errors import ParameterError
from spexlab.graphs import (
    Graph,
    bipartite_plus_edge,
    bipartite_plus_matching,
    bipartite_plus_path,
    clique,
    complete_bipartite,
    complete_split,
    complete_split_plus,
    from_edges,
    path_graph,
)
from spexlab.trees import bipartition, generate_trees, tree_from_graph


def path_tree(t):
    return tree_from_graph(path_graph(t))


def check_embedding(host: Graph, pattern: Graph, mapping) -> bool:
    # independent validation: injectivity plus edge-by-edge lookup
    if len(set(mapping)) != pattern.n:
        return False
    return all(host.has_edge(mapping[u], mapping[v]) for u, v in pattern.edges())


@pytest.mark.parametrize("k", (2, 3, 4))
def test_path_exclusions(k):
    assert contains_tree(complete_split(30, k), path_tree(2 * k + 2)) is None
    assert contains_tree(complete_split_plus(30, k), path_tree(2 * k + 3)) is None


@pytest.mark.parametrize("k", (2, 3))
def test_one_shorter_path_embeds(k):
    emb = contains_tree(complete_split(30, k), path_tree(2 * k + 1))
    assert emb is not None
    assert check_embedding(complete_split(30, k), path_graph(2 * k + 1), emb.mapping)


def test_small_clique_cannot_host():
    assert contains_tree(clique(5), path_tree(6)) is None


def test_k35_contains_all_six_vertex_trees():
    host = complete_bipartite(3, 5)
    for tree in generate_trees(6):
        emb = contains_tree(host, tree)
        assert emb is not None
        assert check_embedding(host, tree.graph, emb.mapping)


def test_agreement_with_naive_oracle(graphs_on_8):
    rng = random.Random(424242)
    trees = [t for order in range(2, 7) for t in generate_trees(order)]
    pool = graphs_on_8
    for _ in range(500):
        g = rng.choice(pool)
        tree = rng.choice(trees)
        got = contains_tree(g, tree)
        want = naive_contains(g, tree.graph)
        assert (got is not None) == want
        if got is not None:
            assert check_embedding(g, tree.graph, got.mapping)


def test_containment_monotone_under_edge_addition():
    rng = random.Random(8)
    trees = list(generate_trees(6))
    for _ in range(20):
        edges = [(u, v) for u in range(9) for v in range(u + 1, 9) if rng.random() < 0.25]
        g = from_edges(9, edges)
        non_edges = [(u, v) for u in range(9) for v in range(u + 1, 9) if not g.has_edge(u, v)]
        if not non_edges:
            continue
        bigger = g.with_edge(*rng.choice(non_edges))
        for tree in trees:
            if contains_tree(g, tree) is not None:
                assert contains_tree(bigger, tree) is not None


def test_family_membership_witnesses():
    fam6 = generate_trees(6)
    m = family_membership(complete_split(9, 2), fam6)
    assert m.in_family
    assert m.witness_index == 0
    assert sorted(m.witness.graph.degrees()) == [1, 1, 2, 2, 2, 2]  # the path
    assert contains_tree(complete_split(9, 2), m.witness) is None

    assert not family_membership(clique(9), fam6).in_family

    m = family_membership(complete_split_plus(9, 2), generate_trees(7))
    assert m.in_family and m.witness_index == 0


def tree_max_matching(g: Graph) -> int:
    # greedy leaf matching in post-order is optimal on forests
    order = [0]
    parent = [-1] * g.n
    for v in order:
        for u in g.neighbors(v):
            if u != parent[v]:
                parent[u] = v
                order.append(u)
    matched = [False] * g.n
    size = 0
    for v in reversed(order[1:]):
        if not matched[v] and not matched[parent[v]]:
            matched[v] = matched[parent[v]] = True
            size += 1
    return size


def test_split_graph_containment_boundary():
    # a tree lives in the split graph exactly when some vertex cover fits the
    # clique, i.e. max matching <= k; the bipartition sides do not decide it
    for k in (2, 3, 4):
        host = complete_split(30, k)
        for tree in generate_trees(2 * k + 2):
            contained = contains_tree(host, tree) is not None
            assert contained == (tree_max_matching(tree.graph) <= k)


def test_double_star_defeats_the_part_size_rule():
    # both parts have k+1 = 3 vertices, yet the two centers cover every edge,
    # so the tree embeds; part sizes alone do not characterize containment
    double_star = tree_from_graph(
        from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    )
    assert bipartition(double_star) == (3, 3)
    assert tree_max_matching(double_star.graph) == 2
    emb = contains_tree(complete_split(30, 2), double_star)
    assert emb is not None
    assert check_embedding(complete_split(30, 2), double_star.graph, emb.mapping)
    # the path on 6 vertices has matching 3 and is the canonical miss
    assert tree_max_matching(path_graph(6)) == 3
    assert contains_tree(complete_split(30, 2), path_tree(6)) is None


# ---------------------------------------------------------------------------
# constructive embeddings


def test_bipartite_case_is_total_and_valid():
    for m in range(2, 11):
        host = complete_bipartite(m // 2, m - 1)
        for tree in generate_trees(m):
            emb = embed_constructive(tree, "K", m // 2, m - 1)
            assert check_embedding(host, tree.graph, emb.mapping)


def test_leaf_case_for_path6():
    emb, case = constructive_with_case(path_tree(6), "K_plus", 2, 5)
    assert case == "leaf"
    assert check_embedding(bipartite_plus_edge(2, 5), path_graph(6), emb.mapping)


def test_direct_case_for_star6():
    star6 = tree_from_graph(from_edges(6, [(0, i) for i in range(1, 6)]))
    emb, case = constructive_with_case(star6, "K_plus", 2, 5)
    assert case == "direct"
    assert check_embedding(bipartite_plus_edge(2, 5), star6.graph, emb.mapping)


def test_every_seven_vertex_tree_embeds_in_both_hosts():
    for tree in generate_trees(7):
        for target, host in (
            ("K_path", bipartite_plus_path(2, 6)),
            ("K_matching", bipartite_plus_matching(2, 6)),
        ):
            emb = embed_constructive(tree, target, 2, 6)
            assert check_embedding(host, tree.graph, emb.mapping)
            # the generic search agrees the host contains the tree
            assert contains_tree(host, tree) is not None


@pytest.mark.parametrize("k", (2, 3, 4))
def test_augmented_hosts_total_for_families(k):
    host_plus = bipartite_plus_edge(k, 2 * k + 1)
    for tree in generate_trees(2 * k + 2):
        emb = embed_constructive(tree, "K_plus", k, 2 * k + 1)
        assert check_embedding(host_plus, tree.graph, emb.mapping)
    host_p = bipartite_plus_path(k, 2 * k + 2)
    host_m = bipartite_plus_matching(k, 2 * k + 2)
    for tree in generate_trees(2 * k + 3):
        emb = embed_constructive(tree, "K_path", k, 2 * k + 2)
        assert check_embedding(host_p, tree.graph, emb.mapping)
        emb = embed_constructive(tree, "K_matching", k, 2 * k + 2)
        assert check_embedding(host_m, tree.graph, emb.mapping)


def test_case_distribution_over_seven_vertex_trees():
    cases = {constructive_with_case(t, "K_path", 2, 6)[1] for t in generate_trees(7)}
    assert cases == {"direct", "leaf", "degree-two"}
    cases = {constructive_with_case(t, "K_matching", 2, 6)[1] for t in generate_trees(7)}
    assert cases == {"direct", "leaf", "two-leaves"}


def test_target_shape_mismatches():
    with pytest.raises(ParameterError):
        embed_constructive(path_tree(6), "K", 2, 5)  # needs K(3,5)
    with pytest.raises(ParameterError):
        embed_constructive(path_tree(6), "K_plus", 2, 4)
    with pytest.raises(ParameterError):
        embed_constructive(path_tree(6), "K_path", 2, 6)  # tree order must be 7
    with pytest.raises(ParameterError):
        embed_constructive(path_tree(7), "K_matching", 3, 8)
    with pytest.raises(ParameterError):
        embed_constructive(path_tree(6), "K_star", 2, 5)


def test_verify_embedding_rejects_bad_maps():
    host = complete_bipartite(3, 5)
    pattern = path_graph(4)
    from spexlab.embed import Embedding

    assert not verify_embedding(host, pattern, Embedding((0, 1, 1, 2)))
    assert not verify_embedding(host, pattern, Embedding((0, 1, 2, 3)))
    assert verify_embedding(host, pattern, Embedding((0, 3, 1, 4)))
