import pytest

from oracles import all_labeled_graphs, eig_radius, naive_contains

from spexlab.canon import canonical_form, canonical_g6
from spexlab.errors import ParameterError
from spexlab.graph6 import decode, encode
from spexlab.graphs import complete_split, from_edges, path_graph
from spexlab.search import enumerate_graphs, ex_search, spex_search
from spexlab.spectral import split_radius_closed_form
from spexlab.trees import generate_trees, tree_from_graph

# isomorphism classes of simple graphs (all / connected) by vertex count
CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


@pytest.mark.parametrize("n", range(1, 7))
def test_class_counts_small(n):
    assert sum(1 for _ in enumerate_graphs(n)) == CLASS_COUNTS[n]


def test_class_counts_7(graphs_on_7):
    assert len(graphs_on_7) == CLASS_COUNTS[7]


def test_class_counts_8(graphs_on_8):
    assert len(graphs_on_8) == CLASS_COUNTS[8]


@pytest.mark.parametrize("n", range(1, 7))
def test_connected_counts(n):
    assert sum(1 for _ in enumerate_graphs(n, connected_only=True)) == CONNECTED_COUNTS[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_against_labeled_dedup_oracle(n):
    oracle = {canonical_form(g).data for g in all_labeled_graphs(n)}
    stream = list(enumerate_graphs(n))
    assert len(stream) == len(oracle)
    assert {canonical_form(g).data for g in stream} == oracle


@pytest.mark.slow
def test_against_labeled_dedup_oracle_6():
    oracle = {canonical_form(g).data for g in all_labeled_graphs(6)}
    assert {canonical_form(g).data for g in enumerate_graphs(6)} == oracle


def test_stream_is_deterministic_and_canonically_labeled():
    first = [g.rows for g in enumerate_graphs(6)]
    second = [g.rows for g in enumerate_graphs(6)]
    assert first == second
    for g in enumerate_graphs(5):
        assert canonical_form(g).relabeling == tuple(range(g.n))


def test_round_trip_all_six_vertex_classes():
    for g in enumerate_graphs(6):
        assert decode(encode(g)).rows == g.rows


def test_enumerate_bounds():
    with pytest.raises(ParameterError):
        list(enumerate_graphs(0))
    with pytest.raises(ParameterError):
        list(enumerate_graphs(11))


# ---------------------------------------------------------------------------
# ex search


def tree_of(g):
    return tree_from_graph(g)


def test_ex_spot_values():
    p4 = tree_of(path_graph(4))
    r = ex_search(6, p4, workers=1)
    assert r.best_value == 6  # two disjoint triangles
    assert r.in_family_count > 0
    p3 = tree_of(path_graph(3))
    assert ex_search(6, p3, workers=1).best_value == 3  # perfect matching
    star = tree_of(from_edges(4, [(0, 1), (0, 2), (0, 3)]))
    r = ex_search(5, star, workers=1)
    assert r.best_value == 5  # the 5-cycle
    assert decode(r.argmax[0]).degrees() == (2, 2, 2, 2, 2)


def test_ex_argmax_reverifies():
    tree = tree_of(path_graph(4))
    r = ex_search(7, tree, workers=1)
    for g6 in r.argmax:
        g = decode(g6)
        assert g.edge_count == r.best_value
        assert not naive_contains(g, tree.graph)


def test_ex_ground_truth_matches_pruned():
    tree = tree_of(from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]))
    a = ex_search(7, tree, prune=False, workers=1)
    b = ex_search(7, tree, prune=True, workers=1)
    assert a.candidates_examined == CLASS_COUNTS[7]
    assert a.best_value == b.best_value
    assert a.argmax == b.argmax
    assert a.in_family_count == b.in_family_count


def test_ex_sandwich_recorded():
    r = ex_search(8, tree_of(path_graph(5)), workers=1)
    assert r.comparison["sandwich_lower"] == 12.0
    assert r.comparison["sandwich_upper"] == 24.0
    assert r.comparison["lower_ok"] and r.comparison["upper_ok"]


def test_ex_parameter_errors():
    with pytest.raises(ParameterError):
        ex_search(11, tree_of(path_graph(4)))
    with pytest.raises(ParameterError):
        ex_search(3, tree_of(path_graph(4)))
    with pytest.raises(ParameterError):
        ex_search(5, tree_of(from_edges(1, [])))


# ---------------------------------------------------------------------------
# spex search


def test_spex_6_2_beats_split_graph():
    r = spex_search(6, 2, workers=1)
    assert r.best_value == pytest.approx(4.0, abs=1e-9)
    assert r.comparison["dominates_closed_form"]
    assert not r.comparison["argmax_contains_reference"]
    # winners: the octahedron (misses the star) and K5 + isolated (misses the path)
    winners = [decode(s) for s in r.argmax]
    assert sorted(sorted(g.degrees()) for g in winners) == [
        [0, 4, 4, 4, 4, 4],
        [4, 4, 4, 4, 4, 4],
    ]


def test_spex_9_2_is_the_split_graph():
    r = spex_search(9, 2, workers=1, split_depth=4)
    assert r.comparison["argmax_is_reference"]
    assert r.best_value == pytest.approx(split_radius_closed_form(9, 2), abs=1e-9)
    assert r.in_family_count > 0


def test_spex_dominance_and_reverification():
    for n in (6, 7):
        r = spex_search(n, 2, workers=1)
        assert r.best_value >= split_radius_closed_form(n, 2) - 1e-9
        fam = generate_trees(6)
        for g6 in r.argmax:
            g = decode(g6)
            missing = [t for t in fam if not naive_contains(g, t.graph)]
            assert missing
            assert eig_radius(g) == pytest.approx(r.best_value, abs=1e-9)


def test_spex_ground_truth_matches_pruned():
    a = spex_search(7, 2, prune=False, workers=1)
    b = spex_search(7, 2, prune=True, workers=1)
    assert a.candidates_examined == CLASS_COUNTS[7]
    assert b.candidates_examined < a.candidates_examined
    assert a.best_value == b.best_value
    assert a.argmax == b.argmax
    assert a.in_family_count == b.in_family_count


def test_spex_reports_identical_across_workers_and_split():
    base = spex_search(7, 2, workers=1).to_json()
    assert spex_search(7, 2, workers=4).to_json() == base
    a = spex_search(7, 2, workers=1, split_depth=5)
    assert a.to_dict()["argmax"] == spex_search(7, 2, workers=1).to_dict()["argmax"]
    assert a.best_value == spex_search(7, 2, workers=1).best_value
    assert a.candidates_examined == spex_search(7, 2, workers=1).candidates_examined


def test_spex_connected_only_same_best():
    for n in (6, 7, 8):
        unrestricted = spex_search(n, 2, workers=1)
        connected = spex_search(n, 2, connected_only=True, workers=1)
        assert connected.best_value == pytest.approx(unrestricted.best_value, abs=1e-12)
        assert connected.in_family_count <= unrestricted.in_family_count


def test_spex_prime_runs():
    r = spex_search(7, 2, prime=True, workers=1)
    assert r.family_kind == "all trees on 7 vertices"
    assert r.best_value >= split_radius_closed_form(7, 2) - 1e-9
    ref = canonical_g6(complete_split(7, 2))
    assert r.comparison["reference_g6"] != ref  # reference is the plus graph


def test_spex_8_2_reference_among_exact_ties():
    # the split graph on (8,2) has radius exactly 4 and ties the degree-4
    # family, so it sits inside the argmax without being alone
    r = spex_search(8, 2, workers=1)
    assert r.best_value == pytest.approx(4.0, abs=1e-9)
    assert r.comparison["argmax_contains_reference"]
    assert not r.comparison["argmax_is_reference"]
    assert len(r.argmax) == 15


@pytest.mark.slow
def test_spex_9_2_prime_frontier():
    # the empirical frontier for the prime family: at n = 9 the winners all
    # have radius 5 (a K_6 beside a small component, or 5-regular plus an
    # isolated vertex); the augmented split graph is not yet extremal
    r = spex_search(9, 2, prime=True, workers=1, split_depth=4)
    assert r.best_value == pytest.approx(5.0, abs=1e-9)
    assert not r.comparison["argmax_is_reference"]
    assert not r.comparison["argmax_contains_reference"]
    assert r.best_value >= r.comparison["reference_radius"] - 1e-9
    degree_profiles = {tuple(sorted(decode(s).degrees(), reverse=True)) for s in r.argmax}
    assert (5, 5, 5, 5, 5, 5, 1, 1, 0) in degree_profiles  # K_6 beside an edge


def test_spex_audits_every_winner():
    r = spex_search(6, 2, workers=1)
    assert set(r.audit) == set(r.argmax)
    for entries in r.audit.values():
        lemmas = {e["lemma"] for e in entries}
        assert "top-weight-size" in lemmas
        assert "neighborhood-weight-floor" in lemmas


def test_spex_parameter_errors():
    with pytest.raises(ParameterError):
        spex_search(9, 5)
    with pytest.raises(ParameterError):
        spex_search(6, 2, prime=True)  # prime needs n >= 2k+3
    with pytest.raises(ParameterError):
        spex_search(6, 1)
    with pytest.raises(ParameterError):
        spex_search(11, 2)


def test_search_report_json_is_deterministic():
    a = ex_search(6, tree_of(path_graph(4)), workers=1).to_json()
    b = ex_search(6, tree_of(path_graph(4)), workers=4).to_json()
    assert a == b


def test_spex_threads_env_bounds_workers(monkeypatch):
    from spexlab.search import _resolve_workers

    monkeypatch.setenv("SPEX_THREADS", "3")
    assert _resolve_workers(None) == 3
    monkeypatch.delenv("SPEX_THREADS")
    assert _resolve_workers(None) >= 1
    assert _resolve_workers(7) == 7
    monkeypatch.setenv("SPEX_THREADS", "2")
    r = spex_search(6, 2)  # resolves workers from the environment
    assert r.best_value == pytest.approx(4.0, abs=1e-9)
