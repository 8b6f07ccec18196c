import random
from itertools import combinations

import pytest

from feedcover.egonet import (
    EgoNetwork,
    build_ego_network,
    lcc_overlap_correlation,
    local_clustering_coefficient,
    overlap,
)
from feedcover.errors import (
    DegenerateVariance,
    EmptyMembers,
    EmptyOptimal,
    TooFewMembers,
)

from conftest import make_corpus

EGO = 0


def corpus_with_follows(follows):
    # one trivial posting user so the corpus is non-empty
    return make_corpus({99: [0]}, follows=follows)


def test_star_network():
    corpus = corpus_with_follows({EGO: [1, 2, 3]})
    net = build_ego_network(corpus, EGO, [1, 2, 3])
    assert net.edges == {(EGO, 1), (EGO, 2), (EGO, 3)}
    assert local_clustering_coefficient(net) == 0.0


def test_member_edge_included():
    corpus = corpus_with_follows({EGO: [1, 2], 1: [2]})
    net = build_ego_network(corpus, EGO, [1, 2])
    assert (1, 2) in net.edges


def test_outside_members_have_no_ego_edges():
    corpus = corpus_with_follows({EGO: [1], 5: [6]})
    net = build_ego_network(corpus, EGO, [5, 6])
    assert net.edges == {(5, 6)}


def test_complete_members():
    follows = {EGO: [1, 2, 3], 1: [2, 3], 2: [1, 3], 3: [1, 2]}
    net = build_ego_network(corpus_with_follows(follows), EGO, [1, 2, 3])
    assert local_clustering_coefficient(net) == 1.0


def test_two_of_six_pairs():
    follows = {EGO: [1, 2, 3, 4], 1: [2], 3: [4]}
    net = build_ego_network(corpus_with_follows(follows), EGO, [1, 2, 3, 4])
    assert local_clustering_coefficient(net) == pytest.approx(1 / 3)


def test_directed_edges_symmetrized_once():
    # reciprocal follows still count the pair once
    follows = {EGO: [1, 2], 1: [2], 2: [1]}
    net = build_ego_network(corpus_with_follows(follows), EGO, [1, 2])
    assert local_clustering_coefficient(net) == 1.0


def test_ego_edges_excluded_from_lcc():
    follows = {EGO: [1, 2], 1: [EGO], 2: [EGO]}
    net = build_ego_network(corpus_with_follows(follows), EGO, [1, 2])
    assert local_clustering_coefficient(net) == 0.0


def test_empty_members_rejected():
    with pytest.raises(EmptyMembers):
        build_ego_network(corpus_with_follows({}), EGO, [])


def test_lcc_undefined_below_two_members():
    net = EgoNetwork(ego=EGO, members=frozenset({1}), edges=frozenset())
    with pytest.raises(TooFewMembers):
        local_clustering_coefficient(net)


def test_lcc_monotone_under_edge_addition():
    rng = random.Random(3)
    members = frozenset(range(1, 7))
    edges = set()
    pairs = [(a, b) for a, b in combinations(sorted(members), 2)]
    rng.shuffle(pairs)
    last = 0.0
    for a, b in pairs:
        edges.add((a, b))
        net = EgoNetwork(ego=EGO, members=members, edges=frozenset(edges))
        lcc = local_clustering_coefficient(net)
        assert lcc >= last
        last = lcc
    assert last == 1.0


def _brute_force_lcc(members, edges, ego):
    undirected = {frozenset(e) for e in edges if ego not in e}
    pairs = list(combinations(sorted(members), 2))
    hits = sum(1 for a, b in pairs if frozenset((a, b)) in undirected)
    return hits / len(pairs)


def test_lcc_matches_bruteforce_on_random_graphs():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(2, 10)
        members = frozenset(range(1, n + 1))
        follows = {}
        for a in members | {EGO}:
            follows[a] = [
                b for b in members | {EGO} if b != a and rng.random() < 0.4
            ]
        net = build_ego_network(corpus_with_follows(follows), EGO, members)
        assert local_clustering_coefficient(net) == pytest.approx(
            _brute_force_lcc(members, net.edges, EGO), abs=1e-12
        )


def test_overlap_values():
    assert overlap({1, 2}, {1, 2, 3}) == 1.0
    assert overlap({4, 5}, {1, 2}) == 0.0
    assert overlap({1, 2, 3, 4, 5}, {1, 2}) == 0.4
    assert overlap({7}, {7}) == 1.0


def test_overlap_empty_optimal():
    with pytest.raises(EmptyOptimal):
        overlap(set(), {1})


def test_correlation_exact_lines_and_cross():
    inc = [(x, 2 * x + 1) for x in range(5)]
    dec = [(x, -x) for x in range(5)]
    cross = [(0, 0), (1, 1), (0, 1), (1, 0)]
    assert lcc_overlap_correlation(inc) == pytest.approx(1.0)
    assert lcc_overlap_correlation(dec) == pytest.approx(-1.0)
    assert lcc_overlap_correlation(cross) == pytest.approx(0.0)


def test_correlation_degenerate():
    with pytest.raises(DegenerateVariance):
        lcc_overlap_correlation([(1, 1)])
    with pytest.raises(DegenerateVariance):
        lcc_overlap_correlation([(1, 1), (1, 2), (1, 3)])
