"""Ego-network construction and the structural measures: LCC and overlap.

Directed follow edges are symmetrized for the clustering coefficient;
the ego's own edges to members do not count toward it, so a pure star
scores 0 and a fully connected member set scores 1.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass
from itertools import combinations

from .errors import DegenerateVariance, EmptyMembers, EmptyOptimal, TooFewMembers
from .model import Corpus


@dataclass(frozen=True)
class EgoNetwork:
    ego: int
    members: frozenset[int]
    edges: frozenset[tuple[int, int]]


def build_ego_network(corpus: Corpus, ego: int, members) -> EgoNetwork:
    """Induced subgraph of the follow graph on {ego} | members."""
    members = frozenset(members) - {ego}
    if not members:
        raise EmptyMembers(f"ego {ego}: empty member set")
    nodes = members | {ego}
    edges = frozenset(
        (a, b)
        for a in nodes
        for b in corpus.follows.get(a, frozenset()) & nodes
        if a != b
    )
    return EgoNetwork(ego=ego, members=members, edges=edges)


def local_clustering_coefficient(net: EgoNetwork) -> float:
    """Fraction of member pairs connected by a (symmetrized) follow edge."""
    n = len(net.members)
    if n < 2:
        raise TooFewMembers(f"LCC undefined for {n} members")
    undirected = {frozenset(e) for e in net.edges if net.ego not in e}
    connected = sum(
        1 for a, b in combinations(sorted(net.members), 2)
        if frozenset((a, b)) in undirected
    )
    return connected / (n * (n - 1) / 2)


def overlap(optimal, followees) -> float:
    """Fraction of the optimal set's users the ego already follows."""
    optimal = frozenset(optimal)
    if not optimal:
        raise EmptyOptimal("optimal set is empty")
    return len(optimal & frozenset(followees)) / len(optimal)


def lcc_overlap_correlation(points) -> float:
    """Pearson correlation of (lcc, overlap) pairs; no p-value reported."""
    points = list(points)
    if len(points) < 2:
        raise DegenerateVariance("need at least two points")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    try:
        return statistics.correlation(xs, ys)
    except statistics.StatisticsError as exc:
        raise DegenerateVariance(str(exc)) from exc
