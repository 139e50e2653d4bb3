"""Slow, obviously-correct reference implementations used only by tests."""
from fractions import Fraction
from itertools import combinations, permutations

from specdesign.graphs import Graph


def fraction_rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def brute_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges:
        return False
    ea = {frozenset(e) for e in a.edges()}
    eb = {frozenset(e) for e in b.edges()}
    return any({frozenset((p[u], p[v])) for u, v in ea} == eb
               for p in permutations(range(a.n)))


def brute_class_key(g: Graph) -> tuple:
    """Smallest relabelled edge list over all vertex permutations."""
    edges = list(g.edges())
    return (g.n, min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
                     for p in permutations(range(g.n))))


def brute_design_isomorphic(a, b) -> bool:
    if a.v != b.v or a.b != b.b:
        return False
    target = sorted(a.blocks)
    return any(sorted(tuple(sorted(p[x] for x in blk)) for blk in b.blocks) == target
               for p in permutations(range(a.v)))


def all_labelled_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def iso_classes(graphs, iso=brute_isomorphic) -> list:
    reps = []
    for g in graphs:
        if not any(iso(g, h) for h in reps):
            reps.append(g)
    return reps


def to_networkx(g: Graph):
    import networkx as nx
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_networkx(h) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(idx), [(idx[u], idx[v]) for u, v in h.edges()])
