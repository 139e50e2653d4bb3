"""Canonical labelling of vertex-coloured graphs.

Individualisation-refinement search in the style of nauty, kept small:
equitable refinement by neighbour counts, first non-singleton cell as the
target, pruning with automorphisms discovered at equivalent leaves.  The
canonical certificate is the lexicographically smallest relabelled adjacency
over the leaves of the search tree.

Graphs are passed as lists of neighbour bitmasks.
"""
from __future__ import annotations

from typing import Sequence


def refine(adj: Sequence[int], cells: list) -> list:
    """Refine an ordered partition until it is equitable.

    Each cell is split by the vector of neighbour counts into every current
    cell; the pieces are ordered by that vector, so the result does not
    depend on vertex names.
    """
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in c}
            groups: dict = {}
            for v in c:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                out.append(groups[key])
        if len(out) == len(cells):
            return out
        cells = out


def quotient(adj: Sequence[int], cells: list) -> tuple:
    """Cell sizes and inter-cell neighbour counts of an equitable partition."""
    masks = [sum(1 << v for v in c) for c in cells]
    return tuple((len(c), tuple((adj[c[0]] & m).bit_count() for m in masks)) for c in cells)


def _relabelled(adj, order):
    pos = [0] * len(order)
    for p, v in enumerate(order):
        pos[v] = p
    rows = []
    for v in order:
        a, r = adj[v], 0
        while a:
            low = a & -a
            r |= 1 << pos[low.bit_length() - 1]
            a ^= low
        rows.append(r)
    return tuple(rows)


def _orbit_rep(gens, fixed, n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if all(g[f] == f for f in fixed):
            for v in range(n):
                a, b = find(v), find(g[v])
                if a != b:
                    parent[a] = b
    return find


def canonical_labeling(adj: Sequence[int], colors: Sequence[int] | None = None):
    """Return ``(order, certificate, generators)``.

    ``order[p]`` is the vertex placed at canonical position ``p``;
    ``certificate`` is a tuple of the colour sequence and the relabelled
    adjacency bitmasks (equal iff the coloured graphs are isomorphic);
    ``generators`` are the automorphisms met during the search, each as a
    list mapping vertex -> image.
    """
    n = len(adj)
    colors = [0] * n if colors is None else list(colors)
    color_seq = tuple(sorted(colors))
    if n == 0:
        return [], (color_seq, ()), []
    by_color: dict = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    root = refine(adj, [by_color[c] for c in sorted(by_color)])

    best = {"cert": None, "order": None, "path": None}
    gens: list = []

    def search(cells, path):
        depth = len(path)
        t = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if t is None:
            order = [c[0] for c in cells]
            cert = _relabelled(adj, order)
            if best["cert"] is None or cert < best["cert"]:
                best.update(cert=cert, order=order, path=path)
                return None
            if cert == best["cert"]:
                g = [0] * n
                for a, b in zip(best["order"], order):
                    g[a] = b
                gens.append(g)
                bp = best["path"]
                common = 0
                while common < min(len(bp), depth) and bp[common] == path[common]:
                    common += 1
                return common
            return None
        cell = cells[t]
        explored: list = []
        find, known = None, -1
        for v in cell:
            if explored:
                if known != len(gens):
                    find, known = _orbit_rep(gens, path, n), len(gens)
                rv = find(v)
                if any(find(u) == rv for u in explored):
                    continue
            explored.append(v)
            child = cells[:t] + [[v], [u for u in cell if u != v]] + cells[t + 1:]
            jump = search(refine(adj, child), path + (v,))
            if jump is not None and jump < depth:
                return jump
        return None

    search(root, ())
    return best["order"], (color_seq, best["cert"]), gens
