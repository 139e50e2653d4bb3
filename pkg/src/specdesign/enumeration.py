"""Isomorph-free enumeration of pseudo designs and bipartite graphs."""
from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .canon import canonical_labeling
from .designs import (BibdParams, Design, PseudoParams, is_primary, is_pseudo,
                      marrero_conditions)
from .exactalg import IntMatrix
from .graphs import Graph, incidence_graph

MAX_PSEUDO_V = 12
MAX_BIPARTITE_N = 10
MAX_GRAPH_N = 8


class SizeGuardError(ValueError):
    pass


# --- designs up to isomorphism ------------------------------------------

def _design_labeling(d: Design):
    g = incidence_graph(d)
    return canonical_labeling(g.adj, [0] * d.b + [1] * d.v)


def canonical_form(d: Design) -> IntMatrix:
    """Incidence matrix under the canonical labelling of the incidence graph
    (blocks and points kept apart by colour).  Two designs have equal forms
    iff some point permutation maps one block multiset onto the other."""
    order, _, _ = _design_labeling(d)
    rows, cols = order[:d.b], [p - d.b for p in order[d.b:]]
    inc = d.incidence_matrix()
    return IntMatrix.from_rows([[inc[r, c] for c in cols] for r in rows], d.v)


def design_isomorphic(a: Design, b: Design) -> bool:
    if a.v != b.v or a.b != b.b:
        return False
    if sorted(map(len, a.blocks)) != sorted(map(len, b.blocks)):
        return False
    if sorted(a.column_sums()) != sorted(b.column_sums()):
        return False
    return _design_labeling(a)[1] == _design_labeling(b)[1]


def _double_lex_solutions(p: PseudoParams) -> Iterator[list]:
    """Incidence matrices (rows as bitmasks, column 0 most significant) with
    strictly decreasing rows and non-increasing columns.  Every pseudo design
    has at least one such representative."""
    v, k, lam = p.astuple()
    b = v - 1
    cands = sorted((sum(1 << (v - 1 - j) for j in c) for c in combinations(range(v), k)),
                   reverse=True)

    def prefix_ok(row, runs):
        # inside every run of columns with equal prefixes the row must be 1..10..0
        for lo, hi in runs:
            seen_zero = False
            for j in range(lo, hi):
                bit = row >> (v - 1 - j) & 1
                if bit and seen_zero:
                    return False
                if not bit:
                    seen_zero = True
        return True

    def split(row, runs):
        out = []
        for lo, hi in runs:
            ones = sum(row >> (v - 1 - j) & 1 for j in range(lo, hi))
            if 0 < ones < hi - lo:
                out += [(lo, lo + ones), (lo + ones, hi)]
            else:
                out.append((lo, hi))
        return out

    def extend(rows, pool, runs):
        if len(rows) == b:
            yield list(rows)
            return
        need = b - len(rows)
        for i, row in enumerate(pool):
            if len(pool) - i < need:
                return
            if not prefix_ok(row, runs):
                continue
            rest = [t for t in pool[i + 1:] if (t & row).bit_count() == lam]
            if len(rest) < need - 1:
                continue
            rows.append(row)
            yield from extend(rows, rest, split(row, runs))
            rows.pop()

    yield from extend([], cands, [(0, v)])


def _rows_to_design(v, rows) -> Design:
    return Design(v, [[j for j in range(v) if row >> (v - 1 - j) & 1] for row in rows])


def enumerate_pseudo(p: PseudoParams) -> list:
    """One design per isomorphism class of pseudo (v,k,λ)-designs, each in
    canonical form, sorted by canonical form."""
    if p.v > MAX_PSEUDO_V:
        raise SizeGuardError(f"v = {p.v} exceeds the enumeration guard v ≤ {MAX_PSEUDO_V}")
    reps = {}
    for rows in _double_lex_solutions(p):
        d = _rows_to_design(p.v, rows)
        form = canonical_form(d)
        reps.setdefault(form.entries, form)
    return [Design.from_matrix(reps[key]) for key in sorted(reps)]


def all_pseudo_designs(p: PseudoParams) -> list:
    """Every labelled pseudo design (no symmetry reduction); for small checks."""
    v, k, lam = p.astuple()
    subsets = [frozenset(c) for c in combinations(range(v), k)]
    out = []

    def extend(chosen, start):
        if len(chosen) == v - 1:
            out.append(Design(v, chosen))
            return
        for i in range(start, len(subsets)):
            s = subsets[i]
            if all(len(s & c) == lam for c in chosen):
                extend(chosen + [s], i + 1)

    extend([], 0)
    return out


# --- BIBD parameter scan ---------------------------------------------------

def scan_bibd_params(excess: int, v_max: int) -> list:
    """Admissible (b,v,r,k,λ) with r = λ + excess, 1 ≤ k ≤ v-1, v ≤ v_max,
    satisfying vr = bk, r(k-1) = λ(v-1) and Fisher's b ≥ v when λ ≥ 1."""
    if excess not in (1, 2):
        raise ValueError("excess must be 1 or 2")
    if v_max > 10000:
        raise SizeGuardError("v_max must be ≤ 10000")
    out = []
    for v in range(2, v_max + 1):
        for k in range(1, v):
            # r(k-1) = λ(v-1) with r = λ + e  <=>  λ(v-k) = e(k-1)
            lam, rem = divmod(excess * (k - 1), v - k)
            if rem:
                continue
            r = lam + excess
            b, rem = divmod(v * r, k)
            if rem or (lam >= 1 and b < v):
                continue
            out.append(BibdParams(b, v, r, k, lam))
    return out


# --- conjecture audit -----------------------------------------------------

def audit_conjecture(v_max: int = MAX_PSEUDO_V, differences=(1, 2)) -> list:
    """For every (v,k,λ) with k-λ in ``differences`` and v ≤ v_max: the number
    of pseudo design classes and, for primary parameters, the clauses whose
    arithmetic condition holds."""
    report = []
    for v in range(2, v_max + 1):
        for diff in differences:
            for k in range(diff, v):
                p = PseudoParams(v, k, k - diff)
                classes = enumerate_pseudo(p)
                primary = is_primary(p)
                report.append({
                    "params": [v, k, k - diff],
                    "primary": primary,
                    "classes": len(classes),
                    "conditions": marrero_conditions(p) if primary else [],
                })
    return report


def audit_counterexamples(report: list) -> list:
    return [e for e in report if e["primary"] and e["classes"] and not e["conditions"]]


# --- bipartite graphs by canonical deletion -------------------------------

def _cert(g: Graph):
    order, cert, gens = canonical_labeling(g.adj)
    return order, cert, gens


def _from_cert(n, cert) -> Graph:
    return Graph(n, cert[1])


def _pair_orbit_reps(pairs, gens):
    parent = {p: p for p in pairs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for u, w in pairs:
            img = (min(g[u], g[w]), max(g[u], g[w]))
            a, c = find((u, w)), find(img)
            if a != c:
                parent[a] = c
    reps, seen = [], set()
    for pr in pairs:
        r = find(pr)
        if r not in seen:
            seen.add(r)
            reps.append(pr)
    return reps


def _augmentations(g: Graph, bipartite: bool) -> list:
    """Non-edges of g; with ``bipartite`` only those keeping g bipartite."""
    if not bipartite:
        return [(u, w) for u, w in combinations(range(g.n), 2) if not g.adj[u] >> w & 1]
    comp_of, color = [0] * g.n, g.two_coloring()
    for ci, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = ci
    return [(u, w) for u, w in combinations(range(g.n), 2)
            if not g.adj[u] >> w & 1 and (comp_of[u] != comp_of[w] or color[u] != color[w])]


def _children(parent: Graph, parent_cert, gens, bipartite: bool) -> list:
    seen, out = set(), []
    for u, w in _pair_orbit_reps(_augmentations(parent, bipartite), gens):
        child = parent.add_edge(u, w)
        order, cert, child_gens = _cert(child)
        if cert in seen:
            continue
        seen.add(cert)
        # canonical deletion: the edge whose canonical image is last
        pos = {x: i for i, x in enumerate(order)}
        last = max(child.edges(), key=lambda e: (max(pos[e[0]], pos[e[1]]),
                                                min(pos[e[0]], pos[e[1]])))
        if _cert(child.remove_edge(*last))[1] == parent_cert:
            # automorphisms of the child, rewritten for its canonical labelling
            canon_gens = [[pos[g[x]] for x in order] for g in child_gens]
            out.append((cert, canon_gens))
    return out


def _levels(n: int, bipartite: bool, guard: int) -> Iterator[list]:
    """Yield the canonical graphs with 0, 1, 2, ... edges, one level at a time."""
    if n > guard:
        raise SizeGuardError(f"n = {n} exceeds the enumeration guard n ≤ {guard}")
    top = (n // 2) * (n - n // 2) if bipartite else n * (n - 1) // 2
    _, cert, gens = _cert(Graph(n, (0,) * n))
    level = [(cert, gens)]
    for m in range(top + 1):
        yield [_from_cert(n, c) for c, _ in sorted(level, key=lambda t: t[0])]
        if m < top:
            nxt = []
            for cert, gens in level:
                nxt.extend(_children(_from_cert(n, cert), cert, gens, bipartite))
            level = nxt


def _generate(n: int, m: int, bipartite: bool, guard: int) -> list:
    for i, level in enumerate(_levels(n, bipartite, guard)):
        if i == m:
            return level
    if n > guard:
        raise SizeGuardError(f"n = {n} exceeds the enumeration guard n ≤ {guard}")
    return []


def all_graphs(n: int, bipartite: bool = False) -> Iterator[Graph]:
    """Every graph (or bipartite graph) of order n up to isomorphism, by edge count."""
    for level in _levels(n, bipartite, MAX_BIPARTITE_N if bipartite else MAX_GRAPH_N):
        yield from level


def enumerate_bipartite_graphs(n: int, m: int) -> Iterator[Graph]:
    """One canonical graph per isomorphism class of bipartite graphs with n
    vertices and m edges, in certificate order."""
    return iter(_generate(n, m, True, MAX_BIPARTITE_N))


def enumerate_graphs(n: int, m: int) -> Iterator[Graph]:
    """One canonical graph per isomorphism class of simple graphs with n
    vertices and m edges."""
    return iter(_generate(n, m, False, MAX_GRAPH_N))
