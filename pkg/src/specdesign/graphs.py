"""Simple graphs, the named families, incidence graphs and graph6 I/O."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .canon import canonical_labeling, quotient, refine
from .exactalg import IntMatrix, IntPolynomial, block_matrix, char_poly


class GraphError(ValueError):
    pass


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``adj[v]`` is the neighbour bitmask of v.  ``bipartition`` (a 0/1
    colour per vertex) is optional metadata and does not take part in
    equality.
    """

    n: int
    adj: tuple
    bipartition: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency length differs from order")
        for v, a in enumerate(self.adj):
            if a >> self.n:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if a >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            b = a
            while b:
                u = (b & -b).bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")
                b &= b - 1
        if self.bipartition is not None:
            if len(self.bipartition) != self.n:
                raise GraphError("bipartition length differs from order")
            for u, v in self.edges():
                if self.bipartition[u] == self.bipartition[v]:
                    raise GraphError(f"edge {u}-{v} lies inside a colour class")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, bipartition=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), None if bipartition is None else tuple(bipartition))

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "Graph":
        if not m.is_square:
            raise GraphError("adjacency matrix must be square")
        if any(a not in (0, 1) for a in m.entries):
            raise GraphError("adjacency matrix must be 0/1")
        adj = tuple(sum(1 << j for j in range(m.cols) if m[i, j]) for i in range(m.rows))
        return cls(m.rows, adj)

    @classmethod
    def from_biadjacency(cls, N: IntMatrix) -> "Graph":
        """Bipartite graph with rows first, then columns."""
        r, c = N.rows, N.cols
        edges = [(i, r + j) for i in range(r) for j in range(c) if N[i, j]]
        return cls.from_edges(r + c, edges, [0] * r + [1] * c)

    def edges(self) -> list:
        out = []
        for v in range(self.n):
            b = self.adj[v] >> (v + 1)
            u = v + 1
            while b:
                if b & 1:
                    out.append((v, u))
                b >>= 1
                u += 1
        return out

    @property
    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def neighbors(self, v: int) -> list:
        return [u for u in range(self.n) if self.adj[v] >> u & 1]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list:
        return [a.bit_count() for a in self.adj]

    def adjacency_matrix(self) -> IntMatrix:
        return IntMatrix(self.n, self.n,
                         tuple(self.adj[i] >> j & 1 for i in range(self.n) for j in range(self.n)))

    def char_poly(self) -> IntPolynomial:
        return char_poly(self.adjacency_matrix())

    def components(self) -> list:
        seen, comps = 0, []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp, frontier = 1 << s, 1 << s
            while frontier:
                nxt = 0
                b = frontier
                while b:
                    v = (b & -b).bit_length() - 1
                    nxt |= self.adj[v]
                    b &= b - 1
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append([v for v in range(self.n) if comp >> v & 1])
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def two_coloring(self) -> tuple | None:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self.neighbors(v):
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        return None
        return tuple(color)

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex v becomes perm[v]."""
        edges = [(perm[u], perm[v]) for u, v in self.edges()]
        bip = None
        if self.bipartition is not None:
            bip = [0] * self.n
            for v in range(self.n):
                bip[perm[v]] = self.bipartition[v]
        return Graph.from_edges(self.n, edges, bip)

    def add_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def remove_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def bipartite_adjacency(self) -> IntMatrix:
        """N with rows on the colour-0 side (or the smaller side when no
        bipartition is stored), both sides in vertex order."""
        col = self.bipartition or self.two_coloring()
        if col is None:
            raise GraphError("graph is not bipartite")
        side0 = [v for v in range(self.n) if col[v] == 0]
        side1 = [v for v in range(self.n) if col[v] == 1]
        if self.bipartition is None and len(side0) > len(side1):
            side0, side1 = side1, side0
        return IntMatrix.from_rows([[self.adj[r] >> c & 1 for c in side1] for r in side0],
                                   len(side1))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "adjacency": [self.neighbors(v) for v in range(self.n)]})

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        data = json.loads(text)
        if isinstance(data, list):
            data = {"n": len(data), "adjacency": data}
        n, lists = int(data["n"]), data["adjacency"]
        if len(lists) != n:
            raise GraphError("adjacency list length differs from n")
        edges = {(min(v, u), max(v, u)) for v in range(n) for u in lists[v]}
        g = cls.from_edges(n, sorted(edges))
        if any(sorted(set(lists[v])) != g.neighbors(v) for v in range(n)):
            raise GraphError("adjacency lists are not symmetric")
        return g


def k1() -> Graph:
    return Graph(1, (0,))


def k2() -> Graph:
    return Graph.from_edges(2, [(0, 1)], [0, 1])


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    edges, bip, offset = [], [], 0
    keep_bip = all(p.bipartition is not None for p in parts)
    for p in parts:
        edges.extend((u + offset, v + offset) for u, v in p.edges())
        if keep_bip:
            bip.extend(p.bipartition)
        offset += p.n
    return Graph.from_edges(offset, edges, bip if keep_bip else None)


# --- graph6 -------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def graph6_encode(g: Graph) -> str:
    bits = [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[i:i + 6])), 2)) for i in range(0, len(bits), 6))
    return _encode_n(g.n) + body


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    base = len(text) - len(text.lstrip())
    if s.startswith(">>graph6<<"):
        s, base = s[10:], base + 10
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 character {ch!r}", base + i)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) > 1 and vals[1] < 63:
        if len(vals) < 4:
            raise Graph6Error("truncated order field", base + len(s))
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated order field", base + len(s))
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        pos = 8
    need = (n * (n - 1) // 2 + 5) // 6
    have = len(vals) - pos
    if have != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {have}",
                          base + min(len(s), pos + need))
    bits = []
    for x in vals[pos:]:
        bits.extend((x >> (5 - k)) & 1 for k in range(6))
    edges, idx = [], 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    if any(bits[idx:]):
        raise Graph6Error("nonzero padding bits", base + len(s) - 1)
    return Graph.from_edges(n, edges)


# --- isomorphism ----------------------------------------------------------

def canonical_certificate(g: Graph) -> tuple:
    return canonical_labeling(g.adj)[1]


def canonical_graph(g: Graph) -> Graph:
    order, _, _ = canonical_labeling(g.adj)
    pos = [0] * g.n
    for p, v in enumerate(order):
        pos[v] = p
    return g.relabel(pos)


def graph_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    ra = refine(a.adj, [list(range(a.n))])
    rb = refine(b.adj, [list(range(b.n))])
    if quotient(a.adj, ra) != quotient(b.adj, rb):
        return False
    return _component_certificates(a) == _component_certificates(b)


def _component_certificates(g: Graph) -> list:
    """Sorted certificates of the connected components: a complete invariant
    that avoids searching the symmetric group acting on repeated components."""
    out = []
    for comp in g.components():
        pos = {v: i for i, v in enumerate(comp)}
        sub = []
        for v in comp:
            row = 0
            for w in g.neighbors(v):
                row |= 1 << pos[w]
            sub.append(row)
        out.append((len(comp), canonical_labeling(sub)[1]))
    return sorted(out)


# --- named families -------------------------------------------------------

FAMILY_NAMES = ("S", "L", "H", "R", "Q", "G1", "G2", "G3", "G4")
MIN_K = {"S": 2, "L": 2, "H": 2, "R": 3, "Q": 3}


def _J(r, c):
    return IntMatrix.ones(r, c)


def _O(r, c):
    return IntMatrix.zeros(r, c)


def _I(n):
    return IntMatrix.identity(n)


def _J_minus_I(n):
    return _J(n, n) - _I(n)


def _I_tilde(n):
    """Identity extended by an all-ones column."""
    return block_matrix([[_I(n), _J(n, 1)]])


def _subdivided_star(k):
    # centre 0, middle vertices 1..k, leaves k+1..2k
    edges = [(0, i) for i in range(1, k + 1)] + [(i, k + i) for i in range(1, k + 1)]
    return Graph.from_edges(2 * k + 1, edges, [0] + [1] * k + [0] * k)


def _l_graph(k):
    return Graph.from_biadjacency(_J_minus_I(k))


def _h_graph(k):
    # part A (joined to the new vertex) first, then part B, then the new vertex
    N = block_matrix([[_J_minus_I(k), _J(k, 1)]])
    return Graph.from_biadjacency(N)


def r_biadjacency(k):
    return block_matrix([[_I(k - 3), _J(k - 3, 4)], [_O(3, k - 3), _I_tilde(3)]])


def q_biadjacency(k):
    return block_matrix([[_I_tilde(k - 3), _J(k - 3, 3)], [_O(3, k - 2), _J_minus_I(3)]])


def _g1():
    top = block_matrix([[_J(1, 1), _J(1, 4)], [_J(4, 1), _I(4)]])
    return Graph.from_biadjacency(top)


def _g2():
    return Graph.from_biadjacency(block_matrix([[_J_minus_I(3), _J(3, 3)],
                                                [_O(3, 3), _J_minus_I(3)]]))


def _validated(g, expected: IntPolynomial, name):
    if g.char_poly() != expected:
        raise GraphError(f"{name} reconstruction does not have its stated spectrum")
    return g


def _x2(d):
    return IntPolynomial((-d, 0, 1))


def _g3():
    N2 = IntMatrix.from_rows([[1, 1]])
    N = block_matrix([[_J_minus_I(4), _J(4, 2)], [_O(1, 4), N2]])
    return _validated(Graph.from_biadjacency(N),
                      IntPolynomial.x() * _x2(18) * _x2(1) ** 4, "G3")


def _g4():
    N2 = IntMatrix.from_rows([[1, 1, 0], [1, 0, 1]])
    N = block_matrix([[_J_minus_I(3), _J(3, 3)], [_O(2, 3), N2]])
    return _validated(Graph.from_biadjacency(N),
                      IntPolynomial.x() * _x2(15) * _x2(1) ** 4, "G4")


@lru_cache(maxsize=None)
def family(name: str, k: int | None = None) -> Graph:
    """The named graphs: S (subdivided star S_{2k+1}), L (L_{k,k}),
    H (H_{k,k+1}), R and Q (order 2k+1), and the sporadic G1..G4."""
    if name in ("G1", "G2", "G3", "G4"):
        return {"G1": _g1, "G2": _g2, "G3": _g3, "G4": _g4}[name]()
    if name not in MIN_K:
        raise GraphError(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
    if k is None or k < MIN_K[name]:
        raise GraphError(f"k must be ≥ {MIN_K[name]} for family {name}")
    if name == "S":
        return _subdivided_star(k)
    if name == "L":
        return _l_graph(k)
    if name == "H":
        return _h_graph(k)
    if name == "R":
        return Graph.from_biadjacency(r_biadjacency(k))
    return Graph.from_biadjacency(q_biadjacency(k))


def family_label(name: str, k: int | None = None) -> str:
    if name in ("G1", "G2", "G3", "G4"):
        return name
    if name == "L":
        return f"L_{{{k},{k}}}"
    if name == "H":
        return f"H_{{{k},{k + 1}}}"
    return f"{name}_{{{2 * k + 1}}}"


def incidence_graph(design) -> Graph:
    """Blocks 0..b-1 first, then points b..b+v-1."""
    return Graph.from_biadjacency(design.incidence_matrix())
