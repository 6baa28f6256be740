"""Bipartite coset graphs, girth, Cayley and line graphs, exports.

The coset graph of subgroups A, B of X has vertex parts X/A and X/B (left
cosets) and one edge per coset of A cap B, joining xA to xB.  Vertices are
numbered left part first, cosets ordered by their canonical representative
(minimal member in raw-tuple order, which matches byte-encoding order).
"""

from __future__ import annotations

import math
from collections import deque

from .algebra import check_subgroup, closure, GroupElement
from .errors import NonSymmetricSet, NotSubgroup


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    transitive=True asserts every vertex lies on some shortest cycle (graphs
    built from a transitive group action), enabling single-source girth.
    """

    def __init__(self, n, edges, transitive=False, labels=None):
        self.n = n
        self.edges = edges
        self.transitive = transitive
        self.labels = labels
        self._adj = None

    @property
    def edge_count(self):
        return len(self.edges)

    def adjacency(self):
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adj = adj
        return self._adj

    def label(self, v):
        if self.labels is not None:
            return self.labels[v]
        return f"v{v}"

    def degrees(self):
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_connected(self):
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = bytearray(self.n)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    queue.append(y)
        return count == self.n


class CosetGraph(Graph):
    def __init__(self, left_reps, right_reps, edges, k_left, k_right, group=None,
                 subgroup_a=None, subgroup_b=None):
        labels = [f"L{i}" for i in range(len(left_reps))] + \
                 [f"R{j}" for j in range(len(right_reps))]
        super().__init__(len(left_reps) + len(right_reps), edges,
                         transitive=True, labels=labels)
        self.left_reps = left_reps
        self.right_reps = right_reps
        self.left_count = len(left_reps)
        self.right_count = len(right_reps)
        self.k_left = k_left
        self.k_right = k_right
        self.group = group
        self.subgroup_a = subgroup_a
        self.subgroup_b = subgroup_b
        self.edge_transitive = True
        self.connected = self.is_connected()

    @property
    def degree(self):
        return self.k_left


def _coset_partition(X, H):
    """Left cosets xH: list of canonical reps (sorted) and element->coset index array."""
    n = len(X.raws)
    assign = [-1] * n
    mul = X.context.mul
    h_raws = H.raws
    index = X.index
    cosets = []
    for i, x in enumerate(X.raws):
        if assign[i] >= 0:
            continue
        members = [mul(x, h) for h in h_raws]
        ci = len(cosets)
        cosets.append(min(members))
        for m in members:
            assign[index[m]] = ci
    order = sorted(range(len(cosets)), key=lambda c: cosets[c])
    rank = [0] * len(cosets)
    for new_pos, old in enumerate(order):
        rank[old] = new_pos
    reps = [cosets[old] for old in order]
    assign = [rank[c] for c in assign]
    return reps, assign


def build_coset_graph(X, A, B):
    """Bipartite coset graph of A, B inside X; one edge per coset of A cap B."""
    check_subgroup(A, X)
    check_subgroup(B, X)
    C = A.intersection(B)
    left_reps, to_left = _coset_partition(X, A)
    right_reps, to_right = _coset_partition(X, B)
    if len(C) == 1:
        edges = list(zip(to_left, (len(left_reps) + r for r in to_right)))
    else:
        _, to_c = _coset_partition(X, C)
        first_member = {}
        for i, ci in enumerate(to_c):
            if ci not in first_member:
                first_member[ci] = i
        edges = []
        for ci in range(len(X) // len(C)):
            i = first_member[ci]
            edges.append((to_left[i], len(left_reps) + to_right[i]))
    edges.sort()
    assert len(set(edges)) == len(edges), "coset graph edge map must be injective"
    assert len(edges) == len(X) // len(C)
    graph = CosetGraph(left_reps, right_reps, edges,
                       k_left=len(A) // len(C), k_right=len(B) // len(C),
                       group=X, subgroup_a=A, subgroup_b=B)
    assert graph.n == len(X) // len(A) + len(X) // len(B)
    return graph


def girth(graph):
    """Length of the shortest cycle; math.inf for forests.

    For graphs flagged transitive a single-source BFS suffices: some shortest
    cycle passes through vertex 0, and the minimum of dist[u]+dist[v]+1 over
    edges (u,v) whose BFS-tree branches at the root differ is exact.
    Disconnected graphs are handled per component (components of a transitive
    graph are isomorphic).
    """
    if graph.transitive:
        return _girth_from(graph, 0)
    best = math.inf
    for s in range(graph.n):
        best = min(best, _girth_from(graph, s, cutoff=best))
    return best


def _girth_from(graph, source, cutoff=math.inf):
    adj = graph.adjacency()
    dist = {source: 0}
    branch = {source: -1}
    queue = deque([source])
    best = cutoff
    while queue:
        u = queue.popleft()
        du = dist[u]
        if 2 * du >= best:
            break
        bu = u if du == 0 else branch[u]
        for v in adj[u]:
            if v not in dist:
                dist[v] = du + 1
                branch[v] = v if du == 0 else bu
                queue.append(v)
            elif v != source and branch[v] != (v if du == 0 else bu):
                cand = du + dist[v] + 1
                if cand < best:
                    best = cand
    return best


def cayley_graph(X, connection_set):
    """Cayley graph of X with respect to a symmetric connection set."""
    raws = []
    for s in connection_set:
        raw = s.raw if isinstance(s, GroupElement) else s
        if raw not in raws:
            raws.append(raw)
    ident = X.context.identity()
    inv = X.context.inv
    if ident in raws:
        raise NonSymmetricSet("connection set contains the identity")
    if any(inv(r) not in raws for r in raws):
        raise NonSymmetricSet("connection set is not closed under inverses")
    mul = X.context.mul
    index = X.index
    edges = set()
    for i, x in enumerate(X.raws):
        for s in raws:
            j = index[mul(x, s)]
            edges.add((i, j) if i < j else (j, i))
    return Graph(len(X), sorted(edges), transitive=True)


def line_graph(graph):
    """Line graph: one vertex per edge, adjacency = shared endpoint."""
    incident = [[] for _ in range(graph.n)]
    for e, (u, v) in enumerate(graph.edges):
        incident[u].append(e)
        incident[v].append(e)
    edges = set()
    for edge_ids in incident:
        for a in range(len(edge_ids)):
            for b in range(a + 1, len(edge_ids)):
                e, f = edge_ids[a], edge_ids[b]
                edges.add((e, f) if e < f else (f, e))
    return Graph(len(graph.edges), sorted(edges),
                 transitive=getattr(graph, "edge_transitive", False))


def export_graph(graph, fmt):
    """Serialize as DOT, whitespace edge list, or graph6."""
    if fmt == "DOT":
        lines = ["graph G {"]
        for u, v in graph.edges:
            lines.append(f"  {graph.label(u)} -- {graph.label(v)};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "edge-list":
        return "\n".join(f"{u} {v}" for u, v in graph.edges) + "\n"
    if fmt == "graph6":
        return to_graph6(graph)
    raise ValueError(f"unknown export format {fmt!r}")


def to_graph6(graph):
    n = graph.n
    if n <= 62:
        header = chr(n + 63)
    elif n <= 258047:
        header = chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        raise ValueError("graph too large for 3-byte graph6 header")
    present = set(graph.edges)
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in present else 0)
    while len(bits) % 6:
        bits.append(0)
    chunks = []
    for t in range(0, len(bits), 6):
        value = 0
        for b in bits[t:t + 6]:
            value = (value << 1) | b
        chunks.append(chr(value + 63))
    return header + "".join(chunks)


def from_graph6(text):
    """Parse a graph6 string back into a Graph."""
    text = text.strip()
    if text.startswith(chr(126)):
        vals = [ord(c) - 63 for c in text[1:4]]
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        body = text[4:]
    else:
        n = ord(text[0]) - 63
        body = text[1:]
    bits = []
    for c in body:
        value = ord(c) - 63
        bits.extend((value >> s) & 1 for s in range(5, -1, -1))
    edges = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                edges.append((i, j))
            t += 1
    return Graph(n, edges)


def generated_subgroup_is_full(X, A, B):
    """True iff A and B together generate X (equivalently: coset graph connected)."""
    gens = [GroupElement(X.context, g) for g in dict.fromkeys(A.raws + B.raws) if
            g != X.context.identity()]
    if not gens:
        return len(X) == 1
    return closure(gens, cap=len(X) + 1).order == len(X)
