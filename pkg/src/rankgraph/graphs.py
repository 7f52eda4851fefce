"""Element graphs: generating graphs, rank graphs and bipartite coset graphs.

Vertices are indices into a deterministic label list; for group-element
graphs the labels are the group elements themselves (lexicographic
order), for coset graphs they are (part, element) pairs.  All graphs are
simple and undirected.

Edge predicate for the d-rank graph: x and y are joined when some
generating set of cardinality exactly d contains both.  This reduces to
d_{x,y}(G) <= d - 2 plus a distinctness repair: a shortest completion
z_1..z_r has each z_{i+1} outside <x, y, z_1..z_i>, so its elements are
pairwise distinct and distinct from x and y, and when |G| > d the set
pads up to cardinality d with fresh elements.  Groups with |G| <= d are
handled exhaustively.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits
from .perm_core import (
    CapExceededError,
    GroupArgumentError,
    Permutation,
    PermutationGroup,
)
from .group_structure import SubgroupRegistry, min_rank, registry_for


# ---------------------------------------------------------------------------
# graph containers


@dataclass
class ElementGraph:
    """Simple undirected graph on labelled vertices."""

    kind: str  # "generating" | "rank-d" | "lambda" | "crown"
    labels: list
    adjacency: list  # list of sorted neighbour lists
    group: Optional[PermutationGroup] = None
    meta: dict = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass
class Components:
    """Connected components of an ElementGraph."""

    ids: list  # component id per vertex
    count: int
    sizes: list

    @property
    def connected(self) -> bool:
        # the empty graph is trivially connected
        return self.count <= 1

    def vertices_of(self, cid: int) -> list:
        return [v for v, c in enumerate(self.ids) if c == cid]


def components(graph: ElementGraph) -> Components:
    """Union-find over the adjacency lists."""
    n = graph.n_vertices
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, nbrs in enumerate(graph.adjacency):
        for w in nbrs:
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rw] = rv
    roots = {}
    ids = [0] * n
    for v in range(n):
        r = find(v)
        if r not in roots:
            roots[r] = len(roots)
        ids[v] = roots[r]
    sizes = [0] * len(roots)
    for c in ids:
        sizes[c] += 1
    return Components(ids, len(roots), sizes)


def diameter(graph: ElementGraph, comps: Optional[Components] = None) -> dict:
    """Exact diameter per component id (all-pairs BFS; opt-in, it dominates)."""
    if comps is None:
        comps = components(graph)
    adj = graph.adjacency
    diam = {c: 0 for c in range(comps.count)}
    for source in range(graph.n_vertices):
        dist = {source: 0}
        queue = [source]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        ecc = max(dist.values()) if dist else 0
        c = comps.ids[source]
        if ecc > diam[c]:
            diam[c] = ecc
    return diam


# ---------------------------------------------------------------------------
# rank-graph edge machinery


class EdgeOracle:
    """Memoized edge tests for all Gamma_d graphs of one dense group."""

    def __init__(self, G: PermutationGroup, limits: Limits = DEFAULT_LIMITS):
        self.group = G
        self.reg = registry_for(G, limits)
        self.ct = self.reg.ct

    def pair_subgroup(self, x: int, y: int) -> int:
        return self.reg.pair_join(x, y)

    def edge(self, x: int, y: int, d: int) -> bool:
        """Edge test on element indices, x != y assumed."""
        n = self.ct.n
        if n < d:
            return False
        if n == d:
            return True
        sid = self.reg.pair_join(x, y)
        if sid == self.reg.full_id:
            return True
        return self.reg.dist_to_full(sid) <= d - 2

    def edge_pairs(self, d: int):
        """Yield all edges (x < y) of Gamma_d on element indices."""
        n = self.ct.n
        for x in range(n):
            for y in range(x + 1, n):
                if self.edge(x, y, d):
                    yield (x, y)


def is_edge_d(G: PermutationGroup, x: Permutation, y: Permutation, d: int,
              limits: Limits = DEFAULT_LIMITS) -> bool:
    """Whether some generating set of G of cardinality exactly d contains x and y."""
    if d < 2:
        raise GroupArgumentError("d must be at least 2")
    if x == y:
        raise GroupArgumentError("x and y must be distinct")
    oracle = _oracle_for(G, limits)
    ct = oracle.ct
    try:
        xi, yi = ct.index[x.images], ct.index[y.images]
    except KeyError:
        raise GroupArgumentError("x and y must lie in G")
    return oracle.edge(xi, yi, d)


def edge_witness(G: PermutationGroup, x: Permutation, y: Permutation, d: int,
                 limits: Limits = DEFAULT_LIMITS) -> Optional[frozenset]:
    """A generating set of cardinality exactly d containing x and y, or None."""
    if not is_edge_d(G, x, y, d, limits):
        return None
    oracle = _oracle_for(G, limits)
    ct, reg = oracle.ct, oracle.reg
    n = ct.n
    if n == d:
        return frozenset(ct.elements)
    xi, yi = ct.index[x.images], ct.index[y.images]
    sid = reg.pair_join(xi, yi)
    climb = [] if sid == reg.full_id else reg.climb_witness(sid)
    chosen = {xi, yi, *climb}
    for z in range(n):
        if len(chosen) == d:
            break
        chosen.add(z)
    return frozenset(ct.perm(i) for i in chosen)


def _oracle_for(G: PermutationGroup, limits: Limits) -> EdgeOracle:
    ct = G.cayley_table(limits)
    oracle = getattr(ct, "_edge_oracle", None)
    if oracle is None:
        oracle = EdgeOracle(G, limits)
        ct._edge_oracle = oracle
    return oracle


def build_gamma_d(G: PermutationGroup, d: int,
                  limits: Limits = DEFAULT_LIMITS) -> ElementGraph:
    """Gamma_d on all elements of G (isolated vertices included)."""
    _check_graph_args(G, d)
    oracle = _oracle_for(G, limits)
    n = oracle.ct.n
    adjacency = [[] for _ in range(n)]
    for x, y in oracle.edge_pairs(d):
        adjacency[x].append(y)
        adjacency[y].append(x)
    kind = "generating" if d == 2 else "rank-d"
    return ElementGraph(kind, list(oracle.ct.elements), adjacency, G,
                        {"d": d})


def build_delta_d(G: PermutationGroup, d: int,
                  limits: Limits = DEFAULT_LIMITS) -> ElementGraph:
    """Delta_d: Gamma_d with isolated vertices removed."""
    gamma = build_gamma_d(G, d, limits)
    keep = [v for v in range(gamma.n_vertices) if gamma.adjacency[v]]
    remap = {v: i for i, v in enumerate(keep)}
    adjacency = [sorted(remap[w] for w in gamma.adjacency[v]) for v in keep]
    return ElementGraph(gamma.kind, [gamma.labels[v] for v in keep],
                        adjacency, G, dict(gamma.meta))


def generating_graph(G: PermutationGroup,
                     limits: Limits = DEFAULT_LIMITS) -> ElementGraph:
    """The generating graph: Delta_2."""
    return build_delta_d(G, 2, limits)


def _check_graph_args(G: PermutationGroup, d: int) -> None:
    if d < 2:
        raise GroupArgumentError("d must be at least 2")
    if G.order > 1 and min_rank(G).d == 1:
        raise GroupArgumentError(
            "rank graphs are defined for non-cyclic groups only")


@dataclass
class DeltaSummary:
    """Streaming connectivity summary of Delta_d (no adjacency stored)."""

    d: int
    n_vertices: int
    n_edges: int
    n_components: int

    @property
    def connected(self) -> bool:
        return self.n_components <= 1


def delta_summary(G: PermutationGroup, d: int,
                  limits: Limits = DEFAULT_LIMITS) -> DeltaSummary:
    """Connectivity of Delta_d via streaming union-find over edge pairs."""
    _check_graph_args(G, d)
    oracle = _oracle_for(G, limits)
    n = oracle.ct.n
    parent = list(range(n))
    non_isolated = bytearray(n)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n_edges = 0
    for x, y in oracle.edge_pairs(d):
        n_edges += 1
        non_isolated[x] = non_isolated[y] = 1
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    roots = set(find(v) for v in range(n) if non_isolated[v])
    return DeltaSummary(d, sum(non_isolated), n_edges, len(roots))


# ---------------------------------------------------------------------------
# bipartite coset graph


def build_lambda(S: PermutationGroup, x: Permutation, y: Permutation,
                 limits: Limits = DEFAULT_LIMITS) -> ElementGraph:
    """Bipartite graph whose parts are the cosets xS and yS in G = <S, x, y>.

    The parts are kept as two formally disjoint vertex copies (2|S|
    vertices even when xS = yS as sets); (x s1, y s2) is an edge exactly
    when the two elements generate G.  Instances with x = y are rejected:
    the two parts would be literally the same labelled family.
    """
    G = PermutationGroup(S.degree, tuple(S.generators) + (x, y))
    if not G.contains(x) or not G.contains(y):
        raise GroupArgumentError("x and y must have the ambient degree")
    from .perm_core import is_normal
    if not is_normal(G, S):
        raise GroupArgumentError("S must be normal in <S, x, y>")
    if x == y:
        raise GroupArgumentError(
            "rejected: x = y gives identical parts for the coset graph")
    oracle = _oracle_for(G, limits)
    ct = oracle.ct
    s_elems = S.elements(limits)
    part_x = sorted(ct.index[(x * s).images] for s in s_elems)
    part_y = sorted(ct.index[(y * s).images] for s in s_elems)
    labels = [("x", ct.perm(i)) for i in part_x]
    labels += [("y", ct.perm(i)) for i in part_y]
    adjacency = [[] for _ in labels]
    reg = oracle.reg
    offset = len(part_x)
    for i, xi in enumerate(part_x):
        for j, yj in enumerate(part_y):
            if xi != yj and reg.pair_join(xi, yj) == reg.full_id:
                adjacency[i].append(offset + j)
                adjacency[offset + j].append(i)
    for a in adjacency:
        a.sort()
    return ElementGraph("lambda", labels, adjacency, G,
                        {"parts": (len(part_x), len(part_y)),
                         "same_coset": part_x == part_y})


# ---------------------------------------------------------------------------
# export


def _vertex_label(label) -> str:
    if isinstance(label, Permutation):
        return label.cycle_string()
    if isinstance(label, tuple):
        return "|".join(_vertex_label(part) for part in label)
    return str(label)


def export_dot(graph: ElementGraph, sink=None) -> str:
    """Deterministic DOT output; vertices labelled by cycle notation."""
    lines = [f'graph "{graph.kind}" {{']
    for v, label in enumerate(graph.labels):
        lines.append(f'  v{v} [label="{_vertex_label(label)}"];')
    for v, nbrs in enumerate(graph.adjacency):
        for w in nbrs:
            if v < w:
                lines.append(f"  v{v} -- v{w};")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        if hasattr(sink, "write"):
            sink.write(text)
        else:
            with open(sink, "w") as fh:
                fh.write(text)
    return text


@dataclass
class GraphStats:
    """One JSON record per analyzed graph."""

    group_id: str
    kind: str
    d: Optional[int]
    n_vertices: int
    n_edges: int
    n_components: int
    diameter: Optional[int]
    elapsed_ms: int

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)


def analyze_graph(group_id: str, graph: ElementGraph,
                  with_diameter: bool = False) -> GraphStats:
    t0 = time.perf_counter()
    comps = components(graph)
    diam = None
    if with_diameter and graph.n_vertices:
        diam = max(diameter(graph, comps).values())
    return GraphStats(group_id, graph.kind, graph.meta.get("d"),
                      graph.n_vertices, graph.n_edges, comps.count, diam,
                      int((time.perf_counter() - t0) * 1000))
