"""Simple graphs and oriented graphs on dense integer vertex ids.

Vertices are always ``0..n-1``.  Deleting vertices relabels the survivors in
increasing order and hands back the old->new map, so matrices built from a
graph never have holes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

Edge = Tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``edges`` holds pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add(_norm(u, v))
        if len(norm) != len(self.edges):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        pairs = [(int(u), int(v)) for u, v in edges]
        if len({_norm(u, v) for u, v in pairs}) != len(pairs):
            raise ValueError("duplicate edge")
        return cls(n, frozenset(pairs))

    @classmethod
    def path(cls, q: int) -> "Graph":
        return cls.from_edges(q, [(i, i + 1) for i in range(q - 1)])

    @classmethod
    def cycle(cls, q: int) -> "Graph":
        if q < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(q, [(i, (i + 1) % q) for i in range(q)])

    @classmethod
    def complete(cls, q: int) -> "Graph":
        return cls.from_edges(q, [(i, j) for i in range(q) for j in range(i + 1, q)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @cached_property
    def adj(self) -> Tuple[FrozenSet[int], ...]:
        nbrs: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class OrientedGraph:
    """A graph together with one arc ``(tail, head)`` per edge."""

    graph: Graph
    arcs: FrozenSet[Edge] = field(default=frozenset())

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        if len(arcs) != len(self.arcs):
            raise ValueError("duplicate arc")
        if {_norm(u, v) for u, v in arcs} != self.graph.edges or len(arcs) != len(
            self.graph.edges
        ):
            raise ValueError("arcs do not match the edges of the underlying graph")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "OrientedGraph":
        arcs = [(int(u), int(v)) for u, v in arcs]
        return cls(Graph.from_edges(n, arcs), frozenset(arcs))

    @classmethod
    def orient(cls, g: Graph, reversed_edges: Iterable[Edge] = ()) -> "OrientedGraph":
        """Orient every edge low->high except those listed in ``reversed_edges``."""
        flip = {_norm(u, v) for u, v in reversed_edges}
        return cls(g, frozenset((v, u) if (u, v) in flip else (u, v) for u, v in g.edges))

    @property
    def n(self) -> int:
        return self.graph.n

    def sorted_arcs(self) -> List[Edge]:
        return sorted(self.arcs)

    def reverse(self) -> "OrientedGraph":
        return OrientedGraph(self.graph, frozenset((v, u) for u, v in self.arcs))


AnyGraph = Union[Graph, OrientedGraph]


def underlying(og: OrientedGraph) -> Graph:
    return og.graph


def _as_graph(g: AnyGraph) -> Graph:
    return g.graph if isinstance(g, OrientedGraph) else g


def components(g: AnyGraph) -> List[List[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    g = _as_graph(g)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class Blocks:
    """Biconnected blocks: each block's vertices and edges, plus the cut vertices."""

    vertices: Tuple[Tuple[int, ...], ...]
    edges: Tuple[Tuple[Edge, ...], ...]
    cut_vertices: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


@lru_cache(maxsize=8192)
def _blocks(g: Graph) -> Blocks:
    # Iterative Hopcroft-Tarjan with an edge stack.
    n = g.n
    disc = [-1] * n
    low = [0] * n
    timer = 0
    cut = set()
    found: List[List[Edge]] = []
    for root in range(n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: List[Edge] = []
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                if u != root:
                    cut.add(u)
                block = []
                while True:
                    e = edge_stack.pop()
                    block.append(_norm(*e))
                    if e == (u, v):
                        break
                found.append(block)
        if root_children > 1:
            cut.add(root)
    blocks = sorted((tuple(sorted(b)) for b in found), key=lambda es: es[0])
    verts = tuple(tuple(sorted({x for e in es for x in e})) for es in blocks)
    return Blocks(verts, tuple(blocks), tuple(sorted(cut)))


def biconnected_blocks(g: AnyGraph) -> Blocks:
    """Block decomposition; isolated vertices belong to no block."""
    return _blocks(_as_graph(g))


def _cycle_sequence(vertices: Sequence[int], block_edges: Iterable[Edge]) -> List[int]:
    nbrs: Dict[int, List[int]] = defaultdict(list)
    for u, v in block_edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    start = min(vertices)
    seq = [start, min(nbrs[start])]
    while len(seq) < len(vertices):
        a, b = nbrs[seq[-1]]
        seq.append(a if a != seq[-2] else b)
    return seq


def _is_cycle_block(vertices: Sequence[int], block_edges: Sequence[Edge]) -> bool:
    if len(vertices) < 3 or len(vertices) != len(block_edges):
        return False
    deg: Dict[int, int] = defaultdict(int)
    for u, v in block_edges:
        deg[u] += 1
        deg[v] += 1
    return all(d == 2 for d in deg.values())


def cycle_blocks(g: AnyGraph) -> List[List[int]]:
    """Every block that is a chordless cycle, as a vertex sequence.

    The sequence starts at the smallest vertex and heads to its smaller
    neighbour on the cycle.
    """
    b = biconnected_blocks(g)
    return [
        _cycle_sequence(vs, es)
        for vs, es in zip(b.vertices, b.edges)
        if _is_cycle_block(vs, es)
    ]


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: Tuple[Tuple[int, ...], ...]
    blocks_ok: bool
    disjoint: bool

    def cycle_of(self) -> Dict[int, int]:
        """Vertex -> index of the (unique) cycle it lies on; only meaningful if disjoint."""
        return {v: i for i, c in enumerate(self.cycles) for v in c}


@lru_cache(maxsize=8192)
def _cycle_decomposition(g: Graph) -> CycleDecomposition:
    b = biconnected_blocks(g)
    cycles = []
    for vs, es in zip(b.vertices, b.edges):
        if len(es) == 1:
            continue
        if not _is_cycle_block(vs, es):
            return CycleDecomposition((), False, False)
        cycles.append(tuple(_cycle_sequence(vs, es)))
    count: Dict[int, int] = defaultdict(int)
    for c in cycles:
        for v in c:
            count[v] += 1
    disjoint = all(k == 1 for k in count.values())
    return CycleDecomposition(tuple(cycles), True, disjoint)


def cycle_decomposition(g: AnyGraph) -> CycleDecomposition:
    """Cycle blocks of a graph whose blocks are all edges or chordless cycles.

    When some block is neither (``blocks_ok`` false) no cycles are listed and
    ``disjoint`` is false.
    """
    return _cycle_decomposition(_as_graph(g))


@lru_cache(maxsize=8192)
def _membership(g: Graph) -> Tuple[int, ...]:
    b = biconnected_blocks(g)
    mult = [0] * g.n
    for vs, es in zip(b.vertices, b.edges):
        if len(es) == 1:
            continue
        # Every vertex of a 2-connected block that is not a cycle lies on two cycles.
        weight = 1 if _is_cycle_block(vs, es) else 2
        for v in vs:
            mult[v] += weight
    return tuple(min(k, 2) for k in mult)


def cycle_membership(g: AnyGraph) -> Tuple[int, ...]:
    """Per vertex: 0 if on no cycle, 1 if on exactly one cycle, 2 if on two or more."""
    return _membership(_as_graph(g))


def pendant_vertices(g: AnyGraph) -> List[int]:
    g = _as_graph(g)
    return [v for v in range(g.n) if len(g.adj[v]) == 1]


def quasi_pendant_vertices(g: AnyGraph) -> List[int]:
    g = _as_graph(g)
    return sorted({next(iter(g.adj[v])) for v in pendant_vertices(g)})


def delete_vertices(g: AnyGraph, w: Iterable[int]):
    """Induced subgraph on the vertices outside ``w``.

    Returns ``(h, relabel)`` where ``relabel`` maps surviving old ids to new ids
    (order preserving).  Works for both :class:`Graph` and :class:`OrientedGraph`.
    """
    base = _as_graph(g)
    gone = set(w)
    for v in gone:
        if not (isinstance(v, int) and 0 <= v < base.n):
            raise ValueError(f"invalid vertex id {v!r} for n={base.n}")
    keep = [v for v in range(base.n) if v not in gone]
    relabel = {old: new for new, old in enumerate(keep)}
    if isinstance(g, OrientedGraph):
        arcs = [(relabel[u], relabel[v]) for u, v in g.arcs if u in relabel and v in relabel]
        return OrientedGraph.from_arcs(len(keep), arcs), relabel
    edges = [(relabel[u], relabel[v]) for u, v in base.edges if u in relabel and v in relabel]
    return Graph(len(keep), frozenset(edges)), relabel


def induced_subgraph(g: AnyGraph, keep: Iterable[int]):
    """Induced subgraph on ``keep``; same return shape as :func:`delete_vertices`."""
    keep = set(keep)
    return delete_vertices(g, [v for v in range(_as_graph(g).n) if v not in keep])


def disjoint_union(*graphs: AnyGraph):
    """Disjoint union, shifting ids of later operands past earlier ones."""
    oriented = all(isinstance(x, OrientedGraph) for x in graphs)
    offset, pairs = 0, []
    for x in graphs:
        src = x.arcs if oriented else _as_graph(x).edges
        pairs.extend((u + offset, v + offset) for u, v in src)
        offset += _as_graph(x).n
    if oriented:
        return OrientedGraph.from_arcs(offset, pairs)
    return Graph.from_edges(offset, pairs)


def delete(g: AnyGraph, w: Iterable[int]):
    """:func:`delete_vertices` without the relabel map."""
    return delete_vertices(g, w)[0]
