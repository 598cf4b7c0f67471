"""Delta-reduction, cycle compression and the lower-optimality classifier.

An oriented graph is *lower-optimal* when ``sr = r - 2d``.  The classifier
decides this twice: once from the structure of the underlying graph (disjoint
cycles, cycle orders and signs, and whether pendant/neighbour deletions reach
a union of cycles and isolated vertices) and once by computing the three
numbers.  The two answers are reported side by side and never derived from
one another.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, NamedTuple, Optional, Tuple

from .graph import (
    Graph,
    OrientedGraph,
    components,
    cycle_blocks,
    cycle_decomposition,
    cycle_membership,
    delete,
    delete_vertices,
    induced_subgraph,
    pendant_vertices,
    quasi_pendant_vertices,
)
from .invariants import (
    OrientationClass,
    cycle_class,
    cyclomatic_d,
    rank_r,
    skew_rank,
)


class NonDisjointCyclesError(ValueError):
    """Raised when an operation needs pairwise vertex-disjoint cycles."""

    def __init__(self, vertex: Optional[int]):
        self.vertex = vertex
        super().__init__(f"cycles are not pairwise vertex-disjoint (shared vertex {vertex})")


class NotLowerOptimalError(ValueError):
    pass


class DeltaStep(NamedTuple):
    pendant: int
    neighbor: int


def delta_step(g: Graph, pendant: int) -> Graph:
    """Delete a pendant vertex together with its unique neighbour."""
    if not 0 <= pendant < g.n or g.degree(pendant) != 1:
        raise ValueError(f"vertex {pendant} is not a pendant vertex")
    (nb,) = g.adj[pendant]
    return delete(g, (pendant, nb))


def is_crucial(g0: Graph, expected_cycles: int) -> bool:
    """True iff ``g0`` is a disjoint union of exactly ``expected_cycles`` cycles
    plus isolated vertices."""
    cycles = 0
    for comp in components(g0):
        if len(comp) == 1:
            continue
        if len(comp) < 3 or any(g0.degree(v) != 2 for v in comp):
            return False
        cycles += 1
    return cycles == expected_cycles


@dataclass(frozen=True)
class ReductionTrace:
    steps: Tuple[DeltaStep, ...]
    final: Graph
    success: bool
    # final vertex id -> vertex id in the input graph
    origin: Tuple[int, ...] = ()
    reason: str = ""

    def replay(self, g: Graph) -> Graph:
        for step in self.steps:
            if next(iter(g.adj[step.pendant])) != step.neighbor:
                raise ValueError(f"step {step} does not match the graph")
            g = delta_step(g, step.pendant)
        return g


@lru_cache(maxsize=8192)
def delta_reduce(g: Graph) -> ReductionTrace:
    """Greedy delta-reduction.

    At each stage the smallest pendant vertex whose neighbour lies on no cycle
    is removed with that neighbour.  Removing a cycle vertex can never be
    undone (deletions create no cycles), so a stage where every pendant hangs
    off a cycle vertex ends the reduction unsuccessfully.
    """
    target = cyclomatic_d(g)
    cur = g
    origin = list(range(g.n))
    steps: List[DeltaStep] = []
    while True:
        pend = pendant_vertices(cur)
        if not pend:
            ok = is_crucial(cur, target)
            reason = "" if ok else "no pendant vertices left but the graph is not a union of cycles and isolated vertices"
            return ReductionTrace(tuple(steps), cur, ok, tuple(origin), reason)
        on_cycle = cycle_membership(cur)
        safe = [y for y in pend if not on_cycle[next(iter(cur.adj[y]))]]
        if not safe:
            stuck = [origin[next(iter(cur.adj[y]))] for y in pend]
            reason = f"every pendant vertex is adjacent to a cycle vertex (input ids {sorted(set(stuck))})"
            return ReductionTrace(tuple(steps), cur, False, tuple(origin), reason)
        y = safe[0]
        x = next(iter(cur.adj[y]))
        steps.append(DeltaStep(y, x))
        cur, relabel = delete_vertices(cur, (y, x))
        origin = [origin[old] for old in sorted(relabel)]


@lru_cache(maxsize=4096)
def delta_reduce_exhaustive(g: Graph) -> bool:
    """Whether *some* order of delta-transformations reaches a crucial subgraph.

    Searches every reachable vertex subset; exponential, meant for small graphs.
    """
    target = cyclomatic_d(g)
    seen = set()
    stack = [frozenset(range(g.n))]
    while stack:
        keep = stack.pop()
        if keep in seen:
            continue
        seen.add(keep)
        sub, relabel = induced_subgraph(g, keep)
        if is_crucial(sub, target):
            return True
        back = {new: old for old, new in relabel.items()}
        for y in pendant_vertices(sub):
            x = next(iter(sub.adj[y]))
            stack.append(keep - {back[y], back[x]})
    return False


@dataclass(frozen=True)
class CompressedGraph:
    """Acyclic graph obtained by shrinking each cycle to one vertex.

    ``t_graph`` lists the off-cycle vertices first (in increasing original id)
    and then one vertex per cycle, so ``gamma`` (``t_graph`` minus the cycle
    vertices) keeps the same ids for the off-cycle part.
    """

    t_graph: Graph
    vertex_origin: Tuple[Tuple[str, int], ...]  # ("vertex", id) or ("cycle", index)
    gamma: Graph
    cycles: Tuple[Tuple[int, ...], ...]


def _shared_cycle_vertex(g: Graph) -> Optional[int]:
    mult = cycle_membership(g)
    return next((v for v in range(g.n) if mult[v] >= 2), None)


def compress(g: Graph) -> CompressedGraph:
    dec = cycle_decomposition(g)
    if not dec.disjoint:
        raise NonDisjointCyclesError(_shared_cycle_vertex(g))
    on = dec.cycle_of()
    free = [v for v in range(g.n) if v not in on]
    node = {v: i for i, v in enumerate(free)}
    base = len(free)
    for v, k in on.items():
        node[v] = base + k
    tedges = {
        (min(node[u], node[v]), max(node[u], node[v]))
        for u, v in g.edges
        if node[u] != node[v]
    }
    t = Graph(base + len(dec.cycles), frozenset(tedges))
    origin = tuple([("vertex", v) for v in free] + [("cycle", k) for k in range(len(dec.cycles))])
    gamma = delete(t, range(base, t.n))
    return CompressedGraph(t, origin, gamma, dec.cycles)


@dataclass(frozen=True)
class Verdict:
    cond1_disjoint_cycles: bool
    cond2_cycles_even_mod4_evenly_oriented: bool
    cond3_delta_reduces_to_crucial: bool
    structural: bool
    direct: bool
    r: int
    sr: int
    d: int
    witness: str = ""
    trace: Optional[ReductionTrace] = field(default=None, compare=False)

    @property
    def agreement(self) -> bool:
        return self.structural == self.direct


def is_lower_optimal(og: OrientedGraph) -> bool:
    """Direct test: sr == r - 2d."""
    return skew_rank(og) == rank_r(og.graph) - 2 * cyclomatic_d(og.graph)


def classify_lower_optimal(og: OrientedGraph) -> Verdict:
    g = og.graph
    r, sr, d = rank_r(g), skew_rank(og), cyclomatic_d(g)
    direct = sr == r - 2 * d
    dec = cycle_decomposition(g)
    cond1 = dec.blocks_ok and dec.disjoint
    trace = delta_reduce(g)
    if not cond1:
        witness = f"vertex {_shared_cycle_vertex(g)} lies on two distinct cycles"
        return Verdict(False, False, False, False, direct, r, sr, d, witness, trace)
    bad = []
    for c in dec.cycles:
        cls = cycle_class(og, c)
        if len(c) % 4 != 2 or cls is not OrientationClass.EVENLY:
            bad.append(f"cycle {list(c)} has order {len(c)} and is {cls.value}")
    cond2 = not bad
    cond3 = trace.success
    structural = cond2 and cond3
    if bad:
        witness = "; ".join(bad)
    elif not cond3:
        witness = trace.reason
    else:
        witness = f"{len(trace.steps)} delta steps reach {d} cycle(s) plus isolated vertices"
    return Verdict(True, cond2, cond3, structural, direct, r, sr, d, witness, trace)


def pendant_cycles(g: Graph) -> List[Tuple[Tuple[int, ...], int]]:
    """Pendant cycles as ``(cycle sequence, attachment vertex)`` pairs.

    A pendant cycle has exactly one vertex of degree 3 in ``g``; all its other
    vertices have degree 2.
    """
    out = []
    for c in cycle_blocks(g):
        degs = [g.degree(v) for v in c]
        if degs.count(3) == 1 and degs.count(2) == len(c) - 1:
            out.append((tuple(c), c[degs.index(3)]))
    return out


def _pendant_cycle_parts(og: OrientedGraph, cycle) -> Tuple[int, OrientedGraph, OrientedGraph]:
    g = og.graph
    q = len(cycle)
    cs = set(cycle)
    if q < 3 or len(cs) != q:
        raise ValueError("not a cycle")
    inside = [(u, v) for u, v in g.edges if u in cs and v in cs]
    if len(inside) != q or any(cycle[(i + 1) % q] not in g.adj[cycle[i]] for i in range(q)):
        raise ValueError(f"{list(cycle)} is not an induced cycle")
    degs = [g.degree(v) for v in cycle]
    if degs.count(3) != 1 or degs.count(2) != q - 1:
        raise ValueError(f"{list(cycle)} is not a pendant cycle")
    x = cycle[degs.index(3)]
    h = delete(og, cycle)
    k = delete(og, cs - {x})
    return x, h, k


def pendant_cycle_skew_rank(og: OrientedGraph, cycle) -> int:
    """Skew-rank of ``og`` from one of its pendant cycles.

    With H the graph minus the cycle and K = H plus the attachment vertex:
    evenly oriented gives ``q - 2 + sr(K)``, oddly oriented ``q + sr(H)``, and an
    odd cycle ``q - 1 + sr(K)``.
    """
    _, h, k = _pendant_cycle_parts(og, cycle)
    q = len(cycle)
    cls = cycle_class(og, cycle)
    if cls is OrientationClass.EVENLY:
        return q - 2 + skew_rank(k)
    if cls is OrientationClass.ODDLY:
        return q + skew_rank(h)
    return q - 1 + skew_rank(k)


class Claim(NamedTuple):
    name: str
    holds: bool
    detail: str = ""


def check_lower_optimal_consequences(og: OrientedGraph) -> List[Claim]:
    """Evaluate every structural consequence of lower-optimality on ``og``.

    Raises :class:`NotLowerOptimalError` when ``og`` is not lower-optimal.
    """
    g = og.graph
    r, sr, d = rank_r(g), skew_rank(og), cyclomatic_d(g)
    if sr != r - 2 * d:
        raise NotLowerOptimalError(f"sr={sr} but r-2d={r - 2 * d}")
    claims: List[Claim] = []
    mult = cycle_membership(g)
    quasi = set(quasi_pendant_vertices(g))

    for x in range(g.n):
        if not mult[x]:
            continue
        gx = delete(og, [x])
        r_x, sr_x, d_x = rank_r(gx.graph), skew_rank(gx), cyclomatic_d(gx.graph)
        claims.append(
            Claim(
                f"cycle_vertex_deletion_ranks[{x}]",
                sr_x == sr and r_x == r - 2 and d_x == d - 1,
                f"sr(G-x)={sr_x} r(G-x)={r_x} d(G-x)={d_x}",
            )
        )
        claims.append(Claim(f"cycle_vertex_deletion_lower_optimal[{x}]", sr_x == r_x - 2 * d_x))
        claims.append(
            Claim(
                f"cycle_vertex_single_cycle_not_quasi_pendant[{x}]",
                mult[x] == 1 and x not in quasi,
                f"cycles through x: {'>=2' if mult[x] > 1 else 1}, quasi-pendant: {x in quasi}",
            )
        )

    for cycle, x in pendant_cycles(g):
        _, h, k = _pendant_cycle_parts(og, cycle)
        q = len(cycle)
        tag = f"[{','.join(map(str, cycle))}]"
        cls = cycle_class(og, cycle)
        claims.append(
            Claim(
                f"pendant_cycle_order_and_sign{tag}",
                q % 4 == 2 and cls is OrientationClass.EVENLY,
                f"q={q} {cls.value}",
            )
        )
        sr_h, sr_k = skew_rank(h), skew_rank(k)
        r_h, r_k = rank_r(h.graph), rank_r(k.graph)
        claims.append(
            Claim(
                f"pendant_cycle_rank_identities{tag}",
                sr == q - 2 + sr_k and sr_h == sr_k and r == q + r_k and r_h == r_k,
                f"sr={sr} sr(H)={sr_h} sr(K)={sr_k} r={r} r(H)={r_h} r(K)={r_k}",
            )
        )
        claims.append(
            Claim(
                f"pendant_cycle_parts_lower_optimal{tag}",
                is_lower_optimal(h) and is_lower_optimal(k),
            )
        )

    for y in pendant_vertices(g):
        x = next(iter(g.adj[y]))
        claims.append(Claim(f"quasi_pendant_off_cycles[{y}]", mult[x] == 0, f"neighbor {x}"))
        claims.append(Claim(f"pendant_reduction_lower_optimal[{y}]", is_lower_optimal(delete(og, [y, x]))))

    dec = cycle_decomposition(g)
    shape_ok = dec.disjoint and all(
        len(c) % 4 == 2 and cycle_class(og, c) is OrientationClass.EVENLY for c in dec.cycles
    )
    claims.append(Claim("cycles_disjoint_even_sign", shape_ok))
    if dec.disjoint:
        comp = compress(g)
        r_t, r_gamma = rank_r(comp.t_graph), rank_r(comp.gamma)
        total = sum(len(c) for c in comp.cycles)
        claims.append(
            Claim(
                "compression_rank_identities",
                r == r_t + total and r_t == r_gamma,
                f"r={r} r(T)={r_t} r(Gamma)={r_gamma} cycle vertices={total}",
            )
        )
    else:
        claims.append(Claim("compression_rank_identities", False, "cycles not disjoint"))
    return claims
