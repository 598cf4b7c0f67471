"""Graph invariants built on exact ranks: r, sr, nullity, cycle-space dimension,
matching number, cycle signs, closed forms for paths and cycles, and the table
of known inequalities relating them."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence

from .graph import (
    AnyGraph,
    Graph,
    OrientedGraph,
    components,
    cycle_decomposition,
    pendant_vertices,
)
from .linalg import IntMatrix, rank


class OrientationClass(str, Enum):
    ODDLY = "oddly_oriented"
    EVENLY = "evenly_oriented"
    ODD_CYCLE = "odd_cycle"
    NOT_A_CYCLE = "not_a_cycle"


def _graph(g: AnyGraph) -> Graph:
    return g.graph if isinstance(g, OrientedGraph) else g


def adjacency_matrix(g: AnyGraph) -> IntMatrix:
    g = _graph(g)
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        rows[u][v] = rows[v][u] = 1
    return IntMatrix.from_rows(rows, g.n)


def skew_adjacency_matrix(og: OrientedGraph) -> IntMatrix:
    rows = [[0] * og.n for _ in range(og.n)]
    for u, v in og.arcs:
        rows[u][v] = 1
        rows[v][u] = -1
    return IntMatrix.from_rows(rows, og.n)


@lru_cache(maxsize=16384)
def _rank_r(g: Graph) -> int:
    return rank(adjacency_matrix(g))


def rank_r(g: AnyGraph) -> int:
    """Rank of the adjacency matrix of the underlying graph."""
    return _rank_r(_graph(g))


@lru_cache(maxsize=65536)
def skew_rank(og: OrientedGraph) -> int:
    sr = rank(skew_adjacency_matrix(og))
    if sr % 2:
        raise ArithmeticError(f"odd rank {sr} for a skew-symmetric matrix")
    return sr


def theta(g: AnyGraph) -> int:
    return len(components(g))


def cyclomatic_d(g: AnyGraph) -> int:
    """Dimension of the cycle space: |E| - |V| + number of components."""
    g = _graph(g)
    return len(g.edges) - g.n + theta(g)


def cycle_sign(og: OrientedGraph, cycle: Sequence[int]) -> int:
    """Product of skew-adjacency entries s[v_i][v_{i+1}] around a closed walk."""
    arcs = og.arcs
    sign = 1
    q = len(cycle)
    for i in range(q):
        u, v = cycle[i], cycle[(i + 1) % q]
        if (u, v) in arcs:
            continue
        if (v, u) in arcs:
            sign = -sign
        else:
            raise ValueError(f"{u}-{v} is not an edge")
    return sign


def cycle_class(og: OrientedGraph, cycle: Sequence[int]) -> OrientationClass:
    """Class of a cycle embedded in ``og`` (given as a vertex sequence)."""
    if len(cycle) % 2:
        return OrientationClass.ODD_CYCLE
    return OrientationClass.EVENLY if cycle_sign(og, cycle) > 0 else OrientationClass.ODDLY


def _single_cycle(g: Graph) -> Optional[List[int]]:
    if g.n < 3 or len(g.edges) != g.n or any(len(a) != 2 for a in g.adj):
        return None
    if len(components(g)) != 1:
        return None
    seq = [0, min(g.adj[0])]
    while len(seq) < g.n:
        a, b = sorted(g.adj[seq[-1]])
        seq.append(a if a != seq[-2] else b)
    return seq


def orientation_class(og: OrientedGraph) -> OrientationClass:
    """Class of an oriented graph whose underlying graph is one cycle."""
    seq = _single_cycle(og.graph)
    if seq is None:
        return OrientationClass.NOT_A_CYCLE
    return cycle_class(og, seq)


def cycle_skew_rank_oracle(q: int, cls: OrientationClass) -> int:
    """Closed-form skew-rank of an oriented cycle of order ``q``."""
    cls = OrientationClass(cls)
    if q < 3:
        raise ValueError("cycle order must be at least 3")
    if cls is OrientationClass.NOT_A_CYCLE:
        raise ValueError("not a cycle")
    if (cls is OrientationClass.ODD_CYCLE) != (q % 2 == 1):
        raise ValueError(f"class {cls.value} is inconsistent with order {q}")
    if cls is OrientationClass.ODDLY:
        return q
    if cls is OrientationClass.EVENLY:
        return q - 2
    return q - 1


def path_cycle_rank_oracle(kind: str, q: int) -> int:
    """Closed-form adjacency rank of P_q or C_q."""
    if kind == "path":
        if q < 1:
            raise ValueError("path order must be at least 1")
        return q if q % 2 == 0 else q - 1
    if kind == "cycle":
        if q < 3:
            raise ValueError("cycle order must be at least 3")
        return q - 2 if q % 4 == 0 else q
    raise ValueError(f"unknown kind {kind!r}")


def _forest_matching(g: Graph) -> int:
    # Leaf-greedy: a leaf can always be matched to its neighbour.
    deg = [len(a) for a in g.adj]
    alive = [True] * g.n
    leaves = [v for v in range(g.n) if deg[v] == 1]
    size = 0
    while leaves:
        v = leaves.pop()
        if not alive[v] or deg[v] != 1:
            continue
        u = next(w for w in g.adj[v] if alive[w])
        size += 1
        for x in (v, u):
            alive[x] = False
            for w in g.adj[x]:
                if alive[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        leaves.append(w)
    return size


def _branch_matching(adj: Dict[int, frozenset], memo: dict) -> int:
    key = frozenset((v, w) for v, ns in adj.items() for w in ns if v < w)
    if not key:
        return 0
    if key in memo:
        return memo[key]

    def without(adj, drop):
        return {v: ns - drop for v, ns in adj.items() if v not in drop and ns - drop}

    leaf = next((v for v, ns in adj.items() if len(ns) == 1), None)
    if leaf is not None:
        (u,) = adj[leaf]
        best = 1 + _branch_matching(without(adj, {leaf, u}), memo)
    else:
        v = max(adj, key=lambda x: (len(adj[x]), -x))
        # Either v stays unmatched, or it is matched to one of its neighbours.
        best = _branch_matching(without(adj, {v}), memo)
        for u in adj[v]:
            best = max(best, 1 + _branch_matching(without(adj, {v, u}), memo))
    memo[key] = best
    return best


@lru_cache(maxsize=16384)
def _matching_number(g: Graph) -> int:
    if len(g.edges) - g.n + theta(g) == 0:
        return _forest_matching(g)
    adj = {v: g.adj[v] for v in range(g.n) if g.adj[v]}
    return _branch_matching(adj, {})


def matching_number(g: AnyGraph) -> int:
    """Size of a maximum matching (exact; branching search off forests)."""
    return _matching_number(_graph(g))


@dataclass(frozen=True)
class InvariantReport:
    n: int
    edges: int
    theta: int
    d: int
    r: int
    sr: int
    eta: int
    beta: Optional[int]
    m: int
    p: int

    def to_dict(self) -> dict:
        return asdict(self)


def invariant_report(og: OrientedGraph) -> InvariantReport:
    g = og.graph
    r = rank_r(g)
    th = theta(g)
    return InvariantReport(
        n=g.n,
        edges=len(g.edges),
        theta=th,
        d=len(g.edges) - g.n + th,
        r=r,
        sr=skew_rank(og),
        eta=g.n - r,
        beta=len(g.edges) - g.n + 1 if th == 1 else None,
        m=matching_number(g),
        p=len(pendant_vertices(g)),
    )


class BoundCheck(NamedTuple):
    """One inequality ``lhs <= rhs``; ``holds`` is None when the bound does not apply."""

    name: str
    lhs: Optional[int]
    rhs: Optional[int]
    holds: Optional[bool]

    @property
    def skipped(self) -> bool:
        return self.holds is None


def _le(name: str, lhs: int, rhs: int) -> BoundCheck:
    return BoundCheck(name, lhs, rhs, lhs <= rhs)


def bound_report(og: OrientedGraph, info: InvariantReport | None = None) -> List[BoundCheck]:
    """Evaluate the known inequalities among sr, r, d, m, beta, eta and p.

    Bounds whose hypotheses are not met (connectivity for the beta bounds,
    vertex-disjoint cycles for the cycle-order bound, no isolated vertices
    for the nullity bound) are returned with ``holds=None``.
    """
    info = info or invariant_report(og)
    sr, r, d, m = info.sr, info.r, info.d, info.m
    out = [
        _le("skew_rank_lower", r - 2 * d, sr),
        _le("skew_rank_upper", sr, r + 2 * d),
        # ceil((r - d) / 2) <= m <= floor((r + 2d) / 2)
        _le("matching_lower", -((d - r) // 2), m),
        _le("matching_upper", m, (r + 2 * d) // 2),
    ]
    g = og.graph
    # Isolated vertices add to the nullity without adding pendants or cycles.
    if all(g.adj[v] for v in range(g.n)):
        out.append(_le("nullity_upper", info.eta, 2 * d + info.p))
    else:
        out.append(BoundCheck("nullity_upper", None, None, None))
    if info.beta is not None:
        out.append(_le("skew_rank_matching_lower", 2 * m - 2 * info.beta, sr))
        out.append(_le("skew_rank_matching_upper", sr, 2 * m))
    else:
        out.append(BoundCheck("skew_rank_matching_lower", None, None, None))
        out.append(BoundCheck("skew_rank_matching_upper", None, None, None))
    dec = cycle_decomposition(g)
    if dec.disjoint:
        out.append(_le("skew_rank_cycle_orders", sum(len(c) for c in dec.cycles) - 2 * len(dec.cycles), sr))
    else:
        out.append(BoundCheck("skew_rank_cycle_orders", None, None, None))
    return out

