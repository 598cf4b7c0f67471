"""Graph generators and the verification suite.

The suite walks a population of oriented graphs (every labelled oriented graph
up to ``n_max`` vertices, or a seeded random sample) and checks the known rank
identities and inequalities on each one.  Failures are collected as data, with
the offending graph serialized in the graph-file format so it can be replayed.
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from . import graphfile
from .graph import (
    Graph,
    OrientedGraph,
    biconnected_blocks,
    components,
    cycle_decomposition,
    cycle_membership,
    delete,
    delete_vertices,
    induced_subgraph,
    pendant_vertices,
)
from .invariants import (
    bound_report,
    cycle_skew_rank_oracle,
    cyclomatic_d,
    invariant_report,
    matching_number,
    orientation_class,
    path_cycle_rank_oracle,
    rank_r,
    skew_rank,
)
from .structure import (
    NotLowerOptimalError,
    check_lower_optimal_consequences,
    classify_lower_optimal,
    delta_reduce,
    delta_reduce_exhaustive,
    pendant_cycle_skew_rank,
    pendant_cycles,
)

CHECK_GROUPS = ("bounds", "lemmas", "classifier_equivalence", "consequences", "order_confluence")
EXHAUSTIVE_LIMIT = 6
CONFLUENCE_LIMIT = 8
CONSTRUCT_LENGTHS = (6, 10, 14)
SCHEMA_VERSION = 1


# -- generators ---------------------------------------------------------------


def _pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def enumerate_oriented_graphs(n: int) -> Iterator[OrientedGraph]:
    """Every labelled oriented graph on ``n`` vertices, each exactly once.

    Each vertex pair is independently absent, ``u->v`` or ``v->u``, so there are
    ``3 ** (n*(n-1)/2)`` of them.
    """
    if n < 0 or n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive enumeration supports 0 <= n <= {EXHAUSTIVE_LIMIT}, got {n}")
    pairs = _pairs(n)
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        arcs = [(u, v) if s == 1 else (v, u) for (u, v), s in zip(pairs, states) if s]
        yield OrientedGraph.from_arcs(n, arcs)


def enumerate_graphs(n: int) -> Iterator[Graph]:
    if n < 0 or n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive enumeration supports 0 <= n <= {EXHAUSTIVE_LIMIT}, got {n}")
    pairs = _pairs(n)
    for bits in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for k, p in enumerate(pairs) if bits >> k & 1))


def orientations(g: Graph) -> Iterator[OrientedGraph]:
    """All ``2 ** |E|`` orientations of ``g``."""
    edges = g.sorted_edges()
    for flips in itertools.product((False, True), repeat=len(edges)):
        yield OrientedGraph(g, frozenset((v, u) if f else (u, v) for (u, v), f in zip(edges, flips)))


def random_orientation(g: Graph, rng: random.Random) -> OrientedGraph:
    return OrientedGraph(
        g, frozenset((v, u) if rng.random() < 0.5 else (u, v) for u, v in g.sorted_edges())
    )


def _relabel(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph(g.n, frozenset((perm[u], perm[v]) for u, v in g.edges))


def random_oriented_graph(n: int, edge_prob: float, seed: int) -> OrientedGraph:
    if n < 0 or not 0.0 <= edge_prob <= 1.0:
        raise ValueError("need n >= 0 and 0 <= edge_prob <= 1")
    rng = random.Random(seed)
    arcs = []
    for u, v in _pairs(n):
        if rng.random() < edge_prob:
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return OrientedGraph.from_arcs(n, arcs)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree via a Pruefer sequence."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    if n <= 2:
        return Graph.path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def random_unicyclic(n: int, girth: int, seed: int) -> Graph:
    """A cycle of length ``girth`` with random trees hung on it, relabelled randomly."""
    if not 3 <= girth <= n:
        raise ValueError(f"need 3 <= girth <= n, got girth={girth}, n={n}")
    rng = random.Random(seed)
    edges = [(i, (i + 1) % girth) for i in range(girth)]
    for v in range(girth, n):
        edges.append((rng.randrange(v), v))
    return _relabel(Graph.from_edges(n, edges), rng)


def construct_lower_optimal(
    cycle_lengths: Sequence[int], tree_ops: int, seed: int, isolated: int = 0
) -> OrientedGraph:
    """Build a lower-optimal oriented graph by undoing delta-transformations.

    Start from disjoint evenly oriented cycles (orders 2 mod 4) and ``isolated``
    lone vertices.  Each of the ``tree_ops`` steps adds a new pendant ``y`` and
    its neighbour ``x``; ``x`` is joined to nothing, to one existing vertex, or
    to two existing vertices in different components.  Deleting ``y`` and ``x``
    gives back the previous graph, and no cycle is created, so lower-optimality
    is preserved at every step.  Vertex ids are shuffled at the end.
    """
    for q in cycle_lengths:
        if q < 6 or q % 4 != 2:
            raise ValueError(f"cycle length {q} is not 2 mod 4 (and at least 6)")
    if tree_ops < 0 or isolated < 0:
        raise ValueError("tree_ops and isolated must be non-negative")
    rng = random.Random(seed)
    arcs: List[Tuple[int, int]] = []
    parent: Dict[int, int] = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def orient(u, v):
        return (u, v) if rng.random() < 0.5 else (v, u)

    n = 0
    for q in cycle_lengths:
        cyc = list(range(n, n + q))
        against = [rng.random() < 0.5 for _ in range(q)]
        if sum(against) % 2:
            against[-1] = not against[-1]
        for i, back in enumerate(against):
            u, v = cyc[i], cyc[(i + 1) % q]
            arcs.append((v, u) if back else (u, v))
        for v in cyc:
            parent[v] = n
        n += q
    for _ in range(isolated):
        parent[n] = n
        n += 1
    for _ in range(tree_ops):
        x, y = n, n + 1
        parent[x] = parent[y] = x
        arcs.append(orient(x, y))
        if n and rng.random() < 0.85:
            a = rng.randrange(n)
            arcs.append(orient(a, x))
            parent[find(x)] = find(a)
            if rng.random() < 0.25:
                b = rng.randrange(n)
                if find(b) != find(x):
                    arcs.append(orient(b, x))
                    parent[find(b)] = find(x)
        n += 2
    perm = list(range(n))
    rng.shuffle(perm)
    return OrientedGraph.from_arcs(n, [(perm[u], perm[v]) for u, v in arcs])


# -- suite ----------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    mode: str = "exhaustive"
    n_max: int = 4
    samples: int = 0
    seed: int = 0
    checks: Tuple[str, ...] = CHECK_GROUPS
    allow_n6: bool = False
    max_counterexamples: int = 100

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.mode == "exhaustive":
            if self.n_max > EXHAUSTIVE_LIMIT:
                raise ValueError(f"exhaustive mode requires n_max <= {EXHAUSTIVE_LIMIT}")
            if self.n_max == EXHAUSTIVE_LIMIT and not self.allow_n6:
                raise ValueError("exhaustive n_max=6 (14.3M graphs) needs allow_n6")
        if self.samples < 0:
            raise ValueError("samples must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        unknown = set(self.checks) - set(CHECK_GROUPS)
        if unknown:
            raise ValueError(f"unknown check groups {sorted(unknown)}")
        object.__setattr__(self, "checks", tuple(g for g in CHECK_GROUPS if g in self.checks))

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n_max": self.n_max,
            "samples": self.samples if self.mode == "random" else None,
            "seed": self.seed,
            "checks": list(self.checks),
        }


@dataclass
class SuiteReport:
    config: SuiteConfig
    checks: Dict[str, List[int]] = field(default_factory=dict)  # name -> [passed, failed]
    counterexamples: List[dict] = field(default_factory=list)
    failures: int = 0
    graphs: int = 0
    graphs_by_n: Counter = field(default_factory=Counter)
    stats: Counter = field(default_factory=Counter)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def failed(self, prefix: str = "") -> int:
        return sum(f for name, (_, f) in self.checks.items() if name.startswith(prefix))

    def count(self, prefix: str = "") -> int:
        return sum(p + f for name, (p, f) in self.checks.items() if name.startswith(prefix))

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "kind": "suite_report",
            "config": self.config.to_dict(),
            "passed": self.passed,
            "totals": {
                "graphs": self.graphs,
                "checks": sum(p + f for p, f in self.checks.values()),
                "failures": self.failures,
            },
            "checks": {k: {"passed": p, "failed": f} for k, (p, f) in sorted(self.checks.items())},
            "generator": {
                "graphs_by_n": {str(k): v for k, v in sorted(self.graphs_by_n.items())},
                **{k: v for k, v in sorted(self.stats.items())},
            },
            "counterexamples": self.counterexamples,
        }
        if timing:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


class _Tally:
    def __init__(self, report: SuiteReport):
        self.report = report
        self.examples: List[dict] = []

    def __call__(self, name: str, ok: bool, graph, expected="", actual="") -> bool:
        slot = self.report.checks.setdefault(name, [0, 0])
        if ok:
            slot[0] += 1
        else:
            slot[1] += 1
            self.report.failures += 1
            self.examples.append(
                {
                    "check": name,
                    "graph": graphfile.serialize(graph),
                    "expected": str(expected),
                    "actual": str(actual),
                }
            )
        return ok


def _sample_rng(g) -> random.Random:
    # Reproducible per graph, independent of where it sits in the population.
    return random.Random(graphfile.serialize(g))


def _random_subset(n: int, rng: random.Random) -> List[int]:
    return [v for v in range(n) if rng.random() < 0.5]


def _graph_checks(g: Graph, groups, check) -> None:
    """Checks that depend only on the underlying graph."""
    if "lemmas" in groups:
        r = rank_r(g)
        d = cyclomatic_d(g)
        b = biconnected_blocks(g)
        check("lemmas.blocks_partition_edges", sum(len(es) for es in b.edges) == len(g.edges), g)
        check("lemmas.rank_zero_iff_empty", (r == 0) == (not g.edges), g, not g.edges, r)
        comps = components(g)
        parts = sum(rank_r(induced_subgraph(g, c)[0]) for c in comps)
        check("lemmas.rank_additive_over_components", parts == r, g, r, parts)
        sub = induced_subgraph(g, _random_subset(g.n, _sample_rng(g)))[0]
        check("lemmas.rank_induced_monotone", rank_r(sub) <= r, g, f"<= {r}", rank_r(sub))

        for y in pendant_vertices(g):
            x = next(iter(g.adj[y]))
            rh = rank_r(delete(g, [y, x]))
            check("lemmas.pendant_deletion_rank", rh == r - 2, g, r - 2, rh)

        mult = cycle_membership(g)
        for x in range(g.n):
            gx = delete(g, [x])
            rx, dx = rank_r(gx), cyclomatic_d(gx)
            check("lemmas.vertex_deletion_rank", r - 2 <= rx <= r, g, f"[{r - 2}, {r}]", rx)
            if mult[x] == 0:
                check("lemmas.cycle_space_off_cycle", dx == d, g, d, dx)
            else:
                check("lemmas.cycle_space_on_cycle", dx <= d - 1, g, f"<= {d - 1}", dx)
            if two_cycles_apart_at(g, x):
                check("lemmas.cycle_space_shared_vertex", dx <= d - 2, g, f"<= {d - 2}", dx)

        dec = cycle_decomposition(g)
        if dec.disjoint:
            check("lemmas.disjoint_cycle_count", len(dec.cycles) == d, g, d, len(dec.cycles))

        _cut_point_checks(g, r, check)

        if d == 0:
            m = matching_number(g)
            check("lemmas.forest_rank_matching", r == 2 * m, g, 2 * m, r)
            if g.edges:
                stripped = rank_r(delete(g, pendant_vertices(g)))
                check("lemmas.leaf_strip_rank_drop", stripped < r, g, f"< {r}", stripped)

    if "order_confluence" in groups and g.n <= CONFLUENCE_LIMIT:
        greedy = delta_reduce(g).success
        brute = delta_reduce_exhaustive(g)
        check("order_confluence.greedy_matches_all_orders", greedy == brute, g, brute, greedy)


def two_cycles_apart_at(g: Graph, x: int) -> bool:
    """Whether two cycles pass through ``x`` using four distinct edges at ``x``.

    Inside one 2-connected block a vertex of block degree ``k`` carries
    ``k // 2`` such cycles; cycles in different blocks only meet at ``x``.
    Merely lying on two distinct cycles is not enough for the cycle space to
    lose two dimensions: the degree-2 vertex of K4 minus an edge lies on a
    triangle and a 4-cycle, yet deleting it lowers d by one.
    """
    b = biconnected_blocks(g)
    count = 0
    for vs, es in zip(b.vertices, b.edges):
        if len(es) > 1 and x in vs:
            count += sum(x in e for e in es) // 2
    return count >= 2


def _cut_point_checks(g: Graph, r: int, check) -> None:
    for x in biconnected_blocks(g).cut_vertices:
        rest, relabel = delete_vertices(g, [x])
        back = {new: old for old, new in relabel.items()}
        r_rest = rank_r(rest)
        for comp in components(rest):
            if not any(back[v] in g.adj[x] for v in comp):
                continue
            g1_vertices = [back[v] for v in comp]
            r1 = rank_r(induced_subgraph(g, g1_vertices)[0])
            r1x = rank_r(induced_subgraph(g, g1_vertices + [x])[0])
            if r1 == r1x - 2:
                check("lemmas.cut_point_rank_drop", r == r_rest + 2, g, r_rest + 2, r)
            elif r1 == r1x:
                other = rank_r(delete(g, g1_vertices))
                check("lemmas.cut_point_rank_split", r == r1 + other, g, r1 + other, r)


def _oriented_checks(og: OrientedGraph, groups, check, report: SuiteReport) -> None:
    g = og.graph
    try:
        sr = skew_rank(og)
    except ArithmeticError as exc:
        check("lemmas.skew_rank_even", False, og, "even", str(exc))
        return
    r, d = rank_r(g), cyclomatic_d(g)
    lower_optimal = sr == r - 2 * d
    if lower_optimal:
        report.stats["lower_optimal"] += 1
        if d:
            report.stats["lower_optimal_with_cycles"] += 1

    if "bounds" in groups:
        for b in bound_report(og, invariant_report(og)):
            if not b.skipped:
                check(f"bounds.{b.name}", b.holds, og, f"{b.lhs} <= {b.rhs}", "violated")

    if "lemmas" in groups:
        check("lemmas.skew_rank_even", sr % 2 == 0, og, "even", sr)
        check("lemmas.skew_rank_zero_iff_empty", (sr == 0) == (not g.edges), og, not g.edges, sr)
        parts = sum(skew_rank(induced_subgraph(og, c)[0]) for c in components(g))
        check("lemmas.skew_rank_additive_over_components", parts == sr, og, sr, parts)
        sub = induced_subgraph(og, _random_subset(g.n, _sample_rng(og)))[0]
        check("lemmas.skew_rank_induced_monotone", skew_rank(sub) <= sr, og, f"<= {sr}", skew_rank(sub))
        for y in pendant_vertices(g):
            x = next(iter(g.adj[y]))
            sh = skew_rank(delete(og, [y, x]))
            check("lemmas.pendant_deletion_skew_rank", sh == sr - 2, og, sr - 2, sh)
        mult = cycle_membership(g)
        for x in range(g.n):
            ox = delete(og, [x])
            srx = skew_rank(ox)
            check("lemmas.vertex_deletion_skew_rank", srx in (sr, sr - 2), og, f"{{{sr - 2}, {sr}}}", srx)
            if mult[x]:
                rx, dx = rank_r(ox.graph), cyclomatic_d(ox.graph)
                chain = sr >= srx >= rx - 2 * dx >= r - 2 * d
                check("lemmas.lower_bound_proof_chain", chain, og, "sr >= sr(G-x) >= r(G-x)-2d(G-x) >= r-2d",
                      f"{sr} {srx} {rx - 2 * dx} {r - 2 * d}")
        if d == 0:
            m = matching_number(g)
            check("lemmas.forest_skew_rank_matching", sr == 2 * m, og, 2 * m, sr)
        cls = orientation_class(og)
        if cls.value != "not_a_cycle":
            expect_sr = cycle_skew_rank_oracle(g.n, cls)
            check("lemmas.cycle_skew_rank_closed_form", sr == expect_sr, og, expect_sr, sr)
            expect_r = path_cycle_rank_oracle("cycle", g.n)
            check("lemmas.cycle_rank_closed_form", r == expect_r, og, expect_r, r)

    if "classifier_equivalence" in groups:
        v = classify_lower_optimal(og)
        check("classifier_equivalence.structural_equals_direct", v.agreement, og, v.direct, v.structural)
        trace = v.trace
        cur, ok = og, trace.replay(g) == trace.final
        for step in trace.steps:
            nxt = delete(cur, [step.pendant, step.neighbor])
            ok = ok and rank_r(nxt.graph) == rank_r(cur.graph) - 2 and skew_rank(nxt) == skew_rank(cur) - 2
            cur = nxt
        check("classifier_equivalence.trace_replay", ok, og, "replayable trace with rank drops of 2", "mismatch")

    if "consequences" in groups:
        for cycle, _ in pendant_cycles(g):
            report.stats["pendant_cycles"] += 1
            via = pendant_cycle_skew_rank(og, cycle)
            check("consequences.pendant_cycle_skew_rank", via == sr, og, sr, via)
        if lower_optimal:
            try:
                claims = check_lower_optimal_consequences(og)
            except NotLowerOptimalError as exc:  # pragma: no cover - guarded above
                check("consequences.precondition", False, og, "lower-optimal", str(exc))
                return
            for c in claims:
                base = c.name.split("[", 1)[0]
                check(f"consequences.{base}", c.holds, og, c.name, c.detail)


def _exhaustive_population(cfg: SuiteConfig) -> Iterator[Tuple[Graph, Iterator[OrientedGraph]]]:
    for n in range(1, cfg.n_max + 1):
        for g in enumerate_graphs(n):
            yield g, orientations(g)


def _random_graph(cfg: SuiteConfig, i: int) -> OrientedGraph:
    rng = random.Random(f"{cfg.seed}:{i}")
    n = rng.randint(1, cfg.n_max)
    sub = rng.getrandbits(64)
    kind = i % 4
    if kind == 1:
        return random_orientation(random_tree(n, sub), rng)
    if kind == 2 and n >= 3:
        return random_orientation(random_unicyclic(n, rng.randint(3, n), sub), rng)
    if kind == 3:
        lengths, budget = [], n
        while rng.random() < 0.7:
            fits = [q for q in CONSTRUCT_LENGTHS if q <= budget]
            if not fits:
                break
            q = rng.choice(fits)
            lengths.append(q)
            budget -= q
        ops = rng.randint(0, budget // 2)
        return construct_lower_optimal(lengths, ops, sub, isolated=rng.randint(0, budget - 2 * ops))
    return random_oriented_graph(n, rng.choice((0.15, 0.3, 0.5, 0.7)), sub)


def run_suite(
    cfg: SuiteConfig,
    progress: Optional[Callable[[str], None]] = None,
    extra: Sequence[OrientedGraph] = (),
) -> SuiteReport:
    """Run the selected check groups over the configured population.

    ``extra`` graphs are appended to the population (used for externally
    constructed families).  The report is a pure function of the arguments,
    apart from ``wall_time``.
    """
    start = time.perf_counter()
    report = SuiteReport(cfg)
    check = _Tally(report)
    groups = set(cfg.checks)

    def visit(og: OrientedGraph):
        report.graphs += 1
        report.graphs_by_n[og.n] += 1
        if progress and report.graphs % 1_000_000 == 0:
            progress(f"{report.graphs} graphs checked")
        _oriented_checks(og, groups, check, report)

    if cfg.mode == "exhaustive":
        for g, family in _exhaustive_population(cfg):
            report.stats["underlying_graphs"] += 1
            _graph_checks(g, groups, check)
            for og in family:
                visit(og)
    else:
        for i in range(cfg.samples):
            og = _random_graph(cfg, i)
            _graph_checks(og.graph, groups, check)
            visit(og)
    for og in extra:
        _graph_checks(og.graph, groups, check)
        visit(og)

    check.examples.sort(key=lambda e: (e["check"], e["graph"], e["expected"], e["actual"]))
    report.counterexamples = check.examples[: cfg.max_counterexamples]
    report.wall_time = time.perf_counter() - start
    return report


def stderr_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)
