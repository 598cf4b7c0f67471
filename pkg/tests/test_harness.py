import pytest

from skewrank.graph import Graph, components
from skewrank.harness import (
    SuiteConfig,
    construct_lower_optimal,
    enumerate_graphs,
    enumerate_oriented_graphs,
    orientations,
    random_oriented_graph,
    random_tree,
    random_unicyclic,
    run_suite,
    two_cycles_apart_at,
)
from skewrank.invariants import cyclomatic_d
from skewrank.structure import classify_lower_optimal, is_lower_optimal


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 27), (4, 729)])
def test_enumeration_counts(n, count):
    assert sum(1 for _ in enumerate_oriented_graphs(n)) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_has_no_duplicates(n):
    keys = [og.arcs for og in enumerate_oriented_graphs(n)]
    assert len(keys) == len(set(keys))


@pytest.mark.parametrize("n", [3, 4])
def test_graph_then_orientation_covers_same_population(n):
    a = {og.arcs for g in enumerate_graphs(n) for og in orientations(g)}
    b = {og.arcs for og in enumerate_oriented_graphs(n)}
    assert a == b


def test_enumeration_guard():
    with pytest.raises(ValueError):
        next(enumerate_oriented_graphs(7))


class TestGenerators:
    def test_random_tree(self):
        for seed in range(10):
            t = random_tree(5, seed)
            assert len(t.edges) == 4 and len(components(t)) == 1 and cyclomatic_d(t) == 0
        assert random_tree(1, 0) == Graph(1)

    def test_random_unicyclic(self):
        for seed in range(10):
            assert cyclomatic_d(random_unicyclic(7, 4, seed)) == 1
        with pytest.raises(ValueError):
            random_unicyclic(5, 6, 0)
        with pytest.raises(ValueError):
            random_unicyclic(5, 2, 0)

    def test_determinism(self):
        assert random_tree(12, 7) == random_tree(12, 7)
        assert random_unicyclic(9, 5, 3) == random_unicyclic(9, 5, 3)
        assert random_oriented_graph(8, 0.4, 11) == random_oriented_graph(8, 0.4, 11)
        assert construct_lower_optimal([6, 10], 5, 2) == construct_lower_optimal([6, 10], 5, 2)

    def test_random_oriented_graph_validation(self):
        with pytest.raises(ValueError):
            random_oriented_graph(4, 1.5, 0)


class TestConstruct:
    def test_single_c6(self):
        og = construct_lower_optimal([6], 0, 1)
        assert og.n == 6 and is_lower_optimal(og)

    def test_forest(self):
        for seed in range(10):
            og = construct_lower_optimal([], 4, seed)
            assert cyclomatic_d(og.graph) == 0 and is_lower_optimal(og)

    def test_two_cycles(self):
        v = classify_lower_optimal(construct_lower_optimal([6, 10], 3, 5))
        assert v.structural and v.direct

    def test_rejects_bad_lengths(self):
        for q in (4, 8, 5, 2):
            with pytest.raises(ValueError):
                construct_lower_optimal([q], 0, 0)


class TestSuiteConfig:
    def test_exhaustive_guard(self):
        with pytest.raises(ValueError):
            SuiteConfig(mode="exhaustive", n_max=7)
        with pytest.raises(ValueError):
            SuiteConfig(mode="exhaustive", n_max=6)
        SuiteConfig(mode="exhaustive", n_max=6, allow_n6=True)

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            SuiteConfig(checks=("bounds", "nope"))

    def test_checks_are_canonically_ordered(self):
        assert SuiteConfig(checks=("lemmas", "bounds")).checks == ("bounds", "lemmas")


class TestRunSuite:
    def test_exhaustive_n3(self):
        rep = run_suite(SuiteConfig(mode="exhaustive", n_max=3))
        assert rep.graphs == 27 + 3 + 1
        assert rep.passed and rep.counterexamples == []

    def test_exhaustive_n4(self):
        rep = run_suite(SuiteConfig(mode="exhaustive", n_max=4))
        assert rep.graphs_by_n[4] == 729
        assert rep.passed, rep.counterexamples[:3]
        assert rep.stats["lower_optimal"] > 0

    def test_random_is_deterministic(self):
        cfg = SuiteConfig(mode="random", n_max=9, samples=150, seed=7)
        assert run_suite(cfg).to_json() == run_suite(cfg).to_json()

    def test_counterexamples_are_collected(self, monkeypatch):
        import skewrank.harness as h

        monkeypatch.setattr(h, "two_cycles_apart_at", lambda g, x: cycle_membership_two(g, x))
        rep = run_suite(SuiteConfig(mode="exhaustive", n_max=4, checks=("lemmas",)))
        assert not rep.passed
        assert rep.failed("lemmas.cycle_space_shared_vertex") > 0
        ex = rep.counterexamples[0]
        assert ex["check"] == "lemmas.cycle_space_shared_vertex"
        assert ex["graph"].startswith("4\n")

    def test_extra_graphs_are_checked(self):
        cfg = SuiteConfig(mode="random", n_max=3, samples=0, checks=("classifier_equivalence",))
        rep = run_suite(cfg, extra=[construct_lower_optimal([6], 2, 0)])
        assert rep.graphs == 1 and rep.stats["lower_optimal"] == 1


def cycle_membership_two(g, x):
    from skewrank.graph import cycle_membership

    return cycle_membership(g)[x] >= 2


class TestTwoCyclesApart:
    def test_diamond(self, diamond):
        # the degree-2 vertices lie on two cycles but each cycle uses the same two edges
        assert not two_cycles_apart_at(diamond, 2)
        assert not two_cycles_apart_at(diamond, 0)

    def test_bowtie(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
        assert two_cycles_apart_at(g, 2)
        assert not two_cycles_apart_at(g, 0)

    def test_k4(self):
        assert not two_cycles_apart_at(Graph.complete(4), 0)
        assert two_cycles_apart_at(Graph.complete(5), 0)
