import random

import pytest

from acceptance import random_complex
from config import acceptance_config
from core.complex import are_isomorphic, from_facets, join, labeled_equal
from core.errors import ConsistencyError, HypothesisViolation, NotDominated
from core.families import boundary_simplex, cycle, full_simplex, path, star
from core.poset import hasse_diagram, poset_disjoint_union
from morse.builder import f, morse_complex
from morse.strong_homotopy import (
    CollapseTrace,
    core,
    dominated_vertices,
    dominates,
    dominating_vertex,
    index_one_violations,
    is_minimal,
    is_strongly_collapsible,
    leaf_dominations,
    replay_trace,
    strong_collapse_step,
    verify_leaf_collapse,
)


class TestDomination:
    def test_simplex_vertex_is_dominated_by_least_other(self):
        K = full_simplex(2)
        assert dominating_vertex(K, "v0") == 1
        assert dominating_vertex(K, "v2") == 0

    def test_leaf_of_morse_path(self, p2):
        M = morse_complex(p2).complex
        # M(P2) is the path (v,vw) - (u,uv) - (w,vw) - (v,uv).
        assert dominating_vertex(M, "(v,vw)") == M.vertex_id("(u,uv)")
        assert dominating_vertex(M, "(u,uv)") is None
        assert dominates(M, "(w,vw)", "(v,uv)")

    def test_minimal_complex_has_no_dominated_vertex(self, minimal_six):
        assert dominated_vertices(minimal_six) == []
        assert is_minimal(minimal_six)

    def test_collapse_step(self, p2):
        M = morse_complex(p2).complex
        collapsed = strong_collapse_step(M, "(v,vw)")
        assert collapsed.labels == ("(u,uv)", "(v,uv)", "(w,vw)")
        assert collapsed.facet_label_sets() == {
            frozenset({"(u,uv)", "(w,vw)"}),
            frozenset({"(v,uv)", "(w,vw)"}),
        }

    def test_collapse_step_needs_domination(self, p2):
        with pytest.raises(NotDominated):
            strong_collapse_step(morse_complex(p2).complex, "(u,uv)")

    def test_collapse_of_simplex_vertex(self):
        collapsed = strong_collapse_step(full_simplex(2), "v0")
        assert collapsed.facet_label_sets() == {frozenset({"v1", "v2"})}


class TestCore:
    def test_simplex_collapses_to_point(self):
        reduced, trace = core(full_simplex(2))
        assert reduced.n_vertices == 1
        assert len(trace.steps) == 2

    def test_minimal_complex_is_its_own_core(self, minimal_six):
        reduced, trace = core(minimal_six)
        assert trace.steps == ()
        assert labeled_equal(reduced, minimal_six)

    def test_trace_replays(self):
        M = morse_complex(path(4)).complex
        reduced, trace = core(M)
        assert labeled_equal(replay_trace(M, trace), reduced)

    def test_tampered_trace(self):
        K = full_simplex(2)
        reduced, trace = core(K)
        with pytest.raises(ConsistencyError):
            replay_trace(K, CollapseTrace(trace.steps[:1], reduced))
        with pytest.raises(NotDominated):
            replay_trace(cycle(4), CollapseTrace((("v0", "v1"),), reduced))

    def test_payload(self):
        payload = core(full_simplex(1))[1].to_payload()
        assert payload.vertices == ["v1"]
        assert payload.steps[0].removed == "v0"
        assert payload.steps[0].witness == "v1"

    def test_random_orders_reach_isomorphic_cores(self, rng):
        K = morse_complex(path(3)).complex
        reference, _ = core(K)
        for _ in range(5):
            other, _ = core(K, rng=random.Random(rng.random()))
            assert are_isomorphic(reference, other) is not None


class TestCollapsibility:
    @pytest.mark.parametrize("K,expected", [
        (path(1), False),
        (path(2), True),
        (path(5), True),
        (star(2), True),
        (cycle(3), False),
        (cycle(4), False),
        (path(3), False),
    ])
    def test_morse_complexes_of_small_graphs(self, K, expected):
        assert is_strongly_collapsible(morse_complex(K).complex) == expected

    def test_point(self):
        assert is_strongly_collapsible(full_simplex(0))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_cycles_give_minimal_complexes(self, n):
        assert is_minimal(morse_complex(cycle(n)).complex)

    def test_complete_graph_has_minimal_morse_complex(self):
        k4 = from_facets([[a, b] for a, b in ["ab", "ac", "ad", "bc", "bd", "cd"]])
        assert is_minimal(morse_complex(k4).complex)

    def test_simplex_is_not_minimal(self):
        assert not is_minimal(full_simplex(2))

    def test_join_with_collapsible_factor(self):
        assert is_strongly_collapsible(join(full_simplex(1), cycle(4)))
        assert not is_strongly_collapsible(join(cycle(4), cycle(4)))

    @pytest.mark.parametrize(
        "K,L",
        [(cycle(4), full_simplex(1)), (boundary_simplex(2), star(3)), (cycle(5), path(2))],
    )
    def test_collapsible_factor_on_the_right(self, K, L):
        assert not is_strongly_collapsible(K)
        assert is_strongly_collapsible(L)
        assert is_strongly_collapsible(join(K, L))

    def test_join_collapsible_exactly_when_a_factor_is(self):
        rng = random.Random(acceptance_config.SEED)
        for _ in range(15):
            K = random_complex(rng, 5, max_facet_size=3, max_facets=4)
            L = random_complex(rng, 5, max_facet_size=3, max_facets=4)
            expected = is_strongly_collapsible(K) or is_strongly_collapsible(L)
            assert is_strongly_collapsible(join(K, L)) == expected, f"{K} * {L}"

    def test_collapsible_component_makes_union_collapsible(self):
        P = poset_disjoint_union(hasse_diagram(star(2)), hasse_diagram(cycle(4)))
        assert is_strongly_collapsible(f(P).complex)


class TestLeafCollapse:
    @pytest.mark.parametrize("K,v", [(cycle(3), "v0"), (cycle(5), "v0"), (path(2), "v1"), (star(3), "c")])
    def test_leaf_collapse(self, K, v):
        assert verify_leaf_collapse(K, v)

    def test_needs_connected_complex(self):
        with pytest.raises(HypothesisViolation):
            verify_leaf_collapse(boundary_simplex(1), "v0")

    def test_leaf_dominations(self):
        results = leaf_dominations(star(3))
        assert len(results) == 6
        assert all(holds for _, _, holds in results)
        assert ("(l1,c.l1)", "(c,c.l2)", True) in results

    def test_leaf_dominations_need_a_graph(self):
        with pytest.raises(HypothesisViolation):
            leaf_dominations(full_simplex(2))

    def test_leaf_collapse_with_numeric_labels(self):
        K = from_facets([["1", "2"], ["2", "12"], ["12", "1"]])
        assert verify_leaf_collapse(K, "2")

    def test_leaf_dominations_with_numeric_labels(self):
        K = from_facets([["1", "2"], ["2", "12"]])
        assert leaf_dominations(K) == [
            ("(1,{1,2})", "(2,2.12)", True),
            ("(12,2.12)", "(2,{1,2})", True),
        ]

    @pytest.mark.parametrize("K", [path(3), cycle(4), full_simplex(2)])
    def test_witnesses_have_index_one(self, K):
        assert index_one_violations(morse_complex(K)) == []
