import pytest

from core.complex import dimension, disjoint_union, from_facets, join, labeled_equal, popcount
from core.errors import MixedSources, NoCovers, NotACover, NotAMatching, SizeLimit
from core.families import cycle, path
from core.poset import hasse_diagram, poset_disjoint_union, poset_from_covers, remove_element
from morse.builder import (
    PrimitivePair,
    canonical_facets,
    compatible,
    complex_of_source,
    f,
    is_acyclic,
    maximal_gvfs,
    morse_complex,
    morse_join,
    pair_notation,
    primitive_pairs,
    pure_morse_complex,
    realizability_obstruction,
)
from morse.homology import reduced_betti


def _pairs(P, *labels):
    by_label = {p.label: p for p in primitive_pairs(P)}
    return [by_label[l] for l in labels]


class TestPrimitivePairs:
    def test_one_pair_per_cover(self, p2):
        H = hasse_diagram(p2)
        assert [p.label for p in primitive_pairs(H)] == ["(u,uv)", "(v,uv)", "(v,vw)", "(w,vw)"]
        assert len(primitive_pairs(hasse_diagram(cycle(6)))) == 12

    def test_notation(self, p2):
        H = hasse_diagram(p2)
        a, b = _pairs(H, "(u,uv)", "(v,uv)")
        assert pair_notation(a) == "(u)v"
        assert pair_notation(b) == "(v)u"

    def test_compatible(self, p2):
        H = hasse_diagram(p2)
        a, b, c = _pairs(H, "(u,uv)", "(v,uv)", "(v,vw)")
        assert compatible(a, c)
        assert not compatible(a, b)

    def test_pairs_from_different_posets(self, p2, triangle):
        (a,) = _pairs(hasse_diagram(p2), "(u,uv)")
        (b,) = _pairs(hasse_diagram(triangle), "(a,ab)")
        with pytest.raises(MixedSources):
            compatible(a, b)


class TestAcyclicity:
    def test_triangle_cycle(self, triangle):
        H = hasse_diagram(triangle)
        assert not is_acyclic(H, _pairs(H, "(a,ab)", "(b,bc)", "(c,ac)"))
        assert is_acyclic(H, _pairs(H, "(a,ab)", "(b,bc)"))

    def test_empty_matching(self, triangle):
        assert is_acyclic(hasse_diagram(triangle), [])

    def test_shared_element(self, p2):
        H = hasse_diagram(p2)
        with pytest.raises(NotAMatching) as excinfo:
            is_acyclic(H, _pairs(H, "(u,uv)", "(v,uv)"))
        assert "uv" in str(excinfo.value)

    def test_pair_that_is_not_a_cover(self, p2):
        H = hasse_diagram(p2)
        pair = PrimitivePair(H.label_index["u"], H.label_index["vw"], H)
        with pytest.raises(NotACover) as excinfo:
            is_acyclic(H, [pair])
        assert "u < vw" in str(excinfo.value)
        assert "share" not in str(excinfo.value)


class TestMorseComplex:
    def test_golden_path(self, p2):
        M = morse_complex(p2)
        assert M.complex.labels == ("(u,uv)", "(v,uv)", "(v,vw)", "(w,vw)")
        assert canonical_facets(M) == [
            ["(u,uv)", "(v,vw)"],
            ["(u,uv)", "(w,vw)"],
            ["(v,uv)", "(w,vw)"],
        ]
        assert M.vertex_pairs[0] == ("u", "uv")

    def test_single_cover_is_a_point(self):
        M = f(hasse_diagram(path(1)))
        assert M.complex.n_vertices == 1

    def test_triangle(self, triangle):
        M = morse_complex(triangle)
        assert M.complex.n_vertices == 6
        assert len(M.complex.facets) == 9
        assert dimension(M.complex) == 1

    def test_no_covers(self):
        antichain = remove_element(hasse_diagram(path(1)), "v0.v1")
        with pytest.raises(NoCovers):
            f(antichain)

    def test_budget(self, triangle):
        with pytest.raises(SizeLimit):
            f(hasse_diagram(triangle), budget=3)

    def test_payload(self, p2):
        payload = morse_complex(p2).to_payload()
        assert payload.vertices[0] == "(u,uv)"
        assert payload.notation[0] == "(u)v"
        assert sorted(payload.facets) == [[0, 2], [0, 3], [1, 3]]

    def test_vertex_count_of_graphs_is_even(self):
        for K in (path(4), cycle(5), from_facets([["a", "b"], ["b", "c"], ["b", "d"]])):
            assert morse_complex(K).complex.n_vertices % 2 == 0


class TestGradientVectorFields:
    def test_maximal_fields_of_path(self, p2):
        fields = maximal_gvfs(hasse_diagram(p2))
        assert len(fields) == 3
        assert all(len(v.pairs) == 2 for v in fields)
        assert str(fields[0]) == "{(u,uv), (v,vw)}"

    def test_every_facet_is_acyclic(self, triangle):
        fields = maximal_gvfs(hasse_diagram(triangle))
        assert len(fields) == 9
        assert all(v.is_acyclic() for v in fields)


class TestFunctorLaws:
    def test_union_goes_to_join(self, p2):
        edge = from_facets([["x", "y"]])
        union = morse_complex(disjoint_union(p2, edge)).complex
        product = join(morse_complex(p2).complex, morse_complex(edge).complex)
        assert labeled_equal(union, product)

    def test_subcomplex_monotonicity(self, p2):
        larger = morse_complex(from_facets([["u", "v"], ["v", "w"], ["w", "x"]])).complex
        big_facets = larger.facet_label_sets()
        for facet in morse_complex(p2).complex.facet_label_sets():
            assert any(facet <= other for other in big_facets)

    @pytest.mark.parametrize("K", [path(1), path(2), cycle(4)])
    def test_extra_edge_suspends(self, K):
        betti = reduced_betti(morse_complex(K).complex).betti
        suspended = reduced_betti(morse_complex(disjoint_union(K, path(1))).complex).betti
        assert suspended == [0] + betti

    def test_union_of_paths_is_the_morse_join(self):
        union = morse_complex(disjoint_union(path(2), path(1))).complex
        joined = morse_join(morse_complex(path(2)), morse_complex(path(1))).complex
        assert labeled_equal(union, joined)
        assert "(v0#L,v0#L.v1#L)" in joined.labels

    def test_morse_join_with_colliding_graphs(self):
        union = morse_complex(disjoint_union(cycle(3), path(1))).complex
        joined = morse_join(morse_complex(cycle(3)), morse_complex(path(1))).complex
        assert "(v0#L,v0#L.v1#L)" in joined.labels
        assert labeled_equal(union, joined)

    def test_morse_join_of_degenerate_posets(self, p2):
        P = remove_element(hasse_diagram(p2), "v")
        Q = hasse_diagram(from_facets([["x", "y"]]))
        assert complex_of_source(P) is None
        joined = morse_join(f(P), f(Q))
        assert labeled_equal(joined.complex, f(poset_disjoint_union(P, Q)).complex)


class TestPureMorseComplex:
    def test_equal_when_already_pure(self, p2):
        assert labeled_equal(pure_morse_complex(p2).complex, morse_complex(p2).complex)

    def test_drops_small_facets(self):
        full = morse_complex(path(3)).complex
        pure = pure_morse_complex(path(3)).complex
        assert len(pure.facets) < len(full.facets)
        assert {popcount(m) for m in pure.facets} == {3}


class TestRealizability:
    def test_odd_small_complex(self):
        assert realizability_obstruction(from_facets([["a", "b", "c"]])) is not None

    def test_morse_complex_has_no_obstruction(self, p2):
        assert realizability_obstruction(morse_complex(p2).complex) is None


class TestLabels:
    def test_vertex_named_like_an_edge(self):
        M = morse_complex(from_facets([["a", "b"], ["ab", "c"]]))
        assert set(M.complex.labels) == {"(a,{a,b})", "(b,{a,b})", "(ab,ab.c)", "(c,ab.c)"}
        # two disjoint edges: the join of two copies of S^0
        assert len(M.complex.facets) == 4

    def test_numeric_labels(self):
        K = from_facets([["1", "2"], ["12", "3"]])
        M = morse_complex(K)
        assert len(set(M.complex.labels)) == M.complex.n_vertices == 4
        assert "(1,{1,2})" in M.complex.labels
        assert pure_morse_complex(K).complex.n_vertices == 4

    def test_pair_labels_that_read_the_same(self):
        P = poset_from_covers(
            [("a", 0), ("a,b", 0), ("c", 1), ("b,c", 1)],
            [("a", "b,c"), ("a,b", "c")],
        )
        M = f(P)
        assert M.complex.labels == ("(a,b,c)", "(a,b,c)#L")
        assert len(M.complex.facets) == 1

    def test_complex_of_source(self, p2):
        assert complex_of_source(hasse_diagram(p2)) == p2
        assert complex_of_source(hasse_diagram(from_facets([["1", "2"], ["12", "3"]]))) is not None
