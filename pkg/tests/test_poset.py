import networkx as nx
import pytest

from core.complex import from_facets
from core.errors import BadParameter, DuplicateLabel, UnknownElement
from core.families import boundary_simplex, cycle, full_simplex, path
from core.poset import (
    Poset,
    diagrams_isomorphic,
    dual,
    element_names,
    empty_poset,
    face_index,
    hasse_diagram,
    height,
    height2_subposets,
    poset_disjoint_union,
    poset_from_covers,
    reflection,
    remove_element,
    simplex_name,
)
from morse.builder import f


class TestHasseDiagram:
    def test_path(self, p2):
        H = hasse_diagram(p2)
        assert H.labels == ("u", "v", "w", "uv", "vw")
        assert H.ranks == (0, 0, 0, 1, 1)
        assert len(H.covers) == 4

    def test_cycle(self):
        H = hasse_diagram(cycle(5))
        assert H.n_elements == 10
        assert len(H.covers) == 10

    def test_sphere_boundary(self):
        H = hasse_diagram(boundary_simplex(3))
        assert H.n_elements == 14
        assert len(H.covers) == 24

    def test_full_simplex(self):
        H = hasse_diagram(full_simplex(3))
        assert H.n_elements == 15
        assert len(H.covers) == 28

    def test_long_labels_are_dotted(self):
        H = hasse_diagram(path(1))
        assert H.labels == ("v0", "v1", "v0.v1")
        assert H.faces[2] == ("v0", "v1")

    def test_simplex_name(self):
        assert simplex_name(["a", "b"]) == "ab"
        assert simplex_name(["a", "b1"]) == "a.b1"


class TestElementNames:
    def test_vertex_named_like_an_edge(self):
        H = hasse_diagram(from_facets([["1", "2"], ["12", "3"]]))
        assert len(set(H.labels)) == H.n_elements
        assert H.ranks[H.label_index["12"]] == 0
        assert H.faces[H.label_index["{1,2}"]] == ("1", "2")
        assert "12.3" in H.labels

    def test_dotted_vertex_label(self):
        H = hasse_diagram(from_facets([["a1.b", "c"], ["a1", "b"]]))
        assert H.ranks[H.label_index["a1.b"]] == 0
        assert H.faces[H.label_index["{a1,b}"]] == ("a1", "b")

    def test_braced_form_taken_as_well(self):
        names = element_names([("a",), ("b",), ("ab",), ("{a,b}",), ("a", "b")])
        assert names == ["a", "b", "ab", "{a,b}", "{a,b}#L"]

    def test_two_edges_with_the_same_short_name(self):
        names = element_names([("a",), ("b.c",), ("a.b",), ("c",), ("a", "b.c"), ("a.b", "c")])
        assert names[4:] == ["a.b.c", "{a.b,c}"]

    def test_short_names_kept_when_free(self, p2):
        assert element_names(hasse_diagram(p2).faces) == ["u", "v", "w", "uv", "vw"]

    def test_face_index(self, p2):
        H = hasse_diagram(p2)
        assert face_index(H)[("v", "w")] == H.label_index["vw"]
        with pytest.raises(BadParameter):
            face_index(poset_from_covers([("x", 0), ("y", 1)], [("x", "y")]))


class TestPosetOperations:
    def test_remove_vertex_from_cycle(self, triangle):
        P = remove_element(hasse_diagram(triangle), "a")
        assert P.n_elements == 5
        assert len(P.covers) == 4
        assert diagrams_isomorphic(P, hasse_diagram(from_facets([["u", "v"], ["v", "w"]])), allow_reversal=True)

    def test_remove_edge_leaves_antichain(self):
        P = remove_element(hasse_diagram(path(1)), "v0.v1")
        assert P.n_elements == 2
        assert not P.covers
        with pytest.raises(UnknownElement):
            remove_element(P, "v0.v1")

    def test_disjoint_union(self):
        H = hasse_diagram(path(1))
        U = poset_disjoint_union(H, H)
        assert U.n_elements == 6
        assert len(U.covers) == 2
        assert len(set(U.labels)) == 6

    def test_union_with_empty(self, p2):
        H = hasse_diagram(p2)
        U = poset_disjoint_union(H, empty_poset())
        assert U.labels == H.labels
        assert U.covers == H.covers

    def test_dual_is_an_involution(self, p2):
        H = hasse_diagram(p2)
        D = dual(H)
        assert D.ranks == (1, 1, 1, 0, 0)
        assert dual(D).covers == H.covers

    def test_height(self):
        assert height(hasse_diagram(path(2))) == 2
        assert height(hasse_diagram(full_simplex(2))) == 3
        assert height(remove_element(hasse_diagram(path(1)), "v0.v1")) == 1
        assert height(empty_poset()) == 0

    def test_covers_must_raise_rank(self):
        with pytest.raises(BadParameter):
            poset_from_covers([("a", 0), ("b", 0)], [("a", "b")])

    def test_cover_to_undeclared_element(self):
        with pytest.raises(UnknownElement):
            poset_from_covers([("a", 0)], [("a", "ab")])

    def test_duplicate_element_label(self):
        with pytest.raises(DuplicateLabel):
            Poset(("a", "a"), (0, 0), frozenset())


class TestReflection:
    def test_triangle(self):
        H = hasse_diagram(boundary_simplex(2))
        pi = reflection(2)
        by_label = {H.labels[i]: H.labels[j] for i, j in pi.items()}
        assert by_label["v0"] == "v1.v2"
        assert by_label["v0.v1"] == "v2"

    def test_involution_reversing_covers(self):
        H = hasse_diagram(boundary_simplex(3))
        pi = reflection(3)
        assert all(pi[pi[i]] == i for i in pi)
        assert {(pi[b], pi[a]) for a, b in H.covers} == set(H.covers)
        assert H.labels[pi[H.label_index["v0.v1"]]] == "v2.v3"

    def test_reflection_preserves_morse_complex_size(self):
        H = hasse_diagram(boundary_simplex(2))
        assert f(H).complex.n_vertices == f(dual(H)).complex.n_vertices

    def test_small_n(self):
        with pytest.raises(BadParameter):
            reflection(1)


class TestHeightTwoSubposets:
    def test_single_edge(self):
        subs = list(height2_subposets(hasse_diagram(path(1))))
        assert len(subs) == 1
        assert subs[0].n_elements == 2
        assert len(subs[0].covers) == 1

    def test_every_subposet_is_connected_height_two(self):
        for sub in height2_subposets(hasse_diagram(full_simplex(2))):
            assert height(sub) == 2
            assert nx.is_connected(sub.cover_graph())

    def test_both_bands_of_a_triangle(self):
        bands = {tuple(sorted(set(sub.ranks))) for sub in height2_subposets(hasse_diagram(full_simplex(2)))}
        assert (0, 1) in bands
        assert (1, 2) in bands

    def test_results_are_pairwise_distinct(self):
        subs = list(height2_subposets(hasse_diagram(path(3))))
        for i, a in enumerate(subs):
            for b in subs[i + 1:]:
                assert not diagrams_isomorphic(a, b, allow_reversal=True)

    def test_antichain_has_none(self):
        P = remove_element(hasse_diagram(path(1)), "v0.v1")
        assert list(height2_subposets(P)) == []

    def test_element_cap_skips_large_components(self, caplog):
        subs = list(height2_subposets(hasse_diagram(cycle(8)), element_cap=4))
        assert subs == []
        assert "Skipping" in caplog.text
