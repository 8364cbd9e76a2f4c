import random

import pytest

from acceptance import (
    CHECKS,
    double_leaf_tree,
    kozlov_table,
    path_leaf_table,
    random_complex,
    random_connected_graph,
    run_check,
)
from core.complex import dimension, is_connected


@pytest.mark.parametrize("name", list(CHECKS))
def test_named_check_passes(name):
    (report,) = run_check(name)
    assert report.check == name
    assert report.passed, report.details


def test_unknown_check():
    with pytest.raises(KeyError):
        run_check("nonsense")


def test_kozlov_table():
    df = kozlov_table()
    assert list(df["n"]) == list(range(2, 9))
    assert list(df.loc[df["n"] == 3, "strongly_collapsible"]) == [True]
    assert list(df.loc[df["n"] == 4, "expected"]) == ["S^1"]
    assert df["homology_matches"].all()


def test_path_leaf_table_columns():
    df = path_leaf_table()
    assert {"t", "k", "strongly_collapsible", "predicted", "printed_condition", "mod3_condition"} <= set(df.columns)
    assert (df["strongly_collapsible"] == df["predicted"]).all()


class TestGenerators:
    def test_random_graph_is_connected(self):
        rng = random.Random(11)
        for _ in range(10):
            G = random_connected_graph(rng, 4, "a")
            assert is_connected(G)
            assert dimension(G) == 1
            assert 1 <= len(G.facets) <= 4
            assert all(label.startswith("a") for label in G.labels)

    def test_random_complex_is_seeded(self):
        a = random_complex(random.Random(5), 6)
        b = random_complex(random.Random(5), 6)
        assert a == b
        assert a.n_vertices <= 6

    def test_double_leaf_tree(self):
        T = double_leaf_tree(random.Random(3), 4)
        assert T.n_vertices == 6
        assert len(T.facets) == 5
        assert is_connected(T)
