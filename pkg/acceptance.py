"""
Named acceptance checks. Each one recomputes a family of exact results and
returns a CheckReport; the CLI `check` verb and scripts/export_reports.py
both call into this module.
"""

import json
import logging
import random
from typing import Callable, Dict, List, Tuple

import networkx as nx
import pandas as pd

from config import acceptance_config
from core.complex import (
    SimplicialComplex,
    are_isomorphic,
    attach_leaf,
    delete_face,
    disjoint_union,
    from_facets,
    labeled_equal,
)
from core.errors import MorseForgeError
from core.families import boundary_simplex, centipede, cycle, leafify, path, star
from core.poset import reflection, hasse_diagram
from core.schemas import CheckReport
from morse.builder import canonical_facets, morse_complex, morse_join, pure_morse_complex
from morse.catalog import algorithm1, builtin_catalog
from morse.homology import matches_sphere, reduced_betti
from morse.strong_homotopy import core, index_one_violations, is_minimal, is_strongly_collapsible, verify_leaf_collapse
from morse.symmetry import automorphism_group, product_order_check

logger = logging.getLogger(__name__)

MINIMAL_SIX_VERTEX = [
    ["1", "2", "3"], ["1", "3", "4"], ["1", "4", "6"], ["2", "3", "5"],
    ["2", "5", "6"], ["3", "4", "5"], ["4", "5", "6"],
]


def minimal_six_vertex_complex() -> SimplicialComplex:
    """Six vertices, seven triangles, no dominated vertex."""
    return from_facets(MINIMAL_SIX_VERTEX)


def _rng(offset: int = 0) -> random.Random:
    return random.Random(acceptance_config.SEED + offset)


def _tree_edges(rng: random.Random, n: int) -> List[Tuple[int, int]]:
    if n == 2:
        return [(0, 1)]
    tree = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
    return list(tree.edges())


def random_connected_graph(rng: random.Random, max_edges: int, prefix: str) -> SimplicialComplex:
    """Random spanning tree plus random extra edges, between 1 and max_edges edges."""
    m = rng.randint(1, max_edges)
    n = rng.randint(2, m + 1)
    edges = set(tuple(sorted(e)) for e in _tree_edges(rng, n))
    candidates = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
    rng.shuffle(candidates)
    while len(edges) < m and candidates:
        edges.add(candidates.pop())
    return from_facets([[f"{prefix}{a}", f"{prefix}{b}"] for a, b in sorted(edges)])


def random_complex(
    rng: random.Random, max_vertices: int, max_facet_size: int = 4, max_facets: int = 0
) -> SimplicialComplex:
    """Random facets on x0..x{n-1}; max_facets 0 means up to n facets."""
    n = rng.randint(3, max_vertices)
    facets = []
    for _ in range(rng.randint(1, max_facets or n)):
        size = rng.randint(1, min(max_facet_size, n))
        facets.append([f"x{i}" for i in sorted(rng.sample(range(n), size))])
    return from_facets(facets)


def double_leaf_tree(rng: random.Random, n: int) -> SimplicialComplex:
    """Random tree on n vertices with two extra leaves hung on one vertex."""
    edges = _tree_edges(rng, n)
    hub = rng.randrange(n)
    facets = [[f"t{a}", f"t{b}"] for a, b in edges]
    facets += [[f"t{hub}", f"t{hub}a"], [f"t{hub}", f"t{hub}b"]]
    return from_facets(facets)


def _records(df: pd.DataFrame) -> List[dict]:
    """Rows with plain Python values, ready for JSON."""
    return json.loads(df.to_json(orient="records"))


def _sphere_or_point(K: SimplicialComplex) -> str:
    betti = reduced_betti(K).betti
    if not any(betti):
        return "acyclic"
    if sum(betti) == 1:
        return f"S^{betti.index(1)}"
    return f"betti {betti}"


def check_golden_p2() -> CheckReport:
    M = morse_complex(from_facets([["u", "v"], ["v", "w"]]))
    vertices = sorted(M.complex.labels)
    edges = canonical_facets(M)
    expected_vertices = sorted(["(u,uv)", "(v,uv)", "(v,vw)", "(w,vw)"])
    expected_edges = sorted([
        sorted(["(u,uv)", "(v,vw)"]),
        sorted(["(w,vw)", "(v,uv)"]),
        sorted(["(u,uv)", "(w,vw)"]),
    ])
    return CheckReport(
        check="golden-p2",
        passed=vertices == expected_vertices and edges == expected_edges,
        details={"vertices": vertices, "facets": edges},
    )


def kozlov_table() -> pd.DataFrame:
    rows = []
    for n in acceptance_config.KOZLOV_RANGE:
        M = morse_complex(path(n - 1)).complex
        k, r = divmod(n, 3)
        if r == 0:
            expected, holds = "point", not any(reduced_betti(M).betti)
        elif r == 1:
            expected, holds = f"S^{2 * k - 1}", matches_sphere(M, 2 * k - 1)
        else:
            expected, holds = f"S^{2 * k}", matches_sphere(M, 2 * k)
        collapsible = is_strongly_collapsible(M)
        rows.append({
            "n": n,
            "morse_vertices": M.n_vertices,
            "expected": expected,
            "observed": _sphere_or_point(M),
            "homology_matches": holds,
            "strongly_collapsible": collapsible,
            "collapsible_expected": r == 0,
        })
    return pd.DataFrame(rows)


def check_kozlov() -> CheckReport:
    df = kozlov_table()
    passed = bool(df["homology_matches"].all() and (df["strongly_collapsible"] == df["collapsible_expected"]).all())
    return CheckReport(check="kozlov", passed=passed, details={"table": _records(df)})


def check_cycle_leaf() -> CheckReport:
    results = {}
    M3 = morse_complex(attach_leaf(cycle(3), 0)).complex
    results["n=3 strongly collapsible"] = is_strongly_collapsible(M3)
    for n, dim in ((4, 2), (5, 3)):
        M = morse_complex(attach_leaf(cycle(n), 0)).complex
        results[f"n={n} homology of S^{dim}"] = matches_sphere(M, dim)
    return CheckReport(check="cycle-leaf", passed=all(results.values()), details=results)


def check_union() -> CheckReport:
    rng = _rng(1)
    rows = []
    for _ in range(acceptance_config.UNION_PAIRS):
        K = random_connected_graph(rng, acceptance_config.UNION_MAX_EDGES, "g")
        L = random_connected_graph(rng, acceptance_config.UNION_MAX_EDGES, "g")
        left = morse_complex(disjoint_union(K, L)).complex
        right = morse_join(morse_complex(K), morse_complex(L)).complex
        rows.append({"K": str(K), "L": str(L), "equal": labeled_equal(left, right)})
    return CheckReport(check="union", passed=all(r["equal"] for r in rows), details={"pairs": rows})


def check_minimal() -> CheckReport:
    results = {f"M(C{n})": is_minimal(morse_complex(cycle(n)).complex) for n in range(3, 7)}
    results["six-vertex complex"] = is_minimal(minimal_six_vertex_complex())
    return CheckReport(check="minimal", passed=all(results.values()), details=results)


def check_trees() -> CheckReport:
    results = {}
    for k in range(2, 5):
        results[f"star({k})"] = is_strongly_collapsible(morse_complex(star(k)).complex)
    rng = _rng(2)
    for i in range(acceptance_config.DOUBLE_LEAF_TREES):
        T = double_leaf_tree(rng, rng.randint(2, 5))
        results[f"double-leaf tree {i}: {T}"] = is_strongly_collapsible(morse_complex(T).complex)
    pure = []
    for n in range(3, acceptance_config.PURE_TREE_MAX_VERTICES + 1):
        for tree in nx.nonisomorphic_trees(n):
            T = from_facets([[f"t{a}", f"t{b}"] for a, b in tree.edges()])
            pure.append(is_strongly_collapsible(pure_morse_complex(T).complex))
    results["pure Morse complexes of trees"] = all(pure)
    return CheckReport(
        check="trees", passed=all(results.values()), details={**results, "trees_checked": len(pure)}
    )


def check_centipede() -> CheckReport:
    results = {f"centipede({v})": matches_sphere(morse_complex(centipede(v)).complex, v - 1) for v in (2, 3)}
    results["leafify(C3)"] = matches_sphere(morse_complex(leafify(cycle(3))).complex, 2)
    return CheckReport(check="centipede", passed=all(results.values()), details=results)


def check_leaf_collapse() -> CheckReport:
    cases = [
        ("cycle(3)", cycle(3), "v0"),
        ("cycle(4)", cycle(4), "v0"),
        ("cycle(5)", cycle(5), "v0"),
        ("path(2)", path(2), "v1"),
        ("star(3)", star(3), "c"),
    ]
    results = {f"{name} at {v}": verify_leaf_collapse(K, v) for name, K, v in cases}
    return CheckReport(check="leaf-collapse", passed=all(results.values()), details=results)


def check_reflection() -> CheckReport:
    n = 2
    K = boundary_simplex(n)
    H = hasse_diagram(K)
    pi = reflection(n)
    v = H.label_index["v0"]
    face = H.faces[pi[v]]
    left = morse_complex(attach_leaf(K, "v0")).complex
    right = morse_complex(disjoint_union(delete_face(K, face), from_facets([["e0", "e1"]]))).complex
    core_left, _ = core(left)
    core_right, _ = core(right)
    same_betti = reduced_betti(left).betti == reduced_betti(right).betti
    same_core = are_isomorphic(core_left, core_right) is not None
    return CheckReport(
        check="reflection",
        passed=same_betti and same_core,
        details={
            "n": n,
            "reflected_face": list(face),
            "betti_equal": same_betti,
            "cores_isomorphic": same_core,
            "core_sizes": [core_left.n_vertices, core_right.n_vertices],
        },
    )


def check_confluence() -> CheckReport:
    rng = _rng(3)
    failures = []
    for i in range(acceptance_config.CONFLUENCE_COMPLEXES):
        K = random_complex(rng, acceptance_config.CONFLUENCE_MAX_VERTICES)
        reference, _ = core(K)
        for _ in range(acceptance_config.CONFLUENCE_ORDERS):
            other, _ = core(K, rng=rng)
            if are_isomorphic(reference, other) is None:
                failures.append(str(K))
                break
    return CheckReport(
        check="confluence",
        passed=not failures,
        details={"complexes": acceptance_config.CONFLUENCE_COMPLEXES, "failures": failures},
    )


def check_aut() -> CheckReport:
    results = {
        "|Aut(M(C3))| = 12": automorphism_group(morse_complex(cycle(3)).complex).order == 12,
        "|Aut(M(P2))| = |Aut(P2)| = 2": (
            automorphism_group(morse_complex(path(2)).complex).order == 2 == automorphism_group(path(2)).order
        ),
    }
    reports = {}
    for name, K1, K2 in (("star(2), star(2)", star(2), star(2)), ("path(2), star(3)", path(2), star(3))):
        report = product_order_check(K1, K2)
        results[f"product check {name}"] = report.passes
        reports[name] = report.model_dump()
    return CheckReport(check="aut", passed=all(results.values()), details={**results, "reports": reports})


def check_catalog() -> CheckReport:
    catalog = builtin_catalog()
    results = {
        "entries": catalog.names(),
        "algorithm1(star(2))": algorithm1(star(2), catalog),
        "algorithm1(path(1))": algorithm1(path(1), catalog),
        "algorithm1(cycle(4))": algorithm1(cycle(4), catalog),
    }
    passed = results["algorithm1(star(2))"] and results["algorithm1(path(1))"] and not results["algorithm1(cycle(4))"]
    return CheckReport(check="catalog", passed=passed, details=results)


def check_parity() -> CheckReport:
    rng = _rng(4)
    counts = []
    for _ in range(acceptance_config.PARITY_GRAPHS):
        G = random_connected_graph(rng, 6, "g")
        counts.append(morse_complex(G).complex.n_vertices)
    violations = []
    for _ in range(acceptance_config.INDEX_ONE_COMPLEXES):
        K = random_complex(rng, 5, max_facet_size=3, max_facets=3)
        violations.extend(index_one_violations(morse_complex(K)))
    return CheckReport(
        check="parity",
        passed=all(c % 2 == 0 for c in counts) and not violations,
        details={"vertex_counts": counts, "index_violations": violations},
    )


def _collapsible_path_factor(t: int) -> bool:
    """Strong collapsibility of M(P_t); P_0 has no edges and counts as an empty factor."""
    if t < 1:
        return False
    return is_strongly_collapsible(morse_complex(path(t)).complex)


def path_leaf_table() -> pd.DataFrame:
    rows = []
    for t in acceptance_config.PATH_LEAF_RANGE:
        for k in range(1, t):
            truth = is_strongly_collapsible(morse_complex(attach_leaf(path(t), f"v{k}")).complex)
            if k <= t - 2:
                predicted = _collapsible_path_factor(k + 1) or _collapsible_path_factor(t - (k + 2))
                basis = "join decomposition"
            else:
                predicted = True
                basis = "two leaves"
            printed = (k + 1) % 2 == 0 or (t - (k + 2) >= 2 and (t - (k + 2)) % 2 == 0)
            mod3 = (k + 2) % 3 == 0 or (t - k - 1) % 3 == 0
            rows.append({
                "t": t,
                "k": k,
                "strongly_collapsible": truth,
                "predicted": predicted,
                "basis": basis,
                "printed_condition": printed,
                "mod3_condition": mod3,
            })
    return pd.DataFrame(rows)


def check_path_leaf() -> CheckReport:
    df = path_leaf_table()
    consistent = bool((df["strongly_collapsible"] == df["predicted"]).all())
    return CheckReport(
        check="path-leaf",
        passed=consistent,
        details={
            "printed_condition_agrees": int((df["printed_condition"] == df["strongly_collapsible"]).sum()),
            "mod3_condition_agrees": int((df["mod3_condition"] == df["strongly_collapsible"]).sum()),
            "cases": len(df),
            "table": _records(df),
        },
    )


CHECKS: Dict[str, Callable[[], CheckReport]] = {
    "golden-p2": check_golden_p2,
    "kozlov": check_kozlov,
    "cycle-leaf": check_cycle_leaf,
    "union": check_union,
    "minimal": check_minimal,
    "trees": check_trees,
    "centipede": check_centipede,
    "leaf-collapse": check_leaf_collapse,
    "reflection": check_reflection,
    "confluence": check_confluence,
    "aut": check_aut,
    "catalog": check_catalog,
    "parity": check_parity,
    "path-leaf": check_path_leaf,
}


def run_check(name: str) -> List[CheckReport]:
    """Run one named check, or every check for 'all'."""
    if name == "all":
        names = list(CHECKS)
    elif name in CHECKS:
        names = [name]
    else:
        raise KeyError(name)
    reports = []
    for check_name in names:
        try:
            report = CHECKS[check_name]()
        except MorseForgeError as e:
            logger.error(f"Error running check {check_name}: {str(e)}")
            report = CheckReport(check=check_name, passed=False, details={"error": str(e)})
        logger.info(f"Check {check_name}: {'passed' if report.passed else 'FAILED'}")
        reports.append(report)
    return reports
