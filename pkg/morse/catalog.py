"""
Catalog of height-2 posets with a known verdict on f, and the pattern scan
that uses it to guess strong collapsibility of the Morse complex of a graph.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from config import morse_config
from core.complex import SimplicialComplex, dimension
from core.errors import ConsistencyError, NotAGraph
from core.io import parse_catalog, poset_to_payload
from core.poset import Poset, diagram_isomorphism, hasse_diagram, height2_subposets, poset_from_covers
from core.schemas import Algorithm1Report
from .builder import f, morse_complex
from .strong_homotopy import core, is_strongly_collapsible

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    poset: Poset
    collapsible: bool


@dataclass(frozen=True)
class PatternCatalog:
    entries: Tuple[CatalogEntry, ...]

    def collapsible_entries(self) -> List[CatalogEntry]:
        return [e for e in self.entries if e.collapsible]

    def names(self) -> List[str]:
        return [e.name for e in self.entries]


def _bipartite(covers: Sequence[Tuple[str, str]]) -> Poset:
    """Height-2 poset from covers; one-character labels are bottoms, longer ones tops."""
    labels: List[str] = []
    for lower, upper in covers:
        for label in (lower, upper):
            if label not in labels:
                labels.append(label)
    elements = sorted(((l, 0 if len(l) == 1 else 1) for l in labels), key=lambda e: (e[1], e[0]))
    return poset_from_covers(elements, covers)


def _builtin_entries(family_sizes: Sequence[int]) -> List[CatalogEntry]:
    entries = [
        CatalogEntry("case-1", _bipartite([("a", "ab")]), True),
        CatalogEntry("case-2", _bipartite([("a", "ac"), ("a", "ab"), ("b", "ab"), ("b", "bd")]), True),
    ]
    for k in family_sizes:
        spine = [("a", "ab"), ("b", "ab")]
        a_leaves = [("a", f"aa{i}") for i in range(1, k + 1)]
        entries.append(CatalogEntry(f"case-2a-{k}", _bipartite(a_leaves + spine + [("b", "bb1")]), False))
        b_leaves = [("b", f"bb{j}") for j in range(1, k + 1)]
        entries.append(CatalogEntry(f"case-2b-{k}", _bipartite(a_leaves + spine + b_leaves), False))
    entries.append(CatalogEntry(
        "three-bottom",
        _bipartite([("a", "aa"), ("a", "ac"), ("c", "ac"), ("b", "ab"), ("a", "ab"), ("b", "bb"), ("c", "cc")]),
        True,
    ))
    return entries


def _verify(entries: List[CatalogEntry]) -> PatternCatalog:
    for entry in entries:
        reduced, trace = core(f(entry.poset).complex)
        observed = reduced.n_vertices == 1
        if observed != entry.collapsible:
            raise ConsistencyError(
                f"Catalog entry {entry.name} claims collapsible={entry.collapsible}, "
                f"but its core has {reduced.n_vertices} vertices"
            )
        logger.debug(f"Catalog entry {entry.name} verified after {len(trace.steps)} collapses")
    logger.info(f"Loaded pattern catalog with {len(entries)} entries")
    return PatternCatalog(tuple(entries))


def builtin_catalog(family_sizes: Optional[Sequence[int]] = None) -> PatternCatalog:
    sizes = family_sizes if family_sizes is not None else morse_config.CATALOG_FAMILY_SIZES
    return _verify(_builtin_entries(sizes))


def load_catalog(source: Union[str, Path]) -> PatternCatalog:
    """Catalog from a file path or from catalog text; every verdict is re-verified."""
    try:
        path = Path(source)
        text = path.read_text(encoding="utf-8") if "\n" not in str(source) and path.is_file() else str(source)
        entries = [CatalogEntry(name, poset, verdict) for name, poset, verdict in parse_catalog(text)]
        return _verify(entries)
    except Exception as e:
        logger.error(f"Error loading catalog: {str(e)}")
        raise


def algorithm1_report(
    K: SimplicialComplex, catalog: Optional[PatternCatalog] = None, exact: bool = False
) -> Algorithm1Report:
    """
    Scan the height-2 subposets of H(K) for a catalog pattern whose f is
    strongly collapsible, matching up to rank reversal (f of a poset equals
    f of its dual). A hit is a heuristic yes; no hit says nothing.
    """
    if dimension(K) != 1:
        raise NotAGraph(f"Pattern scan expects a graph, got dimension {dimension(K)}")
    catalog = catalog if catalog is not None else builtin_catalog()
    patterns = catalog.collapsible_entries()
    scanned = 0
    hit_name, hit_poset = None, None
    for sub in height2_subposets(hasse_diagram(K)):
        scanned += 1
        match = next(
            (e for e in patterns if diagram_isomorphism(sub, e.poset, allow_reversal=True) is not None),
            None,
        )
        if match is not None:
            hit_name, hit_poset = match.name, sub
            break
    verdict = hit_name is not None
    logger.info(f"Pattern scan: {scanned} subposets, verdict {verdict}" + (f" via {hit_name}" if verdict else ""))
    return Algorithm1Report(
        heuristic=verdict,
        pattern=hit_name,
        subposet=poset_to_payload(hit_poset) if hit_poset is not None else None,
        exact=is_strongly_collapsible(morse_complex(K).complex) if exact else None,
        subposets_scanned=scanned,
    )


def algorithm1(K: SimplicialComplex, catalog: Optional[PatternCatalog] = None) -> bool:
    return algorithm1_report(K, catalog).heuristic
