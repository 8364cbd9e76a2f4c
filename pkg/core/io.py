"""
Readers and writers for the text formats (.cplx, .poset, catalog files) and
the canonical JSON payloads.
"""

import logging
from typing import List, Tuple

from pydantic import ValidationError

from .complex import SimplicialComplex, bits, from_facets, mask_of, prune_to_facets
from .errors import ParseError
from .poset import Poset, poset_from_covers
from .schemas import ComplexPayload, ElementPayload, PosetPayload

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    """Non-blank, non-comment lines split into tokens, with 1-based line numbers."""
    out = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((number, stripped.split()))
    return out


def is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def parse_cplx(text: str) -> SimplicialComplex:
    """One facet per line, vertices separated by whitespace."""
    facets = [tokens for _, tokens in _content_lines(text)]
    return from_facets(facets)


def complex_to_payload(K: SimplicialComplex) -> ComplexPayload:
    facets = sorted(bits(f) for f in K.facets)
    return ComplexPayload(vertices=list(K.labels), facets=facets)


def complex_from_payload(payload: ComplexPayload) -> SimplicialComplex:
    n = len(payload.vertices)
    masks = []
    for facet in payload.facets:
        if any(not 0 <= i < n for i in facet):
            raise ParseError(f"Facet {facet} refers to a vertex id outside 0..{n - 1}")
        if len(set(facet)) != len(facet):
            raise ParseError(f"Facet {facet} repeats a vertex id")
        masks.append(mask_of(facet))
    return SimplicialComplex(tuple(payload.vertices), prune_to_facets(masks))


def read_complex(text: str) -> SimplicialComplex:
    """Complex from JSON (any payload carrying vertices and facets) or .cplx text."""
    if not is_json(text):
        return parse_cplx(text)
    try:
        payload = ComplexPayload.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"Input JSON is not a complex: {e.errors()[0]['msg']}")
    return complex_from_payload(payload)


def parse_poset(text: str) -> Poset:
    """Lines 'elem <label> <rank>' and 'cover <lower> <upper>'."""
    elements, covers = _poset_records(_content_lines(text))
    return poset_from_covers(elements, covers)


def _poset_records(lines) -> Tuple[List[Tuple[str, int]], List[Tuple[str, str]]]:
    elements, covers = [], []
    for number, tokens in lines:
        keyword = tokens[0]
        if keyword == "elem" and len(tokens) == 3:
            try:
                elements.append((tokens[1], int(tokens[2])))
            except ValueError:
                raise ParseError(f"Line {number}: rank must be an integer, got {tokens[2]!r}")
        elif keyword == "cover" and len(tokens) == 3:
            covers.append((tokens[1], tokens[2]))
        else:
            raise ParseError(f"Line {number}: cannot parse {' '.join(tokens)!r}")
    return elements, covers


def parse_catalog(text: str) -> List[Tuple[str, Poset, bool]]:
    """
    Catalog entries in .poset syntax. Each entry starts with 'name <id>' and
    carries one 'verdict collapsible|not' line.
    """
    entries = []
    current: List[Tuple[int, List[str]]] = []
    name, verdict = None, None

    def flush():
        if name is None:
            return
        if verdict is None:
            raise ParseError(f"Catalog entry {name!r} has no verdict line")
        elements, covers = _poset_records(current)
        entries.append((name, poset_from_covers(elements, covers), verdict))

    for number, tokens in _content_lines(text):
        if tokens[0] == "name" and len(tokens) == 2:
            flush()
            name, verdict, current = tokens[1], None, []
        elif tokens[0] == "verdict" and len(tokens) == 2:
            if tokens[1] not in ("collapsible", "not"):
                raise ParseError(f"Line {number}: verdict must be 'collapsible' or 'not'")
            if name is None:
                raise ParseError(f"Line {number}: verdict before any 'name' line")
            verdict = tokens[1] == "collapsible"
        else:
            if name is None:
                raise ParseError(f"Line {number}: catalog entries must start with a 'name' line")
            current.append((number, tokens))
    flush()
    if not entries:
        raise ParseError("Catalog contains no entries")
    return entries


def poset_to_payload(P: Poset) -> PosetPayload:
    return PosetPayload(
        elements=[ElementPayload(label=l, rank=r) for l, r in zip(P.labels, P.ranks)],
        covers=[[P.labels[a], P.labels[b]] for a, b in P.sorted_covers],
    )


def poset_from_payload(payload: PosetPayload) -> Poset:
    bad = [c for c in payload.covers if len(c) != 2]
    if bad:
        raise ParseError(f"Cover {bad[0]} must name exactly two elements")
    return poset_from_covers(
        [(e.label, e.rank) for e in payload.elements],
        [(c[0], c[1]) for c in payload.covers],
    )


def read_poset(text: str) -> Poset:
    if not is_json(text):
        return parse_poset(text)
    try:
        payload = PosetPayload.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"Input JSON is not a poset: {e.errors()[0]['msg']}")
    return poset_from_payload(payload)
