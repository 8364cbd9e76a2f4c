"""
Reduced simplicial homology over Z/2 (numpy elimination) and over Z (Smith
normal form on Python ints).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from core.complex import SimplicialComplex, bits, euler_characteristic, simplices_by_dimension
from core.errors import BadParameter, ConsistencyError
from core.schemas import BettiPayload

logger = logging.getLogger(__name__)

COEFFICIENTS = ("Z2", "Z")


@dataclass
class BoundaryMatrix:
    """Signed boundary map from p-simplices (columns) to (p-1)-simplices (rows)."""

    degree: int
    rows: List[int]
    cols: List[int]
    matrix: np.ndarray

    def mod2(self) -> np.ndarray:
        return (self.matrix % 2).astype(np.uint8)


@dataclass
class BettiVector:
    betti: List[int]
    coeff: str
    euler: int
    torsion: Dict[int, List[int]] = field(default_factory=dict)

    def to_payload(self) -> BettiPayload:
        return BettiPayload(
            betti=self.betti,
            coeff=self.coeff,
            euler=self.euler,
            torsion={str(p): t for p, t in self.torsion.items()},
        )


def boundary_matrix(K: SimplicialComplex, p: int, grouped: Optional[List[List[int]]] = None) -> BoundaryMatrix:
    """
    Degree-p boundary in canonical simplex order. Degree 0 is the
    augmentation onto the empty simplex, which makes the homology reduced.
    """
    grouped = grouped if grouped is not None else simplices_by_dimension(K)
    if p < 0 or p >= len(grouped):
        raise BadParameter(f"No simplices of dimension {p}")
    cols = grouped[p]
    if p == 0:
        return BoundaryMatrix(0, [0], cols, np.ones((1, len(cols)), dtype=np.int64))
    rows = grouped[p - 1]
    row_index = {s: i for i, s in enumerate(rows)}
    matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, tau in enumerate(cols):
        for position, v in enumerate(bits(tau)):
            matrix[row_index[tau & ~(1 << v)], j] = -1 if position % 2 else 1
    return BoundaryMatrix(p, rows, cols, matrix)


def rank_z2(matrix: np.ndarray) -> int:
    a = (matrix % 2).astype(np.uint8)
    n_rows, n_cols = a.shape
    rank = 0
    for c in range(n_cols):
        if rank == n_rows:
            break
        pivots = np.nonzero(a[rank:, c])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != rank]
        a[others] ^= a[rank]
        rank += 1
    return rank


def smith_diagonal(matrix: np.ndarray) -> List[int]:
    """Nonzero invariant factors of an integer matrix, in order."""
    a = [[int(x) for x in row] for row in matrix.tolist()]
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    diagonal = []
    t = 0
    while t < n_rows and t < n_cols:
        pivot = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, n_cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, n_rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if not done:
                continue
            # Every remaining entry must be divisible by the pivot.
            for i in range(t + 1, n_rows):
                if any(a[i][j] % a[t][t] for j in range(t + 1, n_cols)):
                    for j in range(t, n_cols):
                        a[t][j] += a[i][j]
                    done = False
                    break
        diagonal.append(abs(a[t][t]))
        t += 1
    return diagonal


def reduced_betti(K: SimplicialComplex, coeff: str = "Z2") -> BettiVector:
    """Reduced Betti numbers b~_0..b~_dim K; torsion coefficients are reported for Z."""
    coeff = coeff.upper()
    if coeff not in COEFFICIENTS:
        raise BadParameter(f"Unknown coefficients {coeff!r}; expected Z2 or Z")
    grouped = simplices_by_dimension(K)
    top = len(grouped) - 1
    ranks = []
    torsion: Dict[int, List[int]] = {}
    for p in range(top + 1):
        boundary = boundary_matrix(K, p, grouped)
        if coeff == "Z2":
            ranks.append(rank_z2(boundary.mod2()))
        else:
            factors = smith_diagonal(boundary.matrix)
            ranks.append(len(factors))
            # Torsion in degree p-1 comes from the image of the degree-p boundary.
            extra = [d for d in factors if d > 1]
            if extra and p >= 1:
                torsion[p - 1] = extra
    ranks.append(0)
    betti = [len(grouped[p]) - ranks[p] - ranks[p + 1] for p in range(top + 1)]
    euler = euler_characteristic(K)
    if sum((-1) ** p * b for p, b in enumerate(betti)) != euler - 1:
        raise ConsistencyError("Alternating Betti sum disagrees with the Euler characteristic")
    logger.debug(f"Reduced Betti over {coeff}: {betti}")
    return BettiVector(betti=betti, coeff=coeff, euler=euler, torsion=torsion)


def matches_sphere(K: SimplicialComplex, n: int) -> bool:
    """Homology of S^n over Z/2. A necessary condition for K to be a homotopy n-sphere."""
    if n < 0:
        raise BadParameter(f"Sphere dimension must be nonnegative, got {n}")
    betti = reduced_betti(K).betti
    return n < len(betti) and betti[n] == 1 and sum(betti) == 1


def boundary_squares_to_zero(K: SimplicialComplex) -> bool:
    grouped = simplices_by_dimension(K)
    for p in range(1, len(grouped)):
        product = boundary_matrix(K, p - 1, grouped).matrix @ boundary_matrix(K, p, grouped).matrix
        if np.any(product):
            return False
    return True
