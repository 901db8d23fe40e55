"""Distances and equality tests between persistence diagrams."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .persistence import INF, PersistenceDiagram

DEFAULT_THRESHOLD = 1e-8
# Recorded in harness output so readers know how essential classes were compared.
ESSENTIAL_CONVENTION = "essential points matched by sorted births; differing counts give infinity"

DIAGONAL = "diagonal"


@dataclass(frozen=True)
class Matching:
    """Pairs of expanded points; either side may be :data:`DIAGONAL`."""

    pairs: tuple[tuple[object, object], ...]
    cost: float


def _linf(p, q) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _half_persistence(p) -> float:
    return (p[1] - p[0]) / 2.0


def _max_matching(adj: list[list[int]], n_right: int) -> tuple[int, list[int | None]]:
    # Hopcroft-Karp would be faster; diagrams here stay in the hundreds of points.
    match_right: list[int | None] = [None] * n_right

    def augment(u, seen):
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if match_right[w] is None or augment(match_right[w], seen):
                match_right[w] = u
                return True
        return False

    size = 0
    for u in range(len(adj)):
        if augment(u, set()):
            size += 1
    return size, match_right


def _feasible(a, b, eps):
    # Left: a's points then one diagonal slot per b point; right: b's points
    # then one diagonal slot per a point.
    na, nb = len(a), len(b)
    adj: list[list[int]] = []
    for i, p in enumerate(a):
        row = [j for j, q in enumerate(b) if _linf(p, q) <= eps]
        if _half_persistence(p) <= eps:
            row.append(nb + i)
        adj.append(row)
    for j, q in enumerate(b):
        row = [j] if _half_persistence(q) <= eps else []
        row.extend(nb + i for i in range(na))
        adj.append(row)
    size, match_right = _max_matching(adj, nb + na)
    return size == na + nb, match_right


def _finite_bottleneck(a: list, b: list) -> tuple[float, Matching]:
    if not a and not b:
        return 0.0, Matching((), 0.0)
    candidates = {0.0}
    candidates.update(_half_persistence(p) for p in a)
    candidates.update(_half_persistence(q) for q in b)
    candidates.update(_linf(p, q) for p in a for q in b)
    cands = sorted(candidates)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(a, b, cands[mid])[0]:
            hi = mid
        else:
            lo = mid + 1
    eps = cands[lo]
    _, match_right = _feasible(a, b, eps)
    na, nb = len(a), len(b)
    pairs = []
    for r, l in enumerate(match_right):
        if r < nb:
            left = a[l] if l < na else DIAGONAL
            pairs.append((left, b[r]))
        elif l < na:
            pairs.append((a[l], DIAGONAL))
    return eps, Matching(tuple(pairs), eps)


def _essential_distance(a: PersistenceDiagram, b: PersistenceDiagram) -> float:
    ba = sorted(x for x, m in a.essential for _ in range(m))
    bb = sorted(x for x, m in b.essential for _ in range(m))
    if len(ba) != len(bb):
        return math.inf
    return max((abs(x - y) for x, y in zip(ba, bb)), default=0.0)


def _off_diagonal(d: PersistenceDiagram) -> list[tuple[float, float]]:
    return [(b, dd) for b, dd in d.expanded() if dd is not INF and dd != b]


def bottleneck_matching(d1: PersistenceDiagram, d2: PersistenceDiagram) -> tuple[float, Matching]:
    """Bottleneck distance together with an optimal matching of the finite points."""
    if d1.dimension != d2.dimension:
        raise ValueError(f"cannot compare dimension {d1.dimension} with dimension {d2.dimension}")
    finite, matching = _finite_bottleneck(_off_diagonal(d1), _off_diagonal(d2))
    return max(finite, _essential_distance(d1, d2)), matching


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Bottleneck distance; ``math.inf`` when the essential counts differ."""
    return bottleneck_matching(d1, d2)[0]


def diagrams_equal(d1: PersistenceDiagram, d2: PersistenceDiagram, tol: float = 0.0) -> bool:
    """Multiset equality, diagonal points included."""
    if d1.dimension != d2.dimension or len(d1.points) != len(d2.points):
        return False
    for (b1, e1, m1), (b2, e2, m2) in zip(d1.points, d2.points):
        if m1 != m2 or abs(b1 - b2) > tol:
            return False
        if (e1 is INF) != (e2 is INF):
            return False
        if e1 is not INF and abs(e1 - e2) > tol:
            return False
    return True


def separating_dimensions(
    diags1: Sequence[PersistenceDiagram], diags2: Sequence[PersistenceDiagram], threshold: float = DEFAULT_THRESHOLD
) -> list[int]:
    if len(diags1) != len(diags2):
        raise ValueError("diagram lists cover different dimension ranges")
    return [
        d1.dimension for d1, d2 in zip(diags1, diags2) if bottleneck_distance(d1, d2) > threshold
    ]


def distinguishes(
    diags1: Sequence[PersistenceDiagram], diags2: Sequence[PersistenceDiagram], threshold: float = DEFAULT_THRESHOLD
) -> bool:
    """True iff some dimension's bottleneck distance exceeds ``threshold``."""
    return bool(separating_dimensions(diags1, diags2, threshold))
