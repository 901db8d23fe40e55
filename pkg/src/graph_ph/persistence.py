"""Persistence diagrams of filtered complexes over GF(2)."""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import FilteredComplex
from .graph import Graph


@functools.total_ordering
class _Infinity:
    """Death value of an essential class; sorts after every real number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("inf-marker")

    def __repr__(self):
        return "INF"

    def __float__(self):
        return float("inf")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class UnionFind:
    """Disjoint sets with union by size and path compression."""

    def __init__(self, elements: Iterable = ()):
        self.parent: dict = {}
        self.size: dict = {}
        for x in elements:
            self.add(x)

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        """Merge the sets of ``x`` and ``y``; returns the surviving root."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return rx

    def roots(self) -> list:
        return [x for x in self.parent if self.parent[x] == x]


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of ``(birth, death, multiplicity)``; ``death`` may be :data:`INF`."""

    dimension: int
    points: tuple[tuple[float, object, int], ...] = ()

    @classmethod
    def from_pairs(cls, dimension: int, pairs: Iterable[tuple[float, object]]) -> "PersistenceDiagram":
        counts = Counter(pairs)
        return cls(dimension, tuple(sorted((b, d, m) for (b, d), m in counts.items())))

    def __post_init__(self):
        for b, d, m in self.points:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if d is not INF and d < b:
                raise ValueError(f"death {d} precedes birth {b}")
        merged = Counter()
        for b, d, m in self.points:
            merged[(b, d)] += m
        object.__setattr__(self, "points", tuple(sorted((b, d, m) for (b, d), m in merged.items())))

    @property
    def finite(self) -> list[tuple[float, float, int]]:
        return [p for p in self.points if p[1] is not INF]

    @property
    def essential(self) -> list[tuple[float, int]]:
        return [(b, m) for b, d, m in self.points if d is INF]

    def total_multiplicity(self) -> int:
        return sum(m for _, _, m in self.points)

    def expanded(self) -> list[tuple[float, object]]:
        return [(b, d) for b, d, m in self.points for _ in range(m)]

    def multiplicity(self, birth, death) -> int:
        return sum(m for b, d, m in self.points if b == birth and d == death)

    def to_json(self) -> dict:
        return {
            "dim": self.dimension,
            "points": [[b, "inf" if d is INF else d, m] for b, d, m in self.points],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PersistenceDiagram":
        pts = []
        for b, d, m in data["points"]:
            pts.append((float(b), INF if d == "inf" else float(d), int(m)))
        return cls(int(data["dim"]), tuple(pts))


@dataclass(frozen=True)
class BettiVector:
    betti: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.betti[i] if i < len(self.betti) else 0

    def __len__(self):
        return len(self.betti)


def connected_components(g: Graph) -> tuple[list[int], int]:
    """Component id per vertex (numbered by smallest member) and component count."""
    uf = UnionFind(range(g.n))
    for u, v in g.sorted_edges:
        uf.union(u, v)
    ids: dict[int, int] = {}
    labels = []
    for v in range(g.n):
        labels.append(ids.setdefault(uf.find(v), len(ids)))
    return labels, len(ids)


def persistence_dim0(c: FilteredComplex) -> PersistenceDiagram:
    """Zero-dimensional diagram by a union-find sweep (elder rule).

    On a merge the component with the later birth dies; on equal births the one
    whose creating vertex comes later in the filtration order dies.
    """
    uf = UnionFind()
    oldest: dict[tuple[int, ...], tuple[float, int]] = {}
    pairs = []
    for j, s in enumerate(c.simplices):
        if s.dim == 0:
            v = s.vertices[0]
            uf.add(v)
            oldest[v] = (s.value, j)
        elif s.dim == 1:
            ru, rv = uf.find(s.vertices[0]), uf.find(s.vertices[1])
            if ru == rv:
                continue
            young, old = sorted((oldest[ru], oldest[rv]), reverse=True)
            pairs.append((young[0], s.value))
            root = uf.union(ru, rv)
            oldest[root] = old
    for r in uf.roots():
        pairs.append((oldest[r][0], INF))
    return PersistenceDiagram.from_pairs(0, pairs)


class BoundaryMatrix:
    """Columns of face indices, one per simplex, in filtration order."""

    def __init__(self, c: FilteredComplex):
        index = c.index
        self.columns: list[list[int]] = [sorted(index[f] for f in s.faces()) for s in c.simplices]

    def __len__(self):
        return len(self.columns)

    def reduce(self) -> list[int | None]:
        """Standard left-to-right reduction over GF(2); returns ``low`` per column."""
        cols = [sum(1 << i for i in col) for col in self.columns]
        lows: list[int | None] = [None] * len(cols)
        pivot_of: dict[int, int] = {}
        for j, col in enumerate(cols):
            while col:
                low = col.bit_length() - 1
                other = pivot_of.get(low)
                if other is None:
                    pivot_of[low] = j
                    lows[j] = low
                    break
                col ^= cols[other]
            cols[j] = col
        return lows


def persistence_pairs(c: FilteredComplex) -> tuple[list[tuple[int, int]], list[int]]:
    """Index pairs ``(creator, destroyer)`` and the unpaired creators."""
    lows = BoundaryMatrix(c).reduce()
    pairs = [(low, j) for j, low in enumerate(lows) if low is not None]
    paired = {i for i, _ in pairs} | {j for _, j in pairs}
    essential = [j for j in range(len(lows)) if j not in paired]
    return pairs, essential


def persistence_reduction(c: FilteredComplex) -> list[PersistenceDiagram]:
    """Diagrams in dimensions ``0..k_max``; zero-persistence points are kept."""
    pairs, essential = persistence_pairs(c)
    by_dim: list[list] = [[] for _ in range(c.k_max + 1)]
    simp = c.simplices
    for i, j in pairs:
        by_dim[simp[i].dim].append((simp[i].value, simp[j].value))
    for i in essential:
        by_dim[simp[i].dim].append((simp[i].value, INF))
    return [PersistenceDiagram.from_pairs(d, pts) for d, pts in enumerate(by_dim)]


def betti_numbers(c: FilteredComplex) -> BettiVector:
    _, essential = persistence_pairs(c)
    betti = [0] * (c.k_max + 1)
    for i in essential:
        betti[c.simplices[i].dim] += 1
    return BettiVector(tuple(betti))


def persistent_betti(
    diagrams: Sequence[PersistenceDiagram], dim: int, i: int, j: int, values: Sequence[float]
) -> int:
    """Classes of dimension ``dim`` born by ``values[i]`` and alive past ``values[j]``."""
    if not 0 <= i <= j < len(values):
        raise IndexError(f"indices ({i}, {j}) out of range for {len(values)} values")
    ai, aj = values[i], values[j]
    total = 0
    for d in diagrams:
        if d.dimension != dim:
            continue
        for b, death, m in d.points:
            if b <= ai and (death is INF or death > aj):
                total += m
    return total


def diagram_multiplicities(
    diagrams: Sequence[PersistenceDiagram], dim: int, values: Sequence[float]
) -> dict[tuple[float, object], int]:
    """Recover the off-diagonal and essential points from persistent Betti numbers.

    ``mu(i, j) = (b(i, j-1) - b(i, j)) - (b(i-1, j-1) - b(i-1, j))`` for ``i < j`` and
    ``mu(i, inf) = b(i, last) - b(i-1, last)``. Points with birth equal to death
    never register in a persistent Betti number and are not recovered.
    """
    last = len(values) - 1

    def beta(i, j):
        return 0 if i < 0 else persistent_betti(diagrams, dim, i, j, values)

    out = {}
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            mu = (beta(i, j - 1) - beta(i, j)) - (beta(i - 1, j - 1) - beta(i - 1, j))
            if mu:
                out[(values[i], values[j])] = mu
        mu_inf = beta(i, last) - beta(i - 1, last)
        if mu_inf:
            out[(values[i], INF)] = mu_inf
    return out


_DIAMETER_VARIANTS = {"safe": "safe", "first_creator": "first_creator", "paper": "first_creator"}


def diameter_bound(c: FilteredComplex, variant: str = "safe") -> int:
    """Count destroyer edges of the zero-dimensional sweep.

    ``safe`` counts all of them (``n - beta_0``) and always bounds the BFS
    diameter of a connected graph. ``first_creator`` (alias ``paper``) stops at
    the first edge that closes a cycle; it can undercount when a cycle is
    completed early in the filtration.
    """
    if variant not in _DIAMETER_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    stop_early = _DIAMETER_VARIANTS[variant] == "first_creator"
    uf = UnionFind()
    count = 0
    for s in c.simplices:
        if s.dim == 0:
            uf.add(s.vertices[0])
        elif s.dim == 1:
            u, v = s.vertices
            if uf.find(u) == uf.find(v):
                if stop_early:
                    break
                continue
            uf.union(u, v)
            count += 1
    return count
