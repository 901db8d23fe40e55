"""Filtered clique complexes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .filtration import FiltrationAssignment, kwl_simplex_weights
from .graph import Graph
from .wl import ColorTable


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple[int, ...]
    value: float

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a simplex needs at least one vertex")
        if any(a >= b for a, b in zip(self.vertices, self.vertices[1:])):
            raise ValueError(f"simplex vertices must be strictly ascending: {self.vertices}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def faces(self) -> Iterator[tuple[int, ...]]:
        """Codimension-1 faces, as vertex tuples."""
        if self.dim == 0:
            return
        for i in range(len(self.vertices)):
            yield self.vertices[:i] + self.vertices[i + 1:]

    def sort_key(self):
        return (self.value, self.dim, self.vertices)


class FilteredComplex:
    """Simplices sorted by (value, dimension, vertex tuple).

    Every prefix of the list is a subcomplex, provided each simplex is valued at
    least as high as its faces (checked on construction).
    """

    def __init__(self, simplices, k_max: int | None = None):
        self.simplices: list[Simplex] = sorted(simplices, key=Simplex.sort_key)
        self.k_max = max((s.dim for s in self.simplices), default=0) if k_max is None else k_max
        self._validate()

    def _validate(self):
        index = self.index
        if len(index) != len(self.simplices):
            raise ValueError("duplicate simplex")
        for j, s in enumerate(self.simplices):
            for face in s.faces():
                i = index.get(face)
                if i is None:
                    raise ValueError(f"face {face} of {s.vertices} is missing")
                if self.simplices[i].value > s.value:
                    raise ValueError(f"face {face} enters after its coface {s.vertices}")

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {s.vertices: j for j, s in enumerate(self.simplices)}

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def counts(self) -> list[int]:
        out = [0] * (self.k_max + 1)
        for s in self.simplices:
            out[s.dim] += 1
        return out

    def values(self) -> list[float]:
        """The sorted distinct filtration values."""
        return sorted({s.value for s in self.simplices})

    def prefix(self, value: float) -> list[Simplex]:
        return [s for s in self.simplices if s.value <= value]

    def to_json(self) -> list[dict]:
        return [{"vertices": list(s.vertices), "value": s.value} for s in self.simplices]

    @classmethod
    def from_json(cls, data: list[dict]) -> "FilteredComplex":
        return cls(Simplex(tuple(d["vertices"]), float(d["value"])) for d in data)


def cliques(g: Graph, max_size: int) -> Iterator[tuple[int, ...]]:
    """All cliques with at most ``max_size`` vertices, as ascending tuples."""
    adj = g.adjacency

    def extend(clique, candidates):
        yield clique
        if len(clique) == max_size:
            return
        for i, w in enumerate(candidates):
            yield from extend(clique + (w,), [x for x in candidates[i + 1:] if x in adj[w]])

    for v in range(g.n):
        yield from extend((v,), sorted(w for w in adj[v] if w > v))


def clique_complex(g: Graph, f: FiltrationAssignment, k: int = 1) -> FilteredComplex:
    """Clique complex up to dimension ``k`` valued by ``f``.

    A simplex takes the maximum of its vertex values and, when ``f`` carries
    edge values, of the values of its edges.
    """
    if k < 1:
        raise ValueError("expansion dimension k must be >= 1")
    if len(f.vertex_values) != g.n:
        raise ValueError(f"filtration covers {len(f.vertex_values)} vertices, graph has {g.n}")
    if f.edge_values is not None:
        missing = g.edges - set(f.edge_values)
        if missing:
            raise ValueError(f"filtration is missing values for edges {sorted(missing)[:5]}")
    vals = f.vertex_values
    simplices = []
    for c in cliques(g, k + 1):
        value = max(vals[v] for v in c)
        if f.edge_values is not None and len(c) > 1:
            value = max(value, max(f.edge_values[e] for e in itertools.combinations(c, 2)))
        simplices.append(Simplex(c, value))
    return FilteredComplex(simplices, k)


def kwl_complex(g: Graph, k: int, table: ColorTable | None = None) -> FilteredComplex:
    """Complete (k-1)-skeleton on the vertices, weighted by k-WL colours."""
    return FilteredComplex(
        (Simplex(s, float(w)) for s, w in kwl_simplex_weights(g, k, table).items()), k - 1
    )


def euler_characteristic(c: FilteredComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(c.counts()))
