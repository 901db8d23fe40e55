"""Vertex and edge filtration functions on graphs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .graph import Edge, Graph
from .spectral import jacobi_eigh
from .transport import random_walk_measure, wasserstein1_exact
from .wl import ColorTable, kwl_refine, wl1_refine


@dataclass(frozen=True)
class FiltrationAssignment:
    """Real values on vertices and (optionally) edges.

    With ``lower_star`` set, edge values are the maximum of their endpoints and
    are recomputed whenever vertex values change.
    """

    vertex_values: tuple[float, ...]
    edge_values: Mapping[Edge, float] | None = None
    lower_star: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertex_values", tuple(float(x) for x in self.vertex_values))
        if self.edge_values is not None:
            object.__setattr__(
                self, "edge_values", {(min(e), max(e)): float(x) for e, x in self.edge_values.items()}
            )

    @classmethod
    def from_vertices(cls, g: Graph, values: Sequence[float]) -> "FiltrationAssignment":
        """Lower-star extension of a vertex function."""
        if len(values) != g.n:
            raise ValueError(f"expected {g.n} vertex values, got {len(values)}")
        values = tuple(float(x) for x in values)
        edges = {(u, v): max(values[u], values[v]) for u, v in g.sorted_edges}
        return cls(values, edges, lower_star=True)

    def edge_value(self, u: int, v: int) -> float:
        if self.edge_values is None:
            return max(self.vertex_values[u], self.vertex_values[v])
        return self.edge_values[(min(u, v), max(u, v))]

    def permuted(self, g: Graph, p: Sequence[int]) -> "FiltrationAssignment":
        """The same function carried along the relabelling ``v -> p[v]``."""
        vals = [0.0] * len(self.vertex_values)
        for v, x in enumerate(self.vertex_values):
            vals[p[v]] = x
        edges = None
        if self.edge_values is not None:
            edges = {(min(p[u], p[v]), max(p[u], p[v])): x for (u, v), x in self.edge_values.items()}
        return FiltrationAssignment(tuple(vals), edges, self.lower_star)

    def to_json(self) -> dict:
        edges = sorted(self.edge_values.items()) if self.edge_values is not None else []
        return {
            "vertices": list(self.vertex_values),
            "edges": [[u, v, x] for (u, v), x in edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiltrationAssignment":
        edges = {(int(u), int(v)): float(x) for u, v, x in data.get("edges", [])}
        return cls(tuple(data["vertices"]), edges or None)


def degree_filtration(g: Graph) -> FiltrationAssignment:
    return FiltrationAssignment.from_vertices(g, g.degrees())


def laplacian_matrix(g: Graph) -> np.ndarray:
    lap = np.zeros((g.n, g.n))
    for u, v in g.edges:
        lap[u, v] = lap[v, u] = -1.0
    for v in range(g.n):
        lap[v, v] = g.degree(v)
    return lap


def laplacian_eigh(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    if g.n == 0:
        raise ValueError("empty graph has no Laplacian spectrum")
    return jacobi_eigh(laplacian_matrix(g))


def laplacian_spectrum(g: Graph) -> list[float]:
    """Ascending eigenvalues of ``L = D - A``."""
    return [float(x) for x in laplacian_eigh(g)[0]]


def heat_kernel_signature(g: Graph, t: float = 10.0) -> list[float]:
    if t <= 0:
        raise ValueError("diffusion time must be positive")
    w, q = laplacian_eigh(g)
    weights = np.exp(-t * np.clip(w, 0.0, None))
    return [float(x) for x in (q * q) @ weights]


def laplacian_filtration(g: Graph, mode: str = "sorted_assign", t: float = 10.0) -> FiltrationAssignment:
    """Laplacian-based vertex filtration.

    ``sorted_assign`` gives vertex ``i`` the ``i``-th smallest eigenvalue. It
    depends on the input vertex order and is not permutation-equivariant.
    ``hks`` uses the heat kernel signature at diffusion time ``t``.
    """
    if mode == "sorted_assign":
        return FiltrationAssignment.from_vertices(g, laplacian_spectrum(g))
    if mode == "hks":
        return FiltrationAssignment.from_vertices(g, heat_kernel_signature(g, t))
    raise ValueError(f"unknown Laplacian mode {mode!r}")


class DisconnectedSupportError(ValueError):
    def __init__(self, x: int, y: int):
        super().__init__(f"no path between vertices {x} and {y}")
        self.pair = (x, y)


def ollivier_ricci(g: Graph, u: int, v: int, alpha: float = 0.0):
    """Exact curvature ``1 - W1(mu_u, mu_v)`` as a :class:`~fractions.Fraction`."""
    mu = random_walk_measure(g, u, alpha)
    nu = random_walk_measure(g, v, alpha)
    cost = []
    for x in mu.support:
        dist = g.bfs_distances(x)
        row = []
        for y in nu.support:
            if dist[y] is None:
                raise DisconnectedSupportError(x, y)
            row.append(dist[y])
        cost.append(row)
    return 1 - wasserstein1_exact(mu, nu, cost)


def orc_filtration(g: Graph, alpha: float = 0.0) -> FiltrationAssignment:
    """Vertices at -1, each edge at its Ollivier-Ricci curvature."""
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    edges = {(u, v): float(ollivier_ricci(g, u, v, alpha)) for u, v in g.sorted_edges}
    return FiltrationAssignment(tuple([-1.0] * g.n), edges)


def wl_filtration(
    g: Graph, h: int | None = None, table: ColorTable | None = None, init: str = "degree"
) -> FiltrationAssignment:
    """Vertex ``v`` gets the index of its 1-WL colour after ``h`` rounds.

    ``h=None`` runs to stabilisation. Indices come from ``table.ordinal`` so that
    graphs processed against one table, in a fixed order, share one enumeration.
    """
    if h is not None and h < 0:
        raise ValueError("iteration count must be non-negative")
    if table is None:
        table = ColorTable()
    coloring = wl1_refine(g, init, table)
    if h is None:
        colors = coloring.stable
    else:
        coloring.extend(h + 1)
        colors = coloring.iterations[h]
    values = [table.ordinal(colors[v]) for v in range(g.n)]
    return FiltrationAssignment.from_vertices(g, values)


def kwl_simplex_weights(g: Graph, k: int, table: ColorTable | None = None) -> dict[tuple[int, ...], int]:
    """Weights on the complete (k-1)-skeleton over the vertices of ``g``.

    Faces of dimension <= k-2 get 0; a (k-1)-simplex gets the ordinal of the
    multiset of stable k-WL colours over all orderings of its vertices.
    """
    if k not in (2, 3):
        raise ValueError(f"k must be 2 or 3, got {k}")
    if table is None:
        table = ColorTable()
    stable = kwl_refine(g, k, table).stable
    weights: dict[tuple[int, ...], int] = {}
    for d in range(1, k):
        for s in itertools.combinations(range(g.n), d):
            weights[s] = 0
    for s in itertools.combinations(range(g.n), k):
        colors = tuple(sorted(stable[p] for p in itertools.permutations(s)))
        weights[s] = table.ordinal(table.relabel(("simplex", colors)))
    return weights


def perturb_to_injective(f: FiltrationAssignment, eps: float) -> FiltrationAssignment:
    """Break vertex-value ties so that all vertex values become distinct.

    Tied vertices are shifted upward by ``j * step`` in ascending vertex order,
    with ``step = min(eps, smallest gap between distinct values) / (2n)``, which
    keeps every shift below ``eps`` and never reorders distinct values.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    vals = f.vertex_values
    n = len(vals)
    if len(set(vals)) == n:
        return f
    distinct = sorted(set(vals))
    gap = min((b - a for a, b in zip(distinct, distinct[1:])), default=math.inf)
    step = min(eps, gap) / (2 * n)
    groups: dict[float, list[int]] = {}
    for v, x in enumerate(vals):
        groups.setdefault(x, []).append(v)
    new = list(vals)
    for x, members in groups.items():
        for j, v in enumerate(members):
            new[v] = x + j * step
    if f.lower_star and f.edge_values is not None:
        edges = {(u, v): max(new[u], new[v]) for (u, v) in f.edge_values}
        return FiltrationAssignment(tuple(new), edges, lower_star=True)
    return FiltrationAssignment(tuple(new), f.edge_values, f.lower_star)
