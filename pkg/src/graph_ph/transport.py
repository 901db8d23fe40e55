"""Exact first Wasserstein distance between finitely supported measures.

Masses are carried as exact rationals and scaled to integer capacities over a
common denominator, so the min-cost flow solve below never rounds.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Sequence

from .graph import Graph

MASS_TOL = 1e-12


def _as_fraction(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    # floats arrive as e.g. 1/3 rounded; recover the intended small rational
    return Fraction(x).limit_denominator(10**12)


@dataclass(frozen=True)
class DiscreteMeasure:
    support: tuple[int, ...]
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        support = tuple(int(s) for s in self.support)
        mass = tuple(_as_fraction(x) for x in self.mass)
        if len(support) != len(mass):
            raise ValueError("support and mass differ in length")
        if len(set(support)) != len(support):
            raise ValueError("support ids must be distinct")
        if any(x < 0 for x in mass):
            raise ValueError("masses must be non-negative")
        if abs(float(sum(mass)) - 1.0) > MASS_TOL:
            raise ValueError(f"masses sum to {float(sum(mass))!r}, not 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "mass", mass)

    def __len__(self):
        return len(self.support)


def random_walk_measure(g: Graph, u: int, alpha: float = 0.0) -> DiscreteMeasure:
    """Mass ``alpha`` at ``u`` and ``(1 - alpha) / deg(u)`` on each neighbour."""
    a = _as_fraction(alpha)
    if not 0 <= a <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    nbrs = sorted(g.neighbors(u))
    if not nbrs:
        if a != 1:
            raise ValueError(f"vertex {u} is isolated; its walk measure needs alpha = 1")
        return DiscreteMeasure((u,), (Fraction(1),))
    share = (1 - a) / len(nbrs)
    support, mass = [], []
    if a > 0:
        support.append(u)
        mass.append(a)
    for w in nbrs:
        if share > 0:
            support.append(w)
            mass.append(share)
    return DiscreteMeasure(tuple(support), tuple(mass))


def _integer_masses(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[int], list[int]]:
    denom = 1
    for x in list(a) + list(b):
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    ia = [int(x * denom) for x in a]
    ib = [int(x * denom) for x in b]
    # float-derived inputs can leave the totals a few units apart
    diff = sum(ia) - sum(ib)
    if diff:
        if diff > 0:
            ib[max(range(len(ib)), key=ib.__getitem__)] += diff
        else:
            ia[max(range(len(ia)), key=ia.__getitem__)] -= diff
    return ia, ib


def _min_cost_flow(supply: list[int], demand: list[int], cost) -> tuple[dict, object]:
    """Successive shortest paths on the bipartite transport network."""
    na, nb = len(supply), len(demand)
    src, snk = na + nb, na + nb + 1
    n_nodes = na + nb + 2
    # arc: [to, residual capacity, cost, index of reverse arc]
    arcs: list[list[list]] = [[] for _ in range(n_nodes)]

    def add(u, v, cap, c):
        arcs[u].append([v, cap, c, len(arcs[v])])
        arcs[v].append([u, 0, -c, len(arcs[u]) - 1])

    big = sum(supply)
    for i, s in enumerate(supply):
        if s:
            add(src, i, s, 0)
    for j, d in enumerate(demand):
        if d:
            add(na + j, snk, d, 0)
    for i in range(na):
        for j in range(nb):
            add(i, na + j, big, cost[i][j])

    total_cost = 0
    remaining = big
    while remaining > 0:
        # Bellman-Ford / SPFA; residual costs can be negative
        dist = [None] * n_nodes
        prev: list[tuple[int, int] | None] = [None] * n_nodes
        dist[src] = 0
        queue = deque([src])
        in_queue = [False] * n_nodes
        in_queue[src] = True
        while queue:
            u = queue.popleft()
            in_queue[u] = False
            for k, (v, cap, c, _) in enumerate(arcs[u]):
                if cap > 0 and (dist[v] is None or dist[u] + c < dist[v]):
                    dist[v] = dist[u] + c
                    prev[v] = (u, k)
                    if not in_queue[v]:
                        in_queue[v] = True
                        queue.append(v)
        if dist[snk] is None:
            raise RuntimeError("transport network is infeasible")
        push = remaining
        v = snk
        while v != src:
            u, k = prev[v]
            push = min(push, arcs[u][k][1])
            v = u
        v = snk
        while v != src:
            u, k = prev[v]
            arc = arcs[u][k]
            arc[1] -= push
            arcs[v][arc[3]][1] += push
            v = u
        total_cost += push * dist[snk]
        remaining -= push

    flow = {}
    for i in range(na):
        for v, cap, c, rev in arcs[i]:
            if na <= v < na + nb:
                sent = arcs[v][rev][1]
                if sent:
                    flow[(i, v - na)] = sent
    return flow, total_cost


def transport_plan(a: DiscreteMeasure, b: DiscreteMeasure, cost) -> tuple[dict[tuple[int, int], Fraction], object]:
    """Optimal plan as ``{(i, j): mass}`` over support indices, plus its cost."""
    if len(cost) != len(a) or any(len(row) != len(b) for row in cost):
        raise ValueError(f"cost matrix shape does not match supports {len(a)}x{len(b)}")
    if abs(float(sum(a.mass)) - float(sum(b.mass))) > MASS_TOL:
        raise ValueError("measures carry different total mass")
    for row in cost:
        for c in row:
            if not (c >= 0 and math.isfinite(c)):
                raise ValueError(f"cost entries must be finite and non-negative, got {c}")
    # exact costs keep the shortest-path search free of rounding cycles
    exact = [[c if isinstance(c, Integral) else Fraction(c) for c in row] for row in cost]
    ia, ib = _integer_masses(a.mass, b.mass)
    denom = sum(ia)
    flow, total = _min_cost_flow(ia, ib, exact)
    plan = {key: Fraction(x, denom) for key, x in flow.items()}
    return plan, Fraction(total) / denom


def wasserstein1(a: DiscreteMeasure, b: DiscreteMeasure, cost) -> float:
    """Exact earth mover's distance; ``cost[i][j]`` prices moving ``a.support[i]`` to ``b.support[j]``."""
    return float(transport_plan(a, b, cost)[1])


def wasserstein1_exact(a: DiscreteMeasure, b: DiscreteMeasure, cost) -> Fraction:
    """As :func:`wasserstein1` but returns the rational value; costs must be integers."""
    if any(not isinstance(c, Integral) for row in cost for c in row):
        raise TypeError("exact result needs integer costs")
    return transport_plan(a, b, [[int(c) for c in row] for row in cost])[1]
