"""1-WL colour refinement and folklore k-WL with session-shared colour tables."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable

from .graph import Graph

KWL_MAX_N = {2: 40, 3: 16}


class ColorTable:
    """Injective RELABEL: structured keys to dense integer colour ids.

    One table is shared by every graph in a comparison session, so equal ids
    mean equal colours across graphs. ``ordinal`` enumerates colours in order
    of first request, starting at 1.
    """

    _next_session = 0

    def __init__(self):
        self._ids: dict[Hashable, int] = {}
        self._keys: list[Hashable] = []
        self._ordinals: dict[int, int] = {}
        ColorTable._next_session += 1
        self.session = ColorTable._next_session

    def __len__(self):
        return len(self._keys)

    def relabel(self, key: Hashable) -> int:
        cid = self._ids.get(key)
        if cid is None:
            cid = len(self._keys)
            self._ids[key] = cid
            self._keys.append(key)
        return cid

    def key(self, color: int) -> Hashable:
        return self._keys[color]

    def ordinal(self, color: int) -> int:
        idx = self._ordinals.get(color)
        if idx is None:
            idx = len(self._ordinals) + 1
            self._ordinals[color] = idx
        return idx

    def export(self) -> dict[int, list]:
        """Key structure of every colour; keys reference earlier ids only."""
        return {cid: _jsonable(key) for cid, key in enumerate(self._keys)}


def _jsonable(key):
    if isinstance(key, tuple):
        return [_jsonable(x) for x in key]
    return key


@dataclass
class WLColoring:
    """Per-iteration colourings of the vertices (1-WL) or k-tuples (k-WL).

    ``iterations[i]`` maps each vertex or tuple to its colour id after ``i``
    rounds; ``stable_at`` is the first round whose partition is not split any
    further by the next round, so ``iterations[stable_at]`` is the stable colouring.
    """

    iterations: list[dict]
    stable_at: int
    table: ColorTable = field(repr=False)
    _step: Callable[[dict], dict] = field(repr=False, compare=False)

    @property
    def stable(self) -> dict:
        return self.iterations[self.stable_at]

    def histogram(self, i: int) -> Counter:
        self.extend(i + 1)
        return Counter(self.iterations[i].values())

    def extend(self, count: int) -> None:
        """Run further rounds until ``count`` iterations are recorded."""
        while len(self.iterations) < count:
            self.iterations.append(self._step(self.iterations[-1]))

    def num_cells(self, i: int) -> int:
        return len(set(self.iterations[i].values()))


def _refine_until_stable(initial: dict, step, table: ColorTable, max_rounds: int) -> WLColoring:
    iterations = [initial]
    stable_at = None
    for _ in range(max_rounds + 1):
        nxt = step(iterations[-1])
        iterations.append(nxt)
        if len(set(nxt.values())) == len(set(iterations[-2].values())):
            # a refinement with equal cell count is the same partition
            stable_at = len(iterations) - 2
            break
    if stable_at is None:
        raise RuntimeError("refinement failed to stabilise")
    iterations.pop()
    return WLColoring(iterations, stable_at, table, step)


def wl1_refine(g: Graph, init: str = "degree", table: ColorTable | None = None) -> WLColoring:
    """Colour refinement ``C_i(v) = RELABEL(C_{i-1}(v), {{C_{i-1}(u) : u ~ v}})``."""
    if table is None:
        table = ColorTable()
    if init == "degree":
        initial = {v: table.relabel(("deg", g.degree(v))) for v in range(g.n)}
    elif init == "labels":
        if g.vertex_labels is None:
            raise ValueError("labels initialisation requested but the graph has no vertex labels")
        initial = {v: table.relabel(("label", g.vertex_labels[v])) for v in range(g.n)}
    elif init == "constant":
        initial = {v: table.relabel(("const",)) for v in range(g.n)}
    else:
        raise ValueError(f"unknown init {init!r}")

    adj = g.adjacency

    def step(colors):
        return {
            v: table.relabel((colors[v], tuple(sorted(colors[u] for u in adj[v]))))
            for v in range(g.n)
        }

    return _refine_until_stable(initial, step, table, g.n)


def _atomic_type(g: Graph, tup: tuple[int, ...]) -> tuple:
    k = len(tup)
    eq = tuple(tup[i] == tup[j] for i in range(k) for j in range(i + 1, k))
    adj = tuple(g.has_edge(tup[i], tup[j]) for i in range(k) for j in range(i + 1, k) if tup[i] != tup[j])
    labels = tuple(g.vertex_labels[v] for v in tup) if g.vertex_labels is not None else ()
    return ("atp", eq, adj, labels)


def kwl_refine(g: Graph, k: int, table: ColorTable | None = None) -> WLColoring:
    """Folklore k-WL on all ``n**k`` vertex tuples.

    A tuple's new colour combines its old colour with the multiset, over every
    vertex ``u`` of the graph, of the k-tuple of colours obtained by writing
    ``u`` into each position in turn.
    """
    if k not in KWL_MAX_N:
        raise ValueError(f"k must be 2 or 3, got {k}")
    if g.n > KWL_MAX_N[k]:
        raise ValueError(f"k={k} refinement limited to n <= {KWL_MAX_N[k]} (got n={g.n})")
    if table is None:
        table = ColorTable()
    tuples = list(itertools.product(range(g.n), repeat=k))
    initial = {t: table.relabel(_atomic_type(g, t)) for t in tuples}
    verts = range(g.n)

    def step(colors):
        out = {}
        for t in tuples:
            nbr = []
            for u in verts:
                nbr.append(tuple(colors[t[:j] + (u,) + t[j + 1:]] for j in range(k)))
            nbr.sort()
            out[t] = table.relabel((colors[t], tuple(nbr)))
        return out

    return _refine_until_stable(initial, step, table, len(tuples))


def colorings_distinguish(c1: WLColoring, c2: WLColoring) -> bool:
    """True iff the colour histograms differ at some iteration."""
    if c1.table is not c2.table:
        raise ValueError("colourings come from different colour tables")
    rounds = max(c1.stable_at, c2.stable_at) + 1
    for i in range(rounds):
        if c1.histogram(i) != c2.histogram(i):
            return True
    return False


def histograms(c: WLColoring) -> list[dict[int, int]]:
    return [dict(sorted(Counter(it.values()).items())) for it in c.iterations[: c.stable_at + 1]]
