"""Undirected simple graphs, graph6 I/O, fixtures and small-scale enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertices ``0..n-1``.

    ``edges`` holds each edge once as an ascending pair. Optional labels are
    stored as a tuple indexed by vertex and a mapping keyed by ascending edge.
    """

    n: int
    edges: frozenset[Edge] = frozenset()
    vertex_labels: tuple[int, ...] | None = None
    edge_labels: Mapping[Edge, int] | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
            normalized.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))
        if self.vertex_labels is not None:
            labels = tuple(int(x) for x in self.vertex_labels)
            if len(labels) != self.n:
                raise ValueError(f"expected {self.n} vertex labels, got {len(labels)}")
            if any(x < 0 for x in labels):
                raise ValueError("vertex labels must be natural numbers")
            object.__setattr__(self, "vertex_labels", labels)
        if self.edge_labels is not None:
            labels = {_edge(*e): int(x) for e, x in self.edge_labels.items()}
            if set(labels) != self.edges:
                raise ValueError("edge labels must cover exactly the edge set")
            object.__setattr__(self, "edge_labels", labels)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.vertex_labels == other.vertex_labels
            and (self.edge_labels or None) == (other.edge_labels or None)
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.vertex_labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], **labels) -> "Graph":
        edge_set = set()
        for u, v in edges:
            e = _edge(int(u), int(v))
            if e in edge_set:
                raise ValueError(f"duplicate edge {e}")
            edge_set.add(e)
        return cls(n, frozenset(edge_set), **labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def bfs_distances(self, source: int) -> list[int | None]:
        dist: list[int | None] = [None] * self.n
        dist[source] = 0
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if dist[w] is None:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def diameter(self) -> int | None:
        """BFS diameter; ``None`` for disconnected graphs."""
        best = 0
        for s in range(self.n):
            dist = self.bfs_distances(s)
            if any(d is None for d in dist):
                return None
            best = max(best, max(dist))
        return best


@dataclass(frozen=True)
class VertexPermutation:
    """Bijection ``v -> mapping[v]`` on ``0..n-1``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError("mapping is not a bijection on [0, n)")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.mapping)

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def inverse(self) -> "VertexPermutation":
        inv = [0] * len(self.mapping)
        for v, w in enumerate(self.mapping):
            inv[w] = v
        return VertexPermutation(tuple(inv))


def permute(g: Graph, p: VertexPermutation | Sequence[int]) -> Graph:
    """Relabel ``g`` so that vertex ``v`` becomes ``p(v)``; labels follow their vertices."""
    if not isinstance(p, VertexPermutation):
        p = VertexPermutation(tuple(p))
    if len(p) != g.n:
        raise ValueError(f"permutation of size {len(p)} applied to graph on {g.n} vertices")
    edges = frozenset(_edge(p(u), p(v)) for u, v in g.edges)
    vertex_labels = None
    if g.vertex_labels is not None:
        relabelled = [0] * g.n
        for v, lab in enumerate(g.vertex_labels):
            relabelled[p(v)] = lab
        vertex_labels = tuple(relabelled)
    edge_labels = None
    if g.edge_labels is not None:
        edge_labels = {_edge(p(u), p(v)): lab for (u, v), lab in g.edge_labels.items()}
    return Graph(g.n, edges, vertex_labels, edge_labels)


# --- graph6 -----------------------------------------------------------------


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


_G6_HEADER = ">>graph6<<"


def graph6_size_header(n: int) -> str:
    """The 1-, 4- or 8-byte size prefix for ``n`` vertices."""
    if n < 0 or n >= 1 << 36:
        raise ValueError(f"graph6 cannot encode n={n}")
    if n < 63:
        vals = [n]
    elif n < 258048:
        vals = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        vals = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    return "".join(chr(x + 63) for x in vals)


def _decode_size(vals: Sequence[int], base: int = 0) -> tuple[int, int]:
    # returns (n, index of the first bit-field byte)
    if vals[0] < 63:
        return vals[0], 1
    if len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise Graph6Error("truncated size header", base + len(vals))
        return (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    if len(vals) < 8:
        raise Graph6Error("truncated size header", base + len(vals))
    n = 0
    for x in vals[2:8]:
        n = (n << 6) | x
    return n, 8


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    line = text.rstrip("\r\n")
    base = 0
    if line.startswith(_G6_HEADER):
        base = len(_G6_HEADER)
    data = line[base:]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside [63, 126]", base + i)
    if not data:
        raise Graph6Error("empty graph6 line", base)

    vals = [ord(ch) - 63 for ch in data]
    n, pos = _decode_size(vals, base)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) < nbytes:
        raise Graph6Error(f"bit field truncated: expected {nbytes} bytes, got {len(body)}", base + len(vals))
    if len(body) > nbytes:
        raise Graph6Error("trailing data after bit field", base + pos + nbytes)
    pad = -nbits % 6
    if nbytes and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("non-zero padding bits", base + pos + nbytes - 1)

    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.add((i, j))
            k += 1
    return Graph(n, frozenset(edges))


def write_graph6(g: Graph) -> str:
    n = g.n
    if n < 1:
        raise ValueError("graph6 needs at least one vertex")

    bits = []
    for j in range(1, n):
        row = g.adjacency[j]
        for i in range(j):
            bits.append(1 if i in row else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        body.append(x)
    return graph6_size_header(n) + "".join(chr(x + 63) for x in body)


def read_graph6_file(path) -> list[Graph]:
    """Parse a newline-separated graph6 file; blank lines are skipped."""
    graphs = []
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                graphs.append(parse_graph6(line))
            except Graph6Error as exc:
                raise Graph6Error(f"line {lineno}: {exc.args[0]}", exc.offset) from None
    return graphs


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")


# --- fixtures ---------------------------------------------------------------

FIG4_EDGES = "AM BM ML LI IC CD DJ JK KL KE EF FG GH HJ".split()


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def _z4x4_cayley(connection: Iterable[tuple[int, int]]) -> Graph:
    conn = set(connection)
    edges = set()
    for r1, c1, r2, c2 in itertools.product(range(4), repeat=4):
        if ((r2 - r1) % 4, (c2 - c1) % 4) in conn:
            u, v = 4 * r1 + c1, 4 * r2 + c2
            edges.add(_edge(u, v))
    return Graph(16, frozenset(edges))


def rook_graph() -> Graph:
    edges = set()
    for u, v in itertools.combinations(range(16), 2):
        if u // 4 == v // 4 or u % 4 == v % 4:
            edges.add((u, v))
    return Graph(16, frozenset(edges))


def shrikhande_graph() -> Graph:
    return _z4x4_cayley([(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)])


def fig4_graph() -> Graph:
    return Graph.from_edges(13, ((ord(a) - 65, ord(b) - 65) for a, b in FIG4_EDGES))


def prism_graph() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def two_triangles_graph() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


_FIXTURES = {
    "cycle": cycle_graph,
    "path": path_graph,
    "complete": complete_graph,
    "complete_bipartite": complete_bipartite_graph,
    "prism": prism_graph,
    "two_triangles": two_triangles_graph,
    "hexagon": lambda: cycle_graph(6),
    "rook4x4": rook_graph,
    "shrikhande": shrikhande_graph,
    "fig4_example": fig4_graph,
}

FIXTURE_NAMES = tuple(_FIXTURES)


def generate_fixture(name: str, *params: int) -> Graph:
    """Named fixture graph, e.g. ``generate_fixture("cycle", 5)``."""
    try:
        factory = _FIXTURES[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None
    try:
        return factory(*params)
    except TypeError as exc:
        raise ValueError(f"bad parameters {params} for fixture {name!r}: {exc}") from None


# --- canonical form ----------------------------------------------------------


def _refine(adj: Sequence[frozenset[int]], cells: list[list[int]]) -> list[list[int]]:
    # Equitable refinement; cell order only depends on label-invariant data.
    while True:
        cell_of = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {}
            for v in cell:
                counts = [0] * len(cells)
                for w in adj[v]:
                    counts[cell_of[w]] += 1
                sig.setdefault(tuple(counts), []).append(v)
            if len(sig) > 1:
                changed = True
            for key in sorted(sig):
                new_cells.append(sig[key])
        cells = new_cells
        if not changed:
            return cells


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant certificate of an unlabelled graph.

    Individualise-and-refine search over all leaves, keeping the lexicographically
    smallest relabelled edge list. Labels are ignored.
    """
    adj = g.adjacency
    if g.n == 0:
        return (0, ())
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(len(adj[v]), []).append(v)
    start = [by_degree[d] for d in sorted(by_degree)]

    best = None

    def search(cells):
        nonlocal best
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            pos = {cell[0]: i for i, cell in enumerate(cells)}
            code = tuple(sorted(_edge(pos[u], pos[v]) for u, v in g.edges))
            if best is None or code < best:
                best = code
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(start)
    return (g.n, best)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


def graph_from_canonical(form: tuple) -> Graph:
    n, edges = form
    return Graph(n, frozenset(edges))


# --- enumeration --------------------------------------------------------------


def enumerate_graphs(n: int, connected: bool = False) -> list[Graph]:
    """One representative per isomorphism class of graphs on ``n`` vertices.

    Vertex-by-vertex augmentation with canonical-form deduplication.
    """
    level = {canonical_form(Graph(1)): Graph(1)} if n >= 1 else {}
    if n == 0:
        return [Graph(0)]
    for size in range(1, n):
        nxt = {}
        for g in level.values():
            for r in range(size + 1):
                for nbrs in itertools.combinations(range(size), r):
                    h = Graph(size + 1, g.edges | {(u, size) for u in nbrs})
                    nxt.setdefault(canonical_form(h), h)
        level = nxt
    out = [graph_from_canonical(f) for f in sorted(level)]
    if connected:
        out = [g for g in out if g.is_connected()]
    return out


def _bfs_labelled_regular(n: int, d: int) -> Iterator[frozenset[Edge]]:
    # Every connected d-regular graph has a labelling in which vertices are
    # numbered in BFS discovery order; vertex i's undiscovered neighbours then
    # take the next free labels. Enumerate exactly those labellings.
    deg = [0] * n
    edges: list[Edge] = []

    def close(i: int, discovered: int):
        if i == n:
            if discovered == n:
                yield frozenset(edges)
            return
        if i >= discovered:
            return  # graph would be disconnected
        need = d - deg[i]
        if need < 0:
            return
        known = [j for j in range(i + 1, discovered) if deg[j] < d]
        for n_new in range(min(need, n - discovered) + 1):
            for old in itertools.combinations(known, need - n_new):
                new = range(discovered, discovered + n_new)
                chosen = list(old) + list(new)
                for j in chosen:
                    edges.append((i, j))
                    deg[j] += 1
                deg[i] += len(chosen)
                yield from close(i + 1, discovered + n_new)
                deg[i] -= len(chosen)
                for j in chosen:
                    deg[j] -= 1
                    edges.pop()

    yield from close(0, 1)


def enumerate_connected_cubic(n: int) -> list[Graph]:
    """All connected 3-regular graphs on ``n`` vertices up to isomorphism."""
    if n % 2 or n not in (4, 6, 8, 10):
        raise ValueError(f"n must be one of 4, 6, 8, 10 (got {n})")
    seen = {}
    for edges in _bfs_labelled_regular(n, 3):
        g = Graph(n, edges)
        seen.setdefault(canonical_form(g), g)
    return [graph_from_canonical(f) for f in sorted(seen)]


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    return itertools.combinations(range(n), 2)
