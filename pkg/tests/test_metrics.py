import math
import random

import pytest

from graph_ph.complex import clique_complex
from graph_ph.filtration import degree_filtration, orc_filtration
from graph_ph.graph import generate_fixture, permute
from graph_ph.metrics import (
    DIAGONAL,
    bottleneck_distance,
    bottleneck_matching,
    diagrams_equal,
    distinguishes,
    separating_dimensions,
)
from graph_ph.persistence import INF, PersistenceDiagram, persistence_reduction
from oracles import brute_bottleneck


def D(*points, dim=0):
    return PersistenceDiagram.from_pairs(dim, points)


def _random_diagram(rng, max_points, essential=0, grid=None):
    pts = []
    for _ in range(rng.randint(0, max_points)):
        if grid:
            b = rng.randint(0, grid) / 2
            pts.append((b, b + rng.randint(0, grid) / 2))
        else:
            b = rng.uniform(0, 5)
            pts.append((b, b + rng.uniform(0, 3)))
    pts += [(rng.uniform(0, 5), INF) for _ in range(essential)]
    return PersistenceDiagram.from_pairs(0, pts)


def _diagrams(name, *params, k=1, make=degree_filtration):
    g = generate_fixture(name, *params)
    return persistence_reduction(clique_complex(g, make(g), k))


class TestBottleneck:
    def test_examples(self):
        d = D((0.0, 2.0), (1.0, 4.0), (0.0, INF))
        assert bottleneck_distance(d, d) == 0
        assert bottleneck_distance(D((0.0, 2.0)), D((0.0, 1.0))) == 1
        assert bottleneck_distance(D((0.0, INF)), D((0.0, INF), (0.0, INF))) == math.inf

    def test_diagonal_matching(self):
        # a short bar is cheaper to send to the diagonal than to a far point
        assert bottleneck_distance(D((0.0, 0.2)), D((5.0, 5.4))) == pytest.approx(0.2)
        assert bottleneck_distance(D((0.0, 4.0)), D()) == 2.0

    def test_essential_part(self):
        a = D((0.0, INF), (3.0, INF), (1.0, 2.0))
        b = D((0.5, INF), (2.0, INF), (1.0, 2.0))
        assert bottleneck_distance(a, b) == 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            bottleneck_distance(D(dim=0), D(dim=1))

    def test_exhaustive_agreement(self):
        rng = random.Random(21)
        for trial in range(600):
            grid = 6 if trial % 2 else None
            ess = rng.randint(0, 2)
            a = _random_diagram(rng, 5, ess, grid)
            b = _random_diagram(rng, 5, ess if trial % 7 else rng.randint(0, 2), grid)
            assert abs(bottleneck_distance(a, b) - brute_bottleneck(a, b)) < 1e-9 or (
                math.isinf(bottleneck_distance(a, b)) and math.isinf(brute_bottleneck(a, b))
            )

    def test_matching_covers_everything(self):
        rng = random.Random(3)
        for _ in range(100):
            a, b = _random_diagram(rng, 6), _random_diagram(rng, 6)
            dist, m = bottleneck_matching(a, b)
            left = [p for p, _ in m.pairs if p != DIAGONAL]
            right = [q for _, q in m.pairs if q != DIAGONAL]
            off = lambda d: sorted((x, y) for x, y in d.expanded() if y > x)
            assert sorted(left) == off(a) and sorted(right) == off(b)
            for p, q in m.pairs:
                if p == DIAGONAL:
                    assert (q[1] - q[0]) / 2 <= dist + 1e-12
                elif q == DIAGONAL:
                    assert (p[1] - p[0]) / 2 <= dist + 1e-12
                else:
                    assert max(abs(p[0] - q[0]), abs(p[1] - q[1])) <= dist + 1e-12

    def test_pseudometric(self):
        rng = random.Random(5)
        for _ in range(200):
            a, b, c = (_random_diagram(rng, 6) for _ in range(3))
            ab = bottleneck_distance(a, b)
            assert ab == bottleneck_distance(b, a)
            assert bottleneck_distance(a, a) == 0
            assert bottleneck_distance(a, c) <= ab + bottleneck_distance(b, c) + 1e-12


class TestDiagramsEqual:
    def test_examples(self):
        fig5 = _diagrams("fig4_example")[0]
        assert diagrams_equal(fig5, fig5)
        assert not diagrams_equal(D(*[(2.0, 2.0)] * 5), D(*[(2.0, 2.0)] * 4))

    def test_diagonal_point_seen_only_here(self):
        a = D((0.0, 1.0), (0.0, INF))
        b = D((0.0, 1.0), (0.0, INF), (3.0, 3.0))
        assert not diagrams_equal(a, b)
        assert bottleneck_distance(a, b) == 0

    def test_tolerance(self):
        assert diagrams_equal(D((0.0, 1.0)), D((0.0, 1.0 + 1e-12)), tol=1e-9)
        assert not diagrams_equal(D((0.0, 1.0)), D((0.0, 1.0 + 1e-12)))
        assert not diagrams_equal(D((0.0, 1.0)), D((0.0, INF)), tol=10)


class TestDistinguishes:
    def test_permuted_copy(self):
        g = generate_fixture("fig4_example")
        rng = random.Random(0)
        p = list(range(g.n))
        rng.shuffle(p)
        h = permute(g, p)
        a = persistence_reduction(clique_complex(g, orc_filtration(g), 2))
        b = persistence_reduction(clique_complex(h, orc_filtration(h), 2))
        assert not distinguishes(a, b)

    def test_srg_orc(self):
        a = _diagrams("rook4x4", make=orc_filtration)
        b = _diagrams("shrikhande", make=orc_filtration)
        assert distinguishes(a, b, 1e-8)
        # every edge sits at 1/3 versus 1/6, so both dimensions move
        assert separating_dimensions(a, b) == [0, 1]

    def test_cubic6_degree(self):
        assert not distinguishes(_diagrams("complete_bipartite", 3, 3), _diagrams("prism"))
        assert distinguishes(_diagrams("complete_bipartite", 3, 3, k=2), _diagrams("prism", k=2))

    def test_infinite_counts(self):
        assert distinguishes(_diagrams("two_triangles"), _diagrams("hexagon"))

    def test_range_mismatch(self):
        with pytest.raises(ValueError):
            distinguishes(_diagrams("prism", k=2), _diagrams("prism", k=1))
