import random

import pytest

from qcmap import (
    FAMILIES,
    CouplingGraph,
    ParseError,
    aspen,
    clique,
    cycle,
    format_graph,
    gen,
    grid_hex,
    grid_square,
    grid_triangle,
    linear,
    load_graph,
    parse_graph,
    save_graph,
    tokyo,
)

from helpers import random_connected_graph


def floyd_warshall(g: CouplingGraph):
    """Independent all-pairs distances, no BFS shared with the library."""
    n = g.num_nodes
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for a, b in g.edges:
        d[a][b] = d[b][a] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


class TestValidation:
    def test_rejects_disconnected(self):
        with pytest.raises(ValueError):
            CouplingGraph(4, [(0, 1), (2, 3)])

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            CouplingGraph(2, [(0, 0), (0, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            CouplingGraph(2, [(0, 2)])

    def test_from_edge_list_rejects_duplicates(self):
        with pytest.raises(ValueError):
            CouplingGraph.from_edge_list(3, [(0, 1), (1, 0), (1, 2)])

    def test_single_node(self):
        g = CouplingGraph(1, [])
        assert g.diameter == 0
        assert g.max_degree() == 0


class TestFamilies:
    def test_linear(self):
        g = linear(6)
        assert g.num_nodes == 6 and len(g.edges) == 5
        assert g.diameter == 5
        assert g.max_degree() == 2
        assert g.is_bipartite()

    def test_cycle(self):
        for n in (3, 4, 7, 8):
            g = cycle(n)
            assert len(g.edges) == n
            assert g.diameter == n // 2
            assert g.is_bipartite() == (n % 2 == 0)

    def test_clique(self):
        g = clique(5)
        assert len(g.edges) == 10
        assert g.diameter == 1
        assert g.max_degree() == 4
        assert not g.is_bipartite()

    def test_grid_square(self):
        g = grid_square(3, 3)
        assert g.num_nodes == 9 and len(g.edges) == 12
        assert g.max_degree() == 4
        assert g.is_bipartite()
        assert g.diameter == 4
        # row-major numbering: node 4 is the center
        assert sorted(g.neighbors[4]) == [1, 3, 5, 7]

    def test_grid_hex(self):
        g = grid_hex(2, 3)
        assert g.max_degree() == 3
        assert g.is_bipartite()
        # every face is a hexagon, so girth parity keeps it bipartite at any size
        assert grid_hex(1, 1).num_nodes == 6
        assert len(grid_hex(1, 1).edges) == 6

    def test_grid_triangle(self):
        g = grid_triangle(2, 2)
        assert g.num_nodes == 9
        assert g.max_degree() == 6
        assert not g.is_bipartite()

    def test_tokyo(self):
        g = tokyo()
        assert g.num_nodes == 20
        assert len(g.edges) == 43
        assert g.diameter <= 5

    def test_aspen(self):
        g = aspen()
        assert g.num_nodes == 16
        assert len(g.edges) == 18
        assert g.max_degree() == 3

    def test_gen_dispatch(self):
        assert gen("linear", 4) == linear(4)
        assert gen("grid_square", 2, 3) == grid_square(2, 3)
        assert gen("tokyo") == tokyo()
        with pytest.raises(ValueError):
            gen("moebius", 4)
        with pytest.raises(ValueError):
            gen("tokyo", 20)

    def test_every_family_listed_generates(self):
        sizes = {"linear": (4,), "cycle": (5,), "clique": (4,),
                 "grid_square": (2, 2), "grid_hex": (1, 2), "grid_triangle": (2, 2),
                 "tokyo": (), "aspen": ()}
        for fam in FAMILIES:
            g = gen(fam, *sizes[fam])
            assert g.num_nodes >= 1


class TestMetrics:
    def test_distances_match_floyd_warshall(self):
        rng = random.Random(5)
        graphs = [tokyo(), aspen(), grid_square(3, 4), grid_hex(2, 2)]
        graphs += [random_connected_graph(rng, rng.randrange(2, 10), rng.randrange(0, 4))
                   for _ in range(10)]
        for g in graphs:
            fw = floyd_warshall(g)
            for i in range(g.num_nodes):
                for j in range(g.num_nodes):
                    assert g.distance(i, j) == fw[i][j]

    def test_distance_symmetry_and_adjacency(self):
        g = tokyo()
        for a, b in g.edges:
            assert g.distance(a, b) == g.distance(b, a) == 1
            assert g.has_edge(a, b) and g.has_edge(b, a)

    def test_adjacency_masks(self):
        g = grid_square(2, 2)
        for v in range(4):
            mask = g.adjacency_masks[v]
            assert {w for w in range(4) if mask >> w & 1} == set(g.neighbors[v])


class TestSerialization:
    def test_round_trip(self):
        for g in (linear(5), tokyo(), grid_triangle(2, 2)):
            assert parse_graph(format_graph(g)) == g

    def test_text_shape(self):
        assert format_graph(linear(3)).splitlines() == ["nodes 3", "edge 0 1", "edge 1 2"]

    def test_parse_errors(self):
        with pytest.raises(ParseError) as e:
            parse_graph("nodes 3\nedge 0 5\n")
        assert "0, 5" in str(e.value) or "outside" in str(e.value)
        with pytest.raises(ParseError) as e:
            parse_graph("nodes 3\nvertex 0 1\n")
        assert e.value.line == 2
        with pytest.raises(ParseError):
            parse_graph("")

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "dev.cg"
        save_graph(aspen(), path)
        assert load_graph(path) == aspen()
