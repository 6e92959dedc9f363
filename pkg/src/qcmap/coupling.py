"""Coupling graphs: which hardware nodes support a two-qubit interaction.

Graphs are undirected, connected, simple, with nodes numbered 0..n-1.
Includes generators for the standard families (path, ring, clique, the
three regular tilings) and two fixed 20/16-node device layouts.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property

from .errors import ParseError


class CouplingGraph:
    """Immutable undirected connected graph with precomputed metrics."""

    def __init__(self, num_nodes: int, edges):
        # Use from_edge_list for duplicate detection on raw input.
        self.num_nodes = num_nodes
        self.edges: frozenset[tuple[int, int]] = frozenset(
            (min(a, b), max(a, b)) for a, b in edges
        )
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at node {a}")
            if not (0 <= a < num_nodes and 0 <= b < num_nodes):
                raise ValueError(f"edge ({a}, {b}) outside [0, {num_nodes})")
        if num_nodes < 1:
            raise ValueError("graph needs at least one node")
        self._check_connected()

    @classmethod
    def from_edge_list(cls, num_nodes: int, edges) -> "CouplingGraph":
        """Build from raw pairs; rejects duplicates (in either orientation)."""
        seen = set()
        for a, b in edges:
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"duplicate edge ({a}, {b})")
            seen.add(key)
        return cls(num_nodes, seen)

    def _check_connected(self) -> None:
        if self.num_nodes == 0:
            return
        seen = {0}
        queue = deque([0])
        nbrs = self.neighbors
        while queue:
            v = queue.popleft()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != self.num_nodes:
            raise ValueError("graph is not connected")

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for a, b in self.edges:
            out[a].append(b)
            out[b].append(a)
        return tuple(tuple(sorted(ns)) for ns in out)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per node, a bitmask of its neighbors."""
        masks = [0] * self.num_nodes
        for a, b in self.edges:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs hop counts via one BFS per node."""
        rows = []
        for src in range(self.num_nodes):
            dist = [-1] * self.num_nodes
            dist[src] = 0
            queue = deque([src])
            while queue:
                v = queue.popleft()
                for w in self.neighbors[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue.append(w)
            rows.append(tuple(dist))
        return tuple(rows)

    def distance(self, a: int, b: int) -> int:
        return self.distances[a][b]

    @property
    def diameter(self) -> int:
        return max(max(row) for row in self.distances)

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.neighbors), default=0)

    def is_bipartite(self) -> bool:
        color = [-1] * self.num_nodes
        color[0] = 0
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in self.neighbors[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CouplingGraph):
            return NotImplemented
        return self.num_nodes == other.num_nodes and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.num_nodes, self.edges))

    def __repr__(self) -> str:
        return f"CouplingGraph(num_nodes={self.num_nodes}, edges=<{len(self.edges)}>)"


# --- generators -------------------------------------------------------------


def linear(n: int) -> CouplingGraph:
    """Path on n nodes."""
    if n < 1:
        raise ValueError("linear graph needs n >= 1")
    return CouplingGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> CouplingGraph:
    """Ring on n nodes."""
    if n < 3:
        raise ValueError("cycle graph needs n >= 3")
    return CouplingGraph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> CouplingGraph:
    """Complete graph on n nodes."""
    if n < 1:
        raise ValueError("clique needs n >= 1")
    return CouplingGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_square(rows: int, cols: int) -> CouplingGraph:
    """Square-lattice patch with rows x cols nodes, numbered row-major."""
    if rows < 1 or cols < 1:
        raise ValueError("grid extent must be >= 1 in both directions")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return CouplingGraph(rows * cols, edges)


def grid_hex(rows: int, cols: int) -> CouplingGraph:
    """Honeycomb patch covering rows x cols hexagonal cells.

    Built brick-wall style: cell (r, c) spans corner points
    (2c + r % 2 .. +2, r .. r+1); shared corners merge.  Interior nodes
    have degree 3 and the graph is bipartite, as in the infinite tiling.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid extent must be >= 1 in both directions")
    points: dict[tuple[int, int], int] = {}
    edge_set: set[tuple[int, int]] = set()

    # Corner points keyed (row, x) and numbered row-major.
    corner_keys = set()
    for r in range(rows):
        for c in range(cols):
            x0 = 2 * c + (r % 2)
            for dx in (0, 1, 2):
                corner_keys.add((r, x0 + dx))
                corner_keys.add((r + 1, x0 + dx))
    for i, key in enumerate(sorted(corner_keys)):
        points[key] = i

    def node(y: int, x: int) -> int:
        return points[(y, x)]

    for r in range(rows):
        for c in range(cols):
            x0 = 2 * c + (r % 2)
            top = [node(r, x0 + dx) for dx in (0, 1, 2)]
            bot = [node(r + 1, x0 + dx) for dx in (0, 1, 2)]
            for a, b in ((top[0], top[1]), (top[1], top[2]), (bot[0], bot[1]),
                         (bot[1], bot[2]), (top[0], bot[0]), (top[2], bot[2])):
                edge_set.add((min(a, b), max(a, b)))
    return CouplingGraph(len(points), edge_set)


def grid_triangle(rows: int, cols: int) -> CouplingGraph:
    """Triangular-lattice patch over a rows x cols rhombus grid.

    Nodes form a (rows+1) x (cols+1) array joined by horizontal, vertical
    and one diagonal direction; each unit cell splits into two triangles.
    Interior nodes have degree 6.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid extent must be >= 1 in both directions")
    width = cols + 1
    edges = []
    for r in range(rows + 1):
        for c in range(cols + 1):
            v = r * width + c
            if c + 1 <= cols:
                edges.append((v, v + 1))
            if r + 1 <= rows:
                edges.append((v, v + width))
            if c + 1 <= cols and r + 1 <= rows:
                edges.append((v, v + width + 1))
    return CouplingGraph((rows + 1) * width, edges)


def tokyo() -> CouplingGraph:
    """20-node device layout: a 4x5 lattice with alternating diagonal pairs."""
    grid_rows = 4
    grid_cols = 5
    edges = []
    for r in range(grid_rows):
        for c in range(grid_cols):
            v = r * grid_cols + c
            if c + 1 < grid_cols:
                edges.append((v, v + 1))
            if r + 1 < grid_rows:
                edges.append((v, v + grid_cols))
    diagonals = [
        (1, 7), (2, 6), (3, 9), (4, 8),
        (5, 11), (6, 10), (7, 13), (8, 12),
        (11, 17), (12, 16), (13, 19), (14, 18),
    ]
    return CouplingGraph.from_edge_list(20, edges + diagonals)


def aspen() -> CouplingGraph:
    """16-node device layout: two rings of eight bridged at (5,6) and (9,10)."""
    edges = [
        (0, 1), (0, 4), (1, 5), (2, 3), (2, 6), (3, 7),
        (4, 8), (5, 6), (5, 9), (6, 10), (7, 11), (8, 12),
        (9, 10), (9, 13), (10, 14), (11, 15), (12, 13), (14, 15),
    ]
    return CouplingGraph.from_edge_list(16, edges)


FAMILIES = ("linear", "cycle", "clique", "grid_square", "grid_hex", "grid_triangle",
            "tokyo", "aspen")


def gen(family: str, *params: int) -> CouplingGraph:
    """Dispatch to a generator by family name.

    linear/cycle/clique take one size; the grids take (rows, cols);
    tokyo/aspen take no parameters.
    """
    if family == "linear":
        (n,) = params
        return linear(n)
    if family == "cycle":
        (n,) = params
        return cycle(n)
    if family == "clique":
        (n,) = params
        return clique(n)
    if family == "grid_square":
        r, c = params
        return grid_square(r, c)
    if family == "grid_hex":
        r, c = params
        return grid_hex(r, c)
    if family == "grid_triangle":
        r, c = params
        return grid_triangle(r, c)
    if family == "tokyo":
        if params:
            raise ValueError("tokyo takes no size parameters")
        return tokyo()
    if family == "aspen":
        if params:
            raise ValueError("aspen takes no size parameters")
        return aspen()
    raise ValueError(f"unknown family {family!r}")


# --- text format ------------------------------------------------------------
#
#   nodes 5
#   edge 0 1


def parse_graph(text: str) -> CouplingGraph:
    num_nodes: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if num_nodes is None:
            if tokens[0] != "nodes" or len(tokens) != 2:
                raise ParseError("expected 'nodes <n>' header", lineno)
            try:
                num_nodes = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad node count {tokens[1]!r}", lineno) from None
            continue
        if tokens[0] != "edge" or len(tokens) != 3:
            raise ParseError("expected 'edge <a> <b>'", lineno)
        try:
            a, b = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise ParseError(f"bad node index in {line!r}", lineno) from None
        edges.append((a, b))
    if num_nodes is None:
        raise ParseError("missing 'nodes <n>' header")
    try:
        return CouplingGraph.from_edge_list(num_nodes, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: CouplingGraph) -> str:
    lines = [f"nodes {g.num_nodes}"]
    for a, b in g.sorted_edges:
        lines.append(f"edge {a} {b}")
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> CouplingGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: CouplingGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
