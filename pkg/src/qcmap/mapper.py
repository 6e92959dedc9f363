"""Exact minimal-SWAP mapping of a circuit onto a coupling graph.

The solver searches breadth-first over placements.  Each search state is
a placement plus the inclusion-minimal set of circuit fragments still
pending for it; one BFS level applies every graph edge as a SWAP to
every state, re-reduces each fragment, and merges states that land on
the same placement.  The first level producing a fully-executed fragment
is the optimal SWAP count.

All initial placements are injected as level-0 states of one shared
search, which returns exactly the minimum over per-placement runs (a
smaller fragment can never finish later than a larger one, so the merge
rule preserves per-placement optima).  Plans are recovered from
per-fragment parent pointers, which makes the returned witness replay
correctly under independent verification.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable
from dataclasses import dataclass

from .circuits import Circuit, build_topology_graph
from .coupling import CouplingGraph
from .errors import ParseError, ResourceLimitError
from .subcircuits import Subcircuit, SubcircuitDescriptor, descriptor

DEFAULT_STATE_CAP = 1_000_000


@dataclass(frozen=True)
class Placement:
    """Injective map logical qubit -> physical node; index = logical qubit."""

    to_physical: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.to_physical)) != len(self.to_physical):
            raise ValueError("placement must be injective")
        if any(p < 0 for p in self.to_physical):
            raise ValueError("negative node index in placement")

    @classmethod
    def identity(cls, n: int) -> "Placement":
        return cls(tuple(range(n)))

    @property
    def num_qubits(self) -> int:
        return len(self.to_physical)

    def node_of(self, qubit: int) -> int:
        return self.to_physical[qubit]

    def occupants(self, num_nodes: int) -> tuple[int | None, ...]:
        """Inverse view: per node, the logical qubit sitting there (or None)."""
        occ: list[int | None] = [None] * num_nodes
        for q, p in enumerate(self.to_physical):
            occ[p] = q
        return tuple(occ)

    def apply_swap(self, a: int, b: int) -> "Placement":
        """Exchange whatever sits on nodes a and b (either may be empty)."""
        return Placement(tuple(
            a if p == b else b if p == a else p for p in self.to_physical
        ))

    def check_against(self, circuit: Circuit, graph: CouplingGraph) -> None:
        if len(self.to_physical) != circuit.num_qubits:
            raise ValueError("placement does not cover the circuit's qubits")
        for p in self.to_physical:
            if p >= graph.num_nodes:
                raise ValueError(f"placement targets node {p} outside the graph")


@dataclass(frozen=True)
class SwapPlan:
    """An initial placement followed by SWAPs on graph edges, in order."""

    initial: Placement
    swaps: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.swaps)


@dataclass(frozen=True)
class MapResult:
    """Outcome of a solve: optimal SWAP count and one witnessing plan.

    cost is ``math.inf`` (and plan None) when the circuit has more qubits
    than the graph has nodes, or when strict swapping leaves no route.
    """

    cost: int | float
    plan: SwapPlan | None

    @property
    def feasible(self) -> bool:
        return self.cost != math.inf


@dataclass(frozen=True)
class SearchState:
    """One BFS state: a placement and its minimal pending fragments."""

    placement: Placement
    fragments: tuple[SubcircuitDescriptor, ...]


class _CircuitInfo:
    """Preprocessed per-solve tables: operand pairs and precedence masks."""

    def __init__(self, c: Circuit):
        self.circuit = c
        self.full_mask = (1 << len(c.gates)) - 1
        self.pred = c.predecessor_masks
        pairs = sorted({
            (min(g.qubits), max(g.qubits)) for g in c.gates if g.is_two_qubit
        })
        index = {p: i for i, p in enumerate(pairs)}
        self.pairs = pairs
        # Per gate: index into pairs, or -1 for single-qubit gates.
        self.gate_pair = tuple(
            index[(min(g.qubits), max(g.qubits))] if g.is_two_qubit else -1
            for g in c.gates
        )


def _run_search(info: _CircuitInfo, graph: CouplingGraph, sources, *, strict: bool,
                state_cap: int, max_levels: int | None, on_level=None):
    """Shared BFS engine.

    sources yields level-0 placements (tuples) in canonical order.  Returns
    (cost, initial_placement, swaps) on success, None when max_levels pass
    without an executed fragment or (strict mode) the frontier dies.
    """
    edges = graph.sorted_edges
    adj = graph.adjacency_masks
    pairs = info.pairs
    pred = info.pred
    gate_pair = info.gate_pair
    full = info.full_mask

    reduce_memo: dict[tuple[int, int], int] = {}
    sig_cache: dict[tuple[int, ...], int] = {}
    swap_cache: dict[tuple[tuple[int, ...], tuple[int, int]], tuple[int, ...]] = {}
    # Fragment provenance: (parent record id or -1, edge or None, placement).
    prov: list[tuple[int, tuple[int, int] | None, tuple[int, ...]]] = []

    def signature(phys: tuple[int, ...]) -> int:
        s = sig_cache.get(phys)
        if s is None:
            s = 0
            for k, (a, b) in enumerate(pairs):
                if adj[phys[a]] >> phys[b] & 1:
                    s |= 1 << k
            sig_cache[phys] = s
        return s

    def reduce_mask(mask: int, sig: int) -> int:
        key = (mask, sig)
        out = reduce_memo.get(key)
        if out is not None:
            return out
        out = mask
        m = mask
        while m:
            low = m & -m
            m ^= low
            i = low.bit_length() - 1
            if pred[i] & out:
                continue
            pi = gate_pair[i]
            if pi >= 0 and not sig >> pi & 1:
                continue
            out ^= low
        reduce_memo[key] = out
        return out

    def replay(pid: int) -> tuple[tuple[int, ...], list[tuple[int, int]]]:
        swaps: list[tuple[int, int]] = []
        placement = None
        while pid >= 0:
            parent, edge, placement = prov[pid]
            if edge is not None:
                swaps.append(edge)
            pid = parent
        swaps.reverse()
        return placement, swaps

    frontier: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    n_sources = 0
    for phys in sources:
        n_sources += 1
        if n_sources > state_cap:
            raise ResourceLimitError(
                f"initial placements exceed the state cap ({state_cap}); "
                "raise it to search this instance"
            )
        m0 = reduce_mask(full, signature(phys))
        prov.append((-1, None, phys))
        pid = len(prov) - 1
        if m0 == 0:
            return 0, phys, []
        frontier[phys] = [(m0, pid)]

    visited: set[tuple[tuple[int, ...], int]] | None = set() if strict else None
    if visited is not None:
        for phys, frags in frontier.items():
            for m, _ in frags:
                visited.add((phys, m))

    if on_level is not None:
        on_level(0, frontier)

    level = 0
    while frontier:
        level += 1
        if max_levels is not None and level > max_levels:
            return None
        nxt: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for phys in sorted(frontier):
            frags = frontier[phys]
            for edge in edges:
                if strict and (edge[0] not in phys or edge[1] not in phys):
                    continue
                key = (phys, edge)
                nphys = swap_cache.get(key)
                if nphys is None:
                    u, v = edge
                    nphys = tuple(u if p == v else v if p == u else p for p in phys)
                    swap_cache[key] = nphys
                sig = signature(nphys)
                bucket = nxt.get(nphys)
                for m, pid in frags:
                    nm = reduce_mask(m, sig)
                    if nm == 0:
                        prov.append((pid, edge, nphys))
                        placement, swaps = replay(len(prov) - 1)
                        return level, placement, swaps
                    if visited is not None:
                        if (nphys, nm) in visited:
                            continue
                        visited.add((nphys, nm))
                    if bucket is None:
                        bucket = nxt.setdefault(nphys, [])
                    if any(em & ~nm == 0 for em, _ in bucket):
                        continue
                    bucket[:] = [(em, ep) for em, ep in bucket if nm & ~em]
                    prov.append((pid, edge, nphys))
                    bucket.append((nm, len(prov) - 1))
        if len(nxt) > state_cap:
            raise ResourceLimitError(
                f"search frontier exceeds the state cap ({state_cap}) "
                f"at level {level}; raise it to search this instance"
            )
        if on_level is not None and nxt:
            on_level(level, nxt)
        frontier = nxt
    return None


def upper_bound(c: Circuit, g: CouplingGraph) -> int:
    """Worst-case SWAPs: each two-qubit gate walks at most diameter-1 steps."""
    if c.num_qubits > g.num_nodes:
        raise ValueError("infeasible: more qubits than graph nodes")
    t = c.two_qubit_count
    return t * (g.diameter - 1) if t else 0


def _sources_for(c: Circuit, g: CouplingGraph,
                 node_symmetries: Iterable[tuple[int, ...]] | None = None):
    srcs = itertools.permutations(range(g.num_nodes), c.num_qubits)
    if node_symmetries is None:
        return srcs
    perms = [tuple(p) for p in node_symmetries]
    for p in perms:
        if sorted(p) != list(range(g.num_nodes)):
            raise ValueError("each symmetry must be a permutation of the graph nodes")
    # keep a placement only if it is the lexicographic minimum of its orbit
    return (s for s in srcs
            if all(s <= tuple(p[x] for x in s) for p in perms))


def solve_exact(c: Circuit, g: CouplingGraph, *, strict: bool = False,
                state_cap: int = DEFAULT_STATE_CAP,
                node_symmetries: Iterable[tuple[int, ...]] | None = None) -> MapResult:
    """Minimal SWAP count over all initial placements, with one witness plan.

    Every injective placement seeds the search, so the result is exact.
    ``strict`` restricts SWAPs to edges whose endpoints both hold qubits;
    strict instances can be unsolvable, reported as cost ``inf``.

    ``node_symmetries`` optionally prunes seed placements: each entry is a
    node permutation, and only placements lexicographically minimal within
    their orbit are kept.  The result stays exact when the permutations
    form a group of graph automorphisms; off by default.
    """
    if c.num_qubits > g.num_nodes:
        return MapResult(math.inf, None)
    info = _CircuitInfo(c)
    bound = None if strict else upper_bound(c, g)
    found = _run_search(info, g, _sources_for(c, g, node_symmetries), strict=strict,
                        state_cap=state_cap, max_levels=bound)
    if found is None:
        if strict:
            return MapResult(math.inf, None)
        raise RuntimeError("search exhausted its bound without a witness; this is a bug")
    cost, phys, swaps = found
    return MapResult(cost, SwapPlan(Placement(phys), tuple(swaps)))


def solve_from(c: Circuit, g: CouplingGraph, p0: Placement, *, strict: bool = False,
               state_cap: int = DEFAULT_STATE_CAP) -> MapResult:
    """Minimal SWAP count when the initial placement is fixed to ``p0``."""
    p0.check_against(c, g)
    info = _CircuitInfo(c)
    bound = None if strict else upper_bound(c, g)
    found = _run_search(info, g, [p0.to_physical], strict=strict,
                        state_cap=state_cap, max_levels=bound)
    if found is None:
        if strict:
            return MapResult(math.inf, None)
        raise RuntimeError("search exhausted its bound without a witness; this is a bug")
    cost, phys, swaps = found
    return MapResult(cost, SwapPlan(Placement(phys), tuple(swaps)))


def decide(c: Circuit, g: CouplingGraph, k: int, *, strict: bool = False,
           state_cap: int = DEFAULT_STATE_CAP,
           node_symmetries: Iterable[tuple[int, ...]] | None = None) -> bool:
    """Is the circuit mappable with at most k SWAPs?

    Budget 0 asks whether some placement satisfies every interaction
    outright, which is an injective embedding of the interaction topology
    into the graph; that test runs as a backtracking embed rather than a
    placement sweep.  Larger budgets run the BFS, cut off after level k.
    """
    if k < 0:
        raise ValueError("budget must be >= 0")
    if c.num_qubits > g.num_nodes:
        return False
    if _topology_embeds(c, g):
        return True
    if k == 0:
        return False
    info = _CircuitInfo(c)
    found = _run_search(info, g, _sources_for(c, g, node_symmetries), strict=strict,
                        state_cap=state_cap, max_levels=k)
    return found is not None


def _topology_embeds(c: Circuit, g: CouplingGraph) -> bool:
    """Backtracking injective embed of the interaction topology into g."""
    topo = build_topology_graph(c)
    active = [q for q in range(c.num_qubits) if topo.degree(q) > 0]
    active.sort(key=lambda q: (-topo.degree(q), q))
    nbrs: dict[int, list[int]] = {q: [] for q in active}
    for a, b in topo.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def place(i: int) -> bool:
        if i == len(active):
            return True
        q = active[i]
        for node in range(g.num_nodes):
            if node in used:
                continue
            if all(r not in assigned or g.has_edge(node, assigned[r]) for r in nbrs[q]):
                assigned[q] = node
                used.add(node)
                if place(i + 1):
                    return True
                del assigned[q]
                used.discard(node)
        return False

    return place(0)


def search_levels(c: Circuit, g: CouplingGraph, p0: Placement | None = None, *,
                  strict: bool = False, state_cap: int = DEFAULT_STATE_CAP,
                  max_levels: int | None = None) -> list[list[SearchState]]:
    """Snapshot the BFS frontiers, for inspection and invariant checks.

    Each entry is one completed level; a level cut short by finding a
    finished fragment is not reported.  ``p0`` None seeds all placements.
    """
    info = _CircuitInfo(c)
    collected: list[list[SearchState]] = []

    def snap(_level: int, frontier: dict) -> None:
        states = []
        for phys in sorted(frontier):
            frags = tuple(
                descriptor(Subcircuit._from_mask(c, m)) for m, _ in frontier[phys]
            )
            states.append(SearchState(Placement(phys), frags))
        collected.append(states)

    sources = [p0.to_physical] if p0 is not None else _sources_for(c, g)
    if p0 is not None:
        p0.check_against(c, g)
    if max_levels is None and not strict:
        max_levels = upper_bound(c, g)
    _run_search(info, g, sources, strict=strict, state_cap=state_cap,
                max_levels=max_levels, on_level=snap)
    return collected


# --- plan text format -------------------------------------------------------
#
#   init 0:3 1:2 2:0
#   swap 3 2


def parse_plan(text: str) -> SwapPlan:
    initial: Placement | None = None
    swaps: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if initial is None:
            if tokens[0] != "init":
                raise ParseError("expected 'init <q>:<node> ...' first", lineno)
            mapping: dict[int, int] = {}
            for tok in tokens[1:]:
                try:
                    q_s, p_s = tok.split(":")
                    q, p = int(q_s), int(p_s)
                except ValueError:
                    raise ParseError(f"bad pair {tok!r}", lineno) from None
                if q in mapping:
                    raise ParseError(f"qubit {q} mapped twice", lineno)
                mapping[q] = p
            if sorted(mapping) != list(range(len(mapping))):
                raise ParseError("init must cover qubits 0..n-1", lineno)
            try:
                initial = Placement(tuple(mapping[q] for q in range(len(mapping))))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        if tokens[0] != "swap" or len(tokens) != 3:
            raise ParseError("expected 'swap <a> <b>'", lineno)
        try:
            a, b = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise ParseError(f"bad node index in {line!r}", lineno) from None
        swaps.append((a, b))
    if initial is None:
        raise ParseError("missing 'init' line")
    return SwapPlan(initial, tuple(swaps))


def format_plan(plan: SwapPlan) -> str:
    pairs = " ".join(f"{q}:{p}" for q, p in enumerate(plan.initial.to_physical))
    lines = [("init " + pairs).rstrip()]
    for a, b in plan.swaps:
        lines.append(f"swap {a} {b}")
    return "\n".join(lines) + "\n"


def load_plan(path: str) -> SwapPlan:
    with open(path, encoding="utf-8") as fh:
        return parse_plan(fh.read())


def save_plan(plan: SwapPlan, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_plan(plan))
