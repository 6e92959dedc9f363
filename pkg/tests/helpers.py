"""Shared builders for the test suite."""

import random

from qcmap import Circuit, CouplingGraph


def example_circuit() -> Circuit:
    """4-qubit, 7-gate circuit used as the worked example across modules."""
    return Circuit.from_ops(4, [
        ("h", (0,)),
        ("t", (2,)),
        ("cx", (0, 1)),
        ("cx", (2, 3)),
        ("cx", (3, 1)),
        ("cx", (0, 1)),
        ("h", (3,)),
    ])


def random_connected_graph(rng: random.Random, num_nodes: int,
                           extra_edges: int = 2) -> CouplingGraph:
    """Random spanning tree plus up to extra_edges more edges."""
    order = list(range(num_nodes))
    rng.shuffle(order)
    edges = set()
    for i in range(1, num_nodes):
        a, b = order[rng.randrange(i)], order[i]
        edges.add((min(a, b), max(a, b)))
    rest = [(a, b) for a in range(num_nodes) for b in range(a + 1, num_nodes)
            if (a, b) not in edges]
    rng.shuffle(rest)
    edges.update(rest[:extra_edges])
    return CouplingGraph(num_nodes, edges)


def random_deg3_connected_graph(rng: random.Random, num_nodes: int,
                                extra_edges: int = 2) -> CouplingGraph:
    """Connected, every node degree <= 3: random path plus degree-safe extras."""
    order = list(range(num_nodes))
    rng.shuffle(order)
    edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
    deg = {v: 0 for v in range(num_nodes)}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    rest = [(a, b) for a in range(num_nodes) for b in range(a + 1, num_nodes)
            if (a, b) not in edges]
    rng.shuffle(rest)
    added = 0
    for a, b in rest:
        if added == extra_edges:
            break
        if deg[a] < 3 and deg[b] < 3:
            edges.add((a, b))
            deg[a] += 1
            deg[b] += 1
            added += 1
    return CouplingGraph(num_nodes, edges)


def random_cnot_circuit(rng: random.Random, num_qubits: int, num_gates: int) -> Circuit:
    ops = []
    for _ in range(num_gates):
        a = rng.randrange(num_qubits)
        b = rng.randrange(num_qubits - 1)
        if b >= a:
            b += 1
        ops.append(("cx", (a, b)))
    return Circuit.from_ops(num_qubits, ops)


def all_subcircuit_masks(c: Circuit) -> list[int]:
    """Every dependency-closed set of remaining gates, as bitmasks.

    A mask is valid when no executed gate still has a pending predecessor,
    i.e. the executed set is downward closed in the dependency order.
    """
    preds = c.predecessor_masks
    out = []
    for mask in range(1 << len(c.gates)):
        ok = True
        for j in range(len(c.gates)):
            if mask >> j & 1:
                continue
            if preds[j] & mask:
                ok = False
                break
        if ok:
            out.append(mask)
    return out
