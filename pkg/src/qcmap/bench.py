"""Seeded random instances and the benchmark harness.

Sample costs are summed as exact integers before dividing, and every
sample's seed is derived from (seed, qubits, gate count, index) alone, so
results are bit-identical however the work is split across processes.
"""

from __future__ import annotations

import hashlib
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from random import Random

from .circuits import Circuit
from .coupling import linear
from .mapper import DEFAULT_STATE_CAP, solve_exact

CSV_HEADER = "gt,qt,gt_add,time,samples,seed"


@dataclass(frozen=True)
class RandomCircuitSpec:
    """Parameters of one random circuit draw."""

    qubits: int
    gates: int
    two_qubit_fraction: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.qubits < 2:
            raise ValueError("need at least 2 qubits")
        if self.gates < 1:
            raise ValueError("need at least 1 gate")
        if not 0.0 <= self.two_qubit_fraction <= 1.0:
            raise ValueError("two_qubit_fraction must be within [0, 1]")


@dataclass(frozen=True)
class ExperimentRow:
    """One benchmark point: mean swaps added and mean solve seconds over
    `samples` random circuits of `gt` gates on `qt` qubits."""

    gt: int
    qt: int
    gt_add: float
    time: float
    samples: int
    seed: int

    def __post_init__(self) -> None:
        if self.gt_add < 0:
            raise ValueError("gt_add must be non-negative")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")


def gen_random_circuit(spec: RandomCircuitSpec) -> Circuit:
    """Each gate is independently a CNOT on a uniform ordered distinct pair
    (probability two_qubit_fraction) or a single-qubit gate on a uniform
    qubit.  Deterministic per spec."""
    rng = Random(spec.seed)
    n = spec.qubits
    ops: list[tuple[str, tuple[int, ...]]] = []
    for _ in range(spec.gates):
        if rng.random() < spec.two_qubit_fraction:
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            if b >= a:
                b += 1
            ops.append(("cx", (a, b)))
        else:
            ops.append(("h", (rng.randrange(n),)))
    return Circuit.from_ops(n, ops)


def _child_seed(seed: int, qubits: int, gt: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{qubits}:{gt}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _solve_chunk(args: tuple) -> tuple[int, float]:
    qubits, gt, frac, seeds, graph_nodes, state_cap, strict = args
    graph = linear(graph_nodes)
    total = 0
    elapsed = 0.0
    for s in seeds:
        c = gen_random_circuit(RandomCircuitSpec(qubits, gt, frac, s))
        t0 = time.perf_counter()
        res = solve_exact(c, graph, strict=strict, state_cap=state_cap)
        elapsed += time.perf_counter() - t0
        if res.cost == math.inf:
            raise RuntimeError("unsolvable instance in benchmark sweep")
        total += int(res.cost)
    return total, elapsed


def run_benchmark(qubits: int, gate_range, samples: int, seed: int, *,
                  two_qubit_fraction: float = 1.0, graph_nodes: int | None = None,
                  threads: int = 1, state_cap: int = DEFAULT_STATE_CAP,
                  strict: bool = False) -> list[ExperimentRow]:
    """Solve `samples` random circuits per gate count on a linear graph
    (graph_nodes nodes, default one per qubit) and average the costs."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if threads < 1:
        raise ValueError("threads must be at least 1")
    nodes = qubits if graph_nodes is None else graph_nodes
    rows = []
    for gt in gate_range:
        seeds = [_child_seed(seed, qubits, gt, i) for i in range(samples)]
        jobs = []
        if threads == 1:
            jobs.append((qubits, gt, two_qubit_fraction, seeds, nodes, state_cap, strict))
            parts = [_solve_chunk(job) for job in jobs]
        else:
            step = -(-samples // threads)
            for lo in range(0, samples, step):
                jobs.append((qubits, gt, two_qubit_fraction, seeds[lo:lo + step],
                             nodes, state_cap, strict))
            with ProcessPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(_solve_chunk, jobs))
        total = sum(p[0] for p in parts)
        elapsed = sum(p[1] for p in parts)
        rows.append(ExperimentRow(
            gt=gt, qt=qubits,
            gt_add=round(total / samples, 3),
            time=elapsed / samples,
            samples=samples, seed=seed,
        ))
    return rows


def emit_csv(rows: list[ExperimentRow]) -> str:
    """gt_add keeps exactly 3 decimals; time round-trips via repr."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.gt},{r.qt},{r.gt_add:.3f},{r.time!r},{r.samples},{r.seed}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[ExperimentRow]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"expected header {CSV_HEADER!r}")
    rows = []
    for ln in lines[1:]:
        fields = ln.split(",")
        if len(fields) != 6:
            raise ValueError(f"expected 6 fields, got {len(fields)}")
        rows.append(ExperimentRow(
            gt=int(fields[0]), qt=int(fields[1]), gt_add=float(fields[2]),
            time=float(fields[3]), samples=int(fields[4]), seed=int(fields[5]),
        ))
    return rows
