"""Moore bound, LCF cubic graphs and the vertex/edge pairing construction."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graphcore import CompactGraph, GraphError


class ConstructionError(ValueError):
    pass


class PairingError(ValueError):
    def __init__(self, message: str, edge: int | None = None):
        self.edge = edge
        super().__init__(message)


# Host graph for the (3,8) pairing construction: 144 vertices, cubic,
# bipartite, girth 8, diameter 7. The sequence is accepted on those four
# measured statistics only; it is not known to be the arc-transitive graph
# of that order (its automorphism group has order 192 and two vertex orbits).
FOSTER_144_SHIFTS: tuple[int, ...] = (21, 51, -39, -21, -51, 39)
FOSTER_144_REPEATS = 24


def moore_bound(delta: int, d: int) -> int:
    """Largest order allowed for maximum degree ``delta`` and diameter ``d``.

    ``delta == 2`` gives the odd cycle bound ``2d + 1``.
    """
    if delta < 2 or d < 1:
        raise ValueError(f"Moore bound needs delta >= 2 and d >= 1, got ({delta}, {d})")
    if delta == 2:
        return 2 * d + 1
    return 1 + delta * ((delta - 1) ** d - 1) // (delta - 2)


def lcf_graph(shifts: Sequence[int], repeats: int) -> CompactGraph:
    """Hamiltonian cycle ``0..n-1`` plus chords ``i -> i + shifts[i % k]``."""
    k = len(shifts)
    if k == 0 or repeats < 1:
        raise ConstructionError("LCF needs a non-empty shift list and repeats >= 1")
    n = k * repeats
    if n < 4:
        raise ConstructionError(f"LCF graph on {n} vertices is degenerate")
    chord = np.empty(n, dtype=np.int64)
    for i in range(n):
        chord[i] = (i + shifts[i % k]) % n
    for i in range(n):
        j = int(chord[i])
        if j == i or j == (i + 1) % n or j == (i - 1) % n:
            raise ConstructionError(
                f"chord {i} -> {j} (shift {shifts[i % k]}) collides with the cycle"
            )
        if chord[j] != i:
            raise ConstructionError(
                f"inconsistent chords: {i} -> {j} but {j} -> {int(chord[j])}"
            )
    idx = np.arange(n)
    table = np.column_stack([(idx - 1) % n, (idx + 1) % n, chord])
    return CompactGraph.from_neighbor_matrix(table)


def foster_graph() -> CompactGraph:
    return lcf_graph(FOSTER_144_SHIFTS, FOSTER_144_REPEATS)


@dataclass(frozen=True)
class PairingMap:
    host: CompactGraph
    pairs: tuple[tuple[int, int], ...]
    shared_endpoint_pairs: int = 0

    @property
    def partner(self) -> np.ndarray:
        out = np.empty(self.host.m, dtype=np.int64)
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out


def validate_pairing(host: CompactGraph, pairs: Iterable[Sequence[int]]) -> PairingMap:
    """Check that ``pairs`` is a perfect matching on the host's edge ids.

    Pairs sharing an endpoint are legal but counted in
    ``shared_endpoint_pairs``: each one closes a triangle in the pairing graph.
    """
    m = host.m
    if m % 2:
        raise PairingError(f"host has {m} edges; an odd edge set has no complete pairing")
    seen = np.zeros(m, dtype=np.bool_)
    norm = []
    for pair in pairs:
        if len(pair) != 2:
            raise PairingError(f"pair {tuple(pair)} does not have two entries")
        a, b = int(pair[0]), int(pair[1])
        for e in (a, b):
            if not 0 <= e < m:
                raise PairingError(f"edge id {e} out of range 0..{m - 1}", e)
        if a == b:
            raise PairingError(f"edge {a} paired with itself", a)
        for e in (a, b):
            if seen[e]:
                raise PairingError(f"edge {e} appears in more than one pair", e)
            seen[e] = True
        norm.append((min(a, b), max(a, b)))
    missing = np.flatnonzero(~seen)
    if missing.size:
        raise PairingError(f"edge {missing[0]} is not paired", int(missing[0]))
    edges = host.edges()
    shared = sum(1 for a, b in norm if set(edges[a].tolist()) & set(edges[b].tolist()))
    return PairingMap(host, tuple(sorted(norm)), shared)


def edge_pairing_graph(p: PairingMap) -> CompactGraph:
    """Graph on ``V(F) u E(F)``: incidence edges plus one edge per pair.

    Vertex ``v`` of the host keeps id ``v``; edge id ``e`` becomes ``n + e``.
    """
    host = p.host
    n, m = host.n, host.m
    edges = host.edges()
    ids = np.arange(m, dtype=np.int64)
    inc = np.concatenate(
        [np.column_stack([edges[:, 0], n + ids]), np.column_stack([edges[:, 1], n + ids])]
    )
    pr = np.asarray(p.pairs, dtype=np.int64).reshape(-1, 2) + n
    return CompactGraph.from_edges(n + m, np.concatenate([inc, pr]))


def read_pairing(path: str | Path) -> tuple[int, list[tuple[int, int]]]:
    """Parse a pairing file: ``m`` then ``m/2`` lines of two edge ids."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise PairingError(f"{path}: empty pairing file")
    try:
        m = int(lines[0])
    except ValueError:
        raise PairingError(f"{path}: line 1: expected edge count, got {lines[0]!r}")
    pairs = []
    for no, line in enumerate(lines[1:], start=2):
        toks = line.split()
        if not toks:
            continue
        if len(toks) != 2:
            raise PairingError(f"{path}: line {no}: expected two edge ids, got {line!r}")
        try:
            pairs.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise PairingError(f"{path}: line {no}: non-integer edge id in {line!r}")
    if len(pairs) * 2 != m:
        raise PairingError(f"{path}: header says {m} edges but {len(pairs)} pairs listed")
    return m, pairs


def pairing_text(p: PairingMap) -> str:
    return f"{p.host.m}\n" + "".join(f"{a} {b}\n" for a, b in p.pairs)


def write_pairing(p: PairingMap, path: str | Path) -> None:
    Path(path).write_bytes(pairing_text(p).encode("ascii"))


def load_pairing(host: CompactGraph, path: str | Path) -> PairingMap:
    m, pairs = read_pairing(path)
    if m != host.m:
        raise PairingError(f"{path}: pairing is for {m} edges, host has {host.m}")
    return validate_pairing(host, pairs)


def edge_table_text(g: CompactGraph) -> str:
    return "".join(f"{i} {u} {v}\n" for i, (u, v) in enumerate(g.edges().tolist()))


def check_graph_degree(g: CompactGraph, k: int) -> None:
    deg = g.degrees()
    if deg.size and (deg.min() != k or deg.max() != k):
        raise GraphError(f"expected a {k}-regular graph")
