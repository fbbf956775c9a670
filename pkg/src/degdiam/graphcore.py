"""Immutable compact graphs and their distance/cycle metrics.

A :class:`CompactGraph` stores adjacency in offset-array form: the neighbors
of vertex ``v`` are ``neighbors[offsets[v]:offsets[v + 1]]``, strictly
ascending. Every metric in this module is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from numba import njit

UNREACHED = np.uint32(0xFFFFFFFF)
INF = math.inf


class GraphError(ValueError):
    """Raised when adjacency data violates the CompactGraph invariants."""


class AdjacencyFormatError(GraphError):
    """Malformed adjacency-list file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(ValueError):
    """Distance requested between vertices in different components."""

    def __init__(self, source: int, witness: int):
        self.source = source
        self.witness = witness
        super().__init__(
            f"infinite diameter: vertex {witness} unreachable from vertex {source}"
        )


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _bfs(offsets, nbrs, source, dist, queue):
    n = offsets.shape[0] - 1
    for i in range(n):
        dist[i] = 0xFFFFFFFF
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for k in range(offsets[u], offsets[u + 1]):
            v = nbrs[k]
            if dist[v] == 0xFFFFFFFF:
                dist[v] = du
                queue[tail] = v
                tail += 1
    # tail = reached count; last queued vertex has the maximal distance
    return tail, dist[queue[tail - 1]]


@njit(cache=True)
def _all_sources(offsets, nbrs, sources):
    """Per-source eccentricity and total distance; stops at the first unreached."""
    n = offsets.shape[0] - 1
    dist = np.empty(n, dtype=np.uint32)
    queue = np.empty(n, dtype=np.int64)
    ecc = np.zeros(sources.shape[0], dtype=np.int64)
    total = 0
    for i in range(sources.shape[0]):
        s = sources[i]
        reached, e = _bfs(offsets, nbrs, s, dist, queue)
        if reached < n:
            for w in range(n):
                if dist[w] == 0xFFFFFFFF:
                    return ecc, total, s, w
        ecc[i] = e
        for w in range(n):
            total += dist[w]
    return ecc, total, -1, -1


@njit(cache=True)
def _girth(offsets, nbrs, sources, best):
    n = offsets.shape[0] - 1
    dist = np.empty(n, dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for i in range(sources.shape[0]):
        s = sources[i]
        for w in range(n):
            dist[w] = -1
        dist[s] = 0
        parent[s] = -1
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            # every cycle closed from here on has length >= 2*dist[u] + 1
            if 2 * dist[u] + 1 >= best:
                break
            for k in range(offsets[u], offsets[u + 1]):
                v = nbrs[k]
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
                elif v != parent[u]:
                    c = dist[u] + dist[v] + 1
                    if c < best:
                        best = c
    return best


@njit(cache=True)
def _two_colour(offsets, nbrs):
    n = offsets.shape[0] - 1
    colour = np.full(n, -1, dtype=np.int8)
    queue = np.empty(n, dtype=np.int64)
    for r in range(n):
        if colour[r] >= 0:
            continue
        colour[r] = 0
        queue[0] = r
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(offsets[u], offsets[u + 1]):
                v = nbrs[k]
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue[tail] = v
                    tail += 1
                elif colour[v] == colour[u]:
                    return False
    return True


# ---------------------------------------------------------------------------
# CompactGraph
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CompactGraph:
    offsets: np.ndarray
    neighbors: np.ndarray

    def __post_init__(self):
        self.offsets.setflags(write=False)
        self.neighbors.setflags(write=False)

    @property
    def n(self) -> int:
        return self.offsets.shape[0] - 1

    @property
    def m(self) -> int:
        return self.neighbors.shape[0] // 2

    def adj(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v] : self.offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def adjacency_lists(self) -> list[list[int]]:
        return [self.adj(v).tolist() for v in range(self.n)]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adj(u)
        i = np.searchsorted(row, v)
        return bool(i < row.shape[0] and row[i] == v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompactGraph):
            return NotImplemented
        return np.array_equal(self.offsets, other.offsets) and np.array_equal(
            self.neighbors, other.neighbors
        )

    def __repr__(self) -> str:
        return f"CompactGraph(n={self.n}, m={self.m})"

    @classmethod
    def from_csr(
        cls, offsets: np.ndarray, neighbors: np.ndarray, *, check: bool = True
    ) -> "CompactGraph":
        g = cls(
            np.ascontiguousarray(offsets, dtype=np.int64),
            np.ascontiguousarray(neighbors, dtype=np.int32),
        )
        if check:
            g.check()
        return g

    @classmethod
    def from_adjacency(cls, lists: Sequence[Iterable[int]]) -> "CompactGraph":
        rows = [list(r) for r in lists]
        offsets = np.zeros(len(rows) + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([len(r) for r in rows])
        flat = [v for r in rows for v in r]
        return cls.from_csr(offsets, np.asarray(flat, dtype=np.int64))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CompactGraph":
        """Build from unordered edge pairs; duplicates and loops are errors."""
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise GraphError("edge endpoint out of range")
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.add.at(offsets, src + 1, 1)
        return cls.from_csr(np.cumsum(offsets), dst)

    @classmethod
    def from_neighbor_matrix(cls, table: np.ndarray) -> "CompactGraph":
        """Regular graph from an ``n x k`` array of (unsorted) neighbors."""
        n, k = table.shape
        rows = np.sort(table, axis=1)
        offsets = np.arange(n + 1, dtype=np.int64) * k
        return cls.from_csr(offsets, rows.reshape(-1))

    def check(self) -> None:
        """Verify loops, duplicates, ordering and symmetry."""
        n = self.n
        off, nb = self.offsets, self.neighbors
        if off[0] != 0 or np.any(np.diff(off) < 0) or off[-1] != nb.shape[0]:
            raise GraphError("malformed offset array")
        if nb.size == 0:
            return
        if nb.min() < 0 or nb.max() >= n:
            raise GraphError("neighbor id out of range")
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(off))
        loops = np.flatnonzero(src == nb)
        if loops.size:
            raise GraphError(f"self-loop at vertex {src[loops[0]]}")
        same_row = src[1:] == src[:-1]
        bad = np.flatnonzero(same_row & (nb[1:] <= nb[:-1]))
        if bad.size:
            v = src[bad[0]]
            raise GraphError(
                f"neighbors of vertex {v} not strictly ascending (duplicate or unsorted)"
            )
        if nb.shape[0] % 2:
            raise GraphError("odd adjacency length: graph is not symmetric")
        fwd = src * n + nb
        rev = np.sort(nb.astype(np.int64) * n + src)
        mism = np.flatnonzero(fwd != rev)
        if mism.size:
            i = mism[0]
            raise GraphError(
                f"asymmetric adjacency near edge ({src[i]}, {nb[i]})"
            )

    def edges(self) -> np.ndarray:
        """Canonical edge table: rows ``(u, v)`` with ``u < v``, lexicographic.

        Row ``i`` is edge id ``i``.
        """
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = src < self.neighbors
        return np.column_stack([src[keep], self.neighbors[keep].astype(np.int64)])


# ---------------------------------------------------------------------------
# adjacency-list files
# ---------------------------------------------------------------------------


def to_adjacency_text(g: CompactGraph) -> str:
    lines = [str(g.n)]
    lines.extend(" ".join(map(str, g.adj(v).tolist())) for v in range(g.n))
    return "\n".join(lines) + "\n"


def from_adjacency_text(text: str) -> CompactGraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise AdjacencyFormatError("empty file", 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise AdjacencyFormatError(f"expected vertex count, got {lines[0]!r}", 1)
    if n < 0:
        raise AdjacencyFormatError("negative vertex count", 1)
    body = lines[1:]
    if len(body) != n:
        raise AdjacencyFormatError(
            f"expected {n} neighbor lines, found {len(body)}", min(len(lines), n + 1) + 1
        )
    rows = []
    for i, line in enumerate(body):
        toks = line.split()
        try:
            row = [int(t) for t in toks]
        except ValueError:
            bad = next(t for t in toks if not t.lstrip("-").isdigit())
            raise AdjacencyFormatError(f"bad token {bad!r}", i + 2)
        rows.append(row)
    for i, row in enumerate(rows):
        for a, b in zip(row, row[1:]):
            if b <= a:
                raise AdjacencyFormatError(f"neighbors not strictly ascending ({a}, {b})", i + 2)
        for v in row:
            if not 0 <= v < n:
                raise AdjacencyFormatError(f"neighbor {v} out of range", i + 2)
            if v == i:
                raise AdjacencyFormatError(f"self-loop at vertex {i}", i + 2)
    sets = [set(r) for r in rows]
    for i, row in enumerate(rows):
        for v in row:
            if i not in sets[v]:
                raise AdjacencyFormatError(
                    f"vertex {i} lists {v} but vertex {v} does not list {i}", i + 2
                )
    try:
        return CompactGraph.from_adjacency(rows)
    except GraphError as exc:
        raise AdjacencyFormatError(str(exc)) from exc


def to_adjacency_file(g: CompactGraph, path: str | Path) -> None:
    Path(path).write_bytes(to_adjacency_text(g).encode("ascii"))


def from_adjacency_file(path: str | Path) -> CompactGraph:
    return from_adjacency_text(Path(path).read_bytes().decode("ascii"))


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def bfs_eccentricity(g: CompactGraph, source: int) -> tuple[int, np.ndarray]:
    """Eccentricity of ``source`` and its uint32 distance array.

    Unreachable vertices hold :data:`UNREACHED`; the eccentricity is the
    largest finite distance.
    """
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range for n={g.n}")
    dist = np.empty(g.n, dtype=np.uint32)
    queue = np.empty(g.n, dtype=np.int64)
    _, ecc = _bfs(g.offsets, g.neighbors, source, dist, queue)
    return int(ecc), dist


def _sources(g: CompactGraph, assume_vertex_transitive: bool) -> np.ndarray:
    if g.n == 0:
        raise GraphError("empty graph")
    if assume_vertex_transitive:
        return np.zeros(1, dtype=np.int64)
    return np.arange(g.n, dtype=np.int64)


def eccentricities(g: CompactGraph) -> np.ndarray:
    ecc, _, s, w = _all_sources(g.offsets, g.neighbors, _sources(g, False))
    if s >= 0:
        raise DisconnectedGraphError(int(s), int(w))
    return ecc


def diameter(g: CompactGraph, assume_vertex_transitive: bool = False) -> int:
    """Exact diameter.

    With ``assume_vertex_transitive`` only vertex 0 is searched, which is
    exact for Cayley graphs and other vertex-transitive graphs.
    """
    ecc, _, s, w = _all_sources(
        g.offsets, g.neighbors, _sources(g, assume_vertex_transitive)
    )
    if s >= 0:
        raise DisconnectedGraphError(int(s), int(w))
    return int(ecc.max())


def girth(g: CompactGraph, assume_vertex_transitive: bool = False) -> int | float:
    """Length of a shortest cycle, or ``math.inf`` for a forest.

    A single BFS already finds the exact girth when the source lies on a
    shortest cycle, so vertex-transitive graphs need only vertex 0.
    """
    if g.n == 0:
        return INF
    sources = _sources(g, assume_vertex_transitive)
    best = _girth(g.offsets, g.neighbors, sources, np.int64(g.n + 1))
    return INF if best > g.n else int(best)


def average_distance(g: CompactGraph, assume_vertex_transitive: bool = False) -> Fraction:
    """Mean distance over ordered pairs of distinct vertices, as a Fraction."""
    if g.n < 2:
        raise GraphError("average distance needs at least two vertices")
    sources = _sources(g, assume_vertex_transitive)
    _, total, s, w = _all_sources(g.offsets, g.neighbors, sources)
    if s >= 0:
        raise DisconnectedGraphError(int(s), int(w))
    return Fraction(int(total), len(sources) * (g.n - 1))


def is_bipartite(g: CompactGraph) -> bool:
    return bool(_two_colour(g.offsets, g.neighbors))


def format_fraction(q: Fraction, places: int = 6) -> str:
    """Decimal rendering of ``q`` rounded half-to-even at ``places`` digits."""
    scale = 10**places
    num = abs(q.numerator) * scale
    whole, rem = divmod(num, q.denominator)
    if 2 * rem > q.denominator or (2 * rem == q.denominator and whole % 2):
        whole += 1
    sign = "-" if q < 0 and whole else ""
    ip, fp = divmod(whole, scale)
    return f"{sign}{ip}.{fp:0{places}d}" if places else f"{sign}{ip}"


@dataclass(frozen=True)
class GraphStats:
    order: int
    size: int
    min_degree: int
    max_degree: int
    is_regular: bool
    connected: bool
    diameter: int | float
    girth: int | float
    average_distance: Fraction | None
    bipartite: bool

    @property
    def average_distance_str(self) -> str:
        if self.average_distance is None:
            return "inf"
        return format_fraction(self.average_distance)

    def lines(self) -> list[str]:
        return [
            f"order {self.order}",
            f"edges {self.size}",
            f"min_degree {self.min_degree}",
            f"max_degree {self.max_degree}",
            f"regular {'yes' if self.is_regular else 'no'}",
            f"connected {'yes' if self.connected else 'no'}",
            f"diameter {self.diameter}",
            f"girth {self.girth}",
            f"average_distance {self.average_distance_str}",
            f"bipartite {'yes' if self.bipartite else 'no'}",
        ]


def stats(g: CompactGraph, assume_vertex_transitive: bool = False) -> GraphStats:
    deg = g.degrees()
    lo = int(deg.min()) if g.n else 0
    hi = int(deg.max()) if g.n else 0
    try:
        d = diameter(g, assume_vertex_transitive) if g.n else 0
        avg = average_distance(g, assume_vertex_transitive) if g.n >= 2 else None
        connected = g.n > 0
    except DisconnectedGraphError:
        d, avg, connected = INF, None, False
    if not connected:
        # a disconnected graph is never vertex-transitive-safe for shortcuts
        assume_vertex_transitive = False
    return GraphStats(
        order=g.n,
        size=g.m,
        min_degree=lo,
        max_degree=hi,
        is_regular=lo == hi,
        connected=connected,
        diameter=d,
        girth=girth(g, assume_vertex_transitive),
        average_distance=avg,
        bipartite=is_bipartite(g),
    )


# ---------------------------------------------------------------------------
# small standard graphs used by tests and the CLI
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> CompactGraph:
    return CompactGraph.from_adjacency([[u for u in range(n) if u != v] for v in range(n)])


def cycle_graph(n: int) -> CompactGraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return CompactGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> CompactGraph:
    return CompactGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> CompactGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CompactGraph.from_edges(10, outer + spokes + inner)
