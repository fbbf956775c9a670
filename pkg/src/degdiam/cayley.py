"""Cayley graphs ``Cay(G, S)`` with right multiplication: ``g ~ g*s``.

Small orders are materialised as a :class:`CompactGraph`; large orders are
searched implicitly, generating neighbors level by level from the group
arithmetic without ever storing an edge list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .graphcore import CompactGraph
from .groups import SemidirectGroup

EXPLICIT_CAP = 2_000_000


class ConnectionSetError(ValueError):
    pass


class NotGeneratingError(ValueError):
    def __init__(self, reached: int, order: int):
        self.reached = reached
        self.order = order
        super().__init__(
            f"generators do not generate the group: reached {reached} of {order} elements"
        )


class ExplicitSizeError(ValueError):
    pass


@dataclass(frozen=True)
class ConnectionSet:
    elements: tuple[int, ...]
    involutions: tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def close_connection_set(group, generators: Iterable[int]) -> ConnectionSet:
    """Return ``S u S^-1`` (sorted, deduplicated) for element indices ``S``."""
    gens = [int(g) for g in generators]
    if not gens:
        raise ConnectionSetError("empty generator list")
    closure: set[int] = set()
    involutions = []
    for g in gens:
        if g == group.identity:
            raise ConnectionSetError(f"identity {group.format(g)} in generator list")
        gi = group.inv(g)
        if gi == g and g not in closure:
            involutions.append(g)
        closure.add(g)
        closure.add(gi)
    return ConnectionSet(tuple(sorted(closure)), tuple(involutions))


def build_cayley_explicit(group, conn: ConnectionSet, cap: int = EXPLICIT_CAP) -> CompactGraph:
    n = group.order
    if n > cap:
        raise ExplicitSizeError(
            f"order {n} exceeds explicit-build cap {cap}; use cayley_diameter_implicit"
        )
    idx = np.arange(n, dtype=np.int64)
    cols = [group.right_mul(idx, s) for s in conn.elements]
    return CompactGraph.from_neighbor_matrix(np.column_stack(cols))


@dataclass(frozen=True)
class ImplicitBFS:
    order: int
    degree: int
    reached: int
    histogram: tuple[int, ...]  # histogram[d] = elements at distance d from identity

    @property
    def eccentricity(self) -> int:
        return len(self.histogram) - 1

    @property
    def generates(self) -> bool:
        return self.reached == self.order

    @property
    def average_distance(self) -> Fraction | None:
        if not self.generates or self.order < 2:
            return None
        total = sum(d * c for d, c in enumerate(self.histogram))
        return Fraction(total, self.order - 1)


@njit(cache=True)
def _sd_bfs(M, N, powers, gx, gy, mirrored):
    """Level-synchronous BFS over Z_M x|_A Z_N from the identity.

    One bit per element marks visited; two int32 queues hold the current and
    next frontier.
    """
    n = M * N
    seen = np.zeros((n + 7) // 8, dtype=np.uint8)
    cur = np.empty(n, dtype=np.int32)
    nxt = np.empty(n, dtype=np.int32)
    hist = np.zeros(n, dtype=np.int64)
    seen[0] = 1
    cur[0] = 0
    ncur = 1
    hist[0] = 1
    level = 0
    k = gx.shape[0]
    while ncur > 0:
        nnext = 0
        for i in range(ncur):
            x, y = divmod(np.int64(cur[i]), N)
            for j in range(k):
                sx = gx[j]
                if mirrored:
                    ny = (gy[j] * powers[x] + y) % N
                else:
                    ny = (y * powers[sx] + gy[j]) % N
                nx = x + sx
                if nx >= M:
                    nx -= M
                v = nx * N + ny
                byte = v >> 3
                bit = np.uint8(1) << np.uint8(v & 7)
                if seen[byte] & bit == 0:
                    seen[byte] |= bit
                    nxt[nnext] = v
                    nnext += 1
        if nnext == 0:
            break
        level += 1
        hist[level] = nnext
        cur, nxt = nxt, cur
        ncur = nnext
    return hist[: level + 1]


def _sd_histogram(group, conn: ConnectionSet) -> np.ndarray:
    gx = np.array([group.decode(s).x for s in conn.elements], dtype=np.int64)
    gy = np.array([group.decode(s).y for s in conn.elements], dtype=np.int64)
    return _sd_bfs(group.M, group.N, group.powers, gx, gy, group.mirrored)


def cayley_bfs(group, conn: ConnectionSet) -> ImplicitBFS:
    """Breadth-first search from the identity; never raises on non-generation."""
    n = group.order
    if isinstance(group, SemidirectGroup) and n < 2**31:
        hist = tuple(int(c) for c in _sd_histogram(group, conn))
        return ImplicitBFS(n, conn.degree, sum(hist), hist)
    visited = np.zeros(n, dtype=np.bool_)
    frontier = np.array([group.identity], dtype=np.int64)
    visited[frontier] = True
    hist = [1]
    reached = 1
    while True:
        fresh = []
        for s in conn.elements:
            cand = group.right_mul(frontier, s)
            cand = cand[~visited[cand]]
            if cand.size:
                cand = np.unique(cand)
                visited[cand] = True
                fresh.append(cand)
        if not fresh:
            break
        frontier = np.concatenate(fresh) if len(fresh) > 1 else fresh[0]
        hist.append(int(frontier.size))
        reached += int(frontier.size)
    return ImplicitBFS(n, conn.degree, reached, tuple(hist))


def cayley_diameter_implicit(group, conn: ConnectionSet) -> tuple[int, int]:
    """``(diameter, reached)``; raises :class:`NotGeneratingError` if disconnected."""
    res = cayley_bfs(group, conn)
    if not res.generates:
        raise NotGeneratingError(res.reached, res.order)
    return res.eccentricity, res.reached


def distance_histogram(dist: np.ndarray) -> tuple[int, ...]:
    """Histogram of a uint32 distance array from graphcore BFS."""
    return tuple(int(c) for c in np.bincount(dist.astype(np.int64)))


def parse_pairs(text: str) -> list[tuple[int, int]]:
    """Parse ``"x1,y1 x2,y2"`` or ``"[x1,y1],[x2,y2]"`` into integer pairs."""
    import re

    return [(int(a), int(b)) for a, b in re.findall(r"(-?\d+)\s*,\s*(-?\d+)", text)]


def generator_indices(group, elements: Sequence[Sequence[int]]) -> list[int]:
    return [group.encode(tuple(e)) for e in elements]
