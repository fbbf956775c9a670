"""Finite group backends addressed by integer element indices.

Three families are provided:

* :class:`SemidirectGroup` -- ``Z_M x|_A Z_N`` with elements ``(x, y)``,
  ``x`` mod ``M`` acting on ``y`` mod ``N`` through powers of ``A``;
* :class:`TwoCoordGroup` -- ``(Z_m x Z_m) x| Z_2`` where the ``Z_2`` factor
  swaps the two coordinates;
* :class:`TableGroup` -- any group given by its multiplication table.

All of them expose the same small surface used by the Cayley code:
``order``, ``identity``, ``mul``, ``inv``, ``right_mul`` (vectorised over an
index array), ``encode``/``decode`` and ``format``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np


class GroupError(ValueError):
    pass


class ActionNotInvertible(GroupError):
    pass


class ActionOrderError(GroupError):
    pass


class TableGroupError(GroupError):
    """Multiplication table failed a group axiom; ``witness`` names the culprit."""

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        self.witness = witness
        super().__init__(message)


class SdElement(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class SemidirectSpec:
    M: int
    A: int
    N: int

    @property
    def order(self) -> int:
        return self.M * self.N

    def __str__(self) -> str:
        return f"Z_{self.M} x|_{self.A} Z_{self.N}"


@dataclass(frozen=True)
class TwoCoordSpec:
    m: int

    @property
    def order(self) -> int:
        return 2 * self.m * self.m

    def __str__(self) -> str:
        return f"(Z_{self.m} x Z_{self.m}) x| Z_2"


class SemidirectGroup:
    """Validated ``Z_M x|_A Z_N``.

    The product is ``(x1, y1)(x2, y2) = (x1 + x2, y1 * A**x2 + y2)``. With
    ``mirrored=True`` the opposite group is used instead, i.e.
    ``(x1 + x2, y2 * A**x1 + y1)``; its undirected Cayley graphs are
    isomorphic to the default ones through ``g -> g**-1``.
    """

    def __init__(self, spec: SemidirectSpec, mirrored: bool = False):
        M, A, N = spec.M, spec.A, spec.N
        if M < 1 or N < 1:
            raise GroupError(f"moduli must be positive, got M={M}, N={N}")
        if N == 1:
            if A not in (0, 1):
                raise GroupError("A must be 1 when N = 1")
        elif not 1 <= A < N:
            raise GroupError(f"A={A} outside [1, N={N})")
        if gcd(A, N) != 1:
            raise ActionNotInvertible(f"action not invertible: gcd({A}, {N}) = {gcd(A, N)}")
        if pow(A, M, N) != 1 % N:
            raise ActionOrderError(
                f"action order does not divide M: {A}^{M} mod {N} = {pow(A, M, N)}"
            )
        self.spec = spec
        self.mirrored = mirrored
        self.M, self.A, self.N = M, A, N
        pw = np.empty(M, dtype=np.int64)
        acc = 1 % N
        for x in range(M):
            pw[x] = acc
            acc = acc * A % N
        pw.setflags(write=False)
        self.powers = pw

    order = property(lambda self: self.M * self.N)
    identity = 0

    def __repr__(self) -> str:
        tag = ", mirrored" if self.mirrored else ""
        return f"SemidirectGroup({self.spec}{tag})"

    def encode(self, g: Sequence[int]) -> int:
        x, y = g
        if not (0 <= x < self.M and 0 <= y < self.N):
            raise GroupError(f"element [{x},{y}] outside {self.spec}")
        return x * self.N + y

    def decode(self, i: int) -> SdElement:
        x, y = divmod(int(i), self.N)
        return SdElement(x, y)

    def format(self, i: int) -> str:
        x, y = self.decode(i)
        return f"[{x},{y}]"

    def mul_elements(self, g: Sequence[int], h: Sequence[int]) -> SdElement:
        M, N, pw = self.M, self.N, self.powers
        if self.mirrored:
            return SdElement((g[0] + h[0]) % M, (h[1] * int(pw[g[0]]) + g[1]) % N)
        return SdElement((g[0] + h[0]) % M, (g[1] * int(pw[h[0]]) + h[1]) % N)

    def inv_element(self, g: Sequence[int]) -> SdElement:
        x, y = g
        xi = (-x) % self.M
        # y * A**xi + yi = 0 in either convention
        return SdElement(xi, (-y * int(self.powers[xi])) % self.N)

    def mul(self, i, j):
        """Product of index arrays (or scalars)."""
        N, M, pw = self.N, self.M, self.powers
        x1, y1 = np.divmod(i, N)
        x2, y2 = np.divmod(j, N)
        x = (x1 + x2) % M
        if self.mirrored:
            y = (y2 * pw[x1] + y1) % N
        else:
            y = (y1 * pw[x2] + y2) % N
        out = x * N + y
        return int(out) if np.ndim(out) == 0 else out

    def inv(self, i):
        N, M, pw = self.N, self.M, self.powers
        x, y = np.divmod(i, N)
        xi = (-x) % M
        out = xi * N + (-y * pw[xi]) % N
        return int(out) if np.ndim(out) == 0 else out

    def right_mul(self, idx: np.ndarray, s: int) -> np.ndarray:
        """``idx * s`` for every index in ``idx`` (int64 array)."""
        sx, sy = divmod(int(s), self.N)
        x, y = np.divmod(idx, self.N)
        if self.mirrored:
            y += sy * self.powers[x]
        x += sx
        x %= self.M
        if not self.mirrored:
            y *= self.powers[sx]
            y += sy
        y %= self.N
        x *= self.N
        x += y
        return x

    def parse_element(self, text: str) -> int:
        x, y = (int(t) for t in text.strip().strip("[]").split(","))
        return self.encode((x, y))


def sd_validate(spec: SemidirectSpec, mirrored: bool = False) -> SemidirectGroup:
    return SemidirectGroup(spec, mirrored)


def sd_mul(group: SemidirectGroup, g: Sequence[int], h: Sequence[int]) -> SdElement:
    return group.mul_elements(g, h)


def sd_inv(group: SemidirectGroup, g: Sequence[int]) -> SdElement:
    return group.inv_element(g)


class TwoCoordGroup:
    """``(Z_m x Z_m) x| Z_2``; the nontrivial ``Z_2`` element swaps coordinates.

    Elements are ``(a, b, c)`` with index ``c*m*m + a*m + b``.
    """

    def __init__(self, spec: TwoCoordSpec):
        if spec.m < 1:
            raise GroupError(f"modulus must be positive, got {spec.m}")
        self.spec = spec
        self.m = spec.m

    order = property(lambda self: 2 * self.m * self.m)
    identity = 0

    def __repr__(self) -> str:
        return f"TwoCoordGroup({self.spec})"

    def encode(self, g: Sequence[int]) -> int:
        a, b, c = g
        m = self.m
        if not (0 <= a < m and 0 <= b < m and c in (0, 1)):
            raise GroupError(f"element ({a},{b},{c}) outside {self.spec}")
        return (c * m + a) * m + b

    def decode(self, i: int) -> tuple[int, int, int]:
        m = self.m
        c, rest = divmod(int(i), m * m)
        a, b = divmod(rest, m)
        return a, b, c

    def format(self, i: int) -> str:
        return "({},{},{})".format(*self.decode(i))

    def mul_elements(self, g: Sequence[int], h: Sequence[int]) -> tuple[int, int, int]:
        a, b, c = g
        a2, b2, c2 = h
        if c:
            a2, b2 = b2, a2
        m = self.m
        return (a + a2) % m, (b + b2) % m, (c + c2) % 2

    def inv_element(self, g: Sequence[int]) -> tuple[int, int, int]:
        a, b, c = g
        m = self.m
        if c:
            return (-b) % m, (-a) % m, 1
        return (-a) % m, (-b) % m, 0

    def _split(self, i):
        m = self.m
        c, rest = np.divmod(i, m * m)
        a, b = np.divmod(rest, m)
        return a, b, c

    def mul(self, i, j):
        m = self.m
        a, b, c = self._split(i)
        a2, b2, c2 = self._split(j)
        sa = np.where(c == 1, b2, a2)
        sb = np.where(c == 1, a2, b2)
        out = (((c + c2) % 2) * m + (a + sa) % m) * m + (b + sb) % m
        return int(out) if np.ndim(out) == 0 else out

    def inv(self, i):
        m = self.m
        a, b, c = self._split(i)
        na = np.where(c == 1, -b, -a) % m
        nb = np.where(c == 1, -a, -b) % m
        out = (c * m + na) * m + nb
        return int(out) if np.ndim(out) == 0 else out

    def right_mul(self, idx: np.ndarray, s: int) -> np.ndarray:
        sa, sb, sc = self.decode(s)
        m = self.m
        a, b, c = self._split(idx)
        swap = c == 1
        a2 = np.where(swap, sb, sa)
        b2 = np.where(swap, sa, sb)
        return (((c + sc) % 2) * m + (a + a2) % m) * m + (b + b2) % m

    def parse_element(self, text: str) -> int:
        a, b, c = (int(t) for t in text.strip().strip("()[]").split(","))
        return self.encode((a, b, c))


def two_coord_mul(group: TwoCoordGroup, g: Sequence[int], h: Sequence[int]) -> tuple[int, int, int]:
    return group.mul_elements(g, h)


def two_coord_inv(group: TwoCoordGroup, g: Sequence[int]) -> tuple[int, int, int]:
    return group.inv_element(g)


@dataclass
class TableGroup:
    table: np.ndarray
    identity: int = field(init=False)
    inverses: np.ndarray = field(init=False)

    def __post_init__(self):
        self.table = np.ascontiguousarray(self.table, dtype=np.int64)
        self.table.setflags(write=False)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __repr__(self) -> str:
        return f"TableGroup(order={self.order})"

    def encode(self, g: int) -> int:
        g = int(g)
        if not 0 <= g < self.order:
            raise GroupError(f"element {g} outside group of order {self.order}")
        return g

    def decode(self, i: int) -> int:
        return int(i)

    def format(self, i: int) -> str:
        return str(int(i))

    def mul(self, i, j):
        out = self.table[i, j]
        return int(out) if np.ndim(out) == 0 else out

    def inv(self, i):
        out = self.inverses[i]
        return int(out) if np.ndim(out) == 0 else out

    def right_mul(self, idx: np.ndarray, s: int) -> np.ndarray:
        return self.table[idx, s]

    def parse_element(self, text: str) -> int:
        return self.encode(int(text))


def table_group_from_array(
    table: np.ndarray, max_order: int = 2000, allow_large: bool = False
) -> TableGroup:
    """Check closure, identity, inverses and associativity, then wrap."""
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise TableGroupError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if n > max_order and not allow_large:
        raise TableGroupError(
            f"order {n} exceeds the associativity-check cap {max_order}; pass allow_large"
        )
    t = t.astype(np.int64)
    bad = np.argwhere((t < 0) | (t >= n))
    if bad.size:
        a, b = bad[0]
        raise TableGroupError(
            f"closure fails: {a}*{b} = {t[a, b]} outside 0..{n - 1}", (int(a), int(b))
        )
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not ids:
        raise TableGroupError("no two-sided identity element")
    e = ids[0]
    inv = np.full(n, -1, dtype=np.int64)
    for g in range(n):
        right = np.flatnonzero(t[g] == e)
        if right.size != 1 or t[right[0], g] != e:
            raise TableGroupError(f"element {g} has no two-sided inverse", (g,))
        inv[g] = right[0]
    for a in range(n):
        lhs = t[t[a]]  # (a*b)*c, rows b
        rhs = t[a][t]  # a*(b*c)
        diff = np.argwhere(lhs != rhs)
        if diff.size:
            b, c = diff[0]
            raise TableGroupError(
                f"associativity fails at ({a}, {b}, {c})", (a, int(b), int(c))
            )
    grp = TableGroup(t)
    grp.identity = e
    inv.setflags(write=False)
    grp.inverses = inv
    return grp


def table_group_load(
    path: str | Path, max_order: int = 2000, allow_large: bool = False
) -> TableGroup:
    """Read ``n`` followed by ``n`` rows of ``n`` indices; row g, column h is g*h."""
    text = Path(path).read_text()
    toks = text.split()
    if not toks:
        raise TableGroupError(f"{path}: empty file")
    try:
        n = int(toks[0])
        vals = np.array([int(v) for v in toks[1:]], dtype=np.int64)
    except ValueError as exc:
        raise TableGroupError(f"{path}: non-integer token ({exc})") from exc
    if vals.size != n * n:
        raise TableGroupError(f"{path}: expected {n * n} entries, found {vals.size}")
    return table_group_from_array(vals.reshape(n, n), max_order, allow_large)


def read_generator_indices(path: str | Path) -> list[int]:
    return [int(t) for t in Path(path).read_text().split()]
