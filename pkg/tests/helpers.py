"""Shared fixtures-by-function for the test modules."""

from __future__ import annotations

import math

import numpy as np

from degdiam.cayley import close_connection_set
from degdiam.groups import SemidirectSpec, sd_validate
from degdiam.records import CHECKS, SemidirectCheck, parse_generator_text


def small_specs(max_order: int):
    """Every valid (M, A, N) with N >= 2 and M*N <= max_order."""
    out = []
    for N in range(2, max_order // 1 + 1):
        for M in range(1, max_order // N + 1):
            for A in range(1, N):
                if math.gcd(A, N) == 1 and pow(A, M, N) == 1:
                    out.append(SemidirectSpec(M, A, N))
    return out


def random_connection(group, rng, k: int):
    """Up to ``k`` random non-identity generators, closed under inversion."""
    picks = rng.choice(np.arange(1, group.order), size=min(k, group.order - 1), replace=False)
    return close_connection_set(group, [int(p) for p in picks])


def record_semidirect(max_order: int | None = None):
    """``(key, group, connection set)`` for the self-consistent semidirect rows."""
    rows = []
    for key, chk in sorted(CHECKS.items()):
        if not isinstance(chk, SemidirectCheck) or key == (8, 5):
            continue
        if max_order is not None and chk.M * chk.N > max_order:
            continue
        g = sd_validate(SemidirectSpec(chk.M, chk.A, chk.N))
        gens, _ = parse_generator_text(chk.generators)
        rows.append((key, g, close_connection_set(g, [g.encode(e) for e in gens])))
    return rows
