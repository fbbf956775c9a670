"""Seeded random-restart hill climbing for record candidates.

Two problems are provided: connection sets of a fixed group
(:func:`search_generators`) and complete edge pairings of a fixed host graph
(:func:`search_pairing`). Each restart owns an independent PCG64 stream seeded
from ``(seed, restart)`` and a fixed share of the evaluation budget, so the
restarts can run in any order or in parallel and still merge into the same
log.

Log format: a ``#`` header line, then one line per evaluation::

    eval_id restart move objective description
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cayley import cayley_bfs, close_connection_set
from .constructions import PairingMap, edge_pairing_graph
from .graphcore import CompactGraph, DisconnectedGraphError, diameter, format_fraction, girth

RNG_ALGORITHM = "PCG64"
INFEASIBLE = "inf"


class NoFeasibleCandidate(RuntimeError):
    def __init__(self, log: list[str]):
        self.log = log
        super().__init__(f"budget exhausted after {len(log) - 1} evaluations with no feasible candidate")


@dataclass(frozen=True)
class SearchConfig:
    seed: int
    budget: int
    target_delta: int
    target_diameter: int
    restarts: int = 1
    neighborhood_moves: int = 200
    stop_at_target: bool = True

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.target_delta < 2:
            raise ValueError("target_delta must be >= 2")
        if self.target_diameter < 1:
            raise ValueError("target_diameter must be >= 1")
        if self.restarts < 1 or self.neighborhood_moves < 0:
            raise ValueError("restarts must be >= 1 and neighborhood_moves >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def header(self, problem: str) -> str:
        return (
            f"# seed={self.seed} rng={RNG_ALGORITHM} problem={problem} "
            f"budget={self.budget} target_delta={self.target_delta} "
            f"target_diameter={self.target_diameter} restarts={self.restarts} "
            f"moves={self.neighborhood_moves} stop_at_target={int(self.stop_at_target)}"
        )

    def quotas(self) -> list[int]:
        q, r = divmod(self.budget, self.restarts)
        return [q + (1 if i < r else 0) for i in range(self.restarts)]


@dataclass(frozen=True, order=True)
class Candidate:
    key: tuple
    restart: int
    move: int
    objective: str = field(compare=False)
    description: str = field(compare=False)
    feasible: bool = field(compare=False)

    @property
    def diameter(self) -> int | float:
        return self.key[0]


@dataclass
class SearchResult:
    best: Candidate
    log: list[str]
    evaluations: int

    @property
    def log_text(self) -> str:
        return "\n".join(self.log) + "\n"


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, restart])))


# ---------------------------------------------------------------------------
# problems
# ---------------------------------------------------------------------------


class GeneratorProblem:
    """States are generator lists whose closure has exactly ``delta`` elements."""

    name = "generators"

    def __init__(self, group, delta: int):
        self.group = group
        self.delta = delta
        idx = np.arange(group.order, dtype=np.int64)
        inv = group.inv(idx)
        self.involutions = np.flatnonzero((inv == idx) & (idx != group.identity))
        if delta % 2 and self.involutions.size == 0:
            raise ValueError(f"odd degree {delta} needs an involution; {group} has none")
        if delta >= group.order:
            raise ValueError(f"degree {delta} not achievable in a group of order {group.order}")

    def _draw(self, rng, closure: set, involution: bool | None) -> int:
        g = self.group
        if involution:
            pool = [int(s) for s in self.involutions if int(s) not in closure]
            if not pool:
                raise ValueError("no involution left to draw")
            return pool[int(rng.integers(len(pool)))]
        while True:
            e = int(rng.integers(1, g.order)) if g.identity == 0 else int(rng.integers(g.order))
            if e == g.identity or e in closure:
                continue
            is_inv = g.inv(e) == e
            if involution is None or is_inv == involution:
                return e

    def _contrib(self, e: int) -> int:
        return 1 if self.group.inv(e) == e else 2

    def initial(self, rng) -> list[int]:
        g = self.group
        gens: list[int] = []
        closure: set[int] = set()
        while len(closure) < self.delta:
            need = self.delta - len(closure)
            e = self._draw(rng, closure, True if need == 1 else None)
            gens.append(e)
            closure.update((e, g.inv(e)))
        return gens

    def neighbour(self, rng, gens: list[int]) -> list[int]:
        i = int(rng.integers(len(gens)))
        rest = gens[:i] + gens[i + 1 :]
        closure = {x for e in rest for x in (e, self.group.inv(e))}
        c = self._contrib(gens[i])
        e = self._draw(rng, closure | {gens[i]}, c == 1)
        return rest[:i] + [e] + rest[i:]

    def evaluate(self, gens: list[int]) -> tuple[tuple, str, bool]:
        conn = close_connection_set(self.group, gens)
        res = cayley_bfs(self.group, conn)
        if not res.generates or conn.degree != self.delta:
            return (math.inf, math.inf), INFEASIBLE, False
        avg = res.average_distance
        return (res.eccentricity, avg), f"d{res.eccentricity},a{format_fraction(avg)}", True

    def describe(self, gens: list[int]) -> str:
        return ";".join(self.group.format(e).replace(" ", "") for e in gens)

    def parse(self, description: str) -> list[int]:
        return [self.group.parse_element(t) for t in description.split(";")]


class PairingProblem:
    """States are perfect matchings on the host's edge ids; moves are 2-swaps."""

    name = "pairing"

    def __init__(self, host: CompactGraph):
        if host.m % 2:
            raise ValueError(f"host has {host.m} edges; pairing needs an even count")
        if host.m < 2:
            raise ValueError("host needs at least two edges")
        self.host = host

    def initial(self, rng) -> list[tuple[int, int]]:
        perm = rng.permutation(self.host.m)
        return [(int(perm[2 * i]), int(perm[2 * i + 1])) for i in range(self.host.m // 2)]

    def neighbour(self, rng, pairs):
        k = len(pairs)
        if k < 2:
            return list(pairs)
        i, j = (int(v) for v in rng.choice(k, size=2, replace=False))
        (a, b), (c, d) = pairs[i], pairs[j]
        out = list(pairs)
        if rng.integers(2):
            out[i], out[j] = (a, c), (b, d)
        else:
            out[i], out[j] = (a, d), (b, c)
        return out

    def graph(self, pairs) -> CompactGraph:
        canon = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        return edge_pairing_graph(PairingMap(self.host, canon))

    def evaluate(self, pairs) -> tuple[tuple, str, bool]:
        g = self.graph(pairs)
        try:
            d = diameter(g)
        except DisconnectedGraphError:
            return (math.inf, math.inf), INFEASIBLE, False
        gi = girth(g)
        return (d, -gi), f"d{d},g{gi}", True

    def describe(self, pairs) -> str:
        canon = sorted((min(a, b), max(a, b)) for a, b in pairs)
        return ",".join(f"{a}-{b}" for a, b in canon)

    def parse(self, description: str):
        return [tuple(int(v) for v in t.split("-")) for t in description.split(",")]


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def _run_restart(problem, cfg: SearchConfig, restart: int, quota: int):
    """One restart: repeated climbs until the quota is spent."""
    rng = restart_rng(cfg.seed, restart)
    rows: list[tuple[int, str, str]] = []
    best: Candidate | None = None
    move = 0
    while move < quota:
        state = problem.initial(rng)
        key, obj, feasible = problem.evaluate(state)
        desc = problem.describe(state)
        rows.append((move, obj, desc))
        cand = Candidate(key, restart, move, obj, desc, feasible)
        if feasible and (best is None or cand < best):
            best = cand
        move += 1
        steps = 0
        while move < quota and steps < cfg.neighborhood_moves:
            if cfg.stop_at_target and best is not None and best.key[0] <= cfg.target_diameter:
                return rows, best
            nxt = problem.neighbour(rng, state)
            nkey, nobj, nfeas = problem.evaluate(nxt)
            ndesc = problem.describe(nxt)
            rows.append((move, nobj, ndesc))
            cand = Candidate(nkey, restart, move, nobj, ndesc, nfeas)
            if nfeas and (best is None or cand < best):
                best = cand
            if nkey <= key:
                state, key = nxt, nkey
            move += 1
            steps += 1
        if cfg.stop_at_target and best is not None and best.key[0] <= cfg.target_diameter:
            break
    return rows, best


def _run_restart_star(args):
    return _run_restart(*args)


def _search(problem, cfg: SearchConfig, jobs: int = 1) -> SearchResult:
    tasks = [(problem, cfg, r, q) for r, q in enumerate(cfg.quotas()) if q > 0]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_restart_star, tasks))
    else:
        results = [_run_restart(*t) for t in tasks]
    log = [cfg.header(problem.name)]
    eval_id = 0
    best: Candidate | None = None
    for (_, _, restart, _), (rows, rbest) in zip(tasks, results):
        for move, obj, desc in rows:
            log.append(f"{eval_id} {restart} {move} {obj} {desc}")
            eval_id += 1
        if rbest is not None and (best is None or rbest < best):
            best = rbest
    if best is None:
        raise NoFeasibleCandidate(log)
    return SearchResult(best, log, eval_id)


def search_generators(group, cfg: SearchConfig, jobs: int = 1) -> SearchResult:
    """Hill-climb over generator lists of ``group`` whose closure has ``target_delta`` elements.

    Objective, minimised lexicographically: identity eccentricity (the
    diameter), then average distance.
    """
    return _search(GeneratorProblem(group, cfg.target_delta), cfg, jobs)


def search_pairing(host: CompactGraph, cfg: SearchConfig, jobs: int = 1) -> SearchResult:
    """Hill-climb over complete pairings of ``host``'s edges.

    Objective: diameter of the pairing graph, then girth (larger is better).
    """
    return _search(PairingProblem(host), cfg, jobs)


def parse_log_line(line: str) -> tuple[int, int, int, str, str]:
    eval_id, restart, move, objective, description = line.split(" ", 4)
    return int(eval_id), int(restart), int(move), objective, description


def reevaluate(problem, line: str) -> str:
    """Recompute the objective string of a logged evaluation."""
    *_, description = parse_log_line(line)
    return problem.evaluate(problem.parse(description))[1]
