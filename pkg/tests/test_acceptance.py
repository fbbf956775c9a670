"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

External files (Pelekhaty adjacency list, the order-648 table and its
generators, a Chen pairing) are looked up in the directory named by the
DEGDIAM_DATA environment variable; without it those checks report
external-data-missing, which is not a failure.
"""

from __future__ import annotations

import os
import time

import numpy as np
import pytest

import properties
from degdiam import records
from degdiam.cli import main
from degdiam.constructions import edge_pairing_graph, foster_graph, moore_bound, validate_pairing
from degdiam.graphcore import girth
from degdiam.records import INCONSISTENT, MISSING, VERIFIED, entry, verify_entry
from degdiam.search import PairingProblem, SearchConfig, parse_log_line, search_pairing

DATA = os.environ.get("DEGDIAM_DATA")

CAYLEY_ROWS = {
    (6, 8): 76891, (7, 6): 12264, (7, 7): 53020, (9, 4): 1640, (10, 4): 2331,
    (10, 5): 13203, (11, 5): 19620, (12, 5): 29621, (13, 5): 40488, (14, 5): 58095,
    (15, 5): 77520, (9, 8): 1697688, (16, 2): 200,
}


@pytest.fixture
def report(capsys):
    def _report(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return _report


def test_criterion_1_cayley_records(report):
    t0 = time.perf_counter()
    bad, rod_ms = [], None
    for (delta, d), order in CAYLEY_ROWS.items():
        t = time.perf_counter()
        r = verify_entry(entry(delta, d))
        if (delta, d) == (9, 8):
            rod_ms = (time.perf_counter() - t) * 1000
        got = (r.measured_order, r.measured_degree, r.measured_diameter)
        if r.status != VERIFIED or got != (order, delta, d):
            bad.append(f"({delta},{d}) claimed {(order, delta, d)} measured {got}")
    total = time.perf_counter() - t0
    ok = not bad and total < 60 and rod_ms < 30_000
    detail = f"{len(CAYLEY_ROWS) - len(bad)}/{len(CAYLEY_ROWS)} rows exact, total {total:.1f}s, (9,8) {rod_ms / 1000:.1f}s"
    if bad:
        detail += "; " + "; ".join(bad)
    report(1, ok, detail)


def test_criterion_2_inconsistent_row(report, capsys):
    r = verify_entry(entry(8, 5))
    diag = "113·196 = 22148 ≠ 5115"
    code = main(["verify", "--delta", "8", "--d", "5", "--format", "machine", "--no-timing"])
    out = capsys.readouterr().out
    ok = r.status == INCONSISTENT and diag in r.notes and code == 1 and "inconsistent-spec" in out
    report(2, ok, f"status {r.status}, diagnostic present {diag in r.notes}, exit {code}")


def test_criterion_3_moore_bounds(report):
    closed = all(
        moore_bound(a, d) == 1 + a * ((a - 1) ** d - 1) // (a - 2) == (a * (a - 1) ** d - 2) // (a - 2)
        for a in range(3, 17)
        for d in range(2, 11)
    )
    attained = (moore_bound(3, 2), moore_bound(7, 2)) == (10, 50) == (entry(3, 2).order, entry(7, 2).order)
    below = all(
        e.order < moore_bound(e.delta, e.d) for e in records.table() if e.key not in ((3, 2), (7, 2))
    )
    report(3, closed and attained and below, f"closed form {closed}, (3,2)/(7,2) attained {attained}, rest below {below}")


def test_criterion_4_foster_host(report, tmp_path, capsys):
    f = tmp_path / "foster.adj"
    code1 = main(["construct-lcf", "--out", str(f)])
    capsys.readouterr()
    code2 = main(["stats", "--in", str(f)])
    s = dict(line.split(" ", 1) for line in capsys.readouterr().out.splitlines())
    got = (s["order"], s["min_degree"], s["max_degree"], s["bipartite"], s["girth"], s["diameter"])
    want = ("144", "3", "3", "yes", "8", "7")
    report(4, code1 == code2 == 0 and got == want, f"order/degrees/bipartite/girth/diameter = {got}")


def _pairing_cases(host, rng):
    cases = []
    for _ in range(4):
        perm = rng.permutation(host.m)
        cases.append(perm.reshape(-1, 2).tolist())
    # one pairing with no shared endpoint: pair edge i with edge i + m/2 and repair
    edges = host.edges()
    pairs = [[i, i + host.m // 2] for i in range(host.m // 2)]
    share = lambda a, b: bool(set(edges[a].tolist()) & set(edges[b].tolist()))
    for _ in range(10_000):
        bad = [i for i, (a, b) in enumerate(pairs) if share(a, b)]
        if not bad:
            break
        j = int(rng.integers(len(pairs)))
        pairs[bad[0]][1], pairs[j][1] = pairs[j][1], pairs[bad[0]][1]
    cases.append(pairs)
    return cases


def test_criterion_5_chen_construction(report):
    host = foster_graph()
    props, shared = [], set()
    for pairs in _pairing_cases(host, np.random.default_rng(360)):
        p = validate_pairing(host, pairs)
        g = edge_pairing_graph(p)
        shared.add(p.shared_endpoint_pairs > 0)
        props.append(
            g.n == 360 and bool(np.all(g.degrees() == 3)) and (girth(g) == 3) == (p.shared_endpoint_pairs > 0)
        )
    ok = all(props) and shared == {True, False}
    detail = f"{sum(props)}/{len(props)} pairings give 360 cubic vertices and obey the triangle rule"

    r = verify_entry(entry(3, 8), DATA) if DATA else None
    if r is not None and r.status != MISSING:
        ok = ok and r.status == VERIFIED
        detail += f"; pairing file: {r.status} {r.extras}"
    else:
        cfg = SearchConfig(seed=2026, budget=4000, target_delta=3, target_diameter=8, restarts=4, neighborhood_moves=400)
        res = search_pairing(host, cfg, jobs=4)
        prob = PairingProblem(host)
        best_so_far: dict[int, list[tuple[int, int]]] = {}
        for line in res.log[1:]:
            _, rs, _, obj, _ = parse_log_line(line)
            d, gi = obj[1:].split(",g")
            key = (int(d), -int(gi))
            seq = best_so_far.setdefault(rs, [])
            seq.append(min(seq[-1], key) if seq else key)
        monotone = all(all(b <= a for a, b in zip(seq, seq[1:])) for seq in best_so_far.values())
        overall = min(seq[-1] for seq in best_so_far.values())
        spot = all(prob.evaluate(prob.parse(parse_log_line(l)[4]))[1] == parse_log_line(l)[3] for l in res.log[1::100])
        pairs = prob.parse(res.best.description)
        g = prob.graph(pairs)
        valid = len(validate_pairing(host, pairs).pairs) == 108 and g.n == 360 and bool(np.all(g.degrees() == 3))
        ok = ok and monotone and spot and valid and overall == res.best.key and res.evaluations <= 100_000
        detail += (
            f"; no pairing file, search {res.evaluations} evals, best {res.best.objective}, "
            f"valid {valid}, monotone {monotone}, re-evaluated {spot}"
        )
    report(5, ok, detail)


def test_criterion_6_external_data(report):
    lines, ok = [], True
    for key, want in (((13, 3), (856, 13, 3)), ((5, 5), (648, 5, 5))):
        r = verify_entry(entry(*key), DATA)
        if r.status == MISSING:
            lines.append(f"{key} external-data-missing")
            continue
        got = (r.measured_order, r.measured_degree, r.measured_diameter)
        good = r.status == VERIFIED and got == want
        ok &= good
        lines.append(f"{key} {r.status} {got} {r.extras}")
    report(6, ok, "; ".join(lines))


def test_criterion_7_property_suites(report, tmp_path):
    done = []
    for name in properties.ALL_CHECKS:
        fn = getattr(properties, name)
        summary = fn(tmp_path) if name == "check_round_trip" else fn()
        done.append(f"{name[6:]}: {summary}")
    report(7, True, " | ".join(done))
