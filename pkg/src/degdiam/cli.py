"""Command-line entry point: ``degdiam <subcommand> ...``.

Exit codes: 0 success, 1 a verification mismatch (or a search that found
nothing feasible), 2 bad arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from . import records
from .cayley import (
    ConnectionSetError,
    NotGeneratingError,
    build_cayley_explicit,
    cayley_bfs,
    close_connection_set,
)
from .constructions import (
    FOSTER_144_REPEATS,
    FOSTER_144_SHIFTS,
    edge_pairing_graph,
    edge_table_text,
    foster_graph,
    lcf_graph,
    load_pairing,
    moore_bound,
    write_pairing,
    validate_pairing,
)
from .graphcore import (
    CompactGraph,
    format_fraction,
    from_adjacency_file,
    stats,
    to_adjacency_file,
    to_adjacency_text,
)
from .groups import SemidirectSpec, TwoCoordGroup, TwoCoordSpec, sd_validate
from .search import NoFeasibleCandidate, SearchConfig, search_generators, search_pairing


class UsageError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range(text: str) -> tuple[int, int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}")


def _element(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.strip("[]() ").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad element {text!r}; expected comma-separated integers")


def parse_sd_job(text: str) -> tuple[SemidirectSpec, list[tuple[int, int]]]:
    """Parse ``sd M A N gen x1,y1 gen x2,y2 ...``."""
    tok = text.split()
    if len(tok) < 4 or tok[0] != "sd":
        raise UsageError(f"job must start with 'sd M A N', got {text!r}")
    try:
        spec = SemidirectSpec(int(tok[1]), int(tok[2]), int(tok[3]))
    except ValueError:
        raise UsageError(f"non-integer group parameter in {' '.join(tok[1:4])!r}")
    rest = tok[4:]
    if len(rest) % 2:
        raise UsageError(f"dangling token {rest[-1]!r} in job")
    gens = []
    for kw, val in zip(rest[::2], rest[1::2]):
        if kw != "gen":
            raise UsageError(f"unexpected token {kw!r}; expected 'gen'")
        e = _element(val)
        if len(e) != 2:
            raise UsageError(f"generator {val!r} needs two coordinates")
        gens.append(e)
    return spec, gens


def _emit_graph(g: CompactGraph, out: str | None) -> None:
    if out:
        to_adjacency_file(g, out)
    else:
        sys.stdout.write(to_adjacency_text(g))


def _read_graph(path: str) -> CompactGraph:
    return from_adjacency_file(path)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_moore(a) -> int:
    print(moore_bound(a.delta, a.d))
    return 0


def cmd_stats(a) -> int:
    g = _read_graph(a.input)
    print("\n".join(stats(g, a.vertex_transitive).lines()))
    return 0


def _cayley_out(group, gens, a) -> int:
    idx = [group.encode(e) for e in gens]
    conn = close_connection_set(group, idx)
    if a.summary:
        res = cayley_bfs(group, conn)
        print(f"order {res.order}")
        print(f"degree {conn.degree}")
        print(f"involutions {len(conn.involutions)}")
        print(f"reached {res.reached}")
        if not res.generates:
            raise NotGeneratingError(res.reached, res.order)
        print(f"diameter {res.eccentricity}")
        print(f"average_distance {format_fraction(res.average_distance)}")
        print("histogram " + " ".join(map(str, res.histogram)))
        return 0
    _emit_graph(build_cayley_explicit(group, conn), a.out)
    return 0


def cmd_construct_sd(a) -> int:
    if a.job:
        if a.params or a.gen:
            raise UsageError("--job cannot be combined with M A N or --gen")
        spec, gens = parse_sd_job(a.job)
    else:
        if len(a.params) != 3:
            raise UsageError("construct-sd needs M A N (or --job)")
        spec, gens = SemidirectSpec(*a.params), list(a.gen or [])
        for e in gens:
            if len(e) != 2:
                raise UsageError(f"generator {e} needs two coordinates")
    group = sd_validate(spec, mirrored=a.mirrored)
    return _cayley_out(group, gens, a)


def cmd_construct_2c(a) -> int:
    group = TwoCoordGroup(TwoCoordSpec(a.m))
    for e in a.gen:
        if len(e) != 3:
            raise UsageError(f"generator {e} needs three coordinates a,b,c")
    return _cayley_out(group, a.gen, a)


def cmd_construct_lcf(a) -> int:
    shifts = a.shifts if a.shifts is not None else list(FOSTER_144_SHIFTS)
    repeats = a.repeats if a.repeats is not None else FOSTER_144_REPEATS
    _emit_graph(lcf_graph(shifts, repeats), a.out)
    return 0


def cmd_chen(a) -> int:
    host = _read_graph(a.host) if a.host else foster_graph()
    p = load_pairing(host, a.pairing)
    g = edge_pairing_graph(p)
    _emit_graph(g, a.out)
    if a.out:
        print(f"shared_endpoint_pairs {p.shared_endpoint_pairs}")
        print("\n".join(stats(g).lines()))
    return 0


def cmd_edges(a) -> int:
    sys.stdout.write(edge_table_text(_read_graph(a.input)))
    return 0


def cmd_verify(a) -> int:
    if a.data_dir and not Path(a.data_dir).is_dir():
        raise UsageError(f"--data-dir {a.data_dir!r} is not a directory")
    t0 = time.perf_counter()
    reports, summary = records.verify_all(
        delta=a.delta, d=a.d, cayley_only=a.cayley_only, data_dir=a.data_dir, jobs=a.jobs
    )
    if a.format == "machine":
        for r in reports:
            print(r.machine_line(timing=not a.no_timing))
    else:
        print(records.human_report(reports))
    print("# " + " ".join(f"{k}={v}" for k, v in summary.items()))
    if not a.no_timing:
        print(f"# total_ms {int(round((time.perf_counter() - t0) * 1000))}")
    bad = summary[records.MISMATCH] + summary[records.INCONSISTENT]
    return 1 if bad else 0


def cmd_table(a) -> int:
    entries = records.select(records.table(), a.delta, a.d)
    if a.new_only:
        entries = [e for e in entries if e.new]
    print(records.format_table(entries))
    return 0


def _config(a) -> SearchConfig:
    return SearchConfig(
        seed=a.seed,
        budget=a.budget,
        target_delta=a.target_delta,
        target_diameter=a.target_diameter,
        restarts=a.restarts,
        neighborhood_moves=a.moves,
        stop_at_target=not a.no_stop,
    )


def _run_search(run, a):
    """Returns ``(exit_code, result or None)``; the log goes to ``--log`` or stdout."""
    try:
        res = run()
    except NoFeasibleCandidate as exc:
        if a.log:
            Path(a.log).write_text("\n".join(exc.log) + "\n", encoding="ascii", newline="\n")
        print(f"error: {exc}", file=sys.stderr)
        return 1, None
    if a.log:
        Path(a.log).write_text(res.log_text, encoding="ascii", newline="\n")
    else:
        sys.stdout.write(res.log_text)
    b = res.best
    print(f"best restart={b.restart} move={b.move} objective={b.objective} {b.description}")
    return 0, res


def cmd_search_gens(a) -> int:
    group = sd_validate(SemidirectSpec(a.M, a.A, a.N))
    cfg = _config(a)
    code, _ = _run_search(lambda: search_generators(group, cfg, a.jobs), a)
    return code


def cmd_search_pairing(a) -> int:
    host = _read_graph(a.host) if a.host else foster_graph()
    cfg = _config(a)
    code, res = _run_search(lambda: search_pairing(host, cfg, a.jobs), a)
    if res is not None and a.out_pairing:
        pairs = [tuple(map(int, t.split("-"))) for t in res.best.description.split(",")]
        write_pairing(validate_pairing(host, pairs), a.out_pairing)
    return code


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _cayley_flags(p) -> None:
    p.add_argument("--out", help="adjacency file to write (default: standard output)")
    p.add_argument(
        "--summary",
        action="store_true",
        help="print order, degree and diameter from an implicit BFS instead of the graph",
    )


def _search_flags(p) -> None:
    p.add_argument("--seed", type=int, required=True, help="64-bit seed (mandatory)")
    p.add_argument("--budget", type=_positive, default=10_000, help="max evaluations")
    p.add_argument("--restarts", type=_positive, default=4)
    p.add_argument("--moves", type=int, default=200, help="local moves per climb")
    p.add_argument("--no-stop", action="store_true", help="spend the whole budget even after hitting the target")
    p.add_argument("--log", help="evaluation log file (default: standard output)")
    p.add_argument("--jobs", type=_positive, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="degdiam", description="Degree/diameter record graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moore", help="Moore bound for (delta, d)")
    p.add_argument("delta", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(fn=cmd_moore)

    p = sub.add_parser("stats", help="order, degrees, diameter, girth, average distance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--vertex-transitive", action="store_true", help="use a single BFS source")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("construct-sd", help="Cayley graph of Z_M x|_A Z_N")
    p.add_argument("params", type=int, nargs="*", metavar="M A N")
    p.add_argument("--gen", type=_element, action="append", metavar="X,Y")
    p.add_argument("--job", help="job text: 'sd M A N gen x,y gen x,y ...'")
    p.add_argument("--mirrored", action="store_true", help="use the opposite product rule")
    _cayley_flags(p)
    p.set_defaults(fn=cmd_construct_sd)

    p = sub.add_parser("construct-2c", help="Cayley graph of (Z_m x Z_m) x| Z_2 (coordinate swap)")
    p.add_argument("m", type=_positive)
    p.add_argument("--gen", type=_element, action="append", required=True, metavar="A,B,C")
    _cayley_flags(p)
    p.set_defaults(fn=cmd_construct_2c)

    p = sub.add_parser("construct-lcf", help="cubic graph from LCF shifts")
    p.add_argument("--shifts", type=_int_list, help="default: the built-in 144-vertex host")
    p.add_argument("--repeats", type=_positive)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_construct_lcf)

    p = sub.add_parser("chen", help="vertex/edge pairing graph of a host and a pairing file")
    p.add_argument("--host", help="host adjacency file (default: built-in 144-vertex host)")
    p.add_argument("--pairing", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_chen)

    p = sub.add_parser("edges", help="canonical edge-id table")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(fn=cmd_edges)

    p = sub.add_parser("verify", help="replay the checkable record-table entries")
    p.add_argument("--cayley-only", action="store_true")
    p.add_argument("--delta", type=_range, metavar="LO[:HI]")
    p.add_argument("--d", type=_range, metavar="LO[:HI]")
    p.add_argument("--data-dir", help="directory holding external adjacency/table/pairing files")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--no-timing", action="store_true", help="omit wall times for byte-identical replay")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("table", help="print the embedded record table")
    p.add_argument("--delta", type=_range, metavar="LO[:HI]")
    p.add_argument("--d", type=_range, metavar="LO[:HI]")
    p.add_argument("--new-only", action="store_true")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("search-gens", help="hill-climb generator sets of Z_M x|_A Z_N")
    p.add_argument("M", type=int)
    p.add_argument("A", type=int)
    p.add_argument("N", type=int)
    p.add_argument("--target-delta", type=int, required=True)
    p.add_argument("--target-diameter", type=int, required=True)
    _search_flags(p)
    p.set_defaults(fn=cmd_search_gens)

    p = sub.add_parser("search-pairing", help="hill-climb complete edge pairings of a cubic host")
    p.add_argument("--host", help="host adjacency file (default: built-in 144-vertex host)")
    p.add_argument("--target-delta", type=int, default=3)
    p.add_argument("--target-diameter", type=int, default=8)
    p.add_argument("--out-pairing", help="write the best pairing here")
    _search_flags(p)
    p.set_defaults(fn=cmd_search_pairing)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NotGeneratingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, ConnectionSetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
