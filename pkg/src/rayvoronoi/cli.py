"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 oracle mismatch, 3 internal-logic error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from .delaunay import delaunay_graph
from .diagram import BuildConfig, build_diagram
from .errors import DegenerateInputError, InternalLogicError
from .geometry import EPS
from .grid import brute_force_index, build_index
from .io import dumps, generate_sites, read_sites, parse_world
from .oracle import compare, naive_cell
from .svg import render_svg
from .world import World, default_world, validate

log = logging.getLogger("rayvoronoi")

EXIT_OK, EXIT_INVALID, EXIT_ORACLE, EXIT_INTERNAL = 0, 1, 2, 3
BENCH_FIELDS = ["n", "workers", "build_ms", "mean_e_k", "max_r_k", "total_rays"]


@dataclass
class RunConfig:
    sites_path: Optional[str] = None
    generate: Optional[str] = None
    world: Optional[str] = None
    threads: int = 1
    tol: float = EPS
    out: Optional[str] = None
    svg: Optional[str] = None
    figure: Optional[str] = None
    delaunay: bool = False
    oracle_check: bool = False
    use_grid: bool = True
    bench: int = 0

    def __post_init__(self):
        if (self.sites_path is None) == (self.generate is None):
            raise ValueError("exactly one of sites_path / generate is required")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def _load(config: RunConfig):
    world = parse_world(config.world) if config.world else None
    if config.generate:
        world = world or World.box(0.0, 0.0, 1.0, 1.0)
        return generate_sites(config.generate, world, config.tol), world
    sites = read_sites(config.sites_path)
    if not sites:
        raise DegenerateInputError(f"{config.sites_path}: no sites")
    return sites, world or default_world(sites)


def oracle_mismatches(diagram, tol: float = 1e-7) -> list:
    scale = diagram.world.scale
    reports = []
    for c in diagram.cells:
        rep = compare(c, naive_cell(c.site, diagram.sites, diagram.world), tol, scale)
        if not rep.passed:
            reports.append(rep)
    return reports


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        sites, world = _load(config)
    except (DegenerateInputError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    report = validate(world, sites, config.tol)
    if not report.ok:
        print(f"invalid input:\n{report}", file=stderr)
        return EXIT_INVALID

    build = BuildConfig(workers=config.threads, use_grid=config.use_grid, tol=config.tol)
    grid = build_index(sites, world) if config.use_grid else brute_force_index(sites, world)
    rows: List[dict] = []
    try:
        for _ in range(max(1, config.bench)):
            t0 = time.perf_counter()
            diagram = build_diagram(sites, world, build, grid=grid)
            ms = (time.perf_counter() - t0) * 1e3
            st = diagram.stats
            rows.append({
                "n": len(sites), "workers": config.threads, "build_ms": round(ms, 3),
                "mean_e_k": round(sum(s.e_k for s in st) / len(st), 4),
                "max_r_k": max(s.r_k for s in st), "total_rays": sum(s.rays for s in st),
            })
    except InternalLogicError as exc:
        print(f"internal error: {exc}", file=stderr)
        return EXIT_INTERNAL

    if config.bench:
        writer = csv.DictWriter(stdout, fieldnames=BENCH_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)

    graph = delaunay_graph(diagram) if config.delaunay else None
    if config.out:
        Path(config.out).write_text(dumps(diagram, graph), encoding="utf-8")
    if config.svg:
        render_svg(diagram, config.svg, graph)
    if config.figure:
        from .plotting import plot_bench, plot_diagram

        if config.bench:
            plot_bench(rows, diagram, config.figure)
        else:
            plot_diagram(diagram, config.figure, graph)

    if config.oracle_check:
        bad = oracle_mismatches(diagram)
        if bad:
            print(f"oracle mismatch in {len(bad)} of {len(diagram.cells)} cells:", file=stderr)
            for rep in bad[:20]:
                print(f"  {rep}", file=stderr)
            return EXIT_ORACLE
        log.info("oracle check passed for %d cells", len(diagram.cells))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rayvoronoi", description="Voronoi cells by ray shooting, one cell at a time.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--sites", metavar="PATH", help="text file with one 'x y' pair per line")
    src.add_argument("--generate", metavar="SPEC", help="uniform:N:SEED")
    ap.add_argument("--world", metavar='"x y x y ..."', help="counter-clockwise world polygon vertices")
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1, metavar="Q", help="worker processes")
    ap.add_argument("--tol", type=float, default=EPS, metavar="EPS", help="relative geometric tolerance")
    ap.add_argument("--out", metavar="PATH.json", help="write the diagram as JSON")
    ap.add_argument("--svg", metavar="PATH.svg", help="write an SVG drawing")
    ap.add_argument("--figure", metavar="PATH.png", help="write a matplotlib figure (bench histograms with --bench)")
    ap.add_argument("--delaunay", action="store_true", help="also extract the Delaunay graph")
    ap.add_argument("--oracle-check", action="store_true", help="compare every cell against naive clipping")
    ap.add_argument("--no-grid", action="store_true", help="disable the bucket grid (brute-force scans)")
    ap.add_argument("--bench", type=int, default=0, metavar="REPS", help="time REPS builds and print CSV")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    config = RunConfig(
        sites_path=args.sites, generate=args.generate, world=args.world, threads=args.threads, tol=args.tol,
        out=args.out, svg=args.svg, figure=args.figure, delaunay=args.delaunay, oracle_check=args.oracle_check,
        use_grid=not args.no_grid, bench=args.bench,
    )
    return run(config)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
