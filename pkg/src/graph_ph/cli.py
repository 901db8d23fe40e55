"""Command-line entry point: ``graph-ph <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import harness
from .graph import (
    FIXTURE_NAMES,
    enumerate_connected_cubic,
    enumerate_graphs,
    generate_fixture,
    write_graph6_file,
)
from .metrics import DEFAULT_THRESHOLD, ESSENTIAL_CONVENTION, bottleneck_distance
from .wl import ColorTable, histograms, kwl_refine, wl1_refine

log = logging.getLogger("graph_ph")


def _generate(args) -> int:
    fam = args.family
    if fam in harness.FAMILIES:
        graphs = harness.FAMILIES[fam]()
    elif fam == "cubic":
        graphs = enumerate_connected_cubic(_need_n(args))
    elif fam in ("connected", "all"):
        graphs = enumerate_graphs(_need_n(args), connected=fam == "connected")
    elif fam in FIXTURE_NAMES:
        params = [] if args.n is None else [args.n]
        if args.m is not None:
            params.append(args.m)
        graphs = [generate_fixture(fam, *params)]
    else:
        raise ValueError(f"unknown family {fam!r}")
    write_graph6_file(args.out, graphs)
    print(f"wrote {len(graphs)} graph(s) to {args.out}")
    return 0


def _need_n(args) -> int:
    if args.n is None:
        raise ValueError(f"family {args.family!r} needs --n")
    return args.n


def _filtration_from_args(args) -> harness.FiltrationSpec:
    name = args.filtration
    if name == "orc" and args.alpha is not None:
        name = f"orc({args.alpha})"
    elif name == "hks" and args.t is not None:
        name = f"hks({args.t})"
    return harness.FiltrationSpec.parse(name)


def _diagram(args) -> int:
    graphs = harness.load_dataset(args.input)
    spec = _filtration_from_args(args)
    written = harness.diagram_command(graphs, spec, args.k, args.out)
    print(f"wrote {len(written)} diagram file(s) to {args.out}")
    return 0


def _compare(args) -> int:
    a = harness.read_diagrams(args.a)
    b = harness.read_diagrams(args.b)
    dims_a = [d.dimension for d in a]
    dims_b = [d.dimension for d in b]
    if dims_a != dims_b:
        raise ValueError(f"dimension ranges differ: {dims_a} vs {dims_b}")
    distances = {}
    for da, db in zip(a, b):
        distances[da.dimension] = bottleneck_distance(da, db)
    verdict = any(x > args.threshold for x in distances.values())
    out = {
        "distances": {str(k): ("inf" if v == float("inf") else v) for k, v in distances.items()},
        "threshold": args.threshold,
        "distinguished": verdict,
        "essential_points": ESSENTIAL_CONVENTION,
    }
    print(json.dumps(out, indent=2))
    return 0


def _distinguish(args) -> int:
    base = harness.load_config(args.config) if args.config else {}
    datasets = args.dataset or _as_list(base.get("dataset"))
    filtrations = _split(args.filtration) or _as_list(base.get("filtration", "degree"))
    ks = [int(k) for k in (_split(args.k) or _as_list(base.get("k_expansion", 1)))]
    if not datasets:
        raise ValueError("no dataset given (use --dataset or a config file)")
    threshold = args.threshold if args.threshold is not None else base.get("threshold", DEFAULT_THRESHOLD)
    parallelism = args.workers if args.workers is not None else base.get("parallelism", 1)
    fmt = args.format or base.get("format", "csv")
    out = args.out or base.get("output")

    reports = []
    for ds in datasets:
        graphs = harness.load_dataset(ds)
        for k in ks:
            for filt in filtrations:
                cfg = harness.ExperimentConfig(ds, filt, k, threshold, parallelism, out, fmt)
                report = harness.run_experiment(cfg, graphs)
                log.info("%s %s k=%d: %d/%d", ds, filt, k, report.n_distinguished, report.n_pairs)
                reports.append(report)
    text = harness.render_table(reports, cfg.format)
    if out:
        Path(out).write_text(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)
    return 0


def _wl(args) -> int:
    graphs = harness.load_dataset(args.input)
    table = ColorTable()
    result = []
    for i, g in enumerate(graphs):
        coloring = wl1_refine(g, "degree", table) if args.k == 1 else kwl_refine(g, args.k, table)
        result.append({"graph": i, "stable_at": coloring.stable_at, "histograms": histograms(coloring)})
    doc = {"k": args.k, "graphs": result, "colors": table.export()}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _split(value):
    if value is None:
        return []
    return [x for x in value.split(",") if x]


def _as_list(value):
    if value is None:
        return []
    return value if isinstance(value, list) else [value]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graph-ph", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a fixture family as graph6")
    p.add_argument("--family", required=True,
                   help="cub04..cub10, sr16622, cubic, connected, all, or a fixture name")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="second size parameter (complete_bipartite)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_generate)

    p = sub.add_parser("diagram", help="persistence diagrams of every graph in a file")
    p.add_argument("--input", required=True, help="graph6 file or family name")
    p.add_argument("--filtration", default="degree")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--alpha", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_diagram)

    p = sub.add_parser("compare", help="bottleneck distances between two diagram files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.set_defaults(func=_compare)

    p = sub.add_parser("distinguish", help="pairwise success rates over datasets")
    p.add_argument("--dataset", action="append", help="graph6 file or family; repeatable")
    p.add_argument("--filtration", help="comma-separated list")
    p.add_argument("--k", help="comma-separated expansion dimensions")
    p.add_argument("--threshold", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--config", help="JSON or YAML config; flags override it")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "md", "markdown", "json"])
    p.set_defaults(func=_distinguish)

    p = sub.add_parser("wl", help="per-iteration WL colour histograms as JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, choices=[1, 2, 3], default=1)
    p.add_argument("--out")
    p.set_defaults(func=_wl)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
