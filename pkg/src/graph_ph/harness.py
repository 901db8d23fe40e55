"""Pairwise distinguishability experiments over graph datasets."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .complex import clique_complex, kwl_complex
from .filtration import (
    degree_filtration,
    laplacian_filtration,
    orc_filtration,
    wl_filtration,
)
from .graph import (
    Graph,
    enumerate_connected_cubic,
    parse_graph6,
    read_graph6_file,
    rook_graph,
    shrikhande_graph,
    write_graph6,
)
from .metrics import DEFAULT_THRESHOLD, ESSENTIAL_CONVENTION, separating_dimensions
from .persistence import PersistenceDiagram, persistence_reduction
from .wl import ColorTable

log = logging.getLogger(__name__)

FORMATS = ("csv", "markdown", "json")
_FILTRATION_RE = re.compile(r"^(\w+?)(?:[(:]([-+0-9.eE]+)\)?)?$")

_SHORT = {"degree": "D", "laplacian_sorted": "L", "hks": "L_hks", "orc": "C", "wl": "WL", "kwl": "kWL"}


@dataclass(frozen=True)
class FiltrationSpec:
    """Parsed filtration name such as ``degree``, ``hks(10)``, ``orc:0`` or ``kwl(2)``."""

    kind: str
    param: float | None = None

    @classmethod
    def parse(cls, text: str) -> "FiltrationSpec":
        m = _FILTRATION_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse filtration {text!r}")
        kind, raw = m.group(1), m.group(2)
        if kind == "laplacian":
            kind = "laplacian_sorted"
        if kind not in _SHORT:
            raise ValueError(f"unknown filtration {kind!r}; choose from {', '.join(_SHORT)}")
        param = float(raw) if raw is not None else None
        if kind == "hks":
            param = 10.0 if param is None else param
            if param <= 0:
                raise ValueError("hks time t must be positive")
        elif kind == "orc":
            param = 0.0 if param is None else param
            if not 0 <= param <= 1:
                raise ValueError("orc alpha must lie in [0, 1]")
        elif kind == "wl":
            if param is not None and (param < 0 or param != int(param)):
                raise ValueError("wl iteration count must be a non-negative integer")
        elif kind == "kwl":
            if param not in (2.0, 3.0):
                raise ValueError("kwl needs k = 2 or 3, e.g. kwl(2)")
        elif param is not None:
            raise ValueError(f"filtration {kind!r} takes no parameter")
        return cls(kind, param)

    def __str__(self):
        if self.param is None:
            return self.kind
        p = int(self.param) if self.param == int(self.param) else self.param
        return f"{self.kind}({p})"

    @property
    def short(self) -> str:
        return _SHORT[self.kind]

    @property
    def equivariant(self) -> bool:
        return self.kind != "laplacian_sorted"

    @property
    def uses_session(self) -> bool:
        return self.kind in ("wl", "kwl")


def graph_diagrams(g: Graph, spec: FiltrationSpec, k: int, table: ColorTable | None = None) -> list[PersistenceDiagram]:
    """Diagrams in dimensions ``0..k`` (``0..k'-1`` for ``kwl(k')``)."""
    if spec.kind == "kwl":
        return persistence_reduction(kwl_complex(g, int(spec.param), table))
    if spec.kind == "degree":
        f = degree_filtration(g)
    elif spec.kind == "laplacian_sorted":
        f = laplacian_filtration(g, "sorted_assign")
    elif spec.kind == "hks":
        f = laplacian_filtration(g, "hks", spec.param)
    elif spec.kind == "orc":
        f = orc_filtration(g, spec.param)
    elif spec.kind == "wl":
        f = wl_filtration(g, None if spec.param is None else int(spec.param), table)
    else:
        raise ValueError(spec.kind)
    return persistence_reduction(clique_complex(g, f, k))


@dataclass
class ExperimentConfig:
    dataset: str
    filtration: str = "degree"
    k_expansion: int = 1
    threshold: float = DEFAULT_THRESHOLD
    parallelism: int = 1
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if not self.threshold > 0:
            raise ValueError("threshold must be positive")
        if self.k_expansion < 1:
            raise ValueError("k_expansion must be >= 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        if self.format == "md":
            self.format = "markdown"
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        FiltrationSpec.parse(self.filtration)

    @property
    def spec(self) -> FiltrationSpec:
        return FiltrationSpec.parse(self.filtration)


def load_config(path: str | os.PathLike) -> dict:
    """Read a JSON or YAML experiment config into a plain dict."""
    text = Path(path).read_text()
    if str(path).endswith((".yaml", ".yml")):
        import yaml

        data = yaml.safe_load(text)
    else:
        data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError(f"config {path} must hold a mapping")
    return data


@dataclass
class SuccessRateReport:
    dataset: str
    filtration: str
    k: int
    n_graphs: int
    n_pairs: int
    n_distinguished: int
    verdicts: dict[tuple[int, int], bool] = field(default_factory=dict)
    separating: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def rate(self) -> float:
        return self.n_distinguished / self.n_pairs if self.n_pairs else 0.0

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.n_distinguished, self.n_pairs) if self.n_pairs else Fraction(0)

    def to_json(self) -> dict:
        d = asdict(self)
        d["rate"] = self.rate
        d["verdicts"] = [[i, j, v] for (i, j), v in sorted(self.verdicts.items())]
        d["separating"] = [[i, j, dims] for (i, j), dims in sorted(self.separating.items())]
        return d


FAMILIES = {
    "cub04": lambda: enumerate_connected_cubic(4),
    "cub06": lambda: enumerate_connected_cubic(6),
    "cub08": lambda: enumerate_connected_cubic(8),
    "cub10": lambda: enumerate_connected_cubic(10),
    "sr16622": lambda: [rook_graph(), shrikhande_graph()],
}


def load_dataset(dataset: str) -> list[Graph]:
    """A fixture family name or a path to a graph6 file."""
    if dataset in FAMILIES:
        graphs = FAMILIES[dataset]()
    else:
        path = Path(dataset)
        if not path.exists():
            raise FileNotFoundError(f"dataset {dataset!r} is neither a known family nor a readable file")
        graphs = read_graph6_file(path)
    if not graphs:
        raise ValueError(f"dataset {dataset!r} is empty")
    return graphs


def _diagrams_worker(args):
    line, spec, k = args
    return graph_diagrams(parse_graph6(line), spec, k)


def _pairs_worker(args):
    diagrams, rows, threshold = args
    out = []
    n = len(diagrams)
    for i in rows:
        for j in range(i + 1, n):
            out.append(((i, j), separating_dimensions(diagrams[i], diagrams[j], threshold)))
    return out


def compute_all_diagrams(
    graphs: Sequence[Graph], spec: FiltrationSpec, k: int, parallelism: int = 1
) -> list[list[PersistenceDiagram]]:
    if spec.uses_session:
        # colour indices depend on processing order; one table, dataset order
        table = ColorTable()
        return [graph_diagrams(g, spec, k, table) for g in graphs]
    jobs = [(write_graph6(g), spec, k) for g in graphs]
    if parallelism > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            return list(pool.map(_diagrams_worker, jobs))
    return [graph_diagrams(g, spec, k) for g in graphs]


def run_experiment(cfg: ExperimentConfig, graphs: Sequence[Graph] | None = None) -> SuccessRateReport:
    spec = cfg.spec
    if graphs is None:
        graphs = load_dataset(cfg.dataset)
    log.info("dataset %s: %d graphs, filtration %s, k=%d", cfg.dataset, len(graphs), spec, cfg.k_expansion)
    diagrams = compute_all_diagrams(graphs, spec, cfg.k_expansion, cfg.parallelism)

    n = len(graphs)
    rows = list(range(n))
    if cfg.parallelism > 1 and n > 2:
        chunks = [rows[w::cfg.parallelism] for w in range(cfg.parallelism)]
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            results = [r for part in pool.map(_pairs_worker, [(diagrams, c, cfg.threshold) for c in chunks]) for r in part]
    else:
        results = _pairs_worker((diagrams, rows, cfg.threshold))
    results.sort()

    separating = {key: dims for key, dims in results}
    verdicts = {key: bool(dims) for key, dims in results}
    meta = {
        "threshold": cfg.threshold,
        "equivariant": spec.equivariant,
        "essential_points": ESSENTIAL_CONVENTION,
    }
    if not spec.equivariant:
        meta["note"] = "eigenvalues assigned by vertex order; depends on input labelling"
    return SuccessRateReport(
        dataset=cfg.dataset,
        filtration=str(spec),
        k=cfg.k_expansion,
        n_graphs=n,
        n_pairs=len(verdicts),
        n_distinguished=sum(verdicts.values()),
        verdicts=verdicts,
        separating=separating,
        metadata=meta,
    )


def _table_layout(reports: Sequence[SuccessRateReport]):
    datasets, columns = [], []
    cells = {}
    for r in reports:
        if r.dataset not in datasets:
            datasets.append(r.dataset)
        col = (r.k, r.filtration)
        if col not in columns:
            columns.append(col)
        cells[(r.dataset, col)] = r
    columns.sort(key=lambda c: c[0])
    return datasets, columns, cells


def _column_name(col) -> str:
    k, filt = col
    spec = FiltrationSpec.parse(filt)
    name = spec.short if spec.kind != "hks" or spec.param == 10.0 else f"L_hks({spec.param:g})"
    return f"k={k}/{name}"


def render_table(reports: Sequence[SuccessRateReport], fmt: str) -> str:
    """Datasets as rows, one column per (k, filtration)."""
    if fmt == "md":
        fmt = "markdown"
    datasets, columns, cells = _table_layout(reports)
    header = ["dataset"] + [_column_name(c) for c in columns]
    if fmt == "json":
        rows = []
        for ds in datasets:
            row = {"dataset": ds}
            for c in columns:
                r = cells.get((ds, c))
                row[_column_name(c)] = None if r is None else r.rate
            rows.append(row)
        return json.dumps({"columns": header, "rows": rows, "reports": [r.to_json() for r in reports]}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for ds in datasets:
            w.writerow([ds] + ["" if (r := cells.get((ds, c))) is None else repr(r.rate) for c in columns])
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join(["---"] * len(header)) + "|"]
        for ds in datasets:
            vals = ["" if (r := cells.get((ds, c))) is None else f"{r.rate:.2f}" for c in columns]
            lines.append("| " + " | ".join([ds] + vals) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_table(reports: Sequence[SuccessRateReport], fmt: str, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.write_text(render_table(reports, fmt))
    return path


def diagram_command(
    graphs: Sequence[Graph], spec: FiltrationSpec, k: int, out_dir: str | os.PathLike
) -> list[Path]:
    """Write ``g<i>_dim<d>.json`` per dimension plus ``g<i>.json`` with all of them."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i, diags in enumerate(compute_all_diagrams(graphs, spec, k)):
        for d in diags:
            p = out / f"g{i}_dim{d.dimension}.json"
            p.write_text(json.dumps(d.to_json(), sort_keys=True) + "\n")
            written.append(p)
        p = out / f"g{i}.json"
        p.write_text(json.dumps([d.to_json() for d in diags], sort_keys=True) + "\n")
        written.append(p)
    return written


def read_diagrams(path: str | os.PathLike) -> list[PersistenceDiagram]:
    """One diagram object or a list of them."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = [data]
    return sorted((PersistenceDiagram.from_json(x) for x in data), key=lambda d: d.dimension)
