"""Seeded Monte Carlo estimates, parameter sweeps and classification batches.

Sample i of an experiment is drawn from substream i of the configured seed,
so results do not depend on how many worker processes run them.  The same
substreams are reused at every grid point (common random numbers), which
makes G(n, p) samples monotone in p along a sweep.

Output formats carry a versioned header: CSV files start with
``# emso_lab/v1 {config json}`` and JSON files have a ``schema`` key.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

from scipy.stats import binomtest

from .cliques import Family, classify, decide_phi_C, decide_phi_I
from .constructions import build_block_graph
from .extension import has_s_extension
from .graph import Graph, sample_gnp
from .graphio import load_graph
from .logic import evaluate, parse_sentence
from .logic.builtins import NAMES as BUILTIN_NAMES, builtin, is_parametric

SCHEMA = "emso_lab/v1"
CLASSES = ("G1", "G2", "G3", "G4", "G5")
SENTENCES = ("phiC1", "phiC2", "phiC3", "phiI1", "phiI2", "phiI3")
MODELS = ("gnp", "block1", "block2", "block3")
THREADS_ENV = "EMSO_LAB_THREADS"


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    return max(1, int(raw)) if raw.strip() else 1


def _deciders() -> dict[str, Callable[[Graph], bool]]:
    out = {}
    for j in (1, 2, 3):
        out[f"phiC{j}"] = lambda g, j=j: decide_phi_C(g, j)
        out[f"phiI{j}"] = lambda g, j=j: decide_phi_I(g, j)
    for s in (1, 2, 3):
        out[f"ext{s}"] = lambda g, s=s: has_s_extension(g, s)
    return out


DECIDERS = _deciders()
CLASSIFIERS = {"classify-clique": Family.CLIQUE, "classify-independent": Family.INDEPENDENT}


def target_kind(target: str) -> str:
    """'decider', 'classifier' or 'sentence'; raises ValueError for unknown targets."""
    if target in DECIDERS:
        return "decider"
    if target in CLASSIFIERS:
        return "classifier"
    _sentence(target)
    return "sentence"


def _sentence(target: str):
    """Targets 'mso:<builtin name>' or 'mso:<sentence text>'."""
    if not target.startswith("mso:"):
        raise ValueError(f"unknown target {target!r}")
    body = target[4:].strip()
    if body in BUILTIN_NAMES:
        if is_parametric(body):
            raise ValueError(f"builtin {body!r} has a free set variable")
        return builtin(body)
    return parse_sentence(body)


@dataclass(frozen=True)
class ExperimentConfig:
    target: str = "phiC1"
    model: str = "gnp"
    n: int = 50
    p: float = 0.5
    samples: int = 100
    seed: int = 0
    ell: int = 3
    n_block: int = 15
    n_grid: tuple[int, ...] | None = None  # None: use n; (): no grid points
    p_grid: tuple[float, ...] | None = None
    budget: int = 1 << 24
    threads: int = field(default=1, compare=False)
    out: str | None = field(default=None, compare=False)
    format: str = field(default="csv", compare=False)

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        target_kind(self.target)

    def key(self) -> dict:
        """The fields that determine results (threads and output location excluded)."""
        d = asdict(self)
        for k in ("threads", "out", "format"):
            d.pop(k)
        for k in ("n_grid", "p_grid"):
            if d[k] is not None:
                d[k] = list(d[k])
        return d

    def points(self) -> list["ExperimentConfig"]:
        ns = (self.n,) if self.n_grid is None else self.n_grid
        ps = (self.p,) if self.p_grid is None else self.p_grid
        return [replace(self, n=n, p=p, n_grid=None, p_grid=None) for n in ns for p in ps]


def sample_graph(cfg: ExperimentConfig, index: int) -> Graph:
    if cfg.model == "gnp":
        return sample_gnp(cfg.n, cfg.p, cfg.seed, stream=index)
    return build_block_graph(int(cfg.model[-1]), cfg.ell, cfg.n_block, cfg.p, cfg.seed, stream=index)


def evaluate_target(cfg: ExperimentConfig, g: Graph):
    kind = target_kind(cfg.target)
    if kind == "decider":
        return DECIDERS[cfg.target](g)
    if kind == "classifier":
        return classify(g, CLASSIFIERS[cfg.target]).index
    return evaluate(g, _sentence(cfg.target), budget=cfg.budget)


def _run_one(job: tuple[ExperimentConfig, int]):
    cfg, index = job
    return evaluate_target(cfg, sample_graph(cfg, index))


def _map(fn, jobs: Sequence, threads: int) -> list:
    if threads <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    chunk = max(1, len(jobs) // (threads * 4))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs, chunksize=chunk))


def wilson_interval(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    ci = binomtest(successes, trials).proportion_ci(confidence_level=level, method="wilson")
    return float(ci.low), float(ci.high)


def _row(cfg: ExperimentConfig, values: list) -> dict:
    row = {"target": cfg.target, "model": cfg.model, "n": cfg.n, "p": cfg.p,
           "samples": cfg.samples, "seed": cfg.seed}
    if target_kind(cfg.target) == "classifier":
        for c in range(1, 6):
            row[f"G{c}"] = sum(1 for v in values if v == c) / len(values)
        return row
    hits = sum(1 for v in values if v)
    low, high = wilson_interval(hits, len(values))
    row.update(successes=hits, fraction=hits / len(values), ci_low=low, ci_high=high)
    return row


def monte_carlo(cfg: ExperimentConfig) -> dict:
    """One row: fraction true with a 95% Wilson interval, or class frequencies."""
    values = _map(_run_one, [(cfg, i) for i in range(cfg.samples)], cfg.threads)
    return _row(cfg, values)


def class_frequencies(cfg: ExperimentConfig) -> dict[str, float]:
    if target_kind(cfg.target) != "classifier":
        raise ValueError("class_frequencies needs a classify-* target")
    row = monte_carlo(cfg)
    return {c: row[c] for c in CLASSES}


def sweep(cfg: ExperimentConfig) -> list[dict]:
    """One monte_carlo row per grid point, n-major then p, all samples in one pool."""
    points = cfg.points()
    jobs = [(pt, i) for pt in points for i in range(pt.samples)]
    values = _map(_run_one, jobs, cfg.threads)
    rows = []
    for k, pt in enumerate(points):
        rows.append(_row(pt, values[k * pt.samples:(k + 1) * pt.samples]))
    return rows


def classify_graph(g: Graph) -> dict:
    row = {"n": g.n, "m": g.m}
    for j in (1, 2, 3):
        row[f"phiC{j}"] = decide_phi_C(g, j)
    for j in (1, 2, 3):
        row[f"phiI{j}"] = decide_phi_I(g, j)
    row["clique_class"] = f"G{classify(g, Family.CLIQUE).index}"
    row["independent_class"] = f"G{classify(g, Family.INDEPENDENT).index}"
    return row


def _classify_job(job: tuple[ExperimentConfig, int]) -> dict:
    cfg, i = job
    return classify_graph(sample_graph(cfg, i))


def classify_batch(source: ExperimentConfig | Iterable[str | Path], threads: int | None = None) -> list[dict]:
    """Rows for sampled graphs (a config) or for graph files (paths)."""
    if isinstance(source, ExperimentConfig):
        jobs = [(source, i) for i in range(source.samples)]
        rows = _map(_classify_job, jobs, source.threads if threads is None else threads)
        return [{"graph": f"sample{i}", **r} for i, r in enumerate(rows)]
    rows = []
    for path in source:
        rows.append({"graph": str(path), **classify_graph(load_graph(path))})
    return rows


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _columns(rows: list[dict], fallback: Sequence[str]) -> list[str]:
    return list(rows[0]) if rows else list(fallback)


def default_columns(cfg: ExperimentConfig) -> list[str]:
    base = ["target", "model", "n", "p", "samples", "seed"]
    if target_kind(cfg.target) == "classifier":
        return base + list(CLASSES)
    return base + ["successes", "fraction", "ci_low", "ci_high"]


def to_csv(rows: list[dict], meta: dict, columns: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    buf.write(f"# {SCHEMA} {json.dumps(meta, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    cols = _columns(rows, columns)
    w.writerow(cols)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in cols])
    return buf.getvalue()


def read_csv(text: str) -> tuple[dict, list[dict[str, str]]]:
    first, _, rest = text.partition("\n")
    prefix = f"# {SCHEMA} "
    if not first.startswith(prefix):
        raise ValueError("missing emso_lab header line")
    return json.loads(first[len(prefix):]), list(csv.DictReader(io.StringIO(rest)))


def to_json(rows: list[dict], meta: dict) -> str:
    return json.dumps({"schema": SCHEMA, "config": meta, "rows": rows}, sort_keys=True, indent=1) + "\n"


def render(rows: list[dict], meta: dict, fmt: str = "csv", columns: Sequence[str] = ()) -> str:
    if fmt == "csv":
        return to_csv(rows, meta, columns)
    if fmt == "json":
        return to_json(rows, meta)
    raise ValueError(f"unknown format {fmt!r}")


def write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        print(text, end="")
    else:
        Path(out).write_text(text)


def run_sweep(cfg: ExperimentConfig) -> str:
    rows = sweep(cfg)
    return render(rows, cfg.key(), cfg.format, default_columns(cfg))
