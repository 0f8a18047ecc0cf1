"""Threshold sweeps: many (k, seed) trials of the embedder, one CSV row each.

Every trial derives its seed from the sweep seed: trial ``s`` of ``k`` uses
``cell = derive_seed(sweep_seed, k, s)``; the host is generated from
``derive_seed(cell, 0)`` and the embedder runs with ``derive_seed(cell, 1)``.
"""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .bounds import host_order, subdivision_order
from .certificate import verify_certificate, write_certificate
from .embedder import EmbedderConfig, find_subdivision
from .generators import derive_seed, least_paley_order, paley, random_tournament

CSV_COLUMNS = ("k", "n", "seed", "generator", "attempts", "outcome", "stage", "millis", "cert_path")


@dataclass(frozen=True)
class HostRule:
    kind: str  # paper | n | ratio
    value: float = 0.0

    @classmethod
    def parse(cls, text: str) -> "HostRule":
        text = text.strip()
        if text == "paper":
            return cls("paper")
        if text.startswith("n="):
            n = int(text[2:])
            if n < 1:
                raise ValueError(f"host size must be positive, got {n}")
            return cls("n", n)
        if text.startswith("ratio="):
            r = float(text[6:])
            if not r > 0:
                raise ValueError(f"ratio must be positive, got {r}")
            return cls("ratio", r)
        raise ValueError(f"host rule must be paper, n=<int> or ratio=<real>, got {text!r}")

    def order(self, k: int) -> int:
        if self.kind == "paper":
            return host_order(k)
        if self.kind == "n":
            return int(self.value)
        return math.ceil(self.value * k * k)

    def __str__(self) -> str:
        if self.kind == "paper":
            return "paper"
        if self.kind == "n":
            return f"n={int(self.value)}"
        return f"ratio={self.value:g}"


@dataclass(frozen=True)
class SweepPlan:
    ks: tuple[int, ...]
    host_rule: HostRule
    generator: str = "random"
    seeds: int = 10
    retries: int = 20
    sweep_seed: int = 0
    connector_policy: str = "lowest-index"
    exclusion: str = "pool"

    def __post_init__(self) -> None:
        if not self.ks:
            raise ValueError("sweep needs at least one k")
        if any(k < 1 for k in self.ks):
            raise ValueError("every k must be positive")
        if self.seeds < 1:
            raise ValueError("seeds per cell must be >= 1")
        if self.generator not in ("random", "paley"):
            raise ValueError(f"unknown generator {self.generator!r}")

    def config(self) -> EmbedderConfig:
        return EmbedderConfig(retry_budget=self.retries, exclusion=self.exclusion,
                              connector_policy=self.connector_policy)

    def cells(self) -> Iterator[tuple[int, int]]:
        for k in self.ks:
            for s in range(self.seeds):
                yield k, s


@dataclass(frozen=True)
class ExperimentRecord:
    k: int
    n: int
    seed: int
    generator: str
    attempts: int
    outcome: str
    stage: str
    millis: float
    cert_path: str = ""

    def row(self) -> list[str]:
        return [str(self.k), str(self.n), str(self.seed), self.generator, str(self.attempts),
                self.outcome, self.stage, f"{self.millis:.3f}", self.cert_path]


_host_cache: dict[tuple, object] = {}


def _host(generator: str, n: int, seed: int):
    if generator == "paley":
        key = ("paley", n)
        if key not in _host_cache:
            _host_cache.clear()
            _host_cache[key] = paley(least_paley_order(n))
        return _host_cache[key]
    return random_tournament(n, seed)


def run_trial(plan: SweepPlan, k: int, s: int, cert_dir: str | None = None) -> ExperimentRecord:
    cell = derive_seed(plan.sweep_seed, k, s)
    t0 = time.perf_counter()
    T = _host(plan.generator, plan.host_rule.order(k), derive_seed(cell, 0))
    res = find_subdivision(T, k, plan.config(), derive_seed(cell, 1))
    millis = (time.perf_counter() - t0) * 1000.0
    cert_path = ""
    if res.ok:
        if not verify_certificate(T, res.certificate):
            raise RuntimeError(f"certificate rejected for k={k}, seed={cell}")
        if cert_dir is not None:
            path = Path(cert_dir) / f"k{k}_s{s}.cert"
            write_certificate(res.certificate, path)
            cert_path = str(path)
    return ExperimentRecord(k, T.n, cell, plan.generator, res.attempts_used,
                            "success" if res.ok else "failure", res.stage, millis, cert_path)


def _trial_job(args):
    plan, k, s, cert_dir = args
    return (k, s), run_trial(plan, k, s, cert_dir)


def run_sweep(plan: SweepPlan, workers: int = 1, cert_dir: str | None = None,
              on_record: Callable[[ExperimentRecord], None] | None = None) -> list[ExperimentRecord]:
    """Run every cell; records come back (and are emitted) in plan order."""
    if cert_dir is not None:
        Path(cert_dir).mkdir(parents=True, exist_ok=True)
    cells = list(plan.cells())
    records: list[ExperimentRecord] = []

    def emit(rec: ExperimentRecord) -> None:
        records.append(rec)
        if on_record is not None:
            on_record(rec)

    if workers <= 1:
        for k, s in cells:
            emit(run_trial(plan, k, s, cert_dir))
        return records

    order = {cell: i for i, cell in enumerate(cells)}
    buffered: dict[int, ExperimentRecord] = {}
    nxt = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for cell, rec in pool.map(_trial_job, [(plan, k, s, cert_dir) for k, s in cells],
                                  chunksize=4):
            buffered[order[cell]] = rec
            while nxt in buffered:
                emit(buffered.pop(nxt))
                nxt += 1
    return records


def write_csv(records: Iterable[ExperimentRecord], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow(rec.row())


def records_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


@dataclass(frozen=True)
class CellSummary:
    k: int
    n: int
    trials: int
    successes: int
    mean_attempts: float
    lower_bound: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    @property
    def ratio(self) -> float:
        """Host order over the ``k^2 / 2`` scale of the vertex-count bound."""
        return self.n / (self.k * self.k / 2)


def summarize(records: Iterable[ExperimentRecord]) -> list[CellSummary]:
    by_k: dict[int, list[ExperimentRecord]] = {}
    for rec in records:
        by_k.setdefault(rec.k, []).append(rec)
    out = []
    for k, recs in by_k.items():
        out.append(CellSummary(
            k, recs[0].n, len(recs), sum(r.outcome == "success" for r in recs),
            sum(r.attempts for r in recs) / len(recs), subdivision_order(k)))
    return out


def format_summary(plan: SweepPlan, cells: list[CellSummary]) -> str:
    lines = [f"# sweep host-rule={plan.host_rule} generator={plan.generator} "
             f"seeds={plan.seeds} retries={plan.retries} sweep-seed={plan.sweep_seed}"]
    if plan.host_rule.kind == "ratio":
        lines.append("# ratio mode: empirical evidence about the true constant only, not a bound")
    lines.append(f"{'k':>4} {'n':>7} {'|H_k|':>6} {'trials':>6} {'success':>8} "
                 f"{'rate':>6} {'attempts':>8} {'n/(k^2/2)':>10}")
    for c in cells:
        lines.append(f"{c.k:>4} {c.n:>7} {c.lower_bound:>6} {c.trials:>6} {c.successes:>8} "
                     f"{c.success_rate:>6.3f} {c.mean_attempts:>8.2f} {c.ratio:>10.3f}")
    return "\n".join(lines) + "\n"
