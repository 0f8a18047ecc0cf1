"""Exact ground truth for small instances.

:func:`contains_subdivision_exact` walks ordered base tuples in
lexicographic order and, for each, decides by bipartite matching whether
the base pairs have distinct connectors.  :func:`all_tournaments_contain`
runs that search over every labeled tournament on ``n`` vertices, where
tournament number ``p`` orients the ``e``-th pair ``(i, j)``, ``i < j``
(row-major), as ``i -> j`` iff bit ``e`` of ``p`` is set.
"""
from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _pykernels, kernels
from .bounds import subdivision_order
from .certificate import SubdivisionCertificate, verify_certificate
from .embedder import EmbedderConfig, find_subdivision
from .generators import derive_seed, random_tournament
from .tournament import Tournament

PRESENT = "present"
ABSENT = "absent"
INCONCLUSIVE = "inconclusive"

MAX_SWEEP_N = 11


@dataclass(frozen=True)
class SearchBudget:
    """Limits on an exact search; ``None`` means unlimited.

    ``max_base_tuples`` counts complete base tuples handed to the matcher
    (cumulative over a sweep); ``time_limit`` is wall-clock seconds.
    """

    max_base_tuples: int | None = None
    time_limit: float | None = None

    def deadline(self) -> float:
        return 0.0 if self.time_limit is None else time.monotonic() + self.time_limit

    def tuple_cap(self) -> int:
        return -1 if self.max_base_tuples is None else int(self.max_base_tuples)


UNLIMITED = SearchBudget()


@dataclass(frozen=True)
class OracleResult:
    status: str
    certificate: SubdivisionCertificate | None = None
    tuples: int = 0

    @property
    def present(self) -> bool:
        return self.status == PRESENT


def _certificate(k: int, base, conn) -> SubdivisionCertificate:
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    return SubdivisionCertificate(k, tuple(int(b) for b in base),
                                  {p: int(w) for p, w in zip(pairs, conn)})


def contains_subdivision_exact(T: Tournament, k: int,
                               budget: SearchBudget = UNLIMITED) -> OracleResult:
    """Decide exactly whether ``T`` contains the 1-subdivision of T_k."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if T.n <= 64:
        out_w, in_w = T.words
        status, base, conn, tuples = kernels.find_subdivision_small(
            np.ascontiguousarray(out_w[:, 0]), np.ascontiguousarray(in_w[:, 0]),
            T.n, k, budget.tuple_cap(), budget.deadline())
    else:
        status, base, conn, tuples = _pykernels.search(
            [T.out_mask(u) for u in range(T.n)], [T.in_mask(u) for u in range(T.n)],
            T.n, k, budget.tuple_cap(), budget.deadline())
    if status == kernels.PRESENT:
        cert = _certificate(k, base, conn)
        report = verify_certificate(T, cert)
        if not report:
            raise RuntimeError(f"oracle produced an invalid certificate: {report}")
        return OracleResult(PRESENT, cert, tuples)
    if status == kernels.ABSENT:
        return OracleResult(ABSENT, None, tuples)
    return OracleResult(INCONCLUSIVE, None, tuples)


# -- exhaustive sweeps -----------------------------------------------------

def pattern_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def tournament_from_pattern(n: int, pattern: int) -> Tournament:
    outs, _ = _pykernels.decode_pattern(n, pattern)
    return Tournament.from_rows(outs)


@dataclass(frozen=True)
class SweepResult:
    """Outcome of :func:`all_tournaments_contain`.

    ``status`` is ``yes``, ``no`` or ``inconclusive``.  ``next_offset`` is
    the first pattern not yet decided (resume from there);
    ``instances_checked`` counts decided patterns in this run.
    """

    status: str
    k: int
    n: int
    start: int
    next_offset: int
    instances_checked: int
    present_count: int
    tuples: int
    witness_pattern: int | None = None

    @property
    def witness(self) -> Tournament | None:
        if self.witness_pattern is None:
            return None
        return tournament_from_pattern(self.n, self.witness_pattern)


def _sweep_chunk(args):
    n, k, lo, hi, early_exit, cap, deadline, pure = args
    mod = _pykernels if pure else kernels
    return lo, mod.sweep_small(n, k, lo, hi, early_exit, cap, deadline)


def all_tournaments_contain(k: int, n: int, budget: SearchBudget = UNLIMITED, *,
                            start: int = 0, workers: int = 1, early_exit: bool = True,
                            chunk_size: int = 1 << 14) -> SweepResult:
    """Does every labeled tournament on ``n`` vertices contain the
    1-subdivision of T_k?

    With ``early_exit`` the sweep stops at the first counterexample (the
    smallest such pattern is reported regardless of ``workers``); without
    it every pattern is decided and ``present_count`` is exact.  A tuple
    budget forces a single worker.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    if n > MAX_SWEEP_N:
        raise ValueError(f"exhaustive sweep supports n <= {MAX_SWEEP_N}, got {n}")
    total = pattern_count(n)
    if not 0 <= start <= total:
        raise ValueError(f"start offset {start} outside [0, {total}]")
    cap = budget.tuple_cap()
    deadline = budget.deadline()
    pure = kernels.BACKEND == "python"

    if workers <= 1 or cap >= 0 or total - start <= chunk_size:
        reason, nxt, present, first_absent, tuples = kernels.sweep_small(
            n, k, start, total, early_exit, cap, deadline)
        return _finish(k, n, start, total, [(start, (reason, nxt, present, first_absent, tuples))],
                       early_exit)

    bounds_ = list(range(start, total, chunk_size))
    jobs = [(n, k, lo, min(lo + chunk_size, total), early_exit, -1, deadline, pure)
            for lo in bounds_]
    results: dict[int, tuple] = {}
    stop_after: int | None = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(_sweep_chunk, job): job[2] for job in jobs}
        while pending:
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                lo = pending.pop(fut)
                results[lo] = fut.result()[1]
                reason = results[lo][0]
                if reason != kernels.SWEEP_DONE and (stop_after is None or lo < stop_after):
                    stop_after = lo
            if stop_after is not None:
                for fut, lo in list(pending.items()):
                    if lo > stop_after and fut.cancel():
                        pending.pop(fut)
    ordered = sorted(results.items())
    if stop_after is not None:
        ordered = [(lo, r) for lo, r in ordered if lo <= stop_after]
    return _finish(k, n, start, total, ordered, early_exit)


def _finish(k, n, start, total, chunks, early_exit) -> SweepResult:
    """Fold contiguous chunk results (ascending offsets) into one verdict."""
    present = tuples = 0
    first_absent = None
    next_offset = start
    status = "yes"
    for lo, (reason, nxt, pres, fa, tup) in chunks:
        present += pres
        tuples += tup
        if fa >= 0 and first_absent is None:
            first_absent = fa
        next_offset = nxt
        if reason == kernels.SWEEP_BUDGET:
            status = "inconclusive"
            break
        if reason == kernels.SWEEP_FOUND_ABSENT:
            break
    if status != "inconclusive" and first_absent is not None:
        status = "no"
    if status == "yes" and next_offset != total:
        status = "inconclusive"
    return SweepResult(status, k, n, start, next_offset, next_offset - start,
                       present, tuples, first_absent)


@dataclass(frozen=True)
class MinContainResult:
    """Least ``n`` at which every tournament contains the target.

    ``value`` is ``None`` when the scan stopped early; ``refuted`` is then
    the largest ``n`` known to have a counterexample.
    """

    k: int
    status: str  # exact | lower-bound-only | inconclusive
    value: int | None
    refuted: int
    sweeps: tuple[SweepResult, ...] = field(default_factory=tuple)


def min_all_contain(k: int, n_max: int, budget: SearchBudget = UNLIMITED,
                    workers: int = 1) -> MinContainResult:
    """Scan ``n`` upward from ``k + C(k, 2)`` (below that every tournament
    is too small) up to ``n_max``."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    refuted = subdivision_order(k) - 1
    sweeps: list[SweepResult] = []
    for n in range(subdivision_order(k), n_max + 1):
        res = all_tournaments_contain(k, n, budget, workers=workers)
        sweeps.append(res)
        if res.status == "yes":
            return MinContainResult(k, "exact", n, refuted, tuple(sweeps))
        if res.status == "inconclusive":
            return MinContainResult(k, "inconclusive", None, refuted, tuple(sweeps))
        refuted = n
    return MinContainResult(k, "lower-bound-only", None, refuted, tuple(sweeps))


# -- progress files ----------------------------------------------------------

def write_progress(path: str | Path, k: int, n: int, next_offset: int) -> None:
    Path(path).write_text(f"{k} {n} {next_offset}\n")


def read_progress(path: str | Path) -> tuple[int, int, int]:
    fields = Path(path).read_text().split()
    if len(fields) != 3:
        raise ValueError(f"{path}: progress file must hold 'k n next_offset'")
    k, n, off = (int(x) for x in fields)
    return k, n, off


# -- embedder vs oracle --------------------------------------------------------

@dataclass(frozen=True)
class CrossValidationReport:
    k: int
    n: int
    trials: int
    embedder_successes: int
    oracle_present: int
    oracle_absent: int
    oracle_inconclusive: int
    misses: int
    contradictions: int
    certificates_checked: int
    certificates_rejected: int

    @property
    def miss_rate(self) -> float:
        return self.misses / self.oracle_present if self.oracle_present else 0.0

    @property
    def sound(self) -> bool:
        return self.contradictions == 0 and self.certificates_rejected == 0


def cross_validate(k: int, n: int, trials: int, seed: int,
                   cfg: EmbedderConfig | None = None,
                   budget: SearchBudget = UNLIMITED) -> CrossValidationReport:
    """Run embedder and oracle side by side on ``trials`` random hosts.

    Host ``t`` uses ``derive_seed(seed, t)``; the embedder for it uses
    ``derive_seed(seed, t, 1)``.  Embedder misses are tallied, not errors.
    """
    cfg = cfg or EmbedderConfig()
    succ = pres = absent = inconc = misses = contra = checked = rejected = 0
    for t in range(trials):
        T = random_tournament(n, derive_seed(seed, t))
        emb = find_subdivision(T, k, cfg, derive_seed(seed, t, 1))
        orc = contains_subdivision_exact(T, k, budget)
        for cert in (emb.certificate, orc.certificate):
            if cert is not None:
                checked += 1
                rejected += not verify_certificate(T, cert)
        succ += emb.ok
        if orc.status == PRESENT:
            pres += 1
            misses += not emb.ok
        elif orc.status == ABSENT:
            absent += 1
            contra += emb.ok
        else:
            inconc += 1
    return CrossValidationReport(k, n, trials, succ, pres, absent, inconc, misses,
                                 contra, checked, rejected)
