"""Randomized greedy embedding of the 1-subdivision of T_k.

Pipeline per attempt: sample a base pool ``A`` (each host vertex kept
independently with probability ``p``), drop the vertices of ``A`` that sit
in a low-connectivity pair, keep the ``k`` survivors of largest out-degree
as the ordered base, schedule the base pairs by nondecreasing connectivity
and assign connectors greedily.  Failed attempts are retried with derived
seeds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from . import bounds
from .bounds import default_probability, host_order, subdivision_order
from .certificate import SubdivisionCertificate, verify_certificate
from .generators import check_seed, derive_seed, uniforms
from .tournament import Tournament, connectivity_matrix, directed_count_matrix

__all__ = [
    "EmbedderConfig", "SampleReport", "PairSchedule", "GreedyFailure",
    "AttemptRecord", "EmbeddingResult", "default_probability", "host_order",
    "sample_base_pool", "check_properties", "prune_low_pairs", "select_base",
    "order_pairs", "greedy_embed", "find_subdivision",
]

ExclusionPolicy = Literal["pool", "base"]
ConnectorPolicy = Literal["lowest-index", "scarcest-first"]

STAGE_OK = "ok"
STAGE_TOO_SMALL = "too-small-host"
STAGE_POOL = "insufficient-pool"
STAGE_GREEDY = "greedy"


@dataclass(frozen=True)
class EmbedderConfig:
    """Knobs for :func:`find_subdivision`.

    ``sample_probability`` overrides the default ``p``; ``exclusion``
    chooses whether connectors must avoid the whole sampled pool or only
    the base; ``verify_properties`` attaches a :class:`SampleReport` to
    every attempt without letting it gate the greedy.
    """

    sample_probability: float | None = None
    retry_budget: int = 20
    exclusion: ExclusionPolicy = "pool"
    connector_policy: ConnectorPolicy = "lowest-index"
    verify_properties: bool = False

    def __post_init__(self) -> None:
        if self.retry_budget < 1:
            raise ValueError(f"retry_budget must be >= 1, got {self.retry_budget}")
        p = self.sample_probability
        if p is not None and not 0.0 <= p <= 1.0:
            raise ValueError(f"sample probability must lie in [0, 1], got {p}")
        if self.exclusion not in ("pool", "base"):
            raise ValueError(f"unknown exclusion policy {self.exclusion!r}")
        if self.connector_policy not in ("lowest-index", "scarcest-first"):
            raise ValueError(f"unknown connector policy {self.connector_policy!r}")

    def probability(self, k: int) -> float:
        if self.sample_probability is None:
            return default_probability(k)
        return self.sample_probability


def _check_k(k: int) -> int:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return int(k)


def sample_base_pool(T: Tournament, k: int, seed: int,
                     cfg: EmbedderConfig | None = None) -> tuple[int, ...]:
    """Keep each vertex independently with probability ``p``.

    Vertex ``v`` is kept iff the ``v``-th uniform of the seed's stream is
    below ``p``.
    """
    k = _check_k(k)
    p = (cfg or EmbedderConfig()).probability(k)
    u = uniforms(seed, T.n)
    return tuple(int(v) for v in np.flatnonzero(u < p))


# -- property diagnostics --------------------------------------------------

@dataclass(frozen=True)
class P1Result:
    holds: bool
    size: int
    threshold: float


@dataclass(frozen=True)
class P2Result:
    holds: bool
    t_min: int
    t_max: int
    worst_t: int | None = None
    q_strict: int | None = None
    q_nonstrict: int | None = None
    bound: float | None = None


@dataclass(frozen=True)
class P3Result:
    holds: bool
    t_min: int
    pairs_checked: int
    worst_pair: tuple[int, int] | None = None
    common: int | None = None
    overlap: int | None = None
    bound: float | None = None


@dataclass(frozen=True)
class SampleReport:
    k: int
    host_order: int
    pool: tuple[int, ...]
    pruned: tuple[int, ...]
    p1: P1Result
    p2: P2Result
    p3: P3Result

    @property
    def all_hold(self) -> bool:
        return self.p1.holds and self.p2.holds and self.p3.holds

    def to_dict(self) -> dict:
        def plain(obj) -> dict:
            return {key: (list(val) if isinstance(val, tuple) else val)
                    for key, val in obj.__dict__.items()}
        return {
            "k": self.k, "host_order": self.host_order,
            "pool": list(self.pool), "pruned": list(self.pruned),
            "p1": plain(self.p1), "p2": plain(self.p2), "p3": plain(self.p3),
        }


def _pair_values(T: Tournament, A: Sequence[int]) -> np.ndarray:
    if len(A) < 2:
        return np.zeros(0, dtype=np.int64)
    c = connectivity_matrix(T, A)
    return c[np.triu_indices(len(A), 1)]


def _check_p2(T: Tournament, A: Sequence[int], k: int) -> P2Result:
    n = T.n
    t_min = max(1, bounds.ceil_power(k, 4, 5))
    if t_min > n:
        return P2Result(True, t_min, n)
    cs = np.sort(_pair_values(T, A))
    ts = np.arange(t_min, n + 1)
    q_strict = np.searchsorted(cs, ts, side="left")
    # float margin locates the worst t; the verdict is exact
    margin = q_strict - (ts - ts / (32 * k ** 0.1))
    worst = int(np.argmax(margin))
    candidates = np.flatnonzero(margin > -1e-6)
    holds = all(bounds.p2_holds(int(q_strict[i]), int(ts[i]), k) for i in candidates)
    t = int(ts[worst])
    return P2Result(holds, t_min, n, t, int(q_strict[worst]),
                    int(np.searchsorted(cs, t, side="right")), bounds.p2_bound(t, k))


def _check_p3(T: Tournament, A: Sequence[int], k: int) -> P3Result:
    t_min = bounds.ceil_power(k, 7, 10)
    common = directed_count_matrix(T)
    overlap = directed_count_matrix(T, within=A)
    eligible = common >= t_min
    np.fill_diagonal(eligible, False)
    us, vs = np.nonzero(eligible)
    if us.size == 0:
        return P3Result(True, t_min, 0)
    t = common[us, vs]
    o = overlap[us, vs]
    margin = o - (t / (2 * k) + t.astype(np.float64) ** 0.75 - 1)
    worst = int(np.argmax(margin))
    candidates = np.flatnonzero(margin > -1e-6)
    holds = all(bounds.p3_holds(int(o[i]), int(t[i]), k) for i in candidates)
    tw = int(t[worst])
    return P3Result(holds, t_min, int(us.size), (int(us[worst]), int(vs[worst])),
                    tw, int(o[worst]), bounds.p3_bound(tw, k))


def check_properties(T: Tournament, A: Iterable[int], k: int) -> SampleReport:
    """Evaluate the three pool properties exactly for this host and pool.

    P1 compares ``|A|`` with ``k + 2k^0.8``.  P2 counts, for every integer
    ``t`` from ``ceil(k^0.8)`` to ``n``, the pool pairs with connectivity
    strictly below ``t`` (the non-strict count at the worst ``t`` is
    reported alongside).  P3 scans all ordered host pairs whose 2-path
    count reaches ``k^0.7``.  Each failed property reports its worst
    witness.
    """
    k = _check_k(k)
    A = tuple(sorted({T.check_vertex(v) for v in A}))
    _, pruned = prune_low_pairs(T, A, k)
    p1 = P1Result(bounds.p1_holds(len(A), k), len(A), k + 2 * k ** 0.8)
    return SampleReport(k, T.n, A, pruned, p1, _check_p2(T, A, k), _check_p3(T, A, k))


# -- base selection and scheduling -----------------------------------------

def prune_low_pairs(T: Tournament, A: Iterable[int], k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split ``A`` into (kept, pruned); a vertex is pruned when some other
    pool vertex has connectivity at most ``k^0.8`` with it."""
    k = _check_k(k)
    A = sorted(set(A))
    if len(A) < 2:
        return tuple(A), ()
    c = connectivity_matrix(T, A)
    lim = bounds.ceil_power(k, 4, 5)
    # c <= k^0.8 iff c < ceil(k^0.8), or c equals it when k^0.8 is integral
    low = c < lim
    if bounds.at_most_power(lim, k, 4, 5):
        low |= c == lim
    np.fill_diagonal(low, False)
    bad = low.any(axis=1)
    kept = tuple(v for v, b in zip(A, bad) if not b)
    pruned = tuple(v for v, b in zip(A, bad) if b)
    return kept, pruned


def select_base(candidates: Iterable[int], k: int, T: Tournament,
                tie_seed: int | None = None) -> tuple[int, ...] | None:
    """The ``k`` candidates of largest out-degree, by nonincreasing degree.

    Ties go to the smaller vertex, or follow a seeded random key when
    ``tie_seed`` is given.  Returns ``None`` if fewer than ``k`` candidates.
    """
    k = _check_k(k)
    cands = sorted(set(candidates))
    if len(cands) < k:
        return None
    deg = T.out_degrees()
    if tie_seed is None:
        key = lambda v: (-deg[v], v)  # noqa: E731
    else:
        noise = uniforms(tie_seed, T.n)
        key = lambda v: (-deg[v], noise[v], v)  # noqa: E731
    return tuple(sorted(cands, key=key)[:k])


@dataclass(frozen=True)
class PairSchedule:
    """Ordered base and the order in which its pairs receive connectors.

    ``pairs`` holds ``(i, j, c)`` with 1-based base positions ``i < j``.
    """

    base: tuple[int, ...]
    pairs: tuple[tuple[int, int, int], ...]

    @property
    def k(self) -> int:
        return len(self.base)

    def is_sorted(self) -> bool:
        cs = [c for _, _, c in self.pairs]
        return all(a <= b for a, b in zip(cs, cs[1:]))


def order_pairs(T: Tournament, base: Sequence[int]) -> PairSchedule:
    base = tuple(T.check_vertex(v) for v in base)
    if len(set(base)) != len(base):
        raise ValueError(f"base vertices must be distinct: {base}")
    k = len(base)
    c = connectivity_matrix(T, base) if k >= 2 else None
    pairs = [(i + 1, j + 1, int(c[i, j])) for i in range(k) for j in range(i + 1, k)]
    pairs.sort(key=lambda p: (p[2], p[0], p[1]))
    return PairSchedule(base, tuple(pairs))


@dataclass(frozen=True)
class GreedyFailure:
    """The ``pair_index``-th scheduled pair (1-based) had no free connector."""

    pair_index: int
    pair: tuple[int, int]


def greedy_embed(T: Tournament, schedule: PairSchedule, exclusion: Iterable[int] = (),
                 policy: ConnectorPolicy = "lowest-index") -> SubdivisionCertificate | GreedyFailure:
    """Give every scheduled pair a private connector outside ``exclusion``.

    The base itself is always excluded.  ``lowest-index`` walks the schedule
    in order and takes the smallest free candidate.  ``scarcest-first``
    instead serves, at each step, the pending pair with the fewest free
    candidates (schedule order breaks ties).
    """
    base = schedule.base
    blocked = 0
    for v in (*base, *exclusion):
        blocked |= 1 << v
    cand = [T.out_mask(base[i - 1]) & T.in_mask(base[j - 1]) & ~blocked
            for i, j, _ in schedule.pairs]
    used = 0
    connectors: dict[tuple[int, int], int] = {}

    def take(pos: int) -> bool:
        nonlocal used
        avail = cand[pos] & ~used
        if not avail:
            return False
        w = (avail & -avail).bit_length() - 1
        used |= 1 << w
        i, j, _ = schedule.pairs[pos]
        connectors[(i, j)] = w
        return True

    if policy == "lowest-index":
        for pos in range(len(cand)):
            if not take(pos):
                i, j, _ = schedule.pairs[pos]
                return GreedyFailure(pos + 1, (i, j))
    elif policy == "scarcest-first":
        pending = list(range(len(cand)))
        while pending:
            pos = min(pending, key=lambda p: ((cand[p] & ~used).bit_count(), p))
            if not take(pos):
                i, j, _ = schedule.pairs[pos]
                return GreedyFailure(pos + 1, (i, j))
            pending.remove(pos)
    else:
        raise ValueError(f"unknown connector policy {policy!r}")
    return SubdivisionCertificate(len(base), tuple(base), connectors)


# -- driver ----------------------------------------------------------------

@dataclass(frozen=True)
class AttemptRecord:
    attempt: int
    seed: int
    stage: str
    pool_size: int = 0
    pruned_size: int = 0
    failed_pair: int | None = None
    report: SampleReport | None = None


@dataclass(frozen=True)
class EmbeddingResult:
    k: int
    n: int
    certificate: SubdivisionCertificate | None
    stage: str
    attempts: tuple[AttemptRecord, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.certificate is not None

    @property
    def attempts_used(self) -> int:
        return len(self.attempts)

    def summary(self) -> dict:
        return {
            "k": self.k, "n": self.n, "outcome": "success" if self.ok else "failure",
            "stage": self.stage, "attempts": self.attempts_used,
            "per_attempt": [
                {"attempt": a.attempt, "stage": a.stage, "pool": a.pool_size,
                 "pruned": a.pruned_size, "failed_pair": a.failed_pair}
                for a in self.attempts
            ],
        }


def _checked(T: Tournament, cert: SubdivisionCertificate) -> SubdivisionCertificate:
    report = verify_certificate(T, cert)
    if not report:
        raise RuntimeError(f"embedder produced an invalid certificate: {report}")
    return cert


def find_subdivision(T: Tournament, k: int, cfg: EmbedderConfig | None = None,
                     seed: int = 0) -> EmbeddingResult:
    """Search for the 1-subdivision of T_k with up to ``cfg.retry_budget``
    attempts.

    Attempt ``r`` (0-based) samples with ``derive_seed(seed, r)``; from the
    second attempt on, out-degree ties in the base are broken with
    ``derive_seed(seed, r, 1)``.  Hosts with fewer than ``k + C(k, 2)``
    vertices fail at stage ``too-small-host`` before any sampling.
    """
    k = _check_k(k)
    cfg = cfg or EmbedderConfig()
    check_seed(seed)
    if T.n < subdivision_order(k):
        return EmbeddingResult(k, T.n, None, STAGE_TOO_SMALL)
    if k == 1:
        base = select_base(range(T.n), 1, T)
        cert = SubdivisionCertificate(1, base, {})
        rec = AttemptRecord(0, seed, STAGE_OK, T.n, 0)
        return EmbeddingResult(k, T.n, _checked(T, cert), STAGE_OK, (rec,))

    records: list[AttemptRecord] = []
    for r in range(cfg.retry_budget):
        s = derive_seed(seed, r)
        pool = sample_base_pool(T, k, s, cfg)
        report = check_properties(T, pool, k) if cfg.verify_properties else None
        kept, pruned = prune_low_pairs(T, pool, k)
        base = select_base(kept, k, T, None if r == 0 else derive_seed(seed, r, 1))
        if base is None:
            records.append(AttemptRecord(r, s, STAGE_POOL, len(pool), len(pruned), None, report))
            continue
        schedule = order_pairs(T, base)
        exclusion = pool if cfg.exclusion == "pool" else base
        out = greedy_embed(T, schedule, exclusion, cfg.connector_policy)
        if isinstance(out, GreedyFailure):
            records.append(AttemptRecord(r, s, STAGE_GREEDY, len(pool), len(pruned),
                                         out.pair_index, report))
            continue
        records.append(AttemptRecord(r, s, STAGE_OK, len(pool), len(pruned), None, report))
        return EmbeddingResult(k, T.n, _checked(T, out), STAGE_OK, tuple(records))
    return EmbeddingResult(k, T.n, None, records[-1].stage, tuple(records))
