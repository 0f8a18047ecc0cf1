"""Pure-Python implementations of the hot kernels.

Every function here has a twin with the same name and signature in the
compiled ``_kernels`` extension.  :mod:`tsubdiv.kernels` picks one at import.
"""
from __future__ import annotations

import time

import numpy as np

from .matching import hopcroft_karp

PRESENT = 1
ABSENT = 0
INCONCLUSIVE = -1

# sweep_small stop reasons
SWEEP_DONE = 0
SWEEP_FOUND_ABSENT = 1
SWEEP_BUDGET = 2

_CLOCK_EVERY = 1024


def _row_int(row: np.ndarray) -> int:
    return int.from_bytes(row.astype("<u8", copy=False).tobytes(), "little")


def directed_counts(out_w, in_w, us, vs, mask):
    """``counts[a, b] = |out(us[a]) & in(vs[b]) & mask|`` over packed rows."""
    m = _row_int(np.asarray(mask))
    outs = [_row_int(out_w[u]) for u in us]
    ins = [_row_int(in_w[v]) & m for v in vs]
    res = np.zeros((len(outs), len(ins)), dtype=np.int64)
    for a, ru in enumerate(outs):
        res[a] = [(ru & rv).bit_count() for rv in ins]
    return res


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def match_pairs(cands: list[int], n: int) -> list[int] | None:
    """Decide whether the candidate masks admit distinct representatives.

    Pairs are fed to the matcher by ascending candidate count (stable), each
    trying its candidates in ascending vertex order.  Returns the chosen
    vertex per pair (input order) or ``None``.
    """
    order = sorted(range(len(cands)), key=lambda p: cands[p].bit_count())
    adj = [_bits(cands[p]) for p in order]
    pair_left = hopcroft_karp(adj, n)
    if any(r < 0 for r in pair_left):
        return None
    chosen = [0] * len(cands)
    for pos, p in enumerate(order):
        chosen[p] = pair_left[pos]
    return chosen


def search(outs: list[int], ins: list[int], n: int, k: int,
           max_tuples: int = -1, deadline: float = 0.0):
    """Exact search for the 1-subdivision of T_k with arbitrary-width rows.

    Ordered base tuples are enumerated lexicographically; a prefix is cut as
    soon as one of its pairs has no candidate outside the prefix.  Returns
    ``(status, base, connectors, tuples)`` where ``connectors`` lists one
    vertex per pair ``(i, j)``, ``i < j``, in lexicographic pair order.
    """
    if n < k + k * (k - 1) // 2:
        return ABSENT, (), [], 0
    base = [0] * k
    state = {"tuples": 0, "status": ABSENT, "conn": []}

    def rec(depth: int, basemask: int) -> bool:
        for v in range(n):
            bit = 1 << v
            if basemask & bit:
                continue
            mask = basemask | bit
            ok = True
            for i in range(depth):
                if not (outs[base[i]] & ins[v] & ~mask):
                    ok = False
                    break
            if not ok:
                continue
            base[depth] = v
            if depth + 1 < k:
                if rec(depth + 1, mask):
                    return True
                if state["status"] == INCONCLUSIVE:
                    return False
                continue
            t = state["tuples"]
            if 0 <= max_tuples <= t or (
                    deadline > 0 and t % _CLOCK_EVERY == 0
                    and time.monotonic() > deadline):
                state["status"] = INCONCLUSIVE
                return False
            state["tuples"] = t + 1
            cands = [outs[base[i]] & ins[base[j]] & ~mask
                     for i in range(k) for j in range(i + 1, k)]
            chosen = match_pairs(cands, n) if all(cands) else None
            if chosen is not None:
                state["status"] = PRESENT
                state["conn"] = chosen
                return True
        return False

    rec(0, 0)
    status = state["status"]
    found = tuple(base) if status == PRESENT else ()
    return status, found, list(state["conn"]), state["tuples"]


def find_subdivision_small(out_rows, in_rows, n, k, max_tuples=-1, deadline=0.0):
    """Single-word (``n <= 64``) entry point matching the compiled kernel."""
    outs = [int(x) for x in out_rows]
    ins = [int(x) for x in in_rows]
    return search(outs, ins, int(n), int(k), int(max_tuples), float(deadline))


def decode_pattern(n: int, pattern: int) -> tuple[list[int], list[int]]:
    """Bit ``e`` of ``pattern`` orients the ``e``-th pair ``(i, j)``, ``i < j``,
    in row-major order: set means ``i -> j``, clear means ``j -> i``."""
    outs = [0] * n
    ins = [0] * n
    e = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (pattern >> e) & 1:
                outs[i] |= 1 << j
                ins[j] |= 1 << i
            else:
                outs[j] |= 1 << i
                ins[i] |= 1 << j
            e += 1
    return outs, ins


def sweep_small(n, k, start, stop, early_exit=True, max_tuples=-1, deadline=0.0):
    """Run the exact search over patterns ``start <= p < stop``.

    Returns ``(reason, next_offset, present, first_absent, tuples)``; with
    ``reason == SWEEP_DONE`` every pattern in range was decided.
    """
    n, k = int(n), int(k)
    present = 0
    first_absent = -1
    tuples = 0
    p = int(start)
    stop = int(stop)
    while p < stop:
        if deadline > 0 and (p - start) % 256 == 0 and time.monotonic() > deadline:
            return SWEEP_BUDGET, p, present, first_absent, tuples
        outs, ins = decode_pattern(n, p)
        left = -1 if max_tuples < 0 else max_tuples - tuples
        if left == 0:
            return SWEEP_BUDGET, p, present, first_absent, tuples
        status, _, _, used = search(outs, ins, n, k, left, deadline)
        tuples += used
        if status == INCONCLUSIVE:
            return SWEEP_BUDGET, p, present, first_absent, tuples
        if status == PRESENT:
            present += 1
        else:
            if first_absent < 0:
                first_absent = p
            if early_exit:
                return SWEEP_FOUND_ABSENT, p + 1, present, first_absent, tuples
        p += 1
    return SWEEP_DONE, p, present, first_absent, tuples
