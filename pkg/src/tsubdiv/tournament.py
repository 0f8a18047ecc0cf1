"""Tournaments stored as bitset rows, plus 2-path connectivity queries.

Vertices are the integers ``0..n-1``.  Row ``u`` of the out-bitset has bit
``v`` set iff ``u`` beats ``v``.  The same relation is kept three ways: a
read-only boolean matrix, Python-int rows (for set algebra on single pairs)
and packed ``uint64`` words (for the batch kernels).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class TournamentError(ValueError):
    """Raised for relations that are not tournaments or for bad vertex ids."""


def _pack(adj: np.ndarray) -> np.ndarray:
    rows, cols = adj.shape
    nbytes = max(8, -(-cols // 64) * 8)
    packed = np.packbits(adj, axis=1, bitorder="little")
    buf = np.zeros((rows, nbytes), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(buf).view("<u8").astype(np.uint64, copy=False)


class Tournament:
    """Immutable tournament on ``n`` vertices.

    Construct from a boolean adjacency matrix (``adj[u, v]`` true iff
    ``u -> v``) or with :meth:`from_rows` / :meth:`from_edges`.  The relation
    is checked for irreflexivity, completeness and asymmetry.
    """

    __slots__ = ("n", "_adj", "_out", "_in", "_out_w", "_in_w", "_outdeg")

    def __init__(self, adjacency) -> None:
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise TournamentError("adjacency must be a square matrix")
        n = adj.shape[0]
        if n < 1:
            raise TournamentError("a tournament needs at least one vertex")
        if adj.diagonal().any():
            u = int(np.flatnonzero(adj.diagonal())[0])
            raise TournamentError(f"vertex {u} beats itself")
        both = adj & adj.T
        if both.any():
            u, v = (int(x) for x in np.argwhere(both)[0])
            raise TournamentError(f"both {u}->{v} and {v}->{u} present")
        neither = ~(adj | adj.T)
        np.fill_diagonal(neither, False)
        if neither.any():
            u, v = (int(x) for x in np.argwhere(neither)[0])
            raise TournamentError(f"pair {u},{v} has no orientation")
        adj.setflags(write=False)
        self.n = n
        self._adj = adj
        self._out_w = _pack(adj)
        self._in_w = _pack(adj.T)
        self._out_w.setflags(write=False)
        self._in_w.setflags(write=False)
        self._out = tuple(int.from_bytes(r.tobytes(), "little") for r in self._out_w)
        self._in = tuple(int.from_bytes(r.tobytes(), "little") for r in self._in_w)
        self._outdeg = tuple(int(d) for d in adj.sum(axis=1))

    @classmethod
    def from_rows(cls, out_rows: Sequence[int]) -> "Tournament":
        """Build from out-neighbourhood bitmasks, one int per vertex."""
        n = len(out_rows)
        adj = np.zeros((n, n), dtype=bool)
        for u, row in enumerate(out_rows):
            for v in range(n):
                if (row >> v) & 1:
                    adj[u, v] = True
        return cls(adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tournament":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            adj[u, v] = True
        return cls(adj)

    # -- basic queries ---------------------------------------------------
    def check_vertex(self, u: int) -> int:
        if not isinstance(u, (int, np.integer)) or not 0 <= u < self.n:
            raise TournamentError(f"vertex {u!r} out of range [0, {self.n})")
        return int(u)

    def beats(self, u: int, v: int) -> bool:
        return bool((self._out[self.check_vertex(u)] >> self.check_vertex(v)) & 1)

    def out_mask(self, u: int) -> int:
        return self._out[u]

    def in_mask(self, u: int) -> int:
        return self._in[u]

    def out_neighbors(self, u: int) -> list[int]:
        return [int(v) for v in np.flatnonzero(self._adj[self.check_vertex(u)])]

    def in_neighbors(self, u: int) -> list[int]:
        return [int(v) for v in np.flatnonzero(self._adj[:, self.check_vertex(u)])]

    def out_degree(self, u: int) -> int:
        return self._outdeg[self.check_vertex(u)]

    def out_degrees(self) -> tuple[int, ...]:
        return self._outdeg

    def in_degree(self, u: int) -> int:
        return self.n - 1 - self.out_degree(u)

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def words(self) -> tuple[np.ndarray, np.ndarray]:
        """Packed out- and in-rows, ``uint64`` of shape ``(n, words)``."""
        return self._out_w, self._in_w

    def edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in np.argwhere(self._adj)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.n == other.n and self._out == other._out

    def __hash__(self) -> int:
        return hash((self.n, self._out))

    def __repr__(self) -> str:
        return f"Tournament(n={self.n})"


def _check_pair(T: Tournament, u: int, v: int) -> tuple[int, int]:
    u = T.check_vertex(u)
    v = T.check_vertex(v)
    if u == v:
        raise TournamentError(f"pair needs two distinct vertices, got {u} twice")
    return u, v


def common_out_in(T: Tournament, u: int, v: int) -> set[int]:
    """Vertices ``w`` with ``u -> w -> v``."""
    u, v = _check_pair(T, u, v)
    mask = T.out_mask(u) & T.in_mask(v)
    return {w for w in range(T.n) if (mask >> w) & 1}


def common_out_in_count(T: Tournament, u: int, v: int) -> int:
    u, v = _check_pair(T, u, v)
    return (T.out_mask(u) & T.in_mask(v)).bit_count()


def connectivity(T: Tournament, u: int, v: int) -> int:
    """Larger of the two directed 2-path counts between ``u`` and ``v``."""
    u, v = _check_pair(T, u, v)
    return max((T.out_mask(u) & T.in_mask(v)).bit_count(),
               (T.out_mask(v) & T.in_mask(u)).bit_count())


def _full_mask(T: Tournament) -> np.ndarray:
    return _pack(np.ones((1, T.n), dtype=bool))[0]


def directed_count_matrix(T: Tournament, us: Sequence[int] | None = None,
                          vs: Sequence[int] | None = None,
                          within: Iterable[int] | None = None) -> np.ndarray:
    """``M[a, b] = |N+(us[a]) & N-(vs[b]) (& within)|``, via the batch kernel."""
    all_v = np.arange(T.n, dtype=np.int64)
    us_arr = all_v if us is None else np.asarray(list(us), dtype=np.int64)
    vs_arr = all_v if vs is None else np.asarray(list(vs), dtype=np.int64)
    for arr in (us_arr, vs_arr):
        if arr.size and (arr.min() < 0 or arr.max() >= T.n):
            raise TournamentError("vertex out of range")
    if within is None:
        mask = _full_mask(T)
    else:
        sel = np.zeros((1, T.n), dtype=bool)
        idx = list(within)
        if idx:
            sel[0, idx] = True
        mask = _pack(sel)[0]
    out_w, in_w = T.words
    return kernels.directed_counts(out_w, in_w, us_arr, vs_arr, mask)


def connectivity_matrix(T: Tournament, vertices: Sequence[int] | None = None) -> np.ndarray:
    """Symmetric matrix of ``c`` over ``vertices``; the diagonal is ``-1``."""
    d = directed_count_matrix(T, vertices, vertices)
    c = np.maximum(d, d.T)
    np.fill_diagonal(c, -1)
    return c


def best_partner(T: Tournament, u: int) -> tuple[int, int]:
    """Vertex ``v != u`` maximising ``c(u, v)`` (smallest index on ties).

    Some partner always reaches ``(n - 3) / 4``.
    """
    u = T.check_vertex(u)
    if T.n < 2:
        raise TournamentError("best_partner needs at least two vertices")
    forward = directed_count_matrix(T, [u], None)[0]
    backward = directed_count_matrix(T, None, [u])[:, 0]
    c = np.maximum(forward, backward)
    c[u] = -1
    v = int(np.argmax(c))
    return v, int(c[v])


def best_partners(T: Tournament) -> list[tuple[int, int]]:
    """:func:`best_partner` for every vertex from one connectivity matrix."""
    if T.n < 2:
        raise TournamentError("best_partner needs at least two vertices")
    c = connectivity_matrix(T)
    arg = np.argmax(c, axis=1)
    return [(int(v), int(c[u, v])) for u, v in enumerate(arg)]


@dataclass(frozen=True)
class LowConnectivityGraph:
    """Undirected graph of the pairs whose connectivity is at most ``t``."""

    n: int
    t: int
    edges: frozenset[tuple[int, int]] = field(repr=False)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def degree_bound(self) -> int:
        return 4 * self.t + 2


def low_connectivity_graph(T: Tournament, t: int) -> LowConnectivityGraph:
    if t < 0:
        raise TournamentError(f"threshold must be non-negative, got {t}")
    c = connectivity_matrix(T)
    us, vs = np.nonzero(np.triu(c <= t, k=1))
    return LowConnectivityGraph(T.n, int(t), frozenset(zip(us.tolist(), vs.tolist())))
