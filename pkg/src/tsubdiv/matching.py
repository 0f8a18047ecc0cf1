"""Maximum bipartite matching (Hopcroft-Karp) over small integer graphs.

The left side is indexed ``0..L-1`` and the right side ``0..R-1``.  Left
vertices are visited in list order and right neighbours in the order they are
given, so results are reproducible; the Cython kernel mirrors this routine
step for step.
"""
from __future__ import annotations

from collections import deque
from typing import Sequence

_INF = 1 << 30


def hopcroft_karp(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Return ``pair_left`` where ``pair_left[u]`` is the right vertex matched
    to ``u`` or ``-1``.

    A greedy pass (first free neighbour) seeds the matching before the
    phases of shortest augmenting paths.
    """
    n_left = len(adj)
    pair_left = [-1] * n_left
    pair_right = [-1] * n_right
    for u, nbrs in enumerate(adj):
        for r in nbrs:
            if pair_right[r] < 0:
                pair_left[u] = r
                pair_right[r] = u
                break

    dist = [_INF] * n_left

    def dfs(u: int) -> bool:
        for r in adj[u]:
            w = pair_right[r]
            if w < 0 or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_left[u] = r
                pair_right[r] = u
                return True
        dist[u] = _INF
        return False

    while True:
        queue: deque[int] = deque()
        for u in range(n_left):
            if pair_left[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for r in adj[u]:
                w = pair_right[r]
                if w < 0:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break
        for u in range(n_left):
            if pair_left[u] < 0:
                dfs(u)
    return pair_left


def matching_size(pair_left: Sequence[int]) -> int:
    return sum(1 for r in pair_left if r >= 0)
