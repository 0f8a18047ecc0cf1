import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import brute
from conftest import random_adjacency
from tsubdiv import (Tournament, TournamentError, best_partner, best_partners, common_out_in,
                     connectivity, low_connectivity_graph, paley, random_tournament, transitive)
from tsubdiv.tournament import connectivity_matrix, directed_count_matrix


@st.composite
def tournaments(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    adj = np.zeros((n, n), dtype=bool)
    it = iter(bits)
    for i in range(n):
        for j in range(i + 1, n):
            if next(it):
                adj[i, j] = True
            else:
                adj[j, i] = True
    return Tournament(adj)


class TestConstruction:
    def test_rejects_loop(self):
        adj = np.zeros((2, 2), dtype=bool)
        adj[0, 0] = adj[0, 1] = True
        with pytest.raises(TournamentError, match="beats itself"):
            Tournament(adj)

    def test_rejects_two_way_edge(self):
        adj = np.ones((3, 3), dtype=bool)
        np.fill_diagonal(adj, False)
        with pytest.raises(TournamentError, match="both"):
            Tournament(adj)

    def test_rejects_missing_edge(self):
        with pytest.raises(TournamentError, match="no orientation"):
            Tournament(np.zeros((2, 2), dtype=bool))

    def test_rejects_empty(self):
        with pytest.raises(TournamentError):
            Tournament(np.zeros((0, 0), dtype=bool))

    @given(tournaments())
    def test_degree_sum(self, T):
        assert sum(T.out_degrees()) == T.n * (T.n - 1) // 2

    @given(tournaments(max_n=70))
    def test_rows_agree_with_matrix(self, T):
        adj = T.adjacency
        for u in range(T.n):
            assert T.out_neighbors(u) == list(np.flatnonzero(adj[u]))
            assert T.in_neighbors(u) == list(np.flatnonzero(adj[:, u]))

    def test_from_rows_roundtrip(self, cycle3):
        assert Tournament.from_rows([T for T in (0b010, 0b100, 0b001)]) == cycle3

    def test_vertex_range(self, t3):
        with pytest.raises(TournamentError):
            t3.beats(0, 3)
        with pytest.raises(TournamentError):
            t3.out_degree(-1)


class TestCommonOutIn:
    def test_transitive3(self, t3):
        assert common_out_in(t3, 0, 2) == {1}

    def test_two_vertices(self):
        assert common_out_in(transitive(2), 0, 1) == set()

    def test_cycle(self, cycle3):
        assert common_out_in(cycle3, 0, 1) == set()

    def test_errors(self, t3):
        with pytest.raises(TournamentError):
            common_out_in(t3, 1, 1)
        with pytest.raises(TournamentError):
            common_out_in(t3, 0, 5)

    @given(tournaments(min_n=2))
    def test_matches_brute(self, T):
        adj = T.adjacency.tolist()
        for u in range(T.n):
            for v in range(T.n):
                if u != v:
                    got = common_out_in(T, u, v)
                    assert got == set(brute.two_paths(adj, u, v))
                    assert u not in got and v not in got


class TestConnectivity:
    def test_cycle(self, cycle3):
        assert connectivity(cycle3, 0, 1) == 1

    def test_two_vertices(self):
        assert connectivity(transitive(2), 0, 1) == 0

    def test_paley7_all_pairs(self, paley7):
        # brute force: the edge-direction 2-path count is 1, the reverse one 2
        adj = paley7.adjacency.tolist()
        values = {connectivity(paley7, u, v) for u in range(7) for v in range(u + 1, 7)}
        assert values == {brute.conn(adj, u, v) for u in range(7) for v in range(u + 1, 7)} == {2}

    def test_transitive4_ends(self):
        assert connectivity(transitive(4), 0, 3) == 2

    def test_same_vertex_rejected(self, paley7):
        with pytest.raises(TournamentError):
            connectivity(paley7, 3, 3)

    @given(tournaments(min_n=2, max_n=8))
    def test_brute_force_equivalence(self, T):
        adj = T.adjacency.tolist()
        for u in range(T.n):
            for v in range(T.n):
                if u != v:
                    assert connectivity(T, u, v) == brute.conn(adj, u, v)

    @given(tournaments(min_n=2, max_n=20))
    def test_symmetric_and_bounded(self, T):
        for u in range(T.n):
            for v in range(u + 1, T.n):
                c = connectivity(T, u, v)
                assert c == connectivity(T, v, u)
                assert 0 <= c <= T.n - 2

    @given(tournaments(min_n=2, max_n=20))
    def test_degree_observation(self, T):
        # if d+(u) >= d+(v) then |N+(u) & N-(v)| >= c(u, v) - 1
        for u in range(T.n):
            for v in range(T.n):
                if u != v and T.out_degree(u) >= T.out_degree(v):
                    assert len(common_out_in(T, u, v)) >= connectivity(T, u, v) - 1

    def test_matrix_matches_scalar(self, rng):
        T = Tournament(random_adjacency(rng, 90))
        c = connectivity_matrix(T)
        for u in range(0, 90, 7):
            for v in range(90):
                if u != v:
                    assert c[u, v] == connectivity(T, u, v)

    def test_directed_counts_with_mask(self, rng):
        T = Tournament(random_adjacency(rng, 70))
        within = [1, 5, 9, 64, 69]
        d = directed_count_matrix(T, [0, 3], [2, 68], within=within)
        for a, u in enumerate([0, 3]):
            for b, v in enumerate([2, 68]):
                want = len(set(brute.two_paths(T.adjacency, u, v)) & set(within)) if u != v else 0
                assert d[a, b] == want


class TestBestPartner:
    def test_paley7(self, paley7):
        assert best_partner(paley7, 0) == (1, 2)

    def test_two_vertices(self):
        assert best_partner(transitive(2), 0) == (1, 0)

    def test_transitive5_source(self):
        # brute force over the 4 candidates: c(0, v) = v - 1, the best is v = 4
        T = transitive(5)
        v, c = best_partner(T, 0)
        assert (v, c) == (4, 3)
        assert c >= 1

    def test_single_vertex_rejected(self):
        with pytest.raises(TournamentError):
            best_partner(transitive(1), 0)

    @given(tournaments(min_n=2, max_n=30))
    def test_lower_bound_and_agreement(self, T):
        all_best = best_partners(T)
        adj = T.adjacency.tolist()
        for u in range(T.n):
            v, c = best_partner(T, u)
            assert (v, c) == all_best[u]
            assert c >= (T.n - 3) / 4
            values = [brute.conn(adj, u, w) if w != u else -1 for w in range(T.n)]
            assert c == max(values) and v == values.index(c)


class TestLowConnectivityGraph:
    def test_paley7_t0(self, paley7):
        assert len(low_connectivity_graph(paley7, 0).edges) == 0

    def test_paley7_t1(self, paley7):
        assert len(low_connectivity_graph(paley7, 1).edges) == 0

    def test_paley7_t2(self, paley7):
        g = low_connectivity_graph(paley7, 2)
        assert len(g.edges) == 21 and g.max_degree() == 6 <= g.degree_bound

    def test_two_vertices(self):
        g = low_connectivity_graph(transitive(2), 0)
        assert g.edges == frozenset({(0, 1)}) and g.max_degree() == 1 <= g.degree_bound

    def test_negative_threshold(self, paley7):
        with pytest.raises(TournamentError):
            low_connectivity_graph(paley7, -1)

    @settings(max_examples=60)
    @given(tournaments(min_n=1, max_n=40), st.integers(0, 12))
    def test_edges_and_degree_bound(self, T, t):
        g = low_connectivity_graph(T, t)
        adj = T.adjacency.tolist()
        want = {(u, v) for u in range(T.n) for v in range(u + 1, T.n) if brute.conn(adj, u, v) <= t}
        assert g.edges == want
        assert g.max_degree() <= 4 * t + 2

    def test_random_hosts_degree_bound(self):
        for seed in range(5):
            T = random_tournament(150, seed)
            for t in (0, 5, 20, 30, 37):
                assert low_connectivity_graph(T, t).max_degree() <= 4 * t + 2
