import itertools
import random

import pytest

from oracles import brute_det, optimal_permutations, parity
from tropcram.assignment import (
    CYCLE_NODE_CAP,
    det_sign_rmax,
    det_smax,
    det_t2,
    fast_det,
    find_cycle,
    has_multiple_optima,
    has_odd_optimum_pair,
    per_rmax,
    simple_cycles,
    strongly_connected_components,
    tight_graph,
)
from tropcram.errors import PreconditionError
from tropcram.extension import SMAX, T2, b, n, p, t1, t2
from tropcram.linalg import TropMatrix
from tropcram.random_instances import ext_matrix, rmax_matrix
from tropcram.semirings import BOTTOM, RMAX

INF = BOTTOM


def M(S, rows):
    return TropMatrix.from_rows(S, rows)


def _finite(rng, size, lo=-3, hi=3, p_bottom=0.2):
    while True:
        C = rmax_matrix(rng, size, size, lo, hi, p_bottom=p_bottom)
        if optimal_permutations(C.rows)[1]:
            return C


class TestTightGraph:
    def test_examples(self):
        G = tight_graph([[0, 0], [0, 0]])
        assert sorted(G.arcs()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert has_multiple_optima(G) and has_odd_optimum_pair(G)
        G = tight_graph([[1, 0], [0, 1]])
        assert sorted(G.arcs()) == [(0, 0), (1, 1)]
        assert not has_multiple_optima(G)

    def test_matchings_are_the_optima(self):
        rng = random.Random(21)
        for _ in range(150):
            size = rng.randint(1, 5)
            C = _finite(rng, size)
            G = tight_graph(C)
            _, optima = optimal_permutations(C.rows)
            matchings = {
                tuple(sigma)
                for sigma in itertools.permutations(range(size))
                if all(sigma[i] in G.succ[i] for i in range(size))
            }
            # node i is row row_of[i]; map matchings back to row -> column
            as_rows = set()
            for m in matchings:
                sigma = [0] * size
                for i in range(size):
                    sigma[G.row_of[i]] = m[i]
                as_rows.add(tuple(sigma))
            assert as_rows == set(optima)

    def test_cycle_criteria_against_enumeration(self):
        rng = random.Random(22)
        for _ in range(300):
            size = rng.randint(1, 5)
            C = _finite(rng, size, 0, 2, p_bottom=0.1)
            _, optima = optimal_permutations(C.rows)
            G = tight_graph(C)
            assert has_multiple_optima(G) == (len(optima) > 1)
            assert has_odd_optimum_pair(G) == (len({parity(s) for s in optima}) == 2)


class TestCycles:
    def _brute(self, n, succ):
        found = set()
        for k in range(2, n + 1):  # loops are not circuits here
            for nodes in itertools.permutations(range(n), k):
                if nodes[0] != min(nodes):
                    continue
                if all(nodes[(i + 1) % k] in succ[nodes[i]] for i in range(k)):
                    found.add(nodes)
        return found

    def test_simple_cycles_match_brute_force(self):
        rng = random.Random(23)
        for _ in range(100):
            size = rng.randint(1, 6)
            succ = [frozenset(j for j in range(size) if rng.random() < 0.4) for _ in range(size)]
            got = set()
            for cyc in simple_cycles(size, succ):
                k = cyc.index(min(cyc))
                got.add(tuple(cyc[k:] + cyc[:k]))
            assert got == self._brute(size, succ)

    def test_scc(self):
        comp = strongly_connected_components(4, [{1}, {0}, {3}, set()])
        assert comp[0] == comp[1] and len({comp[0], comp[2], comp[3]}) == 3

    def test_node_cap(self):
        size = CYCLE_NODE_CAP + 1
        C = TropMatrix.identity(RMAX, size)
        G = tight_graph(C)
        with pytest.raises(PreconditionError):
            find_cycle(G, lambda c: True)


class TestDeterminants:
    def test_t2_examples(self):
        assert det_t2(M(T2, [[t1(0), t1(0)], [t1(0), t1(0)]])) == t2(0)
        assert det_t2(M(T2, [[t1(1), t1(0)], [t1(0), t1(1)]])) == t1(2)
        assert det_t2(M(T2, [[t2(1), t1(0)], [t1(0), t1(1)]])) == t2(2)

    def test_sign_rmax_examples(self):
        assert det_sign_rmax(M(SMAX, [[p(0), p(0)], [p(0), p(0)]])) == b(0)
        assert det_sign_rmax(M(SMAX, [[p(0), p(1)], [p(1), p(0)]])) == n(2)
        with pytest.raises(PreconditionError):
            det_sign_rmax(M(SMAX, [[n(0)]]))

    def test_smax_examples(self):
        A = M(SMAX, [[p(5), n(0), p(3)], [p(1), p(3), n(1)], [p(3), n(2), b(1)]])
        assert det_smax(A) == b(9)
        assert det_smax(M(SMAX, [[p(0), n(0)], [p(0), p(0)]])) == p(0)
        assert det_smax(M(SMAX, [[SMAX.zero, p(0)], [SMAX.zero, p(1)]])) == SMAX.zero

    @pytest.mark.parametrize("S,fast", [(SMAX, det_smax), (T2, det_t2)], ids=["smax", "t2"])
    def test_fast_routes_match_expansion(self, S, fast):
        rng = random.Random(24)
        for _ in range(400):
            size = rng.randint(1, 6)
            A = ext_matrix(rng, S, size, size, mags=(0, 1, 2), p_zero=0.2, p_nonthin=0.15)
            assert fast(A) == brute_det(S, A.rows)

    def test_sign_rmax_matches_expansion(self):
        rng = random.Random(25)
        for _ in range(300):
            size = rng.randint(1, 6)
            rows = [[p(rng.randint(0, 2)) if rng.random() > 0.2 else SMAX.zero
                     for _ in range(size)] for _ in range(size)]
            assert det_sign_rmax(M(SMAX, rows)) == brute_det(SMAX, rows)

    def test_fast_det_dispatch(self):
        assert fast_det(M(RMAX, [[1, 0], [0, 1]])) == 2 == per_rmax([[1, 0], [0, 1]])
        assert per_rmax([[INF, INF], [0, 0]]) == INF
        with pytest.raises(PreconditionError):
            det_smax(M(T2, [[t1(0)]]))
