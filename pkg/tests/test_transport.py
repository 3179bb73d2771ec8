import random

import pytest

from oracles import brute_cramer_permanents
from tropcram.errors import PreconditionError, TransportInfeasible
from tropcram.random_instances import rmax_matrix
from tropcram.semirings import BOTTOM
from tropcram.transport import (
    cramer_permanents_brute,
    cramer_permanents_transport,
    cramer_permanents_via_jacobi,
    cross_check_permanents,
    solve_transport,
)

INF = BOTTOM


def _certify(C, sol, supply, demand):
    """Primal feasibility, dual feasibility and equal objectives."""
    m, n = len(supply), len(demand)
    y = sol.flow
    assert all(sum(y[i]) == supply[i] for i in range(m))
    assert all(sum(y[i][j] for i in range(m)) == demand[j] for j in range(n))
    assert all(y[i][j] == 0 for i in range(m) for j in range(n) if C[i][j] == INF)
    assert all(y[i][j] >= 0 for i in range(m) for j in range(n))
    for i in range(m):
        for j in range(n):
            if C[i][j] != INF:
                assert C[i][j] <= sol.u[i] + sol.v[j]
    primal = sum(C[i][j] * y[i][j] for i in range(m) for j in range(n) if y[i][j])
    dual = sum(s * u for s, u in zip(supply, sol.u)) + sum(d * v for d, v in zip(demand, sol.v))
    assert primal == dual == sol.value


def _is_spanning_tree(cells, m, n):
    if len(cells) != m + n - 1:
        return False
    parent = list(range(m + n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in cells:
        a, c = find(i), find(m + j)
        if a == c:
            return False
        parent[a] = c
    return True


class TestExamples:
    def test_two_columns(self):
        assert cramer_permanents_transport([[4, 7]]) == (7, 4)

    def test_all_zero(self):
        assert cramer_permanents_transport([[0, 0, 0], [0, 0, 0]]) == (0, 0, 0)

    def test_forbidden_cell(self):
        C = [[INF, 1, 2], [3, 0, 1]]
        assert cramer_permanents_transport(C) == brute_cramer_permanents(C) == (2, 5, 4)

    def test_rectangular_example(self):
        C = [[5, 0, 3], [1, 3, 1]]
        assert cramer_permanents_transport(C) == (6, 6, 8)
        sol = solve_transport(C)
        assert sol.value == 20 and sol.u == (0, -2) and sol.v == (5, 5, 3)

    def test_infeasible(self):
        with pytest.raises(TransportInfeasible, match="-inf"):
            cramer_permanents_transport([[INF, INF, 0], [INF, INF, 0]])

    def test_shape_and_balance_errors(self):
        with pytest.raises(PreconditionError):
            cramer_permanents_transport([[0, 0], [0, 0]])
        with pytest.raises(PreconditionError):
            solve_transport([[0, 0]], supply=[1], demand=[1, 1])
        with pytest.raises(PreconditionError):
            solve_transport([[0, 0]], order="sideways")


class TestAgainstEnumeration:
    def test_three_routes_agree(self):
        rng = random.Random(41)
        checked = 0
        for _ in range(300):
            n = rng.randint(2, 6)
            C = rmax_matrix(rng, n - 1, n, -6, 6, p_bottom=0.15)
            brute = brute_cramer_permanents([list(r) for r in C.rows])
            assert cramer_permanents_brute(C) == brute
            if BOTTOM in brute:
                with pytest.raises(TransportInfeasible):
                    cramer_permanents_transport(C)
                continue
            checked += 1
            assert cramer_permanents_via_jacobi(C) == brute
            for order in ("bland", "reversed"):
                assert cramer_permanents_transport(C, order) == brute
        assert checked > 150

    def test_cross_check_record(self):
        rng = random.Random(42)
        C = rmax_matrix(rng, 3, 4, -5, 5, p_bottom=0.0)
        rec = cross_check_permanents(C)
        assert rec.agree and rec.brute == rec.jacobi == rec.transport
        assert set(rec.timings) >= {"brute", "jacobi"}


class TestSimplex:
    def test_optimality_certificates(self):
        rng = random.Random(43)
        for _ in range(150):
            m, n = rng.randint(1, 5), rng.randint(1, 5)
            supply = [rng.randint(1, 6) for _ in range(m)]
            demand = [0] * n
            for _ in range(sum(supply)):
                demand[rng.randrange(n)] += 1
            C = [list(r) for r in rmax_matrix(rng, m, n, -5, 5, p_bottom=0.2).rows]
            try:
                sol = solve_transport(C, supply, demand)
            except TransportInfeasible:
                continue
            _certify(C, sol, supply, demand)
            assert _is_spanning_tree(sol.basis, m, n)
            assert all(sol.flow[i][j] == 0 for i, j in sol.basis if C[i][j] == INF)
            assert all(sol.flow[i][j] == 0 for i in range(m) for j in range(n)
                       if (i, j) not in sol.basis)
            other = solve_transport(C, supply, demand, order="reversed")
            assert other.value == sol.value

    def test_duals_are_normalized(self):
        sol = solve_transport([[1, 2, 3], [4, 5, 7]])
        assert sol.u[0] == 0
