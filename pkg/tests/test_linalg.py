import pytest
import sympy as sp

from oracle import sym
from sigmasl2 import ParamField
from sigmasl2 import linalg
from sigmasl2.errors import AssumptionRequired, InconsistentSystem

F = ParamField(["a", "b"])
a, b = F.gens()


def S(x):
    return F.scalar(x)


def test_unique_solution_matches_sympy():
    M = [[a, S(1)], [S(1), b]]
    rhs = [S(1), S(0)]
    sol = linalg.solve(F, M, rhs)
    A, B = sp.symbols("a b")
    ref = sp.Matrix([[A, 1], [1, B]]).LUsolve(sp.Matrix([1, 0]))
    for got, want in zip(sol.particular, ref):
        assert sp.simplify(sym(got) - want) == 0
    assert sol.nullspace == []


def test_nullspace():
    M = [[S(1), S(2), a], [S(2), S(4), 2 * a]]
    sol = linalg.nullspace(F, M)
    assert len(sol.nullspace) == 2
    for v in sol.nullspace:
        for row in M:
            assert sum((x * y for x, y in zip(row, v)), F.zero()) == 0


def test_inconsistent():
    with pytest.raises(InconsistentSystem):
        linalg.solve(F, [[S(1)], [S(1)]], [S(0), S(1)])


def test_gated_pivot_needs_assumption():
    with pytest.raises(AssumptionRequired) as ei:
        linalg.solve(F, [[a]], [S(1)], assumptions=[])
    assert "a != 0" in str(ei.value)
    sol = linalg.solve(F, [[a]], [S(1)], assumptions=[a])
    assert sol.particular == [a.inverse()]


def test_generic_mode_reports_pivots():
    sol = linalg.solve(F, [[a - b]], [S(1)])
    assert sol.pivots == [a - b]


def test_rank_and_span():
    assert linalg.rank(F, [[S(1), a], [a, a * a]]) == 1
    assert linalg.in_span(F, [[S(1), a]], [b, a * b])
    assert not linalg.in_span(F, [[S(1), a]], [S(1), b])
