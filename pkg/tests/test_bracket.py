import itertools

import pytest
import sympy as sp

from oracle import ring_poly
from sigmasl2 import ParamField, RootSpec
from sigmasl2.base import BaseRing
from sigmasl2.bracket import (
    OperatorMatrix,
    SpanElement,
    bracket,
    bracket_coeff,
    check_twisted_jacobi,
    default_triples,
    jacobi_residual,
    matrix_rep,
    operator_apply,
    second_order_part,
    span,
    verify_bracket_is_commutator,
)
from sigmasl2.errors import DomainMismatch, PreconditionError
from sigmasl2.sigma import TwistData, solve_delta
from sigmasl2.sl2 import generator_coeff


def twist(params, N, s, d, root=None):
    F = ParamField(params, root)
    R = BaseRing(F, N)
    return TwistData(R, R.parse(s), R.parse(d))


def test_bracket_formula_against_sympy():
    tw = twist(["q", "p0"], None, "q*t", "p0")
    a, b = tw.ring.parse("t^2 + 1"), tw.ring.parse("q*t^3")
    t, q, p0 = sp.symbols("t q p0")
    sa, sb = (t * q) ** 2 + 1, q * (q * t) ** 3
    da = p0 * (1 + q) * t
    db = q * p0 * (1 + q + q**2) * t**2
    expected = sp.expand(sa * db - sb * da)
    assert sp.expand(ring_poly(bracket_coeff(tw, a, b)) - expected) == 0


def test_span_element_algebra():
    tw = twist(["q"], None, "q*t", "1")
    x = span(tw, tw.ring.t())
    y = span(tw, 1)
    assert (x + y) - y == x
    assert (x * 3).coeff == tw.ring.parse("3*t")
    assert bracket(x, x).is_zero()
    assert bracket(x, y) == -bracket(y, x)
    assert operator_apply(y, tw.ring.monomial(2)) == tw.ring.parse("(1 + q)*t")
    other = twist(["q"], None, "t", "1")
    with pytest.raises(DomainMismatch):
        bracket(x, span(other, 1))


@pytest.mark.parametrize(
    "s, d, N",
    [("q*t", "p0", None), ("q0 + q1*t", "p0", None), ("t", "1", None), ("q1*t + q2*t^2", "p1*t + p2*t^2", 3)],
)
def test_bracket_equals_commutator(s, d, N):
    # the truncated case is well defined because dsigma(t) has no constant term
    params = ["q", "q0", "q1", "q2", "p0", "p1", "p2"]
    tw = twist(params, N, s, d)
    mons = [tw.ring.monomial(k) for k in range(3)]
    for a, b in itertools.product(mons, repeat=2):
        assert verify_bracket_is_commutator(tw, a, b)
        assert all(r.is_zero() for r in second_order_part(tw, a, b))


def test_commutator_fails_on_ill_defined_twist():
    tw = twist(["q1", "p0"], 3, "q1*t", "p0")
    assert verify_bracket_is_commutator(tw, tw.ring.one(), tw.ring.t())
    assert not verify_bracket_is_commutator(tw, tw.ring.one(), tw.ring.monomial(2))


def test_mutated_bracket_is_caught():
    tw = twist(["q", "p0"], None, "q*t", "p0")
    wrong = lambda x, y: SpanElement(x.coeff * operator_apply(y, tw.ring.t()), tw)
    assert not verify_bracket_is_commutator(tw, tw.ring.t(), tw.ring.monomial(2), bracket_fn=wrong)


def test_jacobi_case1_polynomial():
    tw = twist(["q0", "q1", "p0"], None, "q0 + q1*t", "p0")
    delta = solve_delta(tw, [tw.field.var("p0")]).particular
    res = check_twisted_jacobi(tw, delta, bound=4)
    assert res.ok and res.checked == 125
    bad = check_twisted_jacobi(tw, tw.ring.zero(), bound=2)
    assert not bad.ok and bad.failures


def test_jacobi_residual_is_cyclic():
    tw = twist(["q", "p0"], None, "q*t", "p0")
    a, b, c = (tw.ring.monomial(k) for k in (1, 2, 3))
    d = tw.ring.parse("q")
    assert jacobi_residual(tw, d, a, b, c) == jacobi_residual(tw, d, b, c, a)


def test_default_triples():
    assert len(default_triples(twist([], 3, "t", "0"))) == 27
    assert len(default_triples(twist([], None, "t", "1"), bound=1)) == 8


# -- matrices -----------------------------------------------------------------------

def test_generic_n3_matrices():
    tw = twist(["q1", "q2", "p0", "p1", "p2"], 3, "q1*t + q2*t^2", "p0 + p1*t + p2*t^2")
    F = tw.field
    P = lambda rows: OperatorMatrix(F, [[F.parse(c) for c in r] for r in rows])
    mats = {g: matrix_rep(span(tw, generator_coeff(tw.ring, g))) for g in "ehf"}
    assert mats["e"] == P([["0", "p0", "0"], ["0", "p1", "(q1+1)*p0"], ["0", "p2", "(q1+1)*p1 + q2*p0"]])
    assert mats["h"] == P([["0", "0", "0"], ["0", "-2*p0", "0"], ["0", "-2*p1", "-2*(q1+1)*p0"]])
    assert mats["f"] == P([["0", "0", "0"], ["0", "0", "0"], ["0", "-p0", "0"]])


def test_anomaly_matrices():
    tw = twist([], 3, "t", "1")
    e, h, f = (matrix_rep(span(tw, generator_coeff(tw.ring, g))) for g in "ehf")
    assert h * f - f * h == f * -2
    assert h * e - e * h == e * 2
    assert e * f + f * e * 2 == h
    assert str(e) == "[[0, 1, 0], [0, 0, 2], [0, 0, 0]]"


def test_matrix_needs_truncation():
    tw = twist([], None, "t", "1")
    with pytest.raises(PreconditionError):
        matrix_rep(span(tw, 1))


def test_operator_matrix_arithmetic():
    F = ParamField(["q"])
    I = OperatorMatrix.identity(F, 2)
    A = OperatorMatrix(F, [[F.var("q"), F.one()], [F.zero(), F.one()]])
    assert A * I == A and I * A == A
    assert (A - A).is_zero() and OperatorMatrix.zeros(F, 2).is_zero()
    assert A**2 == A * A
    assert A.specialize({"q": 2}).rows_str() == [["2", "1"], ["0", "1"]]
    assert -A + A == OperatorMatrix.zeros(F, 2)


def test_rooted_field_matrices_commute():
    tw = twist(["p0"], 3, "w*t", "p0", RootSpec.cyclotomic(3))
    e = matrix_rep(span(tw, 1))
    assert (e**3).is_zero()
