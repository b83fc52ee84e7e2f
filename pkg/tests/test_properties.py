"""Randomised algebraic laws, 500 derandomised examples each."""

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import sym, sym_eq
from sigmasl2 import ParamField, RootSpec
from sigmasl2.algebras import uq_system
from sigmasl2.base import BaseRing
from sigmasl2.bracket import bracket_coeff, verify_bracket_is_commutator
from sigmasl2.sigma import TwistData, apply_dsigma, apply_sigma
from sigmasl2.words import WordPoly

N_EXAMPLES = 500
prop = settings(max_examples=N_EXAMPLES, derandomize=True, deadline=None, database=None)

F = ParamField(["q", "p0"])
FW = ParamField(["p0"], RootSpec.cyclotomic(3))
R = BaseRing(F)
R3 = BaseRing(FW, 3)
TWISTS = {
    "jackson": TwistData(R, R.parse("q*t"), R.parse("p0")),
    "affine": TwistData(R, R.parse("q*t + 1"), R.parse("p0 + t")),
    "rooted": TwistData(R3, R3.parse("w*t"), R3.parse("p0")),
}

coeffs = st.sampled_from(["0", "1", "-1", "2", "q", "p0", "q - 1", "1/2", "q*p0", "-3*q^2"])
rcoeffs = st.sampled_from(["0", "1", "-1", "w", "p0", "w + 1", "1/3", "p0*w", "-2"])


def elem(tw, cs):
    return tw.ring.parse(" + ".join(f"({c})*t^{i}" for i, c in enumerate(cs)) or "0")


@st.composite
def ring_pair(draw):
    name = draw(st.sampled_from(sorted(TWISTS)))
    tw = TWISTS[name]
    pool = rcoeffs if name == "rooted" else coeffs
    n = 3 if name == "rooted" else 5
    a = draw(st.lists(pool, min_size=1, max_size=n))
    b = draw(st.lists(pool, min_size=1, max_size=n))
    return tw, elem(tw, a), elem(tw, b)


@prop
@given(ring_pair())
def test_sigma_leibniz(data):
    tw, a, b = data
    lhs = apply_dsigma(tw, a * b)
    rhs = apply_dsigma(tw, a) * b + apply_sigma(tw, a) * apply_dsigma(tw, b)
    assert lhs == rhs


@prop
@given(ring_pair())
def test_sigma_homomorphism(data):
    tw, a, b = data
    assert apply_sigma(tw, a * b) == apply_sigma(tw, a) * apply_sigma(tw, b)
    assert apply_sigma(tw, a + b) == apply_sigma(tw, a) + apply_sigma(tw, b)
    assert apply_sigma(tw, tw.ring.one()) == tw.ring.one()


@prop
@given(ring_pair())
def test_bracket_skew(data):
    tw, a, b = data
    assert bracket_coeff(tw, a, b) == -bracket_coeff(tw, b, a)
    assert bracket_coeff(tw, a, a).is_zero()


@prop
@given(ring_pair())
def test_bracket_is_commutator(data):
    tw, a, b = data
    assert verify_bracket_is_commutator(tw, a, b, degree_bound=3)


UQ = uq_system(field=F)
letters = st.text(alphabet="efh", min_size=0, max_size=5)


@st.composite
def word_polys(draw):
    terms = draw(st.lists(st.tuples(letters, coeffs), min_size=1, max_size=3))
    p = WordPoly.zero(F, "efh")
    for w, c in terms:
        p = p + WordPoly.word(F, "efh", w, F.parse(c))
    return p


@prop
@given(word_polys())
def test_normal_form_idempotent(p):
    nf = UQ.normal_form(p)
    assert UQ.normal_form(nf) == nf
    assert all(UQ.is_normal(w) for w in nf.terms)
    assert UQ.normal_form(p, strategy="rightmost") == nf


@prop
@given(word_polys(), word_polys())
def test_normal_form_is_linear(p, r):
    assert UQ.normal_form(p + r) == UQ.normal_form(p) + UQ.normal_form(r)


@st.composite
def scalars(draw):
    num = draw(coeffs)
    den = draw(st.sampled_from(["1", "q", "p0 + 1", "q - 1", "2*q^2 + p0"]))
    return F.parse(f"({num})/({den})")


@prop
@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == F.zero() and a * F.one() == a
    if not a.is_zero():
        assert a * a.inverse() == F.one()


@prop
@given(scalars(), scalars())
def test_scalars_against_sympy(a, b):
    ref = sp.together(sym(a) * sym(b) - sym(b) / (1 + sym(a) ** 2))
    got = a * b - b / (1 + a * a)
    assert sym_eq(sym(got), ref)
