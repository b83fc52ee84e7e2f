"""Concrete quadratic algebras: U_q on e, f, h and W_q on x, y, z.

U_q uses the alphabet order e < f < h, so its leading words are fe, he and
hf and the normal words are e^a f^b h^c.  W_q uses x < y < z.
"""

from __future__ import annotations

from .quadratic import RewriteSystem
from .scalar import ParamField, Scalar
from .words import WordPoly

UQ_ALPHABET = "efh"
WQ_ALPHABET = "xyz"


def default_field() -> ParamField:
    return ParamField(["q", "p0"])


def _qp(field, q, p0):
    if field is None:
        given = [x for x in (q, p0) if isinstance(x, Scalar)]
        field = given[0].field if given else default_field()
    q = field.var("q") if q is None else field.scalar(q)
    p0 = field.var("p0") if p0 is None else field.scalar(p0)
    return q.field, q, p0


def uq_relations(q: Scalar | None = None, p0: Scalar | None = None, field: ParamField | None = None) -> list[WordPoly]:
    """``hf - q fh = -2p0 f``, ``he - q^-1 eh = 2q^-1 p0 e``, ``ef - q^2 fe = (q+1)/2 p0 h``."""
    F, q, p0 = _qp(field, q, p0)
    W = lambda w, c=1: WordPoly.word(F, UQ_ALPHABET, w, c)
    qi = q.inverse()
    return [
        W("hf") - W("fh", q) + W("f", 2 * p0),
        W("he") - W("eh", qi) - W("e", 2 * qi * p0),
        W("ef") - W("fe", q * q) - W("h", (q + 1) / 2 * p0),
    ]


def uq_system(q=None, p0=None, field=None, assumptions=None) -> RewriteSystem:
    rels = uq_relations(q, p0, field)
    return RewriteSystem.from_relations(rels[0].field, UQ_ALPHABET, rels, order=UQ_ALPHABET, assumptions=assumptions)


def wq_relations(q=None, p0=None, field=None) -> list[WordPoly]:
    """``yz = q^-1 zy``, ``zx - q^2 xz = a y + b`` and ``xy = q^-1 yx``.

    ``a = p0^2 (1 + q^-1)`` and ``b = p0^2 (q+1)/(q-1)``.
    """
    F, q, p0 = _qp(field, q, p0)
    W = lambda w, c=1: WordPoly.word(F, WQ_ALPHABET, w, c)
    qi = q.inverse()
    a, b = wq_constants(q, p0)
    return [
        W("yz") - W("zy", qi),
        W("zx") - W("xz", q * q) - W("y", a) - W("", b),
        W("xy") - W("yx", qi),
    ]


def wq_constants(q: Scalar, p0: Scalar) -> tuple[Scalar, Scalar]:
    return p0 * p0 * (1 + q.inverse()), p0 * p0 * (q + 1) / (q - 1)


def wq_system(q=None, p0=None, field=None, assumptions=None) -> RewriteSystem:
    rels = wq_relations(q, p0, field)
    return RewriteSystem.from_relations(rels[0].field, WQ_ALPHABET, rels, order=WQ_ALPHABET, assumptions=assumptions)


def omega_q(q=None, field=None) -> WordPoly:
    """``ef + q fe + (q+1)/4 h^2``."""
    F, q, _ = _qp(field, q, 0)
    W = lambda w, c=1: WordPoly.word(F, UQ_ALPHABET, w, c)
    return W("ef") + W("fe", q) + W("hh", (q + 1) / 4)


def omega_tau(q=None, field=None) -> dict[str, WordPoly]:
    F, q, _ = _qp(field, q, 0)
    W = lambda w, c=1: WordPoly.word(F, UQ_ALPHABET, w, c)
    return {"e": W("e", q ** -2), "h": W("h"), "f": W("f", q * q)}


def wq_substitution(q=None, p0=None, field=None, shift_sign: int = 1, shift: bool = True) -> dict[str, WordPoly]:
    """Images of e, f, h in W_q: ``e -> z``, ``f -> x``, ``h -> 2p0 q^-1 y + s 2p0/(q-1)``.

    ``shift_sign=+1`` is the change of basis that actually maps the U_q
    relations into W_q; ``shift_sign=-1`` is the other sign, kept for
    comparison.  ``shift=False`` drops the constant term altogether.
    """
    F, q, p0 = _qp(field, q, p0)
    W = lambda w, c=1: WordPoly.word(F, WQ_ALPHABET, w, c)
    h = W("y", 2 * p0 * q.inverse())
    if shift:
        h = h + W("", shift_sign * 2 * p0 / (q - 1))
    return {"e": W("z"), "f": W("x"), "h": h}


def uq_substitution(q=None, p0=None, field=None) -> dict[str, WordPoly]:
    """Inverse of :func:`wq_substitution` (needs p0 != 0): images of x, y, z in U_q."""
    F, q, p0 = _qp(field, q, p0)
    W = lambda w, c=1: WordPoly.word(F, UQ_ALPHABET, w, c)
    y = (W("h") - W("", 2 * p0 / (q - 1))) * (q / (2 * p0))
    return {"x": W("f"), "y": y, "z": W("e")}


def conformal_vector_uq(q=None, p0=None, field=None) -> list[Scalar]:
    """The vector ``a'`` with F(a') = U_q under h -> x, e -> y, f -> z."""
    F, q, p0 = _qp(field, q, p0)
    qi = q.inverse()
    return [qi, 2 * qi * p0, q * q, F.zero(), (q + 1) / 2 * p0, qi, 2 * qi * p0]


def witten_vector(a=None, field=None) -> list[Scalar]:
    field = field or ParamField(["a"])
    a = field.var("a") if a is None else field.scalar(a)
    one = field.one()
    return [a, one, one, a - 1, one, a, one]
