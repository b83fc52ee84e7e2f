"""Deformed sl2: the span of e = dsigma, h = -2t dsigma, f = -t^2 dsigma.

Coefficients ``c0 + c1 t + c2 t^2`` are read in the fixed basis
``{1, -2t, -t^2}``, i.e. ``e: c0``, ``h: -c1/2``, ``f: -c2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg
from .base import BaseElement, BaseRing
from .bracket import bracket_coeff
from .errors import ConfigError, NotClosed, PreconditionError
from .scalar import ParamField, Scalar
from .sigma import WHOLE_RING, TwistData, annihilator_basis, apply_sigma
from .words import WordPoly

GENS = "ehf"
ALPHABET = "efh"  # alphabet order used for rewriting: e < f < h
PAIRS = ("hf", "he", "ef")


class CaseTag(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    NOT_CLOSED = "NotClosed"

    def __str__(self):
        return self.value


def generator_coeff(ring: BaseRing, g: str) -> BaseElement:
    if g == "e":
        return ring.one()
    if g == "h":
        return ring.monomial(1, -2)
    if g == "f":
        return ring.monomial(2, -1)
    raise PreconditionError(f"unknown generator {g!r}")


def classify_case(tw: TwistData) -> CaseTag:
    """Sort a twist on K[t] by the degrees of ``q = sigma(t)`` and ``p = dsigma(t)``.

    Formal parameters count as nonzero, so e.g. ``q0 + q1*t`` has degree 1.
    """
    if tw.ring.trunc is not None:
        raise PreconditionError("case classification is defined for K[t] only")
    q, p = tw.sigma_t, tw.dsigma_t
    dq, dp = q.degree(), p.degree()
    if p.is_zero():
        return CaseTag.NOT_CLOSED
    if dq == 1 and dp == 0:
        return CaseTag.CASE1
    if dq == 0 and dp <= 1:
        return CaseTag.CASE2
    if q.is_zero() and dp <= 1:
        return CaseTag.CASE3
    return CaseTag.NOT_CLOSED


def decompose(tw: TwistData, c: BaseElement, use_annihilator: bool = True) -> tuple[Scalar, Scalar, Scalar]:
    """Coordinates of ``c * dsigma`` in (e, h, f).

    Terms of degree >= 3 are absorbed into the annihilator when that is
    possible; otherwise :class:`NotClosed` is raised.
    """
    if c.degree() > 2:
        reduced = _absorb_high_terms(tw, c) if use_annihilator else None
        if reduced is None:
            raise NotClosed("element leaves span{e, h, f}", witness=c)
        c = reduced
    return (c.coeff(0), -c.coeff(1) / 2, -c.coeff(2))


def _absorb_high_terms(tw: TwistData, c: BaseElement) -> BaseElement | None:
    basis = annihilator_basis(tw)
    if basis is WHOLE_RING:
        return tw.ring.zero()
    if not basis:
        return None
    top = len(c.coeffs)
    top = max(top, max(len(b.coeffs) for b in basis))
    rows = [[b.coeff(i) for b in basis] for i in range(3, top)]
    rhs = [c.coeff(i) for i in range(3, top)]
    try:
        sol = linalg.solve(tw.field, rows, rhs)
    except linalg.InconsistentSystem:
        return None
    out = c
    for mu, b in zip(sol.particular, basis):
        out = out - b * mu
    return out


def compose(vec: Sequence[Scalar], ring: BaseRing) -> BaseElement:
    e, h, f = vec
    return generator_coeff(ring, "e") * e + generator_coeff(ring, "h") * h + generator_coeff(ring, "f") * f


@dataclass
class StructureTable:
    """Brackets <h,f>, <h,e>, <e,f> in the basis (e, h, f)."""

    hf: tuple[Scalar, Scalar, Scalar]
    he: tuple[Scalar, Scalar, Scalar]
    ef: tuple[Scalar, Scalar, Scalar]
    twist: TwistData | None = None
    alpha: list[list[Scalar]] | None = None  # columns: images of e, h, f
    field: ParamField | None = None

    def __post_init__(self):
        if self.field is None:
            self.field = self.hf[0].field

    def bracket_vec(self, x: str, y: str) -> tuple[Scalar, Scalar, Scalar]:
        z = self.field.zero()
        if x == y:
            return (z, z, z)
        key = x + y
        if key in PAIRS:
            return getattr(self, key)
        rev = getattr(self, y + x)
        return tuple(-c for c in rev)

    def records(self) -> list[dict[str, str]]:
        return [
            {"bracket": k, "e": str(v[0]), "h": str(v[1]), "f": str(v[2])}
            for k, v in ((k, getattr(self, k)) for k in PAIRS)
        ]

    @classmethod
    def from_records(cls, field: ParamField, records: Sequence[Mapping[str, str]], alpha=None) -> "StructureTable":
        got = {}
        for r in records:
            k = r.get("bracket")
            if k not in PAIRS:
                raise ConfigError(f"unknown bracket label {k!r}")
            got[k] = tuple(field.parse(str(r.get(g, "0"))) for g in GENS)
        missing = [k for k in PAIRS if k not in got]
        if missing:
            raise ConfigError(f"structure table lacks bracket {missing[0]!r}")
        return cls(got["hf"], got["he"], got["ef"], alpha=alpha, field=field)

    def equals(self, other: "StructureTable") -> bool:
        return all(a == b for k in PAIRS for a, b in zip(getattr(self, k), getattr(other, k)))

    def specialize(self, bindings) -> "StructureTable":
        sp = lambda v: tuple(c.specialize(bindings) for c in v)
        alpha = None if self.alpha is None else [[c.specialize(bindings) for c in row] for row in self.alpha]
        return StructureTable(sp(self.hf), sp(self.he), sp(self.ef), alpha=alpha, field=self.field)

    def as_relations(self) -> list[WordPoly]:
        """Commutator relations ``xy - yx = <x, y>`` for the three pairs."""
        F = self.field
        out = []
        for k in PAIRS:
            x, y = k
            lhs = WordPoly.word(F, ALPHABET, x + y) - WordPoly.word(F, ALPHABET, y + x)
            out.append(lhs - vec_to_word(F, getattr(self, k)))
        return out


def vec_to_word(F: ParamField, vec: Sequence[Scalar]) -> WordPoly:
    out = WordPoly.zero(F, ALPHABET)
    for g, c in zip(GENS, vec):
        out = out + WordPoly.word(F, ALPHABET, g, c)
    return out


def sigma_images(tw: TwistData) -> dict[str, tuple[Scalar, Scalar, Scalar]]:
    """sigma(g) = sigma(coeff of g) * dsigma, decomposed in (e, h, f)."""
    ring = tw.ring
    return {g: decompose(tw, apply_sigma(tw, generator_coeff(ring, g)), use_annihilator=False) for g in GENS}


def alpha_matrix(tw: TwistData) -> list[list[Scalar]] | None:
    try:
        imgs = sigma_images(tw)
    except NotClosed:
        return None
    return [[imgs[g][i] for g in GENS] for i in range(3)]


def structure_table(tw: TwistData) -> StructureTable:
    ring = tw.ring
    vals = {}
    for k in PAIRS:
        x, y = k
        c = bracket_coeff(tw, generator_coeff(ring, x), generator_coeff(ring, y))
        vals[k] = decompose(tw, c)
    return StructureTable(vals["hf"], vals["he"], vals["ef"], twist=tw, alpha=alpha_matrix(tw), field=tw.field)


def relation_lift(tw: TwistData, x: str, y: str) -> tuple[WordPoly, WordPoly]:
    """``sigma(x) y - sigma(y) x = <x, y>`` as word polynomials in e, f, h."""
    F = tw.field
    imgs = sigma_images(tw)
    gx = WordPoly.gen(F, ALPHABET, x)
    gy = WordPoly.gen(F, ALPHABET, y)
    lhs = vec_to_word(F, imgs[x]) * gy - vec_to_word(F, imgs[y]) * gx
    c = bracket_coeff(tw, generator_coeff(tw.ring, x), generator_coeff(tw.ring, y))
    rhs = vec_to_word(F, decompose(tw, c))
    return lhs, rhs


def lifted_relations(tw: TwistData) -> list[WordPoly]:
    out = []
    for k in PAIRS:
        lhs, rhs = relation_lift(tw, k[0], k[1])
        out.append(lhs - rhs)
    return out


def proportional(a: WordPoly, b: WordPoly) -> bool:
    """``a`` is a nonzero scalar multiple of ``b``."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if set(a.terms) != set(b.terms):
        return False
    w = next(iter(b.terms))
    r = a.terms[w] / b.terms[w]
    return all(a.terms[v] == r * b.terms[v] for v in b.terms)


# -- named specializations -----------------------------------------------------------

@dataclass
class NamedInstance:
    name: str
    twist: TwistData | None
    table: StructureTable | None
    relations: list[WordPoly]
    alphabet: str = ALPHABET
    grading: dict[str, tuple[int, int]] | None = None
    description: str = ""
    assume_nonzero: list[Scalar] = field(default_factory=list)


def _twist(params, trunc, sigma_t, dsigma_t):
    F = ParamField(params)
    R = BaseRing(F, trunc)
    return TwistData(R, R.parse(sigma_t), R.parse(dsigma_t))


NAMED = {
    "classical": "sigma = id, dsigma(t) = 1 on K[t]",
    "jackson": "sigma(t) = q t, dsigma(t) = p0 on K[t] (Jackson q-derivative)",
    "jordanian": "K[t]/(t^3), sigma(t) = t - eps/2 t^2, dsigma = 0",
    "solvable": "K[t]/(t^3), sigma = id, dsigma(t) = t + a/2 t^2",
    "heisenberg": "K[t]/(t^3), sigma = id, dsigma(t) = -1/2 t^2",
    "polynomial3": "K[t]/(t^3), sigma = id, dsigma = 0",
    "color": "q = -1: the algebra on x, y, z with a Z2xZ2 grading",
}


def instantiate_named(name: str) -> NamedInstance:
    assume: list[Scalar] = []
    if name == "classical":
        tw = _twist([], None, "t", "1")
    elif name == "jackson":
        tw = _twist(["q", "p0"], None, "q*t", "p0")
        assume = [tw.field.var("q"), tw.field.var("p0")]
    elif name == "jordanian":
        tw = _twist(["eps"], 3, "t - eps/2*t^2", "0")
    elif name == "solvable":
        tw = _twist(["a"], 3, "t", "t + a/2*t^2")
    elif name == "heisenberg":
        tw = _twist([], 3, "t", "-1/2*t^2")
    elif name == "polynomial3":
        tw = _twist([], 3, "t", "0")
    elif name == "color":
        from .algebras import wq_relations

        F = ParamField(["p0"])
        rels = wq_relations(F.const(-1), F.var("p0"))
        grading = {"y": (1, 0), "x": (1, 1), "z": (1, 1)}
        return NamedInstance(name, None, None, rels, "xyz", grading, NAMED[name])
    else:
        raise ConfigError(f"unknown specialization {name!r}; known: {', '.join(sorted(NAMED))}")
    table = structure_table(tw)
    return NamedInstance(name, tw, table, lifted_relations(tw), description=NAMED[name], assume_nonzero=assume)
