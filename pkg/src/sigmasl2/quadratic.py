"""Rewriting in quadratic algebras F{generators}/(relations).

Words are ordered degree-lexicographically by a declared alphabet order.
Each relation is oriented towards its leading word, which is then rewritten
to the (strictly smaller) remainder.  Normal forms are computed largest
word first, so every word is rewritten at most once per call.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import AssumptionRequired, BudgetExhausted, DomainMismatch, PreconditionError
from .scalar import ParamField, Scalar, covered_by
from .words import WordPoly, parse_relation, relations_from

DEFAULT_BUDGET = 200_000


@dataclass
class Rule:
    lead: str
    rhs: WordPoly  # lead -> rhs

    def as_relation(self) -> WordPoly:
        return WordPoly.word(self.rhs.field, self.rhs.alphabet, self.lead) - self.rhs


class RewriteSystem:
    """Oriented relations with a deglex order on words."""

    def __init__(self, field: ParamField, alphabet: str, order: str, rules: Sequence[Rule]):
        if sorted(order) != sorted(alphabet):
            raise PreconditionError("order must be a permutation of the alphabet")
        self.field = field
        self.alphabet = alphabet
        self.order = order
        self._rank = {a: i for i, a in enumerate(order)}
        self.rules = list(rules)
        self.assumptions: list[Scalar] = []
        self._by_lead = {r.lead: r for r in self.rules}
        if len(self._by_lead) != len(self.rules):
            raise PreconditionError("leading words must be pairwise distinct")
        self._lead_lengths = sorted({len(r.lead) for r in self.rules})
        for r in self.rules:
            for w in r.rhs.terms:
                if not self.less(w, r.lead):
                    raise PreconditionError(f"rule {r.lead} -> {r.rhs} does not decrease")

    # -- order ------------------------------------------------------------
    def key(self, w: str):
        return (len(w), tuple(self._rank[a] for a in w))

    def less(self, u: str, v: str) -> bool:
        return self.key(u) < self.key(v)

    def leading(self, p: WordPoly) -> str:
        return max(p.terms, key=self.key)

    # -- construction -------------------------------------------------------
    @classmethod
    def from_relations(
        cls,
        field: ParamField,
        alphabet: str,
        relations: Iterable,
        order: str | None = None,
        assumptions: Sequence[Scalar] | None = None,
    ) -> "RewriteSystem":
        """Orient and interreduce ``relations`` (WordPolys or strings).

        With ``assumptions`` given, dividing by a non-constant leading
        coefficient requires it to be certified nonzero.
        """
        order = order or alphabet
        rels = relations_from(field, alphabet, relations)
        sys = cls(field, alphabet, order, [])
        pending = [r for r in rels if not r.is_zero()]
        rules: dict[str, Rule] = {}
        while pending:
            rel = pending.pop(0)
            rel = sys._reduce_with(rules, rel)
            if rel.is_zero():
                continue
            lead = sys.leading(rel)
            c = rel.terms[lead]
            if assumptions is not None and not c.is_constant() and not covered_by(c, assumptions):
                raise AssumptionRequired(c)
            rhs = (WordPoly.word(field, alphabet, lead, c) - rel) / c
            new = Rule(lead, rhs)
            # rules whose leading word contains the new one must be redone
            redo = [r for r in rules.values() if lead in r.lead]
            for r in redo:
                del rules[r.lead]
                pending.append(r.as_relation())
            rules[lead] = new
            for r in list(rules.values()):
                r.rhs = sys._reduce_with(rules, r.rhs, skip=r.lead)
        out = cls(field, alphabet, order, sorted(rules.values(), key=lambda r: sys.key(r.lead)))
        out.assumptions = list(assumptions or [])
        return out

    def _reduce_with(self, rules: Mapping[str, Rule], p: WordPoly, skip: str | None = None) -> WordPoly:
        tmp = RewriteSystem.__new__(RewriteSystem)
        tmp.field, tmp.alphabet, tmp.order, tmp._rank = self.field, self.alphabet, self.order, self._rank
        tmp._by_lead = {k: v for k, v in rules.items() if k != skip}
        tmp._lead_lengths = sorted({len(k) for k in tmp._by_lead})
        tmp.rules = list(tmp._by_lead.values())
        return tmp.normal_form(p)

    # -- rewriting ----------------------------------------------------------
    def find(self, w: str, strategy: str = "leftmost"):
        """Position and rule of the first reducible subword."""
        n = len(w)
        positions = range(n) if strategy == "leftmost" else range(n - 1, -1, -1)
        by_lead = self._by_lead
        for i in positions:
            for L in self._lead_lengths:
                if i + L <= n:
                    r = by_lead.get(w[i : i + L])
                    if r is not None:
                        return i, r
        return None, None

    def is_normal(self, w: str) -> bool:
        return self.find(w)[1] is None

    def normal_form(self, p, step_budget: int = DEFAULT_BUDGET, strategy: str = "leftmost") -> WordPoly:
        if isinstance(p, str):
            p = parse_relation(self.field, self.alphabet, p)
        if p.field is not self.field or p.alphabet != self.alphabet:
            raise DomainMismatch("word polynomial does not belong to this system")
        pending: dict[str, Scalar] = dict(p.terms)
        heap = [self._heapkey(w) for w in pending]
        heapq.heapify(heap)
        done: dict[str, Scalar] = {}
        steps = 0
        while heap:
            _, w = heapq.heappop(heap)
            c = pending.pop(w, None)
            if c is None or c.is_zero():
                continue
            i, rule = self.find(w, strategy)
            if rule is None:
                done[w] = c
                continue
            steps += 1
            if steps > step_budget:
                raise BudgetExhausted(f"normal form did not finish within {step_budget} rewrite steps")
            u, v = w[:i], w[i + len(rule.lead) :]
            for w2, c2 in rule.rhs.terms.items():
                nw = u + w2 + v
                if nw in pending:
                    pending[nw] = pending[nw] + c * c2
                else:
                    pending[nw] = c * c2
                    heapq.heappush(heap, self._heapkey(nw))
        return WordPoly(self.field, self.alphabet, done)

    def _heapkey(self, w: str):
        return ((-len(w), tuple(-self._rank[a] for a in w)), w)

    def reduce_one_step(self, w: str, position: int) -> WordPoly:
        for L in self._lead_lengths:
            r = self._by_lead.get(w[position : position + L])
            if r is not None:
                u, v = w[:position], w[position + L :]
                return WordPoly.word(self.field, self.alphabet, u) * r.rhs * WordPoly.word(self.field, self.alphabet, v)
        raise PreconditionError(f"no rule applies to {w!r} at {position}")

    def relations(self) -> list[WordPoly]:
        return [r.as_relation() for r in self.rules]

    def __repr__(self):
        body = ", ".join(f"{r.lead} -> {r.rhs.to_str(self.order)}" for r in self.rules)
        return f"RewriteSystem({body})"


# -- Diamond lemma -------------------------------------------------------------

@dataclass
class Overlap:
    word: str
    first: str
    second: str
    residual: WordPoly

    @property
    def resolved(self) -> bool:
        return self.residual.is_zero()


@dataclass
class ConfluenceReport:
    ok: bool
    overlaps: list[Overlap] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def ambiguities(sys: RewriteSystem):
    """Overlap and inclusion ambiguities as (word, pos1, lead1, pos2, lead2)."""
    leads = [r.lead for r in sys.rules]
    out = []
    for a, b in itertools.product(leads, repeat=2):
        for k in range(1, min(len(a), len(b))):
            if a[-k:] == b[:k]:
                out.append((a + b[k:], 0, a, len(a) - k, b))
        if a != b and b in a:
            i = a.find(b)
            out.append((a, 0, a, i, b))
    return sorted(set(out), key=lambda x: (sys.key(x[0]), x[2], x[4]))


def check_confluence(sys: RewriteSystem, step_budget: int = DEFAULT_BUDGET) -> ConfluenceReport:
    overlaps = []
    for word, i, a, j, b in ambiguities(sys):
        left = sys.normal_form(sys.reduce_one_step(word, i), step_budget)
        right = sys.normal_form(sys.reduce_one_step(word, j), step_budget)
        overlaps.append(Overlap(word, a, b, left - right))
    return ConfluenceReport(all(o.resolved for o in overlaps), overlaps)


def count_normal_words(sys: RewriteSystem, degree: int) -> int:
    """Words of length ``degree`` containing no leading word."""
    if degree < 0:
        return 0
    leads = [r.lead for r in sys.rules]
    if not leads:
        return len(sys.alphabet) ** degree
    if "" in leads:
        return 0
    keep = max(len(w) for w in leads) - 1
    states = {"": 1}
    for _ in range(degree):
        nxt: dict[str, int] = {}
        for s, n in states.items():
            for a in sys.alphabet:
                w = s + a
                if any(w.endswith(l) for l in leads):
                    continue
                key = w[-keep:] if keep else ""
                nxt[key] = nxt.get(key, 0) + n
        states = nxt
    return sum(states.values())


# -- checks on specific elements ---------------------------------------------------

@dataclass
class NormalElementReport:
    ok: bool
    residuals: dict[str, WordPoly]
    endomorphism_ok: bool = True
    endomorphism_residuals: list[WordPoly] = field(default_factory=list)
    invertible_on_generators: bool | None = None

    def __bool__(self):
        return self.ok


def _as_wordpoly(sys: RewriteSystem, x) -> WordPoly:
    if isinstance(x, WordPoly):
        return x
    return parse_relation(sys.field, sys.alphabet, str(x))


def check_normal_element(sys: RewriteSystem, omega, tau: Mapping[str, object]) -> NormalElementReport:
    """``NF(tau(z) * omega) == NF(omega * z)`` for every generator ``z``.

    Also reports whether ``tau`` respects the relations and is invertible on
    the span of the generators (the machine-checkable part of being an
    automorphism).
    """
    omega = _as_wordpoly(sys, omega)
    tmap = {a: _as_wordpoly(sys, tau.get(a, a)) for a in sys.alphabet}
    res = {}
    for a in sys.alphabet:
        z = WordPoly.gen(sys.field, sys.alphabet, a)
        r = sys.normal_form(tmap[a] * omega - omega * z)
        res[a] = r
    endo = [sys.normal_form(rel.substitute(tmap)) for rel in sys.relations()]
    inv = _linear_invertible(sys, tmap)
    return NormalElementReport(
        ok=all(r.is_zero() for r in res.values()),
        residuals=res,
        endomorphism_ok=all(r.is_zero() for r in endo),
        endomorphism_residuals=endo,
        invertible_on_generators=inv,
    )


def _linear_invertible(sys: RewriteSystem, tmap: Mapping[str, WordPoly]) -> bool | None:
    gens = list(sys.alphabet)
    rows = []
    for a in gens:
        img = tmap[a]
        if img.degree() > 1 or not img.homogeneous_part(0).is_zero():
            return None
        rows.append([img.coeff(b) for b in gens])
    return linalg.rank(sys.field, rows) == len(gens)


@dataclass
class RelationCheck:
    ok: bool
    residuals: list[WordPoly]

    def __bool__(self):
        return self.ok


def check_substitution_iso(
    src_relations: Iterable,
    subst: Mapping[str, object],
    dst_sys: RewriteSystem,
    src_alphabet: str | None = None,
    assumptions: Sequence[Scalar] | None = None,
) -> RelationCheck:
    """Each source relation, pushed through ``subst``, reduces to 0 in ``dst_sys``.

    With ``assumptions`` given, every non-constant denominator occurring in
    the substitution must be certified nonzero.
    """
    F = dst_sys.field
    smap = {a: _as_wordpoly(dst_sys, v) for a, v in subst.items()}
    if assumptions is not None:
        for img in smap.values():
            for c in img.terms.values():
                d = Scalar._make(F, dict(c._d), {0: 1})
                if not d.is_constant() and not covered_by(d, assumptions):
                    raise AssumptionRequired(d)
    src_alphabet = src_alphabet or "".join(smap)
    rels = relations_from(F, src_alphabet, src_relations)
    residuals = [dst_sys.normal_form(r.substitute(smap, dst_sys.alphabet)) for r in rels]
    return RelationCheck(all(r.is_zero() for r in residuals), residuals)


def twisted_derivation(sigma: Mapping[str, WordPoly], dsig: Mapping[str, WordPoly], p: WordPoly) -> WordPoly:
    """Extend ``dsig`` to words by ``d(uv) = s(u) d(v) + d(u) v``."""
    F, alph = p.field, p.alphabet
    out = WordPoly.zero(F, alph)
    for w, c in p.terms.items():
        out = out + _dword(F, alph, sigma, dsig, w) * c
    return out


def _dword(F, alph, sigma, dsig, w: str) -> WordPoly:
    if not w:
        return WordPoly.zero(F, alph)
    head, tail = w[0], w[1:]
    rest = WordPoly.word(F, alph, tail)
    s_head = sigma[head]
    return s_head * _dword(F, alph, sigma, dsig, tail) + dsig[head] * rest


@dataclass
class OreReport:
    ok: bool
    sigma_residual: WordPoly
    derivation_residual: WordPoly

    def __bool__(self):
        return self.ok


def check_ore_data(
    q: Scalar,
    a: Scalar,
    b: Scalar,
    sigma: Mapping[str, object] | None = None,
    dsigma: Mapping[str, object] | None = None,
) -> OreReport:
    """Consistency of ``(sigma, dsigma)`` on ``B = F{y,z}/(yz - q^-1 zy)``.

    Defaults: ``sigma(z) = q^-2 z``, ``dsigma(z) = -q^-2 a y - q^-2 b``,
    ``sigma(y) = q^-1 y``, ``dsigma(y) = 0``.  Both ``sigma`` (as an
    endomorphism) and ``dsigma`` (by the twisted Leibniz rule) must send
    ``yz - q^-1 zy`` to zero in B.  Overrides are strings or WordPolys in y, z.
    """
    F = q.field
    alph = "yz"
    B = RewriteSystem.from_relations(F, alph, [WordPoly.word(F, alph, "yz") - WordPoly.word(F, alph, "zy", q.inverse())], order="yz")
    y = WordPoly.gen(F, alph, "y")
    z = WordPoly.gen(F, alph, "z")
    qi = q.inverse()
    s = {"z": z * qi * qi, "y": y * qi}
    d = {"z": y * (-qi * qi * a) + WordPoly.const(F, alph, -qi * qi * b), "y": WordPoly.zero(F, alph)}
    for src, dst in ((sigma, s), (dsigma, d)):
        if src:
            for k, v in src.items():
                dst[k] = v if isinstance(v, WordPoly) else parse_relation(F, alph, str(v))
    rel = WordPoly.word(F, alph, "yz") - WordPoly.word(F, alph, "zy", qi)
    s_res = B.normal_form(rel.substitute(s))
    d_res = B.normal_form(twisted_derivation(s, d, rel))
    return OreReport(s_res.is_zero() and d_res.is_zero(), s_res, d_res)


# -- conformal vectors and one-dimensional representations ---------------------------

def lebruyn_relations(a: Sequence[Scalar]) -> list[WordPoly]:
    """Defining relations of F(a) on generators x, y, z."""
    if len(a) != 7:
        raise PreconditionError("a conformal vector has seven entries")
    F = a[0].field
    alph = "xyz"
    W = lambda w, c=1: WordPoly.word(F, alph, w, c)
    a1, a2, a3, a4, a5, a6, a7 = a
    return [
        W("xy") - W("yx", a1) - W("y", a2),
        W("yz") - W("zy", a3) - W("xx", a4) - W("x", a5),
        W("zx") - W("xz", a6) - W("z", a7),
    ]


def conformal_vector_check(a: Sequence[Scalar]) -> bool:
    """Le Bruyn's criterion ``a6 == a1 and a7 == a2`` (needs a1 a2 a3 a5 a6 a7 != 0)."""
    if len(a) != 7:
        raise PreconditionError("a conformal vector has seven entries")
    a1, a2, a3, a4, a5, a6, a7 = a
    prod = a1 * a2 * a3 * a5 * a6 * a7
    if prod.is_zero():
        raise PreconditionError("the criterion needs a1*a2*a3*a5*a6*a7 != 0")
    return a6 == a1 and a7 == a2


@dataclass
class ScalarRepReport:
    ok: bool
    residuals: list[Scalar]

    def __bool__(self):
        return self.ok


def check_scalar_rep(sys_or_relations, assignment: Mapping[str, object], field: ParamField | None = None) -> ScalarRepReport:
    """Every defining relation vanishes with generators replaced by scalars."""
    if isinstance(sys_or_relations, RewriteSystem):
        rels = sys_or_relations.relations()
        F = sys_or_relations.field
    else:
        rels = list(sys_or_relations)
        F = field or rels[0].field
    vals = {k: F.scalar(v) for k, v in assignment.items()}
    residuals = [r.evaluate(vals) for r in rels]
    return ScalarRepReport(all(r.is_zero() for r in residuals), residuals)


# -- colour commutators ------------------------------------------------------------

def color_sign(da: Sequence[int], db: Sequence[int]) -> int:
    return -1 if sum(x * y for x, y in zip(da, db)) % 2 else 1


def color_commutators(field: ParamField, alphabet: str, grading: Mapping[str, Sequence[int]]) -> list[WordPoly]:
    out = []
    for i, a in enumerate(alphabet):
        for b in alphabet[i + 1 :]:
            s = color_sign(grading[a], grading[b])
            out.append(WordPoly.word(field, alphabet, a + b) - WordPoly.word(field, alphabet, b + a, s))
    return out


def same_span(field: ParamField, alphabet: str, first: Sequence[WordPoly], second: Sequence[WordPoly]) -> bool:
    words = sorted({w for p in list(first) + list(second) for w in p.terms})
    vec = lambda p: [p.coeff(w) for w in words]
    A = [vec(p) for p in first]
    B = [vec(p) for p in second]
    return all(linalg.in_span(field, A, v) for v in B) and all(linalg.in_span(field, B, v) for v in A)


def check_color_relations(relations: Iterable, grading: Mapping[str, Sequence[int]], field: ParamField | None = None, alphabet: str | None = None) -> bool:
    """The relations span exactly the coloured commutators ``AB - (-1)^(degA,degB) BA``."""
    rels = list(relations)
    if rels and isinstance(rels[0], WordPoly):
        field = field or rels[0].field
        alphabet = alphabet or rels[0].alphabet
    if field is None or alphabet is None:
        raise PreconditionError("field and alphabet are needed for string relations")
    rels = relations_from(field, alphabet, rels)
    missing = [a for a in alphabet if a not in grading]
    if missing:
        raise PreconditionError(f"no degree for generator {missing[0]!r}")
    return same_span(field, alphabet, rels, color_commutators(field, alphabet, grading))
