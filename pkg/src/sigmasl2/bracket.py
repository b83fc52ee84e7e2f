"""The cyclic module A*dsigma, its twisted bracket and operator semantics.

An element ``a*dsigma`` acts on A by ``c -> a * dsigma(c)``.  The bracket is

    <a*dsigma, b*dsigma> = (sigma(a) dsigma(b) - sigma(b) dsigma(a)) * dsigma
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .base import BaseElement
from .errors import DomainMismatch, PreconditionError
from .scalar import Scalar
from .sigma import WHOLE_RING, TwistData, annihilator_basis, apply_dsigma, apply_sigma, in_annihilator_span


class SpanElement:
    """``coeff * dsigma``; equality is taken modulo the annihilator."""

    __slots__ = ("coeff", "twist")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, coeff: BaseElement, twist: TwistData):
        self.coeff = twist.ring.coerce(coeff)
        self.twist = twist

    def _same(self, other: "SpanElement"):
        if not self.twist.same_as(other.twist):
            raise DomainMismatch("span elements over different twists")

    def __add__(self, other):
        self._same(other)
        return SpanElement(self.coeff + other.coeff, self.twist)

    def __sub__(self, other):
        self._same(other)
        return SpanElement(self.coeff - other.coeff, self.twist)

    def __neg__(self):
        return SpanElement(-self.coeff, self.twist)

    def __mul__(self, s):
        # scalars and ring elements act on the left factor
        if isinstance(s, SpanElement):
            return NotImplemented
        return SpanElement(self.coeff * s, self.twist)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.coeff.is_zero() or in_annihilator_span(self.twist, self.coeff)

    def __eq__(self, other):
        if not isinstance(other, SpanElement):
            return NotImplemented
        self._same(other)
        return (self - other).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __call__(self, a: BaseElement) -> BaseElement:
        return operator_apply(self, a)

    def __repr__(self):
        return f"SpanElement(({self.coeff})*dsigma)"


def span(tw: TwistData, a) -> SpanElement:
    return SpanElement(tw.ring.coerce(a), tw)


def bracket_coeff(tw: TwistData, a: BaseElement, b: BaseElement) -> BaseElement:
    return apply_sigma(tw, a) * apply_dsigma(tw, b) - apply_sigma(tw, b) * apply_dsigma(tw, a)


def bracket(x: SpanElement, y: SpanElement) -> SpanElement:
    x._same(y)
    return SpanElement(bracket_coeff(x.twist, x.coeff, y.coeff), x.twist)


def operator_apply(x: SpanElement, a: BaseElement) -> BaseElement:
    return x.coeff * apply_dsigma(x.twist, a)


def _test_exponents(tw: TwistData, degree_bound: int) -> range:
    return range(tw.ring.trunc) if tw.ring.trunc is not None else range(degree_bound + 1)


def verify_bracket_is_commutator(
    tw: TwistData,
    a: BaseElement,
    b: BaseElement,
    degree_bound: int = 6,
    bracket_fn: Callable[[SpanElement, SpanElement], SpanElement] | None = None,
) -> bool:
    """Compare the twisted commutator of operators with the bracket on t^k.

    ``bracket_fn`` replaces the bracket under test (mutation tests use it).
    """
    br = bracket_fn or bracket
    a = tw.ring.coerce(a)
    b = tw.ring.coerce(b)
    sa, sb = apply_sigma(tw, a), apply_sigma(tw, b)
    coeff = br(SpanElement(a, tw), SpanElement(b, tw)).coeff
    for k in _test_exponents(tw, degree_bound):
        c = tw.ring.monomial(k)
        dc = apply_dsigma(tw, c)
        lhs = sa * apply_dsigma(tw, b * dc) - sb * apply_dsigma(tw, a * dc)
        if lhs != coeff * dc:
            return False
    return True


def second_order_part(tw: TwistData, a: BaseElement, b: BaseElement, degree_bound: int = 6) -> list[BaseElement]:
    """Residuals of ``sigma(a)sigma(b) - sigma(b)sigma(a)`` acting via dsigma^2.

    The twisted commutator expands into a first-order part (the bracket) and
    a second-order part whose operator coefficient is this commutator of
    commuting elements; every entry returned must be zero.
    """
    sa, sb = apply_sigma(tw, a), apply_sigma(tw, b)
    out = []
    for k in _test_exponents(tw, degree_bound):
        dd = apply_dsigma(tw, apply_dsigma(tw, tw.ring.monomial(k)))
        out.append((sa * sb - sb * sa) * dd)
    return out


@dataclass
class JacobiResult:
    ok: bool
    checked: int
    failures: list[tuple[tuple[BaseElement, BaseElement, BaseElement], BaseElement]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def jacobi_residual(tw: TwistData, delta: BaseElement, a, b, c) -> BaseElement:
    """Coefficient of the cyclic six-term sum for one triple."""
    total = tw.ring.zero()
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        inner = bracket_coeff(tw, y, z)
        total = total + bracket_coeff(tw, apply_sigma(tw, x), inner) + delta * bracket_coeff(tw, x, inner)
    return total


def default_triples(tw: TwistData, bound: int = 4) -> list[tuple[BaseElement, BaseElement, BaseElement]]:
    """All monomial triples: exponents <= bound on K[t], the basis when truncated."""
    top = tw.ring.trunc if tw.ring.trunc is not None else bound + 1
    mons = [tw.ring.monomial(k) for k in range(top)]
    return list(itertools.product(mons, repeat=3))


def check_twisted_jacobi(
    tw: TwistData,
    delta: BaseElement,
    triples: Iterable[Sequence[BaseElement]] | None = None,
    bound: int = 4,
) -> JacobiResult:
    delta = tw.ring.coerce(delta)
    if triples is None:
        triples = default_triples(tw, bound)
    ann = annihilator_basis(tw)
    failures = []
    n = 0
    for a, b, c in triples:
        n += 1
        r = jacobi_residual(tw, delta, a, b, c)
        if r.is_zero() or ann is WHOLE_RING:
            continue
        if ann and in_annihilator_span(tw, r, ann):
            continue
        failures.append(((a, b, c), r))
    return JacobiResult(not failures, n, failures)


class OperatorMatrix:
    """Square matrix over K; column j holds the image of t^j."""

    __slots__ = ("field", "entries")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, field, entries: Sequence[Sequence[Scalar]]):
        self.field = field
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, field, n: int) -> "OperatorMatrix":
        return cls(field, [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, n: int) -> "OperatorMatrix":
        return cls(field, [[field.zero()] * n for _ in range(n)])

    def _zip(self, other, op):
        return OperatorMatrix(self.field, [[op(x, y) for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __add__(self, other):
        if isinstance(other, OperatorMatrix):
            return self._zip(other, lambda x, y: x + y)
        return self + OperatorMatrix.identity(self.field, self.size) * other

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, OperatorMatrix):
            return self._zip(other, lambda x, y: x - y)
        return self - OperatorMatrix.identity(self.field, self.size) * other

    def __neg__(self):
        return OperatorMatrix(self.field, [[-x for x in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, OperatorMatrix):
            n = self.size
            cols = list(zip(*other.entries))
            out = []
            for r in self.entries:
                row = []
                for c in cols:
                    acc = self.field.zero()
                    for x, y in zip(r, c):
                        if x and y:
                            acc = acc + x * y
                    row.append(acc)
                out.append(row)
            return OperatorMatrix(self.field, out)
        s = self.field.scalar(other)
        return OperatorMatrix(self.field, [[x * s for x in r] for r in self.entries])

    def __rmul__(self, other):
        s = self.field.scalar(other)
        return OperatorMatrix(self.field, [[s * x for x in r] for r in self.entries])

    def __pow__(self, n: int):
        out = OperatorMatrix.identity(self.field, self.size)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.size == other.size and (self - other).is_zero()

    def specialize(self, bindings) -> "OperatorMatrix":
        return OperatorMatrix(self.field, [[x.specialize(bindings) for x in r] for r in self.entries])

    def rows_str(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.rows_str()) + "]"

    def __repr__(self):
        return f"OperatorMatrix({self})"


def matrix_rep(x: SpanElement) -> OperatorMatrix:
    tw = x.twist
    N = tw.ring.trunc
    if N is None:
        raise PreconditionError("matrix representations need a truncated ring")
    cols = [operator_apply(x, tw.ring.monomial(j)) for j in range(N)]
    return OperatorMatrix(tw.field, [[cols[j].coeff(i) for j in range(N)] for i in range(N)])
