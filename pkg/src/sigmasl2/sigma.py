"""Endomorphisms and sigma-derivations of K[t] and K[t]/(t^N).

A twist is fixed by the images of ``t``: ``sigma(t)`` and ``dsigma(t)``.
``sigma`` is extended as an algebra map (``sigma(1) = 1``) and ``dsigma`` by
the twisted Leibniz rule (``dsigma(1) = 0``)::

    dsigma(t^(k+1)) = dsigma(t) * t^k + sigma(t) * dsigma(t^k)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg
from .base import BaseElement, BaseRing
from .errors import AssumptionRequired, ConfigError, DomainMismatch, InconsistentSystem
from .scalar import ParamField, Scalar, covered_by


class _WholeRing:
    """Marker for an annihilator (or solution set) equal to all of A."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "WHOLE_RING"

    def __iter__(self):
        raise TypeError("WHOLE_RING has no finite basis")


WHOLE_RING = _WholeRing()


class TwistData:
    """The pair ``(sigma, dsigma)`` on a base ring, given on ``t``."""

    def __init__(self, ring: BaseRing, sigma_t, dsigma_t):
        self.ring = ring
        self.sigma_t = ring.coerce(sigma_t)
        self.dsigma_t = ring.coerce(dsigma_t)
        self._sigma_pows = [ring.one()]
        self._ds_pows = [ring.zero()]

    @property
    def field(self) -> ParamField:
        return self.ring.field

    def __repr__(self):
        return f"TwistData({self.ring!r}, sigma(t)={self.sigma_t}, dsigma(t)={self.dsigma_t})"

    def same_as(self, other: "TwistData") -> bool:
        return (
            self is other
            or (self.ring == other.ring and self.sigma_t == other.sigma_t and self.dsigma_t == other.dsigma_t)
        )

    def specialize(self, bindings: Mapping[str, object], field: ParamField | None = None) -> "TwistData":
        """Substitute parameters, optionally moving to a larger field first.

        With ``field`` given, coefficients are re-embedded before the
        bindings (which may then mention names of the new field) apply.
        """
        ring = self.ring if field is None else BaseRing(field, self.ring.trunc, self.ring.var_name)

        def move(x):
            cs = x.coeffs if field is None else [c.to_field(field) for c in x.coeffs]
            return BaseElement(ring, [c.specialize(bindings) for c in cs])

        return TwistData(ring, move(self.sigma_t), move(self.dsigma_t))

    # -- cached images of monomials ---------------------------------------
    def sigma_power(self, k: int) -> BaseElement:
        """``sigma(t^k) = sigma(t)^k``."""
        pows = self._sigma_pows
        while len(pows) <= k:
            pows.append(pows[-1] * self.sigma_t)
        return pows[k]

    def dsigma_power(self, k: int) -> BaseElement:
        """``dsigma(t^k)`` via the twisted Leibniz recursion."""
        pows = self._ds_pows
        while len(pows) <= k:
            j = len(pows) - 1
            pows.append(self.dsigma_t * self.ring.monomial(j) + self.sigma_t * pows[j])
        return pows[k]


def _check_ring(tw: TwistData, a: BaseElement):
    if a.ring != tw.ring:
        raise DomainMismatch(f"element of {a.ring!r} used with twist over {tw.ring!r}")


def apply_sigma(tw: TwistData, a: BaseElement) -> BaseElement:
    _check_ring(tw, a)
    out = tw.ring.zero()
    for k, c in enumerate(a.coeffs):
        if not c.is_zero():
            out = out + tw.sigma_power(k) * c
    return out


def apply_dsigma(tw: TwistData, a: BaseElement) -> BaseElement:
    _check_ring(tw, a)
    out = tw.ring.zero()
    for k, c in enumerate(a.coeffs):
        if k and not c.is_zero():
            out = out + tw.dsigma_power(k) * c
    return out


def dsigma_closed_form(tw: TwistData, k: int, ring: BaseRing | None = None) -> BaseElement:
    """``(sum_{j<k} sigma(t)^j t^(k-1-j)) * dsigma(t)`` computed in ``ring``.

    With ``ring`` the untruncated K[t] this keeps every coefficient, which is
    what the well-definedness bookkeeping needs.
    """
    ring = ring or tw.ring
    s = BaseElement(ring, tw.sigma_t.coeffs)
    p = BaseElement(ring, tw.dsigma_t.coeffs)
    total = ring.zero()
    sj = ring.one()
    for j in range(k):
        total = total + sj * ring.monomial(k - 1 - j)
        sj = sj * s
    return total * p


@dataclass
class WellDefinedReport:
    sigma_ok: bool
    dsigma_ok: bool
    constraints: list[Scalar]
    sigma_residual: list[Scalar] = field(default_factory=list)
    dsigma_residual: list[Scalar] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sigma_ok and self.dsigma_ok

    def __getitem__(self, key):
        return getattr(self, key)


def check_well_defined(tw: TwistData) -> WellDefinedReport:
    """Do ``sigma`` and ``dsigma`` respect ``t^N = 0``?

    Both ``sigma(t)^N`` and ``dsigma(t^N)`` are expanded in the untruncated
    polynomial ring; their coefficients below ``t^N`` are the residuals that
    must vanish.
    """
    N = tw.ring.trunc
    if N is None:
        return WellDefinedReport(True, True, [])
    full = BaseRing(tw.field, None, tw.ring.var_name)
    s = BaseElement(full, tw.sigma_t.coeffs)
    sN = s**N
    s_res = [sN.coeff(i) for i in range(N)]
    d = dsigma_closed_form(tw, N, full)
    d_res = [d.coeff(i) for i in range(N)]
    constraints = [c for c in s_res + d_res if not c.is_zero()]
    return WellDefinedReport(
        sigma_ok=all(c.is_zero() for c in s_res),
        dsigma_ok=all(c.is_zero() for c in d_res),
        constraints=constraints,
        sigma_residual=s_res,
        dsigma_residual=d_res,
    )


@dataclass
class AnnihilatorResult:
    basis: object  # list[BaseElement] or WHOLE_RING
    assumed_nonzero: list[Scalar] = field(default_factory=list)


def annihilator(tw: TwistData) -> AnnihilatorResult:
    """``{a : a * dsigma(t^k) = 0 for all k}`` with generic pivots recorded."""
    ring = tw.ring
    if tw.dsigma_t.is_zero():
        return AnnihilatorResult(WHOLE_RING)
    if ring.trunc is None:
        return AnnihilatorResult([])
    N = ring.trunc
    rows = []
    for k in range(1, N):
        img = tw.dsigma_power(k)
        # coefficient of t^i in a * img, as a row over a_0..a_{N-1}
        for i in range(N):
            rows.append([img.coeff(i - j) if i >= j else tw.field.zero() for j in range(N)])
    sol = linalg.nullspace(tw.field, rows)
    basis = [BaseElement(ring, v) for v in sol.nullspace]
    return AnnihilatorResult(basis, _dedupe(sol.pivots))


def annihilator_basis(tw: TwistData):
    return annihilator(tw).basis


def in_annihilator_span(tw: TwistData, a: BaseElement, basis=None) -> bool:
    basis = annihilator_basis(tw) if basis is None else basis
    if basis is WHOLE_RING:
        return True
    if a.is_zero():
        return True
    if tw.ring.trunc is None:
        return False
    N = tw.ring.trunc
    vecs = [[b.coeff(i) for i in range(N)] for b in basis]
    return linalg.in_span(tw.field, vecs, [a.coeff(i) for i in range(N)])


def check_condition3(tw: TwistData) -> bool:
    """``sigma(Ann(dsigma))`` is contained in ``Ann(dsigma)``."""
    basis = annihilator_basis(tw)
    if basis is WHOLE_RING or not basis:
        return True
    return all(in_annihilator_span(tw, apply_sigma(tw, b), basis) for b in basis)


@dataclass
class DeltaSolution:
    particular: BaseElement
    free_directions: list[BaseElement]
    assumed_nonzero: list[Scalar]
    whole_ring: bool = False
    verified_up_to: int = 0

    def general(self, coeffs: Sequence) -> BaseElement:
        out = self.particular
        for c, d in zip(coeffs, self.free_directions):
            out = out + d * c
        return out


def delta_residual(tw: TwistData, delta: BaseElement, a: BaseElement) -> BaseElement:
    """``dsigma(sigma(a)) - delta * sigma(dsigma(a))``."""
    return apply_dsigma(tw, apply_sigma(tw, a)) - delta * apply_sigma(tw, apply_dsigma(tw, a))


def _domain_divide(tw, L, C, assumptions):
    """Exact quotient ``L / C`` in K[t] with the leading coefficient gated."""
    if L.is_zero():
        return tw.ring.zero(), []
    lc = C.coeffs[-1]
    used = []
    if not (lc.is_constant() or covered_by(lc, assumptions)):
        raise AssumptionRequired(lc)
    if not lc.is_constant():
        used.append(lc)
    inv = lc.inverse()
    rem = list(L.coeffs)
    dc = len(C.coeffs) - 1
    quot = [tw.field.zero()] * max(len(rem) - dc, 0)
    for i in range(len(rem) - 1, dc - 1, -1):
        c = rem[i] * inv
        if c.is_zero():
            continue
        quot[i - dc] = c
        for j, cj in enumerate(C.coeffs):
            rem[i - dc + j] = rem[i - dc + j] - c * cj
    residual = BaseElement(tw.ring, rem)
    if not residual.is_zero():
        raise InconsistentSystem(f"no delta exists: remainder {residual}", residual=residual)
    return BaseElement(tw.ring, quot), used


def solve_delta(tw: TwistData, assumptions: Sequence[Scalar] = (), degree_bound: int = 6) -> DeltaSolution:
    """Solve ``dsigma(sigma(a)) = delta * sigma(dsigma(a))`` for ``delta``.

    The equation is imposed at ``a = t`` and the result is then verified on
    ``t^k`` for ``k <= degree_bound`` (K[t]) or ``k < N`` (truncated).
    A pivot not certified nonzero by ``assumptions`` raises
    :class:`AssumptionRequired`; a contradiction raises
    :class:`InconsistentSystem`.
    """
    assumptions = [tw.field.scalar(a) for a in assumptions]
    ring = tw.ring
    t = ring.t()
    L = apply_dsigma(tw, apply_sigma(tw, t))
    C = apply_sigma(tw, apply_dsigma(tw, t))
    N = ring.trunc
    if N is None:
        if C.is_zero():
            if not L.is_zero():
                raise InconsistentSystem(f"sigma(dsigma(t)) = 0 but dsigma(sigma(t)) = {L}", residual=L)
            sol = DeltaSolution(ring.zero(), [ring.monomial(k) for k in range(degree_bound + 1)], [], True)
        else:
            part, used = _domain_divide(tw, L, C, assumptions)
            sol = DeltaSolution(part, [], used)
        top = degree_bound
    else:
        rows = [[(ring.monomial(j) * C).coeff(i) for j in range(N)] for i in range(N)]
        rhs = [L.coeff(i) for i in range(N)]
        ls = linalg.solve(tw.field, rows, rhs, assumptions)
        part = BaseElement(ring, ls.particular)
        free = [BaseElement(ring, v) for v in ls.nullspace]
        used = [p for p in ls.pivots if not p.is_constant()]
        sol = DeltaSolution(part, free, _dedupe(used), whole_ring=len(free) == N)
        top = N - 1
    _verify(tw, sol, top)
    sol.verified_up_to = top
    return sol


def _dedupe(xs):
    out = []
    for x in xs:
        if not any(x == y for y in out):
            out.append(x)
    return out


def _verify(tw: TwistData, sol: DeltaSolution, top: int):
    ring = tw.ring
    for k in range(1, top + 1):
        a = ring.monomial(k)
        r = delta_residual(tw, sol.particular, a)
        if not r.is_zero():
            raise InconsistentSystem(f"delta fails on t^{k}: residual {r}", residual=r)
        img = apply_sigma(tw, apply_dsigma(tw, a))
        for d in sol.free_directions:
            h = d * img
            if not h.is_zero():
                raise InconsistentSystem(f"free direction {d} fails on t^{k}: residual {h}", residual=h)


# -- configuration records ------------------------------------------------------

def ring_from_spec(field: ParamField, spec) -> BaseRing:
    """``{"kind": "polynomial"}`` or ``{"kind": "truncated", "N": 3}``."""
    if spec is None:
        return BaseRing(field)
    if not isinstance(spec, Mapping):
        raise ConfigError("ring must be a record with a 'kind' field")
    kind = spec.get("kind", "polynomial")
    if kind == "polynomial":
        return BaseRing(field)
    if kind == "truncated":
        N = spec.get("N")
        if not isinstance(N, int) or N < 2:
            raise ConfigError("truncated ring needs an integer N >= 2")
        return BaseRing(field, N)
    raise ConfigError(f"unknown ring kind {kind!r}")


def twist_from_record(field: ParamField, record: Mapping) -> tuple[TwistData, list[Scalar]]:
    try:
        s_txt = record["sigma_t"]
        d_txt = record["dsigma_t"]
    except KeyError as exc:
        raise ConfigError(f"twist record is missing {exc.args[0]!r}") from None
    ring = ring_from_spec(field, record.get("ring"))
    tw = TwistData(ring, ring.parse(str(s_txt)), ring.parse(str(d_txt)))
    assumptions = [field.parse(str(a)) for a in record.get("assume_nonzero", [])]
    return tw, assumptions
