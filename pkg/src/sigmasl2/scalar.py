"""Exact coefficient field: fractions of parameter polynomials over Q.

A :class:`ParamField` declares the formal parameters (``p0``, ``q1``, ``q``,
...) and at most one algebraic root symbol with a monic minimal polynomial.
Elements are :class:`Scalar` values ``num/den`` whose numerator and
denominator are sparse polynomials with the root symbol eagerly reduced.

Equality is decided by cross-multiplication, so no multivariate gcd is ever
needed.  Canonicalization is deliberately cheap: monomial content is removed,
exact divisions are taken when they happen to succeed, and the denominator
is made monic.

>>> F = ParamField(["q"])
>>> q = F.var("q")
>>> (q + 1) / 2 + (q - 1) / 2 == q
True
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _kernels as K
from . import parsing
from .errors import DomainMismatch, ParseError, PreconditionError, SigmaError, ZeroDenominator

BITS = 16
_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_SLOT_MASK = (1 << BITS) - 1
_ONE = {0: 1}


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def cyclotomic_coefficients(n: int) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _divide_int_poly(poly, cyclotomic_coefficients(d))
    return poly


def _divide_int_poly(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact division")
    return out


class RootSpec:
    """An algebraic symbol ``name`` with monic minimal polynomial.

    ``min_poly`` is a coefficient list (low degree first) or a string in the
    root symbol, e.g. ``RootSpec("w", "w^2 + w + 1")``.  Irreducibility over
    Q is not verified; it is the caller's obligation (:meth:`cyclotomic`
    always supplies an irreducible one).
    """

    __slots__ = ("name", "coeffs")

    def __init__(self, name: str, min_poly):
        if isinstance(min_poly, str):
            coeffs = _parse_univariate(min_poly, name)
        else:
            coeffs = [_norm(Fraction(c)) for c in min_poly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise PreconditionError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise PreconditionError("minimal polynomial must be monic")
        self.name = name
        self.coeffs = tuple(coeffs)

    @classmethod
    def cyclotomic(cls, n: int, name: str = "w") -> "RootSpec":
        """Primitive n-th root of unity."""
        return cls(name, cyclotomic_coefficients(n))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _key(self):
        return (self.name, self.coeffs)

    def __eq__(self, other):
        return isinstance(other, RootSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def min_poly_str(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c:
                mono = "" if i == 0 else self.name if i == 1 else f"{self.name}^{i}"
                parts.append((c, mono))
        return _join_terms(parts)

    def __repr__(self):
        return f"RootSpec({self.name!r}, {self.min_poly_str()!r})"


def _parse_univariate(text: str, name: str) -> list:
    node = parsing.parse(text)
    unknown = parsing.names_in(node) - {name}
    if unknown:
        bad = sorted(unknown)[0]
        raise ParseError(f"unknown symbol {bad!r} in minimal polynomial", text, text.find(bad))

    class _U:
        def __init__(self, c):
            self.c = c

        def __add__(self, o):
            n = max(len(self.c), len(o.c))
            return _U([(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0) for i in range(n)])

        def __neg__(self):
            return _U([-x for x in self.c])

        def __sub__(self, o):
            return self + (-o)

        def __mul__(self, o):
            out = [0] * (len(self.c) + len(o.c) - 1)
            for i, a in enumerate(self.c):
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
            return _U(out)

        def __truediv__(self, o):
            if len(o.c) != 1 or not o.c[0]:
                raise TypeError
            return _U([Fraction(x) / o.c[0] for x in self.c])

        def __pow__(self, n):
            if n < 0:
                raise PreconditionError("negative power in minimal polynomial")
            r = _U([1])
            for _ in range(n):
                r = r * self
            return r

    val = parsing.evaluate(node, lambda nm, pos: _U([0, 1]), lambda n: _U([n]), text)
    return [_norm(Fraction(c)) for c in val.c]


class ParamField:
    """Declaration of the coefficient field.

    Instances are interned, so two declarations with the same parameter
    names and root compare (and are) identical.
    """

    _interned: dict = {}

    def __new__(cls, params: Sequence[str] = (), root: RootSpec | None = None):
        params = tuple(params)
        key = (params, root)
        hit = cls._interned.get(key)
        if hit is not None:
            return hit
        if len(set(params)) != len(params):
            raise PreconditionError("duplicate parameter names")
        for p in params:
            if not _NAME.fullmatch(p):
                raise PreconditionError(f"invalid parameter name {p!r}")
        if root is not None and root.name in params:
            raise PreconditionError("root symbol clashes with a parameter")
        self = super().__new__(cls)
        self.params = params
        self.root = root
        self.names = params + ((root.name,) if root else ())
        self.nvars = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.guard = sum(1 << (i * BITS + BITS - 1) for i in range(self.nvars))
        if root is not None:
            self._root_shift = len(params) * BITS
            self._root_tail = tuple((i, -c) for i, c in enumerate(root.coeffs[:-1]) if c)
        cls._interned[key] = self
        return self

    def __reduce__(self):
        return (ParamField, (self.params, self.root))

    def __repr__(self):
        if self.root is None:
            return f"ParamField({list(self.params)!r})"
        return f"ParamField({list(self.params)!r}, root={self.root!r})"

    # -- construction ----------------------------------------------------
    def zero(self) -> "Scalar":
        return Scalar._raw(self, {}, _ONE)

    def one(self) -> "Scalar":
        return Scalar._raw(self, {0: 1}, _ONE)

    def const(self, c) -> "Scalar":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return Scalar._raw(self, {0: c} if c else {}, _ONE)

    def var(self, name: str) -> "Scalar":
        try:
            i = self.index[name]
        except KeyError:
            raise DomainMismatch(f"{name!r} is not declared in {self!r}") from None
        terms = {1 << (i * BITS): 1}
        if self.root is not None and i == self.nvars - 1 and self.root.degree == 1:
            terms = self._reduce(terms)
        return Scalar._raw(self, terms, _ONE)

    def gens(self) -> tuple["Scalar", ...]:
        return tuple(self.var(n) for n in self.names)

    @property
    def root_symbol(self) -> "Scalar | None":
        return self.var(self.root.name) if self.root else None

    def scalar(self, x) -> "Scalar":
        """Coerce an int, Fraction, string or Scalar into this field."""
        if isinstance(x, Scalar):
            if x.field is not self:
                raise DomainMismatch(f"scalar over {x.field!r} used in {self!r}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a scalar")

    def parse(self, text: str, extra: Mapping[str, "Scalar"] | None = None) -> "Scalar":
        node = parsing.parse(text)

        def resolve(name, pos):
            if extra and name in extra:
                return extra[name]
            if name not in self.index:
                raise ParseError(f"undeclared parameter {name!r}", text, pos)
            return self.var(name)

        try:
            return parsing.evaluate(node, resolve, self.const, text)
        except ZeroDivisionError as exc:
            raise ZeroDenominator(f"division by zero in {text!r}") from exc

    def extend(self, params: Iterable[str]) -> "ParamField":
        new = tuple(p for p in params if p not in self.names)
        return ParamField(self.params + new, self.root)

    # -- polynomial plumbing ---------------------------------------------
    def _reduce(self, terms: dict) -> dict:
        if self.root is None or not terms:
            return terms
        return K.reduce_root(terms, self._root_shift, _SLOT_MASK, self.root.degree, self._root_tail)

    def _mul(self, a: dict, b: dict) -> dict:
        if not a or not b:
            return {}
        if len(b) == 1 and 0 in b:
            return K.scale_terms(a, b[0])
        if len(a) == 1 and 0 in a:
            return K.scale_terms(b, a[0])
        try:
            out = K.mul_terms(a, b, self.guard)
        except K.ExponentOverflow:
            raise OverflowError(f"exponent exceeds {2 ** (BITS - 1) - 1}") from None
        return self._reduce(out) if self.root is not None else out

    def exponents(self, key: int) -> tuple[int, ...]:
        return tuple((key >> (i * BITS)) & _SLOT_MASK for i in range(self.nvars))

    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        for i, e in enumerate(exps):
            if not 0 <= e < 1 << (BITS - 1):
                raise OverflowError("exponent out of range")
            key |= e << (i * BITS)
        return key

    def _root_only(self, terms: dict) -> bool:
        """True iff ``terms`` involve no parameter (only the root symbol)."""
        if self.root is None:
            return all(k == 0 for k in terms)
        low = (1 << self._root_shift) - 1
        return all(not (k & low) for k in terms)


class ParamPoly:
    """Read-only view of a polynomial over a :class:`ParamField`."""

    __slots__ = ("field", "terms")

    def __init__(self, field: ParamField, terms: dict):
        self.field = field
        self.terms = terms

    def __eq__(self, other):
        return isinstance(other, ParamPoly) and self.field is other.field and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.field), frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def monomials(self):
        """``[(exponent tuple, coefficient)]`` in printing order."""
        return [(self.field.exponents(k), c) for k, c in _ordered(self.field, self.terms)]

    def total_degree(self) -> int:
        return max((sum(self.field.exponents(k)) for k in self.terms), default=-1)

    def __str__(self):
        return _poly_str(self.field, self.terms)

    def __repr__(self):
        return f"ParamPoly({self})"


def _ordered(field: ParamField, terms: dict):
    def key(item):
        ex = field.exponents(item[0])
        return (sum(ex), tuple(ex))

    return sorted(terms.items(), key=key, reverse=True)


def _fmt_coeff(c) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _join_terms(parts: list[tuple[object, str]]) -> str:
    out = []
    for i, (c, mono) in enumerate(parts):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def _mono_str(field: ParamField, key: int) -> str:
    pieces = []
    for name, e in zip(field.names, field.exponents(key)):
        if e == 1:
            pieces.append(name)
        elif e:
            pieces.append(f"{name}^{e}")
    return "*".join(pieces)


def _poly_str(field: ParamField, terms: dict) -> str:
    return _join_terms([(c, _mono_str(field, k)) for k, c in _ordered(field, terms)])


def _content_denominator(terms: dict) -> int:
    from math import lcm

    d = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            d = lcm(d, c.denominator)
    return d


def _is_one(terms: dict) -> bool:
    return len(terms) == 1 and terms.get(0) == 1


class Scalar:
    """An element ``num/den`` of the parametric field.

    Scalars are immutable and unhashable (no canonical form exists without
    gcds).  Arithmetic with ``int`` and ``Fraction`` operands is supported.
    """

    __slots__ = ("field", "_n", "_d")
    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def _raw(cls, field, n, d):
        s = object.__new__(cls)
        s.field = field
        s._n = n
        s._d = d
        return s

    @classmethod
    def _make(cls, field: ParamField, n: dict, d: dict) -> "Scalar":
        if not d:
            raise ZeroDenominator("zero denominator")
        if not n:
            return cls._raw(field, {}, _ONE)
        if _is_one(d):
            return cls._raw(field, n, _ONE)
        # monomial content
        if 0 not in n and 0 not in d:
            m = K.min_exponents((n, d), field.nvars, BITS)
            if m:
                n = K.unshift_terms(n, m)
                d = K.unshift_terms(d, m)
        if len(d) == 1 and 0 in d:
            return cls._raw(field, K.scale_terms(n, Fraction(1) / d[0]) if d[0] != 1 else n, _ONE)
        q = K.exact_div(n, d, field.guard)
        if q is not None:
            return cls._raw(field, {k: _norm(c) for k, c in q.items()}, _ONE)
        if len(n) > 1:
            q = K.exact_div(d, n, field.guard)
            if q is not None:
                n, d = {0: 1}, q
        lc = d[max(d)]
        if lc != 1:
            inv = Fraction(1) / lc
            n = {k: _norm(c * inv) for k, c in n.items()}
            d = {k: _norm(c * inv) for k, c in d.items()}
        return cls._raw(field, n, d)

    # -- views --------------------------------------------------------------
    @property
    def num(self) -> ParamPoly:
        return ParamPoly(self.field, self._n)

    @property
    def den(self) -> ParamPoly:
        return ParamPoly(self.field, self._d)

    def is_zero(self) -> bool:
        return not self._n

    def __bool__(self):
        return bool(self._n)

    def is_constant(self) -> bool:
        """True iff the value is a rational number."""
        return _is_one(self._d) and all(k == 0 for k in self._n)

    def is_polynomial(self) -> bool:
        return _is_one(self._d)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PreconditionError(f"{self} is not a rational constant")
        return Fraction(self._n.get(0, 0))

    def free_of_parameters(self) -> bool:
        """No formal parameter occurs (root symbol allowed)."""
        f = self.field
        return f._root_only(self._n) and f._root_only(self._d)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise DomainMismatch(f"scalars over {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, int):
            return Scalar._raw(self.field, {0: other} if other else {}, _ONE)
        if isinstance(other, Fraction):
            other = _norm(other)
            return Scalar._raw(self.field, {0: other} if other else {}, _ONE)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._addsub(self, -1)

    def _addsub(self, o: "Scalar", sign: int) -> "Scalar":
        f = self.field
        if not o._n:
            return self
        if not self._n:
            return o if sign == 1 else -o
        d1, d2 = self._d, o._d
        if d1 is d2 or d1 == d2:
            return Scalar._make(f, K.add_terms(self._n, o._n, sign), d1)
        if _is_one(d2):
            return Scalar._make(f, K.add_terms(self._n, f._mul(o._n, d1), sign), d1)
        if _is_one(d1):
            return Scalar._make(f, K.add_terms(f._mul(self._n, d2), o._n, sign), d2)
        q = K.exact_div(d1, d2, f.guard)
        if q is not None:
            return Scalar._make(f, K.add_terms(self._n, f._mul(o._n, q), sign), d1)
        q = K.exact_div(d2, d1, f.guard)
        if q is not None:
            return Scalar._make(f, K.add_terms(f._mul(self._n, q), o._n, sign), d2)
        n = K.add_terms(f._mul(self._n, d2), f._mul(o._n, d1), sign)
        return Scalar._make(f, n, f._mul(d1, d2))

    def __neg__(self):
        return Scalar._raw(self.field, {k: -c for k, c in self._n.items()}, self._d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if not self._n or not o._n:
            return f.zero()
        n1, d1, n2, d2 = self._n, self._d, o._n, o._d
        if not _is_one(d2) and len(n1) > 1:
            q = K.exact_div(n1, d2, f.guard)
            if q is not None:
                n1, d2 = q, _ONE
        if not _is_one(d1) and len(n2) > 1:
            q = K.exact_div(n2, d1, f.guard)
            if q is not None:
                n2, d1 = q, _ONE
        return Scalar._make(f, f._mul(n1, n2), f._mul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self._n:
            raise ZeroDenominator("inverse of zero")
        return Scalar._make(self.field, self._d, self._n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Scalar) or other.field is self.field else None
        if o is None:
            if isinstance(other, Scalar):
                return False
            return NotImplemented
        if self._d == o._d:
            return self._n == o._n
        f = self.field
        return not K.add_terms(f._mul(self._n, o._d), f._mul(o._n, self._d), -1)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    # -- substitution -------------------------------------------------------
    def specialize(self, bindings: Mapping[str, object]) -> "Scalar":
        """Substitute parameters; unbound ones stay formal.

        Raises :class:`ZeroDenominator` when the denominator vanishes.
        """
        f = self.field
        vals = {}
        for name, v in bindings.items():
            if name not in f.params:
                if f.root is not None and name == f.root.name:
                    raise PreconditionError("the root symbol cannot be rebound")
                raise DomainMismatch(f"{name!r} is not a declared parameter")
            vals[f.index[name]] = f.scalar(v)
        if not vals:
            return self
        num = _eval_poly(f, self._n, vals)
        den = _eval_poly(f, self._d, vals)
        if den.is_zero():
            raise ZeroDenominator(f"specializing {self} gives a zero denominator")
        return num / den

    def to_field(self, field: ParamField) -> "Scalar":
        """Re-embed into a field whose declaration contains all names used."""
        if field is self.field:
            return self
        if (self.field.root is not None or field.root is not None) and self.field.root != field.root:
            raise DomainMismatch("root declarations differ")
        src = self.field
        perm = [field.index.get(n) for n in src.names]

        def move(terms):
            out = {}
            for k, c in terms.items():
                ex = src.exponents(k)
                nk = 0
                for i, e in enumerate(ex):
                    if e:
                        if perm[i] is None:
                            raise DomainMismatch(f"{src.names[i]!r} missing from {field!r}")
                        nk |= e << (perm[i] * BITS)
                out[nk] = c
            return out

        return Scalar._make(field, move(self._n), move(self._d))

    # -- output ---------------------------------------------------------------
    def __str__(self):
        f = self.field
        if _is_one(self._d):
            if len(self._n) > 1:
                D = _content_denominator(self._n)
                if D > 1:
                    scaled = {k: _norm(c * D) for k, c in self._n.items()}
                    return f"({_poly_str(f, scaled)})/{D}"
            return _poly_str(f, self._n)
        n = _poly_str(f, self._n)
        if len(self._n) > 1:
            n = f"({n})"
        d = _poly_str(f, self._d)
        single_power = len(self._d) == 1 and next(iter(self._d.values())) == 1 and "*" not in d
        if not single_power:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Scalar({self})"

    def __format__(self, spec):
        return format(str(self), spec)


def _eval_poly(f: ParamField, terms: dict, vals: dict[int, Scalar]) -> Scalar:
    """Evaluate a polynomial with some variables replaced by scalars."""
    kept_mask = 0
    for i in range(f.nvars):
        if i not in vals:
            kept_mask |= _SLOT_MASK << (i * BITS)
    powers: dict[tuple[int, int], Scalar] = {}

    def power(i, e):
        key = (i, e)
        p = powers.get(key)
        if p is None:
            p = powers[key] = vals[i] ** e
        return p

    total = f.zero()
    for k, c in terms.items():
        part = Scalar._raw(f, {k & kept_mask: c}, _ONE)
        if f.root is not None:
            part = Scalar._raw(f, f._reduce(part._n), _ONE)
        for i in vals:
            e = (k >> (i * BITS)) & _SLOT_MASK
            if e:
                part = part * power(i, e)
        total = total + part
    return total


def q_integer(n: int, q: Scalar) -> Scalar:
    """The q-integer ``{n}_q = 1 + q + ... + q^(n-1)``."""
    total = q.field.zero()
    p = q.field.one()
    for _ in range(n):
        total = total + p
        p = p * q
    return total


def covered_by(expr: Scalar, assumptions: Sequence[Scalar]) -> bool:
    """Whether ``expr != 0`` follows from ``assumptions`` being nonzero.

    Sufficient test without factoring: after stripping a parameter-free
    (hence unit) coefficient, the numerator must divide a product of powers of
    the assumed numerators.  Rational constants and pure root-symbol
    expressions are always covered.
    """
    if expr.is_zero():
        return False
    f = expr.field
    n = expr._n
    if f._root_only(n):
        return True
    n = _strip_unit(f, n)
    if f._root_only(n):
        return True
    nonzero = [a for a in assumptions if not a.is_zero()]
    if not nonzero:
        return False
    deg = max(sum(f.exponents(k)) for k in n)
    prod = {0: 1}
    for a in nonzero:
        base = _strip_unit(f, a._n)
        for _ in range(deg):
            prod = f._mul(prod, base)
    return K.exact_div(prod, n, f.guard, max_steps=200_000) is not None


def _strip_unit(f: ParamField, n: dict) -> dict:
    """Drop a parameter-free factor when ``n`` splits as unit * monomial."""
    if f.root is None:
        return n
    low = (1 << f._root_shift) - 1
    param_parts = {k & low for k in n}
    if len(param_parts) == 1:
        return {param_parts.pop(): 1}
    return n


__all__ = [
    "ParamField",
    "ParamPoly",
    "RootSpec",
    "Scalar",
    "SigmaError",
    "covered_by",
    "cyclotomic_coefficients",
    "q_integer",
]
