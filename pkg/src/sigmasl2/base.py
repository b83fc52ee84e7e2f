"""The base algebra: ``K[t]`` or the truncated ring ``K[t]/(t^N)``."""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from . import parsing
from .errors import DomainMismatch, ParseError, PreconditionError
from .scalar import ParamField, Scalar


class BaseRing:
    """``K[t]`` when ``trunc`` is None, else ``K[t]/(t^trunc)`` with trunc >= 2."""

    __slots__ = ("field", "trunc", "var_name")

    def __init__(self, field: ParamField, trunc: int | None = None, var_name: str = "t"):
        if trunc is not None and (not isinstance(trunc, int) or trunc < 2):
            raise PreconditionError("truncation order must be an integer >= 2")
        if var_name in field.names:
            raise PreconditionError(f"{var_name!r} clashes with a parameter name")
        self.field = field
        self.trunc = trunc
        self.var_name = var_name

    @property
    def truncated(self) -> bool:
        return self.trunc is not None

    def __eq__(self, other):
        return (
            isinstance(other, BaseRing)
            and self.field is other.field
            and self.trunc == other.trunc
            and self.var_name == other.var_name
        )

    def __hash__(self):
        return hash((id(self.field), self.trunc, self.var_name))

    def __repr__(self):
        if self.trunc is None:
            return f"BaseRing(K[{self.var_name}])"
        return f"BaseRing(K[{self.var_name}]/({self.var_name}^{self.trunc}))"

    def element(self, coeffs: Sequence) -> "BaseElement":
        f = self.field
        return BaseElement(self, [f.scalar(c) for c in coeffs])

    def zero(self) -> "BaseElement":
        return BaseElement(self, [])

    def one(self) -> "BaseElement":
        return BaseElement(self, [self.field.one()])

    def t(self) -> "BaseElement":
        return self.monomial(1)

    def monomial(self, k: int, c=1) -> "BaseElement":
        f = self.field
        return BaseElement(self, [f.zero()] * k + [f.scalar(c)])

    def basis(self) -> list["BaseElement"]:
        """Monomial basis ``1, t, ..., t^(N-1)`` of a truncated ring."""
        if self.trunc is None:
            raise PreconditionError("K[t] has no finite basis")
        return [self.monomial(k) for k in range(self.trunc)]

    def coerce(self, x) -> "BaseElement":
        if isinstance(x, BaseElement):
            if x.ring != self:
                raise DomainMismatch(f"element of {x.ring!r} used in {self!r}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return BaseElement(self, [self.field.scalar(x)])

    def parse(self, text: str) -> "BaseElement":
        """Parse a polynomial in the ring variable with parametric coefficients."""
        node = parsing.parse(text)
        f = self.field

        def resolve(name, pos):
            if name == self.var_name:
                return self.t()
            if name in f.index:
                return BaseElement(self, [f.var(name)])
            raise ParseError(f"undeclared symbol {name!r}", text, pos)

        return parsing.evaluate(node, resolve, lambda n: BaseElement(self, [f.const(n)]), text)


class BaseElement:
    """Immutable element of a :class:`BaseRing`; ``coeffs[k]`` multiplies ``t^k``."""

    __slots__ = ("ring", "coeffs")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, ring: BaseRing, coeffs: Sequence[Scalar]):
        cs = list(coeffs)
        if ring.trunc is not None:
            del cs[ring.trunc :]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    # views
    def degree(self):
        """Degree in t; ``-math.inf`` for zero."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.field.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def scalar_part(self) -> Scalar:
        return self.coeff(0)

    def is_scalar(self) -> bool:
        return len(self.coeffs) <= 1

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return math.inf

    # arithmetic
    def _other(self, x) -> "BaseElement | None":
        if isinstance(x, BaseElement):
            if x.ring != self.ring:
                raise DomainMismatch(f"elements of {self.ring!r} and {x.ring!r}")
            return x
        if isinstance(x, (int, Scalar)) or type(x).__name__ == "Fraction":
            return BaseElement(self.ring, [self.ring.field.scalar(x)])
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return BaseElement(self.ring, [x + b[i] if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return BaseElement(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)) or type(other).__name__ == "Fraction":
            s = self.ring.field.scalar(other)
            return BaseElement(self.ring, [c * s for c in self.coeffs])
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return self.ring.zero()
        n = len(a) + len(b) - 1
        if self.ring.trunc is not None:
            n = min(n, self.ring.trunc)
        zero = self.ring.field.zero()
        out = [zero] * n
        for i, x in enumerate(a):
            if x.is_zero() or i >= n:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return BaseElement(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BaseElement):
            if other.degree() > 0:
                raise TypeError("division by a non-constant ring element")
            other = other.coeff(0)
        s = self.ring.field.scalar(other)
        inv = s.inverse()
        return BaseElement(self.ring, [c * inv for c in self.coeffs])

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("only non-negative integer powers are defined")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._other(other) if not isinstance(other, BaseElement) or other.ring == self.ring else None
        if o is None:
            return NotImplemented if not isinstance(other, BaseElement) else False
        if len(self.coeffs) != len(o.coeffs):
            return False
        return all(x == y for x, y in zip(self.coeffs, o.coeffs))

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def compose(self, x: "BaseElement") -> "BaseElement":
        """Substitute ``t -> x`` (Horner)."""
        out = self.ring.zero()
        for c in reversed(self.coeffs):
            out = out * x + BaseElement(self.ring, [c])
        return out

    def specialize(self, bindings: Mapping[str, object], ring: BaseRing | None = None) -> "BaseElement":
        ring = ring or self.ring
        return BaseElement(ring, [c.specialize(bindings) for c in self.coeffs])

    def __str__(self):
        if not self.coeffs:
            return "0"
        name = self.ring.var_name
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else name if k == 1 else f"{name}^{k}"
            parts.append((c, mono))
        out = []
        for i, (c, mono) in enumerate(parts):
            s = str(c)
            simple = "+" not in s[1:] and " - " not in s and "/" not in s
            neg = s.startswith("-") and simple
            if neg:
                s = s[1:]
            if mono:
                if s == "1":
                    body = mono
                elif simple:
                    body = f"{s}*{mono}"
                else:
                    body = f"({s})*{mono}"
            else:
                body = s if simple or i == 0 else f"({s})"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"BaseElement({self})"
