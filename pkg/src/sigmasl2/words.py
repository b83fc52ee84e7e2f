"""Noncommutative polynomials over the parametric field.

Generators are single letters of a declared alphabet (``"efh"``,
``"xyz"``); a word is a plain ``str`` of such letters and the empty word is
the unit.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from . import parsing
from .errors import DomainMismatch, ParseError, PreconditionError
from .scalar import ParamField, Scalar


class WordPoly:
    """Finite sum of scalar-weighted words; immutable."""

    __slots__ = ("field", "alphabet", "terms")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, field: ParamField, alphabet: str, terms: Mapping[str, Scalar] | None = None):
        self.field = field
        self.alphabet = alphabet
        clean = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    clean[w] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field, alphabet):
        return cls(field, alphabet)

    @classmethod
    def const(cls, field, alphabet, c=1):
        return cls(field, alphabet, {"": field.scalar(c)})

    @classmethod
    def gen(cls, field, alphabet, letter: str):
        if len(letter) != 1 or letter not in alphabet:
            raise DomainMismatch(f"{letter!r} is not a generator of {alphabet!r}")
        return cls(field, alphabet, {letter: field.one()})

    @classmethod
    def word(cls, field, alphabet, w: str, c=1):
        bad = [a for a in w if a not in alphabet]
        if bad:
            raise DomainMismatch(f"{bad[0]!r} is not a generator of {alphabet!r}")
        return cls(field, alphabet, {w: field.scalar(c)})

    @classmethod
    def parse(cls, field: ParamField, alphabet: str, text: str) -> "WordPoly":
        node = parsing.parse(text)
        return cls._from_ast(field, alphabet, node, text)

    @classmethod
    def _from_ast(cls, field, alphabet, node, text):
        for a in alphabet:
            if a in field.index:
                raise PreconditionError(f"generator {a!r} clashes with a parameter")

        def resolve(name, pos):
            if len(name) == 1 and name in alphabet:
                return cls.gen(field, alphabet, name)
            if name in field.index:
                return cls.const(field, alphabet, field.var(name))
            raise ParseError(f"unknown symbol {name!r}", text, pos)

        val = parsing.evaluate(node, resolve, lambda n: cls.const(field, alphabet, n), text)
        return val

    # -- structure ----------------------------------------------------------
    def _check(self, other: "WordPoly"):
        if other.field is not self.field or other.alphabet != self.alphabet:
            raise DomainMismatch("word polynomials over different alphabets or fields")

    def _lift(self, x):
        if isinstance(x, WordPoly):
            self._check(x)
            return x
        if isinstance(x, (int, Scalar)) or type(x).__name__ == "Fraction":
            return WordPoly.const(self.field, self.alphabet, x)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def coeff(self, w: str) -> Scalar:
        return self.terms.get(w, self.field.zero())

    def homogeneous_part(self, d: int) -> "WordPoly":
        return WordPoly(self.field, self.alphabet, {w: c for w, c in self.terms.items() if len(w) == d})

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            out[w] = out[w] + c if w in out else c
        return WordPoly(self.field, self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return WordPoly(self.field, self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)) or type(other).__name__ == "Fraction":
            s = self.field.scalar(other)
            return WordPoly(self.field, self.alphabet, {w: c * s for w, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[str, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return WordPoly(self.field, self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)) or type(other).__name__ == "Fraction":
            return self * other
        return NotImplemented

    def scalar_value(self) -> Scalar | None:
        """The coefficient if this is a constant, else None."""
        if not self.terms:
            return self.field.zero()
        if len(self.terms) == 1 and "" in self.terms:
            return self.terms[""]
        return None

    def __truediv__(self, other):
        if isinstance(other, WordPoly):
            self._check(other)
            s = other.scalar_value()
            if s is None:
                raise TypeError("division by a non-constant word polynomial")
        else:
            s = self.field.scalar(other)
        return self * s.inverse()

    def __pow__(self, n: int):
        if n < 0:
            s = self.scalar_value()
            if s is None:
                raise PreconditionError("negative powers of words are undefined")
            return WordPoly.const(self.field, self.alphabet, s**n)
        out = WordPoly.const(self.field, self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, WordPoly) else other
        if o is None:
            return NotImplemented
        if o.field is not self.field or o.alphabet != self.alphabet:
            return False
        return (self - o).is_zero()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    # -- maps ---------------------------------------------------------------
    def evaluate(self, assign: Mapping[str, object], one=None):
        """Replace generators by values supporting ``+`` and ``*``.

        ``one`` is the value of the empty word (defaults to the scalar 1).
        """
        total = None
        for w, c in self.terms.items():
            if w:
                val = assign[w[0]]
                for a in w[1:]:
                    val = val * assign[a]
                term = val * c
            else:
                term = (one if one is not None else self.field.one()) * c
            total = term if total is None else total + term
        if total is None:
            return (one if one is not None else self.field.one()) * self.field.zero()
        return total

    def substitute(self, mapping: Mapping[str, "WordPoly"], alphabet: str | None = None) -> "WordPoly":
        """Algebra map given on generators (letters missing from ``mapping`` stay put)."""
        alphabet = alphabet or self.alphabet
        out = WordPoly.zero(self.field, alphabet)
        cache: dict[str, WordPoly] = {}
        for w, c in self.terms.items():
            img = cache.get(w)
            if img is None:
                img = WordPoly.const(self.field, alphabet)
                for a in w:
                    g = mapping.get(a)
                    img = img * (g if g is not None else WordPoly.gen(self.field, alphabet, a))
                cache[w] = img
            out = out + img * c
        return out

    def map_coefficients(self, fn: Callable[[Scalar], Scalar], field: ParamField | None = None) -> "WordPoly":
        return WordPoly(field or self.field, self.alphabet, {w: fn(c) for w, c in self.terms.items()})

    def specialize(self, bindings) -> "WordPoly":
        return self.map_coefficients(lambda c: c.specialize(bindings))

    # -- printing ---------------------------------------------------------------
    def sorted_terms(self, order: str | None = None):
        order = order or self.alphabet
        rank = {a: i for i, a in enumerate(order)}
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), [rank[a] for a in wc[0]]), reverse=True)

    def to_str(self, order: str | None = None) -> str:
        parts = []
        for w, c in self.sorted_terms(order):
            mono = "*".join(w)
            cs = str(c)
            simple = c.is_polynomial() and len(c._n) == 1
            neg = simple and cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not mono:
                body = cs if simple else f"({cs})"
            elif simple and cs == "1":
                body = mono
            elif simple:
                body = f"{cs}*{mono}"
            else:
                body = f"({cs})*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts) if parts else "0"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"WordPoly({self})"


def parse_relation(field: ParamField, alphabet: str, text: str) -> WordPoly:
    """``"lhs = rhs"`` (or a bare expression) as the element ``lhs - rhs``."""
    lhs, rhs = parsing.parse_relation(text)
    left = WordPoly._from_ast(field, alphabet, lhs, text)
    if rhs is None:
        return left
    return left - WordPoly._from_ast(field, alphabet, rhs, text)


def relations_from(field: ParamField, alphabet: str, items: Iterable) -> list[WordPoly]:
    out = []
    for r in items:
        if isinstance(r, WordPoly):
            out.append(r)
        elif isinstance(r, tuple):
            out.append(r[0] - r[1])
        else:
            out.append(parse_relation(field, alphabet, str(r)))
    return out
