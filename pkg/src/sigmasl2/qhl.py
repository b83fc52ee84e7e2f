"""Axiom checks for finite-dimensional brackets given by structure constants.

Vectors are lists of Scalars in the algebra's basis; ``alpha`` is a square
matrix whose column ``j`` is the image of basis vector ``j``.  The
symmetry-twisting map of a qhl-algebra is fixed to ``-id`` everywhere, so
it only contributes an overall sign and the skew-symmetry requirement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import linalg
from .errors import ConfigError, PreconditionError
from .quadratic import check_color_relations as _color_check
from .scalar import ParamField, Scalar

Vector = list


class AbstractAlgebra:
    """Bilinear bracket on ``span(names)`` with optional twists ``alpha``, ``beta``."""

    def __init__(
        self,
        field: ParamField,
        names: Sequence[str],
        brackets: Mapping[tuple[str, str], Sequence],
        alpha: Sequence[Sequence] | None = None,
        beta=None,
    ):
        self.field = field
        self.names = list(names)
        self.dim = len(self.names)
        idx = {n: i for i, n in enumerate(self.names)}
        z = field.zero()
        table = {}
        for (x, y), vec in brackets.items():
            if x not in idx or y not in idx:
                raise ConfigError(f"bracket <{x},{y}> uses an unknown basis element")
            v = [field.scalar(c) for c in vec]
            if len(v) != self.dim:
                raise ConfigError(f"bracket <{x},{y}> has {len(v)} coordinates, expected {self.dim}")
            i, j = idx[x], idx[y]
            if i == j:
                if any(not c.is_zero() for c in v):
                    raise ConfigError(f"diagonal bracket <{x},{x}> must vanish")
                continue
            neg = [-c for c in v]
            if (j, i) in table and any(a != b for a, b in zip(table[(j, i)], neg)):
                raise ConfigError(f"brackets <{x},{y}> and <{y},{x}> are not skew")
            table[(i, j)] = v
            table[(j, i)] = neg
        self._table = table
        self._zero = [z] * self.dim
        self.alpha = None if alpha is None else [[field.scalar(c) for c in row] for row in alpha]
        if self.alpha is not None and (len(self.alpha) != self.dim or any(len(r) != self.dim for r in self.alpha)):
            raise ConfigError(f"alpha must be a {self.dim}x{self.dim} matrix")
        self.beta = None if beta is None else field.scalar(beta)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_table(cls, table, alpha=None, beta=None) -> "AbstractAlgebra":
        """From a sl2 StructureTable (basis e, h, f); ``alpha`` defaults to the table's own."""
        br = {(k[0], k[1]): list(getattr(table, k)) for k in ("hf", "he", "ef")}
        if alpha is None:
            alpha = table.alpha
        return cls(table.field, ["e", "h", "f"], br, alpha, beta)

    @classmethod
    def from_records(cls, field: ParamField, records, alpha=None, beta=None) -> "AbstractAlgebra":
        from .sl2 import StructureTable

        if alpha is not None:
            alpha = [[field.parse(str(c)) for c in row] for row in alpha]
        if beta is not None:
            beta = field.parse(str(beta))
        return cls.from_table(StructureTable.from_records(field, records), alpha, beta)

    def with_twist(self, alpha=None, beta=None) -> "AbstractAlgebra":
        out = object.__new__(AbstractAlgebra)
        out.__dict__.update(self.__dict__)
        if alpha is not None:
            out.alpha = [[self.field.scalar(c) for c in row] for row in alpha]
        if beta is not None:
            out.beta = self.field.scalar(beta)
        return out

    # -- linear algebra ---------------------------------------------------------
    def basis_vector(self, i: int) -> Vector:
        v = list(self._zero)
        v[i] = self.field.one()
        return v

    def bracket(self, u: Vector, v: Vector) -> Vector:
        out = list(self._zero)
        for (i, j), c in self._table.items():
            a, b = u[i], v[j]
            if a.is_zero() or b.is_zero():
                continue
            s = a * b
            for k, ck in enumerate(c):
                if not ck.is_zero():
                    out[k] = out[k] + s * ck
        return out

    def apply_alpha(self, u: Vector) -> Vector:
        if self.alpha is None:
            raise PreconditionError("no twisting map alpha")
        return [sum((self.alpha[i][j] * u[j] for j in range(self.dim)), self.field.zero()) for i in range(self.dim)]

    def add(self, u: Vector, v: Vector) -> Vector:
        return [a + b for a, b in zip(u, v)]

    def scale(self, s, u: Vector) -> Vector:
        s = self.field.scalar(s)
        return [s * a for a in u]

    def format_vector(self, u: Vector) -> str:
        parts = [f"({c})*{n}" for c, n in zip(u, self.names) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def _cyclic_triples(dim: int):
    # every ordered triple; redundant under rotation but cheap at this size
    return itertools.product(range(dim), repeat=3)


@dataclass
class AxiomReport:
    ok: bool
    residuals: dict[tuple[str, str, str], Vector] = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def cyclic_sum(alg: AbstractAlgebra, x: Vector, y: Vector, z: Vector, outer) -> Vector:
    """``sum over rotations of outer(x, <y, z>)``."""
    total = list(alg._zero)
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        total = alg.add(total, outer(a, alg.bracket(b, c)))
    return total


def _run(alg: AbstractAlgebra, outer) -> AxiomReport:
    res = {}
    for i, j, k in _cyclic_triples(alg.dim):
        r = cyclic_sum(alg, alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k), outer)
        if any(not c.is_zero() for c in r):
            res[(alg.names[i], alg.names[j], alg.names[k])] = r
    return AxiomReport(not res, res)


def check_hom_lie(alg: AbstractAlgebra) -> AxiomReport:
    """Cyclic identity ``<(alpha + id)x, <y, z>> = 0`` on all basis triples."""
    if alg.alpha is None:
        raise PreconditionError("hom-Lie check needs alpha")
    return _run(alg, lambda a, bc: alg.bracket(alg.add(alg.apply_alpha(a), a), bc))


@dataclass
class QhlReport:
    ok: bool
    jacobi: AxiomReport
    skew_symmetric: bool
    first_bullet: AxiomReport
    omega: str = "-id"
    beta_reading: str = "scalar multiple"

    def __bool__(self):
        return self.ok


def check_qhl(alg: AbstractAlgebra) -> QhlReport:
    """qhl axioms with ``omega = -id`` and ``beta`` read as a scalar.

    ``ok`` covers the twisted cyclic identity and skew-symmetry.  The
    multiplicativity condition ``<alpha x, alpha y> = beta alpha<x, y>`` is
    reported separately in ``first_bullet``; it depends on how ``beta`` is
    read and is not folded into ``ok``.
    """
    if alg.alpha is None or alg.beta is None:
        raise PreconditionError("qhl check needs alpha and beta")
    beta = alg.beta
    minus = alg.field.const(-1)
    jac = _run(
        alg,
        lambda a, bc: alg.scale(minus, alg.add(alg.bracket(alg.apply_alpha(a), bc), alg.scale(beta, alg.bracket(a, bc)))),
    )
    skew = all(
        all((p + q).is_zero() for p, q in zip(alg.bracket(alg.basis_vector(i), alg.basis_vector(j)), alg.bracket(alg.basis_vector(j), alg.basis_vector(i))))
        for i in range(alg.dim)
        for j in range(alg.dim)
    )
    first = {}
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            x, y = alg.basis_vector(i), alg.basis_vector(j)
            lhs = alg.bracket(alg.apply_alpha(x), alg.apply_alpha(y))
            rhs = alg.scale(beta, alg.apply_alpha(alg.bracket(x, y)))
            d = [a - b for a, b in zip(lhs, rhs)]
            if any(not c.is_zero() for c in d):
                first[(alg.names[i], alg.names[j], "")] = d
    return QhlReport(jac.ok and skew, jac, skew, AxiomReport(not first, first))


@dataclass
class DerivedSeries:
    solvable: bool
    dims: list[int]

    def __bool__(self):
        return self.solvable


def derived_series(alg: AbstractAlgebra, max_steps: int = 8) -> DerivedSeries:
    """Dimensions of g, g^(1), g^(2), ... until zero, stabilisation or ``max_steps``."""
    F = alg.field
    basis = [alg.basis_vector(i) for i in range(alg.dim)]
    dims = [alg.dim]
    for _ in range(max_steps):
        vecs = [alg.bracket(u, v) for u, v in itertools.combinations(basis, 2)]
        basis = _independent(F, vecs)
        dims.append(len(basis))
        if not basis:
            return DerivedSeries(True, dims)
        if len(basis) == dims[-2]:
            return DerivedSeries(False, dims)
    return DerivedSeries(False, dims)


def derived_series_solvable(alg: AbstractAlgebra, max_steps: int = 8) -> bool:
    return derived_series(alg, max_steps).solvable


def _independent(F: ParamField, vecs: Sequence[Vector]) -> list[Vector]:
    out: list[Vector] = []
    for v in vecs:
        if all(c.is_zero() for c in v):
            continue
        if out and linalg.in_span(F, out, v):
            continue
        out.append(v)
    return out


def check_color_relations(relations, grading: Mapping[str, Sequence[int]], field=None, alphabet=None) -> bool:
    """Relations (WordPolys, strings, or a named instance) against coloured commutators."""
    if hasattr(relations, "relations") and hasattr(relations, "alphabet") and not isinstance(relations, (list, tuple)):
        alphabet = alphabet or relations.alphabet
        relations = relations.relations
    return _color_check(relations, grading, field=field, alphabet=alphabet)
