"""Batch front-end: ``python -m sigmasl2 <command> --config run.json``.

Configuration is a single JSON document; see README.md for the schema.
Exit status: 0 when every requested check passes, 1 when a check fails,
2 for configuration, parse and missing-assumption errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from . import __version__
from .algebras import UQ_ALPHABET, WQ_ALPHABET, uq_relations, wq_constants, wq_relations
from .bracket import check_twisted_jacobi, matrix_rep, span
from .errors import AssumptionRequired, ConfigError, InconsistentSystem, NotClosed, ParseError, SigmaError
from .qhl import AbstractAlgebra, check_hom_lie, check_qhl, derived_series
from .quadratic import (
    RewriteSystem,
    check_confluence,
    check_normal_element,
    check_ore_data,
    check_scalar_rep,
    check_substitution_iso,
    conformal_vector_check,
    count_normal_words,
)
from .quadratic import check_color_relations
from .scalar import ParamField, RootSpec, Scalar
from .sigma import TwistData, check_well_defined, ring_from_spec, solve_delta
from .sl2 import (
    ALPHABET,
    GENS,
    NAMED,
    PAIRS,
    CaseTag,
    classify_case,
    instantiate_named,
    relation_lift,
    structure_table,
)
from .words import WordPoly, relations_from

SCHEMA = "sigmasl2.report/1"
DEFORM_CHECKS = ("well_defined", "classify", "table", "relations", "matrices", "delta", "jacobi", "homlie", "qhl", "derived_series")
# solvability is a property, not a correctness check, so it is opt-in
DEFORM_DEFAULT = DEFORM_CHECKS[:-1]
CHECK_DEFAULT = ("well_defined", "jacobi", "homlie", "qhl")
QUADRATIC_CHECKS = ("confluence", "pbw", "normal_element", "scalar_rep", "substitution", "ore", "conformal", "color")
TOP_KEYS = {
    "field", "ring", "sigma_t", "dsigma_t", "assume_nonzero", "checks", "named",
    "bindings", "alpha", "beta", "jacobi_bound", "degree_bound", "quadratic",
}
MAX_WITNESSES = 8


# -- configuration ---------------------------------------------------------------

@dataclass
class RunConfig:
    field: ParamField
    twist: TwistData | None = None
    named: str | None = None
    assumptions: list[Scalar] = field(default_factory=list)
    checks: list[str] | None = None
    jacobi_bound: int = 4
    degree_bound: int = 6
    alpha: list[list[Scalar]] | None = None
    beta: Scalar | None = None
    quadratic: dict | None = None
    source: dict = field(default_factory=dict)


def _parse_in(F: ParamField, text, where: str) -> Scalar:
    try:
        return F.parse(str(text))
    except ParseError as exc:
        raise ParseError(f"{where}: {exc.reason}", exc.text, exc.pos) from None


def _field_from(decl) -> ParamField:
    if decl is None:
        return ParamField([])
    if isinstance(decl, list):
        return ParamField([str(p) for p in decl])
    if not isinstance(decl, Mapping):
        raise ConfigError("'field' must be a list of parameter names or a record")
    params = decl.get("parameters", [])
    if not isinstance(params, list):
        raise ConfigError("'field.parameters' must be a list")
    root = decl.get("root")
    spec = None
    if root is not None:
        if not isinstance(root, Mapping) or "name" not in root:
            raise ConfigError("'field.root' needs a 'name'")
        if "cyclotomic" in root:
            spec = RootSpec.cyclotomic(int(root["cyclotomic"]), str(root["name"]))
        elif "min_poly" in root:
            spec = RootSpec(str(root["name"]), root["min_poly"])
        else:
            raise ConfigError("'field.root' needs 'cyclotomic' or 'min_poly'")
    try:
        return ParamField([str(p) for p in params], spec)
    except SigmaError as exc:
        raise ConfigError(f"bad field declaration: {exc}") from None


def _int_option(raw, key, default):
    v = raw.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ConfigError(f"'{key}' must be a non-negative integer")
    return v


def build_config(raw: Mapping, assume: Sequence[str] = (), jacobi_bound=None, degree_bound=None) -> RunConfig:
    if not isinstance(raw, Mapping):
        raise ConfigError("configuration must be a JSON object")
    unknown = sorted(set(raw) - TOP_KEYS)
    if unknown:
        raise ConfigError(f"unknown configuration key {unknown[0]!r}")
    named = raw.get("named")
    explicit = "sigma_t" in raw or "dsigma_t" in raw
    if named is not None and explicit:
        raise ConfigError("give either a named specialization or sigma_t/dsigma_t, not both")
    twist = None
    assumptions: list[Scalar] = []
    if named is not None:
        if named not in NAMED:
            raise ConfigError(f"unknown specialization {named!r}; known: {', '.join(sorted(NAMED))}")
        inst = instantiate_named(str(named))
        if inst.twist is None:
            F = inst.relations[0].field
        else:
            F = inst.twist.field
            twist = inst.twist
        assumptions = list(inst.assume_nonzero)
    else:
        F = _field_from(raw.get("field"))
        if explicit:
            if "sigma_t" not in raw or "dsigma_t" not in raw:
                raise ConfigError("both 'sigma_t' and 'dsigma_t' are required")
            ring = ring_from_spec(F, raw.get("ring"))
            sig = _ring_parse(ring, raw["sigma_t"], "sigma_t")
            dsig = _ring_parse(ring, raw["dsigma_t"], "dsigma_t")
            twist = TwistData(ring, sig, dsig)
    for a in raw.get("assume_nonzero", []):
        assumptions.append(_parse_in(F, a, "assume_nonzero"))
    for a in assume:
        assumptions.append(_parse_in(F, a, "--assume"))
    bindings = raw.get("bindings")
    if bindings:
        if twist is None:
            raise ConfigError("'bindings' need a twist")
        if not isinstance(bindings, Mapping):
            raise ConfigError("'bindings' must map parameter names to values")
        vals = {}
        for k, v in bindings.items():
            if k not in F.params:
                raise ConfigError(f"binding for undeclared parameter {k!r}")
            vals[k] = _parse_in(F, v, f"bindings.{k}")
        twist = twist.specialize(vals)
        assumptions = [a.specialize(vals) for a in assumptions]
        assumptions = [a for a in assumptions if not a.is_constant()]
    checks = raw.get("checks")
    if checks is not None:
        if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
            raise ConfigError("'checks' must be a list of names")
        bad = [c for c in checks if c not in DEFORM_CHECKS]
        if bad:
            raise ConfigError(f"unknown check {bad[0]!r}; known: {', '.join(DEFORM_CHECKS)}")
    alpha = raw.get("alpha")
    if alpha is not None:
        if not isinstance(alpha, list) or len(alpha) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in alpha):
            raise ConfigError("'alpha' must be a 3x3 matrix (rows) in the basis e, h, f")
        alpha = [[_parse_in(F, c, "alpha") for c in row] for row in alpha]
    beta = raw.get("beta")
    if beta is not None:
        beta = _parse_in(F, beta, "beta")
    quad = raw.get("quadratic")
    if quad is not None and not isinstance(quad, Mapping):
        raise ConfigError("'quadratic' must be a record")
    return RunConfig(
        field=F,
        twist=twist,
        named=named,
        assumptions=assumptions,
        checks=checks,
        jacobi_bound=jacobi_bound if jacobi_bound is not None else _int_option(raw, "jacobi_bound", 4),
        degree_bound=degree_bound if degree_bound is not None else _int_option(raw, "degree_bound", 6),
        alpha=alpha,
        beta=beta,
        quadratic=dict(quad) if quad is not None else None,
        source=dict(raw),
    )


def _ring_parse(ring, text, where):
    try:
        return ring.parse(str(text))
    except ParseError as exc:
        raise ParseError(f"{where}: {exc.reason}", exc.text, exc.pos) from None


# -- report -----------------------------------------------------------------------

@dataclass
class Report:
    command: str
    checks: dict[str, dict] = field(default_factory=dict)
    sections: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] | None = None
    error: dict | None = None

    @property
    def exit_status(self) -> int:
        if self.error is not None:
            return 2
        return 1 if any(c["status"] == "fail" for c in self.checks.values()) else 0

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "version": __version__,
            "command": self.command,
            "checks": self.checks,
            "exit_status": self.exit_status,
        }
        out.update(self.sections)
        if self.error is not None:
            out["error"] = self.error
        if self.timing is not None:
            out["timing"] = self.timing
        return out


def _passfail(ok: bool, residual: Sequence[str] = (), **detail) -> dict:
    rec = {"status": "pass" if ok else "fail"}
    if not ok:
        rec["residual"] = list(residual) or ["(no witness)"]
    rec.update(detail)
    return rec


def _skipped(reason: str) -> dict:
    return {"status": "skipped", "reason": reason}


def _relation_str(lhs: WordPoly, rhs: WordPoly, first: str = "") -> str:
    # lead with the pair's own word so "e*f - ..." reads naturally
    text = lhs.to_str(ALPHABET)
    if first in lhs.terms and len(lhs.terms) > 1:
        head = WordPoly(lhs.field, lhs.alphabet, {first: lhs.terms[first]})
        rest = WordPoly(lhs.field, lhs.alphabet, {w: c for w, c in lhs.terms.items() if w != first}).to_str(ALPHABET)
        sep = " - " if rest.startswith("-") else " + "
        text = head.to_str(ALPHABET) + sep + rest.lstrip("-")
    return f"{text} = {rhs.to_str(ALPHABET)}"


def _vec_str(alg: AbstractAlgebra, v) -> str:
    return alg.format_vector(v)


# -- deformation pipeline ----------------------------------------------------------

class _Pipeline:
    def __init__(self, cfg: RunConfig, timing: bool):
        self.cfg = cfg
        self.tw = cfg.twist
        self.times: dict[str, float] | None = {} if timing else None
        self._table = None
        self._table_err = None
        self._delta = None

    def table(self):
        if self._table is None and self._table_err is None:
            try:
                self._table = structure_table(self.tw)
            except NotClosed as exc:
                self._table_err = exc
        if self._table_err is not None:
            raise self._table_err
        return self._table

    def delta(self):
        if self._delta is None:
            self._delta = solve_delta(self.tw, self.cfg.assumptions, self.cfg.degree_bound)
        return self._delta

    def run(self, name: str) -> dict:
        t0 = time.perf_counter()
        try:
            rec = getattr(self, "c_" + name)()
        except NotClosed as exc:
            rec = _passfail(False, [str(exc.witness) if exc.witness is not None else str(exc)], reason="not closed")
        except InconsistentSystem as exc:
            rec = _passfail(False, [str(exc.residual) if exc.residual is not None else str(exc)], reason=str(exc))
        if self.times is not None:
            self.times[name] = round(time.perf_counter() - t0, 6)
        return rec

    # each c_* returns one check record
    def c_well_defined(self):
        rep = check_well_defined(self.tw)
        if self.tw.ring.trunc is None:
            return _passfail(True, note="K[t]: nothing to check")
        return _passfail(
            rep.ok,
            [str(c) for c in rep.constraints],
            sigma_residual=[str(c) for c in rep.sigma_residual],
            dsigma_residual=[str(c) for c in rep.dsigma_residual],
        )

    def c_classify(self):
        if self.tw.ring.trunc is not None:
            return _skipped("classification applies to K[t]")
        tag = classify_case(self.tw)
        q, p = self.tw.sigma_t, self.tw.dsigma_t
        degs = f"deg sigma(t) = {_deg(q)}, deg dsigma(t) = {_deg(p)}"
        if tag is CaseTag.NOT_CLOSED:
            return _passfail(False, [degs], case=str(tag))
        return _passfail(True, case=str(tag), degrees=degs)

    def c_table(self):
        t = self.table()
        return _passfail(True, basis="e = dsigma, h = -2t dsigma, f = -t^2 dsigma", records=t.records())

    def c_relations(self):
        rels = []
        for k in PAIRS:
            lhs, rhs = relation_lift(self.tw, k[0], k[1])
            rels.append({"pair": k, "relation": _relation_str(lhs, rhs, k)})
        return _passfail(True, relations=rels)

    def c_matrices(self):
        if self.tw.ring.trunc is None:
            return _skipped("matrix representations need a truncated ring")
        from .bracket import OperatorMatrix
        from .sl2 import generator_coeff

        mats = {g: matrix_rep(span(self.tw, generator_coeff(self.tw.ring, g))) for g in GENS}
        ident = OperatorMatrix.identity(self.tw.field, self.tw.ring.trunc)
        bad = []
        for k in PAIRS:
            lhs, rhs = relation_lift(self.tw, k[0], k[1])
            val = (lhs - rhs).evaluate(mats, one=ident)
            if not val.is_zero():
                bad.append(f"{k}: {val}")
        return _passfail(not bad, bad, matrices={g: m.rows_str() for g, m in mats.items()})

    def c_delta(self):
        sol = self.delta()
        return _passfail(
            True,
            delta=str(sol.particular),
            free_directions=[str(d) for d in sol.free_directions],
            assumed_nonzero=[str(a) for a in sol.assumed_nonzero],
            whole_ring=sol.whole_ring,
            verified_up_to=sol.verified_up_to,
        )

    def c_jacobi(self):
        sol = self.delta()
        res = check_twisted_jacobi(self.tw, sol.particular, bound=self.cfg.jacobi_bound)
        wit = [f"({a}, {b}, {c}): {r}" for (a, b, c), r in res.failures[:MAX_WITNESSES]]
        return _passfail(res.ok, wit, delta=str(sol.particular), triples_checked=res.checked)

    def _alpha_for_homlie(self, table):
        if self.cfg.alpha is not None:
            return self.cfg.alpha, "configured"
        sol = self.delta()
        d = sol.particular
        if table.alpha is None or d.degree() != 0:
            return None, "delta is not a nonzero constant; give 'alpha' explicitly"
        inv = d.coeff(0).inverse()
        return [[c * inv for c in row] for row in table.alpha], "sigma / delta"

    def c_homlie(self):
        table = self.table()
        alpha, how = self._alpha_for_homlie(table)
        if alpha is None:
            return _skipped(how)
        alg = AbstractAlgebra.from_table(table, alpha=alpha)
        rep = check_hom_lie(alg)
        wit = [f"{','.join(k)}: {_vec_str(alg, v)}" for k, v in list(rep.residuals.items())[:MAX_WITNESSES]]
        return _passfail(rep.ok, wit, alpha=_mat_str(alpha), alpha_source=how)

    def c_qhl(self):
        table = self.table()
        alpha = self.cfg.alpha if self.cfg.alpha is not None else table.alpha
        if alpha is None:
            return _skipped("sigma does not preserve span{e, h, f}; give 'alpha' explicitly")
        beta = self.cfg.beta if self.cfg.beta is not None else self.delta().particular.coeff(0)
        alg = AbstractAlgebra.from_table(table, alpha=alpha, beta=beta)
        rep = check_qhl(alg)
        wit = [f"{','.join(k)}: {_vec_str(alg, v)}" for k, v in list(rep.jacobi.residuals.items())[:MAX_WITNESSES]]
        if not rep.skew_symmetric:
            wit.append("bracket is not skew-symmetric")
        fb = rep.first_bullet
        return _passfail(
            rep.ok,
            wit,
            alpha=_mat_str(alpha),
            beta=str(beta),
            omega=rep.omega,
            beta_reading=rep.beta_reading,
            first_bullet={
                "status": "pass" if fb.ok else "fail",
                "residual": [f"{k[0]},{k[1]}: {_vec_str(alg, v)}" for k, v in fb.residuals.items()],
            },
        )

    def c_derived_series(self):
        alg = AbstractAlgebra.from_table(self.table())
        ds = derived_series(alg)
        return _passfail(ds.solvable, [f"dims {ds.dims}"], dims=ds.dims)


def _deg(x) -> str:
    d = x.degree()
    return "-inf" if d == -math.inf else str(d)


def _mat_str(m) -> list[list[str]]:
    return [[str(c) for c in row] for row in m]


def _deform_sections(cfg: RunConfig) -> dict:
    tw = cfg.twist
    out = {
        "input": {
            "ring": "K[t]" if tw.ring.trunc is None else f"K[t]/(t^{tw.ring.trunc})",
            "parameters": list(cfg.field.params),
            "sigma_t": str(tw.sigma_t),
            "dsigma_t": str(tw.dsigma_t),
            "assume_nonzero": [str(a) for a in cfg.assumptions],
            "named": cfg.named,
        },
        "conventions": {
            "basis": "e = dsigma, h = -2t dsigma, f = -t^2 dsigma; c0 + c1 t + c2 t^2 -> (c0, -c1/2, -c2)",
            "omega": "-id",
            "beta": "scalar multiple (constant term of delta unless configured)",
            "word_order": ALPHABET,
        },
    }
    if cfg.field.root is not None:
        out["input"]["root"] = {"name": cfg.field.root.name, "min_poly": cfg.field.root.min_poly_str()}
    return out


def run_deform(cfg: RunConfig, command: str, default: Sequence[str], timing: bool = False) -> Report:
    if cfg.twist is None:
        raise ConfigError("this command needs sigma_t/dsigma_t or a named twist")
    requested = list(cfg.checks) if cfg.checks is not None else list(default)
    pipe = _Pipeline(cfg, timing)
    rep = Report(command)
    for name in DEFORM_CHECKS:
        rep.checks[name] = pipe.run(name) if name in requested else _skipped("not requested")
    rep.sections.update(_deform_sections(cfg))
    try:
        table = pipe.table()
        rep.sections["structure_table"] = table.records()
    except NotClosed:
        rep.sections["structure_table"] = None
    rep.timing = pipe.times
    return rep


# -- quadratic algebras ---------------------------------------------------------------

def _system_from(F: ParamField, spec: Mapping, assumptions) -> tuple[RewriteSystem, list[WordPoly]]:
    preset = spec.get("preset")
    if preset is not None:
        for n in ("q", "p0"):
            if n not in F.params:
                raise ConfigError(f"preset {preset!r} needs parameter {n!r} in the field")
        if preset == "uq":
            rels, alph = uq_relations(field=F), UQ_ALPHABET
        elif preset == "wq":
            rels, alph = wq_relations(field=F), WQ_ALPHABET
        else:
            raise ConfigError(f"unknown preset {preset!r}; known: uq, wq")
        order = spec.get("order", alph)
    else:
        alph = spec.get("alphabet")
        if not isinstance(alph, str) or not alph:
            raise ConfigError("a quadratic system needs 'alphabet' (or a 'preset')")
        raw = spec.get("relations")
        if not isinstance(raw, list):
            raise ConfigError("'relations' must be a list of strings")
        rels = relations_from(F, alph, [str(r) for r in raw])
        order = spec.get("order", alph)
    if sorted(order) != sorted(alph):
        raise ConfigError("'order' must be a permutation of the alphabet")
    sys_ = RewriteSystem.from_relations(F, alph, rels, order=order, assumptions=assumptions)
    return sys_, rels


def _wp(sys_: RewriteSystem, text) -> WordPoly:
    return relations_from(sys_.field, sys_.alphabet, [str(text)])[0]


def run_quadratic(cfg: RunConfig, timing: bool = False) -> Report:
    spec = cfg.quadratic
    if spec is None:
        raise ConfigError("the quadratic command needs a 'quadratic' section")
    F = cfg.field
    if spec.get("preset") is not None and not F.params and "field" not in cfg.source:
        F = ParamField(["q", "p0"])
    assumptions = list(cfg.assumptions)
    for a in spec.get("assume_nonzero", []):
        assumptions.append(_parse_in(F, a, "quadratic.assume_nonzero"))
    sys_, rels = _system_from(F, spec, assumptions)
    checks = spec.get("checks")
    if checks is None:
        checks = ["confluence", "pbw"] + [c for c in QUADRATIC_CHECKS[2:] if _has_input(spec, c)]
    bad = [c for c in checks if c not in QUADRATIC_CHECKS]
    if bad:
        raise ConfigError(f"unknown quadratic check {bad[0]!r}; known: {', '.join(QUADRATIC_CHECKS)}")
    rep = Report("quadratic")
    times: dict[str, float] | None = {} if timing else None
    for name in QUADRATIC_CHECKS:
        if name not in checks:
            rep.checks[name] = _skipped("not requested")
            continue
        t0 = time.perf_counter()
        rep.checks[name] = _QUAD[name](cfg, spec, sys_, rels, F, assumptions)
        if times is not None:
            times[name] = round(time.perf_counter() - t0, 6)
    rep.sections["system"] = {
        "alphabet": sys_.alphabet,
        "order": sys_.order,
        "rules": [f"{r.lead} -> {r.rhs.to_str(sys_.order)}" for r in sys_.rules],
        "assume_nonzero": [str(a) for a in assumptions],
    }
    rep.timing = times
    return rep


_INPUT_KEYS = {
    "normal_element": "omega",
    "scalar_rep": "assignment",
    "substitution": "substitution",
    "ore": "ore",
    "conformal": "conformal",
    "color": "grading",
}


def _has_input(spec, check):
    return _INPUT_KEYS.get(check) in spec


def _need(spec, check):
    key = _INPUT_KEYS[check]
    if key not in spec:
        raise ConfigError(f"check {check!r} needs 'quadratic.{key}'")
    return spec[key]


def _q_confluence(cfg, spec, sys_, rels, F, assumptions):
    rep = check_confluence(sys_)
    over = [{"word": o.word, "residual": o.residual.to_str(sys_.order)} for o in rep.overlaps]
    wit = [f"{o['word']}: {o['residual']}" for o in over if o["residual"] != "0"]
    return _passfail(rep.ok, wit, overlaps=over)


def _q_pbw(cfg, spec, sys_, rels, F, assumptions):
    top = int(spec.get("pbw_degree", cfg.degree_bound))
    n = len(sys_.alphabet)
    counts = [count_normal_words(sys_, d) for d in range(top + 1)]
    expected = [math.comb(d + n - 1, n - 1) for d in range(top + 1)]
    wit = [f"degree {d}: {c} normal words, expected {e}" for d, (c, e) in enumerate(zip(counts, expected)) if c != e]
    return _passfail(not wit, wit, counts=counts, expected=expected)


def _q_normal(cfg, spec, sys_, rels, F, assumptions):
    omega = _wp(sys_, _need(spec, "normal_element"))
    tau = {k: _wp(sys_, v) for k, v in spec.get("tau", {}).items()}
    rep = check_normal_element(sys_, omega, tau)
    wit = [f"{z}: {r.to_str(sys_.order)}" for z, r in rep.residuals.items() if not r.is_zero()]
    wit += [f"tau on relation: {r.to_str(sys_.order)}" for r in rep.endomorphism_residuals if not r.is_zero()]
    return _passfail(
        rep.ok and rep.endomorphism_ok,
        wit,
        normal=rep.ok,
        tau_endomorphism=rep.endomorphism_ok,
        tau_invertible_on_generators=rep.invertible_on_generators,
    )


def _q_scalar(cfg, spec, sys_, rels, F, assumptions):
    assign = {k: _parse_in(F, v, f"assignment.{k}") for k, v in _need(spec, "scalar_rep").items()}
    missing = [a for a in sys_.alphabet if a not in assign]
    if missing:
        raise ConfigError(f"assignment lacks generator {missing[0]!r}")
    rep = check_scalar_rep(rels, assign, F)
    return _passfail(rep.ok, [str(r) for r in rep.residuals if not r.is_zero()])


def _q_subst(cfg, spec, sys_, rels, F, assumptions):
    sub = _need(spec, "substitution")
    if not isinstance(sub, Mapping) or "map" not in sub or "target" not in sub:
        raise ConfigError("'substitution' needs 'map' and 'target'")
    dst, _ = _system_from(F, sub["target"], assumptions)
    smap = {k: _wp(dst, v) for k, v in sub["map"].items()}
    rep = check_substitution_iso(rels, smap, dst, src_alphabet=sys_.alphabet, assumptions=assumptions)
    return _passfail(rep.ok, [r.to_str(dst.order) for r in rep.residuals if not r.is_zero()])


def _q_ore(cfg, spec, sys_, rels, F, assumptions):
    o = _need(spec, "ore")
    if not isinstance(o, Mapping):
        raise ConfigError("'ore' must be a record")
    q = _parse_in(F, o.get("q", "q"), "ore.q")
    if "a" in o or "b" in o:
        a = _parse_in(F, o.get("a", "0"), "ore.a")
        b = _parse_in(F, o.get("b", "0"), "ore.b")
    else:
        a, b = wq_constants(q, F.var("p0"))
    rep = check_ore_data(q, a, b, sigma=o.get("sigma"), dsigma=o.get("dsigma"))
    wit = [str(r) for r in (rep.sigma_residual, rep.derivation_residual) if not r.is_zero()]
    return _passfail(rep.ok, wit, a=str(a), b=str(b))


def _q_conformal(cfg, spec, sys_, rels, F, assumptions):
    vec = _need(spec, "conformal")
    if not isinstance(vec, list) or len(vec) != 7:
        raise ConfigError("'conformal' must list seven entries")
    a = [_parse_in(F, c, "conformal") for c in vec]
    ok = conformal_vector_check(a)
    return _passfail(ok, [f"a6 - a1 = {a[5] - a[0]}", f"a7 - a2 = {a[6] - a[1]}"])


def _q_color(cfg, spec, sys_, rels, F, assumptions):
    grading = _need(spec, "color")
    g = {k: tuple(int(x) for x in v) for k, v in grading.items()}
    ok = check_color_relations(rels, g, field=F, alphabet=sys_.alphabet)
    return _passfail(ok, ["relations differ from the coloured commutators"])


_QUAD = {
    "confluence": _q_confluence,
    "pbw": _q_pbw,
    "normal_element": _q_normal,
    "scalar_rep": _q_scalar,
    "substitution": _q_subst,
    "ore": _q_ore,
    "conformal": _q_conformal,
    "color": _q_color,
}


# -- output -----------------------------------------------------------------------

def emit_report(report: Report, fmt: str = "structured") -> bytes:
    data = report.to_dict()
    if fmt == "structured":
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt != "text":
        raise ConfigError(f"unknown format {fmt!r}")
    lines = [f"sigmasl2 {report.command}"]
    if report.error is not None:
        lines.append(f"error ({report.error['kind']}): {report.error['message']}")
    for name in sorted(report.checks):
        rec = report.checks[name]
        status = rec["status"].upper()
        extra = f" ({rec['reason']})" if status == "SKIPPED" and rec.get("reason") != "not requested" else ""
        lines.append(f"{name:16s} {status}{extra}")
        for r in rec.get("residual", []):
            lines.append(f"    residual: {r}")
    table = data.get("structure_table")
    if table:
        lines.append("structure table:")
        for rec in table:
            lines.append(f"  <{rec['bracket'][0]},{rec['bracket'][1]}> = ({rec['e']})*e + ({rec['h']})*h + ({rec['f']})*f")
    rel = report.checks.get("relations", {}).get("relations")
    if rel:
        lines.append("relations:")
        for r in rel:
            lines.append(f"  {r['relation']}")
    delta = report.checks.get("delta", {})
    if delta.get("status") == "pass":
        free = ", ".join(delta["free_directions"]) or "none"
        lines.append(f"delta = {delta['delta']}  (free directions: {free})")
    if "specializations" in data:
        lines.extend(f"  {k:12s} {v}" for k, v in data["specializations"].items())
    if isinstance(data.get("relations"), list):
        lines.append("relations:")
        lines.extend(f"  {r}" for r in data["relations"])
    if "system" in data:
        lines.append("rules:")
        lines.extend(f"  {r}" for r in data["system"]["rules"])
    if report.timing:
        lines.append("timing (s): " + ", ".join(f"{k}={v}" for k, v in sorted(report.timing.items())))
    lines.append(f"exit status {report.exit_status}")
    return ("\n".join(lines) + "\n").encode()


def _error_report(command: str, exc: Exception) -> Report:
    rep = Report(command)
    if isinstance(exc, ParseError):
        rep.error = {"kind": "parse", "message": str(exc), "line": exc.line, "column": exc.column}
    elif isinstance(exc, AssumptionRequired):
        rep.error = {"kind": "assumption", "message": str(exc), "required": str(exc.expression)}
    else:
        rep.error = {"kind": "config", "message": str(exc)}
    return rep


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sigmasl2", description="Quasi-deformations of sl2 from sigma-derivations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config_required=True):
        sp.add_argument("--config", required=config_required, help="JSON run configuration")
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        sp.add_argument("--jacobi-bound", type=int, default=None, help="max exponent in Jacobi triples on K[t] (default 4)")
        sp.add_argument("--degree-bound", type=int, default=None, help="Leibniz/PBW test degree (default 6)")
        sp.add_argument("--assume", action="append", default=[], metavar="EXPR", help="assert EXPR != 0 (repeatable)")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timings")
        sp.add_argument("--output", help="write the report here instead of stdout")

    common(sub.add_parser("deform", help="run the whole deformation pipeline"))
    common(sub.add_parser("check", help="well-definedness, Jacobi, hom-Lie and qhl checks"))
    common(sub.add_parser("delta", help="solve for delta only"))
    common(sub.add_parser("quadratic", help="quadratic-algebra verifications"))
    named = sub.add_parser("named", help="list built-in specializations, or run one")
    named.add_argument("name", nargs="?")
    common(named, config_required=False)
    return p


def execute(args) -> Report:
    cmd = args.command
    try:
        if cmd == "named" and args.name is None:
            rep = Report("named")
            rep.sections["specializations"] = dict(sorted(NAMED.items()))
            return rep
        raw = load_config(args.config) if args.config else {}
        if cmd == "named":
            raw = dict(raw)
            raw["named"] = args.name
        if args.jacobi_bound is not None and args.jacobi_bound < 0 or args.degree_bound is not None and args.degree_bound < 0:
            raise ConfigError("bounds must be non-negative")
        cfg = build_config(raw, args.assume, args.jacobi_bound, args.degree_bound)
        if cmd == "quadratic":
            return run_quadratic(cfg, args.timing)
        if cmd == "named" and cfg.twist is None:
            return _run_named_relations(cfg, args.timing)
        if cmd in ("deform", "named"):
            return run_deform(cfg, cmd, DEFORM_DEFAULT, args.timing)
        if cmd == "check":
            return run_deform(cfg, cmd, CHECK_DEFAULT, args.timing)
        if cmd == "delta":
            cfg.checks = ["delta"]
            return run_deform(cfg, cmd, ["delta"], args.timing)
        raise ConfigError(f"unknown command {cmd!r}")
    except SigmaError as exc:
        return _error_report(cmd, exc)


def _run_named_relations(cfg: RunConfig, timing: bool) -> Report:
    # instances without a twist (the colour case) carry relations and a grading
    inst = instantiate_named(cfg.named)
    rep = Report("named")
    rep.sections["relations"] = [r.to_str(inst.alphabet) + " = 0" for r in inst.relations]
    rep.sections["grading"] = {k: list(v) for k, v in sorted(inst.grading.items())}
    ok = check_color_relations(inst.relations, inst.grading)
    rep.checks["color"] = _passfail(ok, ["relations differ from the coloured commutators"])
    return rep


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    rep = execute(args)
    data = emit_report(rep, args.format)
    if getattr(args, "output", None):
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    if rep.error is not None:
        print(f"sigmasl2: {rep.error['message']}", file=sys.stderr)
    return rep.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
