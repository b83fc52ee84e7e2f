"""Acceptance gate: criteria 1-14, each reported as one PASS/FAIL line.

Every criterion is a list of named sub-checks evaluated with exact
arithmetic; a criterion passes only if all of its sub-checks do.  Run
directly (``python tests/test_acceptance.py``) or through pytest, where the
lines are repeated in the terminal summary.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sigmasl2 import ParamField, RootSpec, q_integer  # noqa: E402
from sigmasl2.algebras import (  # noqa: E402
    conformal_vector_uq,
    default_field,
    omega_q,
    omega_tau,
    uq_relations,
    uq_system,
    witten_vector,
    wq_constants,
    wq_relations,
    wq_substitution,
    wq_system,
)
from sigmasl2.base import BaseRing  # noqa: E402
from sigmasl2.bracket import default_triples, jacobi_residual, matrix_rep, span  # noqa: E402
from sigmasl2.qhl import AbstractAlgebra, check_hom_lie, derived_series  # noqa: E402
from sigmasl2.quadratic import (  # noqa: E402
    check_color_relations,
    check_confluence,
    check_normal_element,
    check_ore_data,
    check_scalar_rep,
    check_substitution_iso,
    conformal_vector_check,
    count_normal_words,
)
from sigmasl2.sigma import TwistData, check_well_defined, delta_residual, solve_delta  # noqa: E402
from sigmasl2.sl2 import (  # noqa: E402
    generator_coeff,
    instantiate_named,
    lifted_relations,
    proportional,
    structure_table,
)
from sigmasl2.words import WordPoly  # noqa: E402

TITLES = {
    1: "classical recovery",
    2: "Jackson table",
    3: "delta solutions",
    4: "twisted Jacobi identity",
    5: "hom-Lie check",
    6: "matrix representations",
    7: "root-of-unity constraints",
    8: "specializations",
    9: "quadratic algebra U_q",
    10: "isomorphism U_q and W_q",
    11: "Ore consistency",
    12: "conformal vectors and 1-d representation",
    13: "colour case",
    14: "property suites",
}
RESULTS: dict[int, tuple[bool, list[tuple[str, bool, str]]]] = {}


def twist(params, N, s, d, root=None):
    F = ParamField(params, root)
    R = BaseRing(F, N)
    return TwistData(R, R.parse(s), R.parse(d))


def vec(F, *cs):
    return tuple(F.parse(str(c)) for c in cs)


def words(F, alphabet, text):
    return WordPoly.parse(F, alphabet, text)


# -- criteria ----------------------------------------------------------------------

def c1():
    tab = structure_table(twist([], None, "t", "1"))
    F = tab.field
    return [
        ("<h,e> = 2e", tab.he == vec(F, 2, 0, 0), str(tab.he)),
        ("<h,f> = -2f", tab.hf == vec(F, 0, 0, -2), str(tab.hf)),
        ("<e,f> = h", tab.ef == vec(F, 0, 1, 0), str(tab.ef)),
    ]


def c2():
    tw = twist(["q0", "q", "p0"], None, "q0 + q*t", "p0").specialize({"q0": 0})
    F = tw.field
    rels = lifted_relations(tw)
    eq9 = uq_relations(field=F)
    out = [(f"lift of <{k}> proportional to the q-relation", proportional(r, s), str(r)) for k, r, s in zip(("h,f", "h,e", "e,f"), rels, eq9)]
    tab = structure_table(tw).specialize({"q": 1, "p0": 1})
    classical = structure_table(twist(["q0", "q", "p0"], None, "t", "1"))
    out.append(("p0 = q = 1 gives the classical table", tab.equals(classical), str(tab.records())))
    return out


def c3():
    out = []
    tw1 = twist(["q0", "q1", "p0"], None, "q0 + q1*t", "p0")
    d1 = solve_delta(tw1, [tw1.field.var("p0")])
    out.append(("K[t] case 1: delta = q1", d1.particular == tw1.ring.parse("q1") and not d1.free_directions, str(d1.particular)))

    tw2 = twist(["q0", "p0", "p1"], None, "q0", "p0 + p1*t")
    d2 = solve_delta(tw2, [tw2.field.parse("p0 + p1*q0")])
    zero_ok = all(delta_residual(tw2, tw2.ring.zero(), tw2.ring.monomial(k)).is_zero() for k in range(7))
    out.append(("K[t] case 2: delta = 0 admissible", zero_ok and d2.particular.is_zero(), str(d2.particular)))

    tw3 = twist(["p0", "p1"], None, "0", "p0 + p1*t")
    d3 = solve_delta(tw3, [tw3.field.var("p0")])
    out.append(("K[t] case 3: every delta admissible", d3.whole_ring, f"solver: delta = {d3.particular}, whole ring = {d3.whole_ring}"))

    tw4 = twist(["q1", "q2", "p1", "p2"], 3, "q1*t + q2*t^2", "p1*t + p2*t^2")
    F4 = tw4.field
    d4 = solve_delta(tw4, [F4.parse("q1*p1")])
    ok4 = (
        d4.particular.coeff(0) == F4.one()
        and d4.particular.coeff(1) == -F4.parse("(q1*p2 - p2 - p1*q2)/p1")
        and [str(d) for d in d4.free_directions] == ["t^2"]
    )
    out.append(("K[t]/(t^3), p0 = 0: (1, -(q1 p2 - p2 - p1 q2)/p1, free)", ok4, str(d4.particular)))

    F5 = ParamField(["q2", "p0", "p1", "p2"], RootSpec.cyclotomic(3))
    R5 = BaseRing(F5, 3)
    for k in (1, 2):
        tw5 = TwistData(R5, R5.parse(f"w^{k}*t + q2*t^2"), R5.parse("p0 + p1*t + p2*t^2"))
        stated = R5.parse(
            f"w^{k} + ((-p1*w^{2*k} + (p1 + q2*p0)*w^{k} + q2*p0)/p0)*t"
            f" + ((-(p2*p0 + p1^2 + p1*q2*p0)*w^{2*k} + p0*(p2 - p1*q2)*w^{k} + p1^2 + q2^2*p0^2 + p1*q2*p0)/p0)*t^2"
        )
        res = [delta_residual(tw5, stated, R5.monomial(j)) for j in range(3)]
        bad = [f"t^{j}: {r}" for j, r in enumerate(res) if not r.is_zero()]
        out.append((f"K[t]/(t^3), case 2, k = {k}: stated vector solves the delta condition", not bad, "; ".join(bad)))
    return out


def c4():
    out = []
    tw1 = twist(["q0", "q1", "p0"], None, "q0 + q1*t", "p0")
    d1 = solve_delta(tw1, [tw1.field.var("p0")]).particular
    bad1 = [x for x in default_triples(tw1, 4) if not jacobi_residual(tw1, d1, *x).is_zero()]
    out.append(("K[t] case 1, exponents <= 4", not bad1, f"{len(bad1)} nonzero triples"))

    tw2 = twist(["q1", "q2", "p1", "p2", "c"], 3, "q1*t + q2*t^2", "p1*t + p2*t^2")
    sol2 = solve_delta(tw2, [tw2.field.parse("q1*p1")])
    d2 = sol2.general([tw2.field.var("c")])
    bad2 = [x for x in default_triples(tw2) if not jacobi_residual(tw2, d2, *x).is_zero()]
    out.append(("K[t]/(t^3), p0 = 0 branch, full basis", not bad2, f"{len(bad2)} nonzero triples"))

    F3 = ParamField(["q2", "p0", "p1", "p2"], RootSpec.cyclotomic(3))
    R3 = BaseRing(F3, 3)
    for k in (1, 2):
        tw3 = TwistData(R3, R3.parse(f"w^{k}*t + q2*t^2"), R3.parse("p0 + p1*t + p2*t^2"))
        d3 = solve_delta(tw3, [F3.var("p0")]).particular
        bad3 = [x for x in default_triples(tw3) if not jacobi_residual(tw3, d3, *x).is_zero()]
        out.append((f"K[t]/(t^3), case 2, k = {k}, full basis", not bad3, f"{len(bad3)} nonzero triples"))
    return out


def c5():
    tab = instantiate_named("jackson").table.specialize({"p0": 1})
    F = tab.field
    q, z, one = F.var("q"), F.zero(), F.one()
    twisted = AbstractAlgebra.from_table(tab, alpha=[[q.inverse(), z, z], [z, one, z], [z, z, q]])
    ident = AbstractAlgebra.from_table(tab, alpha=[[one, z, z], [z, one, z], [z, z, one]])
    good = check_hom_lie(twisted)
    bad = check_hom_lie(ident)
    coords = [c for v in bad.residuals.values() for c in v if not c.is_zero()]
    divisible = bool(coords) and all(c.is_polynomial() and (c / (q - 1)).is_polynomial() for c in coords)
    return [
        ("alpha = diag(1/q, 1, q) passes", good.ok, str(good.residuals)),
        ("alpha = id fails", not bad.ok, ""),
        ("residual divisible by q - 1", divisible, ", ".join(str(c) for c in coords[:3])),
    ]


def c6():
    tw = twist(["q1", "q2", "p0", "p1", "p2"], 3, "q1*t + q2*t^2", "p0 + p1*t + p2*t^2")
    F = tw.field
    stated = {
        "e": [["0", "p0", "0"], ["0", "p1", "(q1+1)*p0"], ["0", "p2", "(q1+1)*p1 + q2*p0"]],
        "h": [["0", "0", "0"], ["0", "-2*p0", "0"], ["0", "-2*p1", "-2*(q1+1)*p0"]],
        "f": [["0", "0", "0"], ["0", "0", "0"], ["0", "-p0", "0"]],
    }
    out = []
    for g, rows in stated.items():
        m = matrix_rep(span(tw, generator_coeff(tw.ring, g)))
        same = all(m.entries[i][j] == F.parse(rows[i][j]) for i in range(3) for j in range(3))
        out.append((f"generic matrix of {g}", same, str(m)))
    an = twist([], 3, "t", "1")
    e, h, f = (matrix_rep(span(an, generator_coeff(an.ring, g))) for g in "ehf")
    out.append(("anomaly: hf - fh = -2f", h * f - f * h == f * -2, ""))
    out.append(("anomaly: he - eh = 2e", h * e - e * h == e * 2, ""))
    out.append(("anomaly: ef + 2fe = h", e * f + f * e * 2 == h, ""))
    wd = check_well_defined(an)
    out.append(("anomaly: well-definedness fails with residual 3", not wd.ok and [str(c) for c in wd.constraints] == ["3"], str(wd.constraints)))
    return out


def c7():
    out = []
    for N in (3, 4, 5, 6):
        tw = twist(["q1", "p0"], N, "q1*t", "p0")
        F = tw.field
        rep = check_well_defined(tw)
        expected = F.var("p0") * q_integer(N, F.var("q1"))
        nz = [c for c in rep.dsigma_residual if not c.is_zero()]
        out.append((f"N = {N}: residual p0*{{N}}_q1", rep.sigma_ok and nz == [expected], str(nz)))
        rooted = twist(["p0"], N, "w*t", "p0", RootSpec.cyclotomic(N))
        out.append((f"N = {N}: primitive root gives 0", check_well_defined(rooted).ok, ""))
    return out


def c8():
    jor = instantiate_named("jordanian")
    Fj = jor.relations[0].field
    heis = instantiate_named("heisenberg")
    Fh = heis.relations[0].field
    sol = instantiate_named("solvable")
    Fs = sol.relations[0].field
    ds_sol = derived_series(AbstractAlgebra.from_table(sol.table))
    ds_cls = derived_series(AbstractAlgebra.from_table(instantiate_named("classical").table))
    heis_rest = [r for r in heis.relations if r != words(Fh, "efh", "h*e - e*h - f")]
    return [
        ("Jordanian hf - fh = eps f^2", jor.relations[0] == words(Fj, "efh", "h*f - f*h - eps*f*f"), str(jor.relations[0])),
        ("Heisenberg he - eh = f", heis.relations[1] == words(Fh, "efh", "h*e - e*h - f"), str(heis.relations[1])),
        ("Heisenberg other brackets vanish", heis.table.hf == vec(Fh, 0, 0, 0) and heis.table.ef == vec(Fh, 0, 0, 0) and len(heis_rest) == 2, ""),
        ("solvable he - eh = -h - a f", sol.relations[1] == words(Fs, "efh", "h*e - e*h + h + a*f"), str(sol.relations[1])),
        ("solvable ef - fe = 2f", sol.relations[2] == words(Fs, "efh", "e*f - f*e - 2*f"), str(sol.relations[2])),
        ("solvable family: g^(2) = 0", ds_sol.solvable and ds_sol.dims[2] == 0, str(ds_sol.dims)),
        ("classical sl2 is not solvable", not ds_cls.solvable, str(ds_cls.dims)),
    ]


def c9():
    F = default_field()
    sys_ = uq_system(field=F)
    conf = check_confluence(sys_)
    counts = [count_normal_words(sys_, d) for d in range(7)]
    normal = check_normal_element(sys_, omega_q(field=F), omega_tau(field=F))
    central = check_normal_element(sys_, omega_q(field=F), {})
    return [
        ("confluent, single overlap hfe", conf.ok and [o.word for o in conf.overlaps] == ["hfe"], str([o.word for o in conf.overlaps])),
        ("normal words (d+1)(d+2)/2 for d <= 6", counts == [(d + 1) * (d + 2) // 2 for d in range(7)], str(counts)),
        ("Omega_q normal for tau(e) = e/q^2, tau(h) = h, tau(f) = q^2 f", normal.ok and normal.endomorphism_ok, ""),
        ("tau = id fails", not central.ok, ""),
    ]


def c10():
    F = default_field()
    q = F.var("q")
    dst = wq_system(field=F)
    stated = check_substitution_iso(uq_relations(field=F), wq_substitution(field=F, shift_sign=-1), dst, "efh", assumptions=[q - 1, q])
    dropped = check_substitution_iso(uq_relations(field=F), wq_substitution(field=F, shift=False), dst, "efh", assumptions=[q])
    return [
        ("stated substitution maps the q-relations to 0", stated.ok, "; ".join(str(r) for r in stated.residuals if not r.is_zero())),
        ("dropping the constant breaks it", not dropped.ok, ""),
    ]


def c11():
    F = default_field()
    q, p0 = F.var("q"), F.var("p0")
    a, b = wq_constants(q, p0)
    rep = check_ore_data(q, a, b)
    return [("stated (sigma, dsigma) consistent on B", rep.ok, f"{rep.sigma_residual}; {rep.derivation_residual}")]


def c12():
    F = default_field()
    q, p0 = F.var("q"), F.var("p0")
    h = 2 * p0 / (q - 1)
    stated_ef = (q + 1) * p0 * p0 / (q - 1)
    rep = check_scalar_rep(uq_system(field=F), {"e": stated_ef, "f": 1, "h": h})
    return [
        ("a' satisfies a6 = a1, a7 = a2", conformal_vector_check(conformal_vector_uq(field=F)), ""),
        ("Witten W_a vector satisfies a6 = a1, a7 = a2", conformal_vector_check(witten_vector()), ""),
        ("h = 2p0/(q-1), ef = (q+1)p0^2/(q-1) is a representation", rep.ok, "; ".join(str(r) for r in rep.residuals if not r.is_zero())),
    ]


def c13():
    G = ParamField(["p0"])
    rels = wq_relations(G.const(-1), G.var("p0"))
    grading = {"y": (1, 0), "x": (1, 1), "z": (1, 1)}
    expected = [words(G, "xyz", s) for s in ("y*z + z*y", "z*x - x*z", "x*y + y*x")]
    return [
        ("q = -1 relations are yz + zy, zx - xz, xy + yx", all(proportional(r, e) for r, e in zip(rels, expected)), str([str(r) for r in rels])),
        ("coloured commutators under the Z2^2 grading", check_color_relations(rels, grading), ""),
    ]


def c14():
    import test_properties as tp

    out = []
    names = sorted(n for n in dir(tp) if n.startswith("test_"))
    for n in names:
        try:
            getattr(tp, n)()
            out.append((n, True, f"{tp.N_EXAMPLES} examples"))
        except Exception as exc:  # a falsifying example
            out.append((n, False, f"{type(exc).__name__}: {exc}"[:300]))
    return out


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10, 11: c11, 12: c12, 13: c13, 14: c14}


def evaluate(n):
    subs = CRITERIA[n]()
    ok = all(s[1] for s in subs)
    RESULTS[n] = (ok, subs)
    return ok, subs


def line(n):
    ok, subs = RESULTS[n]
    failed = [s[0] for s in subs if not s[1]]
    tail = "" if ok else "  [failed: " + "; ".join(failed) + "]"
    return f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {TITLES[n]}{tail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, subs = evaluate(n)
    print(line(n))
    detail = "\n".join(f"  {'ok ' if s[1] else 'BAD'} {s[0]}: {s[2]}" for s in subs)
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for n in sorted(CRITERIA):
        ok, subs = evaluate(n)
        print(line(n), flush=True)
        for name, good, info in subs:
            if not good:
                print(f"      {name}: {info}")
        status |= not ok
    raise SystemExit(1 if status else 0)
