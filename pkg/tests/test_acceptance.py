"""Acceptance gate: ten exact-residual criteria, one PASS/FAIL line each.

Run with pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from qappell.algebra import ZPoly
from qappell.appell import (
    AppellCase,
    SYSTEM_EQUATIONS,
    falsify_family,
    functional_equation_residual,
    resolve_a3_factor,
    solution_family,
    structure_crosscheck,
    structure_residual,
    system_residual,
)
from qappell.functionals import dual_basis_pairing, moments_from_ttrr, pair
from qappell.lattice import BadIndex, LatticeParam, alpha_n, apply_Dq, apply_Sq, gamma_n
from qappell.ops import alsc_ttrr, generate_ops
from qappell.pearson import PearsonData, pearson_residual, ttrr_from_pearson
from qappell.suites import identities_suite, monomial_suite

QUARTER = LatticeParam(F(1, 2))  # q = 1/4
FOUR = LatticeParam(F(2))  # q = 4
CASES = [AppellCase(c, s) for c in (1, 2) for s in (1, -1)]

RESULTS: dict = {}


def _zero(values) -> bool:
    return all(x == 0 for x in values)


def criterion_1():
    """Product rules, S^2 identity, commutation and functional identities on random inputs."""
    start = time.perf_counter()
    failing = []
    for v in (F(1, 2), F(2, 3), F(3, 2)):
        for rep in identities_suite(LatticeParam(v), degree=10, trials=50, seed=0):
            if not rep.passed:
                failing.append(f"{rep.check}@v={v}")
    elapsed = time.perf_counter() - start
    ok = not failing and elapsed < 30
    return ok, f"3 lattices x 50 trials, {elapsed:.1f}s" + (f", failing {failing}" if failing else "")


def criterion_2():
    """Top coefficients of D z^n and S z^n for n <= 15."""
    bad = [f"{r.check}@v={v}" for v in (F(1, 2), F(3, 2)) for r in monomial_suite(LatticeParam(v), 15) if not r.passed]
    return not bad, "n <= 15 at v = 1/2, 3/2" + (f", failing {bad}" if bad else "")


def criterion_3():
    """S D P_n = gamma_n alpha_{n-1} P_{n-1} on the (1,-1) and (-1,1) families."""
    bad = []
    for lp in (QUARTER, FOUR):
        for a, b in ((1, -1), (-1, 1)):
            fam = generate_ops(alsc_ttrr(a, b, lp, 20))
            for n in range(1, 21):
                lhs = apply_Sq(apply_Dq(fam[n], lp), lp)
                if lhs != gamma_n(n, lp) * alpha_n(n - 1, lp) * fam[n - 1]:
                    bad.append((lp.q, a, b, n))
    return not bad, "n <= 20, q in {1/4, 4}" + (f", failing {bad[:5]}" if bad else "")


def criterion_4():
    """D S P_n = (gamma_{2n}/2) P_{n-1} for the Rogers q^2- and q^-2-Hermite families."""
    lp = QUARTER
    bad = []
    for base in (LatticeParam(lp.q), LatticeParam(1 / lp.q)):  # base q^2 and q^-2
        fam = generate_ops(alsc_ttrr(0, 0, base, 20))
        for n in range(1, 21):
            if apply_Dq(apply_Sq(fam[n], lp), lp) != gamma_n(2 * n, lp) / 2 * fam[n - 1]:
                bad.append((base.q, n))
    return not bad, "n <= 20 at q = 1/4" + (f", failing {bad[:5]}" if bad else "")


def criterion_5():
    """Structure relations hold, or the cross-check pinpoints the deviating printed coefficient."""
    notes, ok = [], True
    for ac in CASES:
        ttrr, ks = solution_family(ac, QUARTER, 19)
        fam = generate_ops(ttrr)
        deviating = set()
        for which in ("Dx2", "DxSx", "Sx2"):
            for n in range(16):
                try:
                    res = structure_residual(ac, which, fam, ks, ttrr, QUARTER, n)
                except BadIndex:
                    continue
                if res != 0:
                    bad = structure_crosscheck(ac, which, fam, ks, ttrr, QUARTER, n)
                    names = {b[0] for b in bad}
                    if not names or any(name.startswith("P_") for name in names):
                        ok = False
                    deviating |= {(which, name) for name in names}
        if deviating:
            supported = resolve_a3_factor(ks, ttrr, fam, QUARTER, range(16)) if ac.case == 1 else []
            # the identified coefficient must be the only obstruction
            if deviating != {("DxSx", "a3")} or not supported:
                ok = False
            else:
                for n in range(2, 16):
                    if structure_residual(ac, "DxSx", fam, ks, ttrr, QUARTER, n, a3_factor=supported[0]) != 0:
                        ok = False
            notes.append(f"case {ac.case} s={ac.sign_text}: {sorted(deviating)} deviates, data supports factor {supported}")
        else:
            notes.append(f"case {ac.case} s={ac.sign_text}: exact")
    return ok, "; ".join(notes)


def criterion_6():
    """Ten difference equations on the solutions, and the falsification sweep."""
    bad = []
    for ac in CASES:
        ttrr, ks = solution_family(ac, QUARTER, 20)
        for eq in SYSTEM_EQUATIONS:
            for n in range(16):
                try:
                    if system_residual(ac, eq, ks, ttrr, QUARTER, n) != 0:
                        bad.append((ac.case, ac.sign, eq, n))
                except BadIndex:
                    continue
    sweep = {}
    for r in (F(0), F(1, 7), F(-1, 7), F(1, 3), F(-1, 3)):
        rep = falsify_family(r, QUARTER, 10)
        sweep[r] = any(not x.is_zero for x in rep.residuals if x.label == "S5")
    ok = not bad and not sweep[F(0)] and falsify_family(0, QUARTER, 10).passed
    ok = ok and all(sweep[r] for r in sweep if r != 0)
    return ok, f"systems {'exact' if not bad else bad[:5]}; S5 nonzero for r != 0: {all(sweep[r] for r in sweep if r)}"


def criterion_7():
    """phi = (1/2)(q^{1/2} - q^{-1/2})(z^2 - 1), psi = z at q = 1/4."""
    lp = QUARTER
    q = lp.q
    a = F(1, 2) * (lp.v - 1 / lp.v)
    pd = PearsonData.of(a, 0, -a, 1, 0)
    ttrr = ttrr_from_pearson(pd, lp, 20)
    ttrr_ok = all(ttrr.B[n] == 0 for n in range(16)) and all(
        ttrr.c(n + 1) == F(1, 4) * (1 - q ** (n + 1)) * (1 + q ** n) for n in range(16)
    )
    residual_ok = _zero(pearson_residual(pd, moments_from_ttrr(ttrr), lp)[:19])
    detail = f"recurrence reproduced: {ttrr_ok} (C_1 = {ttrr.c(1)}, expected {F(1, 4) * (1 - q) * 2}); residual m <= 18 zero: {residual_ok}"
    return ttrr_ok and residual_ok, detail


def criterion_8():
    """Eight functional equations with matching solution moments."""
    bad = []
    for ac in CASES:
        u = moments_from_ttrr(solution_family(ac, QUARTER, 21)[0])
        for which in (1, 2, 3, 4):
            if not _zero(functional_equation_residual(ac, which, u, QUARTER, 18)):
                bad.append((ac.case, ac.sign, which))
    return not bad, "m <= 18, both cases, both signs" + (f", failing {bad}" if bad else "")


def criterion_9():
    """Orthogonality, norms and the dual basis."""
    families = {f"case{ac.case}{ac.sign_text}": solution_family(ac, QUARTER, 22)[0] for ac in CASES}
    families["rogers"] = alsc_ttrr(0, 0, QUARTER, 22)
    families["asc(1/3,1/2)"] = alsc_ttrr(F(1, 3), F(1, 2), LatticeParam(F(2, 3)), 22)
    bad = []
    for name, t in families.items():
        fam, u = generate_ops(t), moments_from_ttrr(t)
        norm = F(1)
        for n in range(11):
            if n:
                norm *= t.c(n)
            if pair(u, fam[n] * fam[n]) != norm:
                bad.append((name, "norm", n))
            bad += [(name, "orth", j, n) for j in range(n) if pair(u, fam[j] * fam[n]) != 0]
        for n in range(9):
            for j in range(9):
                if dual_basis_pairing(fam, u, n, j) != (1 if n == j else 0):
                    bad.append((name, "dual", n, j))
    return not bad, f"{len(families)} families" + (f", failing {bad[:5]}" if bad else "")


def criterion_10():
    """Every verify subcommand twice through the installed CLI: identical bytes, exit 0."""
    bad = []
    for suite in ("identities", "appell", "system", "structure", "pearson", "functional", "falsify"):
        cmd = [sys.executable, "-m", "qappell", "verify", suite, "--seed", "7"]
        runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
        if runs[0].stdout != runs[1].stdout or any(r.returncode != 0 for r in runs) or not runs[0].stdout:
            bad.append((suite, [r.returncode for r in runs]))
    return not bad, "7 subcommands" + (f", failing {bad}" if bad else "")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(i, ok, detail):
    return f"ACCEPTANCE {i:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("index", range(1, 11))
def test_criterion(index):
    ok, detail = CRITERIA[index - 1]()
    RESULTS[index] = (ok, detail)
    assert ok, _line(index, ok, detail)


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        failed += not ok
        print(_line(i, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
