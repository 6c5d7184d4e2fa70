"""
Acceptance criteria 1-9.  Each test records a PASS/FAIL line that is printed
at the end of the run (see conftest.py) and also echoed immediately with -s.
"""

import time
from itertools import combinations

import pytest

from conftest import A_SET, ACCEPTANCE, B_SET, P15, P15_D3_12, P15_DV
from descentsym import qsym
from descentsym.bijections import all_partitions, psi_general, symmetric_bijection
from descentsym.campaign import structured_families
from descentsym.permcore import (
    PermMultiset, all_perms, conjugacy_class, delta, descent_set, enumerate_partitions,
    inverse_j_class, multiply, multiset_product, rho, sigma, similar, u_star,
)
from descentsym.qsym import f_to_m, partitions, q_of, to_m_basis
from descentsym.sweep import sweep_subsets
from descentsym.tableaux import (
    knuth_class, promote, promote_v, rs, standard_tableaux, tableau_descents,
)
from descentsym.verifier import CONDITIONS, check_closure, check_er_conjecture, check_theorem
from descentsym.verifier import r_s_of


def record(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def sweeps():
    return {n: sweep_subsets(n) for n in range(1, 5)}


def all_syt(n):
    return [T for lam in partitions(n) for T in standard_tableaux(lam)]


# ---------------------------------------------------------------------------

def test_criterion_1_counterexample():
    t0 = time.perf_counter()
    A, B = PermMultiset(A_SET), PermMultiset(B_SET)
    want_m = {(2, 2): 1, (2, 1, 1): 1, (1, 1, 1, 1): 2}
    want_ab = {(3, 1): 1, (2, 2): 1, (1, 1, 2): 2, (1, 2, 1): 2, (2, 1, 1): 2, (1, 1, 1, 1): 4}
    qa = to_m_basis(f_to_m(q_of(A))).terms
    qb = to_m_basis(f_to_m(q_of(B))).terms
    qab = f_to_m(q_of(multiset_product(A, B))).terms
    elapsed = time.perf_counter() - t0
    ok = qa == want_m and qb == want_m and qab == want_ab and elapsed < 1.0
    record(1, ok, f"Q(A)=Q(B)={qa}, Q(AB)={qab}, {elapsed * 1000:.1f} ms")


def test_criterion_2_j_class_table():
    table = {(1, 2, 3, 4), (1, 3, 2, 4), (1, 3, 4, 2), (3, 1, 2, 4), (3, 1, 4, 2), (3, 4, 1, 2)}
    got = set(inverse_j_class(4, {2}))
    d = delta(((2, 5, 8), (1, 3, 4), (6, 7, 9)))
    prod = multiply((9, 1, 4, 5, 2, 8, 7, 3, 6), d)
    ok = (got == table and d == (4, 1, 5, 6, 2, 7, 8, 3, 9)
          and prod == (5, 9, 2, 8, 1, 7, 3, 4, 6))
    record(2, ok, f"R_2^-1 has {len(got)} elements, delta_U={d}, pi*delta_U={prod}")


def test_criterion_3_promotion_examples():
    a = promote(P15, 3, 12)
    b = promote_v(P15, (3, 9, 10))
    ok = a == P15_D3_12 and b == P15_DV
    record(3, ok, f"d_3^12 match={a == P15_D3_12}, d_V match={b == P15_DV}")


def test_criterion_4_theorem_agreement(sweeps):
    # direct route on every subset of S_3
    perms = all_perms(3)
    direct_bad = 0
    for k in range(7):
        for subset in combinations(perms, k):
            direct_bad += not check_theorem(PermMultiset(subset, n=3)).agree
    # linear sweep on every subset of S_1 .. S_4
    sweep_bad = sum(len(sweeps[n].disagreements) for n in sweeps)
    # structured families through the direct route
    fam_bad = fam_count = 0
    for n in range(1, 6):
        for _, B in structured_families(n):
            fam_count += 1
            fam_bad += not check_theorem(B).agree
    total4 = sweeps[4].total
    ok = direct_bad == 0 and sweep_bad == 0 and fam_bad == 0 and total4 == 2 ** 24
    record(4, ok, f"S_3 direct 64 subsets, sweep {total4} S_4 subsets "
                  f"({sweeps[4].wall_time:.1f} s), {fam_count} structured families: "
                  f"{direct_bad + sweep_bad + fam_bad} disagreements")


def test_criterion_5_fineness():
    bad = []
    checked = 0
    for n in range(1, 7):
        for lam in partitions(n):
            checked += 1
            if not qsym.classify(conjugacy_class(n, lam), n).fine:
                bad.append(("conjugacy", n, lam))
            for P in standard_tableaux(lam):
                checked += 1
                c = qsym.classify(knuth_class(P), n)
                if not (c.fine and c.schur.terms == {lam: 1}):
                    bad.append(("knuth", P))
    record(5, not bad, f"{checked} classes, {len(bad)} failures")


def test_criterion_6_d_class_commutation():
    violations, count = [], 0
    for n in range(1, 6):
        for label, B in structured_families(n):
            if not qsym.classify(B, n).fine:
                continue
            count += 1
            ok, J, _ = check_er_conjecture(B)
            if not ok:
                violations.append((label, J))
    record(6, not violations, f"{count} fine families, {len(violations)} violations")


def test_criterion_7_closure(sweeps):
    sweep_bad = sum(len(sweeps[n].closure_violations) for n in sweeps)
    n_sym = sum(len(sweeps[n].symmetric) for n in sweeps)
    # direct cross-check on the symmetric subsets of S_3
    direct_bad = 0
    for mask in sweeps[3].symmetric:
        B = PermMultiset(sweeps[3].decode(mask), n=3)
        direct_bad += not all(check_closure(B, J) for J in [(), (1,), (2,), (1, 2)])
    ok = sweep_bad == 0 and direct_bad == 0
    record(7, ok, f"{n_sym} symmetric subsets (n <= 4), all J, both sides: "
                  f"{sweep_bad + direct_bad} violations")


def test_criterion_8_bijections(sweeps):
    t0 = time.perf_counter()
    n = 5
    general_bad = 0
    parts5 = list(enumerate_partitions(n))
    for P in all_syt(n):
        K = knuth_class(P)
        for U in parts5:
            d = delta(U)
            stars = u_star(U)
            images = [psi_general(U, pi) for pi in K]
            if sorted(images) != list(K):
                general_bad += 1
                continue
            for pi, t in zip(K, images):
                src, dst = set(descent_set(pi)), set(descent_set(t))
                if any((u in src) != (d[u - 1] in dst) for u in stars):
                    general_bad += 1
                    break
    t_general = time.perf_counter() - t0

    sym_bad = sym_count = max_steps = 0
    bound_ok = True
    for m in range(1, 5):
        parts = all_partitions(m)
        for mask in sweeps[m].symmetric:
            B = PermMultiset(sweeps[m].decode(mask), n=m)
            if not len(B):
                continue
            sym_count += 1
            bij = symmetric_bijection(None, B, partitions=parts)
            max_steps = max(max_steps, bij.max_steps)
            bound_ok &= bij.max_steps <= bij.bound
            sym_bad += not bij.check()
    t_sym = time.perf_counter() - t0 - t_general
    ok = general_bad == 0 and sym_bad == 0 and bound_ok and len(parts5) == 541
    record(8, ok, f"psi_general: {len(all_syt(5))} Knuth classes x {len(parts5)} partitions, "
                  f"{general_bad} failures ({t_general:.1f} s); psi_symmetric: {sym_count} "
                  f"symmetric B, {sym_bad} failures, max steps {max_steps} ({t_sym:.1f} s)")


def test_criterion_9_descent_laws():
    t0 = time.perf_counter()
    failures = {}

    bad = 0
    for n in range(1, 6):
        for U in enumerate_partitions(n):
            d = delta(U)
            base, stars = set(descent_set(d)), set(u_star(U))
            for pi in all_perms(n):
                des = set(descent_set(pi))
                bad += set(descent_set(rho(U, pi))) != base | (des & stars)
                bad += set(descent_set(sigma(U, pi))) != base | {
                    u for u in stars if d[u - 1] in des}
    failures["des char (n<=5)"] = bad

    bad = 0
    for n in range(1, 7):
        for Q in all_syt(n):
            des = set(tableau_descents(Q))
            for a in range(1, n + 1):
                for b in range(a + 2, n + 1):
                    out = set(tableau_descents(promote(Q, a, b)))
                    bad += sum((u in des) != (u - 1 in out) for u in range(a + 1, b))
    failures["u iff u-1 (n<=6)"] = bad

    bad = 0
    for n in range(1, 7):
        for Q in all_syt(n):
            des = set(tableau_descents(Q))
            for k in range(0, n - 1):
                for u in range(1, k + 2):
                    out = promote(promote(Q, u + 1, k + 2), u, k + 1)
                    bad += (u in des) != (k + 1 in set(tableau_descents(out)))
    failures["v,v+1 (n<=6)"] = bad

    bad = 0
    for n in range(2, 7):
        two_block = [U for U in enumerate_partitions(n) if len(U) == 2]
        for Q in all_syt(n):
            des = set(tableau_descents(Q))
            for U in two_block:
                d = delta(U)
                out = set(tableau_descents(promote_v(Q, U[1])))
                bad += sum((u in des) != (d[u - 1] in out) for u in u_star(U))
    failures["Knuth Dsym (n<=6)"] = bad

    bad = 0
    for n in range(1, 8):
        for pi in all_perms(n):
            bad += descent_set(pi) != tableau_descents(rs(pi).q)
    failures["RS descents (n<=7)"] = bad

    bad = 0
    for n in range(1, 7):
        for U in enumerate_partitions(n):
            r, s = r_s_of(U)
            bad += not similar(r, s, n)
    failures["r(U)~s(U) (n<=6)"] = bad

    elapsed = time.perf_counter() - t0
    ok = not any(failures.values()) and elapsed < 600
    summary = ", ".join(f"{k}: {v}" for k, v in failures.items())
    record(9, ok, f"failures {summary}; {elapsed:.1f} s")


def test_conditions_named():
    assert len(CONDITIONS) == 5
