"""Acceptance criteria 1-10.  Each test prints one ``criterion N: PASS|FAIL`` line."""
import time

import pytest

from klr import perm as P
from klr.cli import RunConfig, cmd_verify
from klr.cyclotomic import DominantWeight, cyclotomic_dims
from klr.fixedpoint import FixedPointModel
from klr.gradeddim import check_triangularity, tau_degree, verify_series
from klr.poly import VarTable
from klr.presentation import KLRAlgebra, build_Pbar_dblprime, build_Pbar_prime, build_Qbar
from klr.quiver import RootVector, derive_datum

from conftest import CORPUS, alphas, corpus_quiver

RESULTS: dict = {}


@pytest.fixture
def report(capsys):
    start = time.perf_counter()

    def emit(n, ok, detail, limit):
        secs = time.perf_counter() - start
        ok = ok and secs < limit
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}  ({secs:.1f}s, limit {limit}s)"
        RESULTS[n] = line
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def models(m):
    for name in CORPUS:
        q = corpus_quiver(name)
        for alpha in alphas(q, m):
            yield name, FixedPointModel(KLRAlgebra(q, alpha))


def test_criterion_01_datum(report):
    expected = {"a1": [[2]], "jordan": [[0]], "a2": [[2, -1], [-1, 2]], "two_loop": [[-2]]}
    got = {n: [list(r) for r in derive_datum(corpus_quiver(n)).matrix] for n in expected}
    report(1, got == expected, f"datum matrices {got}", 1)


def test_criterion_02_relations(report):
    counts = {"exact": 0, "randomized": 0}
    failures = []
    for m, backend in [(1, "exact"), (2, "exact"), (3, "exact"), (4, "exact"), (5, "randomized")]:
        for name, F in models(m):
            for inst in F.alg.relation_catalogue():
                cert = F.verify_relation(inst, backend=backend, points=3) if backend == "randomized" \
                    else F.verify_relation(inst)
                counts[backend] += 1
                if not cert.ok:
                    failures.append((name, str(inst)))
    report(2, not failures, f"{counts['exact']} exact + {counts['randomized']} randomized instances, "
                            f"{len(failures)} failures", 600)


def test_criterion_03_localization_square(report):
    checked, failures = 0, []
    for m, backend in [(1, "exact"), (2, "exact"), (3, "exact"), (4, "randomized")]:
        for name, F in models(m):
            cert = F.cross_check_theorem(maxdeg=6, backend=backend)
            checked += cert.count
            if not cert.ok:
                failures.append((name, cert.failure))
    report(3, not failures, f"{checked} generator/monomial pairs, {len(failures)} failures", 600)


def test_criterion_04_lambda_two_paths(report):
    checked, bad = 0, 0
    for m in (1, 2, 3, 4):
        for _, F in models(m):
            for w in F.perms:
                for j in range(1, m):
                    for w2 in (w, P.times_simple(w, j)):
                        if F.admissible(w, w2, j):
                            checked += 1
                            bad += F.lambda_sj(w, w2, j, "direct") != F.lambda_sj(w, w2, j)
    report(4, bad == 0 and checked > 0, f"{checked} admissible triples, {bad} disagreements", 60)


def test_criterion_05_correctors(report):
    ok, built = True, 0
    for name in CORPUS:
        q = corpus_quiver(name)
        d = derive_datum(q)
        vt = VarTable(3, q.edge_ids, ("u", "v", "w"))
        for i in q.vertices:
            p1, p2 = build_Pbar_prime(d, i, vt), build_Pbar_dblprime(d, i, vt)
            built += 2
            if d.ell(i) == 0 and not (p1.is_zero() and p2.is_zero()):
                ok = False
            for j in q.vertices:
                if j != i:
                    build_Qbar(d, i, j, vt)
                    built += 1
    report(5, ok, f"{built} correctors divided exactly", 1)


def test_criterion_06_degree_coherence(report):
    checked, bad = 0, 0
    for name in CORPUS:
        q = corpus_quiver(name)
        d = derive_datum(q)
        for alpha in alphas(q, 4):
            for nu in KLRAlgebra(q, alpha).sequences:
                for w in P.all_perms(4):
                    checked += 1
                    bad += len({tau_degree(d, w, nu, word) for word in P.all_reduced_words(w)}) != 1
    report(6, bad == 0, f"{checked} (w, coloring) pairs, {bad} word-dependent", 60)


def test_criterion_07_graded_dimensions(report):
    blocks, bad = 0, []
    for m in (1, 2, 3):
        for name, F in models(m):
            for a in F.alg.sequences:
                for b in F.alg.sequences:
                    rep = verify_series(F, a, b, width=8, seeds=(0, 1, 2))
                    blocks += 1
                    if not rep.match:
                        bad.append((name, a, b))
    report(7, not bad, f"{blocks} blocks over 9 degrees at 3 seeds, {len(bad)} mismatches", 900)


def test_criterion_08_triangularity(report):
    total = nontrivial = nonzero = bad = 0
    for m in (2, 3):
        for _, F in models(m):
            for c in check_triangularity(F, seed=0):
                total += 1
                nontrivial += not c.trivial
                nonzero += c.difference_nonzero
                bad += not c.ok
    report(8, bad == 0 and nonzero > 0,
           f"{total} reduced pairs, {nontrivial} with distinct words, {nonzero} nonzero differences, {bad} outside span",
           300)


def test_criterion_09_cyclotomic_desk(report):
    cases = [("a1", {"i": 1}, 1), ("a1", {"i": 2}, 0), ("jordan", {"i": 1}, 1)]
    got, ok = [], True
    for name, alpha, want in cases:
        q = corpus_quiver(name)
        rep = cyclotomic_dims(q, RootVector.of(q, alpha), DominantWeight.of(q, {"i": 1}), 10, seeds=(0, 1, 2))
        got.append((name, alpha, rep.total_quotient, sorted(set(rep.seed_totals.values()))))
        ok &= rep.total_quotient == want and rep.stable
    report(9, ok, f"totals {got}", 300)


def test_criterion_10_fault_injection(report):
    code, data = cmd_verify(RunConfig(quiver="a2_fault.json", command="verify", alpha='{"i": 1, "j": 1}'))
    f = data["first_failure"] or {}
    ok = code == 1 and bool(f.get("counterexample"))
    report(10, ok, f"exit {code}, first failure {f.get('instance')} with {f.get('counterexample')}", 60)
