import random

import pytest

from klr.poly import MultiPoly, random_poly
from klr.polrep import PolVector, PolynomialRep, verify_relation_on_rep
from klr.presentation import E, ONE, T, X, Combination, GeneratorWord, KLRAlgebra, chain, term
from klr.quiver import RootVector

from conftest import CORPUS, alphas, corpus_quiver


def setup(name, alpha):
    q = corpus_quiver(name)
    alg = KLRAlgebra(q, RootVector.of(q, alpha))
    vt = alg.vt
    xs = [MultiPoly.x(vt, k) for k in range(1, alg.m + 1)]
    return alg, PolynomialRep(alg), xs


def test_real_vertex_tau_is_divided_difference():
    alg, rep, (x1, x2) = setup("a1", {"i": 2})
    nu = ("i", "i")
    out = rep.act_generator(T(1, nu), PolVector.single(nu, x1))
    assert out == PolVector.single(nu, MultiPoly.const(alg.vt, -1))


def test_jordan_tau_examples():
    alg, rep, (x1, x2) = setup("jordan", {"i": 2})
    nu = ("i", "i")
    h = MultiPoly.hbar(alg.vt, "a")
    assert rep.act_generator(T(1, nu), PolVector.single(nu, alg.one())).is_zero()
    assert rep.act_generator(T(1, nu), PolVector.single(nu, x2)) == PolVector.single(nu, x1 - x2 + h)


def test_a2_tau_moves_component():
    alg, rep, (x1, x2) = setup("a2", {"i": 1, "j": 1})
    h = MultiPoly.hbar(alg.vt, "a")
    out = rep.act_generator(T(1, ("i", "j")), PolVector.single(("i", "j"), alg.one()))
    assert out == PolVector.single(("j", "i"), x1 - x2 + h)


def test_words_empty_and_orthogonal_idempotents():
    alg, rep, (x1, x2) = setup("a2", {"i": 1, "j": 1})
    v = PolVector.single(("i", "j"), x1 * x2 + x2) + PolVector.single(("j", "i"), x1)
    assert rep.act_word(ONE, v) == v
    assert rep.act_word(GeneratorWord.of(E(("i", "j")), E(("j", "i"))), v).is_zero()
    assert rep.act_word(GeneratorWord.of(X(1, ("i", "j"))), v) == PolVector.single(("i", "j"), x1 * (x1 * x2 + x2))


def test_real_vertex_r2_annihilates_monomials():
    alg, rep, _ = setup("a1", {"i": 2})
    (inst,) = alg.relation_catalogue(("r2",))
    report = verify_relation_on_rep(alg, inst, maxdeg=8)
    assert report.ok and report.checked > 40


def test_jordan_rx_difference_is_minus_P():
    alg, rep, (x1, x2) = setup("jordan", {"i": 2})
    nu = ("i", "i")
    h = MultiPoly.hbar(alg.vt, "a")
    diff = term(alg.one(), chain(nu, [("tau", 1), ("x", 1)])) - term(alg.one(), chain(nu, [("x", 2), ("tau", 1)]))
    rng = random.Random(3)
    for _ in range(10):
        f = random_poly(alg.vt, rng, 4)
        v = PolVector.single(nu, f)
        assert rep.act(diff, v) == PolVector.single(nu, -(x1 - x2 + h) * f)


def test_jordan_braid_residual():
    alg, rep, _ = setup("jordan", {"i": 3})
    insts = list(alg.relation_catalogue(("braid",)))
    assert len(insts) == 1
    assert verify_relation_on_rep(alg, insts[0], maxdeg=6).ok


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_all_relations_hold_on_polynomials(name, m):
    q = corpus_quiver(name)
    for alpha in alphas(q, m):
        alg = KLRAlgebra(q, alpha)
        rep = PolynomialRep(alg)
        for inst in alg.relation_catalogue():
            report = rep.verify_relation(inst, maxdeg=5, trials=6)
            assert report.ok, report.to_json()


def test_sign_flipped_Q_is_caught_on_polynomials():
    q = corpus_quiver("a2_fault")
    alg = KLRAlgebra(q, RootVector.of(q, {"i": 1, "j": 1}))
    reports = [verify_relation_on_rep(alg, inst, maxdeg=2, trials=2) for inst in alg.relation_catalogue(("r2",))]
    bad = [r for r in reports if not r.ok]
    assert bad and "lhs" in bad[0].to_json()["counterexample"]
