import pytest

from klr.cyclotomic import DominantWeight, a_lambda, cyclotomic_dims
from klr.poly import MultiPoly, VarTable
from klr.quiver import QuiverParseError, RootVector

from conftest import corpus_quiver


def run(name, alpha, lam, D=10, seeds=(0, 1, 2)):
    q = corpus_quiver(name)
    return cyclotomic_dims(q, RootVector.of(q, alpha), DominantWeight.of(q, lam), D, seeds=seeds)


@pytest.mark.parametrize("level", [0, 1, 2])
def test_a_lambda_is_monic_power(level):
    q = corpus_quiver("a1")
    vt = VarTable(1, (), ("u",))
    assert a_lambda("i", DominantWeight.of(q, {"i": level}), vt) == MultiPoly.x(vt, 1, level)


def test_weight_validation():
    q = corpus_quiver("a1")
    with pytest.raises(QuiverParseError):
        DominantWeight.of(q, {"i": -1})
    with pytest.raises(QuiverParseError):
        DominantWeight.of(q, {"k": 1})


@pytest.mark.parametrize("name,alpha,lam,total", [
    ("a1", {"i": 1}, {"i": 1}, 1),
    ("a1", {"i": 2}, {"i": 1}, 0),
    ("jordan", {"i": 1}, {"i": 1}, 1),
    ("two_loop", {"i": 1}, {"i": 1}, 1),
])
def test_desk_cases(name, alpha, lam, total):
    rep = run(name, alpha, lam)
    assert rep.total_quotient == total
    assert rep.stable
    assert set(rep.seed_totals.values()) == {total}


def test_height_one_quotient_sits_in_degree_zero():
    rep = run("a1", {"i": 1}, {"i": 1})
    assert [(d, q) for d, _, _, q in rep.degrees if q] == [(0, 1)]


def test_level_two_nilhecke_is_a_graded_matrix_algebra():
    # R^{2 Lambda}(2 alpha) is 2x2 matrices over a point, graded q^-2 + 2 + q^2
    rep = run("a1", {"i": 2}, {"i": 2})
    assert [(d, q) for d, _, _, q in rep.degrees if q] == [(-2, 1), (0, 2), (2, 1)]


def test_a2_fundamental_weight():
    rep = run("a2", {"i": 1, "j": 1}, {"i": 1}, D=6)
    assert rep.total_quotient == 1 and rep.stable


def test_quotient_bounded_by_full():
    rep = run("jordan", {"i": 2}, {"i": 1}, D=8)
    for _, full, ideal, quot in rep.degrees:
        assert 0 <= quot <= full and ideal >= 0


def test_large_weight_leaves_low_degrees_untouched():
    rep = run("a1", {"i": 2}, {"i": 4}, D=4)
    low = [row for row in rep.degrees if row[0] <= 0]
    assert all(q == full for _, full, _, q in low)


def test_blocks_add_up_to_the_total():
    rep = run("a2", {"i": 1, "j": 1}, {"i": 1, "j": 1}, D=6, seeds=(0,))
    per_block = sum(q for rows in rep.blocks.values() for _, _, _, q in rows)
    assert per_block == rep.total_quotient == 6


def test_caps():
    with pytest.raises(ValueError):
        run("a1", {"i": 5}, {"i": 1})
    with pytest.raises(ValueError):
        run("a1", {"i": 1}, {"i": 1}, D=12)


def test_report_json_echoes_seeds():
    data = run("a1", {"i": 1}, {"i": 1}, D=4, seeds=(5, 6, 7)).to_json()
    assert data["seeds"] == [5, 6, 7] and data["total_quotient"] == 1 and data["stable"]
