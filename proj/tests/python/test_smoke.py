from fractions import Fraction
from itertools import product

import pytest

mixmds = pytest.importorskip("mixmds")


def test_tower_and_subfield():
    t = mixmds.Tower(4, 16)
    assert (t.q1, t.q2, t.m) == (4, 16, 2)
    assert t.alpha == Fraction(1, 2)
    sub = t.subfield_elements()
    assert len(sub) == 4
    assert all(t.mul(a, b) in sub for a in sub for b in sub)
    with pytest.raises(mixmds.MixmdsError, match="NotASubfield"):
        mixmds.Tower(8, 16)


def test_rs_distance_and_decoding():
    t = mixmds.Tower(2, 16)
    code = mixmds.RsCode(t, 6, 3)
    assert code.min_distance() == code.d == 4
    c = code.encode([1, 2, 3])
    assert code.contains(c)
    r = list(c)
    r[0] ^= 5
    assert code.decode(r) == c
    assert code.decode(r, [1]) == c


def test_mixed_subcode_size():
    t = mixmds.Tower(4, 16)
    sub = mixmds.MixedMdsCode(mixmds.RsCode(t, 4, 2), [0, 1], [1])
    assert sub.cardinality() == 4 * 16
    assert sub.min_distance() == 3
    assert sub.log_q2_size() == Fraction(3, 2)


def test_balance_is_good():
    g = mixmds.Graph("random_regular", 10, 4, seed=3)
    res = mixmds.balance(g, "1/4", "1/2", seed=5)
    assert res["good"]
    assert res["reversals"] == res["initial_excess"]
    assert res["left_weight_violations"] == 0
    assert mixmds.verify_good(g, "1/4", "1/2", res["bits"])


def test_expander_rate_and_distance():
    g = mixmds.Graph("complete", 3, 3)
    t = mixmds.Tower(2, 4)
    code = mixmds.ExpanderCode(g, t, "2/3", "2/3", "1/3", 1)
    rate = code.rate()
    assert rate["rate_c"] >= rate["rate_c_bound"]
    assert rate["outer_rate"] >= rate["outer_rate_bound"]
    od = code.min_outer_distance()
    assert od["relative"] >= Fraction(2, 3)
    again = mixmds.ExpanderCode.from_manifest(code.manifest())
    assert again.basis() == code.basis()


def test_decoder_and_monte_carlo():
    g = mixmds.Graph("complete", 3, 3)
    code = mixmds.ExpanderCode(g, mixmds.Tower(2, 4), "1/3", "1/3", 0, 1)
    word = [1] * code.length
    assert code.is_codeword(word)
    res = code.decode(word)
    assert res["outcome"] == "success" and res["rounds_used"] == 1
    bad = list(word)
    bad[4] = 2
    assert code.decode(bad)["codeword"] == word
    cells = code.monte_carlo([0, 1], [0, 2], 25, 7)
    assert cells[0]["rate"] == 1.0
    assert [(c["t"], c["rho"]) for c in cells] == list(product([0, 1], [0, 2]))


def test_tradeoff_tables():
    row = mixmds.sweep2(["0.1"], ["0.7"])[0]
    assert row["Delta"] == 4000
    assert row["rate_chain"] == 0.625
    assert mixmds.rate_bound_eq5("7/10", "9/10", "1/20", "1/2") > Fraction(7, 10) - Fraction(1, 10)
    value, vacuous = mixmds.dist_bound_eq6(0.5, 0.5, 0.0)
    assert value == 0.5 and not vacuous
    cmp = mixmds.compare_sec2e("1/10", "9/10", 4000, 4096)
    assert cmp["rate_loss"] == cmp["rate_loss_closed"] == Fraction(1, 17)
    rows = mixmds.sweep3(["0.1"], ["0.9"], ["0.02"], ["1/2"], ["0.99"], ["1/2"])
    assert rows[0]["gap"] > 0
