import random

import pytest

from spinalgroups import tree as T
from spinalgroups import words as W
from spinalgroups.errors import DepthMismatch
from spinalgroups.harness.sampling import random_raw, random_word
from spinalgroups.spinal import SpinalGroup
from spinalgroups.zmodp import CoordinateChange, DefiningTuple, normalize_defining_tuple

from conftest import small_groups


def is_p_power(x, p):
    while x % p == 0:
        x //= p
    return x == 1


def test_eval_a_depth1(gs3):
    f = T.eval_word(gs3, gs3.a(), 1)
    assert f.label == (1, 2, 0)
    assert all(c.is_identity for c in f.children)


def test_eval_b_depth0_is_trivial(gs3):
    assert T.eval_word(gs3, gs3.b(1), 0).is_identity


def test_eval_b_depth2(gs3):
    f = T.eval_word(gs3, gs3.b(1), 2)
    assert f.label == (0, 1, 2)
    assert f.children[0] == T.rotation(3, 1, 1)
    assert f.children[1] == T.rotation(3, 1, 2)
    assert f.children[2].is_identity          # b1 at depth 1
    assert T.dump(f) == "1.2.3[2.3.1,3.1.2,1.2.3]"


def test_compose_inverse_and_a_order(gs3, rng):
    for n in range(1, 4):
        f = T.eval_word(gs3, random_word(gs3, 6, rng), n)
        assert T.compose(f, T.invert(f)).is_identity
        assert T.power(T.rotation(3, n), 3).is_identity


def test_depth_mismatch():
    with pytest.raises(DepthMismatch):
        T.compose(T.identity(3, 2), T.identity(3, 3))


def test_homomorphism(rng):
    for G in small_groups():
        for _ in range(40):
            raw = random_raw(G, rng.randrange(12), rng)
            w = W.reduce_word(G.p, G.r, raw)
            for n in (1, 2, 3):
                assert T.eval_word(G, w, n) == T.eval_raw(G, raw, n)


def test_compose_matches_word_product(gs3):
    f = T.compose(T.eval_word(gs3, gs3.a(), 2), T.eval_word(gs3, gs3.b(1), 2))
    assert f == T.eval_word(gs3, gs3.a() * gs3.b(1), 2)


def test_leaf_perm_of_a():
    perm = T.to_leaf_perm(T.rotation(3, 2))
    assert perm == tuple((i + 3) % 9 for i in range(9))
    assert T.to_leaf_perm(T.identity(3, 2)) == tuple(range(9))


def test_leaf_perm_right_action(gs3, rng):
    # u^(fg) = (u^f)^g
    for _ in range(20):
        f = T.eval_word(gs3, random_word(gs3, 5, rng), 3)
        g = T.eval_word(gs3, random_word(gs3, 5, rng), 3)
        pf, pg, pfg = T.to_leaf_perm(f), T.to_leaf_perm(g), T.to_leaf_perm(T.compose(f, g))
        assert all(pfg[u] == pg[pf[u]] for u in range(27))


def test_leaf_perm_round_trip_and_faithful(rng):
    seen = {}
    for G in small_groups():
        for _ in range(200):
            n = rng.randrange(1, 4)
            f = T.eval_word(G, random_word(G, rng.randrange(8), rng), n)
            perm = T.to_leaf_perm(f)
            assert T.from_leaf_perm(perm, G.p) == f
            key = (G.p, n, perm)
            assert seen.setdefault(key, f) == f
    assert len(seen) > 100


def test_orders(gs3, exc3):
    for n in range(1, 5):
        assert T.order(T.rotation(3, n)) == 3
    # b1 stabilizes the first level, so it only becomes visible from depth 2
    assert T.eval_word(gs3, gs3.b(1), 1).is_identity
    for n in range(2, 6):
        assert T.order(T.eval_word(gs3, gs3.b(1), n)) == 3
    orders = [T.order(T.eval_word(exc3, exc3.a() * exc3.b(1), n)) for n in range(1, 6)]
    assert all(x < y for x, y in zip(orders, orders[1:]))


def test_orders_are_p_powers(rng):
    for G in small_groups():
        for _ in range(30):
            f = T.eval_word(G, random_word(G, rng.randrange(10), rng), 3)
            assert is_p_power(T.order(f), G.p)


def test_order_matches_repeated_product(rng):
    G = small_groups()[1]
    for _ in range(20):
        f = T.eval_word(G, random_word(G, 6, rng), 3)
        k, g = 1, f
        while not g.is_identity:
            g, k = T.compose(g, f), k + 1
        assert T.order(f) == k


def test_witness_identity():
    w = CoordinateChange(3, matrix=((1,),))
    assert T.witness_automorphism(w, 3).is_identity


def test_witness_root_label():
    w = CoordinateChange(5, power=1, position=2, multiplier=3, matrix=((1,),))
    f = T.witness_automorphism(w, 1)
    # 1->3, 2->1, 3->4, 4->2, 5->5 in 1-based letters
    assert [y + 1 for y in f.label] == [3, 1, 4, 2, 5]


def test_witness_conjugates_b():
    E = DefiningTuple(5, [(0, 2, 0, 0)])
    E_new, w = normalize_defining_tuple(E)
    F = T.witness_automorphism(w, 3)
    old = T.power(T.directed(5, E.rows[0], 3), w.matrix[0][0])
    assert T.compose(T.compose(T.invert(F), old), F) == T.directed(5, E_new.rows[0], 3)


def test_exceptional_scaling():
    # b^2 for row (1,1) is the generator for row (2,2): same cyclic subgroup
    G = SpinalGroup.from_rows(3, [(1, 1)])
    H = SpinalGroup.from_rows(3, [(2, 2)])
    assert T.eval_word(G, G.b(1, 2), 4) == T.eval_word(H, H.b(1), 4)
