import random

import pytest

from spinalgroups import tree as T
from spinalgroups import words as W
from spinalgroups.errors import NotInDerived, NotInStabilizer, NotNormalized, ReductionFailed
from spinalgroups.harness.sampling import random_derived_word, random_stabilizer_word, random_word
from spinalgroups.spinal import (
    SpinalGroup, in_family_E, is_exceptional_G, is_torsion, phi, reduce_commutator_length,
    replay, sections, theta1, theta2,
)
from spinalgroups.zmodp import DefiningTuple

from conftest import small_groups


def assembled(G, w, depth):
    return T.from_sections([T.eval_word(G, s, depth - 1) for s in sections(G, w)])


def test_sections_of_b(gs3):
    assert sections(gs3, gs3.b(1)) == (gs3.a(1), gs3.a(2), gs3.b(1))
    assert phi(gs3, gs3.b(1), 3) == gs3.b(1)
    assert phi(gs3, gs3.b(1), 1) == gs3.a(1)


def test_sections_of_identity(gs3):
    assert all(s.is_identity for s in sections(gs3, gs3.one()))
    assert all(phi(gs3, gs3.one(), j).is_identity for j in range(1, 4))


def test_sections_need_stabilizer(gs3):
    with pytest.raises(NotInStabilizer):
        sections(gs3, gs3.a())


def test_sections_of_commutator(gs3):
    z = W.commutator(gs3.a(), gs3.b(1))
    secs = sections(gs3, z)
    assert sum(s.length for s in secs) <= 2
    assert max(s.length for s in secs) <= 1
    for d in (1, 2, 3):
        assert assembled(gs3, z, d) == T.eval_word(gs3, z, d)


def test_oracle_agreement_all_groups():
    rng = random.Random(5)
    for G in small_groups():
        for _ in range(60):
            w = random_stabilizer_word(G, rng.randrange(9), rng)
            for d in (1, 2, 3, 4):
                assert assembled(G, w, d) == T.eval_word(G, w, d), (G, w, d)


def test_section_length_bounds():
    rng = random.Random(6)
    for G in small_groups():
        for _ in range(200):
            m = rng.randrange(11)
            w = random_stabilizer_word(G, m, rng)
            lens = [s.length for s in sections(G, w)]
            assert sum(lens) <= m
            assert max(lens) <= -(-m // 2)
            if m > 1:
                assert max(lens) < m


def test_exponent_sums_split():
    rng = random.Random(7)
    for G in small_groups():
        for _ in range(100):
            w = random_stabilizer_word(G, rng.randrange(10), rng)
            secs = sections(G, w)
            for i in range(G.r):
                total = sum(W.exponents(s).eps_b[i] for s in secs) % G.p
                assert W.exponents(w).eps_b[i] == total


def test_shift_direction():
    rng = random.Random(8)
    for G in small_groups():
        for _ in range(50):
            w = random_stabilizer_word(G, rng.randrange(8), rng)
            before = sections(G, w)
            after = sections(G, W.conjugate(w, G.a()))
            assert after == tuple(before[(j - 1) % G.p] for j in range(G.p))


def test_pth_power_sections():
    rng = random.Random(9)
    for G in small_groups():
        for _ in range(40):
            k = rng.randrange(1, G.p)
            h = random_stabilizer_word(G, rng.randrange(5), rng)
            hs = sections(G, h)
            want = [sum(W.exponents(s).eps_b[i] for s in hs) % G.p for i in range(G.r)]
            for s in sections(G, W.power(G.a(k) * h, G.p)):
                assert list(W.exponents(s).eps_b) == want


# --- theta maps ---------------------------------------------------------------

def test_theta_of_identity(gs3):
    assert theta1(gs3, gs3.one()).is_identity
    assert theta2(gs3, gs3.one()).is_identity


def test_theta_against_portraits(gs3):
    b = gs3.b(1)
    z = W.commutator(b, W.conjugate(b, gs3.a()))
    zp = T.eval_word(gs3, z, 4)
    a = T.rotation(3, 3)
    z1, z3 = zp.children[0], zp.children[2]
    assert gs3.n_star == 2
    want1 = T.compose(T.compose(T.invert(a), z1), T.compose(a, T.invert(z1)))
    want2 = T.compose(T.compose(T.invert(a), T.invert(z3)), T.compose(a, z3))
    assert T.eval_word(gs3, theta1(gs3, z), 3) == want1
    assert T.eval_word(gs3, theta2(gs3, z), 3) == want2


def test_theta1_trivial_when_first_section_is_a_power(gs3):
    z = W.commutator(gs3.b(1), W.conjugate(gs3.b(1), gs3.a()))
    rng = random.Random(1)
    hits = 0
    for _ in range(200):
        z = random_derived_word(gs3, rng.choice([2, 4, 6]), rng.randrange(10**6))
        if sections(gs3, z)[0].length == 0:
            assert theta1(gs3, z).is_identity
            hits += 1
    assert hits > 0


def test_theta2_uses_last_section_when_n_star_is_p_minus_1():
    G = SpinalGroup.from_rows(5, [(1, 2, 3, 4)])
    assert G.n_star == 4
    rng = random.Random(2)
    for _ in range(20):
        z = random_derived_word(G, 4, rng.randrange(10**6))
        assert theta2(G, z) == W.commutator(G.a(), sections(G, z)[4])


def test_theta_preconditions(gs3):
    with pytest.raises(NotInDerived):
        theta1(gs3, gs3.b(1))
    G = SpinalGroup.from_rows(5, [(0, 2, 0, 0)])
    z = W.commutator(G.a(), G.b(1))
    with pytest.raises(NotNormalized):
        theta2(G, z)


def test_theta_closure():
    rng = random.Random(4)
    for G in small_groups():
        for _ in range(50):
            z = random_derived_word(G, rng.choice([2, 4, 6]), rng.randrange(10**6))
            assert W.exponents(theta1(G, z)).is_zero
            assert W.exponents(theta2(G, z)).is_zero


# --- contraction ----------------------------------------------------------------

def test_reduce_trivial_cases(gs3):
    assert reduce_commutator_length(gs3, gs3.one()) == (gs3.one(), [])
    z = W.commutator(gs3.a(), gs3.b(1))
    assert reduce_commutator_length(gs3, z) == (z, [])


def test_reduce_length_six(gs3):
    rng = random.Random(10)
    for _ in range(20):
        z = random_derived_word(gs3, 6, rng.randrange(10**6))
        res, trace = reduce_commutator_length(gs3, z, 12)
        assert res.length in (0, 2)
        assert replay(gs3, z, trace) == res
        assert len(trace) <= 12


def test_reduce_cap_exhausted(gs3):
    z = random_derived_word(gs3, 8, 3)
    with pytest.raises(ReductionFailed):
        reduce_commutator_length(gs3, z, 0)


def test_reduce_refuses_family_E():
    G = SpinalGroup.from_rows(5, [(1, 0, 0, 0), (1, 0, 0, 1)])
    z = random_derived_word(G, 4, 1)
    with pytest.raises(ValueError):
        reduce_commutator_length(G, z)


# --- predicates -----------------------------------------------------------------

def test_torsion_examples():
    assert is_torsion(DefiningTuple(3, [(1, 2)]))
    assert not is_torsion(DefiningTuple(3, [(1, 1)]))
    assert is_torsion(DefiningTuple(5, [(1, 1, 1, 2), (1, 2, 3, 4)]))


def test_family_E_examples():
    assert in_family_E(DefiningTuple(5, [(1, 0, 0, 0), (1, 0, 0, 1)]))
    assert not in_family_E(DefiningTuple(3, [(1, 2)]))
    assert not in_family_E(DefiningTuple(5, [(1, 0, 0, 0)]))


def test_exceptional_examples():
    assert is_exceptional_G(DefiningTuple(3, [(1, 1)]))
    assert is_exceptional_G(DefiningTuple(3, [(2, 2)]))
    assert not is_exceptional_G(DefiningTuple(3, [(1, 2)]))
    assert not is_exceptional_G(DefiningTuple(3, [(1, 0), (1, 1)]))


def test_n_star():
    assert SpinalGroup.from_rows(5, [(1, 4, 0, 0)]).n_star == 2
    assert SpinalGroup.from_rows(3, [(1, 0), (1, 1)]).n_star == 1
