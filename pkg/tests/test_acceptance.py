"""Acceptance gate: one test per criterion, each with its exact tolerance and
runtime bound. Run ``python tests/test_acceptance.py`` for the bare pass/fail
lines; under pytest the same lines are printed in the terminal summary.
"""

from __future__ import annotations

import random
import sys
import time
from itertools import product

import pytest

from spinalgroups import permgrp as P
from spinalgroups import tree as T
from spinalgroups import words as W
from spinalgroups.errors import InvalidTuple, ReductionFailed
from spinalgroups.harness import golden
from spinalgroups.harness.config import BUILTIN, STANDARD_TEST_SET
from spinalgroups.harness.sampling import random_derived_word, random_stabilizer_word
from spinalgroups.harness.suites import (
    gamma3_sections_contained, random_tuple, rigid_contains_gamma3, special_group_indices,
    block_action, normalization_ok,
)
from spinalgroups.spinal import SpinalGroup, in_family_E, is_torsion, reduce_commutator_length, sections
from spinalgroups.zmodp import DefiningTuple, normalize_defining_tuple

RESULTS: dict[int, tuple[bool, str]] = {}


def group(name: str) -> SpinalGroup:
    return BUILTIN[name].group()


def all_tuples(p: int, r: int):
    for rows in product(product(range(p), repeat=p - 1), repeat=r):
        try:
            yield DefiningTuple(p, rows)
        except InvalidTuple:
            continue


def timed(limit: float):
    def wrap(fn):
        def run():
            start = time.perf_counter()
            ok, detail = fn()
            elapsed = time.perf_counter() - start
            within = elapsed < limit
            return ok and within, f"{detail}; {elapsed:.1f}s (limit {limit:.0f}s)"
        run.__name__ = fn.__name__
        return run
    return wrap


@timed(10)
def torsion_criterion():
    swept = mismatches = 0
    for r in (1, 2):
        for E in all_tuples(3, r):
            swept += 1
            if is_torsion(E) != all(sum(row) % 3 == 0 for row in E.rows):
                mismatches += 1
    exc, gs = group("exceptional-3"), group("gupta-sidki-3")
    exc_orders = [T.order(T.eval_word(exc, exc.a() * exc.b(1), n)) for n in range(1, 6)]
    gs_orders = [T.order(T.eval_word(gs, gs.a() * gs.b(1), n)) for n in range(1, 6)]
    frozen = [int(golden.lookup("exceptional-3", n, "order_ab1")) for n in range(1, 6)]
    increasing = all(x < y for x, y in zip(exc_orders, exc_orders[1:]))
    stable = all(o == 9 for o in gs_orders[2:])
    ok = mismatches == 0 and increasing and stable and exc_orders == frozen
    return ok, (f"{swept} tuples, {mismatches} mismatches; exceptional orders {exc_orders}; "
                f"Gupta-Sidki orders {gs_orders}")


@timed(30)
def section_length_criterion():
    violations = words = 0
    for name in STANDARD_TEST_SET:
        G = group(name)
        rng = random.Random(f"lengths:{name}")
        for _ in range(1000):
            m = rng.randrange(11)
            w = random_stabilizer_word(G, m, rng)
            lens = [s.length for s in sections(G, w)]
            words += 1
            if max(lens) > -(-m // 2) or sum(lens) > m or (m > 1 and max(lens) >= m):
                violations += 1
    return violations == 0, f"{words} words, {violations} violations"


@timed(60)
def oracle_criterion():
    mismatches = checks = 0
    for name in STANDARD_TEST_SET:
        G = group(name)
        rng = random.Random(f"oracle:{name}")
        for _ in range(500):
            w = random_stabilizer_word(G, rng.randrange(9), rng)
            secs = sections(G, w)
            for d in range(1, 5):
                got = T.from_sections([T.eval_word(G, s, d - 1) for s in secs])
                checks += 1
                if got != T.eval_word(G, w, d):
                    mismatches += 1
    return mismatches == 0, f"{checks} comparisons, {mismatches} mismatches"


def contraction_groups():
    gs3 = group("gupta-sidki-3")
    E, _ = normalize_defining_tuple(DefiningTuple(3, [(1, 0), (1, 1)]))
    p3r2 = SpinalGroup(E, "p3-r2")
    return [gs3, p3r2, group("gupta-sidki-5")]


@timed(300)
def theta_criterion():
    parts = []
    ok = True
    for G in contraction_groups():
        rng = random.Random(f"theta:{G.label}")
        reached = 0
        for _ in range(200):
            z = random_derived_word(G, rng.choice([0, 2, 4, 6, 8]), rng.randrange(2**31))
            try:
                res, _ = reduce_commutator_length(G, z, 12, allow_family_e=in_family_E(G.E))
            except ReductionFailed:
                continue
            reached += res.length in (0, 2)
        ok &= reached == 200
        parts.append(f"{G.label} {reached}/200")
    return ok, ", ".join(parts)


@timed(120)
def abelianization_criterion():
    parts = []
    ok = True
    for name in STANDARD_TEST_SET:
        G = group(name)
        idx = [P.index(Q, P.derived_subgroup(Q)) for Q in (P.quotient(G, 2), P.quotient(G, 3))]
        want = G.p ** (G.r + 1)
        ok &= idx == [want, want]
        parts.append(f"{name} {idx} vs {want}")
    return ok, "; ".join(parts)


@timed(120)
def special_group_criterion():
    G = group("exceptional-3")
    got = {n: special_group_indices(G, n) for n in (2, 3)}
    ok = all(got[n] == (3, 3 ** (n + 1)) for n in (2, 3))
    return ok, f"(|G_n:K_n|, |G_n:K_n'|) = {got}"


@timed(180)
def gamma3_criterion():
    parts = []
    ok = True
    for name in ("gupta-sidki-3", "p3-r2"):
        contained, _ = gamma3_sections_contained(group(name), 3)
        ok &= contained
        parts.append(f"{name} {contained}")
    return ok, ", ".join(parts)


@timed(60)
def transitivity_criterion():
    bad = []
    for name in STANDARD_TEST_SET:
        G = group(name)
        for n in (1, 2, 3):
            Q = P.quotient(G, n)
            if not all(block_action(Q, k, G.p).is_transitive() for k in range(1, n + 1)):
                bad.append(f"{name} transitivity n={n}")
            if n >= 2:
                S = P.level_stabilizer(Q, 1, G.p)
                if P.section_group(S, G.p, (0,)) != P.quotient(G, n - 1):
                    bad.append(f"{name} fractality n={n}")
    return not bad, "all groups, levels <= 3" if not bad else ", ".join(bad)


@timed(120)
def normalization_criterion():
    failures = []
    total = 0
    for p, r in ((3, 1), (3, 2), (5, 1), (5, 2), (5, 3)):
        rng = random.Random(f"normalize:{p}:{r}")
        for _ in range(100):
            total += 1
            ok, why = normalization_ok(random_tuple(p, r, rng), 3)
            if not ok:
                failures.append(why)
    return not failures, f"{total} tuples, {len(failures)} failures"


@timed(180)
def rigid_criterion():
    parts = []
    ok = True
    for name in ("gupta-sidki-3", "p3-r2"):
        per_vertex, idx = rigid_contains_gamma3(group(name), 3)
        frozen = int(golden.lookup(name, 3, "rigid_level1_index"))
        ok &= all(per_vertex) and idx == frozen
        parts.append(f"{name} contains={per_vertex} index={idx}")
    return ok, "; ".join(parts)


CRITERIA = {
    1: ("torsion criterion", torsion_criterion),
    2: ("section-length bounds", section_length_criterion),
    3: ("section/portrait oracle equivalence", oracle_criterion),
    4: ("theta contraction", theta_criterion),
    5: ("abelianization index", abelianization_criterion),
    6: ("exceptional group indices", special_group_criterion),
    7: ("gamma3 sections", gamma3_criterion),
    8: ("transitivity and fractality", transitivity_criterion),
    9: ("normalization", normalization_criterion),
    10: ("rigid stabilizers", rigid_criterion),
}


def line(k: int) -> str:
    ok, detail = RESULTS[k]
    return f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {CRITERIA[k][0]}: {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    RESULTS[k] = CRITERIA[k][1]()
    print(line(k))
    assert RESULTS[k][0], line(k)


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        RESULTS[k] = CRITERIA[k][1]()
        print(line(k), flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
