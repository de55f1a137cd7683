"""Verification suites, one per family of claims about spinal groups.

Each suite takes a group configuration, a seed and a :class:`Caps` record
and returns a :class:`SuiteReport`. Suites never raise on a failed claim;
they record it as a failing check with a counterexample when one exists.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import product

from .. import permgrp as P
from .. import tree as T
from .. import words as W
from ..errors import ReductionFailed, UnknownSuite
from ..spinal import (
    SpinalGroup, in_family_E, is_exceptional_G, is_torsion, reduce_commutator_length,
    replay, sections, theta1, theta2,
)
from ..zmodp import DefiningTuple, normalize_defining_tuple, satisfies_normal_form
from . import golden
from .config import GroupConfig
from .report import Check, SuiteReport, check, skip
from .sampling import (
    random_derived_word, random_raw, random_stabilizer_word, random_word,
)


@dataclass(frozen=True)
class Caps:
    samples: int = 200            # random words per property
    max_length: int = 10          # longest sampled word
    depth: int = 3                # portrait / quotient depth
    order_depth: int = 5          # deepest level for element orders
    step_cap: int = 12            # theta applications per contraction
    theta_samples: int = 200
    theta_max_length: int = 8
    normalize_samples: int = 20
    allow_family_e: bool = True   # still run contraction for the exceptional family


def _p_power(x: int, p: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


def _golden(cfg: GroupConfig, depth: int, quantity: str):
    value = golden.lookup(cfg.name, depth, quantity)
    return None if value is None else int(value) if value.lstrip("-").isdigit() else value


# ---------------------------------------------------------------------------


def suite_torsion(cfg: GroupConfig, G: SpinalGroup, rng: random.Random, caps: Caps) -> list[Check]:
    E = G.E
    out = []
    rule = all(sum(row) % G.p == 0 for row in E.rows)
    expected = _golden(cfg, 0, "is_torsion")
    out.append(check("is_torsion", is_torsion(E) == (rule if expected is None else bool(expected)),
                     is_torsion(E), rule if expected is None else bool(expected)))

    i = next((k + 1 for k, row in enumerate(E.rows) if sum(row) % G.p), 1)
    w = W.multiply(G.a(), G.b(i))
    orders = [T.order(T.eval_word(G, w, n)) for n in range(1, caps.order_depth + 1)]
    out.append(check(f"order(a*b{i}) is a p-power", all(_p_power(o, G.p) for o in orders), orders))
    if is_torsion(E):
        out.append(check(f"order(a*b{i}) non-decreasing", orders == sorted(orders), orders))
    else:
        increasing = all(x < y for x, y in zip(orders, orders[1:]))
        out.append(check(f"order(a*b{i}) strictly increasing", increasing, orders,
                         note="witnesses an element of infinite order"))
    frozen = [_golden(cfg, n, f"order_ab{i}") for n in range(1, caps.order_depth + 1)]
    if all(v is not None for v in frozen):
        out.append(check(f"order(a*b{i}) golden", orders == frozen, orders, frozen))
    return out


def suite_words(cfg, G, rng, caps) -> list[Check]:
    p, r = G.p, G.r
    relators = [[(0, p)]] + [[(i, p)] for i in range(1, r + 1)]
    relators += [[(i, 1), (j, 1), (i, -1), (j, -1)] for i in range(1, r + 1) for j in range(1, r + 1)]
    canon_bad = hom_bad = sub_bad = inv_bad = None
    for _ in range(caps.samples):
        raw = random_raw(G, rng.randrange(1, 2 * caps.max_length), rng)
        noisy = list(raw)
        for _ in range(3):
            pos = rng.randrange(len(noisy) + 1)
            noisy[pos:pos] = rng.choice(relators)
        if W.reduce_word(p, r, raw) != W.reduce_word(p, r, noisy):
            canon_bad = canon_bad or str(raw)
        u = random_word(G, rng.randrange(caps.max_length), rng)
        v = random_word(G, rng.randrange(caps.max_length), rng)
        uv = W.multiply(u, v)
        eu, ev, euv = W.exponents(u), W.exponents(v), W.exponents(uv)
        summed = W.ExponentVector((eu.eps_a + ev.eps_a) % p,
                                  tuple((x + y) % p for x, y in zip(eu.eps_b, ev.eps_b)))
        if euv != summed:
            hom_bad = hom_bad or f"{u} | {v}"
        if uv.length > u.length + v.length:
            sub_bad = sub_bad or f"{u} | {v}"
        if W.invert(u).length != u.length or not W.multiply(u, W.invert(u)).is_identity:
            inv_bad = inv_bad or str(u)
    spine_bad = None
    for _ in range(caps.samples):
        w = random_stabilizer_word(G, rng.randrange(caps.max_length + 1), rng)
        form = W.spine_form(w)
        ts = [t for t, _ in form.factors]
        if W.from_spine(form) != w or any(x == y for x, y in zip(ts, ts[1:])):
            spine_bad = spine_bad or str(w)
    return [
        check("reduce is canonical under relator insertion", canon_bad is None,
              counterexample=canon_bad),
        check("exponents is a homomorphism", hom_bad is None, counterexample=hom_bad),
        check("length is subadditive", sub_bad is None, counterexample=sub_bad),
        check("inverse preserves length", inv_bad is None, counterexample=inv_bad),
        check("spine form round trip", spine_bad is None, counterexample=spine_bad),
    ]


def _assembled(G, secs, depth):
    return T.from_sections([T.eval_word(G, s, depth - 1) for s in secs])


def suite_sections(cfg, G, rng, caps) -> list[Check]:
    p = G.p
    bad = {k: None for k in ("oracle", "sum", "ceil", "shorter", "eps", "shift", "power")}
    for _ in range(caps.samples):
        m = rng.randrange(caps.max_length + 1)
        w = random_stabilizer_word(G, m, rng)
        secs = sections(G, w)
        lens = [s.length for s in secs]
        for d in range(1, caps.depth + 1):
            if _assembled(G, secs, d) != T.eval_word(G, w, d):
                bad["oracle"] = bad["oracle"] or f"{w} at depth {d}"
        if sum(lens) > m:
            bad["sum"] = bad["sum"] or str(w)
        if max(lens) > -(-m // 2):
            bad["ceil"] = bad["ceil"] or str(w)
        if m > 1 and max(lens) >= m:
            bad["shorter"] = bad["shorter"] or str(w)
        eps = W.exponents(w).eps_b
        total = [sum(W.exponents(s).eps_b[i] for s in secs) % p for i in range(G.r)]
        if list(eps) != total:
            bad["eps"] = bad["eps"] or str(w)
        shifted = sections(G, W.conjugate(w, G.a()))
        if shifted != tuple(secs[(x - 1) % p] for x in range(p)):
            bad["shift"] = bad["shift"] or str(w)
        k = rng.randrange(1, p)
        h = random_stabilizer_word(G, rng.randrange(caps.max_length // 2 + 1), rng)
        x = W.multiply(G.a(k), h)
        hs = sections(G, h)
        want = [sum(W.exponents(s).eps_b[i] for s in hs) % p for i in range(G.r)]
        for s in sections(G, W.power(x, p)):
            if list(W.exponents(s).eps_b) != want:
                bad["power"] = bad["power"] or str(x)
    return [
        check(f"sections agree with portraits (depth <= {caps.depth})", bad["oracle"] is None,
              counterexample=bad["oracle"]),
        check("sum of section lengths <= length", bad["sum"] is None, counterexample=bad["sum"]),
        check("section length <= ceil(length/2)", bad["ceil"] is None, counterexample=bad["ceil"]),
        check("sections strictly shorter when length > 1", bad["shorter"] is None,
              counterexample=bad["shorter"]),
        check("b-exponent sums split over sections", bad["eps"] is None, counterexample=bad["eps"]),
        check("conjugating by a shifts sections by one", bad["shift"] is None,
              counterexample=bad["shift"]),
        check("sections of (a^k h)^p carry the b-exponents of h", bad["power"] is None,
              counterexample=bad["power"]),
    ]


def _normalized(G: SpinalGroup) -> SpinalGroup:
    if G.normalized:
        return G
    E, _ = normalize_defining_tuple(G.E)
    return SpinalGroup(E, G.label + " (normalized)")


def suite_theta(cfg, G, rng, caps) -> list[Check]:
    G = _normalized(G)
    out = []
    family = in_family_E(G.E)
    closure_bad = oracle_bad = None
    reached = 0
    fail_word = None
    for k in range(caps.theta_samples):
        target = rng.choice([0] + list(range(2, caps.theta_max_length + 1)))
        z = random_derived_word(G, target, rng.randrange(2**31))
        for fn in (theta1, theta2):
            y = fn(G, z)
            if not W.exponents(y).is_zero:
                closure_bad = closure_bad or str(z)
        if k < 20:
            d = caps.depth
            zp = T.eval_word(G, z, d + 1)
            a = T.rotation(G.p, d)
            z1 = zp.children[0]
            tail = T.identity(G.p, d)
            for c in zp.children[G.n_star:]:
                tail = T.compose(tail, c)
            want1 = T.compose(T.compose(T.invert(a), z1), T.compose(a, T.invert(z1)))
            want2 = T.compose(T.compose(T.invert(a), T.invert(tail)), T.compose(a, tail))
            if T.eval_word(G, theta1(G, z), d) != want1 or T.eval_word(G, theta2(G, z), d) != want2:
                oracle_bad = oracle_bad or str(z)
        if family and not caps.allow_family_e:
            continue
        try:
            res, trace = reduce_commutator_length(G, z, caps.step_cap, allow_family_e=True)
        except ReductionFailed:
            fail_word = fail_word or str(z)
            continue
        if res.length in (0, 2) and replay(G, z, trace) == res:
            reached += 1
        else:
            fail_word = fail_word or str(z)
    out.append(check("theta outputs have zero exponent vector", closure_bad is None,
                     counterexample=closure_bad))
    out.append(check("theta maps agree with portraits", oracle_bad is None,
                     counterexample=oracle_bad))
    if family and not caps.allow_family_e:
        out.append(skip("contraction to length 0 or 2", "group is in the exceptional family"))
    else:
        note = "group is in the exceptional family; not covered by the theorem" if family else ""
        out.append(check(f"contraction to length 0 or 2 within {caps.step_cap} steps",
                         reached == caps.theta_samples, f"{reached}/{caps.theta_samples}",
                         f"{caps.theta_samples}/{caps.theta_samples}", fail_word, note))
    return out


def suite_abelianization(cfg, G, rng, caps) -> list[Check]:
    p, r = G.p, G.r
    want = p ** (r + 1)
    out = []
    seen = []
    for n in (2, 3):
        Q = P.quotient(G, n)
        idx = P.index(Q, P.derived_subgroup(Q))
        seen.append(idx)
        out.append(check(f"|G_{n} : G_{n}'| = p^(r+1)", idx == want, idx, want))
    out.append(check("index agrees at n = 2 and n = 3", seen[0] == seen[1], seen))
    return out


def gamma3_sections_contained(G: SpinalGroup, n: int = 3):
    """Whether every ``(x, 1, ..., 1)``-type copy of ``gamma_3(G_{n-1})`` lies in
    ``gamma_3(stab(1))`` inside ``G_n``; returns ``(ok, counterexample)``."""
    p = G.p
    Q = P.quotient(G, n)
    S = P.level_stabilizer(Q, 1, p)
    g3S = P.gamma3(S)
    lower = P.gamma3(P.quotient(G, n - 1))
    for x in range(p):
        for h in lower.generators:
            if not g3S.contains(P.embed(h, p, n, (x,))):
                return False, f"generator at coordinate {x + 1}"
    return True, None


def suite_gamma3(cfg, G, rng, caps) -> list[Check]:
    if is_exceptional_G(G.E):
        return [skip("gamma3 section product", "exceptional group is excluded")]
    ok, bad = gamma3_sections_contained(G, caps.depth)
    return [check(f"gamma3(G_{caps.depth - 1})^p inside sections of gamma3(stab(1))", ok,
                  counterexample=bad)]


def special_group_indices(G: SpinalGroup, n: int) -> tuple[int, int]:
    """``(|G_n : K_n|, |G_n : K_n'|)`` with ``K`` the normal closure of ``b a^-1``."""
    Q = P.quotient(G, n)
    gen = P.word_perm(G, W.multiply(G.b(1), G.a(-1)), n)
    K = P.normal_closure(Q, [gen])
    Kd = P.normal_closure(Q, [P.comm(x, y) for i, x in enumerate(K.generators)
                              for y in K.generators[i + 1:]], within=K)
    return P.index(Q, K), P.index(Q, Kd)


def suite_special_group(cfg, G, rng, caps) -> list[Check]:
    if not is_exceptional_G(G.E):
        return [skip("special group indices", "only defined for the exceptional group")]
    out = []
    p = G.p
    for n in (2, 3):
        k, kd = special_group_indices(G, n)
        out.append(check(f"|G_{n} : K_{n}| = p", k == p, k, p))
        out.append(check(f"|G_{n} : K_{n}'| = p^(n+1)", kd == p ** (n + 1), kd, p ** (n + 1)))
    return out


def block_action(Q: P.PermGroup, k: int, p: int) -> P.PermGroup:
    n = P._leaf_depth(Q, p)
    block = p ** (n - k)
    gens = [tuple(g[v * block] // block for v in range(p**k)) for g in Q.generators]
    return P.PermGroup(p**k, gens)


def suite_transitivity(cfg, G, rng, caps) -> list[Check]:
    p = G.p
    out = []
    for n in range(1, caps.depth + 1):
        Q = P.quotient(G, n)
        levels = [k for k in range(1, n + 1) if not block_action(Q, k, p).is_transitive()]
        out.append(check(f"G_{n} transitive on levels 1..{n}", not levels, levels or "all"))
    for n in range(2, caps.depth + 1):
        Q = P.quotient(G, n)
        S = P.level_stabilizer(Q, 1, p)
        proj = P.section_group(S, p, (0,))
        lower = P.quotient(G, n - 1)
        out.append(check(f"first sections of stab_{{G_{n}}}(1) generate G_{n - 1}",
                         proj == lower, proj.order(), lower.order()))
    return out


def random_tuple(p: int, r: int, rng: random.Random) -> DefiningTuple:
    while True:
        rows = [[rng.randrange(p) for _ in range(p - 1)] for _ in range(r)]
        try:
            return DefiningTuple(p, rows)
        except ValueError:
            continue


def normalization_ok(E: DefiningTuple, depth: int = 3) -> tuple[bool, str]:
    E_new, w = normalize_defining_tuple(E)
    if not satisfies_normal_form(E_new):
        return False, f"{E} -> {E_new} misses the normal form"
    if not T.certify_normalization(E, E_new, w, depth):
        return False, f"{E} -> {E_new}: witness does not conjugate"
    return True, ""


def suite_normalize(cfg, G, rng, caps) -> list[Check]:
    out = []
    ok, why = normalization_ok(G.E, caps.depth)
    E_new, _ = normalize_defining_tuple(G.E)
    out.append(check("normal form and witness for this tuple", ok,
                     [list(r) for r in E_new.rows], counterexample=why or None))
    bad = None
    for _ in range(caps.normalize_samples):
        E = random_tuple(G.p, G.r, rng)
        ok, why = normalization_ok(E, caps.depth)
        if not ok:
            bad = bad or why
    out.append(check(f"{caps.normalize_samples} random tuples with p={G.p}, r={G.r}",
                     bad is None, counterexample=bad))
    return out


def rigid_contains_gamma3(G: SpinalGroup, n: int = 3):
    """Per level-1 vertex: does ``rist_{G_n}(u)_u`` contain ``gamma_3(G_{n-1})``?"""
    p = G.p
    Q = P.quotient(G, n)
    lower = P.gamma3(P.quotient(G, n - 1))
    result = []
    for x in range(p):
        R = P.rigid_stabilizer(Q, (x,), p)
        restricted = P.section_group(R, p, (x,))
        result.append(all(restricted.contains(h) for h in lower.generators))
    rigid = P.rigid_level_stabilizer(Q, 1, p)
    return result, P.index(Q, rigid)


def suite_branch(cfg, G, rng, caps) -> list[Check]:
    if is_exceptional_G(G.E):
        return [skip("rigid stabilizers", "exceptional group is excluded")]
    n = caps.depth
    per_vertex, idx = rigid_contains_gamma3(G, n)
    out = [check(f"rist(u)_u contains gamma3(G_{n - 1}) for level-1 u", all(per_vertex),
                 per_vertex)]
    frozen = _golden(cfg, n, "rigid_level1_index")
    out.append(check(f"|G_{n} : rist(1)| recorded", frozen is None or idx == frozen, idx, frozen))
    return out


SUITES = {
    "torsion": suite_torsion,
    "words": suite_words,
    "sections": suite_sections,
    "theta": suite_theta,
    "abelianization": suite_abelianization,
    "gamma3": suite_gamma3,
    "special_group": suite_special_group,
    "transitivity": suite_transitivity,
    "normalize": suite_normalize,
    "branch": suite_branch,
}


def run_suite(name: str, cfg: GroupConfig, seed: int = 0, caps: Caps | None = None) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    caps = caps or Caps()
    rng = random.Random(f"{name}:{seed}")
    start = time.perf_counter()
    checks = SUITES[name](cfg, cfg.group(), rng, caps)
    return SuiteReport(name, cfg.name, seed, checks, cfg.to_dict(), time.perf_counter() - start)
