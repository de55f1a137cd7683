"""Seeded random words.

All randomness goes through :class:`random.Random` (Mersenne Twister,
MT19937) seeded with an integer, so a seed names a reproducible stream.
"""

from __future__ import annotations

import random

from .. import words as W
from ..errors import Unreachable
from ..spinal import SpinalGroup
from ..words import ReducedWord


def _nonzero_vec(rng: random.Random, p: int, r: int) -> tuple[int, ...]:
    while True:
        v = tuple(rng.randrange(p) for _ in range(r))
        if any(v):
            return v


def random_word(G: SpinalGroup, m: int, rng: random.Random) -> ReducedWord:
    """Uniform-ish reduced word of length exactly ``m``."""
    p = G.p
    a = [rng.randrange(p)] + [rng.randrange(1, p) for _ in range(m - 1)] + ([rng.randrange(p)] if m else [])
    b = [_nonzero_vec(rng, p, G.r) for _ in range(m)]
    return ReducedWord(p, G.r, tuple(a), tuple(b))


def random_stabilizer_word(G: SpinalGroup, m: int, rng: random.Random) -> ReducedWord:
    """Reduced word of length ``m`` with zero ``a``-exponent sum."""
    w = random_word(G, m, rng)
    a = list(w.a_exponents)
    a[-1] = (a[-1] - sum(a)) % G.p
    return ReducedWord(G.p, G.r, tuple(a), w.b_syllables)


def random_raw(G: SpinalGroup, n: int, rng: random.Random) -> list[tuple[int, int]]:
    return [(rng.randrange(G.r + 1), rng.randrange(-G.p, G.p)) for _ in range(n)]


def random_derived_word(G: SpinalGroup, target_length: int, seed: int, tries: int = 2000) -> ReducedWord:
    """A word with zero exponent vector and length exactly ``target_length``.

    Built as a product of commutators of short random words; attempts that
    overshoot are discarded. Length 1 is impossible for such words.
    """
    if target_length == 0:
        return G.one()
    if target_length == 1:
        raise Unreachable("words with zero exponent vector never have length 1")
    rng = random.Random(seed)
    for _ in range(tries):
        w = G.one()
        while w.length < target_length:
            x = random_word(G, rng.randrange(0, 2), rng)
            y = random_word(G, rng.randrange(1, 3), rng)
            w = W.multiply(w, W.commutator(x, y))
        if w.length == target_length:
            return w
    raise Unreachable(f"no derived word of length {target_length} after {tries} tries")
