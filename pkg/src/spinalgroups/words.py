"""Reduced words in the free product ``H = <â> * <b̂_1, ..., b̂_r>``.

``H`` is ``C_p`` free product ``C_p^r``. Every element has a unique normal
form ``â^{s_1} B_1 â^{s_2} ... B_m â^{s_{m+1}}`` where each ``B_j`` is a
nonzero vector of ``b``-exponents and the interior ``s_j`` are nonzero.
The number ``m`` of ``B``-syllables is the length of the word.

Conventions: ``x^g = g^{-1} x g`` and ``[x, y] = x^{-1} y^{-1} x y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from typing import Iterable, Sequence

from .errors import ContextMismatch, NotInL

BVec = tuple[int, ...]


@dataclass(frozen=True)
class ReducedWord:
    p: int
    r: int
    a_exponents: tuple[int, ...]
    b_syllables: tuple[BVec, ...]

    def __post_init__(self):
        m = len(self.b_syllables)
        if len(self.a_exponents) != m + 1:
            raise ValueError("need exactly one more a-exponent than b-syllables")
        if any(s % self.p == 0 for s in self.a_exponents[1:m]):
            raise ValueError("interior a-exponents must be nonzero")
        for beta in self.b_syllables:
            if len(beta) != self.r or not any(x % self.p for x in beta):
                raise ValueError(f"bad b-syllable {beta}")

    # construction ---------------------------------------------------------

    @classmethod
    def identity(cls, p: int, r: int) -> ReducedWord:
        return cls(p, r, (0,), ())

    @classmethod
    def gen(cls, p: int, r: int, index: int, exponent: int = 1) -> ReducedWord:
        """``index`` 0 is ``â``; ``index`` i >= 1 is ``b̂_i``."""
        return reduce_word(p, r, [(index, exponent)])

    @classmethod
    def bvec(cls, p: int, r: int, beta: Sequence[int]) -> ReducedWord:
        return reduce_syllables(p, r, [tuple(x % p for x in beta)])

    # basic data -----------------------------------------------------------

    @property
    def length(self) -> int:
        return len(self.b_syllables)

    @property
    def is_identity(self) -> bool:
        return not self.b_syllables and self.a_exponents[0] == 0

    def syllables(self) -> list:
        """Flat alternating list: ints are ``â``-powers, tuples are ``b``-vectors."""
        out: list = []
        for s, beta in zip(self.a_exponents, self.b_syllables):
            if s:
                out.append(s)
            out.append(beta)
        if self.a_exponents[-1]:
            out.append(self.a_exponents[-1])
        return out

    def raw(self) -> list[tuple[int, int]]:
        """Generator-power list ``[(index, exponent), ...]`` that reduces back to self."""
        out = []
        for syl in self.syllables():
            if isinstance(syl, int):
                out.append((0, syl))
            else:
                out.extend((i + 1, e) for i, e in enumerate(syl) if e)
        return out

    def __mul__(self, other: ReducedWord) -> ReducedWord:
        return multiply(self, other)

    def __invert__(self) -> ReducedWord:
        return invert(self)

    def __pow__(self, k: int) -> ReducedWord:
        return power(self, k)

    def __str__(self):
        parts = []
        for index, e in self.raw():
            name = "a" if index == 0 else f"b{index}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def _check(u: ReducedWord, v: ReducedWord):
    if (u.p, u.r) != (v.p, v.r):
        raise ContextMismatch(f"(p, r) = {(u.p, u.r)} vs {(v.p, v.r)}")


def reduce_syllables(p: int, r: int, syllables: Iterable) -> ReducedWord:
    """Normal form of a flat syllable list (ints for ``â``-powers, tuples for ``b``)."""
    stack: list = []
    for syl in syllables:
        if isinstance(syl, int):
            syl %= p
            if not syl:
                continue
        else:
            syl = tuple(x % p for x in syl)
            if not any(syl):
                continue
        if stack and isinstance(stack[-1], int) == isinstance(syl, int):
            top = stack.pop()
            if isinstance(syl, int):
                merged = (top + syl) % p
                if merged:
                    stack.append(merged)
            else:
                merged = tuple((x + y) % p for x, y in zip(top, syl))
                if any(merged):
                    stack.append(merged)
        else:
            stack.append(syl)
    a_exps: list[int] = []
    bs: list[BVec] = []
    pending = 0
    for syl in stack:
        if isinstance(syl, int):
            pending = syl
        else:
            a_exps.append(pending)
            bs.append(syl)
            pending = 0
    a_exps.append(pending)
    return ReducedWord(p, r, tuple(a_exps), tuple(bs))


def reduce_word(p: int, r: int, raw: Iterable[tuple[int, int]]) -> ReducedWord:
    """Reduce a list of ``(generator index, exponent)`` pairs (0 means ``â``)."""
    syls = []
    for index, e in raw:
        if index == 0:
            syls.append(int(e))
        elif 1 <= index <= r:
            beta = [0] * r
            beta[index - 1] = e
            syls.append(tuple(beta))
        else:
            raise ValueError(f"generator index {index} out of range for r={r}")
    return reduce_syllables(p, r, syls)


def multiply(*words: ReducedWord) -> ReducedWord:
    first = words[0]
    syls: list = []
    for w in words:
        _check(first, w)
        syls.extend(w.syllables())
    return reduce_syllables(first.p, first.r, syls)


def invert(w: ReducedWord) -> ReducedWord:
    p = w.p
    syls = []
    for syl in reversed(w.syllables()):
        syls.append(-syl % p if isinstance(syl, int) else tuple(-x % p for x in syl))
    return reduce_syllables(p, w.r, syls)


def power(w: ReducedWord, k: int) -> ReducedWord:
    if k < 0:
        return power(invert(w), -k)
    out = ReducedWord.identity(w.p, w.r)
    for _ in range(k):
        out = multiply(out, w)
    return out


def conjugate(x: ReducedWord, g: ReducedWord) -> ReducedWord:
    """``x^g = g^{-1} x g``."""
    return multiply(invert(g), x, g)


def commutator(*xs: ReducedWord) -> ReducedWord:
    """Left-normed commutator ``[x, y, z] = [[x, y], z]``."""
    def comm(x, y):
        return multiply(invert(x), invert(y), x, y)
    return _fold(comm, xs)


@dataclass(frozen=True)
class ExponentVector:
    eps_a: int
    eps_b: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.eps_a == 0 and not any(self.eps_b)


def exponents(w: ReducedWord) -> ExponentVector:
    p = w.p
    eps_b = tuple(sum(col) % p for col in zip(*w.b_syllables)) if w.b_syllables else (0,) * w.r
    return ExponentVector(sum(w.a_exponents) % p, eps_b)


def length(w: ReducedWord) -> int:
    return w.length


@dataclass(frozen=True)
class SpineForm:
    """``w = prod_j (c_j)^{â^{t_j}}`` with consecutive ``t_j`` distinct."""

    p: int
    r: int
    factors: tuple[tuple[int, BVec], ...]


def spine_form(w: ReducedWord) -> SpineForm:
    if exponents(w).eps_a:
        raise NotInL(f"a-exponent sum of {w} is nonzero")
    factors = []
    prefix = 0
    for s, beta in zip(w.a_exponents, w.b_syllables):
        prefix += s
        # â^T B â^{-T} = B^{â^{-T}}
        factors.append((-prefix % w.p, beta))
    return SpineForm(w.p, w.r, tuple(factors))


def from_spine(form: SpineForm) -> ReducedWord:
    p, r = form.p, form.r
    syls: list = []
    for t, beta in form.factors:
        syls += [-t, beta, t]
    return reduce_syllables(p, r, syls)
