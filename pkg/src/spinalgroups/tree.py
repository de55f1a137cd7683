"""Finite-depth automorphisms of the p-adic tree.

A :class:`Portrait` of depth ``n`` records the permutation at the root and
the ``p`` portraits of depth ``n-1`` hanging below it. Vertices are letters
``0..p-1`` internally (printed as ``1..p``); the directed generators recurse
in the last coordinate. Permutations act on the right and composition is
left to right, so ``u^(fg) = (u^f)^g``.
"""

from __future__ import annotations

from functools import lru_cache
from math import lcm
from typing import Sequence

from .errors import DepthMismatch
from .spinal import SpinalGroup
from .words import ReducedWord
from .zmodp import CoordinateChange


class Portrait:
    __slots__ = ("p", "depth", "label", "children", "_hash")

    def __init__(self, p: int, depth: int, label: tuple[int, ...], children: tuple[Portrait, ...]):
        self.p = p
        self.depth = depth
        self.label = label
        self.children = children
        self._hash = hash((p, depth, label, children))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Portrait) or self._hash != other._hash:
            return False
        return (self.p, self.depth, self.label, self.children) == (
            other.p, other.depth, other.label, other.children)

    def __repr__(self):
        return f"Portrait(p={self.p}, depth={self.depth}, {dump(self)!r})"

    @property
    def is_identity(self) -> bool:
        return self is identity(self.p, self.depth)

    def __mul__(self, other: Portrait) -> Portrait:
        return compose(self, other)

    def __invert__(self) -> Portrait:
        return invert(self)


def _intern(p, depth, label, children) -> Portrait:
    ident = identity(p, depth)
    if label == ident.label and children == ident.children:
        return ident
    return Portrait(p, depth, label, children)


@lru_cache(maxsize=None)
def identity(p: int, depth: int) -> Portrait:
    if depth == 0:
        return Portrait(p, 0, (), ())
    child = identity(p, depth - 1)
    return Portrait(p, depth, tuple(range(p)), (child,) * p)


def rooted(p: int, depth: int, label: Sequence[int]) -> Portrait:
    """Portrait acting by ``label`` (0-based images) at the root only."""
    if depth == 0:
        return identity(p, 0)
    child = identity(p, depth - 1)
    return _intern(p, depth, tuple(label), (child,) * p)


def rotation(p: int, depth: int, k: int = 1) -> Portrait:
    """``a^k``: the root label ``x -> x + k``."""
    return rooted(p, depth, tuple((x + k) % p for x in range(p)))


def compose(f: Portrait, g: Portrait) -> Portrait:
    if f.depth != g.depth or f.p != g.p:
        raise DepthMismatch(f"depths {f.depth} and {g.depth}")
    if f.depth == 0 or g.is_identity:
        return f
    if f.is_identity:
        return g
    label = tuple(g.label[y] for y in f.label)
    children = tuple(compose(f.children[x], g.children[f.label[x]]) for x in range(f.p))
    return _intern(f.p, f.depth, label, children)


def invert(f: Portrait) -> Portrait:
    if f.is_identity:
        return f
    p = f.p
    inv_label = [0] * p
    for x, y in enumerate(f.label):
        inv_label[y] = x
    # (f^-1) at y is the inverse of f's section at y f^-1.
    children = tuple(invert(f.children[inv_label[y]]) for y in range(p))
    return _intern(p, f.depth, tuple(inv_label), children)


def conjugate(f: Portrait, g: Portrait) -> Portrait:
    """``f^g = g^{-1} f g``."""
    return compose(compose(invert(g), f), g)


def power(f: Portrait, k: int) -> Portrait:
    if k < 0:
        return power(invert(f), -k)
    out = identity(f.p, f.depth)
    base = f
    while k:
        if k & 1:
            out = compose(out, base)
        base = compose(base, base)
        k >>= 1
    return out


def from_sections(sections: Sequence[Portrait], label: Sequence[int] | None = None) -> Portrait:
    """Assemble a portrait from its ``p`` sections under the given root label."""
    p = len(sections)
    depth = sections[0].depth + 1
    if any(s.depth != depth - 1 for s in sections):
        raise DepthMismatch("sections must share a depth")
    label = tuple(range(p)) if label is None else tuple(label)
    return _intern(p, depth, label, tuple(sections))


# ---------------------------------------------------------------------------
# generators of a spinal group


@lru_cache(maxsize=None)
def directed(p: int, vector: tuple[int, ...], depth: int) -> Portrait:
    """The directed automorphism ``b = (a^{v_1}, ..., a^{v_{p-1}}, b)``."""
    if depth == 0:
        return identity(p, 0)
    children = tuple(rotation(p, depth - 1, v) for v in vector) + (directed(p, vector, depth - 1),)
    return _intern(p, depth, tuple(range(p)), children)


def generator(G: SpinalGroup, index: int, depth: int, exponent: int = 1) -> Portrait:
    p = G.p
    if index == 0:
        return rotation(p, depth, exponent % p)
    row = G.E.rows[index - 1]
    return directed(p, tuple(exponent * v % p for v in row), depth)


def eval_word(G: SpinalGroup, w: ReducedWord, depth: int) -> Portrait:
    """Evaluate ``w`` at the given depth, one generator power at a time."""
    out = identity(G.p, depth)
    for index, e in w.raw():
        out = compose(out, generator(G, index, depth, e))
    return out


def eval_raw(G: SpinalGroup, raw: Sequence[tuple[int, int]], depth: int) -> Portrait:
    out = identity(G.p, depth)
    for index, e in raw:
        out = compose(out, generator(G, index, depth, e))
    return out


def witness_automorphism(w: CoordinateChange, depth: int) -> Portrait:
    """Recursive map with root label ``x -> multiplier*x`` at every vertex."""
    p = w.p
    # letters 1..p with p standing for residue 0; internally letter x is x+1.
    label = tuple((w.multiplier * (x + 1) - 1) % p for x in range(p))
    f = identity(p, 0)
    for d in range(1, depth + 1):
        f = _intern(p, d, label, (f,) * p)
    return f


# ---------------------------------------------------------------------------
# leaf action


def to_leaf_perm(f: Portrait) -> tuple[int, ...]:
    """Images of the ``p^n`` leaves (0-based, lexicographic order)."""
    return _leaf_perm(f)


@lru_cache(maxsize=4096)
def _leaf_perm(f: Portrait) -> tuple[int, ...]:
    if f.depth == 0:
        return (0,)
    block = f.p ** (f.depth - 1)
    out = []
    for x in range(f.p):
        base = f.label[x] * block
        out.extend(base + j for j in _leaf_perm(f.children[x]))
    return tuple(out)


def from_leaf_perm(perm: Sequence[int], p: int) -> Portrait:
    n = 0
    size = len(perm)
    while p**n < size:
        n += 1
    if p**n != size:
        raise ValueError(f"length {size} is not a power of {p}")
    return _from_leaf(tuple(perm), p, n)


def _from_leaf(perm: tuple[int, ...], p: int, depth: int) -> Portrait:
    if depth == 0:
        return identity(p, 0)
    block = p ** (depth - 1)
    label = tuple(perm[x * block] // block for x in range(p))
    children = []
    for x in range(p):
        chunk = perm[x * block:(x + 1) * block]
        if any(v // block != label[x] for v in chunk):
            raise ValueError("permutation does not preserve the tree")
        children.append(_from_leaf(tuple(v - label[x] * block for v in chunk), p, depth - 1))
    return _intern(p, depth, label, tuple(children))


def order(f: Portrait) -> int:
    """Least ``k >= 1`` with ``f^k = 1`` (lcm of leaf cycle lengths)."""
    perm = to_leaf_perm(f)
    seen = bytearray(len(perm))
    out = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, x = 0, start
        while not seen[x]:
            seen[x] = 1
            x = perm[x]
            n += 1
        out = lcm(out, n)
    return out


def dump(f: Portrait) -> str:
    """Nested ``perm[child,...]`` text; perms are dot-separated 1-based images."""
    if f.depth == 0:
        return "."
    head = ".".join(str(y + 1) for y in f.label)
    if f.depth == 1:
        return head
    return head + "[" + ",".join(dump(c) for c in f.children) + "]"


def certify_normalization(E, E_new, w: CoordinateChange, depth: int) -> bool:
    """Check ``(prod_j b_j^{M_ij})^f == b̃_i`` for every ``i``, and ``a^f = a^l``."""
    p = E.p
    f = witness_automorphism(w, depth)
    if conjugate(rotation(p, depth), f) != rotation(p, depth, w.multiplier):
        return False
    for i, coeffs in enumerate(w.matrix):
        old = identity(p, depth)
        for j, c in enumerate(coeffs):
            old = compose(old, power(directed(p, E.rows[j], depth), c))
        if conjugate(old, f) != directed(p, E_new.rows[i], depth):
            return False
    return True
