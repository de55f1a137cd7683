"""Permutation groups on the leaves of a truncated tree.

Permutations are tuples of 0-based images acting on the right; ``g * h``
means "first ``g``, then ``h``". :class:`StabChain` is a deterministic
Schreier-Sims: base points are taken in increasing order after an optional
prescribed prefix, which is how pointwise stabilizers are extracted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import tree
from .errors import DegreeCap, NotInStabilizer, NotSubgroup
from .spinal import SpinalGroup

Perm = tuple[int, ...]

MAX_DEGREE = 1000
MAX_WORK = 10**9


def mul(g: Perm, h: Perm) -> Perm:
    return tuple([h[x] for x in g])


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for x, y in enumerate(g):
        out[y] = x
    return tuple(out)


def is_identity(g: Perm) -> bool:
    return all(x == y for x, y in enumerate(g))


def comm(g: Perm, h: Perm) -> Perm:
    return mul(mul(inverse(g), inverse(h)), mul(g, h))


def conj(g: Perm, h: Perm) -> Perm:
    """``g^h = h^{-1} g h``."""
    return mul(mul(inverse(h), g), h)


class StabChain:
    """Base, strong generators and transversals for a permutation group."""

    def __init__(self, degree: int, gens: Iterable[Perm], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.identity: Perm = tuple(range(degree))
        self.base: list[int] = list(base_prefix)
        self.strong: list[Perm] = []
        self.levels: list[int] = []   # strong[k] fixes base[:levels[k]] and moves the next point
        self.transversals: list[dict[int, Perm]] = [{b: self.identity} for b in self.base]
        self.work = 0
        for g in gens:
            self.add_generator(tuple(g))

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            b = self.base[level]
            pt = g[b]
            if pt == b:
                continue
            u = self.transversals[level].get(pt)
            if u is None:
                return g, level
            g = mul(g, inverse(u))
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        h, _ = self.strip(tuple(g))
        return is_identity(h)

    def level_gens(self, level: int) -> list[Perm]:
        return [s for s, k in zip(self.strong, self.levels) if k >= level]

    # -- construction ------------------------------------------------------

    def add_generator(self, g: Perm) -> bool:
        """Add ``g``; returns False if it was already a member."""
        h, j = self.strip(g)
        if is_identity(h):
            return False
        self._insert(h, j)
        self._complete(j)
        return True

    def _insert(self, h: Perm, j: int):
        if j == len(self.base):
            pt = next(x for x in range(self.degree) if h[x] != x)
            self.base.append(pt)
            self.transversals.append({pt: self.identity})
        self.strong.append(h)
        self.levels.append(j)

    def _orbit(self, level: int) -> dict[int, Perm]:
        b = self.base[level]
        gens = self.level_gens(level)
        trans = {b: self.identity}
        frontier = [b]
        while frontier:
            nxt = []
            for x in frontier:
                u = trans[x]
                for s in gens:
                    y = s[x]
                    if y not in trans:
                        trans[y] = mul(u, s)
                        nxt.append(y)
            frontier = nxt
        return trans

    def _complete(self, i: int):
        while i >= 0:
            self.transversals[i] = self._orbit(i)
            restart = None
            gens = self.level_gens(i)
            b = self.base[i]
            trans = self.transversals[i]
            for x, u in list(trans.items()):
                for s in gens:
                    us = mul(u, s)
                    schreier = mul(us, inverse(trans[us[b]]))
                    if is_identity(schreier):
                        continue
                    self.work += 1
                    if self.work > MAX_WORK:
                        raise DegreeCap(f"more than {MAX_WORK} Schreier generators sifted")
                    h, j = self.strip(schreier, i + 1)
                    if not is_identity(h):
                        self._insert(h, j)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart


def brute_force_closure(gens: Sequence[Perm], cap: int = 10**5) -> set[Perm]:
    """All elements generated by ``gens`` (small-order oracle)."""
    if not gens:
        return set()
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise DegreeCap(f"closure exceeds {cap} elements")
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------


@dataclass(eq=False)
class PermGroup:
    """A permutation group given by generators, with its stabilizer chain."""

    degree: int
    generators: list[Perm]
    chain: StabChain = field(repr=False, default=None)

    def __post_init__(self):
        self.generators = [tuple(g) for g in self.generators if not is_identity(tuple(g))]
        if self.chain is None:
            self.chain = StabChain(self.degree, self.generators)

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Perm) -> bool:
        return self.chain.contains(g)

    def is_trivial(self) -> bool:
        return not self.generators

    def contains_group(self, other: PermGroup) -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.contains_group(other))

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            orb = [start]
            seen.add(start)
            for x in orb:
                for g in self.generators:
                    if g[x] not in seen:
                        seen.add(g[x])
                        orb.append(g[x])
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1


@dataclass(eq=False)
class QuotientGroup(PermGroup):
    """``G / stab_G(n)`` realised on the ``p^n`` leaves."""

    p: int = 0
    depth: int = 0
    names: list[str] = field(default_factory=list)


@dataclass(eq=False)
class Subgroup(PermGroup):
    ambient: PermGroup = field(default=None, repr=False)

    def __post_init__(self):
        super().__post_init__()
        if self.ambient is not None:
            for g in self.generators:
                if not self.ambient.contains(g):
                    raise NotSubgroup("generator is not in the ambient group")


def quotient(G: SpinalGroup, n: int) -> QuotientGroup:
    """The congruence quotient acting on level ``n``."""
    p = G.p
    if n < 1:
        raise ValueError("depth must be at least 1")
    if p**n > MAX_DEGREE:
        raise DegreeCap(f"degree {p}^{n} exceeds {MAX_DEGREE}")
    gens = [tree.to_leaf_perm(tree.generator(G, i, n)) for i in range(G.r + 1)]
    names = ["a"] + [f"b{i}" for i in range(1, G.r + 1)]
    return QuotientGroup(p**n, gens, p=p, depth=n, names=names)


def word_perm(G: SpinalGroup, w, n: int) -> Perm:
    return tree.to_leaf_perm(tree.eval_word(G, w, n))


def subgroup(Q: PermGroup, gens: Iterable[Perm]) -> Subgroup:
    return Subgroup(Q.degree, list(gens), ambient=Q)


def trivial(Q: PermGroup) -> Subgroup:
    return Subgroup(Q.degree, [], ambient=Q)


def index(Q: PermGroup, S: PermGroup) -> int:
    if not Q.contains_group(S):
        raise NotSubgroup("not a subgroup of the ambient group")
    return Q.order() // S.order()


def normal_closure(Q: PermGroup, elems: Iterable[Perm], within: PermGroup | None = None) -> Subgroup:
    """Smallest subgroup containing ``elems`` normalised by ``within`` (default ``Q``)."""
    within = within or Q
    elems = [tuple(e) for e in elems]
    for e in elems:
        if not Q.contains(e):
            raise NotSubgroup("element is not in the group")
    chain = StabChain(Q.degree, [])
    gens: list[Perm] = []
    queue = list(elems)
    while queue:
        x = queue.pop(0)
        if chain.add_generator(x):
            gens.append(x)
            queue.extend(conj(x, g) for g in within.generators)
    return Subgroup(Q.degree, gens, chain=chain, ambient=Q)


def derived_subgroup(Q: PermGroup) -> Subgroup:
    gens = Q.generators
    comms = [comm(x, y) for i, x in enumerate(gens) for y in gens[i + 1:]]
    return normal_closure(Q, comms)


def lower_central(Q: PermGroup, k: int) -> Subgroup:
    """``gamma_k(Q)``: normal closure of weight-``k`` commutators of generators."""
    gens = Q.generators
    if k == 1:
        return subgroup(Q, gens)
    terms = []
    for combo in product(gens, repeat=k):
        c = combo[0]
        for g in combo[1:]:
            c = comm(c, g)
        terms.append(c)
    return normal_closure(Q, terms)


def gamma3(Q: PermGroup) -> Subgroup:
    return lower_central(Q, 3)


# ---------------------------------------------------------------------------
# tree-specific subgroups


def _leaf_depth(Q: PermGroup, p: int) -> int:
    return _leaf_depth_from_len(Q.degree, p)


def pointwise_stabilizer(Q: PermGroup, points: Sequence[int]) -> Subgroup:
    """Elements fixing every point in ``points`` (via a chain with that base prefix)."""
    chain = StabChain(Q.degree, Q.generators, base_prefix=list(points))
    m = len(points)
    gens = chain.level_gens(m)
    sub = StabChain(Q.degree, gens)
    return Subgroup(Q.degree, gens, chain=sub, ambient=Q)


def level_stabilizer(Q: PermGroup, k: int, p: int) -> Subgroup:
    """Kernel of the action on the ``p^k`` level-``k`` vertices."""
    n = _leaf_depth(Q, p)
    if not 0 <= k <= n:
        raise ValueError(f"level {k} outside 0..{n}")
    block = p ** (n - k)
    nv = p**k
    # act on leaves plus level-k vertices; vertex v sits at point degree + v
    ext = [g + tuple(Q.degree + g[v * block] // block for v in range(nv)) for g in Q.generators]
    chain = StabChain(Q.degree + nv, ext, base_prefix=[Q.degree + v for v in range(nv)])
    gens = [g[:Q.degree] for g in chain.level_gens(nv)]
    return Subgroup(Q.degree, gens, ambient=Q)


def vertex_leaves(p: int, n: int, vertex: Sequence[int]) -> range:
    """Leaves below ``vertex`` (a tuple of 0-based letters)."""
    k = len(vertex)
    start = 0
    for x in vertex:
        start = start * p + x
    block = p ** (n - k)
    return range(start * block, (start + 1) * block)


def rigid_stabilizer(Q: PermGroup, vertex: Sequence[int], p: int) -> Subgroup:
    """Elements acting trivially outside the subtree of ``vertex``."""
    n = _leaf_depth(Q, p)
    inside = set(vertex_leaves(p, n, vertex))
    return pointwise_stabilizer(Q, [x for x in range(Q.degree) if x not in inside])


def rigid_level_stabilizer(Q: PermGroup, k: int, p: int) -> Subgroup:
    gens = []
    for v in product(range(p), repeat=k):
        gens.extend(rigid_stabilizer(Q, v, p).generators)
    return subgroup(Q, gens)


def restrict(g: Perm, p: int, vertex: Sequence[int]) -> Perm:
    """Section of ``g`` at ``vertex`` (which ``g`` must fix), re-indexed from 0."""
    n = _leaf_depth_from_len(len(g), p)
    leaves = vertex_leaves(p, n, vertex)
    lo = leaves.start
    out = []
    for x in leaves:
        y = g[x]
        if y not in leaves:
            raise NotInStabilizer(f"element moves vertex {tuple(vertex)}")
        out.append(y - lo)
    return tuple(out)


def _leaf_depth_from_len(size: int, p: int) -> int:
    n = 0
    while p**n < size:
        n += 1
    return n


def block_sections(g: Perm, p: int) -> list[Perm]:
    """The ``p`` first-level sections of a level-1 stabilizer element."""
    return [restrict(g, p, (x,)) for x in range(p)]


def embed(h: Perm, p: int, n: int, vertex: Sequence[int]) -> Perm:
    """The automorphism acting as ``h`` below ``vertex`` and trivially elsewhere."""
    leaves = vertex_leaves(p, n, vertex)
    out = list(range(p**n))
    for j, x in enumerate(leaves):
        out[x] = leaves.start + h[j]
    return tuple(out)


def section_group(S: PermGroup, p: int, vertex: Sequence[int]) -> PermGroup:
    """Group generated by the sections at ``vertex`` of the generators of ``S``."""
    n = _leaf_depth_from_len(S.degree, p)
    gens = [restrict(g, p, vertex) for g in S.generators]
    return PermGroup(p ** (n - len(vertex)), gens)
