"""Word-level section maps, theta maps and classification of spinal groups.

All maps here act on representatives in the free product ``H``; the
portrait evaluation in :mod:`spinalgroups.tree` is the independent check
that they agree with the action on the tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import words as W
from .errors import NotInDerived, NotInStabilizer, NotNormalized, ReductionFailed
from .words import ReducedWord
from .zmodp import DefiningTuple


@dataclass(frozen=True)
class SpinalGroup:
    E: DefiningTuple
    label: str = field(default="", compare=False)

    @classmethod
    def from_rows(cls, p: int, rows, label: str = "") -> SpinalGroup:
        return cls(DefiningTuple(p, rows), label)

    @property
    def p(self) -> int:
        return self.E.p

    @property
    def r(self) -> int:
        return self.E.r

    @property
    def n_star(self) -> int:
        """Largest ``j`` with ``e_{1,j}`` nonzero."""
        first = self.E.rows[0]
        return max(j for j in range(1, self.p) if first[j - 1])

    @property
    def normalized(self) -> bool:
        return self.E.rows[0][0] == 1

    def a(self, k: int = 1) -> ReducedWord:
        return ReducedWord.gen(self.p, self.r, 0, k)

    def b(self, i: int, k: int = 1) -> ReducedWord:
        return ReducedWord.gen(self.p, self.r, i, k)

    def one(self) -> ReducedWord:
        return ReducedWord.identity(self.p, self.r)

    def __str__(self):
        return self.label or str(self.E)


def sections(G: SpinalGroup, w: ReducedWord) -> tuple[ReducedWord, ...]:
    """``(g_1, ..., g_p)`` with ``w = (g_1, ..., g_p)`` on the first level."""
    p, r = G.p, G.r
    if W.exponents(w).eps_a:
        raise NotInStabilizer(f"{w} moves the first level")
    rows = G.E.rows
    coords: list[list] = [[] for _ in range(p)]
    for t, beta in W.spine_form(w).factors:
        a_powers = [sum(b * row[j] for b, row in zip(beta, rows)) % p for j in range(p - 1)]
        for x in range(p):
            src = (x - t) % p
            coords[x].append(beta if src == p - 1 else a_powers[src])
    return tuple(W.reduce_syllables(p, r, c) for c in coords)


def phi(G: SpinalGroup, w: ReducedWord, j: int) -> ReducedWord:
    """The ``j``-th section (``j`` from 1 to ``p``)."""
    return sections(G, w)[j - 1]


def _check_derived(G: SpinalGroup, z: ReducedWord):
    if not G.normalized:
        raise NotNormalized(f"{G}: e_(1,1) must be 1")
    if not W.exponents(z).is_zero:
        raise NotInDerived(f"{z} has nonzero exponent sums")


def theta1(G: SpinalGroup, z: ReducedWord) -> ReducedWord:
    """``[a, z_1^{-1}]``."""
    _check_derived(G, z)
    z1 = phi(G, z, 1)
    return W.commutator(G.a(), W.invert(z1))


def theta2(G: SpinalGroup, z: ReducedWord) -> ReducedWord:
    """``[a, z_{n+1} ... z_p]`` with ``n`` the last nonzero position of row 1."""
    _check_derived(G, z)
    secs = sections(G, z)
    tail = W.multiply(*secs[G.n_star:])
    return W.commutator(G.a(), tail)


THETAS = {"theta1": theta1, "theta2": theta2}


def _shorter(G: SpinalGroup, z: ReducedWord, budget: int):
    """Breadth-first search for a theta sequence that shortens ``z``."""
    target = z.length
    queue = deque([(z, ())])
    seen = {z}
    while queue:
        word, path = queue.popleft()
        if len(path) == budget:
            continue
        for name, fn in THETAS.items():
            nxt = fn(G, word)
            if nxt in seen:
                continue
            step = path + (name,)
            if nxt.length < target:
                return nxt, step
            seen.add(nxt)
            queue.append((nxt, step))
    return None


def reduce_commutator_length(
    G: SpinalGroup, z: ReducedWord, step_cap: int = 12, *, allow_family_e: bool = False
) -> tuple[ReducedWord, list[str]]:
    """Shorten ``z`` by theta maps until its length is 0 or 2.

    Each stage searches breadth-first for the shortest sequence of theta
    maps that produces a strictly shorter word. ``step_cap`` bounds the
    total number of maps applied. Raises :class:`ReductionFailed` when the
    budget runs out first.
    """
    _check_derived(G, z)
    if in_family_E(G.E) and not allow_family_e:
        raise ValueError(f"{G} lies in the exceptional family; contraction is not guaranteed")
    trace: list[str] = []
    while z.length > 2:
        found = _shorter(G, z, step_cap - len(trace))
        if found is None:
            raise ReductionFailed(
                f"no shortening of length-{z.length} word {z} within {step_cap} steps"
            )
        z, step = found
        trace.extend(step)
    return z, trace


def replay(G: SpinalGroup, z: ReducedWord, trace) -> ReducedWord:
    for name in trace:
        z = THETAS[name](G, z)
    return z


# ---------------------------------------------------------------------------
# predicates on defining tuples


def is_torsion(E: DefiningTuple) -> bool:
    """Infinite ``p``-group exactly when every row sums to zero mod ``p``."""
    return all(sum(row) % E.p == 0 for row in E.rows)


def in_family_E(E: DefiningTuple) -> bool:
    p = E.p
    first_is_unit = E.rows[0] == (1,) + (0,) * (p - 2)
    return (
        first_is_unit
        and all(row[0] == 1 for row in E.rows)
        and any(row[-1] for row in E.rows)
    )


def is_exceptional_G(E: DefiningTuple) -> bool:
    """``r = 1`` and the row is a nonzero constant (a power of ``(1,...,1)``)."""
    return E.r == 1 and len(set(E.rows[0])) == 1
