"""Regenerate src/spinalgroups/data/golden.csv.

Every value is computed by the library and, where the group is small
enough, confirmed by a second method that shares no code with it:
element orders by repeated portrait multiplication, group orders and
indices by breadth-first closure of leaf permutations.
"""

from __future__ import annotations

import sys
from pathlib import Path

from spinalgroups import permgrp as P
from spinalgroups import tree as T
from spinalgroups import words as W
from spinalgroups.harness import golden
from spinalgroups.harness.config import BUILTIN
from spinalgroups.harness.sampling import random_derived_word
from spinalgroups.spinal import is_torsion

OUT = Path(__file__).resolve().parents[1] / "src" / "spinalgroups" / "data" / "golden.csv"
CLOSURE_CAP = 25_000


def naive_order(f):
    g, k = f, 1
    while not g.is_identity:
        g = T.compose(g, f)
        k += 1
    return k


def closure(gens):
    try:
        return P.brute_force_closure(list(gens), CLOSURE_CAP)
    except Exception:
        return None


def derived_closure(gens, full):
    """Closure of all conjugates of commutators of generators."""
    comms = {P.comm(x, y) for x in gens for y in gens}
    return closure({P.conj(c, g) for c in comms for g in full})


def main() -> None:
    rows = []
    for name, cfg in BUILTIN.items():
        G = cfg.group()
        rows.append((name, 0, "is_torsion", int(is_torsion(G.E))))
        for i in range(1, G.r + 1):
            w = W.multiply(G.a(), G.b(i))
            for n in range(1, 6):
                value = T.order(T.eval_word(G, w, n))
                assert value == naive_order(T.eval_word(G, w, n)), (name, i, n)
                rows.append((name, n, f"order_ab{i}", value))
        for n in (1, 2, 3):
            Q = P.quotient(G, n)
            full = closure(Q.generators)
            if full is not None:
                assert len(full) == Q.order(), (name, n)
            rows.append((name, n, "quotient_order", Q.order()))
            if n >= 2:
                idx = P.index(Q, P.derived_subgroup(Q))
                if full is not None:
                    derived = derived_closure(Q.generators, full)
                    if derived is not None:
                        assert len(full) // len(derived) == idx, (name, n)
                rows.append((name, n, "abelianization_index", idx))
        if G.p == 3:
            Q = P.quotient(G, 3)
            idx = P.index(Q, P.rigid_level_stabilizer(Q, 1, G.p))
            full = closure(Q.generators)
            if full is not None:
                blocks = [set(P.vertex_leaves(3, 3, (x,))) for x in range(3)]
                rist = [[g for g in full if all(g[y] == y for y in range(27) if y not in b)]
                        for b in blocks]
                level = closure([g for part in rist for g in part])
                assert len(full) // len(level) == idx, name
            rows.append((name, 3, "rigid_level1_index", idx))
        word = random_derived_word(G, 4, 7)
        assert word == random_derived_word(G, 4, 7)
        rows.append((name, 4, "derived_word_seed7", str(word)))
    with OUT.open("w") as fh:
        golden.write(rows, fh)
    print(f"wrote {len(rows)} rows to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
