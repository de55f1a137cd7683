"""Arithmetic over Z/p and normalization of defining tuples.

Matrices are plain tuples of row tuples with entries in ``0..p-1``. The
primes handled here are small (``p <= 31``) so native ints suffice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidTuple

MAX_PRIME = 31

Matrix = tuple[tuple[int, ...], ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def check_prime(p: int) -> int:
    if not (isinstance(p, int) and 3 <= p <= MAX_PRIME and is_prime(p)):
        raise InvalidTuple(f"p must be an odd prime in [3, {MAX_PRIME}], got {p!r}")
    return p


def inv(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


def as_matrix(rows, p: int) -> Matrix:
    return tuple(tuple(int(v) % p for v in row) for row in rows)


def mat_mul(A, B, p: int) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in A)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _rref_with_transform(M, p: int) -> tuple[Matrix, Matrix, list[int]]:
    """Gauss-Jordan elimination returning ``(R, U, pivots)`` with ``R = U M``."""
    rows = [list(r) for r in M]
    n = len(rows)
    U = [list(r) for r in identity(n)]
    pivots: list[int] = []
    ncols = len(rows[0]) if rows else 0
    lead = 0
    for c in range(ncols):
        piv = next((i for i in range(lead, n) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[lead], rows[piv] = rows[piv], rows[lead]
        U[lead], U[piv] = U[piv], U[lead]
        s = inv(rows[lead][c], p)
        rows[lead] = [v * s % p for v in rows[lead]]
        U[lead] = [v * s % p for v in U[lead]]
        for i in range(n):
            f = rows[i][c]
            if i != lead and f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[lead])]
                U[i] = [(x - f * y) % p for x, y in zip(U[i], U[lead])]
        pivots.append(c)
        lead += 1
        if lead == n:
            break
    return tuple(map(tuple, rows)), tuple(map(tuple, U)), pivots


def rref(M, p: int) -> Matrix:
    """Reduced row-echelon form of ``M`` over Z/p."""
    return _rref_with_transform(as_matrix(M, p), p)[0]


def rank(M, p: int) -> int:
    return len(_rref_with_transform(as_matrix(M, p), p)[2])


def rows_independent(rows, p: int) -> bool:
    rows = as_matrix(rows, p)
    return rank(rows, p) == len(rows)


def mat_inverse(M, p: int) -> Matrix:
    M = as_matrix(M, p)
    R, U, piv = _rref_with_transform(M, p)
    if len(piv) != len(M):
        raise ZeroDivisionError("matrix is singular")
    return U


@dataclass(frozen=True)
class DefiningTuple:
    """An ``r x (p-1)`` matrix of linearly independent rows over Z/p."""

    p: int
    rows: Matrix

    def __post_init__(self):
        check_prime(self.p)
        rows = as_matrix(self.rows, self.p)
        object.__setattr__(self, "rows", rows)
        if not 1 <= len(rows) <= self.p - 1:
            raise InvalidTuple(f"need 1 <= r <= p-1 rows, got {len(rows)}")
        if any(len(row) != self.p - 1 for row in rows):
            raise InvalidTuple(f"every row must have length p-1 = {self.p - 1}")
        if not rows_independent(rows, self.p):
            raise InvalidTuple(f"rows {rows} are linearly dependent mod {self.p}")

    @property
    def r(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """1-based access ``e_{i,j}``."""
        return self.rows[i - 1][j - 1]

    def __str__(self):
        return f"p={self.p} rows={[list(r) for r in self.rows]}"


@dataclass(frozen=True)
class CoordinateChange:
    """Witness that ``G_E`` is conjugate to ``G_Ẽ``.

    ``matrix`` is the r x r generator change (it includes the power applied
    to ``b_1``), so the new generator ``b̃_i`` is ``prod_j b_j^{matrix[i][j]}``
    conjugated by the tree automorphism ``f`` whose root label is
    ``x -> multiplier * x mod p`` and whose every section is ``f`` again.
    Then ``Ẽ[i][y] = multiplier * (matrix @ E)[i][position*y mod p]``.
    """

    p: int
    power: int = 1
    position: int = 1
    multiplier: int = 1
    matrix: Matrix = field(default_factory=tuple)

    def root_permutation(self) -> tuple[int, ...]:
        """Images of ``1..p`` under ``x -> multiplier*x``, residue 0 written as ``p``."""
        return tuple((self.multiplier * x - 1) % self.p + 1 for x in range(1, self.p + 1))

    @property
    def is_identity(self) -> bool:
        return self.multiplier == 1 and self.matrix == identity(len(self.matrix))


def conjugate_rows(rows: Matrix, position: int, multiplier: int, p: int) -> Matrix:
    """Defining vectors after conjugating by the recursive ``x -> multiplier*x`` map."""
    return tuple(
        tuple(multiplier * row[(position * y) % p - 1] % p for y in range(1, p))
        for row in rows
    )


def nondegenerate(row, p: int) -> bool:
    """Some ``k in 2..p-2`` has ``e_{k-1} e_{k+1} != e_k^2`` (1-based)."""
    return any(
        (row[k - 2] * row[k] - row[k - 1] ** 2) % p for k in range(2, p - 1)
    )


def satisfies_normal_form(E: DefiningTuple) -> bool:
    """Syntactic check of the conditions a normalized tuple must meet."""
    p, rows, r = E.p, E.rows, E.r
    if rows[0][0] != 1:
        return False
    if r == 1:
        return True
    if any(row[0] != 1 for row in rows):
        return False
    if r == 2 and p == 3:
        return rows == ((1, 0), (1, 1))
    if r == 2:
        special = (
            (1,) + (0,) * (p - 2),
            (1,) + (0,) * (p - 3) + (1,),
        )
        return all(nondegenerate(row, p) for row in rows) or rows == special
    return all(nondegenerate(row, p) for row in rows)


def _first_row_scaling(rows: Matrix, p: int) -> tuple[int, int, int]:
    """Choose ``(power, position, multiplier)`` making ``ẽ_{1,1} = 1``."""
    first = rows[0]
    for c in range(1, p):
        for k in range(1, p):
            if c * first[k - 1] % p == k:
                return c, k, inv(k, p)
    raise InvalidTuple("first defining vector is zero")


def _row_op_matrix(rows_before: Matrix, rows_after: Matrix, p: int) -> Matrix:
    """Solve ``T @ before = after`` for the (invertible) row transform ``T``."""
    # rows_before has independent rows; pick pivot columns to get a square system.
    _, _, piv = _rref_with_transform(rows_before, p)
    B = tuple(tuple(row[c] for c in piv) for row in rows_before)
    A = tuple(tuple(row[c] for c in piv) for row in rows_after)
    return mat_mul(A, mat_inverse(B, p), p)


def _fix_r2(R: Matrix, pivots: list[int], p: int) -> Matrix:
    """Two rows, ``p > 3``: left-multiply the RREF by ``[[1, y], [1, z]]``."""
    for y, z in combinations(range(p), 2):
        cand = (
            tuple((a + y * b) % p for a, b in zip(R[0], R[1])),
            tuple((a + z * b) % p for a, b in zip(R[0], R[1])),
        )
        if all(nondegenerate(row, p) for row in cand):
            return cand
    # Only reachable when the rows are (1,0,...,0) and (0,...,0,1).
    return (R[0], tuple((a + b) % p for a, b in zip(R[0], R[1])))


def _fix_r3(R: Matrix, p: int) -> Matrix:
    """Three or more rows: add row 1 to the others, then repair rows ``r`` and 1."""
    r = len(R)
    rows = [R[0]] + [tuple((a + b) % p for a, b in zip(R[0], row)) for row in R[1:]]
    third = rows[2]
    if not nondegenerate(rows[-1], p):
        rows[-1] = tuple((x - y + z) % p for x, y, z in zip(rows[-1], rows[1], rows[0]))
    if not nondegenerate(rows[0], p):
        rows[0] = tuple((x + y - z) % p for x, y, z in zip(rows[0], rows[1], third))
    return tuple(rows)


def normalize_defining_tuple(E: DefiningTuple) -> tuple[DefiningTuple, CoordinateChange]:
    """Conjugate and change generators so the tuple is in normal form.

    First ``b_1`` is replaced by its smallest power ``c`` for which some
    position ``k`` has ``c*e_{1,k} = k``; conjugating by the recursive map
    ``x -> k^{-1} x`` then gives ``ẽ_{1,1} = 1``. For ``r >= 2`` the rows are
    further recombined (reduced echelon form plus the repairs needed so that
    every row starts with 1 and is non-geometric where possible).

    Returns the new tuple and a :class:`CoordinateChange` that reproduces it.
    """
    p, r = E.p, E.r
    c, k, l = _first_row_scaling(E.rows, p)
    scale = tuple(tuple((c if i == j == 0 else int(i == j)) for j in range(r)) for i in range(r))
    conj = conjugate_rows(mat_mul(scale, E.rows, p), k, l, p)

    if r == 1:
        new_rows = conj
    elif p == 3:
        new_rows = ((1, 0), (1, 1))
    else:
        R, _, pivots = _rref_with_transform(conj, p)
        new_rows = _fix_r2(R, pivots, p) if r == 2 else _fix_r3(R, p)

    T = _row_op_matrix(conj, new_rows, p)
    matrix = mat_mul(T, scale, p)
    witness = CoordinateChange(p=p, power=c, position=k, multiplier=l, matrix=matrix)
    result = DefiningTuple(p, new_rows)
    if not satisfies_normal_form(result):
        raise AssertionError(f"normalization of {E} produced {result}")
    return result, witness


def apply_change(E: DefiningTuple, w: CoordinateChange) -> DefiningTuple:
    """Recompute ``Ẽ`` from ``E`` and the witness (independent of the search)."""
    combined = mat_mul(w.matrix, E.rows, E.p)
    return DefiningTuple(E.p, conjugate_rows(combined, w.position, w.multiplier, E.p))
