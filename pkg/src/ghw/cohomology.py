"""Integer cohomology of the holonomy action on the standard lattice.

The first cohomology group controls the outer automorphism count and is
finite for every valid presentation. It is computed exactly: crossed
homomorphisms form an integer kernel obtained by Smith reduction, principal
ones an integer sublattice, and the quotient order is the product of the
elementary divisors of the inclusion. All arithmetic uses Python ints, so
nothing overflows and runs are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import GhwError, GhwPresentation, first_betti, _require_valid

__all__ = [
    "SnfResult",
    "smith_normal_form",
    "h1_order",
    "h1_closed_form",
    "InfiniteH1",
]


class InfiniteH1(GhwError):
    """H^1 came out with a free part; impossible for valid input."""


@dataclass(frozen=True)
class SnfResult:
    """Decomposition left @ matrix @ right = diag(diagonal), both transforms
    unimodular, diagonal entries positive with each dividing the next."""

    diagonal: tuple[int, ...]
    rank: int
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix) -> SnfResult:
    """Smith normal form over Z with both unimodular transforms.

    Deterministic: the pivot is the entry of least absolute value in the
    working submatrix, first in row-major order on ties.

    >>> smith_normal_form([[2, 4], [6, 8]]).diagonal
    (2, 4)
    >>> smith_normal_form([[1, 0], [0, 1]]).diagonal
    (1, 1)
    >>> smith_normal_form([[0, 0], [0, 0]]).diagonal
    ()
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(row) != n for row in a):
        raise ValueError("ragged matrix")
    u = _identity(m)
    v = _identity(n)
    t = 0
    while t < min(m, n):
        # Pick the least nonzero entry by absolute value.
        pi = pj = -1
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i][j])
                if x and (best == 0 or x < best):
                    best, pi, pj = x, i, j
        if pi < 0:
            break
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        d = a[t][t]
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // d
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                dirty = dirty or a[i][t] != 0
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // d
                for row in a:
                    row[j] -= q * row[t]
                for row in v:
                    row[j] -= q * row[t]
                dirty = dirty or a[t][j] != 0
        if dirty:
            continue
        # Column and row are clean; enforce divisibility of the rest.
        stuck = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % d:
                    stuck = i
                    break
            if stuck is not None:
                break
        if stuck is not None:
            a[t] = [x + y for x, y in zip(a[t], a[stuck])]
            u[t] = [x + y for x, y in zip(u[t], u[stuck])]
            continue
        t += 1
    diagonal = tuple(a[i][i] for i in range(min(m, n)) if a[i][i])
    assert all(
        diagonal[i + 1] % diagonal[i] == 0 for i in range(len(diagonal) - 1)
    )
    return SnfResult(
        diagonal=diagonal,
        rank=len(diagonal),
        left=tuple(tuple(row) for row in u),
        right=tuple(tuple(row) for row in v),
    )


def _matmul(a, b):
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a
    ]


def solve_integer(a, b):
    """One integer solution X of A X = B, or None when none exists."""
    m = len(a)
    k = len(a[0]) if m else 0
    q = len(b[0]) if b else 0
    if len(b) != m:
        raise ValueError("shape mismatch")
    res = smith_normal_form(a)
    ub = _matmul([list(r) for r in res.left], b)
    y = [[0] * q for _ in range(k)]
    for t in range(m):
        d = res.diagonal[t] if t < res.rank else 0
        for c in range(q):
            if d:
                if ub[t][c] % d:
                    return None
                if t < k:
                    y[t][c] = ub[t][c] // d
            elif ub[t][c]:
                return None
    return _matmul([list(r) for r in res.right], y)


def kernel_basis(a):
    """Columns spanning the integer kernel of A, as a list of vectors."""
    m = len(a)
    k = len(a[0]) if m else 0
    res = smith_normal_form(a)
    return [[res.right[i][j] for i in range(k)] for j in range(res.rank, k)]


@lru_cache(maxsize=None)
def _h1_from_masks(n: int, masks: tuple[int, ...]) -> int:
    g = len(masks)
    size = g * n

    def sgn(mask, i):
        return -1 if mask >> i & 1 else 1

    rows = []
    for j, mj in enumerate(masks):
        # (I + R_j) v_j = 0: the generator squares into the lattice.
        for i in range(n):
            row = [0] * size
            row[j * n + i] = 1 + sgn(mj, i)
            rows.append(row)
    for a in range(g):
        for b in range(a + 1, g):
            # commutation: (I - R_b) v_a = (I - R_a) v_b
            for i in range(n):
                row = [0] * size
                row[a * n + i] += 1 - sgn(masks[b], i)
                row[b * n + i] -= 1 - sgn(masks[a], i)
                rows.append(row)
    cocycles = kernel_basis(rows)
    z = len(cocycles)
    if z == 0:
        return 1
    # Principal crossed homomorphisms: w -> ((I - R_j) w)_j, w over unit vectors.
    boundary = [[0] * n for _ in range(size)]
    for j, mj in enumerate(masks):
        for i in range(n):
            boundary[j * n + i][i] = 1 - sgn(mj, i)
    basis_matrix = [[vec[r] for vec in cocycles] for r in range(size)]
    coords = solve_integer(basis_matrix, boundary)
    assert coords is not None, "principal cocycles left the cocycle lattice"
    res = smith_normal_form(coords)
    if res.rank < z:
        raise InfiniteH1(
            "free part in H^1; the holonomy data cannot come from a valid presentation"
        )
    order = 1
    for d in res.diagonal:
        order *= d
    return order


def h1_order(p: GhwPresentation) -> int:
    """|H^1(holonomy, Z^n)| for the presentation's holonomy representation.

    Depends only on the sign part, so results are cached per mask tuple.
    """
    _require_valid(p)
    return _h1_from_masks(p.n, tuple(sv.flips for sv, _ in p.gens))


def h1_closed_form(p: GhwPresentation) -> int:
    """2 to the number of nontrivial coordinate characters."""
    _require_valid(p)
    return 1 << (p.n - first_betti(p))
