"""Vectorized census kernel, the fallback when numba is off or unavailable.

Searches breadth-first, one coordinate column per level, carrying a frontier
of partial column tuples plus the bitset of torsion witnesses satisfied so
far. Bit permutations run through per-byte lookup tables so the canonical
filter stays in whole-array operations.
"""

import numpy as np

_CHUNK = 1 << 16


def _scatter(x, lut):
    out = lut[0][x & 255]
    for b in range(1, lut.shape[0]):
        out = out | lut[b][(x >> (8 * b)) & 255]
    return out


def _lex_smaller(a, b):
    """Rowwise lexicographic a < b over matching (L, n) arrays."""
    lt = np.zeros(len(a), dtype=bool)
    undecided = np.ones(len(a), dtype=bool)
    for j in range(a.shape[1]):
        aj, bj = a[:, j], b[:, j]
        lt |= undecided & (aj < bj)
        undecided &= aj == bj
        if not undecided.any():
            break
    return lt


def _permuted_reduced(leaves, arrs, p):
    out = np.empty_like(leaves)
    lut = arrs.luts[p]
    for j in range(arrs.n):
        pc = _scatter(leaves[:, arrs.perm_inv[p, j]], lut)
        out[:, j] = np.minimum(pc, pc ^ arrs.xbar[j])
    return out


def _canonical_mask(leaves, arrs):
    keep = np.ones(len(leaves), dtype=bool)
    for p in range(arrs.perm_inv.shape[0]):
        keep &= ~_lex_smaller(_permuted_reduced(leaves, arrs, p), leaves)
    return keep


def census_leaves(arrs):
    n = arrs.n
    frontier = np.zeros((1, 0), dtype=np.int64)
    sat = np.zeros(1, dtype=np.int64)
    for i in range(n):
        ci = arrs.cands[i]
        need, fix = arrs.needcheck[i], arrs.colfix[i]
        parts, sat_parts = [], []
        for lo in range(0, len(frontier), _CHUNK):
            block = sat[lo:lo + _CHUNK, None] | (ci[None, :] & fix)
            rix, cix = np.nonzero((need & ~block) == 0)
            parts.append(
                np.concatenate([frontier[lo + rix], ci[cix, None]], axis=1)
            )
            sat_parts.append(block[rix, cix])
        frontier = np.concatenate(parts, axis=0)
        sat = np.concatenate(sat_parts)
        if not len(frontier):
            break
    if not len(frontier):
        return np.empty((0, n), dtype=np.int64)
    return frontier[_canonical_mask(frontier, arrs)]


def canonicalize_batch(cols, arrs):
    """Canonical form of each row of an (L, n) column-code array."""
    red = np.empty_like(cols)
    for j in range(arrs.n):
        red[:, j] = np.minimum(cols[:, j], cols[:, j] ^ arrs.xbar[j])
    best = red.copy()
    for p in range(arrs.perm_inv.shape[0]):
        pr = _permuted_reduced(red, arrs, p)
        lt = _lex_smaller(pr, best)
        if lt.any():
            best[lt] = pr[lt]
    return best
