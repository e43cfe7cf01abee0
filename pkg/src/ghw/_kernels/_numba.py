"""JIT census kernel. The vectorized twin in _numpy.py must match bit for bit."""

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _is_canonical(cols, n, T, perm_inv, perm_dest, xbar):
    # Reject a leaf as soon as any support-preserving permutation produces a
    # lexicographically smaller reduced tuple. Identity keeps it.
    P = perm_inv.shape[0]
    for p in range(P):
        for j in range(n):
            c = cols[perm_inv[p, j]]
            pc = 0
            for t in range(T):
                if c >> t & 1:
                    pc |= 1 << perm_dest[p, t]
            alt = pc ^ xbar[j]
            if alt < pc:
                pc = alt
            if pc < cols[j]:
                return False
            if pc > cols[j]:
                break
    return True


@njit(cache=True)
def dfs_census(n, T, cands_flat, cands_off, colfix, needcheck, perm_inv, perm_dest, xbar):
    cap = 1024
    out = np.empty((cap, n), np.int64)
    count = 0
    cols = np.zeros(n, np.int64)
    sat = np.zeros(n + 1, np.int64)
    idx = np.zeros(n, np.int64)
    depth = 0
    idx[0] = cands_off[0]
    while depth >= 0:
        if idx[depth] >= cands_off[depth + 1]:
            depth -= 1
            if depth >= 0:
                idx[depth] += 1
            continue
        c = cands_flat[idx[depth]]
        s2 = sat[depth] | (c & colfix[depth])
        # Elements whose last fixed coordinate this is must be witnessed now.
        if needcheck[depth] & ~s2:
            idx[depth] += 1
            continue
        cols[depth] = c
        if depth == n - 1:
            if _is_canonical(cols, n, T, perm_inv, perm_dest, xbar):
                if count == cap:
                    cap *= 2
                    grown = np.empty((cap, n), np.int64)
                    grown[:count] = out[:count]
                    out = grown
                out[count] = cols
                count += 1
            idx[depth] += 1
        else:
            sat[depth + 1] = s2
            depth += 1
            idx[depth] = cands_off[depth]
    return out[:count].copy()


def census_leaves(arrs):
    """Run the DFS kernel on a build_arrays namespace."""
    return dfs_census(
        arrs.n, arrs.T, arrs.cands_flat, arrs.cands_off, arrs.colfix,
        arrs.needcheck, arrs.perm_inv, arrs.perm_dest, arrs.xbar,
    )
