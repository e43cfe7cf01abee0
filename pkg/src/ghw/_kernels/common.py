"""Shared precomputation for the census kernels.

All tables are per (dimension, support size), with the support normalized to
{1..k}. A column code packs the cocycle values of one coordinate over the
2^(n-1) sign elements, one bit per element in ascending mask order, so the
whole search state for one group is an n-tuple of codes.
"""

from __future__ import annotations

import itertools
import time
from functools import lru_cache
from types import SimpleNamespace

import numpy as np


@lru_cache(maxsize=None)
def build_tables(n: int, k: int) -> SimpleNamespace:
    """Python-int tables driving enumeration and canonicalization.

    Fields:
      T          number of sign elements, 2^(n-1)
      H          sorted element masks
      xbar       per coordinate, the code of the coordinate character on H
      colfix     per coordinate, bitset of elements fixing it
      needcheck  per coordinate, elements whose last fixed coordinate it is
      cands      per coordinate, sorted coboundary-reduced candidate codes
      perms      support-preserving coordinate permutations as
                 (cols, cols_inv, dest) tuples; dest moves element bits
    """
    assert 1 <= k <= n and k % 2 == 1, (n, k)
    smask = (1 << k) - 1
    H = sorted(m for m in range(1 << n) if (m & smask).bit_count() % 2 == 0)
    T = len(H)
    assert T == 1 << (n - 1)
    index = {m: t for t, m in enumerate(H)}
    xbar = [sum((H[t] >> i & 1) << t for t in range(T)) for i in range(n)]
    colfix = [sum((~H[t] >> i & 1) << t for t in range(T)) for i in range(n)]
    # Every nonidentity element fixes something: the all-flip vector is not in H.
    needcheck = [0] * n
    for t in range(1, T):
        last = max(i for i in range(n) if not H[t] >> i & 1)
        needcheck[last] |= 1 << t
    funcs = sorted(
        {
            sum(((m & h).bit_count() & 1) << t for t, h in enumerate(H))
            for m in range(1 << n)
        }
    )
    assert len(funcs) == T
    cands = [sorted({min(f, f ^ xbar[i]) for f in funcs}) for i in range(n)]
    perms = []
    for pa in itertools.permutations(range(k)):
        for pb in itertools.permutations(range(k, n)):
            cols = tuple(pa) + tuple(pb)
            dest = tuple(
                index[sum((H[t] >> j & 1) << cols[j] for j in range(n))]
                for t in range(T)
            )
            inv = [0] * n
            for j, c in enumerate(cols):
                inv[c] = j
            perms.append((cols, tuple(inv), dest))
    return SimpleNamespace(
        n=n, k=k, T=T, H=tuple(H), xbar=tuple(xbar), colfix=tuple(colfix),
        needcheck=tuple(needcheck), cands=tuple(tuple(c) for c in cands),
        perms=tuple(perms),
    )


@lru_cache(maxsize=None)
def build_arrays(n: int, k: int) -> SimpleNamespace:
    """Numpy mirror of build_tables plus byte-scatter LUTs, int64 lanes.

    Only valid for n <= 6 (codes must stay clear of the sign bit)."""
    assert n <= 6, n
    tab = build_tables(n, k)
    T = tab.T
    nbytes = (T + 7) // 8
    P = len(tab.perms)
    perm_inv = np.array([inv for _, inv, _ in tab.perms], dtype=np.int64)
    perm_dest = np.array([dest for _, _, dest in tab.perms], dtype=np.int64)
    luts = np.zeros((P, nbytes, 256), dtype=np.int64)
    for p, (_, _, dest) in enumerate(tab.perms):
        for t in range(T):
            byte, bit = divmod(t, 8)
            hits = (np.arange(256) >> bit) & 1
            luts[p, byte] |= hits.astype(np.int64) << dest[t]
    cands_off = np.zeros(n + 1, dtype=np.int64)
    for i, c in enumerate(tab.cands):
        cands_off[i + 1] = cands_off[i] + len(c)
    cands_flat = np.array(
        [c for col in tab.cands for c in col], dtype=np.int64
    )
    return SimpleNamespace(
        n=n, k=k, T=T, nbytes=nbytes,
        xbar=np.array(tab.xbar, dtype=np.int64),
        colfix=np.array(tab.colfix, dtype=np.int64),
        needcheck=np.array(tab.needcheck, dtype=np.int64),
        cands=[np.array(c, dtype=np.int64) for c in tab.cands],
        cands_flat=cands_flat, cands_off=cands_off,
        perm_inv=perm_inv, perm_dest=perm_dest, luts=luts,
    )


def python_census_leaves(n: int, k: int, deadline: float | None = None):
    """Big-int reference enumeration, used beyond the kernel dimension limit.

    Returns canonical torsion-free column tuples in lexicographic order.
    Checks the deadline (time.monotonic value) between subtrees and raises
    TimeoutError when it passes.
    """
    tab = build_tables(n, k)
    full = (1 << tab.T) - 1
    out = []
    cols = [0] * n

    def canonical(leaf):
        for _, inv, dest in tab.perms:
            for j in range(n):
                c = leaf[inv[j]]
                pc = 0
                for t in range(tab.T):
                    if c >> t & 1:
                        pc |= 1 << dest[t]
                pc = min(pc, pc ^ tab.xbar[j])
                if pc < leaf[j]:
                    return False
                if pc > leaf[j]:
                    break
        return True

    def walk(depth, sat):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError(f"census {n=} {k=} exceeded its budget")
        if depth == n:
            if canonical(cols):
                out.append(tuple(cols))
            return
        for c in tab.cands[depth]:
            s2 = sat | (c & tab.colfix[depth])
            if tab.needcheck[depth] & ~s2 & full:
                continue
            cols[depth] = c
            walk(depth + 1, s2)

    walk(0, 0)
    return out
