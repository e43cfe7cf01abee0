"""Outer automorphism counting.

Out factors as |H^1| times the normalizer quotient. The normalizer of the
holonomy image inside GL_n(Z) consists of signed permutations since the
coordinate characters are pairwise distinct; all sign changes act trivially
on translation classes and contribute a single factor of 2 through the global
flip, so the rest is the count of support-preserving coordinate permutations
fixing the cocycle class up to coboundaries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

from .cohomology import h1_order
from .core import GhwPresentation, first_betti, _require_valid

__all__ = ["OutReport", "normalizer_stabilizer_order", "out_order"]


@dataclass(frozen=True)
class OutReport:
    h1_order: int
    perm_stabilizer_order: int
    n_alpha_quotient_order: int
    out_order: int
    bound: int


def _reduced_columns(p: GhwPresentation):
    n = p.n
    elements = p.elements
    xbar = [
        sum((m >> i & 1) << t for t, m in enumerate(elements)) for i in range(n)
    ]
    cols = p.columns()
    reduced = tuple(min(c, c ^ x) for c, x in zip(cols, xbar))
    return elements, xbar, reduced


def normalizer_stabilizer_order(p: GhwPresentation) -> int:
    """Permutations of the coordinates preserving support and cocycle class.

    Works in the presentation's own labeling; the count is invariant under
    relabeling, so no support normalization is needed.
    """
    _require_valid(p)
    n = p.n
    elements, xbar, reduced = _reduced_columns(p)
    index = {m: t for t, m in enumerate(elements)}
    inside = [i for i in range(n) if p.support_mask >> i & 1]
    outside = [i for i in range(n) if not p.support_mask >> i & 1]
    count = 0
    for pa in itertools.permutations(inside):
        for pb in itertools.permutations(outside):
            perm = [0] * n
            for src, dst in zip(inside, pa):
                perm[src] = dst
            for src, dst in zip(outside, pb):
                perm[src] = dst
            inv = [0] * n
            for src, dst in enumerate(perm):
                inv[dst] = src
            dest = [
                index[sum((m >> j & 1) << perm[j] for j in range(n))]
                for m in elements
            ]
            ok = True
            for j in range(n):
                c = reduced[inv[j]]
                pc = 0
                for t in range(len(elements)):
                    if c >> t & 1:
                        pc |= 1 << dest[t]
                pc = min(pc, pc ^ xbar[j])
                if pc != reduced[j]:
                    ok = False
                    break
            count += ok
    return count


def out_order(p: GhwPresentation) -> OutReport:
    """Exact |Out| with the a-priori bound it must respect."""
    _require_valid(p)
    n = p.n
    h1 = h1_order(p)
    stab = normalizer_stabilizer_order(p)
    quotient = 2 * stab
    out = h1 * quotient
    if first_betti(p) == 0:
        bound = (1 << (n + 1)) * factorial(n)
    else:
        bound = (1 << n) * factorial(n - 1)
    assert out <= bound, (out, bound)
    return OutReport(
        h1_order=h1,
        perm_stabilizer_order=stab,
        n_alpha_quotient_order=quotient,
        out_order=out,
        bound=bound,
    )
