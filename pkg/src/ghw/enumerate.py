"""Census of isomorphism classes by dimension, with canonical keys.

A class is keyed by the lexicographically least coboundary-reduced column
tuple over all support-preserving coordinate relabelings, computed after the
support is moved onto an initial segment. The key is complete: two valid
presentations are isomorphic exactly when their keys agree, because an
abstract isomorphism must carry lattice to lattice, the normalizer of a
distinct-character diagonal image consists of signed permutations, and sign
changes act trivially on translation classes.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from . import _kernels
from .automorphisms import out_order
from .cohomology import h1_order
from .core import (
    DimensionMismatch,
    GhwError,
    GhwPresentation,
    SignVector,
    TranslationClass,
    _require_valid,
    dimension_cap,
    permute_coordinates,
)
from .homology import betti_vector

__all__ = [
    "DimensionTooLarge",
    "BudgetExhausted",
    "CensusEntry",
    "Census",
    "hyperplane_classes",
    "canonical_key",
    "are_isomorphic",
    "enumerate_census",
    "cached_census",
    "census_table",
    "census_to_jsonl",
    "census_from_jsonl",
]

LONG_MODE_DIM = 6
DEFAULT_BUDGET = 1800.0


class DimensionTooLarge(GhwError):
    """Requested dimension is beyond the cap or needs long-running mode."""


class BudgetExhausted(GhwError):
    """The enumeration ran past its time budget."""


def hyperplane_classes(n: int) -> tuple[tuple[int, ...], ...]:
    """Support classes in dimension n, as 1-based initial segments.

    Torsion-freeness keeps the all-flip element out of the span, which makes
    the support size odd; every odd size up to n occurs.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return tuple(tuple(range(1, k + 1)) for k in range(1, n + 1, 2))


def _key_bytes(n: int, k: int, cols) -> bytes:
    width = ((1 << (n - 1)) + 7) // 8
    return bytes([n, k]) + b"".join(int(c).to_bytes(width, "big") for c in cols)


def _canonical_cols(tab, cols) -> tuple[int, ...]:
    reduced = tuple(min(c, c ^ x) for c, x in zip(cols, tab.xbar))
    best = reduced
    for _, inv, dest in tab.perms:
        cand = [0] * tab.n
        decided = 0
        for j in range(tab.n):
            c = reduced[inv[j]]
            pc = 0
            for t in range(tab.T):
                if c >> t & 1:
                    pc |= 1 << dest[t]
            pc = min(pc, pc ^ tab.xbar[j])
            cand[j] = pc
            if decided == 0:
                if pc < best[j]:
                    decided = -1
                elif pc > best[j]:
                    decided = 1
                    break
        if decided == -1:
            best = tuple(cand)
    return best


def canonical_key(p: GhwPresentation) -> bytes:
    """Complete isomorphism invariant; compare as raw bytes, render as hex."""
    _require_valid(p)
    n = p.n
    k = p.support_mask.bit_count()
    q = permute_coordinates(p, p.report.normalizing_permutation)
    tab = _kernels.common.build_tables(n, k)
    assert q.elements == tab.H
    return _key_bytes(n, k, _canonical_cols(tab, q.columns()))


def are_isomorphic(p: GhwPresentation, q: GhwPresentation) -> bool:
    if p.n != q.n:
        raise DimensionMismatch(f"dimensions {p.n} and {q.n} differ")
    return canonical_key(p) == canonical_key(q)


@dataclass(frozen=True)
class CensusEntry:
    key: bytes
    presentation: GhwPresentation
    support: tuple[int, ...]
    beta1: int
    orientable: bool
    betti: tuple[int, ...]
    h1_order: int
    out_order: int

    @property
    def key_hex(self) -> str:
        return self.key.hex()


class Census:
    """Sorted, keyed collection of the classes of one dimension."""

    def __init__(self, n: int, entries):
        entries = tuple(sorted(entries, key=lambda e: e.key))
        assert len({e.key for e in entries}) == len(entries), "duplicate keys"
        self.n = n
        self.entries = entries
        self._by_key = {e.key: e for e in entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def entry(self, key: bytes) -> CensusEntry:
        return self._by_key[key]

    def __contains__(self, key: bytes) -> bool:
        return key in self._by_key

    @property
    def beta1_zero(self) -> int:
        return sum(1 for e in self.entries if e.beta1 == 0)

    @property
    def beta1_one(self) -> int:
        return sum(1 for e in self.entries if e.beta1 == 1)

    @property
    def orientable_count(self) -> int:
        return sum(1 for e in self.entries if e.orientable)


def _entry_from_cols(n: int, k: int, cols) -> CensusEntry:
    tab = _kernels.common.build_tables(n, k)
    p = GhwPresentation.from_columns(n, tab.H, cols)
    assert p.valid, "kernel emitted an invalid leaf"
    return CensusEntry(
        key=_key_bytes(n, k, cols),
        presentation=p,
        support=p.support,
        beta1=1 if k == 1 else 0,
        orientable=k == n,
        betti=betti_vector(p),
        h1_order=h1_order(p),
        out_order=out_order(p).out_order,
    )


def _support_entries(n: int, k: int, backend: str | None, deadline: float | None):
    if n <= _kernels.MAX_KERNEL_DIM:
        leaves = [tuple(int(c) for c in row) for row in
                  _kernels.census_leaves(n, k, backend)]
    else:
        try:
            leaves = _kernels.common.python_census_leaves(n, k, deadline)
        except TimeoutError as exc:
            raise BudgetExhausted(str(exc)) from None
    out = []
    for i, cols in enumerate(leaves):
        if deadline is not None and i % 256 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted(f"invariant pass for dim {n} support size {k}")
        out.append(_entry_from_cols(n, k, cols))
    return out


def enumerate_census(
    n: int,
    *,
    long_mode: bool = False,
    budget: float | None = None,
    workers: int = 1,
    progress=None,
    backend: str | None = None,
) -> Census:
    """All isomorphism classes of dimension n.

    Dimensions below LONG_MODE_DIM run unconditionally. From dimension 6 on
    the call must opt into long mode and runs under a time budget (default
    1800 s), raising BudgetExhausted when it trips. Worker counts above one
    spread support classes over processes; results are merged in sorted key
    order, so output does not depend on the worker count.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    cap = dimension_cap()
    if n > cap:
        raise DimensionTooLarge(f"dimension {n} exceeds the cap {cap}")
    if n >= LONG_MODE_DIM and not long_mode:
        raise DimensionTooLarge(
            f"dimension {n} is enumerable only in long mode"
        )
    if budget is not None and budget <= 0:
        raise ValueError("budget must be positive")
    if budget is None and long_mode:
        budget = DEFAULT_BUDGET
    deadline = time.monotonic() + budget if budget is not None else None
    sizes = [len(s) for s in hyperplane_classes(n)]
    entries = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(sizes))) as pool:
            futures = [
                pool.submit(_support_entries, n, k, backend, deadline)
                for k in sizes
            ]
            for k, fut in zip(sizes, futures):
                entries.extend(fut.result())
                if progress is not None:
                    progress(f"dim {n} support size {k}: done")
    else:
        for k in sizes:
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExhausted(f"before support size {k} of dim {n}")
            batch = _support_entries(n, k, backend, deadline)
            entries.extend(batch)
            if progress is not None:
                progress(f"dim {n} support size {k}: {len(batch)} classes")
    return Census(n, entries)


@lru_cache(maxsize=32)
def _cached(n: int, backend: str) -> Census:
    return enumerate_census(n, long_mode=n >= LONG_MODE_DIM, backend=backend)


def cached_census(n: int) -> Census:
    """Memoized default-budget census; the workhorse for graphs and tests."""
    return _cached(n, _kernels.active_backend())


def census_table(max_dim: int, **kwargs) -> list[dict]:
    """Per-dimension summary rows for dims 2..max_dim."""
    rows = []
    for n in range(2, max_dim + 1):
        c = enumerate_census(n, **kwargs) if kwargs else cached_census(n)
        rows.append(
            {
                "dim": n,
                "total": len(c),
                "beta1_zero": c.beta1_zero,
                "beta1_one": c.beta1_one,
                "orientable": c.orientable_count,
                "supports": len(hyperplane_classes(n)),
            }
        )
    return rows


def _entry_json(e: CensusEntry) -> str:
    obj = {
        "dim": e.presentation.n,
        "support": list(e.support),
        "generators": [
            {
                "flips": list(sv.flipped_coordinates()),
                "halves": list(tc.half_coordinates()),
            }
            for sv, tc in e.presentation.gens
        ],
        "canonical_key": e.key.hex(),
        "beta1": e.beta1,
        "orientable": e.orientable,
        "betti": list(e.betti),
        "h1_order": e.h1_order,
        "out_order": e.out_order,
    }
    return json.dumps(obj)


def census_to_jsonl(census: Census) -> str:
    """One JSON object per class, sorted by key; byte-stable across runs."""
    return "".join(_entry_json(e) + "\n" for e in census.entries)


def census_from_jsonl(text: str) -> Census:
    entries = []
    dim = None
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        n = obj["dim"]
        if dim is None:
            dim = n
        elif dim != n:
            raise DimensionMismatch("mixed dimensions in census stream")
        gens = []
        for g in obj["generators"]:
            flips = sum(1 << (i - 1) for i in g["flips"])
            halves = sum(1 << (i - 1) for i in g["halves"])
            gens.append((SignVector(n, flips), TranslationClass(n, halves)))
        p = GhwPresentation(n, gens)
        entries.append(
            CensusEntry(
                key=bytes.fromhex(obj["canonical_key"]),
                presentation=p,
                support=tuple(obj["support"]),
                beta1=obj["beta1"],
                orientable=obj["orientable"],
                betti=tuple(obj["betti"]),
                h1_order=obj["h1_order"],
                out_order=obj["out_order"],
            )
        )
    if dim is None:
        raise ValueError("empty census stream")
    return Census(dim, entries)
