"""Exact model of diagonal Bieberbach presentations with holonomy Z_2^(n-1).

An element of such a group is an affine isometry x -> Bx + b where B is a
diagonal +-1 matrix and b is determined modulo the standard lattice Z^n by a
vector with entries in {0, 1/2}. Composition is (B, b)(C, c) = (BC, Bc + b).
Because a sign change fixes every translation class modulo Z^n, both the sign
parts and the translation classes compose by XOR on bitmasks, and everything
here is integer arithmetic on such masks.

Coordinates are 1-based in every public interface. Bit i-1 of a mask belongs
to coordinate i.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

__all__ = [
    "GhwError",
    "DependentGenerators",
    "InvalidPresentation",
    "DimensionMismatch",
    "ParseError",
    "SignVector",
    "TranslationClass",
    "GhwPresentation",
    "ValidationReport",
    "expand_cocycle",
    "validate_ghw",
    "is_torsion_free",
    "find_torsion_element",
    "characters",
    "first_betti",
    "orientable",
    "has_nontrivial_center",
    "find_distinguished_elements",
    "parse_group",
    "format_group",
    "permute_coordinates",
    "apply_coboundary",
    "dimension_cap",
]

DEFAULT_MAX_DIM = 8


class GhwError(Exception):
    """Base class for every error raised by this package."""


class DependentGenerators(GhwError):
    """The generator sign vectors are linearly dependent over F_2."""


class InvalidPresentation(GhwError):
    """The operation requires a presentation that passes validation."""


class DimensionMismatch(GhwError):
    """Two presentations of different dimensions were compared."""


class ParseError(GhwError):
    """Group literal rejected; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def dimension_cap() -> int:
    """Configured dimension ceiling; override with the GHW_MAX_DIM env var."""
    raw = os.environ.get("GHW_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    cap = int(raw)
    if cap < 2:
        raise ValueError("GHW_MAX_DIM must be at least 2")
    return cap


def _check_coords(n: int, mask: int) -> None:
    if n < 1 or n > 64:
        raise ValueError(f"dimension {n} out of range 1..64")
    if mask < 0 or mask >> n:
        raise ValueError(f"mask {mask:#x} does not fit in {n} coordinates")


class SignVector:
    """Diagonal orthogonal matrix with +-1 entries, stored as a flip mask.

    Bit i-1 set means the entry at coordinate i is -1. The group law is XOR;
    the identity is the zero mask.
    """

    __slots__ = ("n", "flips")

    def __init__(self, n: int, flips: int):
        _check_coords(n, flips)
        self.n = n
        self.flips = flips

    @classmethod
    def from_string(cls, text: str) -> "SignVector":
        mask = 0
        for i, ch in enumerate(text):
            if ch == "-":
                mask |= 1 << i
            elif ch != "+":
                raise ValueError(f"bad sign character {ch!r}")
        return cls(len(text), mask)

    def to_string(self) -> str:
        return "".join("-" if self.flips >> i & 1 else "+" for i in range(self.n))

    def __mul__(self, other: "SignVector") -> "SignVector":
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} != {other.n}")
        return SignVector(self.n, self.flips ^ other.flips)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SignVector)
            and self.n == other.n
            and self.flips == other.flips
        )

    def __hash__(self) -> int:
        return hash((SignVector, self.n, self.flips))

    @property
    def is_identity(self) -> bool:
        return self.flips == 0

    @property
    def parity(self) -> int:
        """Determinant exponent: 0 for det +1, 1 for det -1."""
        return self.flips.bit_count() & 1

    def flipped_coordinates(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.flips >> i & 1)

    def fixed_coordinates(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if not self.flips >> i & 1)

    def __repr__(self) -> str:
        return f"SignVector({self.n}, {self.to_string()!r})"


class TranslationClass:
    """Translation vector modulo Z^n with entries in {0, 1/2}, as a bitmask.

    Bit i-1 set means coordinate i carries 1/2. Under the group law the sign
    action on these classes is trivial, so they add by XOR.
    """

    __slots__ = ("n", "halves")

    def __init__(self, n: int, halves: int):
        _check_coords(n, halves)
        self.n = n
        self.halves = halves

    @classmethod
    def from_string(cls, text: str) -> "TranslationClass":
        mask = 0
        for i, ch in enumerate(text):
            if ch == "H":
                mask |= 1 << i
            elif ch != "0":
                raise ValueError(f"bad translation character {ch!r}")
        return cls(len(text), mask)

    def to_string(self) -> str:
        return "".join("H" if self.halves >> i & 1 else "0" for i in range(self.n))

    def __add__(self, other: "TranslationClass") -> "TranslationClass":
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} != {other.n}")
        return TranslationClass(self.n, self.halves ^ other.halves)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TranslationClass)
            and self.n == other.n
            and self.halves == other.halves
        )

    def __hash__(self) -> int:
        return hash((TranslationClass, self.n, self.halves))

    def has_half(self, coordinate: int) -> bool:
        return bool(self.halves >> (coordinate - 1) & 1)

    def half_coordinates(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.halves >> i & 1)

    def __repr__(self) -> str:
        return f"TranslationClass({self.n}, {self.to_string()!r})"


def expand_cocycle(gens) -> dict[int, int]:
    """Extend generator translation classes linearly to the full sign span.

    `gens` is a sequence of (SignVector, TranslationClass) pairs with
    independent sign masks. Returns {sign mask: halves mask} over the whole
    span, 2^k entries. Raises DependentGenerators when the span is smaller.

    Linearity is forced by the group law: signs act trivially on translation
    classes, so s(gh) = s(g) XOR s(h).
    """
    table = {0: 0}
    for sv, tc in gens:
        if sv.flips in table:
            raise DependentGenerators(
                f"sign vector {sv.to_string()} lies in the span of its predecessors"
            )
        for mask, val in list(table.items()):
            table[mask ^ sv.flips] = val ^ tc.halves
    return table


def _annihilator(n: int, masks) -> int:
    """The unique nonzero functional vanishing on an index-2 sign span.

    Scans all 2^n candidates; callers already hold a table of size 2^(n-1),
    so this costs no more than what they paid to get here.
    """
    found = 0
    for sigma in range(1, 1 << n):
        if all((sigma & m).bit_count() % 2 == 0 for m in masks):
            assert found == 0, "sign span has index greater than 2"
            found = sigma
    assert found, "sign span is not proper"
    return found


class GhwPresentation:
    """Dimension-n group given by n-1 generators (sign vector, translation class).

    The sign vectors must be independent over F_2; they then span an index-2
    subgroup H of the diagonal group, and the translation classes extend to a
    linear cocycle on H. H is recorded through its support: the coordinate set
    of the unique nonzero vector annihilating H. Geometric soundness
    (torsion-freeness and friends) is reported by validate_ghw, never enforced
    here, so defective tables can still be inspected.
    """

    __slots__ = ("n", "gens", "elements", "s_by_mask", "support_mask", "_report")

    def __init__(self, n: int, gens):
        gens = tuple(gens)
        if n < 2:
            raise ValueError("dimension must be at least 2")
        if len(gens) != n - 1:
            raise ValueError(f"expected {n - 1} generators, got {len(gens)}")
        for sv, tc in gens:
            if sv.n != n or tc.n != n:
                raise DimensionMismatch("generator entries disagree with dimension")
        table = expand_cocycle(gens)
        self.n = n
        self.gens = gens
        self.elements = tuple(sorted(table))
        self.s_by_mask = table
        self.support_mask = _annihilator(n, [sv.flips for sv, _ in gens])
        self._report = None

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.support_mask >> i & 1)

    def s(self, element) -> TranslationClass:
        """Cocycle value on an element of H, given as a mask or SignVector."""
        mask = element.flips if isinstance(element, SignVector) else element
        try:
            return TranslationClass(self.n, self.s_by_mask[mask])
        except KeyError:
            raise KeyError(f"mask {mask:#x} is not in the sign span") from None

    def columns(self) -> tuple[int, ...]:
        """Per-coordinate cocycle columns: bit t of column i is s(H[t])_i."""
        cols = [0] * self.n
        for t, mask in enumerate(self.elements):
            val = self.s_by_mask[mask]
            for i in range(self.n):
                cols[i] |= (val >> i & 1) << t
        return tuple(cols)

    @classmethod
    def from_columns(cls, n: int, elements, cols) -> "GhwPresentation":
        """Rebuild a presentation from sorted H masks and cocycle columns."""
        elements = tuple(elements)
        index = {m: t for t, m in enumerate(elements)}
        basis = []
        span = {0}
        for m in elements:
            if m and m not in span:
                basis.append(m)
                span |= {m ^ x for x in span}
        assert len(basis) == n - 1
        gens = []
        for m in basis:
            t = index[m]
            halves = 0
            for i in range(n):
                halves |= (cols[i] >> t & 1) << i
            gens.append((SignVector(n, m), TranslationClass(n, halves)))
        return cls(n, gens)

    @property
    def report(self) -> "ValidationReport":
        if self._report is None:
            self._report = validate_ghw(self)
        return self._report

    @property
    def valid(self) -> bool:
        return self.report.verdict

    def to_literal(self) -> str:
        return format_group(self)

    @classmethod
    def from_literal(cls, text: str) -> "GhwPresentation":
        return parse_group(text)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GhwPresentation)
            and self.n == other.n
            and self.gens == other.gens
        )

    def __hash__(self) -> int:
        return hash((self.n, self.gens))

    def __repr__(self) -> str:
        return f"GhwPresentation.from_literal({self.to_literal()!r})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_ghw.

    normalizing_permutation sends old coordinate i (1-based) to position
    perm[i-1], moving the support onto an initial segment while preserving
    relative order inside and outside the support.
    """

    faithful: bool
    minus_id_free: bool
    torsion_free: bool
    torsion_offender: SignVector | None
    lattice_maximal: bool
    support: tuple[int, ...]
    normalizing_permutation: tuple[int, ...]
    verdict: bool
    reason: str | None


def find_torsion_element(p) -> SignVector | None:
    """First element (in sorted mask order) with no fixed half coordinate.

    An element g != Id has finite order in the group iff every coordinate it
    fixes carries translation 0; it is then an involution up to conjugacy.
    Works on anything with .n, .elements and .s_by_mask.
    """
    full = (1 << p.n) - 1
    for mask in p.elements:
        if mask == 0:
            continue
        if not (~mask & full) & p.s_by_mask[mask]:
            return SignVector(p.n, mask)
    return None


def is_torsion_free(p) -> bool:
    return find_torsion_element(p) is None


def _normalizing_perm(n: int, support_mask: int) -> tuple[int, ...]:
    inside = [i for i in range(n) if support_mask >> i & 1]
    outside = [i for i in range(n) if not support_mask >> i & 1]
    perm = [0] * n
    for pos, i in enumerate(inside + outside):
        perm[i] = pos + 1
    return tuple(perm)


def validate_ghw(p: GhwPresentation) -> ValidationReport:
    """Check the geometric requirements and report every verdict at once.

    faithful: the sign vectors span a group of order 2^(n-1) (guaranteed by
    construction, re-derived here). minus_id_free: the all-flip element is
    outside the span, equivalently the support has odd size. torsion_free:
    no element violates the fixed-half witness condition. lattice_maximal:
    the standard lattice is the unique maximal abelian normal subgroup, which
    for this diagonal family holds exactly when the coordinate characters are
    pairwise distinct, i.e. the support is not a 2-element set.
    """
    n = p.n
    faithful = len(p.elements) == 1 << (n - 1)
    sigma = p.support_mask
    minus_id_free = sigma.bit_count() % 2 == 1
    offender = find_torsion_element(p)
    torsion_free = offender is None
    lattice_maximal = faithful and sigma.bit_count() != 2
    verdict = faithful and minus_id_free and torsion_free
    reason = None
    if not faithful:
        reason = "sign span too small"
    elif not minus_id_free:
        reason = "the all-flip sign vector lies in the span (even support)"
    elif not torsion_free:
        reason = f"torsion at {offender.to_string()}"
    return ValidationReport(
        faithful=faithful,
        minus_id_free=minus_id_free,
        torsion_free=torsion_free,
        torsion_offender=offender,
        lattice_maximal=lattice_maximal,
        support=p.support,
        normalizing_permutation=_normalizing_perm(n, sigma),
        verdict=verdict,
        reason=reason,
    )


def _require_valid(p: GhwPresentation) -> None:
    if not p.valid:
        raise InvalidPresentation(p.report.reason or "invalid presentation")


def characters(p: GhwPresentation) -> tuple[tuple[int, ...], ...]:
    """The n coordinate characters on H, as +-1 rows over sorted elements."""
    _require_valid(p)
    return tuple(
        tuple(-1 if m >> i & 1 else 1 for m in p.elements) for i in range(p.n)
    )


def first_betti(p: GhwPresentation) -> int:
    """Number of trivial coordinate characters: 1 for singleton support, else 0."""
    _require_valid(p)
    return 1 if p.support_mask.bit_count() == 1 else 0


def orientable(p: GhwPresentation) -> bool:
    """True when every element has an even flip count (full support, odd n)."""
    _require_valid(p)
    return p.support_mask == (1 << p.n) - 1


def has_nontrivial_center(p: GhwPresentation) -> bool:
    """The center is Z^beta1; it is nontrivial exactly when beta1 = 1."""
    return first_betti(p) == 1


def find_distinguished_elements(p):
    """Split off the structurally forced elements of H.

    Returns (fixers, single_flips): fixers are the weight n-1 elements, one
    for each support coordinate, each fixing exactly that coordinate and
    forced to carry 1/2 there; single_flips are the weight-1 elements, one for
    each non-support coordinate, present exactly when the group is
    non-orientable. fixers is never empty.
    """
    _require_valid(p)
    full = (1 << p.n) - 1
    fixers = []
    single = []
    for i in range(p.n):
        if p.support_mask >> i & 1:
            fixers.append(SignVector(p.n, full ^ (1 << i)))
        else:
            single.append(SignVector(p.n, 1 << i))
    assert all(f.flips in p.s_by_mask for f in fixers)
    assert all(s.flips in p.s_by_mask for s in single)
    return tuple(fixers), tuple(single)


def permute_coordinates(p: GhwPresentation, perm) -> GhwPresentation:
    """Relabel coordinates: old coordinate i moves to position perm[i-1]."""
    perm = tuple(perm)
    if sorted(perm) != list(range(1, p.n + 1)):
        raise ValueError(f"not a permutation of 1..{p.n}: {perm}")
    def move(mask: int) -> int:
        out = 0
        for i in range(p.n):
            if mask >> i & 1:
                out |= 1 << (perm[i] - 1)
        return out
    gens = [
        (SignVector(p.n, move(sv.flips)), TranslationClass(p.n, move(tc.halves)))
        for sv, tc in p.gens
    ]
    return GhwPresentation(p.n, gens)


def apply_coboundary(p: GhwPresentation, shift_mask: int) -> GhwPresentation:
    """Shift the cocycle by the coboundary of shift_mask.

    Conjugating the whole group by the quarter translation with support
    shift_mask sends s(g)_i to s(g)_i + g_i * shift_i, leaving the
    isomorphism class untouched.
    """
    _check_coords(p.n, shift_mask)
    gens = [
        (sv, TranslationClass(p.n, tc.halves ^ (sv.flips & shift_mask)))
        for sv, tc in p.gens
    ]
    return GhwPresentation(p.n, gens)


# Group literal format: dim=N; gens=+--:HH0,-+-:0HH
# Signs over {+,-}, translations over {0,H}, one sign and one translation
# string of length N per generator, comma separated.

class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def location(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, message: str, pos: int | None = None):
        line, col = self.location(pos)
        raise ParseError(message, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.fail(f"expected {token!r}")
        self.pos += len(token)

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected an integer")
        return int(self.text[start:self.pos])

    def read_run(self, alphabet: str, what: str) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in alphabet:
            self.pos += 1
        if self.pos == start:
            self.fail(f"expected {what}")
        return self.text[start:self.pos], start


def parse_group(text: str) -> GhwPresentation:
    """Parse the group literal format, e.g. 'dim=3; gens=+--:HH0,-+-:0HH'.

    Errors carry the 1-based line and column of the offending token.
    """
    cur = _Cursor(text)
    cur.expect("dim")
    cur.expect("=")
    n = cur.read_int()
    if n < 2:
        cur.fail("dimension must be at least 2")
    if n > 64:
        cur.fail("dimension exceeds the 64-coordinate mask limit")
    cur.expect(";")
    cur.expect("gens")
    cur.expect("=")
    gens = []
    while True:
        signs, at = cur.read_run("+-", "a sign string over +-")
        if len(signs) != n:
            cur.fail(f"sign string has length {len(signs)}, expected {n}", at)
        cur.expect(":")
        trans, at = cur.read_run("0H", "a translation string over 0H")
        if len(trans) != n:
            cur.fail(f"translation string has length {len(trans)}, expected {n}", at)
        gens.append(
            (SignVector.from_string(signs), TranslationClass.from_string(trans))
        )
        cur.skip_ws()
        if cur.pos < len(cur.text) and cur.text[cur.pos] == ",":
            cur.pos += 1
            continue
        break
    cur.skip_ws()
    if cur.pos != len(cur.text):
        cur.fail("trailing input after generator list")
    if len(gens) != n - 1:
        cur.fail(f"expected {n - 1} generators for dimension {n}, got {len(gens)}")
    return GhwPresentation(n, gens)


def format_group(p: GhwPresentation) -> str:
    gens = ",".join(
        f"{sv.to_string()}:{tc.to_string()}" for sv, tc in p.gens
    )
    return f"dim={p.n}; gens={gens}"
