import itertools
import random

import pytest

from ghw.core import (
    DependentGenerators,
    GhwPresentation,
    InvalidPresentation,
    ParseError,
    SignVector,
    TranslationClass,
    apply_coboundary,
    dimension_cap,
    expand_cocycle,
    find_distinguished_elements,
    find_torsion_element,
    first_betti,
    format_group,
    has_nontrivial_center,
    is_torsion_free,
    orientable,
    parse_group,
    permute_coordinates,
    validate_ghw,
)

from oracles import lift_has_finite_order, table_is_torsion_free

DIDICOSM = "dim=3; gens=+--:HH0,-+-:0HH"
KLEIN = "dim=2; gens=-+:0H"


def didicosm():
    return parse_group(DIDICOSM)


class TestSignVector:
    def test_string_round_trip(self):
        v = SignVector.from_string("+--")
        assert v.n == 3 and v.flips == 0b110
        assert v.to_string() == "+--"

    def test_compose_is_xor(self):
        a = SignVector(3, 0b110)
        b = SignVector(3, 0b101)
        assert (a * b).flips == 0b011

    def test_identity(self):
        assert SignVector.from_string("+++").flips == 0

    def test_rejects_bad_char(self):
        with pytest.raises(ValueError):
            SignVector.from_string("+0-")


class TestTranslationClass:
    def test_string_round_trip(self):
        t = TranslationClass.from_string("HH0")
        assert t.halves == 0b011
        assert t.to_string() == "HH0"

    def test_compose_is_xor(self):
        a = TranslationClass(3, 0b011)
        b = TranslationClass(3, 0b110)
        assert (a + b).halves == 0b101


class TestExpandCocycle:
    def test_didicosm_product_value(self):
        # product of the two generators: flips {1,2}, halves {1,3}
        table = expand_cocycle(didicosm().gens)
        assert table[0b011] == 0b101

    def test_nontrivial_identity_value(self):
        table = expand_cocycle(didicosm().gens)
        assert table[0] == 0

    def test_dependent_generators_rejected(self):
        gens = (
            (SignVector(3, 0b110), TranslationClass(3, 0b011)),
            (SignVector(3, 0b110), TranslationClass(3, 0b101)),
        )
        with pytest.raises(DependentGenerators):
            expand_cocycle(gens)

    def test_size_is_power_of_two(self):
        assert len(expand_cocycle(didicosm().gens)) == 4


class TestParseFormat:
    def test_round_trip(self):
        p = didicosm()
        assert parse_group(format_group(p)) == p

    def test_klein_literal(self):
        p = parse_group(KLEIN)
        assert p.n == 2
        assert p.gens[0][0].flips == 0b01
        assert p.gens[0][1].halves == 0b10

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as info:
            parse_group("dim=3; gens=+-X:HH0")
        assert info.value.line == 1
        assert info.value.column > 1

    def test_error_on_wrong_length(self):
        with pytest.raises(ParseError):
            parse_group("dim=3; gens=+-:HH0,-+-:0HH")

    def test_multiline_position(self):
        with pytest.raises(ParseError) as info:
            parse_group("dim=3;\ngens=+--:HH0,\n-+-:0HX")
        assert info.value.line == 3


class TestValidation:
    def test_didicosm_valid(self):
        rep = validate_ghw(didicosm())
        assert rep.verdict
        assert rep.torsion_free and rep.faithful and rep.minus_id_free

    def test_klein_valid(self):
        assert validate_ghw(parse_group(KLEIN)).verdict

    def test_torsion_detected(self):
        # one generator with no half step on its fixed coordinate
        bad = "dim=2; gens=-+:H0"
        rep = validate_ghw(parse_group(bad))
        assert not rep.verdict
        assert rep.torsion_offender is not None

    def test_torsion_agrees_with_order_oracle_dim3(self):
        # every translation assignment on the didicosm sign vectors,
        # valid or not, must agree with the independent bounded
        # order search
        signs = tuple(s for s, _ in didicosm().gens)
        for h1 in range(8):
            for h2 in range(8):
                gens = (
                    (signs[0], TranslationClass(3, h1)),
                    (signs[1], TranslationClass(3, h2)),
                )
                p = GhwPresentation(3, gens)
                assert is_torsion_free(p) == table_is_torsion_free(
                    3, p.s_by_mask)

    def test_offender_matches_oracle(self):
        p = parse_group("dim=3; gens=-++:000,+-+:00H")
        g = find_torsion_element(p)
        assert g is not None
        assert lift_has_finite_order(3, g.flips, p.s_by_mask[g.flips])


class TestInvariants:
    def test_didicosm_betti_support(self):
        p = didicosm()
        assert first_betti(p) == 0
        assert orientable(p)
        assert p.support == (1, 2, 3)
        assert not has_nontrivial_center(p)

    def test_klein_betti_support(self):
        p = parse_group(KLEIN)
        assert first_betti(p) == 1
        assert not orientable(p)
        assert p.support == (2,)
        assert has_nontrivial_center(p)

    def test_didicosm_distinguished_elements(self):
        # the three nontrivial elements each fix exactly one coordinate
        fixers, single = find_distinguished_elements(didicosm())
        assert sorted(v.flips for v in fixers) == [0b011, 0b101, 0b110]
        assert single == ()

    def test_klein_distinguished_elements(self):
        # the lone generator both fixes and flips exactly one coordinate
        fixers, single = find_distinguished_elements(parse_group(KLEIN))
        assert [v.flips for v in fixers] == [0b01]
        assert [v.flips for v in single] == [0b01]


class TestTransforms:
    def test_permute_preserves_validity(self):
        p = didicosm()
        for perm in itertools.permutations((1, 2, 3)):
            q = permute_coordinates(p, perm)
            assert q.valid

    def test_coboundary_preserves_validity(self):
        p = didicosm()
        for shift in range(8):
            assert apply_coboundary(p, shift).valid

    def test_permute_then_inverse_is_identity(self):
        p = didicosm()
        q = permute_coordinates(p, (2, 3, 1))
        r = permute_coordinates(q, (3, 1, 2))
        assert r == p

    def test_coboundary_involution(self):
        p = didicosm()
        q = apply_coboundary(apply_coboundary(p, 0b101), 0b101)
        assert q == p

    def test_scramble_changes_table_not_class(self):
        rng = random.Random(7)
        p = didicosm()
        seen_different = False
        for _ in range(20):
            perm = list(range(1, 4))
            rng.shuffle(perm)
            q = apply_coboundary(
                permute_coordinates(p, tuple(perm)), rng.randrange(8))
            assert q.valid
            if q.s_by_mask != p.s_by_mask:
                seen_different = True
        assert seen_different


class TestFamiliesValid:
    def test_families_valid_to_cap(self):
        from ghw.constructions import gamma_group, klein_group

        for n in range(2, dimension_cap() + 1):
            assert validate_ghw(klein_group(n)).verdict
            assert validate_ghw(gamma_group(n)).verdict


class TestRequireValid:
    def test_invalid_input_rejected_downstream(self):
        p = parse_group("dim=2; gens=-+:H0")
        with pytest.raises(InvalidPresentation):
            first_betti(p)
