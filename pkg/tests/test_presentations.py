"""Presentations: interpret, decompose, equality, order, extension, render."""

import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given

import effectdiagrams as ed
from effectdiagrams import gen, presentations

from strategies import ALL_KINDS, CARRIER, kind_and_value


def dist_effect(*probs):
    body = ed.MonadValue(ed.DIST,
                         {i + 1: F(p) for i, p in enumerate(probs) if p})
    return ed.GenericEffect(len(probs), body)


def pres(effect, *row):
    return ed.Presentation(effect, tuple(row))


class TestInterpret:
    def test_trivial_effect(self):
        for kind in ALL_KINDS:
            xi = pres(ed.trivial_effect(kind), "x")
            assert ed.interpret(xi) == ed.unit(kind, "x")

    def test_two_halves_of_same_value_is_dirac(self):
        xi = pres(dist_effect(F(1, 2), F(1, 2)), "x", "x")
        assert ed.interpret(xi) == ed.unit(ed.DIST, "x")

    def test_powerset_image(self):
        eff = ed.GenericEffect(3, ed.MonadValue(ed.POWERSET,
                                                frozenset({1, 3})))
        xi = pres(eff, "a", "b", "a")
        # oracle: the image of {1, 3} under the row
        expected = frozenset(xi.row[i - 1] for i in (1, 3))
        assert expected == frozenset({"a"})
        assert ed.interpret(xi) == ed.MonadValue(ed.POWERSET, expected)


class TestDecompose:
    def test_unit(self):
        got = ed.decompose(ed.unit(ed.DIST, "x"))
        assert got.effect.arity == 1
        assert got.effect.body == ed.unit(ed.DIST, 1)
        assert got.row == ("x",)

    def test_dist_rows_in_canonical_order(self):
        mu = ed.MonadValue(ed.DIST, {"b": F(2, 3), "a": F(1, 3)})
        got = ed.decompose(mu)
        # oracle: support enumeration plus relabelling
        assert got.row == ("a", "b")
        assert got.effect.body == ed.MonadValue(
            ed.DIST, {1: F(1, 3), 2: F(2, 3)})
        assert ed.interpret(got) == mu

    def test_bottom_has_empty_row(self):
        for kind in ALL_KINDS:
            got = ed.decompose(ed.bottom(kind))
            assert got.effect.arity == 0
            assert got.row == ()
            assert got.effect.body == ed.bottom(kind)

    def test_deterministic(self):
        rng = random.Random(3)
        for kind in ALL_KINDS:
            for _ in range(20):
                mu = gen.random_value(kind, rng, CARRIER)
                a, b = ed.decompose(mu), ed.decompose(mu)
                assert a.row == b.row and a.effect.body == b.effect.body

    @given(kind_and_value())
    def test_round_trip(self, kv):
        _, mu = kv
        assert ed.interpret(ed.decompose(mu)) == mu

    @given(kind_and_value())
    def test_minimality(self, kv):
        _, mu = kv
        got = ed.decompose(mu)
        assert len(got.row) == len(ed.support(mu))
        assert len(set(got.row)) == len(got.row)


class TestDiagramEq:
    def test_distinct_formal_sums_same_value(self):
        xi = pres(dist_effect(F(1, 2), F(1, 2)), "x", "x")
        rho = pres(dist_effect(F(1)), "x")
        assert ed.diagram_eq(xi, rho)

    def test_reflexive(self):
        xi = pres(dist_effect(F(1, 2)), "x")
        assert ed.diagram_eq(xi, xi)

    def test_distinct_dirac_rows_differ(self):
        # needs unit injectivity
        assert not ed.diagram_eq(pres(dist_effect(F(1)), "x"),
                                 pres(dist_effect(F(1)), "y"))

    def test_kind_mismatch(self):
        with pytest.raises(ed.KindError):
            ed.diagram_eq(pres(ed.trivial_effect(ed.MAYBE), "x"),
                          pres(ed.trivial_effect(ed.DIST), "x"))

    def test_equivalence_relation(self):
        rng = random.Random(5)
        for kind in ALL_KINDS:
            for _ in range(20):
                mu = gen.random_value(kind, rng, CARRIER)
                base = ed.decompose(mu)
                n = base.effect.arity
                m = n + rng.randint(0, 2)
                iota = sorted(rng.sample(range(1, m + 1), n))
                fill = [rng.choice(CARRIER) for _ in range(m - n)]
                other = ed.extend(base, iota, m, fill)
                third = ed.decompose(ed.interpret(other))
                assert ed.diagram_eq(base, other)
                assert ed.diagram_eq(other, base)
                assert ed.diagram_eq(other, third)
                assert ed.diagram_eq(base, third)


class TestDiagramLeq:
    def test_bottom_below_everything(self):
        bot = pres(ed.bottom_effect(ed.DIST, 0))
        xi = pres(dist_effect(F(1, 2), F(1, 4)), "x", "y")
        assert ed.diagram_leq(bot, xi)

    def test_reflexive(self):
        xi = pres(dist_effect(F(1, 2), F(1, 4)), "x", "y")
        assert ed.diagram_leq(xi, xi)

    def test_pointwise(self):
        assert ed.diagram_leq(pres(dist_effect(F(1, 2)), "x"),
                              pres(dist_effect(F(1)), "x"))

    def test_preorder_induces_diagram_eq(self):
        rng = random.Random(6)
        for kind in ALL_KINDS:
            for _ in range(25):
                a = ed.decompose(gen.random_value(kind, rng, CARRIER))
                b = ed.decompose(gen.random_value(kind, rng, CARRIER))
                both = ed.diagram_leq(a, b) and ed.diagram_leq(b, a)
                assert both == ed.diagram_eq(a, b)


class TestExtend:
    def test_padding_with_zero_weights(self):
        xi = pres(dist_effect(F(1)), "x")
        got = ed.extend(xi, (1,), 3, ("y", "z"))
        assert got.row == ("x", "y", "z")
        assert got.effect.body == ed.MonadValue(ed.DIST, {1: F(1)})
        assert ed.diagram_eq(got, xi)

    def test_identity_injection(self):
        xi = pres(dist_effect(F(1, 2), F(1, 2)), "x", "y")
        assert ed.extend(xi, (1, 2), 2, ()) == xi

    def test_bottom_extension_stays_bottom(self):
        for kind in ALL_KINDS:
            xi = pres(ed.bottom_effect(kind, 0))
            got = ed.extend(xi, (), 2, ("a", "b"))
            assert got.row == ("a", "b")
            assert ed.diagram_eq(got, xi)

    def test_never_changes_interpretation(self):
        rng = random.Random(7)
        for kind in ALL_KINDS:
            for _ in range(30):
                xi = ed.decompose(gen.random_value(kind, rng, CARRIER))
                n = xi.effect.arity
                m = n + rng.randint(0, 3)
                iota = rng.sample(range(1, m + 1), n)
                fill = [rng.choice(CARRIER) for _ in range(m - n)]
                assert ed.diagram_eq(ed.extend(xi, iota, m, fill), xi)

    def test_rejects_non_injective(self):
        xi = pres(dist_effect(F(1, 2), F(1, 2)), "x", "y")
        with pytest.raises(ValueError):
            ed.extend(xi, (1, 1), 3, ("z",))

    def test_rejects_wrong_fill_size(self):
        xi = pres(dist_effect(F(1)), "x")
        with pytest.raises(ValueError):
            ed.extend(xi, (1,), 3, ("y",))


class TestRender:
    def test_trivial(self):
        assert ed.render(pres(ed.trivial_effect(ed.MAYBE), "v")) == \
            "[η ‖ 1→v]"

    def test_dist(self):
        xi = pres(dist_effect(F(1, 2), F(1, 2)), "a", "b")
        assert ed.render(xi) == "[1/2,1/2 ‖ 1→a ; 2→b]"

    def test_bottom(self):
        assert ed.render(pres(ed.bottom_effect(ed.MAYBE, 0))) == "[⊥ ‖ ]"

    def test_structural_determinism(self):
        rng = random.Random(8)
        for kind in ALL_KINDS:
            for _ in range(10):
                xi = gen.random_presentation(kind, rng, CARRIER)
                rho = ed.Presentation(
                    ed.GenericEffect(xi.effect.arity, xi.effect.body),
                    tuple(xi.row))
                assert ed.render(xi) == ed.render(rho)
                assert ed.render(xi, "machine") == ed.render(rho, "machine")

    def test_machine_round_trip(self):
        rng = random.Random(9)
        for kind in ALL_KINDS:
            for _ in range(10):
                xi = gen.random_presentation(kind, rng, CARRIER)
                back = presentations.from_obj(
                    json.loads(ed.render(xi, "machine")))
                assert back.row == xi.row
                assert back.effect.body == xi.effect.body


class TestBottomCollapse:
    def test_any_arity_collapses(self):
        for kind in ALL_KINDS:
            empty = pres(ed.bottom_effect(kind, 0))
            for n in (0, 1, 2, 5, 8):
                row = tuple(CARRIER[i % len(CARRIER)] for i in range(n))
                xi = pres(ed.bottom_effect(kind, n), *row)
                assert ed.diagram_eq(xi, empty)

    def test_arity_cap_is_hard(self):
        ed.bottom_effect(ed.MAYBE, presentations.MAX_ARITY)
        with pytest.raises(ed.ArityCapError):
            ed.bottom_effect(ed.MAYBE, presentations.MAX_ARITY + 1)


class TestGenericEffectInvariants:
    def test_body_must_live_over_index_set(self):
        with pytest.raises(ValueError):
            ed.GenericEffect(1, ed.unit(ed.DIST, 5))

    def test_row_length_checked(self):
        with pytest.raises(ValueError):
            ed.Presentation(ed.trivial_effect(ed.DIST), ("x", "y"))
