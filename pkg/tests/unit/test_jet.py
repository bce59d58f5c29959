"""Unit tests for jet rings, the derivation T, jet ideals and jet points."""

from fractions import Fraction
import random

import pytest
from jet_poisson.exceptions import (
    HeadroomExceededError,
    InputError,
    MissingAssignmentError,
    PointNotOnVarietyError,
)
from jet_poisson.models.ideal import Ideal
from jet_poisson.models.polynomial import Polynomial, VarId, var
from jet_poisson.services.groebner import ideal_equal
from jet_poisson.services.jet import (
    build_jet_ring,
    derivation_T,
    extension_ideal,
    iota_point,
    jet_generators,
    jet_ideal,
    make_jet_point,
    maximal_ideal,
    negative_mode,
    pullback_ideal,
    restrict_to_base,
    translate,
    translate_power,
    truncate_point,
    with_level,
)
from jet_poisson.services.axioms import random_jet_polynomial

E, H, F = VarId("e"), VarId("h"), VarId("f")


class TestTranslate:
    """Tests for the derivation T."""

    def test_on_variables(self):
        """T x_(-j) = j x_(-j-1)."""
        assert translate(var("x")) == var("x", 1)
        assert translate(var("x", 1)) == var("x", 2).scale(2)

    def test_leibniz_rule(self):
        x, y = var("x"), var("y")
        assert translate(x * y) == var("x", 1) * y + x * var("y", 1)

    def test_kills_constants(self):
        assert translate(Polynomial.constant(5)).is_zero

    def test_truncated_at_level(self):
        """With a level, T of a top-level variable is 0."""
        assert translate(var("x", 1), level=1).is_zero
        assert translate(var("x"), level=1) == var("x", 1)

    def test_power(self):
        """T^2 x = 2 x_(-3)."""
        assert translate_power(var("x"), 2) == var("x", 2).scale(2)
        assert translate_power(var("x"), 0) == var("x")

    def test_derivation_T_checks_headroom(self, sl2_jet):
        jr = sl2_jet(0)
        with pytest.raises(HeadroomExceededError):
            derivation_T(jr, var("e", 1))
        assert derivation_T(jr, var("e")).is_zero

    @pytest.mark.parametrize("n", [1, 2])
    def test_derivation_T_is_a_derivation(self, sl2_jet, n):
        """T(pq) = (Tp)q + p(Tq) and T is linear on random jets of J_n."""
        jr = sl2_jet(n)
        rng = random.Random(n)
        for _ in range(25):
            p, q = (random_jet_polynomial(rng, list(jr.jet_vars), max_degree=3) for _ in range(2))
            T = lambda f: derivation_T(jr, f)
            assert T(p * q) == T(p) * q + p * T(q)
            assert T(p + q.scale(3)) == T(p) + T(q).scale(3)
            assert T(p).jet_depth <= n

    def test_derivation_T_rejects_jets_past_the_level(self, sl2_jet):
        jr = sl2_jet(2)
        with pytest.raises(HeadroomExceededError):
            derivation_T(jr, var("e") * var("f", 3))


class TestBuildJetRing:
    """Tests for build_jet_ring."""

    def test_cone_level_one(self, cone_ring, omega):
        """J_1 of the nilpotent cone: 6 variables, relations Omega and T Omega."""
        jr = build_jet_ring(cone_ring, 1)
        assert len(jr.jet_vars) == 6
        assert jr.jet_relations.generators == (omega, translate(omega))

    def test_t_omega(self, omega):
        """T(ef + h^2/4) = e_(-2) f + e f_(-2) + h h_(-2) / 2."""
        e, h, f = var("e"), var("h"), var("f")
        expected = var("e", 1) * f + e * var("f", 1) + (h * var("h", 1)).scale(Fraction(1, 2))
        assert translate(omega) == expected

    def test_jet_weights(self, cone_ring):
        """deg x_(-j-1) = deg x + j."""
        weights = build_jet_ring(cone_ring, 2).jet_weight_map
        assert weights[VarId("e", 1)] == 5
        assert weights[VarId("f", 2)] == 2
        assert weights[VarId("h")] == 2

    def test_ungraded_ring_has_no_weights(self, sl2):
        ring = sl2.presentation
        bare = type(ring)(vars=ring.vars, poisson=ring.poisson)
        assert build_jet_ring(bare, 1).jet_weight_map is None

    def test_negative_level_raises(self, cone_ring):
        with pytest.raises(InputError):
            build_jet_ring(cone_ring, -1)

    def test_with_level(self, cone_ring):
        jr = build_jet_ring(cone_ring, 1)
        assert with_level(jr, 1) is jr
        assert with_level(jr, 2).level == 2

    def test_jet_generators(self):
        x = var("x")
        assert jet_generators(x * x, 1) == [x * x, (x * var("x", 1)).scale(2)]


class TestJetIdeals:
    """Tests for jet, extension and restricted ideals."""

    def test_jet_ideal(self, sl2_jet):
        jr = sl2_jet(2)
        ideal = jet_ideal(jr, Ideal((var("e"),)))
        assert ideal.generators == (var("e"), var("e", 1), var("e", 2).scale(2))

    def test_jet_ideal_needs_base_generators(self, sl2_jet):
        with pytest.raises(InputError):
            jet_ideal(sl2_jet(1), Ideal((var("e", 1),)))

    def test_extension_ideal_adds_relations_only(self, cone_ring, omega):
        jr = build_jet_ring(cone_ring, 1)
        ideal = extension_ideal(jr, Ideal((var("e"),)))
        assert ideal.generators == (var("e"), omega, translate(omega))

    def test_pullback_checks_headroom(self, sl2_jet):
        with pytest.raises(HeadroomExceededError):
            pullback_ideal(Ideal((var("e", 2),)), sl2_jet(1))

    def test_restrict_to_base(self, sl2_jet):
        jr = sl2_jet(1)
        restricted = restrict_to_base(Ideal((var("e"), var("e", 1))), jr)
        assert ideal_equal(restricted, Ideal((var("e"),)))


class TestJetPoints:
    """Tests for jet points."""

    def test_make_jet_point_requires_every_coordinate(self, sl2_jet):
        with pytest.raises(MissingAssignmentError):
            make_jet_point(sl2_jet(0), {E: 1, H: 0})

    def test_point_off_the_cone_raises(self, cone_ring):
        jr = build_jet_ring(cone_ring, 0)
        with pytest.raises(PointNotOnVarietyError):
            make_jet_point(jr, {E: 1, H: 0, F: 1})

    def test_iota_point(self, cone_ring):
        """The constant arc has zero coordinates above level 0."""
        jr = build_jet_ring(cone_ring, 1)
        point = iota_point(jr, {E: 1, H: 0, F: 0}).as_dict()
        assert point[E] == 1
        assert point[VarId("e", 1)] == 0
        assert len(point) == 6

    def test_iota_point_checks_base_relations(self, cone_ring):
        jr = build_jet_ring(cone_ring, 1)
        with pytest.raises(PointNotOnVarietyError):
            iota_point(jr, {E: 1, H: 0, F: 1})

    def test_truncate_point(self, sl2_jet):
        jr = sl2_jet(1)
        point = iota_point(jr, {E: 2, H: 1, F: 3})
        truncated = truncate_point(point, 0)
        assert truncated.as_dict() == {E: 2, H: 1, F: 3}
        with pytest.raises(InputError):
            truncate_point(point, 2)

    def test_maximal_ideal(self, sl2_jet):
        jr = sl2_jet(0)
        point = make_jet_point(jr, {E: 1, H: 2, F: 3})
        assert set(maximal_ideal(jr, point).generators) == {
            var("e") - 1,
            var("h") - 2,
            var("f") - 3,
        }


class TestNegativeMode:
    """Tests for negative_mode."""

    def test_value(self, sl2_jet):
        """a_(-2) b = (T a) b."""
        jr = sl2_jet(1)
        assert negative_mode(jr, var("e"), 1, var("f")) == var("e", 1) * var("f")

    def test_headroom(self, sl2_jet):
        with pytest.raises(HeadroomExceededError):
            negative_mode(sl2_jet(0), var("e"), 1, var("f"))
