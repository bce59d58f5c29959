"""Unit tests for the sl2 examples: Casimir, fibers and the regular slice."""

import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from jet_poisson.exceptions import InputError
from jet_poisson.models.ideal import Ideal
from jet_poisson.models.lie import FiberSpec, LieAlgebraData
from jet_poisson.models.polynomial import Polynomial, VarId, var
from jet_poisson.models.ring import PoissonStructure
from jet_poisson.services.groebner import ideal_equal, initial_ideal
from jet_poisson.services.jet import build_jet_ring, jet_ideal, translate
from jet_poisson.services.liealg import (
    casimir_check,
    center_isomorphism_check,
    fiber_ideal,
    jet_restriction,
    lie_algebra_from_json,
    make_sl2,
    nilpotent_cone,
    regular_slice_sl2,
)
from jet_poisson.services.vpa import is_chiral_ideal
from jet_poisson.utils.parsing import fixture_path

GOLDEN = Path(__file__).parent.parent / "golden"
E, H, F, S = VarId("e"), VarId("h"), VarId("f"), VarId("s")


class TestSl2:
    """Tests for the sl2 data."""

    def test_brackets(self, sl2, ehf):
        e, h, f = ehf
        assert sl2.poisson.bracket(h, e) == e.scale(2)
        assert sl2.poisson.bracket(h, f) == f.scale(-2)
        assert sl2.poisson.bracket(e, f) == h
        assert sl2.poisson.is_antisymmetric()

    def test_casimir(self, sl2, omega):
        assert sl2.invariants_p == (omega,)
        assert casimir_check(sl2)

    def test_non_invariant_fails_casimir_check(self, sl2):
        broken = LieAlgebraData(
            name="broken", basis=sl2.basis, poisson=sl2.poisson, invariants_p=(var("e"),)
        )
        assert not casimir_check(broken)

    def test_nilpotent_cone(self, sl2, omega):
        assert nilpotent_cone(sl2).generators == (omega,)

    def test_nilpotent_cone_needs_invariants(self, sl2):
        bare = LieAlgebraData(name="bare", basis=sl2.basis, poisson=sl2.poisson)
        with pytest.raises(InputError):
            nilpotent_cone(bare)


class TestLieAlgebraFromJson:
    """Tests for lie_algebra_from_json."""

    def test_shipped_sl2_matches_library(self, sl2):
        loaded = lie_algebra_from_json(fixture_path("sl2.json"))
        assert loaded.basis == sl2.basis
        assert loaded.poisson == sl2.poisson
        assert loaded.invariants_p == sl2.invariants_p
        assert loaded.sl2_triple == sl2.sl2_triple
        assert loaded.weight_map == {E: 4, H: 2, F: 0}

    def test_relations_are_ignored(self):
        """The Lie algebra is always the free ring."""
        loaded = lie_algebra_from_json(fixture_path("sl2.json"))
        assert loaded.presentation.relations == ()

    def test_needs_bracket(self):
        with pytest.raises(InputError):
            lie_algebra_from_json({"vars": ["e", "h", "f"]})

    def test_triple_must_have_three_entries(self):
        doc = {"vars": ["x", "y"], "poisson": [["0", "x"], ["-x", "0"]], "sl2_triple": ["x", "y"]}
        with pytest.raises(InputError):
            lie_algebra_from_json(doc)


class TestFiberIdeal:
    """Tests for fiber ideals of the jet adjoint quotient."""

    def test_generators(self, sl2, sl2_jet, omega):
        jr = sl2_jet(1)
        spec = FiberSpec.from_mapping(1, {(1, 0): 2, (1, 1): Fraction(1, 2)})
        ideal = fiber_ideal(sl2, jr, spec)
        assert ideal.generators == (omega - 2, translate(omega) - Fraction(1, 2))

    def test_zero_fiber_is_jet_ideal_of_cone(self, sl2, sl2_jet, omega):
        jr = sl2_jet(2)
        zero = fiber_ideal(sl2, jr, FiberSpec(2))
        assert zero.generators == jet_ideal(jr, Ideal((omega,))).generators

    @pytest.mark.parametrize("n", [0, 1])
    def test_initial_ideal_is_zero_fiber(self, sl2, sl2_jet, n):
        """Every fiber degenerates to the jet scheme of the nilpotent cone."""
        jr = sl2_jet(n)
        xi = {(1, j): j + 2 for j in range(n + 1)}
        ideal = fiber_ideal(sl2, jr, FiberSpec.from_mapping(n, xi))
        standard = {v: 1 for v in jr.jet_vars}
        zero = fiber_ideal(sl2, jr, FiberSpec(n))
        assert ideal_equal(initial_ideal(ideal, standard), zero)

    @pytest.mark.parametrize("n", [0, 1, pytest.param(2, marks=pytest.mark.slow)])
    def test_sampled_fibers_degenerate_to_the_cone(self, sl2, sl2_jet, n):
        """Under the jet weights deg x_(-j-1) = 1 + j, gr of every fiber is the zero fiber."""
        jr = sl2_jet(n)
        weights = {v: 1 + v.jet_level for v in jr.jet_vars}
        zero = fiber_ideal(sl2, jr, FiberSpec(n))
        rng = random.Random(n)
        for _ in range(5):
            xi = {(1, j): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for j in range(n + 1)}
            ideal = fiber_ideal(sl2, jr, FiberSpec.from_mapping(n, xi))
            assert ideal_equal(initial_ideal(ideal, weights), zero)

    def test_fibers_are_chiral(self, sl2, sl2_jet):
        jr = sl2_jet(1)
        ideal = fiber_ideal(sl2, jr, FiberSpec.from_mapping(1, {(1, 0): 3}))
        assert is_chiral_ideal(jr, sl2.poisson, ideal)

    def test_level_above_ring_raises(self, sl2, sl2_jet):
        with pytest.raises(InputError):
            fiber_ideal(sl2, sl2_jet(0), FiberSpec(1))

    def test_invariant_index_out_of_range(self, sl2, sl2_jet):
        with pytest.raises(InputError):
            fiber_ideal(sl2, sl2_jet(0), FiberSpec.from_mapping(0, {(2, 0): 1}))

    @pytest.mark.parametrize("key", [(0, 0), (1, 2)])
    def test_spec_validates_indices(self, key):
        with pytest.raises(InputError):
            FiberSpec.from_mapping(1, {key: 1})


class TestRegularSlice:
    """Tests for the regular slice of sl2."""

    def test_casimir_restricts_to_coordinate(self, sl2):
        slice_ = regular_slice_sl2(sl2)
        assert slice_.restricted_invariants == (var("s"),)

    def test_restricted_cone_is_a_point(self, sl2):
        """The slice meets the nilpotent cone in a single reduced point."""
        slice_ = regular_slice_sl2(sl2)
        assert ideal_equal(Ideal(slice_.restricted_invariants), Ideal((var("s"),)))

    def test_slice_ring(self):
        ring = regular_slice_sl2().presentation
        assert ring.vars == (S,)
        assert ring.poisson.is_zero
        assert ring.weight_map == {S: 4}

    def test_jet_restriction(self, sl2):
        images = jet_restriction(regular_slice_sl2(sl2), 1)
        assert images[E] == var("s")
        assert images[VarId("e", 1)] == var("s", 1)
        assert images[F] == Polynomial.constant(1)
        assert images[VarId("f", 1)].is_zero
        assert images[VarId("h", 1)].is_zero

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_sampled_slice_fibers_degenerate(self, sl2, slice_ring, n):
        """With the slice weights, gr of every fiber on the slice is the zero fiber."""
        slice_ = regular_slice_sl2(sl2)
        jr = build_jet_ring(slice_ring, n)
        restricted = slice_.restricted_invariants
        zero = fiber_ideal(sl2, jr, FiberSpec(n), invariants=restricted)
        rng = random.Random(20 + n)
        for _ in range(6):
            xi = {(1, j): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for j in range(n + 1)}
            ideal = fiber_ideal(sl2, jr, FiberSpec.from_mapping(n, xi), invariants=restricted)
            assert ideal_equal(initial_ideal(ideal, jr.jet_weight_map), zero)

    def test_needs_triple(self, sl2):
        bare = LieAlgebraData(name="bare", basis=sl2.basis, poisson=sl2.poisson)
        with pytest.raises(InputError):
            regular_slice_sl2(bare)


class TestCenterIsomorphism:
    """Tests for center_isomorphism_check."""

    def test_level_zero(self, sl2):
        report = center_isomorphism_check(sl2, 0, 2)
        assert report.applicable
        assert report.equal
        assert report.center_dims == {0: 1, 4: 1, 8: 1}

    def test_matches_golden(self, sl2):
        expected = json.loads((GOLDEN / "center_iso_sl2_n1_d3.json").read_text())
        assert center_isomorphism_check(sl2, 1, 3).to_dict() == expected

    def test_zero_bracket_is_inapplicable(self):
        x = VarId("x")
        zero = LieAlgebraData(name="abelian", basis=(x,), poisson=PoissonStructure.zero((x,)))
        report = center_isomorphism_check(zero, 1, 2)
        assert not report.applicable
        assert not report.equal
        assert "inapplicable" in str(report)

    def test_other_algebras_raise(self, plane_ring):
        plane = LieAlgebraData(
            name="plane", basis=plane_ring.vars, poisson=plane_ring.poisson
        )
        with pytest.raises(InputError):
            center_isomorphism_check(plane, 0, 2)
