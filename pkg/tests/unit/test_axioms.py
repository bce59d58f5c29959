"""Unit tests for the randomized vertex Poisson axiom checks."""

import random

import pytest
from jet_poisson.models.polynomial import Polynomial, VarId, var
from jet_poisson.models.ring import PoissonStructure, RingPresentation
from jet_poisson.services.axioms import AXIOMS, pva_axiom_suite, random_jet_polynomial
from jet_poisson.services.jet import build_jet_ring


class TestRandomJetPolynomial:
    """Tests for random_jet_polynomial."""

    def test_seeded_draws_repeat(self):
        variables = [VarId("x"), VarId("x", 1), VarId("y")]
        first = [random_jet_polynomial(random.Random(3), variables) for _ in range(5)]
        second = [random_jet_polynomial(random.Random(3), variables) for _ in range(5)]
        assert first == second

    def test_uses_given_variables(self):
        variables = [VarId("x"), VarId("y", 2)]
        rng = random.Random(0)
        for _ in range(20):
            p = random_jet_polynomial(rng, variables)
            assert not p.is_zero
            assert p.variables() <= set(variables)
            assert p.degree <= 2


class TestAxiomSuite:
    """Tests for pva_axiom_suite."""

    def test_sl2_passes(self, sl2, sl2_jet):
        report = pva_axiom_suite(sl2_jet(1), sl2.poisson, samples=12, seed=1)
        assert report.all_passed
        assert [r.axiom for r in report.results] == list(AXIOMS)

    @pytest.mark.slow
    def test_sl2_level_two_passes_fifty_samples(self, sl2, sl2_jet):
        report = pva_axiom_suite(sl2_jet(2), sl2.poisson, samples=50, seed=0)
        assert report.all_passed
        assert all(r.samples == 50 for r in report.results)

    def test_cone_passes_modulo_relations(self, cone_ring):
        jr = build_jet_ring(cone_ring, 1)
        assert pva_axiom_suite(jr, cone_ring.poisson, samples=10, seed=2).all_passed

    def test_symplectic_plane_passes(self, plane_ring):
        jr = build_jet_ring(plane_ring, 2)
        assert pva_axiom_suite(jr, plane_ring.poisson, samples=10).all_passed

    def test_zero_bracket_passes(self, slice_ring):
        jr = build_jet_ring(slice_ring, 2)
        report = pva_axiom_suite(jr, slice_ring.poisson_structure, samples=5)
        assert report.all_passed

    def test_symmetric_bracket_fails_skew_symmetry(self):
        """A symmetric matrix is caught on the base pair (x, y)."""
        x, y = VarId("x"), VarId("y")
        zero, px = Polynomial.zero(), var("x")
        ps = PoissonStructure((x, y), ((zero, px), (px, zero)))
        jr = build_jet_ring(RingPresentation(vars=(x, y), poisson=ps), 0)

        report = pva_axiom_suite(jr, ps, samples=6)

        assert not report.all_passed
        failing = report.result("PVA-2")
        assert not failing.passed
        assert failing.failures[0].a == "x_(-1)"
        assert failing.failures[0].b == "y_(-1)"

    def test_report_records_seed_and_level(self, plane_ring):
        jr = build_jet_ring(plane_ring, 1)
        report = pva_axiom_suite(jr, plane_ring.poisson, samples=3, seed=9)
        data = report.to_dict()
        assert data["level"] == 1
        assert data["seed"] == 9
        assert all(r["samples"] == 3 for r in data["results"])
        with pytest.raises(KeyError):
            report.result("PVA-6")

    def test_progress_bar_disabled_by_default(self, mocker, plane_ring):
        mock_tqdm = mocker.patch("jet_poisson.services.axioms.tqdm")
        jr = build_jet_ring(plane_ring, 0)

        pva_axiom_suite(jr, plane_ring.poisson, samples=2)

        mock_tqdm.assert_called_once()
        kwargs = mock_tqdm.call_args.kwargs
        assert kwargs["disable"] is True
        assert kwargs["total"] == 2 * len(AXIOMS)

    def test_progress_bar_enabled(self, mocker, plane_ring):
        mock_tqdm = mocker.patch("jet_poisson.services.axioms.tqdm")
        jr = build_jet_ring(plane_ring, 0)

        pva_axiom_suite(jr, plane_ring.poisson, samples=2, progress=True)

        assert mock_tqdm.call_args.kwargs["disable"] is False
        pbar = mock_tqdm.return_value.__enter__.return_value
        assert pbar.update.call_count == 2 * len(AXIOMS)
