"""The obstruction pipeline: witnesses, quotient class, independence."""

import random
from fractions import Fraction

import pytest

from operadlab.instances import (
    MultiplicativeStructure,
    framed_multiplicative,
    poisson_multiplicative,
    sphere_multiplicative,
    witness_generator,
    witness_multiplicative,
)
from operadlab.linalg import NoSolution
from operadlab.obstruction import (
    ObstructionInput,
    choice_independence,
    compare_with_d2,
    find_h,
    find_xi,
    formality_baseline,
    g_dependence_experiment,
    omega,
    run_pipeline,
)
from operadlab.operads import OpElement, parse_free_operad


def witness_input(m=2, **kw):
    M = witness_multiplicative(m, **kw)
    return ObstructionInput(M, witness_generator(M.operad, "g"), m)


class TestFindWitnesses:
    @pytest.mark.parametrize("m", [2, 3])
    def test_h_is_the_generator(self, m):
        inp = witness_input(m)
        h = find_h(inp)
        assert dict(h.coeffs) == {("h", (), ()): Fraction(1)}

    def test_xi_zero_for_strictly_associative(self):
        assert find_xi(witness_input(2)).is_zero()

    def test_no_solution_without_a_primitive(self):
        op = parse_free_operad(
            "nu:2:0\ng:1:7\n", associative="nu", max_arity=3, degree_cap=18
        )
        M = MultiplicativeStructure(op, witness_generator(op, "nu"), name="no-h")
        with pytest.raises(NoSolution):
            find_h(ObstructionInput(M, witness_generator(op, "g"), 2))

    def test_synthetic_nonassociative_xi(self):
        op = parse_free_operad(
            "nu:2:0\nc:3:1\nd c = nu o2 nu - nu o1 nu\n",
            max_arity=3,
            degree_cap=8,
        )
        M = MultiplicativeStructure(op, witness_generator(op, "nu"), name="synthetic")
        xi = find_xi(ObstructionInput(M, OpElement.zero(1), 2))
        assert dict(xi.coeffs) == {("c", (), (), ()): Fraction(1)}


class TestPipeline:
    @pytest.mark.parametrize("m", [2, 3])
    def test_class_nonzero_with_cycle_omega(self, m):
        inp = witness_input(m)
        res = run_pipeline(inp)
        op = inp.operad
        assert op.differential(res.omega).is_zero()
        assert res.nonzero and res.quotient_dim == 1
        assert len(res.omega.coeffs) == 4

    def test_broken_witness_equations_rejected(self):
        inp = witness_input(2)
        with pytest.raises(ValueError):
            omega(inp, OpElement.zero(2), OpElement.zero(3))  # dh != rhs

    @pytest.mark.parametrize("m", [2, 3])
    def test_zigzag_page_two_agrees(self, m):
        inp = witness_input(m)
        rep = compare_with_d2(inp)
        assert rep.equal


class TestChoiceIndependence:
    def test_padded_variant_ten_trials(self):
        inp = witness_input(2, padded=True)
        rep = choice_independence(inp, trials=10, rng=random.Random(11))
        assert rep.h_cycle_dim >= 1 and rep.xi_cycle_dim >= 1
        assert rep.h1_vanishes
        assert rep.h_classes_equal and rep.xi_classes_equal
        assert rep.ok and rep.baseline.nonzero

    def test_unpadded_has_single_choice(self):
        rep = choice_independence(witness_input(2), trials=3)
        assert rep.h_cycle_dim == 0 and rep.xi_cycle_dim == 0 and rep.ok

    def test_broken_h1_hypothesis_flagged(self):
        rep = choice_independence(witness_input(2, break_h1=True), trials=5)
        assert not rep.h1_vanishes
        assert rep.xi_classes_equal is None  # not asserted
        assert rep.h_classes_equal  # h-independence still holds

    def test_g_dependence_is_observational(self):
        moved = g_dependence_experiment(witness_input(2), trials=3)
        assert isinstance(moved, list) and len(moved) == 3


class TestFormalityBaseline:
    @pytest.mark.parametrize(
        "factory,m",
        [
            (lambda: sphere_multiplicative(5, 3, 9), 2),
            (lambda: framed_multiplicative(5, 3, 9), 2),
            (lambda: poisson_multiplicative(5), 2),
            (lambda: sphere_multiplicative(7, 3, 13), 3),
            (lambda: poisson_multiplicative(7), 3),
        ],
    )
    def test_zero_class_with_nontrivial_target(self, factory, m):
        res = formality_baseline(factory(), m)
        assert not res.nonzero
        assert res.quotient_dim > 0  # the quotient machinery really ran

    def test_rejects_differential_hosts(self):
        with pytest.raises(ValueError):
            formality_baseline(witness_multiplicative(2), 2)


class TestInputValidation:
    def test_wrong_degree_g_rejected(self):
        M = witness_multiplicative(2)
        bad = ObstructionInput(M, witness_generator(M.operad, "nu"), 2)
        with pytest.raises(ValueError):
            bad.validate()
