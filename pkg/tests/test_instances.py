"""Concrete operads: sphere pair-classes, Poisson table, framed, witness."""

import itertools
from fractions import Fraction

import pytest

from operadlab.instances import (
    apply_inclusion,
    arity_complex,
    element_to_vector,
    framed_multiplicative,
    homology_operad,
    poisson_inclusion,
    poisson_operad_small,
    sphere_multiplicative,
    sphere_operad,
    vector_to_element,
    witness_generator,
    witness_multiplicative,
    witness_operad,
)
from operadlab.operads import (
    OpElement,
    check_d_squared,
    check_leibniz,
    check_operad_axioms,
)


class TestSphereComposition:
    def setup_method(self):
        self.S = sphere_operad(5, max_arity=4)
        self.mu = self.S.mu()
        self.alpha = self.S.alpha()

    def test_point_class_compositions(self):
        got = self.S.compose(self.mu, 1, self.mu)
        assert dict(got.coeffs) == {(): Fraction(1)}

    def test_alpha_after_mu_distributes_diagonally(self):
        # inserting the multiplication into slot 1 doubles that point
        got = self.S.compose(self.alpha, 1, self.mu)
        assert dict(got.coeffs) == {
            ((1, 3),): Fraction(1),
            ((2, 3),): Fraction(1),
        }
        got = self.S.compose(self.alpha, 2, self.mu)
        assert dict(got.coeffs) == {
            ((1, 2),): Fraction(1),
            ((1, 3),): Fraction(1),
        }

    def test_mu_after_alpha_relabels(self):
        assert dict(self.S.compose(self.mu, 1, self.alpha).coeffs) == {
            ((1, 2),): Fraction(1)
        }
        assert dict(self.S.compose(self.mu, 2, self.alpha).coeffs) == {
            ((2, 3),): Fraction(1)
        }

    def test_alpha_after_alpha(self):
        got = self.S.compose(self.alpha, 1, self.alpha)
        assert dict(got.coeffs) == {
            ((1, 2), (1, 3)): Fraction(1),
            ((1, 2), (2, 3)): Fraction(1),
        }

    def test_point_insertion_drops_points(self):
        point = OpElement.basis(0, ())
        got = self.S.compose(self.alpha, 1, point)
        assert got.arity == 1 and got.is_zero()  # the pair collapses
        got = self.S.compose(self.mu, 1, point)
        assert dict(got.coeffs) == {(): Fraction(1)}

    def test_axioms(self):
        assert check_operad_axioms(self.S, samples=500).ok


class TestPoisson:
    def test_inclusion_commutes_with_composition(self):
        for d in (5, 7):
            P = poisson_operad_small(d)
            S = sphere_operad(d, max_arity=3)
            incl = poisson_inclusion(d)
            checked = 0
            for n in (1, 2):
                for qx, xs in sorted(P.basis_by_degree(n).items()):
                    for x in xs:
                        for m in (1, 2):
                            if n + m - 1 > 3:
                                continue
                            for qy, ys in sorted(P.basis_by_degree(m).items()):
                                for y in ys:
                                    for i in range(1, n + 1):
                                        ex = OpElement.basis(n, x)
                                        ey = OpElement.basis(m, y)
                                        lhs = apply_inclusion(
                                            incl, P.compose(ex, i, ey)
                                        )
                                        rhs = S.compose(
                                            apply_inclusion(incl, ex),
                                            i,
                                            apply_inclusion(incl, ey),
                                        )
                                        assert (lhs - rhs).is_zero()
                                        checked += 1
            assert checked >= 15


class TestFramed:
    def test_axioms_and_multiplication(self):
        M = framed_multiplicative(5, 3, 8)
        assert check_operad_axioms(M.operad, samples=300).ok
        op = M.operad
        assert (op.compose(M.mult, 1, M.mult) - op.compose(M.mult, 2, M.mult)).is_zero()

    def test_dimension_is_base_times_labels(self):
        M = framed_multiplicative(5, 2, 8)
        op = M.operad
        # arity 1: base is one point class; framed adds the coalgebra
        by_deg = op.basis_by_degree(1)
        # 1, b1, b2; the top product b1 b2 exceeds the degree cap
        assert sorted(by_deg) == [0, 3, 7]
        assert sum(len(v) for v in by_deg.values()) == 3


class TestWitness:
    def test_differential_structure(self):
        for m in (2, 3):
            op = witness_operad(m)
            g = witness_generator(op, "g")
            h = witness_generator(op, "h")
            nu = witness_generator(op, "nu")
            assert op.differential(g).is_zero()
            dh = op.differential(h)
            want = (
                op.compose(nu, 2, g) + op.compose(nu, 1, g) - op.compose(g, 1, nu)
            )
            assert (dh - want).is_zero()
            assert check_d_squared(op).ok and check_leibniz(op).ok

    def test_padded_variants(self):
        padded = witness_operad(2, padded=True)
        broken = witness_operad(2, break_h1=True)
        for op in (padded, broken):
            assert check_d_squared(op).ok and check_leibniz(op).ok
        # the padding keeps H_1 of the arity-3 part zero; breaking drops it
        h1 = arity_complex(padded, 3).homology().per_degree[1]
        assert h1.reliable and h1.dim == 0
        h1b = arity_complex(broken, 3).homology().per_degree[1]
        assert h1b.reliable and h1b.dim == 1


class TestVectorBridge:
    def test_roundtrip(self):
        op = witness_operad(2)
        h = witness_generator(op, "h")
        v = element_to_vector(op, h, 8)
        back = vector_to_element(op, 2, 8, v)
        assert (back - h).is_zero()


class TestHomologyOperad:
    def test_witness_homology_operad(self):
        op = witness_operad(2)
        H = homology_operad(op)
        assert not H.has_differential()
        assert check_operad_axioms(H, samples=300).ok
        # g survives in arity 1 degree 7; h is not a cycle
        assert len(H.arity_degree_basis(1, 7)) == 1
        assert len(H.arity_degree_basis(2, 8)) == 0
