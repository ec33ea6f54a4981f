"""Exterior Hopf coalgebras of rotation groups and their cobar homology."""

import itertools
from fractions import Fraction

import pytest

from operadlab.hopf import (
    BidegreeWindow,
    CobarComplex,
    PrimitiveExteriorHopf,
    build_so_hopf,
    cobar_homology,
    cobar_homology_total_dims,
)


def free_commutative_bigraded(gens, t_max):
    """Monomial-count oracle: dims of the free graded-commutative algebra
    on bigraded generators (square-free when total degree is odd)."""

    def rec(i, budget):
        if i == len(gens):
            yield (0, 0)
            return
        (p0, q0) = gens[i]
        e_max = 1 if (p0 + q0) % 2 else budget // (p0 + q0)
        for e in range(e_max + 1):
            for (p, q) in rec(i + 1, budget - e * (p0 + q0)):
                yield (p + e * p0, q + e * q0)

    out: dict = {}
    for (p, q) in rec(0, t_max):
        if p + q <= t_max:
            out[(p, q)] = out.get((p, q), 0) + 1
    return out


class TestHopfStructure:
    def test_generator_degrees(self):
        assert build_so_hopf(5, "full").gen_degrees == [3, 7]
        assert build_so_hopf(7, "full").gen_degrees == [3, 7, 11]
        assert build_so_hopf(5, "fixing-subgroup").gen_degrees == [3, 3]
        assert build_so_hopf(7, "fixing-subgroup").gen_degrees == [3, 7, 5]

    def test_coproduct_counital_and_coassociative(self):
        H = build_so_hopf(7, "full")
        for mon in H.monomials:
            cop = H.coproduct(mon)
            # counit: the (unit, mon) and (mon, unit) components are 1
            assert cop.get(((), mon)) == 1
            assert cop.get((mon, ())) == 1
            # coassociativity on two-sided iterations
            left: dict = {}
            right: dict = {}
            for (a, b), c in cop.items():
                for (a1, a2), c2 in H.coproduct(a).items():
                    left[(a1, a2, b)] = left.get((a1, a2, b), Fraction(0)) + c * c2
                for (b1, b2), c2 in H.coproduct(b).items():
                    right[(a, b1, b2)] = right.get((a, b1, b2), Fraction(0)) + c * c2
            assert {k: v for k, v in left.items() if v} == {
                k: v for k, v in right.items() if v
            }

    def test_even_degree_generator_rejected(self):
        with pytest.raises(ValueError):
            PrimitiveExteriorHopf([("bad", 2)])


class TestCobarComplex:
    def test_differential_squares_to_zero(self):
        cb = CobarComplex(build_so_hopf(5, "full"), BidegreeWindow(-4, 14))
        for (p, q), words in cb._words_by_bidegree.items():
            for w in words:
                dd: dict = {}
                for w1, c1 in cb.differential_word(w).items():
                    for w2, c2 in cb.differential_word(w1).items():
                        dd[w2] = dd.get(w2, Fraction(0)) + c1 * c2
                assert all(v == 0 for v in dd.values())

    def test_word_bigrading(self):
        cb = CobarComplex(build_so_hopf(5, "full"), BidegreeWindow(-3, 10))
        for (p, q), words in cb._words_by_bidegree.items():
            for w in words:
                assert len(w) == -p
                assert cb.word_degree(w) == q


class TestCobarHomology:
    @pytest.mark.parametrize("d", [5, 7])
    def test_bigraded_dims_are_free_commutative(self, d):
        m = (d - 1) // 2
        gens = [(-1, 4 * i - 1) for i in range(1, m + 1)]
        expected = free_commutative_bigraded(gens, 12)
        kmax = 12 // 2 + 1
        dims, _ = cobar_homology(
            build_so_hopf(d, "full"), BidegreeWindow(-kmax, 12 + kmax)
        )
        got = {pos: v for pos, v in dims.items() if sum(pos) <= 12}
        assert got == expected

    def test_total_dims_d5(self):
        # polynomial algebra on degrees 2 and 6
        assert cobar_homology_total_dims(build_so_hopf(5, "full"), 12) == {
            0: 1, 2: 1, 4: 1, 6: 2, 8: 2, 10: 2, 12: 3,
        }

    def test_fixing_subgroup_d5_is_two_polynomial_generators(self):
        dims = cobar_homology_total_dims(build_so_hopf(5, "fixing-subgroup"), 8)
        assert dims == {0: 1, 2: 2, 4: 3, 6: 4, 8: 5}
