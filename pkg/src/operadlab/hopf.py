"""Exterior Hopf algebras on primitive odd generators, and their cobar
complexes.

The model covers the rational homology of the rotation groups: the full
group in odd dimension d = 2m+1 is exterior on generators of degree
4i-1 (i = 1..m); the subgroup fixing a vector is exterior on the first
m-1 of those together with one extra generator of degree 2m-1.  All
generators are primitive for the diagonal, which pins the whole
coalgebra structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import ChainComplexWindow, GradedSpace
from .linalg import RationalMatrix

# A monomial is a sorted tuple of generator indices (square-free).
Monomial = tuple


def _merge_sign(a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
    """Multiply square-free monomials in odd generators.

    Returns (sign, merged) or None when a generator repeats.  All
    generators are odd, so the Koszul sign is the parity of the merge
    inversions.
    """
    if set(a) & set(b):
        return None
    sign = 1
    merged = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            merged.append(b[j])
            j += 1
            # b[j] moved past the remaining len(a)-i odd generators
            if (len(a) - i) % 2:
                sign = -sign
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


class PrimitiveExteriorHopf:
    """Exterior algebra on named primitive generators of odd degree."""

    def __init__(self, generators: list[tuple[str, int]]):
        for name, deg in generators:
            if deg % 2 == 0 or deg <= 0:
                raise ValueError(f"generator {name} must have positive odd degree")
        if len({n for n, _ in generators}) != len(generators):
            raise ValueError("duplicate generator names")
        self.generators = list(generators)
        self.gen_degrees = [d for _, d in generators]
        self.gen_names = [n for n, _ in generators]
        self.monomials: list[Monomial] = [
            tuple(c)
            for k in range(len(generators) + 1)
            for c in itertools.combinations(range(len(generators)), k)
        ]

    @property
    def unit(self) -> Monomial:
        return ()

    def degree(self, mon: Monomial) -> int:
        return sum(self.gen_degrees[i] for i in mon)

    def dims_by_degree(self) -> dict:
        dims: dict = {}
        for mon in self.monomials:
            q = self.degree(mon)
            dims[q] = dims.get(q, 0) + 1
        return dims

    def total_dim(self) -> int:
        return len(self.monomials)

    def name(self, mon: Monomial) -> str:
        return "1" if not mon else "".join(self.gen_names[i] for i in mon)

    def product(self, a: Monomial, b: Monomial) -> tuple[Fraction, Monomial] | None:
        res = _merge_sign(a, b)
        if res is None:
            return None
        s, mon = res
        return Fraction(s), mon

    def counit(self, mon: Monomial) -> Fraction:
        return Fraction(1) if not mon else Fraction(0)

    def coproduct(self, mon: Monomial) -> dict:
        """Full diagonal: dict (left, right) -> coefficient.

        Primitivity of the generators forces the shuffle formula; the sign
        of a split is the parity of the unshuffle permutation (all odd).
        """
        out: dict = {}
        elems = list(mon)
        n = len(elems)
        for left_idx in _subsets(n):
            left = tuple(elems[i] for i in left_idx)
            right = tuple(e for i, e in enumerate(elems) if i not in left_idx)
            # inversions: pairs (i in right-part, j in left-part) with i < j
            inv = 0
            left_set = set(left_idx)
            for i in range(n):
                if i not in left_set:
                    inv += sum(1 for j in range(i + 1, n) if j in left_set)
            out[(left, right)] = Fraction(-1 if inv % 2 else 1)
        return out

    def reduced_coproduct(self, mon: Monomial) -> dict:
        return {
            (l, r): c
            for (l, r), c in self.coproduct(mon).items()
            if l and r
        }

    def iterated_coproduct(self, mon: Monomial, n: int) -> dict:
        """n-fold diagonal: dict (mon_1, ..., mon_n) -> coefficient.

        n = 0 gives the counit (empty tuple key), n = 1 the identity.
        """
        if n == 0:
            return {(): self.counit(mon)} if not mon else {}
        table: dict = {(mon,): Fraction(1)}
        for _ in range(n - 1):
            new: dict = {}
            for word, coeff in table.items():
                head, last = word[:-1], word[-1]
                for (l, r), c in self.coproduct(last).items():
                    key = head + (l, r)
                    new[key] = new.get(key, Fraction(0)) + coeff * c
            table = new
        return {k: v for k, v in table.items() if v != 0}


def _subsets(n: int):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def build_so_hopf(d: int, variant: str = "full") -> PrimitiveExteriorHopf:
    """Rational homology of the rotation group in odd dimension d >= 5.

    ``full``: generators b_1..b_m of degrees 4i-1, m = (d-1)/2.
    ``fixing-subgroup``: the subgroup fixing a vector; generators
    b_1..b_{m-1} plus e of degree 2m-1.
    """
    if d % 2 == 0 or d < 5:
        raise ValueError("d must be odd and at least 5")
    m = (d - 1) // 2
    if variant == "full":
        gens = [(f"b{i}", 4 * i - 1) for i in range(1, m + 1)]
    elif variant == "fixing-subgroup":
        gens = [(f"b{i}", 4 * i - 1) for i in range(1, m)] + [("e", 2 * m - 1)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return PrimitiveExteriorHopf(gens)


# -- cobar complex -----------------------------------------------------------

# A word is a tuple of nonempty monomials; bidegree (p, q) with
# p = -len(word), q = sum of monomial degrees.  The differential applies the
# reduced diagonal in each slot and has bidegree (-1, 0).


@dataclass(frozen=True)
class BidegreeWindow:
    p_min: int  # most negative cosimplicial degree (inclusive)
    q_max: int  # largest internal degree (inclusive)

    def contains(self, p: int, q: int) -> bool:
        return p >= self.p_min and q <= self.q_max


class CobarComplex:
    """Tensor words in the reduced coalgebra with the cobar differential."""

    def __init__(self, hopf: PrimitiveExteriorHopf, window: BidegreeWindow):
        self.hopf = hopf
        self.window = window
        self.min_letter_degree = min(hopf.gen_degrees)
        self._words_by_bidegree: dict = {}
        self._enumerate_words()

    def _enumerate_words(self):
        letters = [m for m in self.hopf.monomials if m]
        self._words_by_bidegree[(0, 0)] = [()]
        max_len = min(-self.window.p_min, self.window.q_max // self.min_letter_degree)
        level = [((), 0)]
        for k in range(1, max_len + 1):
            nxt = []
            for word, q in level:
                for letter in letters:
                    q2 = q + self.hopf.degree(letter)
                    if q2 <= self.window.q_max:
                        nxt.append((word + (letter,), q2))
            for word, q in nxt:
                self._words_by_bidegree.setdefault((-k, q), []).append(word)
            level = nxt
        for key in self._words_by_bidegree:
            self._words_by_bidegree[key].sort()

    def basis(self, p: int, q: int) -> list:
        return self._words_by_bidegree.get((p, q), [])

    def bigraded_dims(self) -> dict:
        return {k: len(v) for k, v in sorted(self._words_by_bidegree.items()) if v}

    def word_degree(self, word) -> int:
        return sum(self.hopf.degree(m) for m in word)

    def differential_word(self, word) -> dict:
        """Cobar differential of a single word: dict word -> coefficient.

        Slot j of the word is replaced by its reduced diagonal with the
        sign (-1)^{(sum of degrees of slots < j) + j} (slots counted from
        zero); the convention is validated by the d^2 = 0 suite.
        """
        out: dict = {}
        for j, letter in enumerate(word):
            presum = sum(self.hopf.degree(m) for m in word[:j])
            sign = Fraction(-1 if (presum + j) % 2 else 1)
            for (l, r), c in self.hopf.reduced_coproduct(letter).items():
                new = word[:j] + (l, r) + word[j + 1 :]
                out[new] = out.get(new, Fraction(0)) + sign * c
        return {w: c for w, c in out.items() if c != 0}

    def differential_matrix(self, p: int, q: int) -> RationalMatrix:
        """Matrix of d from bidegree (p, q) to (p-1, q)."""
        src = self.basis(p, q)
        tgt = self.basis(p - 1, q)
        tgt_index = {w: i for i, w in enumerate(tgt)}
        entries = {}
        for c, word in enumerate(src):
            for w, v in self.differential_word(word).items():
                r = tgt_index.get(w)
                if r is None:
                    raise AssertionError("cobar differential left the window")
                entries[(r, c)] = v
        return RationalMatrix(len(tgt), len(src), entries)

    def complex_at_q(self, q: int) -> ChainComplexWindow:
        """The cobar complex at fixed internal degree q, graded by p.

        Word length is bounded by q, so the complex is complete in p
        whenever the window allows all lengths up to q / (minimum letter
        degree); otherwise the low-p edge is flagged.
        """
        max_len_needed = q // self.min_letter_degree if q else 0
        complete = -self.window.p_min >= max_len_needed
        degrees = {}
        for (p, qq), words in self._words_by_bidegree.items():
            if qq == q:
                degrees[p] = tuple(words)
        if q == 0:
            degrees = {0: ((),)}
        space = GradedSpace(degrees)
        if not degrees:
            return ChainComplexWindow(space, {}, (0, 0))
        lo = min(degrees)
        hi = max(degrees)
        diff = {p: self.differential_matrix(p, q) for p in range(lo + 1, hi + 1)}
        # d also exits the lowest kept p; completeness below means that
        # map is genuinely zero-target only when no longer words exist
        return ChainComplexWindow(
            space, diff, (lo, hi), complete_below=complete, complete_above=True
        )


def cobar_homology(hopf: PrimitiveExteriorHopf, window: BidegreeWindow):
    """Bigraded cobar homology with representatives.

    Returns (dims, homs) where dims maps (p, q) -> dimension for reliable
    bidegrees and homs maps q -> HomologyResult of the fixed-q complex.
    """
    cb = CobarComplex(hopf, window)
    qs = sorted({q for (_, q) in cb._words_by_bidegree})
    dims: dict = {}
    homs: dict = {}
    for q in qs:
        C = cb.complex_at_q(q)
        H = C.homology()
        homs[q] = H
        for p, h in H.per_degree.items():
            if h.reliable and h.dim:
                dims[(p, q)] = h.dim
    return dims, homs


def cobar_homology_total_dims(hopf: PrimitiveExteriorHopf, total_max: int) -> dict:
    """Dimensions of cobar homology by total degree p + q up to total_max."""
    mind = min(hopf.gen_degrees)
    # total degree t = q - k and q <= t * mind/(mind-1)-ish; a word of
    # length k has q >= 3k, so t = q - k >= (mind-1) k, k <= t/(mind-1)
    kmax = total_max // (mind - 1) + 1
    window = BidegreeWindow(p_min=-kmax, q_max=total_max + kmax)
    dims, _ = cobar_homology(hopf, window)
    out: dict = {}
    for (p, q), dim in dims.items():
        t = p + q
        if t <= total_max:
            out[t] = out.get(t, 0) + dim
    return out
