"""Concrete operads.

* :class:`SphereOperad` — homology of the product-of-spheres operad whose
  arity-n part is one (d-1)-sphere per index pair.  Basis elements are
  subsets of pairs (fundamental class on the chosen factors, point class
  elsewhere); composition collapses outer indices onto the inserted block
  and distributes a sphere class landing on the block diagonally over the
  single result pairs.
* :func:`poisson_operad_small` — degree-(d-1) Poisson structure at arity
  <= 3, with the inclusion into the sphere operad.
* :class:`FramedOperad` — tensor with tuples of exterior-Hopf monomials;
  composition pushes the slot-i Hopf factor through the iterated diagonal.
* :func:`witness_operad` — the finite free chain operad on nu, g, h used
  as the obstruction testbed, with padded variants.
* :func:`homology_operad` — homology of a chain operad, as a TableOperad
  on homology classes with induced compositions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import ChainComplexWindow, GradedSpace
from .hopf import PrimitiveExteriorHopf
from .linalg import RationalMatrix, zero_vec
from .operads import (
    ArityOverflow,
    Coeffs,
    FreeChainOperad,
    LEAF,
    OpElement,
    Operad,
    TableOperad,
    TruncationError,
    parse_free_operad,
)


def _pairs(n: int):
    return tuple((i, j) for i in range(1, n) for j in range(i + 1, n + 1))


class SphereOperad(Operad):
    """Homology operad of products of (d-1)-spheres, one per index pair.

    Without a degree cap the arity-n basis has 2^C(n,2) elements, so large
    arities require ``degree_cap`` to bound the number of chosen pairs.
    """

    def __init__(self, d: int, max_arity: int = 4, degree_cap: int | None = None):
        if d % 2 == 0 or d < 5:
            raise ValueError("d must be odd and at least 5")
        if degree_cap is None and max_arity > 6:
            raise ValueError("arity cap above 6 requires a degree cap")
        self.d = d
        self.max_arity = max_arity
        self.degree_cap = degree_cap
        self._basis_cache: dict = {}

    # labels: sorted tuple of pairs (i, j), 1-based, i < j
    def basis_by_degree(self, n: int) -> dict:
        if n not in self._basis_cache:
            if n > self.max_arity:
                self._basis_cache[n] = {}
            else:
                all_pairs = _pairs(n)
                k_max = len(all_pairs)
                if self.degree_cap is not None:
                    k_max = min(k_max, self.degree_cap // (self.d - 1))
                by_deg: dict = {}
                for k in range(k_max + 1):
                    labels = [
                        tuple(sorted(c)) for c in itertools.combinations(all_pairs, k)
                    ]
                    by_deg[k * (self.d - 1)] = tuple(sorted(labels))
                self._basis_cache[n] = by_deg
        return self._basis_cache[n]

    def degree(self, n: int, label) -> int:
        return len(label) * (self.d - 1)

    @property
    def unit_label(self):
        return ()

    @property
    def point_label(self):
        # the arity-0 point (empty pair set)
        return ()

    def compose_basis(self, m: int, xl, i: int, n: int, yl) -> Coeffs:
        if m + n - 1 > self.max_arity:
            raise ArityOverflow(f"arity {m + n - 1} exceeds cap {self.max_arity}")
        return {lab: Fraction(1) for lab in self.compose_pairsets(m, xl, i, n, yl)}

    def compose_pairsets(self, m: int, xl, i: int, n: int, yl) -> list:
        """All result pair-sets of (x o_i y) for basis pair-sets.

        A result pair with both indices in the inserted block reads the
        y-component; otherwise the x-component at collapsed indices.  An
        x-pair touching the collapsed slot expands to one result pair per
        block position (diagonal distribution of its sphere class); pair
        sets never collide, so every term has coefficient one.
        """
        block = range(i, i + n)  # result indices occupied by y

        def collapse(c: int) -> int:
            if c < i:
                return c
            if c < i + n:
                return i
            return c - n + 1

        # y-pairs shift into the block
        shifted = [tuple(sorted((a + i - 1, b + i - 1))) for (a, b) in yl]
        # each x-pair distributes over its preimages under collapse
        choices = []
        for (p, q) in xl:
            targets = []
            ps = list(block) if p == i else [p if p < i else p + n - 1]
            qs = list(block) if q == i else [q if q < i else q + n - 1]
            for a in ps:
                for b in qs:
                    if a != b:
                        targets.append(tuple(sorted((a, b))))
            choices.append(targets)
        out = []
        for combo in itertools.product(*choices):
            out.append(tuple(sorted(set(shifted) | set(combo))))
        return out

    def mu(self) -> OpElement:
        return OpElement.basis(2, ())

    def alpha(self) -> OpElement:
        return OpElement.basis(2, ((1, 2),))


def sphere_operad(d: int, max_arity: int = 4, degree_cap: int | None = None) -> SphereOperad:
    return SphereOperad(d, max_arity, degree_cap)


@dataclass(frozen=True)
class MultiplicativeStructure:
    """An operad with a chosen associative degree-0 multiplication.

    ``point`` is an arity-0 element used to build codegeneracies; chain
    hosts without one (the witness operads) get coface-only objects.
    """

    operad: Operad
    mult: OpElement
    point: OpElement | None = None
    name: str = ""

    def __post_init__(self):
        if self.mult.arity != 2:
            raise ValueError("multiplication must have arity 2")
        if self.operad.element_degree(2, self.mult) not in (0, None):
            raise ValueError("multiplication must have degree 0")
        if not self.operad.differential(self.mult).is_zero():
            raise ValueError("multiplication must be a cycle")


def sphere_multiplicative(d: int, max_arity: int = 4, degree_cap: int | None = None):
    op = sphere_operad(d, max_arity, degree_cap)
    return MultiplicativeStructure(
        op, op.mu(), point=OpElement.basis(0, ()), name=f"sphere:d={d}"
    )


def framed_multiplicative(
    d: int, max_arity: int = 4, degree_cap: int | None = None, variant: str = "full"
):
    from .hopf import build_so_hopf

    base = sphere_operad(d, max_arity, degree_cap)
    hopf = build_so_hopf(d, variant)
    op = FramedOperad(base, hopf, degree_cap=degree_cap)
    mult = OpElement.basis(2, ((), (hopf.unit, hopf.unit)))
    point = OpElement.basis(0, ((), ()))
    return MultiplicativeStructure(op, mult, point=point, name=f"framed(sphere:d={d})")


def poisson_multiplicative(d: int):
    op = poisson_operad_small(d)
    return MultiplicativeStructure(op, OpElement.basis(2, "m"), name=f"poisson:d={d}")


def witness_multiplicative(m: int = 2, padded: bool = False, break_h1: bool = False):
    op = witness_operad(m, padded=padded, break_h1=break_h1)
    tag = "padded-" if padded else ("h1broken-" if break_h1 else "")
    return MultiplicativeStructure(
        op, witness_generator(op, "nu"), name=f"{tag}witness:m={m}"
    )


# -- Poisson operad at arity <= 3 --------------------------------------------

# Basis labels at arity 3, degree d-1: "Bij" is the bracket of inputs i, j
# times the remaining input; at degree 2(d-1): "J1" = [[x1,x2],x3],
# "J2" = [x1,[x2,x3]] (the third iterated bracket is Jacobi-reduced).


def poisson_structure_constants(d: int):
    """Derive the arity <= 3 tables from the Leibniz and Jacobi rules.

    Degrees are even (d odd), so no Koszul signs enter; the bracket is
    antisymmetric and [[x1,x3],x2] = J1 - J2 by the Jacobi identity.
    """
    basis = {
        1: {0: ("1",)},
        2: {0: ("m",), d - 1: ("b",)},
        3: {0: ("M",), d - 1: ("B12", "B13", "B23"), 2 * (d - 1): ("J1", "J2")},
    }
    one = lambda lab: {lab: Fraction(1)}
    comp: dict = {}
    # unit laws
    for n, by_deg in basis.items():
        for labs in by_deg.values():
            for lab in labs:
                comp[(1, "1", 1, n, lab)] = one(lab)
                for i in range(1, n + 1):
                    comp[(n, lab, i, 1, "1")] = one(lab)
    # binary into binary
    comp[(2, "m", 1, 2, "m")] = one("M")
    comp[(2, "m", 2, 2, "m")] = one("M")
    comp[(2, "m", 1, 2, "b")] = one("B12")
    comp[(2, "m", 2, 2, "b")] = one("B23")
    # Leibniz: [x1 x2, x3] = x1[x2,x3] + [x1,x3] x2
    comp[(2, "b", 1, 2, "m")] = {"B23": Fraction(1), "B13": Fraction(1)}
    # [x1, x2 x3] = [x1,x2] x3 + x2 [x1,x3]
    comp[(2, "b", 2, 2, "m")] = {"B12": Fraction(1), "B13": Fraction(1)}
    comp[(2, "b", 1, 2, "b")] = one("J1")
    comp[(2, "b", 2, 2, "b")] = one("J2")
    return basis, comp


def poisson_operad_small(d: int) -> TableOperad:
    basis, comp = poisson_structure_constants(d)
    return TableOperad(basis, comp, unit="1", max_arity=3)


def poisson_inclusion(d: int):
    """Per-arity linear maps into sphere_operad(d, 3), as label -> Coeffs."""
    one = lambda lab: {lab: Fraction(1)}
    return {
        (1, "1"): one(()),
        (2, "m"): one(()),
        (2, "b"): one(((1, 2),)),
        (3, "M"): one(()),
        (3, "B12"): one(((1, 2),)),
        (3, "B13"): one(((1, 3),)),
        (3, "B23"): one(((2, 3),)),
        (3, "J1"): {((1, 2), (1, 3)): Fraction(1), ((1, 2), (2, 3)): Fraction(1)},
        (3, "J2"): {((1, 2), (2, 3)): Fraction(1), ((1, 3), (2, 3)): Fraction(1)},
    }


def apply_inclusion(incl: dict, x: OpElement) -> OpElement:
    out: Coeffs = {}
    for lab, c in x.coeffs:
        for lab2, c2 in incl[(x.arity, lab)].items():
            out[lab2] = out.get(lab2, Fraction(0)) + c * c2
    return OpElement.make(x.arity, out)


# -- framed tensor construction ----------------------------------------------


class FramedOperad(Operad):
    """Tensor of a zero-differential operad with Hopf-monomial tuples.

    Labels are ``(base_label, (mon_1, ..., mon_n))``.  Composition at slot
    i composes the base parts and pushes the slot-i Hopf monomial through
    the n-fold diagonal onto the inserted factors, with Koszul signs from
    reordering the odd Hopf symbols.  The base operad must have even
    degrees throughout (true for the sphere operad with odd d), so base
    symbols never contribute signs.
    """

    def __init__(self, base: Operad, hopf: PrimitiveExteriorHopf, degree_cap: int | None = None):
        if base.has_differential():
            raise ValueError("framed construction requires a zero differential")
        self.base = base
        self.hopf = hopf
        self.max_arity = base.max_arity
        self.degree_cap = degree_cap
        self._basis_cache: dict = {}

    def basis_by_degree(self, n: int) -> dict:
        key = n
        if key not in self._basis_cache:
            by_deg: dict = {}
            base_by_deg = self.base.basis_by_degree(n)
            mons = self.hopf.monomials
            for qb, labels in base_by_deg.items():
                for word in itertools.product(mons, repeat=n):
                    qh = sum(self.hopf.degree(m) for m in word)
                    q = qb + qh
                    if self.degree_cap is not None and q > self.degree_cap:
                        continue
                    for bl in labels:
                        by_deg.setdefault(q, []).append((bl, word))
            self._basis_cache[key] = {q: tuple(sorted(ls)) for q, ls in by_deg.items()}
        return self._basis_cache[key]

    def degree(self, n: int, label) -> int:
        bl, word = label
        return self.base.degree(n, bl) + sum(self.hopf.degree(m) for m in word)

    @property
    def unit_label(self):
        if self.base.unit_label is None:
            return None
        return (self.base.unit_label, (self.hopf.unit,))

    def compose_basis(self, m: int, xl, i: int, n: int, yl) -> Coeffs:
        if m + n - 1 > self.max_arity:
            raise ArityOverflow(f"arity {m + n - 1} exceeds cap {self.max_arity}")
        (bx, gs), (by, hs) = xl, yl
        base_terms = self.base.compose_basis(m, bx, i, n, by)
        deg = self.hopf.degree
        gi = gs[i - 1]
        tail_deg = sum(deg(g) for g in gs[i:])  # factors g_{i+1}..g_m
        out: Coeffs = {}
        for split, c0 in self.hopf.iterated_coproduct(gi, n).items():
            coeff = c0
            word = []
            ok = True
            # remaining degree of not-yet-consumed split components
            split_deg_after = [0] * (n + 1)
            for j in range(n - 1, -1, -1):
                split_deg_after[j] = split_deg_after[j + 1] + deg(split[j])
            for j in range(n):
                # h_j moves left past split components j+1..n and the gs tail
                hj = hs[j]
                if deg(hj) % 2 and (split_deg_after[j + 1] + tail_deg) % 2:
                    coeff = -coeff
                prod = self.hopf.product(split[j], hj)
                if prod is None:
                    ok = False
                    break
                s, mon = prod
                coeff *= s
                word.append(mon)
            if not ok:
                continue
            new_word = gs[: i - 1] + tuple(word) + gs[i:]
            for bl, bc in base_terms.items():
                q = self.base.degree(m + n - 1, bl) + sum(deg(w) for w in new_word)
                if self.degree_cap is not None and q > self.degree_cap:
                    continue
                lab = (bl, new_word)
                out[lab] = out.get(lab, Fraction(0)) + coeff * bc
        return {l: c for l, c in out.items() if c != 0}


def framed_homology_operad(
    base: Operad, hopf: PrimitiveExteriorHopf, degree_cap: int | None = None
) -> FramedOperad:
    return FramedOperad(base, hopf, degree_cap=degree_cap)


# -- witness operads ---------------------------------------------------------


def witness_operad(
    m: int = 2,
    padded: bool = False,
    break_h1: bool = False,
    max_arity: int = 3,
) -> FreeChainOperad:
    """Finite chain testbed for the obstruction pipeline.

    Generators: associative nu (arity 2, degree 0), cycle g (arity 1,
    degree 4m-1), and h (arity 2, degree 4m) with
    ``dh = nu o2 g + nu o1 g - g o1 nu``.

    ``padded`` adds a cycle generator c in arity 2 degree 4m and a
    bounded cycle u = dp in arity 3 degree 1, so the choices of h and xi
    become nontrivial while the class stays well-defined.  ``break_h1``
    keeps u but drops p, so H_1 of the arity-3 part is nonzero and the
    xi-independence hypothesis fails (negative control).
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    lines = [
        "nu:2:0",
        f"g:1:{4 * m - 1}",
        f"h:2:{4 * m}",
        "d h = nu o2 g + nu o1 g - g o1 nu",
    ]
    if padded or break_h1:
        lines.append(f"c:2:{4 * m}")
        lines.append("u:3:1")
        if not break_h1:
            lines.append("p:3:2")
            lines.append("d p = u")
    return parse_free_operad(
        "\n".join(lines),
        associative="nu",
        max_arity=max_arity,
        degree_cap=8 * m + 2,
    )


def witness_generator(op: FreeChainOperad, name: str) -> OpElement:
    ar, _ = op.generators[name]
    return OpElement.basis(ar, (name,) + (LEAF,) * ar)


# -- homology operad ---------------------------------------------------------


def arity_complex(op: Operad, n: int) -> ChainComplexWindow:
    """The chain complex of O(n) over its populated degree range."""
    by_deg = op.basis_by_degree(n)
    space = GradedSpace({q: tuple(ls) for q, ls in by_deg.items()})
    degrees = space.degrees()
    if not degrees:
        return ChainComplexWindow(GradedSpace({}), {}, (0, 0))
    lo, hi = degrees[0], degrees[-1]
    index = {q: {l: i for i, l in enumerate(space.labels(q))} for q in degrees}
    diff = {}
    for q in range(lo + 1, hi + 1):
        entries = {}
        for cidx, lab in enumerate(space.labels(q)):
            for l2, v in op.diff_basis(n, lab).items():
                entries[(index.get(q - 1, {})[l2], cidx)] = v
        diff[q] = RationalMatrix(space.dim(q - 1), space.dim(q), entries)
    # complete above unless the top degree equals the operad's degree cap
    complete_above = op.degree_cap is None or hi < op.degree_cap
    return ChainComplexWindow(space, diff, (lo, hi), complete_above=complete_above)


def element_to_vector(op: Operad, x: OpElement, q: int):
    labels = op.arity_degree_basis(x.arity, q)
    idx = {l: i for i, l in enumerate(labels)}
    v = zero_vec(len(labels))
    for l, c in x.coeffs:
        v[idx[l]] += c
    return v


def vector_to_element(op: Operad, n: int, q: int, v) -> OpElement:
    labels = op.arity_degree_basis(n, q)
    return OpElement.make(n, {l: Fraction(c) for l, c in zip(labels, v) if c != 0})


def homology_operad(op: Operad) -> TableOperad:
    """Homology of a chain operad with induced compositions.

    Basis labels are ``("H", n, q, k)`` for the k-th homology class of
    O(n) in degree q; compositions are computed on representatives and
    reduced back to classes.
    """
    homs = {}
    basis: dict = {}
    for n in range(0, op.max_arity + 1):
        C = arity_complex(op, n)
        H = C.homology()
        homs[n] = (C, H)
        by_deg = {}
        for q, h in H.per_degree.items():
            if h.reliable and h.dim:
                by_deg[q] = tuple(("H", n, q, k) for k in range(h.dim))
        if by_deg:
            basis[n] = by_deg
    comp: dict = {}
    for mm in range(1, op.max_arity + 1):
        if mm not in basis:
            continue
        for nn in range(0, op.max_arity + 1):
            if nn not in basis or mm + nn - 1 > op.max_arity:
                continue
            for qx, xls in basis[mm].items():
                for qy, yls in basis[nn].items():
                    for xi, xlab in enumerate(xls):
                        for yi, ylab in enumerate(yls):
                            xrep = vector_to_element(
                                op, mm, qx, homs[mm][1].per_degree[qx].representatives[xi]
                            )
                            yrep = vector_to_element(
                                op, nn, qy, homs[nn][1].per_degree[qy].representatives[yi]
                            )
                            for i in range(1, mm + 1):
                                ncomp = mm + nn - 1
                                qz = qx + qy
                                try:
                                    z = op.compose(xrep, i, yrep)
                                except TruncationError:
                                    continue
                                Cc, Hc = homs[ncomp]
                                hh = Hc.per_degree.get(qz)
                                coeffs: Coeffs = {}
                                if hh is not None and hh.reliable:
                                    zv = element_to_vector(op, z, qz)
                                    coords = hh.class_coordinates(zv)
                                    for k, c in enumerate(coords):
                                        if c != 0:
                                            coeffs[("H", ncomp, qz, k)] = c
                                elif hh is not None:
                                    # unreliable window edge: no induced entry
                                    continue
                                elif qz > Cc.window[1] and not Cc.complete_above:
                                    continue
                                # qz outside a complete window: homology is 0
                                comp[(mm, xlab, i, nn, ylab)] = coeffs
    # unit class, when the unit is a cycle generating a 1-dim degree-0 part
    unit = None
    if op.unit_label is not None:
        q0 = op.degree(1, op.unit_label)
        labs = basis.get(1, {}).get(q0, ())
        if len(labs) >= 1:
            C1, H1 = homs[1]
            uvec = element_to_vector(op, op.unit(), q0)
            coords = H1.per_degree[q0].class_coordinates(uvec)
            nz = [(k, c) for k, c in enumerate(coords) if c != 0]
            if len(nz) == 1 and nz[0][1] == 1:
                unit = ("H", 1, q0, nz[0][0])
    return TableOperad(basis, comp, unit=unit, max_arity=op.max_arity)
