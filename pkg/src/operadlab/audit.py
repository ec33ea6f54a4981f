"""Degree-count convergence audit for the framed second page.

The second page of the framed semicosimplicial spectral sequence is a
free graded-commutative algebra on a short list of bigraded generators;
the abutment is a free commutative algebra on even-degree generators.
Whenever a total degree carries more second-page classes than the
abutment can absorb, some differential must kill the surplus.  The audit
enumerates every candidate (page, source, target) compatible with the
bidegree shift (-r, r-1) and the permanent-cycle marks, and reports the
forced differential when exactly one candidate survives — or raises
``InconclusiveAudit`` listing the survivors instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import BidegreeWindow, build_so_hopf, cobar_homology


@dataclass(frozen=True)
class AlgebraGenerator:
    """A multiplicative generator of the second page.

    ``permanent`` marks classes known to survive to the abutment (they
    restrict from a degenerate edge of the diagram of objects); they are
    never proposed as dying classes, differential sources, or targets.
    """

    name: str
    p: int
    q: int
    permanent: bool = False

    @property
    def total(self) -> int:
        return self.p + self.q

    @property
    def square_free(self) -> bool:
        return self.total % 2 == 1


@dataclass(frozen=True)
class AuditInput:
    e2_generators: tuple
    abutment_degrees: tuple  # even total degrees of polynomial generators
    t_max: int

    def validate(self) -> None:
        for g in self.e2_generators:
            if g.total <= 0 or g.p > 0:
                raise ValueError(f"generator {g.name} has invalid bidegree")
        for t in self.abutment_degrees:
            if t <= 0 or t % 2:
                raise ValueError("abutment generators must have positive even degree")


@dataclass(frozen=True)
class ForcedDifferential:
    r: int
    source: tuple  # (p, q)
    target: tuple  # (p, q)
    reason: str

    def __post_init__(self):
        sp, sq = self.source
        tp, tq = self.target
        if (tp - sp, tq - sq) != (-self.r, self.r - 1):
            raise ValueError("differential shift must be (-r, r-1)")


class InconclusiveAudit(Exception):
    """More than one candidate differential survives the enumeration."""

    def __init__(self, candidates):
        self.candidates = list(candidates)
        super().__init__(f"{len(self.candidates)} candidates remain: {self.candidates}")


def _monomials(gens, t_max: int):
    """All exponent tuples with total degree <= t_max (square-free on
    odd-degree generators)."""

    def rec(i, t_left):
        if i == len(gens):
            yield ()
            return
        g = gens[i]
        e_max = 1 if g.square_free else t_left // g.total
        for e in range(e_max + 1):
            for rest in rec(i + 1, t_left - e * g.total):
                yield (e,) + rest

    return list(rec(0, t_max))


def e2_table(inp: AuditInput) -> dict:
    """Bigraded dimensions (p, q) -> dim of the free algebra, t <= t_max."""
    gens = inp.e2_generators
    table: dict = {}
    for exps in _monomials(gens, inp.t_max):
        p = sum(e * g.p for e, g in zip(exps, gens))
        q = sum(e * g.q for e, g in zip(exps, gens))
        table[(p, q)] = table.get((p, q), 0) + 1
    return table


def _permanent_positions(inp: AuditInput) -> set:
    """Bidegrees whose every monomial is a product of permanent
    generators: the whole position survives and is off-limits to the
    enumeration."""
    gens = inp.e2_generators
    perm: dict = {}
    for exps in _monomials(gens, inp.t_max):
        p = sum(e * g.p for e, g in zip(exps, gens))
        q = sum(e * g.q for e, g in zip(exps, gens))
        all_perm = all(g.permanent for e, g in zip(exps, gens) if e)
        perm[(p, q)] = perm.get((p, q), True) and all_perm
    return {pos for pos, flag in perm.items() if flag}


def abutment_dims(inp: AuditInput) -> dict:
    """Total-degree dimensions of the polynomial abutment, t <= t_max."""
    dims = {0: 1}
    for t0 in inp.abutment_degrees:
        new = dict(dims)
        for t in range(t0, inp.t_max + 1):
            new[t] = new.get(t, 0) + new.get(t - t0, 0)
        dims = new
    return {t: d for t, d in dims.items() if t <= inp.t_max}


def e2_total_dims(inp: AuditInput) -> dict:
    out: dict = {}
    for (p, q), d in e2_table(inp).items():
        out[p + q] = out.get(p + q, 0) + d
    return out


def convergence_audit(inp: AuditInput, r_max: int = 10) -> list[ForcedDifferential]:
    """Forced differentials resolving the lowest-degree surplus.

    Empty list when the second-page totals already match the abutment;
    ``InconclusiveAudit`` when the enumeration leaves several options.
    """
    inp.validate()
    table = e2_table(inp)
    perm = _permanent_positions(inp)
    totals = e2_total_dims(inp)
    abut = abutment_dims(inp)
    surplus_ts = sorted(
        t for t in totals if totals[t] > abut.get(t, 0) and t <= inp.t_max
    )
    if not surplus_ts:
        return []
    t_star = surplus_ts[0]
    dying = [
        pos
        for pos in table
        if pos[0] + pos[1] == t_star and table[pos] > 0 and pos not in perm
    ]
    candidates = []
    for (p, q) in dying:
        for r in range(2, r_max + 1):
            src = (p + r, q - r + 1)
            if src[0] <= 0 and table.get(src, 0) > 0 and src not in perm:
                candidates.append(
                    ForcedDifferential(
                        r,
                        src,
                        (p, q),
                        f"class at {(p, q)} in total degree {t_star} exceeds the "
                        f"abutment and must be hit from {src} on page {r}",
                    )
                )
            tgt = (p - r, q + r - 1)
            if table.get(tgt, 0) > 0 and tgt not in perm:
                candidates.append(
                    ForcedDifferential(
                        r,
                        (p, q),
                        tgt,
                        f"class at {(p, q)} in total degree {t_star} exceeds the "
                        f"abutment and must map onto {tgt} on page {r}",
                    )
                )
    if not candidates:
        raise InconclusiveAudit([])
    if len(candidates) > 1:
        raise InconclusiveAudit(candidates)
    return candidates


def standard_audit_input(d: int, t_max: int | None = None) -> AuditInput:
    """The framed second page for odd d: polynomial class x in bidegree
    (-2, d-1), its odd self-bracket in (-3, 2d-2), and one loop class of
    bidegree (-1, 4i-1) per full-rotation-group generator; abutment from
    the vector-fixing subgroup."""
    if d % 2 == 0 or d < 5:
        raise ValueError("d must be odd and at least 5")
    full = build_so_hopf(d, "full")
    sub = build_so_hopf(d, "fixing-subgroup")
    gens = [
        AlgebraGenerator("x", -2, d - 1, permanent=True),
        AlgebraGenerator("{x,x}", -3, 2 * (d - 1)),
    ]
    top = max(deg for _, deg in full.generators)
    for name, deg in full.generators:
        # loop classes restrict to the subgroup edge except the top one,
        # whose degree has no counterpart there
        gens.append(
            AlgebraGenerator(f"loop-{name}", -1, deg, permanent=(deg < top))
        )
    if t_max is None:
        t_max = 4 * (d - 3) + 4
    return AuditInput(
        e2_generators=tuple(gens),
        abutment_degrees=tuple(deg - 1 for _, deg in sub.generators),
        t_max=t_max,
    )


# -- framed tensor-splitting check -------------------------------------------


@dataclass
class TensorCheckReport:
    d: int
    framed_dims: dict  # (p, q) -> dim, reliable entries in the window
    convolution_dims: dict  # same positions, base (x) loop-classes product
    mismatches: list  # positions where the two disagree
    vanishing_violations: list  # nonzero entries with 2q < (d-1)(-p)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.vanishing_violations


def framed_tensor_check(d: int, n_max: int = 5, q_max: int = 12) -> TensorCheckReport:
    """Bigraded second-page dimensions of the framed object against the
    convolution of the plain object's dimensions with the cobar homology
    of the rotation-group coalgebra, plus the vanishing line.
    """
    from .cosimplicial import hochschild_homology
    from .instances import framed_multiplicative, sphere_multiplicative

    base = hochschild_homology(sphere_multiplicative(d, n_max, q_max), n_max, q_max)
    framed = hochschild_homology(framed_multiplicative(d, n_max, q_max), n_max, q_max)
    kmax = q_max // 3 + 1
    cobar_dims, _ = cobar_homology(
        build_so_hopf(d, "full"), BidegreeWindow(p_min=-kmax, q_max=q_max)
    )
    conv: dict = {}
    for (p1, q1), d1 in base.dims.items():
        for (p2, q2), d2 in cobar_dims.items():
            p, q = p1 + p2, q1 + q2
            if p >= -n_max and q <= q_max:
                conv[(p, q)] = conv.get((p, q), 0) + d1 * d2
    reliable = {
        (p, q)
        for q in framed.homs
        for p, h in framed.homs[q].per_degree.items()
        if h.reliable
    }
    positions = sorted(
        (pos for pos in reliable if framed.dims.get(pos) or conv.get(pos)),
        reverse=True,
    )
    mismatches = [
        pos
        for pos in positions
        if framed.dims.get(pos, 0) != conv.get(pos, 0)
    ]
    violations = [
        (p, q)
        for (p, q) in framed.dims
        if 2 * q < (d - 1) * (-p)
    ]
    return TensorCheckReport(
        d=d,
        framed_dims={pos: framed.dims[pos] for pos in positions if pos in framed.dims},
        convolution_dims={pos: conv[pos] for pos in positions if pos in conv},
        mismatches=mismatches,
        vanishing_violations=violations,
    )
