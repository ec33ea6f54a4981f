"""Cosimplicial machinery for multiplicative operads.

* :func:`mcclure_smith` builds the semicosimplicial chain complex of an
  operad with a chosen multiplication: cofaces compose with the
  multiplication on either side or into slot i, codegeneracies (when an
  arity-0 point exists) compose with the point.
* :class:`HochschildComplex` is the resulting double complex — columns
  indexed by arity n (filtration degree p = -n), internal chain degree q,
  vertical differential from the host, horizontal differential the
  alternating coface sum delta.  With codegeneracies the columns are
  restricted to the normalized (all-codegeneracies-vanish) labels.
* :func:`hochschild_homology` computes the bigraded homology for
  zero-differential hosts, with representatives.
* :func:`ss_pages` computes the spectral sequence of the column
  filtration: E^1 is columnwise homology, d_r has bidegree (-r, r-1),
  and each page is derived exactly from the filtered total complex.
* :func:`total_complex` is the direct abutment oracle, and
  :func:`zigzag_dr` the explicit lifting computation behind d_r.

Sign convention: the total differential is D = d + (-1)^q delta; the
cofaces commute with d (they are chain maps), which makes D^2 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import ChainComplexWindow, GradedSpace
from .instances import (
    FramedOperad,
    MultiplicativeStructure,
    SphereOperad,
    arity_complex,
)
from .linalg import (
    NoSolution,
    QuotientSpace,
    RationalMatrix,
    is_zero_vec,
    kernel_basis,
    solve_particular,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)
from .operads import Coeffs, OpElement, Operad, TableOperad


class LiftFailure(Exception):
    """A spectral-sequence lift left the computed window."""


class SemicosimplicialChainComplex:
    """Columns X^n with cofaces d^i: X^n -> X^{n+1}, 0 <= i <= n+1.

    ``coface(n, i, label) -> Coeffs`` gives the coface on a basis label of
    column n; ``codegeneracy(n, i, label) -> Coeffs`` (optional) gives
    s^i: X^{n+1} -> X^n for 0 <= i <= n.  ``vanishes(n, q)`` reports that
    the (normalized) column n is known to be zero in chain degree q for
    indices outside the stored range.
    """

    def __init__(self, columns, coface, codegeneracy=None, vanishes=None, name=""):
        self.columns = dict(columns)
        self.n_max = max(self.columns)
        if sorted(self.columns) != list(range(self.n_max + 1)):
            raise ValueError("columns must be indexed 0..n_max")
        self.coface = coface
        self.codegeneracy = codegeneracy
        self._vanishes = vanishes or (lambda n, q: False)
        self.name = name

    def vanishes(self, n: int, q: int) -> bool:
        if 0 <= n <= self.n_max:
            col = self.columns[n]
            lo, hi = col.window
            if lo <= q <= hi:
                return col.space.dim(q) == 0
        if n < 0 or q < 0:
            return True
        return self._vanishes(n, q)

    def delta_on_label(self, n: int, label) -> Coeffs:
        """Alternating coface sum delta = sum_i (-1)^i d^i on one label."""
        out: Coeffs = {}
        for i in range(n + 2):
            sign = Fraction(-1 if i % 2 else 1)
            for l2, c in self.coface(n, i, label).items():
                out[l2] = out.get(l2, Fraction(0)) + sign * c
        return {l: c for l, c in out.items() if c != 0}

    def is_normal_label(self, n: int, label) -> bool:
        """True when every codegeneracy kills the label (n >= 1)."""
        if self.codegeneracy is None:
            return True
        for i in range(n):  # s^i : X^n -> X^{n-1}, 0 <= i <= n-1
            if self.codegeneracy(n - 1, i, label):
                return False
        return True

    # -- identity checks -------------------------------------------------

    def check_coface_identities(self, q_max: int | None = None) -> list:
        """d^j d^i = d^i d^{j-1} for i < j, on every stored basis label."""
        failures = []
        for n in range(self.n_max - 1):
            col = self.columns[n]
            for q in col.space.degrees():
                if q_max is not None and q > q_max:
                    continue
                for label in col.space.labels(q):
                    for j in range(n + 3):
                        for i in range(j):
                            lhs: Coeffs = {}
                            for l2, c in self.coface(n, i, label).items():
                                for l3, c2 in self.coface(n + 1, j, l2).items():
                                    lhs[l3] = lhs.get(l3, Fraction(0)) + c * c2
                            rhs: Coeffs = {}
                            for l2, c in self.coface(n, j - 1, label).items():
                                for l3, c2 in self.coface(n + 1, i, l2).items():
                                    rhs[l3] = rhs.get(l3, Fraction(0)) + c * c2
                            diff = {
                                l: lhs.get(l, Fraction(0)) - rhs.get(l, Fraction(0))
                                for l in set(lhs) | set(rhs)
                            }
                            if any(v != 0 for v in diff.values()):
                                failures.append(("coface", n, i, j, label))
        return failures

    def check_codegeneracy_identities(self, q_max: int | None = None) -> list:
        """The identity relations s^j d^j = s^j d^{j+1} = id on stored labels."""
        if self.codegeneracy is None:
            return []
        failures = []
        for n in range(self.n_max):
            col = self.columns[n]
            for q in col.space.degrees():
                if q_max is not None and q > q_max:
                    continue
                for label in col.space.labels(q):
                    for j in range(n + 1):
                        for i in (j, j + 1):
                            acc: Coeffs = {}
                            for l2, c in self.coface(n, i, label).items():
                                for l3, c2 in self.codegeneracy(n, j, l2).items():
                                    acc[l3] = acc.get(l3, Fraction(0)) + c * c2
                            acc[label] = acc.get(label, Fraction(0)) - 1
                            if any(v != 0 for v in acc.values()):
                                failures.append(("codegeneracy", n, i, j, label))
        return failures

    def check_cofaces_chain_maps(self) -> list:
        """Each coface commutes with the internal differential."""
        failures = []
        for n in range(self.n_max):
            src, tgt = self.columns[n], self.columns[n + 1]
            for q in src.space.degrees():
                if q - 1 < src.window[0]:
                    continue
                labels = src.space.labels(q)
                tlabels = tgt.space.labels(q - 1)
                tindex = {l: k for k, l in enumerate(tlabels)}
                for i in range(n + 2):
                    for c_idx, label in enumerate(labels):
                        # d(coface(x))
                        lhs = zero_vec(len(tlabels))
                        for l2, c in self.coface(n, i, label).items():
                            col_idx = tgt.space.index(q, l2)
                            dv = tgt.d(q).column(col_idx)
                            lhs = vec_add(lhs, vec_scale(c, dv))
                        # coface(dx)
                        rhs = zero_vec(len(tlabels))
                        dv = src.d(q).column(c_idx)
                        for r, v in enumerate(dv):
                            if v:
                                for l2, c in self.coface(
                                    n, i, src.space.labels(q - 1)[r]
                                ).items():
                                    rhs[tindex[l2]] += v * c
                        if not is_zero_vec(
                            [a - b for a, b in zip(lhs, rhs, strict=True)]
                        ):
                            failures.append(("chain-map", n, i, q, label))
        return failures


def mcclure_smith(M: MultiplicativeStructure, n_max: int | None = None):
    """Semicosimplicial chain complex of a multiplicative operad.

    Cofaces on x of arity n: d^0 = mult composed below slot 2 of the
    multiplication (mult o2 x), d^i = x o_i mult for 1 <= i <= n, and
    d^{n+1} = mult o1 x.  Codegeneracies s^i = (- o_{i+1} point) when the
    structure has an arity-0 point.
    """
    op = M.operad
    if n_max is None:
        n_max = op.max_arity
    if n_max > op.max_arity:
        raise ValueError("n_max exceeds the operad's arity truncation")
    columns = {n: arity_complex(op, n) for n in range(n_max + 1)}

    def coface(n, i, label) -> Coeffs:
        x = OpElement.basis(n, label)
        if i == 0:
            return op.compose(M.mult, 2, x).as_dict()
        if i == n + 1:
            return op.compose(M.mult, 1, x).as_dict()
        return op.compose(x, i, M.mult).as_dict()

    codegeneracy = None
    if M.point is not None:
        def codegeneracy(n, i, label) -> Coeffs:
            x = OpElement.basis(n + 1, label)
            return op.compose(x, i + 1, M.point).as_dict()

    return SemicosimplicialChainComplex(
        columns,
        coface,
        codegeneracy=codegeneracy,
        vanishes=_host_vanishes(op),
        name=M.name,
    )


def _host_vanishes(op: Operad):
    """Vanishing predicate for column data outside the stored window.

    Sphere and framed instances are windows into untruncated operads, so
    only the normalized coverage line q >= n (d-1) / 2 certifies zeros
    beyond the arity cap.  Table and free hosts are the truncated objects
    themselves: their columns genuinely vanish past the truncation, and a
    degree cap bounds chain degrees.
    """
    truncated_host = not isinstance(op, (SphereOperad, FramedOperad))

    def f(n: int, q: int) -> bool:
        if truncated_host and n > op.max_arity:
            return True
        if truncated_host and op.degree_cap is not None and q > op.degree_cap:
            return True
        if isinstance(op, SphereOperad) and 2 * q < n * (op.d - 1):
            return True  # normalized columns only; raw checks stay in-window
        if isinstance(op, FramedOperad):
            per_slot = min(op.base.d - 1, 2 * min(op.hopf.gen_degrees))
            if 2 * q < n * per_slot:
                return True
        if isinstance(op, TableOperad):
            top = max(
                (q2 for nn in range(op.max_arity + 1)
                 for q2 in op.basis_by_degree(nn)),
                default=0,
            )
            if q > top:
                return True
        return False

    return f


def hochschild_differential(M: MultiplicativeStructure, x: OpElement) -> OpElement:
    """delta(x) = sum_{i=0}^{n+1} (-1)^i d^i(x), an element of O(n+1)."""
    op = M.operad
    n = x.arity
    out = op.compose(M.mult, 2, x)
    for i in range(1, n + 1):
        out = out + op.compose(x, i, M.mult).scale((-1) ** i)
    out = out + op.compose(M.mult, 1, x).scale((-1) ** (n + 1))
    return out


# -- the double complex ------------------------------------------------------


class HochschildComplex:
    """Bigraded double complex of a semicosimplicial chain complex.

    Positions (n, q) with vertical differential d (q -> q-1, from the
    host) and horizontal differential delta (n -> n+1).  When the
    underlying object has codegeneracies and ``normalized`` is set, each
    column is restricted to the normalized labels; delta preserves that
    span (asserted during matrix construction) even though individual
    cofaces do not.
    """

    def __init__(self, X: SemicosimplicialChainComplex, q_max: int, normalized=True):
        self.X = X
        self.q_max = q_max
        self.n_max = X.n_max
        self.normalized = normalized and X.codegeneracy is not None
        self._labels: dict = {}
        self._index: dict = {}
        for n, col in X.columns.items():
            for q in col.space.degrees():
                if q > q_max:
                    continue
                labels = col.space.labels(q)
                if self.normalized:
                    labels = tuple(
                        l for l in labels if X.is_normal_label(n, l)
                    )
                if labels:
                    self._labels[(n, q)] = labels
                    self._index[(n, q)] = {l: k for k, l in enumerate(labels)}
        self._delta_cache: dict = {}
        self._d_cache: dict = {}

    def labels(self, n: int, q: int):
        return self._labels.get((n, q), ())

    def dim(self, n: int, q: int) -> int:
        return len(self.labels(n, q))

    def positions(self):
        return sorted(self._labels)

    def vanishes(self, n: int, q: int) -> bool:
        """Zero beyond the stored window (truncation/cap/coverage)."""
        if (n, q) in self._labels:
            return False
        if 0 <= n <= self.n_max and 0 <= q <= self.q_max:
            return True  # stored range, no labels survived
        return self.X.vanishes(n, q)

    def d_mat(self, n: int, q: int) -> RationalMatrix:
        """Vertical differential (n, q) -> (n, q-1) on kept labels."""
        key = (n, q)
        if key not in self._d_cache:
            src = self.labels(n, q)
            tgt_index = self._index.get((n, q - 1), {})
            col = self.X.columns[n]
            entries = {}
            for c, label in enumerate(src):
                full_col = col.d(q).column(col.space.index(q, label))
                for r, v in enumerate(full_col):
                    if v:
                        l2 = col.space.labels(q - 1)[r]
                        if l2 in tgt_index:
                            entries[(tgt_index[l2], c)] = v
                        else:
                            raise AssertionError(
                                "internal differential left the normalized span"
                            )
            self._d_cache[key] = RationalMatrix(len(tgt_index), len(src), entries)
        return self._d_cache[key]

    def delta_mat(self, n: int, q: int) -> RationalMatrix:
        """Horizontal differential (n, q) -> (n+1, q) on kept labels."""
        key = (n, q)
        if key not in self._delta_cache:
            src = self.labels(n, q)
            if n >= self.n_max:
                # out of the stored window: zero map (truncated object)
                self._delta_cache[key] = RationalMatrix.zero(0, len(src))
                return self._delta_cache[key]
            tgt_index = self._index.get((n + 1, q), {})
            entries = {}
            for c, label in enumerate(src):
                for l2, v in self.X.delta_on_label(n, label).items():
                    if l2 in tgt_index:
                        entries[(tgt_index[l2], c)] = v
                    else:
                        raise AssertionError(
                            "delta left the normalized span (sign error?)"
                        )
            self._delta_cache[key] = RationalMatrix(len(tgt_index), len(src), entries)
        return self._delta_cache[key]

    def complex_in_p(self, q: int) -> ChainComplexWindow:
        """Fixed internal degree q: complex over p = -n with differential
        delta.  Complete below exactly when the column past the window is
        known to vanish at q."""
        degrees = {}
        for n in range(self.n_max + 1):
            labs = self.labels(n, q)
            if labs:
                degrees[-n] = labs
        space = GradedSpace(degrees)
        lo, hi = -self.n_max, 0
        diff = {}
        # differential[p] maps C_p -> C_{p-1}: column -p -> column -p+1
        for p in range(lo + 1, hi + 1):
            diff[p] = self.delta_mat(-p, q)
        return ChainComplexWindow(
            space,
            diff,
            (lo, hi),
            complete_below=self.vanishes(self.n_max + 1, q),
            complete_above=True,
        )


@dataclass
class HochschildClass:
    arity: int
    q: int
    vector: list  # coordinates over the kept labels of (arity, q)
    element: OpElement
    normalized: bool = True

    @property
    def p(self) -> int:
        return -self.arity

    @property
    def total_degree(self) -> int:
        return self.q - self.arity


class HochschildHomology:
    def __init__(self, H: HochschildComplex, homs: dict, dims: dict, classes: list):
        self.complex = H
        self.homs = homs  # q -> HomologyResult over p
        self.dims = dims  # (p, q) -> dim (reliable entries only)
        self.classes = classes

    def total_dims(self, t_max: int | None = None) -> dict:
        out: dict = {}
        for (p, q), d in self.dims.items():
            t = p + q
            if t_max is None or t <= t_max:
                out[t] = out.get(t, 0) + d
        return {t: d for t, d in sorted(out.items()) if d}

    def classes_at(self, p: int, q: int) -> list:
        return [c for c in self.classes if c.p == p and c.q == q]


def hochschild_homology(
    M: MultiplicativeStructure,
    n_max: int,
    q_max: int,
    normalized: bool = True,
) -> HochschildHomology:
    """Bigraded Hochschild homology of a zero-differential host."""
    if M.operad.has_differential():
        raise ValueError("Hochschild homology requires a zero-differential host")
    X = mcclure_smith(M, n_max)
    H = HochschildComplex(X, q_max, normalized=normalized)
    qs = sorted({q for (_, q) in H.positions()})
    homs: dict = {}
    dims: dict = {}
    classes: list = []
    for q in qs:
        C = H.complex_in_p(q)
        hom = C.homology()
        homs[q] = hom
        for p, h in hom.per_degree.items():
            if not h.reliable:
                continue
            if h.dim:
                dims[(p, q)] = h.dim
            n = -p
            labels = H.labels(n, q)
            for rep in h.representatives:
                el = OpElement.make(
                    n, {l: c for l, c in zip(labels, rep) if c != 0}
                )
                classes.append(HochschildClass(n, q, rep, el, H.normalized))
    return HochschildHomology(H, homs, dims, classes)


# -- total complex and spectral sequence -------------------------------------


def total_complex(H: HochschildComplex) -> ChainComplexWindow:
    """Total complex over t = q - n with D = d + (-1)^q delta.

    Labels are (n, q, label).  The top stored total degrees are flagged
    unreliable when components above the chain-degree window might be
    nonzero.
    """
    basis: dict = {}
    for (n, q), labels in sorted(H._labels.items()):
        for l in labels:
            basis.setdefault(q - n, []).append((n, q, l))
    space = GradedSpace({t: tuple(ls) for t, ls in basis.items()})
    degrees = space.degrees()
    if not degrees:
        return ChainComplexWindow(space, {}, (0, 0))
    lo, hi = degrees[0], degrees[-1]
    index = {t: {l: i for i, l in enumerate(space.labels(t))} for t in degrees}
    diff = {}
    for t in range(lo + 1, hi + 1):
        entries: dict = {}
        tgt = index.get(t - 1, {})
        for cidx, (n, q, l) in enumerate(space.labels(t)):
            li = H._index[(n, q)][l]
            dm = H.d_mat(n, q)
            for r in range(dm.rows):
                v = dm[(r, li)]
                if v:
                    lab = (n, q - 1, H.labels(n, q - 1)[r])
                    entries[(tgt[lab], cidx)] = (
                        entries.get((tgt[lab], cidx), Fraction(0)) + v
                    )
            sign = Fraction(-1 if q % 2 else 1)
            dl = H.delta_mat(n, q)
            for r in range(dl.rows):
                v = dl[(r, li)]
                if v:
                    lab = (n + 1, q, H.labels(n + 1, q)[r])
                    entries[(tgt[lab], cidx)] = (
                        entries.get((tgt[lab], cidx), Fraction(0)) + sign * v
                    )
        diff[t] = RationalMatrix(space.dim(t - 1), space.dim(t), entries)
    # completeness above: Tot_{hi+1} components are (n, hi+1+n)
    complete_above = all(
        H.vanishes(n, hi + 1 + n) for n in range(H.n_max + 2)
    )
    return ChainComplexWindow(
        space, diff, (lo, hi), complete_below=True, complete_above=complete_above
    )


@dataclass
class PageEntry:
    p: int
    q: int
    dim: int
    representatives: list = field(default_factory=list)  # Tot_t vectors
    reliable: bool = True


@dataclass
class BigradedPage:
    r: int
    entries: dict  # (p, q) -> PageEntry
    differentials: dict = field(default_factory=dict)
    # (p, q) -> RationalMatrix: E_r(p,q) -> E_r(p-r, q+r-1) in class coords

    def dim(self, p: int, q: int) -> int:
        e = self.entries.get((p, q))
        return e.dim if e else 0

    def dims(self) -> dict:
        return {pq: e.dim for pq, e in sorted(self.entries.items()) if e.dim}


class SpectralSequence:
    """Spectral sequence of the column filtration of a double complex.

    Pages are computed exactly from the filtered total complex:
    Z_r at filtration p = {x in F_p : D x in F_{p-r}}, and
    E_r = Z_r / (Z_{r-1} at p-1  +  D Z_{r-1} at p+r-1), with d_r induced
    by D.  F_p is spanned by columns n >= -p, and D = d + (-1)^q delta.
    """

    def __init__(self, H: HochschildComplex):
        self.H = H
        self._tot_basis: dict = {}  # t -> ordered list of (n, q, label)
        for (n, q), labels in sorted(H._labels.items()):
            for l in labels:
                self._tot_basis.setdefault(q - n, []).append((n, q, l))
        self._tot_index = {
            t: {trip: i for i, trip in enumerate(b)}
            for t, b in self._tot_basis.items()
        }
        self._D_cache: dict = {}

    def tot_dim(self, t: int) -> int:
        return len(self._tot_basis.get(t, ()))

    def D(self, t: int) -> RationalMatrix:
        if t not in self._D_cache:
            H = self.H
            src = self._tot_basis.get(t, [])
            tgt_index = self._tot_index.get(t - 1, {})
            entries: dict = {}
            for cidx, (n, q, l) in enumerate(src):
                li = H._index[(n, q)][l]
                dm = H.d_mat(n, q)
                for r in range(dm.rows):
                    v = dm[(r, li)]
                    if v:
                        key = (tgt_index[(n, q - 1, H.labels(n, q - 1)[r])], cidx)
                        entries[key] = entries.get(key, Fraction(0)) + v
                sign = Fraction(-1 if q % 2 else 1)
                dl = H.delta_mat(n, q)
                for r in range(dl.rows):
                    v = dl[(r, li)]
                    if v:
                        key = (tgt_index[(n + 1, q, H.labels(n + 1, q)[r])], cidx)
                        entries[key] = entries.get(key, Fraction(0)) + sign * v
            self._D_cache[t] = RationalMatrix(len(tgt_index), len(src), entries)
        return self._D_cache[t]

    def _filtration_indices(self, t: int, p: int) -> list:
        """Indices of Tot_t basis elements lying in F_p (columns n >= -p)."""
        return [
            i for i, (n, q, l) in enumerate(self._tot_basis.get(t, []))
            if -n <= p
        ]

    def _Z(self, r: int, p: int, t: int) -> list:
        """Basis of Z_r = {x in F_p (+) Tot_t : D x in F_{p-r}}."""
        basis_t = self._tot_basis.get(t, [])
        dom = self._filtration_indices(t, p)
        if not dom:
            return []
        Dt = self.D(t)
        tgt = self._tot_basis.get(t - 1, [])
        # constraint rows: output components with p - r < p'' (i.e. n'' < -(p-r))
        bad_rows = [i for i, (n, q, l) in enumerate(tgt) if -n > p - r]
        entries = {}
        for ri, row in enumerate(bad_rows):
            for ci, colidx in enumerate(dom):
                v = Dt[(row, colidx)]
                if v:
                    entries[(ri, ci)] = v
        A = RationalMatrix(len(bad_rows), len(dom), entries)
        ker = kernel_basis(A)
        out = []
        N = len(basis_t)
        for k in ker:
            v = zero_vec(N)
            for ci, colidx in enumerate(dom):
                v[colidx] = k[ci]
            out.append(v)
        return out

    def _apply_D(self, t: int, v):
        return self.D(t).matvec(v)

    def entry_reliable(self, p: int, q: int, r: int) -> bool:
        """Conservative check that the truncation cannot change E_r(p,q).

        Requires: every potentially nonzero position feeding the
        computation lies in the stored window — Tot_{t+1} components down
        the filtration, the d_{r'} source and target columns for r' < r.
        """
        H = self.H
        t = p + q
        for n in range(H.n_max + 2):
            qq = t + 1 + n
            if qq > H.q_max and not H.vanishes(n, qq):
                return False
            qq = t + n
            if qq > H.q_max and not H.vanishes(n, qq):
                return False
        for rp in range(1, r):
            # incoming d_rp source at (p + rp, q - rp + 1), outgoing target
            n_src = -(p + rp)
            if n_src > H.n_max and not H.vanishes(n_src, q - rp + 1):
                return False
            n_tgt = -p + rp
            if n_tgt > H.n_max and not H.vanishes(n_tgt, q + rp - 1):
                return False
        return True

    def pages(self, r_max: int) -> list:
        out = []
        ts = sorted(self._tot_basis)
        positions = sorted(self.H._labels)
        for r in range(1, r_max + 1):
            entries: dict = {}
            reducers: dict = {}
            for (n, q) in positions:
                p, t = -n, q - n
                Z = self._Z(r, p, t)
                denom = self._Z(r - 1, p - 1, t)
                up = self._Z(r - 1, p + r - 1, t + 1)
                denom = denom + [self._apply_D(t + 1, u) for u in up]
                quo = QuotientSpace(self.tot_dim(t), denom)
                reps = []
                span = denom
                for z in Z:
                    if not is_zero_vec(quo.reduce(z)):
                        reps.append(z)
                        span = denom + reps
                        quo = QuotientSpace(self.tot_dim(t), span)
                entries[(p, q)] = PageEntry(
                    p, q, len(reps), reps, self.entry_reliable(p, q, r)
                )
                reducers[(p, q)] = _class_reducer(self.tot_dim(t), reps, denom)
            page = BigradedPage(r, {k: v for k, v in entries.items()})
            # differentials d_r: (p, q) -> (p - r, q + r - 1)
            for (p, q), e in entries.items():
                if e.dim == 0:
                    continue
                tp, tq = p - r, q + r - 1
                tgt = entries.get((tp, tq))
                cols = []
                for x in e.representatives:
                    y = self._apply_D(p + q, x)
                    if tgt is None or tgt.dim == 0:
                        if not _in_span(self.tot_dim(p + q - 1),
                                        reducers.get((tp, tq)), y):
                            raise AssertionError("d_r image missed the target entry")
                        continue
                    cols.append(reducers[(tp, tq)](y))
                if tgt is not None and tgt.dim and cols:
                    page.differentials[(p, q)] = RationalMatrix.from_columns(
                        cols, tgt.dim
                    )
            out.append(page)
        # consistency: each page is the homology of the previous one
        for a, b in zip(out, out[1:]):
            for (p, q), e in b.entries.items():
                ea = a.entries.get((p, q))
                dim_a = ea.dim if ea else 0
                dout = a.differentials.get((p, q))
                rk_out = _rank_or_zero(dout)
                din = a.differentials.get((p + a.r, q - a.r + 1))
                rk_in = _rank_or_zero(din)
                if e.dim != dim_a - rk_out - rk_in:
                    raise AssertionError(
                        f"page recursion mismatch at r={b.r}, (p,q)=({p},{q})"
                    )
        return out


def _rank_or_zero(M) -> int:
    from .linalg import rank

    return rank(M) if M is not None else 0


def _class_reducer(N: int, reps: list, denom: list):
    cols = [vec(r) for r in reps] + [vec(b) for b in denom]
    M = RationalMatrix.from_columns(cols, N) if cols else RationalMatrix.zero(N, 0)
    k = len(reps)

    def reducer(v):
        if not cols:
            if not is_zero_vec(vec(v)):
                raise NoSolution("vector outside the entry's cycle space")
            return []
        x = solve_particular(M, vec(v))
        return x[:k]

    return reducer


def _in_span(N: int, reducer, v) -> bool:
    if reducer is None:
        return is_zero_vec(vec(v))
    try:
        coords = reducer(v)
    except NoSolution:
        return False
    return is_zero_vec(coords)


def ss_pages(H: HochschildComplex, r_max: int) -> list:
    """Bousfield-Kan style pages of the double complex's column filtration."""
    return SpectralSequence(H).pages(r_max)


def einfty_vs_total(H: HochschildComplex, r_max: int | None = None):
    """Oracle: summed stable-page dims against total-complex homology.

    Returns a list of (t, einfty_sum, total_dim) over reliable degrees.
    """
    if r_max is None:
        r_max = H.n_max + 2
    ss = SpectralSequence(H)
    pages = ss.pages(r_max)
    last = pages[-1]
    tot = total_complex(H)
    Ht = tot.homology()
    out = []
    for t in tot.space.degrees():
        if not Ht.per_degree[t].reliable:
            continue
        ent = [e for (p, q), e in last.entries.items() if p + q == t]
        if any(not e.reliable for e in ent):
            continue
        # stable only if no differentials can still move these entries
        out.append((t, sum(e.dim for e in ent), Ht.per_degree[t].dim))
    return out


# -- explicit zig-zag (the d_r formula used by the obstruction pipeline) -----


def zigzag_dr(H: HochschildComplex, n: int, q: int, z, r: int):
    """d_r on a vertical cycle z in column n, degree q, by explicit lifts.

    Repeats (r - 1) times: apply delta, then solve the vertical equation
    d w = delta(previous) one degree up; the final delta lands in column
    n + r, degree q + r - 1.  Returns (result_vector, lifts).  Raises
    LiftFailure when a solve fails or the lift leaves the window.
    """
    z = vec(z)
    if len(z) != H.dim(n, q):
        raise ValueError("vector length mismatch")
    if H.dim(n, q) and not is_zero_vec(H.d_mat(n, q).matvec(z)):
        raise ValueError("z is not a vertical cycle")
    cur = z
    cur_n, cur_q = n, q
    lifts = []
    for step in range(r - 1):
        u = H.delta_mat(cur_n, cur_q).matvec(cur)
        cur_n += 1
        if cur_q + 1 > H.q_max:
            raise LiftFailure("lift degree leaves the chain-degree window")
        if cur_n > H.n_max:
            raise LiftFailure("lift column leaves the arity window")
        try:
            w = solve_particular(H.d_mat(cur_n, cur_q + 1), u)
        except NoSolution:
            raise LiftFailure(
                f"delta-image not a vertical boundary at column {cur_n}"
            ) from None
        cur_q += 1
        cur = w
        lifts.append((cur_n, cur_q, w))
    if cur_n + 1 > H.n_max:
        raise LiftFailure("final delta leaves the arity window")
    result = H.delta_mat(cur_n, cur_q).matvec(cur)
    return result, lifts
