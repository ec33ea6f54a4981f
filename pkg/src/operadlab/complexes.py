"""Graded spaces, chain complexes on a degree window, and homology.

A :class:`ChainComplexWindow` only knows the complex between ``deg_min``
and ``deg_max``.  Degrees at a truncated edge have spurious cycles or
missing boundaries, so homology there is flagged unreliable instead of
being reported as a number; asking for it raises :class:`WindowBoundary`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .linalg import (
    NoSolution,
    QuotientSpace,
    RationalMatrix,
    Vector,
    is_zero_vec,
    kernel_basis,
    solve_particular,
    vec,
    zero_vec,
)


class WindowBoundary(Exception):
    """Homology requested at a truncated window edge."""


class NotACycle(Exception):
    pass


class NotABoundary(Exception):
    pass


def _label_key(label):
    # canonical total order on structured labels; tuples compare fine among
    # themselves, mixed types fall back to a typed repr
    return (type(label).__name__, repr(label))


@dataclass(frozen=True)
class GradedSpace:
    """Ordered basis labels per degree."""

    basis: dict  # degree -> tuple of labels

    def __post_init__(self):
        clean = {}
        for q, labels in self.basis.items():
            labels = tuple(labels)
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate labels in degree {q}")
            if labels:
                clean[q] = labels
        object.__setattr__(self, "basis", clean)

    def degrees(self):
        return sorted(self.basis)

    def dim(self, q: int) -> int:
        return len(self.basis.get(q, ()))

    def labels(self, q: int):
        return self.basis.get(q, ())

    def index(self, q: int, label) -> int:
        return self.basis[q].index(label)

    def total_dim(self) -> int:
        return sum(len(v) for v in self.basis.values())


class ChainComplexWindow:
    """Chain complex with differential of degree -1 on a window.

    ``differential[q]`` is the matrix of d : C_q -> C_{q-1} in the given
    bases.  ``complete_below`` / ``complete_above`` declare that the
    complex genuinely vanishes past the window edge, making edge degrees
    reliable.
    """

    def __init__(
        self,
        space: GradedSpace,
        differential: dict | None = None,
        window: tuple[int, int] | None = None,
        complete_below: bool = True,
        complete_above: bool = True,
        check: bool = True,
    ):
        self.space = space
        degrees = space.degrees()
        if window is None:
            window = (degrees[0], degrees[-1]) if degrees else (0, 0)
        self.window = window
        self.complete_below = complete_below
        self.complete_above = complete_above
        self.differential = {}
        differential = differential or {}
        lo, hi = window
        for q in range(lo, hi + 1):
            n_from = space.dim(q)
            n_to = space.dim(q - 1) if q - 1 >= lo else 0
            M = differential.get(q)
            if M is None:
                M = RationalMatrix.zero(n_to, n_from)
            if (M.rows, M.cols) != (n_to, n_from):
                raise ValueError(f"differential at degree {q} has wrong shape")
            self.differential[q] = M
        if check:
            self._check_dd()
        self._homology_cache: HomologyResult | None = None

    def _check_dd(self):
        lo, hi = self.window
        for q in range(lo + 2, hi + 1):
            prod = self.differential[q - 1].matmul(self.differential[q])
            if not prod.is_zero():
                raise ValueError(f"d ∘ d != 0 from degree {q}")

    def d(self, q: int) -> RationalMatrix:
        return self.differential[q]

    def dim(self, q: int) -> int:
        return self.space.dim(q)

    def reliable(self, q: int) -> bool:
        lo, hi = self.window
        if q < lo or q > hi:
            return False
        if q == lo and not self.complete_below:
            return False
        if q == hi and not self.complete_above:
            return False
        return True

    def apply_d(self, q: int, v: Sequence) -> Vector:
        return self.differential[q].matvec(v)

    def homology(self) -> "HomologyResult":
        if self._homology_cache is None:
            self._homology_cache = homology(self)
        return self._homology_cache

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        lo, hi = self.window
        return {
            "window": [lo, hi],
            "complete_below": self.complete_below,
            "complete_above": self.complete_above,
            "basis": {str(q): [repr(l) for l in self.space.labels(q)] for q in self.space.degrees()},
            "differential": {
                str(q): [[r, c, str(v)] for (r, c), v in sorted(M.entries.items())]
                for q, M in self.differential.items()
                if M.entries
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "ChainComplexWindow":
        basis = {int(q): tuple(labels) for q, labels in data["basis"].items()}
        space = GradedSpace(basis)
        diff = {}
        for q, triples in data.get("differential", {}).items():
            q = int(q)
            n_to = space.dim(q - 1)
            n_from = space.dim(q)
            diff[q] = RationalMatrix(
                n_to, n_from, {(r, c): Fraction(v) for r, c, v in triples}
            )
        lo, hi = data["window"]
        return cls(
            space,
            diff,
            (lo, hi),
            complete_below=data.get("complete_below", True),
            complete_above=data.get("complete_above", True),
        )

    @classmethod
    def from_json(cls, text: str) -> "ChainComplexWindow":
        return cls.from_json_dict(json.loads(text))


@dataclass
class DegreeHomology:
    dim: int
    representatives: list  # list of Vectors (cycle chains)
    boundary_basis: list  # list of Vectors spanning the boundary space
    reliable: bool
    # reduce a cycle to coordinates over (representatives); None if unreliable
    _reducer: Callable | None = field(default=None, repr=False)

    def class_coordinates(self, v: Sequence) -> Vector:
        if self._reducer is None:
            raise WindowBoundary("homology at this degree is unreliable")
        return self._reducer(v)


class HomologyResult:
    def __init__(self, complex_: ChainComplexWindow, per_degree: dict):
        self.complex = complex_
        self.per_degree = per_degree

    def degrees(self):
        return sorted(self.per_degree)

    def at(self, q: int) -> DegreeHomology:
        h = self.per_degree.get(q)
        if h is None:
            raise WindowBoundary(f"degree {q} outside computed window")
        if not h.reliable:
            raise WindowBoundary(f"homology at degree {q} is unreliable (window edge)")
        return h

    def dim(self, q: int) -> int:
        return self.at(q).dim

    def dims(self) -> dict:
        return {q: h.dim for q, h in sorted(self.per_degree.items()) if h.reliable}


def homology(C: ChainComplexWindow) -> HomologyResult:
    """Kernel-mod-image homology with explicit representative cycles."""
    lo, hi = C.window
    out = {}
    for q in range(lo, hi + 1):
        n = C.dim(q)
        reliable = True
        # incoming boundaries need d_{q+1}; outgoing cycles need d_q
        if q + 1 > hi and not C.complete_above:
            reliable = False
        if q == lo and not C.complete_below:
            reliable = False
        if q > lo:
            cycles = kernel_basis(C.d(q))
        elif C.complete_below:
            # nothing below the window: every chain is a cycle
            cycles = [
                [Fraction(1) if i == j else Fraction(0) for i in range(n)]
                for j in range(n)
            ]
        else:
            cycles = []  # unknown lowest differential; flagged unreliable
        if q + 1 <= hi:
            dnext = C.d(q + 1)
            boundary_gens = [dnext.column(c) for c in range(dnext.cols)]
        else:
            boundary_gens = []
        # span boundaries, then pick independent cycle representatives
        reps: list[Vector] = []
        seen = QuotientSpace(n, boundary_gens)
        for z in cycles:
            if not is_zero_vec(seen.reduce(z)):
                reps.append(z)
                seen = QuotientSpace(n, boundary_gens + reps)
        # reducer: coordinates of a cycle over reps modulo boundaries
        if reliable:
            reducer = _make_reducer(n, reps, boundary_gens)
        else:
            reducer = None
        out[q] = DegreeHomology(
            dim=len(reps),
            representatives=reps,
            boundary_basis=boundary_gens,
            reliable=reliable,
            _reducer=reducer,
        )
    return HomologyResult(C, out)


def _make_reducer(n: int, reps: list, boundary_gens: list):
    cols = [vec(r) for r in reps] + [vec(b) for b in boundary_gens]
    M = RationalMatrix.from_columns(cols, n) if cols else RationalMatrix.zero(n, 0)
    k = len(reps)

    def reducer(v: Sequence) -> Vector:
        if not cols:
            if not is_zero_vec(vec(v)):
                raise NotACycle("vector not in cycle space")
            return []
        x = solve_particular(M, vec(v))
        return x[:k]

    return reducer


def is_boundary_with_witness(C: ChainComplexWindow, q: int, z: Sequence) -> Vector:
    """Return w with d w = z, or raise NotABoundary.  z must be a cycle."""
    z = vec(z)
    lo, hi = C.window
    if q > lo:
        if not is_zero_vec(C.apply_d(q, z)):
            raise NotACycle("dz != 0")
    if is_zero_vec(z):
        return zero_vec(C.dim(q + 1) if q + 1 <= hi else 0)
    if q + 1 > hi:
        if C.complete_above:
            raise NotABoundary("no chains one degree up")
        raise WindowBoundary("cannot certify boundary at window edge")
    try:
        return solve_particular(C.d(q + 1), z)
    except NoSolution:
        raise NotABoundary("cycle is not a boundary") from None


def tensor(C1: ChainComplexWindow, C2: ChainComplexWindow) -> ChainComplexWindow:
    """Tensor product complex with the signed Leibniz differential.

    Basis labels are pairs (l1, l2); d(a (x) b) = da (x) b + (-1)^|a| a (x) db.
    """
    basis: dict = {}
    deg_of: dict = {}
    for q1 in C1.space.degrees():
        for q2 in C2.space.degrees():
            q = q1 + q2
            for l1 in C1.space.labels(q1):
                for l2 in C2.space.labels(q2):
                    basis.setdefault(q, []).append((l1, l2))
                    deg_of[(l1, l2)] = (q1, q2)
    space = GradedSpace({q: tuple(ls) for q, ls in basis.items()})
    degrees = space.degrees()
    if not degrees:
        return ChainComplexWindow(space, {}, (0, 0))
    lo, hi = degrees[0], degrees[-1]
    index = {q: {l: i for i, l in enumerate(space.labels(q))} for q in range(lo, hi + 1)}
    diff = {}
    for q in range(lo + 1, hi + 1):
        entries = {}
        tgt = index.get(q - 1, {})
        for cidx, (l1, l2) in enumerate(space.labels(q)):
            q1, q2 = deg_of[(l1, l2)]
            # da (x) b
            if q1 - 1 >= C1.window[0] and q1 <= C1.window[1] and C1.dim(q1):
                d1 = C1.d(q1)
                c1 = C1.space.index(q1, l1)
                for r in range(d1.rows):
                    v = d1[(r, c1)]
                    if v:
                        lab = (C1.space.labels(q1 - 1)[r], l2)
                        ridx = tgt[lab]
                        entries[(ridx, cidx)] = entries.get((ridx, cidx), Fraction(0)) + v
            # (-1)^{q1} a (x) db
            if q2 - 1 >= C2.window[0] and q2 <= C2.window[1] and C2.dim(q2):
                d2 = C2.d(q2)
                c2 = C2.space.index(q2, l2)
                sign = Fraction(-1) if q1 % 2 else Fraction(1)
                for r in range(d2.rows):
                    v = d2[(r, c2)]
                    if v:
                        lab = (l1, C2.space.labels(q2 - 1)[r])
                        ridx = tgt[lab]
                        entries[(ridx, cidx)] = entries.get((ridx, cidx), Fraction(0)) + sign * v
        diff[q] = RationalMatrix(space.dim(q - 1), space.dim(q), entries)
    return ChainComplexWindow(
        space,
        diff,
        (lo, hi),
        complete_below=C1.complete_below and C2.complete_below,
        complete_above=C1.complete_above and C2.complete_above,
    )
