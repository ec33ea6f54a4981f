"""Non-symmetric graded/chain operads.

Two backends share one interface: explicit structure constants
(:class:`TableOperad` and rule-based subclasses in ``instances``), and
free operads on graded generators presented by planar-tree terms with
rewriting (:class:`FreeChainOperad`).

Elements are finite rational combinations of basis labels at a fixed
arity.  Partial composition, the Leibniz differential, and the axiom
checker are linear extensions of the basis-level maps each backend
provides.

Sign conventions
----------------
The chain-level Koszul sign of grafting y into slot i of x is
``(-1)^{|y| * R}`` where R sums the degrees of the generators of x that
occur after leaf i in preorder (equivalently: strictly right of the path
to slot i).  The graded associativity axioms are then

* nested:   (x o_i y) o_{i-1+j} z  =  x o_i (y o_j z)
* parallel: (x o_i y) o_{j+n-1} z  =  (-1)^{|y||z|} (x o_j z) o_i y   (i < j)

These conventions are not asserted a priori; the d^2 = 0, Leibniz, and
axiom suites pin them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Coeffs = dict  # label -> Fraction


class TruncationError(Exception):
    """Composition result leaves the declared truncation."""


class ArityOverflow(TruncationError):
    pass


class DegreeOverflow(TruncationError):
    pass


@dataclass(frozen=True)
class OpElement:
    """Linear combination of basis labels at one arity."""

    arity: int
    coeffs: tuple  # sorted tuple of (label, Fraction) pairs

    @classmethod
    def make(cls, arity: int, coeffs: Coeffs) -> "OpElement":
        items = tuple(
            sorted(((l, c) for l, c in coeffs.items() if c != 0), key=lambda t: repr(t[0]))
        )
        return cls(arity, items)

    @classmethod
    def basis(cls, arity: int, label) -> "OpElement":
        return cls.make(arity, {label: Fraction(1)})

    @classmethod
    def zero(cls, arity: int) -> "OpElement":
        return cls(arity, ())

    def as_dict(self) -> Coeffs:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "OpElement") -> "OpElement":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        d = self.as_dict()
        for l, c in other.coeffs:
            d[l] = d.get(l, Fraction(0)) + c
        return OpElement.make(self.arity, d)

    def __sub__(self, other: "OpElement") -> "OpElement":
        return self + other.scale(-1)

    def scale(self, c) -> "OpElement":
        c = Fraction(c)
        return OpElement.make(self.arity, {l: c * v for l, v in self.coeffs})

    def __neg__(self) -> "OpElement":
        return self.scale(-1)

    def support(self):
        return [l for l, _ in self.coeffs]


class Operad:
    """Shared interface for both backends.

    Subclasses provide basis enumeration, degrees, basis-level composition
    and differential; this class supplies the linear extensions.
    """

    max_arity: int
    degree_cap: int | None = None

    def basis_by_degree(self, n: int) -> dict:
        """degree -> tuple of labels, within the truncation."""
        raise NotImplementedError

    def degree(self, n: int, label) -> int:
        raise NotImplementedError

    def compose_basis(self, m: int, xl, i: int, n: int, yl) -> Coeffs:
        raise NotImplementedError

    def diff_basis(self, n: int, label) -> Coeffs:
        return {}

    @property
    def unit_label(self):
        return None

    def has_differential(self) -> bool:
        return False

    # -- linear extensions ----------------------------------------------

    def element_degree(self, n: int, x: OpElement) -> int | None:
        degs = {self.degree(n, l) for l in x.support()}
        if not degs:
            return None
        if len(degs) != 1:
            raise ValueError("inhomogeneous element")
        return degs.pop()

    def compose(self, x: OpElement, i: int, y: OpElement) -> OpElement:
        m, n = x.arity, y.arity
        if not (1 <= i <= m):
            raise ValueError(f"slot {i} out of range for arity {m}")
        res_arity = m + n - 1
        if res_arity > self.max_arity:
            raise ArityOverflow(f"arity {res_arity} exceeds cap {self.max_arity}")
        out: Coeffs = {}
        for xl, xc in x.coeffs:
            for yl, yc in y.coeffs:
                for l, c in self.compose_basis(m, xl, i, n, yl).items():
                    out[l] = out.get(l, Fraction(0)) + xc * yc * c
        return OpElement.make(res_arity, out)

    def differential(self, x: OpElement) -> OpElement:
        out: Coeffs = {}
        for l, c in x.coeffs:
            for l2, c2 in self.diff_basis(x.arity, l).items():
                out[l2] = out.get(l2, Fraction(0)) + c * c2
        return OpElement.make(x.arity, out)

    def unit(self) -> OpElement:
        if self.unit_label is None:
            raise ValueError("operad has no unit")
        return OpElement.basis(1, self.unit_label)

    def basis_elements(self, n: int, q: int | None = None) -> list[OpElement]:
        by_deg = self.basis_by_degree(n)
        if q is None:
            labels: Iterable = (l for qq in sorted(by_deg) for l in by_deg[qq])
        else:
            labels = by_deg.get(q, ())
        return [OpElement.basis(n, l) for l in labels]

    def arity_degree_basis(self, n: int, q: int):
        """Canonical ordered basis labels of O(n)_q."""
        return tuple(self.basis_by_degree(n).get(q, ()))

    def dim(self, n: int, q: int) -> int:
        return len(self.arity_degree_basis(n, q))


# -- axiom checking ----------------------------------------------------------


@dataclass
class AxiomFailure:
    kind: str  # "nested" | "parallel" | "unit-left" | "unit-right" | "leibniz"
    detail: tuple


@dataclass
class AxiomReport:
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_operad_axioms(
    op: Operad,
    samples: int | None = None,
    max_arity: int | None = None,
    rng=None,
) -> AxiomReport:
    """Verify graded associativity and unit laws on basis triples.

    Exhaustive by default; ``samples`` caps the number of triples (taken
    from a shuffled enumeration when ``rng`` is given).
    """
    report = AxiomReport()
    cap = max_arity if max_arity is not None else op.max_arity
    triples = list(_composable_triples(op, cap))
    if rng is not None:
        rng.shuffle(triples)
    if samples is not None:
        triples = triples[:samples]
    for m, xl, n, yl, k, zl, i, j, kind in triples:
        x = OpElement.basis(m, xl)
        y = OpElement.basis(n, yl)
        z = OpElement.basis(k, zl)
        try:
            if kind == "nested":
                lhs = op.compose(op.compose(x, i, y), i - 1 + j, z)
                rhs = op.compose(x, i, op.compose(y, j, z))
            else:  # parallel, i < j
                lhs = op.compose(op.compose(x, i, y), j + n - 1, z)
                sgn = (-1) ** (op.degree(n, yl) * op.degree(k, zl))
                rhs = op.compose(op.compose(x, j, z), i, y).scale(sgn)
        except TruncationError:
            report.skipped += 1
            continue
        report.checked += 1
        if not (lhs - rhs).is_zero():
            report.failures.append(AxiomFailure(kind, (m, xl, i, n, yl, j, k, zl)))
    # unit laws
    if op.unit_label is not None:
        one = op.unit()
        for n in range(1, cap + 1):
            for x in op.basis_elements(n):
                try:
                    if not (op.compose(one, 1, x) - x).is_zero():
                        report.failures.append(AxiomFailure("unit-left", (n, x.coeffs)))
                    for i in range(1, n + 1):
                        if not (op.compose(x, i, one) - x).is_zero():
                            report.failures.append(
                                AxiomFailure("unit-right", (n, x.coeffs, i))
                            )
                    report.checked += 1
                except TruncationError:
                    report.skipped += 1
    return report


def _composable_triples(op: Operad, cap: int):
    arities = range(0, cap + 1)
    for m in arities:
        if m == 0:
            continue
        xs = [l for q in op.basis_by_degree(m).values() for l in q]
        for n in arities:
            if m + n - 1 > cap:
                continue
            ys = [l for q in op.basis_by_degree(n).values() for l in q]
            for k in arities:
                zs = [l for q in op.basis_by_degree(k).values() for l in q]
                for xl in xs:
                    for yl in ys:
                        for zl in zs:
                            # nested: z into slot j of y
                            if n >= 1 and m + n + k - 2 <= cap:
                                for i in range(1, m + 1):
                                    for j in range(1, n + 1):
                                        yield m, xl, n, yl, k, zl, i, j, "nested"
                            # parallel: slots i < j of x
                            if m + n + k - 2 <= cap:
                                for i in range(1, m + 1):
                                    for j in range(i + 1, m + 1):
                                        yield m, xl, n, yl, k, zl, i, j, "parallel"


def check_leibniz(op: Operad, max_arity: int | None = None) -> AxiomReport:
    """d(x o_i y) = dx o_i y + (-1)^{|x|} x o_i dy on all basis pairs."""
    report = AxiomReport()
    cap = max_arity if max_arity is not None else op.max_arity
    for m in range(1, cap + 1):
        xs = [(l, q) for q, ls in op.basis_by_degree(m).items() for l in ls]
        for n in range(0, cap + 1):
            if m + n - 1 > cap:
                continue
            ys = [l for q in op.basis_by_degree(n).values() for l in q]
            for xl, xq in xs:
                x = OpElement.basis(m, xl)
                for yl in ys:
                    y = OpElement.basis(n, yl)
                    for i in range(1, m + 1):
                        try:
                            lhs = op.differential(op.compose(x, i, y))
                            rhs = op.compose(op.differential(x), i, y) + op.compose(
                                x, i, op.differential(y)
                            ).scale((-1) ** xq)
                        except TruncationError:
                            report.skipped += 1
                            continue
                        report.checked += 1
                        if not (lhs - rhs).is_zero():
                            report.failures.append(
                                AxiomFailure("leibniz", (m, xl, i, n, yl))
                            )
    return report


def check_d_squared(op: Operad) -> AxiomReport:
    report = AxiomReport()
    for n in range(0, op.max_arity + 1):
        for x in op.basis_elements(n):
            dd = op.differential(op.differential(x))
            report.checked += 1
            if not dd.is_zero():
                report.failures.append(AxiomFailure("d-squared", (n, x.coeffs)))
    return report


# -- explicit structure-constant backend -------------------------------------


class TableOperad(Operad):
    """Operad given by explicit structure-constant tables."""

    def __init__(
        self,
        basis: dict,  # arity -> {degree -> tuple of labels}
        compositions: dict,  # (m, xl, i, n, yl) -> {label: Fraction}
        unit=None,
        differentials: dict | None = None,  # (n, label) -> {label: Fraction}
        max_arity: int | None = None,
    ):
        self._basis = {
            n: {q: tuple(ls) for q, ls in by_deg.items() if ls}
            for n, by_deg in basis.items()
        }
        self._degree = {}
        for n, by_deg in self._basis.items():
            for q, ls in by_deg.items():
                for l in ls:
                    self._degree[(n, l)] = q
        self._comp = compositions
        self._unit = unit
        self._diff = differentials or {}
        self.max_arity = max_arity if max_arity is not None else max(self._basis)

    def basis_by_degree(self, n: int) -> dict:
        return self._basis.get(n, {})

    def degree(self, n: int, label) -> int:
        return self._degree[(n, label)]

    def compose_basis(self, m: int, xl, i: int, n: int, yl) -> Coeffs:
        if m + n - 1 > self.max_arity:
            raise ArityOverflow(f"arity {m + n - 1} exceeds cap {self.max_arity}")
        try:
            return self._comp[(m, xl, i, n, yl)]
        except KeyError:
            raise ArityOverflow(
                f"no structure constants for ({m},{xl}) o_{i} ({n},{yl})"
            ) from None

    def diff_basis(self, n: int, label) -> Coeffs:
        return self._diff.get((n, label), {})

    def has_differential(self) -> bool:
        return bool(self._diff)

    @property
    def unit_label(self):
        return self._unit

    def corrupted(self, key, replacement: Coeffs) -> "TableOperad":
        """Copy with one structure constant replaced (negative controls)."""
        comp = dict(self._comp)
        comp[key] = replacement
        return TableOperad(
            {n: dict(b) for n, b in self._basis.items()},
            comp,
            unit=self._unit,
            differentials=dict(self._diff),
            max_arity=self.max_arity,
        )


# -- planar tree terms and the free backend ----------------------------------

LEAF = ()  # leaves are empty tuples; internal nodes are (gen_name, child, ...)


def tree_arity(tree) -> int:
    if tree == LEAF:
        return 1
    return sum(tree_arity(c) for c in tree[1:])


def tree_generators(tree) -> list:
    """Generator names in preorder."""
    if tree == LEAF:
        return []
    out = [tree[0]]
    for c in tree[1:]:
        out.extend(tree_generators(c))
    return out


def tree_str(tree) -> str:
    if tree == LEAF:
        return "*"
    return tree[0] + "(" + ",".join(tree_str(c) for c in tree[1:]) + ")"


class FreeChainOperad(Operad):
    """Free operad on graded generators, with optional strict associativity.

    ``generators`` maps name -> (arity, degree).  ``diff_rules`` assigns to
    a generator name an OpElement (combination of trees of the same arity,
    degree one less); the differential extends by the Leibniz rule.  When
    ``associative`` names a binary degree-0 generator nu, terms are kept in
    left-comb normal form: nu(a, nu(b, c)) rewrites to nu(nu(a, b), c).
    """

    def __init__(
        self,
        generators: dict,
        diff_rules: dict | None = None,
        associative: str | None = None,
        max_arity: int = 3,
        degree_cap: int = 32,
    ):
        self.generators = dict(generators)
        self.diff_rules = dict(diff_rules or {})
        self.associative = associative
        self.max_arity = max_arity
        self.degree_cap = degree_cap
        if associative is not None:
            ar, dg = self.generators[associative]
            if (ar, dg) != (2, 0):
                raise ValueError("associative generator must be binary of degree 0")
        self._basis_cache: dict = {}

    # -- basic tree data -------------------------------------------------

    def gen_degree(self, name: str) -> int:
        return self.generators[name][1]

    def tree_degree(self, tree) -> int:
        return sum(self.gen_degree(g) for g in tree_generators(tree))

    def degree(self, n: int, label) -> int:
        return self.tree_degree(label)

    @property
    def unit_label(self):
        return LEAF

    def is_normal(self, tree) -> bool:
        if tree == LEAF:
            return True
        if (
            self.associative is not None
            and tree[0] == self.associative
            and tree[2] != LEAF
            and tree[2][0] == self.associative
        ):
            return False
        return all(self.is_normal(c) for c in tree[1:])

    def normalize_tree(self, tree):
        """Left-comb normal form.  The rewrite moves only the degree-0
        associative generator, so no Koszul signs arise."""
        if tree == LEAF:
            return tree
        children = tuple(self.normalize_tree(c) for c in tree[1:])
        tree = (tree[0],) + children
        if (
            self.associative is not None
            and tree[0] == self.associative
            and tree[2] != LEAF
            and tree[2][0] == self.associative
        ):
            a = tree[1]
            b, c = tree[2][1], tree[2][2]
            nu = self.associative
            return self.normalize_tree((nu, (nu, a, b), c))
        return tree

    # -- basis enumeration ----------------------------------------------

    def basis_by_degree(self, n: int) -> dict:
        if n not in self._basis_cache:
            trees = sorted(self._enumerate(n), key=lambda t: (self.tree_degree(t), repr(t)))
            by_deg: dict = {}
            for t in trees:
                by_deg.setdefault(self.tree_degree(t), []).append(t)
            self._basis_cache[n] = {q: tuple(ts) for q, ts in by_deg.items()}
        return self._basis_cache[n]

    def _enumerate(self, n: int) -> set:
        """All normal-form trees with n leaves and degree within cap.

        Arity-0 generators are not supported in the free backend; every
        subtree carries at least one leaf, and the degree cap terminates
        unary towers.
        """
        if n > self.max_arity or n < 1:
            return set()
        for name, (ar, dg) in self.generators.items():
            if ar == 0:
                raise ValueError("arity-0 generators unsupported in free backend")
            if ar == 1 and dg == 0:
                raise ValueError("degree-0 unary generator makes the basis infinite")
        # fixpoint iteration: every vertex added either raises the degree
        # or (for the degree-0 binary generator) the leaf count, both
        # capped, so this terminates
        by_leaves: dict = {k: set() for k in range(1, self.max_arity + 1)}
        by_leaves[1].add(LEAF)
        changed = True
        while changed:
            changed = False
            for name, (ar, _) in self.generators.items():
                for leaves in range(ar, self.max_arity + 1):
                    for split in _compositions(leaves, ar):
                        for kids in itertools.product(*(by_leaves[s] for s in split)):
                            t = (name,) + kids
                            if self.tree_degree(t) > self.degree_cap:
                                continue
                            if self.is_normal(t) and t not in by_leaves[leaves]:
                                by_leaves[leaves].add(t)
                                changed = True
        return by_leaves[n]

    # -- composition and differential ------------------------------------

    def _graft_sign(self, xtree, i: int, ydeg: int) -> int:
        """Koszul sign for grafting a degree-ydeg element at leaf i."""
        if ydeg % 2 == 0:
            return 1
        after = self._degrees_after_leaf(xtree, i)
        return -1 if after % 2 else 1

    def _degrees_after_leaf(self, tree, i: int) -> int:
        """Sum of generator degrees occurring after leaf i in preorder."""
        total = {"leaf_count": 0, "after": 0, "seen": False}

        def walk(t):
            if t == LEAF:
                total["leaf_count"] += 1
                if total["leaf_count"] == i:
                    total["seen"] = True
                return
            if total["seen"]:
                total["after"] += self.gen_degree(t[0])
            for c in t[1:]:
                walk(c)

        walk(tree)
        return total["after"]

    def _graft(self, xtree, i: int, ytree):
        """Replace leaf i (1-based, left to right) of xtree by ytree."""
        counter = {"n": 0}

        def rec(t):
            if t == LEAF:
                counter["n"] += 1
                if counter["n"] == i:
                    return ytree
                return t
            return (t[0],) + tuple(rec(c) for c in t[1:])

        return rec(xtree)

    def compose_basis(self, m: int, xl, i: int, n: int, yl) -> Coeffs:
        if m + n - 1 > self.max_arity:
            raise ArityOverflow(f"arity {m + n - 1} exceeds cap {self.max_arity}")
        q = self.tree_degree(xl) + self.tree_degree(yl)
        if q > self.degree_cap:
            raise DegreeOverflow(f"degree {q} exceeds cap {self.degree_cap}")
        sign = self._graft_sign(xl, i, self.tree_degree(yl))
        tree = self.normalize_tree(self._graft(xl, i, yl))
        return {tree: Fraction(sign)}

    def diff_basis(self, n: int, label) -> Coeffs:
        out: Coeffs = {}
        self._diff_tree(label, out)
        return {l: c for l, c in out.items() if c != 0}

    def has_differential(self) -> bool:
        return any(not v.is_zero() for v in self.diff_rules.values())

    def _diff_tree(self, root, out):
        """Leibniz differential: replace one vertex at a time, with the
        sign (-1)^{sum of degrees of generators before it in preorder}."""
        # iterative preorder walk over vertices of root
        vertices = []

        def collect(t, addr):
            if t == LEAF:
                return
            vertices.append((addr, t[0]))
            for ci, c in enumerate(t[1:]):
                collect(c, addr + (ci,))

        collect(root, ())
        pre = 0
        for addr, gname in vertices:
            rule = self.diff_rules.get(gname)
            if rule is not None and not rule.is_zero():
                sign = -1 if pre % 2 else 1
                for repl_tree, coeff in rule.coeffs:
                    new = self._substitute_vertex(root, addr, repl_tree)
                    for t2, c2 in new.items():
                        out[t2] = out.get(t2, Fraction(0)) + Fraction(sign) * coeff * c2
            pre += self.gen_degree(gname)

    def _substitute_vertex(self, root, addr, repl_tree) -> Coeffs:
        """Replace the vertex at addr by repl_tree (same arity), grafting
        the original children into its leaves right-to-left."""

        def rec(t, a):
            if not a:
                children = t[1:]
                # graft children into repl_tree's leaves left to right
                # (slot positions shift as earlier children add leaves),
                # accumulating Koszul signs
                acc = {repl_tree: Fraction(1)}
                pos = 1
                for child in children:
                    cdeg = self.tree_degree(child)
                    nxt: Coeffs = {}
                    for tt, cc in acc.items():
                        s = self._graft_sign(tt, pos, cdeg)
                        g = self._graft(tt, pos, child)
                        nxt[g] = nxt.get(g, Fraction(0)) + cc * s
                    acc = nxt
                    pos += tree_arity(child)
                return acc
            ci = a[0]
            sub = rec(t[1 + ci], a[1:])
            out: Coeffs = {}
            for st, sc in sub.items():
                new = (t[0],) + t[1 : 1 + ci] + (st,) + t[2 + ci :]
                out[new] = out.get(new, Fraction(0)) + sc
            return out

        raw = rec(root, addr)
        out: Coeffs = {}
        for t, c in raw.items():
            nt = self.normalize_tree(t)
            out[nt] = out.get(nt, Fraction(0)) + c
        return out


def _compositions(total: int, parts: int):
    """Ways to write total as an ordered sum of `parts` positive integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- text syntax -------------------------------------------------------------

_GEN_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*:\s*(\d+)\s*:\s*(-?\d+)\s*$")
_DIFF_RE = re.compile(r"^\s*d\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)$")


def parse_free_operad(
    text: str,
    associative: str | None = None,
    max_arity: int = 3,
    degree_cap: int = 32,
) -> FreeChainOperad:
    """Build a free chain operad from a small text syntax.

    Lines are either generator declarations ``name:arity:degree`` or
    differential assignments ``d name = nu o2 g + nu o1 g - g o1 nu``.
    Composition chains associate to the left.
    """
    gen_lines = []
    diff_lines = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if _DIFF_RE.match(line):
            diff_lines.append(line)
        elif _GEN_RE.match(line):
            gen_lines.append(line)
        else:
            raise ValueError(f"cannot parse line: {line!r}")
    generators = {}
    for line in gen_lines:
        m = _GEN_RE.match(line)
        name, ar, dg = m.group(1), int(m.group(2)), int(m.group(3))
        generators[name] = (ar, dg)
    op = FreeChainOperad(
        generators, {}, associative=associative, max_arity=max_arity, degree_cap=degree_cap
    )
    diff_rules = {}
    for line in diff_lines:
        m = _DIFF_RE.match(line)
        name, expr = m.group(1), m.group(2)
        diff_rules[name] = _parse_expression(op, expr)
    op.diff_rules = diff_rules
    return op


def _gen_element(op: FreeChainOperad, name: str) -> OpElement:
    ar, _ = op.generators[name]
    tree = (name,) + (LEAF,) * ar
    return OpElement.basis(ar, tree)


def _parse_expression(op: FreeChainOperad, expr: str) -> OpElement:
    terms = re.split(r"(?=[+-])", expr.replace(" ", " "))
    result: OpElement | None = None
    for raw in terms:
        raw = raw.strip()
        if not raw:
            continue
        sign = 1
        if raw[0] == "+":
            raw = raw[1:].strip()
        elif raw[0] == "-":
            sign = -1
            raw = raw[1:].strip()
        coeff = Fraction(sign)
        cm = re.match(r"^(\d+(?:/\d+)?)\s*\*\s*(.*)$", raw)
        if cm:
            coeff *= Fraction(cm.group(1))
            raw = cm.group(2).strip()
        tokens = raw.split()
        if len(tokens) % 2 != 1:
            raise ValueError(f"malformed term: {raw!r}")
        elem = _gen_element(op, tokens[0])
        for k in range(1, len(tokens), 2):
            slot_tok, gen_tok = tokens[k], tokens[k + 1]
            sm = re.match(r"^o(\d+)$", slot_tok)
            if not sm:
                raise ValueError(f"expected composition token, got {slot_tok!r}")
            elem = op.compose(elem, int(sm.group(1)), _gen_element(op, gen_tok))
        term = elem.scale(coeff)
        result = term if result is None else result + term
    if result is None:
        raise ValueError("empty expression")
    return result
