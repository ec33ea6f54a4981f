"""Shared helpers: randomized small chain complexes with known homology.

A complex is assembled from elementary pieces — an identity two-term
complex contributes nothing to homology, a lone generator contributes
one dimension — and then conjugated by random invertible change-of-basis
matrices in every degree.  The expected homology is therefore known
independently of the package's own linear algebra.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from operadlab.complexes import ChainComplexWindow, GradedSpace
from operadlab.linalg import RationalMatrix


def dense_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse of a small dense matrix (test-side oracle)."""
    n = len(rows)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                g = a[r][col]
                a[r] = [x - g * y for x, y in zip(a[r], a[col])]
    return [r[n:] for r in a]


def random_invertible(n: int, rng: random.Random):
    """(P, P^-1) as dense Fraction rows."""
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = Fraction(rng.randint(-2, 2))
        P[i] = [x + c * y for x, y in zip(P[i], P[j])]
    return P, dense_inverse(P)


def _dense_to_matrix(rows: list[list[Fraction]]) -> RationalMatrix:
    n = len(rows)
    m = len(rows[0]) if rows else 0
    entries = {
        (i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v != 0
    }
    return RationalMatrix(n, m, entries)


def _dense_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def random_complex(rng: random.Random, max_deg: int = 4):
    """(ChainComplexWindow, expected homology dims per degree).

    Dimensions stay small (<= 5 per degree) so exhaustive downstream
    checks remain fast.
    """
    free = {q: rng.randint(0, 2) for q in range(max_deg + 1)}
    killed = {q: rng.randint(0, 2) for q in range(1, max_deg + 1)}
    dims = {
        q: free.get(q, 0) + killed.get(q, 0) + killed.get(q + 1, 0)
        for q in range(max_deg + 1)
    }
    # block differential: the killed part of degree q maps identically
    # onto the corresponding part of degree q-1
    diff_dense = {}
    for q in range(1, max_deg + 1):
        rows = [[Fraction(0)] * dims[q] for _ in range(dims[q - 1])]
        # layout in degree q: [free_q | killed_q | image-of-(q+1)]
        # d maps the killed_q block onto the image block of degree q-1
        for k in range(killed.get(q, 0)):
            src = free.get(q, 0) + k
            dst = free.get(q - 1, 0) + killed.get(q - 1, 0) + k
            rows[dst][src] = Fraction(1)
        diff_dense[q] = rows
    # conjugate by random change of basis per degree
    P = {}
    Pinv = {}
    for q in range(max_deg + 1):
        if dims[q]:
            P[q], Pinv[q] = random_invertible(dims[q], rng)
    differential = {}
    for q in range(1, max_deg + 1):
        if not (dims[q] and dims[q - 1]):
            differential[q] = RationalMatrix.zero(dims[q - 1], dims[q])
            continue
        rows = _dense_mul(_dense_mul(Pinv[q - 1], diff_dense[q]), P[q])
        entries = {
            (i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v != 0
        }
        differential[q] = RationalMatrix(dims[q - 1], dims[q], entries)
    space = GradedSpace({q: tuple(f"e{q}_{i}" for i in range(dims[q])) for q in dims})
    C = ChainComplexWindow(space, differential, (0, max_deg))
    expected = {q: free.get(q, 0) for q in range(max_deg + 1)}
    return C, expected


@pytest.fixture
def rng():
    return random.Random(20260823)
