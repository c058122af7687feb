"""Shared independent oracles for the test suite.

These deliberately avoid the code paths they check: polynomial reduction is
redone with plain Fraction lists, closures with a naive set loop, and
numeric checks go through numpy.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from monospec import Cyclotomic, DenseMatrix, MonomialMatrix


def poly_divmod_oracle(num: list[Fraction], den: list[Fraction]):
    """Schoolbook division on ascending coefficient lists."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    quot = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = num[:]
    while len(rem) >= len(den) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(den):
            break
        shift = len(rem) - len(den)
        f = rem[-1] / den[-1]
        quot[shift] = f
        for i, c in enumerate(den):
            rem[shift + i] -= f * c
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def naive_closure(generators, cap: int = 100_000):
    """Set-based closure by repeated products, independent of the BFS engine."""
    dense = [g.to_dense() if isinstance(g, MonomialMatrix) else g for g in generators]
    n = dense[0].n
    elements = {DenseMatrix.identity(n).key(): DenseMatrix.identity(n)}
    frontier = list(elements.values())
    while frontier:
        new = []
        for a in frontier:
            for g in dense:
                p = a * g
                k = p.key()
                if k not in elements:
                    elements[k] = p
                    new.append(p)
                    if len(elements) > cap:
                        raise RuntimeError("oracle closure exceeded cap")
        frontier = new
    return elements


def numeric_matrix(matrix) -> np.ndarray:
    dense = matrix.to_dense() if isinstance(matrix, MonomialMatrix) else matrix
    return np.array([[e.embed()[0] for e in row] for row in dense.rows], dtype=complex)


def numeric_eigenvalues(matrix) -> np.ndarray:
    return np.linalg.eigvals(numeric_matrix(matrix))


def random_cyclotomic(rng, conductor: int, span: int = 4) -> Cyclotomic:
    from monospec.cyclotomic import euler_phi

    coeffs = [
        Fraction(rng.randrange(-span, span + 1), rng.randrange(1, 4))
        for _ in range(euler_phi(conductor))
    ]
    return Cyclotomic(conductor, coeffs)


def random_monomial(rng, n: int, conductor: int = 8) -> MonomialMatrix:
    perm = list(range(n))
    rng.shuffle(perm)
    weights = [Cyclotomic.root_of_unity(conductor, rng.randrange(conductor)) for _ in range(n)]
    return MonomialMatrix(perm, weights)


def random_invertible_dense(rng, n: int, span: int = 3) -> DenseMatrix:
    while True:
        rows = [
            [Cyclotomic.rational(rng.randrange(-span, span + 1)) for _ in range(n)]
            for _ in range(n)
        ]
        m = DenseMatrix(rows)
        try:
            m.inverse()
            return m
        except ZeroDivisionError:
            continue
