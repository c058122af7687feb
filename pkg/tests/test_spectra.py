"""Exact spectral decisions: characteristic polynomials and commutator scans."""

import random
from fractions import Fraction

import numpy as np
import pytest

from helpers import numeric_eigenvalues, random_invertible_dense, random_monomial
from monospec import (
    Cyclotomic,
    DenseMatrix,
    FiniteMatrixGroup,
    MonomialMatrix,
    all_commutators_real,
    char_poly,
    char_poly_rational,
    cycle_matrix,
    has_all_real_roots,
    has_real_spectrum,
    is_involution,
    is_nilpotent,
    ring_commutator,
)
from monospec.spectra import _charpoly_int


def rational_coeffs(coeffs):
    return [c.rational_value() for c in coeffs]


def quaternion_group():
    i4 = Cyclotomic.root_of_unity(4)
    return FiniteMatrixGroup.close(
        [MonomialMatrix.diagonal([i4, -i4]), MonomialMatrix([1, 0], [1, -1])]
    )


def test_char_poly_examples():
    assert rational_coeffs(char_poly(cycle_matrix(3))) == [-1, 0, 0, 1]
    assert rational_coeffs(char_poly(MonomialMatrix.diagonal([1, -1]))) == [-1, 0, 1]
    j = MonomialMatrix.diagonal([1, -1])
    comm = ring_commutator(j, cycle_matrix(2))
    assert comm == DenseMatrix([[0, 2], [-2, 0]])
    assert rational_coeffs(char_poly(comm)) == [4, 0, 1]


def test_ring_commutator_basics():
    c3 = cycle_matrix(3)
    assert ring_commutator(c3, c3).is_zero
    a = MonomialMatrix.diagonal([1, -1, 1])
    b = MonomialMatrix.diagonal([-1, -1, 1])
    assert ring_commutator(a, b).is_zero


def test_char_poly_similarity_invariance():
    rng = random.Random(21)
    for _ in range(10):
        m = random_monomial(rng, 4).to_dense()
        s = random_invertible_dense(rng, 4)
        conj = s.inverse() * m * s
        assert char_poly(conj) == char_poly(m)


def test_char_poly_against_numeric_eigenvalues():
    rng = random.Random(33)
    for _ in range(10):
        rows = [
            [Cyclotomic.rational(rng.randrange(-3, 4)) for _ in range(4)] for _ in range(4)
        ]
        m = DenseMatrix(rows)
        coeffs = [float(c.rational_value()) for c in char_poly(m)]
        for ev in numeric_eigenvalues(m):
            value = sum(c * ev ** k for k, c in enumerate(coeffs))
            assert abs(value) < 1e-6


def test_char_poly_against_sympy():
    import sympy

    rng = random.Random(44)
    for _ in range(5):
        entries = [[rng.randrange(-3, 4) for _ in range(4)] for _ in range(4)]
        ours = list(_charpoly_int(entries))
        x = sympy.symbols("x")
        theirs = sympy.Matrix(entries).charpoly(x).all_coeffs()  # descending
        assert ours == [int(c) for c in reversed(theirs)]


def test_char_poly_cyclotomic_entries():
    z8 = Cyclotomic.root_of_unity(8)
    rot = DenseMatrix([[z8, 0], [0, z8.conjugate()]])
    coeffs = char_poly(rot)
    # (x - z8)(x - z8^-1) = x^2 - (z8 + z8^-1) x + 1
    assert coeffs[0] == 1
    assert coeffs[1] == -(z8 + z8.conjugate())
    assert coeffs[2] == 1
    assert has_all_real_roots(coeffs) == "real_irrational_coeffs"
    verdict = has_real_spectrum(rot, numeric_fallback=True)
    assert verdict.status == "no" and not verdict.exact
    # Real spectrum {0, sqrt 2} with an irrational coefficient.
    sqrt2 = z8 + z8.conjugate()
    tri = DenseMatrix([[Cyclotomic.zero(8), Cyclotomic.one(8)], [Cyclotomic.zero(8), sqrt2]])
    assert has_all_real_roots(char_poly(tri)) == "real_irrational_coeffs"
    verdict = has_real_spectrum(tri, numeric_fallback=True)
    assert verdict.status == "yes" and not verdict.exact
    # A non-real coefficient settles the question without root counting.
    twist = DenseMatrix([[z8, 0], [0, z8]])
    assert has_all_real_roots(char_poly(twist)) == "no"


def test_has_all_real_roots():
    assert has_all_real_roots(char_poly(cycle_matrix(3))) == "no"
    from monospec import RationalPoly

    assert has_all_real_roots(RationalPoly([2, -3, 0, 1])) == "yes"  # (x-1)^2 (x+2)
    assert has_all_real_roots(RationalPoly([4, 0, 1])) == "no"  # x^2 + 4


def test_has_real_spectrum():
    assert has_real_spectrum(MonomialMatrix.diagonal([1, -1, -1])).status == "yes"
    j = MonomialMatrix.diagonal([1, -1])
    assert has_real_spectrum(ring_commutator(j, cycle_matrix(2))).status == "no"
    nil = DenseMatrix([[0, 1], [0, 0]])
    assert has_real_spectrum(nil).status == "yes"


def test_is_nilpotent():
    d = MonomialMatrix.diagonal([1, -1, -1]).to_dense()
    ident = MonomialMatrix.identity(3).to_dense()
    assert is_nilpotent((d - ident) * cycle_matrix(3).to_dense())
    assert not is_nilpotent(cycle_matrix(3))
    assert is_nilpotent(DenseMatrix([[0, 0], [0, 0]]))


def test_is_involution():
    assert is_involution(MonomialMatrix.diagonal([1, -1]))
    assert not is_involution(cycle_matrix(3))
    assert is_involution(cycle_matrix(2))


def test_scan_normal_form_group():
    from monospec import DiagonalSign, build_main_group

    g = build_main_group(3, [DiagonalSign(3, 0b011), DiagonalSign(3, 0b111)])
    result = all_commutators_real(g)
    assert result.verdict == "yes"
    assert result.pairs_checked == 24 * 23 // 2


def test_scan_quaternion_witness():
    result = all_commutators_real(quaternion_group())
    assert result.verdict == "no"
    assert rational_coeffs(result.witness_char_poly) == [4, 0, 1]
    a, b = result.witness
    # Deterministic first failure in enumeration order; certificate rechecks.
    comm = ring_commutator(a, b)
    assert char_poly(comm) == result.witness_char_poly
    assert has_real_spectrum(comm).status == "no"


def test_scan_abelian_is_trivially_real():
    g = FiniteMatrixGroup.close([cycle_matrix(5)])
    result = all_commutators_real(g)
    assert result.verdict == "yes"


def test_scan_sample_mode_is_seeded():
    from monospec import DiagonalSign, build_main_group

    g = build_main_group(5, [DiagonalSign(5, 0b00011)])
    a = all_commutators_real(g, mode="sample", sample=500, seed=7)
    b = all_commutators_real(g, mode="sample", sample=500, seed=7)
    assert a.pairs_checked == b.pairs_checked == 500
    assert a.verdict == b.verdict == "yes"
    with pytest.raises(ValueError):
        all_commutators_real(g, mode="sample", sample=10)


def test_scan_dense_group_generic_path():
    # Quaternions stored densely exercise the non-signed path.
    i4 = Cyclotomic.root_of_unity(4)
    gens = [MonomialMatrix.diagonal([i4, -i4]).to_dense(), DenseMatrix([[0, -1], [1, 0]])]
    g = FiniteMatrixGroup.close(gens)
    result = all_commutators_real(g)
    assert result.verdict == "no"
    assert rational_coeffs(result.witness_char_poly) == [4, 0, 1]


def test_charpoly_int_overflow_fallback():
    big = 10 ** 9
    entries = [[big, 0], [0, big]]
    coeffs = _charpoly_int(entries)
    assert coeffs == (big * big, -2 * big, 1)
