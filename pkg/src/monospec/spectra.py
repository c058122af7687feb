"""Exact spectral decisions: characteristic polynomials and real-spectrum tests.

Characteristic polynomials are computed by the Faddeev-LeVerrier recurrence,
which is division-free apart from exact divisions by 1..n and therefore works
verbatim over the integers, the rationals, and cyclotomic scalars.  Signed
permutation inputs get a fast integer path (numpy int64 with an a priori
overflow bound, falling back to Python integers).

The real-spectrum decision chains the characteristic polynomial into a Sturm
count on its squarefree part.  Matrices whose polynomial has conjugation-fixed
but irrational coefficients are reported as such and can be resolved by an
explicitly-tagged numeric fallback.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import Cyclotomic
from .errors import CapExceeded, MonospecError, ZeroPolynomial
from .groups import FiniteMatrixGroup
from .matrices import DenseMatrix, MonomialMatrix
from .polynomials import RationalPoly, all_roots_real, sturm_real_root_count

__all__ = [
    "ring_commutator",
    "char_poly",
    "char_poly_rational",
    "has_all_real_roots",
    "has_real_spectrum",
    "is_nilpotent",
    "is_involution",
    "all_commutators_real",
    "SpectrumVerdict",
    "CommutatorScanResult",
    "sturm_real_root_count",
    "RationalPoly",
]


def ring_commutator(a, b) -> DenseMatrix:
    """The ring commutator a*b - b*a, exactly."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    ab = a * b
    ba = b * a
    if isinstance(ab, MonomialMatrix):
        ab = ab.to_dense()
    if isinstance(ba, MonomialMatrix):
        ba = ba.to_dense()
    return ab - ba


# -- characteristic polynomial ----------------------------------------------------


def _charpoly_int(matrix: list[list[int]]) -> tuple[int, ...]:
    """Integer Faddeev-LeVerrier; ascending coefficients, monic of degree n."""
    n = len(matrix)
    max_abs = max((abs(e) for row in matrix for e in row), default=0)
    # Entries of the k-th step matrix are bounded by n^(k-1) * B^k * 2^n and
    # intermediate products add a factor n*B; stay well under 2^63.
    safe = max_abs > 0 and (n * max_abs) ** (n + 1) * (2 ** n) * n < 2 ** 62
    if safe:
        return _charpoly_int_numpy(matrix)
    return _charpoly_int_python(matrix)


def _charpoly_int_numpy(matrix) -> tuple[int, ...]:
    n = len(matrix)
    a = np.array(matrix, dtype=np.int64)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = a.copy()
    c = -int(np.trace(m))
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        m = a @ (m + c * np.eye(n, dtype=np.int64))
        t = int(np.trace(m))
        if t % k:
            raise ArithmeticError("trace not divisible in integer recurrence")
        c = -t // k
        coeffs[n - k] = c
    return tuple(coeffs)


def _charpoly_int_python(matrix) -> tuple[int, ...]:
    n = len(matrix)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [row[:] for row in matrix]
    c = -sum(m[i][i] for i in range(n))
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] += c
        nxt = [
            [sum(matrix[i][l] * m[l][j] for l in range(n) if matrix[i][l]) for j in range(n)]
            for i in range(n)
        ]
        m = nxt
        t = sum(m[i][i] for i in range(n))
        if t % k:
            raise ArithmeticError("trace not divisible in integer recurrence")
        c = -t // k
        coeffs[n - k] = c
    return tuple(coeffs)


def _charpoly_fraction(matrix: list[list[Fraction]]) -> tuple[Fraction, ...]:
    n = len(matrix)
    coeffs: list[Fraction] = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [row[:] for row in matrix]
    c = -sum(m[i][i] for i in range(n))
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] += c
        m = [
            [sum(matrix[i][l] * m[l][j] for l in range(n) if matrix[i][l]) for j in range(n)]
            for i in range(n)
        ]
        t = sum(m[i][i] for i in range(n))
        c = -t / k
        coeffs[n - k] = c
    return tuple(coeffs)


def _charpoly_cyclo(dense: DenseMatrix) -> tuple[Cyclotomic, ...]:
    n = dense.n
    zero = Cyclotomic.zero()
    one = Cyclotomic.one()
    a = [list(row) for row in dense.rows]
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    m = [row[:] for row in a]
    c = -sum(m[i][i] for i in range(n))
    if isinstance(c, int):
        c = Cyclotomic.rational(c)
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] = m[i][i] + c
        nxt = []
        for i in range(n):
            row_a = a[i]
            live = [(l, row_a[l]) for l in range(n) if not row_a[l].is_zero]
            new_row = []
            for j in range(n):
                acc = None
                for l, e in live:
                    v = m[l][j]
                    if not v.is_zero:
                        term = e * v
                        acc = term if acc is None else acc + term
                new_row.append(acc if acc is not None else zero)
            nxt.append(new_row)
        m = nxt
        t = sum(m[i][i] for i in range(n))
        if isinstance(t, int):
            t = Cyclotomic.rational(t)
        c = -(t / k)
        coeffs[n - k] = c
    return tuple(coeffs)


def _integer_rows(dense: DenseMatrix) -> list[list[int]] | None:
    out = []
    for row in dense.rows:
        int_row = []
        for e in row:
            q = e.rational_value()
            if q is None or q.denominator != 1:
                return None
            int_row.append(q.numerator)
        out.append(int_row)
    return out


def _rational_rows(dense: DenseMatrix) -> list[list[Fraction]] | None:
    out = []
    for row in dense.rows:
        q_row = []
        for e in row:
            q = e.rational_value()
            if q is None:
                return None
            q_row.append(q)
        out.append(q_row)
    return out


def char_poly(matrix) -> tuple[Cyclotomic, ...]:
    """Monic characteristic polynomial, ascending cyclotomic coefficients."""
    dense = matrix.to_dense() if isinstance(matrix, MonomialMatrix) else matrix
    ints = _integer_rows(dense)
    if ints is not None:
        return tuple(Cyclotomic.rational(c) for c in _charpoly_int(ints))
    rats = _rational_rows(dense)
    if rats is not None:
        return tuple(Cyclotomic.rational(c) for c in _charpoly_fraction(rats))
    return _charpoly_cyclo(dense)


def char_poly_rational(matrix) -> RationalPoly | None:
    """The characteristic polynomial as a RationalPoly when all coefficients are rational."""
    coeffs = char_poly(matrix)
    rational = [c.rational_value() for c in coeffs]
    if any(q is None for q in rational):
        return None
    return RationalPoly(rational)


# -- real-root and spectrum decisions ----------------------------------------------


def has_all_real_roots(poly) -> str:
    """Decide 'yes' / 'no' / 'real_irrational_coeffs' for a polynomial.

    Accepts a RationalPoly or a sequence of cyclotomic coefficients.  A
    non-conjugation-fixed coefficient forces a non-real root, so the answer
    is 'no' without any root counting.
    """
    if isinstance(poly, RationalPoly):
        if poly.is_zero:
            raise ZeroPolynomial("zero polynomial")
        return "yes" if all_roots_real(poly) else "no"
    coeffs = list(poly)
    if all(c.is_zero for c in coeffs):
        raise ZeroPolynomial("zero polynomial")
    rational: list[Fraction] = []
    all_rational = True
    for c in coeffs:
        if not c.is_real:
            return "no"
        q = c.rational_value()
        if q is None:
            all_rational = False
        else:
            rational.append(q)
    if not all_rational:
        return "real_irrational_coeffs"
    return "yes" if all_roots_real(RationalPoly(rational)) else "no"


@dataclass(frozen=True)
class SpectrumVerdict:
    status: str  # 'yes' | 'no' | 'real_irrational_coeffs'
    exact: bool
    char_poly: tuple

    @property
    def real(self) -> bool:
        return self.status == "yes"


def has_real_spectrum(
    matrix, numeric_fallback: bool = False, tolerance: float = 1e-10
) -> SpectrumVerdict:
    """Decide whether all eigenvalues of the matrix are real.

    The exact path requires a rational characteristic polynomial.  With
    `numeric_fallback`, real-but-irrational coefficient cases are settled by
    numeric root finding at the given tolerance and flagged as inexact.
    """
    coeffs = char_poly(matrix)
    status = has_all_real_roots(coeffs)
    if status != "real_irrational_coeffs":
        return SpectrumVerdict(status, True, coeffs)
    if not numeric_fallback:
        return SpectrumVerdict(status, False, coeffs)
    numeric = [c.embed()[0] for c in coeffs]
    roots = np.roots(list(reversed(numeric)))
    real = bool(np.all(np.abs(roots.imag) <= tolerance))
    return SpectrumVerdict("yes" if real else "no", False, coeffs)


def is_nilpotent(matrix) -> bool:
    """True when the characteristic polynomial is x^n."""
    coeffs = char_poly(matrix)
    return all(c.is_zero for c in coeffs[:-1])


def is_involution(matrix) -> bool:
    square = matrix * matrix
    return square.is_identity


# -- whole-group commutator scan -----------------------------------------------------


@dataclass(frozen=True)
class CommutatorScanResult:
    verdict: str  # 'yes' | 'no'
    pairs_checked: int
    witness: tuple | None  # (A, B) as matrices, or None
    witness_char_poly: tuple | None
    exact: bool = True
    witness_indices: tuple[int, int] | None = None

    @property
    def all_real(self) -> bool:
        return self.verdict == "yes"


def _signed_table(group: FiniteMatrixGroup):
    """(perm, signs) integer arrays for every element, or None."""
    table = []
    for e in group.elements:
        mono = e if isinstance(e, MonomialMatrix) else e.as_monomial()
        if mono is None:
            return None
        parts = mono.signed_parts()
        if parts is None:
            return None
        table.append(parts)
    return table


class _RealityCache:
    """Memoized exact real-rootedness decisions keyed by coefficient tuples."""

    def __init__(self):
        self._known: dict[tuple, bool] = {}

    def all_real_int(self, coeffs: tuple[int, ...]) -> bool:
        hit = self._known.get(coeffs)
        if hit is None:
            hit = all_roots_real(RationalPoly(coeffs))
            self._known[coeffs] = hit
        return hit


def _commutator_charpoly_signed(pa, sa, pb, sb, n) -> tuple[int, ...] | None:
    """Characteristic polynomial of [A,B] for signed permutations, or None if zero.

    A e_i = sa_i e_{pa(i)}; the product AB has permutation pa o pb and the
    commutator matrix AB - BA has at most two entries per column.
    """
    pab = tuple(pa[j] for j in pb)
    sab = tuple(sb[i] * sa[pb[i]] for i in range(n))
    pba = tuple(pb[j] for j in pa)
    sba = tuple(sa[i] * sb[pa[i]] for i in range(n))
    if pab == pba and sab == sba:
        return None
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[pab[i]][i] += sab[i]
        rows[pba[i]][i] -= sba[i]
    return _charpoly_int(rows)


def _pair_iterator(count: int, mode: str, sample: int | None, seed: int | None):
    if mode == "exhaustive":
        for i in range(count):
            for j in range(i + 1, count):
                yield i, j
    elif mode == "sample":
        if sample is None or seed is None:
            raise ValueError("sample mode requires a pair count and a seed")
        rng = random.Random(seed)
        for _ in range(sample):
            i = rng.randrange(count)
            j = rng.randrange(count)
            yield i, j
    else:
        raise ValueError(f"unknown scan mode {mode!r}")


def all_commutators_real(
    group: FiniteMatrixGroup,
    mode: str = "exhaustive",
    sample: int | None = None,
    seed: int | None = None,
    pair_cap: int = 50_000_000,
    numeric_fallback: bool = False,
) -> CommutatorScanResult:
    """Scan ring commutators of element pairs for non-real spectra.

    Exhaustive mode scans all unordered pairs in enumeration order and
    reports the first failing pair with its characteristic polynomial;
    commuting pairs are skipped since their commutator is zero.  Sample mode
    draws `sample` seeded pairs.
    """
    count = group.order
    if mode == "exhaustive" and count * (count - 1) // 2 > pair_cap:
        raise CapExceeded(f"pair scan would exceed the cap of {pair_cap} pairs")
    signed = _signed_table(group)
    cache = _RealityCache()
    pairs_checked = 0
    if signed is not None:
        n = group.n
        for i, j in _pair_iterator(count, mode, sample, seed):
            pairs_checked += 1
            pa, sa = signed[i]
            pb, sb = signed[j]
            coeffs = _commutator_charpoly_signed(pa, sa, pb, sb, n)
            if coeffs is None:
                continue
            if not cache.all_real_int(coeffs):
                witness = (group.elements[i], group.elements[j])
                poly = tuple(Cyclotomic.rational(c) for c in coeffs)
                return CommutatorScanResult(
                    "no", pairs_checked, witness, poly, witness_indices=(i, j)
                )
        return CommutatorScanResult("yes", pairs_checked, None, None)
    # General path: exact cyclotomic char poly with memoization on the
    # commutator matrix key.
    poly_cache: dict[tuple, SpectrumVerdict] = {}
    for i, j in _pair_iterator(count, mode, sample, seed):
        pairs_checked += 1
        a = group.elements[i]
        b = group.elements[j]
        if a * b == b * a:
            continue
        comm = ring_commutator(a, b)
        key = comm.key()
        verdict = poly_cache.get(key)
        if verdict is None:
            verdict = has_real_spectrum(comm, numeric_fallback=numeric_fallback)
            if verdict.status == "real_irrational_coeffs":
                raise MonospecError(
                    "commutator spectrum not decidable exactly; enable the numeric fallback"
                )
            poly_cache[key] = verdict
        if verdict.status == "no":
            return CommutatorScanResult(
                "no",
                pairs_checked,
                (a, b),
                verdict.char_poly,
                exact=verdict.exact,
                witness_indices=(i, j),
            )
    return CommutatorScanResult("yes", pairs_checked, None, None)
