"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A scalar is stored as a coefficient vector of length phi(N) over the power
basis 1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial.
This representation is canonical: two scalars with the same conductor are
equal exactly when their coefficient vectors agree, which is what makes
group-element hashing possible.  Mixed-conductor arithmetic coerces both
operands into the field of the least common multiple conductor.

All coefficients are `fractions.Fraction`; there is no floating point on the
exact path.  `embed` provides the numeric evaluation with a rigorous error
bound for callers that need a fallback.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd

from .errors import ConductorMismatch

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Caches keyed by conductor.  Values are immutable tuples, safe to share.
_CYCLOTOMIC_POLY: dict[int, tuple[int, ...]] = {}
_POWER_TABLE: dict[int, tuple[tuple[Fraction, ...], ...]] = {}
_SUBFIELD_BASIS: dict[tuple[int, int], tuple[tuple[Fraction, ...], ...]] = {}


def euler_phi(n: int) -> int:
    """Euler's totient, by trial-division factorization."""
    if n < 1:
        raise ValueError(f"phi undefined for {n}")
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            pk = 1
            while m % p == 0:
                m //= p
                pk *= p
            result *= pk - pk // p
        p += 1
    if m > 1:
        result *= m - 1
    return result


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors in increasing order."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _poly_mul_int(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _poly_divexact_int(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    """Exact division of integer polynomials; den must be monic."""
    num_l = list(num)
    dn = len(den) - 1
    qn = len(num_l) - 1 - dn
    quot = [0] * (qn + 1)
    for k in range(qn, -1, -1):
        c = num_l[k + dn]
        quot[k] = c
        if c:
            for j, dj in enumerate(den):
                num_l[k + j] -= c * dj
    if any(num_l):
        raise ArithmeticError("inexact polynomial division")
    return tuple(quot)


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree."""
    cached = _CYCLOTOMIC_POLY.get(n)
    if cached is not None:
        return cached
    num = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact_int(num, cyclotomic_polynomial(d))
    _CYCLOTOMIC_POLY[n] = num
    return num


def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical coefficient vector of zeta_n^j for j in range(n)."""
    cached = _POWER_TABLE.get(n)
    if cached is not None:
        return cached
    deg = euler_phi(n)
    phi = cyclotomic_polynomial(n)
    # x^deg = -(phi[0] + phi[1] x + ... + phi[deg-1] x^(deg-1)), phi monic.
    rows: list[tuple[Fraction, ...]] = []
    cur = [_ZERO] * deg
    cur[0] = _ONE
    for _ in range(n):
        rows.append(tuple(cur))
        lead = cur[deg - 1]
        nxt = [_ZERO] + cur[: deg - 1]
        if lead:
            for i in range(deg):
                nxt[i] -= lead * phi[i]
        cur = nxt
    table = tuple(rows)
    _POWER_TABLE[n] = table
    return table


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class Cyclotomic:
    """Immutable element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("conductor", "coeffs", "_min", "_hashed")

    def __init__(self, conductor: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(conductor):
            raise ValueError(
                f"need {euler_phi(conductor)} coefficients for conductor {conductor}, got {len(coeffs)}"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_min", None)
        object.__setattr__(self, "_hashed", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def _raw(conductor: int, coeffs: tuple) -> "Cyclotomic":
        """Internal constructor for coefficients already in Fraction form."""
        self = object.__new__(Cyclotomic)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_min", None)
        object.__setattr__(self, "_hashed", None)
        return self

    @staticmethod
    def rational(value, conductor: int = 1) -> "Cyclotomic":
        q = Fraction(value)
        coeffs = [q] + [_ZERO] * (euler_phi(conductor) - 1)
        return Cyclotomic(conductor, coeffs)

    @staticmethod
    def zero(conductor: int = 1) -> "Cyclotomic":
        return Cyclotomic.rational(0, conductor)

    @staticmethod
    def one(conductor: int = 1) -> "Cyclotomic":
        return Cyclotomic.rational(1, conductor)

    @staticmethod
    def root_of_unity(n: int, power: int = 1) -> "Cyclotomic":
        """zeta_n^power in canonical coordinates."""
        return Cyclotomic(n, _power_table(n)[power % n])

    @staticmethod
    def from_terms(conductor: int, terms) -> "Cyclotomic":
        """Sum of (numerator, denominator, power) terms, canonicalized."""
        deg = euler_phi(conductor)
        table = _power_table(conductor)
        acc = [_ZERO] * deg
        for num, den, power in terms:
            q = Fraction(num, den)
            if not q:
                continue
            row = table[power % conductor]
            for i in range(deg):
                acc[i] += q * row[i]
        return Cyclotomic(conductor, acc)

    # -- coercion ------------------------------------------------------

    def lift(self, conductor: int) -> "Cyclotomic":
        """Embed into Q(zeta_M) for a multiple M of the current conductor."""
        n = self.conductor
        if conductor == n:
            return self
        if conductor % n != 0:
            raise ConductorMismatch(f"cannot lift conductor {n} into {conductor}")
        step = conductor // n
        table = _power_table(conductor)
        deg = euler_phi(conductor)
        acc = [_ZERO] * deg
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[(j * step) % conductor]
                for i in range(deg):
                    acc[i] += c * row[i]
        return Cyclotomic._raw(conductor, tuple(acc))

    @staticmethod
    def _pair(a: "Cyclotomic", b) -> tuple["Cyclotomic", "Cyclotomic"]:
        if isinstance(b, (int, Fraction)):
            b = Cyclotomic.rational(b, 1)
        if not isinstance(b, Cyclotomic):
            raise TypeError(f"cannot combine Cyclotomic with {type(b).__name__}")
        if a.conductor == b.conductor:
            return a, b
        m = _lcm(a.conductor, b.conductor)
        return a.lift(m), b.lift(m)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        try:
            a, b = Cyclotomic._pair(self, other)
        except TypeError:
            return NotImplemented
        return Cyclotomic._raw(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            a, b = Cyclotomic._pair(self, other)
        except TypeError:
            return NotImplemented
        return Cyclotomic._raw(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic._raw(self.conductor, tuple(c * q for c in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = Cyclotomic._pair(self, other)
        n = a.conductor
        deg = len(a.coeffs)
        if deg == 1:
            return Cyclotomic._raw(n, (a.coeffs[0] * b.coeffs[0],))
        conv = [_ZERO] * (2 * deg - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        conv[i + j] += ai * bj
        acc = list(conv[:deg])
        table = _power_table(n)
        for e in range(deg, 2 * deg - 1):
            c = conv[e]
            if c:
                row = table[e % n]
                for i in range(deg):
                    acc[i] += c * row[i]
        return Cyclotomic._raw(n, tuple(acc))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        n = self.conductor
        if len(self.coeffs) == 1:
            return Cyclotomic(n, (1 / self.coeffs[0],))
        phi = [Fraction(c) for c in cyclotomic_polynomial(n)]
        a = list(self.coeffs)
        # Extended Euclid on (a, phi): find u with u*a = gcd = 1 (mod phi).
        r0, r1 = phi, _trim(a)
        s0, s1 = [_ZERO], [_ONE]
        while _degree(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("scalar is a zero divisor; field reduction broken")
        lead = r1[0]
        inv_coeffs = [c / lead for c in s1]
        # s1 may exceed the basis degree; fold back through the power table.
        deg = len(self.coeffs)
        acc = list(inv_coeffs[:deg]) + [_ZERO] * max(0, deg - len(inv_coeffs))
        acc = acc[:deg]
        table = _power_table(n)
        for e in range(deg, len(inv_coeffs)):
            c = inv_coeffs[e]
            if c:
                row = table[e % n]
                for i in range(deg):
                    acc[i] += c * row[i]
        return Cyclotomic(n, acc)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.conductor, [c / q for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self.conductor)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- structure maps --------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k; k must be invertible mod the conductor."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not invertible modulo {n}")
        deg = len(self.coeffs)
        table = _power_table(n)
        acc = [_ZERO] * deg
        for j, c in enumerate(self.coeffs):
            if c:
                row = table[(j * k) % n]
                for i in range(deg):
                    acc[i] += c * row[i]
        return Cyclotomic._raw(n, tuple(acc))

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta -> zeta^(N-1)."""
        if self.conductor <= 2:
            return self
        return self.galois(self.conductor - 1)

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    @property
    def is_real(self) -> bool:
        return self.conjugate() == self

    def rational_value(self) -> Fraction | None:
        """The value as a Fraction when the scalar lies in Q, else None."""
        if self.is_rational:
            return self.coeffs[0]
        return None

    def reality_class(self) -> str:
        """One of 'rational', 'real_irrational', 'nonreal'.

        Conjugation-fixed scalars outside Q are reported distinctly from
        scalars that are not real at all.
        """
        if self.is_rational:
            return "rational"
        if self.is_real:
            return "real_irrational"
        return "nonreal"

    def multiplicative_order(self) -> int | None:
        """Order as a root of unity, or None for scalars of infinite order.

        Roots of unity in Q(zeta_N) are exactly +-zeta_N^k, so the order
        divides lcm(2, N) of the minimal conductor.
        """
        if self.is_zero:
            return None
        m = self.minimized()
        e = m.conductor if m.conductor % 2 == 0 else 2 * m.conductor
        if (m ** e) != 1:
            return None
        order = e
        for p in prime_factors(e):
            while order % p == 0 and (m ** (order // p)) == 1:
                order //= p
        return order

    # -- canonical minimal form -------------------------------------------

    def minimized(self) -> "Cyclotomic":
        """Equivalent scalar at the smallest conductor containing it."""
        cached = self._min
        if cached is not None:
            return cached
        cur = self
        if cur.is_rational:
            cur = Cyclotomic.rational(cur.coeffs[0], 1)
        else:
            changed = True
            while changed:
                changed = False
                for p in prime_factors(cur.conductor):
                    smaller = cur._descend(cur.conductor // p)
                    if smaller is not None:
                        cur = smaller
                        changed = True
                        break
        object.__setattr__(self, "_min", cur)
        object.__setattr__(cur, "_min", cur)
        return cur

    def _descend(self, d: int) -> "Cyclotomic | None":
        """Rewrite over Q(zeta_d) when possible (d divides the conductor)."""
        n = self.conductor
        if d < 1 or n % d != 0:
            return None
        # Fixed by Gal(Q(z_n)/Q(z_d)) = { z -> z^k : k = 1 mod d, gcd(k,n)=1 }?
        for k in range(1 + d, n, d):
            if gcd(k, n) == 1 and self.galois(k) != self:
                return None
        basis = _subfield_basis(n, d)
        coords = _solve_in_span(basis, self.coeffs)
        if coords is None:
            return None
        return Cyclotomic(d, coords)

    # -- equality / hashing -------------------------------------------------

    def key(self):
        """Conductor-independent canonical key (minimal form)."""
        m = self.minimized()
        return (m.conductor, m.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b = Cyclotomic._pair(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        h = self._hashed
        if h is None:
            h = hash(self.key())
            object.__setattr__(self, "_hashed", h)
        return h

    # -- numeric embedding ---------------------------------------------------

    def embed(self) -> tuple[complex, float]:
        """Evaluate at zeta_N = exp(2*pi*i/N).

        Returns (value, bound) where bound is a rigorous absolute error bound
        derived from the coefficient magnitudes and double-precision rounding.
        """
        n = self.conductor
        total = 0j
        mag = 0.0
        for j, c in enumerate(self.coeffs):
            if c:
                cf = float(c)
                total += cf * cmath.exp(2j * cmath.pi * j / n)
                mag += abs(cf)
        # Each term carries a few ulps from the conversion, the root, and the
        # product; the running sum adds one rounding per term.
        bound = mag * (len(self.coeffs) + 8) * 2.0 ** -50
        return total, bound

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                zeta = f"z{self.conductor}" + (f"^{j}" if j > 1 else "")
                if c == 1:
                    parts.append(zeta)
                elif c == -1:
                    parts.append(f"-{zeta}")
                else:
                    parts.append(f"{c}*{zeta}")
        return " + ".join(parts).replace("+ -", "- ")


# -- polynomial helpers over Fraction (ascending coefficients) ----------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _degree(p: list[Fraction]) -> int:
    return len(p) - 1


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [_ZERO] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [_ZERO] * max(0, len(a) - len(b) + 1)
    db = _degree(b)
    lead = b[-1]
    while _degree(rem) >= db and rem:
        shift = _degree(rem) - db
        factor = rem[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
        _trim(rem)
    return _trim(quot), rem


def _subfield_basis(n: int, d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical Q(zeta_n) coordinates of the power basis of Q(zeta_d)."""
    cached = _SUBFIELD_BASIS.get((n, d))
    if cached is not None:
        return cached
    step = n // d
    table = _power_table(n)
    basis = tuple(table[(i * step) % n] for i in range(euler_phi(d)))
    _SUBFIELD_BASIS[(n, d)] = basis
    return basis


def _solve_in_span(basis, target) -> tuple[Fraction, ...] | None:
    """Solve sum_i x_i basis[i] = target over Q; None when unsolvable."""
    rows = len(target)
    cols = len(basis)
    aug = [[basis[j][i] for j in range(cols)] + [target[i]] for i in range(rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    # Rows beyond the pivot count must also be consistent (all-zero lhs).
    for i in range(rows):
        if all(aug[i][c] == 0 for c in range(cols)) and aug[i][cols] != 0:
            return None
    coords = [_ZERO] * cols
    for row, col in pivots:
        coords[col] = aug[row][cols]
    return tuple(coords)
