"""Exact univariate polynomials over Q and Sturm real-root counting."""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroPolynomial

_ZERO = Fraction(0)


class RationalPoly:
    """Polynomial with exact rational coefficients, ascending degree.

    The zero polynomial is the empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoly values are immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    def __neg__(self):
        return RationalPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPoly([c * other for c in self.coeffs])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalPoly(())
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RationalPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [_ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading
        while len(rem) - 1 >= d and rem:
            shift = len(rem) - 1 - d
            f = rem[-1] / lead
            quot[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPoly(quot), RationalPoly(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "RationalPoly":
        return RationalPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RationalPoly":
        if self.is_zero:
            return self
        lead = self.leading
        return RationalPoly([c / lead for c in self.coeffs])

    def gcd(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def squarefree_part(self) -> "RationalPoly":
        """self divided by gcd(self, self'), normalized monic."""
        if self.is_zero:
            raise ZeroPolynomial("squarefree part of zero polynomial")
        g = self.gcd(self.derivative())
        if g.degree < 1:
            return self.monic()
        q, r = divmod(self, g)
        if not r.is_zero:
            raise ArithmeticError("gcd did not divide the polynomial")
        return q.monic()

    def __call__(self, x) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"


def sturm_chain(p: RationalPoly) -> list[RationalPoly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero:
            break
        chain.append(-rem)
    if chain[-1].is_zero:
        chain.pop()
    return chain


def _sign_at(p: RationalPoly, x) -> int:
    if p.is_zero:
        return 0
    if x == "-inf":
        v = p.leading * (-1) ** p.degree
    elif x == "+inf":
        v = p.leading
    else:
        v = p(x)
    return (v > 0) - (v < 0)


def _variations(chain: list[RationalPoly], x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_root_count(p: RationalPoly, interval=None) -> int:
    """Number of distinct real roots of p, via Sturm's theorem.

    With an interval (a, b) of rationals, counts roots in the half-open
    interval (a, b]; the endpoints must not be roots of the squarefree part
    for the classical statement to apply, which holds in all uses here.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    q = p.squarefree_part()
    if q.degree < 1:
        return 0
    chain = sturm_chain(q)
    if interval is None:
        return _variations(chain, "-inf") - _variations(chain, "+inf")
    a, b = interval
    if b < a:
        raise ValueError("interval bounds out of order")
    return _variations(chain, Fraction(a)) - _variations(chain, Fraction(b))


def all_roots_real(p: RationalPoly) -> bool:
    """True when every complex root of p is real (multiplicity ignored)."""
    q = p.squarefree_part()
    if q.degree < 1:
        return True
    return sturm_real_root_count(q) == q.degree
