"""Monomial and dense matrix types over cyclotomic scalars.

Column convention, fixed once for the whole package: a monomial matrix M
with permutation sigma and weights w acts by M e_i = w_i e_{sigma(i)}, so
the dense rendering has entry M[sigma(i)][i] = w_i.  Indices are 0-based
internally; JSON serialization uses 1-based permutation images.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic
from .errors import NotMonomial

_MINUS_ONE = Fraction(-1)
_PLUS_ONE = Fraction(1)


def _coerce_scalar(value, conductor: int | None = None) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    return Cyclotomic.rational(value, conductor or 1)


class MonomialMatrix:
    """Invertible matrix with exactly one nonzero entry per row and column."""

    __slots__ = ("n", "perm", "weights", "_key")

    def __init__(self, perm, weights):
        perm = tuple(perm)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError("perm must be a bijection of 0..n-1")
        weights = tuple(_coerce_scalar(w) for w in weights)
        if len(weights) != n:
            raise ValueError("need one weight per column")
        if any(w.is_zero for w in weights):
            raise ValueError("monomial weights must be nonzero")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialMatrix values are immutable")

    # -- constructors --------------------------------------------------

    @staticmethod
    def identity(n: int) -> "MonomialMatrix":
        one = Cyclotomic.one()
        return MonomialMatrix(range(n), [one] * n)

    @staticmethod
    def diagonal(entries) -> "MonomialMatrix":
        entries = [_coerce_scalar(e) for e in entries]
        return MonomialMatrix(range(len(entries)), entries)

    @staticmethod
    def from_permutation(perm) -> "MonomialMatrix":
        one = Cyclotomic.one()
        return MonomialMatrix(perm, [one] * len(tuple(perm)))

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, DenseMatrix):
            return self.to_dense() * other
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        sp, sw = self.perm, self.weights
        perm = tuple(sp[j] for j in other.perm)
        weights = tuple(ow * sw[j] for ow, j in zip(other.weights, other.perm))
        return MonomialMatrix(perm, weights)

    def inverse(self) -> "MonomialMatrix":
        perm = [0] * self.n
        weights: list[Cyclotomic] = [None] * self.n  # type: ignore[list-item]
        for i, j in enumerate(self.perm):
            perm[j] = i
            weights[j] = self.weights[i].inverse()
        return MonomialMatrix(perm, weights)

    def __pow__(self, exponent: int) -> "MonomialMatrix":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = MonomialMatrix.identity(self.n)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def order(self, cap: int = 1_000_000) -> int:
        """Multiplicative order, from cycle structure and weight products.

        The power at the permutation order t is diagonal, with each entry a
        power of its cycle's weight product; the order is t times the lcm of
        those scalar orders.  Raises for infinite order or past the cap.
        """
        n = self.n
        seen = [False] * n
        t = 1
        cycles = []
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            prod = None
            j = start
            while not seen[j]:
                seen[j] = True
                prod = self.weights[j] if prod is None else prod * self.weights[j]
                j = self.perm[j]
                length += 1
            cycles.append((length, prod))
            t = t * length // _gcd(t, length)
        diag_order = 1
        for length, prod in cycles:
            entry = prod ** (t // length)
            o = entry.multiplicative_order()
            if o is None:
                raise ValueError("matrix has infinite multiplicative order")
            diag_order = diag_order * o // _gcd(diag_order, o)
        order = t * diag_order
        if order > cap:
            raise ValueError(f"order {order} exceeds cap {cap}")
        return order

    def determinant(self) -> Cyclotomic:
        det = Cyclotomic.rational(_permutation_sign(self.perm))
        for w in self.weights:
            det = det * w
        return det

    def pattern(self) -> "MonomialMatrix":
        """Same permutation with every weight replaced by 1."""
        return MonomialMatrix.from_permutation(self.perm)

    def to_dense(self) -> "DenseMatrix":
        zero = Cyclotomic.zero()
        rows = [[zero] * self.n for _ in range(self.n)]
        for i, j in enumerate(self.perm):
            rows[j][i] = self.weights[i]
        return DenseMatrix(rows)

    # -- predicates ---------------------------------------------------------

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(w == 1 for w in self.weights)

    @property
    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.n))

    @property
    def is_scalar(self) -> bool:
        return self.is_diagonal and all(w == self.weights[0] for w in self.weights[1:])

    @property
    def is_permutation(self) -> bool:
        return all(w == 1 for w in self.weights)

    @property
    def is_signed(self) -> bool:
        return all(w == 1 or w == -1 for w in self.weights)

    def classify(self) -> str:
        """One of 'scalar', 'diagonal', 'signed_permutation', 'general'."""
        if self.is_scalar:
            return "scalar"
        if self.is_diagonal:
            return "diagonal"
        if self.is_signed:
            return "signed_permutation"
        return "general"

    def signed_parts(self) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """(perm, signs) with integer signs when all weights are +1 or -1."""
        signs = []
        for w in self.weights:
            q = w.rational_value()
            if q == _PLUS_ONE:
                signs.append(1)
            elif q == _MINUS_ONE:
                signs.append(-1)
            else:
                return None
        return self.perm, tuple(signs)

    def conductor(self) -> int:
        c = 1
        for w in self.weights:
            k = w.minimized().conductor
            c = c * k // _gcd(c, k)
        return c

    # -- identity and hashing --------------------------------------------------

    def key(self):
        k = self._key
        if k is None:
            k = (self.perm, tuple(w.key() for w in self.weights))
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if isinstance(other, DenseMatrix):
            return self.to_dense() == other
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"MonomialMatrix(perm={self.perm}, weights=[{', '.join(str(w) for w in self.weights)}])"


class DenseMatrix:
    """Full square matrix of cyclotomic entries."""

    __slots__ = ("n", "rows", "_key")

    def __init__(self, rows):
        rows = tuple(tuple(_coerce_scalar(e) for e in row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("DenseMatrix values are immutable")

    @staticmethod
    def identity(n: int) -> "DenseMatrix":
        one = Cyclotomic.one()
        zero = Cyclotomic.zero()
        return DenseMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, index: tuple[int, int]) -> Cyclotomic:
        i, j = index
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, MonomialMatrix):
            other = other.to_dense()
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            live = [(j, e) for j, e in enumerate(row) if not e.is_zero]
            out_row = []
            for col in cols:
                acc = None
                for j, e in live:
                    c = col[j]
                    if not c.is_zero:
                        term = e * c
                        acc = term if acc is None else acc + term
                out_row.append(acc if acc is not None else Cyclotomic.zero())
            out.append(out_row)
        return DenseMatrix(out)

    def __rmul__(self, other):
        if isinstance(other, MonomialMatrix):
            return other.to_dense() * self
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, MonomialMatrix):
            other = other.to_dense()
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return DenseMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        if isinstance(other, MonomialMatrix):
            other = other.to_dense()
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return DenseMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return DenseMatrix([[-e for e in row] for row in self.rows])

    def scale(self, scalar) -> "DenseMatrix":
        s = _coerce_scalar(scalar)
        return DenseMatrix([[s * e for e in row] for row in self.rows])

    def trace(self) -> Cyclotomic:
        acc = Cyclotomic.zero()
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def inverse(self) -> "DenseMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        n = self.n
        zero = Cyclotomic.zero()
        one = Cyclotomic.one()
        work = [list(row) for row in self.rows]
        inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not work[r][col].is_zero), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            scale = work[col][col].inverse()
            work[col] = [scale * e for e in work[col]]
            inv[col] = [scale * e for e in inv[col]]
            for r in range(n):
                if r != col and not work[r][col].is_zero:
                    f = work[r][col]
                    work[r] = [a - f * b for a, b in zip(work[r], work[col])]
                    inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
        return DenseMatrix(inv)

    def __pow__(self, exponent: int) -> "DenseMatrix":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = DenseMatrix.identity(self.n)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    @property
    def is_identity(self) -> bool:
        return all(
            (e == 1 if i == j else e.is_zero)
            for i, row in enumerate(self.rows)
            for j, e in enumerate(row)
        )

    @property
    def is_diagonal(self) -> bool:
        return all(
            e.is_zero for i, row in enumerate(self.rows) for j, e in enumerate(row) if i != j
        )

    @property
    def is_scalar(self) -> bool:
        if not self.is_diagonal:
            return False
        first = self.rows[0][0]
        return all(self.rows[i][i] == first for i in range(1, self.n))

    def diagonal_entries(self) -> tuple[Cyclotomic, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def as_monomial(self) -> MonomialMatrix | None:
        """Convert when there is exactly one nonzero entry per row and column."""
        n = self.n
        perm = [-1] * n
        weights: list[Cyclotomic] = [None] * n  # type: ignore[list-item]
        row_used = [False] * n
        for j in range(n):
            hits = [i for i in range(n) if not self.rows[i][j].is_zero]
            if len(hits) != 1:
                return None
            i = hits[0]
            if row_used[i]:
                return None
            row_used[i] = True
            perm[j] = i
            weights[j] = self.rows[i][j]
        return MonomialMatrix(perm, weights)

    def require_monomial(self) -> MonomialMatrix:
        mono = self.as_monomial()
        if mono is None:
            raise NotMonomial("matrix is not monomial")
        return mono

    def conductor(self) -> int:
        c = 1
        for row in self.rows:
            for e in row:
                if not e.is_zero:
                    k = e.minimized().conductor
                    c = c * k // _gcd(c, k)
        return c

    # -- identity and hashing ---------------------------------------------------

    def key(self):
        k = self._key
        if k is None:
            k = tuple(tuple(e.key() for e in row) for row in self.rows)
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if isinstance(other, MonomialMatrix):
            other = other.to_dense()
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"DenseMatrix([{body}])"


class DiagonalSign:
    """A +-1 diagonal matrix encoded as a GF(2) bitset (bit 1 means -1).

    Composition of sign diagonals is XOR of the bitsets.
    """

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int):
        if bits < 0 or bits >> n:
            raise ValueError("bits outside range for dimension")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("DiagonalSign values are immutable")

    @staticmethod
    def from_signs(signs) -> "DiagonalSign":
        bits = 0
        for i, s in enumerate(signs):
            if s == -1:
                bits |= 1 << i
            elif s != 1:
                raise ValueError("signs must be +1 or -1")
        return DiagonalSign(len(tuple(signs)), bits)

    @staticmethod
    def from_vector(vector) -> "DiagonalSign":
        """GF(2) vector of 0/1 entries, 0 meaning +1."""
        bits = 0
        vector = tuple(vector)
        for i, v in enumerate(vector):
            if v not in (0, 1):
                raise ValueError("vector entries must be 0 or 1")
            bits |= v << i
        return DiagonalSign(len(vector), bits)

    def signs(self) -> tuple[int, ...]:
        return tuple(-1 if (self.bits >> i) & 1 else 1 for i in range(self.n))

    def vector(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    def __mul__(self, other):
        if not isinstance(other, DiagonalSign):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return DiagonalSign(self.n, self.bits ^ other.bits)

    def determinant(self) -> int:
        return -1 if bin(self.bits).count("1") % 2 else 1

    def to_monomial(self) -> MonomialMatrix:
        return MonomialMatrix.diagonal(self.signs())

    def __eq__(self, other):
        if not isinstance(other, DiagonalSign):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def __hash__(self):
        return hash((self.n, self.bits))

    def __repr__(self):
        return f"DiagonalSign({self.n}, 0b{self.bits:0{self.n}b})"


# -- module-level operations ---------------------------------------------------


def cycle_matrix(n: int) -> MonomialMatrix:
    """The n-cycle permutation matrix e_i -> e_{i+1 mod n}.

    Dense form has ones on the subdiagonal and in the top-right corner.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    return MonomialMatrix.from_permutation([(i + 1) % n for i in range(n)])


def pattern(matrix: MonomialMatrix) -> MonomialMatrix:
    return matrix.pattern()


def tensor(a, b):
    """Kronecker product under the convention that block (i, j) is a_ij * b.

    Monomial operands produce a monomial result; any dense operand produces
    a dense result.  Chains associate to the left.
    """
    if isinstance(a, MonomialMatrix) and isinstance(b, MonomialMatrix):
        nb = b.n
        n = a.n * nb
        perm = [0] * n
        weights: list[Cyclotomic] = [None] * n  # type: ignore[list-item]
        for i in range(a.n):
            for j in range(nb):
                col = i * nb + j
                perm[col] = a.perm[i] * nb + b.perm[j]
                weights[col] = a.weights[i] * b.weights[j]
        return MonomialMatrix(perm, weights)
    da = a.to_dense() if isinstance(a, MonomialMatrix) else a
    db = b.to_dense() if isinstance(b, MonomialMatrix) else b
    n = da.n * db.n
    zero = Cyclotomic.zero()
    rows = [[zero] * n for _ in range(n)]
    for i in range(da.n):
        for j in range(da.n):
            e = da.rows[i][j]
            if e.is_zero:
                continue
            for k in range(db.n):
                for l in range(db.n):
                    rows[i * db.n + k][j * db.n + l] = e * db.rows[k][l]
    return DenseMatrix(rows)


def _permutation_sign(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
