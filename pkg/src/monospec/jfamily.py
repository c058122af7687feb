"""Sign-diagonal families attached to abelian permutation groups.

For an indecomposable abelian permutation group K in odd dimension n > 1,
the family of interest is the set of +-1 diagonals J whose average over
every nontrivial element of K equals det(J) * I.  Encoding sign diagonals
as GF(2) vectors turns the averaging conditions into linear equations
(orbit sums over the cycles of prime-order generators), so the det-1 part
of the family is a GF(2) kernel.  Its dimension equals Euler's phi(n) when
K is a single n-cycle, and the family collapses to {+I, -I} when K is not
cyclic.
"""

from __future__ import annotations

from . import gf2
from .cyclotomic import euler_phi, prime_factors
from .errors import EvenN, NotAbelian, NotInJn, NotPermutationGroup, ScalarD, SelfCheckFailed
from .groups import FiniteMatrixGroup, avg
from .matrices import DiagonalSign, MonomialMatrix, cycle_matrix


class SignVectorSpace:
    """A GF(2) subspace of sign diagonals, with optional -I coset.

    `basis` is in reduced row-echelon form.  When `with_negation` is set the
    represented set is span union (-I) * span; this is how the full family
    (both determinant signs) is carried around without leaving GF(2).
    """

    __slots__ = ("n", "basis", "with_negation")

    def __init__(self, n: int, basis, with_negation: bool = False):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", tuple(gf2.rref(list(basis), n)))
        object.__setattr__(self, "with_negation", with_negation)

    def __setattr__(self, name, value):
        raise AttributeError("SignVectorSpace values are immutable")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def all_ones(self) -> int:
        return (1 << self.n) - 1

    @property
    def contains_minus_identity(self) -> bool:
        if gf2.in_span(self.all_ones, list(self.basis)):
            return True
        return self.with_negation

    @property
    def order(self) -> int:
        base = 1 << self.rank
        if self.with_negation and not gf2.in_span(self.all_ones, list(self.basis)):
            return 2 * base
        return base

    def __contains__(self, item) -> bool:
        bits = item.bits if isinstance(item, DiagonalSign) else int(item)
        if gf2.in_span(bits, list(self.basis)):
            return True
        if self.with_negation:
            return gf2.in_span(bits ^ self.all_ones, list(self.basis))
        return False

    def members(self, limit: int = 1 << 20) -> list[DiagonalSign]:
        """All members as sign diagonals; refuses to materialize huge spaces."""
        if self.order > limit:
            raise MemoryError(f"space of order {self.order} exceeds limit {limit}")
        bits = gf2.span_members(list(self.basis))
        if self.with_negation and not gf2.in_span(self.all_ones, list(self.basis)):
            bits = sorted(bits + [b ^ self.all_ones for b in bits])
        return [DiagonalSign(self.n, b) for b in bits]

    @property
    def is_scalar(self) -> bool:
        """True when every member is +I or -I."""
        allowed = {0, self.all_ones}
        return all(b in allowed for b in self.basis)

    def __repr__(self):
        return (
            f"SignVectorSpace(n={self.n}, rank={self.rank}, "
            f"with_negation={self.with_negation})"
        )


# -- prime-order generators -----------------------------------------------------


def prime_order_generators(group: FiniteMatrixGroup) -> list[MonomialMatrix]:
    """One generator for each subgroup of prime order of an abelian group.

    The representative of each subgroup is its minimal element under the
    canonical key order, so the output is deterministic.
    """
    if not group.is_abelian():
        raise NotAbelian("prime-order generators require an abelian group")
    subgroups: dict[frozenset, MonomialMatrix] = {}
    for e in group.monomial_elements():
        if e.is_identity:
            continue
        o = group.element_order(e)
        if not _is_prime(o):
            continue
        powers = []
        p = e
        for _ in range(o):
            powers.append(p)
            p = p * e
        key = frozenset(q.key() for q in powers)
        rep = min(powers[:-1] or powers, key=lambda m: m.key())
        if key not in subgroups or rep.key() < subgroups[key].key():
            subgroups[key] = rep
    return [subgroups[k] for k in sorted(subgroups, key=lambda fs: min(fs))]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


# -- the averaging kernel ---------------------------------------------------------


def _averaging_constraints(generators: list[MonomialMatrix], n: int) -> list[int]:
    """One GF(2) row per orbit of each generator's cyclic group.

    avg over <g> fixes a sign diagonal to +I exactly when the bit sum over
    every <g>-orbit of coordinates vanishes mod 2; for odd generator order a
    fixed point forces its bit to zero, which the orbit-sum row encodes too.
    """
    rows = []
    for g in generators:
        perm = g.perm
        order = 1
        composed = perm
        while composed != tuple(range(n)):
            composed = tuple(perm[i] for i in composed)
            order += 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            row = 0
            count = 0
            j = start
            while not seen[j]:
                seen[j] = True
                row |= 1 << j
                j = perm[j]
                count += 1
            multiplicity = order // count
            if multiplicity % 2 == 1:
                rows.append(row)
            # Even multiplicity contributes nothing mod 2.
    return rows


def j_plus(group: FiniteMatrixGroup, mode: str = "enumerate") -> SignVectorSpace:
    """Determinant-one part of the sign family of an abelian permutation group.

    `mode='rank'` computes only the GF(2) kernel basis; `mode='enumerate'`
    additionally materializes the members (small spaces only).
    """
    if mode not in ("enumerate", "rank"):
        raise ValueError(f"unknown mode {mode!r}")
    n = group.n
    if n % 2 == 0 or n == 1:
        raise EvenN("the sign family is defined for odd dimension n > 1")
    monos = group.monomial_elements()
    if any(not m.is_permutation for m in monos):
        raise NotPermutationGroup("the family requires a permutation group (all weights 1)")
    gens = prime_order_generators(group)
    rows = _averaging_constraints(gens, n)
    basis = gf2.kernel_basis(rows, n)
    space = SignVectorSpace(n, basis)
    if mode == "enumerate":
        space.members()  # materializes eagerly; raises on absurd sizes
    return space


def j_family(group: FiniteMatrixGroup, mode: str = "rank") -> SignVectorSpace:
    """Both determinant signs: the det-1 kernel together with its -I coset."""
    plus = j_plus(group, mode=mode)
    return SignVectorSpace(plus.n, plus.basis, with_negation=True)


def cyclic_group(n: int, cap: int = 10_000_000) -> FiniteMatrixGroup:
    """The cyclic permutation matrix group generated by the n-cycle."""
    return FiniteMatrixGroup.close([cycle_matrix(n)], cap=max(cap, n + 1))


def j_cardinality(n: int) -> int:
    """|J_n^+| computed by GF(2) rank, cross-checked against 2^phi(n)."""
    if n % 2 == 0 or n <= 1:
        raise EvenN("the cardinality formula requires odd n > 1")
    space = j_plus(cyclic_group(n), mode="rank")
    by_rank = 1 << space.rank
    by_formula = 1 << euler_phi(n)
    if by_rank != by_formula:
        raise SelfCheckFailed(
            f"rank computation gives {by_rank} but the totient formula gives {by_formula}"
        )
    return by_rank


# -- membership and the validated group build ---------------------------------------


def rotate_bits(bits: int, n: int) -> int:
    """Conjugation of a sign diagonal by the n-cycle, as a bit rotation."""
    return (bits >> 1) | ((bits & 1) << (n - 1))


def in_j_family(n: int, bits: int, plus_basis: list[int]) -> bool:
    """Membership of a sign vector in the full family (either determinant)."""
    all_ones = (1 << n) - 1
    parity = bin(bits).count("1") % 2
    if parity == 0:
        return gf2.in_span(bits, plus_basis)
    return gf2.in_span(bits ^ all_ones, plus_basis)


def stable_sign_span(n: int, generators_bits: list[int]) -> SignVectorSpace:
    """GF(2) span of the given sign vectors closed under cycle rotation."""
    rows = []
    for bits in generators_bits:
        cur = bits
        for _ in range(n):
            rows.append(cur)
            cur = rotate_bits(cur, n)
    return SignVectorSpace(n, gf2.rref(rows, n))


def build_main_group(n: int, d_generators, cap: int = 1_000_000) -> FiniteMatrixGroup:
    """Closure of the n-cycle with a validated sign-diagonal subgroup.

    The given sign diagonals are checked for family membership, closed under
    the cycle action and GF(2) span, and must be nonscalar; the result is the
    group of order n * |span|.
    """
    if n % 2 == 0 or n == 1:
        raise EvenN("the normal form requires odd n >= 3")
    cyc = cycle_matrix(n)
    k_group = cyclic_group(n)
    plus_basis = list(j_plus(k_group, mode="rank").basis)
    bits_list = []
    for d in d_generators:
        bits = d.bits if isinstance(d, DiagonalSign) else int(d)
        if not in_j_family(n, bits, plus_basis):
            witness_gen, witness_avg = _membership_witness(n, bits, k_group)
            raise NotInJn(
                f"sign vector 0b{bits:0{n}b} violates the averaging condition",
                generator=witness_gen,
                average=witness_avg,
            )
        bits_list.append(bits)
    span = stable_sign_span(n, bits_list)
    if span.is_scalar:
        raise ScalarD("the sign-diagonal subgroup is scalar; a nonscalar subgroup is required")
    diag_gens = [DiagonalSign(n, b).to_monomial() for b in span.basis]
    group = FiniteMatrixGroup.close([cyc] + diag_gens, cap=cap)
    expected = n * span.order
    if group.order != expected:
        raise SelfCheckFailed(
            f"closure has order {group.order}, expected {expected} from the span"
        )
    return group


def _membership_witness(n: int, bits: int, k_group: FiniteMatrixGroup):
    """Find a prime-order generator whose average differs from det * I."""
    d = DiagonalSign(n, bits).to_monomial()
    det = d.determinant()
    for g in prime_order_generators(k_group):
        a = avg(d, g)
        expected = MonomialMatrix.diagonal([det] * n)
        if a != expected:
            return g, a
    return None, None
