"""Finite matrix group closure and group-level primitives.

Groups are built by breadth-first closure over products of the generators,
with canonical element hashing.  The enumeration order is deterministic
(queue order, generators applied in index order), which keeps witnesses and
certificates reproducible.  Groups are immutable once closed.
"""

from __future__ import annotations

from .cyclotomic import Cyclotomic
from .errors import CapExceeded, NotMonomial
from .matrices import DenseMatrix, MonomialMatrix

DEFAULT_CAP = 1_000_000


class FiniteMatrixGroup:
    """A fully enumerated finite group of invertible matrices."""

    __slots__ = ("n", "generators", "elements", "_index", "cap", "_conductor")

    def __init__(self, n, generators, elements, cap):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "elements", tuple(elements))
        object.__setattr__(self, "_index", {e.key(): i for i, e in enumerate(elements)})
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "_conductor", None)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteMatrixGroup values are immutable")

    # -- construction ---------------------------------------------------

    @staticmethod
    def close(generators, cap: int = DEFAULT_CAP) -> "FiniteMatrixGroup":
        """Breadth-first product closure of the generators."""
        generators = list(generators)
        if not generators:
            raise ValueError("need at least one generator")
        n = generators[0].n
        if any(g.n != n for g in generators):
            raise ValueError("generators must share the dimension")
        if any(isinstance(g, DenseMatrix) for g in generators):
            generators = [g.to_dense() if isinstance(g, MonomialMatrix) else g for g in generators]
            identity = DenseMatrix.identity(n)
        else:
            identity = MonomialMatrix.identity(n)
        seen = {identity.key(): 0}
        elements = [identity]
        queue = [identity]
        head = 0
        while head < len(queue):
            current = queue[head]
            head += 1
            for gen in generators:
                nxt = current * gen
                key = nxt.key()
                if key not in seen:
                    if len(elements) >= cap:
                        raise CapExceeded(f"group closure exceeded cap {cap}")
                    seen[key] = len(elements)
                    elements.append(nxt)
                    queue.append(nxt)
        return FiniteMatrixGroup(n, generators, elements, cap)

    @staticmethod
    def from_elements(elements, generators=None, cap: int = DEFAULT_CAP) -> "FiniteMatrixGroup":
        """Wrap an already-closed element list (identity must be present)."""
        elements = list(elements)
        if not elements:
            raise ValueError("empty element list")
        n = elements[0].n
        return FiniteMatrixGroup(n, generators or elements, elements, cap)

    # -- basic views -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, matrix) -> bool:
        return matrix.key() in self._index

    def index_of(self, matrix) -> int:
        return self._index[matrix.key()]

    @property
    def identity(self):
        if isinstance(self.elements[0], MonomialMatrix):
            return MonomialMatrix.identity(self.n)
        return DenseMatrix.identity(self.n)

    @property
    def is_monomial(self) -> bool:
        if isinstance(self.elements[0], MonomialMatrix):
            return True
        return all(e.as_monomial() is not None for e in self.elements)

    def monomial_elements(self) -> list[MonomialMatrix]:
        """Elements as monomial matrices, preserving enumeration order."""
        out = []
        for e in self.elements:
            if isinstance(e, MonomialMatrix):
                out.append(e)
            else:
                mono = e.as_monomial()
                if mono is None:
                    raise NotMonomial("group contains a non-monomial element")
                out.append(mono)
        return out

    def conductor(self) -> int:
        c = self._conductor
        if c is None:
            c = 1
            for g in self.generators:
                k = g.conductor()
                c = c * k // _gcd(c, k)
            object.__setattr__(self, "_conductor", c)
        return c

    def is_abelian(self) -> bool:
        gens = self.generators
        for i, a in enumerate(gens):
            for b in gens[i + 1 :]:
                if a * b != b * a:
                    return False
        return True

    def element_order(self, matrix) -> int:
        if isinstance(matrix, MonomialMatrix):
            return matrix.order(cap=self.order)
        power = matrix
        for k in range(1, self.order + 1):
            if power.is_identity:
                return k
            power = power * matrix
        raise ValueError("element order exceeds group order; input not in group?")

    def conjugated(self, s, s_inv) -> "FiniteMatrixGroup":
        """Elementwise conjugate g -> s_inv * g * s, preserving order."""
        elements = [s_inv * g * s for g in self.elements]
        generators = [s_inv * g * s for g in self.generators]
        monos = [e.as_monomial() if isinstance(e, DenseMatrix) else e for e in elements]
        if all(m is not None for m in monos):
            elements = monos
            gen_monos = [
                g.as_monomial() if isinstance(g, DenseMatrix) else g for g in generators
            ]
            generators = [m if m is not None else g for m, g in zip(gen_monos, generators)]
        return FiniteMatrixGroup(self.n, generators, elements, self.cap)

    def element_keys(self) -> frozenset:
        return frozenset(self._index)

    # -- subgroup extraction ---------------------------------------------------

    def diagonal_subgroup(self) -> "FiniteMatrixGroup":
        """Subgroup of all diagonal members."""
        diag = [e for e in self.elements if e.is_diagonal]
        return FiniteMatrixGroup.from_elements(diag, cap=self.cap)

    def commutator_subgroup(self) -> "FiniteMatrixGroup":
        """Closure of all group commutators a b a^-1 b^-1 over element pairs."""
        elems = self.elements
        inverses = [e.inverse() for e in elems]
        seen = set()
        gens = []
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                if i == j:
                    continue
                c = a * b * inverses[i] * inverses[j]
                key = c.key()
                if key not in seen:
                    seen.add(key)
                    gens.append(c)
        return FiniteMatrixGroup.close(gens or [self.identity], cap=self.cap)

    def pattern_group(self) -> "FiniteMatrixGroup":
        """Group of patterns of a monomial group."""
        monos = self.monomial_elements()
        seen = set()
        patterns = []
        for m in monos:
            p = m.pattern()
            if p.key() not in seen:
                seen.add(p.key())
                patterns.append(p)
        gens = []
        gen_seen = set()
        for g in self.generators:
            gm = g if isinstance(g, MonomialMatrix) else g.require_monomial()
            p = gm.pattern()
            if p.key() not in gen_seen:
                gen_seen.add(p.key())
                gens.append(p)
        return FiniteMatrixGroup.from_elements(patterns, generators=gens, cap=self.cap)

    def involution_set(self) -> list:
        """All elements squaring exactly to the identity."""
        return [e for e in self.elements if (e * e).is_identity]

    # -- predicates --------------------------------------------------------------

    def is_indecomposable(self) -> bool:
        """True when the pattern action on coordinates has a single orbit."""
        monos = self.monomial_elements()
        n = self.n
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in monos:
            for i, j in enumerate(m.perm):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        return len({find(i) for i in range(n)}) == 1

    def is_irreducible(self) -> bool:
        """Burnside span criterion: the elements span all n x n matrices."""
        return self.burnside_rank() == self.n * self.n

    def burnside_rank(self) -> int:
        """Rank of the linear span of the elements, as n^2-vectors."""
        n2 = self.n * self.n
        zero = Cyclotomic.zero()
        pivots: list[tuple[int, list[Cyclotomic]]] = []
        rank = 0
        for e in self.elements:
            dense = e.to_dense() if isinstance(e, MonomialMatrix) else e
            vec = [dense.rows[i][j] for i in range(self.n) for j in range(self.n)]
            for col, row in pivots:
                c = vec[col]
                if not c.is_zero:
                    vec = [a - c * b for a, b in zip(vec, row)]
            lead = next((i for i, c in enumerate(vec) if not c.is_zero), None)
            if lead is not None:
                inv = vec[lead].inverse()
                row = [inv * c if not c.is_zero else zero for c in vec]
                pivots.append((lead, row))
                pivots.sort(key=lambda t: t[0])
                rank += 1
                if rank == n2:
                    return rank
        return rank

    def has_no_diagonal_commutation(self):
        """(True, None) or (False, (non-diagonal g, nonscalar diagonal d))."""
        monos = self.monomial_elements()
        non_diagonal = [m for m in monos if not m.is_diagonal]
        nonscalar_diag = [m for m in monos if m.is_diagonal and not m.is_scalar]
        for g in non_diagonal:
            for d in nonscalar_diag:
                if g * d == d * g:
                    return False, (g, d)
        return True, None


# -- group actions -------------------------------------------------------------


def conj_action(d, g):
    """Right conjugation action g^-1 d g."""
    return g.inverse() * d * g


def avg(d: MonomialMatrix, over) -> MonomialMatrix:
    """Product of the conjugates of a diagonal d over a subgroup or element.

    For an element g of finite order m this is d * d^g * ... * d^(g^(m-1)).
    The product is order-independent because diagonal matrices commute.
    """
    if not d.is_diagonal:
        raise ValueError("avg is defined for diagonal matrices")
    if isinstance(over, FiniteMatrixGroup):
        members = over.monomial_elements()
    else:
        members = []
        power = MonomialMatrix.identity(over.n)
        for _ in range(DEFAULT_CAP):
            members.append(power)
            power = power * over
            if power.is_identity:
                break
        else:
            raise CapExceeded("element order exceeds the averaging cap")
    acc = MonomialMatrix.identity(d.n)
    for k in members:
        acc = acc * conj_action(d, k)
    return acc


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
