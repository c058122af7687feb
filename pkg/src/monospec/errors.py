"""Exception hierarchy shared across the package."""

from __future__ import annotations


class MonospecError(Exception):
    """Base class for all library errors."""


class ConductorMismatch(MonospecError):
    """Scalars live in incompatible cyclotomic fields and cannot be coerced."""


class CapExceeded(MonospecError):
    """A closure or scan grew past the configured resource cap."""


class NotMonomial(MonospecError):
    """Operation requires monomial matrices or a monomial group."""


class NotAbelian(MonospecError):
    """Operation requires a commutative group."""


class NotPermutationGroup(MonospecError):
    """Operation requires a permutation group (all weights equal to 1)."""


class NotInJn(MonospecError):
    """A sign diagonal violates the averaging condition.

    Carries the violating group element and the offending average.
    """

    def __init__(self, message, generator=None, average=None):
        super().__init__(message)
        self.generator = generator
        self.average = average


class ScalarD(MonospecError):
    """The requested sign-diagonal subgroup is scalar (contained in {+I, -I})."""


class EvenN(MonospecError):
    """Dimension must be odd and greater than 1."""


class ZeroPolynomial(MonospecError):
    """Root counting is undefined for the zero polynomial."""


class NotCommuting(MonospecError):
    """A pair of matrices fails a required commutation property."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInvolution(MonospecError):
    """A matrix expected to square to the identity does not."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ScalarJ(MonospecError):
    """The diagonal involution subgroup is scalar; no block refinement exists."""


class NotBlockMonomial(MonospecError):
    """An element does not map each summand of the decomposition into a single summand."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BlockSetMismatch(MonospecError):
    """Extracted block sets disagree after normalization; input violated preconditions."""


class NotIndecomposable(MonospecError):
    """The pattern action has more than one orbit."""


class NontrivialDiagonal(MonospecError):
    """The group contains a diagonal element other than the identity."""


class NoComplement(MonospecError):
    """Odd-part extraction failed to produce a complement of the involution subgroup."""


class EvenQuotient(MonospecError):
    """The quotient by the involution subgroup has even order."""


class NotDivisible(MonospecError):
    """The scalar group Y is not n-divisible."""


class SplitImpossible(MonospecError):
    """No diagonal similarity can achieve the requested splitting.

    Carries a similarity-invariant certificate describing the obstruction.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class SelfCheckFailed(MonospecError):
    """An internal cross-check failed; this indicates an implementation bug."""
