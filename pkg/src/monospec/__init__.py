"""Exact arithmetic for finite monomial matrix groups.

Constructs sign-diagonal families over cyclic permutation groups, decides
whether all ring commutators of a finite matrix group have real spectra, and
recovers the cycle-times-signs normal form with an explicit exact similarity
(or a machine-checkable counterexample certificate).
"""

from .cyclotomic import Cyclotomic, euler_phi
from .errors import (
    BlockSetMismatch,
    CapExceeded,
    ConductorMismatch,
    EvenN,
    EvenQuotient,
    MonospecError,
    NoComplement,
    NontrivialDiagonal,
    NotAbelian,
    NotBlockMonomial,
    NotCommuting,
    NotDivisible,
    NotInJn,
    NotIndecomposable,
    NotInvolution,
    NotMonomial,
    NotPermutationGroup,
    ScalarD,
    ScalarJ,
    SelfCheckFailed,
    SplitImpossible,
    ZeroPolynomial,
)
from .groups import FiniteMatrixGroup, avg, conj_action
from .jfamily import (
    SignVectorSpace,
    build_main_group,
    cyclic_group,
    j_cardinality,
    j_family,
    j_plus,
    prime_order_generators,
)
from .matrices import DenseMatrix, DiagonalSign, MonomialMatrix, cycle_matrix, pattern, tensor
from .polynomials import RationalPoly, sturm_real_root_count
from .spectra import (
    CommutatorScanResult,
    SpectrumVerdict,
    all_commutators_real,
    char_poly,
    char_poly_rational,
    has_all_real_roots,
    has_real_spectrum,
    is_involution,
    is_nilpotent,
    ring_commutator,
)
from .structure import (
    BlockDecomposition,
    CommutatorInvolutionReport,
    Similarity,
    SplitReport,
    StructureReport,
    VerifyReport,
    block_normalize,
    check_commutator_involutions,
    check_noncentral_involution,
    clifford_decompose,
    cyclic_decomposition,
    diagonalize_involutions,
    find_odd_complement,
    monomialize_abelian,
    recover_structure,
    split_scalars,
    verify_theorem,
)

__all__ = [
    "Cyclotomic",
    "euler_phi",
    "MonomialMatrix",
    "DenseMatrix",
    "DiagonalSign",
    "cycle_matrix",
    "pattern",
    "tensor",
    "FiniteMatrixGroup",
    "avg",
    "conj_action",
    "SignVectorSpace",
    "prime_order_generators",
    "j_plus",
    "j_family",
    "j_cardinality",
    "build_main_group",
    "cyclic_group",
    "RationalPoly",
    "sturm_real_root_count",
    "char_poly",
    "char_poly_rational",
    "has_all_real_roots",
    "has_real_spectrum",
    "is_nilpotent",
    "is_involution",
    "ring_commutator",
    "all_commutators_real",
    "SpectrumVerdict",
    "CommutatorScanResult",
    "Similarity",
    "BlockDecomposition",
    "StructureReport",
    "VerifyReport",
    "SplitReport",
    "CommutatorInvolutionReport",
    "diagonalize_involutions",
    "clifford_decompose",
    "block_normalize",
    "monomialize_abelian",
    "find_odd_complement",
    "recover_structure",
    "verify_theorem",
    "check_commutator_involutions",
    "check_noncentral_involution",
    "split_scalars",
    "cyclic_decomposition",
    "MonospecError",
    "ConductorMismatch",
    "CapExceeded",
    "NotMonomial",
    "NotAbelian",
    "NotPermutationGroup",
    "NotInJn",
    "ScalarD",
    "EvenN",
    "ZeroPolynomial",
    "NotCommuting",
    "NotInvolution",
    "ScalarJ",
    "NotBlockMonomial",
    "BlockSetMismatch",
    "NotIndecomposable",
    "NontrivialDiagonal",
    "NoComplement",
    "EvenQuotient",
    "NotDivisible",
    "SplitImpossible",
    "SelfCheckFailed",
]
