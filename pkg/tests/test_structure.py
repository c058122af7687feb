"""Constructive similarities and the recovery pipeline."""

import random

import pytest

from helpers import random_invertible_dense
from monospec import (
    BlockSetMismatch,
    Cyclotomic,
    DenseMatrix,
    DiagonalSign,
    FiniteMatrixGroup,
    MonomialMatrix,
    NotCommuting,
    NotIndecomposable,
    NotInvolution,
    NontrivialDiagonal,
    ScalarJ,
    Similarity,
    build_main_group,
    check_commutator_involutions,
    check_noncentral_involution,
    clifford_decompose,
    block_normalize,
    cycle_matrix,
    cyclic_decomposition,
    cyclic_group,
    diagonalize_involutions,
    find_odd_complement,
    monomialize_abelian,
    recover_structure,
    tensor,
    verify_theorem,
)
from monospec.errors import EvenN, EvenQuotient


def quaternion_group(dense=False):
    i4 = Cyclotomic.root_of_unity(4)
    gens = [MonomialMatrix.diagonal([i4, -i4]), MonomialMatrix([1, 0], [1, -1])]
    if dense:
        gens = [g.to_dense() for g in gens]
    return FiniteMatrixGroup.close(gens)


def random_monomial_similarity(rng, n, conductor=8):
    perm = list(range(n))
    rng.shuffle(perm)
    weights = [Cyclotomic.root_of_unity(conductor, rng.randrange(conductor)) for _ in range(n)]
    return MonomialMatrix(perm, weights)


def random_d_bits(rng, n):
    from monospec import j_plus

    basis = list(j_plus(cyclic_group(n), mode="rank").basis)
    pick = 0
    while pick == 0:
        for b in basis:
            if rng.random() < 0.5:
                pick ^= b
    return pick


# -- similarity type ------------------------------------------------------------


def test_similarity_composition_and_kinds():
    s = Similarity(cycle_matrix(3))
    assert s.kind == "permutation"
    d = Similarity(MonomialMatrix.diagonal([1, -1, 1]))
    assert d.kind == "diagonal"
    combined = s.then(d)
    m = MonomialMatrix.diagonal([1, -1, -1]) * cycle_matrix(3)
    direct = d.conjugate(s.conjugate(m))
    assert combined.conjugate(m) == direct
    assert (combined.matrix * combined.inverse).is_identity


def test_similarity_rejects_bad_inverse():
    with pytest.raises(ValueError):
        Similarity(cycle_matrix(3).to_dense(), inverse=cycle_matrix(3).to_dense())


# -- involution diagonalization ----------------------------------------------------


def test_diagonalize_involutions_trivial():
    ident = MonomialMatrix.identity(2).to_dense()
    sim = diagonalize_involutions([ident, ident.scale(-1)])
    assert sim.is_identity or sim.conjugate(ident).is_diagonal


def test_diagonalize_involutions_round_trip():
    rng = random.Random(8)
    for _ in range(5):
        s = random_invertible_dense(rng, 3)
        s_inv = s.inverse()
        j1 = s_inv * MonomialMatrix.diagonal([1, -1, 1]).to_dense() * s
        j2 = s_inv * MonomialMatrix.diagonal([1, 1, -1]).to_dense() * s
        sim = diagonalize_involutions([j1, j2])
        for j in (j1, j2):
            image = sim.conjugate(j)
            assert image.is_diagonal
            assert all(e == 1 or e == -1 for e in image.diagonal_entries())


def test_diagonalize_involutions_noncommuting():
    with pytest.raises(NotCommuting) as info:
        diagonalize_involutions(
            [MonomialMatrix.diagonal([1, -1]).to_dense(), cycle_matrix(2).to_dense()]
        )
    assert info.value.witness is not None


def test_diagonalize_involutions_rejects_non_involution():
    with pytest.raises(NotInvolution):
        diagonalize_involutions([cycle_matrix(3).to_dense()])


# -- Clifford decomposition ---------------------------------------------------------


def test_clifford_singletons():
    g = build_main_group(3, [DiagonalSign(3, 0b100)])
    dec = clifford_decompose(g, g.diagonal_subgroup())
    assert dec.classes == ((0,), (1,), (2,))
    assert dec.r == 3 and dec.block_size == 1


def test_clifford_blocks_of_size_two():
    c3i2 = tensor(cycle_matrix(3), MonomialMatrix.identity(2))
    j1 = tensor(MonomialMatrix.diagonal([1, -1, -1]), MonomialMatrix.identity(2))
    j2 = tensor(MonomialMatrix.diagonal([-1, 1, -1]), MonomialMatrix.identity(2))
    g = FiniteMatrixGroup.close([c3i2, j1, j2])
    jsub = [e for e in g.elements if e.is_diagonal]
    dec = clifford_decompose(g, jsub)
    assert dec.classes == ((0, 1), (2, 3), (4, 5))


def test_clifford_scalar_j():
    g = build_main_group(3, [DiagonalSign(3, 0b100)])
    with pytest.raises(ScalarJ):
        clifford_decompose(
            g, [MonomialMatrix.identity(3), MonomialMatrix.diagonal([-1, -1, -1])]
        )


# -- block normalization ---------------------------------------------------------------


def test_block_normalize_singleton_blocks():
    g = build_main_group(3, [DiagonalSign(3, 0b100)])
    dec = clifford_decompose(g, g.diagonal_subgroup())
    sim, blocks = block_normalize(g, dec)
    assert blocks.n == 1
    values = sorted(str(e.to_dense().rows[0][0]) for e in blocks.elements)
    assert values == ["-1", "1"]


def test_block_normalize_round_trip_blocks_equal():
    # Blocks of size two: scramble with a block-respecting similarity and
    # verify one common block group is recovered.
    c3i2 = tensor(cycle_matrix(3), MonomialMatrix.identity(2))
    j1 = tensor(MonomialMatrix.diagonal([1, -1, -1]), MonomialMatrix.identity(2))
    j2 = tensor(MonomialMatrix.diagonal([-1, 1, -1]), MonomialMatrix.identity(2))
    c2block = tensor(MonomialMatrix.identity(3), cycle_matrix(2))
    g = FiniteMatrixGroup.close([c3i2, j1, j2, c2block])
    jsub = [e for e in g.elements if e.is_diagonal and not e.is_scalar]
    dec = clifford_decompose(g, jsub)
    sim, blocks = block_normalize(g, dec)
    assert blocks.n == 2
    normalized = sim.conjugate_group(g)
    # The extracted group is closed and contains the blocks of the identity.
    assert MonomialMatrix.identity(2).to_dense().key() in blocks.element_keys()


# -- abelian monomialization ------------------------------------------------------------


def test_cyclic_decomposition_orders():
    assert [o for _, o in cyclic_decomposition(cyclic_group(15))] == [15]
    z33 = FiniteMatrixGroup.close(
        [
            tensor(cycle_matrix(3), MonomialMatrix.identity(3)),
            tensor(MonomialMatrix.identity(3), cycle_matrix(3)),
        ]
    )
    assert [o for _, o in cyclic_decomposition(z33)] == [3, 3]


def test_monomialize_abelian_conjugated_cycle():
    rng = random.Random(19)
    z9 = Cyclotomic.root_of_unity(9)
    d = MonomialMatrix.diagonal([Cyclotomic.one(9), z9, z9 * z9])
    k = FiniteMatrixGroup.close([d * cycle_matrix(3) * d.inverse()])
    sim, orders = monomialize_abelian(k)
    assert orders == [3]
    conj = sim.conjugate_group(k)
    assert conj.element_keys() == cyclic_group(3).element_keys()


def test_monomialize_abelian_tensor_case():
    rng = random.Random(77)
    c35 = tensor(cycle_matrix(3), cycle_matrix(5))
    n = 15
    weights = [Cyclotomic.root_of_unity(8, rng.randrange(8)) for _ in range(n)]
    relabel = list(range(n))
    rng.shuffle(relabel)
    s = MonomialMatrix.diagonal(weights) * MonomialMatrix.from_permutation(relabel)
    k = FiniteMatrixGroup.close([s.inverse() * c35 * s])
    sim, orders = monomialize_abelian(k)
    assert orders == [15]
    assert sim.conjugate_group(k).element_keys() == cyclic_group(15).element_keys()


def test_monomialize_abelian_z3_squared():
    rng = random.Random(4)
    gens = [
        tensor(cycle_matrix(3), MonomialMatrix.identity(3)),
        tensor(MonomialMatrix.identity(3), cycle_matrix(3)),
    ]
    d = MonomialMatrix.diagonal(
        [Cyclotomic.root_of_unity(9, rng.randrange(9)) for _ in range(9)]
    )
    k = FiniteMatrixGroup.close([d.inverse() * g * d for g in gens])
    sim, orders = monomialize_abelian(k)
    assert orders == [3, 3]
    target = FiniteMatrixGroup.close(gens)
    assert sim.conjugate_group(k).element_keys() == target.element_keys()


def test_monomialize_abelian_rejects_decomposable():
    block = tensor(cycle_matrix(2), MonomialMatrix.identity(2))
    k = FiniteMatrixGroup.close([block])
    with pytest.raises(NotIndecomposable):
        monomialize_abelian(k)


def test_monomialize_abelian_rejects_nontrivial_diagonal():
    k = FiniteMatrixGroup.close([cycle_matrix(3), MonomialMatrix.diagonal([-1, -1, 1])])
    with pytest.raises((NontrivialDiagonal, Exception)):
        monomialize_abelian(k)


# -- odd complement ------------------------------------------------------------------


def test_find_odd_complement():
    g = build_main_group(3, [DiagonalSign(3, 0b100)])
    comp = find_odd_complement(g, g.diagonal_subgroup())
    assert comp.order == 3
    assert comp.element_keys() == cyclic_group(3).element_keys()


def test_find_odd_complement_from_twisted_generator():
    # det-one sign times cycle has odd order and generates the complement.
    jc = MonomialMatrix.diagonal([1, -1, -1]) * cycle_matrix(3)
    assert jc.order() == 3
    g = build_main_group(3, [DiagonalSign(3, 0b011)])
    comp = find_odd_complement(g, g.diagonal_subgroup())
    assert comp.order == 3


def test_find_odd_complement_trivial_quotient():
    signs = FiniteMatrixGroup.close(
        [MonomialMatrix.diagonal(s) for s in ([-1, 1, 1], [1, -1, 1], [1, 1, -1])]
    )
    comp = find_odd_complement(signs, signs)
    assert comp.order == 1


def test_find_odd_complement_even_quotient():
    g = FiniteMatrixGroup.close([cycle_matrix(2)])
    with pytest.raises(EvenQuotient):
        find_odd_complement(g, [MonomialMatrix.identity(2)])


# -- recovery pipeline ------------------------------------------------------------------


def test_recover_structure_monomial_similarity_cases():
    rng = random.Random(1234)
    for n in (3, 5):
        for _ in range(4):
            g = build_main_group(n, [DiagonalSign(n, random_d_bits(rng, n))])
            s = random_monomial_similarity(rng, n)
            gc = g.conjugated(s, s.inverse())
            report = recover_structure(gc)
            assert report.outcome == "theorem_form"
            assert report.n_odd == n
            assert report.d_space.order == g.diagonal_subgroup().order
            final = report.similarity.conjugate_group(gc)
            rebuilt = build_main_group(n, [DiagonalSign(n, b) for b in report.d_space.basis])
            assert final.element_keys() == rebuilt.element_keys()


def test_recover_structure_dense_similarity():
    rng = random.Random(97)
    g = build_main_group(3, [DiagonalSign(3, 0b100)])
    s = random_invertible_dense(rng, 3)
    gc = g.conjugated(s, s.inverse())
    report = recover_structure(gc)
    assert report.outcome == "theorem_form"
    assert report.d_space.order == 8


def test_recover_structure_n7_round_trip():
    rng = random.Random(71)
    g = build_main_group(7, [DiagonalSign(7, random_d_bits(rng, 7))])
    s = random_monomial_similarity(rng, 7)
    gc = g.conjugated(s, s.inverse())
    report = recover_structure(gc)
    assert report.outcome == "theorem_form"
    assert report.n_odd == 7
    assert report.d_space.order == g.diagonal_subgroup().order


def test_recover_structure_counterexample():
    report = recover_structure(quaternion_group())
    assert report.outcome == "counterexample"
    poly = [c.rational_value() for c in report.certificate["char_poly"]]
    assert poly == [4, 0, 1]
    a, b = report.certificate["witness"]
    from monospec import char_poly, ring_commutator

    assert [c.rational_value() for c in char_poly(ring_commutator(a, b))] == [4, 0, 1]


def test_recover_structure_not_irreducible():
    report = recover_structure(cyclic_group(3))
    assert report.outcome == "not_irreducible"
    assert report.certificate["span_rank"] == 3


def test_recover_structure_dimension_one():
    group = FiniteMatrixGroup.close([MonomialMatrix.identity(1)])
    assert recover_structure(group).outcome == "not_applicable"


def test_recover_structure_block_recursion_counterexample():
    # Two quaternion blocks tied together by a swap: involutions are diagonal
    # after refinement, the weight classes have size two, and the block
    # recursion re-checks spectra, surfacing the quaternion witness.
    i4 = Cyclotomic.root_of_unity(4)
    qi = MonomialMatrix.diagonal([i4, -i4, i4, -i4])
    qj = MonomialMatrix([1, 0, 3, 2], [1, -1, 1, -1])
    swap = MonomialMatrix.from_permutation([2, 3, 0, 1])
    jj = MonomialMatrix.diagonal([1, 1, -1, -1])
    g = FiniteMatrixGroup.close([qi, qj, swap, jj])
    report = recover_structure(g)
    assert report.outcome in ("counterexample", "not_irreducible")
    if report.outcome == "counterexample":
        assert report.certificate["witness"] is not None


def test_step_invariants_on_recovered_groups():
    rng = random.Random(555)
    n = 5
    g = build_main_group(n, [DiagonalSign(n, random_d_bits(rng, n))])
    s = random_monomial_similarity(rng, n)
    gc = g.conjugated(s, s.inverse())
    report = recover_structure(gc)
    final = report.similarity.conjugate_group(gc)
    # Every diagonal element squares to the identity.
    for d in final.diagonal_subgroup():
        assert (d * d).is_identity
    # No element has order four.
    for e in final:
        assert final.element_order(e) != 4
    # The recovered pattern group is cyclic of order n.
    pat = final.pattern_group()
    assert pat.order == n
    assert any(pat.element_order(p) == n for p in pat.elements)


# -- forward verification -----------------------------------------------------------------


def test_verify_theorem_n3_full_family():
    report = verify_theorem(3)
    assert report.verdict == "yes"
    assert report.group_order == 24
    assert report.pairs_checked == 276
    assert report.diagonal_pairs + report.nondiagonal_pairs == 276


def test_verify_theorem_rejects_even_n():
    with pytest.raises(EvenN):
        verify_theorem(2)


def test_verify_theorem_sampled():
    report = verify_theorem(9, sample=2000, seed=5)
    assert report.verdict == "yes"
    assert report.pairs_checked == 2000


# -- predicate reports ------------------------------------------------------------------


def test_check_commutator_involutions():
    g = build_main_group(3, [DiagonalSign(3, 0b100)])
    report = check_commutator_involutions(g)
    assert report.commutator_all_involutions
    assert report.scalar_signed_form
    assert report.pattern_commutative
    assert report.agreement

    q = quaternion_group()
    report = check_commutator_involutions(q)
    assert report.commutator_all_involutions
    assert report.scalar_signed_form and report.pattern_commutative

    abelian = FiniteMatrixGroup.close([MonomialMatrix.diagonal([1, -1]) * cycle_matrix(2)])
    report = check_commutator_involutions(abelian)
    assert report.commutator_all_involutions
    assert report.scalar_signed_form
    assert report.pattern_commutative


def test_check_noncentral_involution():
    g = build_main_group(3, [DiagonalSign(3, 0b100)])
    assert check_noncentral_involution(g)
    abelian = FiniteMatrixGroup.close([cycle_matrix(3)])
    assert not check_noncentral_involution(abelian)
    # Quaternions: only involution is central; consistent with their
    # non-real commutator spectra.
    assert not check_noncentral_involution(quaternion_group())
