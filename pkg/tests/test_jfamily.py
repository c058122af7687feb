"""Sign-diagonal families: kernels, cardinalities, and the validated build."""

import pytest

from monospec import (
    DiagonalSign,
    EvenN,
    FiniteMatrixGroup,
    MonomialMatrix,
    NotInJn,
    ScalarD,
    SignVectorSpace,
    avg,
    build_main_group,
    cycle_matrix,
    cyclic_group,
    euler_phi,
    j_cardinality,
    j_family,
    j_plus,
    prime_order_generators,
    tensor,
)
from monospec.jfamily import in_j_family, rotate_bits, stable_sign_span


def tensor_cycles(*orders):
    mats = []
    for j in range(len(orders)):
        parts = [
            cycle_matrix(o) if i == j else MonomialMatrix.identity(o)
            for i, o in enumerate(orders)
        ]
        chain = parts[0]
        for p in parts[1:]:
            chain = tensor(chain, p)
        mats.append(chain)
    return FiniteMatrixGroup.close(mats)


def brute_force_family(group):
    """Direct check of the averaging definition over all nontrivial elements."""
    n = group.n
    members = []
    for bits in range(1 << n):
        d = DiagonalSign(n, bits).to_monomial()
        det = d.determinant()
        target = MonomialMatrix.diagonal([det] * n)
        if all(
            avg(d, g) == target
            for g in group.monomial_elements()
            if not g.is_identity
        ):
            members.append(bits)
    return set(members)


def test_prime_order_generators():
    gens9 = prime_order_generators(cyclic_group(9))
    assert len(gens9) == 1
    assert gens9[0].order() == 3
    assert gens9[0] in (cycle_matrix(9) ** 3, cycle_matrix(9) ** 6)

    gens15 = prime_order_generators(cyclic_group(15))
    assert sorted(g.order() for g in gens15) == [3, 5]

    gens33 = prime_order_generators(tensor_cycles(3, 3))
    assert len(gens33) == 4
    assert all(g.order() == 3 for g in gens33)


def test_j_plus_c3():
    space = j_plus(cyclic_group(3))
    members = {m.bits for m in space.members()}
    assert members == {0b000, 0b011, 0b101, 0b110}
    assert space.order == 4
    assert all(DiagonalSign(3, b).determinant() == 1 for b in members)


def test_j_plus_c9():
    space = j_plus(cyclic_group(9))
    assert space.order == 64
    # Structure: first two length-3 blocks free, third the product of them.
    for member in space.members():
        v = member.vector()
        for i in range(3):
            assert (v[i] + v[3 + i] + v[6 + i]) % 2 == 0


def test_noncyclic_collapse():
    assert j_plus(tensor_cycles(3, 3)).order == 1
    assert j_plus(tensor_cycles(3, 3, 5), mode="rank").order == 1


def test_family_matches_brute_force_definition():
    for group in (cyclic_group(3), cyclic_group(5), cyclic_group(9), tensor_cycles(3, 3)):
        space = j_family(group)
        brute = brute_force_family(group)
        assert {m.bits for m in space.members()} == brute


def test_j_family_union_structure():
    for n in (3, 5, 7, 9, 15):
        plus = j_plus(cyclic_group(n), mode="rank")
        full = j_family(cyclic_group(n), mode="rank")
        assert full.order == 2 * plus.order
        assert full.contains_minus_identity
        # Disjoint union: -I is not in the determinant-one part for odd n.
        assert ((1 << n) - 1) not in plus
        assert not plus.is_scalar  # nonscalar for every odd n here


def test_k_stability_and_semidirect_closure():
    n = 9
    plus = j_plus(cyclic_group(n), mode="rank")
    basis = list(plus.basis)
    for b in list(plus.members())[:16]:
        rotated = rotate_bits(b.bits, n)
        assert in_j_family(n, rotated, basis)
    # (G J)(H L) stays in the product set: principle checked via group closure.
    g = build_main_group(3, [DiagonalSign(3, 0b011), DiagonalSign(3, 0b111)])
    assert g.order == 24


def test_membership_reduction_equals_full_definition():
    # Prime-order generator conditions against averaging over every element.
    for n in (3, 5, 9):
        group = cyclic_group(n)
        basis = list(j_plus(group, mode="rank").basis)
        brute = brute_force_family(group)
        for bits in range(1 << n):
            assert in_j_family(n, bits, basis) == (bits in brute)


def test_membership_reduction_n15_sampled():
    # Same comparison at n = 15 with a bit-level full-definition oracle.
    import random

    n = 15
    group = cyclic_group(n)
    basis = list(j_plus(group, mode="rank").basis)
    perms = [e.perm for e in group.monomial_elements() if not e.is_identity]
    identity = tuple(range(n))

    def avg_bits(bits: int, perm) -> int:
        order = 1
        composed = perm
        while composed != identity:
            composed = tuple(perm[i] for i in composed)
            order += 1
        out = 0
        for i in range(n):
            s = 0
            j = i
            for _ in range(order):
                s ^= (bits >> j) & 1
                j = perm[j]
            out |= s << i
        return out

    all_ones = (1 << n) - 1
    rng = random.Random(9155)
    samples = list(range(64)) + [rng.randrange(1 << n) for _ in range(400)]
    for bits in samples:
        target = all_ones if bin(bits).count("1") % 2 else 0
        full_definition = all(avg_bits(bits, p) == target for p in perms)
        assert in_j_family(n, bits, basis) == full_definition


def test_cardinality_formula():
    for n in (3, 5, 7, 9, 15, 21, 45):
        assert j_cardinality(n) == 2 ** euler_phi(n)
    with pytest.raises(EvenN):
        j_cardinality(4)
    with pytest.raises(EvenN):
        j_cardinality(1)


def test_block_decomposition_cross_check_n15():
    # For the tensor group C3 (x) C5 the determinant-one family splits:
    # membership equals "the three length-5 blocks multiply to the identity
    # and each block lies in the dimension-5 determinant-one family".
    from monospec.gf2 import in_span, span_members

    basis5 = list(j_plus(cyclic_group(5), mode="rank").basis)
    tensor_basis = list(j_plus(tensor_cycles(3, 5), mode="rank").basis)
    members = set(span_members(tensor_basis))
    assert len(members) == 2 ** euler_phi(15)
    for bits in members:
        blocks = [(bits >> (5 * i)) & 0b11111 for i in range(3)]
        assert blocks[0] ^ blocks[1] ^ blocks[2] == 0
        for b in blocks:
            assert in_span(b, basis5)
    # Brute-force converse: every split-form vector is a member.
    plus5 = span_members(basis5)
    for b0 in plus5:
        for b1 in plus5:
            bits = b0 | (b1 << 5) | ((b0 ^ b1) << 10)
            assert bits in members


def test_build_main_group():
    g = build_main_group(3, [DiagonalSign(3, 0b011)])
    assert g.order == 12
    assert g.is_irreducible()
    assert g.diagonal_subgroup().order == 4

    g_full = build_main_group(3, [DiagonalSign(3, 0b100)])
    assert g_full.order == 24
    assert g_full.diagonal_subgroup().order == 8

    with pytest.raises(ScalarD):
        build_main_group(3, [])
    with pytest.raises(EvenN):
        build_main_group(2, [DiagonalSign(2, 0b01)])
    with pytest.raises(NotInJn):
        build_main_group(9, [DiagonalSign(9, 0b000000001)])


def test_membership_error_carries_witness():
    try:
        build_main_group(9, [DiagonalSign(9, 0b000000001)])
    except NotInJn as e:
        assert e.generator is not None
        assert e.average is not None
    else:
        raise AssertionError("expected NotInJn")


def test_stable_span_rotation_closure():
    span = stable_sign_span(5, [0b00011])
    for b in span.basis:
        assert rotate_bits(b, 5) in span


def test_sign_space_members_and_scalar_flag():
    space = SignVectorSpace(3, [0b111])
    assert space.is_scalar
    assert space.contains_minus_identity
    assert not SignVectorSpace(3, [0b011]).contains_minus_identity
