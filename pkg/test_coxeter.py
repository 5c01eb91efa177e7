#!/usr/bin/env python3
"""
Tests for Coxeter types, relations and realizations
"""
import itertools
import random

import pytest

from src.coxeter import (
    CoxeterRealization,
    CoxeterType,
    artin_relations,
    coxeter_matrix,
    coxeter_relations,
    dump_realization,
    left_descents,
    meet_weak_left,
    realize,
    regular_images,
    right_descents,
    type_a_realization,
)
from src.errors import ClosureCapError, ClosureSizeError, OutOfScopeError, RelationViolationError, WordSyntaxError
from src.perm_core import from_cycles, inversions
from src.reprmap import build_an, build_bn, build_d4, build_i2_even, build_paper_map, source_realization


def test_parse_types():
    print("\n🧪 Testing Coxeter type parsing")
    print("=" * 50)

    assert CoxeterType.parse("A5") == CoxeterType(family="A", rank_or_k=5)
    assert CoxeterType.parse("b4").name == "B4"
    assert CoxeterType.parse("I2(7)").rank == 2
    assert CoxeterType.parse(" D4 ").rank == 4
    print("✅ A5, B4, I2(7), D4 parsed")

    with pytest.raises(OutOfScopeError, match="out of scope per Remark 4.1"):
        CoxeterType.parse("H4")
    for name in ["H3", "F4", "E6", "E7", "E8"]:
        with pytest.raises(OutOfScopeError):
            CoxeterType.parse(name)
    print("✅ Exceptional types refused")

    with pytest.raises(WordSyntaxError):
        CoxeterType.parse("X3")
    with pytest.raises(ValueError):
        CoxeterType.parse("D3")
    with pytest.raises(ValueError):
        CoxeterType.parse("I2(1)")


def test_known_orders():
    assert CoxeterType.parse("A4").order == 120
    assert CoxeterType.parse("B3").order == 48
    assert CoxeterType.parse("D4").order == 192
    assert CoxeterType.parse("I2(9)").order == 18


def test_coxeter_matrices():
    b3 = coxeter_matrix(CoxeterType.parse("B3"))
    assert b3.bond(1, 2) == 4
    assert b3.bond(2, 3) == 3
    assert b3.bond(1, 3) == 2

    d4 = coxeter_matrix(CoxeterType.parse("D4"))
    assert d4.bond(1, 2) == d4.bond(2, 3) == d4.bond(2, 4) == 3
    assert d4.bond(1, 3) == d4.bond(1, 4) == d4.bond(3, 4) == 2

    d5 = coxeter_matrix(CoxeterType.parse("D5"))
    assert d5.bond(4, 5) == 3
    assert d5.bond(3, 5) == 2

    i2 = coxeter_matrix(CoxeterType.parse("I2(6)"))
    assert i2.entries == ((1, 6), (6, 1))


def test_relations():
    print("\n🧪 Testing relation lists")
    print("=" * 50)

    rels = artin_relations(coxeter_matrix(CoxeterType.parse("I2(4)")))
    assert len(rels) == 1
    assert rels[0].lhs == (1, 2, 1, 2)
    assert rels[0].rhs == (2, 1, 2, 1)
    assert rels[0].label() == "s1s2s1s2 = s2s1s2s1"
    print(f"✅ I2(4): {rels[0].label()}")

    d4 = artin_relations(coxeter_matrix(CoxeterType.parse("D4")))
    assert len(d4) == 6
    assert "s2s3s2 = s3s2s3" in [r.label() for r in d4]
    assert "s1s3 = s3s1" in [r.label() for r in d4]

    full = coxeter_relations(coxeter_matrix(CoxeterType.parse("A3")))
    assert [r.kind for r in full[:3]] == ["order"] * 3
    assert full[0].rhs == ()
    assert len(full) == 3 + 3
    print("✅ Order relations precede braid relations")


@pytest.mark.parametrize("k", range(2, 13))
def test_i2_realization_orders(k):
    r = source_realization(build_paper_map(CoxeterType(family="I2", rank_or_k=k)))
    assert r.order == 2 * k
    assert r.length(r.w0) == k


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_bn_realization_orders(n):
    r = source_realization(build_bn(n))
    assert r.order == 2 ** n * [1, 1, 2, 6, 24, 120, 720][n]
    assert r.length(r.w0) == n * n
    assert r.is_central(r.w0)


def test_d4_and_an_realization_orders():
    d4 = source_realization(build_d4())
    assert d4.order == 192
    assert d4.length(d4.w0) == 12

    for n in range(1, 8):
        r = source_realization(build_an(n))
        assert r.order == CoxeterType(family="A", rank_or_k=n).order
        assert r.length(r.w0) == n * (n + 1) // 2


def test_realize_rejects_bad_images():
    i2_4 = CoxeterType.parse("I2(4)")
    # commuting involutions satisfy the I2(4) relations but only generate 4 elements
    with pytest.raises(ClosureSizeError):
        realize(i2_4, [from_cycles(4, [(1, 2)]), from_cycles(4, [(3, 4)])])

    with pytest.raises(RelationViolationError):
        realize(CoxeterType.parse("A2"), [from_cycles(4, [(1, 2)]), from_cycles(4, [(3, 4)])])

    with pytest.raises(ClosureCapError):
        realize(CoxeterType.parse("B4"), list(build_bn(4).e_images), cap=10)


def test_w0_properties():
    for name in ["B3", "I2(5)", "I2(6)", "A3", "D4"]:
        r = source_realization(build_paper_map(CoxeterType.parse(name)))
        assert r.multiply(r.w0, r.w0) == r.identity
        conjugates = {r.conjugate(r.generator(i), r.w0) for i in range(1, r.rank + 1)}
        assert conjugates == {r.generator(i) for i in range(1, r.rank + 1)}
        assert left_descents(r, r.w0) == frozenset(range(1, r.rank + 1))
        assert right_descents(r, r.w0) == frozenset(range(1, r.rank + 1))

    i2_6 = source_realization(build_i2_even(6))
    assert i2_6.is_central(i2_6.w0)
    i2_5 = source_realization(build_paper_map(CoxeterType.parse("I2(5)")))
    assert not i2_5.is_central(i2_5.w0)


def test_type_a_backend_matches_cayley():
    """Direct type A realization agrees with the Cayley table on S_4"""
    print("\n🧪 Testing type A backend against Cayley tables")
    print("=" * 50)

    cayley = source_realization(build_an(3))
    direct = type_a_realization(4)
    assert direct.order == cayley.order == 24
    assert direct.permutation(direct.w0) == cayley.permutation(cayley.w0)

    for u in cayley.elements():
        a = cayley.permutation(u).zero_based
        assert direct.length(a) == cayley.length(u) == inversions(cayley.permutation(u))
        assert direct.left_descents(a) == cayley.left_descents(u)
        assert direct.right_descents(a) == cayley.right_descents(u)
        assert direct.reduced_word(a) == cayley.reduced_word(u)
        for v in cayley.elements():
            b = cayley.permutation(v).zero_based
            assert direct.multiply(a, b) == cayley.permutation(cayley.multiply(u, v)).zero_based
    print("✅ Lengths, descents, reduced words and products agree")


def test_meet_properties():
    print("\n🧪 Testing left weak order meet")
    print("=" * 50)

    r = type_a_realization(4)
    elements = list(itertools.permutations(range(4)))
    for a in elements:
        assert meet_weak_left(r, a, a) == a
        assert meet_weak_left(r, a, r.identity) == r.identity
        assert meet_weak_left(r, a, r.w0) == a
        for b in elements:
            t = meet_weak_left(r, a, b)
            # the insertion-sort meet agrees with generic greedy stripping
            assert t == CoxeterRealization.meet_weak_left(r, a, b)
            assert t == meet_weak_left(r, b, a)
            for x in (a, b):
                rest = r.multiply(r.inverse(t), x)
                assert r.length(x) == r.length(t) + r.length(rest)
    print("✅ Idempotent, commutative, a prefix of both arguments")

    for a, b, c in itertools.product(elements[::3], repeat=3):
        left = meet_weak_left(r, meet_weak_left(r, a, b), c)
        right = meet_weak_left(r, a, meet_weak_left(r, b, c))
        assert left == right
    print("✅ Associative")


def test_type_a_fast_paths_match_generic():
    """Insertion-sort meet and the fused sweep step against the generic versions"""
    r4 = type_a_realization(4)
    for a, b in itertools.product(itertools.permutations(range(4)), repeat=2):
        assert r4.left_weight(a, b) == CoxeterRealization.left_weight(r4, a, b)

    r = type_a_realization(6)
    rng = random.Random(11)
    elements = list(itertools.permutations(range(6)))
    for _ in range(2000):
        a, b = rng.choice(elements), rng.choice(elements)
        assert meet_weak_left(r, a, b) == CoxeterRealization.meet_weak_left(r, a, b)
        step = r.left_weight(a, b)
        assert step == CoxeterRealization.left_weight(r, a, b)
        if step is None:
            assert r.left_descents(b) <= r.right_descents(a)
        else:
            # the product is unchanged and the new pair is left-weighted
            assert r.multiply(*step) == r.multiply(a, b)
            assert r.left_weight(*step) is None


def test_cayley_tables():
    print("\n🧪 Testing Cayley tables")
    print("=" * 50)

    for name in ["B3", "I2(6)", "D4"]:
        r = source_realization(build_paper_map(CoxeterType.parse(name)))
        assert r.right_table.shape == r.left_table.shape == (r.order, r.rank)
        for u in r.elements():
            assert r.lengths[u] == r.length(u) == len(r.reduced_word(u))
            for i in range(1, r.rank + 1):
                s = r.generator(i)
                assert r.right_table[u, i - 1] == r.rmul_gen(u, i) == r.multiply(u, s)
                assert r.left_table[u, i - 1] == r.lmul_gen(i, u) == r.multiply(s, u)
                assert r.left_descent_mask[u, i - 1] == (i in r.left_descents(u))
                assert r.right_descent_mask[u, i - 1] == (i in r.right_descents(u))
                assert (i in r.left_descents(u)) == (r.length(r.multiply(s, u)) < r.length(u))
                assert (i in r.right_descents(u)) == (r.length(r.multiply(u, s)) < r.length(u))
        assert r.lengths.max() == r.length(r.w0)
        print(f"✅ {name}: {r.order} x {r.rank} tables agree with multiply and descents")


def test_length_subadditive():
    for name in ["B2", "I2(5)", "A3"]:
        r = source_realization(build_paper_map(CoxeterType.parse(name)))
        for a in r.elements():
            for b in r.elements():
                assert r.length(r.multiply(a, b)) <= r.length(a) + r.length(b)
                assert r.length(r.inverse(a)) == r.length(a)


@pytest.mark.parametrize("k", [4, 6, 8])
def test_regular_images_reproduce_even_dihedral_embedding(k):
    rep = build_i2_even(k)
    images = regular_images(source_realization(rep))
    assert tuple(images) == rep.e_images


def test_dump_realization():
    r = source_realization(build_paper_map(CoxeterType.parse("I2(3)")))
    lines = dump_realization(r).splitlines()
    assert lines[0].startswith("# I2(3) in S_3: 6 elements")
    assert lines[1] == "id\tpermutation\tlength"
    assert lines[2] == "0\t[1,2,3]\t0"
    assert len(lines) == 2 + 6

    with pytest.raises(ValueError):
        dump_realization(type_a_realization(4))


if __name__ == "__main__":
    print("\n" + "=" * 60)
    print("🚀 BRAIDREP - COXETER TESTS")
    print("=" * 60)

    test_parse_types()
    test_known_orders()
    test_coxeter_matrices()
    test_relations()
    for k in range(2, 13):
        test_i2_realization_orders(k)
    for n in [2, 3, 4, 5, 6]:
        test_bn_realization_orders(n)
    test_d4_and_an_realization_orders()
    test_realize_rejects_bad_images()
    test_w0_properties()
    test_type_a_backend_matches_cayley()
    test_meet_properties()
    test_type_a_fast_paths_match_generic()
    test_cayley_tables()
    test_length_subadditive()
    for k in [4, 6, 8]:
        test_regular_images_reproduce_even_dihedral_embedding(k)
    test_dump_realization()

    print("\n" + "=" * 60)
    print("✅ ALL COXETER TESTS PASSED!")
    print("=" * 60)
