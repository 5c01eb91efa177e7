#!/usr/bin/env python3
"""
Acceptance runs at full size, with their time limits
Marked slow: `pytest -m "not slow"` skips them
"""
import random
import time

import pytest

from src.coxeter import CoxeterType
from src.garside import (
    exponent_sum,
    from_letters,
    identity_element,
    invert,
    is_normal_form,
    multiply,
    to_word,
    underlying_permutation,
)
from src.perm_core import Permutation, compose
from src.reprmap import build_bn, build_d4, build_paper_map, injectivity_scan_i2_2, target_realization, verify

pytestmark = pytest.mark.slow

SEED = 20240601


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


def random_word(rng: random.Random, strands: int, max_length: int):
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(rng.randint(0, max_length))]


def test_dihedral_verdicts_within_30s():
    print("\n🧪 verify I2(k), k = 2..12")
    print("=" * 50)

    total = 0.0
    for k in range(2, 13):
        report, elapsed = timed(verify, build_paper_map(CoxeterType(family="I2", rank_or_k=k)))
        total += elapsed
        assert report.is_homomorphism
        assert report.diagram.samples == 100
        assert report.diagram.failures == 0
        print(f"✅ I2({k}) in {elapsed:.2f}s")
    assert total < 30.0


def test_bn_verdicts_within_30s():
    total = 0.0
    for n in range(2, 7):
        report, elapsed = timed(verify, build_bn(n))
        total += elapsed
        assert report.is_homomorphism
        assert report.diagram.failures == 0
    assert total < 30.0


def test_d4_counterexample_within_5s():
    report, elapsed = timed(verify, build_d4())
    assert [w.relation for w in report.witnesses] == ["s2s3s2 = s3s2s3"]
    assert report.embedding_order == 192
    assert elapsed < 5.0


def test_i2_2_grid_within_10s():
    report, elapsed = timed(injectivity_scan_i2_2, 10)
    assert report.elements_examined == 441
    assert report.kernel_trivial and report.all_distinct
    assert elapsed < 10.0


def test_verify_twelve_strand_dihedral_within_5s():
    report, elapsed = timed(verify, build_paper_map(CoxeterType.parse("I2(6)")))
    assert report.is_homomorphism
    assert elapsed < 5.0


def test_thousand_random_words_keep_normal_form_invariants():
    print("\n🧪 1000 random words, length <= 200, up to 12 strands")
    print("=" * 50)

    rng = random.Random(SEED)
    for _ in range(1000):
        strands = rng.randint(2, 12)
        r = target_realization(strands)
        word = random_word(rng, strands, 200)
        a = from_letters(r, word)
        assert is_normal_form(a)
        assert underlying_permutation(a) == Permutation.from_zero_based(r.evaluate(word))
        assert exponent_sum(a) == sum(1 if x > 0 else -1 for x in word)
        assert from_letters(r, to_word(a).letters) == a
    print("✅ All normal forms valid and reproduced by their own spelling")


def test_group_laws_on_thousand_random_pairs():
    rng = random.Random(SEED + 1)
    for _ in range(1000):
        strands = rng.randint(2, 12)
        r = target_realization(strands)
        a = from_letters(r, random_word(rng, strands, 200))
        b = from_letters(r, random_word(rng, strands, 200))
        c = from_letters(r, random_word(rng, strands, 20))
        ab = multiply(a, b)
        assert multiply(ab, invert(b)) == a
        assert invert(ab) == multiply(invert(b), invert(a))
        assert multiply(ab, c) == multiply(a, multiply(b, c))
        assert multiply(a, invert(a)) == identity_element(r)
        assert underlying_permutation(ab) == compose(underlying_permutation(a), underlying_permutation(b))
        assert exponent_sum(ab) == exponent_sum(a) + exponent_sum(b)


if __name__ == "__main__":
    print("\n" + "=" * 60)
    print("🚀 BRAIDREP - ACCEPTANCE RUNS")
    print("=" * 60)

    test_dihedral_verdicts_within_30s()
    test_bn_verdicts_within_30s()
    test_d4_counterexample_within_5s()
    test_i2_2_grid_within_10s()
    test_verify_twelve_strand_dihedral_within_5s()
    test_thousand_random_words_keep_normal_form_invariants()
    test_group_laws_on_thousand_random_pairs()

    print("\n" + "=" * 60)
    print("✅ ALL ACCEPTANCE RUNS PASSED!")
    print("=" * 60)
