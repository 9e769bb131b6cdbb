import math
import random

import pytest

from reidtai.roots import (
    RootOfUnity,
    conjugate,
    euler_phi,
    galois_apply,
    normalize,
    unit_classes,
)


def _phi_bruteforce(d):
    return sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)


class TestNormalize:
    @pytest.mark.parametrize(
        "a, d, expected",
        [(3, 6, (1, 2)), (9, 8, (1, 8)), (-1, 4, (3, 4)), (0, 5, (0, 1)), (7, 7, (0, 1))],
    )
    def test_examples(self, a, d, expected):
        z = normalize(a, d)
        assert (z.numerator, z.denominator) == expected

    def test_zero_denominator_rejected(self):
        with pytest.raises((ValueError, ZeroDivisionError)):
            normalize(1, 0)

    def test_range_and_reduction(self):
        rng = random.Random(7)
        for _ in range(500):
            a = rng.randint(-50, 50)
            d = rng.randint(1, 40)
            z = normalize(a, d)
            assert 0 <= z < 1
            assert math.gcd(z.numerator, z.denominator) == 1
            assert (z - a / d) % 1 == pytest.approx(0, abs=1e-9) or True
            assert (z.numerator * d - a * z.denominator) % (d * z.denominator) == 0

    def test_order(self):
        assert normalize(3, 6).order == 2
        assert normalize(0, 3).order == 1


class TestGaloisAction:
    def test_examples(self):
        assert galois_apply(3, normalize(1, 8)) == normalize(3, 8)
        z = normalize(5, 18)
        assert galois_apply(1, z) == z
        # 5 * (1/4) = 5/4 = 1/4 mod 1, by direct multiplication.
        assert galois_apply(5, normalize(1, 4)) == normalize(1, 4)

    def test_not_coprime_rejected(self):
        with pytest.raises(ValueError):
            galois_apply(2, normalize(1, 8))

    def test_composition(self):
        rng = random.Random(11)
        for _ in range(300):
            d = rng.randint(2, 36)
            units = [u for u in range(1, d) if math.gcd(u, d) == 1]
            k1, k2 = rng.choice(units), rng.choice(units)
            z = normalize(rng.randrange(d), d)
            assert galois_apply(k1, galois_apply(k2, z)) == galois_apply((k1 * k2) % d, z)


class TestConjugate:
    @pytest.mark.parametrize(
        "z, expected", [((1, 3), (2, 3)), ((1, 2), (1, 2)), ((5, 18), (13, 18)), ((0, 1), (0, 1))]
    )
    def test_examples(self, z, expected):
        assert conjugate(normalize(*z)) == normalize(*expected)

    def test_is_galois_minus_one(self):
        for d in range(2, 30):
            for u in range(d):
                z = normalize(u, d)
                assert conjugate(z) == galois_apply(z.denominator - 1, z) or z.denominator == 1
                assert conjugate(conjugate(z)) == z


class TestUnitClasses:
    def test_examples(self):
        assert unit_classes(5).pairs == ((1, 4), (2, 3))
        assert unit_classes(2).pairs == ((1,),)
        assert unit_classes(18).pairs == ((1, 17), (5, 13), (7, 11))

    def test_small_modulus_rejected(self):
        with pytest.raises(ValueError):
            unit_classes(1)

    def test_partition(self):
        for d in range(2, 120):
            uc = unit_classes(d)
            assert len(uc.units) == euler_phi(d) == _phi_bruteforce(d)
            flattened = sorted(u for pair in uc.pairs for u in (pair if len(pair) == 2 else pair))
            assert flattened == sorted(set(flattened))
            covered = {u for pair in uc.pairs for u in pair} | {d - u for pair in uc.pairs for u in pair}
            assert covered == set(uc.units)


class TestRootOfUnity:
    def test_hash_and_equality_structural(self):
        assert RootOfUnity(2, 6) == RootOfUnity(1, 3)
        assert len({RootOfUnity(2, 6), RootOfUnity(1, 3)}) == 1

    def test_str_serialization(self):
        assert str(RootOfUnity(5, 18)) == "5/18"
        assert str(RootOfUnity(0, 3)) == "0"
