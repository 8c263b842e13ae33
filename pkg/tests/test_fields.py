import random

import pytest

from heckecat.fields import (
    QQ, RAT, PrimeField, RealAlgebraicField, cos_minpoly, count_real_roots,
    cyclotomic, field_with_cosines, peval, pgcd, pmul, resultant,
)


def test_cyclotomic_small():
    assert cyclotomic(1) == [RAT(-1), RAT(1)]
    assert cyclotomic(2) == [RAT(1), RAT(1)]
    assert cyclotomic(4) == [RAT(1), RAT(0), RAT(1)]
    assert cyclotomic(12) == [RAT(1), RAT(0), RAT(-1), RAT(0), RAT(1)]


@pytest.mark.parametrize("m,poly", [
    (4, [-2, 0, 1]),          # x^2 - 2
    (5, [-1, -1, 1]),         # x^2 - x - 1  (golden ratio)
    (6, [-3, 0, 1]),          # x^2 - 3
    (7, [1, -2, -1, 1]),      # x^3 - x^2 - 2x + 1
])
def test_cos_minpoly(m, poly):
    assert cos_minpoly(m) == [RAT(c) for c in poly]


def test_cos_minpoly_has_cos_root():
    import math
    for m in (4, 5, 6, 7, 8, 9, 12):
        p = cos_minpoly(m)
        x = 2 * math.cos(math.pi / m)
        val = sum(float(c) * x ** i for i, c in enumerate(p))
        assert abs(val) < 1e-9


def test_resultant():
    # res(x^2-2, x^2-3) = (sqrt2-sqrt3)(sqrt2+sqrt3)(-sqrt2-sqrt3)(-sqrt2+sqrt3) = 1
    assert resultant([RAT(-2), RAT(0), RAT(1)], [RAT(-3), RAT(0), RAT(1)]) == RAT(1)
    assert resultant([RAT(-1), RAT(1)], [RAT(-1), RAT(1)]) == RAT(0)


def test_prime_field():
    F = PrimeField(5)
    a, b = F.of(3), F.of(4)
    assert (a * b).v == 2
    assert (a / b).v == (3 * 4) % 5  # 4^{-1} = 4 mod 5
    assert not (a - a)
    assert a ** 4 == F.one
    with pytest.raises(ValueError):
        PrimeField(6)


def test_sqrt2_field():
    K = RealAlgebraicField([-2, 0, 1], RAT(1), RAT(2), name="sqrt2")
    r = K.gen
    assert r * r == K.of(2)
    assert K.sign(r - K.of(1)) == 1
    assert K.sign(r - K.of(2)) == -1
    assert K.sign(r * r - K.of(2)) == 0
    inv = K.one / r
    assert inv * r == K.one
    assert (r + K.one) * (r - K.one) == K.of(1)


def test_golden_field():
    p = cos_minpoly(5)
    K = RealAlgebraicField(p, RAT(1), RAT(2), name="phi")
    phi = K.gen
    assert phi * phi == phi + K.one
    assert K.sign(phi - K.of(8, 5)) == 1   # phi > 1.6
    assert K.sign(phi - K.of(13, 8)) == -1  # phi < 1.625


def test_compositum_sqrt2_sqrt3():
    K, vals = field_with_cosines([4, 6, 3, 2])
    s2, s3 = vals[4], vals[6]
    assert s2 * s2 == K.of(2)
    assert s3 * s3 == K.of(3)
    assert vals[3] == K.of(1)
    assert vals[2] == K.of(0)
    prod = s2 * s3
    assert prod * prod == K.of(6)
    assert K.sign(s3 - s2) == 1
    assert (K.one / (s2 + s3)) * (s2 + s3) == K.one


def test_field_with_cosines_rational_only():
    F, vals = field_with_cosines([2, 3, None])
    assert F is QQ
    assert vals[3] == RAT(1)
    assert vals[None] == RAT(2)


def test_reducible_modulus_dynamic_refinement():
    # modulus (x^2-2)(x^2-3), gamma = sqrt(2): inverting x^2-3 at gamma is fine,
    # and hitting the factor vanishing at gamma must raise ZeroDivisionError.
    mod = pmul([RAT(-2), RAT(0), RAT(1)], [RAT(-3), RAT(0), RAT(1)])
    K = RealAlgebraicField(mod, RAT(13, 10), RAT(29, 20))
    g = K.gen
    v = g * g - K.of(3)  # equals -1 at gamma
    assert K.one / v == -K.one
    z = g * g - K.of(2)  # zero at gamma even though the vector is nonzero
    with pytest.raises(ZeroDivisionError):
        K.one / z
    assert not z  # detected as zero by sign refinement


def test_random_field_axioms():
    rng = random.Random(7)
    K, vals = field_with_cosines([5])
    for _ in range(50):
        a, b, c = K.sample(rng), K.sample(rng), K.sample(rng)
        assert (a + b) * c == a * c + b * c
        if b:
            assert (a / b) * b == a
