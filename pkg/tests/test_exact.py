import random
from fractions import Fraction

import pytest

from monolab.exact import (
    GF,
    QQ,
    ZZ,
    det_mod,
    integer_kernel,
    is_probable_prime,
    normalize_primitive,
)


def rational_rank(rows, ncols):
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c] / work[rank][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def rational_det(rows):
    n = len(rows)
    work = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            det = -det
        det *= work[c][c]
        for i in range(c + 1, n):
            if work[i][c]:
                f = work[i][c] / work[c][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det


def test_kernel_known_cases():
    assert integer_kernel([[1, 0], [0, 1]], 2) == []
    assert integer_kernel([[2, 0]], 2) == [(0, 1)]
    k = integer_kernel([[1, 2, 3], [2, 4, 6]], 3)
    assert len(k) == 2
    for v in k:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_kernel_saturation():
    # (1,1,-1) lies in the kernel of [1,2,3]; the basis must reach it integrally
    basis = integer_kernel([[1, 2, 3]], 3)
    target = (1, 1, -1)
    # solve integer combination by brute force over a small box
    hits = [
        (a, b)
        for a in range(-5, 6)
        for b in range(-5, 6)
        if tuple(a * x + b * y for x, y in zip(*basis)) == target
    ]
    assert hits


def test_kernel_random_property():
    rng = random.Random(42)
    for _ in range(50):
        m, n = rng.randrange(1, 6), rng.randrange(1, 7)
        rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        kern = integer_kernel(rows, n)
        for v in kern:
            assert all(sum(r[j] * v[j] for j in range(n)) == 0 for r in rows)
            lead = next((x for x in v if x), 0)
            assert lead > 0
        assert len(kern) == n - rational_rank(rows, n)


def test_normalize_primitive():
    assert normalize_primitive((2, -4, 6)) == (1, -2, 3)
    assert normalize_primitive((-3, 6)) == (1, -2)
    assert normalize_primitive((0, 0)) == (0, 0)


def test_primality():
    small = [n for n in range(2, 60) if is_probable_prime(n)]
    assert small == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert not is_probable_prime(561)  # Carmichael
    assert not is_probable_prime(1)
    assert is_probable_prime(2**61 - 1)
    assert is_probable_prime(1000000000039)
    assert not is_probable_prime(1000000000039 * 1000000000061)


def test_det_mod_against_rational():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randrange(1, 6)
        rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(n)]
        d = rational_det(rows)
        for ell in (2, 3, 5, 13, 101):
            assert det_mod(rows, ell) == int(d) % ell


def test_prime_field_ops():
    f = GF(13)
    assert f.coerce(-1) == 12
    assert f.coerce(Fraction(1, 2)) == 7
    assert f.mul(7, 2) == 1
    assert f.inv(5) == 8
    with pytest.raises(ValueError):
        GF(12)
    with pytest.raises(ValueError):
        GF(2**31 + 11)


def test_ring_coercions():
    assert ZZ.coerce(Fraction(4, 2)) == 2
    with pytest.raises(TypeError):
        ZZ.coerce(Fraction(1, 2))
    assert QQ.coerce(3) == Fraction(3)
    assert GF(7) == GF(7) and GF(7) != GF(11)
