import collections
import random

import pytest

from genus2_torsion import algebra, curve, errors, oracle, weil

CORPUS_SIZE = 16


@pytest.fixture(scope="session")
def f3():
    return algebra.field_create(3)


@pytest.fixture(scope="session")
def f9():
    return algebra.field_create(3, 2)


@pytest.fixture(scope="session")
def f5():
    return algebra.field_create(5)


@pytest.fixture(scope="session")
def f25():
    return algebra.field_create(5, 2)


@pytest.fixture(scope="session")
def x5_plus_1():
    """y² = x⁵ + 1 over 𝔽₃, Weil polynomial X⁴ + 9 and group ℤ/10"""
    return curve.curve_validate(3, 1, [1, 0, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def example9_curve():
    """First curve over 𝔽₃ with Weil polynomial (X² + X + 3)²"""
    return oracle.search_curves(3, weil.WeilPolynomial(3, 2, 7), 1)[0]


def random_quintics(p: int, count: int, seed: int) -> list[curve.CurveModel]:
    rng = random.Random(seed)
    field = algebra.field_create(p)
    out = []
    while len(out) < count:
        coeffs = [rng.randrange(p) for _ in range(5)] + [1]
        try:
            out.append(curve.curve_from_poly(field, algebra.UniPoly(field, coeffs)))
        except errors.Singular:
            continue
    return out


@pytest.fixture(scope="session")
def quintic_corpus():
    """Seeded random monic quintic curves over 𝔽₅ and 𝔽₇"""
    return random_quintics(5, CORPUS_SIZE, 2024) + random_quintics(7, CORPUS_SIZE, 2025)


@pytest.fixture(scope="session")
def f5_corpus():
    """A larger seeded set over 𝔽₅ for checks that need many instances of one prime"""
    return random_quintics(5, 3 * CORPUS_SIZE, 77)


def naive_point_count(C: curve.CurveModel, m: int) -> int:
    """#C(𝔽_{q^m}) by testing every pair (x, y) with plain field arithmetic"""
    base = C.field
    work = algebra.field_create(base.p, base.a * m)
    embed = algebra.embedding_map(base, work)
    coeffs = [embed(c) for c in C.f.coeffs]
    squares = collections.Counter(work.mul(y, y) for y in work.elements())
    total = 0
    for x in work.elements():
        fx = 0
        for c in reversed(coeffs):
            fx = work.add(work.mul(fx, x), c)
        total += squares[fx]
    if len(coeffs) == 6:
        return total + 1
    return total + squares[coeffs[-1]]


@pytest.fixture(scope="session")
def point_counter():
    return naive_point_count
