import os

import pytest

from genus2_torsion import algebra, curve, errors, weil

current_path = os.path.dirname(os.path.realpath(__file__))


def data_file(name):
    return os.path.join(current_path, "data", name)


@pytest.mark.parametrize(
    "p, a, coefficients, expected",
    [
        # y² = x⁵ + 1
        (3, 1, [1, 0, 0, 0, 0, 1], "quintic"),
        # split infinity
        (3, 1, [1, 1, 0, 0, 0, 0, 1], "sextic"),
        # leading coefficient 2 is a non-square in 𝔽₃
        (3, 1, [1, 1, 0, 0, 0, 0, 2], "sextic"),
        # coefficient vectors over 𝔽₉
        (3, 2, [[1, 0], [0, 1], 0, 0, 0, [1, 0]], "quintic"),
        # characteristic 2
        (2, 1, [1, 0, 0, 0, 0, 1], errors.EvenCharacteristic),
        # degree 4
        (3, 1, [1, 0, 0, 0, 1], errors.BadDegree),
        # non-monic quintic
        (3, 1, [1, 0, 0, 0, 0, 2], errors.BadDegree),
        # x⁴(x + 1)
        (5, 1, [0, 0, 0, 0, 1, 1], errors.Singular),
        # x⁶ + 1 = (x² + 1)³ in characteristic 3
        (3, 1, [1, 0, 0, 0, 0, 0, 1], errors.Singular),
        # coefficient vector of the wrong length
        (3, 2, [[1, 0, 0], 0, 0, 0, 0, 1], errors.CurveFileError),
    ],
)
def test_curve_validate(p, a, coefficients, expected):
    if isinstance(expected, str):
        assert curve.curve_validate(p, a, coefficients).model == expected
    else:
        with pytest.raises(expected):
            curve.curve_validate(p, a, coefficients)


@pytest.mark.parametrize(
    "coefficients, expected",
    [
        ([1, 0, 0, 0, 0, 1], 1),
        ([1, 1, 0, 0, 0, 0, 1], 2),
        ([1, 1, 0, 0, 0, 0, 2], 0),
    ],
)
def test_points_at_infinity(coefficients, expected):
    assert curve.curve_validate(3, 1, coefficients).points_at_infinity == expected


def test_count_points(x5_plus_1):
    assert curve.count_points(x5_plus_1, 1) == 4
    assert curve.count_points(x5_plus_1, 2) == 10
    assert curve.weil_polynomial_of(x5_plus_1) == weil.WeilPolynomial(3, 0, 0)


@pytest.mark.parametrize(
    "m, expected",
    [
        (1, 4),
        (2, 10),
        # power sums of the roots of X⁴ + 9 vanish below degree 4
        (3, 28),
        # p₄ = -36
        (4, 118),
    ],
)
def test_count_points_x5_plus_1(x5_plus_1, point_counter, m, expected):
    assert curve.count_points(x5_plus_1, m) == expected
    assert point_counter(x5_plus_1, m) == expected


def test_count_points_on_corpus(quintic_corpus, point_counter):
    for C in quintic_corpus:
        for m in (1, 2):
            assert curve.count_points(C, m) == point_counter(C, m), (C, m)


def test_example9_counts(example9_curve, point_counter):
    # (X² + X + 3)² gives M₁ = 3 + 1 + 2 and M₂ = 9 + 1 - 4 + 14
    assert point_counter(example9_curve, 1) == 6
    assert point_counter(example9_curve, 2) == 20


def test_count_points_matches_weil_polynomial(x5_plus_1):
    P = curve.weil_polynomial_of(x5_plus_1)
    for m in (1, 2, 3, 4):
        Pm = weil.frobenius_power(P, m)
        # #C(𝔽_{q^m}) = q^m + 1 - trace of φ^m
        assert curve.count_points(x5_plus_1, m) == Pm.field_size + 1 + Pm.s


def test_count_points_cap():
    C = curve.curve_validate(5, 1, [1, 1, 0, 0, 0, 1])
    # 5⁹ is beyond the point-counting cap
    with pytest.raises(errors.FieldTooLarge):
        curve.count_points(C, 9)


def test_curve_load(x5_plus_1):
    loaded = curve.curve_load(data_file("curve_x5_plus_1.json"))
    assert loaded == x5_plus_1
    assert curve.curve_load(curve.curve_dump(loaded)) == loaded


def test_curve_load_extension():
    loaded = curve.curve_load(data_file("curve_x5_plus_1_f9.json"))
    assert loaded.q == 9
    P = curve.weil_polynomial_of(loaded)
    # P over 𝔽₉ is the square of Frobenius of X⁴ + 9
    assert (P.s, P.t) == (0, 18)


def test_curve_load_other_modulus(f9):
    loaded = curve.curve_load(data_file("curve_other_modulus.json"))
    assert loaded.field == f9
    c = loaded.f[0]
    # c is a root of x² + x + 2 in the canonical 𝔽₉
    assert f9.add(f9.add(f9.mul(c, c), c), 2) == 0
    assert loaded.f.coeffs[1:] == (0, 0, 0, 0, 1)
    assert curve.curve_dump(loaded)["modulus"] == [1, 0, 1]


@pytest.mark.parametrize(
    "source, expected",
    [
        ("curve_malformed.json", errors.CurveFileError),
        ("curve_not_json.json", errors.CurveFileError),
        ("curve_missing.json", errors.CurveFileError),
        ("curve_singular.json", errors.Singular),
        # declared model disagrees with the degree
        ({"p": 3, "f": [1, 0, 0, 0, 0, 1], "model": "sextic"}, errors.CurveFileError),
        # x² + 1 is reducible over 𝔽₅
        ({"p": 5, "a": 2, "modulus": [1, 0, 1], "f": [1, 0, 0, 0, 0, 1]}, errors.CurveFileError),
        # no coefficients
        ({"p": 3}, errors.CurveFileError),
        ({"p": 4, "f": [1, 0, 0, 0, 0, 1]}, errors.NotPrime),
    ],
)
def test_curve_load_errors(source, expected):
    if isinstance(source, str):
        source = data_file(source)
    with pytest.raises(expected):
        curve.curve_load(source)


def test_curve_dump(f9):
    C = curve.curve_from_poly(f9, algebra.UniPoly(f9, [1, 3, 0, 0, 0, 1]))
    assert curve.curve_dump(C) == {
        "p": 3,
        "a": 2,
        "modulus": [1, 0, 1],
        "model": "quintic",
        "f": [[1, 0], [0, 1], [0, 0], [0, 0], [0, 0], [1, 0]],
    }
