import functools

import pytest
from sympy import primefactors

from genus2_torsion import analysis, curve, errors, jacobian, oracle, weil
from genus2_torsion.analysis import Branch, Shape
from genus2_torsion.const import ENUMERATION_CAP

EXAMPLE9 = weil.WeilPolynomial(3, 2, 7)
X4_PLUS_9 = weil.WeilPolynomial(3, 0, 0)


@pytest.mark.parametrize(
    "name, m, expected",
    [
        ("x5_plus_1", 1, (10,)),
        # f splits as a line and two quadratics over 𝔽₉
        ("x5_plus_1", 2, (10, 10)),
        ("example9_curve", 1, (5, 5)),
    ],
)
def test_group_structure(request, name, m, expected):
    C = request.getfixturevalue(name)
    structure = oracle.group_structure(C, m)
    assert structure.invariant_factors == expected
    assert structure.order == weil.frobenius_power(curve.weil_polynomial_of(C), m)(1)
    assert structure.as_dict() == {"structure": list(expected), "order": structure.order}


def test_group_structure_parts(x5_plus_1, example9_curve):
    structure = oracle.group_structure(x5_plus_1)
    assert structure.ell_part(5) == [5]
    assert structure.ell_part(2) == [2]
    assert structure.ell_part(7) == []
    assert structure.ell_rank(5) == 1
    assert oracle.group_structure(example9_curve).ell_rank(5) == 2


@pytest.mark.parametrize(
    "name, ranks",
    [
        ("x5_plus_1", [1, 2, 1, 4]),
        ("example9_curve", [2, 2, 2, 4]),
    ],
)
def test_ell_torsion_ranks(request, name, ranks):
    C = request.getfixturevalue(name)
    observed = [oracle.ell_torsion(C, 5, m) for m in range(1, 5)]
    assert [t.rank for t in observed] == ranks
    assert all(t.mode == "enumeration" for t in observed)
    for torsion in observed:
        assert torsion.ctx.identity in torsion.elements
        assert all(
            jacobian.jc_scalar_mul(torsion.ctx, D, 5) == torsion.ctx.identity
            for D in torsion.elements
        )


def test_ell_torsion_by_sampling(x5_plus_1):
    # 𝔽_{3⁶} is past the enumeration cap; the 5-part of 730² is 25
    torsion = oracle.ell_torsion(x5_plus_1, 5, 6, seed=3)
    assert torsion.mode == "sylow"
    assert torsion.rank == 2
    assert oracle.ell_torsion_rank(x5_plus_1, 7, 6) == 0


def test_ell_torsion_too_large(x5_plus_1):
    with pytest.raises(errors.FieldTooLarge):
        oracle.ell_torsion(x5_plus_1, 5, 11)


def test_torsion_basis_and_coordinates(x5_plus_1):
    ctx, basis = oracle.torsion_basis(x5_plus_1, 5, 2)
    assert len(basis) == 2
    coords = oracle.span_coordinates(ctx, basis, 5)
    assert len(coords) == 25
    assert coords[ctx.identity] == (0, 0)
    assert coords[basis[1]] == (0, 1)
    with pytest.raises(ValueError):
        oracle.span_coordinates(ctx, [basis[0], basis[0]], 5)


@pytest.mark.parametrize(
    "name, P",
    [
        ("x5_plus_1", X4_PLUS_9),
        ("example9_curve", EXAMPLE9),
    ],
)
def test_frobenius_matrix(request, name, P):
    ctx, basis = oracle.torsion_basis(request.getfixturevalue(name), 5, 4)
    matrix = oracle.frobenius_matrix(ctx, 5, 1, basis)
    assert matrix.matches(P)
    assert not matrix.matches(weil.WeilPolynomial(3, 1, 2))
    # φ⁴ fixes 𝒥(𝔽₈₁)
    fourth = oracle.frobenius_matrix(ctx, 5, 4, basis)
    assert fourth.matrix == [[int(i == j) for j in range(4)] for i in range(4)]
    assert fourth.matches(weil.frobenius_power(P, 4))
    assert matrix.as_dict()["charpoly"] == list(matrix.charpoly)


def test_frobenius_matrix_not_invariant(x5_plus_1):
    ctx, basis = oracle.torsion_basis(x5_plus_1, 5, 4)
    torsion = oracle.ell_torsion(x5_plus_1, 5, 4)
    # eigenvalues 1, 2, 3, 4 are distinct, so most classes are not eigenvectors
    D = next(
        D
        for D in torsion.elements
        if jacobian.jc_frobenius(ctx, D)
        not in {jacobian.jc_scalar_mul(ctx, D, c) for c in range(5)}
    )
    with pytest.raises(errors.BasisNotInvariant):
        oracle.frobenius_matrix(ctx, 5, 1, [D])


@pytest.mark.parametrize(
    "name, ell, cap, expected",
    [
        ("x5_plus_1", 5, 24, 4),
        ("example9_curve", 5, 8, 4),
        # the embedding degree of 3 mod 5 is already 4
        ("x5_plus_1", 5, 3, errors.ExceedsCap),
        ("x5_plus_1", 3, 24, errors.EllDividesQ),
        # 3 has order 8 mod 41; 41 ∤ 80⁴ and 𝔽_{3^16} is past the working-field cap
        ("x5_plus_1", 41, 24, errors.ExceedsCap),
    ],
)
def test_full_embedding_degree_measured(request, name, ell, cap, expected):
    C = request.getfixturevalue(name)
    if isinstance(expected, int):
        assert oracle.full_embedding_degree_measured(C, ell, cap) == expected
    else:
        with pytest.raises(expected):
            oracle.full_embedding_degree_measured(C, ell, cap)


@pytest.mark.parametrize(
    "name, u_rank, v_rank, direct",
    [
        ("x5_plus_1", 1, 1, True),
        ("example9_curve", 2, 2, True),
    ],
)
def test_eigenspace_split(request, name, u_rank, v_rank, direct):
    split = oracle.eigenspace_split(request.getfixturevalue(name), 5, 4)
    assert len(split.u_basis) == u_rank
    assert len(split.v_basis) == v_rank
    assert split.is_direct_sum is direct
    assert split.sum_rank == u_rank + v_rank
    assert split.total_rank == 4


def test_two_torsion_splitting_degree(x5_plus_1):
    assert oracle.two_torsion_splitting_degree(x5_plus_1) == 4
    assert analysis.two_torsion_field(curve.weil_polynomial_of(x5_plus_1)) == 4


def test_search_curves(example9_curve):
    assert curve.weil_polynomial_of(example9_curve) == EXAMPLE9
    # M₁ = 6 is even, which no root-free quintic model reaches
    assert example9_curve.model == "sextic"
    found = oracle.search_curves(3, lambda s, t: s == 0, limit=3)
    assert len(found) == 3
    assert all(curve.weil_polynomial_of(C).s == 0 for C in found)
    assert found == sorted(found, key=lambda C: C.f.coeffs)


def test_search_curves_exhausts():
    # no genus-2 curve over 𝔽₃ has 3 + 1 + 8 points
    assert oracle.search_curves(3, lambda s, t: s == 8, limit=1) == []


@pytest.mark.parametrize(
    "q, expected",
    [
        (4, errors.EvenCharacteristic),
        (6, errors.NotPrime),
        (25, errors.FieldTooLargeForSearch),
    ],
)
def test_search_curves_errors(q, expected):
    with pytest.raises(expected):
        oracle.search_curves(q, lambda s, t: True)


@functools.lru_cache(maxsize=None)
def measured_structure(C, m):
    return oracle.group_structure(C, m)


def corpus_instances(corpus):
    """(C, P, ℓ, m) for odd ℓ | P(1), ℓ ∤ q, over every 𝔽_{q^m} within the enumeration cap"""
    for C in corpus:
        P = curve.weil_polynomial_of(C)
        for ell in primefactors(P(1)):
            if ell == 2 or C.q % ell == 0:
                continue
            m = 1
            while C.q**m <= ENUMERATION_CAP:
                yield C, P, ell, m
                m += 1


def test_symbolic_rank_matches_oracle_on_corpus(quintic_corpus):
    compared, extended = 0, 0
    for C, P, ell, m in corpus_instances(quintic_corpus):
        try:
            report = analysis.classify_torsion(P, ell, m)
        except errors.RankBoundNotApplicable:
            continue
        measured = measured_structure(C, m).ell_rank(ell)
        if report.branch is Branch.TRACE_COPRIME:
            assert measured <= 2, (C, ell, m)
            divides = (C.q**m - 1) % ell == 0
            assert (report.shape is Shape.BICYCLIC) is divides
            assert (measured == 2) is divides, (C, ell, m)
        if report.rank is None:
            continue
        assert report.rank == measured, (C, ell, m)
        compared += 1
        extended += m == 3
    assert compared > 0
    assert extended > 0


def test_symbolic_kappa_matches_oracle(quintic_corpus, f5_corpus, example9_curve):
    compared = 0
    for C, P, ell, m in corpus_instances(quintic_corpus + f5_corpus + [example9_curve]):
        if m != 1 or P.four_tau % ell:
            continue
        report = analysis.classify_torsion(P, ell)
        kappa = report.kappa.exact
        if report.branch is Branch.ORACLE_NEEDED or not kappa or C.q**kappa > ENUMERATION_CAP:
            continue
        # κ = m·k: full over 𝔽_{q^κ} and over no smaller extension
        assert oracle.full_embedding_degree_measured(C, ell, kappa) == kappa, (C, ell)
        compared += 1
    assert compared > 0


def test_two_torsion_field_on_corpus(quintic_corpus):
    for C in quintic_corpus:
        P = curve.weil_polynomial_of(C)
        if P(1) % 2:
            continue
        degree = analysis.two_torsion_field(P)
        assert degree % oracle.two_torsion_splitting_degree(C) == 0, C


def test_group_order_on_corpus(quintic_corpus):
    for C in quintic_corpus[::4]:
        assert oracle.group_structure(C).order == curve.weil_polynomial_of(C)(1)
