import functools

import pytest

from genus2_torsion import algebra, analysis, curve, errors, jacobian, oracle, pairing, weil

ELL = 5


@functools.lru_cache(maxsize=None)
def full_torsion(name):
    """Working context over 𝔽₈₁ and a basis of the full 5-torsion"""
    if name == "x5+1":
        C = curve.curve_validate(3, 1, [1, 0, 0, 0, 0, 1])
    else:
        C = oracle.search_curves(3, weil.WeilPolynomial(3, 2, 7), 1)[0]
    ctx, basis = oracle.torsion_basis(C, ELL, 4)
    return C, ctx, tuple(basis)


@pytest.mark.parametrize("name", ["x5+1", "example9"])
def test_weil_pairing_is_alternating_and_bilinear(name):
    _, ctx, basis = full_torsion(name)
    assert len(basis) == 4
    for i, x in enumerate(basis):
        assert pairing.weil_pairing(ctx, x, x, ELL, seed=i).is_one()
        for j, y in enumerate(basis):
            e_xy = pairing.weil_pairing(ctx, x, y, ELL, seed=i)
            e_yx = pairing.weil_pairing(ctx, y, x, ELL, seed=j)
            assert (e_xy * e_yx).is_one()
            assert (e_xy**ELL).is_one()
            for z in basis:
                total = pairing.weil_pairing(ctx, jacobian.jc_add(ctx, x, z), y, ELL, seed=3)
                assert total == e_xy * pairing.weil_pairing(ctx, z, y, ELL, seed=4)


@pytest.mark.parametrize("name", ["x5+1", "example9"])
def test_reduced_tate_is_independent_of_the_shift(name):
    _, ctx, basis = full_torsion(name)
    x, y = basis[0], basis[1]
    values = {pairing.reduced_tate(ctx, x, y, ELL, seed) for seed in range(4)}
    assert len(values) == 1


def test_reduced_tate_trivial_arguments():
    _, ctx, basis = full_torsion("x5+1")
    assert pairing.reduced_tate(ctx, ctx.identity, basis[0], ELL).is_one()
    assert pairing.reduced_tate(ctx, basis[0], ctx.identity, ELL).is_one()


@pytest.mark.parametrize(
    "name, weil_ratio, rank",
    [
        # ℓ² ∤ 80, so both pairings are perfect on 𝒥[5] = 𝒥(𝔽₈₁)[5]
        ("x5+1", False, 4),
        ("x5+1", True, 4),
        ("example9", False, 4),
        ("example9", True, 4),
    ],
)
def test_tate_matrix(name, weil_ratio, rank):
    _, ctx, basis = full_torsion(name)
    matrix, observed = pairing.tate_matrix(ctx, basis, ELL, seed=1, weil=weil_ratio)
    assert observed == rank
    if weil_ratio:
        for i in range(4):
            assert matrix[i][i] == 0
            for j in range(4):
                assert (matrix[i][j] + matrix[j][i]) % ELL == 0


@pytest.mark.parametrize("name", ["x5+1", "example9"])
def test_nondegenerate_on_full_torsion(name):
    _, ctx, basis = full_torsion(name)
    verdict = pairing.nondegenerate_on(ctx, basis, ELL)
    assert verdict.nondegenerate
    assert verdict.degenerate is None
    x, y = verdict.witness
    assert not pairing.weil_pairing(ctx, x, y, ELL).is_one()
    assert verdict.warnings == []


def test_rational_torsion_is_isotropic(example9_curve):
    # φ fixes U = 𝒥(𝔽₃)[5], so e(x, y) = e(x, y)³ on U
    split = oracle.eigenspace_split(example9_curve, ELL, 4)
    verdict = pairing.nondegenerate_on(split.ctx, split.u_basis, ELL)
    assert not verdict.nondegenerate
    assert verdict.degenerate is not None
    assert verdict.gram == [[0, 0], [0, 0]]


def test_eigenspaces_pair_perfectly(x5_plus_1):
    split = oracle.eigenspace_split(x5_plus_1, ELL, 4)
    verdict = pairing.nondegenerate_on(split.ctx, split.u_basis + split.v_basis, ELL)
    assert verdict.nondegenerate


def test_nondegenerate_on_warns_when_ell_squared_divides():
    ctx = jacobian.jc_context(curve.curve_validate(3, 1, [1, 0, 0, 0, 0, 1]), 2)
    # 4 | 9 - 1
    verdict = pairing.nondegenerate_on(ctx, [], 2)
    assert verdict.nondegenerate
    assert len(verdict.warnings) == 1


def test_mu_ell_not_in_field():
    ctx = jacobian.jc_context(curve.curve_validate(3, 1, [1, 0, 0, 0, 0, 1]))
    D = next(D for D in jacobian.jc_enumerate(ctx) if D != ctx.identity)
    with pytest.raises(errors.MuEllNotInField):
        pairing.reduced_tate(ctx, D, D, ELL)
    with pytest.raises(errors.MuEllNotInField):
        pairing.nondegenerate_on(ctx, [D], ELL)


def test_weil_pairing_needs_rational_torsion():
    _, ctx, basis = full_torsion("x5+1")
    D = next(
        D
        for D in (jacobian.jc_random(ctx, seed) for seed in range(100))
        if jacobian.jc_scalar_mul(ctx, D, ELL) != ctx.identity
    )
    with pytest.raises(errors.TorsionNotRational):
        pairing.weil_pairing(ctx, D, basis[0], ELL)


def test_miller_eval_empty_sum():
    _, ctx, basis = full_torsion("x5+1")
    assert pairing.miller_eval(ctx, basis[0], ELL, []) == 1


def test_discrete_log_mu():
    F = algebra.field_create(3, 4)
    zeta = F.pow(F.primitive_element(), (F.q - 1) // ELL)
    for i in range(ELL):
        value = pairing.PairingValue(F.element(F.pow(zeta, i)), ELL)
        assert pairing.discrete_log_mu(value, ELL) == i
    assert pairing.discrete_log_mu(F.element(1), ELL) == 0
    with pytest.raises(errors.PreconditionViolated):
        pairing.discrete_log_mu(F.element(F.primitive_element()), ELL)


def test_pairing_value_arithmetic():
    F = algebra.field_create(3, 4)
    zeta = pairing.PairingValue(F.element(F.pow(F.primitive_element(), 16)), ELL)
    assert (zeta**ELL).is_one()
    assert (zeta / zeta).is_one()
    assert not zeta.is_one()


def test_certificate_on_corpus(f5_corpus):
    # over 𝔽₅ the only odd ℓ with embedding degree 2 is 3, and 9 ∤ 24
    checked = 0
    for C in f5_corpus:
        P = curve.weil_polynomial_of(C)
        certificate = analysis.nondegeneracy_certificate(P, 3)
        if certificate is None or not certificate.eigenspace_split:
            continue
        assert certificate.k == 2
        ctx, basis = oracle.torsion_basis(C, 3, 2)
        assert len(basis) == 2
        assert pairing.nondegenerate_on(ctx, basis, 3).nondegenerate, C
        checked += 1
    assert checked >= 5
