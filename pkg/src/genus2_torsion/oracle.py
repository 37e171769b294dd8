__all__ = [
    "EigenspaceSplit",
    "FrobeniusMatrix",
    "GroupStructure",
    "TorsionSubgroup",
    "eigenspace_split",
    "ell_torsion",
    "ell_torsion_rank",
    "frobenius_matrix",
    "full_embedding_degree_measured",
    "group_structure",
    "search_curves",
    "span_coordinates",
    "torsion_basis",
    "two_torsion_splitting_degree",
]

import itertools
import logging
import math
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Union

from sympy import factorint

from .algebra import UniPoly, field_create, matrix_mod, poly_distinct_degree_factor
from .const import (
    DEFAULT_EMBEDDING_CAP,
    ENUMERATION_CAP,
    SAMPLED_SPAN_CAP,
    SAMPLING_STALE_ROUNDS,
    SEARCH_FIELD_CAP,
)
from .curve import CurveModel, count_points, curve_from_poly, weil_polynomial_of
from .errors import (
    BasisNotInvariant,
    EllDividesQ,
    EvenCharacteristic,
    ExceedsCap,
    FieldTooLarge,
    FieldTooLargeForSearch,
    NotPrime,
    Singular,
)
from .jacobian import (
    JacobianContext,
    MumfordDivisor,
    jc_add,
    jc_context,
    jc_enumerate,
    jc_frobenius,
    jc_random,
    jc_scalar_mul,
)
from .weil import WeilPolynomial, embedding_degree, frobenius_power, weil_from_counts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupStructure:
    """𝒥_C(𝔽_{q^m}) as ℤ/d₁ × … × ℤ/d_r with d₁ | d₂ | … | d_r

    :param invariant_factors: d₁, …, d_r, ascending
    :param elementary: prime → exponents of the elementary divisors, descending
    """

    invariant_factors: tuple[int, ...]
    elementary: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def ell_part(self, ell: int) -> list[int]:
        """Elementary divisors at ℓ, ascending"""
        return sorted(ell**e for e in self.elementary.get(ell, ()))

    def ell_rank(self, ell: int) -> int:
        return len(self.elementary.get(ell, ()))

    def as_dict(self) -> dict:
        return {"structure": list(self.invariant_factors), "order": self.order}


def _log_exact(n: int, r: int) -> int:
    e, rest = 0, n
    while rest > 1:
        rest, rem = divmod(rest, r)
        if rem:
            raise ArithmeticError(f"{n} is not a power of {r}")
        e += 1
    return e


def group_structure(C: CurveModel, m: int = 1) -> GroupStructure:
    """Invariant factors of 𝒥_C(𝔽_{q^m}) by full enumeration

    For each prime r of the order, the counts |{D : rⁱD = 0}| determine how many cyclic
    factors have order at least rⁱ.

    :raises FieldTooLarge: q^m above the enumeration cap
    """
    ctx = jc_context(C, m)
    elements = jc_enumerate(ctx)
    identity = ctx.identity
    exponents: dict[int, tuple[int, ...]] = {}
    for r, e in sorted(factorint(len(elements)).items()):
        times_r = {D: jc_scalar_mul(ctx, D, r) for D in elements}
        depth_counts = [0] * (e + 1)
        for D in elements:
            current = D
            for i in range(e + 1):
                if current == identity:
                    depth_counts[i] += 1
                    break
                current = times_r[current]
        kernel_logs = [_log_exact(n, r) for n in itertools.accumulate(depth_counts)]
        at_least = [kernel_logs[i] - kernel_logs[i - 1] for i in range(1, e + 1)]
        # at_least[i-1] factors have exponent >= i
        exps = []
        for i in range(e, 0, -1):
            already = len(exps)
            exps.extend([i] * (at_least[i - 1] - already))
        exponents[int(r)] = tuple(exps)
    powers = [[r**x for x in exps] for r, exps in exponents.items()]
    columns = itertools.zip_longest(*powers, fillvalue=1)
    factors = tuple(sorted(math.prod(col) for col in columns))
    logger.debug("J(F_%s) of %s: %s", ctx.q, C, factors)
    return GroupStructure(factors, exponents)


@dataclass
class TorsionSubgroup:
    """The ℓ-torsion elements found over 𝔽_{q^m}

    :param mode: "enumeration" when every class was visited, "sylow" when sampling closed
        the whole ℓ-Sylow subgroup, "statistical" when sampling stopped on stale rounds
    """

    ctx: JacobianContext
    ell: int
    elements: list[MumfordDivisor]
    mode: str

    @property
    def rank(self) -> int:
        return _log_exact(len(self.elements), self.ell)


def _extend_span(ctx: JacobianContext, span: set, g: MumfordDivisor) -> set:
    """Subgroup generated by the subgroup ``span`` and ``g``, as a union of cosets"""
    out = set(span)
    rep = g
    while rep not in span:
        out.update(jc_add(ctx, rep, s) for s in span)
        rep = jc_add(ctx, rep, g)
    return out


def _sampled_sylow(ctx: JacobianContext, ell: int, order: int, seed: int) -> tuple[set, str]:
    power = 1
    cofactor = order
    while cofactor % ell == 0:
        cofactor //= ell
        power *= ell
    rng = random.Random(seed)
    span = {ctx.identity}
    stale = 0
    while stale < SAMPLING_STALE_ROUNDS and len(span) < power:
        g = jc_scalar_mul(ctx, jc_random(ctx, rng), cofactor)
        if g in span:
            stale += 1
            continue
        span = _extend_span(ctx, span, g)
        stale = 0
        if len(span) > SAMPLED_SPAN_CAP:
            raise ExceedsCap(f"Sampled {ell}-Sylow subgroup exceeds {SAMPLED_SPAN_CAP}")
        logger.g2_trace("Sampled span grew to %s of %s", len(span), power)
    if len(span) == power:
        return span, "sylow"
    logger.warning(
        "%s-Sylow of %s closed at %s of %s after %s stale rounds",
        ell,
        ctx,
        len(span),
        power,
        SAMPLING_STALE_ROUNDS,
    )
    return span, "statistical"


def ell_torsion(C: CurveModel, ell: int, m: int = 1, seed: int = 0) -> TorsionSubgroup:
    """𝒥_C(𝔽_{q^m})[ℓ], by enumeration up to the enumeration cap and by sampling beyond

    :raises FieldTooLarge: The working field is beyond both modes
    """
    ctx = jc_context(C, m)
    identity = ctx.identity
    if ctx.q <= ENUMERATION_CAP:
        candidates, mode = jc_enumerate(ctx), "enumeration"
    else:
        order = frobenius_power(weil_polynomial_of(C), m)(1)
        if order % ell:
            return TorsionSubgroup(ctx, ell, [identity], "enumeration")
        span, mode = _sampled_sylow(ctx, ell, order, seed)
        candidates = sorted(span, key=MumfordDivisor.sort_key)
    elements = [D for D in candidates if jc_scalar_mul(ctx, D, ell) == identity]
    logger.debug("|J(F_%s)[%s]| = %s (%s)", ctx.q, ell, len(elements), mode)
    return TorsionSubgroup(ctx, ell, elements, mode)


def ell_torsion_rank(C: CurveModel, ell: int, m: int = 1, seed: int = 0) -> int:
    return ell_torsion(C, ell, m, seed).rank


def _greedy_basis(ctx: JacobianContext, elements: Iterable[MumfordDivisor]):
    basis: list[MumfordDivisor] = []
    span = {ctx.identity}
    for D in elements:
        if D not in span:
            basis.append(D)
            span = _extend_span(ctx, span, D)
    return basis, span


def torsion_basis(
    C: CurveModel, ell: int, m: int = 1, seed: int = 0
) -> tuple[JacobianContext, list[MumfordDivisor]]:
    """Independent classes spanning 𝒥_C(𝔽_{q^m})[ℓ], chosen greedily in canonical order

    :return: The working context and the basis
    """
    torsion = ell_torsion(C, ell, m, seed)
    basis, span = _greedy_basis(torsion.ctx, torsion.elements)
    if len(span) != len(torsion.elements):
        raise AssertionError(f"Span of {len(basis)} generators has {len(span)} elements")
    return torsion.ctx, basis


def span_coordinates(
    ctx: JacobianContext, basis: Sequence[MumfordDivisor], ell: int
) -> dict[MumfordDivisor, tuple[int, ...]]:
    """Every element of the span of an ℓ-torsion basis with its coordinates"""
    coords = {ctx.identity: ()}
    for b in basis:
        extended = {}
        for D, c in coords.items():
            current = D
            for i in range(ell):
                extended[current] = c + (i,)
                current = jc_add(ctx, current, b)
        coords = extended
    if len(coords) != ell ** len(basis):
        raise ValueError(f"{len(basis)} classes are not independent modulo {ell}")
    return coords


@dataclass
class FrobeniusMatrix:
    """Matrix of φ_m = (q^m-power Frobenius) on the span of a basis, over ℤ/ℓℤ

    :param matrix: Column j holds the coordinates of φ_m(basis[j])
    :param charpoly: Characteristic polynomial mod ℓ, leading coefficient first
    """

    ell: int
    m: int
    basis: list[MumfordDivisor]
    matrix: list[list[int]]
    charpoly: tuple[int, ...]
    det: int

    def matches(self, Pm: WeilPolynomial) -> bool:
        """Characteristic polynomial ≡ P_m and det ≡ q^{2m} (mod ℓ)"""
        expected = tuple(c % self.ell for c in reversed(Pm.coefficients))
        return self.charpoly == expected and self.det == pow(Pm.field_size, 2, self.ell)

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "m": self.m,
            "matrix": self.matrix,
            "charpoly": list(self.charpoly),
            "det": self.det,
        }


def frobenius_matrix(
    ctx: JacobianContext, ell: int, m: int, basis: Sequence[MumfordDivisor]
) -> FrobeniusMatrix:
    """Matrix of the q^m-power Frobenius on the span of ``basis`` inside ``ctx``

    :raises BasisNotInvariant: Frobenius moves a basis element out of the span
    """
    coords = span_coordinates(ctx, basis, ell)
    r = len(basis)
    columns = []
    for b in basis:
        image = jc_frobenius(ctx, b, m)
        if image not in coords:
            raise BasisNotInvariant(f"Frobenius image {image} of {b} leaves the span")
        columns.append(coords[image])
    matrix = [[columns[j][i] for j in range(r)] for i in range(r)]
    if r == 0:
        charpoly, det = (1,), 1
    else:
        M = matrix_mod(matrix, ell)
        charpoly = tuple(int(c) % ell for c in M.charpoly())
        det = int(M.det()) % ell
    logger.debug("Frobenius^%s on %s-torsion span of rank %s: %s", m, ell, r, matrix)
    return FrobeniusMatrix(ell, m, list(basis), matrix, charpoly, det)


def full_embedding_degree_measured(
    C: CurveModel, ell: int, cap: int = DEFAULT_EMBEDDING_CAP, seed: int = 0
) -> int:
    """Least κ <= cap with 𝒥_C[ℓ] ⊆ 𝒥_C(𝔽_{q^κ}), trying multiples of the embedding degree

    :raises ExceedsCap: No such κ up to ``cap`` or within the working-field limits
    """
    if C.q % ell == 0:
        raise EllDividesQ(f"ℓ = {ell} divides q = {C.q}")
    k = embedding_degree(C.q, ell)
    for kappa in range(k, cap + 1, k):
        try:
            rank = ell_torsion_rank(C, ell, kappa, seed)
        except FieldTooLarge as err:
            raise ExceedsCap(f"Full {ell}-torsion not reached before {err}") from err
        logger.debug("rank J(F_%s^%s)[%s] = %s", C.q, kappa, ell, rank)
        if rank == 4:
            return kappa
    raise ExceedsCap(f"Full {ell}-torsion of {C} not rational within degree {cap}")


@dataclass
class EigenspaceSplit:
    """U = 𝒥_C(𝔽_q)[ℓ] and V = ker(φ - q) inside 𝒥_C(𝔽_{q^k})[ℓ]"""

    ctx: JacobianContext
    ell: int
    u_basis: list[MumfordDivisor]
    v_basis: list[MumfordDivisor]
    sum_rank: int
    total_rank: int

    @property
    def is_direct_sum(self) -> bool:
        """U ∩ V = 0"""
        return len(self.u_basis) + len(self.v_basis) == self.sum_rank


def eigenspace_split(C: CurveModel, ell: int, k: int, seed: int = 0) -> EigenspaceSplit:
    torsion = ell_torsion(C, ell, k, seed)
    ctx = torsion.ctx
    q_mod = C.q % ell
    fixed, eigen = [], []
    for D in torsion.elements:
        image = jc_frobenius(ctx, D, 1)
        if image == D:
            fixed.append(D)
        if image == jc_scalar_mul(ctx, D, q_mod):
            eigen.append(D)
    u_basis, _ = _greedy_basis(ctx, fixed)
    v_basis, _ = _greedy_basis(ctx, eigen)
    sum_basis, _ = _greedy_basis(ctx, fixed + eigen)
    return EigenspaceSplit(ctx, ell, u_basis, v_basis, len(sum_basis), torsion.rank)


def two_torsion_splitting_degree(C: CurveModel) -> int:
    """Degree of the splitting field of f over the base field"""
    return math.lcm(*(d for d, _ in poly_distinct_degree_factor(C.f.monic())))


def _prime_power(q: int) -> tuple[int, int]:
    factors = factorint(q)
    if q < 2 or len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, a),) = factors.items()
    return int(p), int(a)


def search_curves(
    q: int,
    match: Union[WeilPolynomial, Callable[[int, int], bool]],
    limit: int = 1,
) -> list[CurveModel]:
    """Exhaustive search for genus-2 curves over 𝔽_q by their Weil polynomial

    Monic quintics come first, then monic sextics, then sextics with a fixed non-square
    leading coefficient; each family in lexicographic order of (f₀, f₁, …).

    :param q: Field size, odd and at most the search cap
    :param match: Exact Weil polynomial, or a predicate on (s, t)
    :param limit: Stop after this many curves
    """
    p, a = _prime_power(q)
    if q > SEARCH_FIELD_CAP:
        raise FieldTooLargeForSearch(f"q = {q} exceeds the search cap {SEARCH_FIELD_CAP}")
    if p == 2:
        raise EvenCharacteristic(f"q = {q} is even")
    F = field_create(p, a)
    if isinstance(match, WeilPolynomial):
        target = match
        wanted_m1 = q + 1 + target.s

        def accept(curve: CurveModel, m1: int) -> bool:
            if m1 != wanted_m1:
                return False
            P = weil_from_counts(m1, count_points(curve, 2), q)
            return (P.s, P.t) == (target.s, target.t)

    else:

        def accept(curve: CurveModel, m1: int) -> bool:
            P = weil_from_counts(m1, count_points(curve, 2), q)
            return bool(match(P.s, P.t))

    non_square = next(x for x in F.elements() if x and not F.is_square(x))
    families = [(5, 1), (6, 1), (6, non_square)]
    found: list[CurveModel] = []
    for degree, leading in families:
        for low in itertools.product(list(F.elements()), repeat=degree):
            try:
                curve = curve_from_poly(F, UniPoly(F, low + (leading,)))
            except Singular:
                continue
            if accept(curve, count_points(curve, 1)):
                logger.debug("Search hit: %s", curve)
                found.append(curve)
                if len(found) >= limit:
                    return found
    logger.g2_trace("Search over F_%s found %s curves", q, len(found))
    return found
