__all__ = [
    "Nondegeneracy",
    "PairingValue",
    "discrete_log_mu",
    "miller_eval",
    "nondegenerate_on",
    "reduced_tate",
    "tate_matrix",
    "weil_pairing",
]

import itertools
import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

from .algebra import FieldContext, FieldElement, matrix_rank_mod
from .const import SUPPORT_RETRIES
from .errors import MuEllNotInField, PreconditionViolated, SupportCollision, TorsionNotRational
from .jacobian import (
    JacobianContext,
    MumfordDivisor,
    add_with_function,
    evaluate_factor,
    jc_add,
    jc_random,
    jc_scalar_mul,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairingValue:
    """An ℓ-th root of unity in the working field

    :param value: The field element
    :param ell: Pairing order
    """

    value: FieldElement
    ell: int

    def is_one(self) -> bool:
        return self.value == 1

    def __mul__(self, other: "PairingValue") -> "PairingValue":
        return PairingValue(self.value * other.value, self.ell)

    def __truediv__(self, other: "PairingValue") -> "PairingValue":
        return PairingValue(self.value / other.value, self.ell)

    def __pow__(self, e: int) -> "PairingValue":
        return PairingValue(self.value**e, self.ell)


def miller_eval(
    ctx: JacobianContext,
    x: MumfordDivisor,
    ell: int,
    y: Sequence[tuple[MumfordDivisor, int]],
) -> FieldElement:
    """Miller function f with div(f) = ℓ·x evaluated at a formal sum of effective divisors

    :param ctx: Jacobian context
    :param x: Class of order ℓ
    :param ell: Order of ``x``
    :param y: Pairs (E, a) meaning the sum of a·E, E effective affine Mumford divisors

    :raises SupportCollision: An intermediate function meets the support of ``y``
    """
    F = ctx.field
    if not y:
        return FieldElement(F, 1)
    num = [1] * len(y)
    den = [1] * len(y)

    def absorb(factors):
        for factor in factors:
            for i, (E, _) in enumerate(y):
                value = evaluate_factor(factor, E)
                if factor.exponent > 0:
                    num[i] = F.mul(num[i], value)
                else:
                    den[i] = F.mul(den[i], value)

    T = x
    for bit in bin(ell)[3:]:
        T, factors = add_with_function(ctx, T, T)
        for i in range(len(y)):
            num[i], den[i] = F.mul(num[i], num[i]), F.mul(den[i], den[i])
        absorb(factors)
        if bit == "1":
            T, factors = add_with_function(ctx, T, x)
            absorb(factors)
    if T != ctx.identity:
        raise PreconditionViolated(f"{x} does not have order dividing {ell}")
    result = 1
    for i, (_, a) in enumerate(y):
        result = F.mul(result, F.pow(F.div(num[i], den[i]), a))
    return FieldElement(F, result)


def _require_mu(ctx: JacobianContext, ell: int) -> None:
    if (ctx.q - 1) % ell:
        raise MuEllNotInField(f"ℓ = {ell} does not divide |F_{ctx.q}^*| = {ctx.q - 1}")


def reduced_tate(
    ctx: JacobianContext,
    x: MumfordDivisor,
    y: MumfordDivisor,
    ell: int,
    seed: Union[int, random.Random] = 0,
) -> PairingValue:
    """Reduced Tate pairing of an ℓ-torsion class with a class modulo ℓ

    y is evaluated through the divisor (y + R) - R for a random class R whose
    representatives have full degree.

    :raises MuEllNotInField: ℓ does not divide the order of the working field's units
    """
    _require_mu(ctx, ell)
    F = ctx.field
    if x == ctx.identity:
        return PairingValue(FieldElement(F, 1), ell)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    exponent = (ctx.q - 1) // ell
    for attempt in range(SUPPORT_RETRIES):
        R = jc_random(ctx, rng)
        shifted = jc_add(ctx, y, R)
        if R.degree != 2 or shifted.degree != 2:
            continue
        try:
            value = miller_eval(ctx, x, ell, [(shifted, 1), (R, -1)])
        except SupportCollision:
            logger.g2_trace("Support collision on attempt %s for %s", attempt, x)
            continue
        return PairingValue(value**exponent, ell)
    raise SupportCollision(f"No disjoint support for ({x}, {y}) in {SUPPORT_RETRIES} attempts")


def weil_pairing(
    ctx: JacobianContext,
    x: MumfordDivisor,
    y: MumfordDivisor,
    ell: int,
    seed: Union[int, random.Random] = 0,
) -> PairingValue:
    """Ratio ê(x, ȳ) / ê(y, x̄) of reduced Tate pairings

    Antisymmetric on 𝒥[ℓ]; non-degenerate when ℓ² does not divide |𝔽^*|.

    :raises TorsionNotRational: x or y is not ℓ-torsion over the working field
    """
    for point in (x, y):
        if jc_scalar_mul(ctx, point, ell) != ctx.identity:
            raise TorsionNotRational(f"{point} is not {ell}-torsion over F_{ctx.q}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return reduced_tate(ctx, x, y, ell, rng) / reduced_tate(ctx, y, x, ell, rng)


def _mu_generator(F: FieldContext, ell: int) -> int:
    return F.pow(F.primitive_element(), (F.q - 1) // ell)


def discrete_log_mu(value: Union[PairingValue, FieldElement], ell: int) -> int:
    """Exponent i with value = ζ^i, ζ = g^{(|𝔽|-1)/ℓ} for the primitive element g"""
    element = value.value if isinstance(value, PairingValue) else value
    F = element.ctx
    zeta = _mu_generator(F, ell)
    z = 1
    for i in range(ell):
        if z == element.value:
            return i
        z = F.mul(z, zeta)
    raise PreconditionViolated(f"{element} is not an {ell}-th root of unity")


def tate_matrix(
    ctx: JacobianContext,
    basis: Sequence[MumfordDivisor],
    ell: int,
    seed: int = 0,
    weil: bool = False,
) -> tuple[list[list[int]], int]:
    """Discrete logs of the pairing over a basis

    :param weil: Pair with the Weil pairing instead of the reduced Tate pairing
    :return: (matrix, rank mod ℓ)
    """
    rng = random.Random(seed)
    pair = weil_pairing if weil else reduced_tate
    rows = [[discrete_log_mu(pair(ctx, x, y, ell, rng), ell) for y in basis] for x in basis]
    return rows, matrix_rank_mod(rows, ell)


@dataclass
class Nondegeneracy:
    """Outcome of a non-degeneracy check

    :param nondegenerate: Every nonzero element of the span pairs non-trivially
    :param witness: A pair with non-trivial pairing, or None
    :param degenerate: A nonzero element pairing trivially with the whole span, or None
    :param gram: Discrete-log matrix of the Weil pairing on the generators
    """

    nondegenerate: bool
    witness: Optional[tuple[MumfordDivisor, MumfordDivisor]] = None
    degenerate: Optional[MumfordDivisor] = None
    gram: list[list[int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "nondegenerate": self.nondegenerate,
            "witness": None if self.witness is None else [d.as_dict() for d in self.witness],
            "degenerate": None if self.degenerate is None else self.degenerate.as_dict(),
            "gram": self.gram,
            "warnings": self.warnings,
        }


def _combine(ctx: JacobianContext, generators, coeffs) -> MumfordDivisor:
    total = ctx.identity
    for c, g in zip(coeffs, generators):
        if c:
            total = jc_add(ctx, total, jc_scalar_mul(ctx, g, c))
    return total


def nondegenerate_on(
    ctx: JacobianContext,
    generators: Sequence[MumfordDivisor],
    ell: int,
    seed: int = 0,
) -> Nondegeneracy:
    """Decide whether the Weil pairing is non-degenerate on the span of ``generators``

    By bilinearity, x = Σ aᵢgᵢ pairs trivially with the whole span iff a·G = 0 for the
    Gram matrix G of discrete logs, so the check runs over every coefficient vector.
    """
    _require_mu(ctx, ell)
    warnings = []
    if (ctx.q - 1) % (ell * ell) == 0:
        message = (
            f"ℓ² divides {ctx.q - 1}: the Tate ratio is a power of the Weil pairing and "
            "may degenerate"
        )
        logger.warning(message)
        warnings.append(message)
    if not generators:
        return Nondegeneracy(True, warnings=warnings)
    gram, rank = tate_matrix(ctx, generators, ell, seed, weil=True)
    r = len(generators)
    for coeffs in itertools.product(range(ell), repeat=r):
        if not any(coeffs):
            continue
        row = [sum(a * gram[i][j] for i, a in enumerate(coeffs)) % ell for j in range(r)]
        if not any(row):
            degenerate = _combine(ctx, generators, coeffs)
            logger.debug("Degenerate element %s (coefficients %s)", degenerate, coeffs)
            return Nondegeneracy(False, degenerate=degenerate, gram=gram, warnings=warnings)
    i, j = next((i, j) for i in range(r) for j in range(r) if gram[i][j])
    logger.debug("Weil pairing non-degenerate on span of rank %s (Gram rank %s)", r, rank)
    return Nondegeneracy(
        True, witness=(generators[i], generators[j]), gram=gram, warnings=warnings
    )
