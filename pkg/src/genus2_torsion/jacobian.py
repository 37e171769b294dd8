__all__ = [
    "JacobianContext",
    "LineFactor",
    "MumfordDivisor",
    "add_with_function",
    "divisor_order",
    "evaluate_factor",
    "jc_add",
    "jc_classes_over",
    "jc_context",
    "jc_enumerate",
    "jc_frobenius",
    "jc_is_valid",
    "jc_neg",
    "jc_random",
    "jc_scalar_mul",
]

import logging
import random
from dataclasses import dataclass
from typing import NamedTuple, Optional

from sympy import factorint

from .algebra import FieldContext, UniPoly, embedding_map, field_create, poly_xgcd
from .const import ENUMERATION_CAP, TABLE_FIELD_CAP
from .curve import CurveModel
from .errors import FieldTooLarge, HintDoesNotAnnihilate, ModelUnsupported, SupportCollision

logger = logging.getLogger(__name__)

# a composition followed by reduction never needs more steps than this
REDUCTION_GUARD = 16


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced representative of a divisor class

    For quintic models the class is E - (deg u)∞ where E is the affine divisor cut out by
    y = v(x) on u(x) = 0. For sextic models with split infinity it is
    E + n∞₊ + (2 - deg u - n)∞₋ - (∞₊ + ∞₋) with 0 <= n <= 2 - deg u.

    :param u: Monic, degree at most 2
    :param v: Degree below deg u, u | v² - f
    :param n: Weight at ∞₊, always 0 for quintic models
    """

    u: UniPoly
    v: UniPoly
    n: int = 0

    @property
    def degree(self) -> int:
        return self.u.degree

    def sort_key(self) -> tuple:
        return (self.u.degree, self.u.sort_key(), self.v.sort_key(), self.n)

    def as_dict(self) -> dict:
        ctx = self.u.ctx
        return {
            "u": [ctx.digits(c) for c in self.u.coeffs],
            "v": [ctx.digits(c) for c in self.v.coeffs],
            "n": self.n,
        }

    def __str__(self) -> str:
        if self.n:
            return f"({self.u!r}, {self.v!r}, n={self.n})"
        return f"({self.u!r}, {self.v!r})"


class LineFactor(NamedTuple):
    """One factor of the function produced by an addition

    ``kind`` "x" stands for poly(x), "y" for y - poly(x); ``exponent`` is +1 or -1.
    """

    kind: str
    poly: UniPoly
    exponent: int


@dataclass(frozen=True)
class JacobianContext:
    """The group 𝒥_C(𝔽_{q^m})

    :param curve: Curve over the base field
    :param m: Degree of the working field over the base field
    :param field: Working field 𝔽_{q^m}
    :param f: Right-hand side with coefficients moved into ``field``
    :param vplus: Polynomial part of y at ∞₊ (sextic models only)
    """

    curve: CurveModel
    m: int
    field: FieldContext
    f: UniPoly
    vplus: Optional[UniPoly] = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def is_sextic(self) -> bool:
        return self.vplus is not None

    @property
    def identity(self) -> MumfordDivisor:
        one, zero = UniPoly.one(self.field), UniPoly.zero(self.field)
        return MumfordDivisor(one, zero, 1 if self.is_sextic else 0)

    def __str__(self) -> str:
        return f"J({self.curve})(F_{self.q})"


def jc_context(curve: CurveModel, m: int = 1) -> JacobianContext:
    """Jacobian of ``curve`` over the degree-``m`` extension of its base field

    :raises FieldTooLarge: Working field beyond the table cap
    :raises ModelUnsupported: Sextic model with non-square leading coefficient
    """
    base = curve.field
    if m < 1 or base.q**m > TABLE_FIELD_CAP:
        raise FieldTooLarge(f"Working field {base.q}^{m} outside 1..{TABLE_FIELD_CAP}")
    work = field_create(base.p, base.a * m)
    embed = embedding_map(base, work)
    f = curve.f.map_coeffs(embed, work)
    if f.degree == 5:
        return JacobianContext(curve, m, work, f)
    root = base.sqrt(curve.f.leading)
    if root is None:
        raise ModelUnsupported(
            f"Leading coefficient of {curve} is not a square in F_{base.q}; "
            "only split-infinity sextic models have group arithmetic"
        )
    return JacobianContext(curve, m, work, f, _polynomial_part(work, f, embed(root)))


def _polynomial_part(F: FieldContext, f: UniPoly, c: int) -> UniPoly:
    """V₊ = cx³ + b₂x² + b₁x + b₀ with deg(f - V₊²) <= 2"""
    two_c_inv = F.inv(F.add(c, c))
    b2 = F.mul(f[5], two_c_inv)
    b1 = F.mul(F.sub(f[4], F.mul(b2, b2)), two_c_inv)
    b0 = F.mul(F.sub(f[3], F.mul(F.add(b2, b2), b1)), two_c_inv)
    return UniPoly(F, (b0, b1, b2, c))


def jc_is_valid(ctx: JacobianContext, D: MumfordDivisor) -> bool:
    u, v = D.u, D.v
    if u.ctx != ctx.field or v.ctx != ctx.field:
        return False
    if u.is_zero() or u.leading != 1 or u.degree > 2 or v.degree >= u.degree:
        return False
    if not ((ctx.f - v * v) % u).is_zero():
        return False
    if ctx.is_sextic:
        return 0 <= D.n <= 2 - u.degree
    return D.n == 0


def _compose(ctx: JacobianContext, D1: MumfordDivisor, D2: MumfordDivisor):
    u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
    d1, e1, e2 = poly_xgcd(u1, u2)
    if d1.is_one():
        d, c1, c2 = d1, UniPoly.one(ctx.field), UniPoly.zero(ctx.field)
    else:
        d, c1, c2 = poly_xgcd(d1, v1 + v2)
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    u = (u1 * u2) // (d * d)
    v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + ctx.f)) // d
    v = v % u
    return u, v, d


def _reduce_quintic(ctx: JacobianContext, u: UniPoly, v: UniPoly, factors: list):
    f = ctx.f
    for _ in range(REDUCTION_GUARD):
        if u.degree <= 2:
            return MumfordDivisor(u, v)
        ut = ((f - v * v) // u).monic()
        factors.append(LineFactor("y", v, 1))
        factors.append(LineFactor("x", ut, -1))
        u, v = ut, (-v) % ut
    raise AssertionError(f"Reduction did not terminate on {ctx}")


def _valuation_plus(ctx: JacobianContext, vp: UniPoly) -> int:
    """Order of y - vp(x) at ∞₊"""
    diff = ctx.vplus - vp
    if diff.is_zero():
        return 3 - (ctx.f - ctx.vplus * ctx.vplus).degree
    return -diff.degree


def _reduce_sextic(ctx: JacobianContext, u: UniPoly, v: UniPoly, w: int, factors: list):
    """Balanced reduction; ``w`` is the weight at ∞₊ shifted by -1"""
    f, vplus = ctx.f, ctx.vplus
    for _ in range(REDUCTION_GUARD):
        d = u.degree
        if d > 2 or w > 1 - d:
            vp = vplus - ((vplus - v) % u)
        elif w < -1:
            vminus = -vplus
            vp = vminus - ((vminus - v) % u)
        else:
            return MumfordDivisor(u, v, w + 1)
        a = _valuation_plus(ctx, vp)
        ut = ((f - vp * vp) // u).monic()
        factors.append(LineFactor("y", vp, 1))
        factors.append(LineFactor("x", ut, -1))
        w = w - a - ut.degree
        u, v = ut, (-vp) % ut
    raise AssertionError(f"Balanced reduction did not terminate on {ctx}")


def add_with_function(
    ctx: JacobianContext, D1: MumfordDivisor, D2: MumfordDivisor
) -> tuple[MumfordDivisor, list[LineFactor]]:
    """Sum of two classes with the function relating the representatives

    :return: (D3, factors) such that D1 + D2 = D3 + div(h), h being the product of the
        factors raised to their exponents
    """
    u, v, d = _compose(ctx, D1, D2)
    factors: list[LineFactor] = []
    if d.degree > 0:
        factors.append(LineFactor("x", d, 1))
    if ctx.is_sextic:
        w = (D1.n - 1) + (D2.n - 1) + d.degree
        result = _reduce_sextic(ctx, u, v, w, factors)
    else:
        result = _reduce_quintic(ctx, u, v, factors)
    return result, factors


def jc_add(ctx: JacobianContext, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    return add_with_function(ctx, D1, D2)[0]


def jc_neg(ctx: JacobianContext, D: MumfordDivisor) -> MumfordDivisor:
    v = (-D.v) % D.u
    if ctx.is_sextic:
        return MumfordDivisor(D.u, v, 2 - D.u.degree - D.n)
    return MumfordDivisor(D.u, v)


def jc_scalar_mul(ctx: JacobianContext, D: MumfordDivisor, n: int) -> MumfordDivisor:
    if n < 0:
        D, n = jc_neg(ctx, D), -n
    result = ctx.identity
    addend = D
    while n:
        if n & 1:
            result = jc_add(ctx, result, addend)
        n >>= 1
        if n:
            addend = jc_add(ctx, addend, addend)
    return result


def jc_frobenius(ctx: JacobianContext, D: MumfordDivisor, power: int = 1) -> MumfordDivisor:
    """Image of D under the q^power Frobenius, q the base field size

    The points at infinity of a split sextic are rational, so ``n`` is kept.
    """
    steps = ctx.curve.field.a * power
    frob = ctx.field.frobenius
    return MumfordDivisor(
        D.u.map_coeffs(lambda c: frob(c, steps)),
        D.v.map_coeffs(lambda c: frob(c, steps)),
        D.n,
    )


def _solve_v(ctx: JacobianContext, u: UniPoly) -> list[UniPoly]:
    """All v with deg v < deg u and u | v² - f, for monic u of degree at most 2"""
    F, f = ctx.field, ctx.f
    if u.degree == 0:
        return [UniPoly.zero(F)]
    if u.degree == 1:
        alpha = F.neg(u[0])
        root = F.sqrt(f(alpha))
        if root is None:
            return []
        return sorted({UniPoly(F, (root,)), UniPoly(F, (F.neg(root),))}, key=UniPoly.sort_key)
    u0, u1 = u[0], u[1]
    r = f % u
    r0, r1 = r[0], r[1]
    candidates = []
    if r1 == 0:
        v0 = F.sqrt(r0)
        if v0 is not None:
            candidates += [UniPoly(F, (v0,)), UniPoly(F, (F.neg(v0),))]
    # w = v1² solves A w² + B w + C = 0
    four = F.from_int(4)
    A = F.sub(F.mul(u1, u1), F.mul(four, u0))
    B = F.sub(F.mul(F.add(r1, r1), u1), F.mul(four, r0))
    C = F.mul(r1, r1)
    if A == 0:
        ws = [] if B == 0 else [F.neg(F.div(C, B))]
    else:
        disc = F.sqrt(F.sub(F.mul(B, B), F.mul(four, F.mul(A, C))))
        if disc is None:
            ws = []
        else:
            two_a_inv = F.inv(F.add(A, A))
            ws = [F.mul(F.add(F.neg(B), disc), two_a_inv), F.mul(F.sub(F.neg(B), disc), two_a_inv)]
    for w in ws:
        v1 = F.sqrt(w) if w else None
        if not v1:
            continue
        for s1 in (v1, F.neg(v1)):
            v0 = F.div(F.add(r1, F.mul(u1, w)), F.add(s1, s1))
            candidates.append(UniPoly(F, (v0, s1)))
    valid = {v for v in candidates if ((f - v * v) % u).is_zero()}
    return sorted(valid, key=UniPoly.sort_key)


def jc_classes_over(ctx: JacobianContext, u: UniPoly) -> list[MumfordDivisor]:
    """Every reduced class whose u-polynomial is ``u``, in canonical order"""
    out = []
    for v in _solve_v(ctx, u):
        if ctx.is_sextic:
            out.extend(MumfordDivisor(u, v, n) for n in range(3 - u.degree))
        else:
            out.append(MumfordDivisor(u, v))
    return out


def _monic_polys(F: FieldContext, degree: int):
    if degree == 0:
        yield UniPoly.one(F)
    elif degree == 1:
        for c0 in F.elements():
            yield UniPoly(F, (c0, 1))
    else:
        for c1 in F.elements():
            for c0 in F.elements():
                yield UniPoly(F, (c0, c1, 1))


def jc_enumerate(ctx: JacobianContext) -> list[MumfordDivisor]:
    """All elements of 𝒥_C(𝔽_{q^m}), sorted by (deg u, u, v, n)

    :raises FieldTooLarge: q^m above the enumeration cap
    """
    if ctx.q > ENUMERATION_CAP:
        raise FieldTooLarge(f"Enumeration over F_{ctx.q} exceeds {ENUMERATION_CAP}")
    elements = []
    for degree in range(3):
        for u in _monic_polys(ctx.field, degree):
            elements.extend(jc_classes_over(ctx, u))
    elements.sort(key=MumfordDivisor.sort_key)
    logger.g2_trace("Enumerated %s classes of %s", len(elements), ctx)
    return elements


def _u_from_index(F: FieldContext, index: int) -> UniPoly:
    if index == 0:
        return UniPoly.one(F)
    index -= 1
    if index < F.q:
        return UniPoly(F, (index, 1))
    c1, c0 = divmod(index - F.q, F.q)
    return UniPoly(F, (c0, c1, 1))


def jc_random(ctx: JacobianContext, seed) -> MumfordDivisor:
    """Uniformly random class

    Every u carries at most four classes, so drawing (u, slot) uniformly and rejecting
    empty slots is uniform on the group.

    :param seed: Integer seed or a ``random.Random`` to draw from
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    F = ctx.field
    total = 1 + F.q + F.q * F.q
    while True:
        u = _u_from_index(F, rng.randrange(total))
        slot = rng.randrange(4)
        classes = jc_classes_over(ctx, u)
        if slot < len(classes):
            return classes[slot]


def divisor_order(ctx: JacobianContext, D: MumfordDivisor, group_order_hint: int) -> int:
    """Exact order of D, peeling the prime factors of a multiple of it"""
    identity = ctx.identity
    if jc_scalar_mul(ctx, D, group_order_hint) != identity:
        raise HintDoesNotAnnihilate(f"{group_order_hint} does not annihilate {D}")
    order = group_order_hint
    for r in factorint(group_order_hint):
        while order % r == 0 and jc_scalar_mul(ctx, D, order // r) == identity:
            order //= r
    return order


def _resultant(E: MumfordDivisor, g: UniPoly) -> int:
    """Product of g over the points of the effective part of E (x-coordinates only)"""
    F = E.u.ctx
    if E.u.degree == 0:
        return 1
    r = g % E.u
    if E.u.degree == 1:
        return r(F.neg(E.u[0]))
    u0, u1 = E.u[0], E.u[1]
    r0, r1 = r[0], r[1]
    value = F.mul(F.mul(r1, r1), u0)
    value = F.sub(value, F.mul(F.mul(r0, r1), u1))
    return F.add(value, F.mul(r0, r0))


def evaluate_factor(factor: LineFactor, E: MumfordDivisor) -> int:
    """Value of x-polynomial or y - v(x) on the affine points of E

    :raises SupportCollision: The factor vanishes at a point of E
    """
    if factor.kind == "x":
        value = _resultant(E, factor.poly)
    else:
        value = _resultant(E, E.v - factor.poly)
    if value == 0:
        raise SupportCollision(f"{factor.kind}-factor {factor.poly!r} meets the support of {E}")
    return value
