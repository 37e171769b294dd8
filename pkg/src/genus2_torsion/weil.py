__all__ = [
    "FullEmbeddingDegree",
    "ModFactorization",
    "Ramification",
    "WeilNumberDescription",
    "WeilPolynomial",
    "embedding_degree",
    "frobenius_power",
    "is_unramified",
    "is_weil_polynomial",
    "jacobian_order",
    "quadratic_field_discriminant",
    "rational_factorization",
    "real_weil_polynomial",
    "reduce_and_factor_mod",
    "sigma_tau",
    "symbolic_full_embedding_degree",
    "trace_divisible_weil_number",
    "weil_from_counts",
    "weil_numbers",
]

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from sympy import Matrix, Poly, discriminant, factorint, primefactors

from .algebra import (
    X,
    IntPoly,
    UniPoly,
    field_create,
    mult_order_mod,
    poly_distinct_degree_factor,
    poly_roots,
    poly_squarefree_decomposition,
)
from .errors import (
    CountsOutOfRange,
    EllDividesQ,
    EllDoesNotDivideOrder,
    NonIntegralT,
    NotAWeilPolynomial,
    NotPrime,
    Reducible,
)

logger = logging.getLogger(__name__)


class Ramification(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class WeilPolynomial:
    """P_m(X) = X⁴ + sX³ + tX² + s·q^m·X + q^{2m}

    :param q: Size of the base field
    :param s: Cubic coefficient (2σ)
    :param t: Quadratic coefficient
    :param m: Power of Frobenius the polynomial belongs to
    """

    q: int
    s: int
    t: int
    m: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.q < 2 or len(primefactors(self.q)) != 1:
            raise NotPrime(f"{self.q} is not a prime power")
        if self.m < 1:
            raise NotAWeilPolynomial(f"Power index {self.m} must be positive")
        if not is_weil_polynomial(self):
            raise NotAWeilPolynomial(
                f"(s, t) = ({self.s}, {self.t}) fails the Hasse-Weil screen "
                f"for q^m = {self.field_size}"
            )

    @property
    def field_size(self) -> int:
        return self.q**self.m

    @property
    def p(self) -> int:
        return primefactors(self.q)[0]

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Constant term first"""
        qm = self.field_size
        return (qm * qm, self.s * qm, self.t, self.s, 1)

    @property
    def two_sigma(self) -> int:
        return self.s

    @property
    def four_tau(self) -> int:
        return 8 * self.field_size + self.s * self.s - 4 * self.t

    def as_intpoly(self) -> IntPoly:
        return IntPoly(self.coefficients)

    def as_sympy(self) -> Poly:
        return self.as_intpoly().to_sympy()

    def __call__(self, x: int) -> int:
        return self.as_intpoly()(x)

    def __str__(self) -> str:
        return f"{self.as_intpoly()} (q^m = {self.q}^{self.m})"


def is_weil_polynomial(P: WeilPolynomial) -> bool:
    """Exact test that every complex root of P has absolute value q^{m/2}

    The real polynomial h(y) = y² + sy + c, c = t − 2q^m, must have both roots
    real and inside [−2√(q^m), 2√(q^m)].
    """
    qm = P.field_size
    s, c = P.s, P.t - 2 * qm
    if s * s > 16 * qm:
        return False
    if s * s - 4 * c < 0:
        return False
    edge = 4 * qm + c
    return edge >= 0 and edge * edge >= 4 * qm * s * s


def real_weil_polynomial(P: WeilPolynomial) -> IntPoly:
    return IntPoly((P.t - 2 * P.field_size, P.s, 1))


def weil_from_counts(M1: int, M2: int, q: int) -> WeilPolynomial:
    """Weil polynomial from the point counts over 𝔽_q and 𝔽_{q²}

    Uses M1 = q + 1 + s and M2 = q² + 1 − s² + 2t.

    :param M1: #C(𝔽_q)
    :param M2: #C(𝔽_{q²})
    :param q: Base field size
    """
    s = M1 - (q + 1)
    if s * s > 16 * q:
        raise CountsOutOfRange(f"M1 = {M1} violates the Hasse-Weil bound over 𝔽_{q}")
    twice_t = M2 - (q * q + 1) + s * s
    if twice_t % 2:
        raise NonIntegralT(f"M2 = {M2} has the wrong parity for M1 = {M1}")
    try:
        return WeilPolynomial(q, s, twice_t // 2)
    except NotAWeilPolynomial as err:
        raise CountsOutOfRange(f"Counts ({M1}, {M2}) over 𝔽_{q}: {err}") from err


def jacobian_order(P: WeilPolynomial) -> int:
    return P(1)


def sigma_tau(P: WeilPolynomial) -> tuple[int, int]:
    return P.two_sigma, P.four_tau


def frobenius_power(P: WeilPolynomial, m: int) -> WeilPolynomial:
    """Characteristic polynomial of Frobenius to the m-th power

    :param P: Weil polynomial of some power index
    :param m: Further power, the result has power index P.m * m
    """
    if m < 1:
        raise ValueError(f"Power {m} must be positive")
    if m == 1:
        return P
    companion = Matrix.companion(P.as_sympy())
    char = (companion**m).charpoly(X).all_coeffs()
    result = WeilPolynomial(P.q, int(char[1]), int(char[2]), P.m * m)
    if tuple(int(c) for c in reversed(char)) != result.coefficients:
        raise AssertionError(f"Power {m} of {P} lost the functional equation: {char}")
    return result


@dataclass(frozen=True)
class ModFactorization:
    """P mod ℓ split into its roots and the part without roots

    :param ell: The prime ℓ
    :param roots: Roots in ℤ/ℓℤ, repeated by multiplicity, ascending
    :param remainder: Squarefree decomposition (multiplicity, coefficients constant
        first) of the root-free cofactor
    """

    ell: int
    roots: tuple[int, ...]
    remainder: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @property
    def is_split(self) -> bool:
        return not self.remainder


def reduce_and_factor_mod(P: WeilPolynomial, ell: int) -> ModFactorization:
    if P.q % ell == 0:
        raise EllDividesQ(f"ℓ = {ell} divides q = {P.q}")
    field_l = field_create(ell, 1)
    reduced = P.as_intpoly().reduce_mod(field_l)
    roots = poly_roots(reduced)
    cofactor = reduced
    for r in roots:
        cofactor = cofactor // UniPoly.linear(field_l, r.value)
    remainder = tuple(
        (mult, part.coeffs) for mult, part in poly_squarefree_decomposition(cofactor)
    )
    return ModFactorization(ell, tuple(sorted(r.value for r in roots)), remainder)


def rational_factorization(P: WeilPolynomial) -> list[tuple[IntPoly, int]]:
    """Factorization of P over ℚ into monic irreducibles with multiplicity"""
    _, factors = P.as_sympy().factor_list()
    out = [(IntPoly.from_sympy(poly), int(mult)) for poly, mult in factors]
    return sorted(out, key=lambda fm: (fm[0].degree, fm[0].coeffs))


@dataclass(frozen=True)
class WeilNumberDescription:
    """One irreducible factor of P, i.e. one Galois orbit of Weil numbers

    :param kind: "rational-integer", "quadratic" or "quartic"
    :param minpoly: Minimal polynomial of the Weil numbers of the orbit
    :param discriminant: Discriminant of ``minpoly``
    :param multiplicity: Exponent of ``minpoly`` in P
    """

    kind: str
    minpoly: IntPoly
    discriminant: int
    multiplicity: int = 1


_KINDS = {1: "rational-integer", 2: "quadratic", 4: "quartic"}


def weil_numbers(P: WeilPolynomial) -> list[WeilNumberDescription]:
    out = []
    for minpoly, mult in rational_factorization(P):
        disc = 1 if minpoly.degree == 1 else int(discriminant(minpoly.to_sympy()))
        kind = _KINDS.get(minpoly.degree, f"degree-{minpoly.degree}")
        out.append(WeilNumberDescription(kind, minpoly, disc, mult))
    return out


def _squarefree_kernel(n: int) -> int:
    sign = -1 if n < 0 else 1
    kernel = 1
    for r, e in factorint(abs(n)).items():
        if e % 2:
            kernel *= r
    return sign * kernel


def quadratic_field_discriminant(minpoly: IntPoly) -> int:
    """Discriminant d_K of ℚ(ω) for an irreducible monic quadratic minimal polynomial"""
    if minpoly.degree != 2:
        raise Reducible(f"{minpoly} is not quadratic")
    c, b, a = minpoly.coeffs
    d0 = _squarefree_kernel(b * b - 4 * a * c)
    return d0 if d0 % 4 == 1 else 4 * d0


def is_unramified(ell: int, minpoly: IntPoly) -> Ramification:
    """Whether ℓ is unramified in ℚ(ω), ω a root of ``minpoly``

    Exact for degree at most 2; for higher degree only ℓ ∤ disc(minpoly) is
    decisive.
    """
    sym = minpoly.to_sympy()
    if minpoly.degree < 1 or not sym.is_irreducible:
        raise Reducible(f"{minpoly} is not irreducible over ℚ")
    if minpoly.degree == 1:
        return Ramification.YES
    if minpoly.degree == 2:
        d_k = quadratic_field_discriminant(minpoly)
        return Ramification.NO if d_k % ell == 0 else Ramification.YES
    if int(discriminant(sym)) % ell:
        return Ramification.YES
    return Ramification.INCONCLUSIVE


def embedding_degree(q: int, ell: int) -> int:
    """Least k with q^k ≡ 1 (mod ℓ)"""
    if q % ell == 0:
        raise EllDividesQ(f"ℓ = {ell} divides q = {q}")
    return mult_order_mod(q % ell, ell)


@dataclass(frozen=True)
class FullEmbeddingDegree:
    """Least κ with 𝒥[ℓ] ⊆ 𝒥(𝔽_{(q^m)^κ}), or the candidates when undecided

    :param exact: κ when decided
    :param candidates: Possible values, a single entry when decided
    :param method: "semisimple", "rational-weil-number", "irrational-weil-number" or
        "candidates"
    """

    exact: Optional[int]
    candidates: tuple[int, ...]
    method: str
    inconclusive: bool = field(default=False)

    def as_dict(self) -> dict:
        return {
            "exact": self.exact,
            "candidates": list(self.candidates),
            "method": self.method,
            "inconclusive": self.inconclusive,
        }


def _order_of_x(modulus: UniPoly) -> int:
    """Multiplicative order of X in 𝔽_ℓ[X]/(modulus) for squarefree modulus, X ∤ modulus"""
    ell = modulus.ctx.p
    bound = 1
    for degree, _ in poly_distinct_degree_factor(modulus):
        bound = math.lcm(bound, ell**degree - 1)
    x = UniPoly.gen(modulus.ctx)
    one = UniPoly.one(modulus.ctx) % modulus
    order = bound
    for r in factorint(bound):
        while order % r == 0 and x.powmod(order // r, modulus) == one:
            order //= r
    return order


def trace_divisible_weil_number(P: WeilPolynomial, ell: int) -> Optional[tuple[str, Ramification]]:
    """Weil-number data used when ℓ | 4τ

    :return: ("rational", ramification) when the Weil numbers are ±q^{m/2},
        ("irrational", ramification) when they generate one quadratic field, None when
        P has no single repeated factor of degree at most 2
    """
    factors = rational_factorization(P)
    degrees = sorted(poly.degree for poly, mult in factors for _ in range(mult))
    if all(d == 1 for d in degrees):
        roots = {-poly.coeffs[0] for poly, _ in factors}
        if len(roots) == 1:
            return "rational", Ramification.YES
        return None
    if len(factors) == 1 and factors[0][0].degree == 2:
        minpoly = factors[0][0]
        return "irrational", is_unramified(ell, minpoly)
    return None


def symbolic_full_embedding_degree(P: WeilPolynomial, ell: int) -> FullEmbeddingDegree:
    """Full embedding degree of ℓ relative to 𝔽_{q^m}, from P alone

    :param P: Weil polynomial (any power index)
    :param ell: Prime dividing P(1), not dividing q
    """
    qm = P.field_size
    if qm % ell == 0:
        raise EllDividesQ(f"ℓ = {ell} divides q = {P.q}")
    if P(1) % ell:
        raise EllDoesNotDivideOrder(f"ℓ = {ell} does not divide P(1) = {P(1)}")
    field_l = field_create(ell, 1)
    reduced = P.as_intpoly().reduce_mod(field_l)
    parts = poly_squarefree_decomposition(reduced)
    if all(mult == 1 for mult, _ in parts):
        kappa = _order_of_x(reduced)
        logger.debug("P mod %s squarefree, κ = %s", ell, kappa)
        return FullEmbeddingDegree(kappa, (kappa,), "semisimple")
    if P.four_tau % ell == 0:
        data = trace_divisible_weil_number(P, ell)
        if data is not None and data[1] is Ramification.YES:
            if data[0] == "rational":
                return FullEmbeddingDegree(1, (1,), "rational-weil-number")
            k = embedding_degree(qm, ell)
            return FullEmbeddingDegree(k, (k,), "irrational-weil-number")
    radical = UniPoly.one(field_l)
    for _, part in parts:
        radical = radical * part
    kappa0 = _order_of_x(radical)
    logger.debug("P mod %s not squarefree, κ ∈ {%s, %s}", ell, kappa0, ell * kappa0)
    return FullEmbeddingDegree(None, (kappa0, ell * kappa0), "candidates", inconclusive=True)
