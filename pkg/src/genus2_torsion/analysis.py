__all__ = [
    "Branch",
    "Congruence",
    "NondegeneracyCertificate",
    "Shape",
    "SupersingularCase",
    "SupersingularFamily",
    "SupersingularReport",
    "TorsionReport",
    "classify_supersingular",
    "classify_torsion",
    "nondegeneracy_certificate",
    "supersingular_bounds",
    "supersingular_report",
    "two_torsion_field",
]

import logging
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional

from .errors import (
    CongruenceFailure,
    EllDividesQ,
    EllDoesNotDivideOrder,
    EllExceptional,
    EllTooSmall,
    EvenCharacteristic,
    OrderOdd,
    PreconditionViolated,
    RankBoundNotApplicable,
)
from .weil import (
    FullEmbeddingDegree,
    Ramification,
    WeilPolynomial,
    embedding_degree,
    frobenius_power,
    symbolic_full_embedding_degree,
    trace_divisible_weil_number,
)

logger = logging.getLogger(__name__)


class Shape(str, Enum):
    TRIVIAL = "trivial"
    CYCLIC = "cyclic"
    BICYCLIC = "bicyclic"
    FULL = "full"
    BOUNDED_BY_2 = "bounded-by-2"
    INCONCLUSIVE = "inconclusive"


class Branch(str, Enum):
    """Which structure result decided a TorsionReport"""

    TRACE_COPRIME = "trace-coprime"
    RATIONAL_WEIL_NUMBER = "rational-weil-number"
    IRRATIONAL_WEIL_NUMBER = "irrational-weil-number"
    ORACLE_NEEDED = "oracle-needed"


@dataclass
class TorsionReport:
    """Symbolic description of 𝒥_C(𝔽_{q^m})[ℓ]

    :param ell: The prime ℓ
    :param m: Extension degree over the base field
    :param rank: Exact ℤ/ℓℤ-rank, when known
    :param rank_bound: Upper bound on the rank
    :param shape: Shape tag
    :param k: Embedding degree of q modulo ℓ
    :param kappa: Full embedding degree relative to the base field
    :param branch: Result applied
    :param hypotheses: Which facts about ℓ, τ and the Weil numbers were used
    """

    ell: int
    m: int
    rank: Optional[int]
    rank_bound: int
    shape: Shape
    k: int
    kappa: FullEmbeddingDegree
    branch: Branch
    hypotheses: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def inconclusive(self) -> bool:
        return self.shape is Shape.INCONCLUSIVE

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "m": self.m,
            "rank": self.rank,
            "rank_bound": self.rank_bound,
            "shape": self.shape.value,
            "k": self.k,
            "kappa": self.kappa.as_dict(),
            "branch": self.branch.value,
            "hypotheses": dict(self.hypotheses),
            "notes": list(self.notes),
        }


def _check_ell(P: WeilPolynomial, ell: int) -> None:
    if ell % 2 == 0:
        raise PreconditionViolated(f"ℓ = {ell} must be odd")
    if P.q % ell == 0:
        raise PreconditionViolated(f"ℓ = {ell} divides q = {P.q}")
    if P(1) % ell:
        raise PreconditionViolated(f"ℓ = {ell} does not divide |J(F_q)| = {P(1)}")


def classify_torsion(P: WeilPolynomial, ell: int, m: int = 1) -> TorsionReport:
    """Rank and shape of 𝒥_C(𝔽_{q^m})[ℓ] from the base Weil polynomial alone

    :param P: Weil polynomial over the base field
    :param ell: Odd prime dividing P(1), not dividing q
    :param m: Extension degree

    :raises PreconditionViolated: ℓ even, ℓ | q or ℓ ∤ P(1)
    :raises RankBoundNotApplicable: ℓ | q - 1 while ℓ ∤ 4τ
    """
    if P.m != 1:
        raise PreconditionViolated(f"Expected a base-field Weil polynomial, got power {P.m}")
    _check_ell(P, ell)
    q = P.q
    Pm = frobenius_power(P, m)
    qm = Pm.field_size
    if Pm(1) % ell:
        raise CongruenceFailure(f"ℓ = {ell} divides P(1) but not P_{m}(1) = {Pm(1)}")
    k = embedding_degree(q, ell)
    kappa = symbolic_full_embedding_degree(P, ell)
    hypotheses = {
        "ell_divides_four_tau": Pm.four_tau % ell == 0,
        "ell_divides_base_four_tau": P.four_tau % ell == 0,
        "unramified": None,
        "weil_number_rational": None,
    }
    notes: list[str] = []

    def report(rank, bound, shape, branch):
        result = TorsionReport(ell, m, rank, bound, shape, k, kappa, branch, hypotheses, notes)
        logger.debug(
            "classify_torsion(%s, ℓ=%s, m=%s): %s via %s", P, ell, m, shape.value, branch.value
        )
        return result

    if P.four_tau % ell == 0:
        data = trace_divisible_weil_number(P, ell)
        if data is None or data[1] is not Ramification.YES:
            hypotheses["unramified"] = None if data is None else data[1].value
            notes.append("ℓ | 4τ without a single unramified Weil-number field")
            return report(None, 4, Shape.INCONCLUSIVE, Branch.ORACLE_NEEDED)
        kind, verdict = data
        hypotheses["unramified"] = verdict.value
        hypotheses["weil_number_rational"] = kind == "rational"
        if kind == "rational":
            return report(4, 4, Shape.FULL, Branch.RATIONAL_WEIL_NUMBER)
        if k == 1:
            notes.append("irrational Weil number while ℓ | q - 1")
            return report(None, 4, Shape.INCONCLUSIVE, Branch.ORACLE_NEEDED)
        if m % k == 0:
            return report(4, 4, Shape.FULL, Branch.IRRATIONAL_WEIL_NUMBER)
        return report(2, 2, Shape.BICYCLIC, Branch.IRRATIONAL_WEIL_NUMBER)

    if Pm.four_tau % ell:
        if (q - 1) % ell == 0:
            raise RankBoundNotApplicable(
                f"ℓ = {ell} divides q - 1 = {q - 1} and does not divide 4τ = {Pm.four_tau}"
            )
        if (qm - 1) % ell == 0:
            return report(2, 2, Shape.BICYCLIC, Branch.TRACE_COPRIME)
        return report(1, 2, Shape.CYCLIC, Branch.TRACE_COPRIME)

    # ℓ divides 4τ only after extending to 𝔽_{q^m}
    data = trace_divisible_weil_number(Pm, ell)
    if data is None or data[1] is not Ramification.YES:
        hypotheses["unramified"] = None if data is None else data[1].value
        notes.append(f"ℓ | 4τ over F_{qm} without a single unramified Weil-number field")
        return report(None, 4, Shape.INCONCLUSIVE, Branch.ORACLE_NEEDED)
    kind, verdict = data
    hypotheses["unramified"] = verdict.value
    hypotheses["weil_number_rational"] = kind == "rational"
    divides = (qm - 1) % ell == 0
    if kind == "rational" and divides:
        return report(4, 4, Shape.FULL, Branch.RATIONAL_WEIL_NUMBER)
    if kind == "irrational" and not divides:
        return report(2, 2, Shape.BICYCLIC, Branch.IRRATIONAL_WEIL_NUMBER)
    notes.append(f"{kind} Weil number contradicts ℓ | {qm} - 1 = {divides}")
    return report(None, 4, Shape.INCONCLUSIVE, Branch.ORACLE_NEEDED)


def two_torsion_field(P: WeilPolynomial, m: int = 1) -> int:
    """Degree D over 𝔽_q with 𝒥_C[2] ⊆ 𝒥_C(𝔽_{q^D})

    :raises EvenCharacteristic: q even
    :raises OrderOdd: |𝒥_C(𝔽_{q^m})| odd
    """
    if P.q % 2 == 0:
        raise EvenCharacteristic(f"q = {P.q} is even")
    Pm = frobenius_power(P, m)
    if Pm(1) % 2:
        raise OrderOdd(f"|J(F_{Pm.field_size})| = {Pm(1)} is odd")
    return 4 * m if Pm.s % 2 == 0 else 6 * m


@dataclass(frozen=True)
class NondegeneracyCertificate:
    """Claim that the Weil pairing is non-degenerate on 𝒥_C(𝔽_{q^k})[ℓ]

    When ℓ ∤ 4τ the ℓ-torsion over 𝔽_{q^k} splits as U ⊕ V with U = 𝒥_C(𝔽_q)[ℓ] and V the
    q-eigenspace of Frobenius, and the pairing is non-degenerate on U × V.
    """

    ell: int
    k: int
    statement: str
    eigenspace_split: bool


def nondegeneracy_certificate(P: WeilPolynomial, ell: int) -> Optional[NondegeneracyCertificate]:
    """Certificate for ℓ odd, ℓ | P(1), ℓ ∤ q, ℓ ∤ q - 1; None outside these hypotheses"""
    q = P.q
    if ell % 2 == 0 or P(1) % ell or q % ell == 0 or (q - 1) % ell == 0:
        return None
    k = embedding_degree(q, ell)
    statement = f"Weil pairing non-degenerate on J(F_{q}^{k})[{ell}] x J(F_{q}^{k})[{ell}]"
    return NondegeneracyCertificate(ell, k, statement, P.four_tau % ell != 0)


CASE_LABELS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX")


class SupersingularFamily(str, Enum):
    """Shapes of supersingular quartic Weil polynomials, named after P"""

    X4_PLUS_Q2 = "x4+q2"
    X4_PLUS_QX2_PLUS_Q2 = "x4+qx2+q2"
    X4_MINUS_QX2_PLUS_Q2 = "x4-qx2+q2"
    SQRT_Q_TRACE = "trace-sqrt-q"
    SQRT_5Q_TRACE = "trace-sqrt-5q"
    SQRT_2Q_TRACE = "trace-sqrt-2q"
    SQUARE_X2_MINUS_Q = "(x2-q)^2"
    SQUARE_X2_PLUS_Q = "(x2+q)^2"
    SQUARE_X2_SQRT_Q = "(x2+-sqrt(q)x+q)^2"

    @property
    def label(self) -> str:
        """Roman-numeral case label, I to IX in declaration order"""
        return CASE_LABELS[list(SupersingularFamily).index(self)]


@dataclass(frozen=True)
class SupersingularCase:
    """A supersingular family matched by (s, t) together with the side condition it met"""

    family: SupersingularFamily
    s: int
    t: int
    p: int
    a: int
    condition: str

    @property
    def q(self) -> int:
        return self.p**self.a

    @property
    def order(self) -> int:
        q = self.q
        return 1 + self.s + self.t + self.s * q + q * q


def _scaled_sqrt(s: int, factor: int, q: int) -> bool:
    """s² = factor·q with s ≠ 0"""
    return s != 0 and s * s == factor * q and math.isqrt(factor * q) ** 2 == factor * q


def classify_supersingular(s: int, t: int, p: int, a: int) -> Optional[SupersingularCase]:
    """Match (s, t) against the supersingular families and their side conditions

    A match means the pair is consistent with a supersingular Jacobian over 𝔽_{p^a}; it is
    not a proof that any particular curve is supersingular.
    """
    q = p**a
    odd, even = a % 2 == 1, a % 2 == 0
    rows = [
        (
            SupersingularFamily.X4_PLUS_Q2,
            s == 0 and t == 0,
            (odd and p != 2) or (even and p % 8 != 1),
            "a odd, p != 2, or a even, p != 1 mod 8",
        ),
        (SupersingularFamily.X4_PLUS_QX2_PLUS_Q2, s == 0 and t == q, odd, "a odd"),
        (
            SupersingularFamily.X4_MINUS_QX2_PLUS_Q2,
            s == 0 and t == -q,
            (odd and p != 3) or (even and p % 12 != 1),
            "a odd, p != 3, or a even, p != 1 mod 12",
        ),
        (
            SupersingularFamily.SQRT_Q_TRACE,
            t == q and _scaled_sqrt(s, 1, q),
            even and p % 5 != 1,
            "a even, p != 1 mod 5",
        ),
        (
            SupersingularFamily.SQRT_5Q_TRACE,
            t == 3 * q and _scaled_sqrt(s, 5, q),
            odd and p == 5,
            "a odd, p = 5",
        ),
        (
            SupersingularFamily.SQRT_2Q_TRACE,
            t == q and _scaled_sqrt(s, 2, q),
            odd and p == 2,
            "a odd, p = 2",
        ),
        (SupersingularFamily.SQUARE_X2_MINUS_Q, s == 0 and t == -2 * q, odd, "a odd"),
        (
            SupersingularFamily.SQUARE_X2_PLUS_Q,
            s == 0 and t == 2 * q,
            even and p % 4 == 1,
            "a even, p = 1 mod 4",
        ),
        (
            SupersingularFamily.SQUARE_X2_SQRT_Q,
            t == 3 * q and _scaled_sqrt(s, 4, q),
            even and p % 3 == 1,
            "a even, p = 1 mod 3",
        ),
    ]
    for family, pattern, side, condition in rows:
        if pattern and side:
            return SupersingularCase(family, s, t, p, a, condition)
    return None


@dataclass(frozen=True)
class Congruence:
    """One congruence claim modulo ℓ and whether it holds"""

    statement: str
    holds: bool


@dataclass
class SupersingularReport:
    """Claims about ℓ-torsion for a supersingular family

    :param exponent: e with 𝒥_C[ℓ] ⊆ 𝒥_C(𝔽_{q^e}), None when no claim is made
    :param shape: "cyclic" or "bicyclic" for 𝒥_C(𝔽_q)[ℓ], None when no claim is made
    :param exceptional: ℓ is the family's excluded prime and only reduced claims remain
    """

    case: SupersingularCase
    ell: int
    exponent: Optional[int]
    shape: Optional[str]
    congruences: list[Congruence] = field(default_factory=list)
    exceptional: bool = False

    def as_dict(self) -> dict:
        return {
            "case": self.case.family.value,
            "label": self.case.family.label,
            "s": self.case.s,
            "t": self.case.t,
            "condition": self.case.condition,
            "ell": self.ell,
            "exponent": self.exponent,
            "shape": self.shape,
            "congruences": [asdict(c) for c in self.congruences],
            "exceptional": self.exceptional,
        }


def _claims(family: SupersingularFamily, q: int, ell: int):
    """(congruences, exponent, shape, excluded prime) of a family"""

    def cong(text: str, lhs: int, rhs: int = 1, negate: bool = False) -> tuple[str, bool]:
        holds = (lhs - rhs) % ell == 0
        return text, holds != negate

    F = SupersingularFamily
    if family is F.X4_PLUS_Q2:
        return [cong("-q^2 = 1", -q * q), cong("q^4 = 1", q**4)], 4, "cyclic", 2
    if family is F.X4_PLUS_QX2_PLUS_Q2:
        claims = [cong("q^3 = 1", q**3)]
        if ell != 3:
            claims.append(cong("q != 1", q, negate=True))
        return claims, 6, "cyclic", None
    if family is F.X4_MINUS_QX2_PLUS_Q2:
        return [cong("-q^3 = 1", -(q**3)), cong("q^6 = 1", q**6)], 6, "cyclic", 3
    if family in (F.SQRT_Q_TRACE, F.SQRT_5Q_TRACE):
        return [cong("q != 1", q, negate=True), cong("q^5 = 1", q**5)], 10, "cyclic", None
    if family is F.SQRT_2Q_TRACE:
        return [cong("-q^6 = 1", -(q**6)), cong("q^12 = 1", q**12)], 24, "cyclic", None
    if family is F.SQUARE_X2_MINUS_Q:
        return [cong("q = 1", q)], 2, "bicyclic", 2
    if family is F.SQUARE_X2_PLUS_Q:
        return [cong("-q = 1", -q), cong("q^2 = 1", q * q)], 2, "bicyclic", 2
    if ell == 3:
        return [], None, None, 3
    return [cong("q != 1", q, negate=True), cong("q^3 = 1", q**3)], 3, "bicyclic", 3


def supersingular_report(
    case: SupersingularCase, q: int, ell: int, strict: bool = False
) -> SupersingularReport:
    """Congruences and torsion claims of ``case`` at ℓ, each congruence checked

    :param strict: Raise EllExceptional instead of reporting reduced claims

    :raises CongruenceFailure: A claimed congruence does not hold
    """
    if q != case.q:
        raise PreconditionViolated(f"q = {q} does not match the case's field size {case.q}")
    if q % ell == 0:
        raise EllDividesQ(f"ℓ = {ell} divides q = {q}")
    if case.order % ell:
        raise EllDoesNotDivideOrder(f"ℓ = {ell} does not divide P(1) = {case.order}")
    pairs, exponent, shape, excluded = _claims(case.family, q, ell)
    congruences = [Congruence(text, holds) for text, holds in pairs]
    failed = [c.statement for c in congruences if not c.holds]
    if failed:
        raise CongruenceFailure(f"{case.family.value} at q = {q}, ℓ = {ell}: {failed} fail")
    exceptional = excluded == ell
    if exceptional:
        if strict:
            raise EllExceptional(f"ℓ = {ell} is excluded for {case.family.value}")
        logger.warning("ℓ = %s is excluded for %s; reporting reduced claims", ell, case.family)
        if case.family is not SupersingularFamily.SQUARE_X2_SQRT_Q:
            shape = None
    return SupersingularReport(case, ell, exponent, shape, congruences, exceptional)


def supersingular_bounds(case: SupersingularCase, q: int, ell: int) -> tuple[int, int]:
    """(full-torsion field exponent, base-field rank bound) for ℓ > 3

    :raises EllTooSmall: ℓ <= 3
    """
    if ell <= 3:
        raise EllTooSmall(f"ℓ = {ell} must exceed 3")
    report = supersingular_report(case, q, ell)
    if report.exponent is None or report.exponent > 24:
        raise CongruenceFailure(f"Exponent {report.exponent} of {case.family.value} exceeds 24")
    return report.exponent, 2
