__all__ = [
    "AnalysisRequest",
    "Mode",
    "ReportEnvelope",
    "auto_ells",
    "cmd_analyze",
    "cmd_curve_verify",
    "cmd_example9",
    "cmd_pairing_check",
    "cmd_search",
    "cmd_ss_classify",
]

import json
import logging
import os
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Optional

from sympy import factorint

from .analysis import (
    Shape,
    classify_supersingular,
    classify_torsion,
    nondegeneracy_certificate,
    supersingular_bounds,
    supersingular_report,
    two_torsion_field,
)
from .const import (
    AUTO_ELL_BOUND,
    ENUMERATION_CAP,
    EXIT_INCONCLUSIVE,
    EXIT_INVALID,
    EXIT_MISMATCH,
    EXIT_PASS,
)
from .curve import CurveModel, curve_dump, curve_load, weil_polynomial_of
from .errors import (
    ExceedsCap,
    Genus2TorsionError,
    Inconclusive,
    InvalidInput,
    MuEllNotInField,
    VerificationFailure,
)
from .jacobian import jc_add, jc_context
from .oracle import (
    eigenspace_split,
    ell_torsion,
    frobenius_matrix,
    full_embedding_degree_measured,
    group_structure,
    search_curves,
    torsion_basis,
    two_torsion_splitting_degree,
)
from .pairing import nondegenerate_on, weil_pairing
from .weil import (
    WeilPolynomial,
    frobenius_power,
    trace_divisible_weil_number,
    weil_numbers,
)

logger = logging.getLogger(__name__)

EXAMPLE9_Q = 3
EXAMPLE9_ELL = 5
EXAMPLE9_S, EXAMPLE9_T = 2, 7


class Mode(str, Enum):
    ANALYZE = "analyze"
    SS_CLASSIFY = "ss-classify"
    CURVE_VERIFY = "curve-verify"
    PAIRING_CHECK = "pairing-check"
    SEARCH = "search"
    EXAMPLE9 = "example9"


@dataclass
class AnalysisRequest:
    """Parameters of one command invocation, echoed in its report"""

    mode: Mode
    p: Optional[int] = None
    a: int = 1
    s: Optional[int] = None
    t: Optional[int] = None
    ell: Optional[int] = None
    m: int = 1
    max_ext: Optional[int] = None
    degree: Optional[int] = None
    limit: Optional[int] = None
    seed: int = 0
    file: Optional[str] = None
    out: Optional[str] = None

    def as_dict(self) -> dict:
        data = asdict(self)
        data["mode"] = self.mode.value
        return data


@dataclass
class ReportEnvelope:
    """Result of a command: request echo, payload blocks, agreement and exit status"""

    request: AnalysisRequest
    weil: Optional[dict] = None
    torsion: list[dict] = field(default_factory=list)
    supersingular: Optional[dict] = None
    oracle: Optional[dict] = None
    pairing: Optional[dict] = None
    curves: list[dict] = field(default_factory=list)
    checks: dict[str, dict] = field(default_factory=dict)
    agreement: Optional[str] = None
    warnings: list[str] = field(default_factory=list)
    error: Optional[dict] = None
    exit_code: int = EXIT_PASS

    def escalate(self, code: int) -> None:
        self.exit_code = max(self.exit_code, code)

    def warn(self, message: str) -> None:
        logger.warning(message)
        self.warnings.append(message)

    def check(self, name: str, expected: Any, observed: Any) -> bool:
        ok = expected == observed
        self.checks[name] = {"expected": expected, "observed": observed, "ok": ok}
        if not ok:
            logger.warning("Check %s failed: expected %s, observed %s", name, expected, observed)
            self.escalate(EXIT_MISMATCH)
        return ok

    def fail(self, code: int, err: Genus2TorsionError) -> None:
        self.error = {"type": type(err).__name__, "message": str(err)}
        self.escalate(code)

    def as_dict(self) -> dict:
        return {
            "request": self.request.as_dict(),
            "weil": self.weil,
            "torsion": self.torsion,
            "supersingular": self.supersingular,
            "oracle": self.oracle,
            "pairing": self.pairing,
            "curves": self.curves,
            "checks": self.checks,
            "agreement": self.agreement,
            "warnings": self.warnings,
            "error": self.error,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_table(self) -> str:
        rows = []

        def walk(prefix: str, value: Any) -> None:
            if isinstance(value, dict) and value:
                for key in sorted(value):
                    walk(f"{prefix}.{key}" if prefix else key, value[key])
            elif isinstance(value, list) and value and isinstance(value[0], dict):
                for i, item in enumerate(value):
                    walk(f"{prefix}[{i}]", item)
            else:
                rows.append((prefix, value))

        walk("", self.as_dict())
        width = max(len(key) for key, _ in rows)
        return "\n".join(f"{key:<{width}}  {value}" for key, value in rows)


def _run(request: AnalysisRequest, body: Callable[[ReportEnvelope], None]) -> ReportEnvelope:
    envelope = ReportEnvelope(request)
    try:
        body(envelope)
    except InvalidInput as err:
        envelope.fail(EXIT_INVALID, err)
    except Inconclusive as err:
        envelope.fail(EXIT_INCONCLUSIVE, err)
    except VerificationFailure as err:
        envelope.fail(EXIT_MISMATCH, err)
    logger.debug("%s finished with exit code %s", request.mode.value, envelope.exit_code)
    return envelope


def _weil_block(P: WeilPolynomial) -> dict:
    return {
        "q": P.q,
        "m": P.m,
        "s": P.s,
        "t": P.t,
        "order": P(1),
        "two_sigma": P.two_sigma,
        "four_tau": P.four_tau,
        "polynomial": str(P),
    }


def auto_ells(P: WeilPolynomial, envelope: Optional[ReportEnvelope] = None) -> list[int]:
    """Odd primes ℓ <= AUTO_ELL_BOUND dividing P(1) and not dividing q"""
    factors = factorint(P(1), limit=AUTO_ELL_BOUND)
    ells = sorted(int(r) for r in factors if 2 < r <= AUTO_ELL_BOUND and P.q % r)
    large = sorted(int(r) for r in factors if r > AUTO_ELL_BOUND)
    if large and envelope is not None:
        envelope.warn(f"Factors {large} of {P(1)} above {AUTO_ELL_BOUND} left unanalyzed")
    return ells


def _classify_into(envelope: ReportEnvelope, P: WeilPolynomial, ell: int, m: int):
    try:
        report = classify_torsion(P, ell, m)
    except Inconclusive as err:
        envelope.warn(f"ℓ = {ell}, m = {m}: {err}")
        envelope.escalate(EXIT_INCONCLUSIVE)
        return None
    if report.inconclusive:
        envelope.warn(f"ℓ = {ell}, m = {m}: symbolic classification needs the oracle")
        envelope.escalate(EXIT_INCONCLUSIVE)
    return report


def cmd_analyze(
    p: int, a: int, s: int, t: int, ell: Optional[int] = None, m: int = 1
) -> ReportEnvelope:
    """Symbolic torsion analysis of a Weil polynomial, no curve needed"""
    request = AnalysisRequest(Mode.ANALYZE, p=p, a=a, s=s, t=t, ell=ell, m=m)

    def body(envelope: ReportEnvelope) -> None:
        P = WeilPolynomial(p**a, s, t)
        envelope.weil = _weil_block(frobenius_power(P, m))
        ells = [ell] if ell is not None else auto_ells(P, envelope)
        if not ells:
            envelope.warn(f"No odd prime ℓ <= {AUTO_ELL_BOUND} divides {P(1)}")
        for r in ells:
            report = _classify_into(envelope, P, r, m)
            if report is not None:
                envelope.torsion.append(report.as_dict())
        if P.q % 2 and frobenius_power(P, m)(1) % 2 == 0:
            envelope.checks["two_torsion_field"] = {"degree": two_torsion_field(P, m)}

    return _run(request, body)


def cmd_ss_classify(p: int, a: int, s: int, t: int, ell: Optional[int] = None) -> ReportEnvelope:
    """Match (s, t) against the supersingular families; with ℓ, check the family's claims"""
    request = AnalysisRequest(Mode.SS_CLASSIFY, p=p, a=a, s=s, t=t, ell=ell)

    def body(envelope: ReportEnvelope) -> None:
        case = classify_supersingular(s, t, p, a)
        if case is None:
            envelope.supersingular = {"case": None, "label": None}
            return
        envelope.supersingular = {
            "case": case.family.value,
            "label": case.family.label,
            "condition": case.condition,
            "order": case.order,
        }
        if ell is None:
            return
        report = supersingular_report(case, case.q, ell)
        envelope.supersingular.update(report.as_dict())
        if report.exceptional:
            envelope.warn(f"ℓ = {ell} is excluded for {case.family.value}: reduced claims")
        if ell > 3:
            exponent, rank_bound = supersingular_bounds(case, case.q, ell)
            envelope.supersingular["bounds"] = {"exponent": exponent, "rank_bound": rank_bound}

    return _run(request, body)


def _oracle_rank(envelope: ReportEnvelope, C: CurveModel, ell: int, m: int, seed: int):
    try:
        torsion = ell_torsion(C, ell, m, seed)
    except (InvalidInput, Inconclusive) as err:
        envelope.warn(f"Oracle unavailable for ℓ = {ell}, m = {m}: {err}")
        return None, None
    if torsion.mode == "statistical":
        envelope.warn(f"ℓ = {ell}, m = {m}: oracle rank from statistical sampling")
    return torsion.rank, torsion.mode


def _verify_curve(envelope: ReportEnvelope, C: CurveModel, ell, max_ext: int, seed: int):
    P = weil_polynomial_of(C)
    envelope.weil = _weil_block(P)
    envelope.curves.append(curve_dump(C))
    ells = [ell] if ell is not None else auto_ells(P, envelope)
    oracle: dict[str, Any] = {}
    statuses = []
    if C.q <= ENUMERATION_CAP:
        try:
            structure = group_structure(C)
        except Inconclusive as err:
            envelope.warn(f"Group structure unavailable: {err}")
        else:
            oracle.update(structure.as_dict())
            statuses.append("agree" if structure.order == P(1) else "mismatch")
    for r in ells:
        for m in range(1, max_ext + 1):
            report = _classify_into(envelope, P, r, m)
            rank, mode = _oracle_rank(envelope, C, r, m, seed)
            entry = report.as_dict() if report is not None else {"ell": r, "m": m}
            entry["oracle_rank"] = rank
            entry["oracle_mode"] = mode
            if report is None or report.rank is None or rank is None:
                entry["agreement"] = "unverified"
            elif report.rank == rank:
                entry["agreement"] = "agree"
            else:
                entry["agreement"] = "mismatch"
            statuses.append(entry["agreement"])
            envelope.torsion.append(entry)
        kappa = None if report is None else report.kappa.exact
        if kappa and C.q**kappa <= ENUMERATION_CAP:
            try:
                measured = full_embedding_degree_measured(C, r, kappa, seed)
            except ExceedsCap as err:
                envelope.warn(f"ℓ = {r}: torsion not full at the predicted κ = {kappa}: {err}")
                measured = None
            oracle.setdefault("kappa", {})[str(r)] = measured
            statuses.append("agree" if measured == kappa else "mismatch")
    if C.q % 2 and P(1) % 2 == 0:
        degree = two_torsion_field(P)
        splitting = two_torsion_splitting_degree(C)
        envelope.checks["two_torsion_field"] = {"degree": degree, "splitting": splitting}
        statuses.append("agree" if degree % splitting == 0 else "mismatch")
    envelope.oracle = oracle
    if "mismatch" in statuses:
        envelope.agreement = "mismatch"
        envelope.escalate(EXIT_MISMATCH)
    elif "unverified" in statuses:
        envelope.agreement = "unverified"
        envelope.escalate(EXIT_INCONCLUSIVE)
    else:
        envelope.agreement = "agree"


def cmd_curve_verify(
    file: str, ell: Optional[int] = None, max_ext: int = 1, seed: int = 0
) -> ReportEnvelope:
    """Compare symbolic classification against the oracle for m = 1..max_ext"""
    request = AnalysisRequest(
        Mode.CURVE_VERIFY, ell=ell, max_ext=max_ext, seed=seed, file=os.fspath(file)
    )

    def body(envelope: ReportEnvelope) -> None:
        _verify_curve(envelope, curve_load(file), ell, max_ext, seed)

    return _run(request, body)


def _pairing_samples(ctx, basis, ell, seed) -> dict:
    """Bilinearity in the first argument and antisymmetry on the basis"""
    bilinear, antisymmetric = True, True
    for x in basis:
        for y in basis:
            e_xy = weil_pairing(ctx, x, y, ell, seed)
            e_yx = weil_pairing(ctx, y, x, ell, seed)
            antisymmetric &= (e_xy * e_yx).is_one()
            for z in basis:
                e_sum = weil_pairing(ctx, jc_add(ctx, x, z), y, ell, seed)
                bilinear &= e_sum == e_xy * weil_pairing(ctx, z, y, ell, seed)
    return {"bilinear": bilinear, "antisymmetric": antisymmetric}


def _pairing_check(envelope: ReportEnvelope, C: CurveModel, ell: int, degree: int, seed: int):
    ctx = jc_context(C, degree)
    if (ctx.q - 1) % ell:
        raise MuEllNotInField(f"ℓ = {ell} does not divide {ctx.q} - 1")
    _, basis = torsion_basis(C, ell, degree, seed)
    verdict = nondegenerate_on(ctx, basis, ell, seed)
    for message in verdict.warnings:
        envelope.warnings.append(message)
    envelope.pairing = verdict.as_dict()
    envelope.pairing["rank"] = len(basis)
    envelope.pairing.update(_pairing_samples(ctx, basis, ell, seed))
    if not (envelope.pairing["bilinear"] and envelope.pairing["antisymmetric"]):
        envelope.escalate(EXIT_MISMATCH)
    P = weil_polynomial_of(C)
    certificate = nondegeneracy_certificate(P, ell) if P(1) % ell == 0 else None
    if certificate is not None and certificate.k == degree:
        envelope.pairing["certificate"] = certificate.statement
        split = eigenspace_split(C, ell, degree, seed)
        envelope.pairing["eigenspace"] = {
            "u_rank": len(split.u_basis),
            "v_rank": len(split.v_basis),
            "sum_rank": split.sum_rank,
            "direct_sum": split.is_direct_sum,
        }
        if not verdict.nondegenerate:
            envelope.check("nondegenerate", True, False)
    if len(basis) == 1:
        envelope.warn("Rank-1 span: the pairing is degenerate by alternation")


def cmd_pairing_check(file: str, ell: int, degree: int, seed: int = 0) -> ReportEnvelope:
    """Weil-pairing non-degeneracy on 𝒥_C(𝔽_{q^degree})[ℓ], with bilinearity samples"""
    request = AnalysisRequest(
        Mode.PAIRING_CHECK, ell=ell, degree=degree, seed=seed, file=os.fspath(file)
    )

    def body(envelope: ReportEnvelope) -> None:
        _pairing_check(envelope, curve_load(file), ell, degree, seed)

    return _run(request, body)


def cmd_search(
    p: int, a: int, s: int, t: int, limit: int = 1, out: Optional[str] = None
) -> ReportEnvelope:
    """Curves over 𝔽_{p^a} with Weil polynomial X⁴ + sX³ + tX² + sqX + q², optionally saved"""
    request = AnalysisRequest(Mode.SEARCH, p=p, a=a, s=s, t=t, limit=limit, out=out)

    def body(envelope: ReportEnvelope) -> None:
        P = WeilPolynomial(p**a, s, t)
        envelope.weil = _weil_block(P)
        curves = search_curves(P.q, P, limit)
        envelope.curves = [curve_dump(C) for C in curves]
        if not curves:
            envelope.warn(f"No genus-2 curve over F_{P.q} has Weil polynomial {P}")
        if out is not None:
            os.makedirs(out, exist_ok=True)
            for i, data in enumerate(envelope.curves):
                with open(os.path.join(out, f"curve-{i}.json"), "w") as fh:
                    json.dump(data, fh, sort_keys=True, indent=2)

    return _run(request, body)


def _example9(envelope: ReportEnvelope, seed: int) -> None:
    ell = EXAMPLE9_ELL
    P = WeilPolynomial(EXAMPLE9_Q, EXAMPLE9_S, EXAMPLE9_T)
    envelope.weil = _weil_block(P)
    curves = search_curves(P.q, P, 1)
    if not envelope.check("curve_found", True, bool(curves)):
        return
    C = curves[0]
    envelope.curves.append(curve_dump(C))
    envelope.check("order", 25, P(1))
    envelope.check("four_tau", 0, P.four_tau)
    numbers = weil_numbers(P)
    envelope.check("weil_number_discriminants", [-11], [w.discriminant for w in numbers])
    helper = trace_divisible_weil_number(P, ell)
    observed = None if helper is None else [helper[0], helper[1].value]
    envelope.check("unramified", ["irrational", "yes"], observed)
    structure = list(group_structure(C).invariant_factors)
    envelope.check("structure", [5, 5], structure)
    report = classify_torsion(P, ell)
    envelope.torsion.append(report.as_dict())
    envelope.check("shape", Shape.BICYCLIC.value, report.shape.value)
    envelope.check("symbolic_kappa", 4, report.kappa.exact)
    ranks = [ell_torsion(C, ell, m, seed).rank for m in range(1, 5)]
    envelope.check("ranks", [2, 2, 2, 4], ranks)
    envelope.check("measured_kappa", 4, full_embedding_degree_measured(C, ell, 8, seed))
    ctx, basis = torsion_basis(C, ell, 4, seed)
    matrix = frobenius_matrix(ctx, ell, 1, basis)
    envelope.check("frobenius_charpoly", True, matrix.matches(P))
    verdict = nondegenerate_on(ctx, basis, ell, seed)
    envelope.pairing = verdict.as_dict()
    envelope.oracle = {"structure": structure, "ranks": ranks, "frobenius": matrix.as_dict()}
    envelope.check("nondegenerate", True, verdict.nondegenerate)
    envelope.agreement = "agree" if envelope.exit_code == EXIT_PASS else "mismatch"


def cmd_example9(seed: int = 0) -> ReportEnvelope:
    """Find a curve over 𝔽₃ with Weil polynomial (X² + X + 3)² and check its 5-torsion"""
    request = AnalysisRequest(Mode.EXAMPLE9, seed=seed)
    return _run(request, lambda envelope: _example9(envelope, seed))
