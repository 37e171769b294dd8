__all__ = [
    "CurveModel",
    "count_points",
    "curve_dump",
    "curve_from_poly",
    "curve_load",
    "curve_validate",
    "weil_polynomial_of",
]

import json
import logging
import os
from dataclasses import dataclass
from collections.abc import Sequence
from typing import Any, Union

from .algebra import (
    FieldContext,
    UniPoly,
    embedding_map,
    field_create,
    is_irreducible,
    poly_gcd,
    poly_roots,
)
from .const import ROOT_SEARCH_CAP
from .errors import (
    BadDegree,
    CurveFileError,
    EvenCharacteristic,
    FieldTooLarge,
    Genus2TorsionError,
    Singular,
)
from .weil import WeilPolynomial, weil_from_counts

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveModel:
    """Genus-2 curve y² = f(x) over ``field`` with squarefree f of degree 5 or 6

    :param field: Base field 𝔽_q
    :param f: Right-hand side, coefficients in ``field``
    """

    field: FieldContext
    f: UniPoly

    @property
    def model(self) -> str:
        return "quintic" if self.f.degree == 5 else "sextic"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def points_at_infinity(self) -> int:
        """Rational points at infinity over the base field"""
        if self.f.degree == 5:
            return 1
        return 1 + self.field.chi(self.f.leading)

    def __str__(self) -> str:
        return f"y^2 = {self.f!r} over F_{self.field.q}"


def curve_validate(p: int, a: int, coefficients: Sequence[Union[int, list[int]]]) -> CurveModel:
    """Check that y² = f(x) defines a genus-2 curve over 𝔽_{p^a}

    :param p: Odd prime
    :param a: Extension degree of the base field
    :param coefficients: Coefficients of f, constant term first. Each one is either a
        length-``a`` coefficient vector or an int read in the prime field.

    :return: Validated model
    """
    if p == 2:
        raise EvenCharacteristic("Characteristic 2 needs y² + h(x)y = f(x) models")
    field = field_create(p, a)
    vectors = [_decode_coefficient(c, a) for c in coefficients]
    return curve_from_poly(field, UniPoly(field, (field.pack(vec) for vec in vectors)))


def curve_from_poly(field: FieldContext, f: UniPoly) -> CurveModel:
    """Validate an already packed right-hand side over ``field``"""
    if field.p == 2:
        raise EvenCharacteristic("Characteristic 2 needs y² + h(x)y = f(x) models")
    if f.degree not in (5, 6):
        raise BadDegree(f"deg f = {f.degree}, expected 5 or 6")
    if f.degree == 5 and f.leading != 1:
        raise BadDegree("Quintic models must be monic")
    if not poly_gcd(f, f.derivative()).is_one():
        raise Singular(f"{f} has a repeated root")
    return CurveModel(field, f)


def count_points(curve: CurveModel, m: int) -> int:
    """Number of points of the smooth model over 𝔽_{q^m}

    Affine points come from the quadratic character of f over the whole extension,
    points at infinity from the leading coefficient.

    :param curve: Curve model
    :param m: Extension degree, q^m <= ROOT_SEARCH_CAP
    """
    base = curve.field
    work = field_create(base.p, base.a * m)
    if work.q > ROOT_SEARCH_CAP:
        raise FieldTooLarge(f"Point counting over 𝔽_{work.q} exceeds {ROOT_SEARCH_CAP}")
    f = curve.f.map_coeffs(embedding_map(base, work), work)
    total = work.q
    for x in work.elements():
        total += work.chi(f(x))
    if f.degree == 5:
        total += 1
    else:
        total += 1 + work.chi(f.leading)
    logger.g2_trace("#C(F_%s) = %s", work.q, total)
    return total


def weil_polynomial_of(curve: CurveModel) -> WeilPolynomial:
    return weil_from_counts(count_points(curve, 1), count_points(curve, 2), curve.q)


def _decode_coefficient(raw: Any, a: int) -> list[int]:
    if isinstance(raw, int):
        return [raw] + [0] * (a - 1)
    if isinstance(raw, list) and len(raw) == a and all(isinstance(c, int) for c in raw):
        return raw
    raise CurveFileError(f"Coefficient {raw!r} is not an int or a list of {a} ints")


def curve_load(source: Union[str, os.PathLike, dict[str, Any]]) -> CurveModel:
    """Read a curve file

    The JSON object has keys ``p``, ``a``, ``f`` (coefficient vectors, constant term
    first) and optionally ``modulus`` and ``model``. Coefficients given relative to a
    non-canonical modulus are moved into the canonical field.

    :param source: Path to the JSON file or the already decoded object
    """
    if isinstance(source, dict):
        data = source
    else:
        try:
            with open(source) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise CurveFileError(f"Unable to read curve file {source}: {err}") from err
    try:
        p, a, raw_f = data["p"], data.get("a", 1), data["f"]
    except (KeyError, TypeError) as err:
        raise CurveFileError(f"Curve file misses {err}") from err
    if not isinstance(raw_f, list):
        raise CurveFileError("'f' must be a list of coefficients")
    field = field_create(p, a)
    vectors = [_decode_coefficient(c, a) for c in raw_f]
    modulus = data.get("modulus")
    if modulus is not None and tuple(modulus) != field.modulus:
        to_canonical = _modulus_converter(field, modulus)
        coeffs = [to_canonical(vec) for vec in vectors]
    else:
        coeffs = [field.pack(vec) for vec in vectors]
    curve = curve_from_poly(field, UniPoly(field, coeffs))
    declared = data.get("model")
    if declared is not None and declared != curve.model:
        raise CurveFileError(f"Declared model {declared!r} but deg f = {curve.f.degree}")
    logger.debug("Loaded %s", curve)
    return curve


def _modulus_converter(field: FieldContext, modulus: list[int]):
    prime = field_create(field.p, 1)
    given = UniPoly(prime, [c % field.p for c in modulus])
    if given.degree != field.a or given.leading != 1 or not is_irreducible(given):
        raise CurveFileError(f"Modulus {modulus} is not monic irreducible of degree {field.a}")
    try:
        root = poly_roots(UniPoly(field, given.coeffs))[0].value
    except Genus2TorsionError as err:
        raise CurveFileError(f"Cannot convert modulus {modulus}: {err}") from err

    def convert(vec: list[int]) -> int:
        acc = 0
        for c in reversed(vec):
            acc = field.add(field.mul(acc, root), c % field.p)
        return acc

    return convert


def curve_dump(curve: CurveModel) -> dict[str, Any]:
    """Curve-file object for ``curve``, relative to the canonical modulus"""
    field = curve.field
    return {
        "p": field.p,
        "a": field.a,
        "modulus": list(field.modulus),
        "model": curve.model,
        "f": [field.digits(c) for c in curve.f.coeffs],
    }
