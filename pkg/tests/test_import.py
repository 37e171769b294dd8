import genus2_torsion


def test_api():
    api_elems = [
        "CurveModel",
        "FieldContext",
        "FrobeniusMatrix",
        "Genus2TorsionError",
        "GroupStructure",
        "JacobianContext",
        "MumfordDivisor",
        "PairingValue",
        "Shape",
        "SupersingularCase",
        "TorsionReport",
        "WeilPolynomial",
        "classify_supersingular",
        "classify_torsion",
        "curve_load",
        "field_create",
        "group_structure",
        "jc_context",
        "search_curves",
        "weil_polynomial_of",
    ]
    assert len(api_elems) == len(genus2_torsion.__all__)
    for elem in api_elems:
        assert hasattr(genus2_torsion, elem)


def test_trace_level():
    import logging

    assert logging.G2_TRACE == logging.DEBUG - 5
    assert hasattr(genus2_torsion.logger, "g2_trace")
