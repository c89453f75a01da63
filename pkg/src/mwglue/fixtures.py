"""Built-in curves, gluing data, and cover maps used by the CLI."""

from __future__ import annotations

from fractions import Fraction

from .ellcurve import ECPoint, EllipticCurve
from .glue import GenusTwoCurve, RationalMap, TwoTorsionIdentification
from .poly import poly

# The bundled counterexample: E: y^2 = x^3 + 5x^2 + 6x + 1 (Mordell-Weil
# group generated by (-2, 1), infinite order) glued to F: y^2 = x^3 - 6x^2 +
# 5x - 1 (trivial Mordell-Weil group) along their 2-torsion by
# (alpha, 0) -> (h(alpha), 0) with h = x^2 + 5x + 6, i.e. alpha -> -1/alpha.
EXAMPLE_E = EllipticCurve(Fraction(1), Fraction(6), Fraction(5))
EXAMPLE_F = EllipticCurve(Fraction(-1), Fraction(5), Fraction(-6))
EXAMPLE_PSI = TwoTorsionIdentification(poly([6, 5, 1]))
EXAMPLE_POINT = ECPoint.affine(-2, 1)

# The glued genus-2 curve y^2 = x^6 - 6x^4 + 5x^2 - 1, its unscaled model
# y^2 = 7^8 g(x^2), and the double covers onto E and F.
_G2 = (-1, 0, 5, 0, -6, 0, 1)
EXAMPLE_C = GenusTwoCurve(poly(_G2))
EXAMPLE_C_UNSCALED = GenusTwoCurve(poly([c * 7**8 for c in _G2]))
EXAMPLE_RESCALE = Fraction(7**4)
COVER_TO_E = (
    RationalMap(poly([-1]), poly([0, 0, 1])),  # u = -1/x^2
    RationalMap(poly([1]), poly([0, 0, 0, 1])),  # v = 1/x^3
)
COVER_TO_F = (
    RationalMap(poly([0, 0, 1]), poly([1])),  # u = x^2
    RationalMap(poly([1]), poly([1])),  # v = 1
)

# Default F for family runs: y^2 = x(x - 1)(x + 3), full rational 2-torsion.
FAMILY_F = EllipticCurve(Fraction(0), Fraction(-3), Fraction(2))
# Generators of the full group F(Q) = Z/4 x Z/2 (rank zero).  Family runs
# that should treat the F-side span as trivial pass an empty tuple instead.
FAMILY_F_GENERATORS = (ECPoint.affine(3, 6), ECPoint.affine(0, 0))


def example_fixtures() -> dict:
    """The default inputs of the bundled example as one mutable mapping."""
    return {
        "E": EXAMPLE_E,
        "F": EXAMPLE_F,
        "psi": EXAMPLE_PSI,
        "P": EXAMPLE_POINT,
        "C": EXAMPLE_C,
        "C_unscaled": EXAMPLE_C_UNSCALED,
        "rescale": EXAMPLE_RESCALE,
        "cover_to_E": COVER_TO_E,
        "cover_to_F": COVER_TO_F,
    }


def load_example_fixtures(data: dict) -> dict:
    """Override the built-in example fixtures from a JSON mapping.

    Recognized keys: E, F, h, P, C, C_unscaled, rescale, cover_to_E,
    cover_to_F.  Missing keys keep their defaults.
    """
    fx = example_fixtures()
    if "E" in data:
        fx["E"] = EllipticCurve.from_json(data["E"])
    if "F" in data:
        fx["F"] = EllipticCurve.from_json(data["F"])
    if "h" in data:
        fx["psi"] = TwoTorsionIdentification(poly([Fraction(c) for c in data["h"]]))
    if "P" in data:
        fx["P"] = ECPoint.from_json(data["P"])
    if "C" in data:
        fx["C"] = GenusTwoCurve.from_json(data["C"])
    if "C_unscaled" in data:
        fx["C_unscaled"] = GenusTwoCurve.from_json(data["C_unscaled"])
    if "rescale" in data:
        fx["rescale"] = Fraction(data["rescale"])
    for key in ("cover_to_E", "cover_to_F"):
        if key in data:
            fx[key] = (
                RationalMap.from_json(data[key]["u"]),
                RationalMap.from_json(data[key]["v"]),
            )
    return fx
