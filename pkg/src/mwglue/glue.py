"""Gluing data (E, F, psi) and genus-2 cover verification.

A 2-torsion identification is stored as the rational polynomial h with
(alpha, 0) -> (h(alpha), 0); rationality of h is exactly Galois-equivariance
of the identification.  Construction rejects identifications that extend to
a geometric isomorphism of the curves.  Genus-2 covers are verified as exact
polynomial identities; the artifact never derives the genus-2 model itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import poly as P
from .ellcurve import EllipticCurve
from .etale import CubicEtaleAlgebra
from .poly import ONE, ZERO, Poly

ROOTS_NOT_MAPPED = "roots_not_mapped"
NOT_BIJECTIVE = "not_bijective"
GEOMETRIC = "geometric_isomorphism"
MATCHING_INCONSISTENT = "matching_inconsistent"


class GluingError(ValueError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("invalid gluing data: " + ", ".join(self.violations))


@dataclass(frozen=True)
class TwoTorsionIdentification:
    """The 2-torsion identification (alpha, 0) -> (h(alpha), 0).

    In the split case an explicit matching of x-coordinates may be kept
    alongside its interpolating polynomial; the matching order then fixes the
    component order of the two algebras.
    """

    h: Poly
    matching: tuple[tuple[Fraction, Fraction], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "h", P.poly(self.h))
        if P.degree(self.h) > 2:
            raise ValueError("the identification polynomial must have degree <= 2")
        if self.matching is not None:
            pairs = tuple((Fraction(a), Fraction(b)) for a, b in self.matching)
            object.__setattr__(self, "matching", pairs)

    @classmethod
    def from_matching(cls, pairs) -> "TwoTorsionIdentification":
        pts = tuple((Fraction(a), Fraction(b)) for a, b in pairs)
        if len(pts) != 3 or len({a for a, _ in pts}) != 3:
            raise ValueError("a matching needs the three source roots exactly once")
        return cls(P.interpolate(pts), pts)

    def to_json(self) -> list:
        return [str(c) for c in self.h]


def _det3(cols: list[list[Fraction]]) -> Fraction:
    a, b, c = cols
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - b[0] * (a[1] * c[2] - a[2] * c[1])
        + c[0] * (a[1] * b[2] - a[2] * b[1])
    )


def _is_unit_transform(f: Poly, h: Poly) -> bool:
    """Whether 1, h, h^2 span Q[x]/(f), i.e. x -> h(x) is an algebra map onto."""
    cols = []
    cur = ONE
    for _ in range(3):
        cols.append([cur[i] if i < len(cur) else Fraction(0) for i in range(3)])
        cur = P.mod_poly(P.mul(cur, h), f)
    return _det3(cols) != 0


def is_geometric_restriction(E: EllipticCurve, F: EllipticCurve, psi) -> bool:
    """Whether the identification extends to a geometric curve isomorphism.

    On these models any geometric isomorphism acts on x-coordinates by an
    affine map, so psi is geometric exactly when h reduces to degree <= 1
    modulo f.
    """
    return P.degree(P.mod_poly(psi.h, E.f_poly())) <= 1


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[str, ...]


def validate_identification(
    E: EllipticCurve, F: EllipticCurve, psi: TwoTorsionIdentification
) -> ValidationResult:
    """Check root mapping, bijectivity on 2-torsion, and non-geometricity."""
    f, g = E.f_poly(), F.f_poly()
    bad = []
    if P.mod_poly(P.compose(g, psi.h), f) != ZERO:
        bad.append(ROOTS_NOT_MAPPED)
    elif not _is_unit_transform(f, psi.h):
        bad.append(NOT_BIJECTIVE)
    elif is_geometric_restriction(E, F, psi):
        bad.append(GEOMETRIC)
    if not bad and psi.matching is not None:
        for a, b in psi.matching:
            if E.f_at(a) != 0 or F.f_at(b) != 0 or P.eval_at(psi.h, a) != b:
                bad.append(MATCHING_INCONSISTENT)
                break
    return ValidationResult(not bad, tuple(bad))


@dataclass(frozen=True)
class GluingData:
    E: EllipticCurve
    F: EllipticCurve
    psi: TwoTorsionIdentification
    L: CubicEtaleAlgebra
    Lprime: CubicEtaleAlgebra

    @classmethod
    def build(
        cls, E: EllipticCurve, F: EllipticCurve, psi: TwoTorsionIdentification
    ) -> "GluingData":
        res = validate_identification(E, F, psi)
        if not res.ok:
            raise GluingError(res.violations)
        matching = psi.matching
        f, g = E.f_poly(), F.f_poly()
        if matching is None:
            roots = P.rational_roots_monic(f)
            if len(roots) == 3:
                matching = tuple((r, P.eval_at(psi.h, r)) for r in roots)
        if matching is not None:
            L = CubicEtaleAlgebra.from_cubic(f, root_order=[a for a, _ in matching])
            Lp = CubicEtaleAlgebra.from_cubic(g, root_order=[b for _, b in matching])
        else:
            L = CubicEtaleAlgebra.from_cubic(f)
            Lp = CubicEtaleAlgebra.from_cubic(g)
        return cls(E, F, psi, L, Lp)

    @property
    def is_split(self) -> bool:
        return self.L.is_split

    def to_json(self) -> dict:
        return {"E": self.E.to_json(), "F": self.F.to_json(), "h": self.psi.to_json()}

    @classmethod
    def from_json(cls, data) -> "GluingData":
        E = EllipticCurve.from_json(data["E"])
        F = EllipticCurve.from_json(data["F"])
        h = P.poly([Fraction(c) for c in data["h"]])
        return cls.build(E, F, TwoTorsionIdentification(h))


@dataclass(frozen=True)
class GenusTwoCurve:
    """A genus-2 model y^2 = h6(x) with h6 squarefree of degree 5 or 6."""

    h6: Poly

    def __post_init__(self):
        object.__setattr__(self, "h6", P.poly(self.h6))
        if P.degree(self.h6) not in (5, 6):
            raise ValueError("the right-hand side must have degree 5 or 6")
        if not P.is_squarefree(self.h6):
            raise ValueError("the right-hand side must be squarefree")

    def to_json(self) -> dict:
        return {"h6": [str(c) for c in self.h6]}

    @classmethod
    def from_json(cls, data) -> "GenusTwoCurve":
        return cls(P.poly([Fraction(c) for c in data["h6"]]))


@dataclass(frozen=True)
class RationalMap:
    """A rational function num/den with polynomial entries."""

    num: Poly
    den: Poly

    def __post_init__(self):
        object.__setattr__(self, "num", P.poly(self.num))
        object.__setattr__(self, "den", P.poly(self.den))
        if self.den == ZERO:
            raise ValueError("zero denominator")

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    @classmethod
    def from_json(cls, data) -> "RationalMap":
        return cls(
            P.poly([Fraction(c) for c in data["num"]]),
            P.poly([Fraction(c) for c in data["den"]]),
        )


def verify_cover_map(
    C: GenusTwoCurve, target: EllipticCurve, u: RationalMap, v: RationalMap
) -> bool:
    """Whether (x, y) -> (u(x), y*v(x)) maps y^2 = h6 onto Y^2 = f.

    The defining identity f(u) = h6 * v^2 is cleared of denominators and
    checked as an exact polynomial identity.
    """
    f = target.f_poly()
    un, ud = u.num, u.den
    lhs_num = ZERO
    for i, c in enumerate(f):
        term = P.scale(P.mul(P.pow_poly(un, i), P.pow_poly(ud, 3 - i)), c)
        lhs_num = P.add(lhs_num, term)
    lhs = P.mul(lhs_num, P.mul(v.den, v.den))
    rhs = P.mul(P.mul(C.h6, P.mul(v.num, v.num)), P.pow_poly(ud, 3))
    return lhs == rhs


def verify_rescaling(C1: GenusTwoCurve, C2: GenusTwoCurve, c) -> bool:
    """Whether C1 is C2 with y rescaled by c, i.e. h6(C1) = c^2 h6(C2)."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("the rescaling factor must be nonzero")
    return C1.h6 == P.scale(C2.h6, c * c)
