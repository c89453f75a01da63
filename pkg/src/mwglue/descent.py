"""Descent classes of rational points and the glued-Jacobian membership test.

A rational point P on y^2 = f maps to the square class of x_P - X in
Q[x]/(f); this is a homomorphism killing doubles.  A point of order 2 maps
to the class that agrees with x_P - X away from its vanishing component,
with the rational component forced by the square-norm condition (it equals
the class of f'(x_P)).  Comparing classes across a gluing decides whether a
point pair is hit by the glued Jacobian's rational points, and an F2 span
computation decides whether a point escapes torsion plus the pushforward
image.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import poly as P
from .arith import (
    Coordinate,
    SquareClassTriple,
    coordinate_from_json,
    coordinate_to_json,
    subgroup_contains,
)
from .ellcurve import ECPoint, EllipticCurve
from .etale import (
    DEFAULT_BOUNDS,
    AlgebraSquareClass,
    CubicEtaleAlgebra,
    NonSquare,
    NonSquareCertificate,
    Square,
    SquareSearchBounds,
    algebra_map,
    has_square_norm,
    is_square,
)
from .glue import GluingData

IN_IMAGE = "in_image"
NOT_IN_IMAGE = "not_in_image"
UNKNOWN = "unknown"
CONTAINED = "contained"
NOT_CONTAINED = "not_contained"


def descent_class(
    curve: EllipticCurve, algebra: CubicEtaleAlgebra, point: ECPoint
) -> AlgebraSquareClass:
    """The image of a rational point in the square classes of Q[x]/(f)."""
    if algebra.f != curve.f_poly():
        raise ValueError("the algebra was not built from the curve's cubic")
    if point.is_infinity:
        return AlgebraSquareClass.of(algebra.one())
    if not curve.contains(point):
        raise ValueError(f"point {point} is not on {curve}")
    if point.y != 0:
        return AlgebraSquareClass.of(algebra.element([point.x, -1]))
    # order 2: x_P - X vanishes in the rational component x - x_P; that
    # component is forced by the square-norm condition to the product of the
    # other components' values at x_P, which is f'(x_P)
    e = point.x
    residues: list = []
    vanish = None
    for i, m in enumerate(algebra.components):
        res = P.mod_poly(P.poly([e, -1]), m)
        if res == P.ZERO:
            vanish = i
            residues.append(None)
        else:
            residues.append(res)
    if vanish is None:
        raise AssertionError("2-torsion point without a vanishing component")
    forced = Fraction(1)
    for i, m in enumerate(algebra.components):
        if i != vanish:
            forced *= P.eval_at(m, e)
    residues[vanish] = P.poly([forced])
    return AlgebraSquareClass.of(algebra.element_from_components(residues))


def transfer_class(gluing: GluingData, cls: AlgebraSquareClass) -> AlgebraSquareClass:
    """Carry a square-norm class across the gluing, F side to E side.

    In the fully split case with matched component orders this acts as the
    identity on class triples.
    """
    if cls.algebra != gluing.Lprime:
        raise ValueError("the class is not over the F-side algebra")
    if not has_square_norm(cls.rep):
        raise ValueError("the class is not in the square-norm kernel")
    return AlgebraSquareClass.of(
        algebra_map(gluing.Lprime, gluing.L, gluing.psi.h, cls.rep)
    )


@dataclass(frozen=True)
class OddCoordinateWitness:
    """A coordinate of (Q*/Q*^2)^3 where a class difference is nontrivial."""

    component: int
    prime: int | None  # None marks the sign coordinate
    ratio: SquareClassTriple

    def validate(self) -> bool:
        c = self.ratio.components[self.component]
        if self.prime is None:
            return c.negative
        return self.prime in c.primes

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "prime": self.prime,
            "ratio": self.ratio.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "OddCoordinateWitness":
        return cls(
            int(data["component"]),
            None if data["prime"] is None else int(data["prime"]),
            SquareClassTriple.from_json(data["ratio"]),
        )


@dataclass(frozen=True)
class MembershipVerdict:
    verdict: str
    certificate: NonSquareCertificate | OddCoordinateWitness | None = None
    bounds: SquareSearchBounds | None = None

    def to_json(self) -> dict:
        cert = None
        if isinstance(self.certificate, NonSquareCertificate):
            cert = {"kind": "non_square", **self.certificate.to_json()}
        elif isinstance(self.certificate, OddCoordinateWitness):
            cert = {"kind": "odd_coordinate", **self.certificate.to_json()}
        return {"verdict": self.verdict, "certificate": cert}

    @classmethod
    def from_json(cls, data) -> "MembershipVerdict":
        cert_data = data.get("certificate")
        cert = None
        if cert_data is not None:
            if cert_data["kind"] == "non_square":
                cert = NonSquareCertificate.from_json(cert_data)
            else:
                cert = OddCoordinateWitness.from_json(cert_data)
        return cls(data["verdict"], cert)


def membership(
    gluing: GluingData,
    point_on_E: ECPoint,
    point_on_F: ECPoint,
    bounds: SquareSearchBounds = DEFAULT_BOUNDS,
) -> MembershipVerdict:
    """Decide whether the pair is in the image of the glued Jacobian's points.

    The pair is in the image exactly when the transferred F-side class equals
    the E-side class, i.e. when their product is trivial.  Split gluings are
    always decided; otherwise the verdict can be Unknown when the squareness
    search exhausts its bounds.
    """
    cp = descent_class(gluing.E, gluing.L, point_on_E)
    cq = descent_class(gluing.F, gluing.Lprime, point_on_F)
    diff = cp * transfer_class(gluing, cq)
    if gluing.is_split:
        tr = diff.triple()
        if tr.is_trivial:
            return MembershipVerdict(IN_IMAGE)
        for i, comp in enumerate(tr.components):
            if comp.negative:
                return MembershipVerdict(
                    NOT_IN_IMAGE, OddCoordinateWitness(i, None, tr)
                )
            if comp.primes:
                return MembershipVerdict(
                    NOT_IN_IMAGE, OddCoordinateWitness(i, comp.primes[0], tr)
                )
        raise AssertionError("nontrivial triple without a nontrivial coordinate")
    decision = is_square(gluing.L, diff.rep, bounds)
    if isinstance(decision, Square):
        return MembershipVerdict(IN_IMAGE)
    if isinstance(decision, NonSquare):
        return MembershipVerdict(NOT_IN_IMAGE, decision.certificate)
    return MembershipVerdict(UNKNOWN, bounds=bounds)


@dataclass(frozen=True)
class ObstructionVerdict:
    status: str
    span: tuple[SquareClassTriple, ...] | None = None
    target: SquareClassTriple | None = None
    witness: tuple[int, ...] | None = None
    certificate: tuple[Coordinate, ...] | None = None
    certificates: tuple[NonSquareCertificate, ...] | None = None
    bounds: SquareSearchBounds | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "span": [t.to_json() for t in self.span] if self.span is not None else None,
            "target": self.target.to_json() if self.target is not None else None,
            "witness": list(self.witness) if self.witness is not None else None,
            "certificate": [coordinate_to_json(c) for c in self.certificate]
            if self.certificate is not None
            else None,
            "certificates": [c.to_json() for c in self.certificates]
            if self.certificates is not None
            else None,
        }

    @classmethod
    def from_json(cls, data) -> "ObstructionVerdict":
        return cls(
            data["status"],
            span=tuple(SquareClassTriple.from_json(t) for t in data["span"])
            if data.get("span") is not None
            else None,
            target=SquareClassTriple.from_json(data["target"])
            if data.get("target") is not None
            else None,
            witness=tuple(data["witness"]) if data.get("witness") is not None else None,
            certificate=tuple(coordinate_from_json(c) for c in data["certificate"])
            if data.get("certificate") is not None
            else None,
        )


def surjectivity_obstruction(
    gluing: GluingData,
    point: ECPoint,
    F_generators,
    include_torsion: bool = True,
    bounds: SquareSearchBounds = DEFAULT_BOUNDS,
) -> ObstructionVerdict:
    """Whether the point's class lies in the span of torsion classes and the
    transferred classes of the supplied F-side generators.

    A not_contained verdict certifies that the point is outside the subgroup
    generated by torsion and the pushforward image; its soundness rests on
    the caller-supplied fact that the generators generate the F-side group.
    """
    target = descent_class(gluing.E, gluing.L, point)
    span: list[AlgebraSquareClass] = []
    if include_torsion:
        for t in gluing.E.torsion_subgroup().generators:
            span.append(descent_class(gluing.E, gluing.L, t))
    for g in F_generators:
        span.append(transfer_class(gluing, descent_class(gluing.F, gluing.Lprime, g)))
    if gluing.is_split:
        triples = tuple(c.triple() for c in span)
        tt = target.triple()
        res = subgroup_contains(triples, tt)
        if res.contained:
            return ObstructionVerdict(CONTAINED, span=triples, target=tt, witness=res.witness)
        return ObstructionVerdict(
            NOT_CONTAINED, span=triples, target=tt, certificate=res.certificate
        )
    k = len(span)
    if k > 12:
        return ObstructionVerdict(UNKNOWN, bounds=bounds)
    certs = []
    unresolved = False
    for mask in range(1 << k):
        cls = target
        for i in range(k):
            if mask >> i & 1:
                cls = cls * span[i]
        decision = is_square(gluing.L, cls.rep, bounds)
        if isinstance(decision, Square):
            witness = tuple(i for i in range(k) if mask >> i & 1)
            return ObstructionVerdict(CONTAINED, witness=witness)
        if isinstance(decision, NonSquare):
            certs.append(decision.certificate)
        else:
            unresolved = True
    if unresolved:
        return ObstructionVerdict(UNKNOWN, bounds=bounds)
    return ObstructionVerdict(NOT_CONTAINED, certificates=tuple(certs))
