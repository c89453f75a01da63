"""Elliptic curves y^2 = x^3 + c2 x^2 + c1 x + c0 over Q with exact arithmetic.

Chord-tangent group law, rational 2-torsion, the full torsion subgroup via
Lutz-Nagell candidates on an integral model, the j-invariant, and a naive
point search used for fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import poly as P
from .arith import divisors_from_factorization, factor
from .poly import Poly

# Rational torsion points have order at most 12 (Mazur's bound).
MAZUR_MAX_ORDER = 12


@dataclass(frozen=True)
class ECPoint:
    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("affine points need both coordinates")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def infinity(cls) -> "ECPoint":
        return cls()

    @classmethod
    def affine(cls, x, y) -> "ECPoint":
        return cls(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "ECPoint":
        if self.is_infinity:
            return self
        return ECPoint(self.x, -self.y)

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    def to_json(self):
        if self.is_infinity:
            return "O"
        return {"x": str(self.x), "y": str(self.y)}

    @classmethod
    def from_json(cls, data) -> "ECPoint":
        if data == "O":
            return cls.infinity()
        return cls.affine(Fraction(data["x"]), Fraction(data["y"]))


INFINITY = ECPoint.infinity()


def _point_key(pt: ECPoint):
    return (0, 0, 0) if pt.is_infinity else (1, pt.x, pt.y)


@dataclass(frozen=True)
class TorsionGroup:
    invariants: tuple[int, ...]
    generators: tuple[ECPoint, ...]
    points: tuple[ECPoint, ...]

    @property
    def order(self) -> int:
        return len(self.points)

    def label(self) -> str:
        if not self.invariants:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariants)

    def to_json(self) -> dict:
        return {
            "structure": self.label(),
            "invariants": list(self.invariants),
            "order": self.order,
            "generators": [g.to_json() for g in self.generators],
            "points": [p.to_json() for p in self.points],
        }


@dataclass(frozen=True)
class EllipticCurve:
    c0: Fraction
    c1: Fraction
    c2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c0", Fraction(self.c0))
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))
        if self.disc_f == 0:
            raise ValueError("the cubic has a repeated root; the curve is singular")

    @classmethod
    def from_roots(cls, r1, r2, r3) -> "EllipticCurve":
        r1, r2, r3 = Fraction(r1), Fraction(r2), Fraction(r3)
        return cls(-r1 * r2 * r3, r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3))

    def f_poly(self) -> Poly:
        return (self.c0, self.c1, self.c2, Fraction(1))

    def f_at(self, x) -> Fraction:
        x = Fraction(x)
        return ((x + self.c2) * x + self.c1) * x + self.c0

    def f_derivative_at(self, x) -> Fraction:
        x = Fraction(x)
        return (3 * x + 2 * self.c2) * x + self.c1

    @property
    def disc_f(self) -> Fraction:
        c, b, a = self.c0, self.c1, self.c2
        return 18 * a * b * c - 4 * a**3 * c + a**2 * b**2 - 4 * b**3 - 27 * c**2

    @property
    def discriminant(self) -> Fraction:
        return 16 * self.disc_f

    def __str__(self) -> str:
        return f"y^2 = {P.format_poly(self.f_poly())}"

    def contains(self, pt: ECPoint) -> bool:
        if pt.is_infinity:
            return True
        return pt.y * pt.y == self.f_at(pt.x)

    def _require_on_curve(self, pt: ECPoint):
        if not self.contains(pt):
            raise ValueError(f"point {pt} is not on {self}")

    def add(self, a: ECPoint, b: ECPoint) -> ECPoint:
        self._require_on_curve(a)
        self._require_on_curve(b)
        if a.is_infinity:
            return b
        if b.is_infinity:
            return a
        if a.x == b.x:
            if a.y == -b.y:
                return INFINITY
            m = self.f_derivative_at(a.x) / (2 * a.y)
        else:
            m = (b.y - a.y) / (b.x - a.x)
        x3 = m * m - self.c2 - a.x - b.x
        y3 = m * (a.x - x3) - a.y
        return ECPoint.affine(x3, y3)

    def mul(self, n: int, pt: ECPoint) -> ECPoint:
        if n < 0:
            return self.mul(-n, -pt)
        acc = INFINITY
        base = pt
        while n:
            if n & 1:
                acc = self.add(acc, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return acc

    def two_torsion(self) -> list[ECPoint]:
        """The rational points of order 2, in increasing x order."""
        return [ECPoint.affine(r, 0) for r in P.rational_roots_monic(self.f_poly())]

    def integral_model(self) -> tuple["EllipticCurve", int]:
        """(E', u) with E' integral and (x, y) -> (u^2 x, u^3 y) mapping onto it."""
        u = lcm(self.c2.denominator, self.c1.denominator, self.c0.denominator)
        model = EllipticCurve(self.c0 * u**6, self.c1 * u**4, self.c2 * u**2)
        return model, u

    def torsion_subgroup(self) -> TorsionGroup:
        """The full rational torsion subgroup.

        Lutz-Nagell on the integral model: a torsion point there is integral
        with y = 0 or y^2 dividing the discriminant.  Candidates are kept when
        their small multiples reach O within Mazur's bound while staying
        integral.
        """
        model, u = self.integral_model()
        a, b, c = int(model.c2), int(model.c1), int(model.c0)
        disc = abs(int(model.discriminant))
        half = 1
        for p, e in factor(disc).items():
            half *= p ** (e // 2)
        candidates: set[ECPoint] = set()
        for y in [0] + divisors_from_factorization(factor(half)):
            for x in P.integer_roots_monic_cubic(a, b, c - y * y):
                candidates.add(ECPoint.affine(x, y))
                if y:
                    candidates.add(ECPoint.affine(x, -y))
        torsion = [INFINITY]
        for cand in sorted(candidates, key=_point_key):
            if _integral_order(model, cand) is not None:
                torsion.append(cand)
        back = [
            INFINITY
            if q.is_infinity
            else ECPoint.affine(q.x / u**2, q.y / u**3)
            for q in torsion
        ]
        return _group_structure(self, back)

    def j_invariant(self) -> Fraction:
        c4 = 16 * self.c2**2 - 48 * self.c1
        return c4**3 / self.discriminant

    def search_points(self, bound: int) -> list[ECPoint]:
        """All affine points with x = a/d^2, |a| <= bound, 1 <= d <= bound.

        The parameterization is applied on the integral model, where every
        rational point has an x-coordinate of this shape.
        """
        if bound < 1:
            raise ValueError("bound must be positive")
        model, u = self.integral_model()
        found: set[ECPoint] = set()
        for d in range(1, bound + 1):
            for a in range(-bound, bound + 1):
                if gcd(a, d) != 1:
                    continue
                x = Fraction(a, d * d)
                rhs = model.f_at(x)
                if rhs < 0:
                    continue
                y = P.sqrt_fraction(rhs)
                if y is None:
                    continue
                found.add(ECPoint.affine(x / u**2, y / u**3))
                if y:
                    found.add(ECPoint.affine(x / u**2, -y / u**3))
        return sorted(found, key=_point_key)

    def to_json(self) -> dict:
        return {"f": [str(self.c0), str(self.c1), str(self.c2)]}

    @classmethod
    def from_json(cls, data) -> "EllipticCurve":
        c0, c1, c2 = (Fraction(s) for s in data["f"])
        return cls(c0, c1, c2)


def _integral_order(model: EllipticCurve, pt: ECPoint, cap: int = MAZUR_MAX_ORDER) -> int | None:
    """Order of pt when it is torsion, else None (integral model required)."""
    if pt.is_infinity:
        return 1
    q = pt
    for k in range(1, cap + 1):
        if q.x.denominator != 1 or q.y.denominator != 1:
            return None  # torsion stays integral when a1 = a3 = 0
        q = model.add(q, pt)
        if q.is_infinity:
            return k + 1
    return None


def _group_structure(curve: EllipticCurve, pts: list[ECPoint]) -> TorsionGroup:
    ordered = tuple(sorted(pts, key=_point_key))
    n = len(pts)
    if n == 1:
        return TorsionGroup((), (), ordered)
    orders: dict[ECPoint, int] = {}
    for pt in pts:
        if pt.is_infinity:
            orders[pt] = 1
            continue
        o, q = 1, pt
        while not q.is_infinity:
            q = curve.add(q, pt)
            o += 1
        orders[pt] = o
    two = sorted((pt for pt in pts if not pt.is_infinity and pt.y == 0), key=_point_key)
    if len(two) == 3:
        m = n // 4
        if m == 1:
            return TorsionGroup((2, 2), (two[0], two[1]), ordered)
        g1 = min((pt for pt in pts if orders[pt] == 2 * m), key=_point_key)
        inner = curve.mul(m, g1)  # the unique 2-torsion point inside <g1>
        g2 = min((t for t in two if t != inner), key=_point_key)
        return TorsionGroup((2, 2 * m), (g2, g1), ordered)
    gens = [pt for pt in pts if orders[pt] == n]
    if not gens:
        raise RuntimeError("torsion group is neither cyclic nor of full 2-torsion type")
    return TorsionGroup((n,), (min(gens, key=_point_key),), ordered)
