"""Generation and verification of the congruence family of glued curves.

For distinct odd primes l1, l2 and a curve F with full rational 2-torsion,
primes p with p = l1 + 1 (mod l1^2) and p = l2 - 1 (mod l2^2) that occur in
no supplied F-side generator class give curves

    y^2 = x (x + p + 1) (x - p + 1)

whose point (-1, p) escapes torsion plus the pushforward image of the glued
Jacobian.  Every claim is rechecked per instance: the occurrence pattern of
p, l1, l2, nontriviality of the 2-torsion classes, the torsion structure,
the span non-containment, and the j-invariant denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import SquareClassTriple, is_prime, occurs
from .descent import NOT_CONTAINED, ObstructionVerdict, descent_class, surjectivity_obstruction
from .ellcurve import ECPoint, EllipticCurve
from .etale import CubicEtaleAlgebra
from .glue import GluingData, TwoTorsionIdentification


class InvalidFamilyParams(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    l1: int
    l2: int
    F: EllipticCurve
    F_generators: tuple[ECPoint, ...] = ()
    bound: int = 10**6
    count: int = 5

    def validate(self):
        if self.l1 == self.l2:
            raise InvalidFamilyParams("the two primes must be distinct")
        for l in (self.l1, self.l2):
            if l == 2 or not is_prime(l):
                raise InvalidFamilyParams(f"{l} is not an odd prime")
        if self.bound < 3:
            raise InvalidFamilyParams("the search bound must be at least 3")
        if self.count < 1:
            raise InvalidFamilyParams("the instance count must be positive")
        if len(self.F.two_torsion()) != 3:
            raise InvalidFamilyParams("F needs three rational points of order 2")
        for g in self.F_generators:
            if not self.F.contains(g):
                raise InvalidFamilyParams(f"generator {g} is not on F")
        occ = generator_occurring_primes(self)
        for l in (self.l1, self.l2):
            if l in occ:
                raise InvalidFamilyParams(
                    f"{l} occurs in a generator class of F and cannot be used"
                )


def _f_side_algebra(F: EllipticCurve) -> CubicEtaleAlgebra:
    roots = sorted(pt.x for pt in F.two_torsion())
    return CubicEtaleAlgebra.from_cubic(F.f_poly(), root_order=roots)


def generator_occurring_primes(params: FamilyParams) -> frozenset[int]:
    """Primes occurring in the classes of the supplied F-side generators.

    A prime occurs in the group the generator classes span iff it occurs in
    some generator class: valuation parities add over F2, so a prime with
    even parity in every generator has even parity in every product.
    """
    algebra = _f_side_algebra(params.F)
    out: set[int] = set()
    for g in params.F_generators:
        tr = descent_class(params.F, algebra, g).triple()
        for comp in tr.components:
            out.update(comp.primes)
    return frozenset(out)


def _crt(a1: int, m1: int, a2: int, m2: int) -> int:
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    return (a1 + m1 * t) % (m1 * m2)


@dataclass(frozen=True)
class PrimeSearch:
    primes: tuple[int, ...]
    exhausted: bool


def find_primes(params: FamilyParams) -> PrimeSearch:
    """The first `count` primes up to `bound` meeting both congruences and
    occurring in no generator class; `exhausted` flags a partial list."""
    params.validate()
    excluded = generator_occurring_primes(params)
    m1, m2 = params.l1**2, params.l2**2
    residue = _crt(params.l1 + 1, m1, params.l2 - 1, m2)
    out = []
    for n in range(residue, params.bound + 1, m1 * m2):
        if n < 3:
            continue
        if n not in excluded and is_prime(n):
            out.append(n)
            if len(out) == params.count:
                return PrimeSearch(tuple(out), False)
    return PrimeSearch(tuple(out), True)


def curve_for_prime(p: int) -> EllipticCurve:
    return EllipticCurve.from_roots(0, -p - 1, p - 1)


@dataclass(frozen=True)
class FamilyInstance:
    p: int
    curve: EllipticCurve
    P: ECPoint
    P1: ECPoint
    P2: ECPoint
    P3: ECPoint
    class_P: SquareClassTriple
    class_P1: SquareClassTriple
    class_P2: SquareClassTriple
    class_P3: SquareClassTriple

    def marked_points(self) -> dict[str, ECPoint]:
        return {"P": self.P, "P1": self.P1, "P2": self.P2, "P3": self.P3}

    def class_table(self) -> dict[str, SquareClassTriple]:
        return {
            "P": self.class_P,
            "P1": self.class_P1,
            "P2": self.class_P2,
            "P3": self.class_P3,
        }

    def algebra(self) -> CubicEtaleAlgebra:
        return CubicEtaleAlgebra.from_cubic(
            self.curve.f_poly(), root_order=[0, -self.p - 1, self.p - 1]
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "curve": self.curve.to_json(),
            "points": {k: v.to_json() for k, v in self.marked_points().items()},
            "classes": {k: v.to_json() for k, v in self.class_table().items()},
        }


def build_instance(p: int) -> FamilyInstance:
    """The curve for p with its marked points and their descent classes.

    Components are ordered by the marked 2-torsion points, i.e. by the roots
    0, -p-1, p-1 of the cubic.
    """
    if p < 3 or not is_prime(p):
        raise InvalidFamilyParams(f"{p} is not an odd prime")
    curve = curve_for_prime(p)
    algebra = CubicEtaleAlgebra.from_cubic(
        curve.f_poly(), root_order=[0, -p - 1, p - 1]
    )
    marked = ECPoint.affine(-1, p)
    t1, t2, t3 = (ECPoint.affine(x, 0) for x in (0, -p - 1, p - 1))
    classes = [
        descent_class(curve, algebra, q).triple() for q in (marked, t1, t2, t3)
    ]
    return FamilyInstance(p, curve, marked, t1, t2, t3, *classes)


def gluing_for_instance(inst: FamilyInstance, F: EllipticCurve) -> GluingData:
    """Glue the instance curve to F, matching the marked 2-torsion points of
    the instance to F's 2-torsion points in increasing x order."""
    e_roots = [Fraction(0), Fraction(-inst.p - 1), Fraction(inst.p - 1)]
    f_roots = sorted(pt.x for pt in F.two_torsion())
    psi = TwoTorsionIdentification.from_matching(zip(e_roots, f_roots))
    return GluingData.build(inst.curve, F, psi)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"passed": self.passed, "detail": self.detail}


ALLOWED_TORSION = {(2, 2), (2, 6)}


@dataclass(frozen=True)
class InstanceReport:
    p: int
    checks: dict[str, CheckResult]
    obstruction: ObstructionVerdict | None

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "checks": {k: v.to_json() for k, v in self.checks.items()},
            "obstruction": self.obstruction.to_json() if self.obstruction else None,
            "passed": self.all_passed,
        }


def verify_instance(inst: FamilyInstance, params: FamilyParams) -> InstanceReport:
    """Recheck the five instance claims independently of how it was built."""
    curve, p = inst.curve, inst.p
    l1, l2 = params.l1, params.l2
    algebra = inst.algebra()
    checks: dict[str, CheckResult] = {}

    # (a) occurrence pattern of p, l2, l1 across P and its 2-torsion translates
    translates = {
        "P": (inst.P, p),
        "P+P1": (curve.add(inst.P, inst.P1), p),
        "P+P2": (curve.add(inst.P, inst.P2), l2),
        "P+P3": (curve.add(inst.P, inst.P3), l1),
    }
    failures = []
    for name, (pt, prime) in translates.items():
        tr = descent_class(curve, algebra, pt).triple()
        if not occurs(prime, tr):
            failures.append(f"{prime} does not occur in class({name})")
    checks["occurrences"] = CheckResult(
        not failures,
        "; ".join(failures)
        if failures
        else f"{p} occurs in class(P) and class(P+P1); {l2} in class(P+P2); {l1} in class(P+P3)",
    )

    # (b) the marked 2-torsion classes are nontrivial
    trivial = [
        name
        for name, tr in (("P1", inst.class_P1), ("P2", inst.class_P2), ("P3", inst.class_P3))
        if tr.is_trivial
    ]
    checks["marked_classes_nontrivial"] = CheckResult(
        not trivial,
        "trivial classes: " + ", ".join(trivial) if trivial else "P1, P2, P3 all nontrivial",
    )

    # (c) torsion structure
    torsion = curve.torsion_subgroup()
    checks["torsion_structure"] = CheckResult(
        torsion.invariants in ALLOWED_TORSION, torsion.label()
    )

    # (d) the marked point escapes torsion plus the pushforward image
    obstruction = None
    try:
        gluing = gluing_for_instance(inst, params.F)
        obstruction = surjectivity_obstruction(gluing, inst.P, params.F_generators)
        checks["obstruction"] = CheckResult(
            obstruction.status == NOT_CONTAINED, obstruction.status
        )
    except ValueError as exc:
        checks["obstruction"] = CheckResult(False, str(exc))

    # (e) p is the largest prime where the j-invariant has negative valuation
    j = curve.j_invariant()
    den = j.denominator
    if den == 1:
        checks["j_denominator"] = CheckResult(False, f"j = {j} is integral")
    else:
        from .arith import factor

        largest = max(factor(den))
        checks["j_denominator"] = CheckResult(
            largest == p, f"largest denominator prime of j is {largest}"
        )
    return InstanceReport(p, checks, obstruction)


def pairwise_distinct(instances) -> bool:
    """Whether the instances' j-invariants are pairwise distinct."""
    js = [inst.curve.j_invariant() for inst in instances]
    return len(set(js)) == len(js)


@dataclass(frozen=True)
class FamilyRunReport:
    params: FamilyParams
    search: PrimeSearch
    instances: tuple[FamilyInstance, ...]
    reports: tuple[InstanceReport, ...]
    pairwise_distinct_j: bool

    @property
    def all_passed(self) -> bool:
        return all(r.all_passed for r in self.reports) and self.pairwise_distinct_j

    @property
    def exit_code(self) -> int:
        if not self.all_passed:
            return 1
        if self.search.exhausted:
            return 2
        return 0

    def to_json(self) -> dict:
        return {
            "params": {
                "l1": self.params.l1,
                "l2": self.params.l2,
                "count": self.params.count,
                "bound": self.params.bound,
                "F": self.params.F.to_json(),
                "generators": [g.to_json() for g in self.params.F_generators],
            },
            "primes": list(self.search.primes),
            "bound_exhausted": self.search.exhausted,
            "instances": [
                {**inst.to_json(), **report.to_json()}
                for inst, report in zip(self.instances, self.reports)
            ],
            "pairwise_distinct_j": self.pairwise_distinct_j,
            "passed": self.all_passed,
        }


def run_family(params: FamilyParams) -> FamilyRunReport:
    """Search primes, build every instance, and verify all claims.

    Instances are verified independently and reported in ascending p order.
    """
    search = find_primes(params)
    instances = tuple(build_instance(p) for p in search.primes)
    reports = tuple(verify_instance(inst, params) for inst in instances)
    return FamilyRunReport(params, search, instances, reports, pairwise_distinct(instances))
