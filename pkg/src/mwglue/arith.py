"""Square classes of rationals and F2 linear algebra over class triples.

Everything is exact: factorizations are complete (a hard error otherwise) and
every prime that appears in a class has passed a deterministic primality
check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


class FactorizationError(RuntimeError):
    """A complete factorization could not be certified within the bounds."""


# Deterministic Miller-Rabin witness set, valid for all n below this limit.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise FactorizationError(f"{n} exceeds the certified primality range")
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, b in enumerate(sieve) if b]


def first_primes(count: int) -> list[int]:
    if count <= 0:
        return []
    bound = 32
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= count:
            return ps[:count]
        bound *= 2


DEFAULT_TRIAL_BOUND = 10**6


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of an odd composite n, or 0 if every cycle failed."""
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    return 0


def factor(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> dict[int, int]:
    """Complete prime factorization of n >= 1 as {prime: exponent}.

    Trial division up to trial_bound, then Pollard rho on whatever remains.
    A cofactor that resists splitting raises FactorizationError rather than
    producing a partial answer, since square classes need the full
    factorization to be correct.
    """
    if n < 1:
        raise ValueError("factor() expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p <= trial_bound and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n == 1:
        return out
    if p * p > n or is_prime(n):
        out[n] = out.get(n, 0) + 1
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        if d in (0, m):
            raise FactorizationError(f"could not split composite cofactor {m}")
        stack += [d, m // d]
    return out


def divisors_from_factorization(fact: dict[int, int]) -> list[int]:
    out = [1]
    for p, e in fact.items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


@dataclass(frozen=True)
class SquareClass:
    """An element of Q*/Q*^2: a sign bit plus the primes with odd valuation."""

    negative: bool
    primes: tuple[int, ...]

    def __post_init__(self):
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be strictly increasing")
        for p in self.primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def trivial(cls) -> "SquareClass":
        return cls(False, ())

    @property
    def is_trivial(self) -> bool:
        return not self.negative and not self.primes

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        merged = set(self.primes) ^ set(other.primes)
        return SquareClass(self.negative ^ other.negative, tuple(sorted(merged)))

    def representative(self) -> Fraction:
        r = Fraction(1)
        for p in self.primes:
            r *= p
        return -r if self.negative else r

    def to_json(self) -> dict:
        return {"sign": "-" if self.negative else "+", "primes": list(self.primes)}

    @classmethod
    def from_json(cls, data) -> "SquareClass":
        return cls(data["sign"] == "-", tuple(int(p) for p in data["primes"]))


def square_class(q, trial_bound: int = DEFAULT_TRIAL_BOUND) -> SquareClass:
    """The image of a nonzero rational in Q*/Q*^2."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("0 has no square class")
    counts: dict[int, int] = {}
    for part in (q.numerator, q.denominator):
        for p, e in factor(abs(part), trial_bound).items():
            counts[p] = counts.get(p, 0) + e
    odd = tuple(sorted(p for p, e in counts.items() if e % 2))
    return SquareClass(q < 0, odd)


@dataclass(frozen=True)
class SquareClassTriple:
    """An element of (Q*/Q*^2)^3."""

    c1: SquareClass
    c2: SquareClass
    c3: SquareClass

    @classmethod
    def from_rationals(cls, a, b, c) -> "SquareClassTriple":
        return cls(square_class(a), square_class(b), square_class(c))

    @classmethod
    def trivial(cls) -> "SquareClassTriple":
        t = SquareClass.trivial()
        return cls(t, t, t)

    @property
    def components(self) -> tuple[SquareClass, SquareClass, SquareClass]:
        return (self.c1, self.c2, self.c3)

    @property
    def is_trivial(self) -> bool:
        return all(c.is_trivial for c in self.components)

    def product(self) -> SquareClass:
        return self.c1 * self.c2 * self.c3

    @property
    def has_trivial_product(self) -> bool:
        """Membership in the subgroup of triples whose product is a square."""
        return self.product().is_trivial

    def __mul__(self, other: "SquareClassTriple") -> "SquareClassTriple":
        return SquareClassTriple(
            self.c1 * other.c1, self.c2 * other.c2, self.c3 * other.c3
        )

    def occurs(self, p: int) -> bool:
        return any(p in c.primes for c in self.components)

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]

    @classmethod
    def from_json(cls, data) -> "SquareClassTriple":
        return cls(*(SquareClass.from_json(d) for d in data))


def occurs(p: int, z: SquareClassTriple) -> bool:
    """Whether p has odd valuation in some component of z."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return z.occurs(p)


# A coordinate of the F2 space: (component index, prime), None marking the sign.
Coordinate = tuple[int, int | None]


def _coords_of(z: SquareClassTriple) -> set[Coordinate]:
    out: set[Coordinate] = set()
    for i, c in enumerate(z.components):
        if c.negative:
            out.add((i, None))
        for p in c.primes:
            out.add((i, p))
    return out


def _coord_key(c: Coordinate):
    return (c[0], c[1] is not None, c[1] or 0)


def coordinate_to_json(c: Coordinate) -> dict:
    return {"component": c[0], "prime": c[1]}


def coordinate_from_json(data) -> Coordinate:
    return (int(data["component"]), None if data["prime"] is None else int(data["prime"]))


@dataclass(frozen=True)
class ContainmentResult:
    contained: bool
    witness: tuple[int, ...] | None = None
    certificate: tuple[Coordinate, ...] | None = None

    def to_json(self) -> dict:
        return {
            "contained": self.contained,
            "witness": list(self.witness) if self.witness is not None else None,
            "certificate": [coordinate_to_json(c) for c in self.certificate]
            if self.certificate is not None
            else None,
        }


def subgroup_contains(generators, target: SquareClassTriple) -> ContainmentResult:
    """Decide membership of target in the F2 span of the generators.

    Gaussian elimination over F2 with one coordinate per (component, sign)
    and (component, prime).  A positive answer carries a witness subset of
    generator indices whose product is the target; a negative answer carries
    a coordinate set meeting every generator an even number of times and the
    target an odd number of times.
    """
    gens = list(generators)
    universe = sorted(
        {c for z in gens for c in _coords_of(z)} | _coords_of(target), key=_coord_key
    )
    pos = {c: i for i, c in enumerate(universe)}

    def vec(z: SquareClassTriple) -> int:
        v = 0
        for c in _coords_of(z):
            v |= 1 << pos[c]
        return v

    basis: list[list[int]] = []  # [vector, generator mask] rows, kept in RREF
    for i, g in enumerate(gens):
        v, m = vec(g), 1 << i
        for bv, bm in basis:
            if v >> (bv.bit_length() - 1) & 1:
                v ^= bv
                m ^= bm
        if v:
            for row in basis:
                if row[0] >> (v.bit_length() - 1) & 1:
                    row[0] ^= v
                    row[1] ^= m
            basis.append([v, m])
    t, tm = vec(target), 0
    for bv, bm in basis:
        if t >> (bv.bit_length() - 1) & 1:
            t ^= bv
            tm ^= bm
    if t == 0:
        witness = tuple(i for i in range(len(gens)) if tm >> i & 1)
        return ContainmentResult(True, witness=witness)
    low = (t & -t).bit_length() - 1
    dual = {low}
    for bv, _ in basis:
        if bv >> low & 1:
            dual.add(bv.bit_length() - 1)
    cert = tuple(sorted((universe[i] for i in dual), key=_coord_key))
    return ContainmentResult(False, certificate=cert)


def validate_containment_witness(generators, target, witness) -> bool:
    gens = list(generators)
    acc = SquareClassTriple.trivial()
    for i in witness:
        acc = acc * gens[i]
    return acc == target


def validate_noncontainment_certificate(generators, target, coords) -> bool:
    cs = set(coords)

    def parity(z: SquareClassTriple) -> int:
        zc = _coords_of(z)
        return sum(1 for c in cs if c in zc) & 1

    return all(parity(g) == 0 for g in generators) and parity(target) == 1
