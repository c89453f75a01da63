"""Dense univariate polynomials over Q.

A polynomial is a tuple of Fractions in ascending degree order, trimmed of
trailing zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm

Poly = tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)
X: Poly = (Fraction(0), Fraction(1))


def poly(coeffs) -> Poly:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Poly) -> int:
    return len(p) - 1


def constant_value(p: Poly) -> Fraction:
    if len(p) > 1:
        raise ValueError("not a constant polynomial")
    return p[0] if p else Fraction(0)


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return poly(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(a * c for a in p)


def pow_poly(p: Poly, n: int) -> Poly:
    out = ONE
    for _ in range(n):
        out = mul(out, p)
    return out


def eval_at(p: Poly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return poly(i * c for i, c in enumerate(p) if i)


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = degree(q)
    lead = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    for i in range(len(p) - 1, dq - 1, -1):
        c = r[i]
        if c:
            k = c / lead
            quot[i - dq] = k
            for j, b in enumerate(q):
                r[i - dq + j] -= k * b
    return poly(quot), poly(r)


def mod_poly(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return ZERO
    return scale(p, 1 / p[-1])


def gcd_poly(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, mod_poly(p, q)
    return monic(p)


def xgcd_poly(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Monic g = gcd(p, q) together with s, t satisfying s*p + t*q = g."""
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        qt, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(qt, s1))
        t0, t1 = t1, sub(t0, mul(qt, t1))
    if not r0:
        return ZERO, ZERO, ZERO
    c = 1 / r0[-1]
    return scale(r0, c), scale(s0, c), scale(t0, c)


def compose(p: Poly, q: Poly) -> Poly:
    acc = ZERO
    for c in reversed(p):
        acc = add(mul(acc, q), poly([c]))
    return acc


def interpolate(points) -> Poly:
    """Lagrange interpolation through (x, y) pairs with distinct x values."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    acc = ZERO
    for i, (xi, yi) in enumerate(pts):
        num = poly([yi])
        for j, (xj, _) in enumerate(pts):
            if i != j:
                num = mul(num, scale(poly([-xj, 1]), Fraction(1) / (xi - xj)))
        acc = add(acc, num)
    return acc


def is_squarefree(p: Poly) -> bool:
    return degree(gcd_poly(p, derivative(p))) <= 0


def cubic_disc(f: Poly) -> Fraction:
    """Discriminant of a monic cubic x^3 + a x^2 + b x + c."""
    if degree(f) != 3 or f[3] != 1:
        raise ValueError("expected a monic cubic")
    c, b, a = f[0], f[1], f[2]
    return 18 * a * b * c - 4 * a**3 * c + a**2 * b**2 - 4 * b**3 - 27 * c**2


def denominators_lcm(p: Poly) -> int:
    out = 1
    for c in p:
        out = lcm(out, c.denominator)
    return out


def sqrt_fraction(q) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def integer_roots_monic_cubic(a: int, b: int, c: int) -> list[int]:
    """All integer roots of x^3 + a x^2 + b x + c.

    Exact sign bisection on the monotone pieces between the critical points;
    integers adjacent to the critical points are probed directly so repeated
    roots are not missed.
    """

    def g(x: int) -> int:
        return ((x + a) * x + b) * x + c

    m = 1 + max(abs(a), abs(b), abs(c))  # Cauchy bound for real roots
    cuts = {-m, m}
    d = a * a - 3 * b
    if d > 0:
        r = isqrt(d)
        for s in (-1, 1):
            k = (-a + s * r) // 3
            for t in (k - 1, k, k + 1, k + 2):
                if -m < t < m:
                    cuts.add(t)
    ordered = sorted(cuts)
    roots = set()
    for lo, hi in zip(ordered, ordered[1:]):
        glo, ghi = g(lo), g(hi)
        if glo == 0:
            roots.add(lo)
        if ghi == 0:
            roots.add(hi)
        if (glo < 0 < ghi) or (ghi < 0 < glo):
            while hi - lo > 1:
                mid = (lo + hi) // 2
                gm = g(mid)
                if gm == 0:
                    roots.add(mid)
                    break
                if (gm < 0) == (glo < 0):
                    lo, glo = mid, gm
                else:
                    hi, ghi = mid, gm
    return sorted(roots)


def rational_roots_monic(f: Poly) -> list[Fraction]:
    """Sorted rational roots of a monic polynomial of degree <= 3."""
    d = degree(f)
    if d <= 0:
        return []
    if d == 1:
        return [-f[0]]
    if d == 2:
        s = sqrt_fraction(f[1] * f[1] - 4 * f[0])
        if s is None:
            return []
        return sorted({(-f[1] + s) / 2, (-f[1] - s) / 2})
    if d != 3 or f[3] != 1:
        raise ValueError("expected a monic polynomial of degree <= 3")
    m = denominators_lcm(f)
    a = int(f[2] * m)
    b = int(f[1] * m * m)
    c = int(f[0] * m**3)
    return sorted(Fraction(t, m) for t in integer_roots_monic_cubic(a, b, c))


def format_poly(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            term = f"{coef}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)
