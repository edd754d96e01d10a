"""Exact root extraction: integer roots of index polynomials, and all
Gaussian-rational roots of denominators.

Both use the rational root theorem (over Z for integer roots, over the
Gaussian integers Z[i] for roots in Q(i)), restricted by a Cauchy-type
bound.  Z[i] is a Euclidean domain, so divisor enumeration reduces to
factoring the integer norm, which stays tiny at the degrees involved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .gaussian import GaussianRational, ZERO
from .poly import Poly

# ---------------------------------------------------------------------------
# Gaussian integers as plain (a, b) int pairs


def _zi_norm(z):
    return z[0] * z[0] + z[1] * z[1]


def _zi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _zi_conj(z):
    return (z[0], -z[1])


def _zi_rem(a, b):
    """Remainder of nearest-quotient division; |rem| < |b| always."""
    n = _zi_norm(b)
    t = _zi_mul(a, _zi_conj(b))
    q = ((2 * t[0] + n) // (2 * n), (2 * t[1] + n) // (2 * n))
    qb = _zi_mul(q, b)
    return (a[0] - qb[0], a[1] - qb[1])


def _zi_gcd(a, b):
    while b != (0, 0):
        a, b = b, _zi_rem(a, b)
    return a


def _zi_exact_div(a, b):
    """a / b if b divides a in Z[i], else None."""
    n = _zi_norm(b)
    t = _zi_mul(a, _zi_conj(b))
    if t[0] % n or t[1] % n:
        return None
    return (t[0] // n, t[1] // n)


def _factor_int(n: int):
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 2 if p % 6 == 5 else 4  # skip multiples of 2 and 3
    if n > 1:
        out.append((n, 1))
    return out


def _sqrt_minus_one_mod(p: int) -> int:
    for a in range(2, p):
        x = pow(a, (p - 1) // 4, p)
        if (x * x) % p == p - 1:
            return x
    raise ArithmeticError(f"no sqrt(-1) mod {p}")  # p = 1 mod 4 guarantees one


def _zi_prime_factors(z):
    """Gaussian prime factorization of z (up to units) as (prime, exp)."""
    if z == (0, 0):
        raise ZeroDivisionError("factoring zero")
    factors = []
    for p, _ in _factor_int(_zi_norm(z)):
        if p == 2:
            cands = [(1, 1)]
        elif p % 4 == 3:
            cands = [(p, 0)]
        else:
            x = _sqrt_minus_one_mod(p)
            pi = _zi_gcd((p, 0), (x, 1))
            cands = [pi, _zi_conj(pi)]
        for pi in cands:
            e = 0
            while True:
                q = _zi_exact_div(z, pi)
                if q is None:
                    break
                z = q
                e += 1
            if e:
                factors.append((pi, e))
    return factors


def _zi_divisors(z):
    """All divisors of z up to unit factors (unit choices handled by the
    caller)."""
    divisors = [(1, 0)]
    for pi, e in _zi_prime_factors(z):
        extended = []
        power = (1, 0)
        for _ in range(e + 1):
            extended.extend(_zi_mul(d, power) for d in divisors)
            power = _zi_mul(power, pi)
        divisors = extended
    return divisors


_UNITS = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
)


# ---------------------------------------------------------------------------
# Root finding over polynomials with Q(i) coefficients


def _clear_to_gaussian_integers(p: Poly):
    """Scale p by a positive integer so all coefficients land in Z[i];
    returns the (a, b) integer pairs, low degree first."""
    scale = 1
    for c in p.coeffs:
        scale = lcm(scale, c.re.denominator, c.im.denominator)
    out = []
    for c in p.coeffs:
        re = c.re * scale
        im = c.im * scale
        out.append((int(re), int(im)))
    content = 0
    for a, b in out:
        content = gcd(content, gcd(abs(a), abs(b)))
    if content > 1:
        out = [(a // content, b // content) for a, b in out]
    return out


def integer_roots(p: Poly) -> list[int]:
    """All integer roots of a nonzero polynomial, sorted ascending.

    Candidates are divisors of the trailing nonzero coefficient of the
    real part (or imaginary part if the real part vanishes identically),
    cut down by a Cauchy root bound, then verified against p itself.
    """
    if p.is_zero:
        raise ValueError("integer roots of the zero polynomial")
    roots = set()
    v = p.trailing_zero_count()
    if v > 0:
        roots.add(0)
        p = Poly(p.coeffs[v:], p.var)
    comp = [c.re for c in p.coeffs]
    if not any(comp):
        comp = [c.im for c in p.coeffs]
    scale = 1
    for q in comp:
        scale = lcm(scale, q.denominator)
    ints = [int(q * scale) for q in comp]
    while ints and ints[-1] == 0:
        ints.pop()
    w = next(k for k, c in enumerate(ints) if c != 0)
    trailing = abs(ints[w])
    lead = abs(ints[-1])
    bound = 1 + max(abs(c) for c in ints) // lead
    for d in _int_divisors(trailing):
        if d > bound:
            continue
        for cand in (d, -d):
            if p.eval(cand).is_zero:
                roots.add(cand)
    return sorted(roots)


def _int_divisors(n: int):
    out = [1]
    for prime, e in _factor_int(n):
        out = [d * prime**k for d in out for k in range(e + 1)]
    return sorted(out)


def gaussian_roots(p: Poly):
    """All roots of p that lie in Q(i), with multiplicities.

    Returns (roots, residue) where roots is a list of (value, multiplicity)
    pairs and residue is the quotient of p by the found linear factors;
    residue has no further roots in Q(i) (it may still have algebraic
    roots outside the field).
    """
    if p.is_zero:
        raise ValueError("roots of the zero polynomial")
    roots = []
    v = p.trailing_zero_count()
    if v:
        roots.append((ZERO, v))
        p = Poly(p.coeffs[v:], p.var)
    while p.degree >= 1:
        hit = _find_one_root(p)
        if hit is None:
            break
        mult = 0
        factor = Poly((-hit, 1), p.var)
        while True:
            q, rem = divmod(p, factor)
            if not rem.is_zero:
                break
            p = q
            mult += 1
        roots.append((hit, mult))
    return roots, p


def _find_one_root(p: Poly):
    ints = _clear_to_gaussian_integers(p)
    lead = ints[-1]
    trailing = next(c for c in ints if c != (0, 0))
    norm_bound = Fraction(2) + 2 * Fraction(
        max(_zi_norm(c) for c in ints), _zi_norm(lead)
    )
    seen = set()
    for num in _zi_divisors(trailing):
        for den in _zi_divisors(lead):
            t = _zi_mul(num, _zi_conj(den))
            nd = _zi_norm(den)
            base = GaussianRational(Fraction(t[0], nd), Fraction(t[1], nd))
            if base.norm2() > norm_bound:
                continue
            for unit in _UNITS:
                cand = base * unit
                if cand in seen:
                    continue
                seen.add(cand)
                if p.eval(cand).is_zero:
                    return cand
    return None
