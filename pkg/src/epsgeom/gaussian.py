"""Exact complex rationals Q(i) and root extraction inside them.

The root finder is complete: every root of a polynomial over Q(i) that lies in
Q(i) is found, via the rational-root theorem over the Gaussian integers (Z[i]
is a UFD, so candidates are unit multiples of divisor quotients).  Degrees and
coefficient sizes here are desk scale, so trial division is plenty.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DivisionByZero


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            return _raw(self.re * other.re, self.im)
        return _raw(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            if not other.re:
                raise DivisionByZero("division by zero in Q(i)")
            return _raw(self.re / other.re, self.im)
        n = other.norm()
        if n == 0:
            raise DivisionByZero("division by zero in Q(i)")
        # multiply by the conjugate and divide by the norm
        return _raw(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return _raw(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return "GaussianRational(%r, %r)" % (str(self.re), str(self.im))

    def conjugate(self):
        return _raw(self.re, -self.im)

    def norm(self):
        """Squared complex modulus, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_rational(self):
        return self.im == 0


def _raw(re, im):
    # arithmetic results are already exact Fractions; skip re-wrapping
    out = object.__new__(GaussianRational)
    object.__setattr__(out, "re", re)
    object.__setattr__(out, "im", im)
    return out


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


QI_ZERO = GaussianRational(0)
QI_ONE = GaussianRational(1)
QI_I = GaussianRational(0, 1)


def int_nth_root(n, k):
    """Exact k-th root of a nonnegative int, or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1) or k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    for c in (r - 1, r, r + 1, r + 2):
        if c >= 0 and c**k == n:
            return c
    # float seed can drift for large n; fall back to bisection
    lo, hi = 0, 1 << ((n.bit_length() + k - 1) // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**k
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def fraction_nth_root(q, k):
    """Exact k-th root of a Fraction (negative allowed for odd k), or None."""
    q = Fraction(q)
    if q < 0:
        if k % 2 == 0:
            return None
        r = fraction_nth_root(-q, k)
        return None if r is None else -r
    a = int_nth_root(q.numerator, k)
    if a is None:
        return None
    b = int_nth_root(q.denominator, k)
    if b is None:
        return None
    return Fraction(a, b)


def gaussian_sqrt(c):
    """Exact square root of c in Q(i), or None.

    For c = a + bi with b != 0 a root x + yi exists iff |c| is rational and
    (a + |c|)/2 is a rational square; then y = b/(2x).
    """
    a, b = c.re, c.im
    if b == 0:
        if a >= 0:
            r = fraction_nth_root(a, 2)
            return None if r is None else GaussianRational(r)
        r = fraction_nth_root(-a, 2)
        return None if r is None else GaussianRational(0, r)
    m = fraction_nth_root(a * a + b * b, 2)
    if m is None:
        return None
    x = fraction_nth_root((a + m) / 2, 2)
    if x is None or x == 0:
        return None
    return GaussianRational(x, b / (2 * x))


# --- Gaussian integers as (a, b) int pairs ---------------------------------


def _gi_norm(w):
    return w[0] * w[0] + w[1] * w[1]


def _gi_mul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _gi_exact_div(w, d):
    """w/d in Z[i] if exact, else None."""
    n = _gi_norm(d)
    if n == 0:
        return None
    a = w[0] * d[0] + w[1] * d[1]
    b = w[1] * d[0] - w[0] * d[1]
    if a % n or b % n:
        return None
    return (a // n, b // n)


def _prime_factors(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _two_squares(p):
    # p prime, p % 4 == 1; small p so brute force is fine
    for a in range(1, math.isqrt(p) + 1):
        b2 = p - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            return (a, b)
    raise ArithmeticError("no two-square decomposition for %d" % p)


def _gaussian_prime_power(w, pi):
    """Largest e with pi^e | w, together with w / pi^e."""
    e = 0
    while True:
        q = _gi_exact_div(w, pi)
        if q is None:
            return e, w
        e += 1
        w = q


def gaussian_int_divisors(w):
    """All divisors of a nonzero Gaussian integer, up to unit multiples."""
    divisors = [(1, 0)]
    rem = w
    for p, _ in _prime_factors(_gi_norm(w)).items():
        if p == 2:
            primes = [(1, 1)]
        elif p % 4 == 3:
            primes = [(p, 0)]
        else:
            a, b = _two_squares(p)
            primes = [(a, b), (a, -b)]
        for pi in primes:
            e, rem = _gaussian_prime_power(rem, pi)
            if e:
                divisors = [
                    _gi_mul(d, _pow_gi(pi, k)) for d in divisors for k in range(e + 1)
                ]
    return divisors


def _pow_gi(w, k):
    out = (1, 0)
    for _ in range(k):
        out = _gi_mul(out, w)
    return out


_UNITS = ((1, 0), (0, 1), (-1, 0), (0, -1))


# --- univariate polynomials over Q(i), dense coefficient lists -------------


def _poly_eval(coeffs, x):
    acc = QI_ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_div_linear(coeffs, r):
    """Divide by (y - r); returns (quotient, remainder)."""
    out = [QI_ZERO] * (len(coeffs) - 1)
    acc = QI_ZERO
    for k in range(len(coeffs) - 1, 0, -1):
        acc = coeffs[k] + acc * r
        out[k - 1] = acc
    rem = coeffs[0] + acc * r
    return out, rem


def gaussian_poly_roots(coeffs):
    """All roots in Q(i) of sum coeffs[k] * y^k, as (root, multiplicity) pairs.

    coeffs must have a nonzero entry.  Roots are sorted by (re, im) descending
    so callers that need one root get a deterministic pick.
    """
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every root")
    found = []
    k0 = 0
    while not coeffs[0]:
        coeffs = coeffs[1:]
        k0 += 1
    if k0:
        found.append((QI_ZERO, k0))
    deg = len(coeffs) - 1
    candidates = []
    if deg == 1:
        candidates = [-coeffs[0] / coeffs[1]]
    elif deg == 2:
        disc = coeffs[1] * coeffs[1] - GaussianRational(4) * coeffs[2] * coeffs[0]
        s = gaussian_sqrt(disc)
        if s is not None:
            two_a = GaussianRational(2) * coeffs[2]
            candidates = [(-coeffs[1] + s) / two_a, (-coeffs[1] - s) / two_a]
    elif deg >= 3:
        # scale to Z[i] and enumerate p/q with p | constant, q | leading
        den = 1
        for c in coeffs:
            den = den * c.re.denominator // math.gcd(den, c.re.denominator)
            den = den * c.im.denominator // math.gcd(den, c.im.denominator)
        zi = [(int(c.re * den), int(c.im * den)) for c in coeffs]
        seen = set()
        for p in gaussian_int_divisors(zi[0]):
            for q in gaussian_int_divisors(zi[-1]):
                qq = GaussianRational(
                    Fraction(q[0]), Fraction(q[1])
                )
                for u in _UNITS:
                    num = _gi_mul(p, u)
                    cand = GaussianRational(Fraction(num[0]), Fraction(num[1])) / qq
                    key = (cand.re, cand.im)
                    if key not in seen:
                        seen.add(key)
                        candidates.append(cand)
    for cand in candidates:
        if any(cand == r for r, _ in found):
            continue
        if _poly_eval(coeffs, cand):
            continue
        mult = 0
        work = coeffs
        while len(work) > 1:
            quo, rem = _poly_div_linear(work, cand)
            if rem:
                break
            mult += 1
            work = quo
        found.append((cand, mult))
    found.sort(key=lambda rm: (rm[0].re, rm[0].im), reverse=True)
    return found


def gaussian_nth_root(c, n):
    """A y in Q(i) with y^n = c, or None; deterministic branch choice."""
    if n == 1 or not c:
        return c
    if n == 2:
        return gaussian_sqrt(c)
    roots = gaussian_poly_roots([-c] + [QI_ZERO] * (n - 1) + [QI_ONE])
    return roots[0][0] if roots else None
