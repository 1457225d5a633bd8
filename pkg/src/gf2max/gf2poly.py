"""Polynomials over GF(2), stored as integers.

The polynomial b_n x^n + ... + b_1 x + b_0 is the integer whose bit i is b_i,
so x^3 + x + 1 is 0b1011 == 11.  Addition is xor, and all nonzero
polynomials are monic.

Besides ring arithmetic this module provides irreducibility and primitivity
tests, exhaustive enumeration of primitive polynomials, and the integer
support they need: factorization of Mersenne numbers 2^n - 1 and Euler's
totient.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceededError

ENUMERATION_CAP = 16
FACTORING_CAP = 64
RHO_BUDGET = 2_000_000


@dataclass(frozen=True, order=True)
class Gf2Poly:
    """A polynomial over GF(2); bit i of ``coeffs`` is the coefficient of x^i."""

    coeffs: int

    def __post_init__(self):
        if self.coeffs < 0:
            raise ValueError("coefficient bit-sequence must be nonnegative")

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return self.coeffs.bit_length() - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return self.coeffs == 0

    def __bool__(self):
        return self.coeffs != 0

    def __int__(self):
        return self.coeffs

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        return poly_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(_mul(self.coeffs, other.coeffs))

    def __divmod__(self, other: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
        q, r = _divmod(self.coeffs, other.coeffs)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other: Gf2Poly) -> Gf2Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(_mod(self.coeffs, other.coeffs))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Gf2Poly({format_poly(self)!r})"

    @classmethod
    def parse(cls, text: str | int) -> Gf2Poly:
        return parse_poly(text)

    @classmethod
    def x(cls) -> Gf2Poly:
        return cls(0b10)

    @classmethod
    def one(cls) -> Gf2Poly:
        return cls(1)


ZERO = Gf2Poly(0)
ONE = Gf2Poly(1)
X = Gf2Poly(0b10)


# Raw integer kernels.

def _mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _mod(a: int, m: int) -> int:
    if m == 0:
        raise ZeroDivisionError("division by zero polynomial")
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _divmod(a: int, m: int) -> tuple[int, int]:
    if m == 0:
        raise ZeroDivisionError("division by zero polynomial")
    dm = m.bit_length()
    q = 0
    while a.bit_length() >= dm:
        shift = a.bit_length() - dm
        q |= 1 << shift
        a ^= m << shift
    return q, a


def _mulmod(a: int, b: int, m: int) -> int:
    dm = m.bit_length()
    a = _mod(a, m)
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a.bit_length() >= dm:
            a ^= m
    return _mod(r, m)


def _powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = _mod(a, m)
    while e:
        if e & 1:
            r = _mulmod(r, a, m)
        e >>= 1
        if e:
            a = _mulmod(a, a, m)
    return _mod(r, m)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _check_modulus(m: Gf2Poly) -> None:
    if m.coeffs < 2:
        raise ValueError("invalid modulus")


# Public polynomial operations.

def poly_add(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(a.coeffs ^ b.coeffs)


def poly_mul(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(_mul(a.coeffs, b.coeffs))


def poly_divmod(a: Gf2Poly, b: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    return divmod(a, b)


def poly_mulmod(a: Gf2Poly, b: Gf2Poly, m: Gf2Poly) -> Gf2Poly:
    """Return a*b reduced modulo m (m must have degree >= 1)."""
    _check_modulus(m)
    return Gf2Poly(_mulmod(a.coeffs, b.coeffs, m.coeffs))


def poly_powmod(a: Gf2Poly, e: int, m: Gf2Poly) -> Gf2Poly:
    """Return a^e mod m by square-and-multiply; a^0 is 1."""
    _check_modulus(m)
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return Gf2Poly(_powmod(a.coeffs, e, m.coeffs))


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    return Gf2Poly(_gcd(a.coeffs, b.coeffs))


def poly_lcm(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    if not a or not b:
        return ZERO
    return Gf2Poly(_divmod(_mul(a.coeffs, b.coeffs), _gcd(a.coeffs, b.coeffs))[0])


def _prime_divisors(n: int) -> list[int]:
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


def is_irreducible(f: Gf2Poly) -> bool:
    """Rabin's test: x^(2^n) = x mod f and gcd(x^(2^(n/q)) - x, f) = 1 for primes q | n."""
    n = f.degree
    if n is None or n < 1:
        raise ValueError("degree must be positive")
    m = f.coeffs
    if n == 1:
        return True
    if not m & 1:
        return False

    def frobenius(k: int) -> int:
        # x^(2^k) mod f by k squarings
        r = 0b10
        for _ in range(k):
            r = _mulmod(r, r, m)
        return r

    if frobenius(n) != _mod(0b10, m):
        return False
    for q in _prime_divisors(n):
        if _gcd(m, frobenius(n // q) ^ 0b10) != 1:
            return False
    return True


# Integer support: primality, factoring, totient.

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
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


def pollard_rho(n: int, budget: int = RHO_BUDGET, seed: int = 1) -> int | None:
    """Return a nontrivial factor of composite n (Brent's variant), or None if the budget runs out."""
    if n % 2 == 0:
        return 2
    rng = random.Random(seed)
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(n: int, trial_bound: int = 10_000, budget: int = RHO_BUDGET) -> dict[int, int]:
    """Prime factorization of n as {prime: exponent}.

    Trial division up to ``trial_bound`` and Pollard rho for the rest.  Raises
    CapExceededError instead of returning a partial result.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p <= trial_bound and p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = pollard_rho(m, budget)
        if d is None:
            raise CapExceededError("factoring budget exceeded")
        stack += [d, m // d]
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class MersenneFactorization:
    """Prime factorization of 2^n - 1, factors sorted by prime."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return (1 << self.n) - 1

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def product(self) -> int:
        return math.prod(p**e for p, e in self.factors)


def factor_mersenne(n: int, cap: int = FACTORING_CAP) -> MersenneFactorization:
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceededError(f"factoring cap exceeded: n={n} > {cap}")
    facs = factorize((1 << n) - 1)
    return MersenneFactorization(n, tuple(facs.items()))


def totient(m: int, factors: dict[int, int] | None = None) -> int:
    """Euler's totient of m, computed from its factorization."""
    if m < 1:
        raise ValueError("totient is defined for m >= 1")
    if factors is None:
        factors = factorize(m)
    phi = m
    for p in factors:
        phi = phi // p * (p - 1)
    return phi


def count_primitive(n: int, cap: int = FACTORING_CAP) -> int:
    """Number of primitive polynomials of degree n, phi(2^n - 1)/n."""
    fact = factor_mersenne(n, cap)
    phi = totient(fact.value, dict(fact.factors))
    q, r = divmod(phi, n)
    assert r == 0
    return q


def primitivity_failure(f: Gf2Poly, fact: MersenneFactorization | None = None) -> str | None:
    """Explain why f is not primitive, or return None when it is."""
    n = f.degree
    if n is None or n < 1:
        return "degree must be positive"
    if fact is None:
        fact = factor_mersenne(n, max(n, FACTORING_CAP))
    if fact.n != n:
        raise ValueError(f"factorization is for n={fact.n}, polynomial has degree {n}")
    if not is_irreducible(f):
        return f"{f} is reducible"
    N = fact.value
    if _powmod(0b10, N, f.coeffs) != 1:
        return f"x^{N} != 1 mod {f}"
    for p in fact.primes:
        if _powmod(0b10, N // p, f.coeffs) == 1:
            return f"x^({N}/{p}) = 1 mod {f}: order of x is a proper divisor of {N}"
    return None


def is_primitive(f: Gf2Poly, fact: MersenneFactorization | None = None) -> bool:
    """True iff f is irreducible and x has multiplicative order 2^n - 1 modulo f."""
    return primitivity_failure(f, fact) is None


def monic_candidates(n: int) -> Iterator[Gf2Poly]:
    """All monic polynomials of degree n with nonzero constant term, ascending."""
    if n == 1:
        yield Gf2Poly(0b11)
        yield Gf2Poly(0b10)
        return
    top = 1 << n
    for low in range(1, top, 2):
        yield Gf2Poly(top | low)


def enumerate_primitive(n: int, cap: int = ENUMERATION_CAP) -> list[Gf2Poly]:
    """All primitive polynomials of degree n, sorted by coefficient integer."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceededError(f"enumeration cap exceeded: n={n} > {cap}")
    fact = factor_mersenne(n, max(n, FACTORING_CAP))
    return sorted(f for f in monic_candidates(n) if is_primitive(f, fact))


# Text formats.

_INTEGER = re.compile(r"^(?:0x[0-9a-f]+|0b[01]+|0|[1-9]\d*)$")
_TERM = re.compile(r"^(?:(1)|x(?:\^(\d+))?)$")


def parse_poly(text: str | int) -> Gf2Poly:
    """Parse ``x^3+x+1``, a decimal coefficient integer, or 0x/0b-prefixed integer."""
    if isinstance(text, int):
        return Gf2Poly(text)
    s = text.replace(" ", "").lower()
    if not s:
        raise ValueError("empty polynomial")
    if _INTEGER.match(s):
        return Gf2Poly(int(s, 0))
    coeffs = 0
    for term in s.split("+"):
        m = _TERM.match(term)
        if m is None:
            raise ValueError(f"malformed polynomial term {term!r} in {text!r}")
        if m.group(1):
            coeffs ^= 1
        else:
            coeffs ^= 1 << int(m.group(2) or 1)
    return Gf2Poly(coeffs)


def format_poly(f: Gf2Poly) -> str:
    """Human form with descending powers, e.g. ``x^3+x+1``."""
    if not f:
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        if f.coeffs >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)
