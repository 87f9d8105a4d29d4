"""Valuations, binomial digit arithmetic, and Bernoulli polynomials, all exact."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .polynomials import Poly

INF = math.inf
Q = Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return p


def vp_int(n: int, p: int) -> int | float:
    """p-adic valuation of an integer; math.inf for 0."""
    if n == 0:
        return INF
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x: Fraction | int, p: int) -> int | float:
    """p-adic valuation of a rational, normalized by vp(p) = 1; inf at 0."""
    check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def digits_base_p(n: int, p: int) -> list[int]:
    """Base-p digits of n >= 0, least significant first; [] for 0."""
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def binom_padic_data(m: int, n: int, p: int) -> tuple[int, int]:
    """(carry count, residue mod p) for binom(m, n), computed digitwise.

    The carry count when adding n and m - n in base p equals vp(binom(m, n));
    the residue is the digitwise product binom(m_i, n_i) mod p.
    """
    check_prime(p)
    if not 0 <= n <= m:
        raise DomainError("need 0 <= n <= m")
    dm = digits_base_p(m, p)
    dn = digits_base_p(n, p)
    dk = digits_base_p(m - n, p)
    dn += [0] * (len(dm) - len(dn))
    dk += [0] * (len(dm) - len(dk))
    carries = 0
    carry = 0
    residue = 1
    for i in range(len(dm)):
        s = dn[i] + dk[i] + carry
        carry = 1 if s >= p else 0
        carries += carry
        residue = (residue * math.comb(dm[i], dn[i])) % p
    return carries, residue


def multinomial_packed(m: int, n: int) -> int:
    """m! / (n!^(m // n) * (m mod n)!), the multinomial with maximal n-blocks."""
    if m < 0 or n < 1:
        raise DomainError("need m >= 0 and n >= 1")
    return math.factorial(m) // (math.factorial(n) ** (m // n) * math.factorial(m % n))


@lru_cache(maxsize=None)
def lcm_upto(n: int) -> int:
    """lcm(1, ..., n)."""
    if n < 1:
        raise DomainError("need n >= 1")
    if n == 1:
        return 1
    return math.lcm(lcm_upto(n - 1), n)


def factorial_valuation(n: int, p: int) -> int:
    """vp(n!) by Legendre's digit-sum formula."""
    check_prime(p)
    s = sum(digits_base_p(n, p))
    return (n - s) // (p - 1)


_BERNOULLI_CACHE: list[Fraction] = [Q(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention, memoized."""
    if n < 0:
        raise DomainError("need n >= 0")
    while len(_BERNOULLI_CACHE) <= n:
        m = len(_BERNOULLI_CACHE)
        acc = Q(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * _BERNOULLI_CACHE[k]
        _BERNOULLI_CACHE.append(-acc / (m + 1))
    return _BERNOULLI_CACHE[n]


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """B_n(x) = sum_k binom(n, k) B_k x^(n-k), exact."""
    if n < 0:
        raise DomainError("need n >= 0")
    coeffs = [Q(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = math.comb(n, k) * bernoulli_number(k)
    return Poly(coeffs)


def rising_factorial(t: Fraction | int, n: int) -> Fraction:
    """t (t+1) ... (t+n-1); equals 1 for n = 0."""
    acc = Q(1)
    for j in range(n):
        acc *= t + j
    return acc


def rising_factorial_poly(n: int) -> Poly:
    """The polynomial t (t+1) ... (t+n-1)."""
    return Poly.from_roots([-j for j in range(n)])
