"""Volkenborn integration: Riemann sums, van der Put wavelets, and a certified Mahler engine.

The integral of f over Z_p is the limit of p^-n sum_{k < p^n} f(k). Three
engines compute it here:

* integral_riemann: the exact level-n partial sum (diagnostic; its error is
  certified only through the constant wavelet tail bound).
* integral_wavelet: sums a_k p^-l(k) over a truncated wavelet expansion with
  a caller-supplied tail bound.
* integral_mahler: the production path for rational functions without poles
  in Z_p. It computes Mahler coefficients c_m = (forward differences at 0)
  exactly, sums c_m (-1)^m / (m+1), and certifies the truncation error from
  the pole structure: for a partial-fraction term a/(t - c)^i with
  h = -vp(c) >= 1, the m-th Mahler coefficient has valuation at least
  vp(a) + (m + i) h, so the wavelet tail beyond M is controlled by
  inf_{m > M} (T(m) - l(m)) with T the termwise bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .arith import INF, check_prime, vp, vp_int
from .errors import DomainError, PrecisionError
from .padic import Padic, fraction_mod_pk
from .polynomials import Poly, RationalFunction

Q = Fraction

Integrand = Union[RationalFunction, Callable[[int], Fraction]]


# -- van der Put basis ---------------------------------------------------------


def vdp_length(k: int, p: int) -> int:
    """l(k): number of base-p digits of k, with l(0) = 0."""
    if k < 0:
        raise DomainError("need k >= 0")
    n = 0
    while k:
        k //= p
        n += 1
    return n


def vdp_data(k: int, p: int) -> tuple[int, int]:
    """(l(k), k with its leading base-p digit removed); (0, 0) at k = 0."""
    check_prime(p)
    l = vdp_length(k, p)
    if l == 0:
        return 0, 0
    return l, k - (k // p ** (l - 1)) * p ** (l - 1)


def wavelet_indicator(k: int, p: int, t: int) -> int:
    """chi_k(t): indicator of the disc k + p^l(k) Z_p."""
    return 1 if (t - k) % p ** vdp_length(k, p) == 0 else 0


@dataclass(frozen=True)
class WaveletExpansion:
    """Coefficients a_k for 0 <= k < p^depth of a function on Z_p."""

    p: int
    depth: int
    coeffs: tuple[Fraction, ...]

    def reconstruct(self, t: int) -> Fraction:
        acc = Q(0)
        for k, a in enumerate(self.coeffs):
            if a and wavelet_indicator(k, self.p, t):
                acc += a
        return acc

    def integral_partial(self) -> Fraction:
        """sum a_k p^-l(k) over the stored range."""
        acc = Q(0)
        for k, a in enumerate(self.coeffs):
            if a:
                acc += a * Q(1, self.p ** vdp_length(k, self.p))
        return acc


def wavelet_coeffs(f: Callable[[int], Fraction], p: int, depth: int) -> WaveletExpansion:
    """Exact coefficients a_0 = f(0), a_k = f(k) - f(k_-) up to k < p^depth."""
    check_prime(p)
    values = [Q(f(k)) for k in range(p ** depth)]
    coeffs = [values[0]]
    for k in range(1, p ** depth):
        _, kminus = vdp_data(k, p)
        coeffs.append(values[k] - values[kminus])
    return WaveletExpansion(p=p, depth=depth, coeffs=tuple(coeffs))


def integral_wavelet(w: WaveletExpansion, tail_bound: int) -> Padic:
    """Integral from a truncated wavelet expansion.

    tail_bound must lower-bound vp(a_k) - l(k) for every k >= p^depth; the
    returned value is then correct modulo p^tail_bound.
    """
    if tail_bound is None:
        raise DomainError("a certified tail bound is required")
    return Padic.from_fraction(w.integral_partial(), w.p, tail_bound)


# -- Riemann-sum engine ----------------------------------------------------------


def integral_riemann(f: Integrand, p: int, level: int,
                     precision: Optional[int] = None) -> Fraction | Padic:
    """The exact level-n partial sum p^-n sum_{k < p^n} f(k).

    With precision=None the sum is returned as an exact Fraction (only
    sensible for small levels). Otherwise the partial sum is computed in
    fixed-point arithmetic and returned modulo p^precision; the sum itself
    is exact mod p^precision, convergence across levels is the caller's
    concern.
    """
    check_prime(p)
    count = p ** level
    if precision is None:
        total = Q(0)
        for k in range(count):
            total += _eval_integrand(f, k)
        return total / count

    if isinstance(f, RationalFunction):
        return _riemann_fixed_point(f, p, level, precision)
    raw = [Q(_eval_integrand(f, k)) for k in range(count)]
    shift = min(0, min((vp(v, p) for v in raw if v != 0), default=0))
    rel = precision + level - shift
    total = 0
    pk = Fraction(p) ** shift
    for v in raw:
        total += fraction_mod_pk(v / pk, p, rel)
    return Padic.normalized(p, shift - level, total, precision)


def _eval_integrand(f: Integrand, k: int) -> Fraction:
    try:
        return f(k)
    except ZeroDivisionError as exc:
        raise DomainError(f"integrand has a pole at the integer {k}") from exc


def _riemann_fixed_point(f: RationalFunction, p: int, level: int, precision: int) -> Padic:
    count = p ** level
    scale_n, nums = f.num.content_primitive()
    scale_d, dens = f.den.content_primitive()
    if not nums:
        return Padic.zero(p, precision)
    scale = scale_n / scale_d
    vs = vp(scale, p)
    den_prim = Poly(dens)

    vden = None
    try:
        _, roots = f.den_factorization()
    except DomainError:
        roots = None
    if roots is not None and all(vp(c, p) < 0 for c in roots):
        # every den value at an integer shares the valuation of den_prim(0)
        vden = int(vp_int(int(den_prim(0)), p))
    if vden is None:
        dvals = [int(den_prim(k)) for k in range(count)]
        if any(v == 0 for v in dvals):
            raise DomainError(f"integrand has a pole at the integer {dvals.index(0)}")
        vden = int(vp_int(dvals[0], p))
        if any(vp_int(v, p) != vden for v in dvals):
            raise DomainError("integrand has a pole in Z_p "
                              "(denominator valuation varies)")
    V = int(vs - vden)
    rel = precision + level - V
    if rel <= 0:
        return Padic.zero(p, precision)
    mod = p ** rel
    mod_den = mod * p ** vden
    ncoeffs = [int(c) % mod for c in reversed(Poly(nums).coeffs)]
    dcoeffs = [int(c) % mod_den for c in reversed(den_prim.coeffs)]
    pv = p ** vden
    dunits = []
    for k in range(count):
        acc = 0
        for c in dcoeffs:
            acc = (acc * k + c) % mod_den
        dunits.append(acc // pv % mod)
    invs = _batch_invert(dunits, mod)
    scale_unit = fraction_mod_pk(scale / Fraction(p) ** vs, p, rel)
    total = 0
    for k in range(count):
        acc = 0
        for c in ncoeffs:
            acc = (acc * k + c) % mod
        total += acc * invs[k] % mod
    total = total * scale_unit % mod
    return Padic.normalized(p, V - level, total, precision)


def _batch_invert(units: Sequence[int], mod: int) -> list[int]:
    """Montgomery batch inversion of units modulo mod."""
    partials = [1]
    for u in units:
        partials.append(partials[-1] * u % mod)
    inv = pow(partials[-1], -1, mod)
    out = [0] * len(units)
    for i in range(len(units), 0, -1):
        out[i - 1] = partials[i - 1] * inv % mod
        inv = inv * units[i - 1] % mod
    return out


# -- Mahler-series engine ----------------------------------------------------------


@dataclass(frozen=True)
class PoleData:
    """One pole t = location of the integrand, with coefficient floors.

    floors[i-1] is a lower bound for vp of the coefficient of
    (t - location)^-i in the partial fraction decomposition.
    """

    location: Fraction
    order: int
    floors: tuple[Fraction | int, ...]

    def height(self, p: int) -> int:
        h = -vp(self.location, p)
        if h == INF or h <= 0:
            raise DomainError(f"pole {self.location} lies in Z_p")
        return int(h)


def _check_pole_domain(poles: Sequence[PoleData], p: int) -> None:
    for pd in poles:
        h = pd.height(p)
        if p == 2 and h < 2:
            raise DomainError(
                f"pole {pd.location} has |.|_2 = 2; need valuation <= -2 at p = 2")


def _tail_term_bound(poles: Sequence[PoleData], p: int) -> Callable[[int], Fraction | int]:
    branches = []
    for pd in poles:
        h = pd.height(p)
        for i, fl in enumerate(pd.floors, start=1):
            branches.append((fl + i * h, h))
    if not branches:
        raise DomainError("no pole data")

    def T(m: int):
        return min(base + m * h for base, h in branches)

    return T


def mahler_error_valuation(T: Callable[[int], Fraction | int], p: int, M: int) -> Fraction | int:
    """inf over m > M of T(m) - l(m), for T increasing with slope >= 1.

    The scan stops once the value exceeds the running minimum by 1: beyond
    that point T(m') - l(m') >= value(m) - 1 + (m' - m)(1 - 0.73) can no
    longer undercut the minimum (l grows by at most log_p between samples).
    """
    best = None
    m = M + 1
    while True:
        val = T(m) - vdp_length(m, p)
        if best is None or val < best:
            best = val
        if m >= max(M + 2, 3) and val >= best + 1:
            return best
        m += 1
        if m > M + 200_000:
            raise PrecisionError("tail scan did not stabilize")


def integral_mahler(f: Integrand, p: int, precision: Optional[int] = None,
                    pole_data: Optional[Sequence[PoleData]] = None) -> Fraction | Padic:
    """Volkenborn integral via the Mahler expansion.

    Polynomials integrate exactly (an exact Fraction is returned; this is
    B_n(x) for (x+t)^n). For a proper rational function without poles in
    Z_p the result is a Padic correct modulo p^precision, with the
    truncation point chosen from the certified tail bound. pole_data may be
    supplied to avoid recomputing partial fractions (mandatory floors).
    """
    check_prime(p)
    if isinstance(f, RationalFunction) and f.is_polynomial():
        return _integral_polynomial(f.as_polynomial())
    if isinstance(f, Poly):
        return _integral_polynomial(f)
    if not isinstance(f, RationalFunction) and pole_data is None:
        raise DomainError("certified integration needs a rational function "
                          "or a callable with explicit pole data")
    if precision is None:
        raise DomainError("precision is required for integrands with poles")

    if pole_data is None:
        poly_part, terms = f.partial_fractions()
        poles = [PoleData(location=c,
                          order=len(alphas),
                          floors=tuple(vp(a, p) if a != 0 else 10 ** 9 for a in alphas))
                 for c, alphas in terms.items()]
        poly_deg = poly_part.degree()
        poly_floor = min((vp(c, p) for c in poly_part.coeffs if c != 0), default=None)
    else:
        poles = list(pole_data)
        if isinstance(f, RationalFunction):
            deg = f.degree()
            if deg is not None and deg >= 0:
                raise DomainError("pole_data shortcut requires a proper rational function")
        poly_deg = -1
        poly_floor = None
    _check_pole_domain(poles, p)

    T = _tail_term_bound(poles, p)
    hmin = min(pd.height(p) for pd in poles)
    v_floor = min(fl + i * pd.height(p)
                  for pd in poles for i, fl in enumerate(pd.floors, start=1))
    if poly_floor is not None:
        v_floor = min(v_floor, poly_floor)
    v_floor = min(v_floor, 0)
    v_floor = int(math.floor(v_floor))

    # choose the truncation point M
    M = max(1, poly_deg + 1)
    M = max(M, int(math.ceil((precision - T(0)) / hmin)) + 1)
    while mahler_error_valuation(T, p, M) < precision:
        M += max(1, int(math.ceil((precision - mahler_error_valuation(T, p, M)) / hmin)))

    maxw = vdp_length(M + 1, p) + 1
    rel = precision - v_floor + maxw + 2
    mod = p ** rel

    values = []
    for a in range(M + 1):
        v = _eval_integrand(f, a)
        if v != 0 and vp(v, p) < v_floor:
            raise PrecisionError("supplied coefficient floors are violated")
        values.append(fraction_mod_pk(v / Fraction(p) ** v_floor, p, rel))

    total = Padic.zero(p, precision + 1)
    row = values
    for m in range(M + 1):
        c = row[0]
        if c:
            w = vp_int(m + 1, p)
            unit = (m + 1) // p ** w
            contrib = c * pow(unit, -1, mod) % mod
            if m % 2 == 1:
                contrib = (-contrib) % mod
            total = total + Padic.normalized(p, v_floor - w, contrib, v_floor - w + rel)
        # next difference row, in place
        for i in range(len(row) - 1):
            row[i] = (row[i + 1] - row[i]) % mod
        row.pop()
    return total.at_precision(min(total.prec, precision))


def _integral_polynomial(poly: Poly) -> Fraction:
    """Exact integral of a polynomial: finite Mahler sum of c_m (-1)^m/(m+1)."""
    deg = poly.degree()
    if deg < 0:
        return Q(0)
    row = [poly(a) for a in range(deg + 1)]
    total = Q(0)
    for m in range(deg + 1):
        total += row[0] * Q((-1) ** m, m + 1)
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return total


def mahler_coefficients(f: Integrand, count: int) -> list[Fraction]:
    """Exact forward differences (Delta^m f)(0) for m < count (test oracle)."""
    row = [Q(_eval_integrand(f, a)) for a in range(count)]
    out = []
    for _ in range(count):
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


# -- translation formula ------------------------------------------------------------


@dataclass(frozen=True)
class TranslationReport:
    """Both sides of the translation identity, computed independently."""

    lhs: Fraction | Padic
    rhs: Fraction | Padic
    derivative_sum: Fraction
    modulus_exp: Optional[int]
    agrees: bool


def translate_integral(f: RationalFunction, m: int, p: int,
                       precision: Optional[int] = None) -> TranslationReport:
    """Check integral of f(u+m) = integral of f(u) + sum_{i<m} f'(i).

    The left side integrates the shifted function; the right side adds the
    exact derivative sum to the integral of f. Polynomial integrands
    compare exactly; otherwise both sides are certified mod p^precision.
    """
    if m < 0:
        raise DomainError("need m >= 0")
    fprime = f.derivative()
    dsum = Q(0)
    for i in range(m):
        try:
            dsum += fprime(i)
        except ZeroDivisionError as exc:
            raise DomainError(f"pole at the shift point {i}") from exc
    shifted = f.shift(m)
    if f.is_polynomial():
        lhs = integral_mahler(shifted, p)
        rhs = integral_mahler(f, p) + dsum
        return TranslationReport(lhs=lhs, rhs=rhs, derivative_sum=dsum,
                                 modulus_exp=None, agrees=lhs == rhs)
    if precision is None:
        raise DomainError("precision is required for integrands with poles")
    lhs = integral_mahler(shifted, p, precision)
    base = integral_mahler(f, p, precision)
    rhs = base + Padic.from_fraction(dsum, p, base.prec)
    k = min(lhs.prec, rhs.prec)
    return TranslationReport(lhs=lhs, rhs=rhs, derivative_sum=dsum,
                             modulus_exp=k, agrees=lhs.agrees(rhs, k))


# -- wavelet tail certificates for rational integrands ---------------------------


def rational_wavelet_tail_bound(poles: Sequence[PoleData], p: int,
                                poly_floor: Optional[Fraction] = None) -> Fraction | int:
    """A lower bound for vp(a_k) - l(k) over all k >= 1.

    For a partial fraction term a/(t-c)^i with h = -vp(c): a_k = f(k) - f(k_-)
    and vp(k - k_-) = l(k) - 1 give vp(a_k) - l(k) >= vp(a) + (i+1) h - 1.
    Polynomial parts contribute their coefficient floor minus 1.
    """
    bound = min(fl + (i + 1) * pd.height(p) - 1
                for pd in poles for i, fl in enumerate(pd.floors, start=1))
    if poly_floor is not None:
        bound = min(bound, poly_floor - 1)
    return bound
