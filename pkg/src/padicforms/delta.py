"""Certified lower bounds for the wavelet decay Delta(f) = inf_k (vp(a_k) - l(k)).

Expression trees are built from a small set of constructors; each node is
evaluable on Z_p and contributes a compositional lower bound:

* sums and products take the minimum of their parts,
* binom(t, m) is bounded below by -l(m),
* a convergent power series by the infimum of its coefficient valuations,
* precomposition with multiplication by p^l adds l, provided
  vp(f(0)) >= bound(f) + l (verified, else rejected),
* f^(p^e) - g^(p^e) gains e over f - g when f = g mod p with p-integral
  values (caller-asserted; spot-checked on small integers),
* finite wavelet combinations have their exact decay.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Sequence

from .arith import INF, check_prime, vp
from .errors import DeltaRuleError, DomainError
from .volkenborn import vdp_data, vdp_length, wavelet_indicator

Q = Fraction


class DeltaExpr:
    """Base class; subclasses implement evaluate and delta_bound."""

    def evaluate(self, t: Fraction | int, p: int) -> Fraction:
        raise NotImplementedError

    def delta_bound(self, p: int) -> Fraction | int | float:
        raise NotImplementedError

    def __add__(self, other: DeltaExpr) -> DeltaExpr:
        return DSum((self, other))

    def __mul__(self, other: DeltaExpr) -> DeltaExpr:
        return DProd((self, other))

    def __neg__(self) -> DeltaExpr:
        return DScale(Q(-1), self)

    def __sub__(self, other: DeltaExpr) -> DeltaExpr:
        return self + (-other)


class DPoly(DeltaExpr):
    """A polynomial (or truncated convergent series) sum c_k t^k."""

    def __init__(self, coeffs: Sequence[Fraction | int]):
        self.coeffs = tuple(Q(c) for c in coeffs)

    def evaluate(self, t, p):
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def delta_bound(self, p):
        vals = [vp(c, p) for c in self.coeffs if c != 0]
        return min(vals) if vals else INF


class DBinom(DeltaExpr):
    """The binomial polynomial t -> binom(t, m)."""

    def __init__(self, m: int):
        if m < 0:
            raise DomainError("need m >= 0")
        self.m = m

    def evaluate(self, t, p):
        acc = Q(1)
        for j in range(self.m):
            acc *= (Q(t) - j)
        return acc / math.factorial(self.m)

    def delta_bound(self, p):
        return -vdp_length(self.m, p)


class DScale(DeltaExpr):
    """c * f for an exact rational c; the expansion scales coefficientwise,
    so the decay shifts by exactly vp(c)."""

    def __init__(self, c: Fraction | int, child: DeltaExpr):
        self.c = Q(c)
        if self.c == 0:
            raise DomainError("scale by zero collapses the expression")
        self.child = child

    def evaluate(self, t, p):
        return self.c * self.child.evaluate(t, p)

    def delta_bound(self, p):
        return vp(self.c, p) + self.child.delta_bound(p)


class DSum(DeltaExpr):
    def __init__(self, parts: Sequence[DeltaExpr]):
        self.parts = tuple(parts)

    def evaluate(self, t, p):
        return sum((part.evaluate(t, p) for part in self.parts), Q(0))

    def delta_bound(self, p):
        return min(part.delta_bound(p) for part in self.parts)


class DProd(DeltaExpr):
    def __init__(self, parts: Sequence[DeltaExpr]):
        self.parts = tuple(parts)

    def evaluate(self, t, p):
        acc = Q(1)
        for part in self.parts:
            acc *= part.evaluate(t, p)
        return acc

    def delta_bound(self, p):
        return min(part.delta_bound(p) for part in self.parts)


class DPrecompose(DeltaExpr):
    """f composed with multiplication by p^l."""

    def __init__(self, child: DeltaExpr, l: int):
        if l < 0:
            raise DomainError("need l >= 0")
        self.child = child
        self.l = l

    def evaluate(self, t, p):
        return self.child.evaluate(Q(t) * p ** self.l, p)

    def delta_bound(self, p):
        b = self.child.delta_bound(p)
        v0 = self.child.evaluate(0, p)
        if v0 != 0 and vp(v0, p) < b + self.l:
            raise DeltaRuleError(
                f"side condition vp(f(0)) >= bound + {self.l} fails: "
                f"vp(f(0)) = {vp(v0, p)}, bound = {b}")
        return b + self.l


class DPowerDiff(DeltaExpr):
    """f^(p^e) - g^(p^e), for f = g mod p with p-integral values."""

    def __init__(self, f: DeltaExpr, g: DeltaExpr, iterations: int = 1,
                 integral_values_asserted: bool = False):
        if iterations < 1:
            raise DomainError("need at least one squaring step")
        if not integral_values_asserted:
            raise DeltaRuleError(
                "the p-th power rule needs integral values; assert "
                "integral_values_asserted=True after checking your operands")
        self.f = f
        self.g = g
        self.iterations = iterations

    def evaluate(self, t, p):
        e = p ** self.iterations
        return self.f.evaluate(t, p) ** e - self.g.evaluate(t, p) ** e

    def delta_bound(self, p):
        self._spot_check(p)
        diff = DSum((self.f, -self.g))
        return diff.delta_bound(p) + self.iterations

    def _spot_check(self, p):
        for t in range(min(p * p, 12)):
            fv = self.f.evaluate(t, p)
            gv = self.g.evaluate(t, p)
            if fv != 0 and vp(fv, p) < 0 or gv != 0 and vp(gv, p) < 0:
                raise DeltaRuleError("operands take non-integral values")
            d = fv - gv
            if d != 0 and vp(d, p) < 1:
                raise DeltaRuleError("operands do not agree mod p")


class DWavelet(DeltaExpr):
    """A finite wavelet combination sum a_k chi_k, with exact decay."""

    def __init__(self, p: int, coeffs: Dict[int, Fraction]):
        check_prime(p)
        self.p = p
        self.coeffs = {k: Q(a) for k, a in coeffs.items() if a != 0}

    def evaluate(self, t, p):
        if p != self.p:
            raise DomainError("wavelet literal bound to a different prime")
        if Q(t).denominator != 1:
            raise DomainError("wavelet literals evaluate at integers only")
        acc = Q(0)
        for k, a in self.coeffs.items():
            if wavelet_indicator(k, self.p, int(t)):
                acc += a
        return acc

    def delta_bound(self, p):
        if p != self.p:
            raise DomainError("wavelet literal bound to a different prime")
        if not self.coeffs:
            return INF
        return min(vp(a, p) - vdp_length(k, p) for k, a in self.coeffs.items())


def disc_indicator(c: int, mod_exp: int, p: int) -> DWavelet:
    """The characteristic function of the disc c + p^mod_exp Z_p."""
    check_prime(p)
    c %= p ** mod_exp
    values = [1 if (t - c) % p ** mod_exp == 0 else 0 for t in range(p ** mod_exp)]
    coeffs: Dict[int, Fraction] = {0: Q(values[0])}
    for k in range(1, p ** mod_exp):
        _, kminus = vdp_data(k, p)
        coeffs[k] = Q(values[k] - values[kminus])
    return DWavelet(p, coeffs)


def delta_rule_bound(expr: DeltaExpr, p: int) -> Fraction | int | float:
    """Certified lower bound for Delta(expr) assembled from the rules."""
    check_prime(p)
    return expr.delta_bound(p)
