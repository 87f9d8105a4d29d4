"""Dense exact polynomials, truncated power series, and rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonSplitDenominator

Q = Fraction


def as_fraction(x: Fraction | int | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


class Poly:
    """Polynomial over Q with dense ascending coefficients; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("Poly is immutable")

    # -- basic structure -------------------------------------------------

    @classmethod
    def const(cls, c: Fraction | int) -> Poly:
        return cls([as_fraction(c)])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Fraction | int]) -> Poly:
        out = cls.const(1)
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the zero polynomial mapped to -1."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Q(0)
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Q(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Q(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out)

    def scale(self, c: Fraction | int) -> Poly:
        c = as_fraction(c)
        return Poly([c * a for a in self.coeffs])

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> Poly:
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift(self, c: Fraction | int) -> Poly:
        """Compose with a translation: returns q with q(t) = self(t + c)."""
        c = as_fraction(c)
        out = Poly()
        lin = Poly([c, 1])
        for coeff in reversed(self.coeffs):
            out = out * lin + Poly.const(coeff)
        return out

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Q(0)
        for coeff in reversed(self.coeffs):
            acc = acc * x + coeff
        return acc

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quot = [Q(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        rem = list(self.coeffs)
        dlead = other.leading()
        dn = other.degree()
        while len(rem) - 1 >= dn and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dn:
                break
            k = len(rem) - 1 - dn
            f = rem[-1] / dlead
            quot[k] = f
            for j, c in enumerate(other.coeffs):
                rem[k + j] -= f * c
            rem.pop()
        return Poly(quot), Poly(rem)

    def content_primitive(self) -> tuple[Fraction, list[int]]:
        """Write self = content * P with P a primitive integer polynomial."""
        if self.is_zero():
            return Q(0), []
        from math import gcd, lcm

        den = lcm(*[c.denominator for c in self.coeffs])
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        ints = [v // g for v in ints]
        return Q(g, den), ints


# -- truncated power series (lists of length L, ascending) ----------------


def series_trunc(coeffs: Sequence[Fraction], L: int) -> list[Fraction]:
    out = list(coeffs[:L])
    out.extend([Q(0)] * (L - len(out)))
    return out


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], L: int) -> list[Fraction]:
    out = [Q(0)] * L
    for i, ai in enumerate(a[:L]):
        if ai:
            top = min(L - i, len(b))
            for j in range(top):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def series_inv(a: Sequence[Fraction], L: int) -> list[Fraction]:
    """Multiplicative inverse of a series with a[0] != 0, to length L."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series has no inverse: constant term vanishes")
    inv0 = 1 / a[0]
    out = [Q(0)] * L
    out[0] = inv0
    for k in range(1, L):
        acc = Q(0)
        top = min(k, len(a) - 1)
        for j in range(1, top + 1):
            if a[j]:
                acc += a[j] * out[k - j]
        out[k] = -inv0 * acc
    return out


def series_pow(a: Sequence[Fraction], e: int, L: int) -> list[Fraction]:
    if e < 0:
        return series_pow(series_inv(a, L), -e, L)
    out = series_trunc([Q(1)], L)
    base = series_trunc(a, L)
    while e:
        if e & 1:
            out = series_mul(out, base, L)
        base = series_mul(base, base, L)
        e >>= 1
    return out


# -- rational functions ----------------------------------------------------


class RationalFunction:
    """Quotient of two polynomials over Q; the denominator is nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly.const(1)):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def const(cls, c: Fraction | int) -> RationalFunction:
        return cls(Poly.const(c))

    def is_polynomial(self) -> bool:
        q, r = self.num.divmod(self.den)
        return r.is_zero()

    def as_polynomial(self) -> Poly:
        q, r = self.num.divmod(self.den)
        if not r.is_zero():
            raise ValueError("not a polynomial")
        return q

    def degree(self) -> int | None:
        """deg(num) - deg(den); None for the zero function."""
        if self.num.is_zero():
            return None
        return self.num.degree() - self.den.degree()

    def __call__(self, x: Fraction | int) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {x}")
        return self.num(x) / d

    def __add__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return self + (-other)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def scale(self, c: Fraction | int) -> RationalFunction:
        return RationalFunction(self.num.scale(c), self.den)

    def __pow__(self, e: int) -> RationalFunction:
        if e >= 0:
            return RationalFunction(self.num ** e, self.den ** e)
        return RationalFunction(self.den ** (-e), self.num ** (-e))

    def shift(self, c: Fraction | int) -> RationalFunction:
        """Returns g with g(t) = self(t + c)."""
        return RationalFunction(self.num.shift(c), self.den.shift(c))

    def derivative(self) -> RationalFunction:
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    # -- pole structure ----------------------------------------------------

    def den_factorization(self) -> tuple[Fraction, dict[Fraction, int]]:
        """Factor the denominator as lc * prod (t - c)^e over rational roots.

        Raises NonSplitDenominator if an irreducible factor of degree > 1
        remains after all rational roots are removed.
        """
        content, ints = self.den.content_primitive()
        prim = Poly(ints)
        roots: dict[Fraction, int] = {}
        while prim.degree() > 0:
            root = _one_rational_root(prim)
            if root is None:
                raise NonSplitDenominator(
                    "denominator has an irreducible factor of degree > 1 over Q")
            quot, rem = prim.divmod(Poly([-root, 1]))
            assert rem.is_zero()
            roots[root] = roots.get(root, 0) + 1
            prim = quot
        lc = content * prim.leading()
        return lc, roots

    def partial_fractions(self) -> tuple[Poly, dict[Fraction, list[Fraction]]]:
        """Exact partial fraction decomposition over Q.

        Returns (polynomial part, {root c: [a_1, ..., a_e]}) so that
        self(t) = poly(t) + sum over roots of sum_i a_i / (t - c)^i.
        Coefficients are obtained from a truncated power series expansion of
        self * (t - c)^e around each pole, never by symbolic differentiation.
        """
        lc, roots = self.den_factorization()
        poly_part, _ = self.num.divmod(self.den)
        terms: dict[Fraction, list[Fraction]] = {}
        for c, e in roots.items():
            # cofactor lc * prod_{c' != c} (u + (c - c'))^{e'}, expanded in u = t - c
            L = e
            cof = series_trunc([lc], L)
            for c2, e2 in roots.items():
                if c2 == c:
                    continue
                lin = series_trunc([c - c2, Q(1)], L)
                cof = series_mul(cof, series_pow(lin, e2, L), L)
            num_series = series_trunc(self.num.shift(c).coeffs, L)
            expansion = series_mul(num_series, series_inv(cof, L), L)
            # coefficient of u^(e-i) is the weight of (t-c)^(-i)
            terms[c] = [expansion[e - i] for i in range(1, e + 1)]
        return poly_part, terms


def _one_rational_root(prim: Poly) -> Fraction | None:
    """A rational root of a primitive integer polynomial, or None."""
    from math import gcd

    coeffs = [int(c) for c in prim.coeffs]
    if coeffs[0] == 0:
        return Q(0)
    a0, an = abs(coeffs[0]), abs(coeffs[-1])
    for num in _divisors(a0):
        for den in _divisors(an):
            if gcd(num, den) != 1:
                continue
            for cand in (Q(num, den), Q(-num, den)):
                if prim(cand) == 0:
                    return cand
    return None


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# -- expression parser -----------------------------------------------------


def parse_rational_function(text: str) -> RationalFunction:
    """Parse expressions like "(1/5+t)^-2*(2/5+t)^-1 + 3*t^2" over Q(t)."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"parse error at token {pos} in {text!r}")
        pos += 1
        return tok

    def parse_expr() -> RationalFunction:
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        node = parse_term()
        if sign < 0:
            node = -node
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term() -> RationalFunction:
        node = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def parse_factor() -> RationalFunction:
        node = parse_base()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            e = take()
            if not isinstance(e, int):
                raise ValueError("exponent must be an integer")
            node = node ** (-e if neg else e)
        return node

    def parse_base() -> RationalFunction:
        tok = peek()
        if tok == "(":
            take()
            node = parse_expr()
            take(")")
            return node
        if tok == "t":
            take()
            return RationalFunction(Poly.x())
        if isinstance(tok, int):
            take()
            if peek() == "/" and pos + 1 < len(tokens) and isinstance(tokens[pos + 1], int):
                take()
                den = take()
                return RationalFunction.const(Q(tok, den))
            return RationalFunction.const(tok)
        raise ValueError(f"parse error near {tok!r} in {text!r}")

    node = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return node


def _tokenize(text: str) -> list:
    out: list = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(int(text[i:j]))
            i = j
        elif ch in "+-*/^()t":
            out.append(ch)
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r}")
    return out
