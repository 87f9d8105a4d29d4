"""Dirichlet characters with exact values, parity, conductor, and twisted Bernoulli numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import bernoulli_poly, check_prime, vp, vp_int
from .cyclotomic import CyclotomicElement, PadicEmbedding, euler_phi
from .errors import DomainError, EmbeddingError

Q = Fraction
CharValue = Union[Fraction, CyclotomicElement]


class DirichletCharacter:
    """A character modulo d, stored non-primitively and extended by zero.

    Values of rational-valued characters are Fractions; otherwise all values
    live in one cyclotomic field Q(zeta_field_m).
    """

    __slots__ = ("modulus", "order", "conductor", "delta", "field_m", "_values", "label")

    def __init__(self, modulus: int, values: dict[int, CharValue], label: str = ""):
        if modulus < 1:
            raise DomainError("modulus must be positive")
        units = [j for j in range(1, modulus + 1) if math.gcd(j, modulus) == 1]
        if modulus == 1:
            units = [1]
        table: dict[int, CharValue] = {}
        field_m = 1
        for j in units:
            key = j % modulus
            if key not in values and j not in values:
                raise DomainError(f"missing value at unit {j}")
            v = values.get(key, values.get(j))
            if isinstance(v, CyclotomicElement) and v.is_rational():
                v = v.rational_value()
            if isinstance(v, CyclotomicElement):
                field_m = math.lcm(field_m, v.m)
            table[key] = v
        if field_m > 1:
            table = {
                j: (v if isinstance(v, CyclotomicElement) and v.m == field_m
                    else _into_field(v, field_m))
                for j, v in table.items()
            }
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "field_m", field_m)
        object.__setattr__(self, "_values", table)
        object.__setattr__(self, "label", label)
        self._validate()
        object.__setattr__(self, "order", self._compute_order())
        object.__setattr__(self, "conductor", self._compute_conductor())
        object.__setattr__(self, "delta", self._compute_delta())

    def __setattr__(self, name, value):
        raise AttributeError("DirichletCharacter is immutable")

    # -- construction helpers ------------------------------------------------

    def _validate(self) -> None:
        d = self.modulus
        one = self.value(1)
        if not _is_one(one):
            raise DomainError("character must send 1 to 1")
        units = sorted(self._values)
        for a in units:
            va = self._values[a]
            if _is_zero_value(va):
                raise DomainError(f"character vanishes at the unit {a}")
            for b in units:
                lhs = _mulv(va, self._values[b])
                rhs = self.value(a * b)
                if not _eqv(lhs, rhs):
                    raise DomainError(f"table is not multiplicative at ({a}, {b})")

    def _compute_order(self) -> int:
        order = 1
        for v in self._values.values():
            order = math.lcm(order, _root_of_unity_order(v))
        return order

    def _compute_conductor(self) -> int:
        d = self.modulus
        for f in sorted(_divisors(d)):
            ok = True
            for a in self._values:
                if a % f == 1 % f and not _is_one(self._values[a]):
                    ok = False
                    break
            if ok:
                return f
        return d

    def _compute_delta(self) -> int:
        v = self.value(-1)
        return 0 if _is_one(v) else 1

    # -- evaluation -------------------------------------------------------------

    def is_rational_valued(self) -> bool:
        return self.field_m == 1

    def value(self, j: int) -> CharValue:
        """chi(j), zero when gcd(j, modulus) > 1."""
        if self.modulus == 1:
            return Q(1)
        j %= self.modulus
        if math.gcd(j, self.modulus) != 1:
            return Q(0) if self.field_m == 1 else CyclotomicElement.zero(self.field_m)
        return self._values[j]

    def __call__(self, j: int) -> CharValue:
        return self.value(j)

    def __repr__(self) -> str:
        tag = self.label or f"mod {self.modulus}"
        return f"DirichletCharacter({tag}, order={self.order}, delta={self.delta})"


def _into_field(v: CharValue, m: int) -> CyclotomicElement:
    if isinstance(v, Fraction):
        return CyclotomicElement.from_rational(v, m)
    if v.m == m:
        return v
    if m % v.m == 0:
        # zeta_{v.m} = zeta_m^(m / v.m)
        lift = CyclotomicElement.zero(m)
        step = CyclotomicElement.zeta(m, m // v.m)
        for k in reversed(range(len(v.coords))):
            lift = lift * step + v.coords[k]
        return lift
    raise DomainError(f"cannot lift Q(zeta_{v.m}) into Q(zeta_{m})")


def _is_zero_value(v: CharValue) -> bool:
    return v == 0 if isinstance(v, Fraction) else v.is_zero()


def _is_one(v: CharValue) -> bool:
    return v == 1


def _mulv(a: CharValue, b: CharValue) -> CharValue:
    return a * b


def _eqv(a: CharValue, b: CharValue) -> bool:
    if isinstance(a, CyclotomicElement) and isinstance(b, Fraction):
        return a == b
    if isinstance(b, CyclotomicElement) and isinstance(a, Fraction):
        return b == a
    return a == b


def _root_of_unity_order(v: CharValue) -> int:
    if isinstance(v, Fraction):
        if v == 1:
            return 1
        if v == -1:
            return 2
        raise DomainError(f"{v} is not a root of unity")
    acc = v
    for e in range(1, 2 * euler_phi(v.m) * v.m + 1):
        if acc == 1:
            return e
        acc = acc * v
    raise DomainError("value is not a root of unity")


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


# -- builtins -----------------------------------------------------------------


def trivial_character() -> DirichletCharacter:
    return DirichletCharacter(1, {0: Q(1)}, label="trivial")


def quadratic_character(d: int) -> DirichletCharacter:
    """The quadratic character of conductor d for d an odd prime, 4, or 8."""
    if d == 4:
        values = {1: Q(1), 3: Q(-1)}
    elif d == 8:
        values = {1: Q(1), 3: Q(-1), 5: Q(-1), 7: Q(1)}
    elif d > 2 and d % 2 == 1:
        check_prime(d)
        values = {}
        for a in range(1, d):
            ls = pow(a, (d - 1) // 2, d)
            values[a] = Q(1) if ls == 1 else Q(-1)
    else:
        raise DomainError(f"no built-in quadratic character of modulus {d}")
    return DirichletCharacter(d, values, label=f"quadratic:{d}")


def char_make(modulus: int, values: dict[int, CharValue] | list) -> DirichletCharacter:
    """Validated character from an explicit value table."""
    if isinstance(values, list):
        if len(values) != modulus:
            raise DomainError("value list must have one entry per residue 1..modulus")
        values = {j % modulus: v for j, v in enumerate(values, start=1)
                  if not _is_zero_value(v)}
    return DirichletCharacter(modulus, values)


def character_from_spec(spec) -> DirichletCharacter:
    """Accepts "trivial", "quadratic:d", or {"modulus": d, "values": [...]}."""
    if isinstance(spec, DirichletCharacter):
        return spec
    if isinstance(spec, str):
        if spec == "trivial":
            return trivial_character()
        if spec.startswith("quadratic:"):
            return quadratic_character(int(spec.split(":", 1)[1]))
        raise DomainError(f"unknown character tag {spec!r}")
    if isinstance(spec, dict):
        modulus = int(spec["modulus"])
        raw = spec["values"]
        values = []
        for entry in raw:
            if isinstance(entry, dict):
                values.append(CyclotomicElement(int(entry["m"]),
                                                [Fraction(c) for c in entry["coords"]]))
            else:
                values.append(Fraction(entry))
        return char_make(modulus, values)
    raise DomainError(f"cannot build a character from {spec!r}")


# -- twisted Bernoulli numbers ---------------------------------------------------


def gen_bernoulli(k: int, chi: DirichletCharacter) -> CharValue:
    """Character-twisted Bernoulli number d^(k-1) sum_a chi(a) B_k(a/d).

    The sum runs over a = 0..d-1, so the modulus-1 character yields the plain
    Bernoulli numbers with B_1 = -1/2.
    """
    if k < 1:
        raise DomainError("need k >= 1")
    d = chi.modulus
    bk = bernoulli_poly(k)
    if chi.is_rational_valued():
        acc = Q(0)
        for a in range(d):
            c = chi.value(a)
            if c:
                acc += c * bk(Q(a, d))
        return acc * Q(d) ** (k - 1)
    acc_c = CyclotomicElement.zero(chi.field_m)
    for a in range(d):
        c = chi.value(a)
        if not _is_zero_value(c):
            acc_c = acc_c + c * bk(Q(a, d))
    return acc_c * (Q(d) ** (k - 1))


@dataclass(frozen=True)
class ChiPadicData:
    """Conductor split d = d' p^l0 and the valuation offset r at p."""

    d_prime: int
    l0: int
    r: int
    b_head: CharValue


def chi_padic_data(chi: DirichletCharacter, p: int,
                   embedding: PadicEmbedding | None = None,
                   prec: int = 40) -> ChiPadicData:
    """Split the conductor at p and set r = floor(vp(B_(2+delta,chi))) + 1."""
    check_prime(p)
    cond = chi.conductor
    l0 = int(vp_int(cond, p)) if cond > 1 else 0
    d_prime = cond // p ** l0
    b = gen_bernoulli(2 + chi.delta, chi)
    if isinstance(b, Fraction):
        if b == 0:
            raise DomainError("B_(2+delta) vanishes; parity contract violated")
        nu = vp(b, p)
    elif b.is_rational():
        nu = vp(b.rational_value(), p)
    else:
        if embedding is None:
            embedding = PadicEmbedding.default(p, chi.field_m, prec)
        for attempt in range(3):
            image = b.embed(embedding, prec * (2 ** attempt))
            if not image.is_zero_at_precision():
                nu = image.valuation()
                break
            embedding = PadicEmbedding.default(p, chi.field_m, prec * 2 ** (attempt + 1))
        else:
            raise EmbeddingError("could not resolve vp of the head Bernoulli number")
    return ChiPadicData(d_prime=d_prime, l0=l0, r=int(math.floor(nu)) + 1, b_head=b)
