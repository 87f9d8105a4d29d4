import math
from fractions import Fraction as Q

import pytest

from padicforms.arith import vp
from padicforms.characters import quadratic_character, trivial_character, gen_bernoulli
from padicforms.errors import DomainError
from padicforms.hurwitz import (HurwitzArg, lp_value, reduce_to_unit_interval,
                                zeta_p_nonpos, zeta_p_pos, zeta_p_shift)
from padicforms.padic import Padic
from padicforms.polynomials import Poly, RationalFunction
from padicforms.volkenborn import integral_riemann


def test_domain_validation():
    HurwitzArg(Q(1, 5), 5)
    HurwitzArg(Q(3, 4), 2)
    with pytest.raises(DomainError):
        HurwitzArg(Q(1, 2), 2)  # |x|_2 = 2 < 4
    with pytest.raises(DomainError):
        HurwitzArg(Q(2, 3), 5)  # |x|_5 = 1
    with pytest.raises(DomainError):
        zeta_p_pos(1, Q(1, 5), 5, 4)


def test_zeta_pos_base_value():
    out = zeta_p_pos(2, Q(1, 5), 5, 6)
    assert out.zeta.agrees(Padic.from_fraction(1, 5, 1))
    assert out.twisted.agrees(Padic.from_fraction(5, 5, 2))
    # untwisted = omega(x)^(s-1) * twisted; for x = 1/5, omega(x) = 1/5 exactly
    assert out.zeta.agrees(out.twisted.mul_fraction(Q(1, 5)), out.zeta.prec)
    # precision contract: >= the requested absolute precision
    for s, n_req in ((2, 6), (5, 9), (6, 7)):
        got = zeta_p_pos(s, Q(1, 5), 5, n_req)
        assert got.twisted.prec >= n_req


def test_zeta_pos_vs_riemann_oracle():
    # zeta_2(3, 1/4): the twisted integral against the level-10 Riemann sums
    x = Q(1, 4)
    out = zeta_p_pos(3, x, 2, 12)
    integral = out.twisted.mul_fraction(2)  # = Int (x+t)^(-2)
    f = RationalFunction(Poly([1]), Poly([x, 1]) ** 2)
    rie = integral_riemann(f, 2, 10, precision=10)
    diff = integral - rie
    assert diff.is_zero_at_precision() or diff.valuation() >= 6


def test_zeta_nonpos_values():
    split = zeta_p_nonpos(0, Q(1, 5), 5)
    assert split.exact() == Q(3, 2)
    # formula instantiation at i = -1: -omega(x)^(-2) (x^2 - x + 1/6)/2
    split2 = zeta_p_nonpos(-1, Q(3, 4), 2)
    x = Q(3, 4)
    assert split2.rational == -(x * x - x + Q(1, 6)) / 2
    assert split2.exponent == -2
    out = split2.padic(8)
    # omega(3/4) = -1/4, so the value is exactly rational here too
    assert split2.exact() == -(Q(1, 16)) ** -1 * (x * x - x + Q(1, 6)) / 2


def test_zeta_shift_exact_branch():
    for i in (0, -1, -4):
        rep = zeta_p_shift(i, Q(1, 5), 5)
        assert rep.exact and rep.agrees
    rep = zeta_p_shift(-1, Q(1, 4), 2)
    # both sides -omega(x)^(-2) x at i = -1
    assert rep.lhs.rational == -Q(1, 4) and rep.agrees


def test_zeta_shift_positive_branch():
    rep = zeta_p_shift(2, Q(1, 5), 5, precision=6)
    assert rep.agrees and rep.modulus_exp >= 4
    with pytest.raises(DomainError):
        zeta_p_shift(1, Q(1, 5), 5)


def test_reduce_to_unit_interval():
    x0, corr = reduce_to_unit_interval(Q(9, 4), 2)
    assert x0 == Q(1, 4)
    assert corr == [(Q(5, 4), -1), (Q(1, 4), -1)]
    x1, corr1 = reduce_to_unit_interval(Q(-3, 5), 5)
    assert x1 == Q(2, 5) and corr1 == [(Q(-3, 5), 1)]
    # correction identity: zeta(i, x) = zeta(i, x0) + sum sign <y>^(1-i)/y for i <= 0
    for i in (0, -2):
        n = 1 - i
        lhs = zeta_p_nonpos(i, Q(9, 4), 2)
        rhs = zeta_p_nonpos(i, x0, 2).rational
        for y, sign in corr:
            rhs += sign * y ** (n - 1)  # <y>^(1-i)/y = y^(n-1) omega(y)^(-n)
        assert lhs.rational == rhs


def test_lp_value_negative_exact():
    triv = trivial_character()
    assert lp_value(-1, triv, 5, l=1) == Q(1, 3)
    # interpolation against the twisted Bernoulli formula
    for chi in (triv, quadratic_character(3), quadratic_character(4)):
        for p in (2, 3, 5):
            for i in (-1, -2, -3):
                n = 1 - i
                got = lp_value(i, chi, p, l=max(1, _l0(chi, p)))
                want = (1 - chi.value(p) * Q(p) ** (-i)) * (-gen_bernoulli(n, chi) / n)
                assert got == want


def _l0(chi, p):
    return int(vp(Q(chi.conductor), p))


def test_lp_value_l_stability():
    triv = trivial_character()
    q3 = quadratic_character(3)
    for chi, p in ((triv, 3), (q3, 5), (q3, 2)):
        base = lp_value(-2, chi, p, l=max(1, _l0(chi, p)))
        for l in (2, 3):
            assert lp_value(-2, chi, p, l=l) == base
    # positive branch: stable mod p^4 when l grows
    a = lp_value(2, triv, 3, l=1, precision=6)
    b = lp_value(2, triv, 3, l=2, precision=6)
    assert a.agrees(b, 4)


def test_lp_value_positive_p2_needs_l2():
    with pytest.raises(DomainError):
        lp_value(2, trivial_character(), 2, l=1, precision=4)
    v = lp_value(2, trivial_character(), 2, l=2, precision=6)
    assert v.prec >= 6


def test_lp_value_irrational_omega_power():
    # p = 5, residual odd omega exponent: value comes back as a Padic
    triv = trivial_character()
    v = lp_value(-1, triv, 5, l=1, omega_exp=1, precision=8)
    assert isinstance(v, Padic)
    # doubling the exponent lands back on the exact branch
    w = lp_value(-1, triv, 5, l=1, omega_exp=2)
    assert w == Q(1, 3)


def test_lp_value_rejects_i_one():
    with pytest.raises(DomainError):
        lp_value(1, trivial_character(), 5, l=1)
