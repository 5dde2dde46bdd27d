"""Parametric polynomial and fraction arithmetic."""

import random
from fractions import Fraction

import pytest

from tautcalc.exactalg import (
    CHI,
    D,
    ParamFraction,
    ParamPoly,
    PoleError,
    SingularSystemError,
    frac_eq,
    solve_linear,
)

PD = ParamPoly.variable("d")
PCHI = ParamPoly.variable("chi")


def test_mul_distributes_over_linear_factors():
    assert PD * (PD - PCHI) == PD ** 2 - PD * PCHI


def test_mul_by_zero_annihilates():
    assert (PD - 2) * ParamPoly.zero() == ParamPoly.zero()
    assert not (PD - 2) * ParamPoly.zero()


def test_mul_two_linear_factors_hand_expansion():
    # (d - chi)(d - 2chi) expanded term by term: d^2 - 2d*chi - chi*d + 2chi^2
    expected = ParamPoly({(2, 0): 1, (1, 1): -3, (0, 2): 2})
    assert (PD - PCHI) * (PD - 2 * PCHI) == expected


def test_canonical_string_order():
    p = (PD - PCHI) * (PD - 2 * PCHI)
    assert str(p) == "d^2 - 3*d*chi + 2*chi^2"
    assert str(ParamPoly.zero()) == "0"
    assert str(PCHI - Fraction(3, 2) * PD) == "-3/2*d + chi"


def test_frac_eq_sign_cancellation():
    assert frac_eq(ParamFraction(PD - PCHI, 1 - PD),
                   ParamFraction(PCHI - PD, PD - 1))


def test_frac_eq_distinct_monomials():
    assert not frac_eq(ParamFraction(PD), ParamFraction(PCHI))


def test_frac_eq_common_polynomial_factor():
    assert frac_eq(ParamFraction(PD ** 2 - PD * PCHI, PD),
                   ParamFraction(PD - PCHI))


def test_specialize_direct_substitution():
    f = D - 2 * CHI
    assert f.specialize(5, 1) == 3


def test_specialize_step3_determinant_closed_form():
    det = CHI * (D - 2) * (D - CHI) * (D - 2 * CHI) / (4 * (1 - D) ** 2)
    assert det.specialize(4, 1) == Fraction(1, 3)


def test_specialize_pole():
    f = 1 / (1 - D)
    with pytest.raises(PoleError):
        f.specialize(1, 1)


def test_denominator_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        ParamFraction(PD, ParamPoly.zero())


def test_normalization_invariants():
    f = ParamFraction(PCHI - Fraction(3, 2) * PD, PD - 1)
    # both parts integral with coprime contents, denominator lead positive
    assert all(c.denominator == 1 for c in f.num.terms.values())
    assert all(c.denominator == 1 for c in f.den.terms.values())
    assert f.den.leading_coefficient() > 0
    g = ParamFraction(PD - PCHI, 1 - PD)
    assert g.den.leading_coefficient() > 0


def _random_poly(rng, max_terms=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = (rng.randint(0, 3), rng.randint(0, 3))
        terms[exps] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return ParamPoly(terms)


def test_ring_axioms_randomized():
    rng = random.Random(20240)
    for _ in range(60):
        p, q, r = (_random_poly(rng) for _ in range(3))
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_specialize_is_ring_homomorphism():
    rng = random.Random(777)
    for _ in range(40):
        p, q = _random_poly(rng), _random_poly(rng)
        dv, cv = rng.randint(-5, 5), rng.randint(-5, 5)
        assert (p * q).evaluate(dv, cv) == p.evaluate(dv, cv) * q.evaluate(dv, cv)
        assert (p + q).evaluate(dv, cv) == p.evaluate(dv, cv) + q.evaluate(dv, cv)


def test_frac_eq_equivalence_relation():
    rng = random.Random(999)
    samples = []
    while len(samples) < 8:
        num, den = _random_poly(rng), _random_poly(rng)
        if den.is_zero():
            continue
        samples.append(ParamFraction(num, den))
        # a deliberately different representative of the same class
        scale = ParamPoly({(1, 0): 1, (0, 0): 2})
        samples.append(ParamFraction(num * scale, den * scale))
    for f in samples:
        assert f == f
    for f in samples:
        for g in samples:
            assert (f == g) == (g == f)
            if f == g:
                for h in samples:
                    if g == h:
                        assert f == h


def test_solve_linear_over_fractions():
    sol = solve_linear([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(-1)]],
                       [Fraction(5), Fraction(-2)])
    assert sol == [Fraction(1), Fraction(3)]


def test_solve_linear_singular():
    with pytest.raises(SingularSystemError):
        solve_linear([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]],
                     [Fraction(1), Fraction(2)])


def test_solve_linear_over_param_fractions():
    # x + y = d, x - y = chi  =>  x = (d+chi)/2, y = (d-chi)/2
    one = ParamFraction(1)
    sol = solve_linear([[one, one], [one, -one]], [D, CHI])
    assert sol[0] == (D + CHI) / 2
    assert sol[1] == (D - CHI) / 2
