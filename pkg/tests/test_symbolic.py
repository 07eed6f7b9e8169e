"""Ring arithmetic, series inversion and constant term extraction."""

from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from latpoly import (
    LaurentPolynomial,
    NonInvertibleSubstitution,
    NonUnitLeadingCoefficient,
    ONE,
    TruncatedSeries,
    TruncationInsufficient,
    ZERO,
    as_poly,
    constant_term_ratio,
    constant_term_rho,
    monomial,
    parse_polynomial,
    series_invert,
    sym,
)

RHO = sym("rho")
X = sym("x")
RHO_INV = monomial(1, rho=-1)


def dict_convolution(a: dict, b: dict) -> dict:
    """Independent multiplication oracle: plain exponent-dict convolution
    for univariate Laurent polynomials given as {exponent: coefficient}."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def rho_dict(p: LaurentPolynomial) -> dict:
    """{rho exponent: rational coefficient} of a univariate-in-rho value."""
    out = {}
    for mono, coeff in p.terms().items():
        assert all(name == "rho" for name, _ in mono)
        out[dict(mono).get("rho", 0)] = coeff
    return out


# -- arithmetic ---------------------------------------------------------------

def test_difference_of_squares():
    assert (RHO + RHO_INV) * (RHO - RHO_INV) == monomial(1, rho=2) - monomial(1, rho=-2)


def test_additive_identity():
    p = 3 * X ** 2 - sym("kappa") + Fraction(1, 2)
    assert p + ZERO == p
    assert p + 0 == p


def test_symbolic_expansion():
    b0, b1 = sym("b0"), sym("b1")
    assert (X - b0) * (X - b1) == X ** 2 - (b0 + b1) * X + b0 * b1


def test_pow_trinomial_oracle():
    # oracle: direct exponent-dict convolution, no polynomial code involved
    base = {1: 1, 0: 2, -1: 1}
    expected = dict_convolution(base, base)
    assert rho_dict((RHO + 2 + RHO_INV) ** 2) == expected
    assert expected == {2: 1, 1: 4, 0: 6, -1: 4, -2: 1}


def test_pow_zero_is_one():
    assert (RHO + 7 * X) ** 0 == ONE
    assert ZERO ** 0 == ONE


def test_pow_binomial_oracle():
    p = (RHO + RHO_INV) ** 3
    expected = {3 - 2 * k: comb(3, k) for k in range(4)}
    assert rho_dict(p) == expected


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        LaurentPolynomial({(): 0.5})


def test_negative_exponent_restricted_to_rho():
    with pytest.raises(ValueError):
        LaurentPolynomial({(("x", -1),): 1})
    assert monomial(1, rho=-3).min_exponent("rho") == -3


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        (RHO + 1) ** -1


# -- constant term ------------------------------------------------------------

def test_constant_term_examples():
    p = (RHO + 2 + RHO_INV) ** 2
    assert constant_term_rho(p) == 6
    assert constant_term_rho(RHO + RHO_INV) == ZERO
    kappa, omega = sym("kappa"), sym("omega")
    assert constant_term_rho(kappa + omega * RHO ** 2) == kappa


def test_constant_term_convolution_property():
    # p with only positive rho powers, q with only negative ones: the
    # constant term of p*q is the sum over matching exponents
    p_dict = {1: Fraction(2), 2: Fraction(-1), 4: Fraction(3)}
    q_dict = {-1: Fraction(5), -2: Fraction(1, 2), -3: Fraction(7)}
    p = sum((monomial(c, rho=e) for e, c in p_dict.items()), ZERO)
    q = sum((monomial(c, rho=e) for e, c in q_dict.items()), ZERO)
    expected = sum(p_dict[e] * q_dict[-e] for e in p_dict if -e in q_dict)
    assert constant_term_rho(p * q) == expected


# -- series inversion ---------------------------------------------------------

def test_series_invert_geometric():
    s = series_invert(1 - RHO, 3)
    assert s.coefficients() == {0: ONE, 1: ONE, 2: ONE, 3: ONE}
    assert s.truncation_order == 3


def test_series_invert_shifted_multiply_back():
    kh = sym("kappa_hat")
    d = RHO_INV * (1 - kh * RHO ** 2)
    s = series_invert(d, 2)
    assert s.coefficients() == {1: ONE, 3: kh}
    # multiply back: congruent to 1 through order 2
    product = s.mul_poly(d)
    for e in range(0, 3):
        assert product.coefficient(e) == (ONE if e == 0 else ZERO)


def test_series_invert_non_unit_leading():
    kh = sym("kappa_hat")
    with pytest.raises(NonUnitLeadingCoefficient):
        series_invert(kh * RHO_INV + RHO, 3)
    # nonzero rational part mixed with symbols in the lowest coefficient is
    # also refused: its inverse is not polynomial in the decorations
    with pytest.raises(NonUnitLeadingCoefficient):
        series_invert((1 + kh) + RHO, 3)
    with pytest.raises(NonUnitLeadingCoefficient):
        series_invert(ZERO, 1)


def test_series_constant_term_and_truncation():
    s = series_invert(1 - X, 4, var="x")
    assert s.constant_term() == ONE
    with pytest.raises(TruncationInsufficient):
        s.coefficient(5)
    negative = TruncatedSeries("rho", {}, -1)
    with pytest.raises(TruncationInsufficient):
        negative.constant_term()


def test_constant_term_ratio_geometric():
    # CT[ (rho + 1/rho)^2 / (1 - rho) ] with 1/(1-rho) = 1 + rho + ...
    num = (RHO + RHO_INV) ** 2
    assert constant_term_ratio(num, 1 - RHO) == 2 + 1  # rho^0 and rho^-2 terms


# -- substitution -------------------------------------------------------------

def test_substitute_cancellation():
    b, lam = Fraction(2), Fraction(3)
    p = X - b
    image = RHO + b + monomial(lam, rho=-1)
    assert p.substitute({"x": image}) == RHO + monomial(lam, rho=-1)


def test_substitute_square():
    p = X ** 2
    assert p.substitute({"x": RHO + RHO_INV}) == RHO ** 2 + 2 + monomial(1, rho=-2)


def test_substitute_evaluation():
    kappa, omega = sym("kappa"), sym("omega")
    assert (kappa * omega + kappa ** 2).substitute({"kappa": 1}) == omega + 1


def test_substitute_simultaneous():
    a, b = sym("a"), sym("b")
    p = a + b
    # bindings apply to the original symbols only
    assert p.substitute({"a": b, "b": a}) == a + b


def test_substitute_negative_exponent_needs_monomial():
    p = monomial(1, rho=-1)
    assert p.substitute({"rho": 2 * RHO}) == monomial(Fraction(1, 2), rho=-1)
    with pytest.raises(NonInvertibleSubstitution):
        p.substitute({"rho": RHO + 1})
    with pytest.raises(NonInvertibleSubstitution):
        p.substitute({"rho": X + 0})  # inverse would need x^-1


# -- division, reversal, rendering ---------------------------------------------

def test_divmod_monic():
    b0 = sym("b0")
    divisor = X ** 2 - b0 * X + 3
    quotient = X ** 3 + (1 - b0) * X
    remainder = b0 * X + Fraction(1, 2)
    dividend = quotient * divisor + remainder
    q, r = dividend.divmod_monic(divisor, "x")
    assert q == quotient and r == remainder
    with pytest.raises(ValueError):
        dividend.divmod_monic(2 * X + 1, "x")


def test_reverse():
    p = X ** 2 - 2
    assert p.reverse("x", 2) == 1 - 2 * X ** 2
    with pytest.raises(ValueError):
        p.reverse("x", 1)


def test_render_ordering():
    kappa, omega = sym("kappa"), sym("omega")
    assert (kappa ** 2 + kappa * omega).render() == "kappa^2 + kappa*omega"
    p = (RHO + 2 + RHO_INV) ** 2
    assert p.render() == "rho^2 + 4*rho + 6 + 4*rho^-1 + rho^-2"
    assert (X * 0).render() == "0"
    assert (-X + 1).render() == "-x + 1"
    assert (Fraction(3, 2) * X).render() == "3/2*x"


def test_latex():
    kappa = sym("kappa")
    assert (kappa ** 2 + 1).latex() == "\\kappa^{2} + 1"
    assert (Fraction(1, 2) * sym("x")).latex() == "\\frac{1}{2} x"
    assert sym("kappa_1").latex() == "\\kappa_{1}"


def test_parse_polynomial():
    assert parse_polynomial("kappa-1") == sym("kappa") - 1
    assert parse_polynomial("3/2") == Fraction(3, 2)
    assert parse_polynomial("(x-1)*(x+1)") == X ** 2 - 1
    assert parse_polynomial("2*rho^-2") == monomial(2, rho=-2)
    assert parse_polynomial("x^3 - 2*x") == X ** 3 - 2 * X
    with pytest.raises(ValueError):
        parse_polynomial("1.5")
    with pytest.raises(ValueError):
        parse_polynomial("x^-1")
    with pytest.raises(ValueError):
        parse_polynomial("kappa-1", allowed_symbols={"omega"})


def test_parse_render_round_trip():
    p = 3 * X ** 2 * sym("kappa") - monomial(Fraction(5, 3), rho=-2) + 7
    assert parse_polynomial(p.render()) == p


# -- ring axioms (property based) ----------------------------------------------

@st.composite
def polys(draw):
    names = ("rho", "x", "kappa")
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        exps = []
        for name in names:
            lo = -2 if name == "rho" else 0
            e = draw(st.integers(lo, 2))
            if e:
                exps.append((name, e))
        coeff = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
        mono = tuple(exps)
        terms[mono] = terms.get(mono, 0) + coeff
    return LaurentPolynomial(terms)


@settings(max_examples=120, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(0, 5))
def test_pow_matches_repeated_multiplication(a, n):
    expected = ONE
    for _ in range(n):
        expected = expected * a
    assert a ** n == expected


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(1, 4), st.integers(0, 6))
def test_series_invert_round_trip(tail, unit, order):
    # generated tails reach rho^-2, so rho^3 * tail starts at rho^1 and
    # d = unit + rho^3 * tail always satisfies the inversion precondition
    d = unit + RHO ** 3 * tail
    s = series_invert(d, order)
    product = s.mul_poly(d)
    for e in range(product.min_index(), order + 1):
        assert product.coefficient(e) == (ONE if e == 0 else ZERO)


def test_hash_consistency():
    a = X ** 2 - 1
    b = (X - 1) * (X + 1)
    assert a == b and hash(a) == hash(b)
    assert as_poly(2) == LaurentPolynomial({(): Fraction(2)})
    assert hash(as_poly(2)) == hash(LaurentPolynomial({(): Fraction(2)}))
