"""Closed forms for decorated Dyck path weight polynomials.

Three weight families, each with two independent evaluations:

* two boundary weights (one decorated down step at each wall, heights 1
  and L): a constant-term ratio in rho, and an equivalent 5-fold binomial
  sum over extended Catalan numbers,
* four boundary weights (two decorated rows at each wall, heights 1, 2,
  L-1, L): a constant-term ratio and a 9-fold sum,
* the nested-sum formula of Rogers type for arbitrarily many down weights,
  stratified by the exact maximum height a path attains.

Internally the two-wall families compute with the hatted differences
kappa_hat = kappa - 1, omega_hat = omega - 1 (those keep the intermediate
polynomials sparse) and substitute the user's symbols or rationals only at
output.

The outer sums of the binomial expansions are infinite as written; each
summand vanishes outside the support of its binomial factors, which yields
finite ranges derived below.  One extra layer beyond the derived range is
always evaluated and asserted to be zero, so a wrong bound fails loudly
instead of truncating silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import IndexOutOfRange, InsufficientWeights
from .symbolic import (
    LaurentPolynomial,
    ONE,
    ZERO,
    as_poly,
    constant_term_ratio,
    monomial,
    sym,
)
from .orthopoly import WeightSpec

_RHO = sym("rho")
_KH = sym("kappa_hat")
_OH = sym("omega_hat")
_KH1 = sym("kappa_hat_1")
_KH2 = sym("kappa_hat_2")
_OH1 = sym("omega_hat_1")
_OH2 = sym("omega_hat_2")


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero whenever n < 0, k < 0 or k > n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def extended_catalan(n: int, k: int) -> int:
    """C(2n, k) - C(2n, k-1) under the vanishing convention above."""
    return binom(2 * n, k) - binom(2 * n, k - 1)


def _coerce_value(value) -> LaurentPolynomial:
    if isinstance(value, str):
        return sym(value)
    return as_poly(value)


@dataclass(frozen=True)
class DmrParams:
    """Dyck paths of length 2r in a strip of height L >= 2, with the down
    weight at height 1 equal to kappa and at height L equal to omega
    (background b=0, lambda=1)."""
    r: int
    L: int
    kappa: LaurentPolynomial = field(default_factory=lambda: sym("kappa"))
    omega: LaurentPolynomial = field(default_factory=lambda: sym("omega"))

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"half-length r must be nonnegative, got {self.r}")
        if self.L < 2:
            raise ValueError(
                f"strip height must be at least 2 so the two decorated"
                f" heights are distinct, got L={self.L}")
        object.__setattr__(self, "kappa", _coerce_value(self.kappa))
        object.__setattr__(self, "omega", _coerce_value(self.omega))

    def weight_spec(self) -> WeightSpec:
        return WeightSpec(self.L, 0, 1,
                          down={1: self.kappa - 1, self.L: self.omega - 1})

    def _output_substitution(self) -> dict:
        return {"kappa_hat": self.kappa - 1, "omega_hat": self.omega - 1}


@dataclass(frozen=True)
class FourWeightParams:
    """Dyck paths of length 2r in a strip of height L >= 4, with down
    weights kappa1, kappa2 at heights 1, 2 and omega2, omega1 at heights
    L-1, L (background b=0, lambda=1)."""
    r: int
    L: int
    kappa1: LaurentPolynomial = field(default_factory=lambda: sym("kappa_1"))
    kappa2: LaurentPolynomial = field(default_factory=lambda: sym("kappa_2"))
    omega1: LaurentPolynomial = field(default_factory=lambda: sym("omega_1"))
    omega2: LaurentPolynomial = field(default_factory=lambda: sym("omega_2"))

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"half-length r must be nonnegative, got {self.r}")
        if self.L < 4:
            raise ValueError(
                f"strip height must be at least 4 so the four decorated"
                f" heights are distinct, got L={self.L}")
        for name in ("kappa1", "kappa2", "omega1", "omega2"):
            object.__setattr__(self, name, _coerce_value(getattr(self, name)))

    def weight_spec(self) -> WeightSpec:
        return WeightSpec(self.L, 0, 1, down={
            1: self.kappa1 - 1,
            2: self.kappa2 - 1,
            self.L - 1: self.omega2 - 1,
            self.L: self.omega1 - 1,
        })

    def _output_substitution(self) -> dict:
        return {
            "kappa_hat_1": self.kappa1 - 1,
            "kappa_hat_2": self.kappa2 - 1,
            "omega_hat_1": self.omega1 - 1,
            "omega_hat_2": self.omega2 - 1,
        }


def dmr_ct(p: DmrParams) -> LaurentPolynomial:
    """Two-wall weight polynomial as a constant term in rho.

    CT[ (rho + 1/rho)^(2r) * (1 - rho^2) * (A rho^L - B rho^-L)
                                         / (A C rho^L - B D rho^-L) ]
    with A = rho^2 - omega_hat, B = 1 - omega_hat rho^2,
         C = rho^2 - kappa_hat, D = 1 - kappa_hat rho^2.
    The lowest denominator coefficient is -1, so the series inversion is a
    unit inversion regardless of the decoration values.
    """
    r, L = p.r, p.L
    rho2 = _RHO ** 2
    a = rho2 - _OH
    b = 1 - _OH * rho2
    c = rho2 - _KH
    d = 1 - _KH * rho2
    kernel = (_RHO + monomial(1, rho=-1)) ** (2 * r)
    num = kernel * (1 - rho2) * (a * monomial(1, rho=L) - b * monomial(1, rho=-L))
    den = a * c * monomial(1, rho=L) - b * d * monomial(1, rho=-L)
    ct = constant_term_ratio(num, den, var="rho")
    return ct.substitute(p._output_substitution())


def dmr_sum(p: DmrParams) -> LaurentPolynomial:
    """Two-wall weight polynomial as the 5-fold extended-Catalan sum.

    The summand carries C_{r; r-k-1} and C_{r; r-k} with
    k = p1 + p2 - s1 - s2 + (L+2)m - 1, which vanish once k > r; with
    s1, s2 <= m that bounds m by (r+1)/L and, per (m, s1, s2), bounds
    p1 + p2 by r + 1 + s1 + s2 - (L+2)m.  The sums run one layer past
    those bounds and the extra layer is checked to be zero.
    """
    r, L = p.r, p.L
    total = ZERO
    # single sum over m >= 0: support of C_{r; r-m} ends at m = r
    for m in range(0, r + 2):
        term = extended_catalan(r, r - m)
        if m == r + 1:
            assert term == 0, "guard layer of the single sum must vanish"
        if term:
            total = total + term * _KH ** m

    m_max = (r + 1) // L
    for m in range(1, m_max + 2):
        layer = ZERO
        p_guard = ZERO
        for s1 in range(0, m + 1):
            for s2 in range(0, m + 1):
                sign = -1 if (s1 + s2) % 2 else 1
                pref = (sign * binom(m, s1) * binom(m, s2))
                if pref == 0:
                    continue
                p_bound = r + 1 + s1 + s2 - (L + 2) * m  # support of p1 + p2
                p_cap = max(p_bound, -1) + 1  # one guard diagonal
                for p1 in range(0, p_cap + 1):
                    for p2 in range(0, p_cap - p1 + 1):
                        k = p1 + p2 - s1 - s2 + (L + 2) * m - 1
                        c_low = extended_catalan(r, r - k - 1)
                        c_high = extended_catalan(r, r - k)
                        if not c_low and not c_high:
                            continue
                        coeff = (Fraction(pref)
                                 * binom(m - 1 + p1, p1) * binom(m + p2, p2)
                                 * (Fraction(c_low)
                                    - Fraction(m - s2, m + p2) * c_high))
                        if not coeff:
                            continue
                        piece = coeff * (_KH ** (s2 + p2)) * (_OH ** (s1 + p1))
                        if p1 + p2 == p_cap:
                            p_guard = p_guard + piece
                        else:
                            layer = layer + piece
        assert p_guard.is_zero, "guard diagonal of the p sums must vanish"
        if m == m_max + 1:
            assert layer.is_zero, "guard layer of the m sum must vanish"
        total = total + layer
    return total.substitute(p._output_substitution())


def four_weight_ct(p: FourWeightParams) -> LaurentPolynomial:
    """Four-wall weight polynomial as a constant term in rho.

    CT[ (rho + 1/rho)^(2r) * (A B rho^L - Ab Bb rho^-L)
                           / (C B rho^L - Cb Bb rho^-L) * (1/rho - rho) ]
    with  A = 1 - kh2/rho^2            Ab = 1 - kh2 rho^2
          B = rho - (oh1+oh2)/rho - oh2/rho^3
          Bb = 1/rho - (oh1+oh2) rho - oh2 rho^3
          C = rho - (kh1+kh2)/rho - kh2/rho^3
          Cb = 1/rho - (kh1+kh2) rho - kh2 rho^3.
    """
    r, L = p.r, p.L
    inv1 = monomial(1, rho=-1)
    inv2 = monomial(1, rho=-2)
    inv3 = monomial(1, rho=-3)
    rho1, rho2, rho3 = _RHO, _RHO ** 2, _RHO ** 3
    a = 1 - _KH2 * inv2
    a_bar = 1 - _KH2 * rho2
    b = rho1 - (_OH1 + _OH2) * inv1 - _OH2 * inv3
    b_bar = inv1 - (_OH1 + _OH2) * rho1 - _OH2 * rho3
    c = rho1 - (_KH1 + _KH2) * inv1 - _KH2 * inv3
    c_bar = inv1 - (_KH1 + _KH2) * rho1 - _KH2 * rho3
    kernel = (_RHO + inv1) ** (2 * r)
    num = kernel * (a * b * monomial(1, rho=L) - a_bar * b_bar * monomial(1, rho=-L))
    num = num * (inv1 - rho1)
    den = c * b * monomial(1, rho=L) - c_bar * b_bar * monomial(1, rho=-L)
    ct = constant_term_ratio(num, den, var="rho")
    return ct.substitute(p._output_substitution())


def _inner_triple(u: int, r: int) -> LaurentPolynomial:
    """kh2 * C(2r, u+2) - (kh2 + 1) * C(2r, u+1) + C(2r, u) as a polynomial
    in kappa_hat_2."""
    hi = binom(2 * r, u + 2)
    mid = binom(2 * r, u + 1)
    lo = binom(2 * r, u)
    return _KH2 * (hi - mid) + (lo - mid)


def _inner_triple_rev(u: int, r: int) -> LaurentPolynomial:
    """kh2 * C(2r, u-1) - (kh2 + 1) * C(2r, u) + C(2r, u+1)."""
    lo = binom(2 * r, u - 1)
    mid = binom(2 * r, u)
    hi = binom(2 * r, u + 1)
    return _KH2 * (lo - mid) + (hi - mid)


def four_weight_sum(p: FourWeightParams) -> LaurentPolynomial:
    """Four-wall weight polynomial as the 9-fold binomial sum.

    The binomial triples vanish once u exceeds 2r + 1.  With u1 bounded
    below by r + m(L-2) + v1 + v2 (using s <= m, i <= s, j <= v), the m
    layers stop at (r+1)//(L-2) and, per m, v1 + v2 is bounded by
    r + 1 - m(L-2).  One guard layer is evaluated and checked in both the
    m and the v directions.  The second piece of the bracket is skipped
    when its binomial prefactor vanishes; that is exactly what keeps the
    exponent of (kappa_hat_1 + kappa_hat_2) nonnegative.
    """
    r, L = p.r, p.L
    kh12 = _KH1 + _KH2
    oh12 = _OH1 + _OH2
    total = ZERO

    # double sum: support ends at i = r since u0 = r + 2i - j >= r + i
    for i in range(0, r + 2):
        layer = ZERO
        for j in range(0, i + 1):
            triple = _inner_triple(r + 2 * i - j, r)
            if triple.is_zero:
                continue
            layer = layer + (binom(i, j) * kh12 ** j * _KH2 ** (i - j)) * triple
        if i == r + 1:
            assert layer.is_zero, "guard layer of the double sum must vanish"
        total = total + layer

    m_max = (r + 1) // (L - 2)
    for m in range(1, m_max + 2):
        m_layer = ZERO
        v_guard = ZERO
        v_cap = max(r + 1 - m * (L - 2), -1) + 1  # one guard diagonal
        for s1 in range(0, m + 1):
            for i1 in range(0, s1 + 1):
                for s2 in range(0, m + 1):
                    b_s2 = binom(m, s2)
                    for i2 in range(0, s2 + 1):
                        sign = -1 if (s1 + s2 + i1 + i2) % 2 else 1
                        base = sign * binom(s1, i1) * b_s2 * binom(s2, i2)
                        if base == 0:
                            continue
                        for v1 in range(0, v_cap + 1):
                            for v2 in range(0, v_cap - v1 + 1):
                                b_v2 = binom(v2 + m - 1, m - 1)
                                if b_v2 == 0:
                                    continue
                                u1 = (r + m * L + v1 + v2 + s1 + s2
                                      - 2 * i1 - 2 * i2)
                                on_guard = v1 + v2 == v_cap
                                acc = ZERO
                                for j1 in range(0, v1 + 1):
                                    bj1 = binom(v1, j1)
                                    for j2 in range(0, v2 + 1):
                                        u = u1 + j1 + j2
                                        piece1 = _inner_triple(u, r)
                                        piece2 = _inner_triple_rev(u, r)
                                        if piece1.is_zero and piece2.is_zero:
                                            continue
                                        pref = base * bj1 * binom(v2, j2) * b_v2
                                        if pref == 0:
                                            continue
                                        common = (pref
                                                  * _KH2 ** (i1 + j1)
                                                  * _OH2 ** (i2 + j2)
                                                  * oh12 ** (m + v2 - s2 - j2))
                                        e1 = m + v1 - s1 - j1
                                        c1 = binom(m, s1) * binom(v1 + m, m)
                                        if c1 and not piece1.is_zero:
                                            acc = acc + (
                                                common * c1 * kh12 ** e1 * piece1)
                                        c2 = binom(m - 1, s1) * binom(v1 + m - 1, m - 1)
                                        if c2 and not piece2.is_zero:
                                            # c2 != 0 forces s1 <= m-1, so the
                                            # exponent e1 - 1 is nonnegative
                                            acc = acc - (
                                                common * c2 * kh12 ** (e1 - 1) * piece2)
                                if on_guard:
                                    v_guard = v_guard + acc
                                else:
                                    m_layer = m_layer + acc
        assert v_guard.is_zero, "guard diagonal of the v sums must vanish"
        if m == m_max + 1:
            assert m_layer.is_zero, "guard layer of the m sum must vanish"
        total = total + m_layer
    return total.substitute(p._output_substitution())


def _coerce_kappas(kappas) -> list:
    return [_coerce_value(k) for k in kappas]


def stratified_weight(n: int, l: int, kappas) -> LaurentPolynomial:
    """Weight polynomial of the length-2n Dyck paths whose maximum height is
    exactly l + 1, with down weight kappa_i at height i.

    The stratum is the nested sum over strictly decreasing index chains
    n > j_1 > j_2 > ... > j_l > 0, each chain contributing

        prod_k  C(j_k - j_{k+2} - 1, j_k - j_{k+1} - 1)
                * kappa_1^(n - j_1) * ... * kappa_{l+1}^(j_l)

    (j_0 = n, j_{l+1} = 0).  The chain records how many down steps fall
    from each height; the binomial counts the interleavings of the level
    k+2 excursions among the level k+1 arches.
    """
    if n < 0:
        raise ValueError(f"half-length must be nonnegative, got {n}")
    if l < 0:
        raise IndexOutOfRange(f"stratum index must be nonnegative, got {l}")
    if l >= n:
        return ZERO  # a length-2n Dyck path cannot reach height n + 1
    kappas = _coerce_kappas(kappas)
    if len(kappas) < l + 1:
        raise InsufficientWeights(
            f"stratum {l} needs {l + 1} down weights, got {len(kappas)}")
    if l == 0:
        return kappas[0] ** n
    total = ZERO
    chain = [n] + [0] * (l + 1)  # chain[0] = j_0 = n, chain[l+1] = 0

    def descend(depth: int):
        nonlocal total
        if depth > l:
            coeff = 1
            for k in range(l):
                coeff *= binom(chain[k] - chain[k + 2] - 1,
                               chain[k] - chain[k + 1] - 1)
                if coeff == 0:
                    return
            term = as_poly(coeff)
            for k in range(l + 1):
                e = chain[k] - chain[k + 1]
                if e:
                    term = term * kappas[k] ** e
            total = total + term
            return
        lo = l + 1 - depth
        for j in range(lo, chain[depth - 1]):
            chain[depth] = j
            descend(depth + 1)
        chain[depth] = 0

    descend(1)
    return total


def rogers(n: int, L, kappas) -> LaurentPolynomial:
    """Weight polynomial of all length-2n Dyck paths in a strip of height L
    (L may be None or infinity for the half plane), as the sum of the
    maximum-height strata.  Needs min(n, L) down weights."""
    if n < 0:
        raise ValueError(f"half-length must be nonnegative, got {n}")
    if n == 0:
        return ONE  # the empty path, below any stratum
    if L is None or L == float("inf"):
        l_max = n - 1
    else:
        if L < 0:
            raise ValueError(f"strip height must be nonnegative, got {L}")
        l_max = min(n - 1, L - 1)  # empty for L = 0: no room to move
    kappas = _coerce_kappas(kappas)
    if len(kappas) < l_max + 1:
        raise InsufficientWeights(
            f"need {l_max + 1} down weights, got {len(kappas)}")
    total = ZERO
    for l in range(l_max + 1):
        total = total + stratified_weight(n, l, kappas)
    return total


def rogers_weight_spec(L: int, kappas) -> WeightSpec:
    """Strip weights matching :func:`rogers`: down weight kappa_i at height i."""
    kappas = _coerce_kappas(kappas)
    down = {}
    for i in range(1, min(len(kappas), L) + 1):
        down[i] = kappas[i - 1] - 1
    return WeightSpec(L, 0, 1, down=down)
