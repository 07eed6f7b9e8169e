"""Orthogonal polynomials of a decorated three-term recurrence.

The recurrence P_k = (x - b_{k+j-1}) P_{k-1} - lambda_{k+j-1} P_{k-2} with
P_0 = 1, P_1 = x - b_j defines the shifted family P_k^(j).  Weights come
from a :class:`WeightSpec`: rational background values b, lambda plus
additive decorations (rational or symbolic) at chosen heights.  With no
decorations the family collapses to the Chebyshev-like S_k of the
background weights alone.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NearBranchPoint, ZeroLambda
from .symbolic import LaurentPolynomial, ONE, as_poly, monomial, sym

_X = sym("x")


def _coerce_background(value, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"{what} must be an exact rational, got {value!r}")
    return Fraction(value)


class WeightSpec:
    """Strip weights: rational backgrounds plus decorations on heights.

    Effective weights are b_i = b + across[i] and lambda_i = lam + down[i],
    with the background value alone at undecorated heights.  Down
    decorations live on heights 1..L, across decorations on 0..L.  An
    effective lambda that is rational and zero is rejected: the recurrence
    and the series engines assume every lambda_i is nonzero.
    """

    __slots__ = ("strip_height", "background_b", "background_lambda",
                 "across_decorations", "down_decorations", "_key", "_hash")

    def __init__(self, L: int, b=0, lam=1, across=None, down=None):
        if not isinstance(L, int) or L < 0:
            raise ValueError(f"strip height must be a nonnegative integer, got {L!r}")
        self.strip_height = L
        self.background_b = _coerce_background(b, "background b")
        self.background_lambda = _coerce_background(lam, "background lambda")
        self.across_decorations = self._check_decorations(
            across, 0, L, "across decoration")
        self.down_decorations = self._check_decorations(
            down, 1, L, "down decoration")
        for i in range(1, L + 1):
            eff = self.effective_lambda(i)
            if eff.is_rational and eff.as_fraction() == 0:
                raise ZeroLambda(f"effective lambda at height {i} is zero")
        self._key = (self.background_b, self.background_lambda, L,
                     tuple(sorted(self.across_decorations.items())),
                     tuple(sorted(self.down_decorations.items())))
        self._hash = hash(self._key)

    @staticmethod
    def _check_decorations(values, lo: int, hi: int, what: str) -> dict:
        out = {}
        for height, value in (values or {}).items():
            if not isinstance(height, int) or not lo <= height <= hi:
                raise ValueError(f"{what} height {height!r} outside [{lo}, {hi}]")
            poly = as_poly(value)
            if not poly.is_zero:
                out[height] = poly
        return out

    def effective_b(self, i: int) -> LaurentPolynomial:
        """b_i = background + decoration (background alone beyond the strip)."""
        base = as_poly(self.background_b)
        dec = self.across_decorations.get(i)
        return base if dec is None else base + dec

    def effective_lambda(self, i: int) -> LaurentPolynomial:
        base = as_poly(self.background_lambda)
        dec = self.down_decorations.get(i)
        return base if dec is None else base + dec

    @property
    def across_heights(self) -> frozenset:
        return frozenset(self.across_decorations)

    @property
    def down_heights(self) -> frozenset:
        return frozenset(self.down_decorations)

    def without_decorations(self) -> "WeightSpec":
        return WeightSpec(self.strip_height, self.background_b, self.background_lambda)

    def shifted_down(self, j: int) -> "WeightSpec":
        """Move the strip and every decoration j heights down.

        Decorations falling below height 0 (1 for down steps) drop off."""
        if not 0 <= j <= self.strip_height:
            raise ValueError(f"shift {j} outside [0, {self.strip_height}]")
        across = {h - j: v for h, v in self.across_decorations.items() if h - j >= 0}
        down = {h - j: v for h, v in self.down_decorations.items() if h - j >= 1}
        return WeightSpec(self.strip_height - j, self.background_b,
                          self.background_lambda, across, down)

    @classmethod
    def generic(cls, L: int, b_prefix: str = "b", lam_prefix: str = "lambda") -> "WeightSpec":
        """Fully symbolic weights: b_i, lambda_i free symbols at every height."""
        return cls(
            L, 0, 0,
            across={i: sym(f"{b_prefix}{i}") for i in range(L + 1)},
            down={i: sym(f"{lam_prefix}{i}") for i in range(1, L + 1)},
        )

    def __eq__(self, other):
        if not isinstance(other, WeightSpec):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"WeightSpec(L={self.strip_height}, b={self.background_b}, "
                f"lam={self.background_lambda}, "
                f"across={{{', '.join(f'{h}: {v}' for h, v in sorted(self.across_decorations.items()))}}}, "
                f"down={{{', '.join(f'{h}: {v}' for h, v in sorted(self.down_decorations.items()))}}})")


@dataclass(frozen=True)
class OrthoPoly:
    """P_k^(j) together with its order and shift."""
    k: int
    j: int
    poly: LaurentPolynomial


@lru_cache(maxsize=4096)
def ortho_poly(k: int, j: int, w: WeightSpec) -> OrthoPoly:
    """Order-k shift-j polynomial of the three-term recurrence for w."""
    if k < 0 or j < 0:
        raise ValueError("order and shift must be nonnegative")
    if k == 0:
        return OrthoPoly(0, j, ONE)
    if k == 1:
        return OrthoPoly(1, j, _X - w.effective_b(j))
    prev = ortho_poly(k - 1, j, w).poly
    prev2 = ortho_poly(k - 2, j, w).poly
    poly = (_X - w.effective_b(k + j - 1)) * prev - w.effective_lambda(k + j - 1) * prev2
    return OrthoPoly(k, j, poly)


@lru_cache(maxsize=4096)
def _chebyshev_cached(k: int, b: LaurentPolynomial, lam: LaurentPolynomial) -> LaurentPolynomial:
    if k == 0:
        return ONE
    if k == 1:
        return _X - b
    return ((_X - b) * _chebyshev_cached(k - 1, b, lam)
            - lam * _chebyshev_cached(k - 2, b, lam))


def chebyshev_s(k: int, b=0, lam=1) -> LaurentPolynomial:
    """Constant-weight solution S_k of the recurrence; b and lam may be
    rationals or symbols.  Equals ortho_poly(k, j, w) for every j when w
    carries no decorations."""
    if k < 0:
        raise ValueError("order must be nonnegative")
    return _chebyshev_cached(k, as_poly(sym(b) if isinstance(b, str) else b),
                             as_poly(sym(lam) if isinstance(lam, str) else lam))


def reciprocal(p: OrthoPoly) -> LaurentPolynomial:
    """x**k * p(1/x): coefficient order reversed, constant coefficient 1."""
    return p.poly.reverse("x", p.k)


@lru_cache(maxsize=4096)
def _to_laurent_cached(poly: LaurentPolynomial,
                       b: Fraction, lam: Fraction) -> LaurentPolynomial:
    image = sym("rho") + b + monomial(lam, rho=-1)
    return poly.substitute({"x": image})


def to_laurent(p: OrthoPoly, b, lam) -> LaurentPolynomial:
    """Laurent form of p under x -> rho + b + lam/rho; exponents in [-k, k]."""
    lam = _coerce_background(lam, "lambda")
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero for the Laurent substitution")
    return _to_laurent_cached(p.poly, _coerce_background(b, "b"), lam)


def chebyshev_closed_form_check(k: int, x0: float) -> tuple[float, float]:
    """Pair (recurrence value, surd formula value) of S_k at x0 for b=0, lam=1.

    The recurrence side is evaluated exactly at Fraction(x0) and converted to
    float at the end; the closed form uses complex arithmetic so both sides
    of x*x = 4 work.  Used only as a numeric validation pair, never as a
    computation path.
    """
    if k < 0:
        raise ValueError("order must be nonnegative")
    if abs(x0 * x0 - 4.0) < 1e-6:
        raise NearBranchPoint(f"x0={x0} too close to a branch point")
    xq = Fraction(x0)
    prev2, prev = Fraction(1), xq
    if k == 0:
        exact = prev2
    elif k == 1:
        exact = prev
    else:
        for _ in range(k - 1):
            prev2, prev = prev, xq * prev - prev2
        exact = prev
    root = cmath.sqrt(complex(x0 * x0 - 4.0))
    closed = ((x0 + root) ** (k + 1) - (x0 - root) ** (k + 1)) / (2 ** (k + 1) * root)
    return (float(exact), closed.real)
