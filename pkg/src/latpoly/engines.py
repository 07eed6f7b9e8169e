"""Five independent engines for strip path weight polynomials.

Z_t(y', y; L) sums the weights of all length-t paths from height y' to
height y that stay inside 0..L, stepping up (+1, weight 1), across (0,
weight b_height) or down (-1, weight lambda_height of the step's top).
The engines compute it by

* brute force: depth-first enumeration of every path,
* transfer matrix: entry (y', y) of the t-th power of the Jacobi matrix,
* a series form in x: coefficient of x^t in the rational generating
  function built from reciprocal recurrence polynomials,
* a constant-term form in rho: the same rational structure after
  x -> rho + b + lambda/rho, evaluated by series inversion,
* the truncated generating function itself.

All five agree exactly; mutual agreement is the library's main test
surface, with brute force as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import SizeLimit, ZeroLambda
from .symbolic import (
    LaurentPolynomial,
    ONE,
    TruncatedSeries,
    ZERO,
    as_poly,
    monomial,
    series_invert,
    sym,
)
from .orthopoly import WeightSpec, ortho_poly, reciprocal, to_laurent

DEFAULT_BRUTE_CAP = 18

# packed signature layout: 6 bits per field, fields 0..L count across steps
# at each height, fields L+1..2L count down steps from heights 1..L
_FIELD_BITS = 6
_FIELD_MASK = (1 << _FIELD_BITS) - 1
_FIELD_MAX = _FIELD_MASK


@dataclass(frozen=True)
class StripQuery:
    """One evaluation point: length t, start y_start, end y_end, strip L."""
    t: int
    y_start: int
    y_end: int
    L: int

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"path length must be nonnegative, got {self.t}")
        if self.L < 0:
            raise ValueError(f"strip height must be nonnegative, got {self.L}")
        for name in ("y_start", "y_end"):
            y = getattr(self, name)
            if not 0 <= y <= self.L:
                raise ValueError(f"{name}={y} outside strip [0, {self.L}]")

    @property
    def y_lo(self) -> int:
        return min(self.y_start, self.y_end)

    @property
    def y_hi(self) -> int:
        return max(self.y_start, self.y_end)

    def label(self) -> str:
        return f"L={self.L};t={self.t};y0={self.y_start};y1={self.y_end}"


@dataclass(frozen=True)
class LatticePath:
    """A path as a start height and a tuple of 'up'/'across'/'down' steps."""
    start: int
    steps: tuple

    def heights(self) -> list:
        out = [self.start]
        for s in self.steps:
            out.append(out[-1] + {"up": 1, "across": 0, "down": -1}[s])
        return out

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def end(self) -> int:
        return self.heights()[-1]

    def max_height(self) -> int:
        return max(self.heights())


def path_weight(p: LatticePath, w: WeightSpec) -> LaurentPolynomial:
    """Product of edge weights: up -> 1, across at h -> b_h, down from h ->
    lambda_h.  The path must stay inside the strip of w."""
    out = ONE
    h = p.start
    L = w.strip_height
    if not 0 <= h <= L:
        raise ValueError(f"start height {h} outside strip [0, {L}]")
    for s in p.steps:
        if s == "up":
            h += 1
        elif s == "across":
            out = out * w.effective_b(h)
        elif s == "down":
            out = out * w.effective_lambda(h)
            h -= 1
        else:
            raise ValueError(f"bad step {s!r}")
        if not 0 <= h <= L:
            raise ValueError(f"path leaves the strip [0, {L}] at height {h}")
    return out


def enumerate_paths(t: int, y_start: int, L: int, y_end: int | None = None):
    """Yield every length-t strip path from y_start (optionally to y_end)."""
    if not 0 <= y_start <= L:
        raise ValueError(f"start height {y_start} outside strip [0, {L}]")
    steps: list = []

    def walk(h: int, remaining: int):
        if remaining == 0:
            if y_end is None or h == y_end:
                yield LatticePath(y_start, tuple(steps))
            return
        if y_end is not None and abs(y_end - h) > remaining:
            return
        for step, dh in (("up", 1), ("across", 0), ("down", -1)):
            nh = h + dh
            if 0 <= nh <= L:
                steps.append(step)
                yield from walk(nh, remaining - 1)
                steps.pop()

    yield from walk(y_start, t)


#: queries below this depth share one cached enumeration per start height
_SIG_GRAIN = 10


@lru_cache(maxsize=32)
def _signature_cells(L: int, y_start: int, t_max: int, zero_across: frozenset):
    """Packed weight signatures of every path of length <= t_max from y_start.

    Returns {(t, y_end): {packed signature: path count}}.  The signature
    records, per height, how many across steps and down steps the path
    used; together with unit up weights it determines the path weight.
    Pure depth-first enumeration, no recurrences; the only pruning is the
    strip itself and across steps at heights whose weight is known to be
    rational zero (such paths contribute nothing).
    """
    across_bit = [None if i in zero_across else 1 << (_FIELD_BITS * i)
                  for i in range(L + 1)]
    down_bit = [None] + [1 << (_FIELD_BITS * (L + i)) for i in range(1, L + 1)]
    cells: dict = {}
    stack = [(y_start, 0, 0)]
    while stack:
        y, t, sig = stack.pop()
        cell = cells.get((t, y))
        if cell is None:
            cell = cells[(t, y)] = {}
        cell[sig] = cell.get(sig, 0) + 1
        if t == t_max:
            continue
        if across_bit[y] is not None:
            stack.append((y, t + 1, sig + across_bit[y]))
        if y < L:
            stack.append((y + 1, t + 1, sig))
        if y > 0:
            stack.append((y - 1, t + 1, sig + down_bit[y]))
    return cells


def _zero_across_heights(w: WeightSpec) -> frozenset:
    return frozenset(i for i in range(w.strip_height + 1)
                     if w.effective_b(i).is_zero)


def _evaluate_signatures(cell: dict, L: int, w: WeightSpec) -> LaurentPolynomial:
    """Sum of count * product-of-weight-powers over a signature cell."""
    bg_b, bg_l = w.background_b, w.background_lambda
    dec_a = sorted(w.across_heights)
    dec_d = sorted(w.down_heights)
    # quick-reject mask: any across step at a height with rational weight 0
    zero_mask = 0
    for i in range(L + 1):
        if i not in w.across_heights and bg_b == 0:
            zero_mask |= _FIELD_MASK << (_FIELD_BITS * i)

    bg_across = frozenset(i for i in range(L + 1) if i not in w.across_heights)
    bg_down = frozenset(i for i in range(1, L + 1) if i not in w.down_heights)

    reduced: dict = {}
    for sig, count in cell.items():
        if zero_mask & sig:
            continue
        fields = []
        rest = sig
        while rest:
            fields.append(rest & _FIELD_MASK)
            rest >>= _FIELD_BITS
        fields.extend([0] * (2 * L + 1 - len(fields)))
        n_bg_a = sum(fields[i] for i in bg_across)
        n_bg_d = sum(fields[L + i] for i in bg_down)
        key = tuple([fields[h] for h in dec_a]
                    + [fields[L + h] for h in dec_d]
                    + [n_bg_a, n_bg_d])
        reduced[key] = reduced.get(key, 0) + count

    power_cache: dict = {}

    def dec_power(kind: str, h: int, e: int) -> LaurentPolynomial:
        ck = (kind, h, e)
        if ck not in power_cache:
            base = w.effective_b(h) if kind == "a" else w.effective_lambda(h)
            power_cache[ck] = base ** e
        return power_cache[ck]

    n_dec = len(dec_a) + len(dec_d)
    acc: dict = {}
    for key, count in reduced.items():
        n_bg_a, n_bg_d = key[n_dec], key[n_dec + 1]
        scalar = Fraction(count)
        if n_bg_a:
            if bg_b == 0:
                continue
            scalar *= bg_b ** n_bg_a
        if n_bg_d:
            scalar *= bg_l ** n_bg_d
        piece = as_poly(scalar)
        for idx, h in enumerate(dec_a):
            if key[idx]:
                piece = piece * dec_power("a", h, key[idx])
        for idx, h in enumerate(dec_d):
            if key[len(dec_a) + idx]:
                piece = piece * dec_power("d", h, key[len(dec_a) + idx])
        for mono, coeff in piece.terms().items():
            v = acc.get(mono, 0) + coeff
            if v:
                acc[mono] = v
            elif mono in acc:
                del acc[mono]
    return LaurentPolynomial._raw(acc)


def brute_force(q: StripQuery, w: WeightSpec, cap: int = DEFAULT_BRUTE_CAP) -> LaurentPolynomial:
    """Ground truth: exact sum of path_weight over every valid path.

    Depth-first enumeration with strip pruning; each path contributes its
    per-height step-usage signature, and signatures are evaluated against
    the weights afterwards (identical weight products are grouped, nothing
    else is shared between paths)."""
    if q.t > cap:
        raise SizeLimit(f"t={q.t} exceeds the brute-force cap {cap}")
    if q.t > _FIELD_MAX:
        raise SizeLimit(f"t={q.t} exceeds the signature field width {_FIELD_MAX}")
    if q.L != w.strip_height:
        raise ValueError(f"query strip L={q.L} != weights strip L={w.strip_height}")
    cells = _signature_cells(q.L, q.y_start, max(q.t, _SIG_GRAIN),
                             _zero_across_heights(w))
    cell = cells.get((q.t, q.y_end))
    if not cell:
        return ZERO
    return _evaluate_signatures(cell, q.L, w)


def jacobi_matrix(L: int, w: WeightSpec) -> list:
    """The (L+1) x (L+1) tridiagonal transfer matrix: row y lists the weights
    of steps leaving height y (superdiagonal 1 for up, diagonal b_y, and
    subdiagonal lambda_y for down)."""
    n = L + 1
    m = [[ZERO] * n for _ in range(n)]
    for y in range(n):
        m[y][y] = w.effective_b(y)
        if y + 1 < n:
            m[y][y + 1] = ONE
        if y - 1 >= 0:
            m[y][y - 1] = w.effective_lambda(y)
    return m


@lru_cache(maxsize=8192)
def _transfer_row(L: int, w: WeightSpec, y_start: int, t: int) -> tuple:
    """Row y_start of the t-th transfer matrix power (iterated multiplication)."""
    if t == 0:
        return tuple(ONE if y == y_start else ZERO for y in range(L + 1))
    prev = _transfer_row(L, w, y_start, t - 1)
    out = []
    for y in range(L + 1):
        acc = prev[y] * w.effective_b(y)
        if y - 1 >= 0:
            acc = acc + prev[y - 1]  # up step into y has weight 1
        if y + 1 <= L:
            acc = acc + prev[y + 1] * w.effective_lambda(y + 1)
        out.append(acc)
    return tuple(out)


def transfer_matrix(q: StripQuery, w: WeightSpec) -> LaurentPolynomial:
    """Entry (y_start, y_end) of the t-th power of the Jacobi matrix."""
    if q.L != w.strip_height:
        raise ValueError(f"query strip L={q.L} != weights strip L={w.strip_height}")
    return _transfer_row(q.L, w, q.y_start, q.t)[q.y_end]


def h_factor(q: StripQuery, w: WeightSpec) -> LaurentPolynomial:
    """Product of effective lambda_l over y_end < l <= y_start (1 otherwise);
    compensates a start height above the end height."""
    out = ONE
    for l in range(q.y_end + 1, q.y_start + 1):
        out = out * w.effective_lambda(l)
    return out


def _series_numerator(q: StripQuery, w: WeightSpec) -> LaurentPolynomial:
    lo, hi = q.y_lo, q.y_hi
    num = reciprocal(ortho_poly(lo, 0, w))
    num = num * h_factor(q, w)
    num = num * reciprocal(ortho_poly(q.L - hi, hi + 1, w))
    if hi - lo:
        num = num * monomial(1, x=hi - lo)
    return num


def viennot_ct(q: StripQuery, w: WeightSpec) -> LaurentPolynomial:
    """Coefficient of x^t in the rational generating function

        x^(Y-Y') * recip(P_Y') * h * recip(P^(Y+1)_{L-Y}) / recip(P_{L+1})

    where Y' and Y are the lower and upper of the two boundary heights.
    The denominator has constant coefficient 1 (reciprocal of a monic
    polynomial), so the series inversion is valid with fully symbolic
    weights."""
    if q.L != w.strip_height:
        raise ValueError(f"query strip L={q.L} != weights strip L={w.strip_height}")
    num = _series_numerator(q, w)
    if num.is_zero:
        return ZERO
    den = reciprocal(ortho_poly(q.L + 1, 0, w))
    inv = series_invert(den, q.t, var="x")
    return inv.mul_poly(num).coefficient(q.t)


def generating_function(y_start: int, y_end: int, L: int, w: WeightSpec,
                        order: int) -> TruncatedSeries:
    """Truncated series in x whose x^t coefficient is Z_t(y_start, y_end; L)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    q = StripQuery(0, y_start, y_end, L)
    if L != w.strip_height:
        raise ValueError(f"argument L={L} != weights strip L={w.strip_height}")
    num = _series_numerator(q, w)
    den = reciprocal(ortho_poly(L + 1, 0, w))
    inv = series_invert(den, order, var="x")
    product = inv.mul_poly(num)
    coeffs = {e: product.coefficient(e)
              for e in range(0, order + 1)}
    return TruncatedSeries("x", coeffs, order)


@lru_cache(maxsize=4096)
def _kernel_power(b: Fraction, lam: Fraction, t: int) -> LaurentPolynomial:
    return (sym("rho") + b + monomial(lam, rho=-1)) ** t


@lru_cache(maxsize=512)
def _rho_denominator_inverse(w: WeightSpec, b: Fraction, lam: Fraction,
                             order: int) -> TruncatedSeries:
    den = to_laurent(ortho_poly(w.strip_height + 1, 0, w), b, lam)
    return series_invert(den, order, var="rho")


def rho_ct(q: StripQuery, w: WeightSpec, b=None, lam=None) -> LaurentPolynomial:
    """Constant term in rho of

        (rho + b + lam/rho)^t * R_Y' * h * R^(Y+1)_{L-Y} / R_{L+1} * (lam/rho - rho)

    where R is the recurrence polynomial after x -> rho + b + lam/rho.  The
    backgrounds must be rational (the lowest coefficient of R_{L+1} is then
    the unit lam^(L+1)); decorations may stay symbolic.  The denominator is
    inverted to order t + L + 2 and the margin over the integrand's actual
    rho support is checked at runtime rather than trusted."""
    if q.L != w.strip_height:
        raise ValueError(f"query strip L={q.L} != weights strip L={w.strip_height}")
    b = w.background_b if b is None else Fraction(b)
    lam = w.background_lambda if lam is None else Fraction(lam)
    if b != w.background_b or lam != w.background_lambda:
        raise ValueError("explicit backgrounds must match the weight spec")
    if lam == 0:
        raise ZeroLambda("rho constant-term engine needs a nonzero background lambda")
    L, t = q.L, q.t
    lo, hi = q.y_lo, q.y_hi
    num = _kernel_power(b, lam, t)
    num = num * to_laurent(ortho_poly(lo, 0, w), b, lam)
    num = num * h_factor(q, w)
    num = num * to_laurent(ortho_poly(L - hi, hi + 1, w), b, lam)
    num = num * (monomial(lam, rho=-1) - sym("rho"))
    if num.is_zero:
        return ZERO
    order = t + L + 2
    # safety margin: the numerator support must sit strictly inside the
    # inverted range, with one spare order
    need = -(L + 1) - num.min_exponent("rho")
    if order < need + 1:
        raise RuntimeError(
            f"series order {order} does not cover the integrand support {need}")
    inv = _rho_denominator_inverse(w, b, lam, order)
    return inv.mul_poly(num).constant_term()
