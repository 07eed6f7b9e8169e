"""Exact sparse multivariate Laurent polynomials over the rationals.

A polynomial is a mapping from monomials to coefficients.  A monomial is a
sorted tuple of (symbol, exponent) pairs with every exponent nonzero; the
empty tuple is the constant monomial.  Coefficients are exact (int or
Fraction) and zero coefficients are never stored, so structural equality of
normalized values coincides with mathematical equality.  Floats are rejected
outright.

Only the distinguished series variable ``rho`` may carry negative exponents.
All other symbols live in an ordinary polynomial ring; that restriction
makes the precondition of :func:`series_invert` checkable in one pass over
the lowest coefficient.

:class:`TruncatedSeries` holds finitely many coefficients of a Laurent
series in one designated variable, each coefficient a polynomial in the
remaining symbols, together with the largest exponent that can be trusted.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    NonInvertibleSubstitution,
    NonUnitLeadingCoefficient,
    TruncationInsufficient,
)

#: the single variable allowed negative exponents
SERIES_VAR = "rho"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# a monomial is tuple[tuple[str, int], ...]: sorted (symbol, exponent) pairs


def _coerce_coeff(value) -> int | Fraction:
    if isinstance(value, (int, Fraction)):
        return value
    raise TypeError(f"exact coefficient required, got {type(value).__name__}")


def _mono_mul(m1, m2):
    """Merge two monomials (exponents add, zeros drop)."""
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for name, e in m2:
        n = acc.get(name, 0) + e
        if n:
            acc[name] = n
        else:
            del acc[name]
    return tuple(sorted(acc.items()))


class LaurentPolynomial:
    """Immutable exact polynomial, Laurent in ``rho`` only.

    Build values with :func:`sym`, :func:`const` and ordinary arithmetic;
    the class overloads +, -, * and ** (nonnegative integer powers), and
    mixes freely with int and Fraction operands.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        normalized: dict = {}
        for mono, coeff in (terms or {}).items():
            coeff = _coerce_coeff(coeff)
            if coeff == 0:
                continue
            mono = tuple(sorted((str(n), int(e)) for n, e in mono if e != 0))
            for name, e in mono:
                if e < 0 and name != SERIES_VAR:
                    raise ValueError(
                        f"negative exponent on {name!r}: only {SERIES_VAR!r} may be negative")
                if not _NAME_RE.match(name):
                    raise ValueError(f"bad symbol name {name!r}")
            normalized[mono] = normalized.get(mono, 0) + coeff
        self._terms = {m: c for m, c in normalized.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPolynomial":
        # internal fast path: terms already normalized (sorted monomials, no zeros)
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ---------------------------------------------------------

    def terms(self):
        """Mapping of monomial tuples to coefficients (do not mutate)."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_rational(self) -> bool:
        """True when no symbols occur (the zero polynomial counts)."""
        return all(not m for m in self._terms)

    def as_fraction(self) -> Fraction:
        """The value of a constant polynomial, as a Fraction."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and () in self._terms:
            return Fraction(self._terms[()])
        raise ValueError(f"not a constant polynomial: {self}")

    def symbols(self) -> set:
        return {name for m in self._terms for name, _ in m}

    def term_count(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Largest sum of exponents over the terms (0 for the zero polynomial)."""
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def exponents_of(self, var: str):
        """Sorted distinct exponents of ``var`` across all terms."""
        seen = set()
        for m in self._terms:
            seen.add(dict(m).get(var, 0))
        return sorted(seen)

    def min_exponent(self, var: str) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no extremal exponent")
        return min(dict(m).get(var, 0) for m in self._terms)

    def max_exponent(self, var: str) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no extremal exponent")
        return max(dict(m).get(var, 0) for m in self._terms)

    def degree(self, var: str) -> int:
        return self.max_exponent(var)

    def coefficient_of(self, var: str, exponent: int) -> "LaurentPolynomial":
        """Coefficient of var**exponent, as a polynomial in the other symbols."""
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            if d.pop(var, 0) == exponent:
                out[tuple(sorted(d.items()))] = c
        return LaurentPolynomial._raw(out)

    def constant_term(self, var: str = SERIES_VAR) -> "LaurentPolynomial":
        """Coefficient of var**0 (all terms not containing var)."""
        return self.coefficient_of(var, 0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = as_poly(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return LaurentPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __rsub__(self, other):
        return as_poly(other) + (-self)

    def __mul__(self, other):
        other = as_poly(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return LaurentPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power requires a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == as_poly(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- structural operations ----------------------------------------------

    def substitute(self, bindings: dict) -> "LaurentPolynomial":
        """Simultaneously replace symbols by polynomials or rationals.

        A symbol appearing with a negative exponent may only be bound to an
        invertible monomial (single term whose inverse stays in the ring);
        anything else raises NonInvertibleSubstitution.
        """
        bound = {name: as_poly(v) for name, v in bindings.items()}
        power_cache: dict = {}

        def bound_power(name: str, e: int) -> LaurentPolynomial:
            key = (name, e)
            if key not in power_cache:
                p = bound[name]
                if e >= 0:
                    power_cache[key] = p ** e
                else:
                    if len(p._terms) != 1:
                        raise NonInvertibleSubstitution(
                            f"cannot raise non-monomial binding of {name!r} to power {e}")
                    (mono, coeff), = p._terms.items()
                    inv_mono = tuple((n, -k) for n, k in mono)
                    for n, k in inv_mono:
                        if k < 0 and n != SERIES_VAR:
                            raise NonInvertibleSubstitution(
                                f"inverse of binding for {name!r} leaves the ring")
                    power_cache[key] = LaurentPolynomial(
                        {inv_mono: Fraction(1, 1) / coeff}) ** (-e)
            return power_cache[key]

        out = ZERO
        for m, c in self._terms.items():
            kept = []
            factor = None
            for name, e in m:
                if name in bound:
                    f = bound_power(name, e)
                    factor = f if factor is None else factor * f
                else:
                    kept.append((name, e))
            term = LaurentPolynomial._raw({tuple(kept): c})
            out = out + (term if factor is None else term * factor)
        return out

    def reverse(self, var: str, k: int) -> "LaurentPolynomial":
        """Exponent reversal e -> k - e in ``var`` (i.e. var**k * p(1/var)).

        Requires 0 <= e <= k for every exponent of ``var`` so the result
        stays in the ordinary polynomial ring.
        """
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.pop(var, 0)
            if e < 0 or e > k:
                raise ValueError(f"exponent {e} of {var!r} outside [0, {k}]")
            if k - e:
                d[var] = k - e
            out[tuple(sorted(d.items()))] = c
        return LaurentPolynomial._raw(out)

    def divmod_monic(self, divisor: "LaurentPolynomial", var: str):
        """Quotient and remainder by a divisor monic in ``var``.

        Monic means the leading coefficient (as a polynomial in ``var``) is
        the constant 1, so no coefficient division is ever needed.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        d_deg = divisor.max_exponent(var)
        if divisor.coefficient_of(var, d_deg) != ONE:
            raise ValueError(f"divisor is not monic in {var!r}")
        quotient = ZERO
        remainder = self
        while not remainder.is_zero and remainder.max_exponent(var) >= d_deg:
            e = remainder.max_exponent(var)
            lead = remainder.coefficient_of(var, e)
            shift = lead * monomial(1, **{var: e - d_deg})
            quotient = quotient + shift
            remainder = remainder - shift * divisor
        return quotient, remainder

    # -- rendering ------------------------------------------------------------

    def _sorted_terms(self):
        names = sorted(self.symbols())
        index = {n: i for i, n in enumerate(names)}

        def key(item):
            mono, _ = item
            vec = [0] * len(names)
            for n, e in mono:
                vec[index[n]] = e
            return (sum(e for _, e in mono), tuple(vec))

        return sorted(self._terms.items(), key=key, reverse=True)

    def render(self) -> str:
        """Canonical text form: terms by descending total degree, then
        descending lexicographic exponent vector over the sorted symbols."""
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self._sorted_terms():
            factors = [(n if e == 1 else f"{n}^{e}") for n, e in mono]
            mag = coeff if coeff > 0 else -coeff
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def latex(self) -> str:
        """LaTeX rendering (presentation only, same term order as render)."""
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self._sorted_terms():
            factors = []
            for n, e in mono:
                base = _latex_symbol(n)
                factors.append(base if e == 1 else f"{base}^{{{e}}}")
            mag = coeff if coeff > 0 else -coeff
            if isinstance(mag, Fraction) and mag.denominator != 1:
                mag_tex = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            else:
                mag_tex = str(int(mag))
            if factors and mag == 1:
                body = " ".join(factors)
            elif factors:
                body = " ".join([mag_tex] + factors)
            else:
                body = mag_tex
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPolynomial({self.render()})"


_GREEK = {
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu", "nu", "xi", "pi", "rho", "sigma",
    "tau", "upsilon", "phi", "chi", "psi", "omega",
}


def _latex_symbol(name: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+)_?(\d+)?", name)
    if m:
        stem, sub = m.groups()
        tex = f"\\{stem}" if stem in _GREEK else stem
        return f"{tex}_{{{sub}}}" if sub else tex
    return name


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial({(): 1})


def as_poly(value) -> LaurentPolynomial:
    """Coerce an int, Fraction or polynomial to a LaurentPolynomial."""
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPolynomial._raw({(): value}) if value else ZERO
    raise TypeError(f"cannot interpret {type(value).__name__} as a polynomial")


def sym(name: str) -> LaurentPolynomial:
    """The polynomial consisting of the single symbol ``name``."""
    if not _NAME_RE.match(name):
        raise ValueError(f"bad symbol name {name!r}")
    return LaurentPolynomial._raw({((name, 1),): 1})


def const(value) -> LaurentPolynomial:
    return as_poly(_coerce_coeff(value))


def monomial(coeff, **exponents) -> LaurentPolynomial:
    """Single-term polynomial, e.g. monomial(3, rho=-2, x=1)."""
    return LaurentPolynomial({tuple(exponents.items()): _coerce_coeff(coeff)})


def constant_term_rho(value) -> LaurentPolynomial:
    """Coefficient of rho**0 of a polynomial or truncated series."""
    if isinstance(value, TruncatedSeries):
        return value.constant_term()
    return as_poly(value).constant_term(SERIES_VAR)


class TruncatedSeries:
    """Finitely many coefficients of a Laurent series in one variable.

    ``coefficients`` maps exponents of ``var`` to polynomials in the other
    symbols; every stored exponent is at most ``truncation_order``, the
    largest exponent whose coefficient is trusted.
    """

    __slots__ = ("var", "_coeffs", "truncation_order")

    def __init__(self, var: str, coefficients: dict, truncation_order: int):
        self.var = var
        self._coeffs = {}
        for e, c in coefficients.items():
            c = as_poly(c)
            if c.is_zero:
                continue
            if e > truncation_order:
                raise ValueError(
                    f"stored exponent {e} beyond truncation order {truncation_order}")
            self._coeffs[int(e)] = c
        self.truncation_order = int(truncation_order)

    def coefficients(self) -> dict:
        return dict(self._coeffs)

    def min_index(self) -> int:
        """Smallest stored exponent (0 for the all-zero series)."""
        return min(self._coeffs, default=0)

    def coefficient(self, exponent: int) -> LaurentPolynomial:
        """Coefficient of var**exponent; beyond the trusted order is an error."""
        if exponent > self.truncation_order:
            raise TruncationInsufficient(
                f"exponent {exponent} beyond truncation order {self.truncation_order}")
        return self._coeffs.get(exponent, ZERO)

    def constant_term(self) -> LaurentPolynomial:
        if self.truncation_order < 0:
            raise TruncationInsufficient(
                f"truncation order {self.truncation_order} < 0")
        return self._coeffs.get(0, ZERO)

    def mul_poly(self, p) -> "TruncatedSeries":
        """Multiply by a polynomial; the trusted order shifts by its lowest
        exponent in ``var`` (unknown tail terms pollute everything above)."""
        p = as_poly(p)
        if p.is_zero:
            return TruncatedSeries(self.var, {}, self.truncation_order)
        shift = p.min_exponent(self.var)
        order = self.truncation_order + shift
        out: dict = {}
        for pe in p.exponents_of(self.var):
            pc = p.coefficient_of(self.var, pe)
            if pc.is_zero:
                continue
            for se, sc in self._coeffs.items():
                e = se + pe
                if e > order:
                    continue
                prod = sc * pc
                cur = out.get(e)
                out[e] = prod if cur is None else cur + prod
        return TruncatedSeries(self.var, out, order)

    def __mul__(self, other):
        return self.mul_poly(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.var == other.var
                and self.truncation_order == other.truncation_order
                and self._coeffs == other._coeffs)

    def render(self) -> str:
        if not self._coeffs:
            body = "0"
        else:
            parts = []
            for e in sorted(self._coeffs):
                c = self._coeffs[e]
                if e == 0:
                    parts.append(c.render())
                    continue
                power = self.var if e == 1 else f"{self.var}^{e}"
                if c == ONE:
                    parts.append(power)
                elif c.term_count() == 1:
                    parts.append(f"{c.render()}*{power}")
                else:
                    parts.append(f"({c.render()})*{power}")
            body = " + ".join(parts)
        return f"{body} + O({self.var}^{self.truncation_order + 1})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TruncatedSeries({self.render()})"


def series_invert(d, order: int, var: str = SERIES_VAR) -> TruncatedSeries:
    """Invert a polynomial as a series around the origin.

    Writes d = var**m * (u + higher orders) with m the minimal exponent of
    ``var``.  The lowest coefficient u must be a nonzero rational constant:
    that is exactly when 1/d expands as a series whose coefficients stay
    polynomials in the remaining symbols.  The result s satisfies
    d*s = 1 + O(var**(order+1)).
    """
    d = as_poly(d)
    if d.is_zero:
        raise NonUnitLeadingCoefficient("cannot invert the zero polynomial")
    m = d.min_exponent(var)
    lowest = d.coefficient_of(var, m)
    if not lowest.is_rational:
        raise NonUnitLeadingCoefficient(
            f"lowest coefficient {lowest} carries symbols; "
            "series coefficients would not be polynomials")
    unit = lowest.as_fraction()
    if unit == 0:
        raise NonUnitLeadingCoefficient("lowest coefficient has zero rational part")
    if order < 0:
        raise ValueError("series order must be nonnegative")
    unit_inv = Fraction(1) / unit
    shifted = [d.coefficient_of(var, m + i) for i in range(order + 1)]
    inv = [as_poly(unit_inv)]
    for n in range(1, order + 1):
        acc = ZERO
        for i in range(1, n + 1):
            if not shifted[i].is_zero:
                acc = acc + shifted[i] * inv[n - i]
        inv.append(acc * (-unit_inv))
    coeffs = {n - m: c for n, c in enumerate(inv) if not c.is_zero}
    return TruncatedSeries(var, coeffs, order - m)


def constant_term_ratio(num, den, var: str = SERIES_VAR,
                        extra_order: int = 2) -> LaurentPolynomial:
    """Constant term of num/den under the series expansion around the origin.

    The inversion order is derived from the exponent support of both
    arguments; ``extra_order`` adds a safety margin beyond the exact need.
    """
    num = as_poly(num)
    den = as_poly(den)
    if num.is_zero:
        return ZERO
    need = den.min_exponent(var) - num.min_exponent(var)
    inv = series_invert(den, max(need, 0) + extra_order, var)
    return inv.mul_poly(num).constant_term()


# -- expression parsing -------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<float>\d+\.\d*|\.\d+)|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {text[pos:]!r}")
        if m.lastgroup == "float" or m.group("float"):
            raise ValueError(f"floating literal {m.group('float')!r} not allowed; use p/q")
        if m.group("number"):
            tokens.append(("num", Fraction(m.group("number"))))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


def parse_polynomial(text: str, allowed_symbols=None) -> LaurentPolynomial:
    """Parse an exact polynomial expression.

    Grammar: sums/differences of products of powers; atoms are integer or
    p/q rational literals, symbol names, and parenthesized expressions.
    Exponents are integers (negative only where the ring allows it).
    Floating literals are rejected.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take(kind, value=None):
        nonlocal pos
        tk, tv = tokens[pos]
        if tk != kind or (value is not None and tv != value):
            raise ValueError(f"expected {value or kind} near token {tv!r}")
        pos += 1
        return tv

    def parse_expr():
        sign = 1
        while peek() == ("op", "+") or peek() == ("op", "-"):
            if take("op") == "-":
                sign = -sign
        value = parse_product() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take("op")
            rhs = parse_product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_product():
        value = parse_power()
        while peek() == ("op", "*"):
            take("op")
            value = value * parse_power()
        return value

    def parse_power():
        base = parse_atom()
        if peek() == ("op", "^"):
            take("op")
            sign = 1
            if peek() == ("op", "-"):
                take("op")
                sign = -1
            exp_val = take("num")
            if exp_val.denominator != 1:
                raise ValueError("exponent must be an integer")
            e = sign * exp_val.numerator
            if e < 0:
                # only rho tolerates this; delegate the check to substitution
                if base.term_count() != 1:
                    raise ValueError("negative power of a non-monomial")
                (mono, coeff), = base.terms().items()
                inv = LaurentPolynomial({tuple((n, -k) for n, k in mono):
                                         Fraction(1) / coeff})
                return inv ** (-e)
            return base ** e
        return base

    def parse_atom():
        kind, value = peek()
        if kind == "num":
            take("num")
            return as_poly(value)
        if kind == "name":
            name = take("name")
            if allowed_symbols is not None and name not in allowed_symbols:
                raise ValueError(f"unknown symbol {name!r}")
            return sym(name)
        if (kind, value) == ("op", "("):
            take("op", "(")
            inner = parse_expr()
            take("op", ")")
            return inner
        raise ValueError(f"unexpected token {value!r}")

    result = parse_expr()
    take("end")
    return result
