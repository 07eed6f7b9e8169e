"""Pavings of a path graph and the cutting identities they prove.

An order-k paving covers vertices 0..k-1 with monomers (one vertex), dimers
(two adjacent vertices) and uncovered vertices, no overlaps.  Weighted with
shift j (uncovered -> x, monomer at vertex i -> -b_{i+j}, dimer on vertices
i-1,i -> -lambda_{i+j}) and summed, the pavings reproduce the recurrence
polynomial P_k^(j), which gives a recurrence-free oracle for it.

Cutting a paving set at an edge or vertex splits P_k^(j) into products of
smaller polynomials with the cut weight pulled out as a coefficient.
Applied at every decorated position this rewrites a decorated P_k^(j) over
the undecorated background family S_m; :func:`decompose` returns that form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CutOutOfRange, SizeLimit
from .symbolic import LaurentPolynomial, ONE, as_poly, sym
from .orthopoly import WeightSpec, chebyshev_s, ortho_poly

DEFAULT_PAVING_CAP = 500_000

_X = sym("x")


@dataclass(frozen=True)
class Paving:
    """A single paving: order plus ("uncovered"|"monomer"|"dimer", position).

    A dimer's position is its left vertex, so it covers position and
    position + 1.  The pavers jointly cover each vertex exactly once.
    """
    order: int
    pavers: tuple

    def weight(self, j: int, w: WeightSpec) -> LaurentPolynomial:
        out = ONE
        for kind, pos in self.pavers:
            if kind == "uncovered":
                out = out * _X
            elif kind == "monomer":
                out = out * (-w.effective_b(pos + j))
            else:
                # dimer on vertices pos, pos+1 is edge number pos+1
                out = out * (-w.effective_lambda(pos + 1 + j))
        return out

    def ascii(self) -> str:
        """Debug rendering: . uncovered, M monomer, D- dimer pair."""
        cells = [""] * self.order
        for kind, pos in self.pavers:
            if kind == "uncovered":
                cells[pos] = "."
            elif kind == "monomer":
                cells[pos] = "M"
            else:
                cells[pos] = "D"
                cells[pos + 1] = "-"
        return "".join(cells)


def paving_count(k: int, kind: str = "motzkin") -> int:
    """Number of pavings of order k without enumerating them."""
    if kind not in ("motzkin", "ballot"):
        raise ValueError(f"kind must be 'motzkin' or 'ballot', got {kind!r}")
    a, b = 1, 2 if kind == "motzkin" else 1  # orders 0 and 1
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, (2 * b + a) if kind == "motzkin" else (b + a)
    return b


def enumerate_pavings(k: int, kind: str = "motzkin",
                      cap: int = DEFAULT_PAVING_CAP) -> list:
    """All pavings of order k; Ballot pavings exclude monomers."""
    if k < 0:
        raise ValueError("order must be nonnegative")
    total = paving_count(k, kind)
    if total > cap:
        raise SizeLimit(f"{total} pavings of order {k} exceed the cap {cap}")
    monomers = kind == "motzkin"
    out = []

    def build(pos: int, acc: list):
        if pos == k:
            out.append(Paving(k, tuple(acc)))
            return
        acc.append(("uncovered", pos))
        build(pos + 1, acc)
        acc.pop()
        if monomers:
            acc.append(("monomer", pos))
            build(pos + 1, acc)
            acc.pop()
        if pos + 1 < k:
            acc.append(("dimer", pos))
            build(pos + 2, acc)
            acc.pop()

    build(0, [])
    return out


def paving_polynomial(k: int, j: int, w: WeightSpec,
                      cap: int = DEFAULT_PAVING_CAP) -> LaurentPolynomial:
    """Sum of weighted pavings of order k with shift j; equals ortho_poly."""
    total = as_poly(0)
    for paving in enumerate_pavings(k, "motzkin", cap):
        total = total + paving.weight(j, w)
    return total


@dataclass(frozen=True)
class DecompositionTerm:
    coefficient: LaurentPolynomial
    factors: tuple  # of (shift, order) pairs


@dataclass(frozen=True)
class Decomposition:
    """A sum of coefficient * product-of-factor-polynomials equal to P_k^(j).

    basis "ortho": factors are (shift, order) references to P_order^(shift)
    of the weight spec used for expansion (cut identities).
    basis "chebyshev": factors reference the undecorated background S_order
    (shift retained for audit only, S is shift independent).
    """
    k: int
    j: int
    basis: str
    terms: tuple

    @property
    def term_count(self) -> int:
        return len(self.terms)

    @property
    def max_factor_count(self) -> int:
        return max((len(t.factors) for t in self.terms), default=0)

    def expand(self, w: WeightSpec) -> LaurentPolynomial:
        total = as_poly(0)
        for term in self.terms:
            prod = term.coefficient
            for shift, order in term.factors:
                if self.basis == "ortho":
                    prod = prod * ortho_poly(order, shift, w).poly
                else:
                    prod = prod * chebyshev_s(order, w.background_b,
                                              w.background_lambda)
            total = total + prod
        return total

    def normalized_terms(self, w: WeightSpec) -> list:
        """Chebyshev-basis terms with order <= 1 factors folded into the
        coefficient, as (coefficient, sorted tuple of orders >= 2) pairs
        sorted canonically.  Lets a term like S_1 * S_1 * S_5 compare equal
        to an expected x^2 * S_5."""
        if self.basis != "chebyshev":
            raise ValueError("normalized_terms applies to the chebyshev basis")
        out = []
        for term in self.terms:
            coeff = term.coefficient
            orders = []
            for _, order in term.factors:
                if order <= 1:
                    coeff = coeff * chebyshev_s(order, w.background_b,
                                                w.background_lambda)
                else:
                    orders.append(order)
            out.append((coeff, tuple(sorted(orders))))
        return sorted(out, key=lambda t: (t[1], t[0].render()))


def _generic_for_cut(k: int, j: int) -> WeightSpec:
    return WeightSpec.generic(j + k)


def edge_cut(k: int, j: int, c: int, w: WeightSpec | None = None) -> Decomposition:
    """Split P_k^(j) at edge c (the edge joining vertices c-1 and c).

    Either the edge carries no dimer, giving P_c^(j) * P_{k-c}^(j+c), or it
    carries one, giving -lambda_{c+j} * P_{c-1}^(j) * P_{k-c-1}^(j+c+1).
    """
    if not 1 <= c <= k - 1:
        raise CutOutOfRange(f"edge cut needs 1 <= c <= k-1, got c={c}, k={k}")
    if w is None:
        w = _generic_for_cut(k, j)
    terms = (
        DecompositionTerm(ONE, ((j, c), (j + c, k - c))),
        DecompositionTerm(-w.effective_lambda(c + j),
                          ((j, c - 1), (j + c + 1, k - c - 1))),
    )
    return Decomposition(k, j, "ortho", terms)


def vertex_cut(k: int, j: int, c: int, w: WeightSpec | None = None) -> Decomposition:
    """Split P_k^(j) at vertex c.

    Vertex c is uncovered or a monomer (coefficient x - b_{c+j}), the left
    end of a dimer (coefficient -lambda_{c+j+1}), or the right end of one
    (coefficient -lambda_{c+j}).  Terms whose factor order would go negative
    are dropped, matching P_m = 0 for m < 0.
    """
    if not 0 <= c <= k - 1:
        raise CutOutOfRange(f"vertex cut needs 0 <= c <= k-1, got c={c}, k={k}")
    if w is None:
        w = _generic_for_cut(k, j)
    terms = [DecompositionTerm(_X - w.effective_b(c + j),
                               ((j, c), (j + c + 1, k - c - 1)))]
    if k - c - 2 >= 0:
        terms.append(DecompositionTerm(-w.effective_lambda(c + j + 1),
                                       ((j, c), (j + c + 2, k - c - 2))))
    if c - 1 >= 0:
        terms.append(DecompositionTerm(-w.effective_lambda(c + j),
                                       ((j, c - 1), (j + c + 1, k - c - 1))))
    return Decomposition(k, j, "ortho", terms)


def _decorated_positions(k: int, j: int, w: WeightSpec):
    """Decorated cut positions in the window of P_k^(j), leftmost first.

    Vertex c sits at coordinate 2c, edge c between vertices c-1 and c at
    coordinate 2c - 1, so the two kinds interleave correctly.
    """
    positions = []
    for c in range(1, k):
        if (c + j) in w.down_heights:
            positions.append((2 * c - 1, "edge", c))
    for c in range(k):
        if (c + j) in w.across_heights:
            positions.append((2 * c, "vertex", c))
    return sorted(positions)


def _decompose_terms(k: int, j: int, w: WeightSpec) -> list:
    """Recursive core of decompose: list of (coefficient, factors) pairs."""
    if k == 0:
        return [(ONE, ())]
    positions = _decorated_positions(k, j, w)
    if not positions:
        return [(ONE, ((j, k),))]
    _, kind, c = positions[0]

    def attach(coeff, left_order, sub_k, sub_j):
        # left factor is decoration free by choice of the first position
        left = ((j, left_order),) if left_order > 0 else ()
        return [(coeff * sub_coeff, left + sub_factors)
                for sub_coeff, sub_factors in _decompose_terms(sub_k, sub_j, w)]

    out = []
    if kind == "edge":
        out += attach(ONE, c, k - c, j + c)
        out += attach(-w.effective_lambda(c + j), c - 1, k - c - 1, j + c + 1)
    else:
        out += attach(_X - w.effective_b(c + j), c, k - c - 1, j + c + 1)
        if k - c - 2 >= 0:
            out += attach(-w.effective_lambda(c + j + 1), c, k - c - 2, j + c + 2)
        if c - 1 >= 0:
            out += attach(-w.effective_lambda(c + j), c - 1, k - c - 1, j + c + 1)
    return out


def decompose(k: int, j: int, w: WeightSpec) -> Decomposition:
    """Rewrite P_k^(j) over the undecorated background family S_m.

    Cuts at the leftmost decorated edge or vertex and recurses on the
    decorated remainder; every decoration ends up in a coefficient, every
    factor window is decoration free.  An edge cut doubles and a vertex cut
    at most triples the term count, so with a down decorations and b across
    decorations inside the window the result has at most 2**a * 3**b terms
    and at most a + b + 1 factors per term; bunched decorations give fewer.
    """
    if k < 0 or j < 0:
        raise ValueError("order and shift must be nonnegative")
    terms = tuple(DecompositionTerm(coeff, factors)
                  for coeff, factors in _decompose_terms(k, j, w))
    return Decomposition(k, j, "chebyshev", terms)


def decoration_window_sizes(k: int, j: int, w: WeightSpec) -> tuple:
    """(down, across) decoration counts visible to P_k^(j): down-step heights
    in [j+1, j+k-1], across-step heights in [j, j+k-1]."""
    down = sum(1 for h in w.down_heights if j + 1 <= h <= j + k - 1)
    across = sum(1 for h in w.across_heights if j <= h <= j + k - 1)
    return down, across
