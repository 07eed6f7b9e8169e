"""Shared helpers for the test suite: seeded random weight specs."""

from __future__ import annotations

import random
from fractions import Fraction

from latpoly import WeightSpec, sym

RATIONAL_POOL = [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2),
                 Fraction(3), Fraction(-1, 3), Fraction(5, 2)]
BACKGROUND_B_POOL = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]
BACKGROUND_L_POOL = [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 3)]


def random_decoration(rng: random.Random, name: str):
    """Either a free symbol or a small nonzero rational."""
    if rng.random() < 0.5:
        return sym(name)
    return rng.choice(RATIONAL_POOL)


def random_weight_spec(rng: random.Random, L: int,
                       max_decorations: int = 4) -> WeightSpec:
    """Random backgrounds plus a random set of symbolic/rational decorations."""
    b = rng.choice(BACKGROUND_B_POOL)
    lam = rng.choice(BACKGROUND_L_POOL)
    across = {}
    down = {}
    n_dec = rng.randint(0, max_decorations)
    for i in range(n_dec):
        if rng.random() < 0.5 and L >= 1:
            h = rng.randint(1, L)
            value = random_decoration(rng, f"u{i}")
            if value == -lam:  # keep every effective lambda nonzero
                value = value + 1
            down[h] = value
        else:
            h = rng.randint(0, L)
            across[h] = random_decoration(rng, f"a{i}")
    return WeightSpec(L, b, lam, across, down)


def random_rational_weight_spec(rng: random.Random, L: int) -> WeightSpec:
    """Fully rational decorations at every height, all lambdas nonzero."""
    b = rng.choice(BACKGROUND_B_POOL)
    lam = rng.choice(BACKGROUND_L_POOL)
    across = {i: rng.choice(RATIONAL_POOL) for i in range(L + 1)
              if rng.random() < 0.6}
    down = {}
    for i in range(1, L + 1):
        if rng.random() < 0.6:
            value = rng.choice(RATIONAL_POOL)
            if value == -lam:
                value = value + 1
            down[i] = value
    return WeightSpec(L, b, lam, across, down)
