"""Seeded random generators for algebras, functions, measures and towers."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .boolean_algebra import BooleanAlgebra, make_finite_algebra
from .functional import OrderFunctional
from .simple_function import SimpleFunction
from .witness import BranchChain, DyadicTower, build_tower, tree_nodes

DENOMINATORS = (1, 2, 3, 4, 5, 6)


def random_algebra(rng: random.Random, low: int = 1, high: int = 8) -> BooleanAlgebra:
    n = rng.randint(low, high)
    return make_finite_algebra([f"x{i}" for i in range(n)])


def random_function(
    algebra: BooleanAlgebra,
    rng: random.Random,
    low: int = -12,
    high: int = 12,
    den: Optional[int] = None,
) -> SimpleFunction:
    """Random function with values ``k / d``, ``low <= k <= high``.

    ``d`` is drawn from :data:`DENOMINATORS` unless ``den`` fixes it.
    """
    d = den if den is not None else rng.choice(DENOMINATORS)
    return SimpleFunction._raw(algebra, rng.choices(range(low, high + 1), k=len(algebra)), d)


def random_rational(rng: random.Random, low: int = -5, high: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(low, high), rng.randint(1, max_den))


def random_measure(algebra: BooleanAlgebra, rng: random.Random, strictly_positive: bool = True) -> OrderFunctional:
    low = 1 if strictly_positive else 0
    return OrderFunctional(algebra, [Fraction(rng.randint(low, 9), rng.randint(1, 5)) for _ in algebra.atoms])


def random_tower(rng: random.Random, depth: int) -> DyadicTower:
    ratios = {}
    for w in tree_nodes(depth):
        q = rng.randint(2, 9)
        ratios[w] = Fraction(rng.randint(1, q - 1), q)
    return build_tower(depth, ratios)


def random_branch(rng: random.Random, length: int) -> BranchChain:
    return BranchChain(tuple(rng.getrandbits(1) for _ in range(length)))
