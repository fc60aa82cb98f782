"""Positive functionals on C(X) for a finite Stone space X.

Such a functional is a finitely additive measure on the clopen algebra, given
by a nonnegative weight per atom. Every positive functional on a finite
dimensional C(X) is order continuous, so no separate flag is kept.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional

from . import _rational as R
from .boolean_algebra import BooleanAlgebra, ClopenSet
from .errors import AlgebraMismatch, NotSplittable, UnknownAtom
from .simple_function import SimpleFunction, indicator


class OrderFunctional:
    """A positive linear functional ``f -> sum(f(x) * weight(x))``.

    ``weights`` may be a mapping (atoms left out get weight 0) or a sequence
    aligned with ``algebra.atoms``.
    """

    __slots__ = ("algebra", "_num", "_den")

    def __init__(self, algebra: BooleanAlgebra, weights):
        if isinstance(weights, Mapping):
            for a in weights:
                if a not in algebra:
                    raise UnknownAtom(f"{a!r} is not an atom of {algebra!r}")
            seq = [weights.get(a, 0) for a in algebra.atoms]
        else:
            seq = list(weights)
            if len(seq) != len(algebra):
                raise ValueError(f"expected {len(algebra)} weights, got {len(seq)}")
        num, den = R.from_rationals(seq)
        if any(n < 0 for n in num):
            raise ValueError("weights must be nonnegative")
        self.algebra = algebra
        self._num, self._den = num, den

    @classmethod
    def _raw(cls, algebra, nums, den) -> "OrderFunctional":
        phi = object.__new__(cls)
        phi.algebra = algebra
        phi._num, phi._den = R.normalize(nums, den)
        return phi

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._num)

    def weight(self, atom: str) -> Fraction:
        return Fraction(self._num[self.algebra.index(atom)], self._den)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.algebra.atoms, self.weights))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderFunctional):
            return NotImplemented
        return self._den == other._den and self._num == other._num and self.algebra == other.algebra

    def __hash__(self) -> int:
        return hash((self.algebra, self._num, self._den))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {w}" for a, w in zip(self.algebra.atoms, self.weights))
        return f"OrderFunctional([{body}])"

    def __call__(self, f: SimpleFunction) -> Fraction:
        return evaluate(self, f)

    def measure(self, A: ClopenSet) -> Fraction:
        """``phi(1_A)``, computed directly from the weights."""
        if A.algebra != self.algebra:
            raise AlgebraMismatch("clopen set belongs to a different algebra")
        m, total = A.mask, 0
        for i, w in enumerate(self._num):
            if m >> i & 1:
                total += w
        return Fraction(total, self._den)

    def total(self) -> Fraction:
        return Fraction(sum(self._num), self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def positive_atoms(self) -> ClopenSet:
        mask = 0
        for i, w in enumerate(self._num):
            if w:
                mask |= 1 << i
        return ClopenSet(self.algebra, mask)


def evaluate(phi: OrderFunctional, f: SimpleFunction) -> Fraction:
    if f.algebra is not phi.algebra and f.algebra != phi.algebra:
        raise AlgebraMismatch("functional and function live on different algebras")
    total = 0
    for w, x in zip(phi._num, f._num):
        if w and x:
            total += w * x
    return Fraction(total, phi._den * f._den)


def is_strictly_positive(phi: OrderFunctional) -> bool:
    """True iff ``phi(f) > 0`` for every ``f > 0``, i.e. every atom has positive weight."""
    return all(w > 0 for w in phi._num)


def strict_positivity_witness(phi: OrderFunctional) -> Optional[SimpleFunction]:
    """A function ``f > 0`` with ``phi(f) == 0``, or ``None`` if there is none."""
    for i, w in enumerate(phi._num):
        if w == 0:
            return indicator(ClopenSet(phi.algebra, 1 << i))
    return None


def vanishes_on_clopens(phi: OrderFunctional) -> bool:
    """Whether ``phi(1_A) == 0`` for every clopen ``A``.

    Checks every element of the algebra rather than looking at the weights, so
    that the result can be compared against ``phi.is_zero()``.
    """
    return all(phi.measure(A) == 0 for A in phi.algebra.clopens())


def dirac(algebra: BooleanAlgebra, atom: str) -> OrderFunctional:
    """Point evaluation ``f -> f(atom)``."""
    i = algebra.index(atom)
    nums = [0] * len(algebra)
    nums[i] = 1
    return OrderFunctional._raw(algebra, nums, 1)


def positive_split(phi: OrderFunctional) -> tuple[ClopenSet, ClopenSet]:
    """Split X into two clopen pieces, each of positive measure.

    ``K1`` is the singleton of the first atom of positive weight, ``K2`` its
    complement. Needs at least two atoms of positive weight.
    """
    support = phi.positive_atoms()
    if len(support) < 2:
        raise NotSplittable(
            f"need at least two atoms of positive weight, found {len(support)}"
        )
    K1 = ClopenSet(phi.algebra, support.mask & -support.mask)
    return K1, ~K1
