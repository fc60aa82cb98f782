"""Simple functions on a finite Stone space, i.e. elements of C(X).

A :class:`SimpleFunction` assigns an exact rational to every atom of its
algebra. The Riesz-space operations are atom-wise, and the partial order is
the pointwise one, so ``f <= g`` is *not* a total order: ``not f <= g`` does not
imply ``g <= f``.
"""
from __future__ import annotations

from fractions import Fraction
from operator import add, mul, neg, sub
from typing import Iterator, Mapping, Sequence, Union

from . import _rational as R
from .boolean_algebra import BooleanAlgebra, ClopenSet
from .errors import AlgebraMismatch, NonpositiveEpsilon, UnknownAtom

RationalLike = Union[int, Fraction, str]

_REDUCE_ABOVE = 1 << 62


class SimpleFunction:
    """An exact-rational valued function on the atoms of ``algebra``.

    ``values`` is either a mapping atom -> rational covering every atom, or a
    sequence aligned with ``algebra.atoms``.
    """

    __slots__ = ("algebra", "_num", "_den")

    def __init__(self, algebra: BooleanAlgebra, values):
        if isinstance(values, Mapping):
            extra = [a for a in values if a not in algebra]
            if extra:
                raise UnknownAtom(f"{extra[0]!r} is not an atom of {algebra!r}")
            missing = [a for a in algebra.atoms if a not in values]
            if missing:
                raise ValueError(f"no value given for atom {missing[0]!r}")
            seq = [values[a] for a in algebra.atoms]
        else:
            seq = list(values)
            if len(seq) != len(algebra):
                raise ValueError(f"expected {len(algebra)} values, got {len(seq)}")
        self.algebra = algebra
        self._num, self._den = R.from_rationals(seq)

    @classmethod
    def _raw(cls, algebra: BooleanAlgebra, nums, den: int) -> "SimpleFunction":
        # den > 0 is required; reduction to lowest terms is deferred to _reduced()
        f = object.__new__(cls)
        f.algebra = algebra
        if den > _REDUCE_ABOVE:
            f._num, f._den = R.normalize(nums, den)
        else:
            f._num, f._den = tuple(nums), den
        return f

    def _reduced(self) -> tuple[tuple[int, ...], int]:
        num, den = R.normalize(self._num, self._den)
        self._num, self._den = num, den
        return num, den

    @classmethod
    def constant(cls, algebra: BooleanAlgebra, c: RationalLike) -> "SimpleFunction":
        c = R.as_fraction(c)
        return cls._raw(algebra, [c.numerator] * len(algebra), c.denominator)

    @classmethod
    def zero(cls, algebra: BooleanAlgebra) -> "SimpleFunction":
        return cls._raw(algebra, [0] * len(algebra), 1)

    # -- access -----------------------------------------------------------

    @property
    def values(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(n, d) for n in self._num)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.algebra.atoms, self.values))

    def __getitem__(self, atom: str) -> Fraction:
        return Fraction(self._num[self.algebra.index(atom)], self._den)

    def __iter__(self) -> Iterator[tuple[str, Fraction]]:
        return iter(zip(self.algebra.atoms, self.values))

    def __len__(self) -> int:
        return len(self._num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            return False
        d1, d2 = self._den, other._den
        if d1 == d2:
            return self._num == other._num
        return all(a * d2 == b * d1 for a, b in zip(self._num, other._num))

    def __hash__(self) -> int:
        return hash((self.algebra,) + self._reduced())

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {v}" for a, v in self)
        return f"SimpleFunction([{body}])"

    def partition(self) -> list[tuple[Fraction, ClopenSet]]:
        """Group atoms by value: a disjoint clopen cover of X, sorted by value."""
        masks: dict[int, int] = {}
        self._reduced()
        for i, n in enumerate(self._num):
            masks[n] = masks.get(n, 0) | (1 << i)
        return [
            (Fraction(n, self._den), ClopenSet(self.algebra, masks[n]))
            for n in sorted(masks)
        ]

    # -- lattice and vector operations --------------------------------------

    def _pair(self, other: "SimpleFunction"):
        if not isinstance(other, SimpleFunction):
            raise TypeError(f"expected a SimpleFunction, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("functions live on different algebras")
        if self._den == other._den:
            return self._num, other._num, self._den
        return R.common((self._num, self._den), (other._num, other._den))

    def __add__(self, other: "SimpleFunction") -> "SimpleFunction":
        a, b, d = self._pair(other)
        return SimpleFunction._raw(self.algebra, map(add, a, b), d)

    def __sub__(self, other: "SimpleFunction") -> "SimpleFunction":
        a, b, d = self._pair(other)
        return SimpleFunction._raw(self.algebra, map(sub, a, b), d)

    def __neg__(self) -> "SimpleFunction":
        return SimpleFunction._raw(self.algebra, map(neg, self._num), self._den)

    def scale(self, c: RationalLike) -> "SimpleFunction":
        c = R.as_fraction(c)
        p, q = c.numerator, c.denominator
        return SimpleFunction._raw(self.algebra, [x * p for x in self._num], self._den * q)

    def __mul__(self, other):
        """Pointwise product with a function, or scalar multiple with a rational."""
        if isinstance(other, SimpleFunction):
            self._pair(other)
            return SimpleFunction._raw(
                self.algebra,
                map(mul, self._num, other._num),
                self._den * other._den,
            )
        return self.scale(other)

    __rmul__ = __mul__

    def sup(self, other: "SimpleFunction") -> "SimpleFunction":
        a, b, d = self._pair(other)
        return SimpleFunction._raw(self.algebra, map(max, a, b), d)

    def inf(self, other: "SimpleFunction") -> "SimpleFunction":
        a, b, d = self._pair(other)
        return SimpleFunction._raw(self.algebra, map(min, a, b), d)

    __or__ = sup
    __and__ = inf

    def __abs__(self) -> "SimpleFunction":
        return SimpleFunction._raw(self.algebra, map(abs, self._num), self._den)

    def positive_part(self) -> "SimpleFunction":
        return SimpleFunction._raw(self.algebra, [max(x, 0) for x in self._num], self._den)

    # -- order --------------------------------------------------------------

    def __le__(self, other: "SimpleFunction") -> bool:
        a, b, _ = self._pair(other)
        return all(x <= y for x, y in zip(a, b))

    def __ge__(self, other: "SimpleFunction") -> bool:
        a, b, _ = self._pair(other)
        return all(x >= y for x, y in zip(a, b))

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self._num)

    def is_positive(self) -> bool:
        """``f > 0`` in the lattice sense: ``f >= 0`` and ``f != 0``."""
        return self.is_nonnegative() and any(self._num)

    def is_weak_unit(self) -> bool:
        """At finite scale, a weak order unit is strictly positive at every atom."""
        return all(x > 0 for x in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def support(self) -> ClopenSet:
        mask = 0
        for i, x in enumerate(self._num):
            if x:
                mask |= 1 << i
        return ClopenSet(self.algebra, mask)

    def max(self) -> Fraction:
        return Fraction(max(self._num), self._den)

    def min(self) -> Fraction:
        return Fraction(min(self._num), self._den)

    def sup_norm(self) -> Fraction:
        return Fraction(max(abs(x) for x in self._num), self._den)


def indicator(A: ClopenSet) -> SimpleFunction:
    """``1_A``; the indicator of the whole space is the weak order unit ``1_X``."""
    n = len(A.algebra)
    bits = format(A.mask, f"0{n}b")[::-1]
    return SimpleFunction._raw(A.algebra, [1 if c == "1" else 0 for c in bits], 1)


def unit(algebra: BooleanAlgebra) -> SimpleFunction:
    return SimpleFunction._raw(algebra, [1] * len(algebra), 1)


def sup_all(functions: Sequence[SimpleFunction]) -> SimpleFunction:
    it = iter(functions)
    acc = next(it)
    for f in it:
        acc = acc.sup(f)
    return acc


def inf_all(functions: Sequence[SimpleFunction]) -> SimpleFunction:
    it = iter(functions)
    acc = next(it)
    for f in it:
        acc = acc.inf(f)
    return acc


def level_set(f: SimpleFunction, lam: RationalLike) -> ClopenSet:
    """Atoms where ``lam - f(x) > 0``.

    In a finite Stone space this set is already clopen, so taking its closure
    changes nothing.
    """
    lam = R.as_fraction(lam)
    # lam > n/d  <=>  lam.numerator * d > n * lam.denominator
    bound = lam.numerator * f._den
    q = lam.denominator
    mask = 0
    for i, n in enumerate(f._num):
        if bound > n * q:
            mask |= 1 << i
    return ClopenSet(f.algebra, mask)


def freudenthal_approx(f: SimpleFunction, eps: RationalLike) -> SimpleFunction:
    """Largest function with values on the grid ``eps * Z`` lying below ``f``.

    Each value becomes ``eps * floor(f(x) / eps)``, so ``0 <= f - s < eps``.
    """
    eps = R.as_fraction(eps)
    if eps <= 0:
        raise NonpositiveEpsilon(f"epsilon must be positive, got {eps}")
    p, q = eps.numerator, eps.denominator
    d = f._den
    # f/eps = n*q / (d*p)
    ks = [(n * q) // (d * p) for n in f._num]
    return SimpleFunction._raw(f.algebra, [k * p for k in ks], q)
