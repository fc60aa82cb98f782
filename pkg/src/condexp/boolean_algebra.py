"""Finite Boolean algebras and their clopen sets.

The Stone space of a finite Boolean algebra is its (discrete) set of atoms, so
every subset of atoms is clopen. Clopen sets are stored as bitmasks over the
atom order of their algebra, which makes exhaustive enumeration cheap::

    >>> B = make_finite_algebra(["a", "b", "c"])
    >>> B.clopen(["a", "b"]) & B.clopen(["b", "c"])
    ClopenSet({'b'})
    >>> ~B.clopen(["a"])
    ClopenSet({'b', 'c'})
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import AlgebraMismatch, DepthZero, DuplicateAtom, EmptyAtomList, UnknownAtom


@dataclass(frozen=True, eq=False)
class BooleanAlgebra:
    """A finite Boolean algebra presented by its ordered list of atoms.

    ``depth`` is ``None`` for algebras given by explicit atom names and the
    bitstring length for dyadic algebras, whose atoms are all bitstrings of
    that length in lexicographic order.
    """

    atoms: tuple[str, ...]
    depth: Optional[int] = None
    _index: dict = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        atoms = tuple(self.atoms)
        if not atoms:
            raise EmptyAtomList("a Boolean algebra needs at least one atom")
        index = {}
        for i, a in enumerate(atoms):
            if not isinstance(a, str):
                raise TypeError(f"atom identifiers are strings, got {a!r}")
            if a in index:
                raise DuplicateAtom(f"duplicate atom {a!r}")
            index[a] = i
        if self.depth is not None:
            expected = tuple(dyadic_atoms(self.depth))
            if atoms != expected:
                raise ValueError("dyadic algebra atoms must be all bitstrings in order")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_hash", hash((atoms, self.depth)))

    @property
    def kind(self) -> str:
        return "finite" if self.depth is None else "dyadic"

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, atom) -> bool:
        return atom in self._index

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, BooleanAlgebra):
            return NotImplemented
        return self._hash == other._hash and self.depth == other.depth and self.atoms == other.atoms

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if self.depth is not None:
            return f"BooleanAlgebra(dyadic, depth={self.depth})"
        return f"BooleanAlgebra({list(self.atoms)!r})"

    def index(self, atom: str) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise UnknownAtom(f"{atom!r} is not an atom of {self!r}") from None

    @property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1

    def clopen(self, atoms: Iterable[str]) -> "ClopenSet":
        mask = 0
        for a in atoms:
            mask |= 1 << self.index(a)
        return ClopenSet(self, mask)

    def from_mask(self, mask: int) -> "ClopenSet":
        if mask < 0 or mask > self.full_mask:
            raise ValueError("mask has bits outside the atom range")
        return ClopenSet(self, mask)

    def empty(self) -> "ClopenSet":
        return ClopenSet(self, 0)

    def top(self) -> "ClopenSet":
        """The whole Stone space X."""
        return ClopenSet(self, self.full_mask)

    def singleton(self, atom: str) -> "ClopenSet":
        return ClopenSet(self, 1 << self.index(atom))

    def clopens(self) -> Iterator["ClopenSet"]:
        """Every element of the algebra (2**n of them)."""
        for mask in range(1 << len(self.atoms)):
            yield ClopenSet(self, mask)

    def count_clopens(self) -> int:
        return 1 << len(self.atoms)


@dataclass(frozen=True)
class ClopenSet:
    """An element of a finite Boolean algebra, i.e. a set of atoms."""

    algebra: BooleanAlgebra
    mask: int

    @property
    def members(self) -> frozenset:
        return frozenset(self)

    def __iter__(self) -> Iterator[str]:
        atoms = self.algebra.atoms
        bits = format(self.mask, f"0{len(atoms)}b")[::-1]
        return (a for a, c in zip(atoms, bits) if c == "1")

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, atom) -> bool:
        return atom in self.algebra and bool(self.mask >> self.algebra.index(atom) & 1)

    def __repr__(self) -> str:
        return "ClopenSet({" + ", ".join(repr(a) for a in self) + "})"

    def _other(self, other: "ClopenSet") -> int:
        if not isinstance(other, ClopenSet):
            raise TypeError(f"expected a ClopenSet, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatch("clopen sets belong to different algebras")
        return other.mask

    def meet(self, other: "ClopenSet") -> "ClopenSet":
        return ClopenSet(self.algebra, self.mask & self._other(other))

    def join(self, other: "ClopenSet") -> "ClopenSet":
        return ClopenSet(self.algebra, self.mask | self._other(other))

    def difference(self, other: "ClopenSet") -> "ClopenSet":
        return ClopenSet(self.algebra, self.mask & ~self._other(other))

    def complement(self) -> "ClopenSet":
        return ClopenSet(self.algebra, self.algebra.full_mask ^ self.mask)

    __and__ = meet
    __or__ = join
    __sub__ = difference
    __invert__ = complement

    def issubset(self, other: "ClopenSet") -> bool:
        return self.mask & ~self._other(other) == 0

    __le__ = issubset

    def isdisjoint(self, other: "ClopenSet") -> bool:
        return self.mask & self._other(other) == 0


def make_finite_algebra(atom_names: Sequence[str]) -> BooleanAlgebra:
    """Algebra whose Stone space is the discrete space on ``atom_names``."""
    return BooleanAlgebra(tuple(atom_names))


def dyadic_atoms(depth: int) -> Iterator[str]:
    if depth == 0:
        yield ""
        return
    for i in range(1 << depth):
        yield format(i, f"0{depth}b")


def make_dyadic_algebra(depth: int) -> BooleanAlgebra:
    """The algebra generated by the first ``depth`` binary digits."""
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
        raise DepthZero(f"dyadic depth must be a nonnegative integer, got {depth!r}")
    return _dyadic(depth)


@lru_cache(maxsize=None)
def _dyadic(depth: int) -> BooleanAlgebra:
    return BooleanAlgebra(tuple(dyadic_atoms(depth)), depth=depth)


def _as_clopen(A, algebra: Optional[BooleanAlgebra]) -> ClopenSet:
    if isinstance(A, ClopenSet):
        if algebra is not None and A.algebra != algebra:
            raise AlgebraMismatch("subset belongs to a different algebra")
        return A
    if algebra is None:
        raise TypeError("an algebra is required when the subset is given as atom names")
    return algebra.clopen(A)


def is_connected(A, algebra: Optional[BooleanAlgebra] = None) -> bool:
    """A subset of a finite discrete space is connected iff it has at most one point.

    The empty set counts as connected.
    """
    return len(_as_clopen(A, algebra)) <= 1


def separation_witness(A, algebra: Optional[BooleanAlgebra] = None) -> Optional[ClopenSet]:
    """Return a clopen ``C`` with ``A & C`` nonempty and ``A`` not inside ``C``.

    ``C`` is the singleton of the first atom of ``A`` in algebra order. Returns
    ``None`` when ``A`` has at most one point, since no such ``C`` exists then.
    """
    A = _as_clopen(A, algebra)
    if len(A) <= 1:
        return None
    lowest = A.mask & -A.mask
    return ClopenSet(A.algebra, lowest)
