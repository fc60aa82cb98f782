"""Dyadic refinement towers and the unbounded-growth witness.

A :class:`DyadicTower` fixes a splitting ratio at every node ``w`` of the
binary tree up to ``depth``; the measure of the child ``w0`` is
``ratio(w) * mu(w)`` and of ``w1`` is ``(1 - ratio(w)) * mu(w)``. A branch
``i1 i2 ...`` picks out nested clopens ``K_1 ⊋ K_2 ⊋ ...`` (all atoms extending
the first ``k`` bits) with masses ``alpha_k = mu(K_k)``.

The truncated witness ``f_n = sup_{k<=n} (k / alpha_k) 1_{K_k}`` has
``phi(f_n) >= n``, so no positive functional on the limit space can be finite
on the untruncated supremum.

    >>> tower = build_tower(3)
    >>> [str(a) for a in alphas(tower, BranchChain.parse("000"))]
    ['1', '1/2', '1/4', '1/8']
    >>> [(n, str(v)) for n, v in verify_divergence(tower, BranchChain.parse("000"), 3)]
    [(1, '1'), (2, '5/2'), (3, '9/2')]
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from . import _rational as R
from .boolean_algebra import BooleanAlgebra, ClopenSet, make_dyadic_algebra
from .errors import (
    AlgebraMismatch,
    BranchTooLong,
    DepthZero,
    IncompleteTower,
    ParseError,
    RatioOutOfRange,
    TruncationExceedsBranch,
)
from .functional import OrderFunctional, evaluate
from .simple_function import SimpleFunction, indicator

HALF = Fraction(1, 2)


def tree_nodes(depth: int):
    """Bitstrings of length ``0 .. depth-1`` in breadth-first order."""
    for k in range(depth):
        if k == 0:
            yield ""
            continue
        for i in range(1 << k):
            yield format(i, f"0{k}b")


@dataclass(frozen=True)
class BranchChain:
    """A finite branch ``i_1, ..., i_L`` through the dyadic tree (bits 0/1)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("branch bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text: str) -> "BranchChain":
        if any(c not in "01" for c in text):
            raise ParseError(f"branch must be a bitstring, got {text!r}")
        return cls(tuple(int(c) for c in text))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def prefix(self, k: int) -> str:
        return "".join(map(str, self.bits[:k]))

    def clopen(self, algebra: BooleanAlgebra, k: int) -> ClopenSet:
        """``K_k``: the atoms of a dyadic algebra extending the first ``k`` bits."""
        if algebra.depth is None:
            raise AlgebraMismatch("branch clopens live on dyadic algebras")
        if k > len(self.bits) or k > algebra.depth:
            raise BranchTooLong(f"no K_{k} for a branch of length {len(self.bits)} at depth {algebra.depth}")
        # dyadic atoms are in lexicographic order, so a prefix is a contiguous range
        free = algebra.depth - k
        start = int(self.prefix(k) or "0", 2) << free
        mask = ((1 << (1 << free)) - 1) << start
        return ClopenSet(algebra, mask)

    def nested_clopens(self, algebra: BooleanAlgebra) -> list[ClopenSet]:
        """``[K_0, K_1, ..., K_L]`` with ``K_0 = X``."""
        return [self.clopen(algebra, k) for k in range(len(self.bits) + 1)]


class DyadicTower:
    """Coherent strictly positive measures on the dyadic algebras up to ``depth``."""

    def __init__(self, depth: int, ratios: Mapping[str, Fraction]):
        self.depth = depth
        self.ratios = dict(ratios)
        self.algebra = make_dyadic_algebra(depth)
        self._level_cache: dict[int, OrderFunctional] = {}

    def __repr__(self) -> str:
        return f"DyadicTower(depth={self.depth})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicTower):
            return NotImplemented
        return self.depth == other.depth and self.ratios == other.ratios

    def is_uniform(self) -> bool:
        return all(r == HALF for r in self.ratios.values())

    def ratio(self, node: str) -> Fraction:
        return self.ratios[node]

    def node_measure(self, node: str) -> Fraction:
        """``mu(w)``: the product of ratios and co-ratios along the path to ``w``."""
        if len(node) > self.depth:
            raise BranchTooLong(f"node {node!r} is deeper than the tower")
        m = Fraction(1)
        for k, bit in enumerate(node):
            r = self.ratios[node[:k]]
            m *= r if bit == "0" else 1 - r
        return m

    def level_measure(self, k: int) -> OrderFunctional:
        """The measure on the depth-``k`` algebra, built level by level."""
        if not 0 <= k <= self.depth:
            raise BranchTooLong(f"level {k} outside 0..{self.depth}")
        if k not in self._level_cache:
            masses = [Fraction(1)]
            nodes = [""]
            for _ in range(k):
                nxt_m, nxt_n = [], []
                for w, m in zip(nodes, masses):
                    r = self.ratios[w]
                    nxt_n += [w + "0", w + "1"]
                    nxt_m += [m * r, m * (1 - r)]
                nodes, masses = nxt_n, nxt_m
            self._level_cache[k] = OrderFunctional(make_dyadic_algebra(k), masses)
        return self._level_cache[k]

    def functional(self) -> OrderFunctional:
        """The measure on the finest algebra of the tower."""
        return self.level_measure(self.depth)

    def extend(self, ratios: Union[str, Mapping[str, Fraction]] = "uniform") -> "DyadicTower":
        """A tower one level deeper that agrees with this one on every existing node."""
        new_nodes = [format(i, f"0{self.depth}b") if self.depth else "" for i in range(1 << self.depth)]
        if ratios == "uniform":
            extra = {w: HALF for w in new_nodes}
        else:
            extra = {w: ratios[w] for w in new_nodes}
        return build_tower(self.depth + 1, {**self.ratios, **extra})


def build_tower(depth: int, ratios: Union[str, Mapping[str, object]] = "uniform") -> DyadicTower:
    """Tower of the given depth; ``"uniform"`` splits every node in half.

    An explicit ratio map must give a ratio in the open interval (0, 1) for
    every node of length less than ``depth`` (empty string is the root), and
    nothing else.
    """
    if not isinstance(depth, int) or depth < 1:
        raise DepthZero(f"tower depth must be a positive integer, got {depth!r}")
    nodes = list(tree_nodes(depth))
    if isinstance(ratios, str):
        if ratios != "uniform":
            raise ParseError(f"unknown ratio preset {ratios!r}")
        table = {w: HALF for w in nodes}
    else:
        table = {}
        for w, r in ratios.items():
            r = R.as_fraction(r)
            if not 0 < r < 1:
                raise RatioOutOfRange(f"ratio at node {w!r} is {r}, must lie strictly between 0 and 1")
            table[w] = r
        missing = [w for w in nodes if w not in table]
        if missing:
            raise IncompleteTower(f"no ratio for node {missing[0]!r}")
        extra = [w for w in table if len(w) >= depth or any(c not in "01" for c in w)]
        if extra:
            raise IncompleteTower(f"{extra[0]!r} is not a node of a depth-{depth} tower")
        table = {w: table[w] for w in nodes}
    return DyadicTower(depth, table)


def alphas(tower: DyadicTower, branch: BranchChain) -> list[Fraction]:
    """``[alpha_0, ..., alpha_L]`` with ``alpha_k = mu(K_k)`` as a product along the branch."""
    if len(branch) > tower.depth:
        raise BranchTooLong(f"branch of length {len(branch)} exceeds tower depth {tower.depth}")
    out = [Fraction(1)]
    for k, bit in enumerate(branch.bits):
        r = tower.ratios[branch.prefix(k)]
        out.append(out[-1] * (r if bit == 0 else 1 - r))
    return out


def _check_truncation(tower: DyadicTower, branch: BranchChain, n: int) -> None:
    if len(branch) > tower.depth:
        raise BranchTooLong(f"branch of length {len(branch)} exceeds tower depth {tower.depth}")
    if not isinstance(n, int) or n < 1:
        raise TruncationExceedsBranch(f"truncation must be a positive integer, got {n!r}")
    if n > len(branch):
        raise TruncationExceedsBranch(f"truncation {n} exceeds branch length {len(branch)}")


def divergence_function(tower: DyadicTower, branch: BranchChain, n: int) -> SimpleFunction:
    """``f_n = sup_{k=1..n} (k / alpha_k) 1_{K_k}`` on the finest algebra of the tower."""
    _check_truncation(tower, branch, n)
    A = tower.algebra
    a = alphas(tower, branch)
    f = SimpleFunction.zero(A)
    for k in range(1, n + 1):
        f = f.sup(indicator(branch.clopen(A, k)).scale(Fraction(k) / a[k]))
    return f


def verify_divergence(tower: DyadicTower, branch: BranchChain, upto: int) -> list[tuple[int, Fraction]]:
    """``[(n, phi(f_n)) for n in 1..upto]`` with ``phi`` the tower measure."""
    _check_truncation(tower, branch, upto)
    phi = tower.functional()
    return [(n, evaluate(phi, divergence_function(tower, branch, n))) for n in range(1, upto + 1)]


def divergence_holds(table: list[tuple[int, Fraction]]) -> Optional[str]:
    """Check ``phi(f_n) >= n`` and strict growth; return a description of the first violation."""
    prev = None
    for n, v in table:
        if v < n:
            return f"phi(f_{n}) = {v} < {n}"
        if prev is not None and v <= prev:
            return f"phi(f_{n}) = {v} does not exceed phi(f_{n - 1}) = {prev}"
        prev = v
    return None


def embed(f: SimpleFunction) -> SimpleFunction:
    """Re-express a function on the depth-``d`` dyadic algebra at depth ``d + 1``."""
    if f.algebra.depth is None:
        raise AlgebraMismatch("embedding is defined for dyadic algebras")
    finer = make_dyadic_algebra(f.algebra.depth + 1)
    nums = []
    for x in f._num:
        nums += [x, x]
    return SimpleFunction._raw(finer, nums, f._den)
