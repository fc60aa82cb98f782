"""Conditional expectation operators on C(X) for finite X.

Two operator forms are provided:

* :class:`DuplicateOperator` averages each point of the Alexandroff duplicate
  ``A(X) = X u X'`` with its twin, ``(Tf)(x) = (f(x) + f(x')) / 2``.
* :class:`PartitionAverageOperator` replaces ``f`` on each block ``P`` of a
  clopen partition by its ``phi``-average ``phi(f 1_P) / phi(1_P)``.

:func:`check_ce_axioms` tests an operator against the defining properties of a
conditional expectation (positive, order continuous projection with Dedekind
complete range, sending weak order units to weak order units) on random
inputs and returns an :class:`AxiomReport`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from operator import add
from typing import Callable, Mapping, Optional, Sequence

from .boolean_algebra import BooleanAlgebra, ClopenSet, make_finite_algebra
from .errors import AlgebraMismatch, InvalidPartition
from .functional import OrderFunctional
from .sampling import random_function
from .simple_function import SimpleFunction, indicator, inf_all, sup_all

PRIME = "'"


@dataclass(frozen=True)
class DuplicateSpace:
    """Two disjoint copies of a finite space, paired by an involution.

    Doubled atoms are interleaved as ``x1, x1', x2, x2', ...``.
    """

    base: BooleanAlgebra
    doubled: BooleanAlgebra
    sigma: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        if n != 2 * len(self.base) or n != len(self.doubled):
            raise ValueError("doubled space must have twice as many atoms as the base")
        if any(self.sigma[self.sigma[i]] != i or self.sigma[i] == i for i in range(n)):
            raise ValueError("sigma must be a fixed-point-free involution")

    def twin(self, atom: str) -> str:
        return self.doubled.atoms[self.sigma[self.doubled.index(atom)]]

    def pair(self, base_atom: str) -> ClopenSet:
        """The clopen set ``{x, x'}`` for a base atom ``x``."""
        return self.doubled.clopen([base_atom, base_atom + PRIME])


def duplicate_space(base: BooleanAlgebra) -> DuplicateSpace:
    """The Alexandroff duplicate of ``base``; twins are named by appending ``'``."""
    names = []
    for a in base.atoms:
        names += [a, a + PRIME]
    doubled = make_finite_algebra(names)
    sigma = []
    for i in range(len(base)):
        sigma += [2 * i + 1, 2 * i]
    return DuplicateSpace(base, doubled, tuple(sigma))


class CeOperator:
    """Common interface of the two operator forms."""

    algebra: BooleanAlgebra
    form: str

    def apply(self, f: SimpleFunction) -> SimpleFunction:
        raise NotImplementedError

    def __call__(self, f: SimpleFunction) -> SimpleFunction:
        return self.apply(f)

    def in_range(self, g: SimpleFunction) -> bool:
        raise NotImplementedError

    def range_basis(self) -> list[SimpleFunction]:
        raise NotImplementedError

    def _check(self, f: SimpleFunction) -> None:
        if f.algebra is not self.algebra and f.algebra != self.algebra:
            raise AlgebraMismatch("function does not live on the operator's algebra")


class DuplicateOperator(CeOperator):
    """``(Tf)(x) = (f(x) + f(sigma x)) / 2`` on the doubled space."""

    form = "duplicate"

    def __init__(self, space: DuplicateSpace):
        self.space = space
        self.algebra = space.doubled
        self._sigma = space.sigma

    @classmethod
    def with_pairing(cls, algebra: BooleanAlgebra, pairing: Mapping[str, str]) -> "DuplicateOperator":
        """Averaging operator for an arbitrary atom map, involutive or not.

        Exists to build faulty operators that the axiom checker must reject.
        """
        op = object.__new__(cls)
        op.space = None
        op.algebra = algebra
        op._sigma = tuple(algebra.index(pairing[a]) for a in algebra.atoms)
        return op

    def __repr__(self) -> str:
        base = self.space.base if self.space is not None else self.algebra
        return f"DuplicateOperator({base!r})"

    def apply(self, f: SimpleFunction) -> SimpleFunction:
        self._check(f)
        num = f._num
        return SimpleFunction._raw(self.algebra, map(add, num, map(num.__getitem__, self._sigma)), 2 * f._den)

    def in_range(self, g: SimpleFunction) -> bool:
        """``g(x) == g(x')`` for every atom."""
        self._check(g)
        num, s = g._num, self._sigma
        return all(num[i] == num[s[i]] for i in range(len(num)))

    def range_basis(self) -> list[SimpleFunction]:
        seen, basis = set(), []
        for i, j in enumerate(self._sigma):
            if i in seen:
                continue
            seen.update((i, j))
            basis.append(indicator(ClopenSet(self.algebra, (1 << i) | (1 << j))))
        return basis


class PartitionAverageOperator(CeOperator):
    """Block averaging with respect to a measure.

    ``blocks`` must be nonempty, pairwise disjoint and cover every atom; with
    ``strict=True`` (the default) each block must also have positive measure.
    A block of measure zero is mapped to 0, which is only reachable with
    ``strict=False``.
    """

    form = "partition"

    def __init__(self, blocks: Sequence, measure: OrderFunctional, strict: bool = True):
        algebra = measure.algebra
        clopens = []
        seen = 0
        for b in blocks:
            if isinstance(b, ClopenSet):
                if b.algebra != algebra:
                    raise AlgebraMismatch("partition block belongs to a different algebra")
                c = b
            else:
                c = algebra.clopen(b)
                if len(c) != len(list(b)):
                    raise InvalidPartition(f"block {list(b)!r} repeats an atom")
            if not c:
                raise InvalidPartition("partition blocks must be nonempty")
            if c.mask & seen:
                raise InvalidPartition("partition blocks must be pairwise disjoint")
            seen |= c.mask
            if strict and measure.measure(c) <= 0:
                raise InvalidPartition(f"block {list(c)!r} has zero measure")
            clopens.append(c)
        if seen != algebra.full_mask:
            missing = list(ClopenSet(algebra, algebra.full_mask ^ seen))
            raise InvalidPartition(f"partition does not cover atoms {missing!r}")
        self.algebra = algebra
        self.blocks = tuple(clopens)
        self.measure = measure
        self._members = [tuple(i for i in range(len(algebra)) if c.mask >> i & 1) for c in clopens]

    @classmethod
    def identity(cls, algebra: BooleanAlgebra) -> "PartitionAverageOperator":
        """Partition into singletons with counting measure: the identity map."""
        phi = OrderFunctional(algebra, [1] * len(algebra))
        return cls([algebra.singleton(a) for a in algebra.atoms], phi)

    def __repr__(self) -> str:
        return f"PartitionAverageOperator({[list(b) for b in self.blocks]!r})"

    def apply(self, f: SimpleFunction) -> SimpleFunction:
        self._check(f)
        w, x = self.measure._num, f._num
        fracs = []
        for members in self._members:
            mass = sum(w[i] for i in members)
            if mass == 0:
                fracs.append((0, 1))
            else:
                # phi(f 1_P) / phi(1_P); the measure's denominator cancels
                fracs.append((sum(w[i] * x[i] for i in members), mass * f._den))
        den = lcm(*(q for _, q in fracs))
        nums = [0] * len(x)
        for (p, q), members in zip(fracs, self._members):
            v = p * (den // q)
            for i in members:
                nums[i] = v
        return SimpleFunction._raw(self.algebra, nums, den)

    def in_range(self, g: SimpleFunction) -> bool:
        """``g`` is constant on every block."""
        self._check(g)
        x = g._num
        return all(len({x[i] for i in members}) == 1 for members in self._members)

    def range_basis(self) -> list[SimpleFunction]:
        return [indicator(b) for b in self.blocks]


def range_membership(T: CeOperator, g: SimpleFunction) -> bool:
    return T.in_range(g)


def range_basis(T: CeOperator) -> list[SimpleFunction]:
    return T.range_basis()


# -- axiom verification ------------------------------------------------------

AXIOMS = (
    "positivity",
    "projection",
    "linearity",
    "order continuity",
    "unit preservation",
    "range closure",
)


@dataclass
class AxiomResult:
    name: str
    trials: int = 0
    failures: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        self.trials += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = describe()

    def merge(self, other: "AxiomResult") -> "AxiomResult":
        return AxiomResult(
            self.name,
            self.trials + other.trials,
            self.failures + other.failures,
            self.counterexample if self.counterexample is not None else other.counterexample,
        )


@dataclass
class AxiomReport:
    results: list[AxiomResult] = field(default_factory=lambda: [AxiomResult(n) for n in AXIOMS])

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        return AxiomReport([a.merge(b) for a, b in zip(self.results, other.results)])

    def format_table(self) -> str:
        rows = [("axiom", "trials", "result", "first counterexample")]
        for r in self.results:
            rows.append((r.name, str(r.trials), "PASS" if r.passed else "FAIL", r.counterexample or "-"))
        widths = [max(len(row[i]) for row in rows) for i in range(3)]
        lines = []
        for row in rows:
            cells = [row[i].ljust(widths[i]) for i in range(3)] + [row[3]]
            lines.append("  ".join(cells).rstrip())
        return "\n".join(lines)


def check_ce_axioms(T: CeOperator, trials: int = 100, rng: Optional[random.Random] = None) -> AxiomReport:
    """Run every axiom check ``trials`` times on random inputs.

    Equalities are exact. Order continuity is tested in its finite form: ``T``
    must commute with the supremum of an increasing chain (even trials) and
    the infimum of a decreasing chain (odd trials), each of length up to the
    number of atoms.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = rng if rng is not None else random.Random(0)
    A = T.algebra
    n = len(A)
    report = AxiomReport()
    pos, proj, lin, cont, unit, rng_closed = report.results

    for trial in range(trials):
        f = random_function(A, rng)
        g = random_function(A, rng, den=f._den)
        Tf, Tg = T.apply(f), T.apply(g)

        p = abs(f)
        Tp = T.apply(p)
        pos.record(Tp.is_nonnegative(), lambda: f"f={p} >= 0 but Tf={Tp}")

        TTf = T.apply(Tf)
        proj.record(TTf == Tf, lambda: f"f={f}: Tf={Tf}, TTf={TTf}")

        a = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        b = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        lhs = T.apply(f.scale(a) + g.scale(b))
        rhs = Tf.scale(a) + Tg.scale(b)
        lin.record(lhs == rhs, lambda: f"a={a}, b={b}, f={f}, g={g}: {lhs} != {rhs}")

        chain = [f]
        for _ in range(rng.randint(min(1, n - 1), n - 1)):
            chain.append(chain[-1] + random_function(A, rng, 0, 12, den=f._den))
        if trial % 2:
            # decreasing chain, compared through infima
            chain = [-c for c in chain]
            lim_l, lim_r = T.apply(inf_all(chain)), inf_all([T.apply(c) for c in chain])
        else:
            lim_l, lim_r = T.apply(sup_all(chain)), sup_all([T.apply(c) for c in chain])
        cont.record(lim_l == lim_r, lambda: f"chain {chain}: T(lim)={lim_l}, lim(T)={lim_r}")

        e = random_function(A, rng, 1, 12)
        Te = T.apply(e)
        unit.record(Te.is_weak_unit(), lambda: f"e={e} is a weak unit but Te={Te}")

        closed = [Tf.sup(Tg), Tf.inf(Tg), Tf + Tg, Tf.scale(a)]
        bad = next((x for x in closed if T.apply(x) != x), None)
        rng_closed.record(bad is None, lambda: f"g={Tf}, h={Tg}: {bad} leaves the range")

    return report
