"""Invariant suites run by ``condexp selftest``.

Each suite is a function of a seeded :class:`random.Random` returning a
:class:`Tally`. Sizes follow the exhaustive bounds documented on each module
(at most 5 atoms for lattice laws, 4 for functional enumeration, and so on).
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import cond_expectation as ce
from . import formats
from .boolean_algebra import is_connected, make_dyadic_algebra, make_finite_algebra, separation_witness
from .functional import (
    OrderFunctional,
    dirac,
    evaluate,
    is_strictly_positive,
    positive_split,
    vanishes_on_clopens,
)
from .sampling import (
    random_algebra,
    random_branch,
    random_function,
    random_measure,
    random_rational,
    random_tower,
)
from .simple_function import SimpleFunction, freudenthal_approx, indicator, level_set, unit
from .witness import BranchChain, alphas, build_tower, divergence_function, embed, verify_divergence

DEFAULT_SEED = 0


@dataclass
class Tally:
    cases: int = 0
    failures: int = 0
    first: Optional[str] = None

    def check(self, ok: bool, describe: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.first is None:
                self.first = describe()


@dataclass
class SuiteResult:
    name: str
    tally: Tally
    seconds: float

    @property
    def passed(self) -> bool:
        return self.tally.failures == 0 and self.tally.cases > 0


SUITES: list[tuple[str, Callable[[random.Random], Tally]]] = []


def suite(name: str):
    def register(fn):
        SUITES.append((name, fn))
        return fn

    return register


def _algebras(max_atoms: int):
    for n in range(1, max_atoms + 1):
        yield make_finite_algebra([f"x{i}" for i in range(n)])


# -- boolean algebra ---------------------------------------------------------

@suite("lattice laws")
def _lattice_laws(rng):
    t = Tally()
    for B in _algebras(5):
        C = list(B.clopens())
        for a, b in itertools.product(C, repeat=2):
            t.check(a & b == b & a and a | b == b | a, lambda: f"commutativity {a}, {b}")
            t.check(a & (a | b) == a and a | (a & b) == a, lambda: f"absorption {a}, {b}")
            t.check(~(a & b) == ~a | ~b and ~(a | b) == ~a & ~b, lambda: f"De Morgan {a}, {b}")
        for a, b, c in itertools.product(C, repeat=3):
            t.check((a & b) & c == a & (b & c) and (a | b) | c == a | (b | c), lambda: f"associativity {a}, {b}, {c}")
            t.check(a & (b | c) == (a & b) | (a & c) and a | (b & c) == (a | b) & (a | c), lambda: f"distributivity {a}, {b}, {c}")
    return t


@suite("complement join")
def _complement_join(rng):
    t = Tally()
    for _ in range(200):
        B = random_algebra(rng, 1, 8)
        A = B.from_mask(rng.getrandbits(len(B)))
        t.check((A | ~A) == B.top() and not (A & ~A), lambda: f"{A}")
    return t


@suite("separation witness")
def _separation(rng):
    t = Tally()
    for B in _algebras(5):
        for A in B.clopens():
            C = separation_witness(A)
            if len(A) >= 2:
                t.check(C is not None and bool(A & C) and not A <= C, lambda: f"A={A}, C={C}")
                t.check(not is_connected(A), lambda: f"{A} reported connected")
            else:
                t.check(C is None and is_connected(A), lambda: f"A={A} got witness {C}")
                # a connected set meeting a clopen lies inside it
                for D in B.clopens():
                    t.check(not (A & D) or A <= D, lambda: f"A={A}, C={D}")
    return t


@suite("dyadic clopen count")
def _dyadic_count(rng):
    t = Tally()
    for d in range(4):
        B = make_dyadic_algebra(d)
        t.check(len(B) == 2**d, lambda: f"depth {d}: {len(B)} atoms")
        t.check(sum(1 for _ in B.clopens()) == 2 ** (2**d), lambda: f"depth {d}: wrong clopen count")
    return t


# -- simple functions ----------------------------------------------------------

GRID = [Fraction(v) for v in (-1, 0, Fraction(1, 2), 2)]


@suite("riesz identities")
def _riesz(rng):
    t = Tally()
    B = make_finite_algebra(["a", "b", "c"])
    fs = [SimpleFunction(B, v) for v in itertools.product(GRID, repeat=3)]
    hs = fs[::7]
    for f, g in itertools.product(fs, repeat=2):
        t.check(f.sup(g) + f.inf(g) == f + g, lambda: f"{f}, {g}")
        if f <= g:
            for h in hs:
                t.check(f + h <= g + h, lambda: f"translation {f}, {g}, {h}")
            t.check(f.scale(Fraction(3, 2)) <= g.scale(Fraction(3, 2)), lambda: f"scaling {f}, {g}")
    for f in fs:
        t.check(abs(f) == f.sup(-f), lambda: f"abs {f}")
    return t


@suite("indicator complement")
def _indicator(rng):
    t = Tally()
    for B in _algebras(5):
        one = unit(B)
        for A in B.clopens():
            t.check(indicator(A) + indicator(~A) == one, lambda: f"{A}")
    return t


@suite("level set monotonicity")
def _level_sets(rng):
    t = Tally()
    for _ in range(300):
        B = random_algebra(rng, 1, 6)
        f = random_function(B, rng)
        g = f + random_function(B, rng, 0, 6)
        lam, mu = sorted([random_rational(rng, -15, 15), random_rational(rng, -15, 15)])
        t.check(level_set(g, lam) <= level_set(f, lam), lambda: f"antitone in f: {f}, {g}, {lam}")
        t.check(level_set(f, lam) <= level_set(f, mu), lambda: f"monotone in lambda: {f}, {lam}, {mu}")
    return t


@suite("freudenthal approximation")
def _freudenthal(rng):
    t = Tally()
    for _ in range(300):
        B = random_algebra(rng, 1, 6)
        f = random_function(B, rng)
        eps = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        s = freudenthal_approx(f, eps)
        err = f - s
        t.check(
            err.is_nonnegative() and err.sup_norm() < eps and all((v / eps).denominator == 1 for v in s.values),
            lambda: f"f={f}, eps={eps}, s={s}",
        )
    return t


# -- functionals ---------------------------------------------------------------

@suite("functional additivity")
def _additivity(rng):
    t = Tally()
    for B in _algebras(4):
        C = list(B.clopens())
        for w in itertools.product((0, Fraction(1, 3), 1), repeat=len(B)):
            phi = OrderFunctional(B, w)
            for a, b in itertools.product(C, repeat=2):
                t.check(phi.measure(a | b) + phi.measure(a & b) == phi.measure(a) + phi.measure(b), lambda: f"{phi}, {a}, {b}")
    return t


@suite("vanishing on clopens")
def _vanishing(rng):
    t = Tally()
    for B in _algebras(4):
        basis = [indicator(B.singleton(x)) for x in B.atoms]
        for w in itertools.product((0, Fraction(1, 3), 1), repeat=len(B)):
            phi = OrderFunctional(B, w)
            zero_on_all = all(evaluate(phi, f) == 0 for f in basis)
            t.check(vanishes_on_clopens(phi) == phi.is_zero() == zero_on_all, lambda: f"{phi}")
    return t


@suite("strict positivity")
def _strict(rng):
    t = Tally()
    B = make_finite_algebra(["a", "b", "c"])
    positives = [indicator(A) for A in B.clopens() if A]
    for w in itertools.product((0, Fraction(1, 2), 1), repeat=3):
        phi = OrderFunctional(B, w)
        brute = all(evaluate(phi, f) > 0 for f in positives)
        t.check(is_strictly_positive(phi) == brute, lambda: f"{phi}")
    for x in B.atoms:
        d = dirac(B, x)
        t.check(not is_strictly_positive(d) and evaluate(d, unit(B)) == 1, lambda: f"dirac {x}")
    return t


@suite("functional order continuity")
def _functional_continuity(rng):
    t = Tally()
    for _ in range(200):
        B = random_algebra(rng, 1, 8)
        phi = random_measure(B, rng, strictly_positive=False)
        A = B.top()
        chain = [A]
        for _ in range(len(B)):
            A = A & B.from_mask(rng.getrandbits(len(B)))
            chain.append(A)
        values = [phi.measure(c) for c in chain]
        t.check(
            all(x >= y for x, y in zip(values, values[1:])) and values[-1] == phi.measure(chain[-1]),
            lambda: f"{phi}: {values}",
        )
    return t


@suite("positive split")
def _split(rng):
    t = Tally()
    for _ in range(1000):
        B = random_algebra(rng, 2, 16)
        phi = random_measure(B, rng)
        K1, K2 = positive_split(phi)
        a1, a2 = phi.measure(K1), phi.measure(K2)
        t.check(
            K1.isdisjoint(K2) and (K1 | K2) == B.top() and min(a1, a2) > 0 and a1 + a2 == phi.total(),
            lambda: f"{phi}: {K1}, {K2}",
        )
    return t


# -- conditional expectation -----------------------------------------------------

@suite("duplicate axioms")
def _dup_axioms(rng):
    t = Tally()
    for n in range(1, 9):
        T = ce.DuplicateOperator(ce.duplicate_space(make_finite_algebra([f"x{i}" for i in range(n)])))
        report = ce.check_ce_axioms(T, 100, rng)
        for r in report.results:
            t.check(r.passed, lambda: f"{n} atoms, {r.name}: {r.counterexample}")
    return t


@suite("partition axioms")
def _partition_axioms(rng):
    t = Tally()
    for n in range(1, 9):
        B = make_finite_algebra([f"x{i}" for i in range(n)])
        report = ce.check_ce_axioms(ce.PartitionAverageOperator.identity(B), 50, rng)
        for r in report.results:
            t.check(r.passed, lambda: f"identity on {n} atoms, {r.name}: {r.counterexample}")
        atoms = list(B.atoms)
        rng.shuffle(atoms)
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
        blocks = [atoms[i:j] for i, j in zip([0] + cuts, cuts + [n])]
        T = ce.PartitionAverageOperator(blocks, random_measure(B, rng))
        for r in ce.check_ce_axioms(T, 50, rng).results:
            t.check(r.passed, lambda: f"{blocks}, {r.name}: {r.counterexample}")
    return t


@suite("duplicate projection")
def _dup_projection(rng):
    t = Tally()
    grid = (0, Fraction(1, 2), 1)
    for n in (1, 2):
        T = ce.DuplicateOperator(ce.duplicate_space(make_finite_algebra([f"x{i}" for i in range(n)])))
        for v in itertools.product(grid, repeat=2 * n):
            f = SimpleFunction(T.algebra, v)
            t.check(T(T(f)) == T(f), lambda: f"{f}")
    for _ in range(1000):
        T = ce.DuplicateOperator(ce.duplicate_space(random_algebra(rng, 3, 8)))
        f = random_function(T.algebra, rng)
        t.check(T(T(f)) == T(f), lambda: f"{f}")
    return t


@suite("range characterization")
def _range(rng):
    t = Tally()
    for _ in range(500):
        space = ce.duplicate_space(random_algebra(rng, 1, 8))
        T = ce.DuplicateOperator(space)
        # half of the samples are forced symmetric so both answers occur
        g = random_function(T.algebra, rng, -2, 2)
        if rng.random() < 0.5:
            g = T(g)
        symmetric = all(g[x] == g[space.twin(x)] for x in T.algebra.atoms)
        t.check(T.in_range(g) == (T(g) == g) == symmetric, lambda: f"{g}")
    for _ in range(50):
        T = ce.DuplicateOperator(ce.duplicate_space(random_algebra(rng, 1, 8)))
        basis = T.range_basis()
        t.check(len(basis) * 2 == len(T.algebra) and all(T(b) == b for b in basis), lambda: f"basis of {T}")
    return t


@suite("averaging identity")
def _averaging(rng):
    t = Tally()
    for _ in range(500):
        T = ce.DuplicateOperator(ce.duplicate_space(random_algebra(rng, 1, 8)))
        g = T(random_function(T.algebra, rng))
        f = random_function(T.algebra, rng)
        t.check(T(g * f) == g * T(f), lambda: f"g={g}, f={f}")
    return t


@suite("strict positivity of T")
def _t_strict(rng):
    t = Tally()
    for _ in range(500):
        T = ce.DuplicateOperator(ce.duplicate_space(random_algebra(rng, 1, 8)))
        f = random_function(T.algebra, rng, 0, 3)
        if not f.is_positive():
            continue
        t.check(T(f).is_positive(), lambda: f"{f}")
    return t


@suite("range is a Riesz subspace")
def _range_subspace(rng):
    t = Tally()
    for _ in range(300):
        T = ce.DuplicateOperator(ce.duplicate_space(random_algebra(rng, 1, 8)))
        basis = T.range_basis()
        g = sum((b.scale(random_rational(rng)) for b in basis), SimpleFunction.zero(T.algebra))
        h = sum((b.scale(random_rational(rng)) for b in basis), SimpleFunction.zero(T.algebra))
        for x in (g + h, g.scale(random_rational(rng)), g.sup(h), g.inf(h)):
            t.check(T.in_range(x), lambda: f"{x}")
    return t


@suite("mutation sensitivity")
def _mutation(rng):
    t = Tally()
    for n in range(2, 7):
        B = make_finite_algebra([f"x{i}" for i in range(n)])
        D = ce.duplicate_space(B).doubled
        atoms = D.atoms
        # a 3-cycle on the first three doubled atoms, twins elsewhere
        pairing = {a: ce.duplicate_space(B).twin(a) for a in atoms}
        pairing[atoms[0]], pairing[atoms[1]], pairing[atoms[2]] = atoms[1], atoms[2], atoms[0]
        report = ce.check_ce_axioms(ce.DuplicateOperator.with_pairing(D, pairing), 50, rng)
        t.check(not report["projection"].passed, lambda: f"non-involution on {n} atoms went undetected")

        weights = [1] * len(B)
        weights[0] = 0
        phi = OrderFunctional(B, weights)
        T = ce.PartitionAverageOperator([B.singleton(a) for a in B.atoms], phi, strict=False)
        t.check(not ce.check_ce_axioms(T, 50, rng).passed, lambda: f"zero block on {n} atoms went undetected")
    return t


# -- dyadic tower ------------------------------------------------------------------

@suite("tower coherence")
def _tower(rng):
    t = Tally()
    for _ in range(100):
        depth = rng.randint(1, 8)
        tower = random_tower(rng, depth)
        for k in range(depth + 1):
            mu = tower.level_measure(k)
            t.check(mu.total() == 1, lambda: f"level {k} sums to {mu.total()}")
            t.check(all(w > 0 for w in mu.weights), lambda: f"level {k} not strictly positive")
            if k < depth:
                finer = tower.level_measure(k + 1).weights
                t.check(
                    all(finer[2 * i] + finer[2 * i + 1] == w for i, w in enumerate(mu.weights)),
                    lambda: f"level {k + 1} does not restrict to level {k}",
                )
    return t


@suite("alpha chain identity")
def _alphas(rng):
    t = Tally()
    for _ in range(200):
        depth = rng.randint(1, 8)
        tower = random_tower(rng, depth)
        branch = random_branch(rng, rng.randint(0, depth))
        a = alphas(tower, branch)
        phi = tower.functional()
        by_sum = [phi.measure(K) for K in branch.nested_clopens(tower.algebra)]
        t.check(a == by_sum, lambda: f"{branch}: {a} vs {by_sum}")
        t.check(all(x > y > 0 for x, y in zip(a, a[1:])), lambda: f"not strictly decreasing: {a}")
    return t


@suite("divergence growth")
def _divergence(rng):
    t = Tally()
    tower = build_tower(12)
    branch = BranchChain.parse("0" * 12)
    for n, v in verify_divergence(tower, branch, 12):
        t.check(v == Fraction(n * (n - 1), 4) + n, lambda: f"uniform n={n}: {v}")
    for _ in range(30):
        depth = rng.randint(1, 8)
        tower = random_tower(rng, depth)
        branch = random_branch(rng, depth)
        table = verify_divergence(tower, branch, depth)
        t.check(all(v >= n for n, v in table), lambda: f"{branch}: {table}")
        t.check(all(x[1] < y[1] for x, y in zip(table, table[1:])), lambda: f"not increasing: {table}")
    return t


@suite("truncation consistency")
def _truncation(rng):
    t = Tally()
    for _ in range(30):
        depth = rng.randint(1, 7)
        tower = random_tower(rng, depth)
        branch = random_branch(rng, depth)
        leaves = (format(i, f"0{depth}b") for i in range(2**depth))
        deeper = tower.extend({w: Fraction(rng.randint(1, 4), 5) for w in leaves})
        for n in range(1, depth + 1):
            f = divergence_function(tower, branch, n)
            lifted = embed(f)
            t.check(lifted == divergence_function(deeper, branch, n), lambda: f"n={n}: lift differs")
            t.check(evaluate(deeper.functional(), lifted) == evaluate(tower.functional(), f), lambda: f"n={n}")
    return t


# -- formats ---------------------------------------------------------------------

@suite("format round-trip")
def _roundtrip(rng):
    t = Tally()
    for _ in range(100):
        B = random_algebra(rng, 1, 8)
        values = [
            B,
            make_dyadic_algebra(rng.randint(0, 4)),
            random_function(B, rng),
            random_measure(B, rng, strictly_positive=False),
            ce.DuplicateOperator(ce.duplicate_space(B)),
            random_tower(rng, rng.randint(1, 4)),
        ]
        kinds = ["algebra", "algebra", "function", "measure", "operator", "tower"]
        for v, kind in zip(values, kinds):
            text = formats.dumps(v)
            t.check(formats.dumps(formats.loads(text, kind)) == text, lambda: f"{kind}: {text}")
    return t


def run_selftest(seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    results = []
    for i, (name, fn) in enumerate(SUITES):
        rng = random.Random(f"{seed}:{i}")
        start = time.perf_counter()
        tally = fn(rng)
        results.append(SuiteResult(name, tally, time.perf_counter() - start))
    return results


def format_results(results: list[SuiteResult], timings: bool = False) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{r.name.ljust(width)}  {status}  {r.tally.cases - r.tally.failures}/{r.tally.cases}"
        if timings:
            line += f"  {r.seconds:.2f}s"
        if not r.passed and r.tally.first:
            line += f"  first failure: {r.tally.first}"
        lines.append(line)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} suites passed")
    return "\n".join(lines)
