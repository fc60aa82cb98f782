"""One test per acceptance criterion; each records a PASS/FAIL line for the summary."""
import contextlib
import io
import itertools
import json
import math
import random
import time
from fractions import Fraction

import pytest

from condexp import (
    BranchChain,
    DuplicateOperator,
    OrderFunctional,
    PartitionAverageOperator,
    SimpleFunction,
    build_tower,
    check_ce_axioms,
    duplicate_space,
    evaluate,
    freudenthal_approx,
    indicator,
    make_finite_algebra,
    positive_split,
    range_membership,
    unit,
    vanishes_on_clopens,
    verify_divergence,
)
from condexp import formats
from condexp.cli import run
from condexp.sampling import (
    random_algebra,
    random_branch,
    random_function,
    random_measure,
    random_tower,
)

import conftest

# atom-sum oracle values for the uniform depth-12 all-zeros branch, fixed before the build
DIVERGENCE_12 = [1, Fraction(5, 2), Fraction(9, 2), 7, 10, Fraction(27, 2), Fraction(35, 2),
                 22, 27, Fraction(65, 2), Fraction(77, 2), 45]


@contextlib.contextmanager
def criterion(label):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        conftest.ACCEPTANCE_LINES.append(f"{status}  {label}  ({elapsed:.1f} s)")


def test_1_ce_axiom_suite():
    with criterion("1 CE axiom suite, 200 bases x 1000 trials, < 30 s"):
        rng = random.Random(1)
        start = time.perf_counter()
        failed = []
        for _ in range(200):
            T = DuplicateOperator(duplicate_space(random_algebra(rng, 1, 8)))
            report = check_ce_axioms(T, 1000, rng)
            assert all(r.trials == 1000 for r in report.results)
            if not report.passed:
                failed.append(report.format_table())
        elapsed = time.perf_counter() - start
        assert not failed, failed[0]
        assert elapsed < 30, f"took {elapsed:.1f} s"


def test_2_range_characterization():
    with criterion("2 range membership == fixed point == sigma symmetry"):
        T = DuplicateOperator(duplicate_space(make_finite_algebra(["a", "b"])))
        mismatches = 0
        count = 0
        for vals in itertools.product((0, 1, 2), repeat=4):
            g = SimpleFunction(T.algebra, vals)
            sym = all(g[x] == g[T.space.twin(x)] for x in T.algebra.atoms)
            mismatches += not (range_membership(T, g) == (T(g) == g) == sym)
            count += 1
        assert count == 81
        rng = random.Random(2)
        for _ in range(500):
            T = DuplicateOperator(duplicate_space(random_algebra(rng, 3, 12)))
            g = random_function(T.algebra, rng, -2, 2)
            if rng.random() < 0.5:
                g = T(g)
            sym = all(g[x] == g[T.space.twin(x)] for x in T.algebra.atoms)
            mismatches += not (range_membership(T, g) == (T(g) == g) == sym)
        assert mismatches == 0


def test_3_vanishing_on_clopens():
    with criterion("3 vanishes_on_clopens iff zero, exhaustive <= 4 atoms, < 5 s"):
        start = time.perf_counter()
        mismatches = 0
        for n in range(1, 5):
            B = make_finite_algebra([f"x{i}" for i in range(n)])
            clopens = list(B.clopens())
            for w in itertools.product((0, Fraction(1, 3), 1), repeat=n):
                phi = OrderFunctional(B, w)
                brute = all(evaluate(phi, indicator(A)) == 0 for A in clopens)
                mismatches += not (vanishes_on_clopens(phi) == brute == all(x == 0 for x in w))
        elapsed = time.perf_counter() - start
        assert mismatches == 0
        assert elapsed < 5, f"took {elapsed:.1f} s"


def test_4_positive_split():
    with criterion("4 positive split, 1000 strictly positive measures"):
        rng = random.Random(4)
        for _ in range(1000):
            B = random_algebra(rng, 2, 16)
            phi = random_measure(B, rng)
            K1, K2 = positive_split(phi)
            a1, a2 = phi.measure(K1), phi.measure(K2)
            assert K1.isdisjoint(K2) and (K1 | K2) == B.top()
            assert a1 > 0 and a2 > 0
            assert a1 + a2 == evaluate(phi, unit(B))


def test_5_divergence():
    with criterion("5 divergence, uniform depth 12 + 100 random towers, < 10 s"):
        start = time.perf_counter()
        table = verify_divergence(build_tower(12), BranchChain.parse("0" * 12), 12)
        assert table == [(n, Fraction(v)) for n, v in enumerate(DIVERGENCE_12, 1)]
        assert all(v == Fraction(n * (n - 1), 4) + n for n, v in table)
        rng = random.Random(5)
        for _ in range(100):
            t = random_tower(rng, rng.randint(1, 10))
            b = random_branch(rng, t.depth)
            for n, v in verify_divergence(t, b, t.depth):
                assert v >= n
        elapsed = time.perf_counter() - start
        assert elapsed < 10, f"took {elapsed:.1f} s"


def test_6_freudenthal():
    with criterion("6 Freudenthal approximation, 300 random cases + fixed point"):
        rng = random.Random(6)
        for _ in range(300):
            B = random_algebra(rng)
            f = random_function(B, rng)
            eps = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            s = freudenthal_approx(f, eps)
            for x, y in zip(f.values, s.values):
                assert 0 <= x - y < eps
                assert (y / eps).denominator == 1
                assert y == eps * math.floor(x / eps)
            grid = SimpleFunction(B, [eps * rng.randint(-9, 9) for _ in B.atoms])
            assert freudenthal_approx(grid, eps) == grid


def test_7_mutation_sensitivity():
    with criterion("7 mutation sensitivity, non-involution and zero block"):
        B = make_finite_algebra(["a", "b", "c", "d"])
        cycle = DuplicateOperator.with_pairing(B, {"a": "b", "b": "c", "c": "d", "d": "a"})
        collapse = DuplicateOperator.with_pairing(B, {"a": "b", "b": "b", "c": "d", "d": "d"})
        assert not check_ce_axioms(cycle, 200, random.Random(7))["projection"].passed
        assert not check_ce_axioms(collapse, 200, random.Random(7)).passed
        phi = OrderFunctional(B, [1, 1, 0, 2])
        zero_block = PartitionAverageOperator([["a", "b"], ["c"], ["d"]], phi, strict=False)
        assert not check_ce_axioms(zero_block, 200, random.Random(7)).passed


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue()


def test_8_roundtrip_and_determinism(tmp_path):
    with criterion("8 format round-trip x100 per format, seeded reports identical"):
        rng = random.Random(8)
        for _ in range(100):
            B = random_algebra(rng)
            values = {
                "algebra": B,
                "function": random_function(B, rng),
                "measure": random_measure(B, rng, strictly_positive=False),
                "operator": DuplicateOperator(duplicate_space(B)),
                "tower": random_tower(rng, rng.randint(1, 5)),
            }
            for kind, value in values.items():
                path = tmp_path / kind
                formats.write(path, value)
                first = path.read_bytes()
                formats.write(path, formats.read(path, kind))
                assert path.read_bytes() == first, kind
        op = tmp_path / "dup.op"
        op.write_text(json.dumps({"form": "duplicate", "base": {"kind": "finite", "atoms": ["a", "b", "c"]}}))
        for argv in (["ce-check", "--operator", str(op), "--trials", "200", "--seed", "3"], ["selftest", "--seed", "3"]):
            a, b = _cli(argv), _cli(argv)
            assert a == b and a[0] == 0
