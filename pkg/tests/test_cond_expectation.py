import itertools
import random
from fractions import Fraction

import pytest

from condexp import (
    AlgebraMismatch,
    DuplicateOperator,
    InvalidPartition,
    OrderFunctional,
    PartitionAverageOperator,
    SimpleFunction,
    check_ce_axioms,
    duplicate_space,
    indicator,
    make_finite_algebra,
    range_basis,
    range_membership,
    unit,
)
from condexp.cond_expectation import AXIOMS
from condexp.sampling import random_algebra, random_function, random_measure


def dup(atoms):
    return DuplicateOperator(duplicate_space(make_finite_algebra(atoms)))


def atomwise_average(f, space):
    # oracle: literal (f(x) + f(x')) / 2 through atom names
    v = f.as_dict()
    return {x: (v[x] + v[space.twin(x)]) / 2 for x in space.doubled.atoms}


def test_duplicate_space_examples():
    D = duplicate_space(make_finite_algebra(["a", "b"]))
    assert D.doubled.atoms == ("a", "a'", "b", "b'")
    assert D.twin("a") == "a'" and D.twin("b'") == "b"
    assert len(duplicate_space(make_finite_algebra(["z"])).doubled) == 2


def test_sigma_is_fixed_point_free_involution():
    for n in range(1, 17):
        D = duplicate_space(make_finite_algebra([f"x{i}" for i in range(n)]))
        assert len(D.doubled) == 2 * n
        for x in D.doubled.atoms:
            assert D.twin(x) != x and D.twin(D.twin(x)) == x


def test_twin_name_collision_rejected():
    with pytest.raises(ValueError):
        duplicate_space(make_finite_algebra(["a", "a'"]))


def test_duplicate_apply_example():
    T = dup(["a", "b"])
    f = SimpleFunction(T.algebra, {"a": 1, "a'": 3, "b": 2, "b'": 2})
    assert T(f) == SimpleFunction.constant(T.algebra, 2)


def test_duplicate_apply_matches_oracle(rng):
    for _ in range(300):
        T = DuplicateOperator(duplicate_space(random_algebra(rng)))
        f = random_function(T.algebra, rng)
        assert T(f).as_dict() == atomwise_average(f, T.space)


def test_partition_apply_example(abc):
    phi = OrderFunctional(abc, [1, 1, 1])
    T = PartitionAverageOperator([["a", "b"], ["c"]], phi)
    assert T(SimpleFunction(abc, [1, 3, 5])) == SimpleFunction(abc, [2, 2, 5])


def test_partition_apply_matches_weighted_average(rng):
    for _ in range(300):
        B = random_algebra(rng, 1, 8)
        phi = random_measure(B, rng)
        labels = [rng.randint(0, 2) for _ in B.atoms]
        blocks = [[a for a, l in zip(B.atoms, labels) if l == k] for k in range(3)]
        blocks = [b for b in blocks if b]
        T = PartitionAverageOperator(blocks, phi)
        f = random_function(B, rng)
        w, v = phi.as_dict(), f.as_dict()
        for b in blocks:
            avg = sum(w[a] * v[a] for a in b) / sum(w[a] for a in b)
            assert all(T(f)[a] == avg for a in b)


def test_unit_preserved_by_both_forms(rng):
    for _ in range(200):
        B = random_algebra(rng)
        T = DuplicateOperator(duplicate_space(B))
        assert T(unit(T.algebra)) == unit(T.algebra)
        blocks = [[a] for a in B.atoms[:1]] + ([list(B.atoms[1:])] if len(B) > 1 else [])
        P = PartitionAverageOperator(blocks, random_measure(B, rng))
        assert P(unit(B)) == unit(B)


def test_axioms_pass_for_duplicates():
    for n in range(1, 9):
        report = check_ce_axioms(dup([f"x{i}" for i in range(n)]), 60, random.Random(n))
        assert report.passed, report.format_table()
        assert [r.name for r in report.results] == list(AXIOMS)
        assert all(r.trials == 60 for r in report.results)


def test_axioms_pass_for_identity(abc):
    T = PartitionAverageOperator.identity(abc)
    assert T(SimpleFunction(abc, [7, -1, Fraction(1, 2)])) == SimpleFunction(abc, [7, -1, Fraction(1, 2)])
    assert check_ce_axioms(T, 200, random.Random(1)).passed


def test_axioms_pass_for_partition_operators(rng):
    for _ in range(20):
        B = random_algebra(rng, 2, 8)
        cut = rng.randint(1, len(B) - 1)
        T = PartitionAverageOperator([B.atoms[:cut], B.atoms[cut:]], random_measure(B, rng))
        assert check_ce_axioms(T, 50, rng).passed


def test_non_involution_fails_projection():
    B = make_finite_algebra(["a", "b", "c"])
    T = DuplicateOperator.with_pairing(B, {"a": "b", "b": "c", "c": "a"})
    report = check_ce_axioms(T, 100, random.Random(0))
    assert not report["projection"].passed
    assert report["projection"].counterexample
    assert "FAIL" in report.format_table()


def test_zero_mass_block_fails_some_axiom(abc):
    phi = OrderFunctional(abc, [1, 1, 0])
    with pytest.raises(InvalidPartition):
        PartitionAverageOperator([["a", "b"], ["c"]], phi)
    T = PartitionAverageOperator([["a", "b"], ["c"]], phi, strict=False)
    report = check_ce_axioms(T, 100, random.Random(0))
    assert not report.passed
    assert not report["unit preservation"].passed


def test_report_is_seed_deterministic():
    T = dup(["a", "b", "c"])
    r1 = check_ce_axioms(T, 50, random.Random(5)).format_table()
    r2 = check_ce_axioms(T, 50, random.Random(5)).format_table()
    assert r1 == r2 and r1.count("PASS") == 6


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        check_ce_axioms(dup(["a"]), 0)


def test_range_membership_examples():
    T = dup(["a", "b"])
    assert range_membership(T, SimpleFunction(T.algebra, {"a": 2, "a'": 2, "b": 5, "b'": 5}))
    assert not range_membership(T, SimpleFunction(T.algebra, {"a": 1, "a'": 2, "b": 0, "b'": 0}))


def test_range_membership_exhaustive_grid():
    T = dup(["a", "b"])
    for vals in itertools.product((0, 1, 2), repeat=4):
        g = SimpleFunction(T.algebra, vals)
        symmetric = all(g[x] == g[T.space.twin(x)] for x in T.algebra.atoms)
        assert range_membership(T, g) == (T(g) == g) == symmetric


def test_range_membership_random(rng):
    for _ in range(500):
        T = DuplicateOperator(duplicate_space(random_algebra(rng, 1, 10)))
        g = random_function(T.algebra, rng, -2, 2)
        if rng.random() < 0.5:
            g = T(g)
        assert range_membership(T, g) == (T(g) == g)


def test_range_basis_examples(abc):
    T = dup(["a", "b"])
    basis = range_basis(T)
    assert [set(g.support()) for g in basis] == [{"a", "a'"}, {"b", "b'"}]
    ident = range_basis(PartitionAverageOperator.identity(abc))
    assert ident == [indicator(abc.singleton(a)) for a in abc.atoms]


def test_range_basis_spans_fixed_points(rng):
    for _ in range(100):
        T = DuplicateOperator(duplicate_space(random_algebra(rng)))
        basis = range_basis(T)
        assert len(basis) == len(T.algebra) // 2
        assert all(T(g) == g for g in basis)
        g = T(random_function(T.algebra, rng))
        # g is recovered from its values on the basis supports
        combo = SimpleFunction.zero(T.algebra)
        for b in basis:
            x = next(iter(b.support()))
            combo = combo + b.scale(g[x])
        assert combo == g


def test_monotone(rng):
    for _ in range(300):
        T = DuplicateOperator(duplicate_space(random_algebra(rng)))
        f = random_function(T.algebra, rng)
        g = f + random_function(T.algebra, rng, 0, 5)
        assert T(f) <= T(g)


def test_projection_exhaustive_small_grid():
    T = dup(["a", "b"])
    for vals in itertools.product((-1, 0, Fraction(1, 2), 3), repeat=4):
        f = SimpleFunction(T.algebra, vals)
        assert T(T(f)) == T(f)


def test_averaging_identity(rng):
    for _ in range(500):
        T = DuplicateOperator(duplicate_space(random_algebra(rng)))
        g = T(random_function(T.algebra, rng))
        f = random_function(T.algebra, rng)
        assert T(g * f) == g * T(f)


def test_strictly_positive_operator(rng):
    for _ in range(300):
        T = DuplicateOperator(duplicate_space(random_algebra(rng)))
        f = random_function(T.algebra, rng, 0, 3)
        if not f.is_zero():
            Tf = T(f)
            assert not Tf.is_zero()
            for x in f.support():
                assert Tf[x] > 0 and Tf[T.space.twin(x)] > 0


def test_range_is_riesz_subspace(rng):
    for _ in range(200):
        T = DuplicateOperator(duplicate_space(random_algebra(rng)))
        basis = range_basis(T)
        g = sum((b.scale(rng.randint(-4, 4)) for b in basis), SimpleFunction.zero(T.algebra))
        h = sum((b.scale(Fraction(rng.randint(-4, 4), 3)) for b in basis), SimpleFunction.zero(T.algebra))
        for x in (g + h, g.scale(Fraction(-2, 7)), g.sup(h), g.inf(h), abs(g)):
            assert range_membership(T, x)


def test_invalid_partitions(abc):
    phi = OrderFunctional(abc, [1, 1, 1])
    for blocks in ([["a"], ["b"]], [["a", "b"], ["b", "c"]], [["a", "b", "c"], []], [["a", "a"], ["b", "c"]]):
        with pytest.raises(InvalidPartition):
            PartitionAverageOperator(blocks, phi)


def test_algebra_mismatch(ab):
    T = dup(["a", "b"])
    with pytest.raises(AlgebraMismatch):
        T(unit(ab))
    with pytest.raises(AlgebraMismatch):
        range_membership(T, unit(ab))
