import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condexp import (
    AlgebraMismatch,
    DepthZero,
    DuplicateAtom,
    EmptyAtomList,
    UnknownAtom,
    is_connected,
    make_dyadic_algebra,
    make_finite_algebra,
    separation_witness,
)

from conftest import small_algebras


def test_two_atoms_have_four_clopens(ab):
    assert len(ab) == 2
    assert ab.count_clopens() == 4
    assert len(list(ab.clopens())) == 4


def test_one_point_space():
    B = make_finite_algebra(["a"])
    assert [set(c) for c in B.clopens()] == [set(), {"a"}]


def test_duplicate_atom_rejected():
    with pytest.raises(DuplicateAtom):
        make_finite_algebra(["a", "a"])


def test_empty_atom_list_rejected():
    with pytest.raises(EmptyAtomList):
        make_finite_algebra([])


def test_meet_and_complement(abc, ab):
    assert set(abc.clopen("ab") & abc.clopen("bc")) == {"b"}
    assert set(~ab.clopen(["a"])) == {"b"}
    assert set(abc.clopen("ab") - abc.clopen("bc")) == {"a"}
    assert set(abc.clopen("a") | abc.clopen("c")) == {"a", "c"}


def test_join_with_complement_is_top(rng):
    for _ in range(200):
        n = rng.randint(1, 8)
        names = [f"p{i}" for i in range(n)]
        B = make_finite_algebra(names)
        chosen = {a for a in names if rng.random() < 0.5}
        A = B.clopen(chosen)
        # oracle: plain set arithmetic on names
        assert set(A | ~A) == set(names)
        assert set(~A) == set(names) - chosen


def test_algebra_mismatch(ab, abc):
    with pytest.raises(AlgebraMismatch):
        ab.clopen("a") & abc.clopen("a")


def test_unknown_atom(ab):
    with pytest.raises(UnknownAtom):
        ab.clopen(["z"])
    with pytest.raises(UnknownAtom):
        is_connected(["z"], ab)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))))
def test_lattice_ops_match_set_operations(data):
    n, m1, m2 = data
    B = make_finite_algebra([f"x{i}" for i in range(n)])
    A, C = B.from_mask(m1), B.from_mask(m2)
    sa, sc, top = set(A), set(C), set(B.atoms)
    assert set(A & C) == sa & sc
    assert set(A | C) == sa | sc
    assert set(A - C) == sa - sc
    assert set(~A) == top - sa
    assert (A <= C) == (sa <= sc)


def test_lattice_laws_exhaustive():
    for B in small_algebras(4):
        C = list(B.clopens())
        for a, b, c in itertools.product(C, repeat=3):
            assert a & b == b & a and a | b == b | a
            assert (a & b) & c == a & (b & c) and (a | b) | c == a | (b | c)
            assert a & (a | b) == a and a | (a & b) == a
            assert a & (b | c) == (a & b) | (a & c)
            assert a | (b & c) == (a | b) & (a | c)
            assert ~(a & b) == ~a | ~b and ~(a | b) == ~a & ~b


def test_separation_witness_examples(ab):
    assert set(separation_witness(["a", "b"], ab)) == {"a"}
    assert separation_witness(["a"], ab) is None
    assert separation_witness([], ab) is None


def _separates(A, C):
    return bool(A & C) and not A <= C


def test_separation_witness_exhaustive():
    for B in small_algebras(5):
        for A in B.clopens():
            C = separation_witness(A)
            any_separator = any(_separates(A, D) for D in B.clopens())
            if len(A) >= 2:
                assert _separates(A, C)
                assert set(C) == {next(iter(A))}
            else:
                assert C is None
            assert any_separator == (len(A) >= 2)


def test_is_connected_examples(abc):
    assert is_connected(["a"], abc)
    assert is_connected([], abc)
    assert not is_connected(["a", "b", "c"], abc)


def test_is_connected_matches_definition():
    # connected iff no clopen set splits it
    for B in small_algebras(4):
        for A in B.clopens():
            assert is_connected(A) == (not any(_separates(A, D) for D in B.clopens()))


def test_dyadic_algebras():
    for d in range(4):
        B = make_dyadic_algebra(d)
        assert len(B) == 2**d
        assert sum(1 for _ in B.clopens()) == 2 ** (2**d)
        assert sorted(B.atoms) == list(B.atoms)
        assert all(len(a) == d and set(a) <= {"0", "1"} for a in B.atoms)
    assert make_dyadic_algebra(3).atoms[2] == "010"


def test_dyadic_depth_validation():
    with pytest.raises(DepthZero):
        make_dyadic_algebra(-1)
    assert make_dyadic_algebra(2) == make_dyadic_algebra(2)
    assert make_dyadic_algebra(1) != make_finite_algebra(["0", "1"])
