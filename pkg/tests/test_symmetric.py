from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from weingarten.algebra import rf_eval
from weingarten.symmetric import (
    catalan,
    centralizer_size,
    character,
    class_size,
    compose,
    cycle_type,
    format_partition,
    hook_dimension,
    inverse,
    moebius_partition,
    parse_partition,
    partitions_of,
    permutation_with_cycle_type,
    schur_dim,
    transposition_length,
)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22]


@pytest.mark.parametrize("n", range(1, 9))
def test_partition_counts_and_order(n):
    parts = partitions_of(n)
    assert len(parts) == PARTITION_COUNTS[n]
    assert parts[0] == (n,) and parts[-1] == (1,) * n
    assert sum(class_size(mu) for mu in parts) == factorial(n)


def test_parse_partition():
    assert parse_partition("1,2") == (2, 1)
    assert parse_partition("3", 3) == (3,)
    assert format_partition((2, 1, 1)) == "2,1,1"
    for bad in ("bogus", "", "2,0", "2,-1"):
        with pytest.raises(ValueError):
            parse_partition(bad)
    with pytest.raises(ValueError):
        parse_partition("2,1", 4)


@pytest.mark.parametrize("n", range(1, 8))
def test_character_orthogonality(n):
    parts = partitions_of(n)
    for a in parts:
        for b in parts:
            s = sum(class_size(mu) * character(a, mu) * character(b, mu) for mu in parts)
            assert s == (factorial(n) if a == b else 0)


def test_character_small_values():
    # S_3 table
    assert [character((2, 1), mu) for mu in [(3,), (2, 1), (1, 1, 1)]] == [-1, 0, 2]
    assert [character((1, 1, 1), mu) for mu in [(3,), (2, 1), (1, 1, 1)]] == [1, -1, 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_hook_dimension_is_trivial_class_character(n):
    for lam in partitions_of(n):
        assert hook_dimension(lam) == character(lam, (1,) * n)
    assert sum(hook_dimension(l) ** 2 for l in partitions_of(n)) == factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_schur_dim_counts_semistandard_tableaux(n):
    # s_lam(1^d) via the power-sum expansion
    for lam in partitions_of(n):
        f = schur_dim(lam)
        for d in range(1, 5):
            want = sum(Fraction(character(lam, mu) * d ** len(mu), centralizer_size(mu)) for mu in partitions_of(n))
            assert rf_eval(f, d) == want


def test_catalan_and_moebius():
    assert [catalan(k) for k in range(6)] == [1, 1, 2, 5, 14, 42]
    assert moebius_partition((1, 1)) == 1
    assert moebius_partition((2,)) == -1
    assert moebius_partition((3, 2)) == 2 * -1


@given(st.permutations(range(6)), st.permutations(range(6)))
def test_permutation_group_laws(a, b):
    a, b = tuple(a), tuple(b)
    ab = compose(a, b)
    assert ab == tuple(a[b[k]] for k in range(6))
    assert compose(ab, inverse(ab)) == tuple(range(6))
    assert cycle_type(ab) == cycle_type(compose(b, a))
    assert transposition_length(a) == 6 - len(cycle_type(a))


@pytest.mark.parametrize("mu", [(3,), (2, 2, 1), (4, 1), (1,)])
def test_permutation_with_cycle_type(mu):
    assert cycle_type(permutation_with_cycle_type(mu)) == mu


def test_class_sizes_by_enumeration():
    counts = {}
    for p in permutations(range(5)):
        counts[cycle_type(p)] = counts.get(cycle_type(p), 0) + 1
    assert counts == {mu: class_size(mu) for mu in partitions_of(5)}


def test_moebius_perm_and_empty_partition():
    from weingarten.symmetric import moebius_perm
    assert moebius_perm((1, 2, 0)) == 2
    assert moebius_perm((1, 0, 3, 2)) == 1
    assert moebius_perm((0, 1)) == 1
    assert partitions_of(0) == [()]
