from itertools import combinations, permutations

import numpy as np
import pytest

from weingarten.algebra import rf_eval
from weingarten.brauer import (
    act,
    coset_type,
    dimension_identity_check,
    double_factorial,
    enumerate_pairings,
    format_pairing,
    gram_matrix,
    identity_pairing,
    is_pairing,
    isotypic_projector,
    loops,
    moebius_pairing,
    pairing_distance,
    pairing_sign,
    pairings_compatible,
    parse_pairing,
    type_counts,
    z_eigenvalue,
)
from weingarten.symmetric import hook_dimension, partitions_of


@pytest.mark.parametrize("n", range(1, 6))
def test_pairing_count(n):
    ps = enumerate_pairings(n)
    assert len(ps) == double_factorial(2 * n - 1) == [1, 3, 15, 105, 945][n - 1]
    assert len(set(ps)) == len(ps)
    assert all(is_pairing(p) for p in ps)


def test_rejects_empty():
    with pytest.raises(ValueError):
        enumerate_pairings(0)


def test_parse_and_format():
    p = parse_pairing("(1,2)(3,4)")
    assert p == identity_pairing(2)
    assert format_pairing(parse_pairing("(1,3)(2,4)")) == "(1,3)(2,4)"
    for bad in ("(1,2)(2,3)", "(1,2)(3)", "1,2"):
        with pytest.raises(ValueError):
            parse_pairing(bad)


def test_coset_type_identity_and_counts():
    ident = identity_pairing(3)
    assert coset_type(ident, ident) == (1, 1, 1)
    assert type_counts(2) == {(1, 1): 1, (2,): 2}
    assert type_counts(3) == {(1, 1, 1): 1, (2, 1): 6, (3,): 8}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_loops_cover_points(n):
    for p in enumerate_pairings(n)[:20]:
        for q in enumerate_pairings(n)[:20]:
            ls = loops(p, q)
            assert sorted(x for l in ls for x in l) == list(range(2 * n))
            assert sum(coset_type(p, q)) == n


def test_distance_metric_axioms_on_p6():
    ps = enumerate_pairings(3)
    for a in ps:
        assert pairing_distance(a, a) == 0
        for b in ps:
            dab = pairing_distance(a, b)
            assert dab == pairing_distance(b, a)
            assert (dab == 0) == (a == b)
            for c in ps:
                assert pairing_distance(a, c) <= dab + pairing_distance(b, c)


@pytest.mark.parametrize("n", [2, 3])
def test_action_is_isometric(n):
    ps = enumerate_pairings(n)
    for sigma in list(permutations(range(2 * n)))[::37]:
        for a, b in combinations(ps, 2):
            assert coset_type(act(sigma, a), act(sigma, b)) == coset_type(a, b)


def _pfaffian_sign_oracle(p):
    word = [x for a in range(len(p)) if a < p[a] for x in (a, p[a])]
    inv = sum(1 for x, y in combinations(word, 2) if x > y)
    return -1 if inv % 2 else 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pairing_sign(n):
    for p in enumerate_pairings(n):
        assert pairing_sign(p) == _pfaffian_sign_oracle(p)


def test_moebius_pairing():
    ident = identity_pairing(2)
    other = parse_pairing("(1,3)(2,4)")
    assert moebius_pairing(ident, ident) == 1
    assert moebius_pairing(ident, other) == -1


@pytest.mark.parametrize("n", range(1, 6))
def test_dimension_identity(n):
    assert dimension_identity_check(n)


def test_compatible_pairings():
    ps = pairings_compatible((1, 2, 1, 2))
    assert sorted(ps) == [(2, 3, 0, 1)]
    assert pairings_compatible((1, 1, 1)) == []
    assert len(pairings_compatible((1, 1, 1, 1))) == 3


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", [2, 3, 7])
def test_z_lambda_is_spectrum(n, d):
    g = np.array(gram_matrix(n).evaluate(d), dtype=float)
    numeric = np.sort(np.linalg.eigvalsh(g))
    predicted = []
    for lam in partitions_of(n):
        z = float(rf_eval(z_eigenvalue(lam), d))
        predicted += [z] * hook_dimension(tuple(2 * x for x in lam))
    assert np.allclose(numeric, np.sort(predicted))


def test_z_lambda_closed_forms():
    from weingarten.algebra import D, RationalFunction
    assert z_eigenvalue((2,)) == RationalFunction(D * (D + 2))
    assert z_eigenvalue((1, 1)) == RationalFunction(D * (D - 1))
    assert z_eigenvalue((1,)) == RationalFunction(D)


@pytest.mark.parametrize("n", [2, 3])
def test_projectors_resolve_identity(n):
    projs = {lam: isotypic_projector(lam) for lam in partitions_of(n)}
    ones = (1,) * n
    for mu in type_counts(n):
        total = sum(p[mu] for p in projs.values())
        assert total == (1 if mu == ones else 0)
    # idempotent and orthogonal as matrices
    ps = enumerate_pairings(n)
    mats = {lam: np.array([[p[coset_type(a, b)] for b in ps] for a in ps], dtype=object) for lam, p in projs.items()}
    for lam, m in mats.items():
        assert (m.dot(m) == m).all()
        assert sum(m[k, k] for k in range(len(ps))) == hook_dimension(tuple(2 * x for x in lam))
        for other, m2 in mats.items():
            if other != lam:
                assert not m.dot(m2).any()
