from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weingarten.algebra import D, PoleError, RationalFunction, rf_eval
from weingarten.brauer import enumerate_pairings, type_counts
from weingarten.errors import CapExceededError
from weingarten.golden import ORTHOGONAL_TABLE, golden_orthogonal
from weingarten.montecarlo import estimate_moments
from weingarten.orthogonal import (
    OrthoMomentQuery,
    evaluate_moment_orthogonal,
    gram_times_wg_is_identity,
    moment_orthogonal,
    moment_symplectic,
    orthogonal_subleading_order,
    symplectic_form,
    wg_orthogonal,
    wg_orthogonal_character_form,
    wg_orthogonal_full_inverse,
    wg_orthogonal_leading,
    wg_orthogonal_regularized,
    wg_symplectic,
)
from weingarten.symmetric import moebius_partition, partitions_of


def test_golden_table():
    assert len(ORTHOGONAL_TABLE) == 11
    for mu in ORTHOGONAL_TABLE:
        assert wg_orthogonal(sum(mu))[mu] == golden_orthogonal(mu)


def test_n2_entries():
    t = wg_orthogonal(2)
    assert t[(1, 1)] == RationalFunction(D + 1, D * (D - 1) * (D + 2))
    assert t[(2,)] == RationalFunction(-1, D * (D - 1) * (D + 2))
    assert str(t[(2,)]) == "-1/(d(d-1)(d+2))"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_full_inverse_and_character_form(n):
    table = wg_orthogonal(n)
    full = wg_orthogonal_full_inverse(n)
    ps = enumerate_pairings(n)
    for a, p in enumerate(ps):
        for b, q in enumerate(ps):
            assert full[a][b] == table.entry(p, q)
            if a == 0:
                assert wg_orthogonal_character_form(n, p, q) == full[a][b]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gram_times_wg(n):
    assert gram_times_wg_is_identity(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_leading_order(n):
    for mu in partitions_of(n):
        exp, coeff = wg_orthogonal_leading(n, mu)
        assert exp == n + sum(k - 1 for k in mu) and coeff == moebius_partition(mu)
        sub = orthogonal_subleading_order(n, mu)
        assert sub is None or sub <= -1


def test_cap_respects_env(monkeypatch):
    monkeypatch.setenv("WEINGARTEN_ORTHOGONAL_MAX_N", "2")
    with pytest.raises(CapExceededError):
        wg_orthogonal(3)


# -- moments -------------------------------------------------------------------

def test_odd_moments_vanish_without_enumeration(monkeypatch):
    import weingarten.orthogonal as mod

    def boom(*a, **k):
        raise AssertionError("enumerated pairings for an odd moment")

    monkeypatch.setattr(mod, "pairings_compatible", boom)
    assert moment_orthogonal(OrthoMomentQuery((1, 1, 2), (1, 2, 2))).is_zero()


def test_small_moments():
    assert moment_orthogonal(OrthoMomentQuery((1, 1), (1, 1))) == RationalFunction(1, D)
    assert moment_orthogonal(OrthoMomentQuery((1,) * 4, (1,) * 4)) == RationalFunction(3, D * (D + 2))
    assert moment_orthogonal(OrthoMomentQuery((1, 1, 2, 2), (1, 1, 2, 2))) == RationalFunction(D + 1, D * (D - 1) * (D + 2))
    assert moment_orthogonal(OrthoMomentQuery((1,) * 6, (1,) * 6)) == RationalFunction(15, D * (D + 2) * (D + 4))


def _moment_oracle_numeric(i, j, d, form):
    """Projection onto invariant vectors: ``sum v_p(i) G^+ v_q(j)``, all in floating point."""
    n = len(i) // 2
    ps = enumerate_pairings(n)
    size = form.shape[0]

    def vec(p, labels):
        val = 1.0
        for a in range(len(p)):
            if a < p[a]:
                val *= form[labels[a] - 1, labels[p[a]] - 1]
        return val

    tuples = list(product(range(1, size + 1), repeat=2 * n))
    V = np.array([[vec(p, t) for t in tuples] for p in ps])
    G = V @ V.T
    W = np.linalg.pinv(G)
    vi = np.array([vec(p, i) for p in ps])
    vj = np.array([vec(p, j) for p in ps])
    return float(vi @ W @ vj)


@st.composite
def ortho_queries(draw, d, n_max=3):
    n = draw(st.integers(1, n_max))
    tup = st.tuples(*[st.integers(1, d)] * (2 * n))
    return OrthoMomentQuery(draw(tup), draw(tup))


@pytest.mark.parametrize("d", [1, 2, 3])
@given(data=st.data())
def test_orthogonal_against_invariant_projection(d, data):
    q = data.draw(ortho_queries(d, n_max=3 if d < 3 else 2))
    exact = evaluate_moment_orthogonal(q, d)
    assert abs(float(exact) - _moment_oracle_numeric(q.i, q.j, d, np.eye(d))) < 1e-9


@pytest.mark.parametrize("half", [1, 2])
@given(data=st.data())
def test_symplectic_against_invariant_projection(half, data):
    q = data.draw(ortho_queries(2 * half, n_max=3 if half == 1 else 2))
    exact = moment_symplectic(q, half)
    assert abs(float(exact) - _moment_oracle_numeric(q.i, q.j, half, symplectic_form(half).astype(float))) < 1e-9


def test_symplectic_sp1_values():
    assert moment_symplectic(OrthoMomentQuery((1, 2), (1, 2)), 1) == Fraction(1, 2)
    assert moment_symplectic(OrthoMomentQuery((1, 1), (1, 1)), 1) == 0
    assert moment_symplectic(OrthoMomentQuery((1, 2), (2, 1)), 1) == Fraction(-1, 2)
    assert moment_symplectic(OrthoMomentQuery((1, 2, 1), (1, 2, 2)), 1) == 0


def test_symplectic_table_is_reflection():
    for n in (1, 2, 3):
        for mu, f in wg_orthogonal(n).by_coset_type.items():
            assert wg_symplectic(n)[mu] == f.reflect()
    assert wg_symplectic(2)[(2,)] == RationalFunction(1, D * (D - 2) * (D + 1))
    assert wg_symplectic(1)[(1,)] == RationalFunction(-1, D)


def test_index_range():
    with pytest.raises(ValueError):
        evaluate_moment_orthogonal(OrthoMomentQuery((3, 1), (1, 1)), 2)
    with pytest.raises(ValueError):
        moment_symplectic(OrthoMomentQuery((5, 1), (1, 1)), 2)


# -- regularization ------------------------------------------------------------

def test_regularized_regular_case():
    reg = wg_orthogonal_regularized(2, 5)
    for mu, f in wg_orthogonal(2).by_coset_type.items():
        assert reg.by_coset_type[mu] == rf_eval(f, 5)
    assert reg.kept == tuple(partitions_of(2))


@pytest.mark.parametrize("n", [2, 3])
def test_o1_all_ones(n):
    with pytest.raises(PoleError):
        rf_eval(wg_orthogonal(n)[(1,) * n], 1)
    reg = wg_orthogonal_regularized(n, 1)
    ones = (1,) * (2 * n)
    total = sum(reg.by_coset_type[mu] * c for mu, c in type_counts(n).items()) * len(enumerate_pairings(n))
    assert total == 1
    assert evaluate_moment_orthogonal(OrthoMomentQuery(ones, ones), 1) == 1


@pytest.mark.parametrize("n,d0", [(2, 1), (3, 1), (3, 2)])
def test_regularized_is_pseudo_inverse(n, d0):
    from weingarten.brauer import gram_matrix
    g = np.array(gram_matrix(n).evaluate(d0), dtype=float)
    reg = np.array(wg_orthogonal_regularized(n, d0).matrix(), dtype=float)
    assert np.allclose(reg, np.linalg.pinv(g))


def test_o2_degree6_monte_carlo():
    qs = [OrthoMomentQuery((1,) * 6, (1,) * 6), OrthoMomentQuery((1, 1, 1, 1, 2, 2), (1, 1, 2, 2, 2, 2)),
          OrthoMomentQuery((1, 2, 1, 2, 1, 2), (1, 1, 1, 1, 2, 2))]
    est = estimate_moments("orthogonal", 2, qs, 1_000_000, seed=5)
    for q, e in zip(qs, est):
        assert e.z_score(evaluate_moment_orthogonal(q, 2)) < 5
    # O(2) angle average: E cos^6 over the circle
    assert evaluate_moment_orthogonal(qs[0], 2) == Fraction(5, 16)
