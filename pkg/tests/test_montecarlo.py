from fractions import Fraction

import numpy as np
import pytest

from weingarten.algebra import rf_eval
from weingarten.montecarlo import (
    SampleEstimate,
    estimate_moment,
    estimate_moments,
    estimate_trace_moment,
    make_rng,
    merge_estimates,
    sample_haar_batch,
)
from weingarten.orthogonal import OrthoMomentQuery, evaluate_moment_orthogonal, moment_symplectic, symplectic_form
from weingarten.traces import trace_moment_exact
from weingarten.unitary import UnitaryMomentQuery, moment_unitary


@pytest.mark.parametrize("group", ["unitary", "orthogonal"])
@pytest.mark.parametrize("d", range(1, 7))
def test_residuals_unitary_orthogonal(group, d):
    b = sample_haar_batch(group, d, 500, make_rng(d))
    gram = b.conj().swapaxes(1, 2) @ b
    assert np.abs(gram - np.eye(d)).max() < 1e-12
    if group == "orthogonal":
        assert not np.iscomplexobj(b)


@pytest.mark.parametrize("d", range(1, 5))
def test_residuals_symplectic(d):
    b = sample_haar_batch("symplectic", d, 500, make_rng(d))
    J = symplectic_form(d)
    assert np.abs(b.conj().swapaxes(1, 2) @ b - np.eye(2 * d)).max() < 1e-12
    assert np.abs(b.swapaxes(1, 2) @ J @ b - J).max() < 1e-10


def test_reproducible_and_schedule_free():
    q = [UnitaryMomentQuery((1,), (1,), (1,), (1,)), UnitaryMomentQuery((1, 2), (2, 1), (1, 2), (2, 1))]
    a = estimate_moments("unitary", 3, q, 30_000, seed=9, chunk=7_000)
    b = estimate_moments("unitary", 3, q, 30_000, seed=9, chunk=7_000, workers=4)
    assert a == b
    c = estimate_moments("unitary", 3, q, 30_000, seed=10, chunk=7_000)
    assert a != c


def test_uncorrected_qr_is_biased():
    rng = make_rng(2024)
    raw = SampleEstimate.from_values(sample_haar_batch("unitary", 2, 100_000, rng, phase_correction=False)[:, 0, 0])
    fixed = SampleEstimate.from_values(sample_haar_batch("unitary", 2, 100_000, rng)[:, 0, 0])
    assert raw.z_score(0) > 20
    assert fixed.z_score(0) < 5


def test_merge_order():
    rng = make_rng(3)
    parts = [SampleEstimate.from_values(rng.standard_normal(n) + 1j * rng.standard_normal(n)) for n in (10, 300, 47, 1000, 2)]
    fwd = merge_estimates(parts)
    rev = merge_estimates(parts[::-1])
    assert abs(fwd.mean - rev.mean) < 1e-12
    assert abs(fwd.stderr - rev.stderr) < 1e-12
    assert fwd.samples == 1359


def test_merge_matches_single_pass():
    x = make_rng(4).standard_normal(1000)
    whole = SampleEstimate.from_values(x)
    pooled = merge_estimates([SampleEstimate.from_values(x[:400]), SampleEstimate.from_values(x[400:])])
    assert abs(whole.mean - pooled.mean) < 1e-12 and abs(whole.stderr - pooled.stderr) < 1e-12


def test_left_invariance():
    rng = make_rng(77)
    m = sample_haar_batch("unitary", 3, 1, rng)[0]
    q = UnitaryMomentQuery((1, 2), (1, 1), (1, 2), (1, 1))
    exact = rf_eval(moment_unitary(q), 3)
    est = estimate_moment("unitary", 3, q, 200_000, seed=1, left=m)
    assert est.z_score(exact) < 5


def test_o2_angle():
    q = OrthoMomentQuery((1,) * 4, (1,) * 4)
    assert evaluate_moment_orthogonal(q, 2) == Fraction(3, 8)
    est = estimate_moment("orthogonal", 2, q, 200_000, seed=3)
    assert est.z_score(Fraction(3, 8)) < 5


@pytest.mark.parametrize("group,d", [("unitary", 2), ("orthogonal", 3), ("symplectic", 1)])
def test_trace_moment(group, d):
    size = 2 * d if group == "symplectic" else d
    rng = make_rng(5)
    A = rng.integers(-3, 4, (size, size))
    B = rng.integers(-3, 4, (size, size))
    word = ["A", "U", "B", "U*" if group == "unitary" else "Ut"]
    consts = {"A": A.tolist(), "B": B.tolist()}
    exact = trace_moment_exact(group, d, word, consts)
    if group != "symplectic":
        assert exact == Fraction(int(np.trace(A) * np.trace(B)), size * size)
    est = estimate_trace_moment(group, d, word, {"A": A, "B": B}, 200_000, seed=8)
    assert est.z_score(exact) < 5


def test_symplectic_conjugate_unsupported():
    with pytest.raises(ValueError):
        trace_moment_exact("symplectic", 1, ["U", "U*"], {})


def test_sp_monte_carlo_small():
    qs = [OrthoMomentQuery((1, 2), (1, 2)), OrthoMomentQuery((1, 2), (2, 1)), OrthoMomentQuery((1, 1), (1, 1))]
    est = estimate_moments("symplectic", 1, qs, 200_000, seed=6)
    for q, e in zip(qs, est):
        assert e.z_score(moment_symplectic(q, 1)) < 5


def test_bad_inputs():
    with pytest.raises(ValueError):
        sample_haar_batch("spin", 2, 1, make_rng(0))
    with pytest.raises(ValueError):
        estimate_moment("orthogonal", 2, UnitaryMomentQuery((1,), (1,), (1,), (1,)), 100, seed=0)
    with pytest.raises(ValueError):
        estimate_moment("orthogonal", 2, OrthoMomentQuery((3, 1), (1, 1)), 100, seed=0)
