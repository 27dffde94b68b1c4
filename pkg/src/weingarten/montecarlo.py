"""Haar sampling on U(d), O(d), Sp(d) and seeded moment estimation.

Every estimate is driven by a Philox counter-based generator.  A run is
split into fixed-size chunks, each with its own spawned stream, so the
result does not depend on how chunks are scheduled across threads.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .orthogonal import OrthoMomentQuery
from .unitary import UnitaryMomentQuery

__all__ = [
    "GROUPS",
    "SampleEstimate",
    "make_rng",
    "matrix_size",
    "sample_haar",
    "sample_haar_batch",
    "estimate_moment",
    "estimate_moments",
    "estimate_trace_moment",
    "merge_estimates",
]

GROUPS = ("unitary", "orthogonal", "symplectic")
DEFAULT_CHUNK = 50_000


@dataclass(frozen=True)
class SampleEstimate:
    mean: complex
    stderr: float
    samples: int
    m2: float = 0.0  # sum of |x - mean|^2, kept for pooling

    def z_score(self, exact) -> float:
        diff = abs(complex(exact) - self.mean)
        if self.stderr == 0:
            return 0.0 if diff == 0 else float("inf")
        return diff / self.stderr

    @classmethod
    def from_values(cls, x: np.ndarray) -> "SampleEstimate":
        n = x.shape[0]
        mean = complex(x.mean())
        m2 = float(np.sum(np.abs(x - mean) ** 2))
        return cls._build(mean, m2, n)

    @classmethod
    def _build(cls, mean: complex, m2: float, n: int) -> "SampleEstimate":
        if n < 2:
            raise ValueError("need at least two samples")
        var = m2 / (n - 1)
        return cls(mean, float(np.sqrt(var / n)), n, m2)


def merge_estimates(parts: Sequence[SampleEstimate]) -> SampleEstimate:
    """Pooled mean/variance (pairwise update), in the given order."""
    n, mean, m2 = 0, 0j, 0.0
    for p in parts:
        if n == 0:
            n, mean, m2 = p.samples, p.mean, p.m2
            continue
        tot = n + p.samples
        delta = p.mean - mean
        mean = mean + delta * p.samples / tot
        m2 = m2 + p.m2 + abs(delta) ** 2 * n * p.samples / tot
        n = tot
    return SampleEstimate._build(mean, m2, n)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _chunk_rngs(seed: int, chunks: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.Philox(s)) for s in np.random.SeedSequence(seed).spawn(chunks)]


def matrix_size(group: str, d: int) -> int:
    _check_group(group)
    return 2 * d if group == "symplectic" else d


def _check_group(group: str) -> None:
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}; expected one of {', '.join(GROUPS)}")


def _complex_ginibre(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def sample_haar_batch(
    group: str, d: int, count: int, rng: np.random.Generator, phase_correction: bool = True
) -> np.ndarray:
    """``count`` Haar samples stacked on axis 0.

    ``phase_correction=False`` returns the raw QR factor, which is not Haar
    distributed; it exists so the bias can be demonstrated.
    """
    _check_group(group)
    if d < 1:
        raise ValueError("d must be at least 1")
    if group == "symplectic":
        return _symplectic_batch(d, count, rng)
    if group == "unitary":
        z = _complex_ginibre(rng, (count, d, d))
    else:
        z = rng.standard_normal((count, d, d))
    q, r = np.linalg.qr(z)
    if not phase_correction:
        return q
    diag = np.diagonal(r, axis1=1, axis2=2)
    phase = diag / np.abs(diag)
    return q * phase[:, None, :]


def _symplectic_batch(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Quaternionic Gram-Schmidt: columns ``u_k`` and partners ``(-conj(y); conj(x))``."""
    size = 2 * d
    z = _complex_ginibre(rng, (count, size, d))
    out = np.empty((count, size, size), dtype=complex)
    for k in range(d):
        v = z[:, :, k].copy()
        for prev in range(k):
            for col in (prev, prev + d):
                u = out[:, :, col]
                v -= u * np.einsum("bi,bi->b", u.conj(), v)[:, None]
        v /= np.linalg.norm(v, axis=1)[:, None]
        out[:, :, k] = v
        out[:, :, k + d] = np.concatenate([-v[:, d:].conj(), v[:, :d].conj()], axis=1)
    return out


def sample_haar(group: str, d: int, rng: np.random.Generator) -> np.ndarray:
    return sample_haar_batch(group, d, 1, rng)[0]


def _factors(group: str, d: int, query) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    size = matrix_size(group, d)
    if isinstance(query, UnitaryMomentQuery):
        if group != "unitary":
            raise ValueError("conjugate factors are only meaningful for the unitary group")
        plain = list(zip(query.i, query.j))
        conj = list(zip(query.ibar, query.jbar))
    elif isinstance(query, OrthoMomentQuery):
        plain, conj = list(zip(query.i, query.j)), []
    else:
        raise TypeError(f"unsupported query type {type(query).__name__}")
    for a, b in plain + conj:
        if not (1 <= a <= size and 1 <= b <= size):
            raise ValueError(f"index ({a},{b}) out of range for matrix size {size}")
    return plain, conj


def _product(batch: np.ndarray, plain, conj) -> np.ndarray:
    x = np.ones(batch.shape[0], dtype=complex)
    for a, b in plain:
        x = x * batch[:, a - 1, b - 1]
    for a, b in conj:
        x = x * batch[:, a - 1, b - 1].conj()
    return x


def _run_chunks(work, samples: int, seed: int, chunk: int, workers: int):
    sizes = [chunk] * (samples // chunk)
    if samples % chunk:
        sizes.append(samples % chunk)
    rngs = _chunk_rngs(seed, len(sizes))
    jobs = list(zip(sizes, rngs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: work(*job), jobs))
    return [work(*job) for job in jobs]


def estimate_moments(
    group: str,
    d: int,
    queries: Sequence,
    samples: int,
    seed: int,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
    left: np.ndarray | None = None,
) -> list[SampleEstimate]:
    """Estimate several entry-product moments from one shared set of samples.

    ``left``, if given, multiplies every sample from the left.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    factors = [_factors(group, d, q) for q in queries]

    def work(size: int, rng: np.random.Generator):
        batch = sample_haar_batch(group, d, size, rng)
        if left is not None:
            batch = left @ batch
        return [SampleEstimate.from_values(_product(batch, p, c)) for p, c in factors]

    per_chunk = _run_chunks(work, samples, seed, min(chunk, samples), workers)
    return [merge_estimates([c[k] for c in per_chunk]) for k in range(len(queries))]


def estimate_moment(group: str, d: int, query, samples: int, seed: int, **kw) -> SampleEstimate:
    return estimate_moments(group, d, [query], samples, seed, **kw)[0]


def _word_factor(token: str, batch: np.ndarray, constants: Mapping[str, np.ndarray]) -> np.ndarray:
    if token == "U":
        return batch
    if token in ("U*", "Ut", "Ubar"):
        return {"U*": batch.conj().swapaxes(1, 2), "Ut": batch.swapaxes(1, 2), "Ubar": batch.conj()}[token]
    if token in constants:
        return np.asarray(constants[token])
    raise ValueError(f"unknown word token {token!r}")


def estimate_trace_moment(
    group: str,
    d: int,
    word: Sequence[str],
    constants: Mapping[str, np.ndarray],
    samples: int,
    seed: int,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> SampleEstimate:
    """Normalized trace ``E tr(X1 U^s1 X2 U^s2 ...)``; tokens are constant names or ``U``, ``U*``, ``Ut``, ``Ubar``."""
    size = matrix_size(group, d)
    for name in word:
        if name in constants and np.shape(constants[name]) != (size, size):
            raise ValueError(f"constant {name!r} has shape {np.shape(constants[name])}, expected {(size, size)}")

    def work(count: int, rng: np.random.Generator):
        batch = sample_haar_batch(group, d, count, rng)
        acc = np.broadcast_to(np.eye(size, dtype=complex), (count, size, size))
        for token in word:
            acc = acc @ _word_factor(token, batch, constants)
        return SampleEstimate.from_values(np.trace(acc, axis1=1, axis2=2) / size)

    return merge_estimates(_run_chunks(work, samples, seed, min(chunk, samples), workers))
