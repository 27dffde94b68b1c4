"""Orthogonal and symplectic Weingarten functions and Haar moments.

Wg is the inverse of the Brauer Gram matrix.  It is equivariant under
``S_2n``, so the inverse is obtained from a small system indexed by coset
types rather than from the full ``(2n-1)!!``-square matrix.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .algebra import PoleError, Poly, RationalFunction, poly_gcd, rf_eval, rf_sum
from .brauer import (
    Pairing,
    coset_type,
    enumerate_pairings,
    gram_matrix,
    identity_pairing,
    isotypic_projector,
    loops,
    pairing_sign,
    pairings_compatible,
    type_counts,
    z_eigenvalue,
)
from .errors import check_cap
from .linalg import bareiss_inverse, bareiss_solve
from .symmetric import Partition, moebius_partition, partitions_of, validate_partition

__all__ = [
    "OrthoWgTable",
    "OrthoMomentQuery",
    "wg_orthogonal",
    "wg_orthogonal_full_inverse",
    "wg_orthogonal_character_form",
    "wg_orthogonal_regularized",
    "RegularizedTable",
    "moment_orthogonal",
    "evaluate_moment_orthogonal",
    "wg_symplectic",
    "symplectic_form",
    "symplectic_contraction",
    "moment_symplectic",
    "wg_orthogonal_leading",
    "gram_times_wg_is_identity",
]

DEFAULT_MAX_N = 5
DEFAULT_CHARACTER_FORM_MAX_N = 3


@dataclass(frozen=True)
class OrthoWgTable:
    """Weingarten values keyed by the coset type of ``(p1, p2)``."""

    n: int
    by_coset_type: Mapping[Partition, RationalFunction]

    def __getitem__(self, mu: Sequence[int]) -> RationalFunction:
        return self.by_coset_type[tuple(mu)]

    def entry(self, p1: Pairing, p2: Pairing) -> RationalFunction:
        return self.by_coset_type[coset_type(p1, p2)]

    def matrix(self) -> list[list[RationalFunction]]:
        order = enumerate_pairings(self.n)
        return [[self.entry(p, q) for q in order] for p in order]

    def reflect(self) -> "OrthoWgTable":
        return OrthoWgTable(self.n, {mu: f.reflect() for mu, f in self.by_coset_type.items()})


@dataclass(frozen=True)
class OrthoMomentQuery:
    """Integral of ``O[i1,j1] ... O[im,jm]`` (1-based indices)."""

    i: tuple[int, ...]
    j: tuple[int, ...]

    def __post_init__(self):
        i = tuple(int(v) for v in self.i)
        j = tuple(int(v) for v in self.j)
        if len(i) != len(j):
            raise ValueError("i and j must have equal lengths")
        if any(v < 1 for v in i + j):
            raise ValueError("indices are 1-based positive integers")
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)

    @property
    def odd(self) -> bool:
        return len(self.i) % 2 == 1

    @property
    def max_index(self) -> int:
        return max(self.i + self.j, default=0)


def _collapsed_system(n: int) -> tuple[list[Partition], list[list[Poly]]]:
    """Rows: representatives ``p`` of each coset type against ``Id``; columns: unknown ``Wg(mu')``.

    Row ``p`` reads ``sum_q d^(n - l(p, q)) Wg(type(q, Id)) = [p == Id]``.
    """
    ident = identity_pairing(n)
    order = enumerate_pairings(n)
    types = [coset_type(q, ident) for q in order]
    keys = partitions_of(n)
    col = {mu: k for k, mu in enumerate(keys)}
    reps: dict[Partition, Pairing] = {}
    for q, mu in zip(order, types):
        reps.setdefault(mu, q)
    matrix = []
    for mu in keys:
        p = reps[mu]
        acc: list[dict[int, int]] = [Counter() for _ in keys]
        for q, nu in zip(order, types):
            acc[col[nu]][len(loops(p, q))] += 1
        matrix.append([Poly(_dense(c)) for c in acc])
    return keys, matrix


def _dense(exp_counts: Mapping[int, int]) -> list[int]:
    if not exp_counts:
        return []
    out = [0] * (max(exp_counts) + 1)
    for e, c in exp_counts.items():
        out[e] = c
    return out


def wg_orthogonal(n: int) -> OrthoWgTable:
    """Exact inverse of the Gram matrix, collapsed to coset types."""
    if n < 1:
        raise ValueError("n must be positive")
    check_cap(n, "orthogonal_max_n", DEFAULT_MAX_N, "orthogonal Weingarten table")
    return _wg_orthogonal(n)


@lru_cache(maxsize=None)
def _wg_orthogonal(n: int) -> OrthoWgTable:
    keys, matrix = _collapsed_system(n)
    one = (1,) * n
    rhs = [[Poly.constant(1 if mu == one else 0)] for mu in keys]
    sol = bareiss_solve(matrix, rhs)
    return OrthoWgTable(n, {mu: sol[k][0] for k, mu in enumerate(keys)})


def wg_orthogonal_full_inverse(n: int) -> list[list[RationalFunction]]:
    """Bareiss inverse of the whole Gram matrix (small ``n`` only)."""
    check_cap(n, "full_inverse_max_n", 3, "full Gram inversion")
    return bareiss_inverse(gram_matrix(n).polys())


@lru_cache(maxsize=None)
def _character_form_table(n: int) -> dict[Partition, RationalFunction]:
    out: dict[Partition, list[RationalFunction]] = {}
    for lam in partitions_of(n):
        inv_z = z_eigenvalue(lam).inverse()
        for mu, val in isotypic_projector(lam).items():
            if val:
                out.setdefault(mu, []).append(inv_z * RationalFunction(val))
    return {mu: rf_sum(terms) for mu, terms in out.items()}


def wg_orthogonal_character_form(n: int, p1: Pairing, p2: Pairing) -> RationalFunction:
    """``sum_lam <p1, P_lam p2> / z_lam`` with projectors from ``S_2n`` characters."""
    check_cap(n, "character_form_max_n", DEFAULT_CHARACTER_FORM_MAX_N, "character-form Weingarten")
    if len(p1) != 2 * n or len(p2) != 2 * n:
        raise ValueError(f"pairings must act on {2 * n} points")
    return _character_form_table(n)[coset_type(p1, p2)]


@dataclass(frozen=True)
class RegularizedTable:
    """Pseudo-inverse of the numeric Gram matrix at ``d0``, keyed by coset type."""

    n: int
    d0: int
    by_coset_type: Mapping[Partition, Fraction]
    kept: tuple[Partition, ...]

    def entry(self, p1: Pairing, p2: Pairing) -> Fraction:
        return self.by_coset_type[coset_type(p1, p2)]

    def matrix(self) -> list[list[Fraction]]:
        order = enumerate_pairings(self.n)
        return [[self.entry(p, q) for q in order] for p in order]


@lru_cache(maxsize=None)
def wg_orthogonal_regularized(n: int, d0: int) -> RegularizedTable:
    """``sum 1/z_lam(d0) P_lam`` over the blocks with ``z_lam(d0) != 0``.

    Any integer ``d0`` is accepted; negative values serve the symplectic case.
    """
    acc: dict[Partition, Fraction] = {mu: Fraction(0) for mu in type_counts(n)}
    kept = []
    for lam in partitions_of(n):
        z = rf_eval(z_eigenvalue(lam), d0)
        if z == 0:
            continue
        kept.append(lam)
        for mu, val in isotypic_projector(lam).items():
            acc[mu] += val / z
    return RegularizedTable(n, d0, acc, tuple(kept))


def _type_weights(left: Sequence[tuple[Pairing, int]], right: Sequence[tuple[Pairing, int]]) -> Counter:
    counts: Counter = Counter()
    for p1, c1 in left:
        for p2, c2 in right:
            counts[coset_type(p1, p2)] += c1 * c2
    return counts


def moment_orthogonal(q: OrthoMomentQuery) -> RationalFunction:
    """``sum_{p1, p2} delta^p1_i delta^p2_j Wg(p1, p2)`` as a reduced rational function."""
    if q.odd:
        return RationalFunction()
    n = len(q.i) // 2
    if n == 0:
        return RationalFunction(1)
    left = pairings_compatible(q.i)
    right = pairings_compatible(q.j)
    if not left or not right:
        return RationalFunction()
    check_cap(n, "orthogonal_max_n", DEFAULT_MAX_N, "orthogonal moment")
    table = wg_orthogonal(n)
    counts = _type_weights([(p, 1) for p in left], [(p, 1) for p in right])
    return rf_sum([table[mu] * RationalFunction(c) for mu, c in sorted(counts.items())])


def evaluate_moment_orthogonal(q: OrthoMomentQuery, d0: int) -> Fraction:
    """Exact moment over ``O(d0)``; falls back to the regularized table at a surviving pole."""
    if q.max_index > d0:
        raise ValueError(f"index {q.max_index} out of range for O({d0})")
    try:
        return rf_eval(moment_orthogonal(q), d0)
    except PoleError:
        n = len(q.i) // 2
        reg = wg_orthogonal_regularized(n, d0)
        left, right = pairings_compatible(q.i), pairings_compatible(q.j)
        counts = _type_weights([(p, 1) for p in left], [(p, 1) for p in right])
        return sum((reg.by_coset_type[mu] * c for mu, c in counts.items()), Fraction(0))


# -- symplectic -------------------------------------------------------------

@lru_cache(maxsize=None)
def wg_symplectic(n: int) -> OrthoWgTable:
    """The orthogonal table with ``d -> -d``; here ``d`` is the matrix size ``2 * half_dim``."""
    return wg_orthogonal(n).reflect()


def symplectic_form(half_dim: int) -> np.ndarray:
    """``J`` with ``<e_i, f_i> = 1``; basis order ``e_1..e_d, f_1..f_d``."""
    m = half_dim
    J = np.zeros((2 * m, 2 * m), dtype=int)
    J[:m, m:] = np.eye(m, dtype=int)
    J[m:, :m] = -np.eye(m, dtype=int)
    return J


def symplectic_contraction(p: Pairing, labels: Sequence[int], half_dim: int) -> int:
    """``sgn(p) * prod_{a<b paired} J[i_a, i_b]`` (1-based ``labels``); orientation-free."""
    m = half_dim
    val = pairing_sign(p)
    for a in range(len(p)):
        b = p[a]
        if a < b:
            x, y = labels[a] - 1, labels[b] - 1
            if x < m and y == x + m:
                continue
            if y < m and x == y + m:
                val = -val
                continue
            return 0
    return val


def _signed_pairings(labels: Sequence[int], half_dim: int) -> list[tuple[Pairing, int]]:
    m = half_dim
    # only e_k -- f_k pairs contract; grouping by k prunes the enumeration
    groups = [((v - 1) % m) for v in labels]
    out = []
    for p in pairings_compatible(groups):
        c = symplectic_contraction(p, labels, m)
        if c:
            out.append((p, c))
    return out


def moment_symplectic(q: OrthoMomentQuery, half_dim: int) -> Fraction:
    """Exact moment over ``Sp(half_dim)`` inside ``M_(2 half_dim)``.

    ``(-1)^n sum sgn-contractions(i) sgn-contractions(j) Wg_O(p1, p2)`` with
    ``Wg_O`` taken at dimension ``-2 * half_dim``.
    """
    size = 2 * half_dim
    if q.max_index > size:
        raise ValueError(f"index {q.max_index} out of range for Sp({half_dim}) (matrix size {size})")
    if q.odd:
        return Fraction(0)
    n = len(q.i) // 2
    if n == 0:
        return Fraction(1)
    left = _signed_pairings(q.i, half_dim)
    right = _signed_pairings(q.j, half_dim)
    if not left or not right:
        return Fraction(0)
    check_cap(n, "orthogonal_max_n", DEFAULT_MAX_N, "symplectic moment")
    counts = _type_weights(left, right)
    sign = -1 if n % 2 else 1
    table = wg_symplectic(n)
    symbolic = rf_sum([table[mu] * RationalFunction(c) for mu, c in sorted(counts.items()) if c])
    try:
        return sign * rf_eval(symbolic, size)
    except PoleError:
        reg = wg_orthogonal_regularized(n, -size)
        return sign * sum((reg.by_coset_type[mu] * c for mu, c in counts.items()), Fraction(0))


# -- asymptotics and checks ---------------------------------------------------

def wg_orthogonal_leading(n: int, mu: Sequence[int]) -> tuple[int, int]:
    """``(n + l, Moeb)`` for coset type ``mu``, checked against the exact entry."""
    mu = validate_partition(mu, n)
    ell = sum(k - 1 for k in mu)
    exponent = n + ell
    coeff = moebius_partition(mu)
    wg = wg_orthogonal(n)[mu]
    if wg.order_at_infinity() != -exponent or wg.leading_coefficient() != coeff:
        raise ArithmeticError(
            f"leading term of Wg{list(mu)} is {wg.leading_coefficient()} d^{wg.order_at_infinity()}, "
            f"expected {coeff} d^{-exponent}"
        )
    return exponent, coeff


def orthogonal_subleading_order(n: int, mu: Sequence[int]) -> int | None:
    mu = validate_partition(mu, n)
    exponent = n + sum(k - 1 for k in mu)
    rest = wg_orthogonal(n)[mu] * RationalFunction(Poly.monomial(exponent)) - RationalFunction(moebius_partition(mu))
    return None if rest.is_zero() else rest.order_at_infinity()


def _integer_coefficients(p: Poly, length: int) -> list[int]:
    out = [0] * length
    for k, c in enumerate(p.coeffs):
        if c.denominator != 1:
            raise ArithmeticError("expected integer coefficients")
        out[k] = int(c)
    return out


def gram_times_wg_is_identity(n: int) -> bool:
    """Exact check of ``Gram . Wg == I`` over ``Q(d)`` on the full pairing basis.

    Wg is brought over a common denominator ``Q(d)``, so the check becomes
    the integer polynomial identity ``Gram . N == Q I``.
    """
    table = wg_orthogonal(n)
    gram = gram_matrix(n)
    common = Poly.constant(1)
    for f in table.by_coset_type.values():
        common = common * f.den.exact_div(poly_gcd(common, f.den))
    scaled = {mu: f * RationalFunction(common) for mu, f in table.by_coset_type.items()}
    denom = 1
    for f in scaled.values():
        if f.den.degree != 0:
            raise ArithmeticError("common denominator does not clear Wg")
        for c in f.num.coeffs:
            denom = lcm(denom, c.denominator)
    q_int = common.scale(denom)
    width = max(max(f.num.degree for f in scaled.values()) + 1, q_int.degree + 1) + n + 1
    order = gram.order
    size = len(order)
    num = np.zeros((size, size, width), dtype=object)
    coeff_rows = {mu: _integer_coefficients(f.num.scale(denom), width) for mu, f in scaled.items()}
    for a, p in enumerate(order):
        for b, q in enumerate(order):
            num[a, b, :] = coeff_rows[coset_type(p, q)]
    big = max(abs(int(x)) for x in num.flat) if size else 0
    dtype = np.int64 if big * size < 2 ** 62 else object
    num = num.astype(dtype)
    exps = np.array(gram.exponents)
    product = np.zeros((size, size, width + n + 1), dtype=dtype)
    for k in range(n + 1):
        mask = (exps == k).astype(dtype)
        if not mask.any():
            continue
        for c in range(width):
            product[:, :, c + k] += mask @ num[:, :, c]
    target = np.zeros_like(product)
    q_coeffs = _integer_coefficients(q_int, width + n + 1)
    for a in range(size):
        target[a, a, :] = q_coeffs
    return bool(np.array_equal(product, target))
