"""Symmetric-group combinatorics: partitions, permutations, characters.

Partitions are plain tuples of non-increasing positive ints and
permutations are tuples of 0-based images.  Both are hashable, which the
memoized character recursion relies on.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .algebra import Poly, RationalFunction

__all__ = [
    "Partition",
    "Permutation",
    "partitions_of",
    "parse_partition",
    "format_partition",
    "validate_partition",
    "cycles",
    "cycle_type",
    "transposition_length",
    "compose",
    "inverse",
    "character",
    "centralizer_size",
    "class_size",
    "hook_dimension",
    "schur_dim",
    "catalan",
    "moebius_perm",
    "moebius_partition",
    "permutation_with_cycle_type",
]

Partition = tuple
Permutation = tuple


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions(n, n))


def _partitions(n: int, largest: int) -> Iterable[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def validate_partition(parts: Sequence[int], n: int | None = None) -> Partition:
    p = tuple(int(x) for x in parts)
    if any(x <= 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"not a partition: {list(parts)}")
    if n is not None and sum(p) != n:
        raise ValueError(f"{list(p)} is not a partition of {n}")
    return p


def parse_partition(text: str, n: int | None = None) -> Partition:
    """Parse ``"k1,k2,..."``; parts are sorted, so ``"1,2"`` is ``(2, 1)``."""
    try:
        parts = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise ValueError(f"malformed partition string {text!r}") from None
    if not parts:
        raise ValueError("empty partition string")
    return validate_partition(sorted(parts, reverse=True), n)


def format_partition(p: Partition) -> str:
    return ",".join(str(x) for x in p)


# -- permutations ----------------------------------------------------------

def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a b)(i) = a(b(i))``."""
    return tuple(a[i] for i in b)


def inverse(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def cycles(sigma: Permutation) -> list[tuple[int, ...]]:
    seen = [False] * len(sigma)
    out = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = sigma[k]
        out.append(tuple(cyc))
    return out


def cycle_type(sigma: Permutation) -> Partition:
    return tuple(sorted((len(c) for c in cycles(sigma)), reverse=True))


def transposition_length(sigma: Permutation) -> int:
    return len(sigma) - len(cycles(sigma))


def permutation_with_cycle_type(mu: Partition) -> Permutation:
    """Canonical representative: consecutive cycles ``(0 1 .. m1-1)(m1 ..)...``."""
    images = []
    start = 0
    for m in mu:
        images.extend(start + (k + 1) % m for k in range(m))
        start += m
    return tuple(images)


# -- characters ------------------------------------------------------------

def _beta_set(lam: Partition) -> tuple[int, ...]:
    k = len(lam)
    return tuple(lam[i] + k - 1 - i for i in range(k))


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    """Murnaghan-Nakayama on beta-numbers, removing the first part of ``mu``."""
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = _beta_set(lam)
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        # leg length = number of beta-numbers strictly between nb and b
        leg = sum(1 for c in beta if nb < c < b)
        new_beta = sorted((bset - {b}) | {nb}, reverse=True)
        k = len(new_beta)
        new_lam = tuple(x for x in (new_beta[i] - (k - 1 - i) for i in range(k)) if x > 0)
        total += (-1) ** leg * _mn(new_lam, rest)
    return total


def character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Irreducible character ``chi^lam`` on the class of cycle type ``mu``."""
    lam, mu = tuple(lam), tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{list(lam)}| != |{list(mu)}|")
    return _mn(lam, mu)


def centralizer_size(mu: Partition) -> int:
    """``z_mu = prod_i i^{m_i} m_i!``."""
    return prod(i ** m * factorial(m) for i, m in Counter(mu).items())


def class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // centralizer_size(mu)


def hook_dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook length formula)."""
    n = sum(lam)
    conj = _conjugate(lam)
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(n) // hooks


def _conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0])) if lam else ()


@lru_cache(maxsize=None)
def schur_dim(lam: Partition) -> RationalFunction:
    """``s_{lam,d}(1)`` as a polynomial in ``d`` via the hook-content product."""
    conj = _conjugate(lam)
    num = Poly.constant(1)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num = num * Poly((j - i, 1))
            hooks *= row - j + conj[j] - i - 1
    return RationalFunction(num.scale(Fraction(1, hooks)))


# -- free-probability leading terms ------------------------------------------

def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return comb(2 * n, n) // (n + 1)


def moebius_partition(mu: Iterable[int]) -> int:
    """``prod (-1)^{k-1} c_{k-1}`` over the parts ``k`` of ``mu``."""
    return prod((-1) ** (k - 1) * catalan(k - 1) for k in mu)


def moebius_perm(sigma: Permutation) -> int:
    return moebius_partition(cycle_type(sigma))


def all_permutations(n: int) -> Iterable[Permutation]:
    return permutations(range(n))
