"""Pair partitions of ``2n`` points and the Gram data of the Brauer representation.

A pairing is stored as its partner map: a tuple ``partner`` of length
``2n`` with ``partner[partner[k]] == k != partner[k]`` (0-based points).
The identity pairing is ``{(0,1), (2,3), ...}``; the hyperoctahedral
group is its stabilizer in ``S_2n``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .algebra import Poly, RationalFunction
from .errors import check_cap
from .symmetric import (
    Partition,
    all_permutations,
    character,
    cycle_type,
    hook_dimension,
    moebius_partition,
    partitions_of,
)

__all__ = [
    "Pairing",
    "GramMatrix",
    "identity_pairing",
    "enumerate_pairings",
    "pairings_compatible",
    "is_pairing",
    "parse_pairing",
    "format_pairing",
    "pairing_distance",
    "coset_type",
    "loops",
    "gram_matrix",
    "moebius_pairing",
    "pairing_sign",
    "act",
    "double",
    "z_eigenvalue",
    "isotypic_projector",
    "dimension_identity_check",
    "double_factorial",
    "type_counts",
]

Pairing = tuple

DEFAULT_GRAM_MAX_N = 5
DEFAULT_SYMMETRIC_SUM_MAX_N = 4


def double_factorial(m: int) -> int:
    return prod(range(m, 0, -2)) if m > 0 else 1


def identity_pairing(n: int) -> Pairing:
    return tuple(k + 1 if k % 2 == 0 else k - 1 for k in range(2 * n))


def is_pairing(p: Sequence[int]) -> bool:
    m = len(p)
    return m % 2 == 0 and all(0 <= p[k] < m and p[k] != k and p[p[k]] == k for k in range(m))


def _pairings_from(points: list[int], partner: list[int]) -> Iterator[Pairing]:
    if not points:
        yield tuple(partner)
        return
    a, rest = points[0], points[1:]
    for idx, b in enumerate(rest):
        partner[a], partner[b] = b, a
        yield from _pairings_from(rest[:idx] + rest[idx + 1:], partner)


@lru_cache(maxsize=None)
def enumerate_pairings(n: int) -> tuple[Pairing, ...]:
    """All ``(2n-1)!!`` pairings; the smallest free point is matched first."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(_pairings_from(list(range(2 * n)), [0] * (2 * n)))


def pairings_compatible(labels: Sequence) -> list[Pairing]:
    """Pairings joining only points with equal labels (``delta^p_i = 1``)."""
    m = len(labels)
    if m % 2:
        return []
    if any(c % 2 for c in Counter(labels).values()):
        return []

    out: list[Pairing] = []
    partner = [0] * m

    def rec(free: list[int]):
        if not free:
            out.append(tuple(partner))
            return
        a, rest = free[0], free[1:]
        for idx, b in enumerate(rest):
            if labels[b] == labels[a]:
                partner[a], partner[b] = b, a
                rec(rest[:idx] + rest[idx + 1:])

    rec(list(range(m)))
    return out


def parse_pairing(text: str) -> Pairing:
    """Parse the 1-based syntax ``"(1,2)(3,4)"``."""
    body = text.replace(" ", "")
    if not body.startswith("(") or not body.endswith(")"):
        raise ValueError(f"malformed pairing {text!r}")
    pairs = [chunk.split(",") for chunk in body[1:-1].split(")(")]
    try:
        flat = [(int(a) - 1, int(b) - 1) for a, b in pairs]
    except ValueError:
        raise ValueError(f"malformed pairing {text!r}") from None
    m = 2 * len(flat)
    partner = [-1] * m
    for a, b in flat:
        if not (0 <= a < m and 0 <= b < m) or a == b or partner[a] != -1 or partner[b] != -1:
            raise ValueError(f"not a pairing: {text!r}")
        partner[a], partner[b] = b, a
    return tuple(partner)


def format_pairing(p: Pairing) -> str:
    return "".join(f"({a + 1},{p[a] + 1})" for a in range(len(p)) if a < p[a])


def _check_same_size(p1: Pairing, p2: Pairing) -> None:
    if len(p1) != len(p2):
        raise ValueError(f"pairings on {len(p1)} and {len(p2)} points")


def loops(p1: Pairing, p2: Pairing) -> list[list[int]]:
    """Components of the graph of ``p1`` and ``p2``, each walked alternately from its least point."""
    _check_same_size(p1, p2)
    seen = [False] * len(p1)
    out = []
    for start in range(len(p1)):
        if seen[start]:
            continue
        walk = []
        k, use_first = start, True
        while not seen[k]:
            seen[k] = True
            walk.append(k)
            k = p1[k] if use_first else p2[k]
            use_first = not use_first
        out.append(walk)
    return out


def coset_type(p1: Pairing, p2: Pairing) -> Partition:
    """Half-sizes of the orbits of ``<p1, p2>``, as a partition of ``n``."""
    return tuple(sorted((len(c) // 2 for c in loops(p1, p2)), reverse=True))


def pairing_distance(p1: Pairing, p2: Pairing) -> int:
    """``l(p1, p2) = |p1 p2| / 2``."""
    _check_same_size(p1, p2)
    composed = tuple(p1[p2[k]] for k in range(len(p1)))
    return _transposition_length(composed) // 2


def _transposition_length(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    ncyc = 0
    for s in range(len(sigma)):
        if not seen[s]:
            ncyc += 1
            k = s
            while not seen[k]:
                seen[k] = True
                k = sigma[k]
    return len(sigma) - ncyc


def moebius_pairing(p1: Pairing, p2: Pairing) -> int:
    return moebius_partition(coset_type(p1, p2))


def pairing_sign(p: Pairing) -> int:
    """Sign of the word ``a1 b1 a2 b2 ...`` (pairs ``a < b`` sorted by ``a``), as in a Pfaffian."""
    word = [x for a in range(len(p)) if a < p[a] for x in (a, p[a])]
    inversions = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
    return -1 if inversions % 2 else 1


def act(sigma: Sequence[int], p: Pairing) -> Pairing:
    """``sigma . p``: the pair ``{a, b}`` is sent to ``{sigma(a), sigma(b)}``."""
    out = [0] * len(p)
    for a in range(len(p)):
        out[sigma[a]] = sigma[p[a]]
    return tuple(out)


@dataclass(frozen=True)
class GramMatrix:
    """Entries ``d^(n - l(p1, p2))``, stored as exponents over ``order``."""

    n: int
    order: tuple[Pairing, ...]
    exponents: tuple[tuple[int, ...], ...]

    def entry(self, a: int, b: int) -> Poly:
        return Poly.monomial(self.exponents[a][b])

    def polys(self) -> list[list[Poly]]:
        return [[Poly.monomial(e) for e in row] for row in self.exponents]

    def evaluate(self, d) -> list[list]:
        return [[d ** e for e in row] for row in self.exponents]

    @property
    def size(self) -> int:
        return len(self.order)


def gram_matrix(n: int) -> GramMatrix:
    check_cap(n, "gram_max_n", DEFAULT_GRAM_MAX_N, "Gram matrix")
    return _gram_matrix(n)


@lru_cache(maxsize=None)
def _gram_matrix(n: int) -> GramMatrix:
    order = enumerate_pairings(n)
    exps = tuple(tuple(len(loops(p, q)) for q in order) for p in order)
    return GramMatrix(n, order, exps)


@lru_cache(maxsize=None)
def type_counts(n: int) -> dict[Partition, int]:
    """Number of pairings ``p`` with ``coset_type(p, Id) == mu``."""
    ident = identity_pairing(n)
    return dict(Counter(coset_type(p, ident) for p in enumerate_pairings(n)))


def double(lam: Partition) -> Partition:
    """``2 lam``: every row doubled."""
    return tuple(2 * x for x in lam)


def _orbit_statistics(n: int) -> dict[Partition, Counter]:
    """For each coset type ``mu``: cycle-type histogram of all ``sigma`` with ``type(sigma.Id, Id) = mu``."""
    check_cap(n, "symmetric_sum_max_n", DEFAULT_SYMMETRIC_SUM_MAX_N, "sum over S_2n")
    return _orbit_statistics_cached(n)


@lru_cache(maxsize=None)
def _orbit_statistics_cached(n: int) -> dict[Partition, Counter]:
    ident = identity_pairing(n)
    stats: dict[Partition, Counter] = {}
    for sigma in all_permutations(2 * n):
        mu = coset_type(act(sigma, ident), ident)
        stats.setdefault(mu, Counter())[cycle_type(sigma)] += 1
    return stats


def _char_sum(lam2: Partition, hist: Counter) -> int:
    return sum(c * character(lam2, ct) for ct, c in hist.items())


@lru_cache(maxsize=None)
def z_eigenvalue(lam: Partition) -> RationalFunction:
    """Eigenvalue of the Gram operator on the ``2 lam`` isotypic block, by brute summation over ``S_2n``."""
    n = sum(lam)
    lam2 = double(lam)
    stats = _orbit_statistics(n)
    ones = (1,) * n
    num = Poly()
    for mu, hist in stats.items():
        s = _char_sum(lam2, hist)
        if s:
            # len(mu) == n - l(sigma.Id, Id)
            num = num + Poly.monomial(len(mu), s)
    den = _char_sum(lam2, stats[ones])
    return RationalFunction(num, Poly.constant(den))


@lru_cache(maxsize=None)
def isotypic_projector(lam: Partition) -> dict[Partition, Fraction]:
    """``<p1, P_lam p2>`` by coset type of ``(p1, p2)``, where ``P_lam`` projects ``C(P_2n)`` onto the ``2 lam`` block."""
    n = sum(lam)
    lam2 = double(lam)
    f = hook_dimension(lam2)
    stats = _orbit_statistics(n)
    counts = type_counts(n)
    total = factorial(2 * n)
    # each p is sigma.Id for |O_n| = 2^n n! permutations; spread the class sum over the counts[mu] pairings
    return {
        mu: Fraction(f * _char_sum(lam2, hist), total * counts[mu])
        for mu, hist in stats.items()
    }


def dimension_identity_check(n: int) -> bool:
    """``sum_{lam |- n} dim chi^{2 lam} == (2n-1)!!``."""
    return sum(hook_dimension(double(lam)) for lam in partitions_of(n)) == double_factorial(2 * n - 1)
