"""Unitary Weingarten function and moments of Haar unitary matrices."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Mapping, Sequence

from .algebra import Poly, RationalFunction, rf_sum
from .errors import check_cap
from .symmetric import (
    Partition,
    all_permutations,
    character,
    class_size,
    compose,
    cycle_type,
    inverse,
    moebius_partition,
    partitions_of,
    schur_dim,
    validate_partition,
)

__all__ = [
    "UnitaryWgTable",
    "UnitaryMomentQuery",
    "unitary_table",
    "wg_unitary",
    "moment_unitary",
    "wg_unitary_leading",
    "unitary_subleading_order",
]

DEFAULT_MAX_N = 8


@dataclass(frozen=True)
class UnitaryWgTable:
    n: int
    entries: Mapping[Partition, RationalFunction]

    def __getitem__(self, mu: Partition) -> RationalFunction:
        return self.entries[tuple(mu)]


@dataclass(frozen=True)
class UnitaryMomentQuery:
    """Integral of ``U[i1,j1]...U[in,jn] conj(U[i'1,j'1])...conj(U[i'm,j'm])``.

    Indices are 1-based.
    """

    i: tuple[int, ...]
    j: tuple[int, ...]
    ibar: tuple[int, ...]
    jbar: tuple[int, ...]

    def __post_init__(self):
        for name in ("i", "j", "ibar", "jbar"):
            vals = tuple(int(v) for v in getattr(self, name))
            if any(v < 1 for v in vals):
                raise ValueError(f"{name}: indices are 1-based positive integers")
            object.__setattr__(self, name, vals)
        if len(self.i) != len(self.j) or len(self.ibar) != len(self.jbar):
            raise ValueError("i/j and ibar/jbar must have equal lengths")

    @property
    def balanced(self) -> bool:
        return len(self.i) == len(self.ibar)

    @property
    def max_index(self) -> int:
        return max(self.i + self.j + self.ibar + self.jbar, default=0)


def unitary_table(n: int) -> UnitaryWgTable:
    """Wg on every conjugacy class of ``S_n``, summed over all ``lam |- n``."""
    if n < 1:
        raise ValueError("n must be positive")
    check_cap(n, "unitary_max_n", DEFAULT_MAX_N, "unitary Weingarten table")
    return _unitary_table(n)


@lru_cache(maxsize=None)
def _unitary_table(n: int) -> UnitaryWgTable:
    lams = partitions_of(n)
    weights = {lam: character(lam, (1,) * n) ** 2 for lam in lams}
    inv_dims = {lam: schur_dim(lam).inverse() for lam in lams}
    norm = factorial(n) ** 2
    entries = {}
    for mu in lams:
        terms = []
        for lam in lams:
            c = weights[lam] * character(lam, mu)
            if c:
                terms.append(inv_dims[lam] * RationalFunction(c))
        entries[mu] = rf_sum(terms) * RationalFunction(1, norm)
    return UnitaryWgTable(n, entries)


def wg_unitary(n: int, mu: Sequence[int]) -> RationalFunction:
    mu = validate_partition(mu, n)
    return unitary_table(n)[mu]


def _stabilizer_order(*labels: Sequence[int]) -> int:
    return prod(factorial(m) for m in Counter(zip(*labels)).values())


def _matching(src: Sequence[int], dst: Sequence[int]):
    """Some ``s`` with ``dst[s[k]] == src[k]`` for all ``k``, or ``None``."""
    if sorted(src) != sorted(dst):
        return None
    pools: dict[int, list[int]] = {}
    for pos, v in enumerate(dst):
        pools.setdefault(v, []).append(pos)
    return tuple(pools[v].pop() for v in src)


def moment_class_counts(q: UnitaryMomentQuery) -> Counter:
    """Multiplicity of each cycle type of ``tau sigma^-1`` in the delta-weighted sum.

    The admissible ``sigma`` form a coset ``sigma0 H_i`` of the Young
    subgroup fixing ``i`` (likewise ``tau``), so the double sum collapses to
    one pass over ``S_n`` with a block-multiset membership test.
    """
    if not q.balanced:
        return Counter()
    n = len(q.i)
    sigma0 = _matching(q.i, q.ibar)
    tau0 = _matching(q.j, q.jbar)
    if sigma0 is None or tau0 is None:
        return Counter()
    pi_inv = inverse(compose(inverse(sigma0), tau0))
    f = q.i
    blocks: dict[int, list[int]] = {}
    for pos, v in enumerate(q.j):
        blocks.setdefault(v, []).append(pos)
    block_list = list(blocks.values())
    targets = [sorted(f[m] for m in b) for b in block_list]
    mult = _stabilizer_order(q.i, q.j)
    counts: Counter = Counter()
    for g in all_permutations(n):
        x = compose(pi_inv, g)
        x_inv = inverse(x)
        if all(sorted(f[x_inv[m]] for m in b) == t for b, t in zip(block_list, targets)):
            counts[cycle_type(g)] += mult
    return counts


def moment_unitary(q: UnitaryMomentQuery) -> RationalFunction:
    """Exact Haar moment as a reduced rational function of ``d``."""
    if not q.balanced:
        return RationalFunction()
    n = len(q.i)
    if n == 0:
        return RationalFunction(1)
    check_cap(n, "unitary_max_n", DEFAULT_MAX_N, "unitary moment")
    counts = moment_class_counts(q)
    if not counts:
        return RationalFunction()
    table = unitary_table(n)
    return rf_sum([table[mu] * RationalFunction(c) for mu, c in sorted(counts.items())])


def wg_unitary_leading(n: int, mu: Sequence[int]) -> tuple[int, int]:
    """``(n + |sigma|, Moeb(sigma))``, checked against the exact function."""
    mu = validate_partition(mu, n)
    exponent = n + (n - len(mu))
    coeff = moebius_partition(mu)
    wg = wg_unitary(n, mu)
    if wg.order_at_infinity() != -exponent or wg.leading_coefficient() != coeff:
        raise ArithmeticError(
            f"leading term of Wg{list(mu)} is {wg.leading_coefficient()} d^{wg.order_at_infinity()}, "
            f"expected {coeff} d^{-exponent}"
        )
    return exponent, coeff


def unitary_subleading_order(n: int, mu: Sequence[int]) -> int | None:
    """Order at infinity of ``d^(n+|sigma|) Wg(sigma) - Moeb(sigma)``; ``None`` if it vanishes."""
    mu = validate_partition(mu, n)
    exponent = n + (n - len(mu))
    rest = wg_unitary(n, mu) * RationalFunction(Poly.monomial(exponent)) - RationalFunction(moebius_partition(mu))
    return None if rest.is_zero() else rest.order_at_infinity()


def total_class_weight(n: int) -> RationalFunction:
    """``sum_{g in S_n} Wg(g)``; equals the integral of ``|U_11|^{2n}`` divided by ``n!``."""
    t = unitary_table(n)
    return rf_sum([t[mu] * RationalFunction(class_size(mu)) for mu in partitions_of(n)])
