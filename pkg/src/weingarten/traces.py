"""Exact normalized trace moments ``E tr(X1 U^s1 X2 U^s2 ...)`` by index expansion."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .algebra import rf_eval
from .montecarlo import matrix_size
from .orthogonal import OrthoMomentQuery, evaluate_moment_orthogonal, moment_symplectic
from .unitary import UnitaryMomentQuery, moment_unitary

__all__ = ["trace_moment_exact"]

_GROUP_TOKENS = ("U", "U*", "Ut", "Ubar")


def _entry_indices(token: str, a: int, b: int) -> tuple[int, int, bool]:
    """``(row, col, conjugated)`` of the group entry behind ``token[a, b]``."""
    if token == "U":
        return a, b, False
    if token == "Ut":
        return b, a, False
    if token == "U*":
        return b, a, True
    return a, b, True


def trace_moment_exact(
    group: str, d: int, word: Sequence[str], constants: Mapping[str, Sequence[Sequence]]
) -> Fraction:
    """Exact value for rational constant matrices; the word is expanded over all index cycles."""
    size = matrix_size(group, d)
    mats = {}
    for token in word:
        if token in _GROUP_TOKENS:
            continue
        if token not in constants:
            raise ValueError(f"unknown word token {token!r}")
        m = [[Fraction(x) for x in row] for row in constants[token]]
        if len(m) != size or any(len(r) != size for r in m):
            raise ValueError(f"constant {token!r} must be {size}x{size}")
        mats[token] = m

    @lru_cache(maxsize=None)
    def moment(plain: tuple, conj: tuple) -> Fraction:
        if group == "unitary":
            q = UnitaryMomentQuery(
                tuple(a for a, _ in plain), tuple(b for _, b in plain),
                tuple(a for a, _ in conj), tuple(b for _, b in conj),
            )
            return rf_eval(moment_unitary(q), d)
        if conj:
            # real groups: conjugation acts trivially on O(d); Sp entries are complex
            if group == "orthogonal":
                plain = tuple(sorted(plain + conj))
            else:
                raise ValueError("conjugated entries are not supported for the symplectic group")
        q = OrthoMomentQuery(tuple(a for a, _ in plain), tuple(b for _, b in plain))
        if group == "orthogonal":
            return evaluate_moment_orthogonal(q, d)
        return moment_symplectic(q, d)

    k = len(word)
    total = Fraction(0)
    for idx in product(range(1, size + 1), repeat=k):
        coeff = Fraction(1)
        plain, conj = [], []
        for pos, token in enumerate(word):
            a, b = idx[pos], idx[(pos + 1) % k]
            if token in _GROUP_TOKENS:
                r, c, is_conj = _entry_indices(token, a, b)
                (conj if is_conj else plain).append((r, c))
            else:
                coeff *= mats[token][a - 1][b - 1]
                if not coeff:
                    break
        if not coeff:
            continue
        total += coeff * moment(tuple(sorted(plain)), tuple(sorted(conj)))
    return total / size
