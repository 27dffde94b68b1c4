"""Exact-versus-sampled comparison rows used by ``verify`` and the acceptance suite."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .algebra import rf_eval
from .montecarlo import SampleEstimate, estimate_moments, make_rng, matrix_size
from .orthogonal import OrthoMomentQuery, evaluate_moment_orthogonal, moment_symplectic
from .unitary import UnitaryMomentQuery, moment_unitary

Query = Union[UnitaryMomentQuery, OrthoMomentQuery]

Z_LIMIT = 5.0


@dataclass(frozen=True)
class VerifyRow:
    query: Query
    exact: Fraction
    estimate: SampleEstimate

    @property
    def z(self) -> float:
        return self.estimate.z_score(self.exact)

    @property
    def ok(self) -> bool:
        return abs(complex(self.exact) - self.estimate.mean) <= Z_LIMIT * self.estimate.stderr

    def to_json_obj(self) -> dict:
        q = self.query
        fields = {"i": list(q.i), "j": list(q.j)}
        if isinstance(q, UnitaryMomentQuery):
            fields.update(ibar=list(q.ibar), jbar=list(q.jbar))
        return {
            "query": fields,
            "exact": f"{self.exact.numerator}/{self.exact.denominator}",
            "estimate": [self.estimate.mean.real, self.estimate.mean.imag],
            "stderr": self.estimate.stderr,
            "samples": self.estimate.samples,
            "z": self.z,
            "ok": self.ok,
        }


def exact_value(group: str, d: int, query: Query) -> Fraction:
    if group == "unitary":
        if query.max_index > d:
            raise ValueError(f"index out of range for U({d})")
        return rf_eval(moment_unitary(query), d)
    if group == "orthogonal":
        return evaluate_moment_orthogonal(query, d)
    if group == "symplectic":
        return moment_symplectic(query, d)
    raise ValueError(f"unknown group {group!r}")


def format_query(query: Query) -> str:
    parts = [query.i, query.j]
    if isinstance(query, UnitaryMomentQuery):
        parts += [query.ibar, query.jbar]
    return "|".join(",".join(map(str, p)) for p in parts)


def parse_query(group: str, text: str) -> Query:
    """``"i|j|ibar|jbar"`` for the unitary group, ``"i|j"`` otherwise; comma-separated 1-based indices."""
    fields = text.split("|")
    try:
        tuples = [tuple(int(v) for v in f.split(",") if v.strip()) for f in fields]
    except ValueError:
        raise ValueError(f"malformed query {text!r}") from None
    if group == "unitary":
        if len(tuples) != 4:
            raise ValueError("unitary queries need four fields: i|j|ibar|jbar")
        return UnitaryMomentQuery(*tuples)
    if len(tuples) != 2:
        raise ValueError("orthogonal/symplectic queries need two fields: i|j")
    return OrthoMomentQuery(*tuples)


def random_queries(group: str, d: int, max_degree: int, count: int, seed: int) -> list[Query]:
    """Random in-range queries of total degree ``1..max_degree``.

    Half are unstructured; the other half repeat indices in matched
    positions so that non-vanishing moments are well represented.
    """
    rng = make_rng(seed)
    size = matrix_size(group, d)
    out: list[Query] = []
    for k in range(count):
        degree = int(rng.integers(1, max_degree + 1))
        structured = k % 2 == 1

        def draw(m):
            return tuple(int(v) for v in rng.integers(1, size + 1, size=m))

        if group == "unitary":
            n_plain = (degree + 1) // 2
            n_conj = degree // 2
            if structured:
                n_conj = n_plain = max(1, degree // 2)
                i, j = draw(n_plain), draw(n_plain)
                out.append(UnitaryMomentQuery(i, j, tuple(rng.permutation(i)), tuple(rng.permutation(j))))
            else:
                out.append(UnitaryMomentQuery(draw(n_plain), draw(n_plain), draw(n_conj), draw(n_conj)))
            continue
        if structured:
            half = max(1, degree // 2)
            if group == "symplectic":
                # pair each drawn index with its form partner
                base_i = draw(half)
                base_j = draw(half)
                partner = lambda v: v + d if v <= d else v - d  # noqa: E731
                i = tuple(rng.permutation(base_i + tuple(partner(v) for v in base_i)))
                j = tuple(rng.permutation(base_j + tuple(partner(v) for v in base_j)))
            else:
                i = tuple(rng.permutation(draw(half) * 2))
                j = tuple(rng.permutation(draw(half) * 2))
            out.append(OrthoMomentQuery(tuple(int(v) for v in i), tuple(int(v) for v in j)))
        else:
            out.append(OrthoMomentQuery(draw(degree), draw(degree)))
    return out


def verify(
    group: str, d: int, queries: Sequence[Query], samples: int, seed: int, workers: int = 1
) -> list[VerifyRow]:
    exact = [exact_value(group, d, q) for q in queries]
    estimates = estimate_moments(group, d, queries, samples, seed, workers=workers)
    return [VerifyRow(q, e, s) for q, e, s in zip(queries, exact, estimates)]


def rows_table(rows: Sequence[VerifyRow]) -> str:
    lines = [f"{'query':<32} {'exact':>14} {'estimate':>22} {'stderr':>10} {'z':>7}"]
    for r in rows:
        est = r.estimate.mean
        est_s = f"{est.real:+.6f}{est.imag:+.6f}j"
        lines.append(
            f"{format_query(r.query):<32} {str(r.exact):>14} {est_s:>22} {r.estimate.stderr:>10.2e} {r.z:>7.2f}"
            + ("" if r.ok else "  FAIL")
        )
    return "\n".join(lines)
