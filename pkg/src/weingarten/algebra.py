"""Exact univariate polynomials and rational functions in the dimension ``d``.

Coefficients are :class:`fractions.Fraction` throughout.  A
:class:`RationalFunction` is always stored reduced, with a monic
denominator, so two equal functions compare equal field by field.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence, Union

__all__ = [
    "Poly",
    "RationalFunction",
    "PoleError",
    "rf_normalize",
    "rf_eval",
    "rf_add",
    "rf_mul",
    "rf_neg",
    "rf_inv",
    "D",
]

Number = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Evaluation hit a genuine pole of a reduced rational function."""

    def __init__(self, x):
        self.x = Fraction(x)
        super().__init__(f"pole at {_fmt_fraction(self.x)}")


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


class Poly:
    """Polynomial in ``d`` with exact rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls((0,) * k + (c,))

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "Poly":
        """``lead * prod(d - r)``."""
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-_as_fraction(r), 1))
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- ring operations ----------------------------------------------
    def __add__(self, other) -> "Poly":
        other = _coerce_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce_poly(other) - self

    def __mul__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Number) -> "Poly":
        c = _as_fraction(c)
        return Poly(c * a for a in self.coeffs)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [Fraction(0)] * (dq + 1)
        inv_lead = 1 / other.lead
        m = len(other.coeffs)
        for k in range(dq, -1, -1):
            c = rem[k + m - 1] * inv_lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem[: m - 1])

    def __floordiv__(self, other) -> "Poly":
        return self.divmod(_coerce_poly(other))[0]

    def __mod__(self, other) -> "Poly":
        return self.divmod(_coerce_poly(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` primitive over the integers."""
        if not self.coeffs:
            return Fraction(0)
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        num = reduce(_igcd, (abs(c.numerator * (den // c.denominator)) for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lead < 0:
            c = -c
        return self.scale(1 / c)

    # -- evaluation and substitution ----------------------------------
    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reflect(self) -> "Poly":
        """Substitute ``d -> -d``."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def valuation(self) -> int:
        """Multiplicity of the root ``d = 0``."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("valuation of the zero polynomial")

    def integer_roots(self) -> list[int]:
        """Integer roots with multiplicity (primitive-part rational root test)."""
        if self.is_zero():
            raise ValueError("roots of the zero polynomial")
        p = self.primitive()
        roots: list[int] = []
        v = p.valuation()
        roots.extend([0] * v)
        p = Poly(p.coeffs[v:])
        while p.degree > 0:
            c0 = abs(p.coeffs[0].numerator)
            found = False
            for r in _divisor_candidates(c0):
                if p(r) == 0:
                    roots.append(r)
                    p = p.exact_div(Poly((-r, 1)))
                    found = True
                    break
            if not found:
                break
        return sorted(roots)


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisor_candidates(n: int) -> list[int]:
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.extend({k, n // k})
        k += 1
    out.sort()
    return [s * v for v in out for s in (1, -1)]


def _coerce_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    return NotImplemented  # type: ignore[return-value]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid over the rationals; ``gcd(0, 0) = 0``."""
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


D = Poly((0, 1))


class RationalFunction:
    """Reduced quotient ``num / den`` of polynomials in ``d``.

    The denominator is monic and coprime to the numerator; zero is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Poly, Number] = 0, den: Union[Poly, Number] = 1):
        num = _coerce_poly(num) if not isinstance(num, Poly) else num
        den = _coerce_poly(den) if not isinstance(den, Poly) else den
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.constant(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lead
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    # -- comparison ----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other)
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- field operations ----------------------------------------------
    def __add__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_coerce_rf(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _coerce_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        if isinstance(other, RationalFunction) and other.den.degree == 0 and other.num.degree <= 0:
            return RationalFunction._raw(self.num.scale(other.num.lead), self.den) if other.num else RationalFunction()
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> "RationalFunction":
        return self * _coerce_rf(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return _coerce_rf(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self.num ** k, self.den ** k) if k else RationalFunction(1)

    # -- analysis ------------------------------------------------------
    def __call__(self, x) -> Fraction:
        return rf_eval(self, x)

    def reflect(self) -> "RationalFunction":
        """Substitute ``d -> -d`` and re-reduce."""
        return RationalFunction(self.num.reflect(), self.den.reflect())

    def order_at_infinity(self) -> int:
        """``deg(num) - deg(den)``; the function behaves like ``c * d**order``."""
        if self.is_zero():
            raise ValueError("order of the zero rational function")
        return self.num.degree - self.den.degree

    def leading_coefficient(self) -> Fraction:
        return self.num.lead / self.den.lead

    # -- display and serialization --------------------------------------
    def __repr__(self) -> str:
        return f"RationalFunction({self.expanded()})"

    def __str__(self) -> str:
        return self.factored()

    def expanded(self) -> str:
        n = format_poly(self.num)
        if self.den == Poly.constant(1):
            return n
        return f"{_paren(n)}/({format_poly(self.den)})"

    def display_parts(self) -> tuple[str, str]:
        """``(numerator, denominator)`` strings with integer coefficients; ``"1"`` for a trivial denominator."""
        if self.is_zero():
            return "0", "1"
        scale = reduce(lcm, (c.denominator for c in self.num.coeffs), 1)
        den = _factor_monic(self.den)
        if scale != 1:
            den = str(scale) if den == "1" else f"{scale}{den}"
        return format_poly(self.num.scale(scale)), den

    def factored(self) -> str:
        """Integer-normalized display; the denominator is factored when it splits over Z."""
        n, den = self.display_parts()
        if den == "1":
            return n
        atomic = den.isdigit() or den == "d" or (den.startswith("(") and den.count("(") == 1 and den.endswith(")"))
        return f"{_paren(n)}/{den if atomic else '(' + den + ')'}"

    def latex(self) -> str:
        n, den = self.display_parts()
        if den == "1":
            return n
        return f"\\frac{{{n}}}{{{den}}}"

    def to_json_obj(self) -> dict:
        return {
            "num": [_json_coeff(c) for c in self.num.coeffs] or ["0/1"],
            "den": [_json_coeff(c) for c in self.den.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RationalFunction":
        return cls(Poly(Fraction(c) for c in obj["num"]), Poly(Fraction(c) for c in obj["den"]))


def _json_coeff(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _coerce_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction, Poly)):
        return RationalFunction(x)
    raise TypeError(f"cannot combine RationalFunction with {type(x).__name__}")


def _paren(s: str) -> str:
    body = s[1:] if s.startswith("-") else s
    if "+" in body or "-" in body:
        return f"({s})"
    return s


def format_poly(p: Poly, var: str = "d") -> str:
    """Human-readable expansion, highest degree first: ``d^3+d^2-2d``."""
    if p.is_zero():
        return "0"
    out = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mag = _fmt_fraction(a)
        if k == 0:
            term = mag
        else:
            mono = var if k == 1 else f"{var}^{k}"
            term = mono if a == 1 else f"{mag}{mono}" if a.denominator == 1 else f"({mag}){mono}"
        out.append((sign, term))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, term in out[1:]:
        s += sign + term
    return s


def _factor_monic(den: Poly) -> str:
    """``d(d-1)(d+2)`` when ``den`` splits into linear integer factors, else expanded."""
    if den.degree == 0:
        return "1"
    if den.content().denominator != 1 or any(c.denominator != 1 for c in den.coeffs):
        return f"({format_poly(den)})"
    roots = den.integer_roots()
    if len(roots) != den.degree:
        return f"({format_poly(den)})"
    # zero first, then negative-shift factors (d-k) ascending, then (d+k)
    counts: dict[int, int] = {}
    for r in roots:
        counts[r] = counts.get(r, 0) + 1
    order = sorted(counts, key=lambda r: (r != 0, r < 0, abs(r)))
    parts = []
    for r in order:
        base = "d" if r == 0 else f"(d-{r})" if r > 0 else f"(d+{-r})"
        m = counts[r]
        parts.append(base if m == 1 else f"{base}^{m}")
    return "".join(parts)


# -- functional surface ----------------------------------------------------

def rf_normalize(num: Poly, den: Poly) -> RationalFunction:
    return RationalFunction(num, den)


def rf_eval(f: RationalFunction, x) -> Fraction:
    """Exact value of the reduced function at ``x``; raises :class:`PoleError`."""
    x = _as_fraction(x)
    dv = f.den(x)
    if dv == 0:
        raise PoleError(x)
    return f.num(x) / dv


def rf_add(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return f + g


def rf_mul(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    return f * g


def rf_neg(f: RationalFunction) -> RationalFunction:
    return -f


def rf_inv(f: RationalFunction) -> RationalFunction:
    return f.inverse()


def rf_sum(terms: Sequence[RationalFunction]) -> RationalFunction:
    """Sum with a running common denominator; one reduction at the end."""
    num, den = Poly(), Poly.constant(1)
    for t in terms:
        if t.is_zero():
            continue
        if t.den == den:
            num = num + t.num
            continue
        g = poly_gcd(den, t.den)
        tq = t.den.exact_div(g)
        num = num * tq + t.num * den.exact_div(g)
        den = den * tq
    return RationalFunction(num, den)
