"""Sparse bivariate polynomials over Q in the formal variables z and zb.

``zb`` stands for the complex conjugate coordinate. Coefficients are
:class:`fractions.Fraction`; a polynomial is an immutable map from exponent
pairs ``(a, b)`` (meaning ``z^a * zb^b``) to nonzero coefficients.

:class:`LocalElement` is an element ``f / delta^k`` of the localisation at
``delta = z^N - zb^N``, always stored in reduced form.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DivisionError, EvalError, ParseError

Rational = Fraction

NEG_INF = float("-inf")


def _as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def _order_key(mono):
    a, b = mono
    return (a + b, -a)


class BiPoly:
    """Immutable sparse polynomial in z, zb with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (a, b), c in dict(terms).items():
                if a < 0 or b < 0:
                    raise ValueError(f"negative exponent in monomial {(a, b)}")
                c = _as_rational(c)
                if c:
                    clean[(int(a), int(b))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "BiPoly":
        # trusted constructor: keys are int pairs, values nonzero Fractions
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "BiPoly":
        return cls({(a, b): c})

    @classmethod
    def from_coeffs(cls, d: int, coeffs) -> "BiPoly":
        """Homogeneous polynomial sum_b coeffs[b] z^(d-b) zb^b."""
        return cls({(d - b, b): c for b, c in enumerate(coeffs) if c})

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order: total degree ascending, z-exponent descending."""
        return sorted(self._terms.items(), key=lambda kv: _order_key(kv[0]))

    def coeff(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(a + b for a, b in self._terms)

    def degrees(self) -> list[int]:
        return sorted({a + b for a, b in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coeff_vector(self, d: int) -> list[Fraction]:
        """Coefficients of z^(d-b) zb^b for b = 0..d."""
        return [self.coeff(d - b, b) for b in range(d + 1)]

    def leading_term(self):
        mono = max(self._terms, key=_order_key)
        return mono, self._terms[mono]

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, _RationalABC)):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiPoly":
        c = _as_rational(c)
        if not c:
            return BiPoly()
        return BiPoly._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)):
            return self.scale(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, _RationalABC)):
            return self._terms == BiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- structure -------------------------------------------------------

    def diff(self, variable: str) -> "BiPoly":
        out = {}
        if variable == "z":
            for (a, b), c in self._terms.items():
                if a:
                    out[(a - 1, b)] = c * a
        elif variable in ("zb", "zbar"):
            for (a, b), c in self._terms.items():
                if b:
                    out[(a, b - 1)] = c * b
        else:
            raise ValueError(f"unknown variable {variable!r}")
        return BiPoly._raw(out)

    def homogeneous_component(self, d: int) -> "BiPoly":
        return BiPoly._raw({k: c for k, c in self._terms.items() if k[0] + k[1] == d})

    def homogeneous_components(self) -> dict[int, "BiPoly"]:
        out: dict[int, dict] = {}
        for k, c in self._terms.items():
            out.setdefault(k[0] + k[1], {})[k] = c
        return {d: BiPoly._raw(t) for d, t in sorted(out.items())}

    def conjugate(self) -> "BiPoly":
        return BiPoly._raw({(b, a): c for (a, b), c in self._terms.items()})

    def divide_exact(self, divisor: "BiPoly") -> "BiPoly":
        return divide_exact(self, divisor)

    def content_denominator(self) -> int:
        """Least common multiple of the coefficient denominators."""
        den = 1
        for c in self._terms.values():
            den = math.lcm(den, c.denominator)
        return den

    def evaluate(self, z, zb):
        """Numeric evaluation (any ring supporting + and *, e.g. complex, mpc)."""
        total = 0
        for (a, b), c in self._terms.items():
            total += c.numerator * z**a * zb**b / c.denominator
        return total

    # -- text ------------------------------------------------------------

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"BiPoly({render_poly(self)!r})"


Z = BiPoly.monomial(1, 0)
ZB = BiPoly.monomial(0, 1)
ONE = BiPoly.const(1)


def poly_add(p: BiPoly, q: BiPoly) -> BiPoly:
    return p + q


def poly_mul(p: BiPoly, q: BiPoly) -> BiPoly:
    return p * q


def partial_derivative(p: BiPoly, variable: str) -> BiPoly:
    return p.diff(variable)


def homogeneous_component(p: BiPoly, d: int) -> BiPoly:
    return p.homogeneous_component(d)


def conjugate_swap(p: BiPoly) -> BiPoly:
    """Swap z and zb; on I2(N) this is the reflection in the real axis."""
    return p.conjugate()


def divide_exact(p: BiPoly, d: BiPoly) -> BiPoly:
    """Return q with p = q*d, by leading-term elimination; raise DivisionError otherwise."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    (la, lb), lc = d.leading_term()
    rem = dict(p._terms)
    quot = {}
    dterms = list(d._terms.items())
    while rem:
        (a, b) = max(rem, key=_order_key)
        c = rem[(a, b)]
        if a < la or b < lb:
            raise DivisionError(f"{render_poly(d)} does not divide {render_poly(p)}")
        qa, qb = a - la, b - lb
        qc = c / lc
        quot[(qa, qb)] = qc
        for (da, db), dc in dterms:
            k = (qa + da, qb + db)
            s = rem.get(k, 0) - qc * dc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return BiPoly._raw(quot)


def delta(N: int) -> BiPoly:
    """The discriminant-type binomial z^N - zb^N."""
    return BiPoly({(N, 0): 1, (0, N): -1})


# -- localisation ---------------------------------------------------------


def _try_divide_delta(p: BiPoly, N: int):
    try:
        return divide_exact(p, delta(N))
    except DivisionError:
        return None


@dataclass(frozen=True)
class LocalElement:
    """``numerator / (z^N - zb^N)^delta_power``, kept in reduced form.

    The constructor reduces: while ``delta_power > 0`` and delta divides the
    numerator, one factor is cancelled.
    """

    numerator: BiPoly
    delta_power: int = 0
    N: int = 2

    def __post_init__(self):
        if self.delta_power < 0:
            raise ValueError("delta_power must be >= 0")
        if self.N < 1:
            raise ValueError("N must be positive")
        num, k = self.numerator, self.delta_power
        if not isinstance(num, BiPoly):
            num = BiPoly(num)
        if num.is_zero():
            k = 0
        while k > 0:
            q = _try_divide_delta(num, self.N)
            if q is None:
                break
            num, k = q, k - 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "delta_power", k)

    @classmethod
    def of(cls, p: BiPoly, N: int) -> "LocalElement":
        return cls(p, 0, N)

    def is_polynomial(self) -> bool:
        return self.delta_power == 0

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def to_poly(self) -> BiPoly:
        if self.delta_power:
            raise EvalError(f"element has a pole of order {self.delta_power} along delta")
        return self.numerator

    def _check(self, other):
        if isinstance(other, BiPoly):
            return LocalElement(other, 0, self.N)
        if not isinstance(other, LocalElement):
            return NotImplemented
        if other.N != self.N:
            raise ValueError(f"cannot combine elements with N={self.N} and N={other.N}")
        return other

    def _lift(self, k: int) -> BiPoly:
        return self.numerator * delta(self.N) ** (k - self.delta_power)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        k = max(self.delta_power, other.delta_power)
        return LocalElement(self._lift(k) + other._lift(k), k, self.N)

    __radd__ = __add__

    def __neg__(self):
        return LocalElement(-self.numerator, self.delta_power, self.N)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, _RationalABC)):
            return LocalElement(self.numerator.scale(other), self.delta_power, self.N)
        other = self._check(other)
        if other is NotImplemented:
            return other
        return LocalElement(
            self.numerator * other.numerator, self.delta_power + other.delta_power, self.N
        )

    __rmul__ = __mul__

    def __str__(self):
        if self.delta_power == 0:
            return render_poly(self.numerator)
        return f"({render_poly(self.numerator)}) / delta^{self.delta_power}"

    def to_json(self) -> dict:
        return {"numerator": render_poly(self.numerator), "delta_power": self.delta_power, "N": self.N}


def local_reduce(numerator: BiPoly, k: int, N: int) -> LocalElement:
    return LocalElement(numerator, k, N)


def eval_origin(e: LocalElement) -> Fraction:
    if e.delta_power:
        raise EvalError("element has a pole at the origin")
    return e.numerator.coeff(0, 0)


# -- canonical text form ----------------------------------------------------


def _render_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def render_poly(p: BiPoly) -> str:
    """Canonical text: ``c * z^a * zb^b`` terms joined by `` + ``.

    Terms are ordered by total degree, then by z-exponent descending. The
    coefficient is always printed (signs folded into it); variables with
    exponent 0 are omitted and exponent 1 is written without ``^``.
    """
    if p.is_zero():
        return "0"
    parts = []
    for (a, b), c in p.items():
        factors = [_render_rational(c)]
        if a:
            factors.append("z" if a == 1 else f"z^{a}")
        if b:
            factors.append("zb" if b == 1 else f"zb^{b}")
        parts.append(" * ".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(zb|z)|(\^)|(\*)|(\+)|(-)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        num, var, caret, star, plus, minus, bad = m.groups()
        if bad is not None:
            raise ParseError(f"unexpected character {bad!r}", text, start)
        kind = "num" if num else "var" if var else "^" if caret else "*" if star else "+" if plus else "-"
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_poly(text: str) -> BiPoly:
    """Parse polynomial text in variables ``z`` and ``zb``.

    Accepts the canonical form produced by :func:`render_poly` and the usual
    shorthands (omitted coefficient, omitted ``^1``, binary minus,
    arbitrary whitespace). Errors carry the character position.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def parse_factor():
        kind, val, pos = take()
        if kind == "num":
            if "/" in val and int(val.split("/")[1]) == 0:
                raise ParseError("zero denominator", text, pos)
            return BiPoly.const(Fraction(val))
        if kind == "var":
            exp = 1
            if peek()[0] == "^":
                take()
                ek, ev, epos = take()
                if ek != "num" or "/" in ev:
                    raise ParseError("expected non-negative integer exponent", text, epos)
                exp = int(ev)
            return BiPoly.monomial(exp, 0) if val == "z" else BiPoly.monomial(0, exp)
        if kind == "end":
            raise ParseError("unexpected end of input", text, pos)
        raise ParseError(f"unexpected {val!r}", text, pos)

    def parse_term():
        sign = 1
        while peek()[0] in "+-":
            if take()[0] == "-":
                sign = -sign
        term = parse_factor()
        while peek()[0] == "*":
            take()
            term = term * parse_factor()
        return term if sign > 0 else -term

    if peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)
    total = parse_term()
    while peek()[0] != "end":
        kind, val, pos = peek()
        if kind not in "+-":
            raise ParseError(f"expected '+' or '-', got {val!r}", text, pos)
        take()
        t = parse_term()
        total = total + t if kind == "+" else total - t
    return total


def poly_to_json(p: BiPoly) -> list:
    """Exact term list ``[[a, b, "p/q"], ...]`` in canonical order."""
    return [[a, b, _render_rational(c)] for (a, b), c in p.items()]


def poly_from_json(obj) -> BiPoly:
    if isinstance(obj, str):
        return parse_poly(obj)
    return BiPoly({(int(a), int(b)): Fraction(c) for a, b, c in obj})
