"""Exact integer Laurent polynomials.

Two variables are used across the package: ``t_half`` (exponents counted in
half-steps, so key ``e`` means ``t^(e/2)``) for the Jones polynomial, ``z``
for the Conway polynomial, and ``A`` for the raw Kauffman bracket.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

VARIABLES = ("t_half", "z", "A")


def _trim(coeffs: Mapping[int, int]) -> dict[int, int]:
    return {int(e): int(c) for e, c in coeffs.items() if c != 0}


@dataclass(frozen=True)
class LaurentPolynomial:
    """Immutable Laurent polynomial with integer coefficients."""

    variable: str
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"unknown variable {self.variable!r}")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def constant(cls, value: int, variable: str = "t_half") -> "LaurentPolynomial":
        return cls(variable, {0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, variable: str = "t_half") -> "LaurentPolynomial":
        return cls(variable, {exponent: coeff})

    def __hash__(self):
        return hash((self.variable, tuple(sorted(self.coeffs.items()))))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == _trim({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.variable == other.variable and self.coeffs == other.coeffs

    def _check(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial(self.variable, {0: other})
        if other.variable != self.variable:
            raise ValueError(f"variable mismatch: {self.variable} vs {other.variable}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.variable, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.variable, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(self.variable, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial(self.variable, {-e: c}) ** (-k)
        result = LaurentPolynomial(self.variable, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_divide(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Long division that must leave no remainder."""
        divisor = self._check(divisor)
        if not divisor.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        dlo, dhi = divisor.min_degree, divisor.max_degree
        lead = divisor.coeffs[dhi]
        rem = dict(self.coeffs)
        quot: dict[int, int] = {}
        floor = self.min_degree - dlo
        while rem:
            top = max(rem)
            if top - dhi < floor:
                break
            c, r = divmod(rem[top], lead)
            if r:
                raise ValueError("inexact division")
            shift = top - dhi
            quot[shift] = c
            for e, dc in divisor.coeffs.items():
                v = rem.get(e + shift, 0) - c * dc
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        if rem:
            raise ValueError("inexact division")
        return LaurentPolynomial(self.variable, quot)

    @property
    def min_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    @property
    def max_degree(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exponent: int) -> int:
        return self.coeffs.get(exponent, 0)

    def substitute_inverse(self) -> "LaurentPolynomial":
        """Apply the variable change x -> 1/x."""
        return LaurentPolynomial(self.variable, {-e: c for e, c in self.coeffs.items()})

    def scale_exponents(self, factor: int, variable: str | None = None) -> "LaurentPolynomial":
        return LaurentPolynomial(variable or self.variable, {e * factor: c for e, c in self.coeffs.items()})

    def evaluate(self, value):
        """Evaluate at a number; for ``t_half`` the argument is t^(1/2)."""
        return sum(c * value ** e for e, c in self.coeffs.items())

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"LaurentPolynomial({self.variable!r}, {dict(sorted(self.coeffs.items()))})"


def _symbol(variable: str) -> str:
    return {"t_half": "t", "z": "z", "A": "A"}[variable]


def format_polynomial(p: LaurentPolynomial) -> str:
    """Serialize as ``coeff*x^p`` terms sorted by descending exponent.

    For ``t_half`` the exponent is written as an integer when whole and as
    ``p/2`` otherwise, e.g. ``-1*t^4 + 1*t^3 + 1*t^1`` or ``-1*t^(1/2)``.
    """
    if not p.coeffs:
        return "0"
    sym = _symbol(p.variable)
    parts = []
    for e in sorted(p.coeffs, reverse=True):
        c = p.coeffs[e]
        if p.variable == "t_half":
            exp = str(e // 2) if e % 2 == 0 else f"({e}/2)"
        else:
            exp = str(e)
        term = f"{abs(c)}*{sym}^{exp}"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d+)\*([tzA])\^(\(?-?\d+(?:/2)?\)?)")


def parse_polynomial(text: str) -> LaurentPolynomial:
    text = text.strip()
    if text == "0":
        return LaurentPolynomial("t_half")
    coeffs: dict[int, int] = {}
    variable = None
    pos = 0
    for m in _TERM.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse polynomial near {text[pos:m.start()]!r}")
        pos = m.end()
        sign, c, sym, exp = m.groups()
        var = {"t": "t_half", "z": "z", "A": "A"}[sym]
        if variable not in (None, var):
            raise ValueError("mixed variables in polynomial")
        variable = var
        exp = exp.strip("()")
        if var == "t_half":
            e = int(exp[:-2]) if exp.endswith("/2") else 2 * int(exp)
        else:
            e = int(exp)
        coeffs[e] = coeffs.get(e, 0) + (-1 if sign == "-" else 1) * int(c)
    if text[pos:].strip() or variable is None:
        raise ValueError(f"cannot parse polynomial {text!r}")
    return LaurentPolynomial(variable, coeffs)
