"""Sparse multivariate polynomials with exact coefficients.

One variable per cardinality-constrained predicate.  Coefficients are kept
as plain ints whenever possible (the common all-integer counting case) and
promoted to Fraction only when a weight forces it; both are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Coeff = Union[int, Fraction]


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MultiPoly:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: Mapping[tuple[int, ...], Coeff]):
        self.vars = vars
        cleaned = {}
        for exps, c in terms.items():
            c = _norm(c)
            if c != 0:
                cleaned[exps] = c
        self.terms = cleaned

    @classmethod
    def zero(cls, vars: tuple[str, ...] = ()) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def constant(cls, value: Coeff, vars: tuple[str, ...] = ()) -> "MultiPoly":
        return cls(vars, {(0,) * len(vars): value})

    @classmethod
    def variable(cls, name: str, vars: tuple[str, ...]) -> "MultiPoly":
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} is not among {vars}")
        return cls(vars, {exps: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Coeff:
        if not self.terms:
            return 0
        [(exps, c)] = self.terms.items()
        if any(e != 0 for e in exps):
            raise ValueError("polynomial is not constant")
        return c

    def coefficient(self, exps: tuple[int, ...]) -> Coeff:
        return self.terms.get(exps, 0)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.vars != other.vars:
            raise ValueError("variable mismatch")
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, 0) + c
        return MultiPoly(self.vars, out)

    def __mul__(self, other: "MultiPoly | Coeff") -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MultiPoly(self.vars, {})
            return MultiPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        if self.vars != other.vars:
            raise ValueError("variable mismatch")
        if not self.terms or not other.terms:
            return MultiPoly(self.vars, {})
        out: dict[tuple[int, ...], Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(1, self.vars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def evaluate(self, values: Mapping[str, Coeff]) -> Coeff:
        total: Coeff = 0
        for exps, c in self.terms.items():
            term = c
            for name, e in zip(self.vars, exps):
                if e:
                    term *= values[name] ** e
            total += term
        return _norm(total)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.vars, exps)
                if e
            )
            bits.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(bits)
