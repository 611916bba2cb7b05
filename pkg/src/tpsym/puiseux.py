"""Truncated positive Puiseux series with exact valuation bookkeeping.

A scalar is a finite sum of terms ``coeff * xi^exp`` with strictly
increasing rational exponents and a positive leading coefficient, plus a
``window``: the series is guaranteed accurate for exponents below
``valuation + window``.  Coefficients are floats at high precision
(mpmath); exponents are exact Fractions, so valuations of subtraction-free
expressions are exact regardless of coefficient rounding.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

DEFAULT_WINDOW = Fraction(6)
MAX_TERMS = 8
COEFF_PREC = 120


def _mpf(x):
    with mpmath.workprec(COEFF_PREC):
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)


class PuiseuxScalar:
    __slots__ = ("terms", "window")

    def __init__(self, terms, window=DEFAULT_WINDOW):
        # terms: iterable of (Fraction exponent, coefficient)
        merged: dict[Fraction, object] = {}
        with mpmath.workprec(COEFF_PREC):
            for e, c in terms:
                e = Fraction(e)
                cur = merged.get(e)
                c = c if isinstance(c, mpmath.mpf) else _mpf(c)
                merged[e] = c if cur is None else cur + c
        terms = sorted((e, c) for e, c in merged.items() if c != 0)
        if not terms:
            raise ValueError("zero Puiseux scalar is not a semifield element")
        v = terms[0][0]
        window = Fraction(window)
        self.terms = tuple((e, c) for e, c in terms if e < v + window)[:MAX_TERMS]
        self.window = window
        if not self.terms[0][1] > 0:
            raise ValueError("leading coefficient must be positive")

    @classmethod
    def constant(cls, c) -> "PuiseuxScalar":
        return cls([(Fraction(0), c)])

    @classmethod
    def monomial(cls, coeff, exp) -> "PuiseuxScalar":
        return cls([(Fraction(exp), coeff)])

    @property
    def valuation(self) -> Fraction:
        return self.terms[0][0]

    def __add__(self, other: "PuiseuxScalar") -> "PuiseuxScalar":
        w = min(self.valuation + self.window, other.valuation + other.window)
        v = min(self.valuation, other.valuation)
        return PuiseuxScalar(list(self.terms) + list(other.terms), w - v)

    def __mul__(self, other: "PuiseuxScalar") -> "PuiseuxScalar":
        w = min(self.window, other.window)
        with mpmath.workprec(COEFF_PREC):
            out = [(e1 + e2, c1 * c2)
                   for e1, c1 in self.terms for e2, c2 in other.terms]
        return PuiseuxScalar(out, w)

    def _inverse(self) -> "PuiseuxScalar":
        with mpmath.workprec(COEFF_PREC):
            v, c0 = self.terms[0]
            # 1 / (c0 xi^v (1+u)) with val(u) > 0
            u = [(e - v, c / c0) for e, c in self.terms[1:]]
            out = {Fraction(0): _mpf(1)}
            power = [(Fraction(0), _mpf(1))]
            sign = -1
            k = 0
            while power and k < 40:
                k += 1
                power = _trunc([(e1 + e2, c1 * c2)
                                for e1, c1 in power for e2, c2 in u], self.window)
                if not power:
                    break
                for e, c in power:
                    out[e] = out.get(e, _mpf(0)) + sign * c
                sign = -sign
            inv = [(e - v, c / c0) for e, c in out.items()]
        return PuiseuxScalar(inv, self.window)

    def __truediv__(self, other: "PuiseuxScalar") -> "PuiseuxScalar":
        return self * other._inverse()

    def sqrt(self) -> "PuiseuxScalar":
        with mpmath.workprec(COEFF_PREC):
            v, c0 = self.terms[0]
            u = [(e - v, c / c0) for e, c in self.terms[1:]]
            # (1+u)^{1/2} by binomial series
            out = {Fraction(0): _mpf(1)}
            power = [(Fraction(0), _mpf(1))]
            coeff = mpmath.mpf(1)
            k = 0
            while power and k < 64:
                k += 1
                coeff = coeff * (mpmath.mpf(1) / 2 - (k - 1)) / k
                power = _trunc([(e1 + e2, c1 * c2)
                                for e1, c1 in power for e2, c2 in u], self.window)
                if not power:
                    break
                for e, c in power:
                    out[e] = out.get(e, _mpf(0)) + coeff * c
            root = mpmath.sqrt(c0)
            res = [(v / 2 + e, root * c) for e, c in out.items()]
        return PuiseuxScalar(res, self.window)

    def leading(self):
        return self.terms[0]

    def __repr__(self):
        parts = [f"{mpmath.nstr(c, 8)}*xi^({e})" for e, c in self.terms[:4]]
        more = "+..." if len(self.terms) > 4 else ""
        return " + ".join(parts) + more


def _trunc(terms, window):
    merged: dict[Fraction, object] = {}
    with mpmath.workprec(COEFF_PREC):
        for e, c in terms:
            cur = merged.get(e)
            merged[e] = c if cur is None else cur + c
    if not merged:
        return []
    out = sorted((e, c) for e, c in merged.items() if c != 0)
    if not out:
        return []
    cutoff = out[0][0] + window
    return [(e, c) for e, c in out if e < cutoff][:MAX_TERMS]


def valuation(x: PuiseuxScalar) -> Fraction:
    """Leading exponent; a semifield homomorphism onto min-plus Q."""
    return x.valuation
