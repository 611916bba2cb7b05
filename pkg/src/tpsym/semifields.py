"""Semifield carriers for evaluating subtraction-free expressions.

Each carrier bundles add/mul/div (and sqrt where supported) together with
``from_const``, which interprets a positive rational constant of an
expression tree: literally for arithmetic carriers, as valuation zero for
the tropical ones, and as the unique element of the trivial semifield.
"""

from __future__ import annotations

from fractions import Fraction

from . import scalars
from .puiseux import PuiseuxScalar


class SemifieldError(ValueError):
    pass


class Semifield:
    tag = "abstract"
    has_sqrt = True

    def from_const(self, c: Fraction):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def sqrt(self, a):
        raise SemifieldError(f"{self.tag} has no square root")

    def equal(self, a, b) -> bool:
        return a == b

    def __repr__(self):
        return f"<semifield {self.tag}>"


class PositiveRational(Semifield):
    """Positive rationals; sqrt promotes into the scalar tower."""
    tag = "positive-rational"

    def from_const(self, c):
        return Fraction(c)

    def add(self, a, b):
        return scalars.add(a, b)

    def mul(self, a, b):
        return scalars.mul(a, b)

    def div(self, a, b):
        return scalars.div(a, b)

    def sqrt(self, a):
        return scalars.sqrt(a)

    def equal(self, a, b):
        return scalars.eq_exact(a, b)


class PositiveTower(PositiveRational):
    tag = "positive-tower"


class PuiseuxPositive(Semifield):
    tag = "puiseux-positive"

    def from_const(self, c):
        return PuiseuxScalar.constant(c)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def sqrt(self, a):
        return a.sqrt()

    def equal(self, a, b):
        # compare on the common accuracy window, coefficients to relative 2^-60
        if a.valuation != b.valuation:
            return False
        cut = min(a.valuation + a.window, b.valuation + b.window)
        da = {e: c for e, c in a.terms if e < cut}
        db = {e: c for e, c in b.terms if e < cut}
        scale = max(abs(a.terms[0][1]), abs(b.terms[0][1]))
        tol = scale * 2.0 ** -60
        for e in set(da) | set(db):
            if abs(da.get(e, 0) - db.get(e, 0)) > tol:
                return False
        return True


class TropicalQ(Semifield):
    """Min-plus rationals: + is min, * is +, / is -, sqrt halves."""
    tag = "tropical-q"

    def from_const(self, c):
        if Fraction(c) <= 0:
            raise SemifieldError("tropicalized constants come from positive rationals")
        return Fraction(0)

    def _check(self, a):
        return Fraction(a)

    def add(self, a, b):
        return min(self._check(a), self._check(b))

    def mul(self, a, b):
        return self._check(a) + self._check(b)

    def div(self, a, b):
        return self._check(a) - self._check(b)

    def sqrt(self, a):
        return self._check(a) / 2


class TropicalZHalf(TropicalQ):
    """Min-plus dyadic rationals Z[1/2]; closed under halving by construction."""
    tag = "tropical-z-half"

    def _check(self, a):
        a = Fraction(a)
        if a.denominator & (a.denominator - 1):
            raise SemifieldError(f"{a} is not in Z[1/2]")
        return a


class TropicalZ(TropicalQ):
    """Min-plus integers; sqrt only defined on even values."""
    tag = "tropical-z"

    def _check(self, a):
        a = Fraction(a)
        if a.denominator != 1:
            raise SemifieldError(f"{a} is not an integer")
        return a

    def sqrt(self, a):
        a = self._check(a)
        if a.numerator % 2:
            raise SemifieldError(f"sqrt of odd tropical integer {a}")
        return a / 2


class Trivial(Semifield):
    """One-element semifield; every operation collapses."""
    tag = "trivial"
    ONE = ()

    def from_const(self, c):
        return self.ONE

    def add(self, a, b):
        return self.ONE

    def mul(self, a, b):
        return self.ONE

    def div(self, a, b):
        return self.ONE

    def sqrt(self, a):
        return self.ONE


SEMIFIELDS = {
    "positive-rational": PositiveRational,
    "positive-tower": PositiveTower,
    "puiseux-positive": PuiseuxPositive,
    "tropical-q": TropicalQ,
    "tropical-z-half": TropicalZHalf,
    "tropical-z": TropicalZ,
    "trivial": Trivial,
}


def semifield(tag: str) -> Semifield:
    if tag not in SEMIFIELDS:
        raise SemifieldError(f"unknown semifield {tag!r}; have {sorted(SEMIFIELDS)}")
    return SEMIFIELDS[tag]()
