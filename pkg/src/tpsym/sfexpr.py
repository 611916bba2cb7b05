"""Subtraction-free expression trees with square roots.

Trees are built from variables, positive rational constants, and the nodes
+, *, /, sqrt.  They evaluate over any semifield supplying those operations;
evaluating over a tropical semifield IS tropicalization (constants map to
valuation zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SfExpr:
    def __add__(self, other):
        return Add(self, _coerce(other))

    def __radd__(self, other):
        return Add(_coerce(other), self)

    def __mul__(self, other):
        return Mul(self, _coerce(other))

    def __rmul__(self, other):
        return Mul(_coerce(other), self)

    def __truediv__(self, other):
        return Div(self, _coerce(other))

    def __rtruediv__(self, other):
        return Div(_coerce(other), self)

    def sqrt(self):
        return Sqrt(self)


def _coerce(x) -> SfExpr:
    if isinstance(x, SfExpr):
        return x
    return Const(Fraction(x))


@dataclass(frozen=True)
class Var(SfExpr):
    k: int

    def __repr__(self):
        return f"x{self.k + 1}"


@dataclass(frozen=True)
class Const(SfExpr):
    value: Fraction

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("constants in subtraction-free expressions must be positive")

    def __repr__(self):
        return str(self.value)


@dataclass(frozen=True)
class Add(SfExpr):
    a: SfExpr
    b: SfExpr

    def __repr__(self):
        return f"({self.a!r}+{self.b!r})"


@dataclass(frozen=True)
class Mul(SfExpr):
    a: SfExpr
    b: SfExpr

    def __repr__(self):
        return f"({self.a!r}*{self.b!r})"


@dataclass(frozen=True)
class Div(SfExpr):
    a: SfExpr
    b: SfExpr

    def __repr__(self):
        return f"({self.a!r}/{self.b!r})"


@dataclass(frozen=True)
class Sqrt(SfExpr):
    a: SfExpr

    def __repr__(self):
        return f"sqrt({self.a!r})"


def evaluate(expr: SfExpr, semifield, args, _cache=None):
    """Evaluate over a semifield; args is the tuple of variable values.

    Shared subtrees are evaluated once (the trees are DAGs by construction).
    """
    if _cache is None:
        _cache = {}
    key = id(expr)
    if key in _cache:
        return _cache[key]
    if isinstance(expr, Var):
        out = args[expr.k]
    elif isinstance(expr, Const):
        out = semifield.from_const(expr.value)
    elif isinstance(expr, Add):
        out = semifield.add(evaluate(expr.a, semifield, args, _cache),
                            evaluate(expr.b, semifield, args, _cache))
    elif isinstance(expr, Mul):
        out = semifield.mul(evaluate(expr.a, semifield, args, _cache),
                            evaluate(expr.b, semifield, args, _cache))
    elif isinstance(expr, Div):
        out = semifield.div(evaluate(expr.a, semifield, args, _cache),
                            evaluate(expr.b, semifield, args, _cache))
    elif isinstance(expr, Sqrt):
        out = semifield.sqrt(evaluate(expr.a, semifield, args, _cache))
    else:
        raise TypeError(f"not an SfExpr: {expr!r}")
    _cache[key] = out
    return out


def evaluate_tuple(exprs, semifield, args):
    cache: dict = {}
    return tuple(evaluate(e, semifield, args, cache) for e in exprs)


def uses_sqrt(expr: SfExpr) -> bool:
    if isinstance(expr, Sqrt):
        return True
    if isinstance(expr, (Add, Mul, Div)):
        return uses_sqrt(expr.a) or uses_sqrt(expr.b)
    return False


def variables(expr: SfExpr) -> set[int]:
    if isinstance(expr, Var):
        return {expr.k}
    if isinstance(expr, (Add, Mul, Div)):
        return variables(expr.a) | variables(expr.b)
    if isinstance(expr, Sqrt):
        return variables(expr.a)
    return set()
