"""JSON encoding of scalars, matrices, cell points and graphs.

Exact rationals are numerator/denominator strings, quadratic-extension
elements are (p, q, d) triples, intervals carry decimal midpoint, radius
and precision.  Words use 1-based letters on the wire.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from . import scalars
from .scalars import IntervalScalar, QuadExt


def encode_scalar(x):
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, QuadExt):
        return {"p": encode_scalar(x.p), "q": encode_scalar(x.q), "d": x.d}
    if isinstance(x, IntervalScalar):
        return {"mid": mpmath.nstr(x.iv.mid, 40),
                "rad": mpmath.nstr(x.iv.delta / 2, 8),
                "prec": x.ctx.prec}
    raise TypeError(f"cannot encode {x!r}")


def decode_scalar(v):
    if isinstance(v, str):
        if "/" in v:
            num, den = v.split("/")
            return Fraction(int(num), int(den))
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, dict) and "d" in v:
        return QuadExt(decode_scalar(v["p"]), decode_scalar(v["q"]), v["d"])
    raise TypeError(f"cannot decode scalar from {v!r}")


def encode_matrix(m):
    return [[encode_scalar(x) for x in row] for row in m]


def decode_matrix(rows):
    return [[decode_scalar(x) for x in row] for row in rows]


def encode_word(word):
    return [i + 1 for i in word]


def decode_word(spec):
    if isinstance(spec, str):
        parts = [p for chunk in spec.split(",") for p in chunk.split()] if spec else []
        letters = [int(p) for p in parts]
    else:
        letters = [int(p) for p in spec]
    if any(i < 1 for i in letters):
        raise ValueError("letters are 1-based")
    return tuple(i - 1 for i in letters)


def encode_cell_point(pt):
    out = {"kind": pt.kind, "word": encode_word(pt.word),
           "coords": [encode_scalar(c) for c in pt.coords]}
    if pt.index is not None:
        elem = getattr(pt.index, "element", pt.index)
        out["index"] = encode_word(elem.word)
    if pt.torus_coords:
        out["torus"] = [encode_scalar(c) for c in pt.torus_coords]
    return out
