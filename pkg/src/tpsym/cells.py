"""Cell parametrizations and coordinate-level actions.

kappa builds the palindromic products x_{i_k*}(a_k)...x_{i_1*}(a_1) t(opt)
x_{i_1}(a_1)...x_{i_k}(a_k); psi the plain products.  Type-A unipotent
matrices can be factored back to coordinates by left peeling against
boolean support patterns, which also classifies cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import scalars
from .cartan import CartanDatum
from .involutions import (InvolutionWord, JointWord, TwistedInvolution,
                          append_letter, involution_words, target_of_word)
from .models import GroupElement, PinnedModel, mat_identity, mat_mul
from .weyl import WeylElement, weyl_group


class CellError(ValueError):
    pass


@dataclass(frozen=True)
class CellPoint:
    """Coordinates of a point in a cell with respect to a parametrizing word."""
    kind: str                    # "U+" | "U-" | "G"
    word: tuple                  # reduced / involution / joint word
    coords: tuple
    index: object = None         # WeylElement, TwistedInvolution or pair
    torus_coords: tuple = ()     # G-kind only

    def __post_init__(self):
        if len(self.coords) != len(self.word):
            raise CellError("coordinate count does not match the word")
        for c in self.coords:
            if scalars.is_exact(c) and not scalars.is_positive(c):
                raise CellError("cell coordinates must be strictly positive")


# -- forward parametrizations ------------------------------------------------


def _check_positive(coords):
    for c in coords:
        if scalars.is_exact(c) and not scalars.is_positive(c):
            raise CellError("coordinates must be strictly positive")


def psi_plus(model: PinnedModel, word, coords) -> GroupElement:
    """Product x_{i_1}(a_1)...x_{i_k}(a_k) over a reduced word."""
    _check_positive(coords)
    g = weyl_group(model.datum)
    if g.len_of(g.id_of_word(word)) != len(word):
        raise CellError(f"word {word} is not reduced")
    out = model.identity()
    for i, a in zip(word, coords):
        out = out * model.gen_x(i, a)
    return out


def psi_minus(model: PinnedModel, word, coords) -> GroupElement:
    _check_positive(coords)
    g = weyl_group(model.datum)
    if g.len_of(g.id_of_word(word)) != len(word):
        raise CellError(f"word {word} is not reduced")
    out = model.identity()
    for i, a in zip(word, coords):
        out = out * model.gen_y(i, a)
    return out


def _kappa_gen(model, word, coords, gen, core=None) -> GroupElement:
    st = model.datum.star
    out = core if core is not None else model.identity()
    for i, a in zip(word, coords):
        out = gen(st[i], a) * out * gen(i, a)
    return out


def kappa(model: PinnedModel, word, coords) -> GroupElement:
    """Palindromic x-product over an involution word; tau-fixed by construction."""
    _check_positive(coords)
    iw = InvolutionWord.of(model.datum, word)   # validates minimality
    return _kappa_gen(model, word, coords, model.gen_x)


def kappa_minus(model: PinnedModel, word, coords) -> GroupElement:
    _check_positive(coords)
    InvolutionWord.of(model.datum, word)
    return _kappa_gen(model, word, coords, model.gen_y)


def kappa_joint(model: PinnedModel, joint: JointWord | tuple, coords,
                torus: GroupElement) -> GroupElement:
    """Sandwich product over a joint word around a tau-fixed positive torus element."""
    letters = joint.letters if isinstance(joint, JointWord) else tuple(joint)
    _check_positive(coords)
    if len(coords) != len(letters):
        raise CellError("coordinate count does not match the joint word")
    if not model.is_tau_fixed(torus):
        raise CellError("torus part must be tau-fixed")
    st = model.datum.star
    out = torus
    for (i, sign), a in zip(letters, coords):
        gen = model.gen_x if sign == 1 else model.gen_y
        out = gen(st[i], a) * out * gen(i, a)
    return out


def kappa_half(model: PinnedModel, joint, coords, torus_half: GroupElement) -> GroupElement:
    """h with kappa_joint(...) = h * tau(h), given t = torus_half * tau(torus_half)."""
    letters = joint.letters if isinstance(joint, JointWord) else tuple(joint)
    st = model.datum.star
    out = torus_half
    for (i, sign), a in zip(letters, coords):
        gen = model.gen_x if sign == 1 else model.gen_y
        out = gen(st[i], a) * out
    return out


# -- boolean support patterns --------------------------------------------------


@lru_cache(maxsize=None)
def _bool_gen(model_key, i):
    model, = _MODEL_REGISTRY[model_key]
    g = model.gen_x(i, Fraction(1))
    n = model.dim
    return tuple(tuple(1 if scalars.sign(g.matrix[r][c]) != 0 else 0
                       for c in range(n)) for r in range(n))


_MODEL_REGISTRY: dict = {}


def _model_key(model: PinnedModel):
    key = (model.name, model.datum)
    _MODEL_REGISTRY[key] = (model,)
    return key


def _bool_mul(a, b):
    n = len(a)
    return tuple(tuple(1 if any(a[r][k] and b[k][c] for k in range(n)) else 0
                       for c in range(n)) for r in range(n))


@lru_cache(maxsize=None)
def support_pattern(model_key, word):
    """Boolean entry pattern of psi_plus over positive coordinates."""
    model, = _MODEL_REGISTRY[model_key]
    n = model.dim
    out = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
    for i in word:
        out = _bool_mul(out, _bool_gen(model_key, i))
    return out


# -- type A factorization --------------------------------------------------------


def _is_type_a(model: PinnedModel) -> bool:
    return model.datum.type_label.startswith("A") and model.name[:2] in ("SL", "GL")


from itertools import combinations


@lru_cache(maxsize=None)
def _cell_sample(model_key, word):
    """One generic positive sample of psi over the word (exact).

    A minor of a totally nonnegative product vanishes at one positive sample
    iff it vanishes on the whole cell, so this sample decides minor supports.
    """
    model, = _MODEL_REGISTRY[model_key]
    import random
    rng = random.Random(hash(word) & 0xFFFF | 1)
    coords = [Fraction(rng.randint(1, 60), rng.randint(1, 7)) for _ in word]
    return psi_plus(model, word, coords).matrix if word else mat_identity(model.dim)


def _minor(mat, rows, cols):
    # Laplace expansion along the first row; matrices here are tiny
    if len(rows) == 1:
        return mat[rows[0]][cols[0]]
    out = None
    for j, c in enumerate(cols):
        term = scalars.mul(mat[rows[0]][c], _minor(mat, rows[1:], cols[:j] + cols[j + 1:]))
        term = scalars.mul(term, (-1) ** j)
        out = term if out is None else scalars.add(out, term)
    return out


def _peel_parameter(model, key, mat, i, tail):
    """Unique a with x_i(-a) mat in the cell of the tail word (type A)."""
    n = model.dim
    sample = _cell_sample(key, tail)
    # row i of x_i(-a) mat is row_i - a row_{i+1}; any vanishing minor of the
    # tail cell that involves row i gives a linear condition on a
    for m in range(1, n):
        for rows in combinations(range(n), m):
            if i not in rows or i + 1 in rows:
                continue
            rows_shift = tuple(sorted(r if r != i else i + 1 for r in rows))
            for cols in combinations(range(n), m):
                if scalars.sign(_minor(sample, list(rows), list(cols))) != 0:
                    continue
                coeff = _minor(mat, list(rows_shift), list(cols))
                if scalars.sign(coeff) == 0:
                    continue
                shift_sign = (-1) ** (rows_shift.index(i + 1) - rows.index(i))
                base = _minor(mat, list(rows), list(cols))
                # minor(a) = base - a * shift_sign * coeff
                return scalars.div(base, scalars.mul(coeff, shift_sign))
    raise CellError("no peeling condition: element not in the claimed cell")


def factor_unipotent_A(model: PinnedModel, g: GroupElement, word):
    """Coordinates of an upper-unitriangular g over a reduced word (type A).

    Peels the first letter repeatedly; the parameter is determined by a
    vanishing minor of the shorter cell, linearly in the parameter.
    """
    if not _is_type_a(model):
        raise CellError("factorization is only offered in type A")
    wg = weyl_group(model.datum)
    if wg.len_of(wg.id_of_word(word)) != len(word):
        raise CellError(f"word {word} is not reduced")
    key = _model_key(model)
    mat = [row[:] for row in g.matrix]
    n = model.dim
    coords = []
    rest = tuple(word)
    while rest:
        i, tail = rest[0], rest[1:]
        a = _peel_parameter(model, key, mat, i, tail)
        if not scalars.is_positive(a):
            raise CellError("nonpositive parameter: element not in the claimed cell")
        for c in range(n):
            mat[i][c] = scalars.sub(mat[i][c], scalars.mul(a, mat[i + 1][c]))
        coords.append(a)
        rest = tail
    ident = mat_identity(n)
    for r in range(n):
        for c in range(n):
            if not scalars.eq_exact(mat[r][c], ident[r][c]):
                raise CellError("residue after peeling: element not in the claimed cell")
    return tuple(coords)


def classify_unipotent_A(model: PinnedModel, g: GroupElement) -> WeylElement:
    """The w with g in the totally nonnegative cell of w (type A)."""
    key = _model_key(model)
    wg = weyl_group(model.datum)
    n = model.dim
    pat = tuple(tuple(1 if scalars.sign(g.matrix[r][c]) != 0 else 0
                      for c in range(n)) for r in range(n))
    cands = [eid for eid in range(len(wg.elements))
             if support_pattern(key, wg.word_of(eid)) == pat]
    for eid in sorted(cands, key=lambda e: wg.len_of(e)):
        try:
            factor_unipotent_A(model, g, wg.word_of(eid))
            return WeylElement(wg, eid)
        except CellError:
            continue
    raise CellError("element lies in no totally nonnegative cell")


def classify_cell(model: PinnedModel, g: GroupElement) -> TwistedInvolution:
    """Twisted involution indexing the tau-fixed cell of g (type A)."""
    if not model.is_tau_fixed(g):
        raise CellError("element is not tau-fixed")
    w = classify_unipotent_A(model, g)
    return TwistedInvolution.of(model.datum, w)


# -- alpha maps -------------------------------------------------------------------


def conjugation_step(model: PinnedModel, point: CellPoint, i: int, a):
    """Twisted action of x_{i*}(a): g -> x_{i*}(a) g x_i(a), coordinates updated.

    Appending case (norm grows): the word extends by the letter i.  Stable
    case (i is a descent): requires the point's word to end in i; the last
    coordinate gains a.
    """
    if not scalars.is_positive(a):
        raise CellError("step parameter must be positive")
    datum = model.datum
    tw = point.index
    target = append_letter(datum, tw.element, i)
    if target.length > tw.element.length:
        new_tw = TwistedInvolution.of(datum, target)
        return CellPoint("U+", point.word + (i,), point.coords + (a,), new_tw)
    # stable case
    if not point.word or point.word[-1] != i:
        raise CellError("stable step needs a parametrizing word ending in the letter")
    new_last = scalars.add(point.coords[-1], a)
    return CellPoint("U+", point.word, point.coords[:-1] + (new_last,), tw)


def alpha_inverse(model: PinnedModel, g: GroupElement, w: TwistedInvolution, i: int):
    """Invert the appending map of 2.2: find (u, a) with x_{i*}(a) u x_i(a) = g.

    Hypotheses: s_{i*} w = w s_i and |w| = |s_{i*} w| + 1.  Type A only; a is
    located by exact elimination against minor support patterns of the
    smaller cell, then certified by factorization.
    """
    if not _is_type_a(model):
        raise CellError("alpha_inverse is only offered in type A")
    datum = model.datum
    wg = weyl_group(datum)
    st = datum.star
    eid = w.element.eid
    left = wg.mul_gen(eid, st[i], side="left")
    right = wg.mul_gen(eid, i, side="right")
    if left != right or wg.len_of(left) != w.element.length - 1:
        raise CellError("case hypotheses of the appending map fail")
    smaller = WeylElement(wg, left)
    small_word = smaller.word
    cands = _alpha_candidates(model, g, i, small_word)
    results = []
    for a in cands:
        if not scalars.is_positive(a):
            continue
        u = model.gen_x(st[i], scalars.mul(a, -1)) * g * model.gen_x(i, scalars.mul(a, -1))
        try:
            coords = factor_unipotent_A(model, u, small_word)
        except CellError:
            continue
        results.append((a, u, coords))
    if not results:
        raise CellError("no admissible parameter found")
    uniq = [results[0]]
    for r in results[1:]:
        if not scalars.eq_exact(r[0], uniq[0][0]):
            uniq.append(r)
    if len(uniq) > 1:
        raise AssertionError("appending-map inversion is not unique")
    a, u, coords = uniq[0]
    tw = TwistedInvolution.of(datum, smaller)
    return CellPoint("U+", tuple(small_word), tuple(coords), tw), a


def _alpha_candidates(model, g, i, small_word):
    """Roots in a of entry/2x2-minor vanishing conditions for membership in
    the smaller cell; polynomial degree <= 2 with exact rational arithmetic."""
    st = model.datum.star
    n = model.dim
    key = _model_key(model)
    sup = support_pattern(key, small_word)
    # u(a) = x_{i*}(-a) g x_i(-a): rows st[i] and columns i+1 are linear in a;
    # build u as polynomials in a: u = (I - a E_{st[i],st[i]+1}) g (I - a E_{i,i+1})
    def poly_entry(r, c):
        # returns coefficient list [c0, c1, c2]
        base = g.matrix[r][c]
        lin = Fraction(0)
        quad = Fraction(0)
        if r == st[i]:
            lin = scalars.sub(lin, g.matrix[r + 1][c])
        if c == i + 1:
            lin = scalars.sub(lin, g.matrix[r][c - 1])
        if r == st[i] and c == i + 1:
            quad = g.matrix[r + 1][c - 1]
        return [base, lin, quad]

    cands = []
    for r in range(n):
        for c in range(n):
            if r != c and sup[r][c] == 0:
                cands.extend(_poly_roots(poly_entry(r, c)))
    # 2x2 minors whose support vanishes on the smaller cell
    sup2 = _minor_support(key, small_word)
    for (r1, r2, c1, c2), alive in sup2.items():
        if not alive:
            p1, p2 = poly_entry(r1, c1), poly_entry(r2, c2)
            q1, q2 = poly_entry(r1, c2), poly_entry(r2, c1)
            det = _poly_sub(_poly_mul(p1, p2), _poly_mul(q1, q2))
            cands.extend(_poly_roots(det))
    out = []
    for a in cands:
        if scalars.is_positive(a) and not any(scalars.eq_exact(a, b) for b in out):
            out.append(a)
    return out


@lru_cache(maxsize=None)
def _minor_support(model_key, word):
    """Which 2x2 minors are generically nonzero on the cell of the word."""
    model, = _MODEL_REGISTRY[model_key]
    n = model.dim
    # evaluate psi at generic sample points; a minor vanishing at two random
    # samples of a subtraction-free parametrization vanishes identically
    import random
    rng = random.Random(len(word) * 7919 + 13)
    out = {}
    mats = []
    for _ in range(2):
        coords = [Fraction(rng.randint(1, 50), rng.randint(1, 7)) for _ in word]
        mats.append(psi_plus(model, word, coords).matrix)
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            for c1 in range(n):
                for c2 in range(c1 + 1, n):
                    alive = False
                    for m in mats:
                        det = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
                        if det != 0:
                            alive = True
                    out[(r1, r2, c1, c2)] = alive
    return out


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = scalars.add(out[i + j], scalars.mul(a, b))
    return out


def _poly_sub(p, q):
    n = max(len(p), len(q))
    p = p + [Fraction(0)] * (n - len(p))
    q = q + [Fraction(0)] * (n - len(q))
    return [scalars.sub(a, b) for a, b in zip(p, q)]


def _poly_roots(p):
    while p and scalars.is_exact(p[-1]) and scalars.sign(p[-1]) == 0:
        p = p[:-1]
    if len(p) <= 1:
        return []
    if len(p) == 2:
        return [scalars.div(scalars.mul(p[0], -1), p[1])]
    if len(p) == 3:
        disc = scalars.sub(scalars.mul(p[1], p[1]),
                           scalars.mul(4, scalars.mul(p[2], p[0])))
        if scalars.sign(disc) < 0:
            return []
        r = scalars.sqrt(disc)
        if isinstance(r, scalars.IntervalScalar):
            return []
        return [scalars.div(scalars.add(scalars.mul(p[1], -1), r), scalars.mul(2, p[2])),
                scalars.div(scalars.sub(scalars.mul(p[1], -1), r), scalars.mul(2, p[2]))]
    raise CellError("elimination degree exceeded 2")
