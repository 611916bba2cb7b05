"""Transition maps between parametrizations: standard braid moves over any
semifield and the non-standard involution moves with their closed forms.

Move tuples come in two coordinate orders.  The *named* order follows the
defining matrix identities (the tuples used by the CLI and the conservation
laws); the *word* order is the coordinate order of the involution word the
move rewrites.  Wiring permutations translate between the two.

Non-standard moves carry the sub-datum pattern they apply to: a small
Cartan matrix with a star involution, a source word and a target word in
pattern-local letters.  Braid graphs match these patterns on prefixes of
involution words after relabeling through any Cartan-and-star isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import scalars
from .scalars import UndecidableComparison
from .semifields import PositiveTower, Semifield, SemifieldError
from .sfexpr import Const, SfExpr, Sqrt, Var, evaluate

TOWER = PositiveTower()


class MoveError(ValueError):
    pass


class InternalInconsistency(AssertionError):
    """The paper's uniqueness of the admissible root failed at runtime."""


@dataclass(frozen=True)
class MoveKind:
    tag: str
    direction: str   # forward | backward
    arity: int

    def __post_init__(self):
        if self.direction not in ("forward", "backward"):
            raise MoveError(f"bad direction {self.direction!r}")
        if ARITY[self.tag] != self.arity:
            raise MoveError(f"arity {self.arity} does not match {self.tag}")


ARITY = {
    "Std-A1A1": 2, "Std-A2": 3, "Std-B2": 4, "Std-G2": 6,
    "NS-4.3(i)": 2, "NS-4.4": 2, "NS-4.5": 3, "NS-4.6": 4,
    "NS-4.7": 6, "NS-4.8": 6, "NS-4.9": 8,
}

NS_LABEL = {
    "NS-4.3(i)": "NS-4.3(i)", "NS-4.4": "NS-4.3(ii)", "NS-4.5": "NS-4.3(iii)",
    "NS-4.6": "NS-4.3(iv)", "NS-4.7": "NS-4.3(v)", "NS-4.8": "NS-4.3(v)",
    "NS-4.9": "NS-4.3(vi)",
}


# -- expression-tree closed forms (named order) ------------------------------

def _vars(n):
    return tuple(Var(k) for k in range(n))


def _std_a2_exprs():
    a, b, c = _vars(3)
    s = a + c
    return (b * c / s, s, a * b / s)


def _std_b2_short_exprs():
    # first letter i with <alpha_j, alpha_i^vee> = -2
    t1, t2, t3, t4 = _vars(4)
    pi1 = t1 * t2 + t1 * t4 + t3 * t4
    pi2 = t1 * t1 * t2 + t1 * t1 * t4 + Const(2) * t1 * t3 * t4 + t3 * t3 * t4
    return (t2 * t3 * t3 * t4 / pi2, pi2 / pi1, pi1 * pi1 / pi2, t1 * t2 * t3 / pi1)


def _std_b2_long_exprs():
    t1, t2, t3, t4 = _vars(4)
    s1 = t1 * t2 + t1 * t4 + t3 * t4
    s2 = t1 * t2 * t2 + Const(2) * t1 * t2 * t4 + t1 * t4 * t4 + t3 * t4 * t4
    return (t2 * t3 * t4 / s1, s1 * s1 / s2, s2 / s1, t1 * t2 * t2 * t3 / s2)


def _ns44_exprs():
    a, b = _vars(2)
    delta = a * a + Const(2) * a * b
    rt = Sqrt(delta)
    return (b * b / (a + b + rt), rt)


def _ns45_fwd_exprs():
    a, b, c = _vars(3)
    s = a + c
    return (b * c * c / (s * s), s, a * b * (a + Const(2) * c) / (s * s))


def _ns45_bwd_exprs():
    ap, bp, cp = _vars(3)
    delta = ap * bp * bp * (ap + cp)
    rt = Sqrt(delta)
    return (bp * bp * cp / (bp * (ap + cp) + rt), ap + cp, rt / (ap + cp))


def _ns46_fwd_exprs():
    a1, a2, a3, a2p = _vars(4)
    dp = a2 * a2 * (a1 + a3) * (a1 + a3) + Const(4) * a1 * a2 * a2p * a3
    rt = Sqrt(dp)
    den = Const(2) * (a2 + a2p)
    n1 = (a1 + a3) * a2 + Const(2) * a1 * a2p
    b1 = (n1 + rt) / den
    b3 = Const(2) * a2p * a3 * a3 / (a1 * a2 + a2 * a3 + Const(2) * a2p * a3 + rt)
    nsq = (n1 + rt) * (n1 + rt)
    b2p = Const(4) * a1 * a1 * a2p * (a2 + a2p) * (a2 + a2p) / nsq
    b2num = (a1 * a1 * a2 * a2 + a3 * a3 * a2 * a2 + Const(2) * a1 * a3 * a2 * a2
             + Const(4) * a1 * a2p * a2 * a3 + Const(2) * n1 * rt + dp)
    b2 = (a2 + a2p) * b2num / nsq
    return (b1, b2, b3, b2p)


def _ns46_bwd_exprs():
    b1, b2, b3, b2p = _vars(4)
    delta = b3 * b3 + b2 * b3 * (b1 + b3) / b2p
    rt = Sqrt(delta)
    a1 = b1 * (b1 + b3) / (b1 + rt)
    a3 = (b1 + b3) * rt / (b1 + rt)
    a2p = b2p * (b1 + rt) * (b1 + rt) / ((b1 + b3) * (b1 + b3))
    a2 = b2 * b2 * b1 / (b2 * b1 + b2 * b3 + Const(2) * b2p * b3 + Const(2) * b2p * rt)
    return (a1, a2, a3, a2p)


def _ns47_fwd_exprs():
    a, b, c, d, e, f = _vars(6)
    d0 = a * b + a * f + c * f
    abig = a * b * c + a * b * e + a * e * f + c * e * f
    bpnum = a * a * b + (a + c) * (a + c) * f
    ep = abig / d0
    bp = bpnum / d0
    ap = b * c * c * f / bpnum
    fp = e * e * f * d0 * d0 / (abig * abig)
    cpnum = a * b * (c + e) * (c + e) + e * f * (Const(2) * a * c + a * e
                                                 + Const(2) * c * c + Const(2) * c * e)
    cp = a * b * d0 * d0 * cpnum / (bpnum * abig * abig)
    return (ap, bp, cp, d, ep, fp)


STD_A2 = _std_a2_exprs()
STD_B2_SHORT = _std_b2_short_exprs()
STD_B2_LONG = _std_b2_long_exprs()
NS44_EX = _ns44_exprs()
NS45_FWD = _ns45_fwd_exprs()
NS45_BWD = _ns45_bwd_exprs()
NS46_FWD = _ns46_fwd_exprs()
NS46_BWD = _ns46_bwd_exprs()
NS47_FWD = _ns47_fwd_exprs()


def _ev_tuple(exprs, semifield, args):
    from .sfexpr import evaluate_tuple
    return evaluate_tuple(exprs, semifield, args)


# -- pivot machinery (tower only) --------------------------------------------


def _solve_quadratic(k2, k1, k0):
    """Real roots of k2 x^2 + k1 x + k0 over the scalar tower."""
    if scalars.sign(k2) == 0:
        if scalars.sign(k1) == 0:
            raise InternalInconsistency("degenerate pivot polynomial")
        return [scalars.div(scalars.mul(k0, -1), k1)]
    disc = scalars.sub(scalars.mul(k1, k1), scalars.mul(4, scalars.mul(k2, k0)))
    s = scalars.sign(disc)
    if s < 0:
        return []
    root = scalars.sqrt(disc)
    two_k2 = scalars.mul(2, k2)
    return [scalars.div(scalars.add(scalars.mul(k1, -1), root), two_k2),
            scalars.div(scalars.sub(scalars.mul(k1, -1), root), two_k2)]


def _all_positive(vals) -> bool:
    try:
        return all(scalars.sign(v) > 0 for v in vals)
    except UndecidableComparison:
        raise


def _unique_admissible(cands, what: str):
    good = [c for c in cands if c is not None]
    if not good:
        raise InternalInconsistency(f"no positive-output root for {what}")
    if len(good) > 1:
        raise InternalInconsistency(f"multiple admissible roots for {what}")
    return good[0]


def ns47_backward(vals):
    ap, bp, cp, dp, ep, fp = vals
    z = scalars.mul(scalars.mul(ep, ep), fp)
    up = scalars.add(scalars.add(ap, cp), fp)
    sp = scalars.add(bp, ep)
    a5 = scalars.add(scalars.add(scalars.mul(ap, bp), scalars.mul(ap, ep)),
                     scalars.add(scalars.mul(cp, ep), scalars.mul(ep, fp)))
    k2 = scalars.sub(scalars.mul(scalars.mul(ap, scalars.mul(bp, bp)),
                                 scalars.add(cp, fp)),
                     scalars.mul(z, up))
    k1 = scalars.mul(2, scalars.mul(z, scalars.add(scalars.mul(ap, bp),
                                                   scalars.mul(ep, up))))
    k0 = scalars.mul(-1, scalars.mul(z, scalars.add(
        scalars.mul(ap, scalars.mul(sp, sp)),
        scalars.mul(scalars.mul(ep, ep), scalars.add(cp, fp)))))
    cands = []
    for beta in _solve_quadratic(k2, k1, k0):
        try:
            if scalars.sign(beta) <= 0:
                cands.append(None)
                continue
            f = scalars.div(z, scalars.mul(beta, beta))
            b = scalars.sub(up, f)
            if scalars.sign(b) <= 0:
                cands.append(None)
                continue
            c = scalars.div(scalars.sub(a5, scalars.mul(beta, up)), b)
            a = scalars.sub(scalars.sub(sp, c), beta)
            out = (a, b, c, dp, beta, f)
            cands.append(out if _all_positive(out) else None)
        except UndecidableComparison:
            raise
    return _unique_admissible(cands, "NS-4.7 backward")


def ns48_forward(vals):
    a, b, c, d, e, f = vals
    mul, add, sub, div = scalars.mul, scalars.add, scalars.sub, scalars.div
    ef = mul(e, f)
    abig = add(add(mul(2, mul(mul(a, b), ef)), mul(2, mul(mul(a, ef), f))),
               add(mul(2, mul(mul(c, ef), f)),
                   add(mul(mul(a, mul(b, b)), c), mul(mul(a, mul(b, b)), e))))
    w = add(add(mul(a, b), mul(a, f)), mul(c, f))
    s = add(add(a, c), e)
    k2 = add(add(mul(w, w), mul(ef, ef)), abig)
    k1 = mul(-1, mul(s, add(mul(2, mul(ef, ef)), abig)))
    k0 = mul(mul(s, s), mul(ef, ef))
    p5 = add(add(mul(b, c), mul(b, e)), ef)
    cands = []
    for alpha in _solve_quadratic(k2, k1, k0):
        if scalars.sign(alpha) <= 0:
            cands.append(None)
            continue
        bp = sub(s, alpha)
        if scalars.sign(bp) <= 0:
            cands.append(None)
            continue
        fp = div(ef, alpha)
        apv = div(sub(p5, mul(add(b, f), alpha)), bp)
        cp = sub(div(w, bp), fp)
        out = (apv, bp, cp, d, alpha, fp)
        cands.append(out if _all_positive(out) else None)
    return _unique_admissible(cands, "NS-4.8 forward")


def ns48_backward(vals):
    ap, bp, cp, dp, ep, fp = vals
    mul, add, sub, div = scalars.mul, scalars.add, scalars.sub, scalars.div
    z = mul(ep, fp)
    up = add(add(ap, cp), fp)
    wp = add(bp, ep)
    a5 = add(mul(ap, bp), mul(ep, up))
    num = mul(z, add(mul(ap, bp), mul(ep, add(ap, cp))))
    den = add(mul(mul(ap, bp), add(cp, fp)), mul(z, add(ap, cp)))
    beta = div(num, den)
    f = div(z, beta)
    b = sub(up, f)
    c = div(sub(a5, mul(beta, up)), b)
    a = sub(sub(wp, beta), c)
    out = (a, b, c, dp, beta, f)
    if not _all_positive(out):
        raise InternalInconsistency("NS-4.8 backward produced a non-positive output")
    return out


def _d12_etc(m, b, a0, m0):
    # d_ij = b_i b_j a_0 - m_i m_j m_0 for (i,j) in (1,2),(2,3),(1,3)
    mul, sub = scalars.mul, scalars.sub
    d12 = sub(mul(mul(b[1], b[2]), a0), mul(mul(m[1], m[2]), m0))
    d23 = sub(mul(mul(b[2], b[3]), a0), mul(mul(m[2], m[3]), m0))
    d13 = sub(mul(mul(b[1], b[3]), a0), mul(mul(m[1], m[3]), m0))
    return d12, d23, d13


def ns49_forward(vals):
    a1, a2, a3, a0, b1, b2, b3, b0 = vals
    mul, add, sub, div = scalars.mul, scalars.add, scalars.sub, scalars.div
    a = {0: a0, 1: a1, 2: a2, 3: a3}
    b = {0: b0, 1: b1, 2: b2, 3: b3}
    m = {k: add(a[k], b[k]) for k in range(4)}
    d12, d23, d13 = _d12_etc(m, b, a0, m[0])
    bigm = add(add(mul(m[1], d23), mul(m[2], d13)), mul(m[3], d12))
    r = mul(2, mul(m[1], mul(m[2], m[3])))
    t = mul(m[0], sub(mul(2, mul(m[3], d12)), bigm))
    cc = add(mul(2, mul(mul(a3, mul(b1, b2)), mul(a0, m[0]))),
             mul(mul(b1, mul(b2, b3)), mul(a0, b0)))
    tc = sub(t, cc)
    k2 = sub(add(mul(bigm, bigm), mul(2, mul(r, tc))),
             mul(4, add(add(mul(mul(m[1], m[2]), mul(d23, d13)),
                            mul(mul(m[2], m[3]), mul(d12, d13))),
                        mul(mul(m[1], m[3]), mul(d12, d23)))))
    k1 = sub(mul(2, mul(bigm, tc)), mul(4, mul(d12, mul(d23, d13))))
    k0 = mul(tc, tc)
    pairs = {1: (d23, m[2], m[3]), 2: (d13, m[1], m[3]), 3: (d12, m[1], m[2])}
    cands = []
    for beta in _solve_quadratic(k2, k1, k0):
        out = _ns49_fwd_outputs(beta, m, r, bigm, t, cc, pairs)
        cands.append(out)
    return _unique_admissible(cands, "NS-4.9 forward")


def _ns49_fwd_outputs(beta, m, r, bigm, t, cc, pairs):
    mul, add, sub, div = scalars.mul, scalars.add, scalars.sub, scalars.div
    if scalars.sign(beta) <= 0 or scalars.sign(sub(m[0], beta)) <= 0:
        return None
    # sqrt(Delta) = (Rat(beta) - C) / (2 beta^2) must be the positive root
    rat = add(add(mul(r, mul(beta, beta)), mul(bigm, beta)), t)
    sq = div(sub(rat, cc), mul(2, mul(beta, beta)))
    if scalars.sign(sq) < 0:
        return None
    factors = {}
    for k in (1, 2, 3):
        dij, mi, mj = pairs[k]
        factors[k] = add(div(dij, beta), mul(mi, mj))
        if scalars.sign(factors[k]) <= 0:
            return None
    delta = mul(mul(factors[1], factors[2]), factors[3])
    root = scalars.sqrt(delta)
    bp = {0: beta}
    ap = {0: sub(m[0], beta)}
    for k in (1, 2, 3):
        bp[k] = div(root, factors[k])
        ap[k] = sub(m[k], bp[k])
        if scalars.sign(ap[k]) <= 0 or scalars.sign(bp[k]) <= 0:
            return None
    # consistency of the un-squared equation
    try:
        if not _certify_zero(sub(sq, root)):
            return None
    except UndecidableComparison:
        return None
    return (ap[0], ap[1], ap[2], ap[3], bp[0], bp[1], bp[2], bp[3])


def _certify_zero(x) -> bool:
    if scalars.is_exact(x):
        return scalars.sign(x) == 0
    return x.contains_zero()


def ns49_backward(vals):
    ap0, ap1, ap2, ap3, bp0, bp1, bp2, bp3 = vals
    mul, add, sub, div = scalars.mul, scalars.add, scalars.sub, scalars.div
    apd = {0: ap0, 1: ap1, 2: ap2, 3: ap3}
    bpd = {0: bp0, 1: bp1, 2: bp2, 3: bp3}
    m = {k: add(apd[k], bpd[k]) for k in range(4)}
    dp = {}
    for (i, j) in ((1, 2), (2, 3), (1, 3)):
        dp[(i, j)] = add(mul(mul(bpd[i], bpd[j]), bp0), mul(mul(m[i], m[j]), ap0))
    deltap = mul(mul(dp[(1, 2)], dp[(2, 3)]), dp[(1, 3)])
    cp = add(mul(mul(add(add(mul(apd[1], mul(apd[2], apd[3])),
                             mul(apd[1], mul(apd[3], bpd[2]))),
                         add(mul(apd[1], mul(apd[2], bpd[3])),
                             mul(apd[2], mul(apd[3], bpd[1])))), ap0), bp0),
             mul(2, mul(mul(apd[3], mul(bpd[1], bpd[2])), mul(bp0, m[0]))))
    w = sub(mul(2, mul(mul(m[3], m[0]), dp[(1, 2)])), cp)
    k2 = deltap
    k1 = sub(mul(2, mul(deltap, m[0])), mul(w, w))
    k0 = mul(deltap, mul(m[0], m[0]))
    cands = []
    for alpha in _solve_quadratic(k2, k1, k0):
        out = _ns49_bwd_outputs(alpha, m, dp, deltap, w)
        cands.append(out)
    return _unique_admissible(cands, "NS-4.9 backward")


def _ns49_bwd_outputs(alpha, m, dp, deltap, w):
    mul, add, sub, div = scalars.mul, scalars.add, scalars.sub, scalars.div
    if scalars.sign(alpha) <= 0 or scalars.sign(sub(m[0], alpha)) <= 0:
        return None
    if scalars.sign(w) < 0:
        return None
    # Delta' = delta' / alpha^3
    deltaprime = div(deltap, mul(alpha, mul(alpha, alpha)))
    root = scalars.sqrt(deltaprime)
    # sign condition: root * alpha * (m0 + alpha) = w
    lhs = mul(root, mul(alpha, add(m[0], alpha)))
    try:
        if not _certify_zero(sub(lhs, w)):
            return None
    except UndecidableComparison:
        return None
    comp = {1: (2, 3), 2: (1, 3), 3: (1, 2)}
    bout = {0: sub(m[0], alpha)}
    aout = {0: alpha}
    for k in (1, 2, 3):
        i, j = comp[k]
        bout[k] = div(mul(root, alpha), dp[(i, j)])
        aout[k] = sub(m[k], bout[k])
        if scalars.sign(bout[k]) <= 0 or scalars.sign(aout[k]) <= 0:
            return None
    return (aout[1], aout[2], aout[3], aout[0], bout[1], bout[2], bout[3], bout[0])


# -- move objects -------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """Prefix rewrite on involution words, on an abstract sub-datum."""
    cartan: tuple            # pattern-local Cartan matrix
    star: tuple              # pattern-local star involution
    source: tuple            # pattern-local source word
    target: tuple            # pattern-local target word
    to_named_fwd: tuple      # named_in[k] = word_coords[perm[k]]
    from_named_fwd: tuple    # new_word[k] = named_out[perm[k]]
    to_named_bwd: tuple
    from_named_bwd: tuple


class Move:
    """A transition map with named-order forward/backward evaluation."""

    tag: str
    pattern: Pattern | None = None

    @property
    def arity(self) -> int:
        return ARITY[self.tag]

    def forward(self, vals, semifield: Semifield = TOWER):
        raise NotImplementedError

    def backward(self, vals, semifield: Semifield = TOWER):
        raise NotImplementedError

    def apply(self, direction: str, vals, semifield: Semifield = TOWER):
        if len(vals) != self.arity:
            raise MoveError(f"{self.tag} expects {self.arity} coordinates")
        f = self.forward if direction == "forward" else self.backward
        return f(tuple(vals), semifield)

    def word_forward(self, coords, semifield: Semifield = TOWER):
        p = self.pattern
        named = tuple(coords[k] for k in p.to_named_fwd)
        out = self.forward(named, semifield)
        return tuple(out[k] for k in p.from_named_fwd)

    def word_backward(self, coords, semifield: Semifield = TOWER):
        p = self.pattern
        named = tuple(coords[k] for k in p.to_named_bwd)
        out = self.backward(named, semifield)
        return tuple(out[k] for k in p.from_named_bwd)

    def tropical_ok(self) -> bool:
        return True

    def __repr__(self):
        return f"<move {self.tag}>"


class ExprMove(Move):
    def __init__(self, tag, fwd_exprs, bwd_exprs, pattern=None):
        self.tag = tag
        self._fwd = fwd_exprs
        self._bwd = bwd_exprs
        self.pattern = pattern

    def forward(self, vals, semifield=TOWER):
        return _ev_tuple(self._fwd, semifield, vals)

    def backward(self, vals, semifield=TOWER):
        return _ev_tuple(self._bwd, semifield, vals)


class SwapMove(Move):
    def __init__(self, tag, pattern=None):
        self.tag = tag
        self.pattern = pattern

    def forward(self, vals, semifield=TOWER):
        return (vals[1], vals[0])

    backward = forward


class PivotMove(Move):
    """Closed form one way, pivot-polynomial procedure the other (tower only)."""

    def __init__(self, tag, fwd, bwd, pattern=None, fwd_exprs=None, bwd_exprs=None):
        self.tag = tag
        self._fwd = fwd
        self._bwd = bwd
        self._fwd_exprs = fwd_exprs
        self._bwd_exprs = bwd_exprs
        self.pattern = pattern

    def forward(self, vals, semifield=TOWER):
        if self._fwd_exprs is not None:
            return _ev_tuple(self._fwd_exprs, semifield, vals)
        if not isinstance(semifield, PositiveTower):
            raise SemifieldError(f"{self.tag} forward runs over the scalar tower only")
        return self._fwd(vals)

    def backward(self, vals, semifield=TOWER):
        if self._bwd_exprs is not None:
            return _ev_tuple(self._bwd_exprs, semifield, vals)
        if not isinstance(semifield, PositiveTower):
            raise SemifieldError(f"{self.tag} backward runs over the scalar tower only")
        return self._bwd(vals)

    def tropical_ok(self):
        return False


class FoldedG2Move(Move):
    """Rank-2 order-6 braid move computed by folding three commuting strands
    through a chain of order-3 and commuting moves (exact over any semifield)."""

    tag = "Std-G2"

    # path of (kind, position) rewrites on the unfolded 12-letter word,
    # derived once from the simply-laced unfolding (regeneration-tested).
    PATH = (
        ("swap", 4), ("swap", 5), ("swap", 4), ("a2", 2), ("a2", 6), ("a2", 4),
        ("swap", 3), ("swap", 6), ("a2", 1), ("a2", 3), ("swap", 5), ("a2", 7),
        ("a2", 9), ("swap", 8), ("a2", 6), ("a2", 4), ("swap", 3), ("swap", 2),
        ("swap", 6), ("a2", 0), ("a2", 4), ("a2", 2), ("swap", 4), ("a2", 8),
        ("swap", 7), ("a2", 5), ("a2", 3), ("swap", 5), ("a2", 7), ("swap", 6),
        ("swap", 5),
    )

    def __init__(self, reverse=False):
        self._reverse = reverse

    def _run(self, vals, semifield):
        t1, t2, t3, t4, t5, t6 = vals
        coords = [t1, t1, t1, t2, t3, t3, t3, t4, t5, t5, t5, t6]
        for kind, p in self.PATH:
            if kind == "swap":
                coords[p], coords[p + 1] = coords[p + 1], coords[p]
            else:
                a, b, c = coords[p:p + 3]
                s = semifield.add(a, c)
                coords[p:p + 3] = [semifield.div(semifield.mul(b, c), s), s,
                                   semifield.div(semifield.mul(a, b), s)]
        for k in (1, 5, 9):
            if not semifield.equal(coords[k], coords[k + 1]) or \
               not semifield.equal(coords[k], coords[k + 2]):
                raise InternalInconsistency("folded strands diverged in Std-G2")
        return (coords[0], coords[1], coords[4], coords[5], coords[8], coords[9])

    def forward(self, vals, semifield=TOWER):
        # word (s,l,s,l,s,l) -> (l,s,l,s,l,s), s the short node
        return self._run(vals, semifield)

    def backward(self, vals, semifield=TOWER):
        # inverse map: run the mirrored fold (relabel by reversing strand roles)
        out = self._run(tuple(reversed(vals)), semifield)
        return tuple(reversed(out))


# -- pattern data --------------------------------------------------------------

# NS-4.3(i): named (a, b) with word (0,1) coords = (b, a); swap either way.
_A2_ID = Pattern(
    cartan=((2, -1), (-1, 2)), star=(0, 1),
    source=(0, 1), target=(1, 0),
    to_named_fwd=(1, 0), from_named_fwd=(1, 0),
    to_named_bwd=(1, 0), from_named_bwd=(1, 0),
)

_A2_FLIP = Pattern(
    cartan=((2, -1), (-1, 2)), star=(1, 0),
    source=(0, 1), target=(1, 0),
    to_named_fwd=(1, 0), from_named_fwd=(1, 0),
    to_named_bwd=(1, 0), from_named_bwd=(1, 0),
)

_B2_PAT = Pattern(
    cartan=((2, -2), (-1, 2)), star=(0, 1),
    source=(0, 1, 0), target=(1, 0, 1),
    to_named_fwd=(2, 1, 0), from_named_fwd=(2, 1, 0),
    to_named_bwd=(2, 1, 0), from_named_bwd=(2, 1, 0),
)

_A3_FLIP = Pattern(
    cartan=((2, -1, 0), (-1, 2, -1), (0, -1, 2)), star=(2, 1, 0),
    source=(1, 2, 0, 1), target=(1, 2, 1, 0),
    to_named_fwd=(1, 3, 2, 0), from_named_fwd=(3, 0, 1, 2),
    to_named_bwd=(1, 2, 3, 0), from_named_bwd=(3, 0, 2, 1),
)

_C3_PAT = Pattern(
    cartan=((2, -2, 0), (-1, 2, -1), (0, -1, 2)), star=(0, 1, 2),
    source=(0, 1, 2, 1, 0, 1), target=(0, 1, 2, 0, 1, 0),
    to_named_fwd=(5, 4, 3, 2, 1, 0), from_named_fwd=(5, 4, 3, 2, 1, 0),
    to_named_bwd=(5, 4, 3, 2, 1, 0), from_named_bwd=(5, 4, 3, 2, 1, 0),
)

_B3_PAT = Pattern(
    cartan=((2, -1, 0), (-2, 2, -1), (0, -1, 2)), star=(0, 1, 2),
    source=(0, 1, 2, 1, 0, 1), target=(0, 1, 2, 0, 1, 0),
    to_named_fwd=(5, 4, 3, 2, 1, 0), from_named_fwd=(5, 4, 3, 2, 1, 0),
    to_named_bwd=(5, 4, 3, 2, 1, 0), from_named_bwd=(5, 4, 3, 2, 1, 0),
)

_D4_PAT = Pattern(
    cartan=((2, -1, -1, -1), (-1, 2, 0, 0), (-1, 0, 2, 0), (-1, 0, 0, 2)),
    star=(0, 1, 2, 3),
    source=(0, 3, 1, 2, 0, 1, 2, 3), target=(3, 2, 1, 0, 2, 1, 3, 0),
    to_named_fwd=(5, 6, 7, 4, 2, 3, 1, 0), from_named_fwd=(7, 6, 5, 4, 2, 1, 3, 0),
    to_named_bwd=(7, 5, 4, 6, 3, 2, 1, 0), from_named_bwd=(7, 6, 4, 5, 3, 0, 1, 2),
)


def _build_moves():
    ns43i = SwapMove("NS-4.3(i)", _A2_ID)
    ns44 = ExprMove("NS-4.4", NS44_EX, NS44_EX, _A2_FLIP)
    ns45 = ExprMove("NS-4.5", NS45_FWD, NS45_BWD, _B2_PAT)
    ns46 = ExprMove("NS-4.6", NS46_FWD, NS46_BWD, _A3_FLIP)
    ns47 = PivotMove("NS-4.7", None, ns47_backward, _C3_PAT, fwd_exprs=NS47_FWD)
    ns48 = PivotMove("NS-4.8", ns48_forward, ns48_backward, _B3_PAT)
    ns49 = PivotMove("NS-4.9", ns49_forward, ns49_backward, _D4_PAT)
    stda2 = ExprMove("Std-A2", STD_A2, STD_A2)
    stdb2 = ExprMove("Std-B2", STD_B2_SHORT, STD_B2_LONG)
    return {
        "Std-A1A1": SwapMove("Std-A1A1"),
        "Std-A2": stda2,
        "Std-B2": stdb2,
        "Std-G2": FoldedG2Move(),
        "NS-4.3(i)": ns43i,
        "NS-4.4": ns44,
        "NS-4.5": ns45,
        "NS-4.6": ns46,
        "NS-4.7": ns47,
        "NS-4.8": ns48,
        "NS-4.9": ns49,
    }


MOVES: dict[str, Move] = _build_moves()
NS_PATTERNS = [MOVES[t] for t in
               ("NS-4.3(i)", "NS-4.4", "NS-4.5", "NS-4.6", "NS-4.7", "NS-4.8", "NS-4.9")]


def get_move(tag: str) -> Move:
    if tag not in MOVES:
        raise MoveError(f"unknown move {tag!r}; have {sorted(MOVES)}")
    return MOVES[tag]


# -- conservation laws ---------------------------------------------------------

def _poly_env(vals, outs, names_in, names_out):
    env = dict(zip(names_in, vals))
    env.update(zip(names_out, outs))
    return env


CONSERVATION = {
    # each law: (label, callable(env) -> (lhs, rhs)); env maps names to scalars
    "NS-4.4": (
        ("a", "b"), ("a'", "b'"),
        [
            ("a+b = a'+b'", lambda E: (scalars.add(E["a"], E["b"]),
                                       scalars.add(E["a'"], E["b'"]))),
            ("a^2+2ab = b'^2", lambda E: (
                scalars.add(scalars.mul(E["a"], E["a"]),
                            scalars.mul(2, scalars.mul(E["a"], E["b"]))),
                scalars.mul(E["b'"], E["b'"]))),
        ]),
    "NS-4.6": (
        ("a1", "a2", "a3", "a2'"), ("b1", "b2", "b3", "b2'"),
        [
            ("a1+a3 = b1+b3", lambda E: (scalars.add(E["a1"], E["a3"]),
                                         scalars.add(E["b1"], E["b3"]))),
            ("a2+a2' = b2+b2'", lambda E: (scalars.add(E["a2"], E["a2'"]),
                                           scalars.add(E["b2"], E["b2'"]))),
            ("a1^2 a2' = b1^2 b2'", lambda E: (
                scalars.mul(scalars.mul(E["a1"], E["a1"]), E["a2'"]),
                scalars.mul(scalars.mul(E["b1"], E["b1"]), E["b2'"]))),
            ("(a1+a3)a2+2a1a2' = b1(b2+2b2')", lambda E: (
                scalars.add(scalars.mul(scalars.add(E["a1"], E["a3"]), E["a2"]),
                            scalars.mul(2, scalars.mul(E["a1"], E["a2'"]))),
                scalars.mul(E["b1"], scalars.add(E["b2"],
                                                 scalars.mul(2, E["b2'"]))))),
        ]),
    "NS-4.7": (
        ("a", "b", "c", "d", "e", "f"), ("a'", "b'", "c'", "d'", "e'", "f'"),
        [
            ("d = d'", lambda E: (E["d"], E["d'"])),
            ("a+c+e = b'+e'", lambda E: (
                scalars.add(scalars.add(E["a"], E["c"]), E["e"]),
                scalars.add(E["b'"], E["e'"]))),
            ("b+f = a'+c'+f'", lambda E: (
                scalars.add(E["b"], E["f"]),
                scalars.add(scalars.add(E["a'"], E["c'"]), E["f'"]))),
            ("e^2 f = e'^2 f'", lambda E: (
                scalars.mul(scalars.mul(E["e"], E["e"]), E["f"]),
                scalars.mul(scalars.mul(E["e'"], E["e'"]), E["f'"]))),
            ("bc+be+ef = a'b'+a'e'+c'e'+e'f'", lambda E: (
                scalars.add(scalars.add(scalars.mul(E["b"], E["c"]),
                                        scalars.mul(E["b"], E["e"])),
                            scalars.mul(E["e"], E["f"])),
                scalars.add(scalars.add(scalars.mul(E["a'"], E["b'"]),
                                        scalars.mul(E["a'"], E["e'"])),
                            scalars.add(scalars.mul(E["c'"], E["e'"]),
                                        scalars.mul(E["e'"], E["f'"]))))),
            # last law with the b'c' correction to the printed form
            ("abc+abe+aef+cef+e^2f = e'(b'c'+b'f'+e'f')", lambda E: (
                scalars.add(
                    scalars.add(scalars.add(
                        scalars.mul(scalars.mul(E["a"], E["b"]), E["c"]),
                        scalars.mul(scalars.mul(E["a"], E["b"]), E["e"])),
                        scalars.add(scalars.mul(scalars.mul(E["a"], E["e"]), E["f"]),
                                    scalars.mul(scalars.mul(E["c"], E["e"]), E["f"]))),
                    scalars.mul(scalars.mul(E["e"], E["e"]), E["f"])),
                scalars.mul(E["e'"], scalars.add(
                    scalars.add(scalars.mul(E["b'"], E["c'"]),
                                scalars.mul(E["b'"], E["f'"])),
                    scalars.mul(E["e'"], E["f'"]))))),
        ]),
    "NS-4.8": (
        ("a", "b", "c", "d", "e", "f"), ("a'", "b'", "c'", "d'", "e'", "f'"),
        [
            ("d = d'", lambda E: (E["d"], E["d'"])),
            ("a+c+e = b'+e'", lambda E: (
                scalars.add(scalars.add(E["a"], E["c"]), E["e"]),
                scalars.add(E["b'"], E["e'"]))),
            ("b+f = a'+c'+f'", lambda E: (
                scalars.add(E["b"], E["f"]),
                scalars.add(scalars.add(E["a'"], E["c'"]), E["f'"]))),
            ("ef = e'f'", lambda E: (scalars.mul(E["e"], E["f"]),
                                     scalars.mul(E["e'"], E["f'"]))),
            ("bc+be+ef = a'b'+a'e'+c'e'+e'f'", lambda E: (
                scalars.add(scalars.add(scalars.mul(E["b"], E["c"]),
                                        scalars.mul(E["b"], E["e"])),
                            scalars.mul(E["e"], E["f"])),
                scalars.add(scalars.add(scalars.mul(E["a'"], E["b'"]),
                                        scalars.mul(E["a'"], E["e'"])),
                            scalars.add(scalars.mul(E["c'"], E["e'"]),
                                        scalars.mul(E["e'"], E["f'"]))))),
            ("2abef+2aef^2+2cef^2+ab^2c+ab^2e = e'b'((c'+f')^2+f'^2)", lambda E: (
                scalars.add(
                    scalars.add(
                        scalars.mul(2, scalars.mul(scalars.mul(E["a"], E["b"]),
                                                   scalars.mul(E["e"], E["f"]))),
                        scalars.mul(2, scalars.mul(scalars.mul(E["a"], E["e"]),
                                                   scalars.mul(E["f"], E["f"])))),
                    scalars.add(
                        scalars.mul(2, scalars.mul(scalars.mul(E["c"], E["e"]),
                                                   scalars.mul(E["f"], E["f"]))),
                        scalars.add(
                            scalars.mul(scalars.mul(E["a"], scalars.mul(E["b"], E["b"])),
                                        E["c"]),
                            scalars.mul(scalars.mul(E["a"], scalars.mul(E["b"], E["b"])),
                                        E["e"])))),
                scalars.mul(scalars.mul(E["e'"], E["b'"]), scalars.add(
                    scalars.mul(scalars.add(E["c'"], E["f'"]),
                                scalars.add(E["c'"], E["f'"])),
                    scalars.mul(E["f'"], E["f'"]))))),
        ]),
    "NS-4.9": (
        ("a1", "a2", "a3", "a0", "b1", "b2", "b3", "b0"),
        ("a0'", "a1'", "a2'", "a3'", "b0'", "b1'", "b2'", "b3'"),
        [("a%d+b%d = a%d'+b%d'" % (k, k, k, k),
          (lambda kk: lambda E: (scalars.add(E[f"a{kk}"], E[f"b{kk}"]),
                                 scalars.add(E[f"a{kk}'"], E[f"b{kk}'"])))(k))
         for k in range(4)] +
        [("pair law (%d,%d)" % (i, j),
          (lambda ii, jj: lambda E: (
              scalars.add(
                  scalars.mul(scalars.add(
                      scalars.add(scalars.mul(E[f"a{ii}"], E[f"a{jj}"]),
                                  scalars.mul(E[f"a{ii}"], E[f"b{jj}"])),
                      scalars.mul(E[f"b{ii}"], E[f"a{jj}"])),
                      scalars.add(E["a0"], E["b0"])),
                  scalars.mul(scalars.mul(E[f"b{ii}"], E[f"b{jj}"]), E["b0"])),
              scalars.mul(scalars.add(
                  scalars.add(scalars.mul(E[f"a{ii}'"], E[f"a{jj}'"]),
                              scalars.mul(E[f"a{ii}'"], E[f"b{jj}'"])),
                  scalars.mul(E[f"b{ii}'"], E[f"a{jj}'"])), E["b0'"])))(i, j))
         for (i, j) in ((1, 2), (2, 3), (1, 3))] +
        [("cubic law", lambda E: (
            scalars.add(
                scalars.mul(2, scalars.mul(
                    scalars.mul(E["a3"], scalars.mul(E["b1"], E["b2"])),
                    scalars.mul(E["a0"], scalars.add(E["a0"], E["b0"])))),
                scalars.mul(scalars.mul(E["b1"], scalars.mul(E["b2"], E["b3"])),
                            scalars.mul(E["a0"], E["b0"]))),
            scalars.add(
                scalars.mul(scalars.mul(scalars.add(
                    scalars.add(
                        scalars.mul(E["a1'"], scalars.mul(E["a2'"], E["a3'"])),
                        scalars.mul(E["a1'"], scalars.mul(E["a3'"], E["b2'"]))),
                    scalars.add(
                        scalars.mul(E["a1'"], scalars.mul(E["a2'"], E["b3'"])),
                        scalars.mul(E["a2'"], scalars.mul(E["a3'"], E["b1'"])))),
                    E["a0'"]), E["b0'"]),
                scalars.mul(2, scalars.mul(
                    scalars.mul(E["a3'"], scalars.mul(E["b1'"], E["b2'"])),
                    scalars.mul(E["b0'"], scalars.add(E["a0'"], E["b0'"])))))))]
    ),
}


def check_conservation(tag: str, vals, outs, rel_width=Fraction(1, 2 ** 128)):
    """Certify every conservation law of a move on one (input, output) pair.

    Returns a list of (label, certificate) pairs, certificate 'exact' or
    'interval'; raises UndecidableComparison when a law fails.
    """
    if tag not in CONSERVATION:
        raise MoveError(f"no conservation system recorded for {tag}")
    names_in, names_out, laws = CONSERVATION[tag]
    env = _poly_env(vals, outs, names_in, names_out)
    out = []
    for label, fn in laws:
        lhs, rhs = fn(env)
        out.append((label, scalars.certify_equal(lhs, rhs, rel_width)))
    return out


# -- triangular form (4.10) -----------------------------------------------------

TRIANGULAR = {
    # tag -> (forward degree sequence, backward degree sequence); the leading
    # entry is the pivot degree, later outputs are rational or single-sqrt in
    # the inputs plus earlier outputs.
    "NS-4.3(i)": ((1, 1), (1, 1)),
    "NS-4.4": ((2, 1), (2, 1)),
    "NS-4.5": ((1, 1, 1), (2, 1, 1)),
    "NS-4.6": ((2, 1, 1, 1), (2, 1, 1, 1)),
    "NS-4.7": ((1, 1, 1, 1, 1, 1), (2, 1, 1, 1, 1, 1)),
    "NS-4.8": ((2, 1, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)),
    "NS-4.9": ((2, 1, 1, 1, 1, 1, 1, 1), (2, 1, 1, 1, 1, 1, 1, 1)),
}


def pivot_polynomial(tag: str, direction: str, vals):
    """(coefficients low->high, pivot value index) of the pivot polynomial.

    The pivot is the first output in the triangular ordering; for rational
    directions the polynomial is linear (denominator, -numerator form).
    """
    mul, add, sub = scalars.mul, scalars.add, scalars.sub
    if tag == "NS-4.4":
        a, b = vals
        delta = add(mul(a, a), mul(2, mul(a, b)))
        return [mul(-1, delta), Fraction(0), Fraction(1)], 1   # b'^2 = delta
    if tag == "NS-4.5":
        if direction == "forward":
            a, b, c = vals
            return [mul(-1, add(a, c)), Fraction(1)], 1
        ap, bp, cp = vals
        delta = mul(mul(ap, mul(bp, bp)), add(ap, cp))
        s = add(ap, cp)
        return [mul(-1, scalars.div(delta, mul(s, s))), Fraction(0), Fraction(1)], 2
    if tag == "NS-4.6":
        if direction == "forward":
            a1, a2, a3, a2p = vals
            # (a2+a2') b1^2 - ((a1+a3)a2 + 2 a1 a2') b1 + a1^2 a2' = 0
            return [mul(mul(a1, a1), a2p),
                    mul(-1, add(mul(add(a1, a3), a2), mul(2, mul(a1, a2p)))),
                    add(a2, a2p)], 0
        b1, b2, b3, b2p = vals
        # a1 satisfies (a1 - b1(b1+b3)/(b1+sqrt(delta))) ... quadratic:
        # (b1+b3) a1^2 - (2 b1 + ...) derive from a1 (b1 + sqrt d) = b1(b1+b3):
        # sqrt d = b1(b1+b3)/a1 - b1 => d a1^2 = (b1(b1+b3) - b1 a1)^2
        delta = add(mul(b3, b3), scalars.div(mul(mul(b2, b3), add(b1, b3)), b2p))
        s = mul(b1, add(b1, b3))
        return [mul(s, s), mul(-2, mul(b1, s)),
                sub(mul(b1, b1), delta)], 0
    if tag == "NS-4.7":
        if direction == "forward":
            a, b, c, d, e, f = vals
            d0 = add(add(mul(a, b), mul(a, f)), mul(c, f))
            abig = add(add(mul(mul(a, b), c), mul(mul(a, b), e)),
                       add(mul(mul(a, e), f), mul(mul(c, e), f)))
            return [mul(-1, abig), d0], 4
        ap, bp, cp, dp, ep, fp = vals
        z = mul(mul(ep, ep), fp)
        up = add(add(ap, cp), fp)
        sp = add(bp, ep)
        k2 = sub(mul(mul(ap, mul(bp, bp)), add(cp, fp)), mul(z, up))
        k1 = mul(2, mul(z, add(mul(ap, bp), mul(ep, up))))
        k0 = mul(-1, mul(z, add(mul(ap, mul(sp, sp)),
                                mul(mul(ep, ep), add(cp, fp)))))
        return [k0, k1, k2], 4
    if tag == "NS-4.8":
        if direction == "forward":
            a, b, c, d, e, f = vals
            ef = mul(e, f)
            abig = add(add(mul(2, mul(mul(a, b), ef)), mul(2, mul(mul(a, ef), f))),
                       add(mul(2, mul(mul(c, ef), f)),
                           add(mul(mul(a, mul(b, b)), c), mul(mul(a, mul(b, b)), e))))
            w = add(add(mul(a, b), mul(a, f)), mul(c, f))
            s = add(add(a, c), e)
            return [mul(mul(s, s), mul(ef, ef)),
                    mul(-1, mul(s, add(mul(2, mul(ef, ef)), abig))),
                    add(add(mul(w, w), mul(ef, ef)), abig)], 4
        ap, bp, cp, dp, ep, fp = vals
        z = mul(ep, fp)
        num = mul(z, add(mul(ap, bp), mul(ep, add(ap, cp))))
        den = add(mul(mul(ap, bp), add(cp, fp)), mul(z, add(ap, cp)))
        return [mul(-1, num), den], 4
    if tag == "NS-4.9":
        a1, a2, a3, a0, b1, b2, b3, b0 = vals if direction == "forward" else 8 * [None]
        if direction == "forward":
            a = {0: a0, 1: a1, 2: a2, 3: a3}
            b = {0: b0, 1: b1, 2: b2, 3: b3}
            m = {k: add(a[k], b[k]) for k in range(4)}
            d12, d23, d13 = _d12_etc(m, b, a0, m[0])
            bigm = add(add(mul(m[1], d23), mul(m[2], d13)), mul(m[3], d12))
            r = mul(2, mul(m[1], mul(m[2], m[3])))
            t = mul(m[0], sub(mul(2, mul(m[3], d12)), bigm))
            cc = add(mul(2, mul(mul(a3, mul(b1, b2)), mul(a0, m[0]))),
                     mul(mul(b1, mul(b2, b3)), mul(a0, b0)))
            tc = sub(t, cc)
            k2 = sub(add(mul(bigm, bigm), mul(2, mul(r, tc))),
                     mul(4, add(add(mul(mul(m[1], m[2]), mul(d23, d13)),
                                    mul(mul(m[2], m[3]), mul(d12, d13))),
                                mul(mul(m[1], m[3]), mul(d12, d23)))))
            k1 = sub(mul(2, mul(bigm, tc)), mul(4, mul(d12, mul(d23, d13))))
            k0 = mul(tc, tc)
            return [k0, k1, k2], 4
        ap0, ap1, ap2, ap3, bp0, bp1, bp2, bp3 = vals
        apd = {0: ap0, 1: ap1, 2: ap2, 3: ap3}
        bpd = {0: bp0, 1: bp1, 2: bp2, 3: bp3}
        m = {k: add(apd[k], bpd[k]) for k in range(4)}
        dp = {}
        for (i, j) in ((1, 2), (2, 3), (1, 3)):
            dp[(i, j)] = add(mul(mul(bpd[i], bpd[j]), bp0),
                             mul(mul(m[i], m[j]), ap0))
        deltap = mul(mul(dp[(1, 2)], dp[(2, 3)]), dp[(1, 3)])
        cpv = add(mul(mul(add(add(mul(ap1, mul(ap2, ap3)), mul(ap1, mul(ap3, bp2))),
                              add(mul(ap1, mul(ap2, bp3)), mul(ap2, mul(ap3, bp1)))),
                          ap0), bp0),
                  mul(2, mul(mul(ap3, mul(bp1, bp2)), mul(bp0, m[0]))))
        w = sub(mul(2, mul(mul(m[3], m[0]), dp[(1, 2)])), cpv)
        return [mul(deltap, mul(m[0], m[0])),
                sub(mul(2, mul(deltap, m[0])), mul(w, w)), deltap], 3
    raise MoveError(f"no pivot polynomial for {tag}")


def triangular_degree_check(tag: str, direction: str, vals, outs):
    """Verify the pivot output satisfies its stated polynomial; report degrees."""
    fwd_seq, bwd_seq = TRIANGULAR[tag]
    seq = fwd_seq if direction == "forward" else bwd_seq
    if tag == "NS-4.3(i)":
        return {"degrees": seq, "pivot_degree": 1, "max_min_rule": True}
    coeffs, pivot_ix = pivot_polynomial(tag, direction, vals)
    pivot = outs[pivot_ix]
    acc = Fraction(0)
    power = Fraction(1)
    for c in coeffs:
        acc = scalars.add(acc, scalars.mul(c, power))
        power = scalars.mul(power, pivot)
    if scalars.is_exact(acc):
        ok = scalars.sign(acc) == 0
    else:
        ok = acc.contains_zero()
    if not ok:
        raise InternalInconsistency(
            f"{tag} {direction}: pivot does not satisfy its stated polynomial")
    degree = len(coeffs) - 1
    rule = min(max(fwd_seq), max(bwd_seq)) <= 2
    return {"degrees": seq, "pivot_degree": degree, "max_min_rule": rule}
