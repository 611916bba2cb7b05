"""Twisted involutions, their invariants and words.

A twisted involution is w with w * star(w) = identity.  The invariant
``phi`` satisfies phi(1) = 0 and, for any i with |s_{i*} w| = |w| - 1,
phi(w) = phi(s_{i*} w) + 1 when s_{i*} w = w s_i and phi(w) = phi(s_{i*} w s_i)
otherwise; well-definedness over the choice of descent is asserted, not
assumed.  The word length is norm(w) = (|w| + phi(w)) / 2.

Involution words extend on the right: appending letter i to a word of v
produces a word of s_{i*} . v . s_i (Demazure products).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cartan import CartanDatum
from .weyl import WeylElement, weyl_group

JOINT_ENUMERATION_CAP = 200_000


class NotTwistedInvolution(ValueError):
    pass


def is_twisted_involution(datum: CartanDatum, w: WeylElement) -> bool:
    return (w * w.star()).eid == 0


def _descend(g, st, eid: int, i: int):
    """Peel letter i from twisted involution eid; returns (smaller eid, case).

    case is "phi" when s_{i*} w = w s_i (norm and phi both drop) and "conj"
    when they differ (norm drops, phi is unchanged).  Requires i to be a
    descent: |s_{i*} w| = |w| - 1.
    """
    left = g.mul_gen(eid, st[i], side="left")
    if g.len_of(left) >= g.len_of(eid):
        return None
    right = g.mul_gen(eid, i, side="right")
    if left == right:
        return left, "phi"
    return g.mul_gen(left, i, side="right"), "conj"


@lru_cache(maxsize=None)
def _phi_table(datum: CartanDatum) -> dict[int, int]:
    g = weyl_group(datum)
    st = datum.star
    table = {0: 0}
    order = sorted((eid for eid in range(len(g.elements))
                    if g.mul(eid, g.star(eid)) == 0),
                   key=g.len_of)
    for eid in order:
        if eid == 0:
            continue
        values = set()
        for i in range(datum.rank):
            down = _descend(g, st, eid, i)
            if down is None:
                continue
            smaller, case = down
            values.add(table[smaller] + (1 if case == "phi" else 0))
        if len(values) != 1:
            raise AssertionError(
                f"phi recursion inconsistent at element {g.word_of(eid)}: {values}")
        table[eid] = values.pop()
    return table


@dataclass(frozen=True)
class TwistedInvolution:
    element: WeylElement
    phi: int
    norm: int

    @classmethod
    def of(cls, datum: CartanDatum, w: WeylElement) -> "TwistedInvolution":
        if not is_twisted_involution(datum, w):
            raise NotTwistedInvolution(f"{w!r} is not a twisted involution")
        table = _phi_table(datum)
        ph = table[w.eid]
        total = w.length + ph
        if total % 2:
            raise AssertionError("|w| + phi(w) must be even")
        return cls(w, ph, total // 2)

    @property
    def word(self):
        return self.element.word

    def __repr__(self):
        return f"TI({self.element!r}, phi={self.phi}, norm={self.norm})"


def phi(datum: CartanDatum, w: WeylElement) -> int:
    return TwistedInvolution.of(datum, w).phi


def twisted_involutions(datum: CartanDatum) -> list[TwistedInvolution]:
    """All twisted involutions, sorted by (length, word)."""
    g = weyl_group(datum)
    out = [TwistedInvolution.of(datum, WeylElement(g, eid))
           for eid in range(len(g.elements)) if g.mul(eid, g.star(eid)) == 0]
    out.sort(key=lambda t: (t.element.length, t.element.word))
    return out


def append_letter(datum: CartanDatum, w: WeylElement, i: int) -> WeylElement:
    """s_{i*} . w . s_i with Demazure products (the word-extension step)."""
    g = w.group
    left = g.demazure_gen(datum.star[i], w.eid, side="left")
    right = g.demazure_gen_right(left, i)
    return WeylElement(g, right)


def target_of_word(datum: CartanDatum, letters) -> TwistedInvolution:
    w = WeylElement.identity(datum)
    for i in letters:
        w = append_letter(datum, w, i)
    return TwistedInvolution.of(datum, w)


@lru_cache(maxsize=None)
def _involution_words_by_eid(datum: CartanDatum, eid: int) -> tuple[tuple[int, ...], ...]:
    g = weyl_group(datum)
    st = datum.star
    if eid == 0:
        return ((),)
    out = []
    for i in range(datum.rank):
        down = _descend(g, st, eid, i)
        if down is None:
            continue
        smaller, _ = down
        for word in _involution_words_by_eid(datum, smaller):
            out.append(word + (i,))
    return tuple(sorted(set(out)))


def involution_words(datum: CartanDatum, w: WeylElement | TwistedInvolution):
    """All involution words of w (length norm(w) each)."""
    tw = w if isinstance(w, TwistedInvolution) else TwistedInvolution.of(datum, w)
    words = _involution_words_by_eid(datum, tw.element.eid)
    assert words and all(len(word) == tw.norm for word in words)
    return list(words)


@dataclass(frozen=True)
class InvolutionWord:
    letters: tuple[int, ...]
    target: TwistedInvolution

    @classmethod
    def of(cls, datum: CartanDatum, letters) -> "InvolutionWord":
        target = target_of_word(datum, letters)
        if len(letters) != target.norm:
            raise ValueError(f"{letters} is not minimal for {target}")
        return cls(tuple(letters), target)


@dataclass(frozen=True)
class JointWord:
    """Letters (index, sign); sign -1 letters build w (lowering side), +1 build w'."""
    letters: tuple[tuple[int, int], ...]
    target_minus: TwistedInvolution
    target_plus: TwistedInvolution

    @classmethod
    def of(cls, datum: CartanDatum, letters) -> "JointWord":
        minus = [i for i, s in letters if s == -1]
        plus = [i for i, s in letters if s == 1]
        return cls(tuple((int(i), int(s)) for i, s in letters),
                   target_of_word(datum, minus), target_of_word(datum, plus))


def joint_words(datum: CartanDatum, w, wp) -> list[JointWord]:
    """All shuffles of an involution word of w (sign -1) with one of w' (sign +1)."""
    tw = w if isinstance(w, TwistedInvolution) else TwistedInvolution.of(datum, w)
    twp = wp if isinstance(wp, TwistedInvolution) else TwistedInvolution.of(datum, wp)
    k, kp = tw.norm, twp.norm
    words_m = involution_words(datum, tw)
    words_p = involution_words(datum, twp)

    from itertools import combinations
    total = len(words_m) * len(words_p)
    from math import comb
    if total * comb(k + kp, k) > JOINT_ENUMERATION_CAP:
        raise ValueError("joint word enumeration exceeds cap")

    out = []
    for wm in words_m:
        for wp_ in words_p:
            for pos in combinations(range(k + kp), k):
                posset = set(pos)
                letters, im, ip = [], 0, 0
                for q in range(k + kp):
                    if q in posset:
                        letters.append((wm[im], -1))
                        im += 1
                    else:
                        letters.append((wp_[ip], 1))
                        ip += 1
                out.append(JointWord(tuple(letters), tw, twp))
    return out


def cell_index_action(datum: CartanDatum, w: WeylElement,
                      wp: WeylElement | TwistedInvolution) -> TwistedInvolution:
    """Demazure-monoid action on cell indices: w' -> w . w' . inverse(star(w)).

    On generators this is s_i . w' . s_{i*}; writing the right factor as the
    inverse keeps the action law (u . v) acting = u acting after v acting.
    """
    tw = wp.element if isinstance(wp, TwistedInvolution) else wp
    res = w.demazure(tw.demazure(w.star().inverse()))
    return TwistedInvolution.of(datum, res)


def pair_index_action(datum: CartanDatum, pair, index_pair):
    w1, w2 = pair
    w, wp = index_pair
    return (cell_index_action(datum, w1, w),
            cell_index_action(datum, w2, wp))
