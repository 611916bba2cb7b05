"""Tropicalization, zone maps, the semifield monoid U^+(F), and tropical
membership for the tau-fixed cells.

Zone maps are the piecewise-linear maps induced on valuation vectors; they
exist for the standard braid moves and for the non-standard moves whose
closed forms are subtraction-free with square roots (the order-4 pivot
moves are rejected).  The U^+(F) monoid multiplies parametrized elements by
concatenation followed by braid rewriting until the word is reduced,
merging adjacent equal letters with the semifield addition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .braid import BraidGraph, apply_edge, braid_graph, transition_map
from .cartan import CartanDatum
from .involutions import TwistedInvolution, cell_index_action, involution_words
from .moves import MOVES, MoveError, get_move
from .semifields import (PositiveTower, Semifield, SemifieldError, TropicalQ,
                         TropicalZHalf, Trivial, semifield)
from .weyl import WeylElement, weyl_group

TROP = TropicalQ()
TOWER = PositiveTower()

ZONE_MOVES = ("Std-A1A1", "Std-A2", "Std-B2", "Std-G2",
              "NS-4.3(i)", "NS-4.4", "NS-4.5", "NS-4.6")


class ZoneError(ValueError):
    pass


def zone_map(tag: str, direction: str = "forward"):
    """Piecewise-linear map on valuation vectors induced by a move."""
    if tag not in ZONE_MOVES:
        raise ZoneError(f"zone maps exist only for {ZONE_MOVES}; {tag} rejected")
    mv = get_move(tag)

    def fn(vals):
        vals = tuple(Fraction(v) for v in vals)
        return mv.apply(direction, vals, TROP)
    fn.tag = tag
    fn.direction = direction
    return fn


def zone_map_of_transition(tm):
    if not tm.tropical_ok():
        raise ZoneError("transition path uses a move without a zone map")

    def fn(vals):
        return tm.apply(tuple(Fraction(v) for v in vals), TROP)
    return fn


def tropicalize_tuple(exprs):
    """Evaluate-over-min-plus closure for a tuple of subtraction-free trees."""
    from .sfexpr import evaluate

    def fn(vals):
        vals = tuple(Fraction(v) for v in vals)
        return tuple(evaluate(e, TROP, vals) for e in exprs)
    return fn


# -- U^+(F) monoid -------------------------------------------------------------

REWRITE_CAP = 200_000


@dataclass(frozen=True)
class UElement:
    """Element of U^+(F): cell index w plus coordinates on the canonical word."""
    datum: CartanDatum
    sf_tag: str
    index: WeylElement
    coords: tuple

    @property
    def word(self):
        return self.index.word

    def __repr__(self):
        return f"U({self.index!r}; {self.coords})"


def _braid_word_neighbors(datum: CartanDatum, word):
    out = []
    n = len(word)
    for p in range(n - 1):
        i, j = word[p], word[p + 1]
        if i == j:
            continue
        m = datum.m_order(i, j)
        if m == 2:
            out.append((word[:p] + (j, i) + word[p + 2:], ("Std-A1A1", p)))
        elif p + m <= n:
            seg = word[p:p + m]
            if seg == tuple(i if q % 2 == 0 else j for q in range(m)):
                new = word[:p] + tuple(j if q % 2 == 0 else i for q in range(m)) \
                    + word[p + m:]
                tag = {3: "Std-A2", 4: "Std-B2", 6: "Std-G2"}[m]
                out.append((new, (tag, p)))
    return out


def _apply_word_move(datum, word, move, coords, sf: Semifield):
    tag, p = move
    if tag == "Std-A1A1":
        return coords[:p] + (coords[p + 1], coords[p]) + coords[p + 2:]
    mv = get_move(tag)
    m = mv.arity
    i, j = word[p], word[p + 1]
    seg = coords[p:p + m]
    first_heavy = datum.cartan[i][j] in (-2, -3)
    out = mv.forward(seg, sf) if first_heavy or tag == "Std-A2" \
        else mv.backward(seg, sf)
    return coords[:p] + tuple(out) + coords[p + m:]


def _find_mergeable(datum, word):
    """BFS to a word with an adjacent equal pair; returns (moves, word) or None."""
    if any(word[p] == word[p + 1] for p in range(len(word) - 1)):
        return [], word
    prev = {word: None}
    q = deque([word])
    visited = 0
    while q:
        w = q.popleft()
        visited += 1
        if visited > REWRITE_CAP:
            raise MoveError("rewriting exceeded the move budget")
        for nw, mv in _braid_word_neighbors(datum, w):
            if nw in prev:
                continue
            prev[nw] = (w, mv)
            if any(nw[p] == nw[p + 1] for p in range(len(nw) - 1)):
                path = []
                cur = nw
                while prev[cur] is not None:
                    pw, pmv = prev[cur]
                    path.append((pw, pmv))
                    cur = pw
                path.reverse()
                return path, nw
            q.append(nw)
    return None


def _word_path(datum, source, target):
    """Braid-move path between two reduced words of the same element."""
    prev = {source: None}
    q = deque([source])
    while q:
        w = q.popleft()
        if w == target:
            break
        for nw, mv in _braid_word_neighbors(datum, w):
            if nw not in prev:
                prev[nw] = (w, mv)
                q.append(nw)
    if target not in prev:
        raise MoveError("reduced words not connected by braid moves")
    path = []
    cur = target
    while prev[cur] is not None:
        pw, pmv = prev[cur]
        path.append((pw, pmv))
        cur = pw
    path.reverse()
    return path


def _normalize(datum, sf: Semifield, word, coords):
    """Rewrite (word, coords) to the canonical reduced form."""
    wg = weyl_group(datum)
    word, coords = tuple(word), tuple(coords)
    while True:
        if wg.len_of(wg.id_of_word(word)) == len(word):
            break
        found = _find_mergeable(datum, word)
        if found is None:
            raise MoveError("no mergeable pair located on a non-reduced word")
        path, word2 = found
        for pw, pmv in path:
            coords = _apply_word_move(datum, pw, pmv, coords, sf)
        word = word2
        p = next(p for p in range(len(word) - 1) if word[p] == word[p + 1])
        merged = sf.add(coords[p], coords[p + 1])
        word = word[:p] + word[p + 1:]
        coords = coords[:p] + (merged,) + coords[p + 2:]
    canon = wg.word_of(wg.id_of_word(word))
    if canon != word:
        for pw, pmv in _word_path(datum, word, canon):
            coords = _apply_word_move(datum, pw, pmv, coords, sf)
        word = canon
    return WeylElement.from_word(datum, word), coords


def usemifield_element(datum: CartanDatum, sf: Semifield | str, word, coords) -> UElement:
    sf = semifield(sf) if isinstance(sf, str) else sf
    if isinstance(sf, Trivial):
        coords = tuple(Trivial.ONE for _ in word)
    if len(word) != len(coords):
        raise MoveError("coordinate count does not match the word")
    w, c = _normalize(datum, sf, word, coords)
    if w.length != len(word):
        raise MoveError(f"{word} is not reduced")
    return UElement(datum, sf.tag, w, tuple(c))


def usemifield_multiply(datum: CartanDatum, sf: Semifield | str,
                        x: UElement, y: UElement) -> UElement:
    sf = semifield(sf) if isinstance(sf, str) else sf
    word = x.word + y.word
    coords = tuple(x.coords) + tuple(y.coords)
    w, c = _normalize(datum, sf, word, coords)
    return UElement(datum, sf.tag, w, tuple(c))


# -- tropical membership and actions ---------------------------------------------


def _zone_supported(datum: CartanDatum) -> bool:
    t = datum.type_label[0]
    st_id = datum.star == tuple(range(datum.rank))
    if t == "A":
        return True
    if t in ("B", "C") and datum.rank == 2 and st_id:
        return True
    if t == "D" and datum.rank == 4 and not st_id:
        return True
    return False


def utau_tropical_membership(datum: CartanDatum, w, assignment: dict,
                             sf: Semifield | str = "tropical-q") -> bool:
    """Do per-word valuation vectors glue to a point of the tropical cell?

    ``assignment`` maps involution words (tuples) to coordinate vectors; it
    must cover every word of w.  For the Z[1/2] carrier all entries and all
    transported vectors must stay dyadic.
    """
    sf = semifield(sf) if isinstance(sf, str) else sf
    if not isinstance(sf, TropicalQ):
        raise ZoneError("membership is defined over tropical semifields")
    if not _zone_supported(datum):
        raise ZoneError(f"zones unsupported for datum {datum.type_label} "
                        "with this star")
    tw = w if isinstance(w, TwistedInvolution) else TwistedInvolution.of(datum, w)
    words = involution_words(datum, tw)
    if set(assignment) != set(words):
        raise ZoneError("assignment must cover exactly the involution words")
    g = braid_graph(datum, tw)
    base = words[0]
    try:
        base_vec = tuple(sf._check(Fraction(v)) for v in assignment[base])
    except SemifieldError:
        return False
    for other in words:
        tm = transition_map(g, base, other)
        if not tm.tropical_ok():
            raise ZoneError("transition path uses a move without a zone map")
        try:
            got = tm.apply(base_vec, sf)
        except SemifieldError:
            return False
        want = tuple(Fraction(v) for v in assignment[other])
        if tuple(got) != want:
            return False
    return True


@dataclass(frozen=True)
class TropicalCellPoint:
    """Point of a tropical tau-fixed cell: index plus one word's valuations."""
    datum: CartanDatum
    index: TwistedInvolution
    word: tuple
    coords: tuple


def zone_action(datum: CartanDatum, generator, point: TropicalCellPoint,
                sf: Semifield | str = "tropical-q") -> TropicalCellPoint:
    """Tropical conjugation step: append the generator's valuation, or take a
    min with the last coordinate in the stable case."""
    sf = semifield(sf) if isinstance(sf, str) else sf
    if not _zone_supported(datum):
        raise ZoneError(f"zones unsupported for datum {datum.type_label} "
                        "with this star")
    i, v = generator
    v = Fraction(v)
    from .involutions import append_letter
    tw = point.index
    target = append_letter(datum, tw.element, i)
    if target.length > tw.element.length:
        new = TwistedInvolution.of(datum, target)
        return TropicalCellPoint(datum, new, point.word + (i,), point.coords + (v,))
    # stable: move to a word ending in the letter
    word, coords = point.word, point.coords
    if not word or word[-1] != i:
        g = braid_graph(datum, tw)
        choices = [wd for wd in g.vertices if wd and wd[-1] == i]
        if not choices:
            raise AssertionError("no adapted word ends with the letter")
        tm = transition_map(g, word, choices[0])
        coords = tm.apply(coords, sf)
        word = choices[0]
    new_last = sf.add(coords[-1], v)
    return TropicalCellPoint(datum, tw, word, coords[:-1] + (new_last,))
