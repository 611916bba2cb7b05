"""Finite Weyl group machinery on top of a CartanDatum.

Elements act on the root lattice in the basis of simple roots:
``s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i``.  The whole group is
enumerated once per datum (BFS in shortlex order, capped by the datum's
Weyl order) and shared; elements are identified by their canonical
shortlex-minimal reduced word.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cartan import CartanDatum


def _simple_matrix(datum: CartanDatum, i: int):
    # column j of s_i in root coordinates: s_i(alpha_j) = alpha_j - c[i][j] alpha_i
    n = datum.rank
    m = [[(1 if r == c else 0) for c in range(n)] for r in range(n)]
    for j in range(n):
        m[i][j] = (1 if i == j else 0) - datum.cartan[i][j]
    return tuple(tuple(r) for r in m)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n))
                 for r in range(n))


class WeylGroup:
    """Enumerated Weyl group with lengths, shortlex words and Demazure products."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        n = datum.rank
        self.gens = [_simple_matrix(datum, i) for i in range(n)]
        self.identity = tuple(tuple(1 if r == c else 0 for c in range(n))
                              for r in range(n))
        self._enumerate()

    def _enumerate(self):
        # lex BFS: first visit yields the shortlex-minimal reduced word
        self.index: dict = {self.identity: 0}
        self.elements = [self.identity]
        self.words = [()]
        self.length = [0]
        frontier = [self.identity]
        while frontier:
            nxt = []
            for m in frontier:
                w = self.words[self.index[m]]
                for i in range(self.datum.rank):
                    m2 = self._mul_mat(m, self.gens[i])
                    if m2 not in self.index:
                        self.index[m2] = len(self.elements)
                        self.elements.append(m2)
                        self.words.append(w + (i,))
                        self.length.append(len(w) + 1)
                        nxt.append(m2)
            frontier = nxt
        if len(self.elements) != self.datum.weyl_order and self.datum.weyl_order:
            raise RuntimeError("enumeration mismatch with type order formula")
        self.longest = self.length.index(max(self.length))

    @staticmethod
    def _mul_mat(a, b):
        return _matmul(a, b)

    # words are sequences of indices into 0..rank-1

    def id_of_word(self, word) -> int:
        m = self.identity
        for i in word:
            m = _matmul(m, self.gens[i])
        return self.index[m]

    def word_of(self, eid: int) -> tuple[int, ...]:
        return self.words[eid]

    def len_of(self, eid: int) -> int:
        return self.length[eid]

    def mul(self, a: int, b: int) -> int:
        return self.index[_matmul(self.elements[a], self.elements[b])]

    def mul_gen(self, a: int, i: int, side: str = "right") -> int:
        g = self.gens[i]
        m = _matmul(self.elements[a], g) if side == "right" else _matmul(g, self.elements[a])
        return self.index[m]

    def inv(self, a: int) -> int:
        word = self.words[a]
        m = self.identity
        for i in reversed(word):
            m = _matmul(m, self.gens[i])
        return self.index[m]

    def star(self, a: int) -> int:
        st = self.datum.star
        m = self.identity
        for i in self.words[a]:
            m = _matmul(m, self.gens[st[i]])
        return self.index[m]

    # -- Demazure monoid ----------------------------------------------------

    def demazure_gen(self, i: int, a: int, side: str = "left") -> int:
        b = self.mul_gen(a, i, side="left" if side == "left" else "right")
        return b if self.length[b] > self.length[a] else a

    def demazure(self, a: int, b: int) -> int:
        out = b
        for i in reversed(self.words[a]):
            out = self.demazure_gen(i, out, side="left")
        return out

    def demazure_word(self, word) -> int:
        out = 0
        for i in word:
            out = self.demazure_gen(i, out, side="right")
        return out

    def demazure_gen_right(self, a: int, i: int) -> int:
        b = self.mul_gen(a, i, side="right")
        return b if self.length[b] > self.length[a] else a

    def left_descents(self, a: int):
        return [i for i in range(self.datum.rank)
                if self.length[self.mul_gen(a, i, side="left")] < self.length[a]]

    def right_descents(self, a: int):
        return [i for i in range(self.datum.rank)
                if self.length[self.mul_gen(a, i, side="right")] < self.length[a]]

    def reduced_words(self, eid: int):
        """All reduced words of an element (memoized per group)."""
        try:
            cache = self._rw_cache
        except AttributeError:
            cache = self._rw_cache = {}
        if eid in cache:
            return cache[eid]
        if eid == 0:
            out = [()]
        else:
            out = []
            for i in self.left_descents(eid):
                rest = self.mul_gen(eid, i, side="left")
                out.extend((i,) + w for w in self.reduced_words(rest))
        cache[eid] = out
        return out

    def neg_eigenspace_dim(self, eid: int) -> int:
        """Dimension of the (-1)-eigenspace in the reflection representation."""
        n = self.datum.rank
        m = self.elements[eid]
        rows = [[Fraction(m[r][c] + (1 if r == c else 0)) for c in range(n)]
                for r in range(n)]
        rank = 0
        for col in range(n):
            piv = next((r for r in range(rank, n) if rows[r][col] != 0), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            pv = rows[rank][col]
            for r in range(n):
                if r != rank and rows[r][col] != 0:
                    f = rows[r][col] / pv
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return n - rank


@lru_cache(maxsize=None)
def weyl_group(datum: CartanDatum) -> WeylGroup:
    return WeylGroup(datum)


class WeylElement:
    """Group element in canonical shortlex reduced-word form."""

    __slots__ = ("group", "eid")

    def __init__(self, group: WeylGroup, eid: int):
        self.group = group
        self.eid = eid

    @classmethod
    def from_word(cls, datum: CartanDatum, word) -> "WeylElement":
        g = weyl_group(datum)
        for i in word:
            if not 0 <= i < datum.rank:
                raise IndexError(f"letter {i} out of range for rank {datum.rank}")
        return cls(g, g.id_of_word(word))

    @classmethod
    def identity(cls, datum: CartanDatum) -> "WeylElement":
        return cls(weyl_group(datum), 0)

    @classmethod
    def longest(cls, datum: CartanDatum) -> "WeylElement":
        g = weyl_group(datum)
        return cls(g, g.longest)

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.word_of(self.eid)

    @property
    def length(self) -> int:
        return self.group.len_of(self.eid)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.group, self.group.mul(self.eid, other.eid))

    def inverse(self) -> "WeylElement":
        return WeylElement(self.group, self.group.inv(self.eid))

    def star(self) -> "WeylElement":
        return WeylElement(self.group, self.group.star(self.eid))

    def demazure(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.group, self.group.demazure(self.eid, other.eid))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.group is other.group \
            and self.eid == other.eid

    def __hash__(self):
        return hash((id(self.group), self.eid))

    def __repr__(self):
        return "e" if not self.word else "s" + "s".join(str(i) for i in self.word)


def weyl_multiply(datum: CartanDatum, u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v


def demazure_product(datum: CartanDatum, u: WeylElement, v: WeylElement) -> WeylElement:
    return u.demazure(v)


def star(datum: CartanDatum, w: WeylElement) -> WeylElement:
    return w.star()
