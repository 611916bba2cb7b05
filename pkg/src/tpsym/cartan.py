"""Cartan data for the supported finite types, with a diagram involution.

A :class:`CartanDatum` is the combinatorial ground truth shared by the Weyl
machinery and the pinned matrix models: a finite-type Cartan matrix over an
index set ``0..rank-1`` together with an involution ``star`` of the index
set preserving the matrix entries.

Convention: ``cartan[i][j]`` is the value of the simple root ``alpha_j`` on
the simple coroot ``alpha_i^vee``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ENUMERATION_CAP = 1152  # |W(F4)|; larger groups error rather than truncate

_ORDER_FROM_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


class UnsupportedDatum(ValueError):
    pass


def _type_a(rank):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)]
            for i in range(rank)]


def _type_b(rank):
    # alpha_{rank-1} short: <alpha_{r-1}, alpha_{r-2}^vee> = -2? No:
    # B_n has <alpha_n, alpha_{n-1}^vee> = -1 and <alpha_{n-1}, alpha_n^vee> = -2.
    c = _type_a(rank)
    c[rank - 1][rank - 2] = -2
    return c


def _type_c(rank):
    c = _type_a(rank)
    c[rank - 2][rank - 1] = -2
    return c


def _type_d(rank):
    if rank < 3:
        raise UnsupportedDatum("type D needs rank >= 3")
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 2):
        c[i][i + 1] = c[i + 1][i] = -1
    c[rank - 3][rank - 1] = c[rank - 1][rank - 3] = -1
    return c


def _type_g2():
    # node 0 short: <alpha_1, alpha_0^vee> = -3
    return [[2, -3], [-1, 2]]


_BUILDERS = {"A": _type_a, "B": _type_b, "C": _type_c, "D": _type_d}

_WEYL_ORDER = {
    "A": lambda n: _fact(n + 1),
    "B": lambda n: 2 ** n * _fact(n),
    "C": lambda n: 2 ** n * _fact(n),
    "D": lambda n: 2 ** (n - 1) * _fact(n),
    "G": lambda n: 12,
}


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@dataclass(frozen=True)
class CartanDatum:
    """Finite-type Cartan matrix plus a diagram involution of the index set."""

    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    star: tuple[int, ...]
    weyl_order: int = field(compare=False, default=0)

    def __post_init__(self):
        n = self.rank
        c = self.cartan
        if len(c) != n or any(len(row) != n for row in c):
            raise UnsupportedDatum("cartan matrix shape mismatch")
        for i in range(n):
            if c[i][i] != 2:
                raise UnsupportedDatum("cartan diagonal must be 2")
            for j in range(n):
                if i != j and (c[i][j] > 0 or (c[i][j] == 0) != (c[j][i] == 0)):
                    raise UnsupportedDatum("invalid off-diagonal cartan entries")
        st = self.star
        if sorted(st) != list(range(n)):
            raise UnsupportedDatum("star must permute the index set")
        for i in range(n):
            if st[st[i]] != i:
                raise UnsupportedDatum("star must be an involution")
            for j in range(n):
                if c[st[i]][st[j]] != c[i][j]:
                    raise UnsupportedDatum("star must preserve the cartan matrix")
        if self.weyl_order > ENUMERATION_CAP:
            raise UnsupportedDatum(
                f"|W| = {self.weyl_order} exceeds enumeration cap {ENUMERATION_CAP}")

    # -- basic accessors -----------------------------------------------------

    def m_order(self, i: int, j: int) -> int:
        """Order of s_i s_j in W."""
        if i == j:
            return 1
        return _ORDER_FROM_PRODUCT[self.cartan[i][j] * self.cartan[j][i]]

    def star_of(self, i: int) -> int:
        return self.star[i]

    def is_product(self) -> bool:
        return "x" in self.type_label

    def to_json(self) -> dict:
        return {"type": self.type_label, "rank": self.rank,
                "star": list(self.star),
                "cartan": [list(r) for r in self.cartan]}


def datum(type_label: str, rank: int, star: str | tuple | None = "identity") -> CartanDatum:
    """Construct a supported irreducible datum.

    ``star`` is ``"identity"``, ``"flip"`` (A_n: i -> n+1-i; D4: swap of the
    two fork nodes), or an explicit tuple.
    """
    t = type_label.upper()
    if t == "G":
        if rank != 2:
            raise UnsupportedDatum("type G only exists at rank 2")
        cart = _type_g2()
    elif t in _BUILDERS:
        if rank < 1 or (t in ("B", "C") and rank < 2) or (t == "D" and rank < 3):
            raise UnsupportedDatum(f"rank {rank} invalid for type {t}")
        if t in ("B", "C") and rank == 2:
            cart = _BUILDERS[t](2)
        else:
            cart = _BUILDERS[t](rank) if rank > 1 else [[2]]
    else:
        raise UnsupportedDatum(f"unknown type {type_label!r}")

    if star == "identity" or star is None:
        st = tuple(range(rank))
    elif star == "flip":
        if t == "A":
            st = tuple(rank - 1 - i for i in range(rank))
        elif t == "D" and rank == 4:
            st = (0, 1, 3, 2)
        else:
            raise UnsupportedDatum(f"no flip involution shipped for {t}{rank}")
    else:
        st = tuple(star)

    order = _WEYL_ORDER[t](rank)
    return CartanDatum(f"{t}{rank}", rank, tuple(tuple(r) for r in cart), st, order)


def product_datum(left: CartanDatum, right: CartanDatum, swap_star: bool = True) -> CartanDatum:
    """Block-diagonal product datum; with ``swap_star`` the involution swaps factors."""
    if swap_star and (left.type_label != right.type_label or left.cartan != right.cartan):
        raise UnsupportedDatum("swap star needs identical factors")
    n = left.rank + right.rank
    cart = [[0] * n for _ in range(n)]
    for i in range(left.rank):
        for j in range(left.rank):
            cart[i][j] = left.cartan[i][j]
    for i in range(right.rank):
        for j in range(right.rank):
            cart[left.rank + i][left.rank + j] = right.cartan[i][j]
    if swap_star:
        st = tuple(list(range(left.rank, n)) + list(range(left.rank)))
    else:
        st = tuple(list(left.star) + [left.rank + k for k in right.star])
    order = left.weyl_order * right.weyl_order
    return CartanDatum(f"{left.type_label}x{right.type_label}", n,
                       tuple(tuple(r) for r in cart), st, order)
