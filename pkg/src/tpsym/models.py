"""Pinned matrix models of reductive groups over the exact scalar tower.

Each model carries Chevalley generator matrices e_i, f_i in a weight basis,
cocharacter exponent vectors for the torus, and recipes for sigma, omega
and tau.  sigma(g) = C g^{-1} C^{-1} for the parity diagonal C (alternating
signs along the principal height grading); omega is the identity, a signed
antidiagonal inverse-transpose twist (type A flip), a basis swap (D4 flip),
or the factor swap (product models).

All matrices are lists of lists over the scalar tower; models are small
(dimension <= 8 per factor) and validated by an invariant suite in the
tests rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import scalars
from .cartan import CartanDatum, UnsupportedDatum, datum as make_datum, product_datum
from .scalars import Scalar, sqrt as tower_sqrt


# -- matrix helpers over the tower ----------------------------------------


def mat_identity(n):
    return [[Fraction(1) if r == c else Fraction(0) for c in range(n)] for r in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for r in range(n):
        row = []
        ar = a[r]
        for c in range(p):
            acc = ar[0] * b[0][c]
            for k in range(1, m):
                term = ar[k] * b[k][c]
                acc = scalars.add(acc, term) if not isinstance(acc, (int, Fraction)) \
                    or not isinstance(term, (int, Fraction)) else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_scale(a, s):
    return [[scalars.mul(x, s) for x in row] for row in a]


def mat_add(a, b):
    return [[scalars.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[scalars.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_inv(a):
    """Exact inverse by Gauss-Jordan; requires exact (non-interval) entries."""
    n = len(a)
    m = [list(row) + [Fraction(1) if r == c else Fraction(0) for c in range(n)]
         for r, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if scalars.sign(m[r][col]) != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [scalars.div(x, pv) for x in m[col]]
        for r in range(n):
            if r != col and scalars.sign(m[r][col]) != 0:
                f = m[r][col]
                m[r] = [scalars.sub(x, scalars.mul(f, y)) for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq_exact(a, b) -> bool:
    return all(scalars.eq_exact(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_expnil(e, coeff):
    """exp(coeff * e) for a nilpotent integer matrix e."""
    n = len(e)
    out = mat_identity(n)
    term = mat_identity(n)
    fact = 1
    for k in range(1, 2 * n):
        term = mat_mul(term, e)
        if all(x == 0 for row in term for x in row):
            break
        fact *= k
        out = mat_add(out, mat_scale(term, scalars.div(_power(coeff, k), fact)))
    return out


def _power(x, k):
    out = Fraction(1)
    for _ in range(k):
        out = scalars.mul(out, x)
    return out


# -- model definition ------------------------------------------------------


@dataclass
class PinnedModel:
    """Exact matrix model with pinning (T, x_i, y_i) and sigma/omega/tau."""

    name: str
    datum: CartanDatum
    dim: int
    e_mats: list          # integer matrices, one per node
    f_mats: list
    cochar: list          # cocharacter exponent vectors, one per node, len == dim
    det_constrained: bool = True   # SL/Sp/SO: no independent determinant torus
    omega_kind: str = "identity"   # identity | antidiag | swap45 | product-swap
    extra_cochar: list = field(default_factory=list)   # GL_n: full diagonal torus
    _parity: list = field(default=None, repr=False)
    _omega_j: list = field(default=None, repr=False)

    def __post_init__(self):
        self._parity = self._height_parity()
        if self.omega_kind == "antidiag":
            n = self.dim
            j = [[Fraction(0)] * n for _ in range(n)]
            for k in range(n):
                j[k][n - 1 - k] = Fraction((-1) ** k)
            self._omega_j = j

    def _height_parity(self):
        """Parity of the principal height grading of the weight basis."""
        n = self.dim
        par = [None] * n
        # e_i entries connect basis vectors whose heights differ by one
        edges = [(r, c) for e in self.e_mats
                 for r in range(n) for c in range(n) if e[r][c] != 0]
        while any(p is None for p in par):
            par[next(k for k in range(n) if par[k] is None)] = 0
            changed = True
            while changed:
                changed = False
                for r, c in edges:
                    if par[c] is not None and par[r] is None:
                        par[r] = (par[c] + 1) % 2
                        changed = True
                    elif par[r] is not None and par[c] is None:
                        par[c] = (par[r] + 1) % 2
                        changed = True
                    elif par[r] is not None and par[c] is not None:
                        if (par[r] - par[c]) % 2 != 1:
                            raise AssertionError("height parity inconsistent")
        return par

    # -- generators ---------------------------------------------------------

    def gen_x(self, i: int, a: Scalar):
        return GroupElement(self, mat_expnil(self.e_mats[i], _as_scalar(a)))

    def gen_y(self, i: int, a: Scalar):
        return GroupElement(self, mat_expnil(self.f_mats[i], _as_scalar(a)))

    def torus_elt(self, coords):
        """Element of T from positive cocharacter coordinates.

        coords has one entry per node (plus entries for extra cocharacters
        when the model carries them, e.g. the centre of GL_n).
        """
        vecs = self.cochar + self.extra_cochar
        if len(coords) != len(vecs):
            raise ValueError("torus coordinate count mismatch")
        diag = [Fraction(1)] * self.dim
        for u, vec in zip(coords, vecs):
            u = _as_scalar(u)
            if not scalars.is_positive(u):
                raise ValueError("torus coordinates must be positive")
            for k in range(self.dim):
                ex = vec[k]
                if ex:
                    diag[k] = scalars.mul(diag[k], _power(u, ex) if ex > 0
                                          else scalars.div(1, _power(u, -ex)))
        m = mat_identity(self.dim)
        for k in range(self.dim):
            m[k][k] = diag[k]
        return GroupElement(self, m)

    def identity(self):
        return GroupElement(self, mat_identity(self.dim))

    # -- sigma / omega / tau --------------------------------------------------

    def sigma(self, g: "GroupElement") -> "GroupElement":
        inv = mat_inv(g.matrix)
        c = self._parity
        out = [[inv[r][col] if (c[r] - c[col]) % 2 == 0 else scalars.mul(inv[r][col], -1)
                for col in range(self.dim)] for r in range(self.dim)]
        return GroupElement(self, out)

    def omega(self, g: "GroupElement") -> "GroupElement":
        if self.omega_kind == "identity":
            return g
        if self.omega_kind == "antidiag":
            gt = mat_transpose(g.matrix)
            return GroupElement(self, mat_mul(self._omega_j,
                                              mat_mul(mat_inv(gt), mat_inv(self._omega_j))))
        if self.omega_kind == "swap45":
            # conjugation by the basis transposition realizing the fork swap
            k = self.dim // 2 - 1
            m = [row[:] for row in g.matrix]
            m[k], m[k + 1] = m[k + 1], m[k]
            for row in m:
                row[k], row[k + 1] = row[k + 1], row[k]
            return GroupElement(self, m)
        raise UnsupportedDatum(f"no omega recipe: {self.omega_kind}")

    def tau(self, g: "GroupElement") -> "GroupElement":
        return self.omega(self.sigma(g))

    def twisted_action(self, g: "GroupElement", g1: "GroupElement") -> "GroupElement":
        return g * g1 * self.tau(g)

    def is_tau_fixed(self, g: "GroupElement") -> bool:
        return mat_eq_exact(self.tau(g).matrix, g.matrix)

    def is_in_h(self, g: "GroupElement") -> bool:
        return mat_eq_exact(self.tau(g.inverse()).matrix, g.matrix)

    # -- torus structure -------------------------------------------------------

    def torus_rank(self) -> int:
        return len(self.cochar) + len(self.extra_cochar)

    def tau_cochar_matrix(self):
        """Matrix of the involution induced by tau on torus coordinates.

        tau(t(u)) = t(M u) multiplicatively; M = -(star permutation) on the
        cocharacter basis.
        """
        vecs = self.cochar + self.extra_cochar
        r = len(vecs)
        st = self.datum.star
        m = [[0] * r for _ in range(r)]
        for j in range(len(self.cochar)):
            m[st[j]][j] = -1
        for j in range(len(self.cochar), r):
            m[j][j] = -1   # extra cocharacters are star-stable, sigma inverts
        return m

    def tau_fixed_cochar_basis(self):
        """Integer basis of the tau-fixed subspace of torus coordinates."""
        m = self.tau_cochar_matrix()
        r = len(m)
        rows = [[Fraction(m[i][j] - (1 if i == j else 0)) for j in range(r)]
                for i in range(r)]
        # kernel of (M - I)
        basis = _rational_kernel(rows)
        out = []
        for v in basis:
            den = 1
            for x in v:
                den = den * x.denominator // _gcd(den, x.denominator)
            out.append([int(x * den) for x in v])
        return out

    def dim_tau_fixed_torus(self) -> int:
        return len(self.tau_fixed_cochar_basis())

    def torus_half(self, t: "GroupElement") -> "GroupElement":
        """t2 with t2 * tau(t2) = t for tau-fixed positive diagonal t."""
        if not _is_diagonal(t.matrix):
            raise ValueError("torus_half needs a torus element")
        if not self.is_tau_fixed(t):
            raise ValueError("torus element is not tau-fixed")
        n = self.dim
        m = mat_identity(n)
        for k in range(n):
            d = t.matrix[k][k]
            if not scalars.is_positive(d):
                raise ValueError("torus element is not positive")
            m[k][k] = tower_sqrt(d)
        half = GroupElement(self, m)
        prod = half * self.tau(half)
        if not mat_eq_exact(prod.matrix, t.matrix):
            raise AssertionError("square root of torus element failed")
        return half


def _as_scalar(a) -> Scalar:
    if isinstance(a, int):
        return Fraction(a)
    return a


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


def _is_diagonal(m) -> bool:
    return all(scalars.sign(m[r][c]) == 0
               for r in range(len(m)) for c in range(len(m)) if r != c)


def _rational_kernel(rows):
    n = len(rows[0])
    rows = [row[:] for row in rows]
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


class GroupElement:
    """Invertible matrix over the scalar tower attached to a model."""

    __slots__ = ("model", "matrix")

    def __init__(self, model: PinnedModel, matrix):
        self.model = model
        self.matrix = matrix

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.model is not self.model:
            raise ValueError("elements of different models")
        return GroupElement(self.model, mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.model, mat_inv(self.matrix))

    def __eq__(self, other):
        return isinstance(other, GroupElement) and mat_eq_exact(self.matrix, other.matrix)

    def entry(self, r, c):
        return self.matrix[r][c]

    def __repr__(self):
        return f"<{self.model.name} element {self.matrix!r}>"


# -- Gauss decomposition ----------------------------------------------------


class NotInOpenCell(ValueError):
    pass


def gauss_decompose(model: PinnedModel, g: GroupElement):
    """g = lower-unipotent * diagonal * upper-unipotent, exact and unique."""
    n = model.dim
    a = [row[:] for row in g.matrix]
    lower = mat_identity(n)
    for col in range(n):
        piv = a[col][col]
        if scalars.sign(piv) == 0:
            raise NotInOpenCell(f"leading principal minor {col + 1} vanishes")
        for r in range(col + 1, n):
            if scalars.sign(a[r][col]) != 0:
                f = scalars.div(a[r][col], piv)
                a[r] = [scalars.sub(x, scalars.mul(f, y)) for x, y in zip(a[r], a[col])]
                for i in range(n):
                    lower[i][col] = scalars.add(lower[i][col],
                                                scalars.mul(f, lower[i][r]))
    diag = mat_identity(n)
    upper = mat_identity(n)
    for r in range(n):
        diag[r][r] = a[r][r]
        for c in range(r + 1, n):
            upper[r][c] = scalars.div(a[r][c], a[r][r])
    return (GroupElement(model, lower), GroupElement(model, diag),
            GroupElement(model, upper))


# -- concrete models ---------------------------------------------------------


def _emat(n, entries):
    m = [[0] * n for _ in range(n)]
    for r, c, v in entries:
        m[r - 1][c - 1] = v
    return m


def sl_model(rank: int, star: str = "identity") -> PinnedModel:
    """SL_{rank+1} with the standard pinning; star 'flip' uses the signed
    antidiagonal inverse-transpose omega."""
    n = rank + 1
    d = make_datum("A", rank, star)
    e = [_emat(n, [(i + 1, i + 2, 1)]) for i in range(rank)]
    f = [_emat(n, [(i + 2, i + 1, 1)]) for i in range(rank)]
    coch = []
    for i in range(rank):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        coch.append(v)
    return PinnedModel(f"SL{n}" + ("*" if star == "flip" else ""), d, n, e, f, coch,
                       omega_kind="identity" if star == "identity" else "antidiag")


def gl_model(n: int) -> PinnedModel:
    """GL_n, star = identity; torus has the full diagonal (simple cocharacters
    plus the last coordinate line)."""
    d = make_datum("A", n - 1, "identity")
    e = [_emat(n, [(i + 1, i + 2, 1)]) for i in range(n - 1)]
    f = [_emat(n, [(i + 2, i + 1, 1)]) for i in range(n - 1)]
    coch = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        coch.append(v)
    extra = [[0] * (n - 1) + [1]]
    return PinnedModel(f"GL{n}", d, n, e, f, coch,
                       det_constrained=False, extra_cochar=extra)


def sp_model(rank: int) -> PinnedModel:
    """Sp_{2n} (type C_n), antidiagonal alternating symplectic form."""
    n2 = 2 * rank
    e, f = [], []
    for i in range(rank - 1):
        e.append(_emat(n2, [(i + 1, i + 2, 1), (n2 - i - 1, n2 - i, 1)]))
        f.append(_emat(n2, [(i + 2, i + 1, 1), (n2 - i, n2 - i - 1, 1)]))
    e.append(_emat(n2, [(rank, rank + 1, 1)]))
    f.append(_emat(n2, [(rank + 1, rank, 1)]))
    coch = []
    for i in range(rank - 1):
        v = [0] * n2
        v[i], v[i + 1] = 1, -1
        v[n2 - 2 - i], v[n2 - 1 - i] = 1, -1
        coch.append(v)
    v = [0] * n2
    v[rank - 1], v[rank] = 1, -1
    coch.append(v)
    d = make_datum("C", rank, "identity")
    return PinnedModel(f"Sp{n2}", d, n2, e, f, coch)


def so_odd_model(rank: int) -> PinnedModel:
    """SO_{2n+1} (type B_n); short-root generator carries the Chevalley 2."""
    n = 2 * rank + 1
    e, f = [], []
    for i in range(rank - 1):
        e.append(_emat(n, [(i + 1, i + 2, 1), (n - i - 1, n - i, 1)]))
        f.append(_emat(n, [(i + 2, i + 1, 1), (n - i, n - i - 1, 1)]))
    e.append(_emat(n, [(rank, rank + 1, 2), (rank + 1, rank + 2, 1)]))
    f.append(_emat(n, [(rank + 1, rank, 1), (rank + 2, rank + 1, 2)]))
    coch = []
    for i in range(rank - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        v[n - 2 - i], v[n - 1 - i] = 1, -1
        coch.append(v)
    v = [0] * n
    v[rank - 1], v[rank + 1] = 2, -2
    coch.append(v)
    d = make_datum("B", rank, "identity")
    return PinnedModel(f"SO{n}", d, n, e, f, coch)


def so_even_model(rank: int, star: str = "identity") -> PinnedModel:
    """SO_{2n} (type D_n); star 'flip' swaps the two fork nodes."""
    n = 2 * rank
    e, f = [], []
    for i in range(rank - 1):
        e.append(_emat(n, [(i + 1, i + 2, 1), (n - i - 1, n - i, 1)]))
        f.append(_emat(n, [(i + 2, i + 1, 1), (n - i, n - i - 1, 1)]))
    e.append(_emat(n, [(rank - 1, rank + 1, 1), (rank, rank + 2, 1)]))
    f.append(_emat(n, [(rank + 1, rank - 1, 1), (rank + 2, rank, 1)]))
    coch = []
    for i in range(rank - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        v[n - 2 - i], v[n - 1 - i] = 1, -1
        coch.append(v)
    v = [0] * n
    v[rank - 2], v[rank - 1] = 1, 1
    v[rank], v[rank + 1] = -1, -1
    coch.append(v)
    d = make_datum("D", rank, star)
    return PinnedModel(f"SO{n}" + ("*" if star == "flip" else ""), d, n, e, f, coch,
                       omega_kind="identity" if star == "identity" else "swap45")


class ProductModel(PinnedModel):
    """G x G with the swap omega: tau(g, g') = (sigma(g'), sigma(g))."""

    def __init__(self, base: PinnedModel):
        n = 2 * base.dim
        e = [_block(m, base.dim, 0) for m in base.e_mats] + \
            [_block(m, base.dim, 1) for m in base.e_mats]
        f = [_block(m, base.dim, 0) for m in base.f_mats] + \
            [_block(m, base.dim, 1) for m in base.f_mats]
        coch = [v + [0] * base.dim for v in base.cochar] + \
               [[0] * base.dim + v for v in base.cochar]
        d = product_datum(base.datum, base.datum, swap_star=True)
        super().__init__(f"{base.name}x{base.name}", d, n, e, f, coch,
                         omega_kind="product-swap")
        self.base = base

    def omega(self, g: GroupElement) -> GroupElement:
        k = self.dim // 2
        m = g.matrix
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for r in range(k):
            for c in range(k):
                out[r][c] = m[k + r][k + c]
                out[k + r][k + c] = m[r][c]
        return GroupElement(self, out)

    def pair(self, g1: GroupElement, g2: GroupElement) -> GroupElement:
        k = self.dim // 2
        m = mat_identity(self.dim)
        for r in range(k):
            for c in range(k):
                m[r][c] = g1.matrix[r][c]
                m[k + r][k + c] = g2.matrix[r][c]
        return GroupElement(self, m)

    def project(self, g: GroupElement, which: int) -> GroupElement:
        k = self.dim // 2
        off = 0 if which == 0 else k
        return GroupElement(self.base,
                            [[g.matrix[off + r][off + c] for c in range(k)]
                             for r in range(k)])


def _block(m, size, which):
    n = 2 * size
    out = [[0] * n for _ in range(n)]
    off = 0 if which == 0 else size
    for r in range(size):
        for c in range(size):
            out[off + r][off + c] = m[r][c]
    return out


def model_catalog() -> dict[str, callable]:
    """Shipped models keyed by catalog name."""
    return {
        "SL2": lambda: sl_model(1),
        "SL3": lambda: sl_model(2),
        "SL3*": lambda: sl_model(2, "flip"),
        "SL4": lambda: sl_model(3),
        "SL4*": lambda: sl_model(3, "flip"),
        "SL5*": lambda: sl_model(4, "flip"),
        "GL2": lambda: gl_model(2),
        "GL3": lambda: gl_model(3),
        "GL4": lambda: gl_model(4),
        "Sp4": lambda: sp_model(2),
        "Sp6": lambda: sp_model(3),
        "SO7": lambda: so_odd_model(3),
        "SO8": lambda: so_even_model(4),
        "SO8*": lambda: so_even_model(4, "flip"),
        "SL2xSL2": lambda: ProductModel(sl_model(1)),
    }


def get_model(name: str) -> PinnedModel:
    cat = model_catalog()
    if name not in cat:
        raise UnsupportedDatum(f"unknown model {name!r}; have {sorted(cat)}")
    return cat[name]()


def _relabel(model: PinnedModel, perm, d: CartanDatum) -> PinnedModel:
    """Same matrices, node i of the new datum = node perm[i] of the old."""
    return PinnedModel(model.name, d, model.dim,
                       [model.e_mats[perm[i]] for i in range(d.rank)],
                       [model.f_mats[perm[i]] for i in range(d.rank)],
                       [model.cochar[perm[i]] for i in range(d.rank)],
                       det_constrained=model.det_constrained,
                       omega_kind=model.omega_kind,
                       extra_cochar=model.extra_cochar)


def model_for_datum(d: CartanDatum) -> PinnedModel:
    """Defining-representation model for a supported irreducible datum."""
    t, rank = d.type_label[0], d.rank
    star = "identity" if d.star == tuple(range(rank)) else "flip"
    if t == "A":
        return sl_model(rank, star)
    if t in ("B", "C") and star != "identity":
        raise UnsupportedDatum("no nontrivial star in types B/C")
    if t == "C":
        return sp_model(rank)
    if t == "B":
        if rank == 2:
            # B2 = C2 with nodes renamed; ship Sp4 relabeled
            return _relabel(sp_model(2), (1, 0), d)
        return so_odd_model(rank)
    if t == "D":
        return so_even_model(rank, star)
    raise UnsupportedDatum(f"no matrix model for type {d.type_label}")
