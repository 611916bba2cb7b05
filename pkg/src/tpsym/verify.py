"""Seeded verification suites driving every invariant in the library.

Each suite returns a list of (check-name, passes, total) triples with
deterministic ordering for a given seed; the CLI renders them and the
acceptance tests assert on them.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import scalars
from .braid import apply_edge, braid_graph, transition_map
from .cartan import datum
from .cells import (classify_cell, classify_unipotent_A, conjugation_step,
                    alpha_inverse, factor_unipotent_A, kappa, kappa_half,
                    kappa_joint, psi_plus, psi_minus, CellPoint)
from .involutions import (TwistedInvolution, cell_index_action, involution_words,
                          joint_words, twisted_involutions)
from .models import (GroupElement, gauss_decompose, get_model, mat_eq_exact,
                     model_for_datum)
from .moves import (MOVES, check_conservation, get_move, triangular_degree_check)
from .puiseux import PuiseuxScalar
from .semifields import PositiveRational, PuiseuxPositive, TropicalQ, semifield
from .weyl import WeylElement, weyl_group
from .zones import (usemifield_element, usemifield_multiply, zone_map,
                    utau_tropical_membership)

REL_WIDTH = Fraction(1, 2 ** 128)

TABLE_SPECS = [("A", 1, "identity"), ("A", 2, "identity"), ("A", 3, "identity"),
               ("B", 2, "identity"), ("B", 3, "identity"), ("C", 3, "identity"),
               ("D", 4, "identity"), ("A", 2, "flip"), ("A", 3, "flip"),
               ("D", 4, "flip")]

MOVE_MODELS = [("NS-4.3(i)", "SL3", {0: 0, 1: 1}),
               ("NS-4.4", "SL3*", {0: 0, 1: 1}),
               ("NS-4.5", "Sp4", {0: 0, 1: 1}),
               ("NS-4.6", "SL4*", {0: 0, 1: 1, 2: 2}),
               ("NS-4.7", "Sp6", {0: 2, 1: 1, 2: 0}),
               ("NS-4.8", "SO7", {0: 2, 1: 1, 2: 0}),
               ("NS-4.9", "SO8", {0: 1, 1: 0, 2: 2, 3: 3})]


def _rat(rng, bound=1000):
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def _small_rat(rng):
    return Fraction(rng.randint(1, 12), rng.randint(1, 6))


# -- weyl suite ----------------------------------------------------------------


def verify_weyl(seed: int = 0, samples: int = 20):
    rng = random.Random(seed)
    out = []

    count_ok = total = 0
    for spec in TABLE_SPECS:
        d = datum(*spec)
        g = weyl_group(d)
        brute = [eid for eid in range(len(g.elements))
                 if g.mul(eid, g.star(eid)) == 0]
        tis = twisted_involutions(d)
        total += 1
        if len(tis) == len(brute):
            count_ok += 1
    out.append(("twisted-involution counts match brute force", count_ok, total))

    norm_ok = total = 0
    for spec in TABLE_SPECS:
        d = datum(*spec)
        for ti in twisted_involutions(d):
            total += 1
            if (ti.element.length + ti.phi) % 2 == 0 and \
               ti.norm == (ti.element.length + ti.phi) // 2 and \
               all(len(w) == ti.norm for w in involution_words(d, ti)):
                norm_ok += 1
    out.append(("norm = (length + phi)/2 and word lengths", norm_ok, total))

    eig_ok = total = 0
    for spec in TABLE_SPECS:
        if spec[2] != "identity":
            continue
        d = datum(*spec)
        g = weyl_group(d)
        for ti in twisted_involutions(d):
            total += 1
            if ti.phi == g.neg_eigenspace_dim(ti.element.eid):
                eig_ok += 1
    out.append(("phi equals (-1)-eigenspace dimension (star=1)", eig_ok, total))

    dz_ok = total = 0
    for spec in (("A", 2, "identity"), ("B", 2, "identity")):
        d = datum(*spec)
        g = weyl_group(d)
        n = len(g.elements)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    total += 1
                    if g.demazure(g.demazure(a, b), c) == g.demazure(a, g.demazure(b, c)):
                        dz_ok += 1
    out.append(("demazure product associative (A2, B2)", dz_ok, total))

    act_ok = total = 0
    for spec in (("A", 2, "identity"), ("B", 2, "identity"), ("A", 2, "flip")):
        d = datum(*spec)
        g = weyl_group(d)
        tis = twisted_involutions(d)
        for u in range(len(g.elements)):
            for v in range(len(g.elements)):
                ue, ve = WeylElement(g, u), WeylElement(g, v)
                for ti in tis:
                    total += 1
                    lhs = cell_index_action(d, ue.demazure(ve), ti)
                    rhs = cell_index_action(d, ue, cell_index_action(d, ve, ti))
                    if lhs == rhs:
                        act_ok += 1
    out.append(("cell-index action is a monoid action", act_ok, total))

    redef_ok = total = 0
    for spec in TABLE_SPECS:
        d = datum(*spec)
        g = weyl_group(d)
        st = d.star
        for ti in twisted_involutions(d):
            for word in involution_words(d, ti):
                total += 1
                doubled = tuple(st[i] for i in reversed(word)) + tuple(word)
                if g.demazure_word(doubled) == ti.element.eid:
                    redef_ok += 1
    out.append(("doubled involution word has demazure product w", redef_ok, total))

    conn_ok = total = 0
    for spec in TABLE_SPECS:
        d = datum(*spec)
        for ti in twisted_involutions(d):
            total += 1
            try:
                braid_graph(d, ti)
                conn_ok += 1
            except Exception:
                pass
    out.append(("braid graphs connected (all supported types)", conn_ok, total))

    d = datum("A", 3, "flip")
    g = braid_graph(d, WeylElement.longest(d))
    has = any({e.source, e.target} == {(1, 2, 0, 1), (1, 2, 1, 0)}
              and e.tag == "NS-4.6" for e in g.edges)
    out.append(("A3 flip w0 contains the NS-4.3(iv) edge", int(has), 1))
    return out


# -- models suite ----------------------------------------------------------------


def verify_models(seed: int = 0, samples: int = 20):
    rng = random.Random(seed)
    out = []
    names = ["SL2", "SL3", "SL3*", "SL4", "SL4*", "GL2", "GL3", "Sp4", "Sp6",
             "SO7", "SO8", "SO8*", "SL2xSL2"]

    def rand_elt(m, k=4):
        g = m.identity()
        for _ in range(k):
            i = rng.randrange(m.datum.rank)
            a = _small_rat(rng)
            g = g * (m.gen_x(i, a) if rng.random() < 0.5 else m.gen_y(i, a))
        return g

    ok = total = 0
    for name in names:
        m = get_model(name)
        n = m.datum.rank
        from .models import mat_mul, mat_sub, mat_scale
        for i in range(n):
            for j in range(n):
                total += 1
                br = mat_sub(mat_mul(m.e_mats[i], m.f_mats[j]),
                             mat_mul(m.f_mats[j], m.e_mats[i]))
                if i != j:
                    if all(x == 0 for row in br for x in row):
                        ok += 1
                else:
                    good = True
                    for jj in range(n):
                        lhs = mat_sub(mat_mul(br, m.e_mats[jj]),
                                      mat_mul(m.e_mats[jj], br))
                        want = mat_scale(m.e_mats[jj], Fraction(m.datum.cartan[i][jj]))
                        if not mat_eq_exact(lhs, want):
                            good = False
                    ok += good
    out.append(("chevalley sl2 relations", ok, total))

    ok = total = 0
    for name in names:
        m = get_model(name)
        st = m.datum.star
        a = _small_rat(rng)
        good = all(m.tau(m.gen_x(i, a)) == m.gen_x(st[i], a)
                   and m.tau(m.gen_y(i, a)) == m.gen_y(st[i], a)
                   for i in range(m.datum.rank))
        for _ in range(max(2, samples // 8)):
            g, h = rand_elt(m), rand_elt(m)
            good = good and m.tau(m.tau(g)) == g and m.tau(g * h) == m.tau(h) * m.tau(g)
        total += 1
        ok += good
    out.append(("tau involutive antiautomorphism", ok, total))

    ok = total = 0
    for name in names:
        m = get_model(name)
        coords = [_small_rat(rng) for _ in range(m.torus_rank())]
        t = m.torus_elt(coords)
        a = _small_rat(rng)
        good = True
        for i in range(m.datum.rank):
            # alpha_i(t) read off the diagonal along any entry of e_i
            r, c = next((r, c) for r in range(m.dim) for c in range(m.dim)
                        if m.e_mats[i][r][c])
            val = scalars.div(t.matrix[r][r], t.matrix[c][c])
            if not (t * m.gen_x(i, a) * t.inverse()) == m.gen_x(i, scalars.mul(val, a)):
                good = False
        total += 1
        ok += good
    out.append(("torus conjugation scales generators", ok, total))

    ok = total = 0
    for name in names:
        m = get_model(name)
        good = True
        for i in range(m.datum.rank):
            for j in range(i + 1, m.datum.rank):
                mij = m.datum.m_order(i, j)
                seg = [i if q % 2 == 0 else j for q in
                       range({2: 2, 3: 3, 4: 4, 6: 6}[mij])]
                coords = tuple(_small_rat(rng) for _ in seg)
                if mij == 2:
                    lhs = m.gen_x(i, coords[0]) * m.gen_x(j, coords[1])
                    rhs = m.gen_x(j, coords[1]) * m.gen_x(i, coords[0])
                else:
                    tag = {3: "Std-A2", 4: "Std-B2", 6: "Std-G2"}[mij]
                    mv = get_move(tag)
                    if m.datum.cartan[i][j] in (-2, -3):
                        outs = mv.forward(coords)
                    elif m.datum.cartan[j][i] in (-2, -3):
                        outs = mv.backward(coords)
                    else:
                        outs = mv.forward(coords)
                    lhs = m.identity()
                    for q, cc in enumerate(coords):
                        lhs = lhs * m.gen_x(seg[q], cc)
                    rhs = m.identity()
                    for q, cc in enumerate(outs):
                        rhs = rhs * m.gen_x(seg[1] if q % 2 == 0 else seg[0], cc)
                if not lhs == rhs:
                    good = False
        total += 1
        ok += good
    out.append(("braid relations among one-parameter subgroups", ok, total))

    gl2 = get_model("GL2")
    ok = total = 0
    for _ in range(samples):
        g = rand_elt(gl2, 3)
        total += 1
        parity = all(scalars.sign(g.matrix[r][c]) == 0
                     for r in range(2) for c in range(2) if (r + c) % 2 == 1)
        if gl2.is_in_h(g) == (parity and g == gl2.tau(g.inverse())):
            # direct parity test only valid on H candidates; check agreement
            ok += 1
    out.append(("GL2 H-membership defined by tau(g^-1)=g", ok, total))

    ok = total = 0
    for name in ("GL2", "SL3", "Sp4"):
        m = get_model(name)
        for _ in range(samples // 2):
            lo = psi_minus(m, _any_reduced_word(m, rng), ())
            total += 1
            wneg = _rand_word(m, rng)
            wpos = _rand_word(m, rng)
            lo = m.identity()
            for i in wneg:
                lo = lo * m.gen_y(i, _small_rat(rng))
            t = m.torus_elt([_small_rat(rng) for _ in range(m.torus_rank())])
            up = m.identity()
            for i in wpos:
                up = up * m.gen_x(i, _small_rat(rng))
            g = lo * t * up
            l2, t2, u2 = gauss_decompose(m, g)
            if l2 * t2 * u2 == g and mat_eq_exact(t2.matrix, t.matrix):
                ok += 1
    out.append(("gauss decomposition round trip", ok, total))

    pm = get_model("SL2xSL2")
    ok = total = 0
    for _ in range(samples):
        gb = rand_elt(pm.base, 3)
        total += 1
        if pm.is_tau_fixed(pm.pair(gb, pm.base.sigma(gb))):
            ok += 1
    out.append(("GxG: (g, sigma g) is tau-fixed", ok, total))

    ok = total = 0
    sl3s = get_model("SL3*")
    for _ in range(samples):
        u = _small_rat(rng)
        t1 = sl3s.torus_elt([u, 1 / u])  # palindromic diag(u, u^-2, u)
        total += 1
        try:
            half = sl3s.torus_half(t1)
            ok += 1
        except Exception:
            pass
    gl2 = get_model("GL2")
    total += 1
    try:
        gl2.torus_half(gl2.identity())
        ok += 1
    except Exception:
        pass
    out.append(("torus_half solves t2 tau(t2) = t1", ok, total))

    dims = {"GL2": 0, "SL3": 0, "SL3*": 1, "SO8*": 1, "SL2xSL2": 1}
    ok = sum(1 for k, v in dims.items() if get_model(k).dim_tau_fixed_torus() == v)
    out.append(("tau-fixed torus dimensions", ok, len(dims)))
    return out


def _rand_word(m, rng, maxlen=3):
    return [rng.randrange(m.datum.rank) for _ in range(rng.randint(0, maxlen))]


def _any_reduced_word(m, rng):
    return ()


# -- cells suite ----------------------------------------------------------------


def verify_cells(seed: int = 0, samples: int = 200):
    rng = random.Random(seed)
    out = []

    ok = total = 0
    for name in ("SL3", "SL4"):
        m = get_model(name)
        g = weyl_group(m.datum)
        for _ in range(samples // 2):
            eid = rng.randrange(len(g.elements))
            word = g.reduced_words(eid)[rng.randrange(len(g.reduced_words(eid)))]
            coords = tuple(_rat(rng, 50) for _ in word)
            total += 1
            if factor_unipotent_A(m, psi_plus(m, word, coords), word) == coords:
                ok += 1
    out.append(("factor after psi is the identity", ok, total))

    ok = total = 0
    for spec in (("A", 2, "identity"), ("A", 3, "identity"),
                 ("A", 2, "flip"), ("A", 3, "flip")):
        d = datum(*spec)
        m = model_for_datum(d)
        for ti in twisted_involutions(d):
            words = involution_words(d, ti)
            word = words[0]
            for i in range(d.rank):
                coords = tuple(_small_rat(rng) for _ in word)
                u = kappa(m, word, coords) if word else m.identity()
                a = _small_rat(rng)
                img = m.twisted_action(m.gen_x(i, a), u)
                total += 1
                want = cell_index_action(d, WeylElement.from_word(d, (i,)), ti)
                if classify_cell(m, img).element == want.element:
                    ok += 1
    out.append(("classify(twisted action) matches index action", ok, total))

    ok = total = 0
    for spec in (("A", 2, "identity"), ("A", 3, "identity")):
        d = datum(*spec)
        m = model_for_datum(d)
        g = weyl_group(d)
        for _ in range(samples // 8):
            e1, e2 = rng.randrange(len(g.elements)), rng.randrange(len(g.elements))
            w1, w2 = g.word_of(e1), g.word_of(e2)
            u1 = psi_plus(m, w1, tuple(_small_rat(rng) for _ in w1))
            u2 = psi_plus(m, w2, tuple(_small_rat(rng) for _ in w2))
            total += 1
            if classify_unipotent_A(m, u1 * u2).eid == g.demazure(e1, e2):
                ok += 1
    out.append(("cell multiplication follows the demazure product", ok, total))

    ok = total = 0
    for spec in (("A", 2, "identity"), ("A", 2, "flip"), ("A", 3, "flip")):
        d = datum(*spec)
        m = model_for_datum(d)
        for ti in twisted_involutions(d):
            if ti.norm == 0:
                continue
            words = involution_words(d, ti)
            for word in words:
                coords = tuple(_small_rat(rng) for _ in word)
                total += 1
                if m.is_tau_fixed(kappa(m, word, coords)):
                    ok += 1
    out.append(("kappa images are tau-fixed", ok, total))

    ok = total = 0
    d = datum("A", 2, "identity")
    m = model_for_datum(d)
    for _ in range(samples // 10):
        # conjugation step against the direct matrix product (append case)
        c = _small_rat(rng)
        s1 = TwistedInvolution.of(d, WeylElement.from_word(d, (1,)))
        pt = CellPoint("U+", (1,), (c,), s1)
        a = _small_rat(rng)
        stepped = conjugation_step(m, pt, 0, a)
        total += 1
        target = kappa(m, stepped.word, stepped.coords)
        direct = m.gen_x(d.star[0], a) * kappa(m, (1,), (c,)) * m.gen_x(0, a)
        if mat_eq_exact(target.matrix, direct.matrix):
            ok += 1
        # stable case: a word ending in the letter gains the parameter
        total += 1
        b = _small_rat(rng)
        stable = conjugation_step(m, stepped, stepped.word[-1], b)
        direct2 = m.gen_x(d.star[stepped.word[-1]], b) * direct \
            * m.gen_x(stepped.word[-1], b)
        if mat_eq_exact(kappa(m, stable.word, stable.coords).matrix, direct2.matrix):
            ok += 1
    out.append(("conjugation step matches the twisted action", ok, total))

    ok = total = 0
    df = datum("A", 2, "flip")
    mf = model_for_datum(df)
    for _ in range(samples // 10):
        # 2.2-case appending map and its inversion: s_{i*} w = w s_i
        c = _small_rat(rng)
        a = _small_rat(rng)
        u = kappa(mf, (1,), (c,))
        g = mf.gen_x(df.star[0], a) * u * mf.gen_x(0, a)
        w0 = TwistedInvolution.of(df, WeylElement.longest(df))
        total += 1
        back, aa = alpha_inverse(mf, g, w0, 0)
        recon = psi_plus(mf, back.word, back.coords)
        if scalars.eq_exact(aa, a) and recon == u:
            ok += 1
    out.append(("appending-map inversion recovers the parameter", ok, total))

    ok = total = 0
    gl2 = get_model("GL2")
    d1 = gl2.datum
    s = WeylElement.from_word(d1, (0,))
    tw = TwistedInvolution.of(d1, s)
    jws = joint_words(d1, tw, tw)
    for _ in range(samples // 4):
        jw = jws[rng.randrange(len(jws))]
        coords = tuple(_small_rat(rng) for _ in jw.letters)
        g = kappa_joint(gl2, jw, coords, gl2.identity())
        total += 1
        det = scalars.sub(scalars.mul(g.matrix[0][0], g.matrix[1][1]),
                          scalars.mul(g.matrix[0][1], g.matrix[1][0]))
        if gl2.is_tau_fixed(g) and scalars.eq_exact(det, Fraction(1)) \
                and scalars.eq_exact(g.matrix[0][0], g.matrix[1][1]):
            ok += 1
    out.append(("GL2 joint cells: tau-fixed, equal diagonal, det 1", ok, total))

    ok = total = 0
    for name in ("GL2", "SL3", "SL3*"):
        m = get_model(name)
        d = m.datum
        dimt = m.dim_tau_fixed_torus()
        for t1 in twisted_involutions(d):
            for t2 in twisted_involutions(d):
                total += 1
                if t1.norm + t2.norm + dimt == _joint_param_count(m, t1, t2):
                    ok += 1
    out.append(("joint cell parameter counts", ok, total))

    ok = total = 0
    sl3s = get_model("SL3*")
    ds = sl3s.datum
    tis = twisted_involutions(ds)
    for _ in range(samples // 10):
        t1 = tis[rng.randrange(len(tis))]
        t2 = tis[rng.randrange(len(tis))]
        jws = joint_words(ds, t1, t2)
        jw = jws[rng.randrange(len(jws))]
        coords = tuple(_small_rat(rng) for _ in jw.letters)
        u = _small_rat(rng)
        torus = sl3s.torus_elt([u * u, 1 / (u * u)])
        g = kappa_joint(sl3s, jw, coords, torus)
        half = sl3s.torus_half(torus)
        h = kappa_half(sl3s, jw, coords, half)
        total += 1
        if (h * sl3s.tau(h)) == g:
            ok += 1
    out.append(("joint cells lie in the orbit of 1: g = h tau(h)", ok, total))
    return out


def _joint_param_count(model, t1, t2) -> int:
    jw = joint_words(model.datum, t1, t2)[0]
    return len(jw.letters) + model.dim_tau_fixed_torus()


# -- moves suite ----------------------------------------------------------------


def verify_moves(seed: int = 0, samples: int = 100):
    rng = random.Random(seed)
    out = []

    for tag, model_name, node_map in MOVE_MODELS:
        mv = get_move(tag)
        model = get_model(model_name)
        p = mv.pattern
        src = tuple(node_map[x] for x in p.source)
        tgt = tuple(node_map[x] for x in p.target)
        ok = 0
        exact = 0
        for _ in range(samples):
            coords = tuple(_rat(rng) for _ in range(mv.arity))
            outw = mv.word_forward(coords)
            lhs = kappa(model, src, coords)
            rhs = kappa(model, tgt, outw)
            certs = set()
            good = True
            for r in range(model.dim):
                for c in range(model.dim):
                    try:
                        certs.add(scalars.certify_equal(
                            lhs.matrix[r][c], rhs.matrix[r][c], REL_WIDTH))
                    except scalars.UndecidableComparison:
                        good = False
            if good:
                ok += 1
                if certs <= {"exact"}:
                    exact += 1
        out.append((f"{tag} matrix identity in {model_name}", ok, samples))

    ok = total = 0
    m44 = get_move("NS-4.4")
    total += 1
    if m44.forward((Fraction(1), Fraction(4))) == (Fraction(2), Fraction(3)):
        ok += 1
    m45 = get_move("NS-4.5")
    total += 1
    if m45.forward((Fraction(1), Fraction(1), Fraction(1))) == \
            (Fraction(1, 4), Fraction(2), Fraction(3, 4)) and \
            m45.backward((Fraction(1, 4), Fraction(2), Fraction(3, 4))) == \
            (Fraction(1), Fraction(1), Fraction(1)):
        ok += 1
    m46 = get_move("NS-4.6")
    back = m46.backward((Fraction(1),) * 4)
    total += 1
    try:
        certs = check_conservation("NS-4.6", back, (Fraction(1),) * 4)
        rt = m46.forward(back)
        if all(c == "exact" for _, c in certs) and \
                all(scalars.eq_exact(x, Fraction(1)) for x in rt) and \
                all(isinstance(x, (Fraction, scalars.QuadExt)) and
                    (not isinstance(x, scalars.QuadExt) or x.d == 3) for x in back):
            ok += 1
    except scalars.UndecidableComparison:
        pass
    out.append(("closed-form spot checks (4.4, 4.5, 4.6)", ok, total))

    for tag in ("NS-4.4", "NS-4.6", "NS-4.7", "NS-4.8", "NS-4.9"):
        mv = get_move(tag)
        ok = 0
        for _ in range(samples):
            vals = tuple(_rat(rng) for _ in range(mv.arity))
            outs = mv.forward(vals)
            try:
                check_conservation(tag, vals, outs, REL_WIDTH)
                ok += 1
            except scalars.UndecidableComparison:
                pass
        out.append((f"{tag} conservation system", ok, samples))

    for tag in ("NS-4.4", "NS-4.5", "NS-4.6", "NS-4.7", "NS-4.8", "NS-4.9"):
        mv = get_move(tag)
        ok = 0
        for _ in range(samples):
            vals = tuple(_rat(rng) for _ in range(mv.arity))
            try:
                outs = mv.forward(vals)
                back = mv.backward(outs)
                if all(scalars.certify_equal(x, y, REL_WIDTH) in ("exact", "interval")
                       for x, y in zip(vals, back)):
                    ok += 1
            except scalars.UndecidableComparison:
                pass
        out.append((f"{tag} round trip", ok, samples))

    ok = total = 0
    for tag in ("NS-4.4", "NS-4.5", "NS-4.6", "NS-4.7", "NS-4.8", "NS-4.9"):
        mv = get_move(tag)
        for direction in ("forward", "backward"):
            vals = tuple(_rat(rng) for _ in range(mv.arity))
            outs = mv.apply(direction, vals)
            total += 1
            try:
                rep = triangular_degree_check(tag, direction, vals, outs)
                if rep["max_min_rule"]:
                    ok += 1
            except Exception:
                pass
    out.append(("triangular form degrees", ok, total))

    # path independence on cycles
    ok = total = 0
    for spec in (("A", 3, "flip"), ("A", 3, "identity")):
        d = datum(*spec)
        g = braid_graph(d, WeylElement.longest(d))
        adj = g.adjacency()
        base = g.vertices[0]
        for _ in range(samples // 4):
            coords = tuple(_small_rat(rng) for _ in base)
            cur, cc = base, coords
            for _ in range(6):
                es = sorted(adj[cur], key=lambda e: (e.target, e.tag, e.position))
                e = es[rng.randrange(len(es))]
                cc = apply_edge(d, e, cc)
                cur = e.target
            tm = transition_map(g, cur, base)
            back = tm.apply(cc)
            total += 1
            try:
                if all(scalars.certify_equal(x, y, REL_WIDTH) in ("exact", "interval")
                       for x, y in zip(back, coords)):
                    ok += 1
            except scalars.UndecidableComparison:
                pass
    out.append(("transition maps are path independent", ok, total))

    # Std-B2 regeneration against Sp4; Std-G2 against the folded strands
    sp4 = get_model("Sp4")
    mv = get_move("Std-B2")
    ok = 0
    n = max(10, samples // 10)
    for _ in range(n):
        coords = tuple(_small_rat(rng) for _ in range(4))
        outs = mv.forward(coords)
        lhs = sp4.identity()
        for q, ccv in enumerate(coords):
            lhs = lhs * sp4.gen_x(0 if q % 2 == 0 else 1, ccv)
        rhs = sp4.identity()
        for q, ccv in enumerate(outs):
            rhs = rhs * sp4.gen_x(1 if q % 2 == 0 else 0, ccv)
        if lhs == rhs:
            ok += 1
    out.append(("Std-B2 regeneration against Sp4", ok, n))
    return out


# -- zones suite ----------------------------------------------------------------


def _puiseux_sample(rng) -> PuiseuxScalar:
    lead = Fraction(rng.choice([0, 1, -1, 2, 3]), rng.choice([1, 2]))
    terms = [(lead, Fraction(rng.randint(1, 9)))]
    for _ in range(3):
        terms.append((lead + Fraction(rng.randint(1, 6), 2),
                      Fraction(rng.randint(1, 9))))
    return PuiseuxScalar(terms)


def verify_zones(seed: int = 0, samples: int = 200):
    rng = random.Random(seed)
    out = []
    P = PuiseuxPositive()

    ok = 0
    n = max(100, samples * 5 // 2)
    for _ in range(n):
        x, y = _puiseux_sample(rng), _puiseux_sample(rng)
        good = (x * y).valuation == x.valuation + y.valuation
        good = good and (x + y).valuation == min(x.valuation, y.valuation)
        good = good and (x / y).valuation == x.valuation - y.valuation
        good = good and x.sqrt().valuation == x.valuation / 2
        ok += good
    out.append(("valuation is a semifield homomorphism", ok, n))

    for tag in ("Std-A1A1", "Std-A2", "Std-B2", "NS-4.3(i)",
                "NS-4.4", "NS-4.5", "NS-4.6"):
        mv = get_move(tag)
        zm = zone_map(tag)
        ok = 0
        for _ in range(samples):
            xs = tuple(_puiseux_sample(rng) for _ in range(mv.arity))
            outs = mv.forward(xs, P)
            vals = zm(tuple(x.valuation for x in xs))
            if tuple(o.valuation for o in outs) == tuple(vals):
                ok += 1
        out.append((f"{tag} zone preservation", ok, samples))

    zm = zone_map("NS-4.4")
    got = zm((Fraction(1), Fraction(0)))
    out.append(("NS-4.4 sends (1,0) to the half-integer (0,1/2)",
                int(got == (Fraction(0), Fraction(1, 2))), 1))

    ok = 0
    n = samples // 2
    for _ in range(n):
        vin = tuple(Fraction(rng.randint(-8, 8)) for _ in range(4))
        f = zone_map("NS-4.6", "forward")
        b = zone_map("NS-4.6", "backward")
        mid = f(vin)
        half_ok = all(v.denominator in (1, 2) for v in mid)
        ok += half_ok and tuple(b(mid)) == vin
    out.append(("NS-4.6 zone map bijective, single halving on Z inputs", ok, n))

    ok = total = 0
    for spec in (("A", 2, "identity"), ("B", 2, "identity")):
        d = datum(*spec)
        g = weyl_group(d)
        triv = semifield("trivial")
        els = [usemifield_element(d, triv, g.word_of(e), [()] * g.len_of(e))
               for e in range(len(g.elements))]
        for x in els:
            for y in els:
                total += 1
                z = usemifield_multiply(d, triv, x, y)
                if z.index.eid == g.demazure(x.index.eid, y.index.eid):
                    ok += 1
    out.append(("trivial semifield monoid equals demazure table", ok, total))

    ok = 0
    n = samples // 2
    d2 = datum("A", 2)
    sl3 = get_model("SL3")
    g = weyl_group(d2)
    PR = PositiveRational()
    for _ in range(n):
        e1, e2 = rng.randrange(6), rng.randrange(6)
        w1, w2 = g.word_of(e1), g.word_of(e2)
        c1 = tuple(_small_rat(rng) for _ in w1)
        c2 = tuple(_small_rat(rng) for _ in w2)
        z = usemifield_multiply(d2, PR, usemifield_element(d2, PR, w1, c1),
                                usemifield_element(d2, PR, w2, c2))
        gm = sl3.identity()
        for w_, c_ in ((w1, c1), (w2, c2)):
            for i, cc in zip(w_, c_):
                gm = gm * sl3.gen_x(i, cc)
        if classify_unipotent_A(sl3, gm).eid == z.index.eid and \
                (not z.word or factor_unipotent_A(sl3, gm, z.word) == tuple(z.coords)):
            ok += 1
    out.append(("positive-rational monoid matches the SL3 oracle", ok, n))

    d = datum("A", 2, "flip")
    w0 = WeylElement.longest(d)
    member = utau_tropical_membership(
        d, w0, {(0, 1): (Fraction(0), Fraction(1)),
                (1, 0): (Fraction(1, 2), Fraction(0))})
    nonmember = utau_tropical_membership(
        d, w0, {(0, 1): (Fraction(0), Fraction(1)),
                (1, 0): (Fraction(1), Fraction(0))})
    out.append(("tropical membership gluing example", int(member and not nonmember), 1))
    return out


SUITES = {
    "weyl": verify_weyl,
    "models": verify_models,
    "cells": verify_cells,
    "moves": verify_moves,
    "zones": verify_zones,
}


def run_suites(which: str = "all", seed: int = 0, samples: int | None = None):
    names = sorted(SUITES) if which == "all" else [which]
    report = []
    defaults = {"weyl": 20, "models": 20, "cells": 200, "moves": 100, "zones": 200}
    for name in names:
        n = samples if samples is not None else defaults[name]
        checks = SUITES[name](seed=seed, samples=n)
        report.append((name, checks))
    return report
