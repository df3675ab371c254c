"""The degree-1 generators, the bracket b2 on Lambda^2 Lambda^3 H and its analysis.

Trivectors are dicts ``{(x, y, z): coefficient}`` over sorted label triples.
Elements of Lambda^2 Lambda^3 H (identified with Lie_2 of Lambda^3 H) are
dicts ``{(t, s): coefficient}`` with ``t < s`` sorted triples.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import config
from .diagrams import Theta, Y, H, canonicalize, loop_degree
from .elements import add, add_diagram, element, scale, sub
from .hopf import bracket, tree_reduce
from .linalg import Echelon, kernel_image, module_closure, span, vadd
from .quotient import quotient_basis
from .symplectic import (alpha, beta, label_action, sp_generators,
                         weight_of_label)


# ---------------------------------------------------------------------------
# Lambda^3 H and Lambda^2 Lambda^3 H

def _sort_sign(labels):
    labels = list(labels)
    if len(set(labels)) < len(labels):
        return None, 0
    sign = 1
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if labels[i] > labels[j]:
                sign = -sign
    return tuple(sorted(labels)), sign


def trivector(x, y, z) -> dict:
    t, s = _sort_sign((x, y, z))
    return {t: Fraction(s)} if s else {}


def wedge_with_omega(x, genus: int) -> dict:
    """x ^ omega = sum_i x ^ a_i ^ b_i."""
    out: dict = {}
    for i in range(1, genus + 1):
        vadd(out, trivector(x, alpha(i), beta(i)))
    return out


def lambda3_basis(genus: int) -> list:
    return list(itertools.combinations(range(2 * genus), 3))


def wedge2(t: dict, s: dict) -> dict:
    out: dict = {}
    for a, ca in t.items():
        for b, cb in s.items():
            if a == b:
                continue
            key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            y = out.get(key, 0) + sign * ca * cb
            if y:
                out[key] = y
            else:
                out.pop(key, None)
    return out


def lambda2_basis(genus: int) -> list:
    return list(itertools.combinations(lambda3_basis(genus), 2))


def y_map(t: dict) -> dict:
    out: dict = {}
    for (x, y, z), c in t.items():
        add_diagram(out, Y(x, y, z), c)
    return out


def b2(w: dict) -> dict:
    """[-,-]_star on Lambda^2 A^c_1 pulled back along the Y map."""
    out: dict = {}
    for (t, s), c in w.items():
        add(out, bracket(y_map({t: 1}), y_map({s: 1})), c)
    return out


def triple_weight(t, genus):
    w = [0] * genus
    for lab in t:
        for i, x in enumerate(weight_of_label(lab, genus)):
            w[i] += x
    return tuple(w)


def pair_weight(p, genus):
    a, b = triple_weight(p[0], genus), triple_weight(p[1], genus)
    return tuple(x + y for x, y in zip(a, b))


def sp_act_trivector(gen, t: dict, genus: int) -> dict:
    table = label_action(gen, genus)
    out: dict = {}
    for tri, c in t.items():
        for slot in range(3):
            for a, new in table[tri[slot]]:
                lab = list(tri)
                lab[slot] = new
                vadd(out, trivector(*lab), c * a)
    return out


def sp_act_wedge2(gen, w: dict, genus: int) -> dict:
    out: dict = {}
    for (t, s), c in w.items():
        vadd(out, wedge2(sp_act_trivector(gen, {t: 1}, genus), {s: 1}), c)
        vadd(out, wedge2({t: 1}, sp_act_trivector(gen, {s: 1}, genus)), c)
    return out


# ---------------------------------------------------------------------------
# distinguished elements

def relations(genus: int) -> dict:
    """r1 and r2 in Lambda^2 Lambda^3 H (r1 vanishes at genus 3)."""
    if genus < 3:
        raise ValueError("r1, r2 need genus >= 3")
    a, b = alpha, beta
    if genus >= 4:
        r1 = wedge2(trivector(a(1), a(2), b(2)), trivector(a(3), a(4), b(4)))
    else:
        r1 = {}
    r2 = wedge2(trivector(a(1), a(2), b(2)), wedge_with_omega(a(genus), genus))
    return {"r1": r1, "r2": r2}


def t1_t2(genus: int) -> tuple[dict, dict]:
    """The two Sp-invariants of Lambda^2 Lambda^3 H built from loops."""
    a, b = alpha, beta
    rng = range(1, genus + 1)
    t1: dict = {}
    t2: dict = {}
    for i, j, k in itertools.product(rng, rng, rng):
        vadd(t1, wedge2(trivector(a(j), b(j), a(i)), trivector(a(k), b(k), b(i))))
        vadd(t2, wedge2(trivector(a(j), a(k), a(i)), trivector(b(j), b(k), b(i))))
        vadd(t2, wedge2(trivector(a(j), b(k), a(i)), trivector(b(j), a(k), b(i))), -1)
        vadd(t2, wedge2(trivector(a(k), b(i), a(j)), trivector(b(k), a(i), b(j))), -1)
        vadd(t2, wedge2(trivector(a(i), b(j), a(k)), trivector(b(i), a(j), b(k))), -1)
    return t1, t2


def theta() -> dict:
    return element((1, Theta()))


def s_omega_omega(genus: int) -> dict:
    """sum_{i,j} H[b_i, a_j; a_i, b_j], the expanded strut with two omega legs."""
    out: dict = {}
    for i in range(1, genus + 1):
        for j in range(1, genus + 1):
            add_diagram(out, H(beta(i), alpha(j), alpha(i), beta(j)), 1)
    return out


def y_omega(x, y, genus: int) -> dict:
    """sum_i H[y, a_i; x, b_i], i.e. Y(x, y, omega) expanded."""
    out: dict = {}
    for i in range(1, genus + 1):
        add_diagram(out, H(y, alpha(i), x, beta(i)), 1)
    return out


# ---------------------------------------------------------------------------
# the matrix of b2

class B2Map:
    """b2 on the basis of Lambda^2 Lambda^3 H, in A^c_2 quotient coordinates."""

    def __init__(self, genus: int):
        config.check_caps(genus, 2)
        self.genus = genus
        self.qb = quotient_basis(genus, 2)
        self.domain = lambda2_basis(genus)
        self.index = {p: i for i, p in enumerate(self.domain)}
        self._cols: dict = {}

    def column(self, i: int) -> dict:
        col = self._cols.get(i)
        if col is None:
            col = self.qb.nf(b2({self.domain[i]: 1}))
            self._cols[i] = col
        return col

    def columns(self) -> list:
        return [self.column(i) for i in range(len(self.domain))]

    def vector(self, w: dict) -> dict:
        return {self.index[p]: c for p, c in w.items()}

    def wedge(self, v: dict) -> dict:
        return {self.domain[i]: c for i, c in v.items()}

    def weight_blocks(self) -> dict:
        blocks: dict = {}
        for i, p in enumerate(self.domain):
            blocks.setdefault(pair_weight(p, self.genus), []).append(i)
        return blocks

    def kernel_by_weight(self) -> dict:
        out = {}
        for w, idx in self.weight_blocks().items():
            ker, _ = kernel_image([self.column(i) for i in idx])
            e = Echelon()
            for k in ker:
                e.add({idx[j]: c for j, c in k.items()})
            out[w] = e
        return out

    def image(self) -> Echelon:
        return span(self.columns())

    def sp_operator(self, gen):
        g = self.genus

        def op(v):
            return self.vector(sp_act_wedge2(gen, self.wedge(v), g))

        return op

    def weight_of_vector(self, v: dict):
        return pair_weight(self.domain[next(iter(v))], self.genus)


_B2: dict = {}


def b2_map(genus: int) -> B2Map:
    m = _B2.get(genus)
    if m is None:
        m = _B2[genus] = B2Map(genus)
    return m


def sp_span_wedge2(seeds, genus: int) -> dict:
    m = b2_map(genus)
    ops = [m.sp_operator(gen) for gen in sp_generators(genus, include_cartan=False)]
    vecs = [m.vector(s) for s in seeds if s]
    return module_closure(vecs, ops, m.weight_of_vector)


# ---------------------------------------------------------------------------
# reports

def coefficient_on(x: dict, target: dict, genus: int):
    """Return c with nf(x) = c * nf(target), or None if not proportional."""
    qb = quotient_basis(genus, 2)
    nx, nt = qb.nf(x), qb.nf(target)
    if not nt:
        raise ValueError("target is zero")
    k = next(iter(nt))
    c = nx.get(k, Fraction(0)) / nt[k]
    diff = dict(nx)
    vadd(diff, nt, -c)
    return c if not diff else None


def theta_and_s_coefficients(x: dict, genus: int):
    """Write x = a theta + b S_ww in A^c_2; returns (a, b) or None."""
    qb = quotient_basis(genus, 2)
    nx = qb.nf(x)
    nth = qb.nf(theta())
    ns = qb.nf(s_omega_omega(genus))
    (kt, vt), = nth.items()
    a = nx.get(kt, Fraction(0)) / vt
    rest = dict(nx)
    vadd(rest, nth, -a)
    if not rest:
        return a, Fraction(0)
    k = next(iter(ns))
    b = rest.get(k, Fraction(0)) / ns[k]
    vadd(rest, ns, -b)
    return (a, b) if not rest else None


def t_report(genus: int) -> dict:
    t1, t2 = t1_t2(genus)
    c1 = theta_and_s_coefficients(b2(t1), genus)
    c2 = theta_and_s_coefficients(b2(t2), genus)
    g = genus
    exp1 = (Fraction(-g * (g - 1), 4), Fraction(g - 1))
    exp2 = (Fraction(-g * (g - 1) * (2 * g - 1), 2), Fraction(6 * (g - 1)))
    det = None
    if c1 and c2:
        det = (-c1[0]) * (-c2[1]) - (-c2[0]) * (-c1[1])
    return {
        "genus": g,
        "t1": c1, "t1_expected": exp1,
        "t2": c2, "t2_expected": exp2,
        "determinant": det, "determinant_expected": Fraction(g * (g - 1) ** 2 * (g - 2)),
        "t1_ok": c1 == exp1, "t2_ok": c2 == exp2,
        "det_ok": det == g * (g - 1) ** 2 * (g - 2) and det != 0,
    }


def r3_preimage(genus: int) -> dict:
    """A combination of T1, T2 whose bracket is exactly theta."""
    t1, t2 = t1_t2(genus)
    c1 = theta_and_s_coefficients(b2(t1), genus)
    c2 = theta_and_s_coefficients(b2(t2), genus)
    if c1 is None or c2 is None:
        raise ArithmeticError("T1/T2 brackets are not in span(theta, S_ww)")
    (a1, s1), (a2, s2) = c1, c2
    det = a1 * s2 - a2 * s1
    if det == 0:
        raise ArithmeticError("singular T1/T2 system")
    # x*(a1, s1) + y*(a2, s2) = (1, 0)
    x = s2 / det
    y = -s1 / det
    out: dict = {}
    vadd(out, t1, x)
    vadd(out, t2, y)
    return out


def r3_report(genus: int) -> dict:
    r3 = r3_preimage(genus)
    img = b2(r3)
    qb = quotient_basis(genus, 2)
    diff = qb.nf(sub(img, theta()))
    tree = qb.nf(tree_reduce(img))
    return {"genus": genus, "b2_equals_theta": not diff, "tree_reduction_zero": not tree}


def ker_report(genus: int) -> dict:
    m = b2_map(genus)
    ker = m.kernel_by_weight()
    rel = relations(genus)
    b2r = {k: m.qb.nf(b2(v)) for k, v in rel.items()}
    closure = sp_span_wedge2([rel["r1"], rel["r2"]], genus)
    kd = sum(e.rank for e in ker.values())
    cd = sum(e.rank for e in closure.values())
    same = kd == cd
    if same:
        for w, e in closure.items():
            other = ker.get(w)
            if other is None or not e.equals(other):
                same = False
                break
    return {
        "genus": genus,
        "domain_dim": len(m.domain),
        "kernel_dim": kd,
        "span_dim": cd,
        "b2_r1_zero": not b2r["r1"],
        "b2_r2_zero": not b2r["r2"],
        "r1_zero": not rel["r1"],
        "equal": same,
    }


def im_report(genus: int) -> dict:
    m = b2_map(genus)
    img = m.image()
    qb = m.qb
    even = [k for k in range(qb.dimension) if qb.loop_of(k) % 2 == 0]
    even_set = set(even)
    inside = all(set(r) <= even_set for r in img.rows.values())
    dims = qb.dims_by_loop()
    return {
        "genus": genus,
        "rank": img.rank,
        "even_dim": len(even),
        "loop_dims": dims,
        "image_in_even": inside,
        "equal": inside and img.rank == len(even),
    }


def hwv_report(genus: int) -> dict:
    """Weights and raising-operator test for the listed A^c_{2,0} vectors."""
    from .quotient import fundamental_coordinates, weight_and_hwv
    a = alpha
    vectors = {
        "2w2": element((1, H(a(1), a(2), a(2), a(1)))),
        "w2": y_omega(a(1), a(2), genus),
        "0": s_omega_omega(genus),
    }
    expected = {"2w2": (0, 2), "w2": (0, 1), "0": ()}
    out = {}
    for name, x in vectors.items():
        res = weight_and_hwv(x, genus)
        fw = fundamental_coordinates(res["weight"]) if res["weight"] is not None else None
        exp = [0] * genus
        for pos, val in zip(range(len(expected[name])), expected[name]):
            exp[pos] = val
        out[name] = {
            "weight": res["weight"], "fundamental": fw,
            "highest_weight": res["highest_weight"],
            "ok": res["highest_weight"] and fw == tuple(exp),
        }
    # bracket identities producing the first two vectors
    y1 = bracket(element((1, Y(a(1), a(2), beta(3)))), element((1, Y(a(2), a(1), a(3)))))
    acc: dict = {}
    for i in range(2, genus + 1):
        add(acc, bracket(element((1, Y(a(1), a(2), beta(1)))), element((1, Y(beta(i), a(i), a(1))))))
    qb = quotient_basis(genus, 2)
    out["bracket_2w2"] = not qb.nf(sub(y1, vectors["2w2"]))
    out["bracket_w2"] = not qb.nf(sub(acc, vectors["w2"]))
    return out


def lem_bracket_closed_form(x, y, genus: int) -> dict:
    """Closed form of [Y(x1,x2,x3), Y(y1,y2,y3)] from pairings and a determinant."""
    from .symplectic import omega_labels
    out: dict = {}
    for i in range(3):
        for j in range(3):
            w = omega_labels(x[i], y[j])
            if w:
                add_diagram(out, H(x[(i + 2) % 3], y[(j + 1) % 3], x[(i + 1) % 3], y[(j + 2) % 3]), w)
    m = [[omega_labels(x[i], y[j]) for j in range(3)] for i in range(3)]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    if det:
        add_diagram(out, Theta(), Fraction(-det, 4))
    return out


def lem_bracket_report(genus: int = 3, samples: int = 200, seed: int = 0) -> dict:
    """Brute-force brackets of random Y pairs against the closed form."""
    import random
    from .symplectic import omega_labels
    rng = random.Random(seed)
    labels = list(range(2 * genus))
    qb = quotient_basis(genus, 2)
    bad_form = bad_theta = 0
    nonzero_det = 0
    for _ in range(samples):
        x = tuple(rng.choice(labels) for _ in range(3))
        if rng.random() < 0.5:
            # dual labels (a_i <-> b_i) make the pairing matrix invertible more often
            y = [lab ^ 1 for lab in x]
            rng.shuffle(y)
            y = tuple(y)
        else:
            y = tuple(rng.choice(labels) for _ in range(3))
        br = bracket(element((1, Y(*x))), element((1, Y(*y))))
        if qb.nf(sub(br, lem_bracket_closed_form(x, y, genus))):
            bad_form += 1
        m = [[omega_labels(a, b) for b in y] for a in x]
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        nonzero_det += det != 0
        if theta_coefficient(br, genus) != Fraction(-det, 4):
            bad_theta += 1
    return {"genus": genus, "samples": samples, "nonzero_determinants": nonzero_det,
            "closed_form_failures": bad_form, "theta_failures": bad_theta,
            "ok": bad_form == 0 and bad_theta == 0}


def theta_coefficient(x: dict, genus: int) -> Fraction:
    qb = quotient_basis(genus, 2)
    nth = qb.nf(theta())
    (k, v), = nth.items()
    return qb.nf(x).get(k, Fraction(0)) / v


# ---------------------------------------------------------------------------
# the generated subalgebra and degree 3

def generated_subalgebra(genus: int, max_degree: int = 3) -> dict:
    """Dimensions of the Lie subalgebra generated by A^c_1, degree by degree."""
    config.check_caps(genus, max_degree)
    gens = [element((1, Y(*t))) for t in lambda3_basis(genus)]
    layers = {1: gens}
    dims = {1: span(quotient_basis(genus, 1).nf(g) for g in gens).rank}
    even_ok = {1: True}
    for k in range(2, max_degree + 1):
        qb = quotient_basis(genus, k)
        e = Echelon()
        elems = []
        if k == 2:
            pairs = [(gens[i], gens[j]) for i in range(len(gens)) for j in range(i + 1, len(gens))]
        else:
            pairs = [(g, h) for g in gens for h in layers[k - 1]]
        for g, h in pairs:
            x = bracket(g, h)
            if not x:
                continue
            if e.add(qb.nf(x)) is not None:
                elems.append(x)
        layers[k] = elems
        dims[k] = e.rank
        even_ok[k] = all(qb.loop_of(c) % 2 == 0 for r in e.rows.values() for c in r)
    return {"genus": genus, "dims": dims, "even": even_ok}


def degree3_kernel_report(genus: int = 3) -> dict:
    """Compare Ker(Y_3) on Lie_3(Lambda^3 H) with the degree-3 part of the ideal of R_2.

    Lie_3 is embedded in the third tensor power via [u, v] = uv - vu.
    """
    basis = lambda3_basis(genus)
    n = len(basis)
    gens = [element((1, Y(*t))) for t in basis]
    qb3 = quotient_basis(genus, 3)

    def tensor_bracket(u: dict, v: dict) -> dict:
        out: dict = {}
        for a, ca in u.items():
            for b, cb in v.items():
                vadd(out, {a + b: 1}, ca * cb)
                vadd(out, {b + a: 1}, -ca * cb)
        return out

    def flat(t: dict) -> dict:
        return {sum(w * n ** (len(k) - 1 - i) for i, w in enumerate(k)): c for k, c in t.items()}

    lie2 = {}
    for i in range(n):
        for j in range(i + 1, n):
            lie2[(i, j)] = bracket(gens[i], gens[j])
    # spanning set of Lie_3: [[v_i, v_j], v_k]
    tens = Echelon()
    images = []
    words = []
    for (i, j), x in lie2.items():
        for k in range(n):
            t = tensor_bracket(tensor_bracket({(i,): 1}, {(j,): 1}), {(k,): 1})
            if tens.add(flat(t)) is None:
                continue
            words.append(t)
            images.append(qb3.nf(bracket(x, gens[k])) if x else {})
    ker, img = kernel_image(images)
    kerspace = Echelon()
    for kv in ker:
        acc: dict = {}
        for idx, c in kv.items():
            vadd(acc, flat(words[idx]), c)
        kerspace.add(acc)
    # ideal part: [r, v] for r in Ker(b2)
    m = b2_map(genus)
    ideal = Echelon()
    for e in m.kernel_by_weight().values():
        for row in e.rows.values():
            r_t: dict = {}
            for idx, c in row.items():
                t, s = m.domain[idx]
                it, is_ = basis.index(t), basis.index(s)
                vadd(r_t, tensor_bracket({(it,): 1}, {(is_,): 1}), c)
            for k in range(n):
                ideal.add(flat(tensor_bracket(r_t, {(k,): 1})))
    return {
        "genus": genus,
        "lie3_dim": tens.rank,
        "rank_Y3": img.rank,
        "ker_Y3_dim": kerspace.rank,
        "ideal3_dim": ideal.rank,
        "ideal_in_kernel": ideal.is_subspace_of(kerspace),
        "equal": ideal.equals(kerspace),
    }
