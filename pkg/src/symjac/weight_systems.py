"""Metrized Lie algebras, weight systems into polynomials on g (x) H, and the Moyal product.

A polynomial is a dict from monomials (sorted tuples of variables) to
Fractions.  Variables are pairs (lie index, leg label); the formal degree
variable t is kept separately, so weight systems return (t-degree, poly).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .diagrams import Diagram
from .symplectic import OMEGA, omega_labels, basis_labels


class LieError(ValueError):
    pass


@dataclass
class MetrizedLie:
    """Structure constants bracket[i][j] = {k: c} and an invariant form."""

    dim: int
    bracket: dict
    form: list
    name: str = "custom"
    _inv: list = field(default=None, repr=False)

    def br(self, i, j) -> dict:
        return self.bracket.get((i, j), {})

    def br_vec(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.br(i, j).items():
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def kappa(self, x: dict, y: dict) -> Fraction:
        return sum((a * b * self.form[i][j] for i, a in x.items() for j, b in y.items()), Fraction(0))

    def b_tensor(self) -> dict:
        """Nonzero entries of B(i, j, k) = kappa([e_i, e_j], e_k)."""
        out = {}
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            v = self.kappa(self.br(i, j), {k: 1})
            if v:
                out[(i, j, k)] = v
        return out

    def casimir(self) -> list:
        """K, the inverse matrix of the form."""
        if self._inv is None:
            self._inv = _inverse([[Fraction(x) for x in row] for row in self.form])
        return self._inv


def _inverse(m):
    n = len(m)
    a = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise LieError("form is degenerate")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def validate(lie: MetrizedLie):
    """None if all axioms hold, else a string naming the first violation."""
    n = lie.dim
    e = [{i: 1} for i in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        s = dict(lie.br(i, j))
        for k, c in lie.br(j, i).items():
            s[k] = s.get(k, 0) + c
        if any(s.values()):
            return f"antisymmetry fails at ({i}, {j})"
    for i, j, k in itertools.product(range(n), repeat=3):
        acc: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for key, v in lie.br_vec(e[a], lie.br(b, c)).items():
                acc[key] = acc.get(key, 0) + v
        if any(acc.values()):
            return f"Jacobi fails at ({i}, {j}, {k})"
    for i, j in itertools.product(range(n), repeat=2):
        if lie.form[i][j] != lie.form[j][i]:
            return f"form not symmetric at ({i}, {j})"
    for i, j, k in itertools.product(range(n), repeat=3):
        if lie.kappa(lie.br(i, j), e[k]) != lie.kappa(e[i], lie.br(j, k)):
            return f"form not invariant at ({i}, {j}, {k})"
    try:
        lie.casimir()
    except LieError:
        return "form is degenerate"
    return None


def make_lie(dim, brackets, form, name="custom", check=True) -> MetrizedLie:
    br: dict = {}
    for (i, j), vec in brackets.items():
        v = {k: Fraction(c) for k, c in vec.items() if c}
        if v:
            br[(i, j)] = v
    lie = MetrizedLie(dim, br, [[Fraction(x) for x in row] for row in form], name)
    if check:
        err = validate(lie)
        if err:
            raise LieError(err)
    return lie


def sl2() -> MetrizedLie:
    """Basis (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f and the trace form."""
    E, F, H = 0, 1, 2
    br = {(E, F): {H: 1}, (F, E): {H: -1},
          (H, E): {E: 2}, (E, H): {E: -2},
          (H, F): {F: -2}, (F, H): {F: 2}}
    form = [[0, 1, 0], [1, 0, 0], [0, 0, 2]]
    return make_lie(3, br, form, "sl2")


def abelian(dim: int = 1) -> MetrizedLie:
    return make_lie(dim, {}, [[int(i == j) for j in range(dim)] for i in range(dim)], "abelian")


def load_lie(path) -> MetrizedLie:
    """JSON {dim, brackets: [[i, j, [[k, "p/q"], ...]], ...], form: [[...]]}."""
    with open(path) as fh:
        data = json.load(fh)
    br: dict = {}
    for i, j, terms in data["brackets"]:
        br[(i, j)] = {k: Fraction(c) for k, c in terms}
    return make_lie(data["dim"], br, [[Fraction(x) for x in row] for row in data["form"]],
                    data.get("name", str(path)))


def builtin(name: str) -> MetrizedLie:
    if name == "sl2":
        return sl2()
    if name.startswith("abelian"):
        rest = name[len("abelian"):]
        return abelian(int(rest) if rest else 1)
    return load_lie(name)


# ---------------------------------------------------------------------------
# polynomials

def poly_add(acc: dict, p: dict, c=1) -> dict:
    for m, v in p.items():
        y = acc.get(m, 0) + c * v
        if y:
            acc[m] = y
        else:
            acc.pop(m, None)
    return acc


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, a in p.items():
        for m2, b in q.items():
            m = tuple(sorted(m1 + m2))
            y = out.get(m, 0) + a * b
            if y:
                out[m] = y
            else:
                out.pop(m, None)
    return out


def poly_derivative(p: dict, var) -> dict:
    out: dict = {}
    for m, c in p.items():
        k = m.count(var)
        if k:
            i = m.index(var)
            poly_add(out, {m[:i] + m[i + 1:]: c * k})
    return out


def variables(p: dict) -> set:
    return {v for m in p for v in m}


def poly_str(p: dict) -> str:
    if not p:
        return "0"
    terms = []
    for m, c in sorted(p.items()):
        mono = "*".join(f"x{a}_{h}" for a, h in m)
        terms.append(f"{c}" + (f"*{mono}" if mono else ""))
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# Moyal product

def moyal_product(p: dict, q: dict, form) -> dict:
    """Symmetrized Weyl product with bracket ``form(u, v)`` on variables.

    p * q = sum_k 1/(k! 2^k) sum form(u1,v1)..form(uk,vk) d_u1..d_uk p d_v1..d_vk q
    """
    out: dict = {}
    layer = {(m1, m2): a * b for m1, a in p.items() for m2, b in q.items()}
    k = 0
    while layer:
        w = Fraction(1, math.factorial(k) * 2 ** k)
        for (m1, m2), c in layer.items():
            poly_add(out, {tuple(sorted(m1 + m2)): c * w})
        nxt: dict = {}
        for (m1, m2), c in layer.items():
            for u in set(m1):
                i = m1.index(u)
                rest1 = m1[:i] + m1[i + 1:]
                for v in set(m2):
                    s = form(u, v)
                    if not s:
                        continue
                    j = m2.index(v)
                    key = (rest1, m2[:j] + m2[j + 1:])
                    y = nxt.get(key, 0) + c * s * m1.count(u) * m2.count(v)
                    if y:
                        nxt[key] = y
                    else:
                        nxt.pop(key, None)
        layer = nxt
        k += 1
    return out


def lie_form(lie: MetrizedLie):
    """s((a, h), (b, h')) = kappa(e_a, e_b) omega(h, h')."""
    def s(u, v):
        k = lie.form[u[0]][v[0]]
        return k * omega_labels(u[1], v[1]) if k else 0
    return s


# ---------------------------------------------------------------------------
# weight systems

def weight_diagram(d: Diagram, lie: MetrizedLie) -> dict:
    """Contract B at vertices, K on edges; a leg labeled h adds K(a, b) x_(b, h).

    The diagram is used as given (no canonicalization), so AS and IHX can be
    tested on raw representatives.
    """
    if OMEGA in d.legs:
        raise ValueError("expand omega legs before applying a weight system")
    n = d.degree
    if n == 0:
        if d.legs:
            raise ValueError("struts are not in the diagram space")
        return {(): Fraction(1)}
    btab = list(lie.b_tensor().items())
    kinv = lie.casimir()
    legs = d.leg_ports()
    edges = [(p, t) for p, t in enumerate(d.nbr) if t > p]
    out: dict = {}
    for choice in itertools.product(btab, repeat=n):
        idx = []
        coef = Fraction(1)
        for (i, j, k), v in choice:
            idx += [i, j, k]
            coef *= v
        for p, q in edges:
            coef *= kinv[idx[p]][idx[q]]
            if not coef:
                break
        if not coef:
            continue
        poly = {(): coef}
        for j, p in enumerate(legs):
            lin = {((b, d.legs[j]),): kinv[idx[p]][b] for b in range(lie.dim) if kinv[idx[p]][b]}
            poly = poly_mul(poly, lin)
            if not poly:
                break
        poly_add(out, poly)
    return out


def weight_system(x: dict, lie: MetrizedLie) -> dict:
    """W on an element: {t-degree: polynomial}."""
    out: dict = {}
    for d, c in x.items():
        if d.ordered:
            raise ValueError("weight systems are defined on the unordered space")
        p = weight_diagram(d, lie)
        if p:
            acc = out.setdefault(d.degree, {})
            poly_add(acc, p, c)
            if not acc:
                del out[d.degree]
    return out


def graded_moyal(x: dict, y: dict, lie: MetrizedLie) -> dict:
    s = lie_form(lie)
    out: dict = {}
    for a, p in x.items():
        for b, q in y.items():
            acc = out.setdefault(a + b, {})
            poly_add(acc, moyal_product(p, q, s))
            if not acc:
                del out[a + b]
    return out


def coadjoint_derivation(p: dict, lie: MetrizedLie, c: int) -> dict:
    """Action of e_c on a polynomial: x_(b, h) -> [e_c, e_b] components."""
    out: dict = {}
    for v in variables(p):
        dp = poly_derivative(p, v)
        act = {((k, v[1]),): coef for k, coef in lie.br(c, v[0]).items()}
        poly_add(out, poly_mul(dp, act))
    return out


def is_invariant(p: dict, lie: MetrizedLie) -> bool:
    return all(not coadjoint_derivation(p, lie, c) for c in range(lie.dim))


def verify_square(lie: MetrizedLie, genus: int = 1, samples: int = 50, seed: int = 0,
                  degree: int = 1) -> dict:
    """W(D * E) == W(D) *_Moyal W(E) on random pairs of connected diagrams.

    At genus 1 every degree-1 diagram repeats a label and is zero; raw
    (uncanonicalized) Y diagrams are then sampled so that both sides are
    still computed.
    """
    import random
    from .diagrams import Y, enumerate_diagrams
    from .elements import element
    from .hopf import star
    rng = random.Random(seed)
    pool = enumerate_diagrams(genus, degree, True)
    if not pool and degree == 1:
        labels = basis_labels(genus)
        pool = [Y(a, b, c) for a in labels for b in labels for c in labels]
    bad = 0
    nonzero = 0
    for _ in range(samples):
        d, e = rng.choice(pool), rng.choice(pool)
        lhs = weight_system(star({d: Fraction(1)}, {e: Fraction(1)}), lie)
        rhs = graded_moyal(weight_system({d: Fraction(1)}, lie), weight_system({e: Fraction(1)}, lie), lie)
        if lhs != rhs:
            bad += 1
        if lhs:
            nonzero += 1
    unit = weight_system(element((1, Diagram((), (), False))), lie) == {0: {(): Fraction(1)}}
    return {"lie": lie.name, "genus": genus, "degree": degree, "samples": samples,
            "nonzero": nonzero, "failures": bad, "unit": unit, "ok": bad == 0 and unit}


def format_weight(w: dict) -> str:
    if not w:
        return "0"
    return " + ".join(f"t^{k}*({poly_str(p)})" for k, p in sorted(w.items()))
