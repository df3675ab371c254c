"""Products, symmetrization, and the Hopf structure on diagram spaces."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .diagrams import (EMPTY, EMPTY_ORDERED, Diagram, _vertex_components,
                       disjoint_union, forget_order, glue, glue_legs,
                       loop_degree, subdiagram, with_order)
from .elements import add, add_diagram, scale
from .quotient import nf
from .symplectic import omega_labels


# ---------------------------------------------------------------------------
# ordered product

def ordered_product(x: dict, y: dict) -> dict:
    """Disjoint union with the legs of the right factor declared larger."""
    out: dict = {}
    for d, c in x.items():
        for e, k in y.items():
            if not (d.ordered or d == EMPTY) or not (e.ordered or e == EMPTY):
                raise ValueError("ordered product needs ordered diagrams")
            add_diagram(out, disjoint_union(d, e, ordered=True), c * k)
    return out


# ---------------------------------------------------------------------------
# star product and bracket

def _cross_pairings(d: Diagram, e: Diagram):
    """Partial injections legs(d) -> legs(e) with nonzero omega weight."""
    dl, el = d.legs, e.legs
    options = [[j for j in range(len(el)) if omega_labels(dl[i], el[j])] for i in range(len(dl))]
    out = []

    def rec(i, used, acc, w):
        if i == len(dl):
            out.append((list(acc), w))
            return
        rec(i + 1, used, acc, w)
        for j in options[i]:
            if j not in used:
                used.add(j)
                acc.append((i, j))
                rec(i + 1, used, acc, w * omega_labels(dl[i], el[j]))
                acc.pop()
                used.discard(j)

    rec(0, set(), [], 1)
    return out


def _unordered(d: Diagram) -> Diagram:
    return forget_order(d) if d.ordered else d


def star_diagrams(d: Diagram, e: Diagram, acc: dict, c=1, odd_only=False) -> dict:
    d, e = _unordered(d), _unordered(e)
    for pairing, w in _cross_pairings(d, e):
        k = len(pairing)
        if odd_only:
            if k % 2 == 0:
                continue
            coef = Fraction(w * 2, 2 ** k)
        else:
            coef = Fraction(w, 2 ** k)
        add_diagram(acc, glue(d, e, pairing), c * coef)
    return acc


def star(x: dict, y: dict) -> dict:
    out: dict = {}
    for d, c in x.items():
        for e, k in y.items():
            star_diagrams(d, e, out, c * k)
    return out


def bracket(x: dict, y: dict) -> dict:
    """The commutator, summed directly over odd-size gluings."""
    out: dict = {}
    for d, c in x.items():
        for e, k in y.items():
            star_diagrams(d, e, out, c * k, odd_only=True)
    return out


def commutator(x: dict, y: dict) -> dict:
    return add(star(x, y), star(y, x), -1)


# ---------------------------------------------------------------------------
# symmetrization

def chi(x: dict) -> dict:
    out: dict = {}
    for d, c in x.items():
        e = len(d.legs)
        w = c / Fraction(math.factorial(e))
        for perm in itertools.permutations(range(e)):
            add_diagram(out, with_order(_unordered(d), perm), w)
    return out


def _self_matchings(legs):
    """Sets of disjoint pairs i<j of legs with nonzero omega weight."""
    n = len(legs)
    out = []

    def rec(i, used, acc, w):
        while i < n and i in used:
            i += 1
        if i >= n:
            out.append((list(acc), w))
            return
        rec(i + 1, used, acc, w)
        for j in range(i + 1, n):
            if j in used:
                continue
            o = omega_labels(legs[i], legs[j])
            if o:
                used.add(j)
                acc.append((i, j))
                rec(i + 1, used, acc, w * o)
                acc.pop()
                used.discard(j)

    rec(0, set(), [], 1)
    return out


def chi_inv_diagram(d: Diagram, acc: dict, c=1) -> dict:
    for pairs, w in _self_matchings(d.legs):
        add_diagram(acc, glue_legs(d, pairs, ordered=False), c * Fraction(w, 2 ** len(pairs)))
    return acc


def chi_inv(x: dict) -> dict:
    out: dict = {}
    for d, c in x.items():
        if not d.ordered and d.legs:
            raise ValueError("chi inverse expects ordered diagrams")
        chi_inv_diagram(d, out, c)
    return out


def star_via_chi(x: dict, y: dict) -> dict:
    """chi^-1(chi(x) < chi(y)); slow, used to cross-check :func:`star`."""
    return chi_inv(ordered_product(chi(x), chi(y)))


# ---------------------------------------------------------------------------
# coalgebra

def _components_vertices(d: Diagram):
    return _vertex_components(d.nbr)


def coproduct_diagram(d: Diagram) -> list:
    """Terms ``(D', D'')`` over all splittings into two families of components."""
    comps = _components_vertices(d)
    empty = EMPTY_ORDERED if d.ordered else EMPTY
    out = []
    for mask in range(2 ** len(comps)):
        left = [v for i, cv in enumerate(comps) if mask >> i & 1 for v in cv]
        right = [v for i, cv in enumerate(comps) if not mask >> i & 1 for v in cv]
        dl = subdiagram(d, left) if left else empty
        dr = subdiagram(d, right) if right else empty
        out.append((dl, dr))
    return out


def coproduct(x: dict) -> dict:
    """Formal sum of tensor pairs ``{(D', D''): coefficient}`` (canonical factors)."""
    out: dict = {}
    for d, c in x.items():
        for dl, dr in coproduct_diagram(d):
            acc_l = add_diagram({}, dl, 1)
            acc_r = add_diagram({}, dr, 1)
            for a, ca in acc_l.items():
                for b, cb in acc_r.items():
                    key = (a, b)
                    y = out.get(key, 0) + c * ca * cb
                    if y:
                        out[key] = y
                    else:
                        out.pop(key, None)
    return out


def counit(x: dict) -> Fraction:
    return Fraction(x.get(EMPTY, 0) + x.get(EMPTY_ORDERED, 0))


def tensor_nf(t: dict, genus: int) -> dict:
    """Normal form of a formal sum of tensor pairs, factor by factor."""
    out: dict = {}
    for (a, b), c in t.items():
        na = nf({a: Fraction(1)}, genus)
        nb = nf({b: Fraction(1)}, genus)
        for m1, x1 in na.items():
            for m2, x2 in nb.items():
                key = (m1, m2)
                y = out.get(key, 0) + c * x1 * x2
                if y:
                    out[key] = y
                else:
                    out.pop(key, None)
    return out


def is_primitive(x: dict, genus: int) -> bool:
    if not x:
        return True
    t = coproduct(x)
    empty = EMPTY
    for d, c in x.items():
        for key in ((d, empty), (empty, d)):
            y = t.get(key, 0) - c
            if y:
                t[key] = y
            else:
                t.pop(key, None)
    return not tensor_nf(t, genus)


def _ordered_set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    n = len(items)
    # assign each item a block number, blocks numbered by first appearance order
    for blocks in _set_partitions(items):
        for perm in itertools.permutations(blocks):
            yield list(perm)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def antipode_diagram(d: Diagram) -> dict:
    """Takeuchi's formula: sum over ordered set partitions of the components."""
    if d.ordered:
        raise ValueError("antipode is implemented on the unordered space")
    comps = _components_vertices(d)
    if not comps:
        return {EMPTY: Fraction(1)}
    out: dict = {}
    for blocks in _ordered_set_partitions(list(range(len(comps)))):
        prod = {EMPTY: Fraction(1)}
        for blk in blocks:
            verts = [v for i in blk for v in comps[i]]
            prod = star(prod, add_diagram({}, subdiagram(d, verts), 1))
        add(out, prod, (-1) ** len(blocks))
    return out


def antipode(x: dict) -> dict:
    out: dict = {}
    for d, c in x.items():
        add(out, antipode_diagram(d), c)
    return out


# ---------------------------------------------------------------------------
# loop grading

def loop_split(x: dict) -> tuple[dict, dict]:
    even, odd = {}, {}
    for d, c in x.items():
        (even if loop_degree(d) % 2 == 0 else odd)[d] = c
    return even, odd


def tree_reduce(x: dict) -> dict:
    """Image in the tree quotient: every diagram with a loop is sent to 0."""
    return {d: c for d, c in x.items() if loop_degree(d) == 0}


def min_loop(x: dict):
    return min((loop_degree(d) for d in x), default=None)


def tensor_apply(t: dict, f_left=None, f_right=None) -> dict:
    """Apply linear maps factorwise to a tensor sum, result again a tensor sum."""
    out: dict = {}
    for (a, b), c in t.items():
        xa = f_left({a: Fraction(1)}) if f_left else {a: Fraction(1)}
        xb = f_right({b: Fraction(1)}) if f_right else {b: Fraction(1)}
        for da, ca in xa.items():
            for db, cb in xb.items():
                key = (da, db)
                y = out.get(key, 0) + c * ca * cb
                if y:
                    out[key] = y
                else:
                    out.pop(key, None)
    return out


def scale_tensor(t: dict, c) -> dict:
    return {k: v * c for k, v in t.items()}


__all__ = [
    "ordered_product", "star", "bracket", "commutator", "chi", "chi_inv",
    "star_via_chi", "coproduct", "counit", "antipode", "is_primitive",
    "loop_split", "tree_reduce", "tensor_nf", "scale",
]
