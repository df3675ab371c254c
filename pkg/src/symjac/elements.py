"""Linear combinations of canonical diagrams.

An element is a plain dict ``{canonical Diagram: Fraction}`` without zero
coefficients.  Whether it lives in an ordered or unordered space is read off
the ``ordered`` flag of its diagrams.
"""

from __future__ import annotations

from fractions import Fraction

from .diagrams import Diagram, canonicalize, loop_degree, with_labels
from .symplectic import OMEGA, label_action, weight_of_label


def add_diagram(acc: dict, d: Diagram, c) -> dict:
    """acc += c * d, canonicalizing ``d`` (AS signs and zeros included)."""
    if not c:
        return acc
    cd, s = canonicalize(d)
    if cd is None:
        return acc
    y = acc.get(cd, 0) + s * c
    if y:
        acc[cd] = Fraction(y)
    else:
        acc.pop(cd, None)
    return acc


def element(*pairs) -> dict:
    """Element from ``(coefficient, diagram)`` pairs."""
    out: dict = {}
    for c, d in pairs:
        add_diagram(out, d, Fraction(c))
    return out


def diagram_element(d: Diagram) -> dict:
    return element((1, d))


def add(acc: dict, x: dict, c=1) -> dict:
    for d, v in x.items():
        y = acc.get(d, 0) + c * v
        if y:
            acc[d] = y
        else:
            acc.pop(d, None)
    return acc


def combine(*pairs) -> dict:
    out: dict = {}
    for c, x in pairs:
        add(out, x, Fraction(c))
    return out


def scale(x: dict, c) -> dict:
    c = Fraction(c)
    if not c:
        return {}
    return {d: c * v for d, v in x.items()}


def sub(x: dict, y: dict) -> dict:
    return add(dict(x), y, -1)


def degrees(x: dict) -> set:
    return {d.degree for d in x}


def homogeneous_parts(x: dict) -> dict:
    out: dict = {}
    for d, c in x.items():
        out.setdefault(d.degree, {})[d] = c
    return out


def loop_parts(x: dict) -> tuple[dict, dict]:
    even, odd = {}, {}
    for d, c in x.items():
        (even if loop_degree(d) % 2 == 0 else odd)[d] = c
    return even, odd


def sp_act_diagram(gen, d: Diagram, genus: int, c=1, acc=None) -> dict:
    """Leibniz rule over the legs; omega legs are fixed by the action."""
    acc = {} if acc is None else acc
    table = label_action(gen, genus)
    legs = list(d.legs)
    for j, lab in enumerate(legs):
        if lab == OMEGA:
            continue
        for a, new in table[lab]:
            legs[j] = new
            add_diagram(acc, with_labels(d, legs), c * a)
        legs[j] = lab
    return acc


def sp_act_element(gen, x: dict, genus: int) -> dict:
    acc: dict = {}
    for d, c in x.items():
        sp_act_diagram(gen, d, genus, c, acc)
    return acc


def diagram_weight(d: Diagram, genus: int) -> tuple:
    w = [0] * genus
    for lab in d.legs:
        for i, x in enumerate(weight_of_label(lab, genus)):
            w[i] += x
    return tuple(w)


def element_weight(x: dict, genus: int):
    """Common weight of all terms, or None if ``x`` is not homogeneous."""
    ws = {diagram_weight(d, genus) for d in x}
    if len(ws) == 1:
        return ws.pop()
    if not ws:
        return tuple([0] * genus)
    return None


def max_label_index(x: dict) -> int:
    m = 0
    for d in x:
        for lab in d.legs:
            if lab != OMEGA:
                m = max(m, lab // 2 + 1)
    return m
