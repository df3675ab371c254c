"""Evaluation of parsed expressions to elements (or tensors for delta)."""

from __future__ import annotations

from fractions import Fraction

from .closed import expand_portgraph
from .elements import add, scale
from .hopf import antipode, bracket, chi, chi_inv, coproduct, star, tree_reduce
from .parser import Node, literal_graph, parse_expression


class Value:
    """An element ({Diagram: c}) or a tensor ({(Diagram, Diagram): c})."""

    def __init__(self, kind: str, data: dict):
        self.kind = kind
        self.data = data

    def __repr__(self):
        return f"Value({self.kind}, {len(self.data)} terms)"


def _need_element(v: Value, what: str) -> dict:
    if v.kind != "element":
        raise ValueError(f"{what} expects an element, not a tensor")
    return v.data


def _need_unordered(x: dict, what: str) -> dict:
    if any(d.ordered and d.legs for d in x):
        raise ValueError(f"{what} expects unordered diagrams")
    return {d._replace(ordered=False) if d.ordered else d: c for d, c in x.items()}


def _need_ordered(x: dict, what: str) -> dict:
    if any(not d.ordered and d.legs for d in x):
        raise ValueError(f"{what} expects ordered diagrams")
    return {d._replace(ordered=True): c for d, c in x.items()}


def evaluate(node: Node, genus: int) -> Value:
    if node.kind == "lit":
        return Value("element", expand_portgraph(literal_graph(node.value), genus))
    if node.kind == "scale":
        v = evaluate(node.args[0], genus)
        return Value(v.kind, scale(v.data, node.value))
    if node.kind == "sum":
        vals = [evaluate(a, genus) for a in node.args]
        kinds = {v.kind for v in vals}
        if len(kinds) > 1:
            raise ValueError("cannot add elements and tensors")
        acc: dict = {}
        for v in vals:
            add(acc, v.data)
        if vals[0].kind == "element" and any(d.ordered for d in acc):
            # a bare scalar next to ordered terms is the ordered unit
            fixed: dict = {}
            for d, c in acc.items():
                add(fixed, {d._replace(ordered=True) if not d.nbr and not d.legs else d: c})
            acc = fixed
        return Value(vals[0].kind, acc)
    if node.kind == "call":
        args = [evaluate(a, genus) for a in node.args]
        name = node.value
        if name in ("star", "bracket"):
            x = _need_unordered(_need_element(args[0], name), name)
            y = _need_unordered(_need_element(args[1], name), name)
            return Value("element", (star if name == "star" else bracket)(x, y))
        x = _need_element(args[0], name)
        if name == "chi":
            return Value("element", chi(_need_unordered(x, name)))
        if name == "chiinv":
            return Value("element", chi_inv(_need_ordered(x, name)))
        if name == "delta":
            return Value("tensor", coproduct(x))
        if name == "antipode":
            return Value("element", antipode(_need_unordered(x, name)))
        if name == "tree":
            return Value("element", tree_reduce(x))
    raise ValueError(f"cannot evaluate node {node.kind}")


def evaluate_text(text: str, genus: int) -> Value:
    return evaluate(parse_expression(text), genus)


def element_of(text: str, genus: int) -> dict:
    return _need_element(evaluate_text(text, genus), "this operation")
