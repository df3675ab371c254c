"""Text syntax for diagrams and expressions.

    expr    := term (('+' | '-') term)*
    term    := ['-'] [number '*'] atom | number
    atom    := literal | name '(' expr (',' expr)* ')' | '(' expr ')'
    literal := Y[l,l,l] | H[l,l;l,l] | Phi[l,l] | Theta | strut[l,l] | empty
             | G{ iv (p,p,p) ; edge p-q ; leg p=l ; order p,... }

A '<' right after Y, H, Phi or strut makes an ordered literal whose legs are
ordered as written.  Labels are a1, b3, w (omega) or a vector in
parentheses such as (a1 - 2*b2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .diagrams import PortGraph, format_diagram, MalformedDiagram
from .symplectic import OMEGA, format_hvector, label_name, parse_hvector, parse_label

FUNCTIONS = ("star", "bracket", "chi", "chiinv", "delta", "antipode", "tree")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Node:
    kind: str          # 'lit', 'sum', 'scale', 'call'
    value: object = None
    args: tuple = ()


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/(),;\[\]{}<=]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        i = 0
        while True:
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                rest = text[i:]
                if rest.strip():
                    j = i + len(rest) - len(rest.lstrip())
                    raise ParseError(f"unexpected character {text[j]!r}", self._byte(j))
                break
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            i = m.end()
        self.toks.append(("end", "", len(text)))
        self.pos = 0

    def _byte(self, i):
        return len(self.text[:i].encode())

    def peek(self, k=0):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self._byte(tok[2]))

    def expect(self, value):
        t = self.next()
        if t[1] != value:
            raise self.error(f"expected {value!r}, found {t[1] or 'end of input'!r}", t)
        return t

    def accept(self, value):
        if self.peek()[1] == value:
            return self.next()
        return None


def parse_expression(text: str) -> Node:
    tk = _Tokens(text)
    node = _expr(tk)
    if tk.peek()[0] != "end":
        raise tk.error(f"unexpected {tk.peek()[1]!r}")
    return node


def _expr(tk) -> Node:
    terms = [_term(tk)]
    while tk.peek()[1] in "+-" and tk.peek()[0] == "op":
        sign = tk.next()[1]
        t = _term(tk)
        terms.append(Node("scale", Fraction(-1), (t,)) if sign == "-" else t)
    return terms[0] if len(terms) == 1 else Node("sum", None, tuple(terms))


def _number(tk) -> Fraction:
    t = tk.next()
    return Fraction(t[1])


def _term(tk) -> Node:
    coef = Fraction(1)
    if tk.accept("-"):
        coef = -coef
    if tk.peek()[0] == "num":
        coef *= _number(tk)
        if not tk.accept("*"):
            return Node("scale", coef, (Node("lit", ("empty",)),))
    atom = _atom(tk)
    return atom if coef == 1 else Node("scale", coef, (atom,))


def _atom(tk) -> Node:
    t = tk.peek()
    if t[1] == "(":
        tk.next()
        e = _expr(tk)
        tk.expect(")")
        return e
    if t[0] != "name":
        raise tk.error(f"expected a diagram or function, found {t[1] or 'end of input'!r}")
    name = t[1]
    tk.next()
    if name in FUNCTIONS:
        tk.expect("(")
        args = [_expr(tk)]
        while tk.accept(","):
            args.append(_expr(tk))
        tk.expect(")")
        want = 2 if name in ("star", "bracket") else 1
        if len(args) != want:
            raise tk.error(f"{name} takes {want} argument(s)", t)
        return Node("call", name, tuple(args))
    if name == "Theta":
        return Node("lit", ("Theta",))
    if name == "empty":
        return Node("lit", ("empty",))
    if name in ("Y", "H", "Phi", "strut"):
        ordered = bool(tk.accept("<"))
        tk.expect("[")
        labels = [_label(tk)]
        seps = []
        while tk.peek()[1] in (",", ";"):
            seps.append(tk.next()[1])
            labels.append(_label(tk))
        tk.expect("]")
        shape = {"Y": [",", ","], "H": [",", ";", ","], "Phi": [","], "strut": [","]}[name]
        if seps != shape:
            raise tk.error(f"wrong label list for {name}", t)
        return Node("lit", (name, tuple(labels), ordered))
    if name == "G":
        return Node("lit", ("G",) + _generic(tk))
    raise tk.error(f"unknown name {name!r}", t)


def _label(tk):
    t = tk.peek()
    if t[1] == "(":
        # vector label: collect raw text up to the matching parenthesis
        start = tk.next()[2] + 1
        depth = 1
        while depth:
            u = tk.next()
            if u[0] == "end":
                raise tk.error("unclosed vector label", t)
            depth += {"(": 1, ")": -1}.get(u[1], 0)
        raw = tk.text[start:u[2]]
        try:
            v = parse_hvector(raw)
        except ValueError as exc:
            raise tk.error(str(exc), t) from None
        return tuple(sorted(v.items()))
    if t[0] != "name":
        raise tk.error(f"expected a label, found {t[1] or 'end of input'!r}")
    tk.next()
    try:
        return parse_label(t[1])
    except ValueError:
        raise tk.error(f"unknown label {t[1]!r}", t) from None


def _generic(tk):
    tk.expect("{")
    vertices, edges, legs, order = [], [], [], None
    while True:
        t = tk.next()
        if t[1] == "}":
            break
        if t[1] == "iv":
            tk.expect("(")
            ports = [_port(tk)]
            for _ in range(2):
                tk.expect(",")
                ports.append(_port(tk))
            tk.expect(")")
            vertices.append(tuple(ports))
        elif t[1] == "edge":
            a = _port(tk)
            tk.expect("-")
            edges.append((a, _port(tk)))
        elif t[1] == "leg":
            p = _port(tk)
            tk.expect("=")
            legs.append((p, _label(tk)))
        elif t[1] == "order":
            order = []
            if tk.peek()[0] == "name":
                order.append(_port(tk))
                while tk.accept(","):
                    order.append(_port(tk))
        else:
            raise tk.error(f"unexpected {t[1] or 'end of input'!r} in G{{...}}", t)
        if tk.accept(";"):
            continue
        tk.expect("}")
        break
    return tuple(vertices), tuple(edges), tuple(legs), None if order is None else tuple(order)


def _port(tk):
    t = tk.next()
    if t[0] != "name":
        raise tk.error("expected a port name", t)
    return t[1]


# ---------------------------------------------------------------------------
# literals to port graphs

def _lab(x):
    return dict(x) if isinstance(x, tuple) else x


def literal_graph(lit) -> PortGraph:
    kind = lit[0]
    if kind == "Theta":
        return PortGraph([("u0", "u1", "u2"), ("v0", "v1", "v2")], {},
                         [("u0", "v2"), ("u1", "v1"), ("u2", "v0")])
    if kind == "empty":
        return PortGraph([], {}, [])
    if kind == "G":
        _, vertices, edges, legs, order = lit
        legmap = {}
        all_edges = list(edges)
        for p, lab in legs:
            name = ("leg", p)
            legmap[name] = _lab(lab)
            all_edges.append((p, name))
        if order is not None:
            order = [("leg", p) for p in order]
        return PortGraph(vertices, legmap, all_edges, order)
    name, labels, ordered = lit
    labels = [_lab(x) for x in labels]
    if name == "Y":
        legs = {"l0": labels[0], "l1": labels[1], "l2": labels[2]}
        g = PortGraph([("u0", "u1", "u2")], legs, [("u0", "l0"), ("u1", "l1"), ("u2", "l2")],
                      ["l0", "l1", "l2"] if ordered else None)
    elif name == "H":
        a, b, c, d = labels
        legs = {"la": a, "lb": b, "lc": c, "ld": d}
        g = PortGraph([("ua", "um", "uc"), ("vb", "vd", "vm")], legs,
                      [("ua", "la"), ("uc", "lc"), ("vb", "lb"), ("vd", "ld"), ("um", "vm")],
                      ["la", "lb", "lc", "ld"] if ordered else None)
    elif name == "Phi":
        x, y = labels
        g = PortGraph([("ux", "u1", "u2"), ("vy", "v2", "v1")], {"lx": x, "ly": y},
                      [("ux", "lx"), ("vy", "ly"), ("u1", "v1"), ("u2", "v2")],
                      ["lx", "ly"] if ordered else None)
    elif name == "strut":
        g = PortGraph([], {"l0": labels[0], "l1": labels[1]}, [("l0", "l1")],
                      ["l0", "l1"] if ordered else None)
    else:
        raise ValueError(name)
    return g


# ---------------------------------------------------------------------------
# printing

def _label_text(x) -> str:
    if isinstance(x, tuple):
        return "(" + format_hvector(dict(x)) + ")"
    return label_name(x)


def _coef_text(c: Fraction) -> str:
    return str(c)


def unparse(node: Node) -> str:
    """Canonical text of an expression tree; parse(unparse(t)) == t."""
    if node.kind == "lit":
        lit = node.value
        kind = lit[0]
        if kind in ("Theta", "empty"):
            return kind
        if kind == "G":
            _, vertices, edges, legs, order = lit
            parts = [f"iv ({a},{b},{c})" for a, b, c in vertices]
            parts += [f"edge {a}-{b}" for a, b in edges]
            parts += [f"leg {p}={_label_text(lab)}" for p, lab in legs]
            if order is not None:
                parts.append("order " + ",".join(order) if order else "order")
            return "G{" + " ; ".join(parts) + "}"
        name, labels, ordered = lit
        ls = [_label_text(x) for x in labels]
        body = f"{ls[0]},{ls[1]};{ls[2]},{ls[3]}" if name == "H" else ",".join(ls)
        return f"{name}{'<' if ordered else ''}[{body}]"
    if node.kind == "call":
        return f"{node.value}(" + ", ".join(unparse(a) for a in node.args) + ")"
    if node.kind == "scale":
        inner = node.args[0]
        if inner.kind == "lit" and inner.value == ("empty",):
            return _coef_text(node.value)
        text = unparse(inner)
        if inner.kind == "sum":
            text = "(" + text + ")"
        if node.value == -1:
            return "-" + text
        return f"{_coef_text(node.value)}*{text}"
    if node.kind == "sum":
        out = unparse(node.args[0])
        for a in node.args[1:]:
            s = unparse(a)
            if a.kind == "scale" and s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out
    raise ValueError(node.kind)


def format_element(x: dict) -> str:
    """Text form of an element, one generic literal per diagram, parseable back."""
    if not x:
        return "0"
    parts = []
    for d, c in sorted(x.items()):
        lit = format_diagram(d) if d.degree or d.legs else "empty"
        if c == 1:
            parts.append(("+", lit))
        elif c == -1:
            parts.append(("-", lit))
        else:
            parts.append(("-" if c < 0 else "+", f"{abs(c)}*{lit}"))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        text += f" {sgn} {body}"
    return text


def format_tensor(t: dict) -> str:
    if not t:
        return "0"
    out = []
    for (a, b), c in sorted(t.items()):
        la = format_diagram(a) if a.degree else "empty"
        lb = format_diagram(b) if b.degree else "empty"
        out.append(f"{c}*({la} (x) {lb})")
    return " + ".join(out)


def label_genus(node: Node) -> int:
    """Largest label index used in an expression (0 if none)."""
    best = 0

    def lab_index(x):
        if isinstance(x, tuple):
            return max((lab // 2 + 1 for lab, _ in x), default=0)
        return 0 if x == OMEGA else x // 2 + 1

    def walk(n):
        nonlocal best
        if n.kind == "lit":
            lit = n.value
            if lit[0] == "G":
                for _, lab in lit[3]:
                    best = max(best, lab_index(lab))
            elif lit[0] not in ("Theta", "empty"):
                for lab in lit[1]:
                    best = max(best, lab_index(lab))
        for a in n.args:
            walk(a)

    walk(node)
    return best


__all__ = ["ParseError", "Node", "parse_expression", "unparse", "literal_graph",
           "format_element", "format_tensor", "label_genus", "MalformedDiagram"]
