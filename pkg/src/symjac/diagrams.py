"""Jacobi diagrams: storage, signed canonical form (AS), topology, gluing, enumeration.

A diagram with ``n`` internal (trivalent) vertices owns ports ``0..3n-1``;
vertex ``v`` has ports ``3v, 3v+1, 3v+2`` listed in its cyclic order.
``nbr[p]`` is the port joined to ``p`` by an edge, or ``-1-j`` when the edge
ends in external leg ``j``.  ``legs[j]`` is the label of leg ``j``.  When
``ordered`` is set, the position in ``legs`` is the total order of the
external vertices.

Every leg hangs off an internal vertex, so strut components cannot be
represented here at all; struts only appear in :class:`PortGraph`.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple

from .symplectic import OMEGA, check_label


class Diagram(NamedTuple):
    nbr: tuple
    legs: tuple
    ordered: bool = False

    @property
    def degree(self) -> int:
        return len(self.nbr) // 3

    @property
    def n_legs(self) -> int:
        return len(self.legs)

    def leg_ports(self) -> list[int]:
        out = [0] * len(self.legs)
        for p, t in enumerate(self.nbr):
            if t < 0:
                out[-1 - t] = p
        return out


EMPTY = Diagram((), ())
EMPTY_ORDERED = Diagram((), (), True)


class MalformedDiagram(ValueError):
    pass


def check_diagram(d: Diagram) -> None:
    nbr = d.nbr
    if len(nbr) % 3:
        raise MalformedDiagram("port count is not a multiple of 3")
    seen_legs = set()
    for p, t in enumerate(nbr):
        if t >= 0:
            if t >= len(nbr) or nbr[t] != p or t == p:
                raise MalformedDiagram(f"port {p} is not matched symmetrically")
        else:
            j = -1 - t
            if j >= len(d.legs) or j in seen_legs:
                raise MalformedDiagram(f"leg {j} attached twice or missing")
            seen_legs.add(j)
    if len(seen_legs) != len(d.legs):
        raise MalformedDiagram("dangling leg")


# ---------------------------------------------------------------------------
# signed canonical form



def _orientations(v: int, entry: int | None = None):
    """Port orders of vertex ``v`` (optionally starting at port ``entry``) with AS signs."""
    base = 3 * v
    starts = range(3) if entry is None else (entry - base,)
    for s in starts:
        fwd = (s, (s + 1) % 3, (s + 2) % 3)
        bwd = (s, (s + 2) % 3, (s + 1) % 3)
        yield tuple(base + k for k in fwd), 1
        yield tuple(base + k for k in bwd), -1


def _vertex_components(nbr) -> list[list[int]]:
    n = len(nbr) // 3
    comp = [-1] * n
    out = []
    for v in range(n):
        if comp[v] >= 0:
            continue
        comp[v] = len(out)
        group = [v]
        stack = [v]
        while stack:
            u = stack.pop()
            for p in range(3 * u, 3 * u + 3):
                t = nbr[p]
                if t >= 0 and comp[t // 3] < 0:
                    comp[t // 3] = len(out)
                    group.append(t // 3)
                    stack.append(t // 3)
        out.append(sorted(group))
    return out


def _canon_component(nbr, verts, leg_tok):
    """Lex-minimal BFS code of one component.

    Returns ``(code, orders, signs)``: the code, one labeling realizing it
    (list of port triples in new vertex order) with its sign first in
    ``signs``, and the set of signs over all labelings realizing the code.
    """
    states = []
    for r in verts:
        for order, sg in _orientations(r):
            states.append(([order], {r: 0}, sg))
    code = []
    total = 3 * len(verts)
    for k in range(total):
        pos, slot = divmod(k, 3)
        best = None
        nxt = []
        for orders, num, sg in states:
            p = orders[pos][slot]
            t = nbr[p]
            if t < 0:
                tok = leg_tok[-1 - t]
                ext = None
            else:
                w = t // 3
                i = num.get(w)
                if i is not None:
                    tok = 3 * i + orders[i].index(t)
                    ext = None
                else:
                    tok = 3 * len(orders)
                    ext = w
            if best is not None and tok > best:
                continue
            if best is None or tok < best:
                best = tok
                nxt = []
            if ext is None:
                nxt.append((orders, num, sg))
            else:
                for order, s2 in _orientations(ext, t):
                    num2 = dict(num)
                    num2[ext] = len(orders)
                    nxt.append((orders + [order], num2, sg * s2))
        code.append(best)
        states = nxt
    signs = {s for _, _, s in states}
    first = states[0]
    return tuple(code), first[0], [first[2]] + sorted(signs - {first[2]})


def _leg_tokens(d: Diagram):
    if d.ordered:
        return [-1 - j for j in range(len(d.legs))]
    return [-1 if lab == OMEGA else -2 - lab for lab in d.legs]


_CANON: dict = {}


def canonicalize(d: Diagram):
    """Return ``(canonical diagram, sign)``, or ``(None, 0)`` if AS forces zero.

    The canonical diagram is a deterministic representative of the
    isomorphism class (isomorphisms preserve labels, leg order when present
    and cyclic orders up to the AS sign).
    """
    hit = _CANON.get(d)
    if hit is not None:
        return hit
    nbr = d.nbr
    # a self-loop is always killed by AS
    for p, t in enumerate(nbr):
        if t >= 0 and t // 3 == p // 3:
            _CANON[d] = (None, 0)
            return None, 0
    tok = _leg_tokens(d)
    comps = []
    sign = 1
    for verts in _vertex_components(nbr):
        code, orders, signs = _canon_component(nbr, verts, tok)
        if len(signs) > 1:
            _CANON[d] = (None, 0)
            return None, 0
        sign *= signs[0]
        comps.append((code, orders))
    comps.sort(key=lambda c: c[0])
    newport = {}
    vi = 0
    for _, orders in comps:
        for order in orders:
            for k, p in enumerate(order):
                newport[p] = 3 * vi + k
            vi += 1
    out = [0] * len(nbr)
    if d.ordered:
        for p, t in enumerate(nbr):
            out[newport[p]] = newport[t] if t >= 0 else t
        legs = d.legs
    else:
        legmap = {}
        legs = []
        # walk new ports in order so legs are numbered by first appearance
        inv = sorted(newport.items(), key=lambda kv: kv[1])
        for p, q in inv:
            t = nbr[p]
            if t < 0:
                j = -1 - t
                legmap[j] = len(legs)
                legs.append(d.legs[j])
                out[q] = -1 - legmap[j]
            else:
                out[q] = newport[t]
        legs = tuple(legs)
    res = (Diagram(tuple(out), legs, d.ordered), sign)
    _CANON[d] = res
    _CANON.setdefault(res[0], (res[0], 1))
    return res


def topology_code(d: Diagram) -> tuple:
    """Isomorphism invariant of the unlabeled, unoriented, unordered graph."""
    tok = [-1] * len(d.legs)
    codes = sorted(_canon_component(d.nbr, verts, tok)[0] for verts in _vertex_components(d.nbr))
    return tuple(codes)


def is_zero(d: Diagram) -> bool:
    return canonicalize(d)[0] is None


# ---------------------------------------------------------------------------
# topology queries

def n_components(d: Diagram) -> int:
    return len(_vertex_components(d.nbr))


def is_connected(d: Diagram) -> bool:
    return n_components(d) == 1


def loop_degree(d: Diagram) -> int:
    n, e = d.degree, len(d.legs)
    edges = (3 * n + e) // 2
    return edges - (n + e) + n_components(d)


def connected_components(d: Diagram) -> list[Diagram]:
    out = []
    for verts in _vertex_components(d.nbr):
        newv = {v: i for i, v in enumerate(verts)}
        legs_here = []
        for v in verts:
            for p in range(3 * v, 3 * v + 3):
                if d.nbr[p] < 0:
                    legs_here.append(-1 - d.nbr[p])
        legs_here.sort()
        newleg = {j: i for i, j in enumerate(legs_here)}
        nbr = []
        for v in verts:
            for p in range(3 * v, 3 * v + 3):
                t = d.nbr[p]
                if t >= 0:
                    nbr.append(3 * newv[t // 3] + t % 3)
                else:
                    nbr.append(-1 - newleg[-1 - t])
        out.append(Diagram(tuple(nbr), tuple(d.legs[j] for j in legs_here), d.ordered))
    return out


def subdiagram(d: Diagram, verts) -> Diagram:
    """Union of the components containing the given vertices (order kept)."""
    keep = set(verts)
    verts = sorted(keep)
    newv = {v: i for i, v in enumerate(verts)}
    legs_here = sorted(-1 - d.nbr[p] for v in verts for p in range(3 * v, 3 * v + 3) if d.nbr[p] < 0)
    newleg = {j: i for i, j in enumerate(legs_here)}
    nbr = []
    for v in verts:
        for p in range(3 * v, 3 * v + 3):
            t = d.nbr[p]
            if t >= 0:
                if t // 3 not in keep:
                    raise MalformedDiagram("vertex set is not a union of components")
                nbr.append(3 * newv[t // 3] + t % 3)
            else:
                nbr.append(-1 - newleg[-1 - t])
    return Diagram(tuple(nbr), tuple(d.legs[j] for j in legs_here), d.ordered)


# ---------------------------------------------------------------------------
# building new diagrams

def disjoint_union(d: Diagram, e: Diagram, ordered: bool | None = None) -> Diagram:
    """``d`` followed by ``e``; in ordered diagrams the legs of ``e`` come last."""
    off = len(d.nbr)
    el = len(d.legs)
    nbr = list(d.nbr)
    for t in e.nbr:
        nbr.append(t + off if t >= 0 else t - el)
    if ordered is None:
        ordered = d.ordered and e.ordered
    return Diagram(tuple(nbr), d.legs + e.legs, ordered)


def glue_legs(d: Diagram, pairs, ordered: bool = False) -> Diagram:
    """Fuse each pair of legs ``(i, j)`` of ``d`` into a single edge.

    The surviving legs keep their relative order.
    """
    ports = d.leg_ports()
    nbr = list(d.nbr)
    dead = set()
    for i, j in pairs:
        if i == j or i in dead or j in dead:
            raise MalformedDiagram("overlapping pairing")
        p, q = ports[i], ports[j]
        nbr[p] = q
        nbr[q] = p
        dead.add(i)
        dead.add(j)
    alive = [j for j in range(len(d.legs)) if j not in dead]
    newleg = {j: i for i, j in enumerate(alive)}
    for p, t in enumerate(nbr):
        if t < 0 and (-1 - t) in newleg:
            nbr[p] = -1 - newleg[-1 - t]
    return Diagram(tuple(nbr), tuple(d.legs[j] for j in alive), ordered)


def glue(d: Diagram, e: Diagram, pairing) -> Diagram:
    """Glue legs of ``d`` to legs of ``e`` along ``pairing`` (list of (i, j))."""
    u = disjoint_union(d, e, ordered=False)
    off = len(d.legs)
    return glue_legs(u, [(i, off + j) for i, j in pairing])


def with_labels(d: Diagram, legs) -> Diagram:
    return Diagram(d.nbr, tuple(legs), d.ordered)


def forget_order(d: Diagram) -> Diagram:
    return Diagram(d.nbr, d.legs, False)


def with_order(d: Diagram, perm) -> Diagram:
    """Ordered diagram whose i-th external vertex is old leg ``perm[i]``."""
    pos = {j: i for i, j in enumerate(perm)}
    nbr = tuple(-1 - pos[-1 - t] if t < 0 else t for t in d.nbr)
    return Diagram(nbr, tuple(d.legs[j] for j in perm), True)


def insert_vertex_on_legs(d: Diagram, i: int, j: int, k: int) -> Diagram:
    """Remove legs i, j, k and join their three edges at a new vertex (i, j, k)."""
    ports = d.leg_ports()
    n = len(d.nbr)
    nbr = list(d.nbr) + [0, 0, 0]
    for slot, leg in enumerate((i, j, k)):
        p = ports[leg]
        nbr[p] = n + slot
        nbr[n + slot] = p
    dead = {i, j, k}
    alive = [x for x in range(len(d.legs)) if x not in dead]
    newleg = {x: y for y, x in enumerate(alive)}
    for p, t in enumerate(nbr):
        if t < 0:
            nbr[p] = -1 - newleg[-1 - t]
    return Diagram(tuple(nbr), tuple(d.legs[x] for x in alive), d.ordered)


def check_genus(d: Diagram, genus: int) -> None:
    for lab in d.legs:
        check_label(lab, genus)


# ---------------------------------------------------------------------------
# named constructors

def Y(x, y, z, ordered=False) -> Diagram:
    return Diagram((-1, -2, -3), (x, y, z), ordered)


def H(a, b, c, d, ordered=False) -> Diagram:
    """u = (a, m, c), v = (b, d, m) joined along m."""
    return Diagram((-1, 5, -2, -3, -4, 1), (a, c, b, d), ordered)


def Phi(x, y, ordered=False) -> Diagram:
    """u = (x, m1, m2), v = (y, m2, m1)."""
    return Diagram((-1, 5, 4, -2, 2, 1), (x, y), ordered)


def Theta() -> Diagram:
    """u = (e1, e2, e3), v = (e3, e2, e1)."""
    return Diagram((5, 4, 3, 2, 1, 0), ())


# ---------------------------------------------------------------------------
# enumeration

def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in _matchings(rest):
            yield [(a, items[k])] + m


_TOPO: dict = {}


def topologies(n_vertices: int, n_legs: int, connected: bool = True) -> list[Diagram]:
    """Unlabeled shapes with the given vertex and leg counts, one per class.

    Shapes with a self-loop are skipped since AS kills them for every labeling.
    """
    key = (n_vertices, n_legs, connected)
    if key in _TOPO:
        return _TOPO[key]
    ports = list(range(3 * n_vertices))
    found = {}
    if (3 * n_vertices - n_legs) % 2 == 0 and 0 <= n_legs <= 3 * n_vertices:
        for leg_ports in itertools.combinations(ports, n_legs):
            rest = [p for p in ports if p not in leg_ports]
            for m in _matchings(rest):
                nbr = [0] * len(ports)
                ok = True
                for a, b in m:
                    if a // 3 == b // 3:
                        ok = False
                        break
                    nbr[a], nbr[b] = b, a
                if not ok:
                    continue
                for j, p in enumerate(leg_ports):
                    nbr[p] = -1 - j
                d = Diagram(tuple(nbr), (0,) * n_legs)
                if connected and n_vertices and n_components(d) != 1:
                    continue
                code = topology_code(d)
                found.setdefault(code, d)
    out = [found[c] for c in sorted(found)]
    _TOPO[key] = out
    return out


def legs_for(n_vertices: int, loops: int) -> int:
    """Leg count of a connected diagram with given degree and loop degree."""
    return n_vertices + 2 - 2 * loops


def enumerate_diagrams(genus: int, degree: int, connected: bool = True,
                       loops: int | None = None, labels=None) -> list[Diagram]:
    """All nonzero canonical diagrams with basis labels, sorted.

    ``loops`` restricts to one loop degree (connected case only).
    """
    if labels is None:
        labels = list(range(2 * genus))
    if not connected:
        return _enumerate_all(genus, degree, labels)
    out = set()
    loop_range = range(0, degree // 2 + 2) if loops is None else [loops]
    for ell in loop_range:
        e = legs_for(degree, ell)
        if e < 0:
            continue
        for topo in topologies(degree, e, True):
            for labs in itertools.product(labels, repeat=e):
                c, s = canonicalize(with_labels(topo, labs))
                if c is not None:
                    out.add(c)
    return sorted(out)


def _enumerate_all(genus, degree, labels):
    """Disjoint unions of connected diagrams (multisets), canonicalized."""
    conn = {k: enumerate_diagrams(genus, k, True, labels=labels) for k in range(1, degree + 1)}
    out = set()

    def rec(remaining, min_key, acc):
        if remaining == 0:
            d = EMPTY
            for c in acc:
                d = disjoint_union(d, c)
            cd, s = canonicalize(d)
            if cd is not None:
                out.add(cd)
            return
        for k in range(1, remaining + 1):
            for idx, c in enumerate(conn[k]):
                key = (k, idx)
                if min_key is not None and key < min_key:
                    continue
                rec(remaining - k, key, acc + [c])

    rec(degree, None, [])
    return sorted(out)


# ---------------------------------------------------------------------------
# generic port graphs (struts and omega legs allowed)

class PortGraph:
    """A Jacobi diagram described by named half-edges.

    ``vertices`` are triples of half-edge names in cyclic order, ``legs``
    maps a half-edge name to its label, ``edges`` pairs half-edge names and
    ``order`` (optional) lists leg half-edges smallest first.
    """

    def __init__(self, vertices, legs, edges, order=None):
        self.vertices = [tuple(v) for v in vertices]
        self.legs = dict(legs)
        self.edges = [tuple(e) for e in edges]
        self.order = list(order) if order is not None else None
        self._check()

    def _check(self):
        slots = [h for v in self.vertices for h in v]
        names = slots + list(self.legs)
        if len(set(names)) != len(names):
            raise MalformedDiagram("half-edge used twice")
        ends = [h for e in self.edges for h in e]
        if sorted(map(str, ends)) != sorted(map(str, names)) or len(set(ends)) != len(ends):
            raise MalformedDiagram("edges must match every half-edge exactly once")
        if self.order is not None and sorted(map(str, self.order)) != sorted(map(str, self.legs)):
            raise MalformedDiagram("order must list every leg once")

    @property
    def ordered(self):
        return self.order is not None

    def struts(self):
        return [e for e in self.edges if e[0] in self.legs and e[1] in self.legs]

    def to_diagram(self) -> Diagram:
        if self.struts():
            raise MalformedDiagram("strut components are not admitted")
        port = {}
        for v, triple in enumerate(self.vertices):
            for k, h in enumerate(triple):
                port[h] = 3 * v + k
        leg_names = self.order if self.order is not None else list(self.legs)
        legidx = {h: j for j, h in enumerate(leg_names)}
        nbr = [0] * (3 * len(self.vertices))
        for a, b in self.edges:
            if a in port and b in port:
                nbr[port[a]] = port[b]
                nbr[port[b]] = port[a]
            elif a in port:
                nbr[port[a]] = -1 - legidx[b]
            else:
                nbr[port[b]] = -1 - legidx[a]
        return Diagram(tuple(nbr), tuple(self.legs[h] for h in leg_names), self.ordered)

    @classmethod
    def from_diagram(cls, d: Diagram) -> "PortGraph":
        vertices = [(f"p{3*v}", f"p{3*v+1}", f"p{3*v+2}") for v in range(d.degree)]
        legs = {f"l{j}": lab for j, lab in enumerate(d.legs)}
        edges = []
        for p, t in enumerate(d.nbr):
            if t >= 0 and p < t:
                edges.append((f"p{p}", f"p{t}"))
            elif t < 0:
                edges.append((f"p{p}", f"l{-1-t}"))
        order = [f"l{j}" for j in range(len(d.legs))] if d.ordered else None
        return cls(vertices, legs, edges, order)


def format_diagram(d: Diagram) -> str:
    """Generic text form accepted by the parser."""
    parts = []
    for v in range(d.degree):
        parts.append(f"iv (p{3*v},p{3*v+1},p{3*v+2})")
    from .symplectic import label_name
    for p, t in enumerate(d.nbr):
        if t >= 0 and p < t:
            parts.append(f"edge p{p}-p{t}")
    for p, t in enumerate(d.nbr):
        if t < 0:
            parts.append(f"leg p{p}={label_name(d.legs[-1 - t])}")
    if d.ordered and d.legs:
        ports = d.leg_ports()
        parts.append("order " + ",".join(f"p{ports[j]}" for j in range(len(d.legs))))
    elif d.ordered:
        parts.append("order")
    return "G{" + " ; ".join(parts) + "}"


def enumerate_ordered(genus: int, degree: int, labels=None) -> list[Diagram]:
    """All nonzero connected ordered diagrams with basis labels, sorted."""
    if labels is None:
        labels = list(range(2 * genus))
    out = set()
    for ell in range(0, degree // 2 + 2):
        e = legs_for(degree, ell)
        if e < 0:
            continue
        for topo in topologies(degree, e, True):
            shapes = {canonicalize(with_order(topo, perm))[0] for perm in itertools.permutations(range(e))}
            shapes.discard(None)
            for shape in shapes:
                for labs in itertools.product(labels, repeat=e):
                    c, s = canonicalize(with_labels(shape, labs))
                    if c is not None:
                        out.add(c)
    return sorted(out)
