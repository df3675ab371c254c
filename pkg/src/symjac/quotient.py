"""Relations (IHX, STU-like), quotient bases, normal forms and module spans."""

from __future__ import annotations

import hashlib
import pickle
from fractions import Fraction

from . import config
from .config import CapExceeded
from .diagrams import (Diagram, connected_components, enumerate_diagrams,
                       enumerate_ordered, glue_legs, loop_degree)
from .elements import add_diagram, diagram_weight, element_weight, sp_act_element
from .linalg import Echelon
from .symplectic import omega_labels, raising_generators


# ---------------------------------------------------------------------------
# relation rows

def internal_edges(d: Diagram) -> list[int]:
    return [p for p, t in enumerate(d.nbr) if t > p]


def ihx_terms(d: Diagram, p: int) -> list[Diagram]:
    """The three diagrams of the IHX relation at the edge starting at port ``p``.

    With u = (x, y, m) and v = (m, z, w) written T(xy|zw), the relation
    reads T(ab|cd) + T(ac|db) + T(ad|bc) = 0 where ``d`` itself is T(ab|cd).
    """
    q = d.nbr[p]
    u, v = p // 3, q // 3
    a = 3 * u + (p % 3 + 1) % 3
    b = 3 * u + (p % 3 + 2) % 3
    c = 3 * v + (q % 3 + 1) % 3
    e = 3 * v + (q % 3 + 2) % 3

    def T(x, y, z, w):
        nbr = list(d.nbr)
        newpos = {x: a, y: b, z: c, w: e}
        for role, slot in newpos.items():
            t = d.nbr[role]
            if t < 0:
                nbr[slot] = t
            elif t in newpos:
                nbr[slot] = newpos[t]
            else:
                nbr[slot] = t
                nbr[t] = slot
        return Diagram(tuple(nbr), d.legs, d.ordered)

    return [T(a, b, c, e), T(a, c, e, b), T(a, e, b, c)]


def ihx_element(d: Diagram, p: int) -> dict:
    row: dict = {}
    for t in ihx_terms(d, p):
        add_diagram(row, t, 1)
    return row


def swap_adjacent(d: Diagram, i: int) -> Diagram:
    legs = list(d.legs)
    legs[i], legs[i + 1] = legs[i + 1], legs[i]
    a, b = -1 - i, -2 - i
    nbr = tuple(b if t == a else a if t == b else t for t in d.nbr)
    return Diagram(nbr, tuple(legs), d.ordered)


def stu_element(d: Diagram, i: int) -> dict:
    """D(..x<y..) - D(..y<x..) - omega(x,y) D(x=y) for legs i, i+1."""
    if not d.ordered:
        raise ValueError("STU-like relation needs an ordered diagram")
    row: dict = {}
    add_diagram(row, d, 1)
    add_diagram(row, swap_adjacent(d, i), -1)
    w = omega_labels(d.legs[i], d.legs[i + 1])
    if w:
        add_diagram(row, glue_legs(d, [(i, i + 1)], ordered=True), -w)
    return row


def ihx_rows(diagrams):
    for d in diagrams:
        for p in internal_edges(d):
            row = ihx_element(d, p)
            if row:
                yield row


def stu_rows(diagrams):
    for d in diagrams:
        for i in range(len(d.legs) - 1):
            row = stu_element(d, i)
            if row:
                yield row


# ---------------------------------------------------------------------------
# quotient bases

class QuotientBasis:
    """Echelonized relations on the connected diagrams of one (genus, degree).

    Free columns are sorted by (loop degree, diagram), so basis vectors are
    loop-homogeneous whenever the relations are.
    """

    def __init__(self, genus: int, degree: int, ordered: bool = False,
                 extra_rows=None, tag: str | None = None):
        config.check_caps(genus, degree)
        self.genus = genus
        self.degree = degree
        self.ordered = ordered
        self.tag = tag or ("A<" if ordered else "A")
        if ordered:
            free = enumerate_ordered(genus, degree)
        else:
            free = enumerate_diagrams(genus, degree, connected=True)
        free.sort(key=lambda d: (loop_degree(d), d))
        self.free = free
        self.index = {d: i for i, d in enumerate(free)}
        ech = Echelon()
        n = 0
        cap = config.max_rows()
        rows = stu_rows(free) if ordered else iter(())
        for gen in (ihx_rows(free), rows, extra_rows or ()):
            for row in gen:
                n += 1
                if n > cap:
                    raise CapExceeded(f"more than {cap} relation rows")
                ech.add(self.vector(row))
        self.n_rows = n
        self.echelon = ech
        self.basis_cols = [i for i in range(len(free)) if i not in ech.rows]
        self.pos = {c: k for k, c in enumerate(self.basis_cols)}

    @property
    def dimension(self) -> int:
        return len(self.basis_cols)

    def vector(self, x: dict) -> dict:
        out = {}
        for d, c in x.items():
            i = self.index.get(d)
            if i is None:
                raise KeyError(f"diagram outside the {self.tag} space of genus {self.genus}, degree {self.degree}")
            out[i] = out.get(i, 0) + c
        return {k: v for k, v in out.items() if v}

    def nf(self, x: dict) -> dict:
        """Coordinates of ``x`` in the quotient basis."""
        r = self.echelon.reduce(self.vector(x))
        return {self.pos[c]: Fraction(v) for c, v in r.items()}

    def basis_diagram(self, k: int) -> Diagram:
        return self.free[self.basis_cols[k]]

    def element(self, coords: dict) -> dict:
        return {self.basis_diagram(k): Fraction(c) for k, c in coords.items() if c}

    def loop_of(self, k: int) -> int:
        return loop_degree(self.basis_diagram(k))

    def dims_by_loop(self) -> dict:
        out: dict = {}
        for k in range(self.dimension):
            ell = self.loop_of(k)
            out[ell] = out.get(ell, 0) + 1
        return dict(sorted(out.items()))

    def weight_of(self, k: int) -> tuple:
        return diagram_weight(self.basis_diagram(k), self.genus)

    def relation_matrix_json(self) -> dict:
        entries = []
        for r, p in enumerate(sorted(self.echelon.rows)):
            for c, v in sorted(self.echelon.rows[p].items()):
                entries.append((r, c, str(v)))
        return {"rows": self.echelon.rank, "cols": len(self.free), "entries": entries}


_BASES: dict = {}


def _cache_path(key):
    h = hashlib.sha1(repr((config.KERNEL_VERSION,) + key).encode()).hexdigest()[:16]
    return config.cache_dir() / f"qb-{key[0]}-g{key[1]}-d{key[2]}-{h}.pkl"


def cached_basis(key, build):
    """Memoize ``build()`` under ``key`` in memory and (optionally) on disk."""
    qb = _BASES.get(key)
    if qb is not None:
        return qb
    path = _cache_path(key)
    if config.use_cache() and path.exists():
        try:
            with open(path, "rb") as fh:
                qb = pickle.load(fh)
        except Exception:
            qb = None
    if qb is None:
        qb = build()
        if config.use_cache():
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                tmp = path.with_suffix(".tmp")
                with open(tmp, "wb") as fh:
                    pickle.dump(qb, fh, protocol=pickle.HIGHEST_PROTOCOL)
                tmp.replace(path)
            except OSError:
                pass
    _BASES[key] = qb
    return qb


def quotient_basis(genus: int, degree: int, ordered: bool = False) -> QuotientBasis:
    key = ("Ao" if ordered else "A", genus, degree)
    return cached_basis(key, lambda: QuotientBasis(genus, degree, ordered))


def clear_memory_cache() -> None:
    _BASES.clear()


# ---------------------------------------------------------------------------
# normal forms of general elements

def nf_connected(x: dict, genus: int) -> dict:
    """Normal form of an element of connected diagrams, keyed by (degree, position)."""
    by_deg: dict = {}
    for d, c in x.items():
        by_deg.setdefault(d.degree, {})[d] = c
    out = {}
    for k, part in by_deg.items():
        if k == 0:
            raise KeyError("the empty diagram is not connected")
        for pos, c in quotient_basis(genus, k, part and next(iter(part)).ordered).nf(part).items():
            out[(k, pos)] = c
    return out


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2))
            y = out.get(m, 0) + c1 * c2
            if y:
                out[m] = y
            else:
                out.pop(m, None)
    return out


_COMPONENT_NF: dict = {}


def _component_nf(comp: Diagram, genus: int) -> dict:
    key = (comp, genus)
    hit = _COMPONENT_NF.get(key)
    if hit is None:
        from .elements import element
        x = element((1, comp))
        qb = quotient_basis(genus, comp.degree)
        hit = {((comp.degree, pos),): c for pos, c in qb.nf(x).items()}
        _COMPONENT_NF[key] = hit
    return hit


def nf(x: dict, genus: int) -> dict:
    """Normal form in the unordered space, disconnected diagrams allowed.

    Since the relations act inside single components, the unordered space is
    the symmetric algebra on its connected part; coordinates are monomials
    (sorted tuples of (degree, position)) in connected basis vectors.
    """
    out: dict = {}
    for d, c in x.items():
        if d.ordered:
            raise ValueError("ordered diagram given to the unordered normal form")
        poly = {(): Fraction(1)}
        for comp in connected_components(d):
            poly = _poly_mul(poly, _component_nf(comp, genus))
            if not poly:
                break
        for m, v in poly.items():
            y = out.get(m, 0) + c * v
            if y:
                out[m] = y
            else:
                out.pop(m, None)
    return out


def is_zero_in_quotient(x: dict, genus: int) -> bool:
    return not nf(x, genus)


def equal_in_quotient(x: dict, y: dict, genus: int) -> bool:
    from .elements import sub
    return not nf(sub(x, y), genus)


# ---------------------------------------------------------------------------
# weights and Sp-module spans

def weight_and_hwv(x: dict, genus: int) -> dict:
    """Weight of ``x`` (None if mixed) and whether raising operators kill it."""
    w = element_weight(x, genus)
    hw = all(not nf(sp_act_element(gen, x, genus), genus) for gen in raising_generators(genus))
    return {"weight": w, "highest_weight": hw and w is not None}


def fundamental_coordinates(weight) -> tuple:
    """Weight in the L-basis to multiplicities of fundamental weights."""
    w = list(weight)
    return tuple(w[i] - (w[i + 1] if i + 1 < len(w) else 0) for i in range(len(w)))
