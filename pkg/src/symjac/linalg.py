"""Exact sparse linear algebra over Q.

Vectors are dicts ``{column: Fraction}`` with integer columns and no zero
entries.  An :class:`Echelon` keeps rows keyed by their pivot, which is
always the row's largest column.  Reducing a vector against it removes every
pivot column, so the remainder is a canonical representative modulo the
row span and its support lies in the free (non-pivot) columns.
"""

from __future__ import annotations

import heapq
from fractions import Fraction


def vadd(acc: dict, v: dict, c=1) -> dict:
    """acc += c * v in place."""
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vsub(a: dict, b: dict) -> dict:
    return vadd(dict(a), b, -1)


class Echelon:
    """Row-echelon data for a subspace of Q^(columns)."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v: dict) -> dict:
        rows = self.rows
        v = dict(v)
        heap = [-c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = -heapq.heappop(heap)
            coef = v.pop(c, None)
            if coef is None:
                continue
            for col, x in rows[c].items():
                if col == c:
                    continue
                old = v.get(col)
                if old is None:
                    v[col] = -coef * x
                    if col in rows:
                        heapq.heappush(heap, -col)
                else:
                    y = old - coef * x
                    if y:
                        v[col] = y
                    else:
                        del v[col]
        return v

    def add(self, v: dict):
        """Insert ``v``; return its nonzero reduced form, or None if dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = max(r)
        inv = 1 / Fraction(r[p])
        row = {k: x * inv for k, x in r.items()}
        self.rows[p] = row
        return r

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    def is_subspace_of(self, other: "Echelon") -> bool:
        return all(other.contains(r) for r in self.rows.values())

    def equals(self, other: "Echelon") -> bool:
        return self.rank == other.rank and self.is_subspace_of(other)


def span(vectors) -> Echelon:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e


class _Tracked:
    """Echelon that remembers how each row was formed from the inputs."""

    def __init__(self):
        self.rows: dict[int, tuple[dict, dict]] = {}

    def reduce(self, v: dict, combo: dict):
        rows = self.rows
        v = dict(v)
        combo = dict(combo)
        heap = [-c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = -heapq.heappop(heap)
            coef = v.pop(c, None)
            if coef is None:
                continue
            row, rcombo = rows[c]
            for col, x in row.items():
                if col == c:
                    continue
                old = v.get(col)
                if old is None:
                    v[col] = -coef * x
                    if col in rows:
                        heapq.heappush(heap, -col)
                else:
                    y = old - coef * x
                    if y:
                        v[col] = y
                    else:
                        del v[col]
            vadd(combo, rcombo, -coef)
        return v, combo


def kernel_image(columns) -> tuple[list[dict], Echelon]:
    """Kernel basis (as dicts over input positions) and image echelon of a map.

    ``columns[j]`` is the image of the j-th domain basis vector.
    """
    tr = _Tracked()
    image = Echelon()
    kernel = []
    for j, col in enumerate(columns):
        r, combo = tr.reduce(col, {j: Fraction(1)})
        if not r:
            kernel.append(combo)
            continue
        p = max(r)
        inv = 1 / Fraction(r[p])
        tr.rows[p] = ({k: x * inv for k, x in r.items()}, vscale(combo, inv))
        image.add(r)
    return kernel, image


def rank(columns) -> int:
    return span(columns).rank


def module_closure(seeds, operators, weight_of=None) -> dict:
    """Smallest subspace containing ``seeds`` and stable under ``operators``.

    Each operator maps a vector to a vector.  With ``weight_of`` (vector ->
    hashable weight) the result is kept as one echelon per weight space,
    which is much cheaper when the operators shift weights; seeds must then
    be weight vectors.  Returns ``{weight: Echelon}`` (key None otherwise).
    """
    spaces: dict = {}
    queue = []

    def push(v):
        w = weight_of(v) if weight_of else None
        e = spaces.setdefault(w, Echelon())
        r = e.add(v)
        if r is not None:
            queue.append(r)

    for s in seeds:
        if s:
            push(s)
    while queue:
        v = queue.pop()
        for op in operators:
            out = op(v)
            if out:
                push(out)
    return spaces


def closure_rank(spaces: dict) -> int:
    return sum(e.rank for e in spaces.values())


def to_json_matrix(columns, n_rows: int) -> dict:
    """Matrix export: entries (row, col, "p/q") with rows = codomain."""
    entries = []
    for j, col in enumerate(columns):
        for i in sorted(col):
            entries.append((i, j, str(Fraction(col[i]))))
    entries.sort()
    return {"rows": n_rows, "cols": len(columns), "entries": entries}
