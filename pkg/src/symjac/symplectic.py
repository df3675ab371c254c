"""The symplectic space H_Q with basis (a1..ag, b1..bg) and the sp(2g) action.

Basis labels are encoded as small integers independent of the genus:
``a_i -> 2*(i-1)`` and ``b_i -> 2*(i-1) + 1``.  The formal omega symbol used
by closed-surface diagrams is ``OMEGA = -1``.  Matrix coordinates follow the
block convention ``(a1..ag, b1..bg)``, i.e. ``a_i`` is coordinate ``i-1`` and
``b_i`` is coordinate ``g+i-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

OMEGA = -1


class GenusError(ValueError):
    """A basis index exceeds the ambient genus."""


def alpha(i: int) -> int:
    return 2 * (i - 1)


def beta(i: int) -> int:
    return 2 * (i - 1) + 1


def index_of(label: int) -> int:
    return label // 2 + 1


def is_alpha(label: int) -> bool:
    return label % 2 == 0


def label_name(label: int) -> str:
    if label == OMEGA:
        return "w"
    return ("a" if is_alpha(label) else "b") + str(index_of(label))


_LABEL_RE = re.compile(r"^([ab])(\d+)$")


def parse_label(text: str) -> int:
    text = text.strip()
    if text == "w":
        return OMEGA
    m = _LABEL_RE.match(text)
    if not m or int(m.group(2)) < 1:
        raise ValueError(f"bad label {text!r}")
    i = int(m.group(2))
    return alpha(i) if m.group(1) == "a" else beta(i)


def basis_labels(genus: int) -> list[int]:
    return list(range(2 * genus))


def check_label(label: int, genus: int) -> None:
    if label != OMEGA and not 0 <= label < 2 * genus:
        raise GenusError(f"label {label_name(label)} outside genus {genus}")


def coordinate(label: int, genus: int) -> int:
    check_label(label, genus)
    i = index_of(label) - 1
    return i if is_alpha(label) else genus + i


def label_at(coord: int, genus: int) -> int:
    return alpha(coord + 1) if coord < genus else beta(coord - genus + 1)


# ---------------------------------------------------------------------------
# vectors of H_Q

def hvector(*pairs) -> dict[int, Fraction]:
    """Build a vector from ``(coefficient, label)`` pairs, dropping zeros."""
    out: dict[int, Fraction] = {}
    for c, lab in pairs:
        out[lab] = out.get(lab, 0) + Fraction(c)
    return {k: v for k, v in out.items() if v}


def parse_hvector(text: str) -> dict[int, Fraction]:
    """Parse ``3/2*a1 - b2`` style linear combinations of basis labels."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty vector")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"bad vector {text!r}")
    pairs = []
    for t in terms:
        sign = -1 if t.startswith("-") else 1
        t = t.lstrip("+-")
        if "*" in t:
            c, lab = t.split("*", 1)
            coef = Fraction(c)
        else:
            coef, lab = Fraction(1), t
        pairs.append((sign * coef, parse_label(lab)))
    return hvector(*pairs)


def format_hvector(v: dict[int, Fraction]) -> str:
    parts = []
    for lab in sorted(v):
        c = v[lab]
        name = label_name(lab)
        if c == 1:
            parts.append(f"+{name}")
        elif c == -1:
            parts.append(f"-{name}")
        else:
            sgn = "+" if c > 0 else "-"
            parts.append(f"{sgn}{abs(c)}*{name}")
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------------------
# the symplectic form

def omega_labels(x: int, y: int) -> int:
    """omega on basis labels: omega(a_i, b_j) = delta_ij, antisymmetric."""
    if x < 0 or y < 0 or x // 2 != y // 2 or x == y:
        return 0
    return 1 if is_alpha(x) else -1


def omega(u: dict[int, Fraction], v: dict[int, Fraction], genus: int) -> Fraction:
    total = Fraction(0)
    for x, cx in u.items():
        check_label(x, genus)
        for y, cy in v.items():
            check_label(y, genus)
            w = omega_labels(x, y)
            if w:
                total += w * cx * cy
    return total


def omega_bivector(genus: int) -> list[tuple[int, int]]:
    """The bivector sum_i a_i ^ b_i as its list of (a_i, b_i) pairs."""
    if genus < 0:
        raise GenusError("negative genus")
    return [(alpha(i), beta(i)) for i in range(1, genus + 1)]


def weight_of_label(label: int, genus: int) -> tuple[int, ...]:
    w = [0] * genus
    if label == OMEGA:
        return tuple(w)
    check_label(label, genus)
    w[index_of(label) - 1] = 1 if is_alpha(label) else -1
    return tuple(w)


# ---------------------------------------------------------------------------
# sp(2g) generators

@dataclass(frozen=True, order=True)
class SpGenerator:
    """A root vector or Cartan element of sp(2g), named as in the usual table.

    ``kind`` is one of X, Y, Z (two distinct indices) or U, V, H (one index).
    """

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind in "XYZ":
            if self.i == self.j or self.j < 1 or self.i < 1:
                raise ValueError(f"bad generator {self}")
        elif self.kind in "UVH":
            if self.i < 1:
                raise ValueError(f"bad generator {self}")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def __str__(self):
        if self.kind in "XYZ":
            return f"{self.kind}{self.i},{self.j}"
        return f"{self.kind}{self.i}"

    def matrix_entries(self, genus: int) -> list[tuple[int, int, int]]:
        """Nonzero entries (row, col, value) of the 2g x 2g matrix, 0-based."""
        g = genus
        i, j = self.i - 1, self.j - 1
        if max(self.i, self.j) > g:
            raise GenusError(f"{self} outside genus {g}")
        if self.kind == "X":
            return [(i, j, 1), (g + j, g + i, -1)]
        if self.kind == "Y":
            return [(i, g + j, 1), (j, g + i, 1)]
        if self.kind == "Z":
            return [(g + i, j, 1), (g + j, i, 1)]
        if self.kind == "U":
            return [(i, g + i, 1)]
        if self.kind == "V":
            return [(g + i, i, 1)]
        return [(i, i, 1), (g + i, g + i, -1)]

    def root(self, genus: int) -> tuple[int, ...]:
        """Weight shift (in L-coordinates) produced by this generator."""
        w = [0] * genus
        i, j = self.i - 1, self.j - 1
        if self.kind == "X":
            w[i] += 1
            w[j] -= 1
        elif self.kind == "Y":
            w[i] += 1
            w[j] += 1
        elif self.kind == "Z":
            w[i] -= 1
            w[j] -= 1
        elif self.kind == "U":
            w[i] += 2
        elif self.kind == "V":
            w[i] -= 2
        return tuple(w)


def sp_generators(genus: int, include_cartan: bool = True) -> list[SpGenerator]:
    gens = []
    for i in range(1, genus + 1):
        for j in range(1, genus + 1):
            if i != j:
                gens.append(SpGenerator("X", i, j))
    for i in range(1, genus + 1):
        for j in range(i + 1, genus + 1):
            gens.append(SpGenerator("Y", i, j))
            gens.append(SpGenerator("Z", i, j))
    for i in range(1, genus + 1):
        gens.append(SpGenerator("U", i))
        gens.append(SpGenerator("V", i))
        if include_cartan:
            gens.append(SpGenerator("H", i))
    return gens


def raising_generators(genus: int) -> list[SpGenerator]:
    out = [SpGenerator("X", i, j) for i in range(1, genus + 1) for j in range(i + 1, genus + 1)]
    out += [SpGenerator("Y", i, j) for i in range(1, genus + 1) for j in range(i + 1, genus + 1)]
    out += [SpGenerator("U", i) for i in range(1, genus + 1)]
    return out


_ACTION_CACHE: dict[tuple[SpGenerator, int], dict[int, list[tuple[int, int]]]] = {}


def label_action(gen: SpGenerator, genus: int) -> dict[int, list[tuple[int, int]]]:
    """Map each basis label to the (coefficient, label) terms of ``gen . label``."""
    key = (gen, genus)
    table = _ACTION_CACHE.get(key)
    if table is None:
        table = {lab: [] for lab in basis_labels(genus)}
        for r, c, v in gen.matrix_entries(genus):
            table[label_at(c, genus)].append((v, label_at(r, genus)))
        _ACTION_CACHE[key] = table
    return table


def sp_act(gen: SpGenerator, v: dict[int, Fraction], genus: int) -> dict[int, Fraction]:
    table = label_action(gen, genus)
    out: dict[int, Fraction] = {}
    for lab, c in v.items():
        check_label(lab, genus)
        for a, target in table[lab]:
            out[target] = out.get(target, 0) + a * c
    return {k: Fraction(x) for k, x in out.items() if x}
