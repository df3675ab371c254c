"""Partitions, Littlewood-Richardson coefficients and restriction from GL(2g) to Sp(2g)."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb, prod


def partition(parts) -> tuple:
    p = tuple(int(x) for x in parts if x)
    if any(a < b for a, b in zip(p, p[1:])) or any(x < 0 for x in p):
        raise ValueError(f"not a partition: {parts}")
    return p


def parse_partition(text: str) -> tuple:
    """'2,2,1,1', '(2,2,1,1)' or '1^6' style input."""
    text = text.strip().strip("()[]")
    if not text:
        return ()
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        if "^" in tok:
            a, m = tok.split("^")
            parts += [int(a)] * int(m)
        else:
            parts.append(int(tok))
    return partition(parts)


def conjugate(p) -> tuple:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def partitions(n: int, max_part: int | None = None, max_len: int | None = None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def contains(big, small) -> bool:
    return len(small) <= len(big) and all(s <= b for s, b in zip(small, big))


# ---------------------------------------------------------------------------
# Littlewood-Richardson

def lr_coefficient(mu, nu, lam) -> int:
    """Number of LR tableaux of shape lam/mu and content nu."""
    mu, nu, lam = partition(mu), partition(nu), partition(lam)
    if sum(mu) + sum(nu) != sum(lam) or not contains(lam, mu) or not contains(lam, nu):
        return 0
    rows = [(r, lam[r] - 1, mu[r] if r < len(mu) else 0) for r in range(len(lam))]
    # reading order: top row first, right to left
    cells = [(r, c) for r, hi, lo in rows for c in range(hi, lo - 1, -1)]
    filling: dict = {}
    count = [0] * (len(nu) + 1)
    total = 0

    def rec(k):
        nonlocal total
        if k == len(cells):
            total += 1
            return
        r, c = cells[k]
        for v in range(1, len(nu) + 1):
            if count[v] >= nu[v - 1]:
                continue
            # lattice word condition on the reverse reading word
            if v > 1 and count[v] + 1 > count[v - 1]:
                continue
            right = filling.get((r, c + 1))
            if right is not None and right < v:
                continue
            up = filling.get((r - 1, c))
            if up is not None and up >= v:
                continue
            filling[(r, c)] = v
            count[v] += 1
            rec(k + 1)
            count[v] -= 1
            del filling[(r, c)]

    rec(0)
    return total


def lr_product(mu, nu) -> Counter:
    """s_mu * s_nu as a Counter of partitions."""
    n = sum(mu) + sum(nu)
    out = Counter()
    for lam in partitions(n):
        c = lr_coefficient(mu, nu, lam)
        if c:
            out[lam] = c
    return out


# ---------------------------------------------------------------------------
# dimensions

def schur_dim(lam, n: int) -> int:
    """Dimension of the GL(n) Schur module by the hook-content formula."""
    lam = partition(lam)
    if len(lam) > n:
        return 0
    conj = conjugate(lam)
    num = den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= row - j + conj[j] - i - 1
    return num // den


def label_to_partition(a) -> tuple:
    """Fundamental-weight multiplicities (a_1..a_g) to a partition."""
    out = []
    acc = 0
    for x in reversed(a):
        acc += x
        out.append(acc)
    return partition(reversed(out))


def partition_to_label(p, genus: int) -> tuple:
    p = list(p) + [0] * (genus + 1 - len(p))
    return tuple(p[i] - p[i + 1] for i in range(genus))


def sp_dim(label, genus: int) -> int:
    """Weyl dimension formula for Sp(2g) with rho = (g, ..., 1)."""
    if len(label) != genus:
        raise ValueError("label length must equal the genus")
    lam = list(label_to_partition(label)) + [0] * genus
    lam = lam[:genus]
    rho = list(range(genus, 0, -1))
    lr = [a + b for a, b in zip(lam, rho)]
    val = Fraction(1)
    for i in range(genus):
        val *= Fraction(lr[i], rho[i])
        for j in range(i + 1, genus):
            val *= Fraction(lr[i] ** 2 - lr[j] ** 2, rho[i] ** 2 - rho[j] ** 2)
    assert val.denominator == 1
    return int(val)


# ---------------------------------------------------------------------------
# restriction GL(2g) -> Sp(2g)

def _even_column_partitions(n: int):
    """Partitions of n in which every part occurs an even number of times."""
    for p in partitions(n):
        if all(v % 2 == 0 for v in Counter(p).values()):
            yield p


def _rim_strip_from_first_column(p, h):
    """Remove a rim strip of h cells starting at the bottom of column one.

    Returns (partition, number of columns) or None if the result is not a
    partition.
    """
    rows = list(p)
    r, c = len(rows) - 1, 0
    cells = []
    while len(cells) < h:
        if r < 0:
            return None
        cells.append((r, c))
        if c + 1 < rows[r]:
            c += 1
        else:
            r -= 1
    new = list(rows)
    for r, _ in cells:
        new[r] -= 1
    if any(a < b for a, b in zip(new, new[1:])):
        return None
    return tuple(x for x in new if x), len({c for _, c in cells})


def modify(p, genus: int):
    """Sp(2g) modification rule: (sign, partition) or None when the character vanishes."""
    sign = 1
    p = partition(p)
    while len(p) > genus:
        h = 2 * len(p) - 2 * genus - 2
        if h == 0:
            return None
        res = _rim_strip_from_first_column(p, h)
        if res is None:
            return None
        p, cols = res
        sign *= (-1) ** cols
    return sign, p


def littlewood_restriction(lam, genus: int) -> Counter:
    """Multiset {label: multiplicity} of Sp(2g) irreducibles in S_lam(C^2g)."""
    lam = partition(lam)
    if len(lam) > 2 * genus:
        return Counter()
    raw = Counter()
    n = sum(lam)
    for k in range(0, n + 1, 2):
        for eta in _even_column_partitions(k):
            if not contains(lam, eta):
                continue
            for mu in partitions(n - k):
                c = lr_coefficient(eta, mu, lam)
                if c:
                    raw[mu] += c
    out = Counter()
    for mu, c in raw.items():
        m = modify(mu, genus)
        if m is None:
            continue
        sign, nu = m
        out[partition_to_label(nu, genus)] += sign * c
    for k in [k for k, v in out.items() if v == 0]:
        del out[k]
    if any(v < 0 for v in out.values()):
        raise ValueError(f"unsupported modification case for {lam} at genus {genus}")
    return out


def label_name(label) -> str:
    terms = []
    for i, a in enumerate(label, 1):
        if a:
            terms.append(f"w{i}" if a == 1 else f"{a}w{i}")
    return "+".join(terms) or "0"


def format_decomposition(mult: Counter) -> str:
    parts = []
    for label in sorted(mult, key=lambda lab: (sum(label_to_partition(lab)), lab)):
        m = mult[label]
        parts.append(("" if m == 1 else f"{m}") + f"G[{label_name(label)}]")
    return " + ".join(parts)


def _fund(genus, *pairs):
    a = [0] * genus
    for coeff, k in pairs:
        if k <= genus:
            a[k - 1] += coeff
    return tuple(a)


def expected_l2l3(genus: int) -> Counter:
    """The known multiplicities of Lambda^2 Lambda^3 C^2g for g = 3..6 (and g >= 6)."""
    g = genus
    out = Counter()
    out[_fund(g)] = 2
    out[_fund(g, (1, 2))] = 2 if g == 3 else 3
    out[_fund(g, (2, 2))] = 1
    out[_fund(g, (1, 1), (1, 3))] = 1
    if g >= 4:
        out[_fund(g, (1, 4))] = 1 if g == 4 else 2
        out[_fund(g, (1, 2), (1, 4))] = 1
    if g >= 6:
        out[_fund(g, (1, 6))] = 1
    return out


def verify_l2l3(genus: int) -> dict:
    g = genus
    n = 2 * g
    gl_parts = [(1,) * 6, (2, 2, 1, 1)]
    gl_dim = sum(schur_dim(p, n) for p in gl_parts)
    computed = Counter()
    for p in gl_parts:
        computed.update(littlewood_restriction(p, g))
    computed = +computed
    expected = expected_l2l3(g)
    sp_total = sum(m * sp_dim(lab, g) for lab, m in computed.items())
    target = comb(comb(n, 3), 2)
    return {
        "genus": g,
        "computed": format_decomposition(computed),
        "expected": format_decomposition(expected),
        "match": computed == expected,
        "gl_dimension": gl_dim,
        "sp_dimension": sp_total,
        "target_dimension": target,
        "ok": computed == expected and gl_dim == target and sp_total == target,
    }


def decompose(lam, genus: int) -> dict:
    mult = littlewood_restriction(lam, genus)
    return {
        "partition": list(partition(lam)),
        "genus": genus,
        "decomposition": format_decomposition(mult),
        "multiplicities": [{"label": list(k), "name": label_name(k), "multiplicity": v,
                            "dimension": sp_dim(k, genus)} for k, v in sorted(mult.items())],
        "dimension": schur_dim(lam, 2 * genus),
        "dimension_check": sum(v * sp_dim(k, genus) for k, v in mult.items()) == schur_dim(lam, 2 * genus),
    }
