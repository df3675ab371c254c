import random
from fractions import Fraction

import pytest
from sympy import divisors, mobius

from symjac.diagrams import H, Phi, Theta, Y, disjoint_union, enumerate_diagrams, enumerate_ordered
from symjac.elements import add, element
from symjac.quotient import (equal_in_quotient, ihx_element, internal_edges, nf, quotient_basis,
                             stu_element)
from symjac.symplectic import alpha, beta

a1, b1, a2, b2, a3, b3 = alpha(1), beta(1), alpha(2), beta(2), alpha(3), beta(3)


def free_lie_dim(n: int, rank: int) -> int:
    return sum(mobius(d) * rank ** (n // d) for d in divisors(n)) // n


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("degree", [1, 2, 3])
def test_tree_part_matches_free_lie_count(g, degree):
    # tree diagrams of degree k = kernel of H (x) L_{k+1} -> L_{k+2}, bracket onto
    r = 2 * g
    expected = r * free_lie_dim(degree + 1, r) - free_lie_dim(degree + 2, r)
    assert quotient_basis(g, degree).dims_by_loop().get(0, 0) == expected


def test_genus_three_degree_two():
    qb = quotient_basis(3, 2)
    assert qb.dimension == 127
    assert qb.dims_by_loop() == {0: 105, 1: 21, 2: 1}


def test_loop_parts_add_up():
    for g in (1, 2, 3):
        for k in (1, 2, 3):
            qb = quotient_basis(g, k)
            assert sum(qb.dims_by_loop().values()) == qb.dimension


def test_one_loop_degree_two_is_symmetric_square():
    # Phi(x, y) = Phi(y, x) spans S^2 H
    for g in (1, 2, 3):
        assert quotient_basis(g, 2).dims_by_loop()[1] == 2 * g * (2 * g + 1) // 2


def test_ihx_rows_vanish(rng):
    pool = enumerate_diagrams(2, 3)
    for d in rng.sample(pool, 30):
        for p in internal_edges(d):
            assert not nf(ihx_element(d, p), 2)


def test_as_sign_in_normal_form():
    x = element((1, Y(a1, b1, a2)), (1, Y(b1, a1, a2)))
    assert not nf(x, 2)
    # H(a, b, c, d) has a and c on one vertex
    assert equal_in_quotient(element((1, H(a1, b1, a2, b2))), element((-1, H(a2, b1, a1, b2))), 2)
    assert not equal_in_quotient(element((1, H(a1, b1, a2, b2))), element((-1, H(b1, a1, a2, b2))), 2)


def test_normal_form_is_a_symmetric_algebra():
    y1, y2 = Y(a1, b1, a2), Y(a1, a2, b2)
    u = nf(element((1, disjoint_union(y1, y2))), 2)
    v = nf(element((1, disjoint_union(y2, y1))), 2)
    assert u == v and len(u) == 1
    (mono,) = u
    assert len(mono) == 2
    # theta is a scalar-like connected piece
    t = nf(element((1, disjoint_union(Theta(), Phi(a1, b1)))), 1)
    assert len(next(iter(t))) == 2


def test_stu_elements_are_zero_in_ordered_quotient():
    rng = random.Random(3)
    qb = quotient_basis(2, 2, ordered=True)
    pool = enumerate_ordered(2, 2)
    for d in rng.sample(pool, 40):
        for i in range(len(d.legs) - 1):
            assert not qb.nf(stu_element(d, i))


def test_outside_space_raises():
    qb = quotient_basis(1, 1)
    with pytest.raises(KeyError):
        qb.vector({Y(a1, b1, a2): Fraction(1)})


def test_cache_round_trip(tmp_path):
    from symjac import config
    from symjac.quotient import clear_memory_cache
    config.configure(cache_dir=str(tmp_path))
    clear_memory_cache()
    first = quotient_basis(2, 2).dimension
    clear_memory_cache()
    assert list(tmp_path.glob("qb-A-g2-d2-*.pkl"))
    assert quotient_basis(2, 2).dimension == first
    clear_memory_cache()
