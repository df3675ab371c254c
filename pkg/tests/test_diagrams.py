import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from symjac.diagrams import (EMPTY, Diagram, H, MalformedDiagram, Phi, PortGraph, Theta, Y,
                             canonicalize, check_diagram, connected_components, disjoint_union,
                             enumerate_diagrams, enumerate_ordered, format_diagram,
                             insert_vertex_on_legs, is_connected, legs_for, loop_degree,
                             n_components, topologies, with_order)
from symjac.symplectic import alpha, beta

a1, b1, a2, b2, a3, b3 = alpha(1), beta(1), alpha(2), beta(2), alpha(3), beta(3)


def relabel(d: Diagram, vperm, twists, legperm):
    """Same diagram with vertices renumbered, cyclic orders rotated or reversed
    (each reversal costs a sign) and, if unordered, legs renumbered."""
    n = d.degree
    newport = {}
    sign = 1
    for v in range(n):
        shift, flip = twists[v]
        order = [(shift + k) % 3 for k in range(3)]
        if flip:
            order = [order[0], order[2], order[1]]
            sign = -sign
        for k, old in enumerate(order):
            newport[3 * v + old] = 3 * vperm[v] + k
    nbr = [0] * len(d.nbr)
    legs = [None] * len(d.legs)
    for p, t in enumerate(d.nbr):
        if t >= 0:
            nbr[newport[p]] = newport[t]
        else:
            j = legperm[-1 - t]
            nbr[newport[p]] = -1 - j
            legs[j] = d.legs[-1 - t]
    return Diagram(tuple(nbr), tuple(legs), d.ordered), sign


SAMPLES = [Y(a1, b1, a2), H(a1, b2, a3, b1), Phi(a1, b2), Theta(),
           disjoint_union(Y(a1, a2, a3), H(b1, b2, b3, a1))]
SAMPLES += enumerate_diagrams(2, 3)[::40]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SAMPLES), st.data())
def test_canonical_form_is_invariant(d, data):
    n = d.degree
    vperm = data.draw(st.permutations(range(n)))
    twists = data.draw(st.lists(st.tuples(st.integers(0, 2), st.booleans()), min_size=n, max_size=n))
    legperm = data.draw(st.permutations(range(len(d.legs))))
    e, sign = relabel(d, vperm, twists, legperm)
    cd, sd = canonicalize(d)
    ce, se = canonicalize(e)
    assert cd == ce
    assert sd * sign == se


def test_antisymmetry_zeros():
    assert canonicalize(Y(a1, a1, b2)) == (None, 0)
    assert canonicalize(Phi(a1, a1))[0] is not None
    # swapping two legs of a vertex reverses its cyclic order
    c1, s1 = canonicalize(Y(a1, b1, a2))
    c2, s2 = canonicalize(Y(b1, a1, a2))
    assert c1 == c2 and s1 == -s2
    c3, s3 = canonicalize(Y(b1, a2, a1))
    assert c3 == c1 and s3 == s1


def test_phi_is_symmetric_and_theta_survives():
    c1, s1 = canonicalize(Phi(a1, b2))
    c2, s2 = canonicalize(Phi(b2, a1))
    assert c1 == c2 and s1 == s2
    assert canonicalize(Theta())[0] is not None


def _oracle_topologies(n_vertices, n_legs):
    """Isomorphism classes of trivalent multigraphs with hair, via networkx."""
    ports = range(3 * n_vertices)
    buckets: dict = {}
    same_kind = lambda x, y: x["kind"] == y["kind"]

    def matchings(items):
        if not items:
            yield []
            return
        for k in range(1, len(items)):
            for m in matchings(items[1:k] + items[k + 1:]):
                yield [(items[0], items[k])] + m

    for legs in itertools.combinations(ports, n_legs):
        rest = [p for p in ports if p not in legs]
        for m in matchings(rest):
            if any(a // 3 == b // 3 for a, b in m):
                continue
            g = nx.MultiGraph()
            g.add_nodes_from(range(n_vertices), kind="v")
            for j, p in enumerate(legs):
                g.add_node(("leg", j), kind="leg")
                g.add_edge(p // 3, ("leg", j))
            for a, b in m:
                g.add_edge(a // 3, b // 3)
            if not nx.is_connected(g):
                continue
            # hash only narrows the search, isomorphism decides
            key = nx.weisfeiler_lehman_graph_hash(nx.Graph(g), node_attr="kind")
            bucket = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(g, h, node_match=same_kind) for h in bucket):
                bucket.append(g)
    return sum(len(b) for b in buckets.values())


@pytest.mark.parametrize("n_vertices,n_legs", [(1, 3), (2, 4), (2, 2), (2, 0), (3, 5), (3, 3), (3, 1),
                                               (4, 6), (4, 4), (4, 2), (4, 0)])
def test_topology_counts_match_networkx(n_vertices, n_legs):
    assert len(topologies(n_vertices, n_legs)) == _oracle_topologies(n_vertices, n_legs)


def test_loop_degree_and_legs():
    assert loop_degree(Y(a1, b1, a2)) == 0
    assert loop_degree(Phi(a1, b1)) == 1
    assert loop_degree(Theta()) == 2
    for d in enumerate_diagrams(2, 3):
        assert len(d.legs) == legs_for(3, loop_degree(d))
    u = disjoint_union(Phi(a1, b1), Theta())
    assert loop_degree(u) == 3 and n_components(u) == 2 and not is_connected(u)
    parts = connected_components(u)
    assert sorted(loop_degree(p) for p in parts) == [1, 2]


@pytest.mark.parametrize("g", [1, 2, 3])
def test_degree_one_count(g):
    # AS makes Y's with distinct labels the only survivors
    assert len(enumerate_diagrams(g, 1)) == math.comb(2 * g, 3)


def test_disconnected_enumeration_is_multisets():
    conn = enumerate_diagrams(2, 1)
    both = enumerate_diagrams(2, 2, connected=False)
    trees = [d for d in both if n_components(d) == 2]
    assert len(trees) == len(conn) * (len(conn) + 1) // 2


def test_ordered_enumeration_distinguishes_orders():
    ordered = enumerate_ordered(2, 1)
    # every labeling and order of three distinct-or-not legs up to AS
    for d in ordered:
        assert d.ordered and len(d.legs) == 3
    assert len(ordered) > len(enumerate_diagrams(2, 1))
    d = with_order(Y(a1, a1, b1), (1, 0, 2))
    assert canonicalize(d)[0] is not None


def test_malformed():
    with pytest.raises(MalformedDiagram):
        check_diagram(Diagram((-1, -2), (a1, a2)))
    with pytest.raises(MalformedDiagram):
        check_diagram(Diagram((1, 0, -1), (a1, a2)))
    with pytest.raises(MalformedDiagram):
        PortGraph([], {"x": a1, "y": b1}, [("x", "y")]).to_diagram()
    with pytest.raises(MalformedDiagram):
        PortGraph([("u", "v", "w")], {"l": a1}, [("u", "l")])


def test_port_graph_round_trip():
    for d in SAMPLES:
        assert canonicalize(PortGraph.from_diagram(d).to_diagram()) == canonicalize(d)
    assert format_diagram(EMPTY) == "G{}"


def test_insert_vertex_merges_three_legs():
    d = disjoint_union(disjoint_union(Y(a1, b1, a2), Y(b2, a3, b3)), Y(a1, a2, a3))
    e = insert_vertex_on_legs(d, 0, 3, 6)
    assert e.degree == 4 and len(e.legs) == 6 and is_connected(e)
    assert loop_degree(e) == 0
    # two legs of one vertex close a loop
    f = insert_vertex_on_legs(d, 0, 1, 3)
    assert loop_degree(f) == 1
