from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from garsidekit.coxeter_core import (
    CoxeterGraph,
    all_elements,
    build_root_system,
    element_from_word,
    left_descents,
    left_divides,
    length,
    longest_element,
    meet_left,
    named_graph,
    parse_graph_text,
    reduced_word,
    right_complement,
    right_descents,
)
from garsidekit.errors import IndexOutOfRange, NonSpherical

from oracles import root_closure


@pytest.mark.parametrize(
    "name, count",
    [("A1", 1), ("A2", 3), ("A3", 6), ("A5", 15), ("D4", 12), ("D5", 20), ("E6", 36), ("E7", 63), ("E8", 120)],
)
def test_positive_root_counts(name, count):
    R = build_root_system(named_graph(name))
    assert len(R.positive_roots) == count
    assert set(R.positive_roots) == root_closure(R.cartan)


def test_roots_ordered_by_height_simple_first():
    R = build_root_system(named_graph("E6"))
    heights = [sum(r) for r in R.positive_roots]
    assert heights == sorted(heights)
    assert R.simple_roots == tuple(tuple(int(i == j) for j in range(6)) for i in range(6))
    assert max(heights) == 11


def test_reflection_formula_a2():
    R = build_root_system(named_graph("A2"))
    s1, s2 = R.reflections
    assert s1.apply((1, 0)) == (-1, 0)
    assert s1.apply((0, 1)) == (1, 1)
    assert s2.apply((1, 0)) == (1, 1)


def test_length_and_descents_a3():
    R = build_root_system(named_graph("A3"))
    u = element_from_word(R, [1, 3])
    assert length(u) == 2
    assert left_descents(u) == {1, 3}
    assert right_descents(u) == {1, 3}
    v = element_from_word(R, [1, 2])
    assert left_descents(v) == {1}
    assert right_descents(v) == {2}


def test_index_out_of_range():
    R = build_root_system(named_graph("A2"))
    with pytest.raises(IndexOutOfRange):
        element_from_word(R, [3])


@pytest.mark.parametrize("name, n", [("A1", 1), ("A2", 3), ("A3", 6), ("D4", 12), ("E6", 36)])
def test_longest_element(name, n):
    R = build_root_system(named_graph(name))
    w0 = longest_element(R)
    assert length(w0) == n
    assert w0 * w0 == R.identity
    assert left_descents(w0) == right_descents(w0) == frozenset(range(1, R.rank + 1))
    # w0 s_i w0 is again a simple reflection
    for s in R.reflections:
        assert w0 * s * w0 in R.reflections


def test_longest_element_a2_word():
    R = build_root_system(named_graph("A2"))
    assert reduced_word(longest_element(R)) == (1, 2, 1)


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_meet_left_against_divisor_enumeration(name):
    R = build_root_system(named_graph(name))
    W = all_elements(R)
    divisors = {u.matrix: [x for x in W if left_divides(x, u)] for u in W}
    for u, v in product(W, W):
        common = [x for x in divisors[u.matrix] if left_divides(x, v)]
        best = max(common, key=length)
        assert all(left_divides(x, best) for x in common)
        assert meet_left(u, v) == best


def test_group_orders():
    assert len(all_elements(build_root_system(named_graph("A3")))) == 24
    assert len(all_elements(build_root_system(named_graph("D4")))) == 192


def test_right_complement():
    R = build_root_system(named_graph("A2"))
    s1 = R.reflections[0]
    assert reduced_word(right_complement(R, s1)) == (2, 1)
    R3 = build_root_system(named_graph("A3"))
    w0 = longest_element(R3)
    for u in all_elements(R3):
        c = right_complement(R3, u)
        assert u * c == w0
        assert length(u) + length(c) == 6


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=14), st.data())
def test_braid_moves_preserve_element(word, data):
    G = named_graph("E6")
    R = build_root_system(G)
    u = element_from_word(R, word)
    w = list(word)
    for _ in range(data.draw(st.integers(0, 4))):
        if len(w) < 2:
            break
        k = data.draw(st.integers(0, len(w) - 2))
        i, j = w[k], w[k + 1]
        if i != j and not G.adjacent(i, j):
            w[k], w[k + 1] = j, i
        elif i != j and k + 2 < len(w) and w[k + 2] == i:
            w[k:k + 3] = [j, i, j]
    assert element_from_word(R, w) == u
    rw = reduced_word(u)
    assert len(rw) == length(u)
    assert element_from_word(R, rw) == u


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), max_size=10))
def test_inverse(word):
    R = build_root_system(named_graph("D4"))
    u = element_from_word(R, word)
    assert u * u.inverse() == R.identity
    assert u.inverse() == element_from_word(R, reversed(word))


@pytest.mark.parametrize(
    "edges, n",
    [
        ([(1, 2), (2, 3), (3, 1)], 3),  # cycle
        ([(1, 2), (1, 3), (1, 4), (1, 5)], 5),  # degree 4
        ([(1, 2), (2, 3), (3, 4), (2, 5), (3, 6)], 6),  # two branch vertices
        ([(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)], 7),  # affine E6
    ],
)
def test_non_spherical_witness(edges, n):
    with pytest.raises(NonSpherical) as exc:
        CoxeterGraph.from_edges(n, edges)
    witness = set(exc.value.subgraph)
    assert witness <= set(range(1, n + 1))
    # the witness alone already fails the classification
    order = {v: k + 1 for k, v in enumerate(sorted(witness))}
    sub_edges = [(order[i], order[j]) for i, j in edges if i in witness and j in witness]
    with pytest.raises(NonSpherical):
        CoxeterGraph.from_edges(len(witness), sub_edges)


@pytest.mark.parametrize("name", ["A4", "D5", "E6", "E7", "E8"])
def test_named_graph_types(name):
    assert named_graph(name).type_name == name


def test_parse_graph_text():
    g = parse_graph_text("# a comment\nvertices: 4\n1 2\n2 3\n2 4\n")
    assert g.type_name == "D4"
    with pytest.raises(ValueError):
        parse_graph_text("vertices: 2\n1 3\n")
