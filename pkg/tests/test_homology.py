import pytest
from hypothesis import given, settings, strategies as st

from garsidekit import GeneratorWord, artin_group, expand, named_graph
from garsidekit.element_catalog import catalog_environment, e6_graph
from garsidekit.errors import IndexOutOfRange, NoRealization, ZeroVector
from garsidekit.homology_rep import (
    CurveClass,
    HomologyRep,
    SymplecticSpace,
    evaluate,
    find_curve_classes,
    kernel_witness,
    matmul,
    realize,
    transvection,
)

S3 = SymplecticSpace(3)
REP = realize(e6_graph(), 3)

vectors = st.lists(st.integers(-3, 3), min_size=6, max_size=6).filter(any).map(CurveClass)


def test_pairing_and_j():
    e = [tuple(int(i == j) for j in range(6)) for i in range(6)]
    assert S3.pairing(e[0], e[1]) == 1 and S3.pairing(e[1], e[0]) == -1
    assert S3.pairing(e[0], e[2]) == 0
    assert S3.is_symplectic(S3.J)


def test_transvection_formula():
    S1 = SymplecticSpace(1)
    T = transvection(S1, CurveClass((1, 0)))
    # x -> x + <x, v> v with v = a: b -> b - a
    assert T == ((1, -1), (0, 1))
    with pytest.raises(ZeroVector):
        transvection(S1, CurveClass((0, 0)))


@settings(max_examples=60, deadline=None)
@given(vectors)
def test_transvection_symplectic_and_invertible(v):
    T = transvection(S3, v)
    assert S3.is_symplectic(T)
    assert matmul(T, transvection(S3, v, -1)) == S3.identity()
    assert matmul(T, T) == transvection(S3, v, 2)


@settings(max_examples=60, deadline=None)
@given(vectors, vectors)
def test_braid_and_commutation_relations(u, v):
    p = abs(S3.pairing(u.vector, v.vector))
    Tu, Tv = transvection(S3, u), transvection(S3, v)
    if p == 0:
        assert matmul(Tu, Tv) == matmul(Tv, Tu)
    if p == 1:
        assert matmul(matmul(Tu, Tv), Tu) == matmul(matmul(Tv, Tu), Tv)


def test_curve_classes_e6():
    assert [c.vector for c in REP.classes] == [
        (1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0),
        (0, 1, 1, 0, 0, 0), (1, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1),
    ]
    g = e6_graph()
    for i in range(1, 7):
        for j in range(i + 1, 7):
            p = abs(S3.pairing(REP.classes[i - 1].vector, REP.classes[j - 1].vector))
            assert p == int(g.adjacent(i, j))
    assert all(c.is_primitive() for c in REP.classes)


@pytest.mark.parametrize("name, genus", [("A1", 1), ("A2", 1), ("A3", 2), ("A5", 3), ("D4", 3), ("A4", 2)])
def test_curve_classes_small(name, genus):
    g = named_graph(name)
    classes = find_curve_classes(SymplecticSpace(genus), g)
    assert len(set(c.vector for c in classes)) == g.rank


def test_no_realization():
    with pytest.raises(NoRealization):
        find_curve_classes(SymplecticSpace(1), named_graph("A3"))
    # four independent classes in genus 2 need a nonsingular Gram matrix, which D4 cannot give
    with pytest.raises(NoRealization):
        find_curve_classes(SymplecticSpace(2), named_graph("D4"))


def test_relations_hold_in_representation():
    G = artin_group(e6_graph())
    for i in range(1, 7):
        for j in range(i + 1, 7):
            if G.graph.adjacent(i, j):
                lhs, rhs = GeneratorWord.positive([i, j, i]), GeneratorWord.positive([j, i, j])
            else:
                lhs, rhs = GeneratorWord.positive([i, j]), GeneratorWord.positive([j, i])
            assert evaluate(REP, lhs) == evaluate(REP, rhs)


signed = st.lists(st.tuples(st.integers(1, 6), st.sampled_from((1, -1))), max_size=12).map(
    lambda ls: GeneratorWord(tuple(ls)))


@settings(max_examples=60, deadline=None)
@given(signed, signed)
def test_evaluate_is_a_homomorphism(u, v):
    assert evaluate(REP, u + v) == matmul(evaluate(REP, u), evaluate(REP, v))
    assert matmul(evaluate(REP, u), evaluate(REP, u.inverse())) == S3.identity()


@settings(max_examples=30, deadline=None)
@given(signed)
def test_evaluate_respects_normal_form(u):
    G = artin_group(e6_graph())
    assert evaluate(REP, G.normalize(u).to_word()) == evaluate(REP, u)


def test_wajnryb_image_and_center():
    for conv in ("right", "left"):
        env = catalog_environment(conv)
        assert evaluate(REP, expand("w", env)) == S3.identity()
        assert kernel_witness(REP, expand("kappa^-3 * w * kappa^3", env))["homologically_trivial"]
    G = artin_group(e6_graph())
    d2 = evaluate(REP, G.delta(2).to_word())
    for M in REP.matrices():
        assert matmul(d2, M) == matmul(M, d2)


def test_kernel_witness_nontrivial():
    wit = kernel_witness(REP, GeneratorWord.positive([1]))
    assert not wit["homologically_trivial"]
    assert "necessary" in wit["note"]


def test_evaluate_index_error():
    with pytest.raises(IndexOutOfRange):
        evaluate(REP, GeneratorWord.positive([7]))


def test_custom_rep():
    rep = HomologyRep(SymplecticSpace(1), (CurveClass((1, 0)), CurveClass((0, 1))))
    # a1 a2 a1 = a2 a1 a2 for classes meeting once
    assert evaluate(rep, GeneratorWord.positive([1, 2, 1])) == evaluate(rep, GeneratorWord.positive([2, 1, 2]))


@settings(max_examples=40, deadline=None)
@given(vectors)
def test_transvection_fixes_its_class(v):
    T = transvection(S3, v)
    assert tuple(sum(a * b for a, b in zip(row, v.vector)) for row in T) == v.vector


def test_a2_genus_one_classes():
    assert [c.vector for c in find_curve_classes(SymplecticSpace(1), named_graph("A2"))] == [(1, 0), (0, 1)]


def test_evaluate_accepts_plain_class_list():
    classes = list(REP.classes)
    assert evaluate(classes, GeneratorWord(())) == S3.identity()
    w = GeneratorWord(((1, 1), (4, -1), (6, 1)))
    assert evaluate(classes, w) == evaluate(REP, w)
    assert evaluate([(1, 0), (0, 1)], GeneratorWord.positive([1])) == ((1, -1), (0, 1))
    assert kernel_witness([c.vector for c in classes], GeneratorWord(()))["homologically_trivial"]
