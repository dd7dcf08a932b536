import random

import pytest
from hypothesis import given, strategies as st

from homvar.dynkin import (DiagramError, DiagramSpec, GuardExceeded, Weight, adjoint_dim, all_specs,
                           build_diagram, build_root_system, dual_diagram, expected_positive_count,
                           identify, isomorphisms, pairing, reflect, weyl_orbit)

SPECS = all_specs(8)
spec_st = st.sampled_from(SPECS)


def closed_form(spec):
    n = spec.rank
    if spec.series == "A":
        return n * (n + 1) // 2
    if spec.series in "BC":
        return n * n
    if spec.series == "D":
        return n * (n - 1)
    return expected_positive_count(spec)


@pytest.mark.parametrize("spec", all_specs(12), ids=str)
def test_positive_root_count(spec):
    assert len(build_root_system(spec).positive_roots) == closed_form(spec)


@pytest.mark.parametrize("name,dim", [("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248)])
def test_exceptional_adjoint_dims(name, dim):
    assert adjoint_dim(build_root_system(name)) == dim


def test_small_diagrams():
    d = build_diagram("A3")
    assert {(e.i, e.j, e.bond) for e in d.edges} == {(1, 2, 1), (2, 3, 1)}
    g = build_diagram("G2")
    (e,) = g.edges
    assert e.bond == 3 and e.arrow == 1
    d5 = build_diagram("D5")
    assert set(d5.neighbors(3)) == {2, 4, 5}


def test_root_tables():
    assert build_root_system("A2").positive_roots == ((1, 0), (0, 1), (1, 1))
    assert build_root_system("F4").highest_root == (2, 3, 4, 2)
    assert build_root_system("G2").highest_root == (3, 2)
    assert len(build_root_system("E8").positive_roots) == 120


def test_pairings_and_reflections():
    G2 = build_root_system("G2")
    assert pairing(G2, (0, 1), 1) == -3
    A2 = build_root_system("A2")
    assert reflect(A2, (0, 1), (1, 0)) == (1, 1)
    C2 = build_root_system("C2")
    assert reflect(C2, (1, 0), (2, 1)) == (-1, -1)
    A4 = build_root_system("A4")
    for k in range(1, 5):
        w = Weight(int(i == k - 1) for i in range(4))
        assert [pairing(A4, w, j) for j in range(1, 5)] == list(w)
        assert pairing(A4, A4.simple(k), k) == 2


def test_orbits():
    A2 = build_root_system("A2")
    assert len(weyl_orbit(A2, (1, 0), [1, 2])) == 3
    assert weyl_orbit(A2, (1, 1), []) == {(1, 1)}
    assert len(weyl_orbit(build_root_system("B3"), (0, 0, 1), [1, 2, 3])) == 8
    with pytest.raises(GuardExceeded):
        weyl_orbit(build_root_system("E8"), (1,) * 8, range(1, 9), guard=1000)


@pytest.mark.parametrize("text", ["X9", "E9", "A0", "F5", "G3", "B1", "D2", "E", ""])
def test_bad_specs(text):
    with pytest.raises(DiagramError):
        DiagramSpec.parse(text)


@given(spec_st)
def test_reflection_closure(spec):
    R = build_root_system(spec)
    for b in R.positive_roots:
        for i in R.nodes:
            assert R.is_root(reflect(R, b, R.simple(i)))


@given(spec_st)
def test_highest_root_is_unique_maximal(spec):
    R = build_root_system(spec)
    maximal = [b for b in R.positive_roots
               if not any(R.is_root(tuple(x + (k == j) for k, x in enumerate(b)))
                          for j in range(R.rank))]
    assert maximal == [R.highest_root]


@given(spec_st)
def test_length_classes(spec):
    R = build_root_system(spec)
    lengths = {R.length(b) for b in R.positive_roots}
    assert len(lengths) == (1 if spec.series in "ADE" else 2)
    assert max(lengths) == 2


@given(spec_st, st.randoms(use_true_random=False))
def test_reflection_formula(spec, rnd):
    R = build_root_system(spec)
    roots = R.positive_roots
    for _ in range(1000 if spec.rank <= 4 else 200):
        b, a = rnd.choice(roots), rnd.choice(roots)
        n = R.inner(b, a) * 2 / R.length(a)
        assert n.denominator == 1
        expected = tuple(x - int(n) * y for x, y in zip(b, a))
        assert reflect(R, b, a) == expected


@given(spec_st)
def test_dual_and_identify(spec):
    d = build_diagram(spec)
    got, iso = identify(d)
    assert got == spec
    dual = identify(dual_diagram(d))[0]
    swap = {"B": "C", "C": "B"}
    if spec.series in "BC" and spec.rank >= 3:
        assert dual.series == swap[spec.series]
    else:
        assert dual.rank == spec.rank
    assert isomorphisms(d, d)
