import pytest
from hypothesis import given, strategies as st

from homvar.dynkin import DiagramError, all_specs, build_root_system, identify
from homvar.parabolic import (ParabolicSpec, closed_orbit_Y1, delta_X, dimension, grading,
                              is_cominuscule, is_exposed_short, is_minuscule_weight, levi_factors)

SPECS = all_specs(8)


@st.composite
def spaces(draw, max_rank=8, maximal=False):
    spec = draw(st.sampled_from(all_specs(max_rank)))
    nodes = list(range(1, spec.rank + 1))
    if maximal:
        S = {draw(st.sampled_from(nodes))}
    else:
        S = set(draw(st.lists(st.sampled_from(nodes), min_size=1, max_size=spec.rank, unique=True)))
    return ParabolicSpec(spec, frozenset(S))


def test_parse():
    ps = ParabolicSpec.parse("D6/P{3,5}")
    assert str(ps) == "D6/P{3,5}" and ps.S == {3, 5}
    assert ParabolicSpec.parse("A3/P1,3").S == {1, 3}
    for bad in ["X9/P1", "E6/P7", "E6", "E6/P{}", "F4/Q1"]:
        with pytest.raises(DiagramError):
            ParabolicSpec.parse(bad)


@pytest.mark.parametrize("text,dim", [("G2/P1", 5), ("F4/P4", 15), ("E6/P1", 16), ("F4/P3", 20),
                                      ("G2/P2", 5), ("E7/P7", 27), ("A4/P2", 6)])
def test_dimensions(text, dim):
    assert dimension(ParabolicSpec.parse(text)) == dim


def test_full_flag():
    for n in range(1, 7):
        R = build_root_system(f"A{n}")
        assert len(delta_X(R, range(1, n + 1))) == n * (n + 1) // 2


def test_gradings():
    g = grading(ParabolicSpec.parse("G2/P1"))
    assert [p.degree for p in g.pieces] == [(1,), (2,), (3,)]
    assert g.dims == (2, 1, 2)
    assert not any(g.piece(2).h_highest_weight.values())
    g = grading(ParabolicSpec.parse("F4/P4"))
    assert g.dims == (8, 7)
    assert g.piece(1).h_highest_weight == {1: 0, 2: 0, 3: 1}
    g = grading(ParabolicSpec.parse("A5/P3"))
    assert g.dims == (9,)
    assert g.piece(1).h_highest_weight == {1: 0, 2: 1, 4: 1, 5: 0}


@given(spaces())
def test_grading_partitions_tangent_roots(ps):
    g = grading(ps)
    roots = [b for p in g.pieces for b in p.roots]
    assert len(roots) == len(set(roots)) == dimension(ps)
    for p in g.pieces:
        assert sum(1 for b in p.roots if not any(c != b and all(x <= y for x, y in zip(c, b))
                                                 for c in p.roots)) == 1


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_cominuscule_iff_one_piece(spec):
    R = build_root_system(spec)
    for i in R.nodes:
        ps = ParabolicSpec(spec, frozenset({i}))
        assert is_cominuscule(R, i) == (len(grading(ps).pieces) == 1)


@pytest.mark.parametrize("spec", [s for s in SPECS if s.series in "ADE"], ids=str)
def test_simply_laced_T1_is_minuscule(spec):
    R = build_root_system(spec)
    for i in R.nodes:
        ps = ParabolicSpec(spec, frozenset({i}))
        for fspec, _, local in levi_factors(ps, grading(ps).piece(1).h_highest_weight):
            marked = [n for n, m in local.items() if m]
            if not marked:
                continue
            assert len(marked) == 1 and local[marked[0]] == 1
            assert is_minuscule_weight(build_root_system(fspec), marked[0])


def test_classification_examples():
    for n in range(3, 8):
        D, C, B, A = (build_root_system(f"{s}{n}") for s in "DCBA")
        assert is_cominuscule(D, 1) and is_cominuscule(C, n)
        assert is_minuscule_weight(B, n) and is_minuscule_weight(C, 1)
        assert is_exposed_short(C, {1}, 1) and is_exposed_short(C, {n - 1}, n - 1)
        assert not any(is_exposed_short(A, {k}, k) for k in A.nodes)
    F4 = build_root_system("F4")
    assert not any(is_cominuscule(F4, i) for i in F4.nodes)
    assert not is_minuscule_weight(F4, 4)
    assert is_exposed_short(F4, {4}, 4)


def _pattern(f):
    spec, iso = identify(f.diagram)
    return str(spec), iso[f.marked], f.degree


def test_y1_examples():
    m = closed_orbit_Y1(build_root_system("C5"), {5}, 5)
    assert [_pattern(f) for f in m.factors] == [("A4", 4, 2)]
    m = closed_orbit_Y1(build_root_system("G2"), {2}, 2)
    assert [_pattern(f) for f in m.factors] == [("A1", 1, 3)]
    m = closed_orbit_Y1(build_root_system("E6"), {1}, 1)
    (f,) = m.factors
    spec, node, deg = _pattern(f)
    assert spec == "D5" and node in (4, 5) and deg == 1 and m.minuscule


def test_y1_exceptions_are_the_four_local_patterns():
    seen = set()
    for spec in SPECS:
        R = build_root_system(spec)
        for i in R.nodes:
            for f in closed_orbit_Y1(R, {i}, i).factors:
                if f.minuscule:
                    continue
                s, node, deg = _pattern(f)
                if deg == 3:
                    kind = "twisted cubic"
                elif deg == 2:
                    kind = "second Veronese"
                elif s.startswith("C") and node == 1:
                    kind = "symplectic Segre"
                elif (s, node) == ("B3", 3):
                    kind = "B3 spin quadric"
                else:
                    kind = None
                assert kind, (spec, i, f.describe())
                seen.add((str(spec), i))
    expected = {(f"B{n}", n - 1) for n in range(2, 9)} | {(f"C{n}", n) for n in range(2, 9)} | \
        {(f"C{n}", k) for n in range(3, 9) for k in range(1, n - 1)} | \
        {("F4", 2), ("F4", 4), ("G2", 2)}
    assert seen == expected
