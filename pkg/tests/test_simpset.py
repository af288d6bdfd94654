from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qcat.ordmaps import DeltaMap, all_maps
from qcat.simpset import (
    SimplicialMap,
    SimplicialSet,
    boundary_of_simplex,
    contractibility,
    find_isomorphism,
    fold_map,
    insert_degeneracy,
    left_fibration_check,
    product,
    simplicial_circle,
    simplicial_set_from_triangulation,
    standard_simplex,
)

RP2_TRIANGLES = [
    (1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 5),
    (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6), (4, 5, 6),
]


@pytest.fixture(scope="module")
def rp2():
    return simplicial_set_from_triangulation(RP2_TRIANGLES)


@pytest.fixture(scope="module")
def torus():
    c = simplicial_circle()
    return product(c, c)


def test_word_insertion_normal_form():
    assert insert_degeneracy(1, (2, 0)) == (3, 1, 0)
    assert insert_degeneracy(4, (2, 0)) == (4, 2, 0)
    assert insert_degeneracy(0, ()) == (0,)


def test_standard_simplex_counts_and_homology():
    d4 = standard_simplex(4)
    assert len(d4.dims) == 31
    assert d4.homology() == [(1, [])] + [(0, [])] * 4
    assert d4.euler_characteristic() == 1


def test_value_counts_match_monotone_map_counts():
    # n-simplices of the standard m-simplex are the monotone maps [n]->[m]
    for m in range(4):
        dm = standard_simplex(m)
        for n in range(5):
            assert len(dm.values(n)) == comb(n + m + 1, n + 1)


def test_boundary_circle_invariants():
    bd = boundary_of_simplex(2)
    assert bd.homology() == [(1, []), (1, [])]
    pres = bd.fundamental_group()
    assert len(pres.generators) == 1
    assert pres.relators == ()


def test_sphere_homology():
    s2 = boundary_of_simplex(3)
    assert s2.homology() == [(1, []), (0, []), (1, [])]


def test_projective_plane_invariants(rp2):
    assert len(rp2.nondeg(0)) == 6
    assert len(rp2.nondeg(1)) == 15
    assert len(rp2.nondeg(2)) == 10
    assert rp2.euler_characteristic() == 1
    assert rp2.homology() == [(1, []), (0, [2]), (0, [])]
    assert rp2.pi1_presentation().abelianization() == (0, [2])


def test_torus_from_product_of_circles(torus):
    assert torus.truncation is None
    assert torus.euler_characteristic() == 0
    assert torus.homology() == [(1, []), (2, []), (1, [])]
    assert torus.fundamental_group().abelianization() == (2, [])


def test_opposite_is_involution_and_preserves_homology(rp2, torus):
    for space in (rp2, torus, standard_simplex(3)):
        assert space.opposite().opposite() == space
        assert space.opposite().homology() == space.homology()


def test_opposite_reverses_edges():
    d1 = standard_simplex(1)
    op = d1.opposite()
    a, b = op.edge_endpoints((0, 1))
    assert (a, b) == ((1,), (0,))


def test_contractibility_certificates(rp2):
    good = contractibility(standard_simplex(2), 2)
    assert good.certified()
    assert good.depth == 2

    circle = contractibility(boundary_of_simplex(2), 2)
    assert circle.status == "not_contractible"
    assert "H_1" in circle.reason

    torsion = contractibility(rp2, 2)
    assert torsion.status == "not_contractible"

    two_points = standard_simplex(0).disjoint_union(standard_simplex(0))
    assert contractibility(two_points, 0).status == "not_contractible"

    shallow = SimplicialSet({"v": 0}, {}, truncation=1)
    assert contractibility(shallow, 2).status == "inconclusive"


def test_truncation_limits_homology():
    shallow = SimplicialSet({"v": 0, "e": 1},
                            {"e": (((), "v"), ((), "v"))}, truncation=1)
    assert shallow.homology_report_limit() == 0
    with pytest.raises(ValueError):
        shallow.homology(1)
    with pytest.raises(ValueError):
        shallow.euler_characteristic()


def test_validation_catches_broken_face_records():
    with pytest.raises(ValueError):
        SimplicialSet({"e": 1}, {"e": (((), "missing"), ((), "missing"))})
    with pytest.raises(ValueError):
        # wrong arity
        SimplicialSet({"v": 0, "e": 1}, {"e": (((), "v"),)})
    # simplicial identity violation: a triangle whose edges do not share
    # vertices coherently
    dims = {"a": 0, "b": 0, "c": 0, "ab": 1, "bc": 1, "ac": 1, "t": 2}
    faces = {
        "ab": (((), "b"), ((), "a")),
        "bc": (((), "c"), ((), "b")),
        "ac": (((), "c"), ((), "a")),
        "t": (((), "bc"), ((), "ac"), ((), "bc")),
    }
    with pytest.raises(ValueError):
        SimplicialSet(dims, faces)


def test_fold_map_lifts_uniquely_but_collapse_does_not():
    d1 = standard_simplex(1)
    ok, reason = left_fibration_check(fold_map(d1), 3)
    assert ok, reason

    d0 = standard_simplex(0)
    incl = SimplicialMap(d0, d1, {(0,): ((), (0,))})
    ok, reason = left_fibration_check(incl, 2)
    assert not ok

    collapse = SimplicialMap(d1, d0, {(0,): ((), (0,)),
                                      (1,): ((), (0,)),
                                      (0, 1): ((0,), (0,))})
    ok, reason = left_fibration_check(collapse, 2)
    assert not ok
    assert "2 lifts" in reason


def test_identity_map_is_a_left_fibration(rp2):
    ok, _ = left_fibration_check(SimplicialMap.identity(rp2), 2)
    assert ok


def test_simplicial_map_validation():
    d1 = standard_simplex(1)
    d0 = standard_simplex(0)
    with pytest.raises(ValueError):
        # edge sent to a vertex value of the wrong dimension
        SimplicialMap(d1, d0, {(0,): ((), (0,)), (1,): ((), (0,)),
                               (0, 1): ((), (0,))})


def test_find_isomorphism_up_to_relabeling():
    d2 = standard_simplex(2)
    names = {s: f"x{i}" for i, (s, n) in enumerate(sorted(d2.dims.items()))}
    dims = {names[s]: n for s, n in d2.dims.items()}
    faces = {names[s]: tuple((w, names[y]) for w, y in fs)
             for s, fs in d2.faces.items()}
    relabeled = SimplicialSet(dims, faces)
    iso = find_isomorphism(d2, relabeled)
    assert iso is not None
    assert iso[(0, 1, 2)] == names[(0, 1, 2)]

    assert find_isomorphism(d2, boundary_of_simplex(2)) is None


composable_pair = st.integers(0, 3).flatmap(
    lambda a: st.integers(0, 3).flatmap(
        lambda b: st.integers(0, 3).flatmap(
            lambda c: st.tuples(
                st.sampled_from(sorted(all_maps(a, b), key=repr)),
                st.sampled_from(sorted(all_maps(b, c), key=repr))))))


@settings(max_examples=60, deadline=None)
@given(composable_pair)
def test_act_is_contravariantly_functorial(pair):
    f, g = pair
    space = product(standard_simplex(1), standard_simplex(1))
    for v in space.values(g.target_arity):
        assert space.act(g.compose(f), v) == space.act(f, space.act(g, v))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4))
def test_act_identity_is_identity(n):
    space = boundary_of_simplex(2)
    ident = DeltaMap.identity(n)
    for v in space.values(n):
        assert space.act(ident, v) == v
