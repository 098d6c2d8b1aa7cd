from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polareig import eigenfunctions as ef
from polareig import graphs, linalg, serialize
from polareig.eigenfunctions import (
    Eigenfunction, NotAnEigenfunction, NotDelsarte, NotInSigmaL,
    NotMaxIntersection, NotNonPrincipal, TInAffM, TNotInPerp, ZeroFunction,
    theta1_elliptic, theta1_from_clique_pair, theta1_hyperbolic, theta1_polar,
    theta2_unitary, verify_eigenfunction, wdb,
)
from polareig.gf import norm_one_subgroup, primitive_element


def test_wdb_examples(sp42, u44, vo_minus_2):
    assert wdb(1, graphs.srg_check(sp42)) == 4
    assert wdb(-3, graphs.srg_check(u44)) == 6
    assert wdb(1, graphs.srg_check(vo_minus_2)) == 4


def test_wdb_rejects_other_eigenvalues(sp42):
    params = graphs.srg_check(sp42)
    with pytest.raises(NotNonPrincipal):
        wdb(2, params)
    with pytest.raises(NotNonPrincipal):
        wdb(params.k, params)


def test_all_ones_is_a_principal_eigenfunction(sp42):
    f = Eigenfunction({i: Fraction(1) for i in range(sp42.n)}, 6, {})
    report = verify_eigenfunction(sp42, f)
    assert report.bound is None and not report.tight
    assert report.support_size == 15


def test_zero_function_rejected(sp42):
    with pytest.raises(ZeroFunction):
        verify_eigenfunction(sp42, Eigenfunction({}, 1, {}))
    with pytest.raises(ZeroFunction):
        verify_eigenfunction(sp42, Eigenfunction({0: Fraction(0)}, 1, {}))


def test_wrong_eigenvalue_is_reported_with_a_vertex(sp42):
    f = theta1_polar(sp42)
    broken = Eigenfunction(dict(f.values), 2, f.graph_ref)
    with pytest.raises(NotAnEigenfunction) as err:
        verify_eigenfunction(sp42, broken)
    assert 0 <= err.value.vertex < sp42.n


@pytest.mark.parametrize("fixture,support,theta", [
    ("sp42", 4, 1), ("sp43", 6, 2), ("rook_o43", 6, 2),
    ("gq_o62", 4, 1), ("u44", 8, 3), ("u49", 18, 8),
])
def test_theta1_polar_is_tight(fixture, support, theta, request):
    g = request.getfixturevalue(fixture)
    f = theta1_polar(g)
    assert f.theta == theta
    report = verify_eigenfunction(g, f)
    assert report.tight and report.support_size == support


def test_theta1_polar_witness_validation(sp42):
    space = sp42.space
    L = space.subspaces(0)[0]
    sigma = space.maximals_containing(L)
    outside = next(m for m in space.maximals() if m.key not in {s.key for s in sigma})
    with pytest.raises(NotInSigmaL):
        theta1_polar(sp42, L, sigma[0], outside)
    with pytest.raises(NotInSigmaL):
        theta1_polar(sp42, L, sigma[0], sigma[0])


@pytest.mark.parametrize("fixture,support,theta", [
    ("vo_plus_2", 4, 1), ("vo_plus_3", 12, 5),
])
def test_theta1_hyperbolic_is_tight(fixture, support, theta, request):
    g = request.getfixturevalue(fixture)
    f = theta1_hyperbolic(g)
    assert f.theta == theta
    report = verify_eigenfunction(g, f)
    assert report.tight and report.support_size == support


def test_theta1_hyperbolic_shifted(vo_plus_2):
    f = theta1_hyperbolic(vo_plus_2, v=(1, 1, 1, 1))
    report = verify_eigenfunction(vo_plus_2, f)
    assert report.tight
    assert f.support != theta1_hyperbolic(vo_plus_2).support


@pytest.mark.parametrize("fixture,support,theta", [
    ("vo_minus_2", 4, 1), ("vo_minus_3", 6, 2),
])
def test_theta1_elliptic_is_tight(fixture, support, theta, request):
    g = request.getfixturevalue(fixture)
    f = theta1_elliptic(g)
    assert f.theta == theta
    report = verify_eigenfunction(g, f)
    assert report.tight and report.support_size == support


def test_theta1_elliptic_translation_validation(vo_minus_2):
    space = vo_minus_2.space
    M = space.maximals()[0]
    inside = linalg.vec_key(M.basis[0])
    with pytest.raises(TInAffM):
        theta1_elliptic(vo_minus_2, M=M, t=inside)
    ctx = vo_minus_2.ctx
    perp_basis = __import__("polareig.forms", fromlist=["perp"]).perp(
        space.form, M.basis)
    non_perp = next(
        linalg.vec_key(v) for v in vo_minus_2.vertices
        if any(c.index for c in v)
        and not linalg.in_span(perp_basis, v))
    with pytest.raises(TNotInPerp):
        theta1_elliptic(vo_minus_2, M=M, t=non_perp)


def test_clique_pair_equals_polar_construction(sp42):
    c0, c1 = graphs.max_intersecting_delsarte_pair(sp42)
    f = theta1_from_clique_pair(sp42, c0, c1)
    assert verify_eigenfunction(sp42, f).tight
    # the same pair arises from the subspace construction over L = C0 ∩ C1
    space = sp42.space
    line_by_points = {line.point_indices(): line for line in space.subspaces(1)}
    m0 = line_by_points[c0.vertices]
    m1 = line_by_points[c1.vertices]
    common = c0.bits() & c1.bits()
    L = next(pt for pt in space.subspaces(0) if pt.point_bits == common)
    g0 = theta1_polar(sp42, L, m0, m1)
    assert g0.values == f.values


@pytest.mark.parametrize("fixture", ["vo_plus_2", "vo_minus_2", "sp43", "u44"])
def test_clique_pair_construction_families(fixture, request):
    g = request.getfixturevalue(fixture)
    if g.provenance["family"] == "vo-":
        base = theta1_elliptic(g)
        t0 = [v for v, c in base.values.items() if c > 0]
        t1 = [v for v, c in base.values.items() if c < 0]
        f = theta1_from_clique_pair(g, t0, t1)
    else:
        f = theta1_from_clique_pair(g, *graphs.max_intersecting_delsarte_pair(g))
    report = verify_eigenfunction(g, f)
    assert report.tight


def test_clique_pair_validation(sp42):
    cliques = graphs.delsarte_cliques(sp42)
    disjoint = next(
        (a, b) for a in cliques for b in cliques
        if a.vertices < b.vertices and not a.bits() & b.bits())
    with pytest.raises(NotMaxIntersection):
        theta1_from_clique_pair(sp42, *disjoint)
    with pytest.raises(NotDelsarte):
        theta1_from_clique_pair(sp42, (0, 1, 2, 3), cliques[0])
    with pytest.raises(NotDelsarte):
        theta1_from_clique_pair(sp42, cliques[0], cliques[0])


@pytest.mark.parametrize("pk,q,support", [((2, 2), 4, 6), ((3, 2), 9, 8)])
def test_theta2_unitary_is_tight(pk, q, support, request):
    g = request.getfixturevalue("u44" if q == 4 else "u49")
    f = theta2_unitary(g)
    assert f.theta == -(int(q ** 0.5) + 1)
    report = verify_eigenfunction(g, f)
    assert report.tight and report.support_size == support


def test_theta2_unitary_parts_induce_complete_bipartite(u44, u49):
    for g in (u44, u49):
        f = theta2_unitary(g)
        t0, t1 = ef.unitary_pair_parts(f)
        for part in (t0, t1):
            assert all(not g.are_adjacent(x, y)
                       for i, x in enumerate(part) for y in part[i + 1:])
        assert all(g.are_adjacent(x, y) for x in t0 for y in t1)


def test_theta2_unitary_outside_dichotomy(u44, u49):
    for g, odd in ((u44, False), (u49, True)):
        f = theta2_unitary(g)
        t0, t1 = ef.unitary_pair_parts(f)
        for _, a, b in ef.outside_neighbour_counts(g, t0, t1):
            assert a == b and a in (0, 1)


def test_theta2_unitary_sets_do_not_depend_on_the_primitive_element(u49):
    # measured, not assumed: eps * (norm-one subgroup) is the norm -1 coset,
    # so any primitive choice gives the same point sets
    ctx = u49.ctx
    space = u49.space
    r = ctx.sqrt_q
    subgroup = norm_one_subgroup(ctx)
    reference = None
    primitives = [e for e in ctx.elements()
                  if not e.is_zero()
                  and __import__("polareig.gf", fromlist=["multiplicative_order"])
                  .multiplicative_order(e) == ctx.q - 1]
    assert primitives[0] == primitive_element(ctx)
    for beta in primitives:
        eps = beta ** ((r - 1) // 2)
        t0 = frozenset(
            space.point_for_vector((ctx.one, eps * gamma, ctx.zero, ctx.zero)).index
            for gamma in subgroup)
        t1 = frozenset(
            space.point_for_vector((ctx.zero, ctx.zero, ctx.one, eps * gamma)).index
            for gamma in subgroup)
        if reference is None:
            reference = (t0, t1)
        assert (t0, t1) == reference


@settings(max_examples=1000, deadline=None)
@given(c=st.fractions(min_value=-50, max_value=50),
       which=st.sampled_from(["polar", "clique"]))
def test_scaling_closure(sp42, c, which):
    f = _BASE_FUNCTIONS.setdefault(
        which,
        theta1_polar(sp42) if which == "polar"
        else theta1_from_clique_pair(sp42, *graphs.max_intersecting_delsarte_pair(sp42)))
    if c == 0:
        return
    report = verify_eigenfunction(sp42, f.scaled(c), params=_SP42_PARAMS)
    assert report.support_size == f.support_size()


_BASE_FUNCTIONS = {}
_SP42_PARAMS = graphs.SrgParams(15, 6, 1, 3)


def test_eigenfunction_json_round_trip(sp42, tmp_path):
    f = theta1_polar(sp42)
    path = tmp_path / "f.json"
    path.write_text(serialize.eigenfunction_json(f))
    loaded = serialize.load_eigenfunction(path)
    assert loaded.values == f.values
    assert loaded.theta == f.theta
    assert loaded.graph_ref["family"] == "sp"


def test_eigenfunction_csv_round_trip(sp42, tmp_path):
    f = theta1_polar(sp42).scaled(Fraction(3, 2))
    path = tmp_path / "f.csv"
    path.write_text(serialize.eigenfunction_csv(f))
    loaded = serialize.load_eigenfunction(path)
    assert loaded.values == f.values
    loaded.theta = f.theta
    assert verify_eigenfunction(sp42, loaded).support_size == 4
