from fractions import Fraction

import pytest

from polareig import cache, eigenfunctions as ef, graphs, linalg, oracle, serialize
from polareig.graphs import graph_from_edges
from polareig.oracle import (
    WitnessNotFound, check_characterisation, count_comparison,
    enumerate_bipartite_pairs, enumerate_isolated_clique_pairs,
)


def test_path_graph_has_no_isolated_edge_pairs():
    p3 = graph_from_edges(3, [(0, 1), (1, 2)])
    assert len(enumerate_isolated_clique_pairs(p3, 2)) == 0


def test_c4_contains_exactly_its_own_bipartition():
    c4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    catalog = enumerate_bipartite_pairs(c4, 2)
    assert catalog.pairs == (((0, 2), (1, 3)),)
    assert catalog.outside_regular == (True,)


@pytest.mark.parametrize("fixture,s,count", [
    ("sp42", 2, 45), ("sp43", 3, 240), ("rook_o42", 2, 9), ("rook_o43", 3, 16),
    ("u44", 4, 135), ("gq_o62", 2, 270),
    ("vo_plus_2", 2, 36), ("vo_minus_2", 2, 60), ("vo_minus_3", 3, 1080),
])
def test_isolated_pair_counts(fixture, s, count, request):
    g = request.getfixturevalue(fixture)
    spec = graphs.spectrum(graphs.srg_check(g))
    assert s == spec.theta1 + 1
    assert len(enumerate_isolated_clique_pairs(g, s)) == count


def test_isolated_pairs_are_disjoint_cliques_with_no_cross_edges(sp42):
    catalog = enumerate_isolated_clique_pairs(sp42, 2)
    for t0, t1 in catalog.pairs:
        assert not set(t0) & set(t1)
        assert all(sp42.are_adjacent(x, y) for x, y in [t0, t1])
        assert not any(sp42.are_adjacent(x, y) for x in t0 for y in t1)


def test_isolated_pairs_yield_positive_eigenfunctions(sp42, vo_minus_2):
    for g in (sp42, vo_minus_2):
        params = graphs.srg_check(g)
        spec = graphs.spectrum(params)
        catalog = enumerate_isolated_clique_pairs(g, spec.theta1 + 1)
        for t0, t1 in catalog.pairs:
            values = {v: Fraction(1) for v in t0}
            values.update({v: Fraction(-1) for v in t1})
            f = ef.Eigenfunction(values, spec.theta1, {})
            assert ef.verify_eigenfunction(g, f, params=params).tight


def test_unitary_bipartite_catalog_contains_the_tight_pair(u44):
    catalog = enumerate_bipartite_pairs(u44, 3)
    assert catalog.counts() == {"total": 120, "outside_regular": 120,
                                "not_outside_regular": 0}
    f = ef.theta2_unitary(u44)
    t0, t1 = ef.unitary_pair_parts(f)
    key = (t0, t1) if t0 <= t1 else (t1, t0)
    assert key in set(catalog.pairs)


def test_outside_regular_bipartite_pairs_give_negative_eigenfunctions(u44):
    params = graphs.srg_check(u44)
    spec = graphs.spectrum(params)
    catalog = enumerate_bipartite_pairs(u44, -spec.theta2)
    for (t0, t1), regular in zip(catalog.pairs, catalog.outside_regular):
        values = {v: Fraction(1) for v in t0}
        values.update({v: Fraction(-1) for v in t1})
        f = ef.Eigenfunction(values, spec.theta2, {})
        if regular:
            assert ef.verify_eigenfunction(u44, f, params=params).tight


def test_undersized_bipartite_pairs_are_rejected_as_certificates(sp42):
    # induced K_{2,2} in a graph with theta2 = -3 can never be outside-regular:
    # a regular one would be a 4-support eigenfunction under the bound 6
    params = graphs.srg_check(sp42)
    spec = graphs.spectrum(params)
    catalog = enumerate_bipartite_pairs(sp42, 2)
    assert len(catalog) > 0
    assert not any(catalog.outside_regular)
    for t0, t1 in catalog.pairs:
        values = {v: Fraction(1) for v in t0}
        values.update({v: Fraction(-1) for v in t1})
        with pytest.raises(ef.NotAnEigenfunction):
            ef.verify_eigenfunction(sp42, ef.Eigenfunction(values, spec.theta2, {}),
                                    params=params)


@pytest.mark.parametrize("fixture", [
    "sp42", "sp43", "rook_o42", "rook_o43", "u44",
    "vo_plus_2", "vo_minus_2", "vo_minus_3",
])
def test_characterisation_finds_all_witnesses(fixture, request):
    g = request.getfixturevalue(fixture)
    spec = graphs.spectrum(graphs.srg_check(g))
    catalog = enumerate_isolated_clique_pairs(g, spec.theta1 + 1)
    report = check_characterisation(g, catalog, strict=False)
    assert report.clean
    assert report.matched == report.total == len(catalog)


def test_characterisation_raises_on_a_fake_pair(sp42):
    fake = oracle.PairCatalog("isolated_cliques", 2, (((0, 1), (2, 3)),), None)
    with pytest.raises(WitnessNotFound):
        check_characterisation(sp42, fake, strict=True)
    report = check_characterisation(sp42, fake, strict=False)
    assert report.counterexamples == (((0, 1), (2, 3)),)


def test_polar_witness_identifies_the_difference_pair(sp42):
    space = sp42.space
    L = space.subspaces(0)[0]
    t0, t1 = space.difference_pairs(L)[0]
    witness = oracle._polar_witness(space, list(t0), list(t1))
    assert witness is not None
    assert witness["L"] == L.key


@pytest.mark.parametrize("fixture,printed,derived,oracle_count", [
    ("sp42", 45, 45, 45),
    ("sp43", 240, 240, 240),
    ("rook_o42", 9, 9, 9),
    ("rook_o43", 16, 16, 16),
    ("u44", 135, 135, 135),
    ("gq_o62", 270, 270, 270),
    ("vo_plus_2", 720, 72, 36),
    ("vo_plus_3", 8640, 432, 432),
    ("vo_minus_2", 280, 60, 60),
    ("vo_minus_3", 10530, 1080, 1080),
])
def test_count_comparisons(fixture, printed, derived, oracle_count, request):
    g = request.getfixturevalue(fixture)
    c = count_comparison(g)
    assert (c.printed, c.derived, c.oracle) == (printed, derived, oracle_count)
    assert c.printed_matches == (printed == oracle_count)
    assert c.derived_matches == (derived == oracle_count)


def test_catalog_counts_are_shift_invariant(vo_plus_2, vo_minus_2):
    # relabelling by any translation automorphism must not change the census
    for g in (vo_plus_2, vo_minus_2):
        ctx = g.ctx
        spec = graphs.spectrum(graphs.srg_check(g))
        s = spec.theta1 + 1
        base = len(enumerate_isolated_clique_pairs(g, s))
        keys = [linalg.vec_key(v) for v in g.vertices]
        for shift in keys:
            perm = [g.vec_index[tuple(ctx.add_i(a, b) for a, b in zip(v, shift))]
                    for v in keys]
            adj = [0] * g.n
            for i in range(g.n):
                for j in g.neighbours(i):
                    adj[perm[i]] |= 1 << perm[j]
            relabeled = graphs.PolarGraph(list(range(g.n)), adj,
                                          {"family": "custom"})
            assert len(enumerate_isolated_clique_pairs(relabeled, s)) == base


def test_enumeration_is_worker_count_independent(sp43):
    one = enumerate_isolated_clique_pairs(sp43, 3, workers=1)
    four = enumerate_isolated_clique_pairs(sp43, 3, workers=4)
    assert one.pairs == four.pairs
    b1 = enumerate_bipartite_pairs(sp43, 4, workers=1)
    b4 = enumerate_bipartite_pairs(sp43, 4, workers=4)
    assert b1.pairs == b4.pairs and b1.outside_regular == b4.outside_regular


def test_catalog_files_are_byte_identical_across_worker_counts(sp42, tmp_path):
    paths = []
    for workers in (1, 8):
        catalog = enumerate_isolated_clique_pairs(sp42, 2, workers=workers)
        header, lines = serialize.catalog_json_lines(catalog, sp42.provenance)
        path = tmp_path / f"catalog_w{workers}.jsonl"
        cache.write_jsonl(path, header, lines)
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()
