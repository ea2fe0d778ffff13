import random

import pytest

from bergekit import graphcore as gc
from bergekit import recognize as rz
from bergekit.decompose import double_split_graph, path_double_split_graph, prism_graph

from corpus import bipartite_line_graph_forms, canonical_form


def test_is_bipartite(c5, c6):
    chk = rz.is_bipartite(c6)
    assert chk.bipartite and sorted(chk.coloring).count(0) == 3
    odd = rz.is_bipartite(c5)
    assert not odd.bipartite and len(odd.odd_cycle) == 5
    assert rz.is_bipartite(gc.build_graph(0, [])).bipartite


def test_claw_and_diamond(c6):
    claw = gc.build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert rz.find_claw(claw) == (0, 1, 2, 3)
    assert rz.find_diamond(claw) is None
    diamond = gc.build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert rz.find_diamond(diamond) is not None
    assert rz.find_claw(diamond) is None
    assert rz.find_claw(c6) is None and rz.find_diamond(c6) is None


def test_odd_hole_bruteforce(c5):
    assert rz.find_odd_hole_bruteforce(c5).hole == (0, 1, 2, 3, 4)
    # C7 with a long chord that cuts out a C5
    g = gc.build_graph(7, [(i, (i + 1) % 7) for i in range(7)] + [(0, 4)])
    hole = rz.find_odd_hole_bruteforce(g).hole
    assert hole is not None and len(hole) == 5
    for n in (2, 3):
        assert not rz.find_odd_hole_bruteforce(gc.complete_bipartite(n, n + 1)).found


def test_is_berge(c8):
    assert rz.is_berge_bruteforce(c8).berge
    c7 = gc.cycle_graph(7)
    chk = rz.is_berge_bruteforce(c7)
    assert chk.berge is False and chk.witness_kind == "odd_hole"
    anti = rz.is_berge_bruteforce(c7.complement())
    assert anti.berge is False and anti.witness_kind == "odd_antihole"


def test_line_of_bipartite_examples(c5, prism):
    assert rz.is_line_of_bipartite(prism).verdict
    claw = gc.build_graph(4, [(0, 1), (0, 2), (0, 3)])
    chk = rz.is_line_of_bipartite(claw)
    assert chk.verdict is False and chk.reason == "claw"
    chk = rz.is_line_of_bipartite(c5)
    assert chk.verdict is False and chk.reason == "odd_hole"


def test_line_of_bipartite_against_root_enumeration(small_corpus):
    """Membership matches line graphs of bipartite roots with <= 7 edges."""
    forms = bipartite_line_graph_forms(7)
    checked = 0
    for n in sorted(small_corpus):
        if n > 7:
            continue
        for g in small_corpus[n]:
            want = canonical_form(g) in forms
            got = rz.is_line_of_bipartite(g).verdict
            assert got == want, g.edges()
            checked += 1
    assert checked > 500


def test_double_split_recognition():
    for m in (2, 3, 4):
        for n in (2, 3, 4):
            ds = double_split_graph(m, n)
            res = rz.is_double_split(ds)
            assert res.found and (res.m, res.n) == (m, n)
            degs = {ds.degree(v) for v in ds.vertices()}
            assert degs == {1 + n, 2 * n - 2 + m}
            co = rz.is_double_split(ds.complement())
            assert co.found and (co.m, co.n) == (n, m)
    assert not rz.is_double_split(gc.cycle_graph(8)).found


def test_double_split_mutation_rejected():
    ds = double_split_graph(2, 2)
    # drop one cross edge: the P4 check has to fail
    cross = next(e for e in ds.edges() if (e[0] < 4) != (e[1] < 4))
    g = gc.build_graph(ds.n, [e for e in ds.edges() if e != cross])
    assert not rz.is_double_split(g).found


def test_is_basic_examples(ds22):
    assert rz.is_basic(gc.cycle_graph(12)).klass == "bipartite"
    assert rz.is_basic(gc.cycle_graph(6).complement()).klass == "cobipartite"
    assert rz.is_basic(ds22).klass == "double_split"
    # the prism is two cliques, so the earlier cobipartite class wins
    assert rz.is_basic(prism_graph()).klass == "cobipartite"
    net = gc.build_graph(6, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)])
    assert rz.is_basic(net).klass == "line_of_bipartite"
    assert rz.is_basic(net.complement()).klass == "co_line_of_bipartite"


CO_CLASS = {
    "bipartite": "cobipartite",
    "cobipartite": "bipartite",
    "line_of_bipartite": "co_line_of_bipartite",
    "co_line_of_bipartite": "line_of_bipartite",
    "double_split": "double_split",
    "none": "none",
}


def _in_class(g, klass):
    if klass == "bipartite":
        return rz.is_bipartite(g).bipartite
    if klass == "cobipartite":
        return rz.is_bipartite(g.complement()).bipartite
    if klass == "line_of_bipartite":
        return bool(rz.is_line_of_bipartite(g).verdict)
    if klass == "co_line_of_bipartite":
        return bool(rz.is_line_of_bipartite(g.complement()).verdict)
    if klass == "double_split":
        return rz.is_double_split(g).found
    raise AssertionError(klass)


def test_is_basic_complement_symmetry(small_corpus):
    # a graph may sit in several classes at once, so only basic-ness itself
    # flips cleanly; the verdict's co-class must hold for the complement
    rng = random.Random(8)
    pool = [g for n in small_corpus for g in small_corpus[n] if n <= 7]
    for g in rng.sample(pool, 150):
        a = rz.is_basic(g).klass
        b = rz.is_basic(g.complement()).klass
        assert (a == "none") == (b == "none")
        if a != "none":
            assert _in_class(g.complement(), CO_CLASS[a])


def test_verify_path_double_split(ds22, pds225):
    m = rz.verify_path_double_split(ds22, {0, 2}, {1, 3}, {4, 6}, {5, 7}, set())
    assert m.ok, m.violations
    rep = rz.verify_path_double_split(
        pds225, {0, 2}, {1, 3}, {4, 6}, {5, 7}, {8, 9, 10, 11}
    )
    assert rep.ok, rep.violations
    # even subdivision breaks the parity clause
    even = path_double_split_graph(2, 2, 5)
    assert (1, 11) in even.edges()
    edges = [e for e in even.edges() if e != (1, 11)] + [(11, 12), (12, 1)]
    bad = gc.build_graph(13, edges)
    rep = rz.verify_path_double_split(
        bad, {0, 2}, {1, 3}, {4, 6}, {5, 7}, {8, 9, 10, 11, 12}
    )
    assert not rep.ok


def test_verify_path_double_split_agrees_with_recognizer():
    for m, n in ((2, 2), (2, 3), (3, 2)):
        ds = double_split_graph(m, n)
        A = {2 * i for i in range(m)}
        B = {2 * i + 1 for i in range(m)}
        C = {2 * m + 2 * j for j in range(n)}
        D = {2 * m + 2 * j + 1 for j in range(n)}
        assert rz.verify_path_double_split(ds, A, B, C, D, set()).ok
        assert rz.is_double_split(ds).found


def test_verify_path_cobipartite():
    two_k2 = gc.build_graph(4, [(0, 1), (2, 3)])
    assert rz.verify_path_cobipartite(two_k2, {0, 1}, {2, 3}, set()).ok
    # two triangles joined by a path of length 3 between designated ends
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 6), (6, 7), (7, 3)]
    g = gc.build_graph(8, edges)
    assert rz.verify_path_cobipartite(g, {0, 1, 2}, {3, 4, 5}, {6, 7}).ok
    # even connecting path fails
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 6), (6, 3)]
    g = gc.build_graph(7, edges)
    assert not rz.verify_path_cobipartite(g, {0, 1, 2}, {3, 4, 5}, {6}).ok


def test_homogeneous_pair(homogeneous_fixture):
    g, t = homogeneous_fixture
    assert rz.verify_homogeneous_pair(g, t).ok
    with pytest.raises(gc.GraphError, match="non-empty"):
        bad = rz.SixTuple.of(t.A | t.F, t.B, t.C, t.D, t.E, set())
        rz.verify_homogeneous_pair(g, bad)
    # making some a complete to B violates the first bullet
    g2 = gc.build_graph(g.n, g.edges() + [(0, 3)])
    assert not rz.verify_homogeneous_pair(g2, t).ok


def test_homogeneous_2join(homogeneous_fixture):
    g, t = homogeneous_fixture
    rep = rz.verify_homogeneous_2join(g, t)
    assert rep.ok, rep.violations
    assert rep.noncutting_status == "verified"


def test_degenerate_homogeneous_2join(homogeneous_fixture):
    g, t = homogeneous_fixture
    assert rz.verify_degenerate_homogeneous_2join(g, t) == (False, None)
    # drop c's F-edge so N(c) lands inside A + D + E: item 2
    g2 = gc.build_graph(g.n, [e for e in g.edges() if e != (4, 8)])
    assert rz.verify_degenerate_homogeneous_2join(g2, t) == (True, 2)
    # cut c off from E + D entirely: item 1
    g3 = gc.build_graph(g.n, [e for e in g.edges() if e != (4, 6)])
    assert rz.verify_degenerate_homogeneous_2join(g3, t) == (True, 1)
