import pytest

from bergekit import gadget as gd
from bergekit import graphcore as gc


UNSAT8 = [[1, 2, 3], [-1, 2, 3], [1, -2, 3], [1, 2, -3],
          [-1, -2, 3], [-1, 2, -3], [1, -2, -3], [-1, -2, -3]]


def test_instance_validation():
    with pytest.raises(gc.GraphError, match="repeats"):
        gd.instance(3, [[1, -1, 2]])
    with pytest.raises(gc.GraphError, match="clause"):
        gd.Sat3Instance(3, ())
    inst = gd.instance(2, [[1, 2, 3]])
    assert inst.n_vars == 3  # padded up


def test_parse_dimacs():
    inst = gd.parse_dimacs("c comment\np cnf 3 1\n1 2 3 0\n")
    assert inst.n_vars == 3 and inst.n_clauses == 1
    with pytest.raises(gc.GraphError, match="repeats"):
        gd.parse_dimacs("p cnf 3 1\n1 -1 2 0\n")
    with pytest.raises(gc.GraphError, match="3 literals"):
        gd.parse_dimacs("p cnf 3 1\n1 2 0\n")
    with pytest.raises(gc.GraphError, match="header"):
        gd.parse_dimacs("1 2 3 0\n")
    eight = "p cnf 3 8\n" + "\n".join(" ".join(map(str, cl)) + " 0" for cl in UNSAT8)
    assert gd.parse_dimacs(eight).n_clauses == 8


def test_sat_bruteforce():
    assert gd.sat_bruteforce(gd.instance(3, [[1, 2, 3]])) == (False, False, True)
    assert gd.sat_bruteforce(gd.instance(3, UNSAT8)) is None
    with pytest.raises(gc.GraphError):
        gd.sat_bruteforce(gd.Sat3Instance(30, gd.instance(3, [[1, 2, 3]]).clauses))


def test_gadget_counts():
    inst = gd.instance(3, [[1, 2, 3]])
    lay = gd.build_bienstock(inst)
    assert (lay.graph.n, lay.graph.edge_count()) == gd.expected_counts(3, 1) == (48, 76)
    big = gd.build_bienstock(gd.instance(3, UNSAT8))
    assert (big.graph.n, big.graph.edge_count()) == gd.expected_counts(3, 8)
    assert gd.audit_layout(lay) == []
    assert gd.audit_layout(big) == []


def test_name_map_round_trip():
    lay = gd.build_bienstock(gd.instance(3, [[1, 2, 3]]))
    assert len(lay.names) == lay.graph.n
    for label, idx in lay.names.items():
        assert lay.graph.labels[idx] == label


def test_augment_prime():
    lay = gd.build_bienstock(gd.instance(3, [[1, 2, 3]]))
    prime = gd.augment_prime(lay)
    assert (prime.graph.n, prime.graph.edge_count()) == gd.expected_counts(3, 1, True)
    a, b = prime.vertex("a"), prime.vertex("b")
    u, s = prime.vertex("u"), prime.vertex("s")
    g = prime.graph
    assert g.degree(a) == g.degree(b) == 2
    assert not g.has_edge(a, b)
    assert set(g.neighbors(a)) == set(g.neighbors(b)) == {u, s}
    with pytest.raises(gc.GraphError, match="augmented"):
        gd.augment_prime(prime)


def test_odd_us_path():
    sat = gd.build_bienstock(gd.instance(3, [[1, 2, 3]]))
    got = gd.odd_us_path(sat)
    assert got.path is not None and got.path.length % 2 == 1
    assert got.path.check_in(sat.graph)
    unsat = gd.build_bienstock(gd.instance(3, UNSAT8))
    got = gd.odd_us_path(unsat, budget=50_000_000)
    assert got.path is None and got.complete
    with pytest.raises(gc.GraphError, match="un-augmented"):
        gd.odd_us_path(gd.augment_prime(sat))


def test_cross_validate_sat_and_unsat():
    rep = gd.cross_validate(gd.instance(3, [[1, 2, 3]]))
    assert rep.legs_ok and rep.sat and rep.odd_path and not rep.bsp_gprime
    rep = gd.cross_validate(gd.instance(3, UNSAT8), budget=80_000_000)
    assert rep.legs_ok and not rep.sat and not rep.odd_path and rep.bsp_gprime
    assert rep.cutset_checks == {
        "aus_skew": True,
        "aus_balanced_matches": True,
        "bus_skew": True,
        "bus_balanced_matches": True,
    }
    payload = rep.to_json()
    assert '"legs_ok": true' in payload


def test_calibration_both_conventions_pass():
    # the variable gadget is t/f-symmetric, so the two wiring conventions
    # build isomorphic graphs and both must satisfy the equivalence
    verdicts = gd.calibrate_convention(budget=80_000_000)
    assert verdicts == {"pos_t": True, "pos_f": True}
    assert gd.CALIBRATED_CONVENTION in verdicts


def test_layout_grf_round_trip():
    lay = gd.build_bienstock(gd.instance(3, [[1, 2, 3]]))
    grf, sidecar = gd.layout_to_grf(lay)
    g, warnings = gc.parse_grf(grf)
    assert warnings == [] and g.n == lay.graph.n
    assert g.edge_count() == lay.graph.edge_count()
    lines = sidecar.strip().splitlines()
    assert len(lines) == lay.graph.n
    assert lines[0].split() == ["0", lay.graph.labels[0]]
