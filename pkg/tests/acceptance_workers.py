"""Per-graph workers for the acceptance sweeps; kept in an importable module
so the process pool can pickle them by name."""

from __future__ import annotations

from bergekit import decompose as dc
from bergekit import graphcore as gc
from bergekit import partition as pt
from bergekit import recognize as rz
from bergekit import twojoin as tj


def _parities_of_cross_paths(g, ends_a, ends_b):
    """Parities of induced paths with one end in each set and interior
    avoiding their union; None when the enumeration was cut short."""
    union = ends_a | ends_b
    rest = frozenset(range(g.n)) - union
    pe = gc.enumerate_induced_paths(g, union, rest, budget=5_000_000)
    if not pe.complete:
        return None
    out = set()
    for p in pe:
        x, y = p.ends
        if (x in ends_a and y in ends_b) or (x in ends_b and y in ends_a):
            out.add(p.length % 2)
    return out


def _even_outgoing_ok(g, part):
    """Outgoing part-to-part paths and antipaths with interior in part must
    all be even."""
    rest = frozenset(range(g.n)) - part
    pe = gc.enumerate_induced_paths(g, part, rest, parity="odd", min_length=2, budget=5_000_000)
    if pe.paths or not pe.complete:
        return pe.complete and not pe.paths
    ae = gc.enumerate_induced_antipaths(g, rest, part, parity="odd", min_length=2, budget=5_000_000)
    return ae.complete and not ae.paths


def lemma_violations(g, oracle_bsp: bool) -> list[str]:
    """Zero-violation lemma suite for one Berge graph of size at most 12."""
    out = []
    splits = tj.bruteforce_2join_oracle(g, size_guard=12, classify=False)
    classes = [(s, tj.classify_2join(g, s)) for s in splits]

    for s, c in classes:
        if c.connected:
            p1 = _parities_of_cross_paths(g, s.A1, s.B1)
            p2 = _parities_of_cross_paths(g, s.A2, s.B2)
            if p1 is None or p2 is None or len(p1 | p2) > 1:
                out.append(f"2jAiBi parity spread on {s.sorted_sets()}")
        for part in (s.A1, s.B1, s.A2, s.B2):
            if not _even_outgoing_ok(g, part):
                out.append(f"2jAiAi odd outgoing for {sorted(part)}")
        if c.proper:
            b1, b2 = tj.build_blocks(g, s)
            if not (
                rz.is_berge_bruteforce(b1.graph).berge
                and rz.is_berge_bruteforce(b2.graph).berge
            ):
                out.append(f"blockberge fails on {s.sorted_sets()}")
        if c.substantial and c.degenerate:
            if not oracle_bsp:
                out.append(f"degenerate 2-join without balanced skew: {s.sorted_sets()}")
            if c.proper:
                b1, b2 = tj.build_blocks(g, s)
                has = any(
                    pt.bruteforce_skew_partition(b.graph, require_balanced=True) is not None
                    for b in (b1, b2)
                )
                if not has:
                    out.append(f"degenerate proper 2-join: no block has one")

    if g.n <= 10:
        co = pt.bruteforce_skew_partition(g.complement(), require_balanced=True)
        if oracle_bsp != (co is not None):
            out.append("espcomp: complement disagrees")

    claw_diamond_free = rz.find_claw(g) is None and rz.find_diamond(g) is None
    if claw_diamond_free:
        for cand in pt.all_skew_partitions(g):
            kind, _ = pt.classify_lgb_skew_cutset(g, cand.B)
            if kind == "neither":
                out.append(f"butorsq: cutset {sorted(cand.B)} neither star nor square")

    lg = rz.is_line_of_bipartite(g)
    if lg.verdict and g.n >= 5 and g.edges():
        star = pt.find_star_cutset(g) is not None
        if oracle_bsp != star:
            out.append("butterequiv: star cutset and balanced skew disagree")

    if rz.is_bipartite(g).bipartite:
        any_skew = pt.bruteforce_skew_partition(g) is not None
        if any_skew != oracle_bsp:
            out.append("bipartite lemma: skew and balanced skew disagree")

    # a Berge graph with a star cutset has a balanced skew partition, except
    # the complement of the 4-hole
    if g.n >= 4 and g.edges():
        is_co_c4 = g.n == 4 and sorted(g.degree(v) for v in g.vertices()) == [1, 1, 2, 2] and g.edge_count() == 3
        from corpus import canonical_form

        if canonical_form(g) != canonical_form(gc.cycle_graph(4).complement()):
            if pt.find_star_cutset(g) is not None and not oracle_bsp:
                out.append("starcutset lemma: star cutset but no balanced skew")
    return out


def contraction_check(g, oracle_bsp: bool):
    """Criterion: on no-balanced-skew graphs whose only proper 2-joins are
    path ones (in the graph or its complement), contracting any proper path
    2-join's path-side keeps the answer NO.  Returns None when the graph is
    out of scope, else a list of violations."""
    if oracle_bsp or g.n > 12:
        return None
    sides = []
    for h in (g, g.complement()):
        cls = [(s, tj.classify_2join(h, s)) for s in tj.bruteforce_2join_oracle(h, size_guard=12, classify=False)]
        if any(c.proper and c.path_side == "none" for _, c in cls):
            return None
        sides.append((h, cls))
    paths = [
        (h, s, c)
        for h, cls in sides
        for s, c in cls
        if c.proper and c.path_side in ("X1", "X2", "both")
    ]
    if not paths:
        return None
    out = []
    for h, s, c in paths:
        oriented = s if c.path_side in ("X1", "both") else s.swapped_sides()
        contracted, _ = tj.contract_path_side(h, oriented)
        if pt.bruteforce_skew_partition(contracted, require_balanced=True) is not None:
            out.append(f"contraction created a balanced skew partition: {s.sorted_sets()}")
    return out


def record(g) -> dict:
    """Everything the acceptance criteria need from one corpus graph."""
    oracle = pt.bruteforce_skew_partition(g, require_balanced=True) is not None
    rec = {
        "n": g.n,
        "oracle_bsp": oracle,
        "detect": dc.detect_bsp_berge(g).answer,
        "star_fast": pt.find_star_cutset(g) is not None,
        "star_slow": pt.bruteforce_star_cutset(g) is not None,
        "nonpath_finder": tj.find_nonpath_proper_2join(g) is not None,
    }
    splits = tj.bruteforce_2join_oracle(g, size_guard=14, classify=False)
    rec["nonpath_oracle"] = any(
        (c := tj.classify_2join(g, s)).proper and c.path_side == "none" for s in splits
    )
    if rz.is_bipartite(g).bipartite:
        rec["bip_bsp"] = pt.bipartite_bsp(g)[0]
        rec["skew_oracle"] = pt.bruteforce_skew_partition(g) is not None
    else:
        rec["bip_bsp"] = rec["skew_oracle"] = None
    rec["lemmas"] = lemma_violations(g, oracle) if g.n <= 12 else []
    rec["contraction"] = contraction_check(g, oracle)
    return rec


def counting_record(g) -> dict:
    tree = dc.build_decomposition_tree(g)
    rep = dc.verify_counting(tree)
    return {"n": g.n, "ok": rep.ok, "nodes": rep.node_count, "phi": rep.phi_root,
            "violations": rep.violations}


def compose_small(seed: int):
    return dc.compose_random_berge(seed, dc.Recipe(steps=3, max_n=14), budget=80_000_000)


def compose_big(seed: int):
    return dc.compose_random_berge(seed, dc.Recipe(steps=14, max_n=40), budget=150_000_000)
