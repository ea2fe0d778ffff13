"""Decomposition trees for Berge graphs with potential-function accounting,
the top-level balanced-skew-partition decision, and a seeded generator that
composes Berge test graphs by gluing blocks along 2-joins.

Tree rules, in order: basic leaves, small leaves (at most 10 vertices),
no-decomposition leaves, degenerate leaves, otherwise two children that are
the blocks of a chosen substantial 2-join (non-path preferred, graph
preferred over complement, smaller side second, with the size-4 component
swap applied).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graphcore import (
    Graph,
    GraphError,
    InducedPath,
    _as_budget,
    bits,
    build_graph,
    components,
    cycle_graph,
    mask_of,
    maximal_flat_paths,
    set_of,
)
from .recognize import BasicVerdict, is_basic, is_berge_bruteforce
from .partition import basic_bsp, bruteforce_skew_partition
from . import twojoin
from .twojoin import (
    TwoJoinClass,
    TwoJoinSplit,
    build_blocks,
    classify_2join,
    find_path_2joins,
    find_substantial_2join,
    verify_2join,
)


# -- checks and potentials ------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    pairing: Optional[tuple[tuple[int, int], tuple[int, int]]] = None
    failing_bullet: Optional[int] = None


def _near_twin_pairs(g: Graph) -> list[tuple[int, int, int]]:
    """Pairs (x, y) whose neighbourhoods agree outside at most two other
    vertices; the third entry is the mask of those leftover vertices, which
    a partner pair must absorb for the twin bullets to hold."""
    out = []
    for x in range(g.n):
        for y in range(x + 1, g.n):
            diff = (g.adj[x] ^ g.adj[y]) & ~((1 << x) | (1 << y))
            if diff.bit_count() <= 2:
                out.append((x, y, diff))
    return out


def _pairing_is_check(g, a, b, c, d) -> Optional[int]:
    """Failing bullet number for the named pairing (a,b),(c,d), or None."""
    quad = (1 << a) | (1 << b) | (1 << c) | (1 << d)
    ab = g.has_edge(a, b)
    cd = g.has_edge(c, d)
    cross = [g.has_edge(a, c), g.has_edge(a, d), g.has_edge(b, c), g.has_edge(b, d)]
    disjoint_matching = (cross[0] and cross[3] and not cross[1] and not cross[2]) or (
        cross[1] and cross[2] and not cross[0] and not cross[3]
    )
    if not ((ab and cd and disjoint_matching) or (not ab and not cd and disjoint_matching)):
        return 1
    outq = ~quad
    if (g.adj[a] & outq) != (g.adj[b] & outq):
        return 2
    if (g.adj[c] & outq) != (g.adj[d] & outq):
        return 3
    abm = (1 << a) | (1 << b)
    cdm = (1 << c) | (1 << d)
    ok4 = any(
        (g.adj[v] & abm) == abm and not (g.adj[v] & cdm)
        for v in bits(g.full_mask() & ~quad)
    )
    if not ok4:
        return 4
    ok5 = any(
        (g.adj[v] & cdm) == cdm and not (g.adj[v] & abm)
        for v in bits(g.full_mask() & ~quad)
    )
    if not ok5:
        return 5
    return None


def is_check(g: Graph, quadruple: Iterable[int]) -> CheckReport:
    """A check is 4 vertices splittable into two twin pairs joined by two
    disjoint cross edges (with the twin pairs both adjacent or both not),
    each pair having an outside private common neighbour."""
    vs = sorted(set(quadruple))
    if len(vs) != 4:
        raise GraphError("a check needs 4 distinct vertices")
    w, x, y, z = vs
    last_fail = 1
    for (a, b), (c, d) in (
        ((w, x), (y, z)),
        ((w, y), (x, z)),
        ((w, z), (x, y)),
    ):
        fail = _pairing_is_check(g, a, b, c, d)
        if fail is None:
            return CheckReport(True, ((a, b), (c, d)), None)
        last_fail = max(last_fail, fail)
    return CheckReport(False, None, last_fail)


def all_checks(g: Graph) -> list[frozenset[int]]:
    """Every check, found through near-twin pair candidates rather than raw
    quadruple scans: each pair's neighbourhood mismatch must sit inside the
    partner pair."""
    twins = _near_twin_pairs(g)
    out = []
    for i, (a, b, dab) in enumerate(twins):
        abm = (1 << a) | (1 << b)
        for c, d, dcd in twins[i + 1 :]:
            cdm = (1 << c) | (1 << d)
            if abm & cdm or dab & ~cdm or dcd & ~abm:
                continue
            if _pairing_is_check(g, a, b, c, d) is None:
                out.append(frozenset((a, b, c, d)))
    return sorted(set(out), key=sorted)


def count_checks(g: Graph, guard: int = 2000) -> int:
    """Maximum number of pairwise disjoint checks, by branch and bound."""
    checks = all_checks(g)
    if len(checks) > guard:
        raise GraphError(f"check packing refuses {len(checks)} checks > guard={guard}")
    masks = [mask_of(c) for c in checks]

    best = 0

    def grow(idx: int, used: int, size: int):
        nonlocal best
        if size + (len(masks) - idx) <= best:
            return
        if size > best:
            best = size
        for j in range(idx, len(masks)):
            if not masks[j] & used:
                grow(j + 1, used | masks[j], size + 1)

    grow(0, 0, 0)
    return best


def potentials(g: Graph, guard: int = 2000) -> tuple[int, int, int]:
    """(c, psi, phi) with psi = 2|V| - 20 + c and phi = max(psi, 1)."""
    c = count_checks(g, guard)
    psi = 2 * g.n - 20 + c
    return c, psi, max(psi, 1)


# -- the decomposition tree ------------------------------------------------


@dataclass
class DecompNode:
    graph: Graph
    label: str  # internal | basic | small | no_decomposition | degenerate
    complemented: bool = False
    split: Optional[TwoJoinSplit] = None
    split_class: Optional[TwoJoinClass] = None
    basic_verdict: Optional[BasicVerdict] = None
    children: list["DecompNode"] = field(default_factory=list)
    _potentials: Optional[tuple[int, int, int]] = None

    def potentials(self, guard: int = 2000) -> tuple[int, int, int]:
        if self._potentials is None:
            self._potentials = potentials(self.graph, guard)
        return self._potentials

    def nodes(self) -> list["DecompNode"]:
        out = [self]
        for ch in self.children:
            out.extend(ch.nodes())
        return out

    def leaves(self) -> list["DecompNode"]:
        return [nd for nd in self.nodes() if nd.label != "internal"]


def _least_split_key(s: TwoJoinSplit) -> tuple:
    return (
        sorted(s.A1),
        sorted(s.B1),
        sorted(s.A2),
        sorted(s.B2),
        sorted(s.X1),
    )


def _choose_substantial_2join(
    g: Graph, depth: int
) -> Optional[tuple[TwoJoinSplit, TwoJoinClass, bool]]:
    """The tree's 2-join choice: non-path before path, the graph before its
    complement, the seeded search's least seed inside each bucket."""
    for complemented in (False, True):
        h = g.complement() if complemented else g
        got = find_substantial_2join(h, nonpath_only=True, depth=depth)
        if got is not None:
            return got[0], got[1], complemented
    for complemented in (False, True):
        h = g.complement() if complemented else g
        cands = [(s, c) for s, c in find_path_2joins(h) if c.substantial]
        if cands:
            s, c = min(cands, key=lambda sc: _least_split_key(sc[0]))
            return s, c, complemented
    return None


def _apply_side_rules(h: Graph, s: TwoJoinSplit) -> TwoJoinSplit:
    """Order the sides so |X2| <= |X1|, then apply the size-4 swap: when
    some component {a, b} of H[X1] has a in A1 and b in B1, shift it to X2."""
    if len(s.X2) > len(s.X1):
        s = s.swapped_sides()
    if len(s.X2) == 4:
        x1m = mask_of(s.X1)
        pairs = []
        for comp in components(h, set_of(h.full_mask() & ~x1m)):
            if len(comp) == 2:
                u, v = sorted(comp)
                if (u in s.A1 and v in s.B1) or (u in s.B1 and v in s.A1):
                    pairs.append((u, v))
        if pairs:
            u, v = min(pairs)
            a, b = (u, v) if u in s.A1 else (v, u)
            moved = TwoJoinSplit(
                s.X1 - {a, b},
                s.X2 | {a, b},
                s.A1 - {a},
                s.B1 - {b},
                s.A2,
                s.B2,
            )
            if verify_2join(h, moved).ok:
                s = moved
    return s


def build_decomposition_tree(
    g: Graph,
    budget=None,
    twojoin_depth: int = 3,
    max_depth: int = 200,
) -> DecompNode:
    """The recursive node rules, applied in the stated order."""
    bud = _as_budget(budget)

    def build(graph: Graph, depth: int) -> DecompNode:
        if depth > max_depth:
            raise GraphError("decomposition tree exceeded the depth guard")
        verdict = is_basic(graph, bud)
        if verdict.is_basic:
            return DecompNode(graph, "basic", basic_verdict=verdict)
        if graph.n <= 10:
            return DecompNode(graph, "small", basic_verdict=verdict)
        got = _choose_substantial_2join(graph, twojoin_depth)
        if got is None:
            return DecompNode(graph, "no_decomposition", basic_verdict=verdict)
        split, cls, complemented = got
        if cls.degenerate:
            return DecompNode(
                graph, "degenerate", complemented, split, cls, verdict
            )
        h = graph.complement() if complemented else graph
        split = _apply_side_rules(h, split)
        cls = classify_2join(h, split)
        b1, b2 = build_blocks(h, split)
        node = DecompNode(graph, "internal", complemented, split, cls, verdict)
        node.children = [build(b1.graph, depth + 1), build(b2.graph, depth + 1)]
        return node

    return build(g, 0)


@dataclass
class CountingReport:
    ok: bool
    node_count: int
    phi_root: int
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_counting(tree: DecompNode, guard: int = 2000) -> CountingReport:
    """phi(H) >= phi(H1) + phi(H2) at every internal node, and the whole
    tree has at most 2 phi(root) nodes."""
    rep = CountingReport(True, len(tree.nodes()), tree.potentials(guard)[2])
    for node in tree.nodes():
        if node.label != "internal":
            continue
        ph = node.potentials(guard)[2]
        p1 = node.children[0].potentials(guard)[2]
        p2 = node.children[1].potentials(guard)[2]
        if ph < p1 + p2:
            rep.violations.append(
                f"node with {node.graph.n} vertices: phi={ph} < {p1} + {p2}"
            )
    if rep.node_count > 2 * rep.phi_root:
        rep.violations.append(
            f"{rep.node_count} nodes exceed twice the root potential {rep.phi_root}"
        )
    rep.ok = not rep.violations
    return rep


# -- the top-level decision -------------------------------------------------


@dataclass
class LeafVerdict:
    node: DecompNode
    answer: bool
    how: str


@dataclass
class DetectionResult:
    answer: bool
    tree: DecompNode
    leaf_verdicts: list[LeafVerdict]


def detect_bsp_berge(
    g: Graph,
    verify_berge: bool = False,
    budget=None,
    twojoin_depth: int = 3,
    small_guard: int = 14,
) -> DetectionResult:
    """YES iff some leaf of the decomposition tree has a balanced skew
    partition: basic leaves are decided by the class-specific deciders,
    small leaves by brute force, and no-decomposition and degenerate leaves
    answer YES outright.

    The input is trusted to be Berge unless ``verify_berge`` is set.
    """
    bud = _as_budget(budget)
    if verify_berge:
        chk = is_berge_bruteforce(g, bud)
        if chk.berge is False:
            raise GraphError(f"input is not Berge: {chk.witness_kind} {chk.witness}")
        if chk.berge is None:
            raise GraphError("Berge verification ran out of budget")
    tree = build_decomposition_tree(g, bud, twojoin_depth)
    verdicts = []
    for leaf in tree.leaves():
        if leaf.label == "basic":
            ans = basic_bsp(leaf.graph, leaf.basic_verdict)
            how = f"basic:{leaf.basic_verdict.klass}"
        elif leaf.label == "small":
            ans = (
                bruteforce_skew_partition(
                    leaf.graph, require_balanced=True, size_guard=small_guard, budget=bud
                )
                is not None
            )
            how = "small:bruteforce"
        else:
            ans = True
            how = leaf.label
        verdicts.append(LeafVerdict(leaf, ans, how))
    return DetectionResult(any(v.answer for v in verdicts), tree, verdicts)


# -- tree export -------------------------------------------------------------


def tree_to_json(tree: DecompNode, with_potentials: bool = True, guard: int = 2000) -> str:
    nodes = tree.nodes()
    ids = {id(nd): i for i, nd in enumerate(nodes)}
    out = []
    for nd in nodes:
        entry = {
            "id": ids[id(nd)],
            "n": nd.graph.n,
            "m": nd.graph.edge_count(),
            "label": nd.label,
            "complemented": nd.complemented,
            "split": nd.split.sorted_sets() if nd.split else None,
            "children": [ids[id(ch)] for ch in nd.children],
        }
        if with_potentials:
            c, psi, phi = nd.potentials(guard)
            entry["potentials"] = {"c": c, "psi": psi, "phi": phi}
        out.append(entry)
    return json.dumps({"nodes": out}, indent=2, sort_keys=True)


def tree_to_dot(tree: DecompNode, with_potentials: bool = True, guard: int = 2000) -> str:
    nodes = tree.nodes()
    ids = {id(nd): i for i, nd in enumerate(nodes)}
    lines = ["digraph decomposition {", "  node [shape=box];"]
    for nd in nodes:
        bits_ = [f"{nd.label}", f"n={nd.graph.n} m={nd.graph.edge_count()}"]
        if nd.complemented:
            bits_.append("complemented")
        if with_potentials:
            c, psi, phi = nd.potentials(guard)
            bits_.append(f"c={c} psi={psi} phi={phi}")
        label = "\\n".join(bits_)
        lines.append(f'  n{ids[id(nd)]} [label="{label}"];')
        for ch in nd.children:
            lines.append(f"  n{ids[id(nd)]} -> n{ids[id(ch)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- composing Berge test graphs ---------------------------------------------


class ComposeError(GraphError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def compose_on_flat_paths(
    g1: Graph,
    path1: Iterable[int],
    g2: Graph,
    path2: Iterable[int],
    verify: bool = True,
    budget=None,
    enforce_parity: bool = True,
) -> Graph:
    """Glue two graphs along flat paths: both paths are removed and the
    stripped sides joined by the complete pairs their path ends used to see.
    This is the inverse of block construction; the removed paths must have
    the same length parity for the result to stand a chance of being Berge,
    and with ``verify`` the result is brute-force checked and rejected with
    a witness when it is not.  ``enforce_parity=False`` skips the cheap
    parity pre-check so the Berge rejection path can produce its witness."""
    p1, p2 = tuple(path1), tuple(path2)
    if len(p1) < 2 or len(p2) < 2:
        raise ComposeError("gluing needs paths with at least two vertices")
    if enforce_parity and (len(p1) - len(p2)) % 2:
        raise ComposeError("gluing paths must have the same length parity")

    def strip(g: Graph, p):
        keep = [v for v in range(g.n) if v not in set(p)]
        pos = {v: i for i, v in enumerate(keep)}
        pm = mask_of(p)
        A = [pos[w] for w in bits(g.adj[p[0]] & ~pm)]
        B = [pos[w] for w in bits(g.adj[p[-1]] & ~pm)]
        edges = [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos]
        return len(keep), edges, A, B

    n1, e1, A1, B1 = strip(g1, p1)
    n2, e2, A2, B2 = strip(g2, p2)
    if not (A1 and B1 and A2 and B2):
        raise ComposeError("a path end has no neighbours outside the path")
    edges = list(e1)
    edges += [(u + n1, v + n1) for u, v in e2]
    edges += [(a, a2 + n1) for a in A1 for a2 in A2]
    edges += [(b, b2 + n1) for b in B1 for b2 in B2]
    g = build_graph(n1 + n2, edges)
    if verify:
        chk = is_berge_bruteforce(g, budget)
        if chk.berge is False:
            raise ComposeError(
                f"composition is not Berge: {chk.witness_kind}", chk.witness
            )
        if chk.berge is None:
            raise ComposeError("Berge verification of the composition ran out of budget")
    return g


def double_split_graph(m: int, n: int) -> Graph:
    """DS(m, n): matching pairs (a_i, b_i), antimatching pairs (c_j, d_j),
    all four edges between distinct antimatching pairs, and per pair-of-pairs
    the two disjoint cross edges a_i c_j, b_i d_j."""
    if m < 2 or n < 2:
        raise GraphError("double split graphs need m, n >= 2")
    a = [2 * i for i in range(m)]
    b = [2 * i + 1 for i in range(m)]
    c = [2 * m + 2 * j for j in range(n)]
    d = [2 * m + 2 * j + 1 for j in range(n)]
    edges = [(a[i], b[i]) for i in range(m)]
    for j in range(n):
        for j2 in range(j + 1, n):
            edges += [
                (c[j], c[j2]),
                (c[j], d[j2]),
                (d[j], c[j2]),
                (d[j], d[j2]),
            ]
    for i in range(m):
        for j in range(n):
            edges += [(a[i], c[j]), (b[i], d[j])]
    return build_graph(2 * m + 2 * n, edges)


def path_double_split_graph(m: int, n: int, subdivided_length: int = 5) -> Graph:
    """DS(m, n) with the first matching edge subdivided into a path of odd
    length; the canonical non-basic fixture."""
    if subdivided_length < 3 or subdivided_length % 2 == 0:
        raise GraphError("the subdivided path must have odd length >= 3")
    ds = double_split_graph(m, n)
    base = ds.n
    k = subdivided_length - 1  # interior vertices
    edges = [e for e in ds.edges() if e != (0, 1)]
    chain = [0] + list(range(base, base + k)) + [1]
    edges += list(zip(chain, chain[1:]))
    return build_graph(base + k, edges)


def double_theta_graph() -> Graph:
    """Two 6-holes sharing a 2-join: a1-c1-c2-b1-c3-c4 and a2-d1-d2-b2-d3-d4
    joined by a1 a2 and b1 b2; the canonical non-path proper 2-join fixture."""
    a1, c1, c2, b1, c3, c4 = range(6)
    a2, d1, d2, b2, d3, d4 = range(6, 12)
    edges = [
        (a1, c1), (c1, c2), (c2, b1), (b1, c3), (c3, c4), (c4, a1),
        (a2, d1), (d1, d2), (d2, b2), (b2, d3), (d3, d4), (d4, a2),
        (a1, a2), (b1, b2),
    ]
    return build_graph(12, edges)


def square_pair_graph() -> Graph:
    """Two 4-holes a1-c-b1-c' and a2-d-b2-d' joined by a1 a2, b1 b2; its
    obvious 2-join is degenerate (centre vertex complete to A1 + B1)."""
    a1, c, b1, cp = 0, 1, 2, 3
    a2, d, b2, dp = 4, 5, 6, 7
    edges = [
        (a1, c), (c, b1), (b1, cp), (cp, a1),
        (a2, d), (d, b2), (b2, dp), (dp, a2),
        (a1, a2), (b1, b2),
    ]
    return build_graph(8, edges)


def prism_graph() -> Graph:
    return build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


DEFAULT_CATALOG: tuple[str, ...] = (
    "cycle:6",
    "cycle:8",
    "cycle:10",
    "ds:2,2",
    "ds:3,2",
    "prism",
    "double_theta",
)


def _piece(spec: str) -> Graph:
    kind, _, arg = spec.partition(":")
    if kind == "cycle":
        k = int(arg)
        if k % 2 or k < 4:
            raise GraphError("catalog cycles must be even, length >= 4")
        return cycle_graph(k)
    if kind == "ds":
        m, n = (int(x) for x in arg.split(","))
        return double_split_graph(m, n)
    if kind == "prism":
        return prism_graph()
    if kind == "double_theta":
        return double_theta_graph()
    raise GraphError(f"unknown catalog piece {spec!r}")


def _ports(g: Graph, rng: random.Random, max_len: int = 4) -> list[tuple[int, ...]]:
    """Gluable flat paths of a piece: maximal flat paths trimmed to usable
    length, plus arcs when the piece is a hole."""
    out: list[tuple[int, ...]] = []
    if g.n >= 6 and all(g.degree(v) == 2 for v in range(g.n)) and len(components(g)) == 1:
        order = [0]
        prev = -1
        while len(order) < g.n:
            nxt = [w for w in g.neighbors(order[-1]) if w != prev]
            prev = order[-1]
            order.append(nxt[0])
        for start in range(g.n):
            for k in range(2, min(max_len + 2, g.n - 3)):
                out.append(tuple(order[(start + i) % g.n] for i in range(k)))
        return out
    for p in maximal_flat_paths(g):
        vs = p.vertices
        if 2 <= len(vs) <= max_len + 1:
            out.append(vs)
        elif len(vs) > max_len + 1:
            out.append(vs[: max_len + 1])
    return out


@dataclass
class Recipe:
    """Driving parameters for the seeded composition generator."""

    steps: int = 2
    max_n: int = 14
    catalog: tuple[str, ...] = DEFAULT_CATALOG


def compose_random_berge(seed: int, recipe: Optional[Recipe] = None, budget=None) -> Graph:
    """Seeded random composition of catalog pieces along parity-matched flat
    paths; every intermediate result is brute-force verified Berge, and a
    failed gluing is an error, not a silent skip."""
    recipe = recipe or Recipe()
    rng = random.Random(seed)
    g = _piece(rng.choice(list(recipe.catalog)))
    for _ in range(recipe.steps):
        ports1 = _ports(g, rng)
        if not ports1:
            break
        rng.shuffle(ports1)
        done = False
        for p1 in ports1:
            parity = (len(p1) - 1) % 2
            specs = list(recipe.catalog)
            rng.shuffle(specs)
            for spec in specs:
                piece = _piece(spec)
                ports2 = [
                    p for p in _ports(piece, rng) if (len(p) - 1) % 2 == parity
                ]
                if not ports2:
                    continue
                p2 = rng.choice(ports2)
                if g.n - len(p1) + piece.n - len(p2) > recipe.max_n:
                    continue
                g = compose_on_flat_paths(g, p1, piece, p2, verify=True, budget=budget)
                done = True
                break
            if done:
                break
        if not done:
            break
    return g
