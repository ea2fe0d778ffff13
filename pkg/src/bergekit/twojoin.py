"""2-join machinery: verification, classification (connected, substantial,
proper, path-side, parity, degeneracy, type-1 cutting), search by seeded
refinement, an exhaustive desk-scale oracle, type-2 cutting certificates,
block construction and path-side contraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .graphcore import (
    Budget,
    Graph,
    GraphError,
    _as_budget,
    _components_masks,
    bits,
    build_graph,
    enumerate_induced_antipaths,
    enumerate_induced_paths,
    mask_of,
    maximal_flat_paths,
    set_of,
)


@dataclass(frozen=True)
class TwoJoinSplit:
    """The six-set witness of a 2-join; C1, C2 are derived."""

    X1: frozenset[int]
    X2: frozenset[int]
    A1: frozenset[int]
    B1: frozenset[int]
    A2: frozenset[int]
    B2: frozenset[int]

    @classmethod
    def of(cls, X1, X2, A1, B1, A2, B2) -> "TwoJoinSplit":
        return cls(*(frozenset(s) for s in (X1, X2, A1, B1, A2, B2)))

    @property
    def C1(self) -> frozenset[int]:
        return self.X1 - self.A1 - self.B1

    @property
    def C2(self) -> frozenset[int]:
        return self.X2 - self.A2 - self.B2

    def swapped_sides(self) -> "TwoJoinSplit":
        return TwoJoinSplit(self.X2, self.X1, self.A2, self.B2, self.A1, self.B1)

    def swapped_ab(self) -> "TwoJoinSplit":
        return TwoJoinSplit(self.X1, self.X2, self.B1, self.A1, self.B2, self.A2)

    def sorted_sets(self) -> dict[str, list[int]]:
        return {
            "X1": sorted(self.X1),
            "X2": sorted(self.X2),
            "A1": sorted(self.A1),
            "B1": sorted(self.B1),
            "A2": sorted(self.A2),
            "B2": sorted(self.B2),
        }


@dataclass
class TwoJoinCheck:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_2join(g: Graph, s: TwoJoinSplit) -> TwoJoinCheck:
    """All structural invariants of a 2-join split, with a violation report."""
    rep = TwoJoinCheck(True)
    if s.X1 & s.X2 or (s.X1 | s.X2) != frozenset(range(g.n)):
        rep.violations.append("X1, X2 must partition the vertex set")
    for name, part, side in (
        ("A1", s.A1, s.X1),
        ("B1", s.B1, s.X1),
        ("A2", s.A2, s.X2),
        ("B2", s.B2, s.X2),
    ):
        if not part:
            rep.violations.append(f"{name} must be non-empty")
        if not part <= side:
            rep.violations.append(f"{name} must lie inside its side")
    if s.A1 & s.B1:
        rep.violations.append("A1 and B1 must be disjoint")
    if s.A2 & s.B2:
        rep.violations.append("A2 and B2 must be disjoint")
    if rep.violations:
        rep.ok = False
        return rep

    a1m, b1m, a2m, b2m = (mask_of(x) for x in (s.A1, s.B1, s.A2, s.B2))
    x2m = mask_of(s.X2)
    for v in sorted(s.X1):
        cross = g.adj[v] & x2m
        want = a2m if v in s.A1 else b2m if v in s.B1 else 0
        if cross != want:
            rep.violations.append(
                f"vertex {v} crosses to {sorted(set_of(cross))}, expected "
                f"{sorted(set_of(want))}"
            )
    rep.ok = not rep.violations
    return rep


@dataclass(frozen=True)
class TwoJoinClass:
    connected: bool
    substantial: bool
    proper: bool
    path_side: str  # 'none' | 'X1' | 'X2' | 'both'
    parity: str  # 'odd' | 'even' | 'mixed' | 'undefined'
    degenerate_items: tuple[int, ...]
    cutting1: bool

    @property
    def degenerate(self) -> bool:
        return bool(self.degenerate_items)

    @property
    def non_path(self) -> bool:
        return self.path_side == "none"


def _side_is_path(g: Graph, side: frozenset, A: frozenset, B: frozenset) -> bool:
    """G[side] is a path with one end in A, the other in B, interior in C."""
    if len(side) < 2:
        return False
    sm = mask_of(side)
    degs = {v: (g.adj[v] & sm).bit_count() for v in side}
    ends = [v for v in side if degs[v] <= 1]
    if any(d > 2 for d in degs.values()) or len(ends) != 2:
        return False
    inner_edges = sum(degs.values()) // 2
    if inner_edges != len(side) - 1:
        return False
    if not _is_conn(g, sm):
        return False
    e1, e2 = ends
    if not ((e1 in A and e2 in B) or (e1 in B and e2 in A)):
        return False
    return all(v in side - A - B for v in side if v not in (e1, e2))


def _is_conn(g: Graph, region: int) -> bool:
    if region == 0:
        return True
    comps = _components_masks(g.adj, region)
    return len(comps) == 1


def _is_disconnected(g: Graph, region: int) -> bool:
    return len(_components_masks(g.adj, region)) >= 2


def _shortest_cross_parity(g: Graph, A: frozenset, B: frozenset, C: frozenset):
    """Parity of a shortest A-to-B path with interior in C, or None."""
    am, bm, cm = mask_of(A), mask_of(B), mask_of(C)
    if any(g.adj[a] & bm for a in A):
        return 1  # a direct edge is a path of length 1
    dist = 1
    frontier = 0
    for a in A:
        frontier |= g.adj[a] & cm
    seen = frontier
    while frontier:
        dist += 1
        grow = 0
        for v in bits(frontier):
            grow |= g.adj[v]
        if grow & bm:
            return dist % 2
        frontier = grow & cm & ~seen
        seen |= frontier
    return None


def _is_skew_cutset(g: Graph, B: frozenset) -> bool:
    """B is a skew cutset: G minus B disconnected, G[B] not anticonnected."""
    if not B or len(B) >= g.n:
        return False
    rest = g.full_mask() & ~mask_of(B)
    if len(_components_masks(g.adj, rest)) < 2:
        return False
    full = g.full_mask()
    cadj = [((full & ~g.adj[v]) & ~(1 << v)) for v in range(g.n)]
    return len(_components_masks(cadj, mask_of(B))) >= 2


def classify_2join(g: Graph, s: TwoJoinSplit) -> TwoJoinClass:
    """All the flags the decomposition machinery branches on."""
    x1m, x2m = mask_of(s.X1), mask_of(s.X2)
    a1m, b1m = mask_of(s.A1), mask_of(s.B1)
    a2m, b2m = mask_of(s.A2), mask_of(s.B2)

    connected = True
    for sidem, am, bm in ((x1m, a1m, b1m), (x2m, a2m, b2m)):
        for comp in _components_masks(g.adj, sidem):
            if not (comp & am) or not (comp & bm):
                connected = False

    substantial = True
    for side, A, B in ((s.X1, s.A1, s.B1), (s.X2, s.A2, s.B2)):
        if len(side) < 3:
            substantial = False
        elif len(side) == 3 and _side_is_path(g, side, A, B):
            substantial = False

    sides = []
    if _side_is_path(g, s.X1, s.A1, s.B1):
        sides.append("X1")
    if _side_is_path(g, s.X2, s.A2, s.B2):
        sides.append("X2")
    path_side = "both" if len(sides) == 2 else (sides[0] if sides else "none")

    if connected:
        p1 = _shortest_cross_parity(g, s.A1, s.B1, s.C1)
        p2 = _shortest_cross_parity(g, s.A2, s.B2, s.C2)
        if p1 is None or p2 is None:
            parity = "undefined"
        elif p1 == p2:
            parity = "odd" if p1 == 1 else "even"
        else:
            parity = "mixed"
    else:
        parity = "undefined"

    items = []
    for A, B, sidem in ((s.A1, s.B1, x1m), (s.A2, s.B2, x2m)):
        am, bm = mask_of(A), mask_of(B)
        if any(not (g.adj[v] & (sidem & ~am)) for v in A) or any(
            not (g.adj[v] & (sidem & ~bm)) for v in B
        ):
            items.append(1)
            break
    if _is_skew_cutset(g, s.A1 | s.A2) or _is_skew_cutset(g, s.B1 | s.B2):
        items.append(2)
    if not connected:
        items.append(3)
    for A, B in ((s.A1, s.B1), (s.A2, s.B2)):
        am, bm = mask_of(A), mask_of(B)
        if any((g.adj[v] & bm) == bm for v in A) or any(
            (g.adj[v] & am) == am for v in B
        ):
            items.append(4)
            break
    for side, A, B in ((s.X1, s.A1, s.B1), (s.X2, s.A2, s.B2)):
        abm = mask_of(A | B)
        if any((g.adj[v] & abm) == abm for v in side - A - B):
            items.append(5)
            break

    cutting1 = False
    for p in ("X1", "X2"):
        if path_side in (p, "both"):
            o = s if p == "X1" else s.swapped_sides()
            xom = mask_of(o.X2)
            if _is_disconnected(g, xom & ~mask_of(o.A2)) or _is_disconnected(
                g, xom & ~mask_of(o.B2)
            ):
                cutting1 = True

    return TwoJoinClass(
        connected,
        substantial,
        connected and substantial,
        path_side,
        parity,
        tuple(sorted(set(items))),
        cutting1,
    )


# -- finding 2-joins -----------------------------------------------------


def split_from_path(g: Graph, path_vertices: Iterable[int]) -> Optional[TwoJoinSplit]:
    """Candidate split with X1 = the given induced path, or None if the
    cross-edge structure is not a 2-join."""
    vs = tuple(path_vertices)
    if len(vs) < 2:
        return None
    X1 = frozenset(vs)
    a, b = vs[0], vs[-1]
    x1m = mask_of(X1)
    A2 = set_of(g.adj[a] & ~x1m)
    B2 = set_of(g.adj[b] & ~x1m)
    X2 = frozenset(range(g.n)) - X1
    if not A2 or not B2 or A2 & B2:
        return None
    s = TwoJoinSplit(X1, X2, frozenset((a,)), frozenset((b,)), A2, B2)
    return s if verify_2join(g, s).ok else None


def _canon_partition_key(g: Graph, s: TwoJoinSplit) -> tuple:
    return (min(mask_of(s.X1), mask_of(s.X2)),)


def find_path_2joins(g: Graph) -> list[tuple[TwoJoinSplit, TwoJoinClass]]:
    """Path 2-joins whose path-side is a maximal flat path of length >= 3;
    for a graph that is itself a hole, every arc cut with both arcs of at
    least 4 vertices.  Splits are verified and come with classification."""
    found: list[tuple[TwoJoinSplit, TwoJoinClass]] = []
    seen: set[tuple] = set()

    def push(s: Optional[TwoJoinSplit]):
        if s is None:
            return
        key = _canon_partition_key(g, s)
        if key in seen:
            return
        seen.add(key)
        found.append((s, classify_2join(g, s)))

    if g.n >= 8 and all(g.degree(v) == 2 for v in range(g.n)) and _is_conn(
        g, g.full_mask()
    ):
        # the whole graph is a hole: walk it once, take every arc
        order = [0]
        prev = -1
        while len(order) < g.n:
            nxt = [w for w in g.neighbors(order[-1]) if w != prev]
            prev = order[-1]
            order.append(nxt[0])
        for start in range(g.n):
            for k in range(4, g.n - 3):
                arc = [order[(start + i) % g.n] for i in range(k)]
                push(split_from_path(g, arc))
        return found

    for p in maximal_flat_paths(g):
        if p.length >= 3:
            push(split_from_path(g, p.vertices))
    return found


def _least_fixpoint(g: Graph, a1: int, b1: int, seed: int) -> Optional[int]:
    """Grow seed into the smallest X2-mask such that X1 = V - X2 has a valid
    class structure with a1 in A1, b1 in B1; None when forced to swallow a1
    or b1, or when the corner classes collide."""
    adj = g.adj
    full = g.full_mask()
    pinned = (1 << a1) | (1 << b1)
    x2 = seed
    while True:
        A2 = adj[a1] & x2
        B2 = adj[b1] & x2
        if A2 & B2 or not A2 or not B2:
            return None
        moved = 0
        for v in bits(full & ~x2):
            t = adj[v] & x2
            if t and t != A2 and t != B2:
                moved |= 1 << v
        if moved & pinned:
            return None
        if not moved:
            return x2
        x2 |= moved


def _split_of_fixpoint(g: Graph, a1: int, b1: int, x2: int) -> TwoJoinSplit:
    adj = g.adj
    A2 = adj[a1] & x2
    B2 = adj[b1] & x2
    x1 = g.full_mask() & ~x2
    A1 = 0
    B1 = 0
    for v in bits(x1):
        t = adj[v] & x2
        if t == A2:
            A1 |= 1 << v
        elif t == B2:
            B1 |= 1 << v
    return TwoJoinSplit(
        set_of(x1), set_of(x2), set_of(A1), set_of(B1), set_of(A2), set_of(B2)
    )


def seeded_2join_search(
    g: Graph,
    accept: Callable[[TwoJoinSplit, TwoJoinClass], bool],
    depth: int = 3,
) -> Optional[tuple[TwoJoinSplit, TwoJoinClass]]:
    """Deterministic least-seed search for a 2-join passing ``accept``.

    Seeds are ordered pairs of disjoint edges (a1-a2, b1-b2) pinning a1, b1
    on side 1.  Each seed grows to its least fixpoint; when that candidate is
    rejected, single extra vertices are forced into side 2 and regrown, up to
    ``depth`` forcing stages.  Completeness is gated by oracle equivalence
    tests at desk scale, not claimed a priori.
    """
    edges = g.edges()
    adj = g.adj
    full = g.full_mask()

    def seeds():
        for i, (u1, u2) in enumerate(edges):
            for v1, v2 in edges[i + 1 :]:
                if len({u1, u2, v1, v2}) != 4:
                    continue
                for a1, a2 in ((u1, u2), (u2, u1)):
                    for b1, b2 in ((v1, v2), (v2, v1)):
                        yield a1, b1, (1 << a2) | (1 << b2)

    # staged iterative deepening: single fixpoints over every seed first,
    # then chains of forced extra vertices.  At a stalled fixpoint every
    # leftover vertex looks like a legitimate A1/B1/C1 member (that is what
    # stalling means), so extensions have to branch over all of them.
    tested: set[tuple[int, int, int]] = set()

    def consider(a1, b1, x2mask, levels):
        fx = _least_fixpoint(g, a1, b1, x2mask)
        if fx is None:
            return None
        key = (a1, b1, fx)
        if key in tested:
            return None if levels <= 1 else _extend(a1, b1, fx, levels)
        tested.add(key)
        s = _split_of_fixpoint(g, a1, b1, fx)
        cls = classify_2join(g, s)
        if accept(s, cls):
            return s, cls
        return _extend(a1, b1, fx, levels) if levels >= 2 else None

    def _extend(a1, b1, fx, levels):
        A2 = adj[a1] & fx
        B2 = adj[b1] & fx
        room = 0
        for v in bits(full & ~fx & ~(1 << a1) & ~(1 << b1)):
            t = adj[v] & fx
            if t == A2 or t == B2 or not t:
                room |= 1 << v
        for w in bits(room):
            got = consider(a1, b1, fx | (1 << w), levels - 1)
            if got is not None:
                return got
        return None

    for stage in range(1, depth + 1):
        tested.clear()
        for a1, b1, seed in seeds():
            got = consider(a1, b1, seed, stage)
            if got is not None:
                return got
    return None


def find_nonpath_proper_2join(
    g: Graph, depth: int = 3
) -> Optional[tuple[TwoJoinSplit, TwoJoinClass]]:
    """A proper non-path 2-join, or None; validated against the oracle."""
    return seeded_2join_search(
        g, lambda s, c: c.proper and c.path_side == "none", depth=depth
    )


def find_substantial_2join(
    g: Graph, nonpath_only: bool = False, depth: int = 3
) -> Optional[tuple[TwoJoinSplit, TwoJoinClass]]:
    """A substantial 2-join, preferring the seeded search; used by the
    decomposition tree.  With ``nonpath_only`` the accept test insists the
    candidate is non-path."""
    if nonpath_only:
        return seeded_2join_search(
            g, lambda s, c: c.substantial and c.path_side == "none", depth=depth
        )
    got = seeded_2join_search(g, lambda s, c: c.substantial, depth=depth)
    if got is not None:
        return got
    for s, c in find_path_2joins(g):
        if c.substantial:
            return s, c
    return None


def bruteforce_2join_oracle(
    g: Graph, size_guard: int = 12, classify: bool = True
) -> list:
    """Every 2-join of g up to side swap, by exhausting bipartitions.

    A partition is a 2-join iff its crossing edges split into exactly two
    vertex-disjoint complete-bipartite bundles; the split is then unique up
    to naming.  Returns (split, classification) pairs, or bare splits with
    ``classify=False``.
    """
    if g.n > size_guard:
        raise GraphError(f"oracle refuses n={g.n} > guard={size_guard}")
    out = []
    full = g.full_mask()
    adj = g.adj
    for x2 in range(1, 1 << (g.n - 1)):
        # vertex 0 stays on side 1, which kills the side-swap duplicate
        x1 = full & ~x2
        classes: dict[int, int] = {}
        ok = True
        m = x1
        while m:
            low = m & -m
            m ^= low
            t = adj[low.bit_length() - 1] & x2
            if t:
                classes[t] = classes.get(t, 0) | low
                if len(classes) > 2:
                    ok = False
                    break
        if not ok or len(classes) != 2:
            continue
        (ma, va), (mb, vb) = sorted(classes.items(), key=lambda kv: kv[1] & -kv[1])
        if ma & mb:
            continue
        s = TwoJoinSplit(
            set_of(x1), set_of(x2), set_of(va), set_of(vb), set_of(ma), set_of(mb)
        )
        out.append((s, classify_2join(g, s)) if classify else s)
    return out


# -- cutting 2-joins of type 2 ------------------------------------------


@dataclass
class CuttingType2Report:
    verdict: Optional[bool]  # None when a budget died mid-check
    failed_items: list[int] = field(default_factory=list)
    complete: bool = True

    def __bool__(self):
        return bool(self.verdict)


def verify_cutting_type2(
    g: Graph,
    s: TwoJoinSplit,
    A3: Iterable[int],
    B3: Iterable[int],
    items_1_to_5_only: bool = False,
    budget=None,
) -> CuttingType2Report:
    """Item-by-item check of the type-2 cutting definition for a path 2-join
    with path-side X1 and candidate sets A3 inside A2, B3 inside B2."""
    bud = _as_budget(budget)
    rep = CuttingType2Report(True)
    A3, B3 = frozenset(A3), frozenset(B3)

    cls = classify_2join(g, s)
    if not verify_2join(g, s).ok or cls.path_side not in ("X1", "both"):
        rep.failed_items.append(1)
    if not A3 or not B3 or not A3 <= s.A2 or not B3 <= s.B2:
        rep.failed_items.append(2)
        rep.verdict = False
        return rep
    b3m = mask_of(B3)
    if any((g.adj[a] & b3m) != b3m for a in A3):
        rep.failed_items.append(3)

    a1 = min(s.A1)
    b1 = min(s.B1)
    for S in (B3 | {a1}, A3 | {b1}):
        rest = frozenset(range(g.n)) - S
        paths = enumerate_induced_paths(
            g, S, rest, parity="odd", min_length=2, budget=bud
        )
        if paths.paths:
            rep.failed_items.append(4)
        if not paths.complete:
            rep.complete = False
        anti = enumerate_induced_antipaths(
            g, rest, S, parity="odd", min_length=2, budget=bud
        )
        if anti.paths:
            rep.failed_items.append(5)
        if not anti.complete:
            rep.complete = False

    if not items_1_to_5_only:
        outside = g.full_mask() & ~mask_of(s.X1 | A3 | B3)
        if not _is_disconnected(g, outside):
            rep.failed_items.append(6)

    rep.failed_items = sorted(set(rep.failed_items))
    if rep.failed_items:
        rep.verdict = False
    elif not rep.complete:
        rep.verdict = None
    return rep


def refute_cutting_type2(
    g: Graph,
    s: TwoJoinSplit,
    certificates: Iterable[tuple[Iterable[int], Iterable[int]]] = (),
    exhaustive_guard: int = 1 << 18,
) -> tuple[bool, bool]:
    """(is_cutting_type2, decided).  Supplied certificates are checked
    first; if the candidate space 2^(|A2|+|B2|) fits under the guard it is
    exhausted, which fully decides the question at desk scale."""
    for a3, b3 in certificates:
        rep = verify_cutting_type2(g, s, a3, b3)
        if rep.verdict:
            return True, True
    space = 1 << (len(s.A2) + len(s.B2))
    if space > exhaustive_guard:
        return False, False
    a2s, b2s = sorted(s.A2), sorted(s.B2)
    undecided = False
    for am in range(1, 1 << len(a2s)):
        A3 = [a2s[i] for i in range(len(a2s)) if am >> i & 1]
        for bm in range(1, 1 << len(b2s)):
            B3 = [b2s[i] for i in range(len(b2s)) if bm >> i & 1]
            rep = verify_cutting_type2(g, s, A3, B3)
            if rep.verdict:
                return True, True
            if rep.verdict is None:
                undecided = True
    return False, not undecided


# -- blocks and contraction ----------------------------------------------


@dataclass(frozen=True)
class Block:
    """One block of a 2-join: the kept side plus a replacement flat path."""

    graph: Graph
    old_of_new: tuple[Optional[int], ...]  # original vertex, None for new ones
    path: tuple[int, ...]  # replacement path, A-end first, in new indices


def _replacement_length(path_like: bool, parity: str) -> int:
    if parity not in ("odd", "even"):
        raise GraphError(f"block construction needs a definite parity, got {parity}")
    if parity == "odd":
        return 1 if path_like else 3
    return 2 if path_like else 4


def _build_one_block(
    g: Graph, keep: frozenset, A: frozenset, B: frozenset, length: int
) -> Block:
    kept = sorted(keep)
    pos = {v: i for i, v in enumerate(kept)}
    edges = [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos]
    base = len(kept)
    path = tuple(range(base, base + length + 1))
    for i in range(length):
        edges.append((path[i], path[i + 1]))
    edges += [(path[0], pos[a]) for a in A]
    edges += [(path[-1], pos[b]) for b in B]
    graph = build_graph(base + length + 1, edges)
    return Block(graph, tuple(kept) + (None,) * (length + 1), path)


def build_blocks(g: Graph, s: TwoJoinSplit) -> tuple[Block, Block]:
    """Blocks G1, G2 of a proper 2-join: each side kept intact, the other
    side replaced by a parity-matched flat path (length 1-2 when the replaced
    side is the path-side of a path 2-join, 3-4 otherwise; the shorter
    admissible length is used)."""
    cls = classify_2join(g, s)
    if not cls.proper:
        raise GraphError("blocks are only defined for proper 2-joins")
    len2 = _replacement_length(cls.path_side in ("X2", "both"), cls.parity)
    len1 = _replacement_length(cls.path_side in ("X1", "both"), cls.parity)
    g1 = _build_one_block(g, s.X1, s.A1, s.B1, len2)
    g2 = _build_one_block(g, s.X2, s.A2, s.B2, len1)
    return g1, g2


def contract_path_side(g: Graph, s: TwoJoinSplit) -> tuple[Graph, tuple[Optional[int], ...]]:
    """Delete the interior of the path-side and rejoin its ends by a path of
    length 1 (odd 2-join) or 2 (even); this is block G2 up to naming."""
    cls = classify_2join(g, s)
    if not cls.proper or cls.path_side not in ("X1", "both"):
        raise GraphError("contraction needs a proper path 2-join with path-side X1")
    a1, b1 = min(s.A1), min(s.B1)
    keep = sorted((s.X2 | {a1, b1}))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos]
    n = len(keep)
    old_of_new: tuple[Optional[int], ...] = tuple(keep)
    if cls.parity == "odd":
        edges.append((pos[a1], pos[b1]))
    else:
        edges.append((pos[a1], n))
        edges.append((n, pos[b1]))
        old_of_new = old_of_new + (None,)
        n += 1
    return build_graph(n, edges), old_of_new
