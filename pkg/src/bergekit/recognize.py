"""Recognizers and certificate checkers for the basic graph classes and the
structural configurations used by the decomposition machinery: bipartite and
cobipartite graphs, line graphs of bipartite graphs (via the no-odd-hole /
no-claw / no-diamond characterization), double split graphs (via degrees),
and the homogeneous pair / homogeneous 2-join verifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graphcore import (
    Budget,
    Graph,
    GraphError,
    InducedPath,
    bits,
    components,
    find_odd_induced_path,
    mask_of,
    maximal_flat_paths,
    set_of,
    _as_budget,
)


# -- bipartiteness -----------------------------------------------------


@dataclass(frozen=True)
class BipartiteCheck:
    coloring: Optional[tuple[int, ...]]  # 0/1 per vertex when bipartite
    odd_cycle: Optional[tuple[int, ...]]

    @property
    def bipartite(self) -> bool:
        return self.coloring is not None


def is_bipartite(g: Graph) -> BipartiteCheck:
    """Proper 2-coloring, or an odd closed-walk witness extracted from BFS."""
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            x = queue.pop(0)
            for y in g.neighbors(x):
                if color[y] == -1:
                    color[y] = color[x] ^ 1
                    parent[y] = x
                    queue.append(y)
                elif color[y] == color[x]:
                    # walk both vertices up to their meeting point
                    ax, ay = [x], [y]
                    seen = {x: 0}
                    cur = x
                    while parent[cur] != -1:
                        cur = parent[cur]
                        seen[cur] = len(ax)
                        ax.append(cur)
                    cur = y
                    while cur not in seen:
                        cur = parent[cur]
                        ay.append(cur)
                    cycle = ax[: seen[cur] + 1] + list(reversed(ay[:-1]))
                    return BipartiteCheck(None, tuple(cycle))
    return BipartiteCheck(tuple(color), None)


# -- forbidden little subgraphs ----------------------------------------


def find_claw(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """(center, leaf, leaf, leaf) inducing K_{1,3}, or None."""
    for v in range(g.n):
        nb = list(g.neighbors(v))
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                if g.has_edge(nb[i], nb[j]):
                    continue
                for k in range(j + 1, len(nb)):
                    if not g.has_edge(nb[i], nb[k]) and not g.has_edge(nb[j], nb[k]):
                        return (v, nb[i], nb[j], nb[k])
    return None


def find_diamond(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """(a, b, c, d) inducing K4 minus the edge cd, or None."""
    for c in range(g.n):
        for d in range(c + 1, g.n):
            if g.has_edge(c, d):
                continue
            common = g.adj[c] & g.adj[d]
            cl = list(bits(common))
            for i in range(len(cl)):
                for j in range(i + 1, len(cl)):
                    if g.has_edge(cl[i], cl[j]):
                        return (cl[i], cl[j], c, d)
    return None


# -- odd holes and Berge-ness ------------------------------------------


@dataclass(frozen=True)
class HoleSearch:
    hole: Optional[tuple[int, ...]]
    complete: bool

    @property
    def found(self) -> bool:
        return self.hole is not None


def find_odd_hole_bruteforce(g: Graph, budget=None) -> HoleSearch:
    """First odd induced cycle of length >= 5, anchored at its smallest
    vertex; budget exhaustion is reported, never silently truncated."""
    bud = _as_budget(budget)
    full = g.full_mask()
    for v0 in range(g.n):
        above = full & ~((1 << (v0 + 1)) - 1)
        nb = [w for w in g.neighbors(v0) if w > v0]
        region = above & ~g.adj[v0]
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                a, b = nb[i], nb[j]
                if g.has_edge(a, b):
                    continue
                found = find_odd_induced_path(
                    g, a, b, budget=bud, interior_in=set_of(region)
                )
                if found.path is not None:
                    return HoleSearch((v0,) + found.path.vertices, True)
                if not found.complete:
                    return HoleSearch(None, False)
    return HoleSearch(None, True)


@dataclass(frozen=True)
class BergeCheck:
    berge: Optional[bool]  # None when the budget died first
    witness_kind: Optional[str]  # 'odd_hole' | 'odd_antihole'
    witness: Optional[tuple[int, ...]]
    complete: bool


def is_berge_bruteforce(g: Graph, budget=None) -> BergeCheck:
    """Berge iff neither g nor its complement has an odd hole."""
    bud = _as_budget(budget)
    h = find_odd_hole_bruteforce(g, bud)
    if h.found:
        return BergeCheck(False, "odd_hole", h.hole, True)
    if not h.complete:
        return BergeCheck(None, None, None, False)
    ah = find_odd_hole_bruteforce(g.complement(), bud)
    if ah.found:
        return BergeCheck(False, "odd_antihole", ah.hole, True)
    if not ah.complete:
        return BergeCheck(None, None, None, False)
    return BergeCheck(True, None, None, True)


@dataclass(frozen=True)
class LineOfBipartiteCheck:
    verdict: Optional[bool]
    reason: Optional[str]  # 'claw' | 'diamond' | 'odd_hole' on failure
    witness: Optional[tuple[int, ...]]
    complete: bool


def is_line_of_bipartite(g: Graph, budget=None) -> LineOfBipartiteCheck:
    """True iff g has no odd hole, no claw and no diamond."""
    claw = find_claw(g)
    if claw is not None:
        return LineOfBipartiteCheck(False, "claw", claw, True)
    diamond = find_diamond(g)
    if diamond is not None:
        return LineOfBipartiteCheck(False, "diamond", diamond, True)
    hole = find_odd_hole_bruteforce(g, budget)
    if hole.found:
        return LineOfBipartiteCheck(False, "odd_hole", hole.hole, True)
    if not hole.complete:
        return LineOfBipartiteCheck(None, None, None, False)
    return LineOfBipartiteCheck(True, None, None, True)


# -- double split graphs -----------------------------------------------


@dataclass(frozen=True)
class DoubleSplitResult:
    found: bool
    reason: Optional[str] = None
    matching_pairs: tuple[tuple[int, int], ...] = ()
    antimatching_pairs: tuple[tuple[int, int], ...] = ()
    m: int = 0
    n: int = 0

    @property
    def partition(self) -> Optional[tuple[frozenset, frozenset, frozenset, frozenset]]:
        if not self.found:
            return None
        return (
            frozenset(p[0] for p in self.matching_pairs),
            frozenset(p[1] for p in self.matching_pairs),
            frozenset(p[0] for p in self.antimatching_pairs),
            frozenset(p[1] for p in self.antimatching_pairs),
        )


def _try_double_split(g: Graph, match_side: list[int]) -> DoubleSplitResult:
    other = [v for v in range(g.n) if v not in set(match_side)]
    mside = mask_of(match_side)
    oside = mask_of(other)
    if len(match_side) % 2 or len(other) % 2:
        return DoubleSplitResult(False, "odd side size")
    m, n = len(match_side) // 2, len(other) // 2
    if m < 2 or n < 2:
        return DoubleSplitResult(False, "needs m >= 2 and n >= 2")

    matching = []
    for x in match_side:
        inside = g.adj[x] & mside
        if inside.bit_count() != 1:
            return DoubleSplitResult(False, "matching side is not a perfect matching")
        y = inside.bit_length() - 1
        if x < y:
            matching.append((x, y))

    antimatching = []
    for u in other:
        nonnbrs = oside & ~g.adj[u] & ~(1 << u)
        if nonnbrs.bit_count() != 1:
            return DoubleSplitResult(
                False, "other side is not the complement of a perfect matching"
            )
        v = nonnbrs.bit_length() - 1
        if u < v:
            antimatching.append((u, v))

    for x, y in matching:
        for u, v in antimatching:
            cross = [g.has_edge(x, u), g.has_edge(x, v), g.has_edge(y, u), g.has_edge(y, v)]
            if sum(cross) != 2 or not (
                (cross[0] and cross[3] and not cross[1] and not cross[2])
                or (cross[1] and cross[2] and not cross[0] and not cross[3])
            ):
                return DoubleSplitResult(False, "P4 check fails for some pair of pairs")

    return DoubleSplitResult(
        True, None, tuple(matching), tuple(antimatching), m, n
    )


def is_double_split(g: Graph) -> DoubleSplitResult:
    """Degree-driven recognition: the matching side has the strictly smaller
    degree in a genuine double split graph, but on ambiguous inputs both
    candidate splits are tried."""
    if g.n < 8:
        return DoubleSplitResult(False, "too small: needs at least 8 vertices")
    degs = sorted({g.degree(v) for v in range(g.n)})
    if len(degs) > 2:
        return DoubleSplitResult(False, "more than two distinct degrees")
    candidates = []
    if len(degs) == 2:
        low = [v for v in range(g.n) if g.degree(v) == degs[0]]
        high = [v for v in range(g.n) if g.degree(v) == degs[1]]
        candidates = [low, high]
    else:
        # regular graph: a genuine double split has two degree values, but
        # try every bipartition? no: the matching side is characterized by
        # having exactly one neighbour inside itself; a regular graph cannot
        # satisfy 1 + n = 2n - 2 + m with m, n >= 2.
        return DoubleSplitResult(False, "regular graph cannot be a double split")
    last = None
    for side in candidates:
        res = _try_double_split(g, side)
        if res.found:
            # the degree formulas 1+n and 2n-2+m must hold exactly
            msk = {v for p in res.matching_pairs for v in p}
            for v in range(g.n):
                want = 1 + res.n if v in msk else 2 * res.n - 2 + res.m
                if g.degree(v) != want:
                    return DoubleSplitResult(False, "degree formula violated")
            return res
        last = res
    return last


# -- the basic verdict --------------------------------------------------


@dataclass(frozen=True)
class BasicVerdict:
    klass: str  # bipartite | cobipartite | line_of_bipartite |
    # co_line_of_bipartite | double_split | none
    witness: object = None
    complete: bool = True

    @property
    def is_basic(self) -> bool:
        return self.klass != "none"


def is_basic(g: Graph, budget=None) -> BasicVerdict:
    """First matching class in the fixed order bipartite, cobipartite,
    line-of-bipartite, co-line-of-bipartite, double split."""
    bud = _as_budget(budget)
    bc = is_bipartite(g)
    if bc.bipartite:
        return BasicVerdict("bipartite", bc.coloring)
    cc = is_bipartite(g.complement())
    if cc.bipartite:
        return BasicVerdict("cobipartite", cc.coloring)
    incomplete = False
    lg = is_line_of_bipartite(g, bud)
    if lg.verdict:
        return BasicVerdict("line_of_bipartite")
    incomplete |= not lg.complete
    clg = is_line_of_bipartite(g.complement(), bud)
    if clg.verdict:
        return BasicVerdict("co_line_of_bipartite")
    incomplete |= not clg.complete
    ds = is_double_split(g)
    if ds.found:
        return BasicVerdict("double_split", ds)
    return BasicVerdict("none", None, complete=not incomplete)


# -- path-double split and path-cobipartite verifiers -------------------


@dataclass
class VerifyReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _check_partition(g: Graph, parts: list[Iterable[int]], allow_empty=()):
    sets = [frozenset(p) for p in parts]
    seen: set[int] = set()
    for i, s in enumerate(sets):
        if not s and i not in allow_empty:
            raise GraphError(f"part {i} must be non-empty")
        if s & seen:
            raise GraphError("parts must be disjoint")
        if any(not 0 <= v < g.n for v in s):
            raise GraphError("part mentions out-of-range vertices")
        seen |= s
    if len(seen) != g.n:
        raise GraphError("parts must cover every vertex")
    return sets


def _chains_through(g: Graph, E: frozenset[int]) -> Optional[list[list[int]]]:
    """Split E into chains of degree-2 vertices; each chain is returned with
    its two outside attachments prepended/appended.  None if some vertex of
    E has degree != 2 or a chain closes on itself."""
    for v in E:
        if g.degree(v) != 2:
            return None
    chains = []
    left = set(E)
    while left:
        v = min(left)
        chain = [v]
        left.discard(v)
        for _ in range(2):
            # grow at the current tail
            while True:
                tail = chain[-1]
                ext = [w for w in g.neighbors(tail) if w in left]
                if not ext:
                    break
                chain.append(ext[0])
                left.discard(ext[0])
            chain.reverse()
        a = [w for w in g.neighbors(chain[0]) if w not in chain]
        b = [w for w in g.neighbors(chain[-1]) if w not in chain]
        if len(chain) == 1:
            outs = sorted(g.neighbors(chain[0]))
            if len(outs) != 2:
                return None
            a, b = [outs[0]], [outs[1]]
        if len(a) != 1 or len(b) != 1:
            return None  # chain closes a cycle or attaches twice to one spot
        chains.append([a[0]] + chain + [b[0]])
    return chains


def verify_path_double_split(g: Graph, A, B, C, D, E) -> VerifyReport:
    """Check the four defining clauses of a path-double split partition."""
    A, B, C, D, E = _check_partition(g, [A, B, C, D, E], allow_empty=(4,))
    rep = VerifyReport(True)
    if len(A) != len(B) or len(A) < 2:
        rep.violations.append("A and B must have equal size m >= 2")
    if len(C) != len(D) or len(C) < 2:
        rep.violations.append("C and D must have equal size n >= 2")

    # matching side: each a in A reaches exactly one b in B by a unique odd
    # path with interior in E, and E is exhausted by those paths
    partner: dict[int, int] = {}
    strands: dict[int, list[tuple[int, int]]] = {a: [] for a in A}
    for a in A:
        for b in bits(g.adj[a] & mask_of(B)):
            strands[a].append((b, 1))
    chains = _chains_through(g, E)
    if chains is None:
        rep.violations.append("every vertex of E must have degree 2 on an open chain")
        chains = []
    for ch in chains:
        x, y = ch[0], ch[-1]
        length = len(ch) - 1
        if x in A and y in B:
            strands[x].append((y, length))
        elif y in A and x in B:
            strands[y].append((x, length))
        else:
            rep.violations.append(
                f"chain through E attaches to {x} and {y}, not to one of A and one of B"
            )
    for a in A:
        odd = [(b, L) for b, L in strands[a] if L % 2 == 1]
        if len(odd) != 1:
            rep.violations.append(
                f"vertex {a} has {len(odd)} odd paths to B with interior in E, wants 1"
            )
            continue
        if len(odd) != len(strands[a]):
            rep.violations.append(f"vertex {a} has an even path to B through E")
        partner[a] = odd[0][0]
    if len(set(partner.values())) != len(partner) or (
        len(partner) == len(A) and set(partner.values()) != B
    ):
        rep.violations.append("odd paths do not pair A with B bijectively")

    # no edges between distinct pairs {a_i, b_i}, {a_i', b_i'}
    for a, b in partner.items():
        for a2, b2 in partner.items():
            if a < a2:
                for u in (a, b):
                    for v in (a2, b2):
                        if g.has_edge(u, v):
                            rep.violations.append(
                                f"edge {u}-{v} joins two distinct matching pairs"
                            )

    # C/D side: complement of a perfect matching pairing C with D
    cd = C | D
    cdm = mask_of(cd)
    dpartner: dict[int, int] = {}
    for c in sorted(cd):
        non = cdm & ~g.adj[c] & ~(1 << c)
        if non.bit_count() != 1:
            rep.violations.append(f"vertex {c} must miss exactly one vertex of C+D")
            continue
        d = non.bit_length() - 1
        if (c in C) == (d in C):
            rep.violations.append(f"the non-neighbor of {c} must lie on the other side")
            continue
        if c in C:
            dpartner[c] = d
    if len(dpartner) == len(C) and set(dpartner.values()) != D:
        rep.violations.append("non-neighbors do not pair C with D bijectively")

    # cross edges: exactly two disjoint edges per pair of pairs
    for a, b in partner.items():
        for c, d in dpartner.items():
            cross = [g.has_edge(a, c), g.has_edge(a, d), g.has_edge(b, c), g.has_edge(b, d)]
            ok = (cross[0] and cross[3] and not cross[1] and not cross[2]) or (
                cross[1] and cross[2] and not cross[0] and not cross[3]
            )
            if not ok:
                rep.violations.append(
                    f"pairs ({a},{b}) and ({c},{d}) lack two disjoint cross edges"
                )

    # E must not see C or D
    for e in E:
        if g.adj[e] & cdm:
            rep.violations.append(f"vertex {e} of E has a neighbor in C+D")

    rep.ok = not rep.violations
    return rep


def verify_path_cobipartite(g: Graph, A, B, P) -> VerifyReport:
    """A and B non-empty cliques; P holds degree-2 vertices on unique odd
    paths joining A to B whose A-end sees only A+P and B-end only B+P."""
    A, B, P = _check_partition(g, [A, B, P], allow_empty=(2,))
    rep = VerifyReport(True)
    for name, S in (("A", A), ("B", B)):
        for u in S:
            for v in S:
                if u < v and not g.has_edge(u, v):
                    rep.violations.append(f"{name} is not a clique: {u} misses {v}")
    chains = _chains_through(g, P)
    if chains is None:
        rep.violations.append("every vertex of P must have degree 2 on an open chain")
        chains = []
    for ch in chains:
        x, y = ch[0], ch[-1]
        if not ((x in A and y in B) or (x in B and y in A)):
            rep.violations.append(f"path through P joins {x} and {y}, not A to B")
            continue
        a, b = (x, y) if x in A else (y, x)
        if (len(ch) - 1) % 2 == 0:
            rep.violations.append(f"path {a}..{b} through P has even length")
        if g.has_edge(a, b):
            rep.violations.append(f"chord {a}-{b} makes the subdivided path non-induced")
        if g.adj[a] & mask_of(B):
            rep.violations.append(f"end {a} has a neighbor in B")
        if g.adj[b] & mask_of(A):
            rep.violations.append(f"end {b} has a neighbor in A")
    rep.ok = not rep.violations
    return rep


# -- homogeneous pairs and homogeneous 2-joins --------------------------


@dataclass(frozen=True)
class SixTuple:
    """The six disjoint non-empty classes of a homogeneous pair."""

    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]
    E: frozenset[int]
    F: frozenset[int]

    @classmethod
    def of(cls, A, B, C, D, E, F) -> "SixTuple":
        return cls(*(frozenset(s) for s in (A, B, C, D, E, F)))

    def parts(self):
        return (self.A, self.B, self.C, self.D, self.E, self.F)


def _complete(g: Graph, X: frozenset, Y: frozenset) -> bool:
    ym = mask_of(Y)
    return all((g.adj[x] & ym) == ym for x in X)


def _anticomplete(g: Graph, X: frozenset, Y: frozenset) -> bool:
    ym = mask_of(Y)
    return all(not (g.adj[x] & ym) for x in X)


def verify_homogeneous_pair(g: Graph, t: SixTuple) -> VerifyReport:
    _check_partition(g, list(t.parts()))
    rep = VerifyReport(True)
    bm, am = mask_of(t.B), mask_of(t.A)
    for a in t.A:
        if not (g.adj[a] & bm) or (g.adj[a] & bm) == bm:
            rep.violations.append(f"{a} in A lacks a neighbor or non-neighbor in B")
    for b in t.B:
        if not (g.adj[b] & am) or (g.adj[b] & am) == am:
            rep.violations.append(f"{b} in B lacks a neighbor or non-neighbor in A")
    for name, X, Y in (
        ("(C,A)", t.C, t.A),
        ("(A,F)", t.A, t.F),
        ("(F,B)", t.F, t.B),
        ("(B,D)", t.B, t.D),
    ):
        if not _complete(g, X, Y):
            rep.violations.append(f"pair {name} is not complete")
    for name, X, Y in (
        ("(D,A)", t.D, t.A),
        ("(A,E)", t.A, t.E),
        ("(E,B)", t.E, t.B),
        ("(B,C)", t.B, t.C),
    ):
        if not _anticomplete(g, X, Y):
            rep.violations.append(f"pair {name} is not anticomplete")
    rep.ok = not rep.violations
    return rep


@dataclass
class HomogeneousTwoJoinReport:
    ok: bool
    noncutting_status: str  # 'verified' | 'refuted' | 'not_refuted'
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_homogeneous_2join(
    g: Graph,
    t: SixTuple,
    type2_certificates: Iterable[tuple[Iterable[int], Iterable[int]]] = (),
    exhaustive_guard: int = 1 << 18,
) -> HomogeneousTwoJoinReport:
    """Homogeneous pair + degree-2 odd flat paths from C to D through E, each
    the path-side of a proper 2-join that is not cutting of type 1.

    Type-2 cuttingness cannot be decided in general; the outcome for that
    clause is three-valued.  Supplied certificates (A3, B3) are checked, and
    when the candidate space is small enough it is exhausted, upgrading
    "not refuted" to "verified".
    """
    from . import twojoin  # local import; twojoin depends on this module's types

    hp = verify_homogeneous_pair(g, t)
    rep = HomogeneousTwoJoinReport(hp.ok, "not_refuted", list(hp.violations))

    cm, dm, em = mask_of(t.C), mask_of(t.D), mask_of(t.E)
    for e in t.E:
        if g.degree(e) != 2:
            rep.violations.append(f"vertex {e} of E does not have degree 2")

    flats = [
        p
        for p in maximal_flat_paths(g)
        if len(p.vertices) >= 2
        and (1 << p.vertices[0]) & (cm | dm)
        and (1 << p.vertices[-1]) & (cm | dm)
        and all((1 << w) & em for w in p.interior())
    ]
    covered = 0
    status = "verified"
    for p in flats:
        vs = p.vertices
        if (1 << vs[0]) & dm:
            vs = tuple(reversed(vs))
        if not ((1 << vs[0]) & cm and (1 << vs[-1]) & dm):
            continue
        if p.length % 2 == 0:
            rep.violations.append(f"flat path {vs} from C to D has even length")
            continue
        covered |= mask_of(p.interior())
        split = twojoin.split_from_path(g, vs)
        if split is None:
            rep.violations.append(f"flat path {vs} does not induce a 2-join")
            continue
        cls = twojoin.classify_2join(g, split)
        if not cls.proper:
            rep.violations.append(f"2-join of flat path {vs} is not proper")
            continue
        if cls.cutting1:
            rep.violations.append(f"2-join of flat path {vs} is cutting of type 1")
            continue
        refuted, decided = twojoin.refute_cutting_type2(
            g, split, certificates=type2_certificates, exhaustive_guard=exhaustive_guard
        )
        if refuted:
            rep.violations.append(f"2-join of flat path {vs} is cutting of type 2")
            status = "refuted"
        elif not decided:
            status = "not_refuted" if status != "refuted" else status
    if covered != em:
        leftover = set_of(em & ~covered)
        if leftover:
            rep.violations.append(
                f"vertices {sorted(leftover)} of E lie on no odd flat C-D path"
            )
    rep.noncutting_status = status
    rep.ok = not rep.violations
    return rep


def verify_degenerate_homogeneous_2join(g: Graph, t: SixTuple) -> tuple[bool, Optional[int]]:
    """Degenerate homogeneous 2-join check; returns (verdict, item)."""
    _check_partition(g, list(t.parts()))
    edm = mask_of(t.E | t.D)
    ecm = mask_of(t.E | t.C)
    for x in sorted(t.C):
        if not g.adj[x] & edm:
            return True, 1
    for y in sorted(t.D):
        if not g.adj[y] & ecm:
            return True, 1
    ade = mask_of(t.A | t.D | t.E)
    bce = mask_of(t.B | t.C | t.E)
    for x in sorted(t.C):
        if not g.adj[x] & ~ade:
            return True, 2
    for y in sorted(t.D):
        if not g.adj[y] & ~bce:
            return True, 2
    return False, None
