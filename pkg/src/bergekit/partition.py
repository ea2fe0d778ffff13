"""Skew partitions and their balancedness, star cutsets, the exhaustive
desk-scale skew-partition oracle, and the balanced-skew-partition deciders
for the basic graph classes (bipartite via complete-bipartite cutsets, line
graphs of bipartite graphs via star cutsets, double split graphs by a
constant answer).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graphcore import (
    Graph,
    GraphError,
    InducedPath,
    _as_budget,
    _components_masks,
    anticomponents,
    bits,
    components,
    find_odd_induced_path,
    mask_of,
    set_of,
)
from .recognize import BasicVerdict, find_claw, find_diamond, is_bipartite


# -- skew partitions -----------------------------------------------------


@dataclass(frozen=True)
class SkewSplit:
    A1: frozenset[int]
    A2: frozenset[int]
    B1: frozenset[int]
    B2: frozenset[int]


@dataclass(frozen=True)
class SkewCheck:
    skew: bool
    reason: Optional[str] = None
    split: Optional[SkewSplit] = None

    def __bool__(self):
        return self.skew


def verify_skew_partition(g: Graph, A: Iterable[int], B: Iterable[int]) -> SkewCheck:
    """A induces a disconnected graph and B a non-anticonnected one; returns
    the canonical split (first component of A against the rest, first
    anticomponent of B against the rest)."""
    A, B = frozenset(A), frozenset(B)
    if A & B or (A | B) != frozenset(range(g.n)):
        raise GraphError("A and B must partition the vertex set")
    if not A or not B:
        return SkewCheck(False, "both parts must be non-empty")
    comps = components(g, B)
    if len(comps) < 2:
        return SkewCheck(False, "A induces a connected graph")
    anti = anticomponents(g, B)
    if len(anti) < 2:
        return SkewCheck(False, "B induces an anticonnected graph")
    split = SkewSplit(
        comps[0],
        frozenset().union(*comps[1:]),
        anti[0],
        frozenset().union(*anti[1:]),
    )
    return SkewCheck(True, None, split)


@dataclass(frozen=True)
class BalanceVerdict:
    balanced: Optional[bool]  # None when the budget died before a verdict
    witness_kind: Optional[str] = None  # 'odd_path' | 'odd_antipath'
    witness: Optional[tuple[int, ...]] = None
    complete: bool = True

    def __bool__(self):
        return bool(self.balanced)


def verify_balanced(g: Graph, A: Iterable[int], B: Iterable[int], budget=None) -> BalanceVerdict:
    """Balanced iff every induced path of length >= 2 with ends in B and
    interior in A is even, and every antipath of length >= 2 with ends in A
    and interior in B is even.  Witness on failure.

    Works pairwise with the pruned odd-path search, which keeps the proof of
    absence affordable on structured graphs.
    """
    A, B = frozenset(A), frozenset(B)
    chk = verify_skew_partition(g, A, B)
    if not chk.skew:
        raise GraphError(f"not a skew partition: {chk.reason}")
    bud = _as_budget(budget)
    incomplete = False

    bs = sorted(B)
    for i, u in enumerate(bs):
        for v in bs[i + 1 :]:
            if g.has_edge(u, v):
                continue  # the only induced u-v path would need length 1
            got = find_odd_induced_path(g, u, v, budget=bud, interior_in=A)
            if got.path is not None:
                return BalanceVerdict(False, "odd_path", got.path.vertices, True)
            incomplete |= not got.complete

    co = g.complement()
    as_ = sorted(A)
    for i, u in enumerate(as_):
        for v in as_[i + 1 :]:
            if not g.has_edge(u, v):
                continue  # ends of an antipath of length >= 2 are adjacent in g
            got = find_odd_induced_path(co, u, v, budget=bud, interior_in=B)
            if got.path is not None:
                return BalanceVerdict(False, "odd_antipath", got.path.vertices, True)
            incomplete |= not got.complete

    if incomplete:
        return BalanceVerdict(None, None, None, False)
    return BalanceVerdict(True, None, None, True)


@dataclass(frozen=True)
class SkewPartitionCandidate:
    A: frozenset[int]
    B: frozenset[int]
    split: Optional[SkewSplit] = None
    balance: Optional[BalanceVerdict] = None


# -- star cutsets --------------------------------------------------------


@dataclass(frozen=True)
class StarCutsetWitness:
    center: int
    cutset: frozenset[int]

    def check_in(self, g: Graph) -> bool:
        if self.center not in self.cutset:
            return False
        nbhd = set_of(g.adj[self.center]) | {self.center}
        if not self.cutset <= nbhd:
            return False
        return len(components(g, self.cutset)) >= 2


def find_star_cutset(g: Graph) -> Optional[StarCutsetWitness]:
    """Polynomial star-cutset search.

    Candidates, for each center v: the star {v} + (N(v) /\\ N(K)) for every
    component K of G - N[v]; the co-stars N[v] - {w} for dominated neighbours
    w; and, when v is universal, V - {x, y} for a non-adjacent pair x, y.
    The family is validated against brute force on exhaustive small corpora.
    """
    full = g.full_mask()

    def cuts(mask: int) -> bool:
        return len(_components_masks(g.adj, full & ~mask)) >= 2

    for v in range(g.n):
        closed = g.adj[v] | (1 << v)
        outside = full & ~closed
        if outside:
            for K in _components_masks(g.adj, outside):
                nk = 0
                for w in bits(K):
                    nk |= g.adj[w]
                cand = (1 << v) | (g.adj[v] & nk)
                if cuts(cand):
                    return StarCutsetWitness(v, set_of(cand))
        else:
            # v is universal: any cutset of g - v extends to a star around v
            for x in range(g.n):
                if x == v:
                    continue
                miss = full & ~g.adj[x] & ~(1 << x) & ~(1 << v)
                for y in bits(miss):
                    if y > x:
                        return StarCutsetWitness(v, set_of(full & ~(1 << x) & ~(1 << y)))
        for w in bits(g.adj[v]):
            if (g.adj[w] | (1 << w)) & ~closed:
                continue
            cand = closed & ~(1 << w)
            if cuts(cand):
                return StarCutsetWitness(v, set_of(cand))
    return None


def bruteforce_star_cutset(g: Graph, size_guard: int = 16) -> Optional[StarCutsetWitness]:
    """Exhaustive oracle: every subset of every closed neighbourhood."""
    if g.n > size_guard:
        raise GraphError(f"oracle refuses n={g.n} > guard={size_guard}")
    full = g.full_mask()
    for v in range(g.n):
        nb = sorted(set_of(g.adj[v]))
        for m in range(1 << len(nb)):
            cand = 1 << v
            for i, w in enumerate(nb):
                if m >> i & 1:
                    cand |= 1 << w
            if len(_components_masks(g.adj, full & ~cand)) >= 2:
                return StarCutsetWitness(v, set_of(cand))
    return None


# -- exhaustive skew partition oracle -------------------------------------


def _skew_cutset_masks(g: Graph):
    """All cutset masks B with A = V-B disconnected and B non-anticonnected,
    in ascending mask order."""
    full = g.full_mask()
    adj = g.adj
    cadj = [((full & ~adj[v]) & ~(1 << v)) for v in range(g.n)]

    def disconnected(table, region) -> bool:
        seed = region & -region
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            m = frontier
            while m:
                low = m & -m
                grow |= table[low.bit_length() - 1]
                m ^= low
            grow &= region & ~comp
            comp |= grow
            frontier = grow
        return comp != region

    for bmask in range(1, full):
        if disconnected(adj, full & ~bmask) and disconnected(cadj, bmask):
            yield bmask


def bruteforce_skew_partition(
    g: Graph,
    require_balanced: bool = False,
    size_guard: int = 14,
    budget=None,
) -> Optional[SkewPartitionCandidate]:
    """First (smallest cutset mask) skew partition, optionally balanced, by
    exhausting all cutsets.  Refuses graphs over the guard."""
    if g.n > size_guard:
        raise GraphError(f"oracle refuses n={g.n} > guard={size_guard}")
    bud = _as_budget(budget)
    full = g.full_mask()
    for bmask in _skew_cutset_masks(g):
        B = set_of(bmask)
        A = set_of(full & ~bmask)
        if require_balanced:
            bal = verify_balanced(g, A, B, budget=bud)
            if bal.balanced:
                return SkewPartitionCandidate(A, B, verify_skew_partition(g, A, B).split, bal)
        else:
            return SkewPartitionCandidate(A, B, verify_skew_partition(g, A, B).split, None)
    return None


def all_skew_partitions(g: Graph, size_guard: int = 14) -> list[SkewPartitionCandidate]:
    """Every skew partition (by cutset), for the lemma test-suites."""
    if g.n > size_guard:
        raise GraphError(f"oracle refuses n={g.n} > guard={size_guard}")
    full = g.full_mask()
    out = []
    for bmask in _skew_cutset_masks(g):
        B = set_of(bmask)
        A = set_of(full & ~bmask)
        out.append(SkewPartitionCandidate(A, B, verify_skew_partition(g, A, B).split, None))
    return out


# -- balanced skew partitions in basic graphs ------------------------------


def bipartite_bsp(
    g: Graph, fallback_guard: int = 16
) -> tuple[bool, Optional[frozenset[int]]]:
    """Skew partition detection in a bipartite graph (which is the same as
    balanced skew partition detection there).

    In a triangle-free graph every skew cutset induces a complete bipartite
    graph with both sides non-empty, so the candidates are: star-derived
    cutsets, the two greedy complete-bipartite closures of every edge, and
    an exhaustive fallback under the guard.
    """
    bip = is_bipartite(g)
    if not bip.bipartite:
        raise GraphError("bipartite_bsp wants a bipartite graph")
    full = g.full_mask()

    def is_skew_cutset(bmask: int) -> bool:
        if bmask == 0 or bmask == full:
            return False
        if len(_components_masks(g.adj, full & ~bmask)) < 2:
            return False
        cadj = [((full & ~g.adj[v]) & ~(1 << v)) for v in range(g.n)]
        return len(_components_masks(cadj, bmask)) >= 2

    candidates: list[int] = []
    for v in range(g.n):
        closed = g.adj[v] | (1 << v)
        for K in _components_masks(g.adj, full & ~closed):
            nk = 0
            for w in bits(K):
                nk |= g.adj[w]
            candidates.append((1 << v) | (g.adj[v] & nk))
    for x, y in g.edges():
        for u, w in ((x, y), (y, x)):
            s2 = g.adj[u]
            s1 = full
            for z in bits(s2):
                s1 &= g.adj[z]
            candidates.append(s1 | s2)
    for cand in candidates:
        if is_skew_cutset(cand):
            return True, set_of(cand)

    if g.n <= fallback_guard:
        for bmask in range(1, full):
            if is_skew_cutset(bmask):
                return True, set_of(bmask)
        return False, None
    return False, None


def lgb_bsp(g: Graph) -> bool:
    """Balanced skew partition in a line graph of a bipartite graph is
    equivalent to a star cutset (size >= 5, at least one edge required)."""
    if g.n < 5:
        raise GraphError("the star-cutset equivalence needs at least 5 vertices")
    if not g.edges():
        raise GraphError("the star-cutset equivalence needs at least one edge")
    if find_claw(g) is not None or find_diamond(g) is not None:
        raise GraphError("input is not claw- and diamond-free")
    return find_star_cutset(g) is not None


def classify_lgb_skew_cutset(g: Graph, B: Iterable[int]):
    """In a claw- and diamond-free graph a skew cutset is a star or a square;
    'neither' is unreachable for valid inputs and asserted in tests."""
    B = frozenset(B)
    if find_claw(g) is not None or find_diamond(g) is not None:
        raise GraphError("graph must be claw- and diamond-free")
    A = frozenset(range(g.n)) - B
    if not verify_skew_partition(g, A, B).skew:
        raise GraphError("B is not a skew cutset")
    bm = mask_of(B)
    for x in sorted(B):
        if (g.adj[x] & bm) == bm & ~(1 << x):
            return ("star", x)
    if len(B) == 4:
        degs = sorted((g.adj[x] & bm).bit_count() for x in B)
        if degs == [2, 2, 2, 2]:
            # connected 2-regular on 4 vertices = the square
            if len(_components_masks(g.adj, bm)) == 1:
                return ("square", None)
    return ("neither", None)


def double_split_bsp(g: Graph, ds_result=None) -> bool:
    """Double split graphs never have a balanced skew partition."""
    from .recognize import is_double_split

    res = ds_result if ds_result is not None else is_double_split(g)
    if not res.found:
        raise GraphError("input is not a double split graph")
    return False


def basic_bsp(g: Graph, verdict: BasicVerdict, oracle_guard: int = 14) -> bool:
    """Dispatch the balanced-skew-partition question for a basic graph,
    taking the complement first for the co-classes (sound because balanced
    skew partitions are complement-invariant).  Sizes too small for the
    line-graph lemma fall back to the brute-force oracle."""
    if verdict.klass == "none":
        raise GraphError("basic_bsp needs a basic graph")
    if verdict.klass == "bipartite":
        return bipartite_bsp(g)[0]
    if verdict.klass == "cobipartite":
        return bipartite_bsp(g.complement())[0]
    if verdict.klass == "double_split":
        return double_split_bsp(g, verdict.witness)
    h = g if verdict.klass == "line_of_bipartite" else g.complement()
    if h.n < 5 or not h.edges():
        if h.n > oracle_guard:
            raise GraphError("line-graph fallback exceeded the oracle guard")
        return bruteforce_skew_partition(h, require_balanced=True) is not None
    return lgb_bsp(h)
