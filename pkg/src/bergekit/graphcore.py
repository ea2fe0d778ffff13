"""Immutable simple graphs over dense vertex ranges, plus the combinatorial
primitives the rest of the toolkit is built on: components, anticomponents,
induced path / antipath enumeration, odd-path search and flat paths.

Vertices are integers 0..n-1.  Adjacency is kept as one bitmask per vertex,
which makes the backtracking searches cheap and keeps every graph value
immutable and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graph constructions or malformed queries."""


DEFAULT_BUDGET = 10_000_000


class Budget:
    """Mutable allowance of search-tree nodes shared across nested searches.

    Exceeding the allowance is a distinguished outcome, never an exception:
    searches stop and report ``complete=False``.
    """

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit <= 0:
            raise GraphError("budget limit must be positive")
        self.limit = limit
        self.spent = 0

    def tick(self) -> bool:
        """Consume one node; return False once the allowance is gone."""
        self.spent += 1
        return self.spent <= self.limit

    @property
    def exhausted(self) -> bool:
        return self.spent > self.limit

    def __repr__(self):
        return f"Budget(limit={self.limit}, spent={self.spent})"


def _as_budget(budget) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; adjacency bitmask per vertex, no self-loops."""

    n: int
    adj: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise GraphError("adjacency table length must equal vertex count")
        full = (1 << self.n) - 1
        for v, m in enumerate(self.adj):
            if m & (1 << v):
                raise GraphError(f"self-loop at vertex {v}")
            if m & ~full:
                raise GraphError(f"adjacency of {v} mentions out-of-range vertices")
        for v in range(self.n):
            for u in bits(self.adj[v]):
                if not self.adj[u] & (1 << v):
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    # -- basic queries -------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self.adj[u] >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    out.append((u, v))
                m >>= 1
                v += 1
        return out

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def label_of(self, v: int) -> Optional[str]:
        return self.labels[v] if self.labels else None

    # -- derived graphs ------------------------------------------------

    def complement(self) -> "Graph":
        full = self.full_mask()
        return Graph(
            self.n,
            tuple((full & ~self.adj[v]) & ~(1 << v) for v in range(self.n)),
            self.labels,
        )

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on the given vertices, relabelled 0..k-1.

        Returns the subgraph and the tuple mapping new index -> old index.
        """
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            m = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    m |= 1 << pos[u]
            adj.append(m)
        labels = tuple(self.labels[v] for v in keep) if self.labels else None
        return Graph(len(keep), tuple(adj), labels), tuple(keep)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image graph where old vertex v becomes perm[v]."""
        adj = [0] * self.n
        for v in range(self.n):
            m = 0
            for u in bits(self.adj[v]):
                m |= 1 << perm[u]
            adj[perm[v]] = m
        labels = None
        if self.labels:
            out = [""] * self.n
            for v in range(self.n):
                out[perm[v]] = self.labels[v]
            labels = tuple(out)
        return Graph(self.n, tuple(adj), labels)

    def canonical_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.edges())


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
) -> Graph:
    """Build a graph from unordered vertex pairs; duplicates collapse.

    Self-loops and out-of-range indices are rejected, naming the pair.
    """
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop ({u},{v}) is not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    lab = tuple(labels) if labels is not None else None
    if lab is not None and len(lab) != n:
        raise GraphError("label list length must equal vertex count")
    return Graph(n, tuple(adj), lab)


# -- connectivity ------------------------------------------------------


def _components_masks(adj: Sequence[int], region: int) -> list[int]:
    """Connected components (as masks) of the subgraph induced on ``region``."""
    out = []
    rest = region
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= adj[v]
            grow &= region & ~comp
            comp |= grow
            frontier = grow
        out.append(comp)
        rest &= ~comp
    return out


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of g minus ``removed``, ordered by smallest member."""
    region = g.full_mask() & ~mask_of(removed)
    return [set_of(m) for m in _components_masks(g.adj, region)]


def is_connected_mask(adj: Sequence[int], region: int) -> bool:
    if region == 0:
        return False
    seed = region & -region
    comp = seed
    frontier = seed
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= adj[v]
        grow &= region & ~comp
        comp |= grow
        frontier = grow
    return comp == region


def anticomponents(g: Graph, s: Iterable[int]) -> list[frozenset[int]]:
    """Components of the complement restricted to s; one part = anticonnected."""
    smask = mask_of(s)
    cadj = [((g.full_mask() & ~g.adj[v]) & ~(1 << v)) for v in range(g.n)]
    return [set_of(m) for m in _components_masks(cadj, smask)]


# -- induced paths -----------------------------------------------------


@dataclass(frozen=True)
class InducedPath:
    """A chordless path given by its vertex sequence (two or more vertices)."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def check_in(self, g: Graph) -> bool:
        """Independent validity check: consecutive adjacent, the rest not."""
        vs = self.vertices
        if len(vs) < 2 or len(set(vs)) != len(vs):
            return False
        for i, u in enumerate(vs):
            for j in range(i + 1, len(vs)):
                adjacent = g.has_edge(u, vs[j])
                if adjacent != (j == i + 1):
                    return False
        return True


@dataclass
class PathEnumeration:
    """Outcome of a bounded enumeration: the paths found plus a completeness
    flag.  ``complete=False`` means the budget ran out, not that the listed
    paths are wrong."""

    paths: list[InducedPath] = field(default_factory=list)
    complete: bool = True

    def __iter__(self) -> Iterator[InducedPath]:
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)


def _parity_ok(length: int, parity: str) -> bool:
    if parity == "any":
        return True
    if parity == "odd":
        return length % 2 == 1
    if parity == "even":
        return length % 2 == 0
    raise GraphError(f"unknown parity selector {parity!r}")


def enumerate_induced_paths(
    g: Graph,
    ends_in: Iterable[int],
    interior_in: Iterable[int],
    parity: str = "any",
    min_length: int = 1,
    budget=None,
) -> PathEnumeration:
    """All induced paths with both ends in ``ends_in``, interior inside
    ``interior_in``, length >= min_length and matching parity.

    Each path is reported once, oriented so its first end is the smaller
    vertex; paths come out in lexicographic order of their vertex sequences.
    """
    bud = _as_budget(budget)
    ends_mask = mask_of(ends_in) & g.full_mask()
    int_mask = mask_of(interior_in) & g.full_mask()
    out = PathEnumeration()
    min_length = max(1, min_length)

    adj = g.adj

    def extend(path: list[int], blocked: int) -> bool:
        """DFS; returns False when the budget dies."""
        last = path[-1]
        cand = adj[last] & ~blocked
        for w in bits(cand):
            if not bud.tick():
                return False
            wbit = 1 << w
            if wbit & ends_mask and path[0] < w:
                length = len(path)  # edges in path + [w]
                if length >= min_length and _parity_ok(length, parity):
                    out.paths.append(InducedPath(tuple(path) + (w,)))
            if wbit & int_mask:
                path.append(w)
                ok = extend(path, blocked | adj[last] | wbit)
                path.pop()
                if not ok:
                    return False
        return True

    for s in bits(ends_mask):
        if not bud.tick():
            out.complete = False
            return out
        if not extend([s], 1 << s):
            out.complete = False
            return out
    return out


def enumerate_induced_antipaths(
    g: Graph,
    ends_in: Iterable[int],
    interior_in: Iterable[int],
    parity: str = "any",
    min_length: int = 1,
    budget=None,
) -> PathEnumeration:
    """Antipaths of g = induced paths of the complement, same vertex sequences."""
    return enumerate_induced_paths(
        g.complement(), ends_in, interior_in, parity, min_length, budget
    )


@dataclass
class PathSearch:
    """Outcome of a single-path search: the path (or None) and whether the
    absence is proven (``complete``) or merely not-found-within-budget."""

    path: Optional[InducedPath]
    complete: bool

    @property
    def found(self) -> bool:
        return self.path is not None


def _parity_reachable(adj, allowed: int, start: int, target: int, want_odd: bool) -> bool:
    """Can a walk inside ``allowed`` go from start to target with the wanted
    length parity?  Walks over-approximate induced paths, so False prunes."""
    even = 1 << start
    odd = 0
    goal = 1 << target
    while True:
        new_odd = odd
        new_even = even
        for v in bits(even):
            new_odd |= adj[v] & allowed
        for v in bits(odd):
            new_even |= adj[v] & allowed
        if want_odd and new_odd & goal:
            return True
        if not want_odd and new_even & goal:
            return True
        if new_odd == odd and new_even == even:
            return False
        odd, even = new_odd, new_even


def find_odd_induced_path(
    g: Graph,
    u: int,
    v: int,
    budget=None,
    interior_in: Optional[Iterable[int]] = None,
) -> PathSearch:
    """Lexicographically first odd-length induced path from u to v, if any.

    ``interior_in`` restricts the interior vertices; by default anything
    goes.  Prunes DFS branches whose remaining free region cannot host a
    walk of the right parity to v, which keeps structured sparse searches
    fast even when the absence of a path has to be proven.
    """
    if u == v:
        raise GraphError("endpoints must differ")
    bud = _as_budget(budget)
    adj = g.adj
    full = g.full_mask()
    region = full if interior_in is None else (mask_of(interior_in) & full)
    vbit = 1 << v

    def dfs(path: list[int], blocked: int) -> Optional[InducedPath]:
        last = path[-1]
        if adj[last] & vbit:
            if not blocked & vbit and len(path) % 2 == 1:
                # len(path)-1 edges so far; the closing edge makes the total odd
                return InducedPath(tuple(path) + (v,))
            # v touches the would-be interior: nothing deeper can close at v
            return None
        if blocked & vbit:
            return None
        cand = adj[last] & ~blocked & region
        want_odd = len(path) % 2 == 0  # remaining walk parity after one more edge
        for w in bits(cand):
            if not bud.tick():
                return None
            new_blocked = blocked | adj[last] | (1 << w)
            allowed = (~new_blocked & full & region) | vbit | (1 << w)
            if not _parity_reachable(adj, allowed, w, v, want_odd):
                continue
            path.append(w)
            got = dfs(path, new_blocked)
            path.pop()
            if got is not None or bud.exhausted:
                return got
        return None

    if g.has_edge(u, v):
        return PathSearch(InducedPath((u, v)), True)
    if not bud.tick():
        return PathSearch(None, False)
    got = dfs([u], 1 << u)
    return PathSearch(got, not bud.exhausted)


# -- flat paths --------------------------------------------------------


def _is_flat(g: Graph, vs: tuple[int, ...]) -> bool:
    """Flat = induced path, interior vertices of graph-degree 2, and the two
    ends have no common neighbour outside the path."""
    if len(vs) < 2:
        return False
    if not InducedPath(vs).check_in(g):
        return False
    for w in vs[1:-1]:
        if g.degree(w) != 2:
            return False
    outside = g.full_mask() & ~mask_of(vs)
    return not (g.adj[vs[0]] & g.adj[vs[-1]] & outside)


def maximal_flat_paths(g: Graph) -> list[InducedPath]:
    """All inclusion-maximal flat paths; components that are pure cycles
    contribute none (a cycle has no path ends)."""
    deg = [g.degree(v) for v in range(g.n)]
    cyclic = 0
    for comp in components(g):
        if all(deg[v] == 2 for v in comp):
            cyclic |= mask_of(comp)

    candidates: set[tuple[int, ...]] = set()
    for u, v in g.edges():
        if not (cyclic & (1 << u)):
            candidates.add((u, v))

    # threads: maximal runs of degree-2 vertices outside cycle components.
    # The degree-2 subgraph away from cycle components is a union of paths,
    # so walking from its endpoints collects each run once.
    d2 = {v for v in range(g.n) if deg[v] == 2 and not (cyclic >> v) & 1}
    collected: set[int] = set()
    threads: list[list[int]] = []
    for x in sorted(d2):
        if x in collected:
            continue
        inside = [w for w in g.neighbors(x) if w in d2]
        if len(inside) == 2:
            continue  # interior of its run; the walk starts at an endpoint
        run = [x]
        collected.add(x)
        nxt = [w for w in inside if w not in collected]
        while nxt:
            w = nxt[0]
            run.append(w)
            collected.add(w)
            nxt = [y for y in g.neighbors(w) if y in d2 and y not in collected]
        threads.append(run)

    for run in threads:
        k = len(run)
        if k == 1:
            left, right = sorted(g.neighbors(run[0]))
        else:
            left = next(w for w in g.neighbors(run[0]) if w != run[1])
            right = next(w for w in g.neighbors(run[-1]) if w != run[-2])
        for i in range(k):
            for j in range(i, k):
                seg = tuple(run[i : j + 1])
                if len(seg) >= 2:
                    candidates.add(seg)
                if i == 0:
                    candidates.add((left,) + seg)
                if j == k - 1:
                    candidates.add(seg + (right,))
                if i == 0 and j == k - 1 and left != right:
                    candidates.add((left,) + seg + (right,))

    flats = []
    for vs in candidates:
        if vs[0] > vs[-1]:
            vs = tuple(reversed(vs))
        if _is_flat(g, vs):
            flats.append(vs)
    flats = sorted(set(flats))

    vsets = [frozenset(vs) for vs in flats]
    maximal = []
    for i, vs in enumerate(flats):
        if not any(j != i and vsets[i] < vsets[j] for j in range(len(flats))):
            maximal.append(InducedPath(vs))
    return maximal


def flat_path_count(g: Graph) -> int:
    """Number of maximal flat paths of length at least 3."""
    return sum(1 for p in maximal_flat_paths(g) if p.length >= 3)


# -- GRF text format ---------------------------------------------------


def parse_grf(text: str) -> tuple[Graph, list[str]]:
    """Parse the GRF format: '#' comments, 'n m' header, then m 'u v' lines
    with u < v.  Returns the graph and a list of warnings (duplicate edges).
    Self-loops and malformed lines raise GraphError.
    """
    warnings: list[str] = []
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphError("empty GRF input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"bad GRF header {lines[0]!r}; expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphError(f"bad GRF header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphError(f"GRF declares {m} edges but provides {len(lines) - 1}")
    edges = []
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad GRF edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphError(f"GRF self-loop {u} {v}")
        if not (0 <= u < v < n):
            raise GraphError(f"GRF edge {u} {v} violates 0 <= u < v < n={n}")
        if (u, v) in seen:
            warnings.append(f"duplicate edge {u} {v} ignored")
            continue
        seen.add((u, v))
        edges.append((u, v))
    return build_graph(n, edges), warnings


def to_grf(g: Graph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        for ln in comment.splitlines():
            lines.append(f"# {ln}")
    es = g.edges()
    lines.append(f"{g.n} {len(es)}")
    lines.extend(f"{u} {v}" for u, v in es)
    return "\n".join(lines) + "\n"


# -- small constructions used throughout tests and demos ---------------


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def complete_bipartite(p: int, q: int) -> Graph:
    return build_graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    edges = a.edges() + [(u + a.n, v + a.n) for u, v in b.edges()]
    return build_graph(a.n + b.n, edges)
