"""Shared test corpus machinery: a small canonical-labelling routine
(individualization + refinement), isomorph-free exhaustive generation of
connected Berge graphs, and the bipartite-root line-graph oracle.

Generation exploits heredity: every connected graph on k+1 vertices has a
non-cut vertex, and induced subgraphs of Berge graphs are Berge, so the
connected Berge graphs on k+1 vertices are exactly the canonical survivors
of one-vertex extensions of connected Berge graphs on k vertices.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from bergekit.graphcore import Graph, bits, build_graph
from bergekit.recognize import is_berge_bruteforce


def _refine(nbrs, n: int, colors: list[int]) -> list[int]:
    while True:
        sig = [(colors[v], sorted(colors[u] for u in nbrs[v])) for v in range(n)]
        order = sorted(range(n), key=lambda v: sig[v])
        new = [0] * n
        rank = 0
        prev = sig[order[0]]
        for v in order:
            if sig[v] != prev:
                rank += 1
                prev = sig[v]
            new[v] = rank
        if new == colors:
            return colors
        colors = new


def canonical_form(g: Graph) -> tuple[int, ...]:
    """Adjacency rows under the lexicographically least labelling consistent
    with iterated colour refinement; equal tuples iff isomorphic."""
    n = g.n
    adj = g.adj
    if n <= 1:
        return tuple([0] * n)
    nbrs = [tuple(bits(a)) for a in adj]
    best: list[int] | None = None
    full = (1 << n) - 1

    def place_discrete(colors, placed, rows, left_mask):
        # all remaining colours distinct: a single forced completion
        nonlocal best
        order = sorted(bits(left_mask), key=lambda v: colors[v])
        placed = list(placed)
        rows = list(rows)
        for v in order:
            row = 0
            av = adj[v]
            for i, p in enumerate(placed):
                if av >> p & 1:
                    row |= 1 << i
            placed.append(v)
            rows.append(row)
        if best is None or rows < best:
            best = rows

    def rec(colors: list[int], placed: list[int], rows: list[int], left_mask: int):
        nonlocal best
        k = len(placed)
        if best is not None and k:
            for i in range(k):
                if rows[i] != best[i]:
                    if rows[i] > best[i]:
                        return
                    break
        if not left_mask:
            if best is None or rows < best:
                best = list(rows)
            return
        left = list(bits(left_mask))
        seen_cols = [colors[v] for v in left]
        if len(set(seen_cols)) == len(seen_cols):
            place_discrete(colors, placed, rows, left_mask)
            return
        mincol = min(seen_cols)
        for v in left:
            if colors[v] != mincol:
                continue
            row = 0
            av = adj[v]
            for i, p in enumerate(placed):
                if av >> p & 1:
                    row |= 1 << i
            nc = list(colors)
            nc[v] = -1 - k  # unique colour, below everything placed earlier
            nc = _refine(nbrs, n, nc)
            rec(nc, placed + [v], rows + [row], left_mask & ~(1 << v))

    rec(_refine(nbrs, n, [0] * n), [], [], full)
    return tuple(best)


def graph_from_rows(rows: tuple[int, ...]) -> Graph:
    n = len(rows)
    edges = [(i, j) for j in range(n) for i in bits(rows[j])]
    return build_graph(n, edges)


def extend_by_vertex(g: Graph, attach_mask: int) -> Graph:
    edges = g.edges() + [(v, g.n) for v in bits(attach_mask)]
    return build_graph(g.n + 1, edges)


def _extend_chunk(args) -> set[tuple[int, ...]]:
    parents, k = args
    out: set[tuple[int, ...]] = set()
    for rows in parents:
        g = graph_from_rows(rows)
        for attach in range(1, 1 << k):
            out.add(canonical_form(extend_by_vertex(g, attach)))
    return out


def _berge_chunk(forms: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    return [cf for cf in forms if is_berge_bruteforce(graph_from_rows(cf)).berge]


def connected_berge_graphs(
    max_n: int, min_n: int = 1, workers: int | None = None
) -> dict[int, list[Graph]]:
    """Exhaustive non-isomorphic connected Berge graphs by size; the large
    levels fan out over a process pool when ``workers`` allows it."""
    import multiprocessing as mp
    import os

    if workers is None:
        workers = min(2, os.cpu_count() or 1)
    levels: dict[int, list[tuple[int, ...]]] = {1: [canonical_form(build_graph(1, []))]}
    for k in range(1, max_n):
        parents = levels[k]
        work = len(parents) << k
        if workers > 1 and work > 200_000:
            chunks = [(parents[i::workers * 4], k) for i in range(workers * 4)]
            with mp.Pool(workers) as pool:
                parts = pool.map(_extend_chunk, chunks)
            seen: set[tuple[int, ...]] = set().union(*parts)
            forms = sorted(seen)
            fchunks = [forms[i :: workers * 4] for i in range(workers * 4)]
            with mp.Pool(workers) as pool:
                kept = pool.map(_berge_chunk, fchunks)
            levels[k + 1] = sorted(cf for part in kept for cf in part)
        else:
            seen = set()
            nxt: list[tuple[int, ...]] = []
            for rows in parents:
                g = graph_from_rows(rows)
                for attach in range(1, 1 << k):
                    cf = canonical_form(extend_by_vertex(g, attach))
                    if cf in seen:
                        continue
                    seen.add(cf)
                    if is_berge_bruteforce(graph_from_rows(cf)).berge:
                        nxt.append(cf)
            levels[k + 1] = sorted(nxt)
    return {
        n: [graph_from_rows(cf) for cf in forms]
        for n, forms in levels.items()
        if min_n <= n <= max_n
    }


def parallel_graph_map(fn, graphs, workers: int | None = None, chunk: int = 64):
    """Order-preserving process-pool map over graphs (falls back to a plain
    loop for small inputs)."""
    import multiprocessing as mp
    import os

    if workers is None:
        workers = min(2, os.cpu_count() or 1)
    if workers <= 1 or len(graphs) < 4 * chunk:
        return [fn(g) for g in graphs]
    with mp.Pool(workers) as pool:
        return pool.map(fn, graphs, chunksize=chunk)


def all_graphs(max_n: int) -> dict[int, list[Graph]]:
    """Every non-isomorphic graph (connected or not) up to max_n vertices;
    used to validate the canonical labelling against known counts."""
    levels: dict[int, list[Graph]] = {1: [build_graph(1, [])]}
    for k in range(1, max_n):
        seen: set[tuple[int, ...]] = set()
        nxt = []
        for g in levels[k]:
            for attach in range(1 << k):
                h = extend_by_vertex(g, attach)
                cf = canonical_form(h)
                if cf not in seen:
                    seen.add(cf)
                    nxt.append(graph_from_rows(cf))
        levels[k + 1] = nxt
    return levels


def line_graph(g: Graph) -> Graph:
    es = g.edges()
    out = []
    for i, (a, b) in enumerate(es):
        for j in range(i + 1, len(es)):
            c, d = es[j]
            if len({a, b, c, d}) < 4:
                out.append((i, j))
    return build_graph(len(es), out)


@lru_cache(maxsize=1)
def bipartite_line_graph_forms(max_edges: int = 7) -> frozenset[tuple[int, ...]]:
    """Canonical forms of line graphs of every bipartite root graph with at
    most max_edges edges and no isolated vertices."""
    from bergekit.recognize import is_bipartite

    roots: dict[int, set[tuple[int, ...]]] = {1: {canonical_form(build_graph(2, [(0, 1)]))}}
    forms: set[tuple[int, ...]] = set()
    for k in range(1, max_edges + 1):
        nxt: set[tuple[int, ...]] = set()
        for rows in roots[k]:
            g = graph_from_rows(rows)
            if is_bipartite(g).bipartite:
                forms.add(canonical_form(line_graph(g)))
            if k == max_edges:
                continue
            n = g.n
            # add an edge: between existing vertices, to one new vertex, or
            # as a fresh disjoint edge
            candidates = []
            for u in range(n):
                for v in range(u + 1, n):
                    if not g.has_edge(u, v):
                        candidates.append(build_graph(n, g.edges() + [(u, v)]))
                candidates.append(build_graph(n + 1, g.edges() + [(u, n)]))
            candidates.append(build_graph(n + 2, g.edges() + [(n, n + 1)]))
            for h in candidates:
                nxt.add(canonical_form(h))
        if k < max_edges:
            roots[k + 1] = nxt
    return frozenset(forms)
