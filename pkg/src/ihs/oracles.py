"""Feasibility oracles: given a candidate set, certify it hits every target
subset or return one subset it misses.

Cycle oracles treat a (di)graph as an implicit family whose subsets are the
vertex sets of simple cycles; a verdict of feasible means the candidate is a
feedback vertex set. Traversal orders are pinned (components by smallest
surviving id, neighbors ascending) so repeated runs return identical cycles.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .graphs import Digraph, Graph, GraphError
from .hitting import SubsetFamily


class OracleProtocolError(RuntimeError):
    """An oracle returned a verdict violating its contract."""


@dataclass(frozen=True)
class OracleVerdict:
    """Either feasible, or one missed subset disjoint from the query."""

    missed: tuple[int, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.missed is None

    @staticmethod
    def ok() -> "OracleVerdict":
        return OracleVerdict(None)

    @staticmethod
    def miss(subset: Iterable[int]) -> "OracleVerdict":
        return OracleVerdict(tuple(sorted(set(subset))))


@dataclass(frozen=True)
class OracleContract:
    """A feasibility oracle over the universe ``0..universe_size-1``."""

    check: Callable[[Iterable[int]], OracleVerdict]
    universe_size: int


def explicit_family_oracle(fam: SubsetFamily) -> OracleContract:
    """Wrap an explicit family: returns the first unhit subset in insertion order."""

    def check(h: Iterable[int]) -> OracleVerdict:
        hs = set(h)
        for s in fam.subsets:
            if hs.isdisjoint(s):
                return OracleVerdict.miss(s)
        return OracleVerdict.ok()

    return OracleContract(check=check, universe_size=fam.universe_size)


def _blocked_mask(n: int, h: Iterable[int]) -> np.ndarray:
    ids = list(h)
    if ids and (min(ids) < 0 or max(ids) >= n):
        raise GraphError(f"vertex id out of range [0, {n})")
    mask = np.zeros(n, dtype=bool)
    mask[ids] = True
    return mask


def bfs_cycle_oracle(g: Graph, root: int = 0) -> OracleContract:
    """Cycle oracle in breadth-first order.

    ``check(h)`` runs BFS on the graph minus ``h``, starting from ``root``
    (or the smallest surviving id when the root is removed) and then from the
    remaining components in ascending id order. The first non-tree edge met
    closes a cycle through the BFS tree; its vertex set is returned. Feasible
    iff the surviving graph is a forest.
    """
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range [0, {g.n})")

    def check(h: Iterable[int]) -> OracleVerdict:
        blocked = _blocked_mask(g.n, h)
        parent = np.full(g.n, -1, dtype=np.int64)
        depth = np.zeros(g.n, dtype=np.int64)
        visited = blocked.copy()
        starts = [root] + list(range(g.n))
        for s in starts:
            if visited[s]:
                continue
            visited[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in g.neighbors(u).tolist():
                    if blocked[v]:
                        continue
                    if not visited[v]:
                        visited[v] = True
                        parent[v] = u
                        depth[v] = depth[u] + 1
                        queue.append(v)
                    elif v != parent[u]:
                        return OracleVerdict.miss(_tree_cycle(parent, depth, u, v))
        return OracleVerdict.ok()

    return OracleContract(check=check, universe_size=g.n)


def _tree_cycle(parent: np.ndarray, depth: np.ndarray, u: int, v: int) -> list[int]:
    """Vertices of the cycle formed by tree paths from u and v to their lowest common ancestor."""
    path_u = [u]
    path_v = [v]
    while depth[path_u[-1]] > depth[path_v[-1]]:
        path_u.append(int(parent[path_u[-1]]))
    while depth[path_v[-1]] > depth[path_u[-1]]:
        path_v.append(int(parent[path_v[-1]]))
    while path_u[-1] != path_v[-1]:
        path_u.append(int(parent[path_u[-1]]))
        path_v.append(int(parent[path_v[-1]]))
    return path_u + path_v[:-1]


def _girth_undirected(g: Graph, blocked: np.ndarray) -> int | None:
    best: int | None = None
    for s in range(g.n):
        if blocked[s]:
            continue
        parent = np.full(g.n, -1, dtype=np.int64)
        depth = np.full(g.n, -1, dtype=np.int64)
        depth[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * depth[u] >= best:
                break
            for v in g.neighbors(u).tolist():
                if blocked[v]:
                    continue
                if depth[v] < 0:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u] and u < v:
                    cyc = _tree_cycle(parent, depth, u, v)
                    if best is None or len(cyc) < best:
                        best = len(cyc)
    return best


def _girth_directed(d: Digraph, blocked: np.ndarray) -> int | None:
    best: int | None = None
    for s in range(d.n):
        if blocked[s]:
            continue
        into_s = set(int(w) for w in d.in_neighbors(s).tolist() if not blocked[w])
        if not into_s:
            continue
        dist = np.full(d.n, -1, dtype=np.int64)
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and dist[u] + 1 >= best:
                break
            if u in into_s and u != s:
                length = int(dist[u]) + 1
                if best is None or length < best:
                    best = length
                break
            for v in d.out_neighbors(u).tolist():
                if blocked[v] or dist[v] >= 0:
                    continue
                dist[v] = dist[u] + 1
                queue.append(v)
    return best


def _lex_min_cycle(adj_out, adj_check, n: int, blocked: np.ndarray, length: int, directed: bool) -> list[int] | None:
    """First cycle of exactly ``length`` in anchor-ascending, path-lexicographic order.

    The anchor is the cycle's minimum vertex, so the first hit is the cycle
    whose canonical rotation is lexicographically smallest.
    """

    def extend(anchor: int, path: list[int], seen: set[int]) -> list[int] | None:
        u = path[-1]
        if len(path) == length:
            if anchor in adj_check(u) and (directed or path[1] < path[-1]):
                return list(path)
            return None
        for v in adj_out(u).tolist():
            if v <= anchor or blocked[v] or v in seen:
                continue
            seen.add(v)
            path.append(v)
            hit = extend(anchor, path, seen)
            path.pop()
            seen.remove(v)
            if hit is not None:
                return hit
        return None

    for a in range(n):
        if blocked[a]:
            continue
        hit = extend(a, [a], {a})
        if hit is not None:
            return hit
    return None


def shortest_cycle_oracle(g_or_d: Graph | Digraph, directed: bool | None = None) -> OracleContract:
    """Cycle oracle in increasing length order.

    ``check(h)`` returns a minimum-length cycle of the surviving (di)graph,
    ties broken by the lexicographically smallest rotation starting at the
    cycle's minimum vertex; feasible iff acyclic.
    """
    if directed is None:
        directed = isinstance(g_or_d, Digraph)
    if directed and not isinstance(g_or_d, Digraph):
        raise TypeError("directed=True requires a Digraph")
    if not directed and not isinstance(g_or_d, Graph):
        raise TypeError("directed=False requires a Graph")

    def check(h: Iterable[int]) -> OracleVerdict:
        blocked = _blocked_mask(g_or_d.n, h)
        if directed:
            length = _girth_directed(g_or_d, blocked)
            adj_out = g_or_d.out_neighbors
            adj_check = lambda u: set(g_or_d.out_neighbors(u).tolist())
        else:
            length = _girth_undirected(g_or_d, blocked)
            adj_out = g_or_d.neighbors
            adj_check = lambda u: set(g_or_d.neighbors(u).tolist())
        if length is None:
            return OracleVerdict.ok()
        cyc = _lex_min_cycle(adj_out, adj_check, g_or_d.n, blocked, length, directed)
        if cyc is None:  # girth and enumeration disagree: internal bug
            raise OracleProtocolError("girth-length cycle not found")
        return OracleVerdict.miss(cyc)

    return OracleContract(check=check, universe_size=g_or_d.n)


def cycles_of_length(d: Digraph, k: int) -> list[tuple[int, ...]]:
    """Every simple directed cycle on exactly ``k`` vertices, as sorted vertex tuples.

    Each cycle is found once, anchored at its minimum vertex, by a depth-first
    search over arc paths visiting only larger ids. Output order: anchor
    ascending, then path lexicographic. Cost grows with out-degree**(k-1) per
    anchor; intended for small constant k.
    """
    if k < 2:
        raise ValueError("cycle length must be at least 2")
    out_sets = [set(d.out_neighbors(v).tolist()) for v in range(d.n)]
    result: list[tuple[int, ...]] = []

    def extend(anchor: int, path: list[int], seen: set[int]) -> None:
        u = path[-1]
        if len(path) == k:
            if anchor in out_sets[u]:
                result.append(tuple(sorted(path)))
            return
        for v in d.out_neighbors(u).tolist():
            if v > anchor and v not in seen:
                seen.add(v)
                path.append(v)
                extend(anchor, path, seen)
                path.pop()
                seen.remove(v)

    for a in range(d.n):
        extend(a, [a], {a})
    return result
