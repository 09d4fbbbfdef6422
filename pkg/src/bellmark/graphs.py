"""Undirected simple graphs over integer vertices.

Used both for device connectivity maps and for the graphs defining graph
states.  Adjacency is kept as one bitmask per vertex so that neighborhood
operations (local complementation, reachability pruning in the path search)
are single integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DisconnectedGraphError, InvalidInputError

__all__ = [
    "ConnectivityGraph",
    "PathSearchResult",
    "local_complement",
    "spanning_tree",
    "longest_simple_path",
    "connected_subset",
    "induced_subgraph",
]


def _normalize_edge(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise InvalidInputError(f"self-loop on vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class ConnectivityGraph:
    """Immutable undirected simple graph on vertices 0..n_vertices-1."""

    n_vertices: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n_vertices < 0:
            raise InvalidInputError("n_vertices must be nonnegative")
        norm = frozenset(_normalize_edge(i, j) for i, j in self.edges)
        object.__setattr__(self, "edges", norm)
        for i, j in norm:
            if not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise InvalidInputError(f"edge ({i}, {j}) out of range")

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Sequence[int]]) -> "ConnectivityGraph":
        return cls(n_vertices, frozenset((int(i), int(j)) for i, j in edges))

    @classmethod
    def path(cls, n: int) -> "ConnectivityGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, n: int, center: int = 0) -> "ConnectivityGraph":
        return cls.from_edges(n, [(center, i) for i in range(n) if i != center])

    @classmethod
    def complete(cls, n: int) -> "ConnectivityGraph":
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex adjacency bitmask (bit j set iff j is a neighbor)."""
        masks = [0] * self.n_vertices
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return tuple(_iter_bits(self.neighbor_masks[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.neighbor_masks[v].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return _normalize_edge(i, j) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        return _reachable_mask(self.neighbor_masks, 1 << 0, (1 << self.n_vertices) - 1).bit_count() == self.n_vertices

    def is_tree(self) -> bool:
        return len(self.edges) == self.n_vertices - 1 and self.is_connected()

    def is_path_graph(self) -> bool:
        if self.n_vertices <= 1:
            return True
        degs = [self.degree(v) for v in range(self.n_vertices)]
        return self.is_tree() and max(degs) <= 2

    def path_order(self) -> tuple[int, ...]:
        """Vertex order along a path graph, starting from the lowest endpoint."""
        if not self.is_path_graph():
            raise InvalidInputError("graph is not a simple path")
        if self.n_vertices == 0:
            return ()
        if self.n_vertices == 1:
            return (0,)
        start = min(v for v in range(self.n_vertices) if self.degree(v) == 1)
        order = [start]
        prev = -1
        while len(order) < self.n_vertices:
            nxt = [u for u in self.neighbors(order[-1]) if u != prev]
            prev = order[-1]
            order.append(nxt[0])
        return tuple(order)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n_vertices):
            raise InvalidInputError(f"vertex {v} out of range [0, {self.n_vertices})")


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reachable_mask(masks: Sequence[int], seed: int, universe: int) -> int:
    """Set of vertices reachable from `seed` staying inside `universe`."""
    seen = seed & universe
    frontier = seen
    while frontier:
        nxt = 0
        for v in _iter_bits(frontier):
            nxt |= masks[v]
        nxt &= universe & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def local_complement(g: ConnectivityGraph, v: int) -> ConnectivityGraph:
    """Complement the edge set among the neighbors of v; everything else is kept."""
    g._check_vertex(v)
    nbrs = g.neighbors(v)
    edges = set(g.edges)
    for a_idx in range(len(nbrs)):
        for b_idx in range(a_idx + 1, len(nbrs)):
            e = _normalize_edge(nbrs[a_idx], nbrs[b_idx])
            if e in edges:
                edges.remove(e)
            else:
                edges.add(e)
    return ConnectivityGraph(g.n_vertices, frozenset(edges))


def spanning_tree(g: ConnectivityGraph) -> ConnectivityGraph:
    """Breadth-first spanning tree from vertex 0, visiting neighbors in index order."""
    if g.n_vertices == 0:
        return g
    if not g.is_connected():
        raise DisconnectedGraphError("spanning_tree requires a connected graph")
    seen = {0}
    queue = [0]
    edges = []
    while queue:
        v = queue.pop(0)
        for u in g.neighbors(v):
            if u not in seen:
                seen.add(u)
                edges.append((v, u))
                queue.append(u)
    return ConnectivityGraph.from_edges(g.n_vertices, edges)


def dfs_tree(g: ConnectivityGraph, root: int = 0) -> ConnectivityGraph:
    """Depth-first spanning tree, descending into lowest-index neighbors first."""
    if not g.is_connected():
        raise DisconnectedGraphError("dfs_tree requires a connected graph")
    seen = {root}
    edges = []
    stack = [(root, iter(g.neighbors(root)))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for u in it:
            if u not in seen:
                seen.add(u)
                edges.append((v, u))
                stack.append((u, iter(g.neighbors(u))))
                advanced = True
                break
        if not advanced:
            stack.pop()
    return ConnectivityGraph.from_edges(g.n_vertices, edges)


@dataclass(frozen=True)
class PathSearchResult:
    """Longest-path search outcome: vertex sequence plus an exactness flag."""

    path: tuple[int, ...]
    exact: bool


def longest_simple_path(
    g: ConnectivityGraph,
    length_multiple: int = 1,
    budget: int = 2_000_000,
) -> PathSearchResult:
    """Longest simple path, optionally truncated so its vertex count is a multiple of 3.

    Runs an exhaustive depth-first search with reachability pruning.  If the
    expansion budget runs out, falls back to a deterministic greedy search
    with rotation-extension improvement and reports ``exact=False``.
    """
    if length_multiple not in (1, 3):
        raise InvalidInputError("length_multiple must be 1 or 3")
    if g.n_vertices == 0:
        return PathSearchResult((), True)

    best, exact = _exhaustive_dfs(g, budget)
    if not exact:
        heur = _heuristic_path(g, seeds=[best])
        if len(heur) > len(best):
            best = heur

    if length_multiple == 3:
        keep = (len(best) // 3) * 3
        best = best[:keep]
    return PathSearchResult(tuple(best), exact)


def _exhaustive_dfs(g: ConnectivityGraph, budget: int) -> tuple[list[int], bool]:
    masks = g.neighbor_masks
    n = g.n_vertices
    full = (1 << n) - 1
    best: list[int] = [0] if n else []
    expansions = 0

    # Iterative DFS; stack entries: (vertex, visited_mask, path)
    for start in range(n):
        stack = [(start, 1 << start, [start])]
        while stack:
            v, visited, path = stack.pop()
            expansions += 1
            if expansions > budget:
                return best, False
            if len(path) > len(best):
                best = path
                if len(best) == n:
                    return best, True  # Hamiltonian path; nothing longer exists
            cand = masks[v] & ~visited
            if not cand:
                continue
            reach = _reachable_mask(masks, cand, full & ~visited)
            if len(path) + reach.bit_count() <= len(best):
                continue
            # explore dead-end-prone continuations first (fewest onward moves),
            # so the initial dive behaves like a greedy long walk
            children = sorted(
                _iter_bits(cand),
                key=lambda u: ((masks[u] & ~visited).bit_count(), u),
                reverse=True,
            )
            for u in children:
                stack.append((u, visited | (1 << u), path + [u]))
    return best, True


def _greedy_path(g: ConnectivityGraph, start: int) -> list[int]:
    """Greedy walk preferring the unvisited neighbor with fewest open continuations."""
    masks = g.neighbor_masks
    visited = 1 << start
    path = [start]
    while True:
        cand = masks[path[-1]] & ~visited
        if not cand:
            return path
        nxt = min(_iter_bits(cand), key=lambda u: ((masks[u] & ~visited).bit_count(), u))
        visited |= 1 << nxt
        path.append(nxt)


def _rotation_extend_once(masks: Sequence[int], path: list[int]) -> list[int] | None:
    """Extend the tail by one vertex, searching over rotation-reachable endpoints.

    A rotation keeps the vertex set: if the endpoint e is adjacent to an
    interior vertex path[i], reversing the suffix after i makes path[i+1] the
    new endpoint.  Breadth-first search over endpoints is deterministic and
    visits each endpoint once.
    """
    visited = 0
    for v in path:
        visited |= 1 << v
    seen_ends = {path[-1]}
    queue = [path]
    head = 0
    while head < len(queue):
        p = queue[head]
        head += 1
        end = p[-1]
        free = masks[end] & ~visited
        if free:
            return p + [min(_iter_bits(free))]
        pos = {v: i for i, v in enumerate(p)}
        for u in _iter_bits(masks[end]):
            i = pos[u]
            if i + 2 >= len(p):
                continue
            new_end = p[i + 1]
            if new_end not in seen_ends:
                seen_ends.add(new_end)
                queue.append(p[: i + 1] + p[i + 1:][::-1])
    return None


def _posa_improve(g: ConnectivityGraph, path: Sequence[int]) -> list[int]:
    """Grow a path as far as rotation-extension allows, working both ends."""
    masks = g.neighbor_masks
    path = list(path)
    while len(path) < g.n_vertices:
        grown = _rotation_extend_once(masks, path)
        if grown is None:
            path.reverse()
            grown = _rotation_extend_once(masks, path)
        if grown is None:
            break
        path = grown
    return path


def _heuristic_path(g: ConnectivityGraph, seeds: Iterable[Sequence[int]] = ()) -> list[int]:
    """Greedy walks from every vertex, rotation-extension on the best few seeds."""
    candidates = [list(s) for s in seeds if s]
    for start in range(g.n_vertices):
        candidates.append(_greedy_path(g, start))
    candidates.sort(key=lambda p: (-len(p), p))
    best: list[int] = []
    for seed in candidates[:8]:
        path = _posa_improve(g, seed)
        if len(path) > len(best):
            best = path
            if len(best) == g.n_vertices:
                break
    return best


def connected_subset(g: ConnectivityGraph, count: int, root: int = 0) -> tuple[int, ...]:
    """First `count` vertices of a lowest-index-first breadth-first traversal."""
    if count > g.n_vertices:
        raise InvalidInputError(f"requested {count} vertices from a {g.n_vertices}-vertex graph")
    seen = {root}
    order = [root]
    queue = [root]
    while queue and len(order) < count:
        v = queue.pop(0)
        for u in g.neighbors(v):
            if u not in seen:
                seen.add(u)
                order.append(u)
                queue.append(u)
                if len(order) == count:
                    break
    if len(order) < count:
        raise DisconnectedGraphError("graph component smaller than requested subset")
    return tuple(order)


def induced_subgraph(g: ConnectivityGraph, vertices: Sequence[int]) -> ConnectivityGraph:
    """Subgraph induced on `vertices`, relabeled to 0..len-1 in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    if len(index) != len(vertices):
        raise InvalidInputError("duplicate vertices in subset")
    edges = [
        (index[i], index[j])
        for i, j in g.edges
        if i in index and j in index
    ]
    return ConnectivityGraph.from_edges(len(vertices), edges)
