"""Counting sparsity of multigraphs: pebble games, components, and the
nested two-level condition checked by matroid intersection.

A multigraph is (k, l)-sparse when every vertex subset with at least two
vertices spans at most k*n' - l edges, and tight when additionally the whole
edge count meets k*n - l.  For 0 <= l < 2k the sparse edge sets form a
matroid, decided by the pebble game: every vertex starts with k pebbles, an
edge may be inserted once l + 1 pebbles sit on its endpoints (pebbles can be
pulled along reversed paths), and insertion pays one pebble.

The nested condition layers a second count on a distinguished "red" edge
subset (angular constraint rows): the whole graph must be outer-sparse and
the red subgraph inner-sparse.  Nested-sparse edge sets do not form a
matroid, but they are exactly the common independent sets of two matroids,
so maximum ones come from Edmonds' matroid intersection.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from .errors import InputError, OracleTooLarge, UnsupportedCounts
from .model import PrimitiveCadGraph

RED = "red"
BLACK = "black"

_BRUTE_MAX_VERTICES = 12
_BRUTE_MAX_EDGES = 24


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    color: str = BLACK


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError(f"vertex count must be nonnegative, got {self.n}")
        for k, e in enumerate(self.edges):
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InputError(f"edge {k} endpoints ({e.u}, {e.v}) out of range for {self.n} vertices")
            if e.u == e.v:
                raise InputError(f"edge {k} is a loop at vertex {e.u}; loops are not supported")
            if e.color not in (RED, BLACK):
                raise InputError(f"edge {k} has unknown color {e.color!r}")

    def red_indices(self) -> list[int]:
        return [k for k, e in enumerate(self.edges) if e.color == RED]


def multigraph(n: int, edges: Iterable[tuple]) -> MultiGraph:
    out = []
    for e in edges:
        if len(e) == 2:
            out.append(Edge(e[0], e[1]))
        else:
            out.append(Edge(e[0], e[1], e[2]))
    return MultiGraph(n, tuple(out))


def multigraph_of(pg: PrimitiveCadGraph) -> MultiGraph:
    return MultiGraph(pg.n, tuple(Edge(e.u, e.v, e.color) for e in pg.edges))


@dataclass(frozen=True)
class SparsityCounts:
    k: int
    l: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise UnsupportedCounts(f"k must be at least 1, got {self.k}")
        if not 0 <= self.l < 2 * self.k:
            raise UnsupportedCounts(
                f"l must satisfy 0 <= l < 2k for the pebble game; got k={self.k}, l={self.l}"
            )


@dataclass(frozen=True)
class NestedCounts:
    outer: SparsityCounts
    inner: Optional[SparsityCounts] = None

    def __post_init__(self) -> None:
        if self.inner is not None:
            ok = self.inner.k <= self.outer.k and (
                2 * self.inner.k - self.inner.l <= 2 * self.outer.k - self.outer.l
            )
            if not ok:
                raise UnsupportedCounts(
                    "inner counts must be at least as restrictive as outer counts: "
                    f"got outer=({self.outer.k},{self.outer.l}), inner=({self.inner.k},{self.inner.l})"
                )


BODY_CAD_COUNTS = NestedCounts(SparsityCounts(6, 6), SparsityCounts(3, 3))


# --------------------------------------------------------------------------
# the pebble game


class _PebbleGame:
    """Mutable pebble game state: free pebbles plus the directed multigraph."""

    def __init__(self, n: int, counts: SparsityCounts) -> None:
        self.n = n
        self.k = counts.k
        self.l = counts.l
        self.pebbles = [counts.k] * n
        self.out: list[Counter[int]] = [Counter() for _ in range(n)]

    def _reverse(self, x: int, y: int) -> None:
        self.out[x][y] -= 1
        if self.out[x][y] == 0:
            del self.out[x][y]
        self.out[y][x] += 1

    def _find_pebble(self, roots: tuple[int, int]) -> bool:
        """DFS from the roots for a free pebble; on success move it to a root."""
        pred: dict[int, Optional[int]] = {roots[0]: None, roots[1]: None}
        stack = [roots[1], roots[0]]
        while stack:
            x = stack.pop()
            for y in sorted(self.out[x]):
                if y in pred:
                    continue
                pred[y] = x
                if self.pebbles[y] > 0:
                    self.pebbles[y] -= 1
                    node = y
                    while pred[node] is not None:
                        parent = pred[node]
                        self._reverse(parent, node)  # type: ignore[arg-type]
                        node = parent  # type: ignore[assignment]
                    self.pebbles[node] += 1
                    return True
                stack.append(y)
        return False

    def accept(self, u: int, v: int) -> bool:
        """Insert the edge if sparsity allows it; False means rejected."""
        while self.pebbles[u] + self.pebbles[v] < self.l + 1:
            if not self._find_pebble((u, v)):
                return False
        if self.pebbles[u] > 0:
            self.pebbles[u] -= 1
            self.out[u][v] += 1
        else:
            self.pebbles[v] -= 1
            self.out[v][u] += 1
        return True

    def component_after_insert(self, u: int, v: int) -> Optional[frozenset[int]]:
        """The maximal tight set through a just-inserted edge, if any.

        Exactly l pebbles left on the endpoints and no further pebble
        collectible means the edge closed a tight set; it is the complement
        of everything that still has a directed path to a free pebble.
        """
        if self.pebbles[u] + self.pebbles[v] > self.l:
            return None
        reach = {u, v}
        stack = [u, v]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in reach:
                    continue
                if self.pebbles[y] > 0:
                    return None
                reach.add(y)
                stack.append(y)
        starters = [w for w in range(self.n) if w not in reach and self.pebbles[w] > 0]
        visited = set(starters)
        rev: list[list[int]] = [[] for _ in range(self.n)]
        for x in range(self.n):
            for y in self.out[x]:
                rev[y].append(x)
        stack = list(starters)
        while stack:
            x = stack.pop()
            for w in rev[x]:
                if w not in visited:
                    visited.add(w)
                    stack.append(w)
        return frozenset(range(self.n)) - visited


@dataclass(frozen=True)
class PebbleResult:
    counts: SparsityCounts
    accepted: tuple[int, ...]
    rejected: tuple[int, ...]
    sparse: bool
    tight: bool


@dataclass(frozen=True)
class PebbleComponentsResult:
    counts: SparsityCounts
    accepted: tuple[int, ...]
    rejected: tuple[int, ...]
    sparse: bool
    components: tuple[tuple[int, ...], ...]


def _play(g: MultiGraph, counts: SparsityCounts, edge_indices: Optional[Sequence[int]] = None,
          track_components: bool = False):
    game = _PebbleGame(g.n, counts)
    indices = range(len(g.edges)) if edge_indices is None else edge_indices
    accepted: list[int] = []
    rejected: list[int] = []
    components: list[frozenset[int]] = []
    for idx in indices:
        e = g.edges[idx]
        if not game.accept(e.u, e.v):
            rejected.append(idx)
            continue
        accepted.append(idx)
        if track_components:
            comp = game.component_after_insert(e.u, e.v)
            if comp is not None:
                components = [c for c in components if len(c & comp) < 2]
                components.append(comp)
    return accepted, rejected, components


def pebble_decision(g: MultiGraph, counts: SparsityCounts) -> PebbleResult:
    """Greedy pebble-game run over all edges in input order.

    The accepted set is a maximum sparse subset (the sparse sets form a
    matroid in the supported count range), so the graph is sparse exactly
    when nothing got rejected.
    """
    accepted, rejected, _ = _play(g, counts)
    sparse = not rejected
    tight = sparse and len(g.edges) == counts.k * g.n - counts.l
    return PebbleResult(counts, tuple(accepted), tuple(rejected), sparse, tight)


def pebble_components(g: MultiGraph, counts: SparsityCounts) -> PebbleComponentsResult:
    """Pebble-game run that also reports maximal tight vertex sets."""
    accepted, rejected, components = _play(g, counts, track_components=True)
    ordered = tuple(sorted((tuple(sorted(c)) for c in components), key=lambda t: (t[0], len(t), t)))
    return PebbleComponentsResult(counts, tuple(accepted), tuple(rejected), not rejected, ordered)


def sparse_bruteforce(g: MultiGraph, counts: SparsityCounts) -> bool:
    """Check the sparsity counts on every vertex subset directly.

    Exponential; guarded to small graphs.  This is the oracle the pebble
    game is tested against, so it must stay independent of it.
    """
    if g.n > _BRUTE_MAX_VERTICES or len(g.edges) > _BRUTE_MAX_EDGES:
        raise OracleTooLarge(
            f"brute-force sparsity limited to {_BRUTE_MAX_VERTICES} vertices / "
            f"{_BRUTE_MAX_EDGES} edges; got {g.n} / {len(g.edges)}"
        )
    for size in range(2, g.n + 1):
        for subset in combinations(range(g.n), size):
            members = set(subset)
            spanned = sum(1 for e in g.edges if e.u in members and e.v in members)
            if spanned > counts.k * size - counts.l:
                return False
    return True


# --------------------------------------------------------------------------
# matroid intersection (Edmonds augmenting paths)


def matroid_intersect(
    ground: int,
    indep1: Callable[[Sequence[int]], bool],
    indep2: Callable[[Sequence[int]], bool],
) -> list[int]:
    """A maximum common independent subset of {0, ..., ground-1}.

    Standard augmenting-path scheme: build the exchange digraph of the
    current common independent set, find a shortest path from elements
    addable in the first matroid to elements addable in the second
    (breadth-first, lowest index first), and flip it.  No path means the
    set is maximum.
    """
    current: set[int] = set()

    def augment() -> Optional[list[int]]:
        inside = sorted(current)
        outside = [x for x in range(ground) if x not in current]
        x1 = [x for x in outside if indep1(inside + [x])]
        x2 = [x for x in outside if indep2(inside + [x])]
        if not x1 or not x2:
            return None
        x2_set = set(x2)
        # arcs of the exchange digraph, computed lazily below
        def arcs_from(node: int) -> list[int]:
            if node in current:
                rest = [y for y in inside if y != node]
                return [x for x in outside if indep1(rest + [x])]
            return [y for y in inside if indep2([z for z in inside if z != y] + [node])]

        parent: dict[int, Optional[int]] = {}
        queue: list[int] = []
        for s in sorted(x1):
            parent[s] = None
            queue.append(s)
        head = 0
        while head < len(queue):
            node = queue[head]
            head += 1
            if node in x2_set:
                path = []
                walk: Optional[int] = node
                while walk is not None:
                    path.append(walk)
                    walk = parent[walk]
                return path
            for nxt in sorted(arcs_from(node)):
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        return None

    while True:
        path = augment()
        if path is None:
            return sorted(current)
        current.symmetric_difference_update(path)


# --------------------------------------------------------------------------
# nested sparsity


@dataclass(frozen=True)
class NestedResult:
    counts: NestedCounts
    sparse: bool
    tight: bool  # sparse and the whole edge count meets the outer count
    extracted: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]


def _sparse_on(g: MultiGraph, counts: SparsityCounts, edge_indices: Sequence[int]) -> bool:
    game = _PebbleGame(g.n, counts)
    return all(game.accept(g.edges[i].u, g.edges[i].v) for i in edge_indices)


def nested_analysis(g: MultiGraph, counts: NestedCounts = BODY_CAD_COUNTS) -> NestedResult:
    """Maximum nested-sparse edge set, verdict for the whole edge set, and
    the outer-count components of the extracted subgraph.

    The two matroids intersected are the outer count matroid on all edges
    and the inner count matroid on red edges (black edges are free there).
    """
    inner = counts.inner

    def indep1(idxs: Sequence[int]) -> bool:
        return _sparse_on(g, counts.outer, idxs)

    def indep2(idxs: Sequence[int]) -> bool:
        if inner is None:
            return True
        return _sparse_on(g, inner, [i for i in idxs if g.edges[i].color == RED])

    if inner is None:
        extracted = pebble_decision(g, counts.outer).accepted
    else:
        extracted = tuple(matroid_intersect(len(g.edges), indep1, indep2))
    sparse = len(extracted) == len(g.edges)
    tight = sparse and len(g.edges) == counts.outer.k * g.n - counts.outer.l
    comp = pebble_components(MultiGraph(g.n, tuple(g.edges[i] for i in extracted)), counts.outer)
    return NestedResult(counts, sparse, tight, tuple(extracted), comp.components)


def nested_bruteforce(g: MultiGraph, counts: NestedCounts) -> tuple[bool, int]:
    """(is the whole edge set nested-sparse, maximum nested-sparse size).

    Checks subsets exhaustively; guarded to small graphs.
    """
    if g.n > _BRUTE_MAX_VERTICES or len(g.edges) > 16:
        raise OracleTooLarge(
            f"brute-force nested sparsity limited to {_BRUTE_MAX_VERTICES} vertices / 16 edges; "
            f"got {g.n} / {len(g.edges)}"
        )

    def is_nested(idxs: Sequence[int]) -> bool:
        sub = MultiGraph(g.n, tuple(g.edges[i] for i in idxs))
        if not sparse_bruteforce(sub, counts.outer):
            return False
        if counts.inner is not None:
            red = MultiGraph(g.n, tuple(e for e in sub.edges if e.color == RED))
            if not sparse_bruteforce(red, counts.inner):
                return False
        return True

    best = 0
    m = len(g.edges)
    for size in range(m, -1, -1):
        if size <= best:
            break
        for subset in combinations(range(m), size):
            if is_nested(subset):
                best = size
                break
    return best == m, best


# --------------------------------------------------------------------------
# graph files


def graph_to_data(g: MultiGraph) -> dict[str, object]:
    return {
        "version": 1,
        "vertex_count": g.n,
        "edges": [
            {"u": e.u, "v": e.v, **({"color": e.color} if e.color != BLACK else {})}
            for e in g.edges
        ],
    }


def graph_from_data(data: object) -> MultiGraph:
    if not isinstance(data, dict):
        raise InputError("graph file must be a JSON object")
    if data.get("version") != 1:
        raise InputError(f"unsupported graph file version {data.get('version')!r}")
    n = data.get("vertex_count")
    if not isinstance(n, int) or n < 0:
        raise InputError(f"bad vertex_count: {n!r}")
    raw = data.get("edges")
    if not isinstance(raw, list):
        raise InputError("graph file needs an 'edges' list")
    edges = []
    for entry in raw:
        if not isinstance(entry, dict) or "u" not in entry or "v" not in entry:
            raise InputError(f"bad edge entry: {entry!r}")
        u, v = entry["u"], entry["v"]
        if not isinstance(u, int) or not isinstance(v, int):
            raise InputError(f"edge endpoints must be integers: {entry!r}")
        edges.append(Edge(u, v, str(entry.get("color", BLACK))))
    return MultiGraph(n, tuple(edges))
