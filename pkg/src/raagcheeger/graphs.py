"""Finite simplicial graphs: validation, boundary and valence, the exact
graph Cheeger constant, spectral bounds, generators, and I/O.

A graph is simplicial when it has no self-loops and no repeated edges; the
constructor enforces both.  Vertex subsets are plain iterables of labels,
validated against the parent graph by every operation that takes one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .budgets import DEFAULT_BUDGETS, BudgetError, Budgets


class GraphError(ValueError):
    """Malformed graph, foreign vertex, or violated precondition."""


class CheegerUndefinedError(GraphError):
    """Cheeger constant requested for a graph with no admissible subset."""


@dataclass(frozen=True)
class SimplicialGraph:
    """An undirected, loop-free, multi-edge-free graph with labeled vertices.

    ``edges`` is canonical: endpoints ordered by vertex index, edges sorted
    lexicographically on the index pair.  Use :meth:`of` to build one.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @staticmethod
    def of(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> "SimplicialGraph":
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex labels")
        index = {v: i for i, v in enumerate(verts)}
        seen: set[tuple[int, int]] = set()
        canonical: list[tuple[int, int]] = []
        for e in edges:
            u, v = (str(x) for x in e)
            if u not in index:
                raise GraphError(f"edge ({u}, {v}) uses undeclared vertex {u!r}")
            if v not in index:
                raise GraphError(f"edge ({u}, {v}) uses undeclared vertex {v!r}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u!r} is not simplicial")
            i, j = index[u], index[v]
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise GraphError(f"repeated edge ({u}, {v}) is not simplicial")
            seen.add((i, j))
            canonical.append((i, j))
        canonical.sort()
        return SimplicialGraph(verts, tuple((verts[i], verts[j]) for i, j in canonical))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: str) -> int:
        if v not in self.index:
            raise GraphError(f"unknown vertex {v!r}")
        return len(self.adjacency[v])

    def edge_index_pairs(self) -> tuple[tuple[int, int], ...]:
        """Edges as (i, j) index pairs with i < j, in canonical order."""
        idx = self.index
        return tuple((idx[u], idx[v]) for u, v in self.edges)

    def induced(self, labels: Iterable[str]) -> "SimplicialGraph":
        """The full subgraph on ``labels`` (in this graph's vertex order)."""
        keep = set(labels)
        for v in keep:
            if v not in self.index:
                raise GraphError(f"unknown vertex {v!r}")
        verts = [v for v in self.vertices if v in keep]
        edges = [(u, v) for u, v in self.edges if u in keep and v in keep]
        return SimplicialGraph.of(verts, edges)

    def relabeled(self, mapping: dict[str, str]) -> "SimplicialGraph":
        verts = [mapping[v] for v in self.vertices]
        edges = [(mapping[u], mapping[v]) for u, v in self.edges]
        return SimplicialGraph.of(verts, edges)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    @staticmethod
    def from_json_dict(data: dict) -> "SimplicialGraph":
        return SimplicialGraph.of(data["vertices"], data["edges"])

    def to_edgelist(self) -> str:
        """Line format: "n m" header then one "u v" pair per line.

        Vertex labels are implicit (v0 .. v{n-1}); serializing a graph with
        any other labels is an error, use JSON for those.
        """
        expected = tuple(f"v{i}" for i in range(self.n_vertices))
        if self.vertices != expected:
            raise GraphError("edgelist format requires implicit labels v0..v{n-1}; use JSON")
        lines = [f"{self.n_vertices} {self.n_edges}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_edgelist(text: str) -> "SimplicialGraph":
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        if not lines:
            raise GraphError("empty edgelist input")
        try:
            n, m = (int(x) for x in lines[0].split())
        except ValueError:
            raise GraphError(f"bad edgelist header {lines[0]!r}, expected 'n m'") from None
        if len(lines) - 1 != m:
            raise GraphError(f"edgelist header promises {m} edges, found {len(lines) - 1}")
        verts = [f"v{i}" for i in range(n)]
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphError(f"bad edgelist line {ln!r}, expected 'u v'")
            edges.append((parts[0], parts[1]))
        return SimplicialGraph.of(verts, edges)


# -- boundary and Cheeger ----------------------------------------------------


def _check_subset(graph: SimplicialGraph, members: Iterable[str]) -> set[str]:
    a = {str(v) for v in members}
    for v in a:
        if v not in graph.index:
            raise GraphError(f"subset member {v!r} is not a vertex of the graph")
    return a


def boundary(graph: SimplicialGraph, members: Iterable[str]) -> frozenset[str]:
    """Vertices outside the subset that are adjacent to at least one member."""
    a = _check_subset(graph, members)
    out: set[str] = set()
    for v in a:
        out.update(graph.adjacency[v])
    return frozenset(out - a)


def cheeger_of_subset(graph: SimplicialGraph, members: Iterable[str]) -> Fraction:
    """|boundary(A)| / |A| for a nonempty A with at most half the vertices."""
    a = _check_subset(graph, members)
    if not a:
        raise GraphError("Cheeger quotient of the empty subset is undefined")
    if 2 * len(a) > graph.n_vertices:
        raise GraphError(
            f"subset of size {len(a)} exceeds half of {graph.n_vertices} vertices"
        )
    return Fraction(len(boundary(graph, a)), len(a))


@dataclass(frozen=True)
class GraphCheegerResult:
    value: Fraction
    minimizer: tuple[str, ...]
    subsets_visited: int

    def to_json_dict(self) -> dict:
        return {
            "h": str(self.value),
            "minimizer": list(self.minimizer),
            "subsets_visited": self.subsets_visited,
        }


def cheeger_graph_exact(
    graph: SimplicialGraph, budgets: Budgets = DEFAULT_BUDGETS
) -> GraphCheegerResult:
    """Exact minimum of |boundary(A)|/|A| over nonempty A with 2|A| <= n.

    Brute force over all admissible subsets, sizes ascending and index
    combinations lexicographic, reporting the first minimizer in that order.
    Zero is a global minimum, so the scan stops at the first disconnection
    witness.
    """
    n = graph.n_vertices
    if n < 2:
        raise CheegerUndefinedError(
            f"Cheeger constant undefined on {n} vertex/vertices: no admissible subset"
        )
    if n > budgets.subset_vertices:
        raise BudgetError(
            f"exact subset enumeration capped at {budgets.subset_vertices} vertices "
            f"(requested {n}; raise with --budget-subsets or use spectral bounds)"
        )
    adj_masks = []
    for v in graph.vertices:
        m = 0
        for w in graph.adjacency[v]:
            m |= 1 << graph.index[w]
        adj_masks.append(m)
    best: Fraction | None = None
    best_set: tuple[str, ...] = ()
    visited = 0
    for size in range(1, n // 2 + 1):
        for combo in itertools.combinations(range(n), size):
            visited += 1
            mask = 0
            nb = 0
            for i in combo:
                mask |= 1 << i
                nb |= adj_masks[i]
            h = Fraction((nb & ~mask).bit_count(), size)
            if best is None or h < best:
                best = h
                best_set = tuple(graph.vertices[i] for i in combo)
                if not h:
                    return GraphCheegerResult(best, best_set, visited)
    assert best is not None
    return GraphCheegerResult(best, best_set, visited)


def max_valence(graph: SimplicialGraph) -> int:
    """Largest vertex degree; 0 for the empty or edgeless graph."""
    if not graph.vertices:
        return 0
    return max(len(graph.adjacency[v]) for v in graph.vertices)


def is_connected(graph: SimplicialGraph) -> bool:
    """Standard connectivity; empty and one-vertex graphs count as connected."""
    if graph.n_vertices <= 1:
        return True
    seen = {graph.vertices[0]}
    stack = [graph.vertices[0]]
    while stack:
        v = stack.pop()
        for w in graph.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == graph.n_vertices


# -- spectral bounds ---------------------------------------------------------

_POWER_TOL = 1e-9
_POWER_MAX_ITER = 200_000


def laplacian_second_eigenvalue(graph: SimplicialGraph) -> float:
    """Algebraic connectivity of a connected graph by deflated power iteration.

    Power-iterates c.I - L on the complement of the all-ones eigenvector,
    with c above the spectral radius, until the Rayleigh quotient moves by
    less than a 1e-9 relative tolerance.  Deterministic start vector.
    """
    n = graph.n_vertices
    if n < 2:
        raise GraphError("second Laplacian eigenvalue needs at least 2 vertices")
    if not is_connected(graph):
        raise GraphError("spectral bounds require a connected graph")
    lap = np.zeros((n, n), dtype=np.float64)
    for u, v in graph.edges:
        i, j = graph.index[u], graph.index[v]
        lap[i, j] -= 1.0
        lap[j, i] -= 1.0
        lap[i, i] += 1.0
        lap[j, j] += 1.0
    dmax = float(max(lap[i, i] for i in range(n)))
    c = 2.0 * dmax + 1.0
    ones = np.full(n, 1.0 / np.sqrt(n))
    rng = np.random.default_rng(0x5EED)
    v = rng.standard_normal(n)
    v -= (v @ ones) * ones
    v /= np.linalg.norm(v)
    prev = None
    for _ in range(_POWER_MAX_ITER):
        w = c * v - lap @ v
        w -= (w @ ones) * ones
        norm = np.linalg.norm(w)
        if norm == 0.0:
            break
        v = w / norm
        est = c - float(v @ (c * v - lap @ v))
        if prev is not None and abs(est - prev) <= _POWER_TOL * max(1.0, abs(est)):
            return est
        prev = est
    return prev if prev is not None else 0.0


def spectral_cheeger_bounds(graph: SimplicialGraph) -> tuple[float, float]:
    """Floating-point sandwich lower <= h <= upper for a connected graph.

    For the vertex-boundary Cheeger constant the valid discrete Cheeger
    inequalities are lambda2/(2*d_max) <= h <= sqrt(2*d_max*lambda2): each
    crossing edge meets the vertex boundary, and a boundary vertex absorbs at
    most d_max crossing edges.  (The edge-expansion bound lambda2/2 fails for
    the vertex version: K4 has lambda2/2 = 2 but h = 1.)
    """
    lam2 = laplacian_second_eigenvalue(graph)
    dmax = max_valence(graph)
    lower = lam2 / (2.0 * dmax)
    upper = float(np.sqrt(2.0 * dmax * lam2))
    return lower, upper


# -- generators --------------------------------------------------------------


def _labels(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def edgeless(n: int) -> SimplicialGraph:
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    return SimplicialGraph.of(_labels(n), [])


def cycle(n: int) -> SimplicialGraph:
    if n < 3:
        raise GraphError("a simplicial cycle needs at least 3 vertices")
    vs = _labels(n)
    return SimplicialGraph.of(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def path(n: int) -> SimplicialGraph:
    if n < 1:
        raise GraphError("a path needs at least 1 vertex")
    vs = _labels(n)
    return SimplicialGraph.of(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def complete(n: int) -> SimplicialGraph:
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    vs = _labels(n)
    return SimplicialGraph.of(vs, list(itertools.combinations(vs, 2)))


def star(leaves: int) -> SimplicialGraph:
    """K_{1,leaves}: a hub adjacent to ``leaves`` pendant vertices."""
    if leaves < 0:
        raise GraphError("leaf count must be nonnegative")
    vs = _labels(leaves + 1)
    return SimplicialGraph.of(vs, [(vs[0], v) for v in vs[1:]])


def random_regular(n: int, d: int, seed: int) -> SimplicialGraph:
    """Random d-regular graph via the pairing model with whole-attempt rejection.

    Deterministic for a fixed seed.  Requires n*d even and 0 <= d < n.
    """
    if d < 0 or d >= n or (n * d) % 2 != 0:
        raise GraphError(f"unsatisfiable degree sequence: n={n}, d={d}")
    vs = _labels(n)
    if d == 0:
        return SimplicialGraph.of(vs, [])
    rng = random.Random(seed)
    for _ in range(100_000):
        stubs = [i for i in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        seen: set[tuple[int, int]] = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            if a == b:
                ok = False
                break
            if a > b:
                a, b = b, a
            if (a, b) in seen:
                ok = False
                break
            seen.add((a, b))
        if ok:
            return SimplicialGraph.of(vs, [(vs[i], vs[j]) for i, j in seen])
    raise GraphError(f"pairing model failed to produce a simple {d}-regular graph on {n} vertices")


def margulis_like(m: int) -> SimplicialGraph:
    """Degree-<=8 Gabber--Galil style graph on (Z/mZ)^2, reduced to a simple graph.

    Loops and duplicate pairs produced by the eight affine maps are discarded.
    """
    if m < 2:
        raise GraphError("margulis_like needs m >= 2")
    verts = _labels(m * m)
    label = lambda x, y: f"v{(x % m) * m + (y % m)}"
    edges: set[tuple[str, str]] = set()
    order = {v: i for i, v in enumerate(verts)}
    for x in range(m):
        for y in range(m):
            here = label(x, y)
            images = [
                label(x + 2 * y, y),
                label(x - 2 * y, y),
                label(x + 2 * y + 1, y),
                label(x - 2 * y - 1, y),
                label(x, y + 2 * x),
                label(x, y - 2 * x),
                label(x, y + 2 * x + 1),
                label(x, y - 2 * x - 1),
            ]
            for img in images:
                if img == here:
                    continue
                a, b = sorted((here, img), key=order.__getitem__)
                edges.add((a, b))
    return SimplicialGraph.of(verts, sorted(edges, key=lambda e: (order[e[0]], order[e[1]])))


def labeled_graphs(n: int) -> Iterator[SimplicialGraph]:
    """All 2^C(n,2) labeled graphs on vertices v0..v{n-1}, by ascending edge mask."""
    vs = _labels(n)
    pairs = list(itertools.combinations(vs, 2))
    for mask in range(1 << len(pairs)):
        yield SimplicialGraph.of(vs, [e for k, e in enumerate(pairs) if (mask >> k) & 1])


def sample_labeled_graphs(n: int, count: int, seed: int) -> list[SimplicialGraph]:
    """Seeded sample of distinct labeled n-vertex graphs, without replacement."""
    vs = _labels(n)
    pairs = list(itertools.combinations(vs, 2))
    total = 1 << len(pairs)
    if count > total:
        raise GraphError(f"cannot sample {count} distinct graphs from {total}")
    rng = random.Random(seed)
    masks = rng.sample(range(total), count)
    return [
        SimplicialGraph.of(vs, [e for k, e in enumerate(pairs) if (mask >> k) & 1])
        for mask in masks
    ]
