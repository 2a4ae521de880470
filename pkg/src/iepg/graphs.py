"""Graph families used as sparsity targets, plus cluster detection and
clique/cluster shape recognition.

Vertices are 1-indexed throughout.  The canonical labeling of the
clique-plus-cluster family puts the cluster first (``1..n-k``), then the
clique, whose first ``r`` vertices form the shared neighborhood ``S``.
That is the block order the constructions produce, so pattern checks are
plain edge-set comparisons.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .core import DEFAULT_TOL, NotInFamily, ParameterError, StructuralError, SymMatrix, ToleranceProfile

Edge = tuple[int, int]


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class GraphSpec:
    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if int(n) != n or n < 0:
            raise StructuralError(f"vertex count must be a nonnegative integer, got {n!r}")
        n = int(n)
        seen: set[Edge] = set()
        for pair in edges:
            i, j = (int(x) for x in pair)
            if i == j:
                raise StructuralError(f"self-loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise StructuralError(f"edge {{{i},{j}}} has an endpoint outside 1..{n}")
            e = _edge(i, j)
            if e in seen:
                raise StructuralError(f"duplicate edge {{{e[0]},{e[1]}}}")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(j if i == v else i for i, j in self.edges if v in (i, j))

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def has_edge(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n

    def relabel(self, mapping: dict[int, int]) -> "GraphSpec":
        return GraphSpec(self.n, ((mapping[i], mapping[j]) for i, j in self.edges))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def build_complete(n: int) -> GraphSpec:
    if n < 1:
        raise ParameterError(f"complete graph needs n >= 1, got {n}")
    return GraphSpec(n, combinations(range(1, n + 1), 2))


def build_kn_minus_edge(n: int) -> GraphSpec:
    """``K_n`` with the edge ``{1, 2}`` removed."""
    if n < 2:
        raise ParameterError(f"K_n - e needs n >= 2, got {n}")
    return GraphSpec(n, (e for e in combinations(range(1, n + 1), 2) if e != (1, 2)))


def _check_clique_cluster_params(n: int, k: int, r: int) -> None:
    if n - k < 2:
        raise ParameterError(f"the cluster needs at least 2 vertices (n - k = {n - k})")
    if k < 2:
        raise ParameterError(f"the clique needs at least 2 vertices (k = {k})")
    if not 2 <= r <= k:
        raise ParameterError(f"need 2 <= r <= k, got r = {r}, k = {k}")


def build_clique_cluster(n: int, k: int, r: int, cluster_is_clique: bool = False) -> GraphSpec:
    """Clique ``K_k`` plus a cluster of ``n - k`` vertices sharing ``r`` clique neighbors."""
    _check_clique_cluster_params(n, k, r)
    c = n - k
    cluster = range(1, c + 1)
    clique = range(c + 1, n + 1)
    s = range(c + 1, c + r + 1)
    edges = set(combinations(clique, 2))
    edges.update((u, v) for u in cluster for v in s)
    if cluster_is_clique:
        edges.update(combinations(cluster, 2))
    return GraphSpec(n, edges)


def build_join_family(n: int, i: int, j: int) -> GraphSpec:
    """``K_i v (K_j u K_{n-i-j})`` labeled ``K_j``, then ``K_i``, then the rest."""
    if not 1 <= j <= n - 2:
        raise ParameterError(f"need 1 <= j <= n - 2, got j = {j}, n = {n}")
    if not 1 <= i <= n - j - 1:
        raise ParameterError(f"need 1 <= i <= n - j - 1, got i = {i} (n - j - 1 = {n - j - 1})")
    kj = range(1, j + 1)
    ki = range(j + 1, j + i + 1)
    rest = range(j + i + 1, n + 1)
    edges = set(combinations(kj, 2)) | set(combinations(ki, 2)) | set(combinations(rest, 2))
    edges.update((u, v) for u in kj for v in ki)
    edges.update((u, v) for u in ki for v in rest)
    return GraphSpec(n, edges)


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cluster:
    members: tuple[int, ...]
    shared: tuple[int, ...]


def detect_clusters(g: GraphSpec) -> list[Cluster]:
    """Maximal groups (size >= 2) of vertices with identical open neighborhoods.

    Such vertices are automatically pairwise nonadjacent.  Groups are
    returned ordered by their smallest member.
    """
    adj = g.adjacency()
    groups: dict[frozenset[int], list[int]] = defaultdict(list)
    for v in range(1, g.n + 1):
        groups[frozenset(adj[v])].append(v)
    out = [Cluster(tuple(vs), tuple(sorted(nb))) for nb, vs in groups.items() if len(vs) >= 2]
    return sorted(out, key=lambda c: c.members[0])


def _closed_twin_classes(g: GraphSpec) -> list[tuple[int, ...]]:
    adj = g.adjacency()
    groups: dict[frozenset[int], list[int]] = defaultdict(list)
    for v in range(1, g.n + 1):
        groups[frozenset(adj[v] | {v})].append(v)
    return sorted((tuple(vs) for vs in groups.values() if len(vs) >= 2), key=lambda t: t[0])


@dataclass(frozen=True)
class CliqueClusterShape:
    n: int
    k: int
    r: int
    cluster: tuple[int, ...]
    clique: tuple[int, ...]
    s: tuple[int, ...]
    cluster_is_clique: bool

    def canonical_labels(self) -> dict[int, int]:
        """Map original vertex labels to the canonical block order."""
        order = list(self.cluster) + list(self.s) + [v for v in self.clique if v not in self.s]
        return {v: idx + 1 for idx, v in enumerate(order)}

    def canonical_graph(self) -> GraphSpec:
        return build_clique_cluster(self.n, self.k, self.r, self.cluster_is_clique)


def _is_clique(adj: dict[int, set[int]], vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(v in adj[u] for u, v in combinations(vs, 2))


def _shape_from(g, adj, cluster, s, flag) -> CliqueClusterShape | None:
    members = set(cluster)
    clique = tuple(v for v in range(1, g.n + 1) if v not in members)
    if len(cluster) < 2 or len(clique) < 2 or len(s) < 2:
        return None
    if not set(s) <= set(clique) or not _is_clique(adj, clique):
        return None
    shape = CliqueClusterShape(g.n, len(clique), len(s), tuple(cluster), clique, tuple(sorted(s)), flag)
    # exact confirmation: relabel and compare edge sets
    if g.relabel(shape.canonical_labels()).edges != shape.canonical_graph().edges:
        return None
    return shape


def recognize_shape(g: GraphSpec) -> CliqueClusterShape:
    """Find a clique-plus-cluster decomposition of ``g``.

    Independent clusters (false twins) are tried first, then clusters that
    are themselves cliques (closed twins).  Among several candidates the
    one containing the smallest vertex label wins, which makes the
    canonical graphs round-trip.
    """
    if g.n < 4:
        raise NotInFamily(f"need at least 4 vertices, got {g.n}")
    if not g.is_connected():
        raise NotInFamily("graph is not connected")
    adj = g.adjacency()

    for c in detect_clusters(g):
        shape = _shape_from(g, adj, c.members, c.shared, False)
        if shape is not None:
            return shape

    if len(g.edges) == g.n * (g.n - 1) // 2:
        # K_n: any two vertices form a clique-cluster with S = everything else
        return _shape_from(g, adj, (1, 2), tuple(range(3, g.n + 1)), True)  # type: ignore[return-value]

    for cls in _closed_twin_classes(g):
        s = tuple(sorted(adj[cls[0]] - set(cls)))
        shape = _shape_from(g, adj, cls, s, True)
        if shape is not None:
            return shape

    raise NotInFamily("graph is not a clique plus a single cluster (C, S)")


def pattern_of(m: SymMatrix, tol: ToleranceProfile = DEFAULT_TOL) -> GraphSpec:
    """Off-diagonal support of ``m``: edge ``{i,j}`` iff ``|m_ij| > zero_tol * scale``."""
    arr = np.asarray(m.entries if isinstance(m, SymMatrix) else m, dtype=float)
    n = arr.shape[0]
    # scale over off-diagonal entries only, so shifting the diagonal leaves the pattern alone
    off = arr[~np.eye(n, dtype=bool)] if n > 1 else np.zeros(0)
    eps = tol.zero_tol * max(1.0, float(np.max(np.abs(off))) if off.size else 1.0)
    iu, ju = np.triu_indices(n, 1)
    mask = np.abs(arr[iu, ju]) > eps
    return GraphSpec(n, ((int(i) + 1, int(j) + 1) for i, j in zip(iu[mask], ju[mask])))
