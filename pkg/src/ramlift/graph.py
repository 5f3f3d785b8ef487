"""Oriented undirected multigraphs.

Each stored edge ``j`` is the positively oriented edge with ``head(j)`` and
``tail(j)``; its reverse ``-j`` is implicit.  Loops and parallel edges are
allowed, and a loop contributes 2 to the degree of its vertex.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence, TypeVar

G = TypeVar("G")


class DisconnectedGraph(ValueError):
    pass


@dataclass(frozen=True)
class OrientedMultigraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(h), int(t)) for h, t in self.edges))
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for j, (h, t) in enumerate(self.edges):
            if not (0 <= h < self.n and 0 <= t < self.n):
                raise ValueError(f"edge {j} = ({h}, {t}) has a vertex outside 0..{self.n - 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Sequence[int]]) -> OrientedMultigraph:
        return cls(n, tuple((h, t) for h, t in edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def head(self, j: int) -> int:
        return self.edges[j][0]

    def tail(self, j: int) -> int:
        return self.edges[j][1]

    def is_loop(self, j: int) -> bool:
        h, t = self.edges[j]
        return h == t

    @property
    def has_loops(self) -> bool:
        return any(h == t for h, t in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for h, t in self.edges:
            deg[h] += 1
            deg[t] += 1
        return deg

    def incident(self, v: int) -> list[int]:
        """Edge indices touching v, in index order (a loop listed once)."""
        return [j for j, (h, t) in enumerate(self.edges) if h == v or t == v]

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for h, t in self.edges:
            a[h][t] += 1
            a[t][h] += 1
        return a

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return len(_components(self)[0]) == self.n

    def is_tree(self) -> bool:
        return self.is_connected() and self.num_edges == self.n - 1

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> OrientedMultigraph:
        try:
            return cls.from_edges(int(obj["n"]), obj["edges"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc


def _components(g: OrientedMultigraph) -> list[list[int]]:
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for h, t in g.edges:
        nbrs[h].append(t)
        nbrs[t].append(h)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def two_coloring(g: OrientedMultigraph) -> list[int] | None:
    """BFS 2-coloring (vertex 0 gets color 0), or None if not bipartite."""
    color = [-1] * g.n
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for h, t in g.edges:
        nbrs[h].append(t)
        nbrs[t].append(h)
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


@dataclass(frozen=True)
class GraphReport:
    connected: bool
    bipartite: bool
    regular_degree: int | None
    biregular_degrees: tuple[int, int] | None
    has_loops: bool
    max_degree: int

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "bipartite": self.bipartite,
            "regular_degree": self.regular_degree,
            "biregular_degrees": list(self.biregular_degrees) if self.biregular_degrees else None,
            "has_loops": self.has_loops,
            "max_degree": self.max_degree,
        }


def classify(g: OrientedMultigraph) -> GraphReport:
    if g.n == 0:
        raise ValueError("classify needs a nonempty graph")
    deg = g.degrees()
    connected = g.is_connected()
    coloring = two_coloring(g)
    regular = deg[0] if all(d == deg[0] for d in deg) else None
    biregular = None
    if connected and coloring is not None and g.n >= 2:
        sides = [[deg[v] for v in range(g.n) if coloring[v] == c] for c in (0, 1)]
        if all(side and all(d == side[0] for d in side) for side in sides):
            biregular = (sides[0][0], sides[1][0])
    return GraphReport(
        connected=connected,
        bipartite=coloring is not None,
        regular_degree=regular,
        biregular_degrees=biregular,
        has_loops=g.has_loops,
        max_degree=max(deg),
    )


def subdivide(g: OrientedMultigraph) -> OrientedMultigraph:
    """Put a midpoint n+j on every edge j; new edges 2j, 2j+1 run mid -> head, mid -> tail."""
    edges = []
    for j, (h, t) in enumerate(g.edges):
        mid = g.n + j
        edges.append((mid, h))
        edges.append((mid, t))
    return OrientedMultigraph(g.n + g.num_edges, tuple(edges))


def bfs_tree_edges(g: OrientedMultigraph) -> list[int]:
    """Canonical spanning tree: BFS from vertex 0, edges scanned in index order."""
    if not g.is_connected():
        raise DisconnectedGraph("spanning tree needs a connected graph")
    seen = [False] * g.n
    seen[0] = True
    tree = []
    queue = deque([0])
    incident = [g.incident(v) for v in range(g.n)]
    while queue:
        u = queue.popleft()
        for j in incident[u]:
            h, t = g.edges[j]
            w = t if h == u else h
            if not seen[w]:
                seen[w] = True
                tree.append(j)
                queue.append(w)
    return tree


def spanning_tree_normalize(
    g: OrientedMultigraph,
    labels: Sequence[G],
    mul: Callable[[G, G], G],
    inv: Callable[[G], G],
    identity: G,
) -> list[G]:
    """Gauge-equivalent labeling that is the identity on the BFS spanning tree.

    With vertex potentials p (p(0) = identity) the new label of edge e is
    p(head) * label(e) * p(tail)^-1, which conjugates A_{gamma,pi} by the
    block diagonal matrix of pi(p(v)).
    """
    if len(labels) != g.num_edges:
        raise ValueError("labeling must cover every edge")
    tree = bfs_tree_edges(g)
    pot: list[G | None] = [None] * g.n
    pot[0] = identity
    # tree edges come in BFS order, so one endpoint is always known
    for j in tree:
        h, t = g.edges[j]
        if pot[h] is not None and pot[t] is None:
            pot[t] = mul(pot[h], labels[j])
        elif pot[t] is not None and pot[h] is None:
            pot[h] = mul(pot[t], inv(labels[j]))
    out = []
    for j, (h, t) in enumerate(g.edges):
        out.append(mul(mul(pot[h], labels[j]), inv(pot[t])))
    return out


def load_graph(path: str | Path) -> OrientedMultigraph:
    """Read graph JSON, or flat text: ``n`` then one ``head tail`` pair per line."""
    text = Path(path).read_text()
    return parse_graph_text(text)


def parse_graph_text(text: str) -> OrientedMultigraph:
    stripped = text.strip()
    if stripped.startswith("{"):
        return OrientedMultigraph.from_json(json.loads(stripped))
    tokens = [line.split() for line in stripped.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not tokens or len(tokens[0]) != 1:
        raise ValueError("flat graph text must start with a line holding n")
    n = int(tokens[0][0])
    edges = []
    for row in tokens[1:]:
        if len(row) != 2:
            raise ValueError(f"expected 'head tail', got {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    return OrientedMultigraph.from_edges(n, edges)


# named graphs used in tests and fixtures


def k2(k: int = 1) -> OrientedMultigraph:
    """Two vertices joined by k parallel edges."""
    return OrientedMultigraph(2, tuple((0, 1) for _ in range(k)))


def cycle(n: int) -> OrientedMultigraph:
    return OrientedMultigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> OrientedMultigraph:
    return OrientedMultigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def bouquet(loops: int) -> OrientedMultigraph:
    return OrientedMultigraph(1, tuple((0, 0) for _ in range(loops)))


def k4_minus_edge() -> OrientedMultigraph:
    return OrientedMultigraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)))


def complete(n: int) -> OrientedMultigraph:
    return OrientedMultigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))
