"""The bundled graph corpus: small connected multigraphs plus named fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations
from pathlib import Path

from . import graph as G
from .graph import OrientedMultigraph

FIXTURE_DIR = Path(__file__).with_name("fixtures")
CORPUS_FILE = "corpus.json"


class MissingFixtures(FileNotFoundError):
    pass


@dataclass(frozen=True)
class CorpusGraph:
    name: str
    graph: OrientedMultigraph

    @property
    def loopless(self) -> bool:
        return not self.graph.has_loops


def canonical_form(g: OrientedMultigraph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Lexicographically least sorted edge list over all vertex relabelings."""
    best = None
    for p in permutations(range(g.n)):
        edges = tuple(sorted((min(p[h], p[t]), max(p[h], p[t])) for h, t in g.edges))
        if best is None or edges < best:
            best = edges
    return g.n, best


def generate_small_multigraphs(max_vertices: int = 4, max_edges: int = 5) -> list[OrientedMultigraph]:
    """Connected multigraphs (loops allowed, at least one edge) up to isomorphism.

    Each edge is stored as (u, v) with u <= v, edges sorted.
    """
    seen = set()
    out = []
    for n in range(1, max_vertices + 1):
        pairs = [(u, v) for u in range(n) for v in range(u, n)]
        for m in range(max(1, n - 1), max_edges + 1):
            for edges in combinations_with_replacement(pairs, m):
                g = OrientedMultigraph(n, edges)
                if not g.is_connected():
                    continue
                key = canonical_form(g)
                if key in seen:
                    continue
                seen.add(key)
                out.append(OrientedMultigraph(n, key[1]))
    return out


def named_fixtures() -> dict[str, OrientedMultigraph]:
    return {
        "K2": G.k2(),
        "C3": G.cycle(3),
        "k4me": G.k4_minus_edge(),
        "theta": G.k2(3),
        "bouquet1": G.bouquet(1),
        "bouquet2": G.bouquet(2),
        "subdivided_theta": G.subdivide(G.k2(3)),
        "subdivided_k4": G.subdivide(G.complete(4)),
    }


def write_fixtures(directory: Path = FIXTURE_DIR) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    corpus = [
        {"name": f"g{i:03d}", **g.to_json()} for i, g in enumerate(generate_small_multigraphs())
    ]
    (directory / CORPUS_FILE).write_text(json.dumps(corpus, indent=1) + "\n")
    for name, g in named_fixtures().items():
        (directory / f"{name}.json").write_text(json.dumps(g.to_json()) + "\n")


def load_corpus(directory: Path | str = FIXTURE_DIR) -> list[CorpusGraph]:
    path = Path(directory) / CORPUS_FILE
    if not path.exists():
        raise MissingFixtures(f"no {CORPUS_FILE} in {directory}; run scripts/build_fixtures.py")
    return [CorpusGraph(item["name"], OrientedMultigraph.from_json(item)) for item in json.loads(path.read_text())]


def load_named(name: str, directory: Path | str = FIXTURE_DIR) -> OrientedMultigraph:
    path = Path(directory) / f"{name}.json"
    if not path.exists():
        raise MissingFixtures(f"fixture {name!r} missing from {directory}")
    return G.load_graph(path)
