"""Regenerate the graph6 corpora under tests/data.

Needs networkx (the graph atlas lists every graph on at most 7 vertices).
Graphs on 8 vertices are obtained by adding a vertex to every 7-vertex graph in
all possible ways and keeping one representative per isomorphism class.

    python scripts/make_corpus.py
"""
from __future__ import annotations

import itertools
from pathlib import Path

import networkx as nx

from thetalg.graphs import Graph, is_connected, named_graph, write_graph6

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
KNOWN_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def to_graph(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), frozenset(h.edges()))


def atlas_by_order() -> dict[int, list[nx.Graph]]:
    out: dict[int, list[nx.Graph]] = {}
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() >= 1:
            out.setdefault(h.number_of_nodes(), []).append(h)
    return out


def extend(graphs: list[nx.Graph]) -> list[nx.Graph]:
    buckets: dict[str, list[nx.Graph]] = {}
    reps = []
    for h in graphs:
        n = h.number_of_nodes()
        for k in range(n + 1):
            for nbrs in itertools.combinations(range(n), k):
                x = h.copy()
                x.add_node(n)
                x.add_edges_from((n, v) for v in nbrs)
                key = nx.weisfeiler_lehman_graph_hash(x, iterations=4) + str(sorted(d for _, d in x.degree()))
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(x, y) for y in bucket):
                    continue
                bucket.append(x)
                reps.append(x)
    return reps


def write(path: Path, header: str, graphs) -> None:
    with path.open("w") as fh:
        fh.write(f"# {header}\n")
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
    print(f"wrote {path}")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    atlas = atlas_by_order()
    for n, count in KNOWN_CONNECTED.items():
        assert sum(1 for h in atlas[n] if nx.is_connected(h)) == count, n
    connected = [to_graph(h) for n in range(1, 8) for h in atlas[n] if nx.is_connected(h)]
    write(DATA / "connected_le7.g6", "all connected graphs on 1..7 vertices, one per isomorphism class", connected)

    eight = extend(atlas[7])
    assert len(eight) == KNOWN_COUNTS[8], len(eight)
    every = [to_graph(h) for n in range(1, 8) for h in atlas[n]] + [to_graph(h) for h in eight]
    write(DATA / "graphs_le8.g6", "all graphs on 1..8 vertices, one per isomorphism class", every)

    circ = []
    for n in range(2, 11):
        reps = range(1, n // 2 + 1)
        for k in range(1, len(reps) + 1):
            for conn in itertools.combinations(reps, k):
                g = named_graph("circulant", [n, *conn])
                if is_connected(g):
                    circ.append(g)
    write(DATA / "circulants_le10.g6", "all connected circulant graphs on 2..10 vertices, every connection set", circ)


if __name__ == "__main__":
    main()
