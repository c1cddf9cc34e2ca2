"""Exact brute-force ground truth: cliques, cocliques, chromatic number."""
from __future__ import annotations

from dataclasses import dataclass

from thetalg.config import DEFAULT_TOLERANCES, Tolerances
from thetalg.graphs import Graph, complement

__all__ = [
    "Witness",
    "max_clique",
    "max_coclique",
    "chromatic_number",
    "clique_coclique_check",
]


@dataclass(frozen=True)
class Witness:
    size: int
    vertices: tuple

    def characteristic_vector(self, n: int) -> list[int]:
        s = set(self.vertices)
        return [1 if v in s else 0 for v in range(n)]


def _greedy_color_bound(cand: list[int], nb: list[int]) -> list[tuple[int, int]]:
    """Sequential greedy coloring of ``cand``; returns (vertex, color) pairs sorted by color."""
    colored = []
    classes: list[int] = []  # bitsets
    for v in cand:
        for k, cls in enumerate(classes):
            if not cls & nb[v]:
                classes[k] |= 1 << v
                colored.append((v, k + 1))
                break
        else:
            classes.append(1 << v)
            colored.append((v, len(classes)))
    colored.sort(key=lambda t: t[1])
    return colored


def max_clique(g: Graph, cap: int | None = None) -> Witness:
    """Maximum clique by branch and bound with a greedy-coloring bound.

    Vertices are branched in descending-degree order (index breaks ties), which
    makes the returned witness reproducible.
    """
    cap = DEFAULT_TOLERANCES.clique_cap if cap is None else cap
    if g.n > cap:
        raise ValueError(f"n={g.n} exceeds clique cap {cap}")
    nb = [0] * g.n
    for u, v in g.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    deg = g.degrees()
    order = sorted(range(g.n), key=lambda v: (-deg[v], v))
    best: list[int] = [order[0]]

    def expand(current: list[int], cand: list[int]) -> None:
        nonlocal best
        colored = _greedy_color_bound(cand, nb)
        for idx in range(len(colored) - 1, -1, -1):
            v, color = colored[idx]
            if len(current) + color <= len(best):
                return
            new_cur = current + [v]
            rest = [w for w, _ in colored[:idx] if nb[v] >> w & 1]
            if rest:
                expand(new_cur, sorted(rest, key=order.index))
            elif len(new_cur) > len(best):
                best = new_cur
    expand([], order)
    vs = tuple(sorted(best))
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            assert g.has_edge(u, v), "clique witness failed verification"
    return Witness(len(vs), vs)


def max_coclique(g: Graph, cap: int | None = None) -> Witness:
    w = max_clique(complement(g), cap)
    for i, u in enumerate(w.vertices):
        for v in w.vertices[i + 1:]:
            assert not g.has_edge(u, v), "coclique witness failed verification"
    return w


def _colorable(nb: list[set[int]], order: list[int], k: int) -> bool:
    n = len(order)
    color = {}

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        taken = {color[w] for w in nb[v] if w in color}
        # a fresh color is interchangeable with every other unused one
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            color[v] = c
            if place(i + 1, max(used, c + 1)):
                return True
            del color[v]
        return False

    return place(0, 0)


def chromatic_number(g: Graph, cap: int | None = None) -> int:
    """Smallest k admitting a proper k-coloring, by iterative deepening from the clique bound."""
    cap = DEFAULT_TOLERANCES.chromatic_cap if cap is None else cap
    if g.n > cap:
        raise ValueError(f"n={g.n} exceeds chromatic cap {cap}")
    if not g.edges:
        return 1
    nb = g.neighbors()
    deg = g.degrees()
    order = sorted(range(g.n), key=lambda v: (-deg[v], v))
    k = max_clique(g).size
    while not _colorable(nb, order, k):
        k += 1
    return k


def clique_coclique_check(g: Graph, structure: dict | None = None, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """omega * alpha <= n, exactly, for graphs with one of the covered structures."""
    from thetalg.verify import structure_flags  # deferred: verify imports oracle

    flags = structure_flags(g) if structure is None else structure
    omega = max_clique(g, tol.clique_cap)
    alpha = max_coclique(g, tol.clique_cap)
    product = omega.size * alpha.size
    qualifies = flags["homogeneous_coherent"] or flags["one_walk_regular"]
    return {
        "check": "clique_coclique",
        "applicable": qualifies,
        "structure": flags,
        "omega": omega.size,
        "alpha": alpha.size,
        "clique": list(omega.vertices),
        "coclique": list(alpha.vertices),
        "product": product,
        "n": g.n,
        "holds": product <= g.n,
        "equality": product == g.n,
        "tier": "exact",
        "passed": (product <= g.n) if qualifies else True,
    }
