"""Coherent configurations, Weisfeiler-Leman closure and the configuration axioms."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from thetalg.config import DEFAULT_TOLERANCES
from thetalg.graphs import Graph

__all__ = [
    "AxiomReport",
    "CoherentConfiguration",
    "check_coherent_axioms",
    "is_homogeneous",
    "wl_closure",
    "refine_once",
]


@dataclass(frozen=True)
class CoherentConfiguration:
    """A family of 0/1 matrices, usually the stable cells of a WL coloring.

    ``color[u, v]`` is the index of the class containing cell (u, v), ``-1`` if no
    class covers it and ``-2`` if several do (only possible for hand-built
    families that violate the partition axiom).
    """

    classes: tuple
    graph_classes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        mats = tuple(np.asarray(c, dtype=np.int64) for c in self.classes)
        if not mats:
            raise ValueError("a configuration needs at least one class")
        shape = mats[0].shape
        for c in mats:
            if c.shape != shape or c.ndim != 2 or shape[0] != shape[1]:
                raise ValueError("classes must be square matrices of equal size")
            if np.any((c != 0) & (c != 1)):
                raise ValueError("classes must be 0/1 matrices")
        object.__setattr__(self, "classes", mats)
        object.__setattr__(self, "graph_classes", frozenset(int(r) for r in self.graph_classes))

    @classmethod
    def from_colors(cls, color: np.ndarray, graph_classes=()) -> "CoherentConfiguration":
        color = np.asarray(color, dtype=np.int64)
        k = int(color.max()) + 1
        classes = tuple((color == i).astype(np.int64) for i in range(k))
        cc = cls(classes, frozenset(graph_classes))
        cc.__dict__["color"] = color
        return cc

    @property
    def n(self) -> int:
        return self.classes[0].shape[0]

    @property
    def d(self) -> int:
        return len(self.classes) - 1

    @cached_property
    def color(self) -> np.ndarray:
        cover = np.sum(self.classes, axis=0)
        color = np.full(cover.shape, -1, dtype=np.int64)
        for i, c in enumerate(self.classes):
            color[c == 1] = i
        color[cover > 1] = -2
        return color

    @cached_property
    def identity_index(self) -> int | None:
        eye = np.eye(self.n, dtype=np.int64)
        for i, c in enumerate(self.classes):
            if np.array_equal(c, eye):
                return i
        return None

    @cached_property
    def sizes(self) -> tuple:
        return tuple(int(c.sum()) for c in self.classes)

    def is_partition(self) -> bool:
        return bool(np.all(self.color >= 0))

    def to_dict(self, axioms: "AxiomReport | None" = None) -> dict:
        axioms = check_coherent_axioms(self) if axioms is None else axioms
        return {
            "n": self.n,
            "d": self.d,
            "color": self.color.tolist(),
            "graph_classes": sorted(self.graph_classes),
            "homogeneous": self.identity_index is not None,
            "identity_index": self.identity_index,
            "axioms": axioms.to_dict(),
        }


@dataclass(frozen=True)
class AxiomReport:
    partition: bool
    diagonal: bool
    transpose: bool
    product: bool
    witnesses: dict = field(default_factory=dict)
    transpose_map: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.partition and self.diagonal and self.transpose and self.product

    def to_dict(self) -> dict:
        return {
            "partition": self.partition,
            "diagonal": self.diagonal,
            "transpose": self.transpose,
            "product": self.product,
            "ok": self.ok,
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
            "transpose_map": None if self.transpose_map is None else list(self.transpose_map),
        }


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def check_coherent_axioms(c: CoherentConfiguration) -> AxiomReport:
    """Check axioms (i)-(iv) exactly; failures are reported with a witness, never raised."""
    n = c.n
    k = len(c.classes)
    w: dict = {}

    total = np.sum(c.classes, axis=0)
    bad = np.argwhere(total != 1)
    partition = bad.size == 0
    if not partition:
        w["partition"] = tuple(int(x) for x in bad[0])

    diagonal = True
    for i, a in enumerate(c.classes):
        if np.any(np.diag(a)) and np.any(a - np.diag(np.diag(a))):
            off = np.argwhere(a - np.diag(np.diag(a)))[0]
            w["diagonal"] = (i, (int(off[0]), int(off[1])))
            diagonal = False
            break

    tmap = []
    transpose = True
    for i, a in enumerate(c.classes):
        match = next((j for j, b in enumerate(c.classes) if np.array_equal(a.T, b)), None)
        if match is None:
            transpose = False
            w["transpose"] = i
            break
        tmap.append(match)

    # (iv): every product A_i A_j must be constant on each class, i.e. a linear
    # combination with one coefficient per 0/1 pattern (zero on uncovered cells).
    product = True
    color = c.color
    if np.any(color == -2):
        product = False
        w["product"] = "classes overlap; pattern coefficients undefined"
    else:
        flat = color.ravel()
        ref_cell = np.full(k + 1, -1, dtype=np.int64)
        for cell in range(flat.size - 1, -1, -1):
            ref_cell[flat[cell]] = cell
        stack = np.stack(c.classes)
        for i, a in enumerate(c.classes):
            prods = (a @ stack).reshape(k, n * n)
            ref = np.where(flat >= 0, prods[:, ref_cell[flat]], 0)
            mism = np.argwhere(prods != ref)
            if mism.size:
                j, cell = (int(x) for x in mism[0])
                w["product"] = (i, j, (cell // n, cell % n))
                product = False
                break
    return AxiomReport(partition, diagonal, transpose, product, w, tuple(tmap) if transpose else None)


def is_homogeneous(c: CoherentConfiguration) -> bool:
    return c.identity_index is not None


def _signatures(color: np.ndarray) -> np.ndarray:
    """Rows ``(color[u,v], sorted multiset of color-pair codes over w)`` for every cell."""
    n = color.shape[0]
    k = int(color.max()) + 1
    sig = np.empty((n, n, n + 1), dtype=np.int64)
    sig[:, :, 0] = color
    right = color  # right[w, v] = color(w, v)
    for u in range(n):
        codes = color[u, :, None] * k + right  # codes[w, v]
        codes.sort(axis=0)
        sig[u, :, 1:] = codes.T
    return sig.reshape(n * n, n + 1)


def refine_once(color: np.ndarray) -> np.ndarray:
    """One WL round; new colors refine the old ones (the old color leads each signature)."""
    n = color.shape[0]
    _, inv = np.unique(_signatures(color), axis=0, return_inverse=True)
    return inv.reshape(n, n).astype(np.int64)


def canonical_colors(color: np.ndarray) -> np.ndarray:
    """Relabel: diagonal classes first, then the rest, each by first row-major occurrence."""
    flat = color.ravel()
    n = color.shape[0]
    labels, first = np.unique(flat, return_index=True)
    on_diag = (first // n) == (first % n)
    order = sorted(range(len(labels)), key=lambda t: (not on_diag[t], first[t]))
    relabel = np.empty(int(labels.max()) + 1, dtype=np.int64)
    for new, t in enumerate(order):
        relabel[labels[t]] = new
    return relabel[color]


def stable_coloring(initial: np.ndarray) -> np.ndarray:
    color = canonical_colors(initial)
    count = int(color.max()) + 1
    while True:
        new = refine_once(color)
        new_count = int(new.max()) + 1
        if new_count == count:
            return canonical_colors(color)
        color, count = new, new_count


def wl_closure(g: Graph, cap: int | None = None) -> CoherentConfiguration:
    """Coherent closure of ``g`` by Weisfeiler-Leman edge-color stabilization."""
    cap = DEFAULT_TOLERANCES.closure_cap if cap is None else cap
    if g.n > cap:
        raise ValueError(f"n={g.n} exceeds closure cap {cap}")
    a = g.adjacency()
    initial = np.where(a == 1, 1, 2)
    np.fill_diagonal(initial, 0)
    color = stable_coloring(initial)
    k = int(color.max()) + 1
    graph_classes = {i for i in range(k) if np.all(a[color == i] == 1)}
    return CoherentConfiguration.from_colors(color, graph_classes)


def configuration_from_matrices(mats: Sequence, graph_classes=()) -> CoherentConfiguration:
    return CoherentConfiguration(tuple(mats), frozenset(graph_classes))
