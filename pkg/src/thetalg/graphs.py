"""Simple undirected graphs, graph6 I/O and the generators used by the test corpus."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from thetalg.config import DEFAULT_TOLERANCES

__all__ = [
    "Graph",
    "Graph6Error",
    "Graph6HeaderError",
    "Graph6LengthError",
    "Graph6CharacterError",
    "parse_graph6",
    "write_graph6",
    "read_graph6_lines",
    "complement",
    "named_graph",
    "is_connected",
    "GENERATORS",
]


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``; any iterable of
    pairs is accepted on construction and normalized.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_adjacency(cls, a) -> "Graph":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(a)):
            raise ValueError("adjacency matrix has nonzero diagonal")
        us, vs = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], frozenset(zip(us.tolist(), vs.tolist())))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def adjacency(self) -> np.ndarray:
        """0/1 adjacency matrix as an int64 array."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def neighbors(self) -> list[set[int]]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def degrees(self) -> list[int]:
        d = [0] * self.n
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, g6={write_graph6(self)!r})" if self.n <= 62 else f"Graph(n={self.n}, m={self.m})"


# graph6 -------------------------------------------------------------------

class Graph6Error(ValueError):
    """Base class for graph6 decoding errors."""


class Graph6HeaderError(Graph6Error):
    """Malformed or unsupported vertex-count header."""


class Graph6LengthError(Graph6Error):
    """Bit stream shorter or longer than the header requires."""


class Graph6CharacterError(Graph6Error):
    """Byte outside the printable range 63..126."""


def _decode_header(data: bytes, cap: int) -> tuple[int, int]:
    if not data:
        raise Graph6HeaderError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        # 8-byte form for n >= 258048; always beyond any supported cap
        raise Graph6HeaderError("graph6 8-byte header not supported")
    if len(data) < 4:
        raise Graph6HeaderError("truncated long-form header")
    n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
    if n < 63:
        raise Graph6HeaderError(f"long-form header encodes n={n} < 63")
    if n > cap:
        raise Graph6HeaderError(f"n={n} exceeds graph6 cap {cap}")
    return n, 4


def parse_graph6(text: str | bytes, cap: int | None = None) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` prefix, trailing newline ignored)."""
    cap = DEFAULT_TOLERANCES.graph6_cap if cap is None else cap
    data = text.encode("latin-1") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6CharacterError(f"byte {byte} at position {pos} outside 63..126")
    n, start = _decode_header(data, cap)
    if n == 0:
        raise Graph6HeaderError("graph6 string encodes a graph with no vertices")
    nbits = n * (n - 1) // 2
    body = data[start:]
    nbytes = (nbits + 5) // 6
    if len(body) != nbytes:
        raise Graph6LengthError(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    edges = []
    k = 0
    pairs = ((i, j) for j in range(1, n) for i in range(j))
    for byte in body:
        x = byte - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                break
            i, j = next(pairs)
            if (x >> shift) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, frozenset(edges))


def write_graph6(g: Graph, cap: int | None = None) -> str:
    """Encode ``g`` as a graph6 string (no header prefix, no newline)."""
    cap = DEFAULT_TOLERANCES.graph6_cap if cap is None else cap
    n = g.n
    if n > cap:
        raise ValueError(f"n={n} exceeds graph6 cap {cap}")
    if n <= 62:
        out = [n + 63]
    else:
        out = [126, 63 + ((n >> 12) & 63), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        out.append(x + 63)
    return bytes(out).decode("ascii")


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, token)`` for each graph line, skipping blanks and '#' comments."""
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield lineno, s


# structural queries ---------------------------------------------------------

def complement(g: Graph) -> Graph:
    n = g.n
    edges = frozenset(
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in g.edges
    )
    return Graph(n, edges)


def is_connected(g: Graph) -> bool:
    nb = g.neighbors()
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in nb[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.n


# generators -------------------------------------------------------------------

def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def _complete(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def _empty(n: int) -> Graph:
    return Graph(n)


def _path(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, frozenset(outer + spokes + inner))


def _kneser(n: int, k: int) -> Graph:
    if not (1 <= k and 2 * k <= n):
        raise ValueError("kneser needs 1 <= k <= n/2")
    subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
    edges = [
        (a, b)
        for a, b in itertools.combinations(range(len(subsets)), 2)
        if not subsets[a] & subsets[b]
    ]
    return Graph(len(subsets), frozenset(edges))


def circulant_connection_set(n: int, conn: Iterable[int]) -> tuple[int, ...]:
    """Sorted, negation-closed connection set; rejects 0 mod n."""
    s = set()
    for c in conn:
        c %= n
        if c == 0:
            raise ValueError("circulant connection set may not contain 0 mod n")
        s.add(c)
        s.add((-c) % n)
    return tuple(sorted(s))


def _circulant(n: int, *conn: int) -> Graph:
    s = circulant_connection_set(n, conn)
    return Graph(n, frozenset((i, (i + c) % n) for i in range(n) for c in s))


def _hypercube(d: int) -> Graph:
    if d < 1:
        raise ValueError("hypercube needs d >= 1")
    n = 1 << d
    return Graph(n, frozenset((v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)))


GENERATORS = {
    "cycle": (_cycle, 1),
    "complete": (_complete, 1),
    "empty": (_empty, 1),
    "path": (_path, 1),
    "petersen": (_petersen, 0),
    "kneser": (_kneser, 2),
    "circulant": (_circulant, None),
    "hypercube": (_hypercube, 1),
}


def named_graph(name: str, params: Iterable[int] = ()) -> Graph:
    """Build a standard graph by family name.

    ``circulant`` takes ``[n, c1, c2, ...]``; the connection set is closed under
    negation before use. All other families take a fixed number of integers.
    """
    try:
        fn, arity = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown graph family {name!r}; known: {sorted(GENERATORS)}") from None
    params = [int(p) for p in params]
    if arity is None:
        if not params:
            raise ValueError("circulant needs n followed by connection elements")
    elif len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
    if params and params[0] < 1:
        raise ValueError(f"{name}: size parameter must be positive")
    return fn(*params)
