"""Labeled graphs on {1..n} as vectors in the GF(2) edge space.

A graph is stored as an int bitset over the edges of K_n, in lexicographic
pair order: bit 0 is (1, 2), bit 1 is (1, 3), ..., bit N-1 is (n-1, n)
with N = n(n-1)/2.  XOR of bitsets is the group operation of the space.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from ifam.errors import CapacityError

# 2^28 graphs is the largest space enumerate_graphs will walk (n <= 8)
ENUMERATION_BITS = 28


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


def edge_index(u: int, v: int, n: int) -> int:
    """Bit position of edge (u, v), 1-indexed with u < v."""
    if not (1 <= u < v <= n):
        raise ValueError(f"need 1 <= u < v <= n, got u={u}, v={v}, n={n}")
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def edge_list(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs (u, v) in bit order."""
    return tuple(itertools.combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def _incidence(n: int) -> tuple[int, ...]:
    # incidence[v-1] = mask of edges touching v
    masks = [0] * n
    for k, (u, v) in enumerate(edge_list(n)):
        masks[u - 1] |= 1 << k
        masks[v - 1] |= 1 << k
    return tuple(masks)


def full_mask(n: int) -> int:
    return (1 << num_edges(n)) - 1


@dataclass(frozen=True, order=True)
class Graph:
    """A labeled graph on vertex set {1..n}."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        if self.bits < 0 or self.bits >> num_edges(self.n):
            raise ValueError(f"edge bits out of range for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        bits = 0
        for u, v in edges:
            if u > v:
                u, v = v, u
            bits |= 1 << edge_index(u, v, n)
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, full_mask(n))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def star(cls, n: int, center: int = 1) -> Graph:
        return cls.from_edges(n, [(center, v) for v in range(1, n + 1) if v != center])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])

    def edges(self) -> list[tuple[int, int]]:
        pairs = edge_list(self.n)
        return [pairs[k] for k in range(len(pairs)) if self.bits >> k & 1]

    @property
    def edge_count(self) -> int:
        return self.bits.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return bool(self.bits >> edge_index(u, v, self.n) & 1)

    def degree(self, v: int) -> int:
        return (self.bits & _incidence(self.n)[v - 1]).bit_count()

    def support(self) -> frozenset[int]:
        """Vertices incident to at least one edge."""
        inc = _incidence(self.n)
        return frozenset(v for v in range(1, self.n + 1) if self.bits & inc[v - 1])

    def encode(self) -> str:
        return encode(self)

    def __xor__(self, other: Graph) -> Graph:
        return xor(self, other)

    def __and__(self, other: Graph) -> Graph:
        return intersect(self, other)

    def __invert__(self) -> Graph:
        return complement(self)

    def __repr__(self) -> str:
        return f"Graph({self.encode()!r})"


@dataclass(frozen=True)
class VertexSet:
    """A subset of {1..n}, bit v-1 set iff v is a member."""

    n: int
    members: int = 0

    def __post_init__(self) -> None:
        if self.members < 0 or self.members >> self.n:
            raise ValueError(f"vertex bits out of range for n={self.n}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> VertexSet:
        bits = 0
        for v in vertices:
            if not 1 <= v <= n:
                raise ValueError(f"vertex {v} outside 1..{n}")
            bits |= 1 << (v - 1)
        return cls(n, bits)

    def __iter__(self) -> Iterator[int]:
        return (v for v in range(1, self.n + 1) if self.members >> (v - 1) & 1)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 1 <= v <= self.n and bool(self.members >> (v - 1) & 1)

    def __len__(self) -> int:
        return self.members.bit_count()

    def complement(self) -> VertexSet:
        return VertexSet(self.n, ((1 << self.n) - 1) ^ self.members)

    def symmetric_difference(self, other: VertexSet) -> VertexSet:
        _same_n(self, other)
        return VertexSet(self.n, self.members ^ other.members)

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {sorted(self)})"


def _same_n(a, b) -> None:
    if a.n != b.n:
        raise ValueError(f"vertex counts differ: {a.n} != {b.n}")


def xor(g: Graph, h: Graph) -> Graph:
    _same_n(g, h)
    return Graph(g.n, g.bits ^ h.bits)


def intersect(g: Graph, h: Graph) -> Graph:
    _same_n(g, h)
    return Graph(g.n, g.bits & h.bits)


def complement(g: Graph) -> Graph:
    return Graph(g.n, full_mask(g.n) ^ g.bits)


def is_subgraph(h: Graph, g: Graph) -> bool:
    """True iff every labeled edge of h is an edge of g."""
    _same_n(h, g)
    return h.bits & g.bits == h.bits


def bipartite_complete(n: int, s: VertexSet | Iterable[int]) -> Graph:
    """B(S): the complete bipartite graph across the cut (S, S^c)."""
    if not isinstance(s, VertexSet):
        s = VertexSet.of(n, s)
    elif s.n != n:
        raise ValueError(f"vertex set is over {s.n} vertices, expected {n}")
    bits = 0
    for k, (u, v) in enumerate(edge_list(n)):
        if (u in s) != (v in s):
            bits |= 1 << k
    return Graph(n, bits)


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """Every graph on {1..n}, in increasing bitset order."""
    big_n = num_edges(n)
    if big_n > ENUMERATION_BITS:
        raise CapacityError(f"enumerating 2^{big_n} graphs exceeds the 2^{ENUMERATION_BITS} limit")
    return (Graph(n, bits) for bits in range(1 << big_n))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced on `vertices`, relabeled to 1..k in the given order."""
    k = len(vertices)
    bits = 0
    for i in range(k):
        for j in range(i + 1, k):
            if g.has_edge(vertices[i], vertices[j]):
                a, b = i + 1, j + 1
                bits |= 1 << edge_index(a, b, k)
    return Graph(k, bits)


def embed(g: Graph, n: int, mapping: Sequence[int]) -> Graph:
    """Relabel g into a graph on n vertices; vertex i goes to mapping[i-1]."""
    return Graph.from_edges(n, [(mapping[u - 1], mapping[v - 1]) for u, v in g.edges()])


# -- bitset kernels shared by the predicates and the search ------------------


def adjacency(n: int, bits: int) -> list[int]:
    """Vertex adjacency masks (bit w-1 of adj[v-1] set iff v ~ w)."""
    adj = [0] * n
    pairs = edge_list(n)
    while bits:
        low = bits & -bits
        u, v = pairs[low.bit_length() - 1]
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
        bits ^= low
    return adj


def _connected(n: int, bits: int) -> bool:
    if n == 1:
        return True
    if bits.bit_count() < n - 1:
        return False
    adj = adjacency(n, bits)
    seen = frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def _hamiltonian(n: int, bits: int) -> bool:
    if n < 3 or not _connected(n, bits):
        return False
    adj = adjacency(n, bits)
    # reach[mask]: endpoints of paths from vertex 0 covering exactly mask
    size = 1 << n
    reach = [0] * size
    reach[1] = 1
    for mask in range(1, size, 2):
        ends = reach[mask]
        while ends:
            low = ends & -ends
            v = low.bit_length() - 1
            ends ^= low
            nxt = adj[v] & ~mask
            while nxt:
                w = nxt & -nxt
                reach[mask | w] |= w
                nxt ^= w
    return bool(reach[size - 1] & adj[0])


def _colorable(n: int, bits: int, r: int) -> bool:
    if r <= 0:
        return n == 0
    adj = adjacency(n, bits)
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    colors = [-1] * n

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        blocked = 0
        nb = adj[v]
        for w in range(n):
            if nb >> w & 1 and colors[w] >= 0:
                blocked |= 1 << colors[w]
        # a fresh color is interchangeable with any other fresh one
        for c in range(min(used + 1, r)):
            if not blocked >> c & 1:
                colors[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    return place(0, 0)


def _perfect_matching(n: int, bits: int) -> bool:
    if n % 2:
        return False
    adj = adjacency(n, bits)

    @lru_cache(maxsize=None)
    def match(free: int) -> bool:
        if not free:
            return True
        low = free & -free
        v = low.bit_length() - 1
        rest = free ^ low
        cand = adj[v] & rest
        while cand:
            w = cand & -cand
            if match(rest ^ w):
                return True
            cand ^= w
        return False

    return match((1 << n) - 1)


def _no_isolated(n: int, bits: int) -> bool:
    return all(bits & m for m in _incidence(n))


def _contains_pattern(n: int, bits: int, pattern: Graph) -> bool:
    pv = sorted(pattern.support())
    if not pv:
        return True
    if len(pv) > n or pattern.edge_count > bits.bit_count():
        return False
    padj = {v: {w for w in pv if w != v and pattern.has_edge(v, w)} for v in pv}
    # high-degree pattern vertices first, each subsequent one adjacent to placed ones when possible
    order: list[int] = []
    remaining = set(pv)
    while remaining:
        placed = set(order)
        best = max(remaining, key=lambda v: (len(padj[v] & placed), len(padj[v]), -v))
        order.append(best)
        remaining.remove(best)
    gadj = adjacency(n, bits)
    gdeg = [a.bit_count() for a in gadj]
    image: dict[int, int] = {}

    def extend(i: int, used: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        need = len(padj[p])
        cand = ((1 << n) - 1) & ~used
        for q in padj[p]:
            if q in image:
                cand &= gadj[image[q] - 1]
        while cand:
            low = cand & -cand
            cand ^= low
            g = low.bit_length() - 1
            if gdeg[g] < need:
                continue
            image[p] = g + 1
            if extend(i + 1, used | low):
                return True
            del image[p]
        return False

    return extend(0, 0)


# -- properties --------------------------------------------------------------


class Kind(str, enum.Enum):
    CONNECTED = "connected"
    CONTAINS_PATTERN = "contains"
    NOT_BIPARTITE = "not-bipartite"
    NOT_R_PARTITE = "not-r-partite"
    HAMILTONIAN = "hamiltonian"
    NO_ISOLATED_VERTEX = "no-isolated"
    CONTAINS_PERFECT_MATCHING = "perfect-matching"
    MIN_EDGES = "min-edges"


@dataclass(frozen=True)
class PropertySpec:
    """A graph property P; `pattern`, `r`, `m` parametrize the kinds that need them."""

    kind: Kind
    pattern: Graph | None = None
    r: int | None = None
    m: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind(self.kind))
        if (self.pattern is not None) != (self.kind is Kind.CONTAINS_PATTERN):
            raise ValueError("pattern is required for, and only for, ContainsPattern")
        if (self.r is not None) != (self.kind is Kind.NOT_R_PARTITE):
            raise ValueError("r is required for, and only for, NotRPartite")
        if self.r is not None and self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if (self.m is not None) != (self.kind is Kind.MIN_EDGES):
            raise ValueError("m is required for, and only for, MinEdges")

    @classmethod
    def connected(cls) -> PropertySpec:
        return cls(Kind.CONNECTED)

    @classmethod
    def contains(cls, pattern: Graph) -> PropertySpec:
        return cls(Kind.CONTAINS_PATTERN, pattern=pattern)

    @classmethod
    def not_r_partite(cls, r: int) -> PropertySpec:
        return cls(Kind.NOT_R_PARTITE, r=r)

    @classmethod
    def min_edges(cls, m: int) -> PropertySpec:
        return cls(Kind.MIN_EDGES, m=m)

    def holds(self, n: int, bits: int) -> bool:
        """Evaluate on a raw edge bitset; `satisfies` is the Graph-level entry point."""
        k = self.kind
        if k is Kind.CONNECTED:
            return _connected(n, bits)
        if k is Kind.CONTAINS_PATTERN:
            return _contains_pattern(n, bits, self.pattern)
        if k is Kind.NOT_BIPARTITE:
            return not _colorable(n, bits, 2)
        if k is Kind.NOT_R_PARTITE:
            return not _colorable(n, bits, self.r)
        if k is Kind.HAMILTONIAN:
            return _hamiltonian(n, bits)
        if k is Kind.NO_ISOLATED_VERTEX:
            return _no_isolated(n, bits)
        if k is Kind.CONTAINS_PERFECT_MATCHING:
            return _perfect_matching(n, bits)
        return bits.bit_count() >= self.m

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.pattern is not None:
            out["pattern"] = self.pattern.encode()
        if self.r is not None:
            out["r"] = self.r
        if self.m is not None:
            out["m"] = self.m
        return out


def satisfies(g: Graph, prop: PropertySpec) -> bool:
    return prop.holds(g.n, g.bits)


# -- text encoding -------------------------------------------------------------


def encode(g: Graph) -> str:
    digits = -(-num_edges(g.n) // 4)
    body = format(g.bits, f"0{digits}x") if digits else ""
    return f"n={g.n};{body}"


def decode(text: str, n: int | None = None) -> Graph:
    """Parse `n=<k>;<hex>`; raises ValueError on any malformation."""
    text = text.strip()
    head, sep, body = text.partition(";")
    if not sep or not head.startswith("n="):
        raise ValueError(f"not a graph encoding: {text!r}")
    try:
        k = int(head[2:])
    except ValueError:
        raise ValueError(f"bad vertex count in {text!r}") from None
    if k < 1:
        raise ValueError(f"vertex count must be >= 1 in {text!r}")
    if n is not None and k != n:
        raise ValueError(f"graph has n={k}, expected n={n}")
    digits = -(-num_edges(k) // 4)
    if len(body) != digits or any(c not in "0123456789abcdefABCDEF" for c in body):
        raise ValueError(f"expected {digits} hex digits in {text!r}")
    bits = int(body, 16) if body else 0
    if bits >> num_edges(k):
        raise ValueError(f"bits set beyond edge {num_edges(k)} in {text!r}")
    return Graph(k, bits)
