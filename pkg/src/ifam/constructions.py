"""Explicit intersecting families: stars, tree pairs, the n=4 oddity, tensoring."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from ifam.errors import CapacityError
from ifam.graphspace import (
    Graph,
    edge_index,
    edge_list,
    embed,
    full_mask,
    induced_subgraph,
    num_edges,
    _connected,
)

# largest family materialized in memory, as log2 of the member count
MATERIALIZE_BITS = 20


@dataclass(frozen=True)
class Family:
    n: int
    members: frozenset[Graph] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        bad = {g.n for g in self.members} - {self.n}
        if bad:
            raise ValueError(f"family on n={self.n} has members with n in {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Graph]:
        return iter(sorted(self.members))

    def __contains__(self, g: object) -> bool:
        return g in self.members

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.members), 1 << num_edges(self.n))


def _check_size(log2_count: float) -> None:
    if log2_count > MATERIALIZE_BITS:
        raise CapacityError(
            f"family of ~2^{log2_count:.1f} members exceeds the 2^{MATERIALIZE_BITS} materialization limit"
        )


def _subsets(mask: int) -> Iterator[int]:
    """All submasks of mask, in increasing order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def star_family(n: int, h: Graph) -> Family:
    """Every labeled supergraph of h."""
    if h.n != n:
        raise ValueError(f"h has n={h.n}, expected {n}")
    free = full_mask(n) ^ h.bits
    _check_size(free.bit_count())
    return Family(n, frozenset(Graph(n, h.bits | s) for s in _subsets(free)))


# -- tree pairs -----------------------------------------------------------------


@dataclass(frozen=True)
class TreePairSpec:
    """Two vertex-disjoint trees A, B spanning {1..n} and an odd set S of A-B edges.

    Supports default to the non-isolated vertices of A and B; a one-vertex
    tree has no edges, so its support must be passed explicitly.
    """

    a: Graph
    b: Graph
    s: frozenset[tuple[int, int]]
    a_support: frozenset[int] | None = None
    b_support: frozenset[int] | None = None

    def __post_init__(self) -> None:
        s = frozenset((min(u, v), max(u, v)) for u, v in self.s)
        object.__setattr__(self, "s", s)
        if self.a_support is None:
            object.__setattr__(self, "a_support", self.a.support())
        if self.b_support is None:
            object.__setattr__(self, "b_support", self.b.support())
        object.__setattr__(self, "a_support", frozenset(self.a_support))
        object.__setattr__(self, "b_support", frozenset(self.b_support))

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def s_mask(self) -> int:
        return sum(1 << edge_index(u, v, self.n) for u, v in self.s)

    def validate(self) -> None:
        n = self.n
        if self.b.n != n:
            raise ValueError(f"A and B have different vertex counts ({n}, {self.b.n})")
        a_sup, b_sup = self.a_support, self.b_support
        if not a_sup or not b_sup:
            raise ValueError("A and B must each have a nonempty vertex support")
        if a_sup & b_sup:
            raise ValueError(f"A and B supports overlap on {sorted(a_sup & b_sup)}")
        if a_sup | b_sup != set(range(1, n + 1)):
            missing = sorted(set(range(1, n + 1)) - a_sup - b_sup)
            raise ValueError(f"A and B are not spanning: vertices {missing} uncovered")
        for name, tree, sup in (("A", self.a, a_sup), ("B", self.b, b_sup)):
            if not tree.support() <= sup:
                raise ValueError(f"{name} has edges outside its support")
            if not _is_tree_on(tree, sorted(sup)):
                raise ValueError(f"{name} is not a tree on its support")
        if len(self.s) % 2 == 0:
            raise ValueError(f"odd |S| required, got |S| = {len(self.s)}")
        for u, v in self.s:
            if not ((u in a_sup and v in b_sup) or (u in b_sup and v in a_sup)):
                raise ValueError(f"S edge ({u}, {v}) does not join A to B")


def _is_tree_on(tree: Graph, vertices: Sequence[int]) -> bool:
    sub = induced_subgraph(tree, vertices)
    return sub.edge_count == len(vertices) - 1 and _connected(sub.n, sub.bits)


def _majority_subsets(s_mask: int) -> list[int]:
    need = -(-s_mask.bit_count() // 2)
    return [sub for sub in _subsets(s_mask) if sub.bit_count() >= need]


def treepair_family(spec: TreePairSpec) -> Family:
    """Graphs containing A and B plus at least ceil(|S|/2) edges of S."""
    spec.validate()
    n = spec.n
    base = spec.a.bits | spec.b.bits
    s_mask = spec.s_mask
    free = full_mask(n) ^ base ^ s_mask
    _check_size(free.bit_count() + len(spec.s) - 1)
    majors = _majority_subsets(s_mask)
    return Family(n, frozenset(Graph(n, base | m | f) for m in majors for f in _subsets(free)))


def _mask_within(n: int, vertices: Iterable[int]) -> int:
    vs = sorted(vertices)
    return sum(1 << edge_index(u, v, n) for u, v in itertools.combinations(vs, 2))


def iterate_treepair(spec: TreePairSpec, inner: Family) -> Family:
    """Tree-pair family with `A is a subgraph` replaced by membership in `inner`.

    `inner` lives on A's support relabeled to 1..k in increasing order.  A
    member's induced subgraph on that support must lie in `inner`; B and the
    S-majority are required as in the plain construction.  The output is not
    assumed intersecting; callers re-verify.
    """
    spec.validate()
    n = spec.n
    a_vs = sorted(spec.a_support)
    if inner.n != len(a_vs):
        raise ValueError(f"inner family has n={inner.n}, A's support has {len(a_vs)} vertices")
    s_mask = spec.s_mask
    a_region = _mask_within(n, a_vs)
    free = full_mask(n) ^ a_region ^ spec.b.bits ^ s_mask
    _check_size(
        max(len(inner), 1).bit_length() + free.bit_count() + len(spec.s) - 1
    )
    lifted = [embed(g, n, a_vs).bits for g in inner]
    majors = _majority_subsets(s_mask)
    return Family(
        n,
        frozenset(
            Graph(n, inner_bits | spec.b.bits | m | f)
            for inner_bits in lifted
            for m in majors
            for f in _subsets(free)
        ),
    )


def exceptional_n4() -> Family:
    """The 4-cycle 1-2-3-4 together with every graph on 4 vertices having >= 5 edges."""
    members = {Graph.cycle(4)}
    members |= {Graph(4, b) for b in range(64) if b.bit_count() >= 5}
    return Family(4, frozenset(members))


def spanning_trees(n: int) -> list[Graph]:
    """All labeled spanning trees of K_n (n^(n-2) of them), by brute force."""
    out = []
    for combo in itertools.combinations(range(num_edges(n)), n - 1):
        bits = sum(1 << k for k in combo)
        if _connected(n, bits):
            out.append(Graph(n, bits))
    return out


# -- disjoint unions and tensoring --------------------------------------------


def union_pattern(gamma: Graph, t: int) -> Graph:
    """t vertex-disjoint copies of gamma, copy i on vertices (i-1)*k+1 .. i*k."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    k = gamma.n
    total = t * k
    if num_edges(total) > 4096:
        raise CapacityError(f"union on {total} vertices exceeds the supported size")
    edges = gamma.edges()
    return Graph.from_edges(
        total, [(u + i * k, v + i * k) for i in range(t) for u, v in edges]
    )


def blocks(g: Graph, block_n: int) -> list[Graph]:
    """Induced subgraphs on consecutive blocks of block_n vertices, relabeled to 1..block_n."""
    if g.n % block_n:
        raise ValueError(f"n={g.n} is not a multiple of the block size {block_n}")
    return [
        induced_subgraph(g, range(i * block_n + 1, (i + 1) * block_n + 1))
        for i in range(g.n // block_n)
    ]


def in_tensor_family(g: Graph, family: Family, a: int, b: int) -> bool:
    """Membership in F(a, b): at least a of the b blocks of g lie in F."""
    if g.n != b * family.n:
        raise ValueError(f"graph has n={g.n}, F(a,b) lives on {b * family.n} vertices")
    hits = 0
    for i, blk in enumerate(blocks(g, family.n)):
        if blk in family:
            hits += 1
            if hits >= a:
                return True
        elif hits + (b - i - 1) < a:
            return False
    return hits >= a


def _block_layout(n: int, b: int) -> tuple[int, list[list[int]], int]:
    """(total vertices, per-block list of global edge bits in local order, between-block mask)."""
    total = b * n
    local = edge_list(n)
    per_block = []
    inside = 0
    for i in range(b):
        off = i * n
        bits = [1 << edge_index(u + off, v + off, total) for u, v in local]
        per_block.append(bits)
        inside |= sum(bits)
    return total, per_block, full_mask(total) ^ inside


def _place(local_bits: int, global_bits: list[int]) -> int:
    out = 0
    for k, bit in enumerate(global_bits):
        if local_bits >> k & 1:
            out |= bit
    return out


def tensor_family(family: Family, a: int, b: int) -> Family:
    """Materialize F(a, b) on b*n vertices (desk scale only)."""
    if not 0 <= a <= b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    n = family.n
    total, per_block, between = _block_layout(n, b)
    size = tensor_density(family, a, b) * (1 << num_edges(total))
    _check_size(max(int(size).bit_length() - 1, 0))
    all_local = range(1 << num_edges(n))
    fam_bits = {g.bits for g in family.members}
    members = set()
    for combo in itertools.product(all_local, repeat=b):
        if sum(c in fam_bits for c in combo) < a:
            continue
        inside = 0
        for i, c in enumerate(combo):
            inside |= _place(c, per_block[i])
        members.update(Graph(total, inside | f) for f in _subsets(between))
    return Family(total, frozenset(members))


def tensor_density(family: Family, a: int, b: int) -> Fraction:
    """Exact density of F(a, b), summed over the 2^b in/out patterns of the blocks.

    Edges between blocks and the choice of graph within each block factor
    out: a pattern with k blocks in F accounts for |F|^k (2^N - |F|)^(b-k)
    block configurations out of 2^(bN).
    """
    if not 0 <= a <= b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    inside = len(family)
    outside = (1 << num_edges(family.n)) - inside
    count = 0
    for pattern in itertools.product((False, True), repeat=b):
        k = sum(pattern)
        if k >= a:
            count += inside**k * outside ** (b - k)
    return Fraction(count, 1 << (b * num_edges(family.n)))


def block_product(f1: Family, f2: Family) -> Family:
    """Graphs on n1+n2 vertices whose first block lies in f1 and second in f2.

    Edges between the blocks are free.  Density is the product of densities.
    """
    n1, n2 = f1.n, f2.n
    total = n1 + n2
    _check_size(
        max(len(f1), 1).bit_length() + max(len(f2), 1).bit_length() + n1 * n2
    )
    first = [1 << edge_index(u, v, total) for u, v in edge_list(n1)]
    second = [1 << edge_index(u + n1, v + n1, total) for u, v in edge_list(n2)]
    between = sum(1 << edge_index(u, v, total) for u in range(1, n1 + 1) for v in range(n1 + 1, total + 1))
    members = {
        Graph(total, _place(g.bits, first) | _place(h.bits, second) | f)
        for g in f1.members
        for h in f2.members
        for f in _subsets(between)
    }
    return Family(total, frozenset(members))

