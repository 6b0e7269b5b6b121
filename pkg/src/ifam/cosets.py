"""Cosets of the complete-bipartite subspace W and the anti-cluster certificate.

W = {B(S)} has basis B({1}), ..., B({n-1}).  Edge (i, n) lies in exactly one
basis vector, B({i}), so clearing those pivot edges in one pass lands on the
unique coset member with vertex n isolated.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ifam.errors import CapacityError
from ifam.graphspace import (
    Graph,
    VertexSet,
    bipartite_complete,
    edge_index,
    num_edges,
)

SUBSPACE_MAX_N = 20


@lru_cache(maxsize=None)
def _basis(n: int) -> tuple[tuple[int, int], ...]:
    """(pivot bit, B({i}) bits) for i = 1..n-1."""
    return tuple(
        (1 << edge_index(i, n, n), bipartite_complete(n, [i]).bits) for i in range(1, n)
    )


def _reduce(n: int, bits: int) -> int:
    for pivot, row in _basis(n):
        if bits & pivot:
            bits ^= row
    return bits


def canonical_rep(g: Graph) -> Graph:
    """The member of g's coset of W in which vertex n is isolated."""
    return Graph(g.n, _reduce(g.n, g.bits))


def in_subspace(g: Graph) -> bool:
    return _reduce(g.n, g.bits) == 0


def subspace_W(n: int) -> list[Graph]:
    """All 2^(n-1) complete bipartite graphs B(S), sorted by bitset."""
    if n > SUBSPACE_MAX_N:
        raise CapacityError(f"|W| = 2^{n - 1} exceeds the n <= {SUBSPACE_MAX_N} limit")
    rows = [row for _, row in _basis(n)]
    out = [0]
    for row in rows:
        out += [b ^ row for b in out]
    return [Graph(n, b) for b in sorted(out)]


def coset_count(n: int) -> int:
    return 1 << (num_edges(n) - (n - 1))


@dataclass
class AnticlusterReport:
    family_size: int
    cosets_hit: int
    violations: list[tuple[Graph, Graph]] = field(default_factory=list)
    bound: Fraction = Fraction(0)

    @property
    def certified(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "family_size": self.family_size,
            "cosets_hit": self.cosets_hit,
            "violations": [[a.encode(), b.encode()] for a, b in self.violations],
            "bound_num": self.bound.numerator,
            "bound_den": self.bound.denominator,
        }


def verify_anticluster(family: Iterable[Graph]) -> AnticlusterReport:
    """Group a family by coset of W; each repeated coset yields violations.

    Within a coset hit k times, every member after the first is paired with
    the first, so violations is empty iff every coset is hit at most once.
    """
    members = sorted(family)
    ns = {g.n for g in members}
    if len(ns) > 1:
        raise ValueError(f"family mixes vertex counts {sorted(ns)}")
    n = ns.pop() if ns else 1
    groups: dict[int, list[Graph]] = defaultdict(list)
    for g in members:
        groups[_reduce(n, g.bits)].append(g)
    violations = []
    for rep in sorted(groups):
        first, *rest = groups[rep]
        violations += [(first, g) for g in rest]
    bound = Fraction(1 << num_edges(n), 1 << (n - 1))
    return AnticlusterReport(len(members), len(groups), violations, bound)


def disconnection_witness(g1: Graph, g2: Graph) -> VertexSet | None:
    """Cut side S (1 not in S) with g1 xor g2 = B(S), or None if the xor is outside W.

    No edge of g1 & g2 crosses the returned cut, since every crossing edge
    lies in exactly one of g1, g2.
    """
    if g1.n != g2.n:
        raise ValueError(f"vertex counts differ: {g1.n} != {g2.n}")
    if g1 == g2:
        raise ValueError("witness needs two distinct graphs")
    diff = g1 ^ g2
    if not in_subspace(diff):
        return None
    n = g1.n
    # in B(S) with 1 not in S, the neighbours of vertex 1 are exactly S
    side = [v for v in range(2, n + 1) if diff.has_edge(1, v)]
    return VertexSet.of(n, side)
