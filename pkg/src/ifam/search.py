"""Exact search for maximum P-intersecting families.

A family is P-intersecting iff it is a clique in the compatibility graph whose
vertices are graphs G with P(G) and whose edges join G, H with P(G & H).
The solver is a bitset branch and bound with greedy-coloring bounds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from ifam.constructions import MATERIALIZE_BITS, Family, star_family
from ifam.cosets import verify_anticluster
from ifam.errors import CapacityError
from ifam.graphspace import (
    Graph,
    Kind,
    PropertySpec,
    embed,
    full_mask,
    num_edges,
)

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_SECONDS = 60.0
EXHAUSTIVE_MAX_N = 4
_CLOCK_EVERY = 1024


@dataclass(frozen=True)
class Budget:
    nodes: int = DEFAULT_NODE_BUDGET
    seconds: float = DEFAULT_SECONDS


UNLIMITED = Budget(nodes=10**18, seconds=float("inf"))


class Verification(NamedTuple):
    ok: bool
    witness: tuple[Graph, Graph] | None = None


@dataclass
class SearchReport:
    n: int
    property: PropertySpec
    best_family: Family
    upper_bound: int
    optimal: bool
    nodes_explored: int = 0
    wall_time: float = 0.0
    budget_exhausted: bool = False
    bound_sources: dict[str, int] = field(default_factory=dict)

    @property
    def best_size(self) -> int:
        return len(self.best_family)

    @property
    def mu(self) -> Fraction:
        return Fraction(self.best_size, 1 << num_edges(self.n))

    @property
    def mu_upper(self) -> Fraction:
        return Fraction(self.upper_bound, 1 << num_edges(self.n))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "property": self.property.to_json(),
            "best_size": self.best_size,
            "best_family": [g.encode() for g in self.best_family],
            "upper_bound": self.upper_bound,
            "mu": {"num": self.mu.numerator, "den": self.mu.denominator},
            "mu_upper": {"num": self.mu_upper.numerator, "den": self.mu_upper.denominator},
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "wall_time_seconds": round(self.wall_time, 6),
            "budget_exhausted": self.budget_exhausted,
            "bound_sources": dict(sorted(self.bound_sources.items())),
        }


class _Holds:
    """Memoized P on raw bitsets for one vertex count."""

    def __init__(self, n: int, prop: PropertySpec):
        self.n = n
        self.prop = prop
        self._cache: dict[int, bool] = {}

    def __call__(self, bits: int) -> bool:
        hit = self._cache.get(bits)
        if hit is None:
            hit = self._cache[bits] = self.prop.holds(self.n, bits)
        return hit


def verify_family(family: Family | Iterable[Graph], prop: PropertySpec) -> Verification:
    """Check P on every pairwise intersection, G & G included."""
    members = sorted(family)
    ns = {g.n for g in members}
    if len(ns) > 1:
        raise ValueError(f"family mixes vertex counts {sorted(ns)}")
    if not members:
        return Verification(True)
    holds = _Holds(members[0].n, prop)
    for i, g in enumerate(members):
        for h in members[i:]:
            if not holds(g.bits & h.bits):
                return Verification(False, (g, h))
    return Verification(True)


class _OutOfBudget(Exception):
    pass


class _Compat:
    """Compatibility graph over the graphs satisfying P, as int bitsets."""

    def __init__(self, n: int, prop: PropertySpec, deadline: float):
        big_n = num_edges(n)
        if big_n > 28:
            raise CapacityError(f"n={n}: 2^{big_n} graphs exceeds the enumeration limit")
        holds = _Holds(n, prop)
        cands = []
        for bits in range(1 << big_n):
            if holds(bits):
                cands.append(bits)
            if bits % 4096 == 0 and time.monotonic() > deadline:
                raise _OutOfBudget
        raw = [0] * len(cands)
        for i, gi in enumerate(cands):
            row = 0
            for j in range(i + 1, len(cands)):
                if holds(gi & cands[j]):
                    row |= 1 << j
            raw[i] |= row
            while row:
                low = row & -row
                raw[low.bit_length() - 1] |= 1 << i
                row ^= low
            if time.monotonic() > deadline:
                raise _OutOfBudget
        # descending compatibility degree; ties by bitset for determinism
        order = sorted(range(len(cands)), key=lambda i: (-raw[i].bit_count(), cands[i]))
        pos = {old: new for new, old in enumerate(order)}
        self.graphs = [cands[i] for i in order]
        self.adj = []
        for old in order:
            row, new_row = raw[old], 0
            while row:
                low = row & -row
                new_row |= 1 << pos[low.bit_length() - 1]
                row ^= low
            self.adj.append(new_row)
        self.index = {g: i for i, g in enumerate(self.graphs)}

    def __len__(self) -> int:
        return len(self.graphs)

    def color(self, pool: int) -> tuple[list[int], list[int]]:
        """Greedy sequential coloring of `pool`; returns vertices and their color numbers."""
        order, colors = [], []
        c = 0
        while pool:
            c += 1
            q = pool
            while q:
                low = q & -q
                v = low.bit_length() - 1
                pool ^= low
                q &= ~low & ~self.adj[v]
                order.append(v)
                colors.append(c)
        return order, colors


class _CliqueSearch:
    def __init__(self, compat: _Compat, budget: Budget, start: float, incumbent: list[int]):
        self.c = compat
        self.max_nodes = budget.nodes
        self.deadline = start + budget.seconds
        self.nodes = 0
        self.best = list(incumbent)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _OutOfBudget
        if self.nodes % _CLOCK_EVERY == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def maximum(self, ceiling: int) -> bool:
        """Branch and bound; True iff the tree was exhausted."""
        self._ceiling = ceiling
        try:
            self._expand([], (1 << len(self.c)) - 1)
        except _OutOfBudget:
            return False
        except _Done:
            return True
        return True

    def _expand(self, chosen: list[int], pool: int) -> None:
        self._tick()
        order, colors = self.c.color(pool)
        for v, col in zip(reversed(order), reversed(colors)):
            if len(chosen) + col <= len(self.best):
                return
            chosen.append(v)
            sub = pool & self.c.adj[v]
            if sub:
                self._expand(chosen, sub)
            elif len(chosen) > len(self.best):
                self.best = list(chosen)
                if len(self.best) >= self._ceiling:
                    raise _Done
            chosen.pop()
            pool &= ~(1 << v)

    def all_of_size(self, k: int) -> list[list[int]]:
        found: list[list[int]] = []

        def walk(chosen: list[int], pool: int) -> None:
            self._tick()
            if len(chosen) == k:
                found.append(list(chosen))
                return
            order, colors = self.c.color(pool)
            for v, col in zip(reversed(order), reversed(colors)):
                if len(chosen) + col < k:
                    return
                chosen.append(v)
                walk(chosen, pool & self.c.adj[v])
                chosen.pop()
                pool &= ~(1 << v)

        walk([], (1 << len(self.c)) - 1)
        return found


class _Done(Exception):
    pass


# -- bounds and seeds ---------------------------------------------------------


def _a_priori_bounds(n: int, prop: PropertySpec) -> dict[str, int]:
    big_n = num_edges(n)
    out = {"space": 1 << big_n}
    if not prop.holds(n, 0):
        # a family holding G and its complement has an empty intersection
        out["half_space"] = 1 << (big_n - 1) if big_n else 0
    if prop.kind is Kind.CONNECTED or (prop.kind is Kind.HAMILTONIAN and n >= 3):
        out["coset"] = 1 << (big_n - (n - 1))
    return out


def _witness(n: int, prop: PropertySpec) -> Graph | None:
    """A sparse graph with P, whose supergraphs form a P-intersecting family."""
    k = prop.kind
    if k is Kind.CONNECTED:
        return Graph.path(n)
    if k is Kind.CONTAINS_PATTERN:
        sup = sorted(prop.pattern.support())
        if len(sup) > n:
            return None
        relabel = {v: i + 1 for i, v in enumerate(sup)}
        return Graph.from_edges(n, [(relabel[u], relabel[v]) for u, v in prop.pattern.edges()])
    if k is Kind.NOT_BIPARTITE or k is Kind.NOT_R_PARTITE:
        size = 3 if k is Kind.NOT_BIPARTITE else prop.r + 1
        if size > n:
            return None
        return embed(Graph.complete(size), n, range(1, size + 1))
    if k is Kind.HAMILTONIAN:
        return Graph.cycle(n) if n >= 3 else None
    if k is Kind.CONTAINS_PERFECT_MATCHING or k is Kind.NO_ISOLATED_VERTEX:
        if n % 2 == 0:
            return Graph.from_edges(n, [(i, i + 1) for i in range(1, n, 2)])
        if k is Kind.CONTAINS_PERFECT_MATCHING or n == 1:
            return None
        return Graph.from_edges(n, [(i, i + 1) for i in range(1, n - 1, 2)] + [(n - 1, n)])
    if prop.m > num_edges(n):
        return None
    return Graph(n, (1 << prop.m) - 1)


def seed_family(n: int, prop: PropertySpec) -> Family | None:
    """Star family of a minimal witness, when small enough to materialize."""
    h = _witness(n, prop)
    if h is None or not prop.holds(n, h.bits):
        return None
    if (full_mask(n) ^ h.bits).bit_count() > MATERIALIZE_BITS:
        return None
    return star_family(n, h)


# -- entry points ----------------------------------------------------------------


def _family(n: int, compat: _Compat, clique: list[int]) -> Family:
    return Family(n, frozenset(Graph(n, compat.graphs[i]) for i in clique))


def brute_force_mu(n: int, prop: PropertySpec) -> SearchReport:
    """Exact maximum by complete clique search, with no construction seeding."""
    if n > EXHAUSTIVE_MAX_N:
        raise CapacityError(f"exhaustive search is limited to n <= {EXHAUSTIVE_MAX_N}, got n={n}")
    start = time.monotonic()
    compat = _Compat(n, prop, deadline=float("inf"))
    solver = _CliqueSearch(compat, UNLIMITED, start, [])
    solver.maximum(ceiling=len(compat) + 1)
    best = _family(n, compat, solver.best)
    return SearchReport(
        n=n,
        property=prop,
        best_family=best,
        upper_bound=len(best),
        optimal=True,
        nodes_explored=solver.nodes,
        wall_time=time.monotonic() - start,
        bound_sources={"exhaustive": len(best)},
    )


def max_family(n: int, prop: PropertySpec, budget: Budget = Budget()) -> SearchReport:
    """Budgeted branch and bound, seeded with the best known construction.

    Stops as soon as the incumbent meets the upper bound, so optimality can be
    certified without exhausting the search tree.
    """
    start = time.monotonic()
    bounds = _a_priori_bounds(n, prop)
    seed = seed_family(n, prop)
    best = seed if seed is not None else Family(n)

    def report(upper: int, optimal: bool, nodes: int, exhausted: bool) -> SearchReport:
        return SearchReport(
            n=n,
            property=prop,
            best_family=best,
            upper_bound=upper,
            optimal=optimal,
            nodes_explored=nodes,
            wall_time=time.monotonic() - start,
            budget_exhausted=exhausted,
            bound_sources=bounds,
        )

    upper = min(bounds.values())
    if len(best) >= upper:
        return report(upper, True, 0, False)
    try:
        compat = _Compat(n, prop, deadline=start + budget.seconds)
    except _OutOfBudget:
        return report(upper, False, 0, True)
    _, colors = compat.color((1 << len(compat)) - 1)
    bounds["candidates"] = len(compat)
    bounds["greedy_coloring"] = max(colors, default=0)
    upper = min(bounds.values())
    if len(best) >= upper:
        return report(upper, True, 0, False)
    solver = _CliqueSearch(compat, budget, start, [compat.index[g.bits] for g in best])
    exhausted = solver.maximum(ceiling=upper)
    if len(solver.best) > len(best):
        best = _family(n, compat, solver.best)
    if exhausted:
        upper = len(best)
    return report(upper, exhausted, solver.nodes, not exhausted)


def classify_extremal(n: int, prop: PropertySpec) -> list[Family]:
    """Every maximum P-intersecting family on labeled vertices 1..n."""
    if n > EXHAUSTIVE_MAX_N:
        raise CapacityError(f"classification is limited to n <= {EXHAUSTIVE_MAX_N}, got n={n}")
    start = time.monotonic()
    compat = _Compat(n, prop, deadline=float("inf"))
    solver = _CliqueSearch(compat, UNLIMITED, start, [])
    solver.maximum(ceiling=len(compat) + 1)
    k = len(solver.best)
    if k == 0:
        return [Family(n)]
    families = [_family(n, compat, c) for c in solver.all_of_size(k)]
    families.sort(key=lambda f: [g.encode() for g in f])
    return families


def certify(report: SearchReport) -> None:
    """Assert the soundness conditions every search output must meet."""
    fam = report.best_family
    ok, witness = verify_family(fam, report.property)
    if not ok:
        raise AssertionError(f"search returned a non-intersecting family, witness {witness}")
    if report.upper_bound < report.best_size:
        raise AssertionError("upper bound below incumbent")
    if report.property.kind is Kind.CONNECTED and not verify_anticluster(fam).certified:
        raise AssertionError("connected family hits a coset of W twice")
