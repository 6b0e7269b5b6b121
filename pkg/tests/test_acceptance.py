"""Exit criteria.  Each test carries a `criterion` marker; results print as PASS/FAIL lines."""

import itertools
import json
import random
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from ifam.bounds import union_bracket, union_lower_binomial
from ifam.cli import main
from ifam.constructions import (
    Family,
    TreePairSpec,
    exceptional_n4,
    in_tensor_family,
    spanning_trees,
    star_family,
    tensor_density,
    tensor_family,
    treepair_family,
    union_pattern,
)
from ifam.cosets import canonical_rep, verify_anticluster
from ifam.graphspace import (
    Graph,
    PropertySpec,
    VertexSet,
    bipartite_complete,
    complement,
    enumerate_graphs,
    is_subgraph,
    num_edges,
    satisfies,
)
from ifam.search import classify_extremal, max_family, verify_family

import oracles

CONNECTED = PropertySpec.connected()


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def passes_connected_checks(fam):
    return verify_family(fam, CONNECTED).ok and verify_anticluster(fam).certified


@pytest.mark.criterion("1. search --n 3/4 --property connected returns 2 and 8, optimal")
def test_criterion_1_connected_search(capsys):
    for n, expected in ((3, 2), (4, 8)):
        with Timer() as t:
            code = main(["search", "--n", str(n), "--property", "connected"])
        body = json.loads(capsys.readouterr().out)["payload"]
        assert code == 0
        assert body["best_size"] == expected == 2 ** num_edges(n) // 2 ** (n - 1)
        assert body["optimal"] is True
        assert t.elapsed < 1.0


@pytest.mark.criterion("2. n=4 coset certificate: 8 cosets of 8, same-coset pairs disconnected")
def test_criterion_2_coset_certificate():
    with Timer() as t:
        graphs = list(enumerate_graphs(4))
        reps = Counter(canonical_rep(g) for g in graphs)
        assert len(reps) == 8 and set(reps.values()) == {8}
        same_coset = 0
        for g, h in itertools.combinations(graphs, 2):
            if canonical_rep(g) == canonical_rep(h):
                same_coset += 1
                assert not satisfies(g & h, CONNECTED)
                assert not oracles.connected(g & h)
        assert same_coset == 8 * 28
    assert t.elapsed < 1.0


@pytest.mark.criterion("3. star, treepair (|S|=3), exceptional at n=4: size 8, intersecting, anticluster-clean")
def test_criterion_3_constructions_n4():
    with Timer() as t:
        families = [
            star_family(4, Graph.path(4)),
            treepair_family(
                TreePairSpec(
                    Graph.from_edges(4, [(1, 2)]),
                    Graph.from_edges(4, [(3, 4)]),
                    frozenset({(1, 3), (1, 4), (2, 3)}),
                )
            ),
            exceptional_n4(),
        ]
        for fam in families:
            assert len(fam) == 8
            assert verify_family(fam, CONNECTED).ok
            rep = verify_anticluster(fam)
            assert rep.violations == [] and rep.cosets_hit == 8
    assert t.elapsed < 1.0


@pytest.mark.criterion("4. n=5 connected: star of spanning tree has 64; max_family optimal via bound")
def test_criterion_4_n5_optimal_by_bound():
    with Timer() as t:
        assert len(star_family(5, Graph.path(5))) == 64
        rep = max_family(5, CONNECTED)
        assert rep.best_size == 64
        assert rep.upper_bound == 2**10 // 2**4 == 64
        assert rep.optimal and not rep.budget_exhausted
        assert rep.nodes_explored == 0
        assert verify_family(rep.best_family, CONNECTED).ok
    assert t.elapsed < 5.0


@pytest.mark.criterion("5. density of F(2,3) for F={K3} is 22/512 and equals the binomial tail")
def test_criterion_5_tensoring_identity():
    with Timer() as t:
        fam = Family(3, frozenset({Graph.complete(3)}))
        # block contents enumerated explicitly; between-block edges factor out
        members = 0
        for contents in itertools.product(range(8), repeat=3):
            edges = [(u + 3 * i, v + 3 * i) for i, bits in enumerate(contents) for u, v in Graph(3, bits).edges()]
            members += in_tensor_family(Graph.from_edges(9, edges), fam, 2, 3)
        enumerated = Fraction(members, 8**3)
        assert enumerated == Fraction(22, 512)
        assert tensor_density(fam, 2, 3) == enumerated
        assert union_lower_binomial(Fraction(1, 8), 1, 1).value_exact == enumerated
    assert t.elapsed < 10.0


@pytest.mark.criterion("6. bracket increasing over t=1e2..1e5, within 1e-2 of 1/7 (p=1/8) and 1/3 (p=1/4)")
def test_criterion_6_bracket_convergence():
    with Timer() as t:
        ts = (10**2, 10**3, 10**4, 10**5)
        for p, limit in ((Fraction(1, 8), 1 / 7), (Fraction(1, 4), 1 / 3)):
            vals = [union_bracket(p, s).value_float for s in ts]
            assert all(a < b for a, b in zip(vals, vals[1:]))
            assert abs(vals[-1] - limit) < 1e-2
    assert t.elapsed < 1.0


@pytest.mark.criterion("7. every pair in F(2,3) for F=star of one edge (n=2) has intersection containing Gamma_1")
def test_criterion_7_pigeonhole():
    with Timer() as t:
        gamma = Graph.complete(2)
        base = star_family(2, gamma)
        fam = tensor_family(base, 2, 3)
        assert len(fam) == 2**14
        gamma_1 = PropertySpec.contains(union_pattern(gamma, 1))
        # block patterns: minimal members carry only their in-F block edges
        block_edges = [Graph.from_edges(6, [(1, 2)]), Graph.from_edges(6, [(3, 4)]), Graph.from_edges(6, [(5, 6)])]
        patterns = [p for p in itertools.product((0, 1), repeat=3) if sum(p) >= 2]
        minimal = []
        for p in patterns:
            bits = 0
            for on, e in zip(p, block_edges):
                bits |= e.bits if on else 0
            minimal.append(Graph(6, bits))
        for g in minimal:
            assert g in fam
            for h in minimal:
                assert satisfies(g & h, gamma_1)
        # and every member pair, vectorized
        arr = np.array([g.bits for g in fam.members], dtype=np.uint16)
        for g in arr:
            assert np.all((arr & g) != 0)
    assert t.elapsed < 5.0


@pytest.mark.criterion("8. GF(2) invariant suite: group laws, B(S)+B(T)=B(S^T), |W|, intersection in complement of xor")
def test_criterion_8_invariants():
    with Timer() as t:
        for n in range(1, 5):
            gs = list(enumerate_graphs(n))
            zero = Graph.empty(n)
            for g in gs:
                assert g ^ g == zero and g ^ zero == g
                for h in gs:
                    assert g ^ h == h ^ g
        n = 5
        subsets = [VertexSet(n, m) for m in range(1 << n)]
        for s in subsets:
            for u in subsets:
                assert bipartite_complete(n, s) ^ bipartite_complete(n, u) == bipartite_complete(
                    n, s.symmetric_difference(u)
                )
        for n in range(1, 7):
            assert len({bipartite_complete(n, VertexSet(n, m)) for m in range(1 << n)}) == 2 ** (n - 1)
        rng = random.Random(20190105)
        for _ in range(5000):
            n = rng.randint(1, 10)
            g1 = Graph(n, rng.getrandbits(num_edges(n)) if num_edges(n) else 0)
            g2 = Graph(n, rng.getrandbits(num_edges(n)) if num_edges(n) else 0)
            assert is_subgraph(g1 & g2, complement(g1 ^ g2))
    assert t.elapsed < 30.0


@pytest.mark.criterion("9. classify_extremal(4, connected) includes all 16 tree stars and the exceptional family")
def test_criterion_9_classification():
    with Timer() as t:
        fams = classify_extremal(4, CONNECTED)
        trees = spanning_trees(4)
        assert len(trees) == 16
        for tree in trees:
            assert star_family(4, tree) in fams
        assert exceptional_n4() in fams
        for fam in fams:
            assert len(fam) == 8
            assert passes_connected_checks(fam)
    assert t.elapsed < 60.0
