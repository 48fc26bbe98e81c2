import random

import pytest

from lhg.constructions import crown_free_construction
from lhg.core import LinearHypergraph, random_linear, validate
from lhg.patterns import (
    Pattern,
    UniformityMismatch,
    find_embedding,
    is_free,
    make_crown,
    make_cstar,
    oracle_contains,
    verify_embedding,
)

from conftest import acceptance_hosts


@pytest.mark.parametrize("r", range(3, 9))
def test_pattern_shapes(r):
    crown, cstar = make_crown(r), make_cstar(r)
    for p, nv in ((crown, r * r), (cstar, r * r - r + 3)):
        g = p.graph
        assert validate(g.n, g.r, g.edges) == []
        assert g.n == nv and g.m == r + 1
        assert all(d > 0 for d in g.degrees())
    leaves = crown.graph.edges[:r]
    assert all(not set(a) & set(b) for i, a in enumerate(leaves) for b in leaves[i + 1 :])
    anchor = set(crown.graph.edges[r])
    assert all(len(anchor & set(e)) == 1 for e in leaves)

    edges = [set(e) for e in cstar.graph.edges]
    hub_edges, pair, spine = edges[: r - 2], edges[r - 2 : r], edges[r]
    assert 0 not in spine
    assert all(len(spine & e) == 1 for e in edges[:r])
    assert all(a & b == {0} for i, a in enumerate(hub_edges) for b in hub_edges[i + 1 :])
    assert not pair[0] & pair[1]
    assert all(not p & h for p in pair for h in hub_edges)


def test_cstar_hub_degree():
    assert make_cstar(4).graph.degree(0) == 2


def test_small_r_rejected():
    with pytest.raises(ValueError):
        make_crown(2)
    with pytest.raises(ValueError):
        make_cstar(2)


def test_self_embedding():
    p = make_crown(3)
    emb = find_embedding(p.graph, p)
    assert emb is not None and verify_embedding(p.graph, p, emb)


def test_r3_crown_and_cstar_mutually_embed():
    crown, cstar = make_crown(3), make_cstar(3)
    a = find_embedding(crown.graph, cstar)
    b = find_embedding(cstar.graph, crown)
    assert a is not None and b is not None
    assert verify_embedding(crown.graph, cstar, a) and verify_embedding(cstar.graph, crown, b)


@pytest.mark.parametrize("r", [4, 5])
def test_crown_and_cstar_differ_for_larger_r(r):
    crown, cstar = make_crown(r), make_cstar(r)
    assert find_embedding(crown.graph, cstar) is None
    assert find_embedding(cstar.graph, crown) is None


def test_construction_is_free():
    assert find_embedding(crown_free_construction(3, 2), make_crown(3)) is None
    res = is_free(crown_free_construction(4, 1), [make_crown(4), make_cstar(4)])
    assert res.free and res.witness is None


def test_too_few_edges():
    host = LinearHypergraph.from_edges(16, 4, [(0, 1, 2, 3), (4, 5, 6, 7), (0, 4, 8, 9)])
    assert find_embedding(host, make_crown(4)) is None


def test_is_free_witness():
    res = is_free(make_crown(3).graph, [make_crown(3)])
    assert not res.free and res.pattern == "crown"
    assert verify_embedding(make_crown(3).graph, make_crown(3), res.witness)
    assert is_free(LinearHypergraph(5, 3), [make_crown(3), make_cstar(3)]).free


def test_uniformity_mismatch():
    with pytest.raises(UniformityMismatch):
        find_embedding(LinearHypergraph(9, 4), make_crown(3))
    with pytest.raises(UniformityMismatch):
        oracle_contains(LinearHypergraph(9, 4), make_crown(3))


def test_witness_is_deterministic():
    host = crown_free_construction(3, 3, apex_edge=True)
    a = find_embedding(host, make_crown(3))
    b = find_embedding(host.copy(), make_crown(3))
    assert a == b and verify_embedding(host, make_crown(3), a)


def test_oracle_agrees_on_fixed_hosts():
    for host in (make_crown(3).graph, crown_free_construction(3, 1)):
        p = make_crown(3)
        assert oracle_contains(host, p) == (find_embedding(host, p) is not None)


def _planted(r, rng, extra):
    """A random host containing a relabelled copy of crown(r) or cstar(r)."""
    p = rng.choice([make_crown(r), make_cstar(r)])
    n = p.graph.n + rng.randint(0, 4)
    perm = list(range(n))
    rng.shuffle(perm)
    g = LinearHypergraph(n, r)
    for e in p.graph.edges:
        g.add_edge([perm[v] for v in e])
    for _ in range(extra * 20):
        if g.m >= p.graph.m + extra:
            break
        e = rng.sample(range(n), r)
        if g.conflict(sorted(e)) is None:
            g.add_edge(e)
    return g, p


@pytest.mark.parametrize("r", [3, 4])
def test_planted_copies_found(r):
    rng = random.Random(r)
    for _ in range(25):
        host, p = _planted(r, rng, extra=3)
        emb = find_embedding(host, p)
        assert emb is not None and verify_embedding(host, p, emb)
        assert oracle_contains(host, p)


def test_differential_beyond_acceptance():
    # r=4 hosts large enough to hold both patterns; random plus planted
    rng = random.Random(99)
    crown, cstar = make_crown(4), make_cstar(4)
    for i in range(40):
        if i % 2:
            host, _ = _planted(4, rng, extra=2)
        else:
            host = random_linear(rng.randint(15, 20), 4, rng.randint(5, 8), rng)
        for p in (crown, cstar):
            emb = find_embedding(host, p)
            assert oracle_contains(host, p) == (emb is not None)
            if emb is not None:
                assert verify_embedding(host, p, emb)


def test_random_hosts_agree_with_oracle():
    for host in acceptance_hosts(seed=5, count=60):
        for p in (make_crown(host.r), make_cstar(host.r)):
            emb = find_embedding(host, p)
            assert oracle_contains(host, p) == (emb is not None)
            if emb is not None:
                assert verify_embedding(host, p, emb)


def test_monotone_under_extension(rng):
    p = make_crown(3)
    hits = 0
    for _ in range(40):
        host = random_linear(11, 3, 7, rng)
        if find_embedding(host, p) is None:
            continue
        hits += 1
        ext = host.copy()
        for _ in range(30):
            e = sorted(rng.sample(range(11), 3))
            if ext.conflict(e) is None:
                ext.add_edge(e)
        assert find_embedding(ext, p) is not None
    assert hits > 0


def test_anchored_search():
    host = crown_free_construction(3, 3, apex_edge=True)
    p = make_crown(3)
    apex = host.m - 1
    emb = find_embedding(host, p, through=apex)
    assert emb is not None and apex in emb.edge_map.values()
    free_host = crown_free_construction(3, 2)
    assert all(find_embedding(free_host, p, through=i) is None for i in range(free_host.m))


def test_custom_pattern():
    # two disjoint edges
    two = Pattern(LinearHypergraph.from_edges(6, 3, [(0, 1, 2), (3, 4, 5)]))
    assert find_embedding(LinearHypergraph.from_edges(5, 3, [(0, 1, 2), (0, 3, 4)]), two) is None
    host = LinearHypergraph.from_edges(7, 3, [(0, 1, 2), (0, 3, 4), (4, 5, 6)])
    emb = find_embedding(host, two)
    assert emb is not None and verify_embedding(host, two, emb)
    assert oracle_contains(host, two)
