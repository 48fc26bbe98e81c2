"""Transversal designs and the crown-free extremal constructions.

For a prime power q the design T(q^2, q) lives on pairs (i, y) with
group index i and y in GF(q); vertex (i, y) gets id ``i*q + rank(y)``.
Block B(a, b) = {(i, a*g_i + b)} where g_i is the i-th field element.
Adding the q groups as edges gives T' (an affine plane of order q), whose
parallel classes are read off directly: one class per slope a, plus the
class of group edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import LinearHypergraph
from .gf import FieldSpec, prime_power


@dataclass
class TransversalDesign:
    q: int
    graph: LinearHypergraph
    groups: list[tuple[int, ...]]
    block_ids: list[int]


@dataclass
class Factorization:
    classes: list[list[int]]

    def check(self, g: LinearHypergraph) -> bool:
        """Classes partition the edges and each is a perfect matching."""
        ids = sorted(i for c in self.classes for i in c)
        if ids != list(range(len(g.edges))):
            return False
        for c in self.classes:
            cover = [v for i in c for v in g.edges[i]]
            if sorted(cover) != list(range(g.n)):
                return False
        return True


def _field(q: int) -> FieldSpec:
    if prime_power(q) is None:
        raise ValueError(f"q={q} is not a prime power")
    return FieldSpec.of_order(q)


def transversal_design(q: int) -> TransversalDesign:
    F = _field(q)
    els = F.elements()
    g = LinearHypergraph(q * q, q)
    block_ids = []
    for a in els:
        for b in els:
            block = [i * q + (a * gi + b).rank for i, gi in enumerate(els)]
            block_ids.append(g.add_edge(block))
    groups = [tuple(range(i * q, (i + 1) * q)) for i in range(q)]
    return TransversalDesign(q, g, groups, block_ids)


def extend_with_groups(td: TransversalDesign) -> LinearHypergraph:
    """T': the design plus one edge per group (group edges get the last q ids)."""
    g = td.graph.copy()
    for grp in td.groups:
        g.add_edge(grp)
    return g


def one_factorization(tprime: LinearHypergraph) -> Factorization:
    """Parallel classes of T' = extend_with_groups(transversal_design(q))."""
    q = tprime.r
    expected = extend_with_groups(transversal_design(q))
    if tprime.n != q * q or tprime.edges != expected.edges:
        raise ValueError("graph is not the algebraic T'(q^2, q) built by extend_with_groups")
    classes = [list(range(a * q, (a + 1) * q)) for a in range(q)]
    classes.append(list(range(q * q, q * q + q)))
    return Factorization(classes)


def crown_free_construction(r: int, m: int, apex_edge: bool = False) -> LinearHypergraph:
    """m copies of T'((r-1)^2, r-1), one apex vertex per parallel class.

    Base vertex (copy c, id x in T') gets id c*(r-1)^2 + x; the r apexes
    take the last r ids. Edges are emitted class by class, copy by copy.
    With ``apex_edge`` the r apexes are also joined into one edge.
    """
    if r < 3:
        raise ValueError(f"r must be >= 3, got {r}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    q = r - 1
    if prime_power(q) is None:
        raise ValueError(f"r-1={q} is not a prime power")
    tprime = extend_with_groups(transversal_design(q))
    fact = one_factorization(tprime)
    base = q * q * m
    g = LinearHypergraph(base + r, r)
    for j, cls in enumerate(fact.classes):
        apex = base + j
        for c in range(m):
            off = c * q * q
            for eid in cls:
                g.add_edge([off + v for v in tprime.edges[eid]] + [apex])
    if apex_edge:
        g.add_edge(range(base, base + r))
    return g


def grs_construction(m: int) -> LinearHypergraph:
    """The r = 3 case: mK4 with one apex per perfect matching."""
    return crown_free_construction(3, m)
