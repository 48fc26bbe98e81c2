"""Forbidden configurations and subhypergraph embedding.

Two builders, :func:`make_crown` and :func:`make_cstar`, produce the
generalized crowns. :func:`find_embedding` is a generic backtracking
matcher that works for any small linear pattern; :func:`oracle_contains`
is a deliberately naive brute force used to cross-check it.

The matcher places pattern edges one at a time (spine first, then edges
that touch the most already-placed edges). Each pattern edge is mapped to
a host edge that contains the images of its already-mapped vertices; the
remaining vertices go to the rest of that host edge. Two reductions keep
the branching small without affecting the answer:

* pattern vertices lying in exactly the same pattern edges ("twins") are
  interchangeable, so only one assignment per twin group is tried;
* the orientation of the first edge is tried only once per orbit of the
  pattern automorphisms that fix that edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, NamedTuple, Sequence

from .core import LinearHypergraph


class UniformityMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    """A copy certificate: pattern vertex -> host vertex, pattern edge -> host edge id."""

    vertex_map: dict[int, int]
    edge_map: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "edge_map": {str(k): v for k, v in sorted(self.edge_map.items())},
        }


class _Step(NamedTuple):
    edge: int
    fixed: tuple[int, ...]
    free_groups: tuple[tuple[int, ...], ...]


class _Plan:
    """Static placement order for one choice of first pattern edge."""

    def __init__(self, pattern: "Pattern", first: int, orientations=None):
        pg = pattern.graph
        self.pattern = pattern
        self.first = first
        pedges = [tuple(e) for e in pg.edges]
        self.pdeg = pg.degrees()
        member = [frozenset(i for i, e in enumerate(pedges) if v in e) for v in range(pg.n)]

        order = [first]
        placed_v = set(pedges[first])
        left = [i for i in range(len(pedges)) if i != first]
        while left:
            def key(i):
                met = sum(1 for j in order if set(pedges[i]) & set(pedges[j]))
                return (-met, -len(placed_v & set(pedges[i])), i)

            nxt = min(left, key=key)
            left.remove(nxt)
            order.append(nxt)
            placed_v |= set(pedges[nxt])

        steps = []
        seen: set[int] = set()
        for i in order:
            e = pedges[i]
            fixed = tuple(v for v in e if v in seen)
            groups: dict[frozenset, list[int]] = {}
            for v in e:
                if v not in seen:
                    groups.setdefault(member[v], []).append(v)
            steps.append(_Step(i, fixed, tuple(tuple(g) for g in groups.values())))
            seen.update(e)
        self.steps = steps
        self.isolated = [v for v in range(pg.n) if not member[v]]
        self.first_vertices = pedges[first]
        r = pg.r
        self.orientations = (
            list(orientations) if orientations is not None else list(permutations(range(r)))
        )

    # -- search -------------------------------------------------------

    def run(self, host, anchor=None, on_found: Callable | None = None) -> Embedding | None:
        """Search ``host`` = (n, edges, emask, incident).

        With ``anchor`` the first pattern edge is pinned to that host edge.
        ``on_found`` turns the search into enumeration: it is called with
        each embedding and the search stops only if it returns True.
        """
        n, edges, emask, incident = host
        pdeg = self.pdeg
        steps = self.steps
        nsteps = len(steps)
        phi = [-1] * len(pdeg)
        eimg = [-1] * len(self.pattern.graph.edges)
        result: list[Embedding] = []
        fv = self.first_vertices
        need_isolated = len(self.isolated)

        def finish(used_mask: int) -> bool:
            vmap = {}
            if need_isolated:
                spare = [v for v in range(n) if not used_mask >> v & 1]
                if len(spare) < need_isolated:
                    return False
                vmap.update(zip(self.isolated, spare))
            vmap.update((u, phi[u]) for u in range(len(phi)) if phi[u] >= 0)
            emb = Embedding(vmap, {i: eimg[i] for i in range(len(eimg))})
            if on_found is None:
                result.append(emb)
                return True
            return bool(on_found(emb))

        def assignments(groups, hosts):
            if len(groups) == 1:
                g = groups[0]
                d = pdeg[g[0]]
                for v in hosts:
                    if len(incident[v]) < d:
                        return
                yield tuple(zip(g, hosts))
                return
            g, rest_groups = groups[0], groups[1:]
            d = pdeg[g[0]]
            for pick in combinations(hosts, len(g)):
                if any(len(incident[v]) < d for v in pick):
                    continue
                rest = [v for v in hosts if v not in pick]
                for tail in assignments(rest_groups, rest):
                    yield tuple(zip(g, pick)) + tail

        def extend(k: int, used: int) -> bool:
            if k == nsteps:
                return finish(used)
            step = steps[k]
            fixed = step.fixed
            need = 0
            for u in fixed:
                need |= 1 << phi[u]
            cands = incident[phi[fixed[0]]] if fixed else range(len(edges))
            for hid in cands:
                hm = emask[hid]
                if hm & need != need:
                    continue
                rest = hm & ~need
                if rest & used:
                    continue
                hosts = [v for v in edges[hid] if rest >> v & 1]
                eimg[step.edge] = hid
                for assign in assignments(step.free_groups, hosts):
                    for u, v in assign:
                        phi[u] = v
                    if extend(k + 1, used | rest):
                        return True
                for u in (u for g in step.free_groups for u in g):
                    phi[u] = -1
            eimg[step.edge] = -1
            return False

        first_cands = [anchor] if anchor is not None else range(len(edges))
        for hid in first_cands:
            h = edges[hid]
            eimg[self.first] = hid
            for pi in self.orientations:
                ok = True
                for i, u in enumerate(fv):
                    v = h[pi[i]]
                    if len(incident[v]) < pdeg[u]:
                        ok = False
                        break
                    phi[u] = v
                if ok and extend(1, emask[hid]):
                    return result[0] if result else None
            for u in fv:
                phi[u] = -1
        return result[0] if result else None


@dataclass(eq=False)
class Pattern:
    graph: LinearHypergraph
    name: str = "custom"
    spine: int | None = None
    _plans: dict = field(default_factory=dict, init=False, repr=False)
    _autos: list | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if not self.graph.edges:
            raise ValueError("a pattern needs at least one edge")
        if self.spine is None:
            # edge meeting the most other edges, lowest id on ties
            pe = [set(e) for e in self.graph.edges]
            self.spine = min(
                range(len(pe)),
                key=lambda i: (-sum(1 for j in range(len(pe)) if j != i and pe[i] & pe[j]), i),
            )

    @property
    def r(self) -> int:
        return self.graph.r

    def _automorphisms(self) -> list[Embedding]:
        """Self-embeddings of the pattern, up to permutations of twin vertices."""
        if self._autos is None:
            found: list[Embedding] = []

            def collect(emb):
                found.append(emb)
                return False

            _Plan(self, self.spine).run(_host_view(self.graph), on_found=collect)
            self._autos = found
        return self._autos

    def edge_orbit_reps(self) -> list[int]:
        """One pattern edge per orbit of the automorphism group on edges."""
        m = len(self.graph.edges)
        parent = list(range(m))

        def root(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for emb in self._automorphisms():
            for f, g in emb.edge_map.items():
                # edge ids coincide with pattern edge indices when host == pattern
                a, b = root(f), root(g)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return sorted({root(i) for i in range(m)})

    def plan(self, first: int | None = None) -> _Plan:
        first = self.spine if first is None else first
        if first not in self._plans:
            self._plans[first] = _Plan(self, first, self._orientation_reps(first))
        return self._plans[first]

    def _orientation_reps(self, first: int) -> list[tuple[int, ...]]:
        f = self.graph.edges[first]
        r = len(f)
        pos = {u: i for i, u in enumerate(f)}
        gens: set[tuple[int, ...]] = set()
        for emb in self._automorphisms():
            if emb.edge_map.get(first) == first:
                gens.add(tuple(pos[emb.vertex_map[u]] for u in f))
        member = [frozenset(i for i, e in enumerate(self.graph.edges) if u in e) for u in f]
        for i, j in combinations(range(r), 2):
            if member[i] == member[j]:
                t = list(range(r))
                t[i], t[j] = j, i
                gens.add(tuple(t))
        group = {tuple(range(r))}
        frontier = list(group)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = tuple(a[g[i]] for i in range(r))
                    if c not in group:
                        group.add(c)
                        nxt.append(c)
            frontier = nxt
        reps, covered = [], set()
        for pi in permutations(range(r)):
            if pi in covered:
                continue
            reps.append(pi)
            covered.update(tuple(pi[a[i]] for i in range(r)) for a in group)
        return reps


def _host_view(g: LinearHypergraph):
    emask = []
    for e in g.edges:
        m = 0
        for v in e:
            m |= 1 << v
        emask.append(m)
    return (g.n, g.edges, emask, g.incident)


def make_crown(r: int) -> Pattern:
    """r pairwise disjoint edges plus an anchor edge through one vertex of each."""
    if r < 3:
        raise ValueError(f"crown needs r >= 3, got {r}")
    edges = [tuple(range(i * r, i * r + r)) for i in range(r)]
    edges.append(tuple(i * r for i in range(r)))
    return Pattern(LinearHypergraph.from_edges(r * r, r, edges), "crown", spine=r)


def make_cstar(r: int) -> Pattern:
    """C*: r-2 edges through a hub, two further disjoint edges, and a spine
    meeting all r of them once while avoiding the hub.

    Numbering: hub 0, spine vertices 1..r, then fresh vertices edge by edge.
    """
    if r < 3:
        raise ValueError(f"C* needs r >= 3, got {r}")
    spine = tuple(range(1, r + 1))
    nxt = r + 1
    edges = []
    for i in range(1, r - 1):
        edges.append((0, i) + tuple(range(nxt, nxt + r - 2)))
        nxt += r - 2
    for i in (r - 1, r):
        edges.append((i,) + tuple(range(nxt, nxt + r - 1)))
        nxt += r - 1
    edges.append(spine)
    assert nxt == r * r - r + 3
    return Pattern(LinearHypergraph.from_edges(nxt, r, edges), "cstar", spine=len(edges) - 1)


PATTERN_BUILDERS = {"crown": make_crown, "cstar": make_cstar}


def named_patterns(names: Iterable[str], r: int) -> list[Pattern]:
    out = []
    for name in names:
        try:
            out.append(PATTERN_BUILDERS[name](r))
        except KeyError:
            raise ValueError(f"unknown pattern {name!r} (expected one of {sorted(PATTERN_BUILDERS)})") from None
    return out


def _check_r(host: LinearHypergraph, p: Pattern) -> None:
    if host.r != p.r:
        raise UniformityMismatch(f"host is {host.r}-uniform but pattern {p.name} is {p.r}-uniform")


def find_embedding(host: LinearHypergraph, p: Pattern, through: int | None = None) -> Embedding | None:
    """Return a copy of ``p`` in ``host`` or None.

    With ``through`` only copies using that host edge are considered.
    """
    _check_r(host, p)
    if len(host.edges) < len(p.graph.edges):
        return None
    view = _host_view(host)
    if through is None:
        return p.plan().run(view)
    for first in p.edge_orbit_reps():
        emb = p.plan(first).run(view, anchor=through)
        if emb is not None:
            return emb
    return None


def contains_through(view, p: Pattern, anchor: int) -> bool:
    """Fast path used by the search: is there a copy of ``p`` using edge ``anchor``?

    ``view`` is a raw (n, edges, emask, incident) tuple.
    """
    for first in p.edge_orbit_reps():
        if p.plan(first).run(view, anchor=anchor) is not None:
            return True
    return False


class FreeResult(NamedTuple):
    free: bool
    pattern: str | None = None
    witness: Embedding | None = None


def is_free(host: LinearHypergraph, patterns: Sequence[Pattern]) -> FreeResult:
    for p in patterns:
        _check_r(host, p)
    for p in patterns:
        emb = find_embedding(host, p)
        if emb is not None:
            return FreeResult(False, p.name, emb)
    return FreeResult(True)


def verify_embedding(host: LinearHypergraph, p: Pattern, emb: Embedding) -> bool:
    """Re-check a certificate from raw edge data."""
    vm, em = emb.vertex_map, emb.edge_map
    pg = p.graph
    if set(vm) != set(range(pg.n)) or set(em) != set(range(len(pg.edges))):
        return False
    if len(set(vm.values())) != len(vm) or len(set(em.values())) != len(em):
        return False
    if not all(0 <= v < host.n for v in vm.values()):
        return False
    for i, f in enumerate(pg.edges):
        hid = em[i]
        if not 0 <= hid < len(host.edges):
            return False
        if {vm[u] for u in f} != set(host.edges[hid]):
            return False
    return True


def oracle_contains(host: LinearHypergraph, p: Pattern) -> bool:
    """Brute force: try every edge subset and every bijection onto pattern edges."""
    _check_r(host, p)
    pe = [set(e) for e in p.graph.edges]
    k = len(pe)
    pverts = sorted(set().union(*pe))
    isolated = p.graph.n - len(pverts)
    for subset in combinations(range(len(host.edges)), k):
        for perm in permutations(subset):
            images = [set(host.edges[h]) for h in perm]
            cand = {}
            for u in pverts:
                c = set(range(host.n))
                for i in range(k):
                    c = c & images[i] if u in pe[i] else c - images[i]
                cand[u] = c
            if _has_injection(pverts, cand) and host.n - len(set().union(*images)) >= isolated:
                return True
    return False


def _has_injection(items, cand) -> bool:
    taken: dict[int, int] = {}

    def augment(u, seen):
        for v in cand[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in taken or augment(taken[v], seen):
                taken[v] = u
                return True
        return False

    return all(augment(u, set()) for u in items)
