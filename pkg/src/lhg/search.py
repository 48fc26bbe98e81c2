"""Exact linear Turán numbers at desk scale.

Depth-first branch and bound over edge sets, with edges added in
increasing lexicographic order (so each edge set is reached through one
ordering only). On top of that, the search fixes a vertex of maximum
degree: every non-empty linear r-graph of maximum degree D can be
relabelled so that vertex 0 lies in exactly the D edges

    {0, 1, .., r-1}, {0, r, .., 2r-2}, ...

and, since edges through 0 are the lexicographically smallest, these form
the prefix of the sorted edge list. The remaining edges avoid 0 and obey
the degree cap D. The search runs once per D, largest first.

Pruning: while scanning candidates whose smallest vertex is ``a``, no
later edge can touch a vertex below ``a``; each vertex v >= a can gain at
most min(D - d(v), uncovered pairs at v among vertices >= a // (r-1))
more edges, and the sum of those over r bounds the remaining edges.

Pattern freeness is checked incrementally: any new copy must use the
newly added edge, so only copies through that edge are searched.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .core import LinearHypergraph
from .patterns import Pattern, UniformityMismatch, contains_through

log = logging.getLogger(__name__)


@dataclass
class SearchConfig:
    n: int
    r: int
    patterns: list[Pattern] = field(default_factory=list)
    edge_budget: int | None = None
    time_budget: float | None = None
    parallel: bool = False
    workers: int | None = None

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"r must be >= 2, got {self.r}")
        if self.n < self.r:
            raise ValueError(f"n={self.n} must be >= r={self.r}")
        for p in self.patterns:
            if p.r != self.r:
                raise UniformityMismatch(f"pattern {p.name} is {p.r}-uniform, search is {self.r}-uniform")


@dataclass
class SearchResult:
    max_edges: int
    witness: LinearHypergraph
    nodes_explored: int
    exact: bool

    def to_dict(self) -> dict:
        return {
            "n": self.witness.n,
            "r": self.witness.r,
            "max_edges": self.max_edges,
            "exact": self.exact,
            "nodes_explored": self.nodes_explored,
            "witness": self.witness.to_dict(),
        }


class _Stop(Exception):
    pass


class _Search:
    def __init__(self, cfg: SearchConfig, shared=None):
        n, r = cfg.n, cfg.r
        self.n, self.r = n, r
        self.patterns = list(cfg.patterns)
        self.budget = cfg.edge_budget
        self.deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
        self.shared = shared

        pair_bit = {}
        for k, pr in enumerate(combinations(range(n), 2)):
            pair_bit[pr] = 1 << k
        self.cands = [c for c in combinations(range(n), r) if c[0] != 0]
        self.pmask = [sum(pair_bit[pr] for pr in combinations(c, 2)) for c in self.cands]
        self.vmask = [sum(1 << v for v in c) for c in self.cands]
        # at_ge[a][v]: pairs {v, w} with w >= a, w != v
        self.at_ge = [
            [sum(pair_bit[(min(v, w), max(v, w))] for w in range(a, n) if w != v) for v in range(n)]
            for a in range(n)
        ]
        self.pair_bit = pair_bit

        self.best = 0
        self.best_edges: list[tuple[int, ...]] = []
        self.nodes = 0
        self._next_tick = 1024

    def star(self, D: int) -> list[tuple[int, ...]]:
        r = self.r
        return [(0,) + tuple(range(1 + k * (r - 1), 1 + (k + 1) * (r - 1))) for k in range(D)]

    def max_star(self) -> int:
        return (self.n - 1) // (self.r - 1)

    # -- state -------------------------------------------------------

    def _reset(self, D: int) -> bool:
        """Load the D-star; False if the star itself contains a pattern."""
        n = self.n
        self.D = D
        self.edges: list[tuple[int, ...]] = []
        self.emask: list[int] = []
        self.incident: list[list[int]] = [[] for _ in range(n)]
        self.deg = [0] * n
        self.covered = 0
        for e in self.star(D):
            if not self._push(e, sum(1 << v for v in e), sum(self.pair_bit[p] for p in combinations(e, 2))):
                return False
        return True

    def _push(self, e, vm, pm) -> bool:
        """Add an edge; returns False (and undoes) if it creates a pattern copy."""
        eid = len(self.edges)
        self.edges.append(e)
        self.emask.append(vm)
        for v in e:
            self.incident[v].append(eid)
            self.deg[v] += 1
        self.covered |= pm
        self.nodes += 1
        if self.patterns:
            view = (self.n, self.edges, self.emask, self.incident)
            for p in self.patterns:
                if contains_through(view, p, eid):
                    self._pop(pm)
                    return False
        return True

    def _pop(self, pm) -> None:
        e = self.edges.pop()
        self.emask.pop()
        for v in e:
            self.incident[v].pop()
            self.deg[v] -= 1
        self.covered &= ~pm

    def _record(self) -> None:
        m = len(self.edges)
        if m > self.best:
            self.best = m
            self.best_edges = list(self.edges)
            if self.shared is not None:
                with self.shared.get_lock():
                    if m > self.shared.value:
                        self.shared.value = m
            if self.budget is not None and m >= self.budget:
                raise _Stop

    def _tick(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Stop
        if self.shared is not None:
            self.best = max(self.best, self.shared.value)

    # -- search ------------------------------------------------------

    def _bound(self, a: int) -> int:
        D, r1 = self.D, self.r - 1
        free = ~self.covered
        deg, at = self.deg, self.at_ge[a]
        total = 0
        for v in range(max(a, 1), self.n):
            room = D - deg[v]
            if room > 0:
                total += min(room, (free & at[v]).bit_count() // r1)
        return total // self.r

    def _dfs(self, start: int) -> None:
        cands, pmask, vmask = self.cands, self.pmask, self.vmask
        deg, D = self.deg, self.D
        cur_a = -1
        for i in range(start, len(cands)):
            c = cands[i]
            if c[0] != cur_a:
                cur_a = c[0]
                if len(self.edges) + self._bound(cur_a) <= self.best:
                    return
            if pmask[i] & self.covered:
                continue
            if any(deg[v] >= D for v in c):
                continue
            if not self._push(c, vmask[i], pmask[i]):
                continue
            if self.nodes >= self._next_tick:
                self._next_tick = self.nodes + 1024
                self._tick()
            self._record()
            self._dfs(i + 1)
            self._pop(pmask[i])

    def stars(self) -> list[int]:
        return list(range(self.max_star(), 0, -1))

    def hopeless(self, D: int) -> bool:
        # every vertex has degree <= D, so at most n*D/r edges
        return self.n * D // self.r <= self.best

    def explore(self, D: int, first: int | None = None) -> None:
        """Search all graphs with the D-star prefix.

        ``first`` restricts to one top-level branch: -1 is the bare star,
        i >= 0 the graphs whose first non-star edge is candidate i.
        """
        if self.hopeless(D) or not self._reset(D):
            return
        self._record()
        if first is None:
            self._dfs(0)
            return
        if first < 0:
            return
        c = self.cands[first]
        if self.pmask[first] & self.covered or any(self.deg[v] >= D for v in c):
            return
        if len(self.edges) + self._bound(c[0]) <= self.best:
            return
        if self._push(c, self.vmask[first], self.pmask[first]):
            self._record()
            self._dfs(first + 1)

    def branches(self) -> list[tuple[int, int]]:
        """Top-level work items for parallel search."""
        out = []
        for D in self.stars():
            covered = 0
            for e in self.star(D):
                covered |= sum(self.pair_bit[p] for p in combinations(e, 2))
            out.append((D, -1))
            out.extend((D, i) for i in range(len(self.cands)) if not self.pmask[i] & covered)
        return out


def _witness(n: int, r: int, edges) -> LinearHypergraph:
    return LinearHypergraph.from_edges(n, r, sorted(edges))


def _sequential(cfg: SearchConfig) -> SearchResult:
    s = _Search(cfg)
    exact = True
    try:
        for D in s.stars():
            s.explore(D)
    except _Stop:
        exact = False
    return SearchResult(s.best, _witness(cfg.n, cfg.r, s.best_edges), s.nodes, exact)


_worker: dict = {}


def _init_worker(cfg: SearchConfig, shared) -> None:
    _worker["cfg"] = cfg
    _worker["shared"] = shared


def _run_branch(task: tuple[int, int]):
    s = _Search(_worker["cfg"], _worker["shared"])
    s.best = s.shared.value
    stopped = False
    try:
        s.explore(*task)
    except _Stop:
        stopped = True
    return s.best_edges, s.nodes, stopped


def _worker_count(cfg: SearchConfig) -> int:
    n = cfg.workers or os.cpu_count() or 1
    cap = os.environ.get("LHG_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def _parallel(cfg: SearchConfig) -> SearchResult:
    import multiprocessing as mp

    ctx = mp.get_context("spawn")
    shared = ctx.Value("i", 0)
    tasks = _Search(cfg).branches()
    best: LinearHypergraph | None = None
    nodes, exact = 0, True
    with ProcessPoolExecutor(
        _worker_count(cfg), mp_context=ctx, initializer=_init_worker, initargs=(cfg, shared)
    ) as pool:
        for edges, k, stopped in pool.map(_run_branch, tasks, chunksize=1):
            nodes += k
            exact = exact and not stopped
            if not edges:
                continue
            w = _witness(cfg.n, cfg.r, edges)
            # merge by size, ties broken on the serialized witness
            if best is None or (w.m, best.serialize()) > (best.m, w.serialize()):
                best = w
    if best is None:
        best = LinearHypergraph(cfg.n, cfg.r)
    return SearchResult(best.m, best, nodes, exact)


def exact_turan(cfg: SearchConfig) -> SearchResult:
    """Maximum edge count of a pattern-free linear r-graph on n vertices."""
    if cfg.parallel and _worker_count(cfg) > 1:
        return _parallel(cfg)
    return _sequential(cfg)


def max_linear(n: int, r: int, **kw) -> SearchResult:
    """Packing number: exact_turan with no forbidden patterns."""
    return exact_turan(SearchConfig(n, r, [], **kw))


def pair_packing_bound(n: int, r: int) -> int:
    """floor(n/r * floor((n-1)/(r-1))), the Johnson-type packing cap."""
    return (n * ((n - 1) // (r - 1))) // r


def trivial_pair_bound(n: int, r: int) -> int:
    return comb(n, 2) // comb(r, 2)
