"""Linear r-uniform hypergraphs on dense integer vertex sets.

A graph is built edge by edge; every insertion is checked against a
pair -> edge index so that two edges never share more than one vertex.
Graphs are never edited after the fact (no deletion).

Text format (``.lhg``)::

    n r m
    v1 v2 ... vr        (m lines, ascending ids)

A JSON mirror ``{"n": .., "r": .., "edges": [[..], ..]}`` is also supported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    """Base class for malformed-graph errors."""


class InvalidUniformity(HypergraphError):
    pass


class VertexRangeError(HypergraphError):
    pass


class ArityError(HypergraphError):
    pass


class DuplicatePairError(HypergraphError):
    """Raised when an edge would cover a pair already covered by another edge."""

    def __init__(self, pair: tuple[int, int], edge_id: int):
        self.pair = pair
        self.edge_id = edge_id
        super().__init__(
            f"pair {{{pair[0]},{pair[1]}}} already covered by edge {edge_id}"
        )


class ParseError(HypergraphError):
    pass


@dataclass(frozen=True)
class Violation:
    """One broken invariant found by :func:`validate`."""

    kind: str  # "arity", "range", "duplicate-vertex", "duplicate-pair"
    edges: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


@dataclass
class LinearHypergraph:
    n: int
    r: int
    edges: list[Edge] = field(default_factory=list)
    pair_index: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)
    incident: list[list[int]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.r < 2:
            raise InvalidUniformity(f"uniformity must be >= 2, got {self.r}")
        if self.n < 0:
            raise HypergraphError(f"vertex count must be >= 0, got {self.n}")
        pending = list(self.edges)
        self.edges = []
        self.pair_index = {}
        self.incident = [[] for _ in range(self.n)]
        for e in pending:
            self.add_edge(e)

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Sequence[int]]) -> "LinearHypergraph":
        g = cls(n, r)
        for e in edges:
            g.add_edge(e)
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    def _check_edge(self, e: Sequence[int]) -> Edge:
        verts = tuple(sorted(int(v) for v in e))
        if len(verts) != self.r:
            raise ArityError(f"edge {list(e)} has {len(verts)} vertices, expected {self.r}")
        for v in verts:
            if not 0 <= v < self.n:
                raise VertexRangeError(f"vertex {v} out of range for n={self.n}")
        for a, b in zip(verts, verts[1:]):
            if a == b:
                raise ArityError(f"edge {list(e)} repeats vertex {a}")
        return verts

    def conflict(self, e: Sequence[int]) -> DuplicatePairError | None:
        """Return the linearity conflict ``e`` would cause, or None."""
        verts = tuple(sorted(e))
        for pair in combinations(verts, 2):
            hit = self.pair_index.get(pair)
            if hit is not None:
                return DuplicatePairError(pair, hit)
        return None

    def add_edge(self, e: Sequence[int]) -> int:
        """Append ``e`` and return its edge id.

        On any error the graph is left untouched.
        """
        verts = self._check_edge(e)
        err = self.conflict(verts)
        if err is not None:
            raise err
        eid = len(self.edges)
        self.edges.append(verts)
        for pair in combinations(verts, 2):
            self.pair_index[pair] = eid
        for v in verts:
            self.incident[v].append(eid)
        return eid

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise VertexRangeError(f"vertex {v} out of range for n={self.n}")
        return len(self.incident[v])

    def degrees(self) -> list[int]:
        return [len(inc) for inc in self.incident]

    def edge_with(self, u: int, v: int) -> int | None:
        """Id of the edge covering the pair {u, v}, if any."""
        return self.pair_index.get((u, v) if u < v else (v, u))

    def copy(self) -> "LinearHypergraph":
        return LinearHypergraph(self.n, self.r, list(self.edges))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearHypergraph):
            return NotImplemented
        return (self.n, self.r, self.edges) == (other.n, other.r, other.edges)

    # -- serialization -------------------------------------------------

    def serialize(self) -> str:
        lines = [f"{self.n} {self.r} {len(self.edges)}"]
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def validate(n: int, r: int, edges: Sequence[Sequence[int]]) -> list[Violation]:
    """Re-check every invariant from raw data, independently of any index.

    Returns all violations found (empty list means the data is a valid
    linear r-graph).
    """
    out: list[Violation] = []
    clean: list[tuple[int, frozenset[int]]] = []
    for i, e in enumerate(edges):
        ok = True
        if len(e) != r:
            out.append(Violation("arity", (i,), f"edge {i} has {len(e)} vertices, expected {r}"))
            ok = False
        bad = [v for v in e if not (isinstance(v, int) and 0 <= v < n)]
        if bad:
            out.append(Violation("range", (i,), f"edge {i} has out-of-range vertices {bad}"))
            ok = False
        if len(set(e)) != len(e):
            out.append(Violation("duplicate-vertex", (i,), f"edge {i} repeats a vertex"))
            ok = False
        if ok:
            clean.append((i, frozenset(e)))
    for (i, a), (j, b) in combinations(clean, 2):
        common = a & b
        if len(common) > 1:
            pair = tuple(sorted(common)[:2])
            out.append(
                Violation(
                    "duplicate-pair",
                    (i, j),
                    f"edges {i} and {j} share pair {{{pair[0]},{pair[1]}}}",
                )
            )
    return out


def check(g: LinearHypergraph) -> list[Violation]:
    """Audit an already-built graph (re-derives everything from ``g.edges``)."""
    out = validate(g.n, g.r, g.edges)
    for i, e in enumerate(g.edges):
        if list(e) != sorted(e):
            out.append(Violation("order", (i,), f"edge {i} is not ascending"))
    return out


def _build(n: int, r: int, edges: list[list[int]]) -> LinearHypergraph:
    violations = validate(n, r, edges)
    if violations:
        v = violations[0]
        if v.kind == "duplicate-pair":
            i, j = v.edges
            pair = tuple(sorted(set(edges[i]) & set(edges[j])))[:2]
            raise DuplicatePairError(pair, i)
        if v.kind == "range":
            raise VertexRangeError(v.detail)
        raise ArityError(v.detail)
    try:
        return LinearHypergraph.from_edges(n, r, edges)
    except InvalidUniformity:
        raise
    except HypergraphError as exc:  # pragma: no cover - validate catches these first
        raise ParseError(str(exc)) from exc


def parse(text: str) -> LinearHypergraph:
    """Parse ``.lhg`` text; fails on any invariant violation."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError(f"header must be 'n r m', got {lines[0]!r}")
    try:
        n, r, m = (int(x) for x in head)
    except ValueError:
        raise ParseError(f"non-integer header {lines[0]!r}") from None
    if r < 2:
        raise InvalidUniformity(f"uniformity must be >= 2, got {r}")
    if n < 0 or m < 0:
        raise ParseError("negative count in header")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges, found {len(body)}")
    edges = []
    for k, ln in enumerate(body, start=2):
        try:
            edges.append([int(x) for x in ln.split()])
        except ValueError:
            raise ParseError(f"line {k}: non-integer vertex id") from None
    return _build(n, r, edges)


def from_dict(data: dict) -> LinearHypergraph:
    try:
        n, r, edges = int(data["n"]), int(data["r"]), data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad JSON graph: {exc}") from None
    if r < 2:
        raise InvalidUniformity(f"uniformity must be >= 2, got {r}")
    if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
        raise ParseError("'edges' must be a list of lists")
    return _build(n, r, edges)


def from_json(text: str) -> LinearHypergraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_dict(data)


def loads(text: str) -> LinearHypergraph:
    """Parse either format, sniffing JSON by its leading brace."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse(text)


def random_linear(n: int, r: int, m: int, rng, tries: int = 200) -> LinearHypergraph:
    """Greedy random linear graph with up to ``m`` edges.

    ``rng`` is a :class:`random.Random`; stops early if ``tries`` random
    r-sets in a row are rejected.
    """
    g = LinearHypergraph(n, r)
    misses = 0
    while len(g.edges) < m and misses < tries and n >= r:
        e = rng.sample(range(n), r)
        if g.conflict(sorted(e)) is None:
            g.add_edge(e)
            misses = 0
        else:
            misses += 1
    return g
