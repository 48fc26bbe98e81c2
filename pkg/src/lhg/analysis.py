"""Bound formulas, bound checkers and the local-structure lemma verifier.

Everything here is exact: bounds are :class:`fractions.Fraction` values and
comparisons never touch floating point.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple

from .core import LinearHypergraph
from .gf import prime_power
from .patterns import is_free, make_crown, make_cstar

log = logging.getLogger(__name__)

@dataclass
class BoundReport:
    theorem: str
    n: int
    r: int
    edge_count: int
    s: int | None
    bound_value: Fraction
    satisfied: bool | None
    free: bool | None = None
    falsified: bool = False

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "r": self.r,
            "edge_count": self.edge_count,
            "s": self.s,
            "bound": {
                "numerator": self.bound_value.numerator,
                "denominator": self.bound_value.denominator,
            },
            "satisfied": self.satisfied,
            "free": self.free,
            "falsified": self.falsified,
        }


@dataclass
class LemmaReport:
    edge: tuple[int, ...]
    edge_id: int
    S_size: int
    max_degree_in_S: int
    E_S_size: int
    conclusions_hold: tuple[bool, bool, bool]
    free: bool | None = None

    @property
    def ok(self) -> bool:
        return all(self.conclusions_hold)

    @property
    def falsified(self) -> bool:
        """A free graph whose site breaks a conclusion would refute the lemma."""
        return bool(self.free) and not self.ok

    def to_dict(self) -> dict:
        return {
            "edge_id": self.edge_id,
            "edge": list(self.edge),
            "S_size": self.S_size,
            "max_degree_in_S": self.max_degree_in_S,
            "E_S_size": self.E_S_size,
            "conclusions_hold": list(self.conclusions_hold),
            "free": self.free,
            "falsified": self.falsified,
        }


class LowerBound(NamedTuple):
    value: int
    constructive: bool


def grs_lower_bound(n: int) -> int:
    """6*floor((n-3)/4) + eps, eps = 0, 0, 1, 3 for n-3 = 0, 1, 2, 3 mod 4."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    k, res = divmod(n - 3, 4)
    return 6 * k + (0, 0, 1, 3)[res]


def grs_upper_bound(n: int) -> int:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return 2 * n


def construction_lower_bound(r: int, n: int) -> LowerBound:
    """r(r-1)*floor((n-r)/(r-1)^2); only realized when r-1 is a prime power."""
    if r < 3:
        raise ValueError(f"r must be >= 3, got {r}")
    if n < r:
        raise ValueError(f"n must be >= r={r}, got {n}")
    value = r * (r - 1) * ((n - r) // (r - 1) ** 2)
    return LowerBound(value, prime_power(r - 1) is not None)


def _freeness(g: LinearHypergraph, assume_free: bool) -> bool | None:
    if assume_free:
        return None
    return is_free(g, [make_crown(g.r), make_cstar(g.r)]).free


def _upper_report(theorem, g, threshold, bound, assume_free) -> BoundReport:
    degs = g.degrees()
    s = sum(1 for d in degs if d >= threshold)
    bound_value = bound(s)
    satisfied = len(g.edges) <= bound_value
    free = _freeness(g, assume_free)
    falsified = bool(free) and not satisfied
    if falsified:
        log.error("%s bound violated by a free graph (n=%d, m=%d)", theorem, g.n, len(g.edges))
    return BoundReport(theorem, g.n, g.r, len(g.edges), s, bound_value, satisfied, free, falsified)


def check_twzz(g: LinearHypergraph, assume_free: bool = False) -> BoundReport:
    """|E| <= 3(n-s)/2 with s = #{v : d(v) >= 6}, for crown-free 3-graphs."""
    if g.r != 3:
        raise ValueError(f"check_twzz needs r=3, got r={g.r}")
    return _upper_report("twzz", g, 6, lambda s: Fraction(3 * (g.n - s), 2), assume_free)


def check_thm3(g: LinearHypergraph, assume_free: bool = False) -> BoundReport:
    """|E| <= r(r-2)(n-s)/(r-1) with s = #{v : d(v) >= (r-1)^2 + 2}."""
    r = g.r
    if r < 3:
        raise ValueError(f"check_thm3 needs r >= 3, got r={r}")
    return _upper_report(
        "thm3",
        g,
        (r - 1) ** 2 + 2,
        lambda s: Fraction(r * (r - 2) * (g.n - s), r - 1),
        assume_free,
    )


def bound_reports(g: LinearHypergraph, theorem: str = "all", assume_free: bool = False) -> list[BoundReport]:
    """Reports for the CLI. Lower bounds are informational (satisfied=None)."""
    if theorem not in ("all", "twzz", "thm3"):
        raise ValueError(f"unknown theorem {theorem!r}")
    if g.r < 3:
        raise ValueError(f"bounds need r >= 3, got r={g.r}")
    free = _freeness(g, assume_free)
    out = []
    if theorem in ("all", "thm3"):
        out.append(check_thm3(g, assume_free=True))
    if theorem in ("all", "twzz") and g.r == 3:
        out.append(check_twzz(g, assume_free=True))
    m = len(g.edges)
    if theorem == "all" and g.r == 3 and g.n >= 3:
        up = grs_upper_bound(g.n)
        out.append(BoundReport("grs_upper", g.n, 3, m, None, Fraction(up), m <= up))
        out.append(BoundReport("grs_lower", g.n, 3, m, None, Fraction(grs_lower_bound(g.n)), None))
    if theorem == "all" and g.n >= g.r:
        lb = construction_lower_bound(g.r, g.n)
        out.append(BoundReport("construction_lower", g.n, g.r, m, None, Fraction(lb.value), None))
    for rep in out:
        rep.free = free
        rep.falsified = bool(free) and rep.satisfied is False
    return out


def _site_thresholds(r: int) -> list[int]:
    q2 = (r - 1) ** 2
    return [q2 + 1, q2 + 1] + [q2] * (r - 2)


def is_site(g: LinearHypergraph, edge_id: int) -> bool:
    degs = sorted((len(g.incident[v]) for v in g.edges[edge_id]), reverse=True)
    return all(d >= t for d, t in zip(degs, _site_thresholds(g.r)))


def lemma1_sites(g: LinearHypergraph) -> list[int]:
    """Ids of edges whose sorted degrees dominate {(r-1)^2+1, (r-1)^2+1, (r-1)^2, ...}."""
    if g.r < 3:
        raise ValueError(f"needs r >= 3, got r={g.r}")
    return [i for i in range(len(g.edges)) if is_site(g, i)]


def lemma1_verify(g: LinearHypergraph, edge_id: int, assume_free: bool = False) -> LemmaReport:
    if not is_site(g, edge_id):
        raise ValueError(f"edge {edge_id} does not meet the degree condition")
    r = g.r
    e = g.edges[edge_id]
    meeting = {f for v in e for f in g.incident[v]}
    S = {v for f in meeting for v in g.edges[f]}
    E_S = {f for v in S for f in g.incident[v]}
    max_deg = max(len(g.incident[v]) for v in S)
    holds = (
        len(S) == (r - 1) ** 3 + r,
        max_deg <= (r - 1) ** 2 + 1,
        len(E_S) <= r * (r - 1) ** 2 + 1,
    )
    return LemmaReport(e, edge_id, len(S), max_deg, len(E_S), holds, _freeness(g, assume_free))


def lemma1_reports(g: LinearHypergraph, assume_free: bool = False) -> list[LemmaReport]:
    free = _freeness(g, assume_free)
    reports = [lemma1_verify(g, i, assume_free=True) for i in lemma1_sites(g)]
    for rep in reports:
        rep.free = free
    return reports


class DoubleCount(NamedTuple):
    lhs: Fraction
    rhs: int  # n - s
    isolated: int
    equal: bool


def double_count_identity(g: LinearHypergraph) -> DoubleCount:
    """Sum over edges and their vertices of I(v)/d(v), against n - s.

    I(v) = 1 iff d(v) <= (r-1)^2 + 1. Isolated vertices count towards
    n - s but never appear on the left, so the two sides differ by exactly
    the number of isolated vertices.
    """
    cap = (g.r - 1) ** 2 + 1
    degs = g.degrees()
    lhs = Fraction(0)
    for e in g.edges:
        for v in e:
            if degs[v] <= cap:
                lhs += Fraction(1, degs[v])
    s = sum(1 for d in degs if d > cap)
    isolated = degs.count(0)
    return DoubleCount(lhs, g.n - s, isolated, lhs == g.n - s)


def save_counterexample(g: LinearHypergraph, kind: str, directory: str | Path = ".") -> Path:
    """Write a graph that refutes a bound or the lemma; returns the path."""
    text = g.serialize()
    digest = hashlib.sha1(text.encode()).hexdigest()[:10]
    path = Path(directory) / f"counterexample-{kind}-{digest}.lhg"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    log.error("counterexample (%s) saved to %s", kind, path)
    return path
