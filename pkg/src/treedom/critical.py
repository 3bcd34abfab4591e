"""Critical vertices of a dominating set and the critical matchings.

For a dominating set ``S``: a vertex of ``S`` is *critical* when dropping it
breaks domination, otherwise *supported*.  Vertices outside ``S`` split by
how many members of ``S`` they see (``n1``: exactly one, ``n2``: two or
more) and critical vertices split by whether their closed neighbourhood
meets ``n1`` (``a1``) or not (``a2``).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .domination import (
    NotDominating,
    dominated_mask,
    from_mask,
    is_minimal_dominating,
    subset_census,
    to_mask,
)
from .trees import Tree

__all__ = [
    "NotMinimal",
    "CriticalDecomposition",
    "MatchingReport",
    "critical_set",
    "decompose",
    "a_total",
    "a_totals",
    "max_bipartite_matching",
    "max_critical_matching",
]


class NotMinimal(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class CriticalDecomposition:
    a: frozenset[int]
    a1: frozenset[int]
    a2: frozenset[int]
    n1: frozenset[int]
    n2: frozenset[int]
    supported: frozenset[int]

    def to_json(self) -> dict:
        return {k: sorted(getattr(self, k)) for k in ("a1", "a2", "n1", "n2", "supported")}


@dataclass(frozen=True)
class MatchingReport:
    rho1: int
    rho2: int
    unmatched: int
    matched_pairs: tuple[tuple[int, int], ...]  # (outside vertex, critical vertex)

    def to_json(self) -> dict:
        return {"rho1": self.rho1, "rho2": self.rho2, "unmatched": self.unmatched,
                "matched_pairs": [list(p) for p in self.matched_pairs]}


def _dominating_mask(t: Tree, s: Iterable[int]) -> int:
    m = to_mask(t.check_set(s))
    if dominated_mask(t, m) != (1 << t.n) - 1:
        raise NotDominating(f"{sorted(from_mask(m))} is not dominating")
    return m


def _critical_mask(t: Tree, m: int) -> int:
    full = (1 << t.n) - 1
    out = 0
    for v in from_mask(m):
        if dominated_mask(t, m & ~(1 << v)) != full:
            out |= 1 << v
    return out


def critical_set(t: Tree, s: Iterable[int]) -> frozenset[int]:
    """``a(S)``: members of ``S`` whose removal leaves some vertex undominated."""
    return from_mask(_critical_mask(t, _dominating_mask(t, s)))


def decompose(t: Tree, s: Iterable[int]) -> CriticalDecomposition:
    m = _dominating_mask(t, s)
    a = _critical_mask(t, m)
    n1 = n2 = 0
    for v in range(t.n):
        if m >> v & 1:
            continue
        if _popcount(t.closed_masks[v] & m) == 1:
            n1 |= 1 << v
        else:
            n2 |= 1 << v
    a1 = 0
    for v in from_mask(a):
        if t.closed_masks[v] & n1:
            a1 |= 1 << v
    return CriticalDecomposition(
        from_mask(a), from_mask(a1), from_mask(a & ~a1),
        from_mask(n1), from_mask(n2), from_mask(m & ~a),
    )


def a_totals(t: Tree, guard: int | None = None) -> list[int]:
    """``a(T, i)`` for ``i = 0..n``, summed over enumerated dominating sets."""
    return list(subset_census(t, guard).critical_totals)


def a_total(t: Tree, i: int, guard: int | None = None) -> int:
    """Total number of critical vertices over all dominating sets of size ``i``."""
    if not 0 <= i <= t.n:
        return 0
    return a_totals(t, guard)[i]


def max_bipartite_matching(left: Iterable[int], right: Iterable[int],
                           adj: dict[int, Iterable[int]]) -> dict[int, int]:
    """Maximum matching by repeated augmenting-path search (Kuhn).

    ``adj[u]`` lists candidate partners of left vertex ``u``; only those in
    ``right`` are used.  Left vertices and their candidates are tried in
    ascending order, so the result is deterministic.  Returns ``{left: right}``.
    """
    right = set(right)
    cand = {u: sorted(w for w in adj.get(u, ()) if w in right) for u in sorted(left)}
    match_r: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for w in cand[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_r or augment(match_r[w], seen):
                match_r[w] = u
                return True
        return False

    for u in cand:
        augment(u, set())
    return {u: w for w, u in match_r.items()}


def max_critical_matching(t: Tree, m: Iterable[int]) -> MatchingReport:
    """Largest matchings ``n1 -> a1`` and ``n2 -> a2`` along tree edges."""
    m = t.check_set(m)
    if not is_minimal_dominating(t, m):
        raise NotMinimal(f"{sorted(m)} is not a minimal dominating set")
    d = decompose(t, m)
    adj = {v: t.adjacency[v] for v in range(t.n)}
    first = max_bipartite_matching(d.n1, d.a1, adj)
    second = max_bipartite_matching(d.n2, d.a2, adj)
    pairs = tuple(sorted({**first, **second}.items()))
    unmatched = len(d.n1) - len(first) + len(d.n2) - len(second)
    return MatchingReport(len(first), len(second), unmatched, pairs)
