"""Batch verification of the coefficient and critical-vertex claims.

A *scope* names a corpus of trees:

``exhaustive:N``
    every labelled tree with ``1 <= n <= N`` (Prüfer enumeration);
``unlabeled:N``
    one tree per isomorphism class with ``1 <= n <= N``;
``random:N:COUNT:SEED``
    ``COUNT`` random trees with ``n`` uniform in ``2..N``;
``file:PATH``
    one tree in edge-list format.

Each suite returns a :class:`SuiteResult`; any violation is recorded as a
finding that identifies the tree by its Prüfer code.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .analysis import (
    analyze_sequence,
    avd_report,
    verify_decreasing_segment,
    verify_increasing_segment,
    verify_tk_certificate,
    verify_unimodal_gap,
)
from .critical import decompose, max_critical_matching
from .domination import (
    DomPoly,
    SubsetCensus,
    dom_poly_bruteforce,
    dom_poly_dp,
    enumerate_dominating_sets,
    enumerate_minimal_dominating_sets,
    subset_census,
)
from .io import read_edge_list
from .reconfig import find_larger_minimal, hall_violations
from .trees import Tree, all_labeled_trees, all_unlabeled_trees, prufer_code, random_trees

__all__ = [
    "ScopeError",
    "SUITES",
    "Finding",
    "SuiteResult",
    "TreeFacts",
    "parse_scope",
    "iter_scope",
    "run_suite",
    "run_suites",
    "run_tk",
]


class ScopeError(ValueError):
    pass


@dataclass(frozen=True)
class Finding:
    suite: str
    kind: str   # "violation" or "note"
    n: int
    prufer: tuple[int, ...]
    detail: str

    def to_json(self) -> dict:
        return {"suite": self.suite, "kind": self.kind, "n": self.n,
                "prufer": list(self.prufer), "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    scope: str
    trees: int = 0
    checks: int = 0
    findings: list[Finding] = field(default_factory=list)

    @property
    def violations(self) -> list[Finding]:
        return [f for f in self.findings if f.kind == "violation"]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"suite": self.suite, "scope": self.scope, "trees": self.trees,
                "checks": self.checks, "passed": self.passed,
                "findings": [f.to_json() for f in self.findings]}


class TreeFacts:
    """Lazily computed polynomial and subset census of one tree."""

    def __init__(self, tree: Tree, guard: int | None = None):
        self.tree = tree
        self.guard = guard

    @cached_property
    def poly(self) -> DomPoly:
        return dom_poly_dp(self.tree)

    @cached_property
    def census(self) -> SubsetCensus:
        return subset_census(self.tree, self.guard)

    @property
    def gamma(self) -> int:
        return self.poly.gamma

    @property
    def big_gamma(self) -> int:
        return self.census.big_gamma

    @cached_property
    def prufer(self) -> tuple[int, ...]:
        return tuple(prufer_code(self.tree))


# -- per-tree checks: each yields (ok, detail) ---------------------------------

Check = Iterator[tuple[bool, str]]


def _check_oracle(f: TreeFacts) -> Check:
    brute = dom_poly_bruteforce(f.tree, f.guard)
    yield brute == f.poly, f"dp {list(f.poly)} vs brute force {list(brute)}"


def _check_aidi(f: TreeFacts) -> Check:
    d, a, n = f.poly, f.census.critical_totals, f.tree.n
    yield tuple(d) == f.census.dom_counts, "census counts disagree with dp polynomial"
    for i in range(1, n + 1):
        rhs = i * d[i] - (n - i + 1) * d[i - 1]
        yield a[i] == rhs, f"i={i}: a(T,i)={a[i]} but i*d_i-(n-i+1)*d_(i-1)={rhs}"
        # both directions of: d_i <= d_(i-1)  <=>  a(T,i) <= (2i-n-1) d_i
        lhs_holds = d[i] <= d[i - 1]
        rhs_holds = a[i] <= (2 * i - n - 1) * d[i]
        yield lhs_holds == rhs_holds, f"i={i}: adi equivalence fails"


def _check_bounds(f: TreeFacts) -> Check:
    c = f.census
    for i in range(f.tree.n + 1):
        if c.crit_min[i] is None:
            continue
        yield c.crit_min[i] >= 2 * f.gamma - i, \
            f"|S|={i}: some |a(S)|={c.crit_min[i]} < 2*gamma-|S|={2 * f.gamma - i}"
        yield c.crit_max[i] <= 2 * f.big_gamma - i, \
            f"|S|={i}: some |a(S)|={c.crit_max[i]} > 2*Gamma-|S|={2 * f.big_gamma - i}"


def _check_segments(f: TreeFacts) -> Check:
    inc = verify_increasing_segment(f.tree, f.poly, f.gamma)
    yield inc.holds, f"increasing segment fails at i={inc.witness} (range {inc.lo}..{inc.hi})"
    dec = verify_decreasing_segment(f.tree, f.poly, f.big_gamma)
    yield dec.holds, f"decreasing segment fails at i={dec.witness} (range {dec.lo}..{dec.hi})"
    yield dec.proof_range_agrees, "stated decreasing range differs from derived range"


def _check_corollary(f: TreeFacts) -> Check:
    gap = verify_unimodal_gap(f.tree, f.poly, f.gamma, f.big_gamma)
    yield gap.holds, f"Gamma-gamma={gap.gap} < 3 but {list(f.poly)} is not unimodal"


def _check_avd(f: TreeFacts) -> Check:
    rep = avd_report(f.tree, f.poly, f.gamma, f.big_gamma)
    c = f.census
    via = Fraction(f.tree.n, 2) + Fraction(sum(c.critical_totals), 2 * c.total)
    yield rep.avd == via, f"avd {rep.avd} != critical-vertex formula {via}"
    yield rep.within_bounds, f"avd {rep.avd} outside [{rep.lower_bound}, {rep.upper_bound}]"


def _check_unimodal(f: TreeFacts) -> Check:
    rep = analyze_sequence(f.poly)
    yield rep.unimodal, f"{list(f.poly)} is not unimodal"
    yield not rep.log_concave or rep.unimodal, "log-concave but not unimodal"


def _check_matching(f: TreeFacts) -> Check:
    """Minimal-set claims: a1 <= n1 for all, saturation at Gamma, unmatched bound."""
    t, G = f.tree, f.big_gamma
    for m in enumerate_minimal_dominating_sets(t, f.guard):
        d = decompose(t, m)
        yield len(d.a1) <= len(d.n1), f"M={sorted(m)}: |a1| > |n1|"
        rep = max_critical_matching(t, m)
        yield rep.unmatched <= 2 * (G - len(m)), \
            f"M={sorted(m)}: unmatched={rep.unmatched} > 2(Gamma-|M|)"
        if len(m) == G:
            yield len(d.a1) == len(d.n1), f"M={sorted(m)}: |a1| != |n1| at Gamma"
            yield rep.unmatched == 0, f"M={sorted(m)}: unmatched={rep.unmatched} at Gamma"
            bad = next(hall_violations(t, m), None)
            yield bad is None, f"M={sorted(m)}: X={sorted(bad or ())} violates Hall at Gamma"


def _check_observations(f: TreeFacts) -> Check:
    """Per dominating set: isolated members are critical; a2 members see only n2."""
    t = f.tree
    for s in enumerate_dominating_sets(t, guard=f.guard):
        d = decompose(t, s)
        for v in s:
            if not any(w in s for w in t.adjacency[v]):
                yield v in d.a, f"S={sorted(s)}: isolated {v} not critical"
        for v in d.a2:
            yield all(w in d.n2 for w in t.adjacency[v]), f"S={sorted(s)}: a2 vertex {v} sees outside n2"
        yield len(d.a1) <= len(d.n1), f"S={sorted(s)}: |a1| > |n1|"


def _check_closure(f: TreeFacts) -> Check:
    """Iterating find_larger_minimal from every minimal set reaches Gamma."""
    t, G = f.tree, f.big_gamma
    for m in enumerate_minimal_dominating_sets(t, f.guard):
        cur, steps = m, 0
        while (nxt := find_larger_minimal(t, cur)) is not None:
            cur, steps = nxt, steps + 1
        yield len(cur) == G and steps <= t.n, \
            f"M={sorted(m)} stalls at {sorted(cur)} (|.|={len(cur)}, Gamma={G})"


_TREE_CHECKS: dict[str, Callable[[TreeFacts], Check]] = {
    "oracle": _check_oracle,
    "aidi": _check_aidi,
    "bounds": _check_bounds,
    "segments": _check_segments,
    "corollary": _check_corollary,
    "avd": _check_avd,
    "matching": _check_matching,
    "observations": _check_observations,
    "closure": _check_closure,
    "unimodal": _check_unimodal,
}
SUITES = tuple(_TREE_CHECKS) + ("tk",)
ALL_SUITES = ("oracle", "aidi", "bounds", "segments", "corollary", "avd")


def parse_scope(scope: str) -> tuple:
    parts = scope.split(":")
    try:
        if parts[0] == "exhaustive" and len(parts) == 2:
            return ("exhaustive", int(parts[1]))
        if parts[0] == "unlabeled" and len(parts) == 2:
            return ("unlabeled", int(parts[1]))
        if parts[0] == "random" and len(parts) == 4:
            return ("random", int(parts[1]), int(parts[2]), int(parts[3]))
        if parts[0] == "file" and len(parts) >= 2:
            return ("file", scope.split(":", 1)[1])
    except ValueError:
        pass
    raise ScopeError(f"bad scope {scope!r}; use exhaustive:N, unlabeled:N, random:N:COUNT:SEED or file:PATH")


def iter_scope(scope: str) -> Iterator[Tree]:
    kind, *args = parse_scope(scope)
    if kind == "exhaustive":
        for n in range(1, args[0] + 1):
            yield from all_labeled_trees(n)
    elif kind == "unlabeled":
        for n in range(1, args[0] + 1):
            yield from all_unlabeled_trees(n)
    elif kind == "random":
        n_max, count, seed = args
        yield from random_trees(count, 2, n_max, seed)
    else:
        yield read_edge_list(args[0])[0]


def run_suites(suites: Sequence[str], trees: Iterable[Tree] | str, guard: int | None = None,
               scope_name: str | None = None) -> list[SuiteResult]:
    """Run several per-tree suites in one pass, sharing each tree's facts."""
    for suite in suites:
        if suite not in _TREE_CHECKS:
            raise ScopeError(f"unknown suite {suite!r}")
    if isinstance(trees, str):
        scope_name = scope_name or trees
        trees = iter_scope(trees)
    results = [SuiteResult(s, scope_name or "custom") for s in suites]
    for t in trees:
        facts = TreeFacts(t, guard)
        for result in results:
            result.trees += 1
            for ok, detail in _TREE_CHECKS[result.suite](facts):
                result.checks += 1
                if not ok:
                    result.findings.append(
                        Finding(result.suite, "violation", t.n, facts.prufer, detail))
    return results


def run_suite(suite: str, trees: Iterable[Tree] | str, guard: int | None = None,
              scope_name: str | None = None) -> SuiteResult:
    """Run one per-tree suite over a scope string or an iterable of trees."""
    return run_suites([suite], trees, guard, scope_name)[0]


def run_tk(ks: Iterable[int]) -> tuple[SuiteResult, list]:
    ks = list(ks)
    result = SuiteResult("tk", "k=" + ",".join(map(str, ks)))
    certs = []
    for k in ks:
        cert = verify_tk_certificate(k)
        certs.append(cert)
        result.trees += 1
        for name, ok in cert.checks.items():
            result.checks += 1
            if not ok:
                result.findings.append(Finding("tk", "violation", cert.n, (), f"k={k}: {name} fails"))
    return result, certs
