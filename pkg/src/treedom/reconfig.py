"""Reconfiguring minimal dominating sets of trees into larger ones.

:func:`make_minimal` repeatedly takes the shallowest supported vertex ``u``,
drops its ``a1`` neighbours and adds their private ``n1`` neighbours until
the set is minimal.  :func:`reconfigure_a1` and :func:`reconfigure_a2_subset`
build starting sets for it from a minimal set, and
:func:`find_larger_minimal` chains them into a search for a strictly larger
minimal dominating set.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field

from .critical import NotMinimal, decompose
from .domination import NotDominating, is_dominating, is_minimal_dominating
from .trees import RootedTree, Tree, induced_subtree, is_descendant, root_at

__all__ = [
    "PreconditionViolated",
    "NotInA1",
    "XNotInN2",
    "XNotIndependent",
    "NotConnectedSubtree",
    "Step",
    "SubtreeRun",
    "ReconfigTrace",
    "PreconditionReport",
    "check_algterm_preconditions",
    "make_minimal",
    "reconfigure_a1",
    "check_a2_preconditions",
    "reconfigure_a2_subset",
    "hall_violations",
    "find_larger_minimal",
]


class PreconditionViolated(ValueError):
    def __init__(self, report: "PreconditionReport"):
        super().__init__(f"termination preconditions fail: {report}")
        self.report = report


class NotInA1(ValueError):
    pass


class XNotInN2(ValueError):
    pass


class XNotIndependent(ValueError):
    pass


class NotConnectedSubtree(ValueError):
    pass


@dataclass(frozen=True)
class PreconditionReport:
    """(a) no supported vertex has its parent in the set;
    (b) no supported vertex lies below another supported vertex."""

    condition_a: bool
    witness_a: int | None = None
    condition_b: bool = True
    witness_b: tuple[int, int] | None = None  # (descendant, ancestor)

    @property
    def ok(self) -> bool:
        return self.condition_a and self.condition_b

    def to_json(self) -> dict:
        return {
            "condition_a": self.condition_a,
            "witness_a": self.witness_a,
            "condition_b": self.condition_b,
            "witness_b": None if self.witness_b is None else list(self.witness_b),
        }


@dataclass(frozen=True)
class Step:
    i: int
    u: int
    removed: frozenset[int]
    added: frozenset[int]
    result: frozenset[int]
    subtree_root: int | None = None  # set for steps taken inside a T_x

    def to_json(self) -> dict:
        out = {"i": self.i, "u": self.u, "A": sorted(self.removed),
               "N": sorted(self.added), "M": sorted(self.result)}
        if self.subtree_root is not None:
            out["x"] = self.subtree_root
        return out


@dataclass(frozen=True)
class SubtreeRun:
    x: int
    vertices: frozenset[int]
    start: frozenset[int]
    output: frozenset[int]
    iterations: int


@dataclass
class ReconfigTrace:
    input_set: frozenset[int]
    start: frozenset[int]   # set the MakeMinimal loop starts from
    output_set: frozenset[int] = frozenset()
    steps: list[Step] = field(default_factory=list)
    terminated: bool = False
    step_cap_hit: bool = False
    trusted: bool = True    # False when run despite failed preconditions
    size_bound: int | None = None
    subtrees: list[SubtreeRun] = field(default_factory=list)
    # iterations where the a1-neighbours of u differ from all set-neighbours of u
    findings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "steps": [s.to_json() for s in self.steps],
            "input": sorted(self.input_set),
            "start": sorted(self.start),
            "output": sorted(self.output_set),
            "terminated": self.terminated,
            "step_cap_hit": self.step_cap_hit,
            "trusted": self.trusted,
        }
        if self.size_bound is not None:
            out["size_bound"] = self.size_bound
        if self.subtrees:
            out["subtrees"] = [
                {"x": r.x, "vertices": sorted(r.vertices), "start": sorted(r.start),
                 "output": sorted(r.output), "iterations": r.iterations}
                for r in self.subtrees
            ]
        if self.findings:
            out["findings"] = list(self.findings)
        return out


def check_algterm_preconditions(rt: RootedTree, m0: Iterable[int]) -> PreconditionReport:
    m0 = rt.tree.check_set(m0)
    supported = sorted(decompose(rt.tree, m0).supported)
    witness_a = next((s for s in supported if rt.parent[s] in m0), None)
    witness_b = None
    for x in supported:
        for y in supported:
            if x != y and is_descendant(rt, x, y):
                witness_b = (x, y)
                break
        if witness_b:
            break
    return PreconditionReport(witness_a is None, witness_a, witness_b is None, witness_b)


def make_minimal(rt: RootedTree, m0: Iterable[int], step_cap: int | None = None,
                 force: bool = False) -> ReconfigTrace:
    """Run MakeMinimal from ``m0`` on the rooted tree ``rt``.

    Raises :class:`PreconditionViolated` when (a)/(b) fail, unless ``force``;
    a forced run is marked untrusted and may stop at ``step_cap`` (default
    ``2n``) without reaching a minimal set.
    """
    t = rt.tree
    m = t.check_set(m0)
    if not is_dominating(t, m):
        raise NotDominating(f"{sorted(m)} is not dominating")
    report = check_algterm_preconditions(rt, m)
    if not report.ok and not force:
        raise PreconditionViolated(report)
    cap = 2 * t.n if step_cap is None else step_cap
    trace = ReconfigTrace(input_set=m, start=m, trusted=report.ok)
    i = 0
    while True:
        d = decompose(t, m)
        if not d.supported:
            trace.terminated = True
            break
        if i >= cap:
            trace.step_cap_hit = True
            break
        u = min(d.supported, key=lambda w: (rt.depth[w], w))
        nbrs = t.adjacency[u]
        removed = frozenset(w for w in nbrs if w in d.a1)
        added = frozenset(w for w in d.n1 if any(a in removed for a in t.adjacency[w]))
        set_nbrs = frozenset(w for w in nbrs if w in m)
        if removed != set_nbrs:
            trace.findings.append(
                f"iteration {i}: a1-neighbours {sorted(removed)} of u={u} "
                f"differ from its set-neighbours {sorted(set_nbrs)}")
        m = (m - removed) | added
        trace.steps.append(Step(i, u, removed, added, m))
        i += 1
    trace.output_set = m
    return trace


def reconfigure_a1(t: Tree, m: Iterable[int], v: int, force: bool = False) -> ReconfigTrace:
    """Swap ``v`` in ``a1(m)`` for its private neighbours, then minimalise
    with the tree rooted at ``v``."""
    m = t.check_set(m)
    if not is_minimal_dominating(t, m):
        raise NotMinimal(f"{sorted(m)} is not a minimal dominating set")
    d = decompose(t, m)
    if v not in d.a1:
        raise NotInA1(f"vertex {v} is not in a1 of {sorted(m)}")
    private = frozenset(w for w in t.adjacency[v] if w in d.n1)
    m0 = (m - {v}) | private
    trace = make_minimal(root_at(t, v), m0, force=force)
    trace.input_set = m
    trace.size_bound = len(m0)
    return trace


def _induces_connected(t: Tree, verts: frozenset[int]) -> bool:
    if not verts:
        return True
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in t.adjacency[u]:
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def _open_nbhd(t: Tree, s: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for v in s:
        out.update(t.adjacency[v])
    return out


def check_a2_preconditions(t: Tree, m: frozenset[int], x: frozenset[int]) -> None:
    """Raise the matching error if ``x`` is not a valid Algorithm-2 input."""
    d = decompose(t, m)
    if not x or not x <= d.n2:
        raise XNotInN2(f"{sorted(x)} is not a non-empty subset of n2 = {sorted(d.n2)}")
    for v in x:
        if any(w in x for w in t.adjacency[v]):
            raise XNotIndependent(f"{sorted(x)} is not independent")
    a2 = frozenset(_open_nbhd(t, x) & d.a2)
    if not _induces_connected(t, a2 | x):
        raise NotConnectedSubtree(f"A2 ∪ X = {sorted(a2 | x)} is not connected")


def reconfigure_a2_subset(t: Tree, m: Iterable[int], x: Iterable[int],
                          force: bool = False) -> ReconfigTrace:
    """Bring an independent ``x ⊆ n2(m)`` into the set (Algorithm 2).

    ``x`` is processed in ascending order.  Each ``T_x`` is the component of
    ``x`` after rooting the whole tree at ``x`` and cutting away every ``a2``
    neighbour of ``X`` together with everything below it.
    """
    m = t.check_set(m)
    x = t.check_set(x)
    if not is_minimal_dominating(t, m):
        raise NotMinimal(f"{sorted(m)} is not a minimal dominating set")
    check_a2_preconditions(t, m, x)
    d = decompose(t, m)
    nx_ = _open_nbhd(t, x)
    a = frozenset(nx_ & d.a)
    a2 = frozenset(nx_ & d.a2)
    private = frozenset(_open_nbhd(t, a) & d.n1)
    current = (m | x) - a | private
    trace = ReconfigTrace(input_set=m, start=current,
                          size_bound=len(m) - len(a2) + len(x))
    step_no = 0
    terminated = True
    for root in sorted(x):
        # vertices reachable from root without entering a2
        keep = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in t.adjacency[u]:
                if w not in keep and w not in a2:
                    keep.add(w)
                    stack.append(w)
        sub, l2g = induced_subtree(t, keep)
        g2l = {g: i for i, g in enumerate(l2g)}
        local_start = frozenset(g2l[v] for v in current if v in g2l)
        sub_trace = make_minimal(root_at(sub, g2l[root]), local_start, force=force)
        trace.trusted &= sub_trace.trusted
        terminated &= sub_trace.terminated
        trace.step_cap_hit |= sub_trace.step_cap_hit
        outside = current - frozenset(keep)
        for s in sub_trace.steps:
            trace.steps.append(Step(
                step_no, l2g[s.u],
                frozenset(l2g[v] for v in s.removed),
                frozenset(l2g[v] for v in s.added),
                outside | frozenset(l2g[v] for v in s.result),
                subtree_root=root,
            ))
            step_no += 1
        trace.findings.extend(f"T_{root}: {f}" for f in sub_trace.findings)
        out_global = frozenset(l2g[v] for v in sub_trace.output_set)
        trace.subtrees.append(SubtreeRun(
            root, frozenset(keep), frozenset(l2g[v] for v in local_start),
            out_global, len(sub_trace.steps)))
        current = outside | out_global
    trace.output_set = current
    trace.terminated = terminated
    return trace


def hall_violations(t: Tree, m: Iterable[int], max_size: int | None = None):
    """Subsets ``X`` of ``n2(m)`` with ``|X| > |N(X) ∩ a2(m)|``, smallest first."""
    m = t.check_set(m)
    d = decompose(t, m)
    n2 = sorted(d.n2)
    top = len(n2) if max_size is None else min(max_size, len(n2))
    for k in range(1, top + 1):
        for xs in itertools.combinations(n2, k):
            if k > len(_open_nbhd(t, xs) & d.a2):
                yield frozenset(xs)


def find_larger_minimal(t: Tree, m: Iterable[int]) -> frozenset[int] | None:
    """A strictly larger minimal dominating set reachable from ``m``, or None.

    Tries the pigeonhole route first (an ``a1`` vertex with two private
    neighbours), then the smallest Hall-violating ``X ⊆ n2`` that is a valid
    Algorithm-2 input.
    """
    m = t.check_set(m)
    if not is_minimal_dominating(t, m):
        raise NotMinimal(f"{sorted(m)} is not a minimal dominating set")
    d = decompose(t, m)
    if len(d.a1) < len(d.n1):
        for v in sorted(d.a1):
            if sum(w in d.n1 for w in t.adjacency[v]) >= 2:
                out = reconfigure_a1(t, m, v).output_set
                if len(out) > len(m):
                    return out
    for xs in hall_violations(t, m):
        try:
            trace = reconfigure_a2_subset(t, m, xs)
        except (XNotIndependent, NotConnectedSubtree):
            continue
        if trace.terminated and len(trace.output_set) > len(m):
            return trace.output_set
    return None
