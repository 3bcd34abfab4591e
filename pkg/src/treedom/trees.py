"""Tree representation, rooting and generators.

Vertices are dense integers ``0..n-1``.  A :class:`Tree` is validated on
construction and never mutated afterwards; :class:`RootedTree` adds the BFS
tables (parent, depth, children, order) used by the reconfiguration code.
Traversals always visit neighbours in ascending id order, so every derived
table is deterministic.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TreeError",
    "SelfLoop",
    "DuplicateEdge",
    "WrongEdgeCount",
    "Disconnected",
    "OutOfRange",
    "Tree",
    "RootedTree",
    "tree_from_edges",
    "root_at",
    "is_descendant",
    "path_tree",
    "star_tree",
    "tree_from_prufer",
    "prufer_code",
    "all_prufer_sequences",
    "all_labeled_trees",
    "canonical_form",
    "all_unlabeled_trees",
    "random_tree",
    "random_trees",
    "build_t_k",
    "induced_subtree",
]


class TreeError(ValueError):
    """Base class for invalid tree input."""


class SelfLoop(TreeError):
    pass


class DuplicateEdge(TreeError):
    pass


class WrongEdgeCount(TreeError):
    pass


class Disconnected(TreeError):
    pass


class OutOfRange(TreeError, IndexError):
    pass


@dataclass(frozen=True)
class Tree:
    """A validated tree on vertices ``0..n-1``.

    Build instances through :func:`tree_from_edges` (or a generator), which
    checks the invariants; the constructor itself trusts its arguments.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    # closed-neighbourhood bitmasks, one per vertex
    closed_masks: tuple[int, ...] = field(repr=False, compare=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def vertices(self) -> range:
        return range(self.n)

    def check_vertex(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise OutOfRange(f"vertex {v} not in 0..{self.n - 1}")
        return v

    def check_set(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        for v in s:
            self.check_vertex(v)
        return s


@dataclass(frozen=True)
class RootedTree:
    tree: Tree
    root: int
    parent: tuple[int | None, ...]
    depth: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.tree.n


def tree_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Tree:
    """Validate an edge list and return the corresponding :class:`Tree`."""
    if n < 1:
        raise TreeError("a tree needs at least one vertex")
    norm: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        for w in (u, v):
            if not 0 <= w < n:
                raise OutOfRange(f"edge endpoint {w} not in 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {key}")
        seen.add(key)
        norm.append(key)
    if len(norm) != n - 1:
        raise WrongEdgeCount(f"{len(norm)} edges on {n} vertices, expected {n - 1}")
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in norm:
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    # n-1 edges + connected => acyclic
    seen_v = [False] * n
    seen_v[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen_v[w]:
                seen_v[w] = True
                count += 1
                stack.append(w)
    if count != n:
        raise Disconnected(f"only {count} of {n} vertices reachable from 0")
    masks = tuple((1 << v) | sum(1 << w for w in adj[v]) for v in range(n))
    return Tree(n, tuple(tuple(a) for a in adj), tuple(norm), masks)


def root_at(t: Tree, v: int) -> RootedTree:
    """BFS from ``v`` with neighbours visited in ascending order."""
    t.check_vertex(v)
    parent: list[int | None] = [None] * t.n
    depth = [-1] * t.n
    children: list[list[int]] = [[] for _ in range(t.n)]
    depth[v] = 0
    order = [v]
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in t.adjacency[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                children[u].append(w)
                order.append(w)
                queue.append(w)
    return RootedTree(t, v, tuple(parent), tuple(depth),
                      tuple(tuple(c) for c in children), tuple(order))


def is_descendant(rt: RootedTree, x: int, y: int) -> bool:
    """True iff ``y`` is a strict ancestor of ``x`` (``x`` is never its own descendant)."""
    rt.tree.check_vertex(x)
    rt.tree.check_vertex(y)
    if rt.depth[x] <= rt.depth[y]:
        return False
    p = rt.parent[x]
    while p is not None and rt.depth[p] >= rt.depth[y]:
        if p == y:
            return True
        p = rt.parent[p]
    return False


def path_tree(n: int) -> Tree:
    if n < 1:
        raise TreeError("n must be >= 1")
    return tree_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    if n < 1:
        raise TreeError("n must be >= 1")
    return tree_from_edges(n, [(0, i) for i in range(1, n)])


def tree_from_prufer(seq: Sequence[int]) -> Tree:
    """Decode a Prüfer sequence of length ``n-2`` into a labelled tree."""
    n = len(seq) + 2
    for a in seq:
        if not 0 <= a < n:
            raise OutOfRange(f"Prüfer entry {a} not in 0..{n - 1}")
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for a in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, a))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(leaves, a)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return tree_from_edges(n, edges)


def prufer_code(t: Tree) -> list[int]:
    """Inverse of :func:`tree_from_prufer` (repeatedly strip the smallest leaf)."""
    if t.n < 2:
        return []
    degree = t.degrees()
    removed = [False] * t.n
    leaves = [v for v in range(t.n) if degree[v] == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(t.n - 2):
        leaf = heapq.heappop(leaves)
        removed[leaf] = True
        (nb,) = [w for w in t.adjacency[leaf] if not removed[w]]
        code.append(nb)
        degree[nb] -= 1
        if degree[nb] == 1:
            heapq.heappush(leaves, nb)
    return code


def all_prufer_sequences(n: int) -> Iterator[tuple[int, ...]]:
    if n < 2:
        return iter(())
    return itertools.product(range(n), repeat=n - 2)


def all_labeled_trees(n: int) -> Iterator[Tree]:
    """Every labelled tree on ``n`` vertices (``n**(n-2)`` of them)."""
    if n == 1:
        yield tree_from_edges(1, [])
        return
    for seq in all_prufer_sequences(n):
        yield tree_from_prufer(seq)


def _centers(t: Tree) -> list[int]:
    deg = list(t.degrees())
    layer = [v for v in range(t.n) if deg[v] <= 1]
    left = t.n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adjacency[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _ahu(t: Tree, v: int, parent: int | None) -> str:
    kids = sorted(_ahu(t, w, v) for w in t.adjacency[v] if w != parent)
    return "(" + "".join(kids) + ")"


def canonical_form(t: Tree) -> str:
    """Isomorphism-invariant string: AHU encoding rooted at the center(s)."""
    return min(_ahu(t, c, None) for c in _centers(t))


def _tree_from_form(form: str) -> Tree:
    edges, stack, n = [], [], 0
    for ch in form:
        if ch == "(":
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        else:
            stack.pop()
    return tree_from_edges(n, edges)


def all_unlabeled_trees(n: int) -> list[Tree]:
    """One representative per isomorphism class of trees on ``n`` vertices.

    Built by attaching a leaf to every vertex of each class on ``n-1``
    vertices and keeping one tree per canonical form; representatives are
    relabelled in preorder of their canonical encoding.
    """
    if n < 1:
        raise TreeError("a tree needs at least one vertex")
    forms = {canonical_form(tree_from_edges(1, []))}
    for m in range(2, n + 1):
        grown = set()
        for f in forms:
            t = _tree_from_form(f)
            for v in range(t.n):
                grown.add(canonical_form(tree_from_edges(m, [*t.edges, (v, m - 1)])))
        forms = grown
    return [_tree_from_form(f) for f in sorted(forms)]


def random_tree(n: int, seed: int) -> Tree:
    """Decode a uniform random Prüfer sequence.

    The sequence is drawn with ``numpy.random.Generator(PCG64(seed))
    .integers(0, n, size=n-2)``, so a given ``(n, seed)`` always yields the
    same tree.
    """
    if n < 2:
        raise TreeError("random_tree needs n >= 2")
    rng = np.random.Generator(np.random.PCG64(seed))
    return tree_from_prufer([int(a) for a in rng.integers(0, n, size=n - 2)])


def random_trees(count: int, n_min: int, n_max: int, seed: int) -> Iterator[Tree]:
    """``count`` random trees with order drawn uniformly from ``n_min..n_max``."""
    n_min = max(n_min, 2)
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        yield tree_from_prufer([int(a) for a in rng.integers(0, n, size=n - 2)])


def build_t_k(k: int) -> tuple[Tree, dict[str, int]]:
    """The non-log-concave family: ``v0`` joined to ``v1, v2, v3``, each of
    which carries ``k`` pendant paths ``x - y - z``.

    Ids follow BFS order from ``v0``: ``v0=0``, ``v1..v3``, then all ``x``,
    all ``y`` and all ``z`` vertices, branch by branch.  Labels are
    ``"v0".."v3"`` and ``"x{i}_{j}"`` etc. with 1-based ``i, j``.
    """
    if k < 1:
        raise TreeError("T_k needs k >= 1")
    labels = {"v0": 0, "v1": 1, "v2": 2, "v3": 3}
    edges = [(0, 1), (0, 2), (0, 3)]
    nxt = 4
    for layer, prev in (("x", "v"), ("y", "x"), ("z", "y")):
        for i in range(1, 4):
            for j in range(1, k + 1):
                name = f"{layer}{i}_{j}"
                labels[name] = nxt
                parent = labels[f"v{i}"] if prev == "v" else labels[f"{prev}{i}_{j}"]
                edges.append((parent, nxt))
                nxt += 1
    return tree_from_edges(nxt, edges), labels


def induced_subtree(t: Tree, keep: Iterable[int]) -> tuple[Tree, list[int]]:
    """Subtree induced by a connected vertex subset.

    Returns the relabelled tree and ``local_to_global`` (ascending global ids),
    so local vertex ``i`` is global vertex ``local_to_global[i]``.
    """
    local_to_global = sorted(set(keep))
    index = {g: i for i, g in enumerate(local_to_global)}
    edges = [(index[u], index[v]) for u, v in t.edges if u in index and v in index]
    return tree_from_edges(len(local_to_global), edges), local_to_global
