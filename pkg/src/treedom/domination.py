"""Dominating sets and the domination polynomial of a tree.

Two independent routes to ``D(T, x)``:

* :func:`dom_poly_bruteforce` walks every vertex subset (bitmask blocks,
  vectorised with numpy) and is the oracle;
* :func:`dom_poly_dp` is the polynomial-time three-state subtree recurrence
  and is what everything at scale uses.

Subsets are bitmasks internally (bit ``v`` set means vertex ``v`` is in the
set); the public API speaks ``frozenset[int]``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from .trees import Tree, root_at

__all__ = [
    "DEFAULT_GUARD",
    "GuardExceeded",
    "NotDominating",
    "DomPoly",
    "DomInvariants",
    "to_mask",
    "from_mask",
    "dominated_mask",
    "is_dominating",
    "enumerate_dominating_sets",
    "dom_poly_bruteforce",
    "dom_poly_dp",
    "domination_number",
    "upper_domination_number",
    "gamma",
    "Gamma",
    "dom_invariants",
    "is_minimal_dominating",
    "enumerate_minimal_dominating_sets",
    "SubsetCensus",
    "subset_census",
    "subset_blocks",
]

DEFAULT_GUARD = 25
_LOW_BITS = 16


class GuardExceeded(RuntimeError):
    """Exhaustive enumeration requested on a tree above the size guard."""


class NotDominating(ValueError):
    pass


def _check_guard(t: Tree, guard: int | None) -> None:
    limit = DEFAULT_GUARD if guard is None else guard
    if t.n > limit:
        raise GuardExceeded(f"n={t.n} exceeds enumeration guard {limit}")


@dataclass(frozen=True)
class DomPoly:
    """Coefficients ``d_0..d_n`` of a domination polynomial (exact ints)."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError("need exactly n+1 coefficients")

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def gamma(self) -> int:
        return next(i for i, c in enumerate(self.coeffs) if c)

    def total(self) -> int:
        """Number of dominating sets, ``D(T, 1)``."""
        return sum(self.coeffs)

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "DomPoly":
        return cls(int(obj["n"]), tuple(int(c) for c in obj["coeffs"]))

    def to_csv(self) -> str:
        return "".join(f"{i},{c}\n" for i, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class DomInvariants:
    gamma: int
    big_gamma: int


def to_mask(s: Iterable[int]) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def from_mask(m: int) -> frozenset[int]:
    out = []
    v = 0
    while m:
        if m & 1:
            out.append(v)
        m >>= 1
        v += 1
    return frozenset(out)


def dominated_mask(t: Tree, s_mask: int) -> int:
    """Bitmask of ``N[S]``."""
    dom = 0
    masks = t.closed_masks
    v = 0
    while s_mask:
        if s_mask & 1:
            dom |= masks[v]
        s_mask >>= 1
        v += 1
    return dom


def is_dominating(t: Tree, s: Iterable[int]) -> bool:
    s = t.check_set(s)
    return dominated_mask(t, to_mask(s)) == (1 << t.n) - 1


# -- exhaustive subset engine ------------------------------------------------

def _subset_table(masks, bits: int) -> tuple[np.ndarray, np.ndarray]:
    """OR-of-masks and popcount for every subset of ``masks[:bits]``."""
    size = 1 << bits
    dom = np.zeros(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int8)
    for j in range(bits):
        lo, hi = 1 << j, 2 << j
        dom[lo:hi] = dom[:lo] | masks[j]
        pc[lo:hi] = pc[:lo] + 1
    return dom, pc


def _flip_bit(arr: np.ndarray, j: int) -> np.ndarray:
    """``arr[idx ^ (1 << j)]`` for every index, without a gather."""
    half = 1 << j
    return arr.reshape(-1, 2, half)[:, ::-1, :].reshape(-1)


@dataclass
class _Block:
    base: int             # mask of the first subset in the block
    size: np.ndarray      # |S|
    dominating: np.ndarray
    critical: np.ndarray | None  # |a(S)|, meaningful only where dominating


def subset_blocks(t: Tree, guard: int | None = None,
                  critical: bool = False) -> Iterator[_Block]:
    """Stream every vertex subset in ascending bit-pattern order, in blocks.

    The low ``min(n, 16)`` bits vary inside a block; the remaining high bits
    are fixed per block.  With ``critical=True`` each block also carries the
    number of critical vertices of every subset.
    """
    _check_guard(t, guard)
    n = t.n
    full = (1 << n) - 1
    masks = [int(m) for m in t.closed_masks]
    low = min(n, _LOW_BITS)
    dom_lo, pc_lo = _subset_table(masks, low)
    dom_hi, pc_hi = _subset_table(masks[low:], n - low)
    for h in range(1 << (n - low)):
        dom = dom_lo | dom_hi[h]
        isdom = dom == full
        crit = None
        if critical:
            crit = np.zeros(dom.shape, dtype=np.int8)
            idx_has = np.arange(1 << low, dtype=np.int64)
            for j in range(low):
                has = ((idx_has >> j) & 1).astype(bool)
                crit += has & ~_flip_bit(isdom, j)
            for b in range(n - low):
                if h >> b & 1:
                    crit += (dom_lo | dom_hi[h ^ (1 << b)]) != full
        yield _Block(h << low, pc_lo + pc_hi[h], isdom, crit)


@dataclass(frozen=True)
class SubsetCensus:
    """Per-size aggregates over every dominating set of a tree.

    Lists are indexed by set size ``0..n``.  ``crit_min``/``crit_max`` are
    ``None`` at sizes with no dominating sets.
    """

    n: int
    dom_counts: tuple[int, ...]
    critical_totals: tuple[int, ...]
    crit_min: tuple[int | None, ...]
    crit_max: tuple[int | None, ...]
    minimal_counts: tuple[int, ...]

    @property
    def gamma(self) -> int:
        return next(i for i, c in enumerate(self.dom_counts) if c)

    @property
    def big_gamma(self) -> int:
        return max(i for i, c in enumerate(self.minimal_counts) if c)

    @property
    def total(self) -> int:
        return sum(self.dom_counts)

    def poly(self) -> DomPoly:
        return DomPoly(self.n, self.dom_counts)


def subset_census(t: Tree, guard: int | None = None) -> SubsetCensus:
    n = t.n
    counts = np.zeros(n + 1, dtype=np.int64)
    totals = np.zeros(n + 1, dtype=np.int64)
    minimal = np.zeros(n + 1, dtype=np.int64)
    cmin = np.full(n + 1, n + 1, dtype=np.int64)
    cmax = np.full(n + 1, -1, dtype=np.int64)
    for blk in subset_blocks(t, guard, critical=True):
        sizes = blk.size[blk.dominating].astype(np.int64)
        crit = blk.critical[blk.dominating].astype(np.int64)
        counts += np.bincount(sizes, minlength=n + 1)
        totals += np.bincount(sizes, weights=crit, minlength=n + 1).astype(np.int64)
        minimal += np.bincount(sizes[crit == sizes], minlength=n + 1)
        np.minimum.at(cmin, sizes, crit)
        np.maximum.at(cmax, sizes, crit)
    present = counts > 0
    return SubsetCensus(
        n,
        tuple(int(c) for c in counts),
        tuple(int(c) for c in totals),
        tuple(int(c) if p else None for c, p in zip(cmin, present)),
        tuple(int(c) if p else None for c, p in zip(cmax, present)),
        tuple(int(c) for c in minimal),
    )


def enumerate_dominating_sets(t: Tree, size: int | None = None,
                              guard: int | None = None) -> Iterator[frozenset[int]]:
    """Every dominating set (optionally of one size), ascending bitmask order."""
    for blk in subset_blocks(t, guard):
        keep = blk.dominating if size is None else blk.dominating & (blk.size == size)
        for off in np.flatnonzero(keep):
            yield from_mask(blk.base + int(off))


def enumerate_minimal_dominating_sets(t: Tree, guard: int | None = None
                                      ) -> Iterator[frozenset[int]]:
    for blk in subset_blocks(t, guard, critical=True):
        keep = blk.dominating & (blk.critical == blk.size)
        for off in np.flatnonzero(keep):
            yield from_mask(blk.base + int(off))


def dom_poly_bruteforce(t: Tree, guard: int | None = None) -> DomPoly:
    counts = np.zeros(t.n + 1, dtype=np.int64)
    for blk in subset_blocks(t, guard):
        counts += np.bincount(blk.size[blk.dominating], minlength=t.n + 1)
    return DomPoly(t.n, tuple(int(c) for c in counts))


# -- subtree dynamic programme -------------------------------------------------

def _padd(p: list[int], q: list[int]) -> list[int]:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return out


def _psub(p: list[int], q: list[int]) -> list[int]:
    out = list(p) + [0] * (len(q) - len(p))
    for i, c in enumerate(q):
        out[i] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _pmul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def dom_poly_dp(t: Tree) -> DomPoly:
    """Domination polynomial by dynamic programming over ``t`` rooted at 0.

    Per vertex ``v`` three generating functions over its subtree:
    ``A`` (v in S), ``B`` (v not in S but dominated by a child) and ``C``
    (v not in S and not yet dominated).  Everything strictly below ``v`` is
    dominated in all three.
    """
    rt = root_at(t, 0)
    A: list[list[int]] = [[]] * t.n
    B: list[list[int]] = [[]] * t.n
    C: list[list[int]] = [[]] * t.n
    for v in reversed(rt.order):
        all_states = [1]
        in_or_dominated = [1]
        only_b = [1]
        for c in rt.children[v]:
            ab = _padd(A[c], B[c])
            all_states = _pmul(all_states, _padd(ab, C[c]))
            in_or_dominated = _pmul(in_or_dominated, ab)
            only_b = _pmul(only_b, B[c])
        A[v] = [0] + all_states
        B[v] = _psub(in_or_dominated, only_b)
        C[v] = only_b
        for c in rt.children[v]:
            A[c] = B[c] = C[c] = []
    coeffs = _padd(A[rt.root], B[rt.root])
    coeffs += [0] * (t.n + 1 - len(coeffs))
    return DomPoly(t.n, tuple(coeffs[: t.n + 1]))


def domination_number(t: Tree) -> int:
    return dom_poly_dp(t).gamma


def upper_domination_number(t: Tree, guard: int | None = None) -> int:
    """Largest minimal dominating set, by exhaustive enumeration."""
    best = 0
    for blk in subset_blocks(t, guard, critical=True):
        minimal = blk.dominating & (blk.critical == blk.size)
        if minimal.any():
            best = max(best, int(blk.size[minimal].max()))
    return best


gamma = domination_number
Gamma = upper_domination_number


def dom_invariants(t: Tree, guard: int | None = None) -> DomInvariants:
    return DomInvariants(domination_number(t), upper_domination_number(t, guard))


def is_minimal_dominating(t: Tree, s: Iterable[int]) -> bool:
    """No single vertex can be dropped while keeping domination."""
    s = t.check_set(s)
    full = (1 << t.n) - 1
    m = to_mask(s)
    if dominated_mask(t, m) != full:
        raise NotDominating(f"{sorted(s)} is not dominating")
    return all(dominated_mask(t, m & ~(1 << v)) != full for v in s)
