"""Coefficient-sequence diagnostics and the monotone-segment checks.

All arithmetic is exact: Python ints for coefficients, ``Fraction`` for
averages and bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .domination import (
    DomPoly,
    dom_poly_dp,
    subset_census,
    upper_domination_number,
)
from .io import rational_json
from .trees import Tree, build_t_k

__all__ = [
    "SequenceReport",
    "SegmentCheck",
    "GapCheck",
    "AvdReport",
    "TkCertificate",
    "analyze_sequence",
    "increasing_range",
    "decreasing_range",
    "verify_increasing_segment",
    "verify_decreasing_segment",
    "verify_unimodal_gap",
    "avd_report",
    "avd_via_critical",
    "tk_counts",
    "verify_tk_certificate",
]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class SequenceReport:
    unimodal: bool
    mode_indices: tuple[int, ...]
    log_concave: bool
    first_lc_violation: int | None
    increasing_prefix_end: int    # d_gamma <= ... <= d_k holds up to here
    decreasing_suffix_start: int  # d_k >= ... >= d_n holds from here

    def to_json(self) -> dict:
        return {
            "unimodal": self.unimodal,
            "mode_indices": list(self.mode_indices),
            "log_concave": self.log_concave,
            "first_lc_violation": self.first_lc_violation,
            "increasing_prefix_end": self.increasing_prefix_end,
            "decreasing_suffix_start": self.decreasing_suffix_start,
        }


def analyze_sequence(p: DomPoly) -> SequenceReport:
    """Unimodality over the support ``gamma..n`` plus log-concavity over ``1..n-1``."""
    d = p.coeffs
    n = p.n
    g = p.gamma
    up = g
    while up < n and d[up] <= d[up + 1]:
        up += 1
    down = n
    while down > g and d[down - 1] >= d[down]:
        down -= 1
    top = max(d)
    modes = tuple(i for i, c in enumerate(d) if c == top)
    violation = next((i for i in range(1, n) if d[i] * d[i] < d[i - 1] * d[i + 1]), None)
    return SequenceReport(down <= up, modes, violation is None, violation, up, down)


@dataclass(frozen=True)
class SegmentCheck:
    holds: bool
    lo: int              # pairs (i-1, i) are checked for lo < i <= hi
    hi: int
    witness: int | None  # first i where the inequality fails
    proof_range_agrees: bool = True

    def to_json(self) -> dict:
        return {"holds": self.holds, "lo": self.lo, "hi": self.hi, "witness": self.witness,
                "proof_range_agrees": self.proof_range_agrees}


def increasing_range(n: int, gamma: int) -> tuple[int, int]:
    return gamma, (n + 2 * gamma + 1) // 3


def decreasing_range(n: int, big_gamma: int) -> tuple[int, int]:
    return _ceil_div(n + 2 * big_gamma - 2, 3), n


def verify_increasing_segment(t: Tree, p: DomPoly, gamma: int | None = None) -> SegmentCheck:
    """``d_{i-1} <= d_i`` for ``gamma < i <= floor((n + 2 gamma + 1) / 3)``."""
    g = p.gamma if gamma is None else gamma
    lo, hi = increasing_range(t.n, g)
    bad = next((i for i in range(lo + 1, hi + 1) if p[i - 1] > p[i]), None)
    return SegmentCheck(bad is None, lo, hi, bad)


def verify_decreasing_segment(t: Tree, p: DomPoly, big_gamma: int | None = None,
                              guard: int | None = None) -> SegmentCheck:
    """``d_{i-1} >= d_i`` for ``ceil((n + 2 Gamma - 2) / 3) < i <= n``.

    Also records whether that range coincides with the one the counting
    argument yields directly, ``i >= (n + 2 Gamma + 1) / 3``.
    """
    G = upper_domination_number(t, guard) if big_gamma is None else big_gamma
    lo, hi = decreasing_range(t.n, G)
    bad = next((i for i in range(lo + 1, hi + 1) if p[i - 1] < p[i]), None)
    agrees = lo + 1 == _ceil_div(t.n + 2 * G + 1, 3)
    return SegmentCheck(bad is None, lo, hi, bad, agrees)


@dataclass(frozen=True)
class GapCheck:
    applicable: bool  # Gamma - gamma < 3
    holds: bool       # vacuously True when not applicable
    gap: int


def verify_unimodal_gap(t: Tree, p: DomPoly, gamma: int | None = None,
                        big_gamma: int | None = None, guard: int | None = None) -> GapCheck:
    g = p.gamma if gamma is None else gamma
    G = upper_domination_number(t, guard) if big_gamma is None else big_gamma
    if G - g >= 3:
        return GapCheck(False, True, G - g)
    return GapCheck(True, analyze_sequence(p).unimodal, G - g)


@dataclass(frozen=True)
class AvdReport:
    avd: Fraction
    lower_bound: Fraction
    upper_bound: Fraction
    within_bounds: bool

    def to_json(self) -> dict:
        return {"avd": rational_json(self.avd),
                "lower_bound": rational_json(self.lower_bound),
                "upper_bound": rational_json(self.upper_bound),
                "within_bounds": self.within_bounds}


def avd_report(t: Tree, p: DomPoly, gamma: int | None = None,
               big_gamma: int | None = None, guard: int | None = None) -> AvdReport:
    g = p.gamma if gamma is None else gamma
    G = upper_domination_number(t, guard) if big_gamma is None else big_gamma
    avd = Fraction(sum(i * c for i, c in enumerate(p)), p.total())
    lower = Fraction(t.n + 2 * g, 3)
    upper = Fraction(t.n + 2 * G, 3)
    return AvdReport(avd, lower, upper, lower <= avd <= upper)


def avd_via_critical(t: Tree, guard: int | None = None) -> Fraction:
    """``n/2 + (sum over dominating S of |a(S)|) / (2 |D(T)|)``, by enumeration."""
    census = subset_census(t, guard)
    return Fraction(t.n, 2) + Fraction(sum(census.critical_totals), 2 * census.total)


def tk_counts(k: int) -> tuple[int, int, int]:
    """Closed forms for T_k: ``d_gamma``, ``d_{gamma+1}`` and the lower bound on ``d_{gamma+2}``."""
    return (1, 9 * k + 3 * 2 ** k,
            3 * (5 * k + k * k) * 2 ** k + 3 * (k + 1) * 2 ** (2 * k) + 2 ** (3 * k))


@dataclass(frozen=True)
class TkCertificate:
    k: int
    n: int
    gamma: int
    d_gamma: int
    d_gamma_plus_1: int
    d_gamma_plus_2: int
    expected_d_gamma_plus_1: int
    d_gamma_plus_2_lower_bound: int
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "gamma": self.gamma,
            "d_gamma": str(self.d_gamma),
            "d_gamma_plus_1": str(self.d_gamma_plus_1),
            "d_gamma_plus_2": str(self.d_gamma_plus_2),
            "expected_d_gamma_plus_1": str(self.expected_d_gamma_plus_1),
            "d_gamma_plus_2_lower_bound": str(self.d_gamma_plus_2_lower_bound),
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def verify_tk_certificate(k: int, p: DomPoly | None = None) -> TkCertificate:
    """Check the T_k coefficient claims against the DP polynomial.

    The log-concavity failure ``d_g * d_{g+2} > d_{g+1}^2`` is only checked
    for ``k >= 4``.
    """
    t, _ = build_t_k(k)
    p = dom_poly_dp(t) if p is None else p
    g = 3 * k + 1
    d0, d1, lower = tk_counts(k)
    checks = {
        "order": t.n == 9 * k + 4,
        "gamma": p.gamma == g,
        "d_gamma": p[g] == d0,
        "d_gamma_plus_1": p[g + 1] == d1,
        "d_gamma_plus_2_lower_bound": p[g + 2] >= lower,
    }
    if k >= 4:
        checks["not_log_concave"] = p[g] * p[g + 2] > p[g + 1] ** 2
    return TkCertificate(k, t.n, p.gamma, p[g], p[g + 1], p[g + 2], d1, lower, checks)
