"""Multiplicity profiles of power-map products and their counting identities.

For a verified candidate with arm set A over a group of order
2n^2 + 2n + 1, the product A^(k) * A (k = 2 or 4) assigns each group
element a small non-negative coefficient.  The profile is the histogram
{coefficient -> number of elements receiving it}, always including the
0-class explicitly so the total equals the group order.

Three exact identities constrain the k = 2 profile, and the k = 4 profile
additionally determines an overlap-correction term ``delta`` confined to
[-2n, 0] along with a lower bound on its small classes.  Closed-form
predicted profiles exist for n = 1 and n = 2 mod 3; for n = 0 mod 3 only
residue-class sums are forced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import RejectedCandidateError
from .tiling_core import TilingCandidate, check_conditions, radius2_group_order


@dataclass(frozen=True)
class MultiplicityProfile:
    """Histogram of coefficients of A^(k) * A over the whole group.

    ``histogram`` maps every coefficient value from 0 up to ``max_index``
    to its class size (possibly 0 in between); ``max_index`` is the largest
    coefficient with a nonempty class.
    """

    k: int
    n: int
    histogram: dict[int, int]
    max_index: int

    def class_size(self, i: int) -> int:
        return self.histogram.get(i, 0)

    def total(self) -> int:
        """Sum of all class sizes, including the 0-class."""
        return sum(self.histogram.values())

    def support_count(self) -> int:
        """Number of elements with a nonzero coefficient."""
        return sum(c for i, c in self.histogram.items() if i >= 1)

    def weighted_sum(self) -> int:
        """Sum of i times the size of class i."""
        return sum(i * c for i, c in self.histogram.items())

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "histogram": {str(i): c for i, c in sorted(self.histogram.items())},
            "max_index": self.max_index,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MultiplicityProfile":
        return cls(
            k=data["k"],
            n=data["n"],
            histogram={int(i): c for i, c in data["histogram"].items()},
            max_index=data["max_index"],
        )


@dataclass(frozen=True)
class IdentityCheck:
    """One evaluated identity: lhs <relation> rhs."""

    name: str
    relation: str  # "==" or ">=" or "within"
    lhs: int
    rhs: object  # int, or [lo, hi] for "within"
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IdentityCheck":
        rhs = data["rhs"]
        if isinstance(rhs, list):
            rhs = tuple(rhs)
        return cls(data["name"], data["relation"], data["lhs"], rhs, data["passed"])


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "all_passed": self.all_passed}

    @classmethod
    def from_dict(cls, data: dict) -> "IdentityReport":
        return cls(tuple(IdentityCheck.from_dict(c) for c in data["checks"]))


@dataclass(frozen=True)
class DeltaReport:
    """Overlap correction solved out of the k = 4 counting identity.

    ``delta`` lies in [-2n, 0] on any verified candidate; ``delta_raw`` is
    the shifted value delta + 2n, a pair count in [0, 2n].
    """

    n: int
    delta: int
    delta_raw: int

    def to_dict(self) -> dict:
        return {"n": self.n, "delta": self.delta, "delta_raw": self.delta_raw}

    @classmethod
    def from_dict(cls, data: dict) -> "DeltaReport":
        return cls(data["n"], data["delta"], data["delta_raw"])


@dataclass(frozen=True)
class PredictedProfile:
    """Closed-form class sizes forced by the mod-3 congruence (for n = 1, 2
    mod 3) or, for n = 0 mod 3, the forced sums of class sizes grouped by
    coefficient residue mod 3."""

    n: int
    histogram: Optional[dict[int, int]] = None
    residue_class_sums: Optional[dict[int, int]] = None

    @property
    def is_closed_form(self) -> bool:
        return self.histogram is not None


def profile(candidate: TilingCandidate, k: int) -> MultiplicityProfile:
    """Histogram of coefficients of A^(k) * A over all of G, 0-class
    included.  The candidate must verify; a rejection is raised as
    RejectedCandidateError."""
    if k not in (2, 4):
        raise ValueError(f"power-map exponent must be 2 or 4, got {k}")
    report = check_conditions(candidate)
    if not report.accepted:
        raise RejectedCandidateError(report)
    arms = candidate.arm_element()
    product = arms.power_map(k) * arms
    counts: dict[int, int] = {}
    for _, c in product.items():
        counts[c] = counts.get(c, 0) + 1
    max_index = max(counts) if counts else 0
    histogram = {i: counts.get(i, 0) for i in range(1, max_index + 1)}
    histogram[0] = candidate.group.order - sum(histogram.values())
    histogram = dict(sorted(histogram.items()))
    return MultiplicityProfile(k=k, n=candidate.n, histogram=histogram, max_index=max_index)


def _triangle_weight(s: int) -> int:
    # (s - 1)(s - 2) / 2, the net inclusion-exclusion contribution of an
    # element covered s >= 3 times.
    return (s - 1) * (s - 2) // 2


def check_identities_k2(p: MultiplicityProfile) -> IdentityReport:
    """The three exact identities of the k = 2 profile: class sizes cover
    the group, the weighted sum equals (2n+1)^2, and the distinct-element
    count matches the inclusion-exclusion expansion."""
    if p.k != 2:
        raise ValueError(f"expected a k=2 profile, got k={p.k}")
    n = p.n
    order = radius2_group_order(n)
    checks = []
    lhs = p.total()
    checks.append(IdentityCheck("class-sizes-cover-group", "==", lhs, order, lhs == order))
    lhs = p.weighted_sum()
    rhs = (2 * n + 1) ** 2
    checks.append(IdentityCheck("weighted-class-sum", "==", lhs, rhs, lhs == rhs))
    lhs = p.support_count()
    rhs = 4 * n + 1 + sum(_triangle_weight(s) * c for s, c in p.histogram.items() if s >= 3)
    checks.append(IdentityCheck("distinct-element-count", "==", lhs, rhs, lhs == rhs))
    return IdentityReport(tuple(checks))


def check_identities_k4(p: MultiplicityProfile) -> tuple[DeltaReport, IdentityReport]:
    """k = 4 identities.  The overlap correction is solved from the
    distinct-element identity (single source of truth); the [-2n, 0]
    bracket and the small-class lower bound are then checked.  A bracket
    violation on a verified candidate would signal an implementation bug,
    so it is reported, not raised."""
    if p.k != 4:
        raise ValueError(f"expected a k=4 profile, got k={p.k}")
    n = p.n
    order = radius2_group_order(n)
    delta = (
        p.support_count()
        - (4 * n + 1)
        - sum(_triangle_weight(s) * c for s, c in p.histogram.items() if s >= 3)
    )
    delta_report = DeltaReport(n=n, delta=delta, delta_raw=delta + 2 * n)
    checks = []
    lhs = p.total()
    checks.append(IdentityCheck("class-sizes-cover-group", "==", lhs, order, lhs == order))
    lhs = p.weighted_sum()
    rhs = (2 * n + 1) ** 2
    checks.append(IdentityCheck("weighted-class-sum", "==", lhs, rhs, lhs == rhs))
    checks.append(
        IdentityCheck("delta-within-bounds", "within", delta, (-2 * n, 0), -2 * n <= delta <= 0)
    )
    lhs = (
        2 * p.class_size(1)
        + 3 * p.class_size(2)
        + 3 * p.class_size(3)
        + 2 * p.class_size(4)
    )
    rhs = 4 * n * n + 6 * n + 2
    checks.append(IdentityCheck("small-class-lower-bound", ">=", lhs, rhs, lhs >= rhs))
    return delta_report, IdentityReport(tuple(checks))


def _exact_div(numerator: int, divisor: int, what: str) -> int:
    q, r = divmod(numerator, divisor)
    if r:
        raise ValueError(f"{what} is not divisible by {divisor}: {numerator}")
    return q


def predicted_profile_mod3(n: int) -> PredictedProfile:
    """Profile class sizes forced by reducing the k = 2 product mod 3.

    For n = 1 mod 3 the histogram is pinned completely (classes 0..3), for
    n = 2 mod 3 likewise (classes 0..4 with an empty 0-class).  For
    n = 0 mod 3 only the sums over coefficient residue classes mod 3 are
    forced.  Divisibility of the closed forms is asserted, never floored.
    """
    if n < 2:
        raise ValueError(f"predicted profiles need n >= 2, got {n}")
    r = n % 3
    if r == 1:
        x0 = _exact_div(2 * n * (n - 1), 3, "class-0 size")
        x3 = _exact_div(4 * n * (n - 1), 3, "class-3 size")
        hist = {0: x0, 1: 1, 2: 4 * n, 3: x3}
    elif r == 2:
        x1 = _exact_div(4 * n * n - 2 * n + 3, 3, "class-1 size")
        x4 = _exact_div(2 * n * n - 4 * n, 3, "class-4 size")
        hist = {0: 0, 1: x1, 2: 2 * n, 3: 2 * n, 4: x4}
    else:
        return PredictedProfile(
            n=n,
            residue_class_sums={0: 0, 1: 2 * n + 1, 2: 2 * n * n},
        )
    for i, c in hist.items():
        if c < 0:
            raise ValueError(f"negative predicted class size {c} at index {i}")
    return PredictedProfile(n=n, histogram=hist)
