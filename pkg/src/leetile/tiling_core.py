"""Both tiling verifiers and the bridge between them.

Geometric side: a lattice basis tiles Z^n with radius-r Lee spheres exactly
when |det| equals the sphere size and the quotient projection is injective
on the sphere.

Algebraic side (radius 2 only): a candidate is a group G of order
2n^2 + 2n + 1 together with an arm set of 2n + 1 elements.  It verifies
when the arm set contains the identity, is closed under negation, and its
convolution square puts coefficient 2n + 1 on the identity, 1 on every
doubled arm, and 2 everywhere else.

``to_group_model`` converts a basis with |det| = 2n^2 + 2n + 1 into the
candidate whose arms are the identity plus the (+/-) images of the standard
basis vectors; the two verdicts agree on such bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .abelian_groups import AbelianGroup, GroupElement, LatticeBasis, project, quotient_map
from .errors import ArmCollisionError
from .group_ring import GroupRingElement
from .lee_geometry import sphere_points, sphere_size

# failed_condition labels carried by rejection reports
FAILED_ORDER = "order"
FAILED_SIZE = "size"
FAILED_IDENTITY = "identity-membership"
FAILED_SYMMETRY = "symmetry"
FAILED_QUADRATIC = "quadratic-identity"
FAILED_DETERMINANT = "determinant"
FAILED_COLLISION = "collision"


def radius2_group_order(n: int) -> int:
    """Order a radius-2 tiling quotient group must have: 2n^2 + 2n + 1."""
    return 2 * n * n + 2 * n + 1


@dataclass(frozen=True)
class TilingCandidate:
    """A group plus a candidate arm set for the radius-2 algebraic test."""

    group: AbelianGroup
    n: int
    arms: tuple[GroupElement, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        arms = tuple(sorted(self.arms))
        if len(set(arms)) != len(arms):
            raise ValueError("arm set contains duplicates")
        object.__setattr__(self, "arms", arms)

    @classmethod
    def from_arm_set(cls, group: AbelianGroup, n: int, arms: Iterable[GroupElement]) -> "TilingCandidate":
        arms = tuple(arms)
        for g in arms:
            group.check_element(g)
        return cls(group, n, arms)

    def arm_element(self) -> GroupRingElement:
        return GroupRingElement.from_set(self.group, self.arms)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of either verifier.  A rejection names the first failed
    condition and, where meaningful, a witness found in deterministic
    (sorted) scan order."""

    accepted: bool
    failed_condition: Optional[str] = None
    witness: Optional[dict] = None

    def __post_init__(self):
        if not self.accepted and self.failed_condition is None:
            raise ValueError("a rejection must name the failed condition")

    @property
    def verdict(self) -> str:
        return "accept" if self.accepted else "reject"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "failed_condition": self.failed_condition,
            "witness": self.witness,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            accepted=data["verdict"] == "accept",
            failed_condition=data.get("failed_condition"),
            witness=data.get("witness"),
        )


def _accept() -> VerificationReport:
    return VerificationReport(accepted=True)


def _reject(condition: str, witness: Optional[dict] = None) -> VerificationReport:
    return VerificationReport(accepted=False, failed_condition=condition, witness=witness)


def check_conditions(candidate: TilingCandidate) -> VerificationReport:
    """Radius-2 algebraic verifier.

    Checks, in order: group order, arm count, identity membership, negation
    closure, and then the convolution-square coefficient pattern element by
    element in lexicographic order.  The first mismatch becomes the witness
    with expected and actual coefficients.
    """
    group, n = candidate.group, candidate.n
    expected_order = radius2_group_order(n)
    if group.order != expected_order:
        return _reject(FAILED_ORDER, {"group_order": group.order, "expected": expected_order})
    arm_count = 2 * n + 1
    if len(candidate.arms) != arm_count:
        return _reject(FAILED_SIZE, {"arm_count": len(candidate.arms), "expected": arm_count})
    identity = group.identity()
    arm_set = set(candidate.arms)
    if identity not in arm_set:
        return _reject(FAILED_IDENTITY, {"identity": list(identity)})
    for t in candidate.arms:
        if group.neg(t) not in arm_set:
            return _reject(FAILED_SYMMETRY, {"element": list(t)})
    arms = candidate.arm_element()
    square = arms * arms
    doubled_support = arms.power_map(2).support()
    sq_coeffs = square._coeffs  # read-only peek; avoids per-element validation
    for g in group.elements():
        if g == identity:
            expected = arm_count
        elif g in doubled_support:
            expected = 1
        else:
            expected = 2
        actual = sq_coeffs.get(g, 0)
        if actual != expected:
            return _reject(
                FAILED_QUADRATIC,
                {"element": list(g), "expected": expected, "actual": actual},
            )
    return _accept()


def pair_multiplicity(candidate: TilingCandidate, g: GroupElement) -> int:
    """Number of ordered arm pairs (t1, t2) with t1 + t2 = g, counted
    directly.  On verified candidates this is 1 when g is a doubled arm and
    2 otherwise.  The identity is excluded: there every inverse pair
    contributes, so the two-valued pattern does not apply."""
    group = candidate.group
    group.check_element(g)
    if g == group.identity():
        raise ValueError("pair multiplicity is not defined at the identity")
    arm_set = set(candidate.arms)
    return sum(1 for t in candidate.arms if group.add(g, group.neg(t)) in arm_set)


def verify_lattice(basis: LatticeBasis, radius: int) -> VerificationReport:
    """Geometric verifier for any radius: the basis columns generate a
    lattice whose Lee-sphere translates partition Z^n exactly when |det|
    equals the sphere size and no two sphere points share a coset.

    Sphere points are scanned in lexicographic order, so the reported
    collision (if any) is deterministic.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    n = basis.n
    volume = abs(basis.det())
    expected = sphere_size(n, radius)
    if volume != expected:
        return _reject(FAILED_DETERMINANT, {"determinant": volume, "expected": expected})
    group, images = quotient_map(basis)
    seen: dict[GroupElement, tuple[int, ...]] = {}
    for point in sphere_points(n, radius):
        coset = project(group, images, point)
        if coset in seen:
            return _reject(
                FAILED_COLLISION,
                {
                    "first_point": list(seen[coset]),
                    "second_point": list(point),
                    "coset": list(coset),
                },
            )
        seen[coset] = point
    return _accept()


def to_group_model(basis: LatticeBasis) -> TilingCandidate:
    """Candidate (G, arm set) induced by a basis with |det| = 2n^2 + 2n + 1:
    G is the quotient group and the arms are the identity together with the
    images of +/- each standard basis vector.

    A collision among the arms is an error rather than a rejection, since a
    collapsed arm set can never reach size 2n + 1 and silently continuing
    would mask modeling bugs.
    """
    n = basis.n
    expected = radius2_group_order(n)
    volume = abs(basis.det())
    if volume != expected:
        raise ValueError(f"|det| = {volume}, need {expected} for a radius-2 model in dimension {n}")
    group, images = quotient_map(basis)
    arms = {group.identity()}
    for img in images:
        arms.add(img)
        arms.add(group.neg(img))
    if len(arms) != 2 * n + 1:
        raise ArmCollisionError(
            f"arm images collapse: got {len(arms)} distinct arms, need {2 * n + 1}"
        )
    return TilingCandidate(group, n, tuple(sorted(arms)))
