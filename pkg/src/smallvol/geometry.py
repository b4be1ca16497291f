"""Certified volumes of ideal triangulations from shape parameters.

An ideal tetrahedron with shape z (Im z > 0) has dihedral angles
arg z, arg 1/(1-z), arg (z-1)/z, and the volume of a triangulation is
the sum of the Lobachevsky function over all dihedral angles.  Given an
approximate shape assignment together with a distance bound ``delta``
on the true solution, every shape becomes a complex jet with two fresh
perturbation variables of radius delta, and the resulting volume jet
bounds the volume of any true solution within delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .jets import ComplexJet, Jet, JetDomainError, arg_complex
from .lobachevsky import lobachevsky


class Interval(NamedTuple):
    lo: float
    hi: float

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def width(self) -> float:
        return self.hi - self.lo


class OrientationError(ValueError):
    """A tetrahedron could not be proved positively oriented."""


@dataclass(frozen=True)
class ShapeAssignment:
    """Approximate shapes plus a solution-distance bound in C^n."""

    shapes: tuple
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(complex(z) for z in self.shapes))
        if not self.shapes:
            raise ValueError("shape assignment needs at least one tetrahedron")
        if not (self.delta >= 0.0 and self.delta < float("inf")):
            raise ValueError(f"delta must be finite and >= 0, got {self.delta!r}")
        for j, z in enumerate(self.shapes):
            if z != z or abs(z) == float("inf"):
                raise ValueError(f"shape {j} is not finite")
            if abs(z) <= self.delta or abs(z - 1.0) <= self.delta:
                raise ValueError(
                    f"shape {j} = {z} is within delta of a degenerate value"
                )

    @property
    def count(self) -> int:
        return len(self.shapes)

    def shape_jets(self) -> list:
        """One ComplexJet per tetrahedron over 2n shared variables.

        delta bounds the C^n distance to the true solution, so each real
        coordinate moves by at most delta; the per-coordinate box
        over-covers the delta-ball.
        """
        dim = 2 * self.count
        return [
            ComplexJet.variable(z, 2 * j, 2 * j + 1, self.delta, dim)
            for j, z in enumerate(self.shapes)
        ]


def dihedral_angles(z: ComplexJet) -> tuple:
    """Angle jets (arg z, arg 1/(1-z), arg (z-1)/z) of one tetrahedron."""
    if not z.prove_nonzero():
        raise JetDomainError("shape not provably distinct from 0")
    one_minus = 1.0 - z
    if not one_minus.prove_nonzero():
        raise JetDomainError("shape not provably distinct from 1")
    a1 = arg_complex(z)
    a2 = arg_complex(one_minus.reciprocal())
    a3 = arg_complex((z - 1.0) / z)
    return a1, a2, a3


def check_positive_orientation(assignment: ShapeAssignment) -> bool:
    """True only when every point within delta of every shape has Im > 0."""
    try:
        return all(zj.im.prove_positive() for zj in assignment.shape_jets())
    except JetDomainError:
        return False


def certified_volume(assignment: ShapeAssignment, tol: float = 1e-12) -> Interval:
    """Interval containing the volume of any true solution within delta."""
    if not check_positive_orientation(assignment):
        raise OrientationError(
            "tetrahedra not provably positively oriented within delta"
        )
    total = Jet.constant(0.0, 2 * assignment.count)
    for zj in assignment.shape_jets():
        for angle in dihedral_angles(zj):
            total = total + lobachevsky(angle, tol)
    lo, hi = total.bounds()
    return Interval(lo, hi)


def prove_volume_gt(assignment: ShapeAssignment, threshold: float,
                    tol: float = 1e-12) -> bool:
    """True only if the certified volume interval lies strictly above
    ``threshold``; False whenever the computation is inconclusive."""
    try:
        return certified_volume(assignment, tol).lo > threshold
    except (ValueError, JetDomainError):
        return False


def prove_volume_le(assignment: ShapeAssignment, threshold: float,
                    tol: float = 1e-12) -> bool:
    """True only if the certified volume interval lies at or below
    ``threshold``; False whenever the computation is inconclusive."""
    try:
        return certified_volume(assignment, tol).hi <= threshold
    except (ValueError, JetDomainError):
        return False
