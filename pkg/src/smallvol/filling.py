"""Slope-length bounds and exhaustive Dehn-filling enumeration.

A filled manifold that stays hyperbolic with volume below a target
forces the filling slope to be short on the cusp torus:

    vol_filled >= (1 - (2 pi / l_min)^2)^(3/2) * vol_parent
    l_min     <=  2 pi / sqrt(1 - (vol_target / vol_parent)^(2/3)).

Translations of the meridian and longitude on a horoball boundary make
slopes lattice vectors p*m + q*l in C, so all candidate coefficient
pairs below a length cutoff form a finite, enumerable set.  This module
works in plain floating point with an explicit upward fudge: its
contract is that no candidate pair is omitted, not that lengths are
certified.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class CuspData:
    """Meridian/longitude translations on a horoball boundary."""

    meridian: complex
    longitude: complex
    parent_volume: float

    def __post_init__(self):
        object.__setattr__(self, "meridian", complex(self.meridian))
        object.__setattr__(self, "longitude", complex(self.longitude))
        object.__setattr__(self, "parent_volume", float(self.parent_volume))
        if not (cmath.isfinite(self.meridian) and cmath.isfinite(self.longitude)
                and math.isfinite(self.parent_volume)):
            raise ValueError("cusp data must be finite")
        if not self.parent_volume > 0.0:
            raise ValueError("parent volume must be positive")
        if not self.lattice_area() > 0.0:
            raise ValueError("meridian and longitude must be R-linearly independent")

    def lattice_area(self) -> float:
        m, l = self.meridian, self.longitude
        return abs(m.real * l.imag - m.imag * l.real)


@dataclass(frozen=True)
class SlopeList:
    """Normalized coprime pairs below the fudged length bound, sorted by (p, q)."""

    bound_used: float
    fudge: float
    pairs: tuple  # of (p, q, length)

    def coefficients(self) -> set:
        return {(p, q) for p, q, _ in self.pairs}


def fkp_lower_bound(vol_parent: float, l_min: float) -> float:
    """Volume lower bound for a filling whose slopes all exceed length l_min."""
    if not vol_parent > 0.0:
        raise ValueError("parent volume must be positive")
    if not l_min > 2 * math.pi:
        raise ValueError("the bound is vacuous unless l_min > 2*pi")
    ratio = 2 * math.pi / l_min
    return (1.0 - ratio * ratio) ** 1.5 * vol_parent


def slope_length_bound(vol_parent: float, vol_target: float) -> float:
    """Largest minimal slope length compatible with a hyperbolic filling of
    volume at most vol_target."""
    if not vol_parent > 0.0:
        raise ValueError("parent volume must be positive")
    if not 0.0 < vol_target < vol_parent:
        raise ValueError("need 0 < vol_target < vol_parent")
    r = (vol_target / vol_parent) ** (2.0 / 3.0)
    return 2 * math.pi / math.sqrt(1.0 - r)


def slope_length(p: int, q: int, cusp: CuspData) -> float:
    """|p * meridian + q * longitude| on the horoball boundary."""
    if p == 0 and q == 0:
        raise ValueError("(0, 0) is not a slope")
    v = p * cusp.meridian + q * cusp.longitude
    return math.hypot(v.real, v.imag)


def enumerate_slopes(cusp: CuspData, vol_target: float, fudge: float = 0.01) -> SlopeList:
    """All normalized coprime (p, q) with slope length at most
    slope_length_bound * (1 + fudge).

    Normalization keeps q > 0, or q = 0 with p > 0, so no pair appears
    together with its negation.  The search box |p| <= L|longitude|/A,
    |q| <= L|meridian|/A (A the lattice covolume) provably covers the
    length-L disk, so the enumeration is exhaustive.
    """
    if not fudge >= 0.0:
        raise ValueError("fudge must be >= 0")
    bound = slope_length_bound(cusp.parent_volume, vol_target)
    cutoff = bound * (1.0 + fudge)
    area = cusp.lattice_area()
    p_max = int(math.floor(cutoff * abs(cusp.longitude) / area)) + 1
    q_max = int(math.floor(cutoff * abs(cusp.meridian) / area)) + 1
    pairs = []
    for q in range(0, q_max + 1):
        p_lo = 1 if q == 0 else -p_max
        for p in range(p_lo, p_max + 1):
            if q == 0 and p != 1:
                # coprimality forces (1, 0) as the only q = 0 slope
                continue
            if p == 0 and q != 1:
                continue
            if gcd(abs(p), q) != 1:
                continue
            length = slope_length(p, q, cusp)
            if length <= cutoff:
                pairs.append((p, q, length))
    pairs.sort(key=lambda t: (t[0], t[1]))
    return SlopeList(bound_used=bound, fudge=fudge, pairs=tuple(pairs))
