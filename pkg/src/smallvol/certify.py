"""Existence certification for logarithmic gluing-equation systems.

A system consists of equations

    sum_j a_j log z_j + b_j log(1 - z_j) - c * i*pi = 0

with integer coefficients and principal logarithms, together with an
approximate solution.  ``krawczyk_certify`` refines the approximation
with a few plain Newton steps, then runs the Krawczyk interval-Newton
test in jet arithmetic over a small per-coordinate box X around the
refined point x^:

    K(X) = x^ - Y F(x^) + (I - Y F'(X)) (X - x^),

with Y an approximate inverse Jacobian.  If K(X) lands strictly inside
X (checked per real coordinate on outward bounds), a true solution of
the selected square subsystem exists in X, and the certificate's delta
bounds its C^n distance from the *input* shapes.

Everything on the certified path runs in jet arithmetic; numpy is used
only for the approximate quantities (Newton steps, pivoting, Y), whose
values need not be accurate for soundness.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .jets import (
    ComplexJet,
    Jet,
    JetDomainError,
    SQRT2_HI,
    _up,
    complex_log_jet,
    pi_jet,
)

_SINGULAR_TOL = 1e-13


class CertifyError(ValueError):
    """Bad gluing-system input."""


class BranchConsistencyError(CertifyError):
    """Residuals at the stored shapes are too large for the chosen log
    branches to be meaningful."""


class RankDeficientError(CertifyError):
    """No nonsingular square subsystem could be selected."""


class InconclusiveError(RuntimeError):
    """The contraction test failed at every radius in the schedule.

    Not a proof of nonexistence; retry with better shapes or equations.
    """


@dataclass(frozen=True)
class GluingEquation:
    a: tuple
    b: tuple
    c: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "c", int(self.c))
        if len(self.a) != len(self.b):
            raise CertifyError("coefficient rows a and b must have equal length")


@dataclass(frozen=True)
class GluingSystem:
    """Integer-coefficient logarithmic equations plus approximate shapes."""

    equations: tuple
    shapes: tuple

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        object.__setattr__(self, "shapes", tuple(complex(z) for z in self.shapes))
        n = len(self.shapes)
        if n == 0:
            raise CertifyError("system needs at least one shape")
        if len(self.equations) < n:
            raise CertifyError(
                f"need at least {n} equations for {n} shapes, "
                f"got {len(self.equations)}"
            )
        for eq in self.equations:
            if len(eq.a) != n:
                raise CertifyError("equation arity does not match shape count")
        for j, z in enumerate(self.shapes):
            if not cmath.isfinite(z):
                raise CertifyError(f"stored shape {j} is not finite")
            if z == 0 or z == 1:
                raise CertifyError(f"stored shape {j} is singular")
        for i, r in enumerate(residual(self)):
            if abs(r) >= 0.5:
                raise BranchConsistencyError(
                    f"residual {abs(r):.3g} of equation {i} at the stored shapes "
                    "exceeds 0.5; log branches are inconsistent"
                )

    @property
    def n(self) -> int:
        return len(self.shapes)


@dataclass(frozen=True)
class Certificate:
    """Verified existence record for a gluing-equation solution.

    A true solution of the selected square subsystem lies within
    ``box_radius`` of ``refined_center`` in each complex coordinate, and
    within ``delta`` of the system's input shapes in the C^n 2-norm.
    """

    delta: float
    box_radius: float
    selected: tuple
    refined_center: tuple
    residual_norms: tuple  # per-equation |residual| at the refined center

    def __post_init__(self):
        if self.delta < self.box_radius:
            raise CertifyError("delta must dominate the box radius")
        if len(set(self.selected)) != len(self.selected):
            raise CertifyError("selected equation indices must be distinct")


def residual(sys: GluingSystem, shapes=None) -> list:
    """Per-equation value of sum_j a_j log z_j + b_j log(1-z_j) - c*i*pi."""
    zs = sys.shapes if shapes is None else [complex(z) for z in shapes]
    for z in zs:
        if z == 0 or z == 1:
            raise CertifyError("residual evaluated at a singular shape")
    logs = [cmath.log(z) for z in zs]
    logs1 = [cmath.log(1 - z) for z in zs]
    out = []
    for eq in sys.equations:
        v = complex(0.0)
        for aj, bj, lz, l1 in zip(eq.a, eq.b, logs, logs1):
            if aj:
                v += aj * lz
            if bj:
                v += bj * l1
        out.append(v - eq.c * complex(0.0, math.pi))
    return out


def jacobian(sys: GluingSystem, shapes=None) -> np.ndarray:
    """m x n matrix of partials: d/dz_j = a_j / z_j - b_j / (1 - z_j)."""
    zs = sys.shapes if shapes is None else [complex(z) for z in shapes]
    for z in zs:
        if z == 0 or z == 1:
            raise CertifyError("jacobian evaluated at a singular shape")
    m = len(sys.equations)
    out = np.zeros((m, sys.n), dtype=complex)
    for i, eq in enumerate(sys.equations):
        for j, z in enumerate(zs):
            out[i, j] = eq.a[j] / z - eq.b[j] / (1 - z)
    return out


def select_square_subsystem(sys: GluingSystem, shapes=None) -> tuple:
    """n equation indices found by greedy column-by-column pivoting on the
    Jacobian at the (refined or stored) shapes; raises when the system is
    numerically rank deficient."""
    jac = jacobian(sys, shapes)
    m, n = jac.shape
    work = jac.astype(complex).copy()
    scale = max(1.0, float(np.max(np.abs(work))))
    available = list(range(m))
    chosen = []
    for col in range(n):
        best = max(available, key=lambda r: abs(work[r, col]))
        pivot = work[best, col]
        if abs(pivot) <= _SINGULAR_TOL * scale:
            raise RankDeficientError(
                f"no usable pivot in column {col}: system is rank deficient"
            )
        chosen.append(best)
        available.remove(best)
        for r in available:
            factor = work[r, col] / pivot
            work[r, col:] -= factor * work[best, col:]
    return tuple(sorted(chosen))


def _newton_refine(sys: GluingSystem, selected, max_steps: int = 5):
    """Plain floating-point Newton polish of the stored shapes.

    Keeps the best iterate by residual norm and never returns a point
    whose residual is worse than the input's (preserving the system's
    branch-consistency invariant).
    """
    idx = list(selected)
    z = np.array(sys.shapes, dtype=complex)
    best = z.copy()
    best_norm = _res_norm(sys, z)
    for _ in range(max_steps):
        res = residual(sys, z)
        f = np.array([res[i] for i in idx], dtype=complex)
        jac = jacobian(sys, z)[idx, :]
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            break
        z_new = z + step
        if any(w == 0 or w == 1 for w in z_new):
            break
        norm = _res_norm(sys, z_new)
        if not norm < best_norm:
            break
        z = z_new
        best = z.copy()
        best_norm = norm
    return tuple(complex(w) for w in best)


def _res_norm(sys: GluingSystem, shapes) -> float:
    return max(abs(r) for r in residual(sys, shapes))


def _residual_jets(sys: GluingSystem, zjets) -> list:
    """Residual of every equation with the shapes given as complex jets."""
    dim = zjets[0].dim
    ipi = ComplexJet(Jet.constant(0.0, dim), pi_jet(dim))
    logs = [complex_log_jet(z) for z in zjets]
    logs1 = [complex_log_jet(1.0 - z) for z in zjets]
    out = []
    for eq in sys.equations:
        acc = ComplexJet.constant(0.0, dim)
        for aj, bj, lz, l1 in zip(eq.a, eq.b, logs, logs1):
            if aj:
                acc = acc + lz * float(aj)
            if bj:
                acc = acc + l1 * float(bj)
        if eq.c:
            acc = acc - ipi * float(eq.c)
        out.append(acc)
    return out


def _jacobian_jets(sys: GluingSystem, zjets, rows) -> list:
    """Selected Jacobian rows with the shapes given as complex jets."""
    entries = []
    for i in rows:
        eq = sys.equations[i]
        row = []
        for j, z in enumerate(zjets):
            dim = z.dim
            term = ComplexJet.constant(0.0, dim)
            if eq.a[j]:
                term = term + z.reciprocal() * float(eq.a[j])
            if eq.b[j]:
                term = term - (1.0 - z).reciprocal() * float(eq.b[j])
            row.append(term)
        entries.append(row)
    return entries


def _krawczyk_once(sys: GluingSystem, center, selected, r: float) -> bool:
    """One Krawczyk contraction test on the per-real-coordinate box of
    radius r around ``center``; True when K(X) is provably interior."""
    n = sys.n
    dim = 4 * n  # first 2n: box point variables, last 2n: Jacobian point
    idx = list(selected)

    jac_center = jacobian(sys, center)[idx, :]
    try:
        y = np.linalg.inv(jac_center)
    except np.linalg.LinAlgError:
        return False

    center_jets = [ComplexJet.constant(z, dim) for z in center]
    try:
        residual_jets = _residual_jets(sys, center_jets)
    except JetDomainError:
        return False
    f_center = [residual_jets[i] for i in idx]

    # Jacobian over the box, parametrized by the second variable block.
    box_jets = [
        ComplexJet.variable(center[j], 2 * n + 2 * j, 2 * n + 2 * j + 1, r, dim)
        for j in range(n)
    ]
    try:
        jac_box = _jacobian_jets(sys, box_jets, idx)
    except JetDomainError:
        return False

    # w = X - x^, parametrized by the first variable block.
    w = [ComplexJet.variable(0.0, 2 * j, 2 * j + 1, r, dim) for j in range(n)]

    for row in range(n):
        # K_row - x^_row = -(Y F(x^))_row + sum_k (I - Y J)_row,k * w_k
        acc = ComplexJet.constant(0.0, dim)
        for k in range(n):
            acc = acc - ComplexJet.constant(complex(y[row, k]), dim) * f_center[k]
        for k in range(n):
            m_rk = ComplexJet.constant(1.0 if row == k else 0.0, dim)
            for l in range(n):
                m_rk = m_rk - (
                    ComplexJet.constant(complex(y[row, l]), dim) * jac_box[l][k]
                )
            acc = acc + m_rk * w[k]
        re_lo, re_hi = acc.re.bounds()
        im_lo, im_hi = acc.im.bounds()
        if not (-r < re_lo and re_hi < r and -r < im_lo and im_hi < r):
            return False
    return True


def krawczyk_certify(sys: GluingSystem, r0: float = None) -> Certificate:
    """Certify that a true solution exists near the stored shapes.

    Radius schedule: r0, 10*r0, 100*r0 (default r0 scales with the shape
    magnitudes).  Raises InconclusiveError when every radius fails.
    """
    selected = select_square_subsystem(sys)
    center = _newton_refine(sys, selected)
    selected = select_square_subsystem(sys, center)
    if r0 is None:
        r0 = 1e-10 * max(1.0, max(abs(z) for z in sys.shapes))
    if not r0 > 0.0:
        raise CertifyError("r0 must be positive")

    n = sys.n
    for radius in (r0, r0 * 10.0, r0 * 100.0):
        if _krawczyk_once(sys, center, selected, radius):
            box_radius = _up(radius * SQRT2_HI)
            dist = 0.0
            for z_in, z_ref in zip(sys.shapes, center):
                d = z_in - z_ref
                dist = _up(dist + _up(d.real * d.real) + _up(d.imag * d.imag))
            dist = _up(math.sqrt(dist))
            sqrt_n = _up(math.sqrt(n))
            delta = _up(dist + _up(box_radius * sqrt_n))
            norms = tuple(abs(r) for r in residual(sys, center))
            return Certificate(
                delta=delta,
                box_radius=box_radius,
                selected=selected,
                refined_center=center,
                residual_norms=norms,
            )
    raise InconclusiveError(
        "Krawczyk test failed at every radius in the schedule"
    )


# ---------------------------------------------------------------------------
# Reference fixture: the figure-eight knot complement
# ---------------------------------------------------------------------------

def figure_eight_system(round_digits: int = None) -> GluingSystem:
    """Two-tetrahedron figure-eight system with exact solution
    z = w = exp(i pi / 3).

    Rows: the edge equation log z + log w + log(1-z) + log(1-w) = 0, its
    formal negation (a genuinely redundant row, as full edge-equation
    lists always carry one), and a completeness-style equation
    log w + log(1-z) = 0.  ``round_digits`` rounds the stored shapes to
    that many decimals to mimic a solver's output.
    """
    z = complex(0.5, math.sqrt(3.0) / 2.0)
    if round_digits is not None:
        z = complex(round(z.real, round_digits), round(z.imag, round_digits))
    eqs = (
        GluingEquation((1, 1), (1, 1), 0),
        GluingEquation((-1, -1), (-1, -1), 0),
        GluingEquation((0, 1), (1, 0), 0),
    )
    return GluingSystem(eqs, (z, z))
