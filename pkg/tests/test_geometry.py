import cmath
import math
import random

import mpmath
import pytest

from smallvol.geometry import (
    Interval,
    OrientationError,
    ShapeAssignment,
    certified_volume,
    check_positive_orientation,
    dihedral_angles,
    prove_volume_gt,
    prove_volume_le,
)
from smallvol.jets import ComplexJet, JetDomainError, pi_jet

from oracles import jet_contains_value, lobachevsky_quad, mp_arg

OMEGA = complex(0.5, math.sqrt(3) / 2)  # e^{i pi/3}, the regular shape
V_TET = None  # filled lazily: 3 L(pi/3)


def _v_tet():
    global V_TET
    if V_TET is None:
        V_TET = 3 * lobachevsky_quad(mpmath.pi / 3)
    return V_TET


class TestShapeAssignment:
    def test_valid(self):
        s = ShapeAssignment((OMEGA,), 0.0)
        assert s.count == 1

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            ShapeAssignment((0.0005 + 0j,), 0.001)
        with pytest.raises(ValueError):
            ShapeAssignment((1.0005 + 0j,), 0.001)

    def test_negative_delta_rejected(self):
        with pytest.raises(ValueError):
            ShapeAssignment((OMEGA,), -1e-9)


class TestDihedralAngles:
    def test_regular_tetrahedron(self):
        angles = dihedral_angles(ComplexJet.constant(OMEGA))
        third_pi = mpmath.pi / 3
        for a in angles:
            assert jet_contains_value(a, third_pi)

    def test_z_equals_i(self):
        angles = dihedral_angles(ComplexJet.constant(1j))
        expected = (mpmath.pi / 2, mpmath.pi / 4, mpmath.pi / 4)
        for a, e in zip(angles, expected):
            assert jet_contains_value(a, e)

    def test_random_containment_vs_oracle(self):
        rng = random.Random(9)
        for _ in range(60):
            z = complex(rng.uniform(-1.5, 2.5), rng.uniform(0.15, 1.5))
            dim = 2
            zj = ComplexJet.variable(z, 0, 1, 1e-4, dim)
            angles = dihedral_angles(zj)
            for _ in range(5):
                dz = complex(rng.uniform(-1e-4, 1e-4), rng.uniform(-1e-4, 1e-4))
                w = z + dz
                true = (
                    mp_arg(w.real, w.imag),
                    mp_arg((1 / (1 - mpmath.mpc(w))).real, (1 / (1 - mpmath.mpc(w))).imag),
                    mp_arg(((mpmath.mpc(w) - 1) / mpmath.mpc(w)).real,
                           ((mpmath.mpc(w) - 1) / mpmath.mpc(w)).imag),
                )
                xs = (dz.real / 1e-4, dz.imag / 1e-4)
                for a, t in zip(angles, true):
                    lin = a.center + a.coeffs[0] * xs[0] + a.coeffs[1] * xs[1]
                    assert lin - a.err <= float(t) <= lin + a.err

    def test_angle_sum_contains_pi(self):
        rng = random.Random(10)
        for _ in range(40):
            z = complex(rng.uniform(-1, 2), rng.uniform(0.2, 1.5))
            zj = ComplexJet.variable(z, 0, 1, 1e-5, 2)
            a1, a2, a3 = dihedral_angles(zj)
            total = a1 + a2 + a3
            assert jet_contains_value(total, mpmath.pi)

    def test_degenerate_shape_rejected(self):
        zj = ComplexJet.variable(0.001 + 0.001j, 0, 1, 0.01, 2)
        with pytest.raises(JetDomainError):
            dihedral_angles(zj)


class TestOrientation:
    def test_regular_true(self):
        assert check_positive_orientation(ShapeAssignment((OMEGA,), 0.0))

    def test_ball_crossing_axis_false(self):
        assert not check_positive_orientation(
            ShapeAssignment((0.5 + 0.001j,), 0.01)
        )

    def test_figure_eight_small_delta(self):
        assert check_positive_orientation(ShapeAssignment((OMEGA, OMEGA), 1e-6))


class TestCertifiedVolume:
    def test_regular_tetrahedron_volume(self):
        iv = certified_volume(ShapeAssignment((OMEGA,), 0.0))
        v = _v_tet()
        assert iv.lo <= float(v) <= iv.hi
        assert str(v)[:12] == "1.0149416064"
        assert iv.width() < 1e-6

    def test_figure_eight_volume(self):
        iv = certified_volume(ShapeAssignment((OMEGA, OMEGA), 0.0))
        v = 2 * _v_tet()
        assert iv.lo <= float(v) <= iv.hi
        assert str(v)[:12] == "2.0298832128"

    def test_figure_eight_with_delta_still_contains(self):
        iv = certified_volume(ShapeAssignment((OMEGA, OMEGA), 1e-3))
        assert iv.lo <= 2.0298832128 <= iv.hi

    def test_monotone_inflation(self):
        s1 = ShapeAssignment((OMEGA, OMEGA), 1e-6)
        s2 = ShapeAssignment((OMEGA, OMEGA), 1e-4)
        iv1 = certified_volume(s1)
        iv2 = certified_volume(s2)
        mid = 0.5 * (iv1.lo + iv1.hi)
        assert iv2.lo <= mid <= iv2.hi

    def test_oracle_containment_random_shapes(self):
        rng = random.Random(12)
        for _ in range(100):
            z = complex(rng.uniform(-1, 2), rng.uniform(0.2, 1.6))
            iv = certified_volume(ShapeAssignment((z,), 0.0))
            with mpmath.workdps(30):
                w = mpmath.mpc(z)
                vol = (
                    lobachevsky_quad(mpmath.arg(w))
                    + lobachevsky_quad(mpmath.arg(1 / (1 - w)))
                    + lobachevsky_quad(mpmath.arg((w - 1) / w))
                )
            assert iv.lo <= float(vol) <= iv.hi

    def test_orientation_failure_raises(self):
        with pytest.raises(OrientationError):
            certified_volume(ShapeAssignment((0.5 - 0.9j,), 0.0))


class TestProveVolume:
    def test_figure_eight_gt_2(self):
        assert prove_volume_gt(ShapeAssignment((OMEGA, OMEGA), 0.0), 2.0)

    def test_figure_eight_not_gt_2848(self):
        assert not prove_volume_gt(ShapeAssignment((OMEGA, OMEGA), 0.0), 2.848)

    def test_single_tet_gt_weeks_threshold(self):
        assert prove_volume_gt(ShapeAssignment((OMEGA,), 0.0), 0.943)

    def test_never_both(self):
        rng = random.Random(14)
        for _ in range(30):
            z = complex(rng.uniform(-0.5, 1.5), rng.uniform(0.3, 1.2))
            s = ShapeAssignment((z,), 1e-8)
            t = rng.uniform(0.0, 1.2)
            assert not (prove_volume_gt(s, t) and prove_volume_le(s, t))

    def test_inconclusive_is_false(self):
        # negative imaginary part: orientation fails, both provers decline
        s = ShapeAssignment((0.5 - 0.9j,), 0.0)
        assert not prove_volume_gt(s, 0.1)
        assert not prove_volume_le(s, 10.0)
