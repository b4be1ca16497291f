"""High-precision reference computations shared by the test suite.

Everything here goes through mpmath at 30-50 significant digits and is
deliberately independent of the library's own evaluation paths.
"""

import mpmath


def lobachevsky_quad(theta, dps=30):
    """Adaptive quadrature of the defining integral of the Lobachevsky
    function: integral from 0 to theta of -log|2 sin t| dt."""
    with mpmath.workdps(dps):
        theta = mpmath.mpf(theta)
        if theta == 0:
            return mpmath.mpf(0)
        val = mpmath.quad(lambda t: -mpmath.log(abs(2 * mpmath.sin(t))), [0, theta])
        return +val


def lobachevsky_clausen(theta, dps=30):
    """Independent cross-check: Cl_2(2 theta) / 2."""
    with mpmath.workdps(dps):
        return +(mpmath.clsin(2, 2 * mpmath.mpf(theta)) / 2)


def mp_arg(re, im, dps=50):
    with mpmath.workdps(dps):
        return +mpmath.arg(mpmath.mpc(re, im))


def mp_log(x, dps=50):
    with mpmath.workdps(dps):
        return +mpmath.log(mpmath.mpf(x))


def mp_atan(x, dps=50):
    with mpmath.workdps(dps):
        return +mpmath.atan(mpmath.mpf(x))


def jet_contains(jet, sample, true_value, dps=50):
    """Check that the 50-digit true value lies inside the jet evaluated at
    ``sample`` (a point of [-1,1]^dim) within the error radius."""
    with mpmath.workdps(dps):
        lin = mpmath.mpf(jet.center)
        for c, x in zip(jet.coeffs, sample):
            lin += mpmath.mpf(c) * mpmath.mpf(x)
        err = mpmath.mpf(jet.err)
        v = mpmath.mpf(true_value) if not isinstance(true_value, mpmath.mpf) else true_value
        return lin - err <= v <= lin + err


def jet_contains_value(jet, true_value):
    """Check that a scalar lies in the jet's outward range interval."""
    lo, hi = jet.bounds()
    with mpmath.workdps(50):
        return mpmath.mpf(lo) <= mpmath.mpf(true_value) <= mpmath.mpf(hi)
