"""Self-validating affine 1-jet arithmetic.

A ``Jet`` stands for the set of real-valued functions f on the cube
[-1,1]^n satisfying

    sup_x | f(x) - (center + sum_i coeffs[i] * x_i) |  <=  err.

Every operation returns a jet whose represented set contains the
pointwise image of its operands' sets, and every floating-point
rounding committed along the way is absorbed into ``err`` by outward
accumulation.  Plain round-to-nearest IEEE-754 doubles are assumed: a
primitive operation returning v carries an absolute error of at most
``EPS_PRIM * |v|``, plus one subnormal quantum for a multiply or divide
that may have underflowed (sums of doubles that land in the subnormal
range are exact, so additions never pay it).  Outward steps are taken
with ``math.nextafter`` so the accumulated bound itself never rounds
down.

Nonlinear behaviour (products of linear parts, Taylor remainders of
``log_jet``/``atan_jet``) is folded entirely into ``err``; tightness is
best effort, containment is the contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Relative error committed by one round-to-nearest double operation is at
# most 2^-53; the budget itself is then rounded outward.
EPS_PRIM = 2.0 ** -53
# One quantum of the subnormal range; covers the absolute error of a single
# underflowing multiply/divide, where the relative bound fails.
TINY = 5e-324

_INF = math.inf

# pi is irrational; math.pi is the nearest double and lies below the true
# value, so [PI_LO, PI_HI] is a certified enclosure one ulp wide.
PI_LO = math.pi
PI_HI = math.nextafter(math.pi, _INF)
SQRT2_LO = math.nextafter(math.sqrt(2.0), -_INF)
SQRT2_HI = math.nextafter(math.sqrt(2.0), _INF)


class JetError(ValueError):
    """Invalid jet construction (non-finite field, bad index, ...)."""


class JetDomainError(JetError):
    """Operation applied to a jet outside its provable domain."""


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _add_up(x: float, y: float) -> float:
    return _up(x + y)


def _mul_up(x: float, y: float) -> float:
    return _up(x * y)


def _div_up(x: float, y: float) -> float:
    return _up(x / y)


def _sum_abs_up(values) -> float:
    total = 0.0
    for v in values:
        if v != 0.0:
            total = _up(total + abs(v))
    return total


class _ErrAcc:
    """Upward-rounded accumulator for error-term bookkeeping."""

    __slots__ = ("total",)

    def __init__(self, start: float = 0.0):
        self.total = start

    def add(self, x: float) -> None:
        if x != 0.0:
            self.total = _up(self.total + x)

    def add_round(self, value: float, x: float, y: float) -> None:
        """Charge for value = fl(x + y)."""
        if value == 0.0 or x == 0.0 or y == 0.0:
            return  # exact: cancellation to zero and adding zero do not round
        self.add(_up(EPS_PRIM * abs(value)))

    def mul_round(self, value: float, x: float, y: float) -> None:
        """Charge for value = fl(x * y) (or x / y with y the divisor)."""
        if x == 0.0 or y == 0.0:
            return  # exact zero product
        self.add(_up(_up(EPS_PRIM * abs(value)) + TINY))


def _require_finite(x: float, what: str) -> None:
    if not math.isfinite(x):
        raise JetError(f"{what} is not finite: {x!r}")


@dataclass(frozen=True)
class Jet:
    """Affine 1-jet: linear function on [-1,1]^dim plus an error radius."""

    center: float
    coeffs: tuple
    err: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "err", float(self.err))
        _require_finite(self.center, "jet center")
        for c in self.coeffs:
            _require_finite(c, "jet coefficient")
        _require_finite(self.err, "jet error term")
        if self.err < 0.0:
            raise JetError(f"jet error term is negative: {self.err!r}")

    # -- construction -------------------------------------------------

    @classmethod
    def constant(cls, c: float, dim: int = 0) -> "Jet":
        return cls(c, (0.0,) * dim, 0.0)

    @classmethod
    def variable(cls, c: float, index: int, radius: float, dim: int) -> "Jet":
        """c + radius * x_index: contains every constant in [c-radius, c+radius]."""
        if not 0 <= index < dim:
            raise JetError(f"variable index {index} out of range for dim {dim}")
        if not radius >= 0.0:
            raise JetError(f"variable radius must be >= 0, got {radius!r}")
        coeffs = [0.0] * dim
        coeffs[index] = radius
        return cls(c, tuple(coeffs), 0.0)

    # -- queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def spread(self) -> float:
        """Upper bound for sup |f(x) - center| over the represented set."""
        s = _sum_abs_up(self.coeffs)
        if self.err == 0.0:
            return s
        return _up(s + self.err)

    def bounds(self) -> tuple:
        """Outward interval enclosing every value of every member function."""
        s = self.spread()
        if s == 0.0:
            return self.center, self.center
        return _down(self.center - s), _up(self.center + s)

    def sup_abs(self) -> float:
        s = self.spread()
        if s == 0.0:
            return abs(self.center)
        return _up(abs(self.center) + s)

    def prove_positive(self) -> bool:
        return self.bounds()[0] > 0.0

    def prove_negative(self) -> bool:
        return self.bounds()[1] < 0.0

    def prove_nonzero(self) -> bool:
        lo, hi = self.bounds()
        return lo > 0.0 or hi < 0.0

    def prove_lt(self, c: float) -> bool:
        return self.bounds()[1] < c

    def prove_gt(self, c: float) -> bool:
        return self.bounds()[0] > c

    def is_exact_zero(self) -> bool:
        return self.center == 0.0 and self.err == 0.0 and not any(self.coeffs)

    def widened(self, extra: float) -> "Jet":
        """Same affine part with the error radius grown by ``extra``."""
        if extra < 0.0:
            raise JetError("widening amount must be >= 0")
        if extra == 0.0:
            return self
        return Jet(self.center, self.coeffs, _add_up(self.err, extra))

    def __repr__(self):
        return f"Jet({self.center!r}; {list(self.coeffs)!r}; {self.err!r})"

    # -- arithmetic ---------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Jet):
            if other.dim != self.dim:
                raise JetError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, float)):
            _require_finite(float(other), "scalar operand")
            return Jet.constant(float(other), self.dim)
        return NotImplemented

    def __neg__(self) -> "Jet":
        # Negation of doubles is exact.
        return Jet(-self.center, tuple(-c for c in self.coeffs), self.err)

    def __add__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        acc = _ErrAcc()
        c0 = self.center + b.center
        acc.add_round(c0, self.center, b.center)
        coeffs = []
        for x, y in zip(self.coeffs, b.coeffs):
            ci = x + y
            acc.add_round(ci, x, y)
            coeffs.append(ci)
        acc.add(self.err)
        acc.add(b.err)
        return Jet(c0, tuple(coeffs), acc.total)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return self.__add__(-b)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        a = self
        acc = _ErrAcc()
        c0 = a.center * b.center
        acc.mul_round(c0, a.center, b.center)
        coeffs = []
        for x, y in zip(a.coeffs, b.coeffs):
            t1 = a.center * y
            t2 = b.center * x
            ci = t1 + t2
            acc.mul_round(t1, a.center, y)
            acc.mul_round(t2, b.center, x)
            acc.add_round(ci, t1, t2)
            coeffs.append(ci)
        sa = _sum_abs_up(a.coeffs)
        sb = _sum_abs_up(b.coeffs)
        # Quadratic cross terms are folded entirely into err.
        acc.add(_mul_up(sa, sb))
        if b.err != 0.0:
            ma = _up(_up(abs(a.center) + sa) + a.err)
            acc.add(_mul_up(ma, b.err))
        if a.err != 0.0:
            mb = _up(_up(abs(b.center) + sb) + b.err)
            acc.add(_mul_up(mb, a.err))
        return Jet(c0, tuple(coeffs), acc.total)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        """1/f for every represented f; requires a provably nonzero range."""
        lo, hi = self.bounds()
        if not (lo > 0.0 or hi < 0.0):
            raise JetDomainError("reciprocal of a jet not provably nonzero")
        m = min(abs(lo), abs(hi))
        b0 = self.center
        acc = _ErrAcc()
        c = 1.0 / b0
        acc.mul_round(c, 1.0, b0)
        q = b0 * b0
        q_lo = _down(q)  # certified lower bound for b0^2
        if q_lo <= 0.0:
            raise JetDomainError("reciprocal: center too close to zero")
        coeffs = []
        for bi in self.coeffs:
            di = -(bi / q)
            # two roundings: q itself and the division
            acc.mul_round(di, bi, q)
            acc.mul_round(di, bi, q)
            coeffs.append(di)
        if self.err != 0.0:
            acc.add(_mul_up(self.err, _div_up(1.0, q_lo)))
        # Remainder of the linearization: (f-b0)^2 / (b0^2 f).
        spread = self.spread()
        if spread != 0.0:
            den = _down(q_lo * m)
            if den <= 0.0:
                raise JetDomainError("reciprocal: range too close to zero")
            acc.add(_div_up(_mul_up(spread, spread), den))
        return Jet(c, tuple(coeffs), acc.total)

    def __truediv__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return self.__mul__(b.reciprocal())

    def __rtruediv__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return b.__mul__(self.reciprocal())


def pi_jet(dim: int = 0) -> Jet:
    """Certified enclosure of pi as a jet."""
    return Jet(PI_LO, (0.0,) * dim, PI_HI - PI_LO)


def half_pi_jet(dim: int = 0) -> Jet:
    return pi_jet(dim) * 0.5


def _libm_point(value: float, dim: int) -> Jet:
    """Enclosure of a libm-computed transcendental value.

    glibc's log/atan are documented below 2 ulp everywhere; we charge a
    4-ulp-wide enclosure (relative 4*EPS_PRIM) plus a subnormal quantum.
    The oracle suites exercise this margin at zero tolerance.
    """
    half = _up(_up(4.0 * EPS_PRIM * abs(value)) + TINY)
    return Jet(value, (0.0,) * dim, half)


def log_jet(a: Jet) -> Jet:
    """Pointwise natural log: degree-4 Taylor about the center plus a
    Lagrange remainder over the jet's (provably positive) range."""
    if not a.prove_positive():
        raise JetDomainError("log of a jet not provably positive")
    a0 = a.center
    if a0 <= 0.0:  # unreachable once positivity is proved
        raise JetDomainError("log: center not positive")
    # t = (a - a0)/a0; positivity of the range forces |t| < 1.
    d = a + (-a0)
    t = d / a0
    t_sup = t.sup_abs()
    if not t_sup < 1.0:
        raise JetDomainError("log: jet range too wide for the remainder bound")
    t2 = t * t
    poly = t - t2 * 0.5 + (t2 * t) / 3.0 - (t2 * t2) * 0.25
    # |R| <= T^5 / (5 (1-T)^5) for log(1+t), T = sup|t|.
    if t_sup == 0.0:
        rem = 0.0
    else:
        t5 = _mul_up(_mul_up(_mul_up(t_sup, t_sup), _mul_up(t_sup, t_sup)), t_sup)
        om = _down(1.0 - t_sup)
        om2 = _down(om * om)
        om5 = _down(_down(om2 * om2) * om)
        den = _down(5.0 * om5)
        if den <= 0.0:
            raise JetDomainError("log: jet range too wide for the remainder bound")
        rem = _div_up(t5, den)
    if a0 == 1.0:
        base = Jet.constant(0.0, a.dim)
    else:
        base = _libm_point(math.log(a0), a.dim)
    return (base + poly).widened(rem)


def atan_jet(a: Jet) -> Jet:
    """Pointwise arctangent: degree-4 Taylor about the center.

    The fifth derivative of atan is bounded by 120 in absolute value, so
    the Lagrange remainder is at most sup|a - center|^5.
    """
    a0 = a.center
    dim = a.dim
    d = a + (-a0)
    # Taylor coefficients at a0, computed as certified constant jets:
    #  c1 = 1/w, c2 = -a0/w^2, c3 = (3a0^2-1)/(3w^3), c4 = a0(1-a0^2)/w^4
    # with w = 1 + a0^2.
    z = Jet.constant(a0, dim)
    w = z * z + 1.0
    w2 = w * w
    c1 = w.reciprocal()
    c2 = -(z / w2)
    c3 = (z * z * 3.0 - 1.0) / (w2 * w * 3.0)
    c4 = (z - z * z * z) / (w2 * w2)
    poly = d * (c1 + d * (c2 + d * (c3 + d * c4)))
    t_sup = d.sup_abs()
    if t_sup == 0.0:
        rem = 0.0
    else:
        rem = _mul_up(_mul_up(_mul_up(t_sup, t_sup), _mul_up(t_sup, t_sup)), t_sup)
    if a0 == 0.0:
        base = Jet.constant(0.0, dim)
    else:
        base = _libm_point(math.atan(a0), dim)
    return (base + poly).widened(rem)


@dataclass(frozen=True)
class ComplexJet:
    """Complex value with jet real and imaginary parts over one variable space."""

    re: Jet
    im: Jet

    def __post_init__(self):
        if self.re.dim != self.im.dim:
            raise JetError("real and imaginary parts must share the variable space")

    @classmethod
    def constant(cls, z: complex, dim: int = 0) -> "ComplexJet":
        z = complex(z)
        return cls(Jet.constant(z.real, dim), Jet.constant(z.imag, dim))

    @classmethod
    def variable(cls, z: complex, re_index: int, im_index: int,
                 radius: float, dim: int) -> "ComplexJet":
        """z perturbed by radius in each real coordinate independently."""
        z = complex(z)
        return cls(Jet.variable(z.real, re_index, radius, dim),
                   Jet.variable(z.imag, im_index, radius, dim))

    @property
    def dim(self) -> int:
        return self.re.dim

    def _lift(self, other):
        if isinstance(other, ComplexJet):
            return other
        if isinstance(other, (int, float, complex)):
            return ComplexJet.constant(complex(other), self.dim)
        return NotImplemented

    def __neg__(self):
        return ComplexJet(-self.re, -self.im)

    def __add__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return ComplexJet(self.re + b.re, self.im + b.im)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return ComplexJet(self.re - b.re, self.im - b.im)

    def __rsub__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return b.__sub__(self)

    def __mul__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return ComplexJet(self.re * b.re - self.im * b.im,
                          self.re * b.im + self.im * b.re)

    __rmul__ = __mul__

    def conjugate(self) -> "ComplexJet":
        return ComplexJet(self.re, -self.im)

    def abs_squared(self) -> Jet:
        return self.re * self.re + self.im * self.im

    def prove_nonzero(self) -> bool:
        return self.abs_squared().prove_positive()

    def reciprocal(self) -> "ComplexJet":
        d = self.abs_squared()
        if not d.prove_positive():
            raise JetDomainError("complex reciprocal: jet not provably nonzero")
        inv = d.reciprocal()
        return ComplexJet(self.re * inv, -(self.im * inv))

    def __truediv__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return self.__mul__(b.reciprocal())

    def __rtruediv__(self, other):
        b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return b.__mul__(self.reciprocal())


def arg_complex(z: ComplexJet) -> Jet:
    """Principal argument of every complex point represented by ``z``.

    The quadrant is fixed through a provable half-plane: the right
    half-plane uses atan(im/re) directly, the upper and lower half-planes
    pivot around +-pi/2.  Jets whose range may cross the negative real
    axis are rejected, since no single branch of the argument covers them.
    """
    dim = z.dim
    if z.re.prove_positive():
        return atan_jet(z.im / z.re)
    if z.im.prove_positive():
        return half_pi_jet(dim) - atan_jet(z.re / z.im)
    if z.im.prove_negative():
        return -half_pi_jet(dim) - atan_jet(z.re / z.im)
    raise JetDomainError("argument: quadrant not provable (origin or branch cut)")


def complex_log_jet(z: ComplexJet) -> ComplexJet:
    """Principal complex logarithm: log|z| + i arg z."""
    return ComplexJet(log_jet(z.abs_squared()) * 0.5, arg_complex(z))
