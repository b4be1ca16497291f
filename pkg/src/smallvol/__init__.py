"""smallvol: verified computation for small-volume hyperbolic 3-manifolds.

The pipeline, end to end:

* ``filling`` turns a volume target into a slope-length bound and
  enumerates every candidate Dehn-filling coefficient pair on a cusp;
* ``certify`` proves that a gluing-equation system has a true solution
  near an approximate one, with an explicit distance bound;
* ``geometry`` + ``lobachevsky`` + ``jets`` convert certified shapes
  into rigorous volume intervals via self-validating affine arithmetic;
* ``grouptool`` checks non-hyperbolicity proofs for the fundamental
  groups of fillings where no hyperbolic structure exists.
"""

from .certify import (
    Certificate,
    GluingEquation,
    GluingSystem,
    InconclusiveError,
    figure_eight_system,
    jacobian,
    krawczyk_certify,
    residual,
    select_square_subsystem,
)
from .filling import (
    CuspData,
    SlopeList,
    enumerate_slopes,
    fkp_lower_bound,
    slope_length,
    slope_length_bound,
)
from .geometry import (
    Interval,
    ShapeAssignment,
    certified_volume,
    check_positive_orientation,
    dihedral_angles,
    prove_volume_gt,
    prove_volume_le,
)
from .jets import ComplexJet, Jet, arg_complex, atan_jet, log_jet
from .lobachevsky import SeriesCoeffs, lobachevsky, range_reduce, series_coeffs

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ComplexJet",
    "CuspData",
    "GluingEquation",
    "GluingSystem",
    "InconclusiveError",
    "Interval",
    "Jet",
    "SeriesCoeffs",
    "ShapeAssignment",
    "SlopeList",
    "arg_complex",
    "atan_jet",
    "certified_volume",
    "check_positive_orientation",
    "dihedral_angles",
    "enumerate_slopes",
    "figure_eight_system",
    "fkp_lower_bound",
    "jacobian",
    "krawczyk_certify",
    "lobachevsky",
    "log_jet",
    "prove_volume_gt",
    "prove_volume_le",
    "range_reduce",
    "residual",
    "select_square_subsystem",
    "series_coeffs",
    "slope_length",
    "slope_length_bound",
]
