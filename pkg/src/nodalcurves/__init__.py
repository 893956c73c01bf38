"""Exact computation of nodal-curve counting invariants on surfaces.

Severi degrees of the plane by the Caporaso-Harris recursion, closed-form
K3 generating functions from quasimodular q-expansions, the four-number
class calculus of surface-line-bundle pairs, and the multiplicative fit
producing the universal polynomials T_r and the B-series of the
Gottsche-Yau-Zaslow product.  All arithmetic is exact rational.
"""

from .cobordism import (
    AltPairClass,
    DecompCoefficients,
    DoublePointData,
    InvariantError,
    PairClass,
    STANDARD_BASIS,
    close_relation,
    convert,
    convert_back,
    decompose,
    hirzebruch,
    is_basis,
    k3_primitive,
    plane,
    quadric,
    reconstruct,
)
from .quasimodular import (
    FormCatalog,
    d2g2,
    delta_d2g2_over_q2,
    dg2,
    dg2_over_q,
    discriminant_delta,
    eisenstein_g2,
    k3_generating,
    sigma1,
)
from .series import (
    NonUnitDivisorError,
    NormalizationError,
    PowerSeries,
    SeriesError,
    ValuationError,
)
from .severi import (
    AmplenessThresholdError,
    NodePolyReport,
    ProfileWeightMismatchError,
    SeveriKey,
    SeveriTable,
    TangencyProfile,
    node_poly_check,
    p2_series,
    severi,
    severi_relative,
)
from .universal import (
    FitConfig,
    FitConfigError,
    GYZFit,
    MultiplicativeFit,
    UniversalPolynomial,
    ValidationReport,
    default_config,
    evaluate,
    fit_A,
    fit_B,
    genus_series,
    k3_series_in_x,
    universal_T,
    validate_p2,
)

__all__ = [
    "AltPairClass",
    "AmplenessThresholdError",
    "DecompCoefficients",
    "DoublePointData",
    "FitConfig",
    "FitConfigError",
    "FormCatalog",
    "GYZFit",
    "InvariantError",
    "MultiplicativeFit",
    "NodePolyReport",
    "NonUnitDivisorError",
    "NormalizationError",
    "PairClass",
    "PowerSeries",
    "ProfileWeightMismatchError",
    "STANDARD_BASIS",
    "SeriesError",
    "SeveriKey",
    "SeveriTable",
    "TangencyProfile",
    "UniversalPolynomial",
    "ValidationReport",
    "ValuationError",
    "close_relation",
    "convert",
    "convert_back",
    "d2g2",
    "decompose",
    "default_config",
    "delta_d2g2_over_q2",
    "dg2",
    "dg2_over_q",
    "discriminant_delta",
    "eisenstein_g2",
    "evaluate",
    "fit_A",
    "fit_B",
    "genus_series",
    "hirzebruch",
    "is_basis",
    "k3_generating",
    "k3_primitive",
    "k3_series_in_x",
    "node_poly_check",
    "p2_series",
    "plane",
    "quadric",
    "reconstruct",
    "severi",
    "severi_relative",
    "sigma1",
    "universal_T",
    "validate_p2",
]

__version__ = "0.1.0"
