"""Exact computation of characteristic classes on Hilbert schemes of points.

States live in the Fock space spanned by Nakajima creation operators acting on
the vacuum; recursions in the number of points produce the Chern character and
Chern classes of tautological bundles and the Chern character of the tangent
bundle, from which the universal partition-indexed coefficients are read off.
"""

from .closed_forms import (
    NotInvertible,
    PowerSeries1,
    oracle_coeff,
    ps_reverse,
    psi_tangent,
    psi_taut,
)
from .fock import (
    FockAlgebra,
    FockState,
    Gen,
    NonVacuumWord,
    OperatorExpr,
    L,
    Q,
    d,
    join,
    normalize,
    q,
    state_product,
    vac,
)
from .partitions import Partition, partition_concat, partition_stats, partitions_of
from .recursions import Recursions, ch_tangent, ch_taut, ch_taut_dual, chern_taut
from .series import (
    CoefficientTable,
    NonlinearResidual,
    NotGroupLike,
    WeightSeries,
    divide_by_unit,
    extract_exponential,
    extract_linear,
    multiply_by_unit,
    series_exp,
    series_log,
    unit_series,
)
from .surface import (
    C,
    D,
    E,
    I,
    K,
    ZERO,
    Marker,
    MarkerIds,
    Mono,
    Profile,
    SurfaceClass,
    UnpairedMarker,
    cup,
    kunneth_split,
    specialize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
