"""Rigidity spectra, algebraic connectivity bounds and a_d(G) estimation.

Thin re-export of the compiled ``_core`` extension. Positions are numpy
arrays of shape (n, d); graphs are built from a vertex count and a list of
(i, j) pairs.
"""

from ._core import (
    BoundReport,
    Framework,
    Graph,
    InternalError,
    InvalidInput,
    OutOfDomain,
    __version__,
    algebraic_connectivity,
    ceiling_index,
    complete,
    complete_bipartite,
    cycle,
    eigh,
    erdos_renyi,
    estimate_ad,
    is_infinitesimally_rigid,
    jordan_bound_check,
    laplacian,
    lemma1_check,
    lemma2_check,
    lew_bounds,
    objective,
    path,
    rigidity_eigenvalue,
    rigidity_matrix,
    stiffness_matrix,
    stiffness_spectrum,
    theorem_check,
    trivial_basis,
    witness_rotation,
    witness_verify,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
