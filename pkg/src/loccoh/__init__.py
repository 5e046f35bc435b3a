"""Exact local cohomology of monomial data, local homology over Z at p, and finite-dimensional Gorenstein checks."""
from .errors import (CertificateFailed, ComputationError, EmptyIdeal, LiftFailed, LoccohError,
                     NotStabilized, OutsideClass, RadicalsDiffer, SchemaError)
from .ext_oracle import compare_oracles, ext_dims, stable_ext, taylor_resolution
from .findim import (FinDimAlgebra, exterior_algebra, ext_algebra, ext_k_A, frobenius_check,
                     gorenstein_report, group_algebra, minimal_resolution, monomial_algebra, socle_dim)
from .koszul_cech import (cech_cohomology, koszul_colimit_cohomology, les_check, local_cohomology,
                          radical_invariance_check, vanishing_report)
from .linalg import QQ, Field
from .monomials import MonomialIdeal, RingSpec
from .tables import CheckReport, DegreeBox, DegreeTable
from .zmod import PLocalObject, functor_laws_check, gamma_p, hom_ext, lambda_p, verify_tables

__version__ = "0.1.0"
