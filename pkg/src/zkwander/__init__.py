"""Counterexamples to the wandering property for z^k-invariant subspaces
in weighted Hardy-type coefficient spaces, with exact certificates.
"""

from .certify import (Certificate, check_certificate, cross_check,
                      save_certificate, verify)
from .errors import (CertificateError, DegeneratePairError,
                     DegenerateReductionError, DegenerateZ3Error,
                     InvalidPatternError, ModeUnsupportedError,
                     NoAdmissibleSystemError, NotOrthogonalError,
                     RegisterTooLargeError, SingularSystemError,
                     ZkwanderError)
from .model import (AQuantities, DegreePattern, GeneratorPair, compute_A,
                    construct_F3, construct_F4, inner_product, norm_sq)
from .recovery import (RecoveredParameters, attach_register, auto_register,
                       choose_A15, choose_Z3, max_register_estimate, recover)
from .reduction import (CQuantities, ReducedSystem, b0_minimum, compute_C,
                        objective_B0, objective_B1, objective_B2,
                        reduce_system, split_e, z1_star)
from .scalars import FLOAT, INTERVAL, RATIONAL, Interval, Radical
from .search import SearchConfig, SearchResult, minimize, reproduce_table
from .weights import (WeightSequence, custom, dirichlet, lint_weights,
                      override_block, perturbed, weight)

__version__ = "0.1.0"

__all__ = [
    "AQuantities", "Certificate", "CertificateError", "CQuantities",
    "DegeneratePairError", "DegenerateReductionError", "DegenerateZ3Error",
    "DegreePattern", "FLOAT", "GeneratorPair", "INTERVAL", "Interval",
    "InvalidPatternError", "ModeUnsupportedError", "NoAdmissibleSystemError",
    "NotOrthogonalError", "RATIONAL", "Radical", "RecoveredParameters",
    "ReducedSystem", "RegisterTooLargeError", "SearchConfig", "SearchResult",
    "SingularSystemError", "WeightSequence", "ZkwanderError",
    "attach_register", "auto_register", "b0_minimum", "check_certificate",
    "choose_A15", "choose_Z3", "compute_A", "compute_C", "construct_F3",
    "construct_F4", "cross_check", "custom", "dirichlet", "inner_product",
    "lint_weights", "max_register_estimate", "minimize", "norm_sq",
    "objective_B0", "objective_B1", "objective_B2", "override_block",
    "perturbed", "recover", "reduce_system", "reproduce_table",
    "save_certificate", "split_e", "verify", "weight", "z1_star",
]
