"""Hermitian positive Jordan triple systems and the duality between their
bounded and unbounded symmetric-space realizations.

The package is organized bottom-up:

* :mod:`hjts.kinds`    -- kind descriptors and the ``I:p,q`` grammar
* :mod:`hjts.jts`      -- elements, the triple product, and derived operators
* :mod:`hjts.spectral` -- spectral decomposition, generic norms, odd functional
  calculus
* :mod:`hjts.duality`  -- the bounded-to-unbounded point map and its inverse
* :mod:`hjts.geometry` -- Kaehler potentials, two-forms, pullback checks
* :mod:`hjts.harness`  -- seeded verification suites and JSON reports
* :mod:`hjts.cli`      -- the ``hjts`` command

The most common entry points are re-exported here.
"""
from .errors import ConsistencyError, ContractError, DomainError, HjtsError
from .kinds import (
    JTSKind,
    Product,
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    ambient_dim,
    format_kind,
    parse_kind,
    rank,
)
from .jts import (
    Element,
    bergman_operator,
    box_operator,
    d_operator,
    embed,
    embedding_target,
    genus,
    in_domain,
    isotropy_action,
    jordan_residual,
    m1_form,
    q_operator,
    restrict,
    triple_product,
    zero,
)
from .spectral import (
    SpectralDecomposition,
    generic_norms,
    odd_power,
    quasi_inverse,
    spectral_decompose,
    spectral_values,
)
from .duality import (
    DualityRoute,
    check_equivariance,
    check_hereditary,
    psi,
    psi_inverse,
    psi_inverse_route_spread,
    psi_route_spread,
)
from .geometry import (
    PotentialId,
    check_beta_exactness,
    check_flat_dbar_pullback,
    check_lemma_a1,
    check_lemma_a2,
    check_symplectic_duality,
    check_volume_duality,
    kahler_matrix,
    potential,
)
from .harness import (
    DEFAULT_KINDS,
    SUITE_NAMES,
    SuiteConfig,
    VerificationReport,
    run_suite,
    sample_domain,
)

__version__ = "0.1.0"

__all__ = [
    "HjtsError",
    "ContractError",
    "DomainError",
    "ConsistencyError",
    "JTSKind",
    "TypeI",
    "TypeII",
    "TypeIII",
    "TypeIV",
    "Product",
    "parse_kind",
    "format_kind",
    "ambient_dim",
    "rank",
    "Element",
    "zero",
    "triple_product",
    "d_operator",
    "box_operator",
    "q_operator",
    "bergman_operator",
    "m1_form",
    "genus",
    "in_domain",
    "isotropy_action",
    "embed",
    "restrict",
    "embedding_target",
    "jordan_residual",
    "SpectralDecomposition",
    "spectral_values",
    "spectral_decompose",
    "generic_norms",
    "quasi_inverse",
    "odd_power",
    "DualityRoute",
    "psi",
    "psi_inverse",
    "psi_route_spread",
    "psi_inverse_route_spread",
    "check_equivariance",
    "check_hereditary",
    "PotentialId",
    "potential",
    "kahler_matrix",
    "check_symplectic_duality",
    "check_volume_duality",
    "check_lemma_a1",
    "check_lemma_a2",
    "check_beta_exactness",
    "check_flat_dbar_pullback",
    "SuiteConfig",
    "VerificationReport",
    "run_suite",
    "sample_domain",
    "SUITE_NAMES",
    "DEFAULT_KINDS",
    "__version__",
]
