"""The symplectic duality map between a bounded domain and its flat ambient space.

``psi`` maps a domain point z to B(z,z)^(-1/4) z in the ambient space and
``psi_inverse`` maps back via B(u,-u)^(-1/4) u.  Each direction can be
evaluated along three independent routes (Bergman power, box-operator power,
spectral resolution); they agree to high accuracy on valid inputs, and the
``*_route_spread`` helpers turn any disagreement beyond 1e-7 into a hard
internal-consistency failure.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import ConsistencyError, ContractError, DomainError
from .jts import (
    Element,
    bergman_operator,
    box_operator,
    embed,
    in_domain,
    isotropy_action,
    restrict,
)
from .kinds import JTSKind, format_kind
from .linalg import frobenius, hermitian_power
from .spectral import spectral_decompose

__all__ = [
    "DualityRoute",
    "psi",
    "psi_inverse",
    "psi_route_spread",
    "psi_inverse_route_spread",
    "check_equivariance",
    "check_hereditary",
]

#: Relative spread between routes above which the implementation is considered
#: internally inconsistent (an order of magnitude of slack over the 1e-9 the
#: routes are expected to achieve).
ROUTE_AGREEMENT_LIMIT = 1e-7


class DualityRoute(enum.Enum):
    """Computation route for :func:`psi` / :func:`psi_inverse`.

    BERGMAN_QUARTER   B(z,z)^(-1/4) z          (the defining formula)
    BOX_HALF          (id - z box z)^(-1/2) z  (one Hermitian power; default)
    SPECTRAL          sum_j lambda_j (1 - lambda_j^2)^(-1/2) c_j
    """

    BERGMAN_QUARTER = "bergman-quarter"
    BOX_HALF = "box-half"
    SPECTRAL = "spectral"


def psi(z: Element, route: DualityRoute = DualityRoute.BOX_HALF) -> Element:
    """Map a domain point to the ambient space.

    Raises DomainError when z lies on or outside the domain boundary
    (largest spectral value >= 1).
    """
    if not in_domain(z):
        raise DomainError(
            f"psi needs an interior point of the {format_kind(z.kind)} domain "
            "(largest spectral value must be < 1)"
        )
    if route is DualityRoute.BERGMAN_QUARTER:
        b = bergman_operator(z, z).matrix
        coords = hermitian_power(b, -0.25) @ z.coords
    elif route is DualityRoute.BOX_HALF:
        n = z.coords.size
        contraction = np.eye(n, dtype=np.complex128) - box_operator(z).matrix
        coords = hermitian_power(contraction, -0.5) @ z.coords
    elif route is DualityRoute.SPECTRAL:
        dec = spectral_decompose(z)
        coords = np.zeros_like(z.coords)
        for lam, c in zip(dec.values, dec.frame):
            coords = coords + (lam / np.sqrt(1.0 - lam * lam)) * c.coords
    else:  # pragma: no cover - enum exhausted above
        raise ContractError(f"unknown duality route {route!r}")
    return Element(z.kind, coords)


def psi_inverse(u: Element, route: DualityRoute = DualityRoute.BOX_HALF) -> Element:
    """Map any ambient point back into the domain.

    Defined on the whole ambient space; the image always satisfies
    ``in_domain`` because mu/(1+mu^2)^(1/2) < 1 for every spectral value mu.
    """
    if route is DualityRoute.BERGMAN_QUARTER:
        b = bergman_operator(u, Element(u.kind, -u.coords)).matrix
        coords = hermitian_power(b, -0.25) @ u.coords
    elif route is DualityRoute.BOX_HALF:
        n = u.coords.size
        expansion = np.eye(n, dtype=np.complex128) + box_operator(u).matrix
        coords = hermitian_power(expansion, -0.5) @ u.coords
    elif route is DualityRoute.SPECTRAL:
        dec = spectral_decompose(u)
        coords = np.zeros_like(u.coords)
        for mu, c in zip(dec.values, dec.frame):
            coords = coords + (mu / np.sqrt(1.0 + mu * mu)) * c.coords
    else:  # pragma: no cover - enum exhausted above
        raise ContractError(f"unknown duality route {route!r}")
    return Element(u.kind, coords)


def _spread(images: list[np.ndarray], scale: float, label: str) -> float:
    worst = 0.0
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            worst = max(worst, frobenius(images[i] - images[j]) / scale)
    if worst > ROUTE_AGREEMENT_LIMIT:
        raise ConsistencyError(
            f"{label} routes disagree by {worst:.3e} "
            f"(limit {ROUTE_AGREEMENT_LIMIT:.1e})"
        )
    return worst


def psi_route_spread(z: Element) -> float:
    """Largest pairwise disagreement of the three psi routes, relative to max(1, |z|).

    Raises ConsistencyError when the spread exceeds 1e-7.
    """
    images = [psi(z, route).coords for route in DualityRoute]
    return _spread(images, max(1.0, z.norm()), "psi")


def psi_inverse_route_spread(u: Element) -> float:
    """Largest pairwise disagreement of the three psi_inverse routes.

    Relative to max(1, |u|); raises ConsistencyError above 1e-7.
    """
    images = [psi_inverse(u, route).coords for route in DualityRoute]
    return _spread(images, max(1.0, u.norm()), "psi_inverse")


def check_equivariance(params, z: Element) -> float:
    """Residual of psi(tau z) = tau psi(z) for an isotropy tau, relative to max(1, |z|)."""
    moved = psi(isotropy_action(params, z))
    expected = isotropy_action(params, psi(z))
    return frobenius(moved.coords - expected.coords) / max(1.0, z.norm())


def check_hereditary(sub: JTSKind, super_: JTSKind, z: Element) -> float:
    """Residual of the hereditary property for a subtriple embedding.

    Embeds z into the bigger system, applies psi there, and measures both the
    mismatch against the embedded image of the small psi and the part of the
    big image that sticks out of the embedded subspace.  Returns the larger of
    the two, relative to max(1, |z|).
    """
    if z.kind != sub:
        raise ContractError(
            f"element lives in {format_kind(z.kind)}, expected {format_kind(sub)}"
        )
    lifted = embed(sub, super_, z)
    image = psi(lifted)
    expected = embed(sub, super_, psi(z))
    mismatch = frobenius(image.coords - expected.coords)
    # Projection onto the embedded subspace and back; any discrepancy means the
    # image failed to stay inside it.
    projected = embed(sub, super_, restrict(sub, super_, image))
    leakage = frobenius(projected.coords - image.coords)
    return max(mismatch, leakage) / max(1.0, z.norm())
