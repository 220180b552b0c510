"""The duality point map: three formulas, one diffeomorphism.

Run:  python demos/03_point_map.py
"""
import numpy as np

from hjts import (
    DualityRoute,
    Element,
    TypeI,
    TypeIII,
    ambient_dim,
    check_equivariance,
    check_hereditary,
    psi,
    psi_inverse,
    psi_route_spread,
    sample_domain,
    spectral_decompose,
)
from hjts.harness import random_isotropy
from hjts.linalg import frobenius

rng = np.random.default_rng(2)

print("=== the one-disc picture is a hand calculation ===")
kind = TypeI(1, 1)
for t in (0.0, 0.3, 0.6, 0.9):
    image = psi(Element(kind, np.array([t], dtype=complex)))
    print(f"  psi({t:.1f}) = {image.coords[0].real:.6f}"
          f"   (closed form {t/np.sqrt(1-t*t) if t < 1 else float('inf'):.6f})")

print()
print("=== three routes, one value ===")
kind = TypeIII(3)
z = sample_domain(kind, rng, 0.9)
for route in DualityRoute:
    print(f"  {route.value:>15s}: |psi(z)| = {frobenius(psi(z, route).coords):.12f}")
print(f"  max pairwise spread: {psi_route_spread(z):.2e}")

print()
print("=== round trips ===")
back = psi_inverse(psi(z))
print("  psi_inverse(psi(z)) - z:", frobenius(back.coords - z.coords))
u = Element(kind, 5.0 * (rng.standard_normal(6) + 1j * rng.standard_normal(6)))
forth = psi(psi_inverse(u))
print("  psi(psi_inverse(u)) - u:", frobenius(forth.coords - u.coords),
      " (u far outside the bounded domain)")

print()
print("=== the map acts on spectral values only ===")
dec = spectral_decompose(z)
image = psi(z)
expected = sum((l / np.sqrt(1 - l * l)) * c.coords for l, c in zip(dec.values, dec.frame))
print("  psi(z) = sum lambda/sqrt(1-lambda^2) c:", np.allclose(image.coords, expected))
print("  bounded values: ", np.round(dec.values, 4))
print("  unbounded ones: ", np.round(spectral_decompose(image).values, 4))

print()
print("=== naturality ===")
params = random_isotropy(kind, rng)
print("  equivariance residual:", f"{check_equivariance(params, z):.2e}")
sub = TypeI(1, 1)
z_sub = sample_domain(sub, rng, 0.9)
print("  hereditary residual (I:1,1 inside I:2,2):",
      f"{check_hereditary(sub, TypeI(2, 2), z_sub):.2e}")
