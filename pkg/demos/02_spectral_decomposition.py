"""Spectral frames: every element is a weighted sum of orthogonal tripotents.

Run:  python demos/02_spectral_decomposition.py
"""
import numpy as np

from hjts import (
    Element,
    TypeI,
    TypeII,
    TypeIV,
    ambient_dim,
    bergman_operator,
    format_kind,
    generic_norms,
    genus,
    in_domain,
    m1_form,
    odd_power,
    quasi_inverse,
    spectral_decompose,
    triple_product,
)
from hjts.linalg import det, frobenius

rng = np.random.default_rng(1)

kind = TypeII(5)
n = ambient_dim(kind)
z = Element(kind, 0.4 * (rng.standard_normal(n) + 1j * rng.standard_normal(n)))

print(f"=== decomposing a random element of {format_kind(kind)} ===")
dec = spectral_decompose(z)
print("  spectral values:", np.round(dec.values, 6))
print("  reconstruction: ", frobenius(dec.reconstruct().coords - z.coords))
for i, c in enumerate(dec.frame):
    tri = frobenius(triple_product(c, c, c).coords - 2.0 * c.coords)
    print(f"  frame[{i}]: tripotent residual {tri:.1e}, "
          f"m1 norm {abs(m1_form(c, c)):.6f}")

print()
print("=== generic norms feed the Bergman determinant ===")
norm_minus, norm_plus = generic_norms(z)
g = genus(kind)
db = det(bergman_operator(z, z).matrix).real
print(f"  N(z)   = {norm_minus:.10f}")
print(f"  N*(z)  = {norm_plus:.10f}")
print(f"  det B(z,z) = {db:.10f}  vs  N^g = {norm_minus**g:.10f}   (g = {g})")

print()
print("=== odd functional calculus ===")
kind = TypeIV(4)
z = Element(kind, 0.3 * (rng.standard_normal(4) + 1j * rng.standard_normal(4)))
dec = spectral_decompose(z)
cube = odd_power(z, 1)                     # z^(3)
spec = sum(l**3 * c.coords for l, c in zip(dec.values, dec.frame))
print("  z^(3) equals sum lambda^3 c:", np.allclose(cube.coords, spec))

qi = quasi_inverse(z)
spec = sum((l / (1 - l * l)) * c.coords for l, c in zip(dec.values, dec.frame))
print("  quasi-inverse equals sum lambda/(1-lambda^2) c:", np.allclose(qi.coords, spec))

print()
print("=== the domain is exactly {lambda_1 < 1} ===")
kind = TypeI(2, 2)
for s in (0.5, 0.99, 1.01):
    e = Element(kind, np.array([s, 0, 0, 0], dtype=complex))
    print(f"  lambda_1 = {s:.2f}: in_domain = {in_domain(e)}")
