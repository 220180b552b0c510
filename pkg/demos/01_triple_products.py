"""Tour of the algebra layer: kinds, elements, and the triple product.

Run:  python demos/01_triple_products.py
"""
import numpy as np

from hjts import (
    Element,
    TypeI,
    TypeII,
    TypeIV,
    Product,
    ambient_dim,
    bergman_operator,
    box_operator,
    format_kind,
    genus,
    jordan_residual,
    parse_kind,
    rank,
    triple_product,
)

rng = np.random.default_rng(0)


def random_element(kind, scale=1.0):
    n = ambient_dim(kind)
    return Element(kind, scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n)))


print("=== kinds and their invariants ===")
for text in ("I:2,3", "II:4", "III:3", "IV:5", "prod(I:1,1;IV:3)"):
    kind = parse_kind(text)
    print(f"  {text:>18s}: dim {ambient_dim(kind):2d},  rank {rank(kind)},  genus {genus(kind)}")

print()
print("=== the triple product on 2x2 matrices ===")
kind = TypeI(2, 2)
u, v, w = (random_element(kind) for _ in range(3))
out = triple_product(u, v, w)
um, vm, wm = (e.coords.reshape(2, 2) for e in (u, v, w))
print("  {u,v,w} matches U V* W + W V* U:",
      np.allclose(out.coords.reshape(2, 2), um @ vm.conj().T @ wm + wm @ vm.conj().T @ um))
print("  symmetric in outer slots:      ",
      np.allclose(out.coords, triple_product(w, v, u).coords))

print()
print("=== the Jordan identity holds everywhere ===")
for kind in (TypeI(2, 3), TypeII(5), TypeIV(4), Product((TypeI(1, 1), TypeIV(3)))):
    five = [random_element(kind) for _ in range(5)]
    print(f"  {format_kind(kind):>18s}: residual {jordan_residual(*five):.2e}")

print()
print("=== derived operators at a tripotent ===")
kind = TypeI(2, 2)
e = Element(kind, np.array([1.0, 0, 0, 0], dtype=complex))   # E11
print("  {e,e,e} = 2e:        ", np.allclose(triple_product(e, e, e).coords, 2 * e.coords))
print("  box eigenvalue on e:  ", (box_operator(e).matrix @ e.coords)[0].real)
print("  B(e,e) annihilates e: ",
      np.allclose(bergman_operator(e, e)(e).coords, 0.0))
