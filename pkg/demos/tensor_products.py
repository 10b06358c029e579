"""Tensor products: the group law on degree-0 line bundles and a twisted mixed sheaf.

Run with ``python3 demos/tensor_products.py``.
"""

from collections import Counter

from nodalcurves import decode_normalization, make_band, normalization_tensor, tensor
from nodalcurves.fields import ExactField
from nodalcurves.fixtures import NODAL, W0, W32

F = ExactField(101)

for lam, mu in [(2, 3), (10, 50), (100, 100)]:
    out = tensor(make_band(W0(), 1, lam, NODAL, F), make_band(W0(), 1, mu, NODAL, F)).expanded()
    print(f"L({lam}) x L({mu}) = L({out[0].eigenvalue})   [{lam * mu % 101} expected]")

mixed = make_band(W32(), 1, 3, NODAL, F)
twisted = tensor(mixed, make_band(W0(), 1, 5, NODAL, F)).expanded()[0]
print("\nmixed sheaf twisted by L(5): eigenvalue", mixed.eigenvalue, "->", twisted.eigenvalue)

square = tensor(mixed, mixed)
print(f"its tensor square splits into {len(square.expanded())} indecomposables")

got = Counter()
for d, k in square.summands:
    for s, c in decode_normalization(d).items():
        got[s] += c * k
want = Counter()
norm = decode_normalization(mixed)
for a, i in norm.items():
    for b, j in norm.items():
        for s, c in normalization_tensor(a, b).items():
            want[s] += c * i * j
print("normalization of the square matches the pairwise products:", got == want)
