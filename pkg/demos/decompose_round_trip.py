"""Hide a direct sum behind a random change of basis, then recover its pieces.

Run with ``python3 demos/decompose_round_trip.py``.
"""

from nodalcurves import (apply_certificate, decompose, direct_sum, make_band, random_certificate,
                         realize, verify_equivalence)
from nodalcurves.fields import ExactField
from nodalcurves.fixtures import NODAL, W0, fixture_data

F = ExactField(101)

pieces = [
    fixture_data("W32", field=F, eigenvalue=3),
    make_band(W0(), 2, 5, NODAL, F),          # a Jordan block, which must not split
    make_band(W0(1), 1, (3, 0, 1), NODAL, F),  # eigenvalue t^2 + 3, no root in F_101
]
rep = realize(pieces[0], F)
for d in pieces[1:]:
    rep = direct_sum(rep, realize(d, F))
print("total dimension", rep.total_dim())

scrambled = apply_certificate(rep, random_certificate(rep, seed=2024))
result = decompose(scrambled)
for d, k in result.summands:
    print(f"  {k} x band of {len(d.word.letters)} letters, multiplicity {d.multiplicity}, "
          f"eigenvalue {d.eigenvalue}")

print("witness checks out:", verify_equivalence(scrambled, result.target, result.witness).ok)
