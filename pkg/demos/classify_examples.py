"""Walk through the named example words and what their words say about them.

Run with ``python3 demos/classify_examples.py``.
"""

from nodalcurves import classify, realize
from nodalcurves.fields import QQ
from nodalcurves.fixtures import FIXTURE_NAMES, fixture_data


def describe(report):
    if report.vector_bundle:
        kind = "vector bundle"
    elif report.skyscraper:
        kind = "skyscraper sheaf"
    elif report.torsion_free:
        kind = "torsion-free sheaf"
    elif report.mixed:
        kind = "mixed sheaf"
    elif report.bounded:
        kind = "bounded complex, not a sheaf"
    else:
        kind = "unbounded complex"
    hd = report.homological_dimension
    return f"{kind}; homological dimension {hd if hd is not None else 'n/a'}; rank {report.rank}"


for name in FIXTURE_NAMES:
    d = fixture_data(name)
    word = d.word
    shape = "closed" if word.closed else ("tailed" if not word.is_finite else "open")
    print(f"{name:4} {len(word.letters):3} letters, {shape:6}  {describe(classify(d))}")

# The realization of the rank-2 bundle: two invertible 2x2 matrices glue the fibres
# over the two preimages of the node.
rep = realize(fixture_data("W31", eigenvalue=7), QQ)
print("\nW31 with eigenvalue 7:")
for site in rep.sites():
    print(" ", site, [[str(v) for v in row] for row in rep.matrices[site]])
