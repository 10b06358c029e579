"""Named example words.

``W0``   the degree-0 line bundle band on the nodal cubic.
``W31``  two line bundle classes of degrees 0 and n (rank-2 bundle).
``W32``  a mixed sheaf: line bundles plus torsion at both branches.
``W34``  the 40-letter band with a degree-1 line bundle (bounded, not a sheaf).
``W35``  a two-sided string with line bundles in every degree (unbounded).
``WK0``  the skyscraper at the node: length-1 torsion in every degree.
``WO``   the structure sheaf of a chain of two lines.
``WTF``  a torsion-free sheaf on a chain of two lines that is not a bundle.
"""

from __future__ import annotations

from .curves import INF, ZERO, E, F, make_curve
from .words import Tail, Word, closed_word, make_band, make_string, open_word

NODAL = make_curve("nodal-cubic")
CHAIN1 = make_curve("chain", 1)
X = 0


def e0(comp, pt, deg, n):
    return E(comp, pt, deg, 0, n)


def head(comp, pt, deg, k):
    return E(comp, pt, deg, 1, -k)


def tail(comp, pt, deg, k):
    return E(comp, pt, deg, -1, k)


def W0(n: int = 0) -> Word:
    return closed_word([e0(X, ZERO, 0, n), F(X, ZERO, 0), F(X, INF, 0), e0(X, INF, 0, n)])


def W31(n: int = 1) -> Word:
    return closed_word([
        e0(X, ZERO, 0, 0), F(X, ZERO, 0), F(X, INF, 0), e0(X, INF, 0, n),
        e0(X, ZERO, 0, n), F(X, ZERO, 0), F(X, INF, 0), e0(X, INF, 0, 0),
    ])


def W32() -> Word:
    a, b = ZERO, INF
    return closed_word([
        e0(X, a, 0, 0), F(X, a, 0), F(X, b, 0), head(X, b, 0, 1),
        tail(X, b, 1, 1), F(X, b, 1), F(X, a, 1), tail(X, a, 1, 2),
        head(X, a, 0, 2), F(X, a, 0), F(X, b, 0), e0(X, b, 0, 0),
        e0(X, a, 0, 0), F(X, a, 0), F(X, b, 0), head(X, b, 0, 4),
        tail(X, b, 1, 4), F(X, b, 1), F(X, a, 1), tail(X, a, 1, 5),
        head(X, a, 0, 5), F(X, a, 0), F(X, b, 0), e0(X, b, 0, -3),
        e0(X, a, 0, -3), F(X, a, 0), F(X, b, 0), e0(X, b, 0, 0),
    ])


def W34() -> Word:
    a, b = ZERO, INF
    return closed_word([
        e0(X, a, 0, -1), F(X, a, 0), F(X, b, 0), e0(X, b, 0, 1),
        e0(X, a, 0, 1), F(X, a, 0), F(X, b, 0), head(X, b, 0, 2),
        tail(X, b, 1, 2), F(X, b, 1), F(X, a, 1), tail(X, a, 1, 1),
        head(X, a, 0, 1), F(X, a, 0), F(X, b, 0), head(X, b, 0, 4),
        tail(X, b, 1, 4), F(X, b, 1), F(X, a, 1), e0(X, a, 1, 0),
        e0(X, b, 1, 0), F(X, b, 1), F(X, a, 1), head(X, a, 1, 2),
        tail(X, a, 2, 2), F(X, a, 2), F(X, b, 2), e0(X, b, 2, -2),
        e0(X, a, 2, -2), F(X, a, 2), F(X, b, 2), tail(X, b, 2, 1),
        head(X, b, 1, 1), F(X, b, 1), F(X, a, 1), tail(X, a, 1, 1),
        head(X, a, 0, 1), F(X, a, 0), F(X, b, 0), e0(X, b, 0, -1),
    ])


def WK0() -> Word:
    a, b = ZERO, INF
    right = Tail((F(X, a, 0), F(X, b, 0), head(X, b, 0, 1), tail(X, b, 1, 1),
                  F(X, b, 1), F(X, a, 1), head(X, a, 1, 1), tail(X, a, 2, 1)),
                 "-~-~-~-~", 2)
    left = Tail((tail(X, a, 1, 1), F(X, a, 1), F(X, b, 1), head(X, b, 1, 1),
                 tail(X, b, 2, 1), F(X, b, 2), F(X, a, 2), head(X, a, 2, 1)),
                "~-~-~-~-", 2)
    return open_word([head(X, a, 0, 1)], "", tail=right, left_tail=left)


def W35() -> Word:
    a, b = ZERO, INF
    prefix = [
        F(X, b, 1), F(X, a, 1), tail(X, a, 1, 2), head(X, a, 0, 2),
        F(X, a, 0), F(X, b, 0), e0(X, b, 0, 0), e0(X, a, 0, 0),
        F(X, a, 0), F(X, b, 0), head(X, b, 0, 3), tail(X, b, 1, 3),
        F(X, b, 1), F(X, a, 1), e0(X, a, 1, -1), e0(X, b, 1, -1),
        F(X, b, 1), F(X, a, 1), head(X, a, 1, 3), tail(X, a, 2, 3),
        F(X, a, 2), F(X, b, 2), e0(X, b, 2, 2), e0(X, a, 2, 2),
        F(X, a, 2), F(X, b, 2), head(X, b, 2, 1),
    ]
    links = "".join("~" if i % 2 == 0 else "-" for i in range(len(prefix) - 1))
    right = Tail((tail(X, b, 3, 1), F(X, b, 3), F(X, a, 3), e0(X, a, 3, 2),
                  e0(X, b, 3, 2), F(X, b, 3), F(X, a, 3), head(X, a, 3, 1),
                  tail(X, a, 4, 1), F(X, a, 4), F(X, b, 4), e0(X, b, 4, 2),
                  e0(X, a, 4, 2), F(X, a, 4), F(X, b, 4), head(X, b, 4, 1)),
                 "~-~-~-~-" * 2, 2)
    left = Tail((head(X, b, 1, 1), tail(X, b, 2, 1), F(X, b, 2), F(X, a, 2),
                 head(X, a, 2, 1), tail(X, a, 3, 1), F(X, a, 3), F(X, b, 3)),
                "-~-~-~-~", 2)
    return open_word(prefix, links, tail=right, left_tail=left)


def WO() -> Word:
    return open_word([e0(0, INF, 0, 0), F(0, INF, 0), F(1, ZERO, 0), e0(1, ZERO, 0, 0)])


def WTF() -> Word:
    l1, l2 = 0, 1
    right = Tail((tail(l2, ZERO, 1, 1), F(l2, ZERO, 1), F(l1, INF, 1), head(l1, INF, 1, 1),
                  tail(l1, INF, 2, 1), F(l1, INF, 2), F(l2, ZERO, 2), head(l2, ZERO, 2, 1)),
                 "~-~-~-~-", 2)
    return open_word([e0(l1, INF, 0, 0), F(l1, INF, 0), F(l2, ZERO, 0), head(l2, ZERO, 0, 1)],
                     tail=right)


def fixture_data(name: str, field=None, eigenvalue=2, m: int = 1):
    """Band or string datum for a named fixture."""
    from .fields import QQ
    fld = field or QQ
    bands = {"W0": W0, "W31": W31, "W32": W32, "W34": W34}
    strings = {"W35": (W35, NODAL), "WK0": (WK0, NODAL), "WO": (WO, CHAIN1), "WTF": (WTF, CHAIN1)}
    if name in bands:
        return make_band(bands[name](), m, eigenvalue, NODAL, fld)
    build, config = strings[name]
    return make_string(build(), config)


FIXTURE_NAMES = ("W0", "W31", "W32", "W34", "W35", "WK0", "WO", "WTF")
