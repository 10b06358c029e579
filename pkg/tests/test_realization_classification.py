import math
from collections import Counter
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalcurves import (LineBundle, QQ, StringData, TorsionComplex, check_restrictions, classify,
                         decode_normalization, direct_sum, enumerate_data, homological_dimension,
                         is_bounded, is_coherent, is_skyscraper, is_torsion_free, is_vector_bundle,
                         make_band, make_curve, rank, realize)
from nodalcurves.curves import INF, ZERO
from nodalcurves.errors import NotCoherent, WindowTooSmall
from nodalcurves.fields import ExactField
from nodalcurves.fixtures import CHAIN1, NODAL, W0, W31, fixture_data
from nodalcurves.realization import empty_representation
from nodalcurves.words import max_prefix_degree

F101 = ExactField(101)
X = 0


def test_line_bundle_band_matrices():
    r = realize(make_band(W0(), 1, 5, NODAL, F101), F101, 0)
    assert r.matrices == {(X, ZERO, 0): ((1,),), (X, INF, 0): ((5,),)}
    assert check_restrictions(r) == []
    r2 = realize(make_band(W0(), 2, 5, NODAL, F101), F101, 0)
    assert r2.matrices[(X, ZERO, 0)] == ((1, 0), (0, 1))
    assert r2.matrices[(X, INF, 0)] == ((5, 1), (0, 5))


def test_rank_two_bundle_matrices():
    r = realize(make_band(W31(), 1, 7, NODAL, QQ), QQ, 0)
    a, b = r.matrices[(X, ZERO, 0)], r.matrices[(X, INF, 0)]
    assert sorted(v for row in a for v in row) == [0, 0, 1, 1]
    assert sorted(v for row in b for v in row) == [0, 0, 1, 7]
    assert QQ.is_invertible(a) and QQ.is_invertible(b)


def test_restriction_violations():
    r = realize(make_band(W0(), 1, 5, NODAL, F101), F101, 0)
    bad = replace(r, matrices={**r.matrices, (X, ZERO, 0): ((0,),)})
    assert any("matrix not invertible" in v for v in check_restrictions(bad))
    r = realize(fixture_data("W32", field=F101), F101, 1)
    site = (X, ZERO, 1)
    (x1, _), (x2, _) = r.rows[site]
    bad = replace(r, rows={**r.rows, site: ((x1, 2), (x2, 0))})
    assert any("conjugated strip size mismatch" in v for v in check_restrictions(bad))


def test_tailed_fixtures_realize_in_windows():
    for name in ("WK0", "WTF", "W35"):
        d = fixture_data(name)
        top = max_prefix_degree(d.word)
        for window in range(top, 7):
            assert check_restrictions(realize(d, F101, window)) == [], (name, window)
        if top:
            with pytest.raises(WindowTooSmall):
                realize(d, F101, top - 1)


POOL = [d for c in (NODAL, CHAIN1, make_curve("cycle", 1))
        for d in enumerate_data(c, 10, 2, F101, multiplicities=(1, 2))]


@settings(max_examples=40)
@given(st.sampled_from(POOL), st.sampled_from(POOL))
def test_direct_sum_adds_dimensions(d1, d2):
    r1, r2 = realize(d1, F101, 2), realize(d2, F101, 2)
    if d1.config != d2.config:
        return
    s = direct_sum(r1, r2)
    assert check_restrictions(s) == []
    assert s.total_dim() == r1.total_dim() + r2.total_dim()
    for site, (rows, cols) in s.dims().items():
        a = r1.dims().get(site, (0, 0))
        b = r2.dims().get(site, (0, 0))
        assert (rows, cols) == (a[0] + b[0], a[1] + b[1])
    assert direct_sum(r1, empty_representation(d1.config, F101, 2)).matrices == r1.matrices


def test_normalizations():
    assert decode_normalization(make_band(W0(), 1, 3, NODAL)) == Counter({LineBundle(X, 0, 0): 1})
    assert decode_normalization(make_band(W31(), 1, 3, NODAL)) == Counter(
        {LineBundle(X, 0, 0): 1, LineBundle(X, 1, 0): 1})
    n = 3
    expected = Counter({
        LineBundle(X, -2, -2): n, TorsionComplex(X, ZERO, 2, -1): n, TorsionComplex(X, INF, 1, -1): n,
        LineBundle(X, 0, -1): n, TorsionComplex(X, ZERO, 1, 0): 2 * n, TorsionComplex(X, INF, 2, 0): n,
        TorsionComplex(X, INF, 4, 0): n, LineBundle(X, -1, 0): n, LineBundle(X, 1, 0): n,
    })
    assert decode_normalization(fixture_data("W34", m=n)) == expected
    w32 = decode_normalization(fixture_data("W32"))
    assert w32 == Counter({LineBundle(X, 0, 0): 2, LineBundle(X, -3, 0): 1,
                           TorsionComplex(X, ZERO, 2, 0): 1, TorsionComplex(X, ZERO, 5, 0): 1,
                           TorsionComplex(X, INF, 1, 0): 1, TorsionComplex(X, INF, 4, 0): 1})


def test_predicates_on_fixtures():
    w31, w34, wk0, w35, wo, wtf = (fixture_data(n) for n in ("W31", "W34", "WK0", "W35", "WO", "WTF"))
    assert is_vector_bundle(w31) and rank(w31) == {"X": 2}
    assert not is_coherent(w34) and is_bounded(w34)
    assert is_coherent(wk0) and is_skyscraper(wk0) and not is_vector_bundle(wk0)
    assert not is_torsion_free(wk0) and homological_dimension(wk0) == math.inf
    assert not is_bounded(w35)
    assert is_vector_bundle(wo) and rank(wo) == {"L1": 1, "L2": 1}
    assert is_torsion_free(wtf) and not is_vector_bundle(wtf)
    assert not is_skyscraper(make_band(W0(), 1, 2, NODAL))
    assert is_coherent(make_band(W0(), 1, 2, NODAL))
    with pytest.raises(NotCoherent):
        homological_dimension(w34)


def test_free_torsion_summand():
    from nodalcurves.words import Word
    d = StringData(NODAL, Word(), (TorsionComplex(X, "x", 3, 0),))
    assert is_skyscraper(d) and homological_dimension(d) == 1


def test_reports():
    r = classify(fixture_data("W31"))
    assert (r.coherent, r.bounded, r.vector_bundle, r.torsion_free, r.homological_dimension) == \
        (True, True, True, True, 0)
    r = classify(fixture_data("W32", m=2))
    assert (r.coherent, r.mixed, r.homological_dimension) == (True, True, 1)
    r = classify(fixture_data("W34"))
    assert (r.bounded, r.coherent, r.homological_dimension) == (True, False, None)


def test_every_finite_datum_is_bounded():
    assert all(is_bounded(d) for d in POOL)
