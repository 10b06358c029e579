from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalcurves import (E, F, QQ, canonical_form, compare_weights, conjugate, enumerate_data,
                         find_certificate, is_isomorphic, make_band, make_curve, make_string,
                         parse_curve, realize, truncate, validate_word)
from nodalcurves.curves import INF, ZERO, ConfigurationError, Weight, class_key
from nodalcurves.errors import CountImbalance, InvalidWord, IsPower, NotFull, ZeroEigenvalue
from nodalcurves.fields import ExactField
from nodalcurves.fixtures import CHAIN1, NODAL, W0, W31, W34, WK0, WO
from nodalcurves.words import open_word, repeat, reverse, rotate

F5 = ExactField(5)
F101 = ExactField(101)


def test_configurations():
    n = make_curve("nodal-cubic")
    assert (len(n.components), len(n.singular_points), n.sites()) == (1, 1, ((0, ZERO), (0, INF)))
    c = make_curve("chain", 1)
    assert (len(c.components), len(c.singular_points)) == (2, 1)
    y = make_curve("cycle", 1)
    assert (len(y.components), len(y.singular_points), len(y.sites())) == (2, 2, 4)
    assert parse_curve("cycle:1") == y


@pytest.mark.parametrize("text", ["bogus", "chain:0", "cycle:x", "chain"])
def test_bad_configurations(text):
    with pytest.raises(ConfigurationError):
        parse_curve(text)


def test_conjugation_examples():
    assert conjugate(E(0, INF, 0, 1, -2), NODAL) == E(0, INF, 1, -1, 2)
    assert conjugate(E(0, ZERO, 2, 0, -2), NODAL) == E(0, INF, 2, 0, -2)
    end = E(0, INF, 0, 0, 3)
    assert conjugate(end, CHAIN1) == end


letters = st.builds(lambda pt, deg, tier, mult: E(0, pt, deg + (1 if tier == -1 else 0), tier, mult),
                    st.sampled_from([ZERO, INF]), st.integers(0, 5), st.sampled_from([-1, 0, 1]),
                    st.integers(-4, 4).filter(bool))


@given(letters)
def test_conjugation_is_an_involution(x):
    assert conjugate(conjugate(x, NODAL), NODAL) == x
    assert class_key(x, NODAL) == class_key(conjugate(x, NODAL), NODAL)


def test_weight_order():
    assert compare_weights(Weight(-1, 5), Weight(0, -7)) == -1
    assert compare_weights(Weight(0, 2), Weight(0, 2)) == 0
    assert compare_weights(Weight(1, -3), Weight(0, 100)) == 1


def test_validate_word_examples():
    assert validate_word(W34(), NODAL) == [] and len(W34().letters) == 40 and W34().closed
    bad = validate_word(open_word([E(0, ZERO, 0, 0, 1), F(0, INF, 0)]), NODAL)
    assert any("Dash link sites differ" in str(v) for v in bad)
    from nodalcurves.words import Word
    bad = validate_word(Word((E(0, ZERO, 0, 0, 1), F(0, ZERO, 0), F(0, INF, 0)), "--"), NODAL)
    assert any("links must alternate" in str(v) for v in bad)


def test_band_construction_errors():
    assert make_band(W0(), 1, 5, NODAL).eigenvalue == 5
    with pytest.raises(IsPower):
        make_band(repeat(W0(), 2), 1, 5, NODAL)
    with pytest.raises(ZeroEigenvalue):
        make_band(W0(), 1, 0, NODAL)
    with pytest.raises(ValueError):
        make_band(W0(), 1, (2, 0, 1), NODAL, ExactField(3))  # t^2 + 2 = (t-1)(t+1) over F_3


def test_string_construction_errors():
    assert make_string(WO(), CHAIN1)
    with pytest.raises(CountImbalance) as err:
        make_string(open_word(WO().letters[:-1]), CHAIN1)
    assert err.value.site == (1, ZERO, 0)
    with pytest.raises((NotFull, InvalidWord)):
        make_string(open_word(W0().letters), NODAL)


def test_truncation():
    t0 = truncate(WK0(), 0)
    assert all(x.deg == 0 for x in t0.letters)
    assert [x.tier for x in t0.letters if x.is_E] == [1, 1]
    t3 = truncate(WK0(), 3)
    per_degree = Counter(x.deg for x in t3.letters if x.is_E)
    assert max(per_degree) == 3 and all(per_degree[d] == 4 for d in (1, 2, 3))
    assert truncate(W31(), 7) == W31()


def test_canonical_form_examples():
    s = make_string(WO(), CHAIN1)
    assert canonical_form(s) == canonical_form(make_string(reverse(WO()), CHAIN1))
    b = make_band(rotate(W0(), 2), 1, 3, NODAL, F5)
    c = canonical_form(b)
    assert c.word == canonical_form(make_band(W0(), 1, 3, NODAL, F5)).word
    assert c.eigenvalue in (3, F5.inv(3))
    # moving the Jordan link from E ~ E to F ~ F inverts the eigenvalue
    assert is_isomorphic(make_band(W0(), 1, F5.inv(3), NODAL, F5), b)
    assert not is_isomorphic(make_band(W0(), 1, 3, NODAL, F5), b)
    assert is_isomorphic(make_band(rotate(W0(), 4), 1, 3, NODAL, F5), make_band(W0(), 1, 3, NODAL, F5))
    assert not is_isomorphic(make_band(W0(), 1, 2, NODAL), make_band(W0(), 1, 3, NODAL))
    assert not is_isomorphic(make_band(W0(), 1, 2, NODAL), make_band(W0(), 2, 2, NODAL))


BANDS = [d for c in (NODAL, CHAIN1, make_curve("cycle", 1))
         for d in enumerate_data(c, 10, 2, F101) if d.word.closed]


@settings(max_examples=60)
@given(st.sampled_from(BANDS), st.integers(0, 40), st.booleans(), st.integers(1, 100))
def test_canonical_form_invariance(d, k, flip, lam):
    d = make_band(d.word, d.multiplicity, lam, d.config, F101)
    c = canonical_form(d)
    assert canonical_form(c) == c
    w = reverse(d.word) if flip else d.word
    w2 = rotate(w, 2 * k % len(w.letters))
    # the realized matrices decide which of lambda, 1/lambda describes the same object
    r = realize(d, F101)
    same = [lam2 for lam2 in (d.eigenvalue, F101.inv(d.eigenvalue))
            if find_certificate(r, realize(make_band(w2, 1, lam2, d.config, F101), F101)) is not None]
    assert same
    assert all(canonical_form(make_band(w2, 1, lam2, d.config, F101)) == c for lam2 in same)


def test_enumeration_examples():
    bundles = enumerate_data(NODAL, 4, 0, F5, "vector-bundle")
    assert [d.word.letters[0].mult for d in bundles] == [-1, 0, 1]
    assert enumerate_data(NODAL, 0, 0) == [] and enumerate_data(CHAIN1, 0, 3) == []
    assert canonical_form(make_string(WO(), CHAIN1)) in enumerate_data(CHAIN1, 4, 0, F5)
    everything = enumerate_data(make_curve("cycle", 1), 10, 2, F5, multiplicities=(1, 2))
    assert len({d.key for d in everything}) == len(everything)
    assert [d.key for d in everything] == sorted(d.key for d in everything)
    with pytest.raises(ValueError):
        enumerate_data(NODAL, 4, 0, F5, "nonsense")
