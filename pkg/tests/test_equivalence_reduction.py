from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalcurves import (LineBundle, QQ, TorsionComplex, apply_certificate, brute_force_equivalent,
                         canonical_form, check_restrictions, decode_normalization, decompose,
                         direct_sum, enumerate_data, find_certificate, is_isomorphic, make_band,
                         make_curve, make_string, normalization_tensor, random_certificate, realize,
                         tensor, verify_equivalence)
from nodalcurves.curves import INF, ZERO
from nodalcurves.equivalence import Certificate, compose, identity_certificate, inverse
from nodalcurves.errors import NotAdmissible, TooLarge, WindowTooSmall
from nodalcurves.fields import ExactField
from nodalcurves.fixtures import CHAIN1, NODAL, W0, W32, WO, fixture_data
from nodalcurves.reduction import tensor_representations
from nodalcurves.words import rotate

F3 = ExactField(3)
F101 = ExactField(101)
X = 0

POOL = [d for c in (NODAL, CHAIN1, make_curve("cycle", 1))
        for d in enumerate_data(c, 10, 2, F101, multiplicities=(1, 2))]


def test_identity_and_scaling_certificates():
    r = realize(make_band(W0(), 1, 7, NODAL, F101), F101)
    assert apply_certificate(r, identity_certificate(r)).matrices == r.matrices
    c = 9
    cert = Certificate({k: ((c,),) for k in r.cols},
                       {x: ((c,),) for x in identity_certificate(r).rows})
    assert apply_certificate(r, cert).matrices == r.matrices
    assert verify_equivalence(r, r, cert).ok


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(POOL), st.integers(0, 10_000))
def test_certificates_act_as_a_group(d, seed):
    r = realize(d, F101)
    cert = random_certificate(r, seed)
    assert random_certificate(r, seed) == cert
    moved = apply_certificate(r, cert)
    assert check_restrictions(moved) == []
    assert verify_equivalence(r, moved, cert).ok
    assert apply_certificate(moved, inverse(r, cert)).matrices == r.matrices
    other = random_certificate(r, seed + 1)
    assert apply_certificate(r, compose(r, cert, other)).matrices == \
        apply_certificate(moved, other).matrices
    found = find_certificate(r, moved, seed)
    assert found is not None and verify_equivalence(r, moved, found).ok


def test_inequivalent_pairs():
    a = realize(make_band(W0(), 1, 2, NODAL, F101), F101)
    b = realize(make_band(W0(), 1, 3, NODAL, F101), F101)
    assert not verify_equivalence(a, b, identity_certificate(a)).ok
    assert find_certificate(a, b) is None
    s = realize(make_string(WO(), CHAIN1), F101)
    assert not verify_equivalence(a, s, identity_certificate(a)).ok
    a3 = realize(make_band(W0(), 1, 1, NODAL, F3), F3)
    b3 = realize(make_band(W0(), 1, 2, NODAL, F3), F3)
    assert not brute_force_equivalent(a3, b3)
    assert brute_force_equivalent(a3, apply_certificate(a3, random_certificate(a3, 4)))


def test_rotation_witness():
    a = realize(make_band(W0(), 1, 2, NODAL, F101), F101)
    c = canonical_form(make_band(rotate(W0(), 2), 1, 2, NODAL, F101))
    b = realize(make_band(rotate(W0(), 2), 1, 2, NODAL, F101), F101)
    assert verify_equivalence(realize(c, F101), b, find_certificate(realize(c, F101), b)).ok
    assert find_certificate(a, b) is None  # 2 != 1/2 in F_101


def test_inadmissible_direction():
    r = realize(fixture_data("W32", field=F101), F101)
    ident = identity_certificate(r)
    site = (X, ZERO, 0)
    blocks = r.blocks(site)
    low, high = blocks[0], blocks[-1]
    bad = Certificate(ident.columns, ident.rows,
                      {(site, low[0], high[0]): tuple((1,) * high[2] for _ in range(low[2]))})
    verdict = verify_equivalence(r, r, bad)
    assert not verdict.ok and verdict.reason == "inadmissible addition direction"


def test_brute_force_limits():
    r = realize(fixture_data("W32", field=ExactField(11)), ExactField(11))
    with pytest.raises(TooLarge):
        brute_force_equivalent(r, r)


def test_decompose_examples():
    d = make_band(W0(), 1, 5, NODAL, F101)
    res = decompose(realize(d, F101))
    assert list(res.summands) == [(canonical_form(d), 1)]
    for seed in range(100):
        d7 = make_band(W0(), 1, 7, NODAL, F101)
        r = realize(d7, F101)
        r = apply_certificate(r, random_certificate(r, seed))
        assert list(decompose(r, seed=seed, witness=False).summands) == [(canonical_form(d7), 1)]
    pair = direct_sum(realize(make_band(W0(), 1, 2, NODAL), QQ), realize(make_band(W0(), 1, 3, NODAL), QQ))
    pair = apply_certificate(pair, random_certificate(pair, 11))
    res = decompose(pair)
    assert sorted(x.eigenvalue for x in res.expanded()) == [2, 3]
    assert verify_equivalence(pair, res.target, res.witness).ok


def test_jordan_block_does_not_split():
    for field in (F3, F101, QQ):
        d = make_band(W0(), 2, 2, NODAL, field)
        r = realize(d, field)
        r = apply_certificate(r, random_certificate(r, 3))
        out = decompose(r).expanded()
        assert len(out) == 1 and is_isomorphic(out[0], d)
    j2 = realize(make_band(W0(), 2, 1, NODAL, F3), F3)
    split = direct_sum(realize(make_band(W0(), 1, 1, NODAL, F3), F3),
                       realize(make_band(W0(), 1, 1, NODAL, F3), F3))
    assert not brute_force_equivalent(j2, split)


def test_nonsplit_eigenvalue_recovered():
    for field, poly in ((QQ, (2, 0, 1)), (F101, (3, 0, 1)), (F3, (1, 0, 1))):
        d = make_band(W0(), 1, poly, NODAL, field)
        r = realize(d, field)
        r = apply_certificate(r, random_certificate(r, 5))
        out = decompose(r).expanded()
        assert len(out) == 1 and is_isomorphic(out[0], d)


def test_decompose_rejects_invalid():
    r = realize(make_band(W0(), 1, 5, NODAL, F101), F101)
    from dataclasses import replace
    bad = replace(r, matrices={**r.matrices, (X, ZERO, 0): ((0,),)})
    with pytest.raises(NotAdmissible):
        decompose(bad)


def test_picard_law_and_unit():
    out = tensor(make_band(W0(), 1, 4, NODAL, F101), make_band(W0(), 1, 30, NODAL, F101)).expanded()
    assert len(out) == 1 and is_isomorphic(out[0], make_band(W0(), 1, 120 % 101, NODAL, F101))
    wo = make_string(WO(), CHAIN1)
    assert tensor(wo, wo).expanded() == [canonical_form(wo)]


def test_kronecker_entries_for_line_bundles():
    a = realize(make_band(W0(), 1, 4, NODAL, F101), F101)
    b = realize(make_band(W0(), 1, 6, NODAL, F101), F101)
    p = tensor_representations(a, b, 0)
    assert p.matrices[(X, ZERO, 0)] == ((1,),)
    assert p.matrices[(X, INF, 0)] == ((24,),)


def test_twisting_a_mixed_sheaf():
    d = make_band(W32(), 1, 3, NODAL, F101)
    out = tensor(d, make_band(W0(), 1, 5, NODAL, F101)).expanded()
    assert len(out) == 1
    # the twist scales the monodromy once per line-bundle strand; W32 has rank 3
    lam = 3 * 5 ** 3 % 101
    assert out[0].word == canonical_form(d).word and out[0].eigenvalue in (lam, F101.inv(lam))


def test_tailed_tensor_needs_window():
    with pytest.raises(WindowTooSmall):
        tensor(fixture_data("WK0"), make_band(W0(), 1, 2, NODAL))


@pytest.mark.parametrize("a, b, expected", [
    (LineBundle(X, 1, 0), LineBundle(X, 2, -1), {LineBundle(X, 3, -1): 1}),
    (LineBundle(X, 1, 0), TorsionComplex(X, ZERO, 3, -1), {TorsionComplex(X, ZERO, 3, -1): 1}),
    (TorsionComplex(X, ZERO, 2, 0), TorsionComplex(X, INF, 2, 0), {}),
])
def test_normalization_tensor_table(a, b, expected):
    assert normalization_tensor(a, b) == Counter(expected)


def test_torsion_squares_follow_the_tor_computation():
    # O/x^m (x) O/x^n has Tor_0 and Tor_1 both of length min(m, n)
    got = normalization_tensor(TorsionComplex(X, ZERO, 2, 0), TorsionComplex(X, ZERO, 3, 0))
    assert sum(got.values()) == 2
    assert {s.length for s in got} == {2}
    assert sorted(s.shift for s in got) == [-1, 0]


def _normalization_of(res):
    total = Counter()
    for x, k in res.summands:
        for s, c in decode_normalization(x).items():
            total[s] += c * k
    return total


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([d for d in POOL if d.config == NODAL]),
       st.sampled_from([d for d in POOL if d.config == NODAL]))
def test_tensor_normalization_is_the_product(d1, d2):
    res = tensor(d1, d2, seed=1)
    expected = Counter()
    for a, i in decode_normalization(d1).items():
        for b, j in decode_normalization(d2).items():
            for s, c in normalization_tensor(a, b).items():
                expected[s] += c * i * j
    assert _normalization_of(res) == expected
