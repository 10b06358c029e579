"""Reading off geometric properties of a datum from its word.

The coherence test combines three local conditions on the word:

* C1: no line-bundle letter (tier 0) in degree >= 1;
* C2: no torsion head or tail of length >= 2 in degree >= 2;
* C3: no two length-1 tails joined through an ``F ~ F`` bridge.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .curves import class_key
from .errors import InvalidData, NotCoherent
from .realization import _traversals
from .summands import LineBundle, TorsionComplex
from .words import DASH, TILDE, BandData, StringData, Word, eigen_degree, truncate

INFINITE = math.inf


def _tagged_unroll(word: Word, copies: int):
    """Letters and links of the prefix plus ``copies`` periods per tail.

    Each letter is tagged with 0 for the finite part and ``j + 1`` for the
    j-th copy of a period.
    """
    letters = list(word.letters)
    tags = [0] * len(letters)
    links = word.links
    if word.left_tail is not None:
        t = word.left_tail
        seq = [(t.links[i], x.shifted(j * t.shift), j + 1)
               for j in range(copies) for i, x in enumerate(t.letters)]
        letters = [x for _, x, _ in reversed(seq)] + letters
        tags = [g for _, _, g in reversed(seq)] + tags
        links = "".join(l for l, _, _ in reversed(seq)) + links
    if word.tail is not None:
        t = word.tail
        seq = [(t.links[i], x.shifted(j * t.shift), j + 1)
               for j in range(copies) for i, x in enumerate(t.letters)]
        letters += [x for _, x, _ in seq]
        tags += [g for _, _, g in seq]
        links += "".join(l for l, _, _ in seq)
    return letters, links, tags


def _c1(x) -> bool:
    return x.is_E and x.tier == 0 and x.deg >= 1


def _c2(x) -> bool:
    return x.is_E and x.deg >= 2 and ((x.tier == -1 and x.mult >= 2) or (x.tier == 1 and x.mult <= -2))


def _short_tail(x) -> bool:
    return x.is_E and x.tier == -1 and x.mult == 1


def condition_failures(letters, links: str, closed: bool) -> list[tuple[str, int]]:
    """(condition name, position) for every failure of C1, C2 or C3."""
    out = []
    n = len(letters)
    for i, x in enumerate(letters):
        if _c1(x):
            out.append(("C1", i))
        if _c2(x):
            out.append(("C2", i))
    last = n if closed else n - 3
    for j in range(max(last, 0)):
        idx = [(j + k) % n for k in range(4)]
        ls = [links[(j + k) % len(links)] for k in range(3)]
        if ls != [DASH, TILDE, DASH]:
            continue
        a, b, c, d = (letters[i] for i in idx)
        if _short_tail(a) and _short_tail(d) and not b.is_E and not c.is_E and a.deg >= 1:
            out.append(("C3", j))
    return out


def _check(data):
    if not isinstance(data, (BandData, StringData)):
        raise InvalidData(f"not a band or string datum: {type(data).__name__}")


def is_coherent(data) -> bool:
    _check(data)
    word = data.word
    if isinstance(data, StringData) and any(s.shift != 0 for s in data.free_summands):
        return False
    letters, links, _ = _tagged_unroll(word, 2)
    return not condition_failures(letters, links, word.closed)


def is_bounded(data) -> bool:
    _check(data)
    word = data.word
    if word.is_finite:
        return True
    letters, links, tags = _tagged_unroll(word, 3)
    return all(tags[i] < 2 for _, i in condition_failures(letters, links, False))


def _all_letters(word: Word) -> list:
    return _tagged_unroll(word, 2)[0]


def is_vector_bundle(data) -> bool:
    _check(data)
    if isinstance(data, StringData) and data.free_summands:
        return False
    if not data.word.is_finite:
        return False
    return all(x.deg == 0 and (not x.is_E or x.tier == 0) for x in data.word.letters)


def is_skyscraper(data) -> bool:
    if not is_coherent(data):
        return False
    if any(x.is_E and x.tier == 0 for x in _all_letters(data.word)):
        return False
    if isinstance(data, StringData):
        return all(isinstance(s, TorsionComplex) and s.shift == 0 for s in data.free_summands)
    return True


def is_torsion_free(data) -> bool:
    """Vector bundles, and coherent strings whose length-1 torsion letters never share a site."""
    if is_vector_bundle(data):
        return True
    if not isinstance(data, StringData) or not is_coherent(data):
        return False
    if any(isinstance(s, TorsionComplex) and s.shift == 0 for s in data.free_summands):
        return False
    letters = _all_letters(data.word)
    if not any(x.is_E and x.tier == 0 for x in letters):
        return False
    per_site = Counter()
    for x in letters:
        if x.is_E and x.tier != 0:
            if abs(x.mult) >= 2 and x.deg >= 2:
                return False
            if abs(x.mult) == 1:
                per_site[x.site] += 1
    return all(c <= 1 for c in per_site.values())


def is_mixed(data) -> bool:
    return is_coherent(data) and not is_skyscraper(data) and not is_torsion_free(data)


def homological_dimension(data):
    """0 for bundles, 1 for other finite words, infinity for tailed words."""
    if not is_coherent(data):
        raise NotCoherent("homological dimension is defined for coherent sheaves only")
    if is_vector_bundle(data):
        return 0
    return 1 if data.word.is_finite else INFINITE


def decode_normalization(data, max_degree: int | None = None) -> Counter:
    """Multiset of line bundles and torsion complexes making up the normalization.

    Tailed words are decoded up to ``max_degree`` (default: two periods past
    the finite part).
    """
    _check(data)
    word = data.word
    if not word.is_finite:
        if max_degree is None:
            top = max((x.deg for x in word.letters), default=0)
            max_degree = top + 2 * max(t.shift for t in (word.tail, word.left_tail) if t)
        word = truncate(word, max_degree)
    factor = data.multiplicity * eigen_degree(data.eigenvalue) if isinstance(data, BandData) else 1
    letters, links, closed = list(word.letters), word.links, word.closed
    trav = _traversals(letters, links, closed, data.config)
    seen = set()
    out: Counter = Counter()
    for i, x in enumerate(letters):
        if not x.is_E:
            continue
        key = (class_key(x, data.config), trav[i])
        if key in seen:
            continue
        seen.add(key)
        if x.tier == 0:
            out[LineBundle(x.comp, x.mult, -x.deg)] += factor
        else:
            head_deg = x.deg if x.tier == 1 else x.deg - 1
            out[TorsionComplex(x.comp, x.point, x.length, -head_deg)] += factor
    if isinstance(data, StringData):
        for s in data.free_summands:
            out[s] += 1
    return out


def rank(data) -> dict:
    """Rank on each component (keyed by component name)."""
    norm = decode_normalization(data)
    out = {data.config.component_name(c): 0 for c in data.config.components}
    for s, k in norm.items():
        if isinstance(s, LineBundle) and s.shift == 0:
            out[data.config.component_name(s.comp)] += k
    return out


@dataclass(frozen=True)
class ClassificationReport:
    coherent: bool
    bounded: bool
    vector_bundle: bool
    skyscraper: bool
    torsion_free: bool
    mixed: bool
    homological_dimension: object
    rank: dict = field(compare=True)
    normalization: tuple = ()


def classify(data) -> ClassificationReport:
    coherent = is_coherent(data)
    norm = decode_normalization(data)
    return ClassificationReport(
        coherent=coherent,
        bounded=is_bounded(data),
        vector_bundle=is_vector_bundle(data),
        skyscraper=is_skyscraper(data),
        torsion_free=is_torsion_free(data),
        mixed=is_mixed(data),
        homological_dimension=homological_dimension(data) if coherent else None,
        rank=rank(data),
        normalization=tuple(sorted(norm.items(), key=lambda t: t[0].key)),
    )
