"""Exhaustive enumeration of finite band and string data within bounds."""

from __future__ import annotations

from . import classification as cl
from .curves import CurveConfig, F, conjugate, is_singleton, letters_in_bounds
from .errors import NodalError
from .fields import QQ, ExactField
from .words import (canonical_form, closed_word, is_proper_power, make_band, make_string,
                    open_word)

FILTERS = {
    "all": lambda d: True,
    "coherent": cl.is_coherent,
    "bounded": cl.is_bounded,
    "vector-bundle": cl.is_vector_bundle,
    "skyscraper": cl.is_skyscraper,
    "torsion-free": cl.is_torsion_free,
    "mixed": cl.is_mixed,
}


def sample_eigenvalue(field: ExactField):
    """The eigenvalue used for bands when a concrete value is needed."""
    return 1 if field.p == 2 else 2


def _walks(config: CurveConfig, by_site: dict, max_letters: int, closed: bool):
    """Letter sequences of band (closed) or string (open) shape."""
    starts = sorted({x for xs in by_site.values() for x in xs
                     if is_singleton(x, config) != closed}, key=lambda x: x.key)
    for x0 in starts:
        letters = [x0]

        def step(z):
            fz = F(z.comp, z.point, z.deg)
            f2 = conjugate(fz, config)
            letters.extend([fz, f2])
            site = (f2.comp, f2.point, f2.deg)
            for y in by_site.get(site, ()):
                if closed and y == conjugate(x0, config) and len(letters) + 1 <= max_letters:
                    yield closed_word(letters + [y])
                if is_singleton(y, config):
                    if not closed and len(letters) + 1 <= max_letters:
                        yield open_word(letters + [y])
                    continue
                if len(letters) + 2 + 3 <= max_letters:
                    yc = conjugate(y, config)
                    letters.extend([y, yc])
                    yield from step(yc)
                    del letters[-2:]
            del letters[-2:]

        if 4 <= max_letters:
            yield from step(x0)


def enumerate_data(config: CurveConfig, max_letters: int, max_degree: int, field: ExactField = QQ,
                   filter: str = "all", max_mult: int = 1, multiplicities=(1,), eigenvalue=None) -> list:
    """Every valid finite datum within the bounds, sorted by key.

    Strings are listed once per isomorphism class and bands once per
    canonical word and multiplicity.

    Bands carry ``eigenvalue`` (default :func:`sample_eigenvalue`) and each
    multiplicity in ``multiplicities``.  ``max_mult`` bounds line-bundle
    multiples and torsion lengths.
    """
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {sorted(FILTERS)}")
    if max_letters < 1 or max_degree < 0:
        return []
    lam = sample_eigenvalue(field) if eigenvalue is None else eigenvalue
    by_site: dict = {}
    for x in letters_in_bounds(config, max_degree, max_mult):
        if x.is_E:
            by_site.setdefault(x.site, []).append(x)
    for xs in by_site.values():
        xs.sort(key=lambda x: x.key)
    keep = FILTERS[filter]
    out = {}
    for w in _walks(config, by_site, max_letters, closed=True):
        if is_proper_power(w):
            continue
        for m in multiplicities:
            try:
                d = canonical_form(make_band(w, m, lam, config, field))
            except NodalError:
                continue
            slot = (0, d.word.key, m)  # the eigenvalue slot is symbolic
            if slot not in out and keep(d):
                out[slot] = d
    for w in _walks(config, by_site, max_letters, closed=False):
        try:
            d = canonical_form(make_string(w, config))
        except NodalError:
            continue
        if d.key not in out and keep(d):
            out[d.key] = d
    return sorted(out.values(), key=lambda d: d.key)
