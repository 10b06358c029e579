"""Pieces of the normalization of a complex: shifted line bundles and torsion complexes."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LineBundle:
    """O(degree) on one component, placed in homological degree ``-shift``."""

    comp: int
    degree: int
    shift: int = 0

    def __post_init__(self):
        if self.shift > 0:
            raise ValueError("shifts are non-positive")

    @property
    def key(self) -> tuple:
        return (0, self.comp, "", self.degree, self.shift)

    def shifted(self, s: int) -> "LineBundle":
        return LineBundle(self.comp, self.degree, self.shift + s)


@dataclass(frozen=True)
class TorsionComplex:
    """O(-k·x) → O on the component of ``x``; ``point`` is a marked label or a regular point name."""

    comp: int
    point: str
    length: int
    shift: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("torsion length must be >= 1")
        if self.shift > 0:
            raise ValueError("shifts are non-positive")

    @property
    def key(self) -> tuple:
        return (1, self.comp, self.point, self.length, self.shift)

    def shifted(self, s: int) -> "TorsionComplex":
        return TorsionComplex(self.comp, self.point, self.length, self.shift + s)


Summand = LineBundle | TorsionComplex


def sort_summands(items) -> tuple:
    return tuple(sorted(items, key=lambda s: s.key))
