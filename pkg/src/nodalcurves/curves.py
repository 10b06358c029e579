"""Curve configurations and the letter system attached to them.

A configuration is a nodal cubic, a chain of projective lines or a cycle of
projective lines.  Each line carries the marked points ``"0"`` and ``"∞"``
(the end lines of a chain carry only one of them) and every marked point
lies over exactly one singular point.

Letters are the labels of rows (``E``) and columns (``F``) of the matrix
problem.  They live at a site ``(component, marked point)`` and a
homological degree; ``E`` letters also carry a :class:`Weight`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import NodalError

ZERO = "0"
INF = "∞"
POINT_LABELS = (ZERO, INF)
_LABEL_ALIASES = {"0": ZERO, "∞": INF, "inf": INF, "oo": INF, "infinity": INF}


class ConfigurationError(NodalError):
    pass


def normalize_label(label: str) -> str:
    try:
        return _LABEL_ALIASES[label]
    except KeyError:
        raise ConfigurationError(f"unknown marked point label {label!r}") from None


@dataclass(frozen=True)
class CurveConfig:
    """A tame configuration: ``nodal-cubic``, ``chain`` (n ≥ 1) or ``cycle`` (n ≥ 1)."""

    kind: str
    n: int = 0
    marked_points: tuple = field(default=(), compare=False, repr=False)

    @property
    def components(self) -> tuple[int, ...]:
        return tuple(range(1 if self.kind == "nodal-cubic" else self.n + 1))

    @property
    def singular_points(self) -> tuple[int, ...]:
        count = {"nodal-cubic": 1, "chain": self.n, "cycle": self.n + 1}[self.kind]
        return tuple(range(count))

    def component_name(self, comp: int) -> str:
        return "X" if self.kind == "nodal-cubic" else f"L{comp + 1}"

    def component_id(self, name) -> int:
        if isinstance(name, int) and name in self.components:
            return name
        for c in self.components:
            if self.component_name(c) == name:
                return c
        raise ConfigurationError(f"no component {name!r} on {self.describe()}")

    def singular_name(self, s: int) -> str:
        return f"s{s + 1}"

    def singular_id(self, name) -> int:
        for s in self.singular_points:
            if self.singular_name(s) == name or s == name:
                return s
        raise ConfigurationError(f"no singular point {name!r} on {self.describe()}")

    def describe(self) -> str:
        return "nodal-cubic" if self.kind == "nodal-cubic" else f"{self.kind}:{self.n}"

    @cached_property
    def _site_to_singular(self) -> dict:
        return {(c, a): s for c, a, s in self.marked_points}

    @cached_property
    def _preimages(self) -> dict:
        out: dict = {}
        for c, a, s in self.marked_points:
            out.setdefault(s, []).append((c, a))
        return {s: tuple(v) for s, v in out.items()}

    def sites(self) -> tuple:
        return tuple((c, a) for c, a, _ in self.marked_points)

    def has_site(self, comp, label) -> bool:
        return (comp, label) in self._site_to_singular

    def singular_of(self, comp: int, label: str) -> int:
        try:
            return self._site_to_singular[(comp, label)]
        except KeyError:
            raise ConfigurationError(
                f"({self.component_name(comp)}, {label}) is not a marked point") from None

    def preimages(self, s: int) -> tuple:
        return self._preimages[s]

    def other_preimage(self, comp: int, label: str) -> tuple:
        a, b = self.preimages(self.singular_of(comp, label))
        return b if a == (comp, label) else a

    def labels_on(self, comp: int) -> tuple[str, ...]:
        return tuple(a for c, a, _ in self.marked_points if c == comp)

    def other_label(self, comp: int, label: str) -> str | None:
        others = [a for a in self.labels_on(comp) if a != label]
        return others[0] if others else None


def make_curve(kind: str, n: int | None = None) -> CurveConfig:
    """Build a configuration.

    >>> make_curve("nodal-cubic").marked_points
    ((0, '0', 0), (0, '∞', 0))
    >>> len(make_curve("cycle", 1).marked_points)
    4
    """
    kind = kind.lower().replace("_", "-")
    if kind in ("nodal-cubic", "nodalcubic", "nodal"):
        return CurveConfig("nodal-cubic", 0, ((0, ZERO, 0), (0, INF, 0)))
    if kind not in ("chain", "cycle"):
        raise ConfigurationError(f"unknown curve kind {kind!r}")
    if n is None or not isinstance(n, int) or n < 1:
        raise ConfigurationError(f"{kind} needs an integer n >= 1, got {n!r}")
    marks = []
    if kind == "chain":
        for j in range(n):
            marks.append((j, INF, j))
            marks.append((j + 1, ZERO, j))
    else:
        for j in range(n + 1):
            marks.append((j, INF, j))
            marks.append(((j + 1) % (n + 1), ZERO, j))
    marks.sort(key=lambda m: (m[0], POINT_LABELS.index(m[1])))
    return CurveConfig(kind, n, tuple(marks))


def parse_curve(text: str) -> CurveConfig:
    """``nodal-cubic``, ``chain:2`` or ``cycle:1``."""
    if ":" in text:
        kind, _, n = text.partition(":")
        if not n.strip().lstrip("-").isdigit():
            raise ConfigurationError(f"bad curve size in {text!r}")
        return make_curve(kind, int(n))
    return make_curve(text)


@dataclass(frozen=True, order=True)
class Weight:
    """``multiple`` times ω_tier; ordered by tier, then multiple."""

    tier: int
    multiple: int

    def __post_init__(self):
        if self.tier not in (-1, 0, 1):
            raise ValueError(f"tier must be -1, 0 or 1, got {self.tier}")

    def __str__(self) -> str:
        return f"{self.multiple}w{self.tier}"


def compare_weights(w1: Weight, w2: Weight) -> int:
    """-1, 0 or 1 as ``w1`` is below, equal to or above ``w2``."""
    k1, k2 = (w1.tier, w1.multiple), (w2.tier, w2.multiple)
    return (k1 > k2) - (k1 < k2)


@dataclass(frozen=True)
class Letter:
    kind: str  # "E" or "F"
    comp: int
    point: str
    deg: int
    tier: int | None = None
    mult: int | None = None

    @property
    def is_E(self) -> bool:
        return self.kind == "E"

    @property
    def site(self) -> tuple:
        return (self.comp, self.point, self.deg)

    @property
    def weight(self) -> Weight | None:
        return Weight(self.tier, self.mult) if self.is_E else None

    @property
    def key(self) -> tuple:
        kind = 0 if self.is_E else 1
        w = (self.tier, self.mult) if self.is_E else (0, 0)
        return (self.comp, POINT_LABELS.index(self.point), kind, self.deg) + w

    @property
    def is_head(self) -> bool:
        return self.is_E and self.tier == 1

    @property
    def is_tail(self) -> bool:
        return self.is_E and self.tier == -1

    @property
    def length(self) -> int:
        """Length of the torsion piece for heads and tails."""
        return abs(self.mult)

    def shifted(self, d: int) -> "Letter":
        return Letter(self.kind, self.comp, self.point, self.deg + d, self.tier, self.mult)

    def __repr__(self) -> str:
        if self.is_E:
            return f"E({self.comp},{self.point},{self.deg},{self.mult}w{self.tier})"
        return f"F({self.comp},{self.point},{self.deg})"


def E(comp: int, point: str, deg: int, tier: int, mult: int) -> Letter:
    return Letter("E", comp, point, deg, tier, mult)


def F(comp: int, point: str, deg: int) -> Letter:
    return Letter("F", comp, point, deg)


def letter_problems(letter: Letter, config: CurveConfig) -> list[str]:
    """Reasons why ``letter`` is not a letter of ``config`` (empty if it is)."""
    out = []
    if letter.kind not in ("E", "F"):
        return [f"unknown letter kind {letter.kind!r}"]
    if not config.has_site(letter.comp, letter.point):
        out.append(f"site ({letter.comp}, {letter.point}) does not exist")
    if letter.deg < 0:
        out.append("negative degree")
    if letter.is_E:
        if letter.tier not in (-1, 0, 1) or not isinstance(letter.mult, int):
            out.append("bad weight")
        elif letter.tier == 1 and letter.mult > -1:
            out.append("tier +1 letters need a multiple <= -1")
        elif letter.tier == -1 and (letter.mult < 1 or letter.deg < 1):
            out.append("tier -1 letters need a multiple >= 1 and degree >= 1")
    elif letter.tier is not None or letter.mult is not None:
        out.append("F letters carry no weight")
    return out


def conjugate(letter: Letter, config: CurveConfig) -> Letter:
    """The letter identified with ``letter``; singleton classes return ``letter``."""
    if not letter.is_E:
        comp, point = config.other_preimage(letter.comp, letter.point)
        return F(comp, point, letter.deg)
    if letter.tier == 0:
        other = config.other_label(letter.comp, letter.point)
        if other is None:
            return letter
        return E(letter.comp, other, letter.deg, 0, letter.mult)
    if letter.tier == 1:
        return E(letter.comp, letter.point, letter.deg + 1, -1, -letter.mult)
    return E(letter.comp, letter.point, letter.deg - 1, 1, -letter.mult)


def class_key(letter: Letter, config: CurveConfig) -> Letter:
    """Representative of the conjugate class: the smaller of the two letters."""
    other = conjugate(letter, config)
    return min(letter, other, key=lambda x: x.key)


def is_singleton(letter: Letter, config: CurveConfig) -> bool:
    return conjugate(letter, config) == letter


def letters_in_bounds(config: CurveConfig, max_degree: int, max_mult: int) -> list[Letter]:
    """All letters with degree <= max_degree whose conjugate also stays in bounds."""
    out = []
    for comp, point in config.sites():
        for d in range(max_degree + 1):
            out.append(F(comp, point, d))
            for n in range(-max_mult, max_mult + 1):
                out.append(E(comp, point, d, 0, n))
            for k in range(1, max_mult + 1):
                if d + 1 <= max_degree:
                    out.append(E(comp, point, d, 1, -k))
                if d >= 1:
                    out.append(E(comp, point, d, -1, k))
    return sorted(out, key=lambda x: x.key)
