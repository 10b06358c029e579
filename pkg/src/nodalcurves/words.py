"""Band and string words, their validation, canonical forms and isomorphism.

A word is a sequence of letters joined by links ``-`` (an ``E`` and an ``F``
letter at the same site) and ``~`` (a letter and its conjugate), the two kinds
alternating.  Closed words are cyclic and start with a ``-`` link, so the
closing link is ``~``.  Open words may continue periodically on the right
(``tail``) and on the left (``left_tail``); a tail lists its period and, for
each period letter, the link that enters it when walking away from the
finite part.  Successive copies of the period are shifted up in degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .curves import CurveConfig, Letter, conjugate, is_singleton, letter_problems
from .errors import (ConfigMismatch, CountImbalance, InfiniteOccurrence, InvalidWord,
                     IsPower, NotClosed, NotFull, ZeroEigenvalue)
from .fields import QQ, ExactField
from .summands import LineBundle, TorsionComplex, sort_summands

DASH = "-"
TILDE = "~"


@dataclass(frozen=True)
class Tail:
    letters: tuple
    links: str
    shift: int

    def copy(self, j: int) -> tuple:
        return tuple(x.shifted(j * self.shift) for x in self.letters)

    @property
    def key(self) -> tuple:
        return (tuple(x.key for x in self.letters), self.links, self.shift)


@dataclass(frozen=True)
class Word:
    letters: tuple = ()
    links: str = ""
    closed: bool = False
    tail: Tail | None = None
    left_tail: Tail | None = None

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    @property
    def is_finite(self) -> bool:
        return self.tail is None and self.left_tail is None

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def key(self) -> tuple:
        return (tuple(x.key for x in self.letters), self.links,
                self.tail.key if self.tail else (), self.left_tail.key if self.left_tail else ())

    def __repr__(self) -> str:
        parts = [repr(self.letters[0])] if self.letters else []
        for i in range(1, len(self.letters)):
            parts.append(f" {self.links[i - 1]} {self.letters[i]!r}")
        body = "".join(parts)
        if self.closed:
            body += f" {self.links[-1]}"
        if self.tail:
            body += f" [tail {len(self.tail.letters)} letters, shift {self.tail.shift}]"
        if self.left_tail:
            body = f"[left tail {len(self.left_tail.letters)} letters, shift {self.left_tail.shift}] " + body
        return f"Word({body})"


def closed_word(letters, links: str | None = None) -> Word:
    letters = tuple(letters)
    if links is None:
        links = (DASH + TILDE) * (len(letters) // 2)
    return Word(letters, links, closed=True)


def open_word(letters, links: str | None = None, tail: Tail | None = None,
              left_tail: Tail | None = None) -> Word:
    letters = tuple(letters)
    if links is None:
        links = "".join(DASH if i % 2 == 0 else TILDE for i in range(max(len(letters) - 1, 0)))
    return Word(letters, links, False, tail, left_tail)


@dataclass(frozen=True)
class Violation:
    index: int | None
    message: str

    def __str__(self) -> str:
        return self.message if self.index is None else f"letter {self.index}: {self.message}"


# ---------------------------------------------------------------------------
# expansion of tails

def _outward(t: Tail, copies: int):
    for j in range(copies):
        for i, x in enumerate(t.letters):
            yield t.links[i], x.shifted(j * t.shift)


def unroll(word: Word, copies: int = 2) -> tuple[list, str]:
    """A finite open word made of the prefix and ``copies`` periods on each side."""
    letters = list(word.letters)
    links = word.links
    if word.left_tail is not None:
        out = list(_outward(word.left_tail, copies))
        letters = [x for _, x in reversed(out)] + letters
        links = "".join(l for l, _ in reversed(out)) + links
    if word.tail is not None:
        out = list(_outward(word.tail, copies))
        letters = letters + [x for _, x in out]
        links = links + "".join(l for l, _ in out)
    return letters, links


def _outward_until(t: Tail, max_degree: int):
    if t.shift < 1:
        raise InfiniteOccurrence("tail degree shift must be at least 1")
    j = 0
    while True:
        copy = t.copy(j)
        if min(x.deg for x in copy) > max_degree:
            return
        for i, x in enumerate(copy):
            if x.deg > max_degree:
                return
            yield t.links[i], x
        j += 1


def truncate(word: Word, max_degree: int) -> Word:
    """The finite word made of all letters of degree at most ``max_degree``.

    Tails are expanded outwards from the finite part and cut at the first
    letter above the window.
    """
    if word.is_finite:
        if not word.letters or max(x.deg for x in word.letters) <= max_degree:
            return word
        if word.closed:
            raise ValueError("closed words cannot be truncated")
        keep = [i for i, x in enumerate(word.letters) if x.deg <= max_degree]
        if not keep:
            return Word()
        lo, hi = keep[0], keep[-1]
        if keep != list(range(lo, hi + 1)):
            raise ValueError("truncation would split the word into pieces")
        return Word(word.letters[lo:hi + 1], word.links[lo:hi])
    left = list(_outward_until(word.left_tail, max_degree)) if word.left_tail else []
    right = list(_outward_until(word.tail, max_degree)) if word.tail else []
    core = Word(word.letters, word.links)
    core = truncate(core, max_degree) if core.letters else core
    if len(core.letters) != len(word.letters):
        # the finite part already leaves the window; the tails are unreachable
        return core
    letters = [x for _, x in reversed(left)] + list(word.letters) + [x for _, x in right]
    links = "".join(l for l, _ in reversed(left)) + word.links + "".join(l for l, _ in right)
    return Word(tuple(letters), links)


def max_prefix_degree(word: Word) -> int:
    return max((x.deg for x in word.letters), default=0)


# ---------------------------------------------------------------------------
# validation

def _check_links(letters, links: str, closed: bool, config: CurveConfig) -> list[Violation]:
    out = []
    n = len(letters)
    pairs = n if closed else n - 1
    for j in range(pairs):
        a, b = letters[j], letters[(j + 1) % n]
        sym = links[j]
        if sym == DASH:
            if a.is_E == b.is_E:
                out.append(Violation(j, "Dash link must join an E letter and an F letter"))
            elif (a.comp, a.point, a.deg) != (b.comp, b.point, b.deg):
                out.append(Violation(j, "Dash link sites differ"))
        elif sym == TILDE:
            if not letter_problems(a, config) and conjugate(a, config) != b:
                out.append(Violation(j, "Tilde link must join conjugate letters"))
            elif a == b:
                out.append(Violation(j, "Tilde link joins a letter to itself"))
        if j + 1 < pairs or closed:
            nxt = links[(j + 1) % len(links)] if links else sym
            if pairs > 1 and nxt == sym:
                out.append(Violation(j, "links must alternate"))
    return out


def validate_word(word: Word, config: CurveConfig) -> list[Violation]:
    """All invariant violations of ``word`` against ``config``; empty means valid."""
    out: list[Violation] = []
    if any(c not in (DASH, TILDE) for c in word.links):
        return [Violation(None, "links must be '-' or '~'")]
    n = len(word.letters)
    want = n if word.closed else max(n - 1, 0)
    if len(word.links) != want:
        return [Violation(None, f"expected {want} links for {n} letters, got {len(word.links)}")]
    for t in (word.tail, word.left_tail):
        if t is None:
            continue
        if word.closed:
            out.append(Violation(None, "closed words cannot have tails"))
        if not t.letters or len(t.links) != len(t.letters):
            out.append(Violation(None, "tail period needs one entering link per letter"))
        if t.shift < 1:
            out.append(Violation(None, "tail degree shift must be at least 1"))
        if not n:
            out.append(Violation(None, "tailed words need a non-empty finite part"))
        for x in t.letters:
            for p in letter_problems(x, config):
                out.append(Violation(None, f"tail letter {x!r}: {p}"))
    if out:
        return out
    for i, x in enumerate(word.letters):
        for p in letter_problems(x, config):
            out.append(Violation(i, p))
    if out:
        return out
    if word.closed:
        if n % 2:
            out.append(Violation(None, "closed words have even length"))
        elif n and word.links[-1] != TILDE:
            out.append(Violation(n - 1, "closed words must close with a ~ link"))
    letters, links = unroll(word, 2) if not word.is_finite else (list(word.letters), word.links)
    out.extend(_check_links(letters, links, word.closed, config))
    return out


def reverse(word: Word) -> Word:
    """The same word read backwards (tails swap sides)."""
    n = len(word.letters)
    if word.closed:
        links = word.links[n - 2::-1] + word.links[n - 1] if n >= 2 else word.links
        return Word(word.letters[::-1], links, True)
    return Word(word.letters[::-1], word.links[::-1], False, word.left_tail, word.tail)


def rotate(word: Word, k: int) -> Word:
    """Cyclic rotation of a closed word starting at position ``k``."""
    if not word.closed:
        raise NotClosed("only closed words can be rotated")
    n = len(word.letters)
    k %= n
    return Word(word.letters[k:] + word.letters[:k], word.links[k:] + word.links[:k], True)


def is_proper_power(word: Word) -> bool:
    n = len(word.letters)
    seq = list(zip(word.letters, word.links))
    for d in range(1, n):
        if n % d == 0 and seq[d:] + seq[:d] == seq:
            return True
    return False


def repeat(word: Word, times: int) -> Word:
    return Word(word.letters * times, word.links * times, True)


# ---------------------------------------------------------------------------
# data

def _normalize_eigen(field: ExactField, eigen):
    if isinstance(eigen, (tuple, list)):
        coeffs = tuple(field(c) for c in eigen)
        if len(coeffs) < 2 or coeffs[-1] == 0:
            raise ValueError("eigenvalue polynomial must have degree >= 1")
        inv = field.inv(coeffs[-1])
        coeffs = tuple(field.mul(c, inv) for c in coeffs)
        if coeffs[0] == 0:
            raise ZeroEigenvalue("eigenvalue polynomial vanishes at 0")
        if len(coeffs) == 2:
            return field.neg(coeffs[0])
        facs = field.charpoly_factors(_companion_rows(field, coeffs))
        if len(facs) != 1 or facs[0][1] != 1:
            raise ValueError("eigenvalue polynomial must be irreducible")
        return coeffs
    value = field(eigen)
    if value == 0:
        raise ZeroEigenvalue("eigenvalue must be non-zero")
    return value


def _companion_rows(field, coeffs):
    from .fields import companion
    return companion(field, coeffs)


def invert_eigen(field: ExactField, eigen):
    if isinstance(eigen, tuple):
        rev = eigen[::-1]
        inv = field.inv(rev[-1])
        return tuple(field.mul(c, inv) for c in rev)
    return field.inv(eigen)


def eigen_key(field: ExactField, eigen) -> tuple:
    if isinstance(eigen, tuple):
        return (1, len(eigen), tuple(field.sort_key(c) for c in eigen))
    return (0, 0, (field.sort_key(eigen),))


def eigen_degree(eigen) -> int:
    return len(eigen) - 1 if isinstance(eigen, tuple) else 1


@dataclass(frozen=True)
class BandData:
    config: CurveConfig
    word: Word
    multiplicity: int
    eigenvalue: object
    field: ExactField = QQ

    @property
    def key(self) -> tuple:
        return (0, self.word.key, self.multiplicity, eigen_key(self.field, self.eigenvalue))


@dataclass(frozen=True)
class StringData:
    config: CurveConfig
    word: Word
    free_summands: tuple = field(default=())

    @property
    def key(self) -> tuple:
        return (1, self.word.key, tuple(s.key for s in self.free_summands))


def make_band(word: Word, m: int, eigenvalue, config: CurveConfig, field: ExactField = QQ) -> BandData:
    """Band datum B(word, m, eigenvalue); the eigenvalue may be an irreducible polynomial."""
    if not word.closed:
        raise NotClosed("band words must be closed")
    problems = validate_word(word, config)
    if problems:
        raise InvalidWord(problems)
    if not word.letters:
        raise InvalidWord([Violation(None, "band words are non-empty")])
    if is_proper_power(word):
        raise IsPower("band word is a proper power of a shorter word")
    if not isinstance(m, int) or m < 1:
        raise ValueError("multiplicity must be a positive integer")
    return BandData(config, word, m, _normalize_eigen(field, eigenvalue), field)


def _site_of(x: Letter):
    return (x.comp, x.point, x.deg)


def _check_ends(word: Word, config: CurveConfig) -> None:
    letters, links = unroll(word, 1)
    if not letters:
        return
    n = len(letters)
    ends = []
    if word.left_tail is None:
        ends.append((0, links[0] if n > 1 else None))
    if word.tail is None and n > 0:
        ends.append((n - 1, links[-1] if n > 1 else None))
    for idx, link in ends:
        if link != DASH:
            x = letters[idx]
            comp = config.component_name(x.comp)
            raise CountImbalance(
                f"end letter {x!r} has no Dash partner: E and F counts differ at "
                f"({comp}, {x.point}, {x.deg})", site=_site_of(x))
    for idx, _ in ends:
        x = letters[idx]
        if not x.is_E or not is_singleton(x, config):
            raise NotFull(f"end letter {x!r} is not alone in its conjugate class; "
                          "its conjugate is missing from the word")


def make_string(word: Word, config: CurveConfig, free_summands=()) -> StringData:
    """String datum S(word) together with summands invisible to the matrices."""
    if word.closed:
        raise InvalidWord([Violation(None, "string words must be open")])
    for t in (word.tail, word.left_tail):
        if t is not None and t.shift < 1:
            raise InfiniteOccurrence("tail degree shift must be at least 1; "
                                     "otherwise the period letters repeat forever")
    problems = validate_word(word, config)
    if problems:
        raise InvalidWord(problems)
    _check_ends(word, config)
    marked = set(config.sites())
    for s in free_summands:
        if isinstance(s, TorsionComplex) and (s.comp, s.point) in marked:
            raise InvalidWord([Violation(None, "free torsion summands live at regular points")])
        if s.comp not in config.components:
            raise InvalidWord([Violation(None, f"free summand on unknown component {s.comp}")])
    return StringData(config, word, sort_summands(free_summands))


# ---------------------------------------------------------------------------
# canonical forms

def orientation(word: Word) -> int:
    """+1 when the Jordan link of a closed word is read from F to E, else -1."""
    return 1 if word.letters[-1].is_E else -1


def band_variants(data: BandData):
    """All (word, eigenvalue) pairs that describe the same band datum."""
    w, lam, fld = data.word, data.eigenvalue, data.field
    eps = orientation(w)
    for base, flip in ((w, 1), (reverse(w), -1)):
        for k in range(0, len(base.letters), 2):
            cand = rotate(base, k)
            e = eps * orientation(cand) * flip
            yield cand, (lam if e == 1 else invert_eigen(fld, lam))


def canonical_form(data):
    """Lexicographically least representative of the isomorphism class."""
    if isinstance(data, StringData):
        if not data.word.letters:
            return data
        best = min((data.word, reverse(data.word)), key=lambda w: w.key)
        return replace(data, word=best)
    best = min(band_variants(data),
               key=lambda t: (t[0].key, eigen_key(data.field, t[1])))
    return replace(data, word=best[0], eigenvalue=best[1])


def is_isomorphic(d1, d2) -> bool:
    if d1.config != d2.config:
        raise ConfigMismatch("data live on different curves")
    if isinstance(d1, BandData) and isinstance(d2, BandData) and d1.field != d2.field:
        raise ConfigMismatch("band data over different fields")
    if type(d1) is not type(d2):
        return False
    return canonical_form(d1).key == canonical_form(d2).key


def word_letters_all(word: Word, copies: int = 2) -> list:
    return unroll(word, copies)[0] if not word.is_finite else list(word.letters)


__all__ = [
    "DASH", "TILDE", "Tail", "Word", "Violation", "BandData", "StringData",
    "closed_word", "open_word", "unroll", "truncate", "validate_word", "reverse", "rotate",
    "is_proper_power", "repeat", "make_band", "make_string", "canonical_form", "is_isomorphic",
    "orientation", "band_variants", "invert_eigen", "eigen_key", "eigen_degree",
]
