"""Matrix realizations of band and string data.

A :class:`Representation` stores, for every site ``(component, point, degree)``,
a matrix whose rows are grouped into blocks labelled by ``E`` letters (in
increasing weight) and whose columns span the space attached to the singular
point under the site in that degree.  The two sites over one singular point
share their columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import CurveConfig, Letter, class_key, conjugate
from .errors import ConfigMismatch, InvalidData, WindowTooSmall
from .fields import QQ, ExactField, block_jordan
from .words import (DASH, TILDE, BandData, StringData, eigen_degree, max_prefix_degree,
                    truncate)


def _weight_key(x: Letter):
    return (x.tier, x.mult)


@dataclass
class Representation:
    config: CurveConfig
    field: ExactField
    window: int
    rows: dict  # site -> tuple[(Letter, size)] in increasing weight
    cols: dict  # (singular point, degree) -> size
    matrices: dict  # site -> matrix
    row_strips: dict = field(default_factory=dict, compare=False)
    col_strips: dict = field(default_factory=dict, compare=False)
    metadata: dict = field(default_factory=dict, compare=False)

    def colspace(self, site) -> tuple:
        comp, point, deg = site
        return (self.config.singular_of(comp, point), deg)

    def sites(self) -> list:
        return sorted(self.matrices, key=lambda s: (s[2], s[0], s[1]))

    def blocks(self, site) -> list:
        """(letter, start row, size) for each row block at ``site``."""
        out, start = [], 0
        for x, size in self.rows.get(site, ()):
            out.append((x, start, size))
            start += size
        return out

    def block_rows(self, site, letter) -> list:
        for x, start, size in self.blocks(site):
            if x == letter:
                return [list(r) for r in self.matrices[site][start:start + size]]
        return []

    def block_size(self, letter: Letter) -> int:
        for x, size in self.rows.get(letter.site, ()):
            if x == letter:
                return size
        return 0

    def dims(self) -> dict:
        return {s: (len(m), self.cols.get(self.colspace(s), 0)) for s, m in self.matrices.items()}

    def total_dim(self) -> int:
        return sum(self.cols.values())

    def letters(self) -> list:
        return [x for s in self.sites() for x, _ in self.rows[s]]


def empty_representation(config: CurveConfig, field: ExactField = QQ, window: int = 0):
    return Representation(config, field, window, {}, {}, {})


def assemble(config: CurveConfig, field: ExactField, window: int, blocks: dict, cols: dict,
             **extra) -> Representation:
    """Build a representation from per-site ``{letter: list of rows}`` dictionaries."""
    rows, mats = {}, {}
    sites = set(blocks)
    for (s, deg), size in cols.items():
        if size:
            for comp, point in config.preimages(s):
                sites.add((comp, point, deg))
    for site in sites:
        comp, point, deg = site
        width = cols.get((config.singular_of(comp, point), deg), 0)
        entries = [(x, r) for x, r in blocks.get(site, {}).items() if r]
        entries.sort(key=lambda t: _weight_key(t[0]))
        if not entries and not width:
            continue
        rows[site] = tuple((x, len(r)) for x, r in entries)
        mat = []
        for _, r in entries:
            for row in r:
                if len(row) != width:
                    raise InvalidData(f"row of length {len(row)} at {site}, expected {width}")
                mat.append(tuple(row))
        mats[site] = tuple(mat)
    cols = {k: v for k, v in cols.items() if v}
    return Representation(config, field, window, rows, cols, mats, **extra)


def _traversals(letters, links: str, closed: bool, config: CurveConfig) -> list[int]:
    """Occurrence index of each letter within its conjugate class."""
    n = len(letters)
    trav = [None] * n
    counter: dict = {}
    partner = {}
    pairs = n if closed else n - 1
    for j in range(pairs):
        if links[j] == TILDE:
            a, b = j, (j + 1) % n
            partner[a], partner[b] = b, a
    for i in range(n):
        if trav[i] is not None:
            continue
        key = class_key(letters[i], config)
        k = counter.get(key, 0)
        counter[key] = k + 1
        trav[i] = k
        if i in partner:
            trav[partner[i]] = k
    return trav


def realize(data, field: ExactField | None = None, window: int | None = None) -> Representation:
    """Matrices of a band or string datum.

    Bands put an identity block on every Dash link except the one ending at the
    last letter, which carries the Jordan block; strings use scalar ones.
    """
    config = data.config
    if isinstance(data, BandData):
        if field is not None and field != data.field:
            raise InvalidData(f"band is defined over {data.field.name}, not {field.name}")
        field = data.field
        d = data.multiplicity * eigen_degree(data.eigenvalue)
        word = data.word
    elif isinstance(data, StringData):
        field = field or QQ
        d = 1
        word = data.word
    else:
        raise InvalidData(f"cannot realize {type(data).__name__}")
    special = block_jordan(field, data.multiplicity, data.eigenvalue) if isinstance(data, BandData) else None
    return realize_word(config, field, word, d, special, window)


def realize_word(config: CurveConfig, field: ExactField, word, d: int, special=None,
                 window: int | None = None) -> Representation:
    """Realization of ``word`` with strips of width ``d``.

    ``special`` is the d x d block placed on the Jordan link of a closed word;
    it need not be invertible, which lets callers build eigenvalue pencils.
    """
    meta = {}
    if word.is_finite:
        top = max_prefix_degree(word)
        if window is None:
            window = top
        elif window < top:
            raise WindowTooSmall(f"word reaches degree {top}, window is {window}")
        letters, links = list(word.letters), word.links
    else:
        top = max_prefix_degree(word)
        if window is None:
            window = top + 2 * max(t.shift for t in (word.tail, word.left_tail) if t)
        if window < top:
            raise WindowTooSmall(f"the finite part reaches degree {top}, window is {window}")
        cut = truncate(word, window)
        letters, links = list(cut.letters), cut.links
        meta["truncated"] = True
    meta["window"] = window
    closed = word.closed
    n = len(letters)
    trav = _traversals(letters, links, closed, config)

    row_strips: dict = {}
    col_strips: dict = {}
    for i, x in enumerate(letters):
        if x.is_E:
            row_strips.setdefault(x.site, set()).add((x, trav[i]))
        else:
            key = (config.singular_of(x.comp, x.point), x.deg)
            col_strips.setdefault(key, set()).add(trav[i])
    col_index = {}
    cols = {}
    col_meta = {}
    for key, ks in col_strips.items():
        order = sorted(ks)
        col_meta[key] = tuple((k, d) for k in order)
        for pos, k in enumerate(order):
            col_index[(key, k)] = pos * d
        cols[key] = len(order) * d
    row_index = {}
    row_meta = {}
    for site, strips in row_strips.items():
        order = sorted(strips, key=lambda t: (_weight_key(t[0]), t[1]))
        row_meta[site] = tuple((x, k, d) for x, k in order)
        for pos, (x, k) in enumerate(order):
            row_index[(x, k)] = pos * d

    zero, one = field.zero(), field.one()
    mats = {site: [[zero] * cols[(config.singular_of(site[0], site[1]), site[2])]
                   for _ in range(len(strips) * d)] for site, strips in row_strips.items()}
    ident = tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))
    jordan = special if special is not None else ident
    pairs = n if closed else n - 1
    for j in range(pairs):
        if links[j] != DASH:
            continue
        a, b = j, (j + 1) % n
        e, f = (a, b) if letters[a].is_E else (b, a)
        x, y = letters[e], letters[f]
        block = jordan if (closed and j == n - 2) else ident
        r0 = row_index[(x, trav[e])]
        c0 = col_index[((config.singular_of(y.comp, y.point), y.deg), trav[f])]
        mat = mats[x.site]
        for r in range(d):
            for c in range(d):
                mat[r0 + r][c0 + c] = block[r][c]
    blocks = {}
    for site, strips in row_meta.items():
        per_letter: dict = {}
        for pos, (x, k, size) in enumerate(strips):
            per_letter.setdefault(x, []).extend(mats[site][pos * d:(pos + 1) * d])
        blocks[site] = per_letter
    rep = assemble(config, field, window, blocks, cols,
                   row_strips=row_meta, col_strips=col_meta, metadata=meta)
    return rep


def check_restrictions(rep: Representation) -> list[str]:
    """Violations of squareness, invertibility and conjugate block sizes."""
    out = []
    config, fld = rep.config, rep.field
    for (s, deg), size in sorted(rep.cols.items()):
        for comp, point in config.preimages(s):
            if size and (comp, point, deg) not in rep.matrices:
                out.append(f"({config.component_name(comp)}, {point}, {deg}): "
                           f"no matrix although {size} columns are shared here")
    for site in rep.sites():
        mat = rep.matrices[site]
        width = rep.cols.get(rep.colspace(site), 0)
        where = f"({config.component_name(site[0])}, {site[1]}, {site[2]})"
        if any(len(r) != width for r in mat):
            out.append(f"{where}: row lengths differ from the {width} shared columns")
            continue
        if len(mat) != width:
            out.append(f"{where}: matrix not square ({len(mat)}x{width})")
        elif width and not fld.is_invertible(mat):
            out.append(f"{where}: matrix not invertible")
        for x, size in rep.rows[site]:
            c = conjugate(x, config)
            if c == x or c.deg > rep.window:
                continue
            other = rep.block_size(c)
            if other == 0:
                out.append(f"{where}: block {x!r} is nonempty but its conjugate {c!r} is empty")
            elif other != size:
                out.append(f"{where}: conjugated strip size mismatch "
                           f"({x!r} has {size} rows, {c!r} has {other})")
    for site, strips in rep.row_strips.items():
        for x, k, size in strips:
            c = conjugate(x, config)
            if c == x or c.deg > rep.window:
                continue
            match = [t for t in rep.row_strips.get(c.site, ()) if t[0] == c and t[1] == k]
            if match and match[0][2] != size:
                out.append(f"conjugated strip size mismatch for {x!r} occurrence {k}")
    return out


def direct_sum(r1: Representation, r2: Representation) -> Representation:
    """Block-diagonal sum; strips of the second summand follow those of the first."""
    if r1.config != r2.config:
        raise ConfigMismatch("representations live on different curves")
    if r1.field != r2.field:
        raise ConfigMismatch("representations live over different fields")
    config, fld = r1.config, r1.field
    zero = fld.zero()
    keys = set(r1.cols) | set(r2.cols)
    cols = {k: r1.cols.get(k, 0) + r2.cols.get(k, 0) for k in keys}
    blocks: dict = {}
    for site in set(r1.matrices) | set(r2.matrices):
        key = (config.singular_of(site[0], site[1]), site[2])
        c1, c2 = r1.cols.get(key, 0), r2.cols.get(key, 0)
        per: dict = {}
        for x, _ in r1.rows.get(site, ()):
            per.setdefault(x, []).extend(list(r) + [zero] * c2 for r in r1.block_rows(site, x))
        for x, _ in r2.rows.get(site, ()):
            per.setdefault(x, []).extend([zero] * c1 + list(r) for r in r2.block_rows(site, x))
        blocks[site] = per
    return assemble(config, fld, max(r1.window, r2.window), blocks, cols)


def restrict_rows_cols(rep: Representation, row_sel: dict, col_sel: dict) -> Representation:
    """Sub-representation picking rows per (site, letter) and columns per column space."""
    blocks = {}
    for site in rep.matrices:
        key = rep.colspace(site)
        cs = col_sel.get(key, [])
        per = {}
        for x, start, size in rep.blocks(site):
            rs = row_sel.get((site, x), [])
            per[x] = [[rep.matrices[site][start + r][c] for c in cs] for r in rs]
        blocks[site] = per
    cols = {k: len(v) for k, v in col_sel.items()}
    return assemble(rep.config, rep.field, rep.window, blocks, cols)
