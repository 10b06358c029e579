"""Decomposition of representations and tensor products of data.

``decompose`` splits a representation with idempotents of its endomorphism
ring (Fitting's lemma applied to random endomorphisms), then names each
indecomposable piece by searching the words that fit its block sizes and,
for bands, reading the eigenvalue off the pencil ``Hom(piece, B(w, 1, t))``.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from math import gcd

import flint
import numpy as np

from .classification import decode_normalization
from .curves import E, F, Letter, class_key, conjugate, is_singleton
from .equivalence import (Certificate, _equation_rows, _scale_sites, find_certificate,
                          hom_equations, hom_space)
from .errors import ConfigMismatch, DecompositionFailure, InvalidData, NotAdmissible, WindowTooSmall
from .fields import QQ
from .realization import (Representation, assemble, check_restrictions, direct_sum, realize,
                          realize_word, restrict_rows_cols)
from .summands import LineBundle, TorsionComplex
from .words import (BandData, StringData, canonical_form, closed_word, eigen_degree,
                    is_proper_power, make_band, make_string, max_prefix_degree, open_word)


@dataclass
class DecompositionResult:
    summands: tuple  # ((datum or free summand, multiplicity), ...) sorted by key
    witness: Certificate | None = None
    target: Representation | None = None

    def expanded(self) -> list:
        return [d for d, k in self.summands for _ in range(k)]


def _item_key(d):
    return d.key if hasattr(d, "key") else repr(d)


def _collect(items) -> tuple:
    counts = Counter()
    first = {}
    for d in items:
        k = _item_key(d)
        counts[k] += 1
        first.setdefault(k, d)
    return tuple((first[k], counts[k]) for k in sorted(counts))


# ---------------------------------------------------------------------------
# splitting

def _charpoly_factors(field, phi: dict) -> list:
    facs = []
    for C in phi.values():
        for f, _ in field.charpoly_factors(C):
            if f not in facs:
                facs.append(f)
    return facs


def _matpow(field, A, e):
    n = len(A)
    out = field.identity(n)
    base = A
    while e:
        if e & 1:
            out = field.matmul(out, base)
        base = field.matmul(base, base)
        e >>= 1
    return out


def _fitting_idempotent(field, phi: dict, factor) -> dict:
    """Projection onto the generalized ``factor``-eigenspace of ``phi`` along the rest."""
    out = {}
    for k, C in phi.items():
        n = len(C)
        if not n:
            continue
        g = _matpow(field, field.poly_of_matrix(factor, C), n)
        ker = field.nullspace(g)
        im_cols = field.column_space(g)
        im = [tuple(g[i][j] for i in range(n)) for j in im_cols]
        basis = ker + im
        B = tuple(tuple(v[i] for v in basis) for i in range(n))
        diag = tuple(tuple(field.one() if i == j and i < len(ker) else field.zero()
                           for j in range(n)) for i in range(n))
        out[k] = field.matmul(field.matmul(B, diag), field.inverse(B))
    return out


def _candidates(hom, rng, extra: int):
    f = hom.source.field
    n = len(hom.basis)
    for i in range(n):
        yield hom.element([f.one() if j == i else f.zero() for j in range(n)])
    for i, j in itertools.combinations(range(n), 2):
        if i * n + j > 4 * n + 20:
            break
        yield hom.element([f.one() if t in (i, j) else f.zero() for t in range(n)])
    for _ in range(extra):
        yield hom.element([f.random(rng, bound=2) if rng.random() < 0.5 else f.zero()
                           for _ in range(n)])
        yield hom.random_element(rng)


def find_idempotent(rep: Representation, rng: random.Random, extra: int = 12):
    """A non-trivial idempotent endomorphism (column parts), or None."""
    f = rep.field
    hom = hom_space(rep, rep)
    if len(hom.basis) <= 1:
        return None
    for phi in _candidates(hom, rng, extra):
        facs = _charpoly_factors(f, phi)
        if len(facs) >= 2:
            return _fitting_idempotent(f, phi, facs[0])
    return None


def _split_basis(field, D):
    """Columns spanning im D followed by columns spanning ker D (D idempotent)."""
    n = len(D)
    one_minus = tuple(tuple(field.sub(field.one() if i == j else field.zero(), D[i][j])
                            for j in range(n)) for i in range(n))
    im = [tuple(D[i][j] for i in range(n)) for j in field.column_space(D)]
    ker = [tuple(one_minus[i][j] for i in range(n)) for j in field.column_space(one_minus)]
    if len(im) + len(ker) != n:
        raise DecompositionFailure("projection is not idempotent")
    P = tuple(tuple(v[i] for v in im + ker) for i in range(n))
    return P, len(im)


def split(rep: Representation, e: dict):
    """The two summands cut out by the idempotent endomorphism ``e``."""
    f = rep.field
    config = rep.config
    Q, rank_c = {}, {}
    for k, n in rep.cols.items():
        Q[k], rank_c[k] = _split_basis(f, e[k])
    new_mats, row_rank = {}, {}
    diag_of = {}
    for site in rep.sites():
        M = rep.matrices[site]
        if not M:
            continue
        n = len(M)
        eR = f.matmul(f.matmul(M, e[rep.colspace(site)]), f.inverse(M))
        D = [[f.zero()] * n for _ in range(n)]
        for x, start, size in rep.blocks(site):
            for i in range(size):
                for j in range(size):
                    D[start + i][start + j] = eR[start + i][start + j]
        D = tuple(map(tuple, D))
        I = f.identity(n)
        one_m_D = tuple(tuple(f.sub(I[i][j], D[i][j]) for j in range(n)) for i in range(n))
        one_m_e = tuple(tuple(f.sub(I[i][j], eR[i][j]) for j in range(n)) for i in range(n))
        u = f.matmul(D, eR)
        v = f.matmul(one_m_D, one_m_e)
        u = tuple(tuple(f.add(u[i][j], v[i][j]) for j in range(n)) for i in range(n))
        Pinv = [[f.zero()] * n for _ in range(n)]
        for x, start, size in rep.blocks(site):
            block = tuple(tuple(D[start + i][start + j] for j in range(size)) for i in range(size))
            ck = class_key(x, config) if conjugate(x, config).deg <= rep.window else x
            if ck in diag_of and diag_of[ck][0] != block:
                raise DecompositionFailure("conjugate diagonal blocks of the idempotent differ")
            if ck not in diag_of:
                P, r = _split_basis(f, block)
                diag_of[ck] = (block, f.inverse(P), r)
            _, Pi, r = diag_of[ck]
            row_rank[(site, x)] = r
            for i in range(size):
                for j in range(size):
                    Pinv[start + i][start + j] = Pi[i][j]
        S = f.matmul(tuple(map(tuple, Pinv)), u)
        new_mats[site] = f.matmul(f.matmul(S, M), Q[rep.colspace(site)])
    blocks = {}
    for site, M in new_mats.items():
        blocks[site] = {x: [list(r) for r in M[start:start + size]]
                        for x, start, size in rep.blocks(site)}
    moved = assemble(config, f, rep.window, blocks, dict(rep.cols))
    parts = []
    for first in (True, False):
        rows, cols = {}, {}
        for k, n in rep.cols.items():
            r = rank_c[k]
            cols[k] = list(range(r)) if first else list(range(r, n))
        for site in moved.sites():
            for x, start, size in moved.blocks(site):
                r = row_rank.get((site, x), 0)
                rows[(site, x)] = list(range(r)) if first else list(range(r, size))
        parts.append(restrict_rows_cols(moved, rows, cols))
    for site in moved.sites():
        M = moved.matrices[site]
        k = moved.colspace(site)
        rc = rank_c[k]
        for x, start, size in moved.blocks(site):
            r = row_rank.get((site, x), 0)
            for i in range(size):
                for j in range(len(M[0]) if M else 0):
                    if (i < r) != (j < rc) and M[start + i][j] != 0:
                        raise DecompositionFailure("idempotent did not split the matrices")
    return parts[0], parts[1]


# ---------------------------------------------------------------------------
# identification of indecomposables

def _budgets(rep: Representation):
    config = rep.config
    E_sizes = {}
    for site in rep.sites():
        for x, size in rep.rows[site]:
            E_sizes[class_key(x, config)] = size
    return E_sizes, dict(rep.cols)


def bridge_counts(rep: Representation) -> dict:
    """Number of ``y - F ~ F - y'`` bridges for each pair of row letters, times the strip width.

    For the two sites s, s' over one singular point the map T = M_s' M_s^{-1}
    changes by block triangular matrices on both sides, so the ranks of its
    corners T[weight <= a, weight >= b] are invariants; inclusion-exclusion
    over them counts the bridges.
    """
    f, config = rep.field, rep.config
    out = {}
    for (s, deg) in rep.cols:
        (c1, a1), (c2, a2) = config.preimages(s)
        s1, s2 = (c1, a1, deg), (c2, a2, deg)
        if s1 not in rep.matrices or s2 not in rep.matrices:
            continue
        T = f.matmul(rep.matrices[s2], f.inverse(rep.matrices[s1]))
        rb, cb = rep.blocks(s2), rep.blocks(s1)

        def corner(i, j):
            # rows of blocks rb[:i+1], columns of blocks cb[j:]
            if i < 0 or j >= len(cb):
                return 0
            r_end = rb[i][1] + rb[i][2]
            c_start = cb[j][1]
            sub = tuple(tuple(row[c_start:]) for row in T[:r_end])
            return f.rank(sub) if sub and sub[0] else 0

        for i, (y2, _, _) in enumerate(rb):
            for j, (y1, _, _) in enumerate(cb):
                n = corner(i, j) - corner(i - 1, j) - corner(i, j + 1) + corner(i - 1, j + 1)
                if n:
                    out[frozenset((y1, y2))] = n
    return out


def _e_letters_at(rep, site):
    return [x for x, _ in rep.rows.get(site, ())]


def _band_words(rep: Representation, ecount: dict, fcount: dict, bridges: dict, limit: int = 2000):
    config = rep.config
    classes = sorted(ecount, key=lambda x: x.key)
    if not classes:
        return
    c0 = classes[0]
    found = 0
    for x0 in sorted({c0, conjugate(c0, config)}, key=lambda x: x.key):
        eb = dict(ecount)
        fb = dict(fcount)
        bb = dict(bridges)
        eb[class_key(x0, config)] -= 1
        letters = [x0]

        def walk(z):
            nonlocal found
            if found >= limit:
                return
            fz = F(z.comp, z.point, z.deg)
            key = (config.singular_of(z.comp, z.point), z.deg)
            if fb.get(key, 0) <= 0:
                return
            fb[key] -= 1
            f2 = conjugate(fz, config)
            letters.extend([fz, f2])
            target = conjugate(x0, config)
            site = (f2.comp, f2.point, f2.deg)
            if target.site == site and bb.get(frozenset((z, target)), 0) == 1 and \
                    not any(eb.values()) and not any(fb.values()) and \
                    sum(bb.values()) == 1:
                letters.append(target)
                found += 1
                yield closed_word(letters)
                letters.pop()
            for y in _e_letters_at(rep, site):
                ck = class_key(y, config)
                bk = frozenset((z, y))
                if eb.get(ck, 0) <= 0 or is_singleton(y, config) or bb.get(bk, 0) <= 0:
                    continue
                eb[ck] -= 1
                bb[bk] -= 1
                yc = conjugate(y, config)
                letters.extend([y, yc])
                yield from walk(yc)
                letters.pop()
                letters.pop()
                bb[bk] += 1
                eb[ck] += 1
            letters.pop()
            letters.pop()
            fb[key] += 1

        yield from walk(x0)


def _string_words(rep: Representation, ecount: dict, fcount: dict, bridges: dict, limit: int = 2000):
    config = rep.config
    singles = sorted((x for x in ecount if is_singleton(x, config)), key=lambda x: x.key)
    found = 0
    for x0 in singles:
        eb = dict(ecount)
        fb = dict(fcount)
        bb = dict(bridges)
        eb[x0] -= 1
        letters = [x0]

        def walk(z):
            nonlocal found
            if found >= limit:
                return
            key = (config.singular_of(z.comp, z.point), z.deg)
            if fb.get(key, 0) <= 0:
                return
            fb[key] -= 1
            fz = F(z.comp, z.point, z.deg)
            f2 = conjugate(fz, config)
            letters.extend([fz, f2])
            site = (f2.comp, f2.point, f2.deg)
            for y in _e_letters_at(rep, site):
                ck = class_key(y, config)
                bk = frozenset((z, y))
                if eb.get(ck, 0) <= 0 or bb.get(bk, 0) <= 0:
                    continue
                eb[ck] -= 1
                bb[bk] -= 1
                if is_singleton(y, config):
                    if not any(eb.values()) and not any(fb.values()):
                        letters.append(y)
                        found += 1
                        yield open_word(letters)
                        letters.pop()
                else:
                    yc = conjugate(y, config)
                    letters.extend([y, yc])
                    yield from walk(yc)
                    letters.pop()
                    letters.pop()
                bb[bk] += 1
                eb[ck] += 1
            letters.pop()
            letters.pop()
            fb[key] += 1

        yield from walk(x0)


def _poly_ops(field):
    if field.p is None:
        return lambda cs: flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in cs])
    return lambda cs: flint.nmod_poly([int(c) for c in cs], field.p)


def _poly_coeffs(field, poly) -> list:
    if field.p is None:
        return [field(__import__("fractions").Fraction(int(c.p), int(c.q))) for c in poly.coeffs()]
    return [int(c) for c in poly.coeffs()]


def _pencil_eigenvalues(piece: Representation, word, rng: random.Random) -> list:
    """Candidate eigenvalues t where Hom(piece, B(word, 1, t)) jumps."""
    f = piece.field
    config = piece.config

    def equations(t):
        target = realize_word(config, f, word, 1, ((f(t),),))
        layout, nvars, coeff = hom_equations(piece, target)
        coeff = _scale_sites(piece, target, coeff)
        rows = _equation_rows(piece, target, layout, nvars, coeff)
        if not rows:
            return None
        A = np.array(rows)
        return A % f.p if f.p is not None else A

    A0 = equations(0)
    A1 = equations(1)
    if A0 is None:
        return []
    A1 = A1 - A0
    if f.p is not None:
        A1 = A1 % f.p

    def to_fl(A):
        if f.p is not None:
            return flint.nmod_mat(A.shape[0], A.shape[1], [int(v) for v in A.reshape(-1)], f.p)
        return flint.fmpq_mat(A.shape[0], A.shape[1], [int(v) for v in A.reshape(-1)])

    if f.p is not None and f.p <= 11:
        points = list(range(f.p))
    else:
        points = [rng.randint(2, 10**6) for _ in range(3)]
        if f.p is not None:
            points = [t % f.p for t in points]
    best = None
    for t0 in points:
        At = A0 + t0 * A1
        if f.p is not None:
            At = At % f.p
        r = to_fl(At).rank()
        if best is None or r > best[0]:
            best = (r, t0, At)
    r, t0, At = best
    if r == 0:
        return []
    _, cols = f.rref(f.from_flint(to_fl(At)))
    sub = At[:, cols]
    _, rows = f.rref(f.from_flint(to_fl(sub.T.copy())))
    B0 = to_fl(sub[rows, :])
    C = to_fl(A1[rows][:, cols])
    K = B0.inv() * C
    cp = K.charpoly()
    _, facs = cp.factor()
    mk = _poly_ops(f)
    u = mk([f(t0), f(-1)])
    out = []
    for q, _ in facs:
        qc = _poly_coeffs(f, q)
        if len(qc) == 2 and qc[0] == 0:
            continue  # mu = 0 gives no finite t
        e = len(qc) - 1
        P = mk([f(0)])
        for k, c in enumerate(qc):
            P = P + mk([c]) * (u ** (e - k))
        coeffs = _poly_coeffs(f, P)
        inv = f.inv(coeffs[-1])
        coeffs = [f.mul(c, inv) for c in coeffs]
        if coeffs[0] == 0:
            continue
        out.append(f.neg(coeffs[0]) if len(coeffs) == 2 else tuple(coeffs))
    if f.p is not None and f.p <= 11:
        out += [t for t in range(1, f.p) if t not in out]
    return out


def _divisors_desc(n: int) -> list:
    return [d for d in range(n, 0, -1) if n % d == 0]


def identify(piece: Representation, seed: int = 0):
    """A canonical band or string datum whose realization is isomorphic to ``piece``."""
    rng = random.Random(seed)
    config, f = piece.config, piece.field
    ecount, fcount = _budgets(piece)
    bridges = bridge_counts(piece)
    if not ecount:
        raise DecompositionFailure("empty representation has no word")
    if any(is_singleton(x, config) for x in ecount):
        seen = set()
        for w in _string_words(piece, ecount, fcount, bridges):
            data = canonical_form(make_string(w, config))
            if data.key in seen:
                continue
            seen.add(data.key)
            if find_certificate(piece, realize(data, f), seed) is not None:
                return data
        raise DecompositionFailure("no string word matches this indecomposable")
    g = 0
    for v in list(ecount.values()) + list(fcount.values()) + list(bridges.values()):
        g = gcd(g, v)
    for d in _divisors_desc(g):
        ec = {k: v // d for k, v in ecount.items()}
        fc = {k: v // d for k, v in fcount.items()}
        bc = {k: v // d for k, v in bridges.items()}
        seen = set()
        for w in _band_words(piece, ec, fc, bc):
            if is_proper_power(w):
                continue
            probe = canonical_form(make_band(w, 1, 1, config, f))
            if probe.word.key in seen:
                continue
            seen.add(probe.word.key)
            for lam in _pencil_eigenvalues(piece, w, rng):
                e = eigen_degree(lam)
                if d % e:
                    continue
                data = make_band(w, d // e, lam, config, f)
                if find_certificate(piece, realize(data), seed) is not None:
                    return canonical_form(data)
    raise DecompositionFailure("no band or string word matches this indecomposable")


# ---------------------------------------------------------------------------
# decomposition

def _pieces(rep: Representation, rng: random.Random) -> list:
    todo, done = [rep], []
    while todo:
        r = todo.pop()
        if not r.cols:
            continue
        e = find_idempotent(r, rng)
        if e is None:
            done.append(r)
            continue
        a, b = split(r, e)
        todo.extend([a, b])
    return done


def decompose(rep: Representation, seed: int = 0, witness: bool = True) -> DecompositionResult:
    """Split ``rep`` into indecomposables and name each one as a band or string datum."""
    problems = check_restrictions(rep)
    if problems:
        raise NotAdmissible("; ".join(problems))
    rng = random.Random(seed)
    found = []
    for attempt in range(3):
        pieces = _pieces(rep, rng)
        try:
            found = [identify(p, seed + attempt) for p in pieces]
            break
        except DecompositionFailure:
            if attempt == 2:
                raise
    summands = _collect(found)
    if not witness or not found:
        return DecompositionResult(summands)
    target = None
    for d in sorted(found, key=_item_key):
        r = realize(d, rep.field, window=None)
        target = r if target is None else direct_sum(target, r)
    target = assemble(target.config, target.field, rep.window,
                      {s: {x: target.block_rows(s, x) for x, _ in target.rows[s]} for s in target.sites()},
                      dict(target.cols))
    cert = find_certificate(rep, target, seed)
    if cert is None:
        raise DecompositionFailure("could not certify the decomposition")
    return DecompositionResult(summands, cert, target)


# ---------------------------------------------------------------------------
# tensor products

def normalization_tensor(s1, s2) -> Counter:
    out = Counter()
    if isinstance(s1, TorsionComplex) and isinstance(s2, LineBundle):
        s1, s2 = s2, s1
    if s1.comp != s2.comp:
        return out
    if isinstance(s1, LineBundle) and isinstance(s2, LineBundle):
        out[LineBundle(s1.comp, s1.degree + s2.degree, s1.shift + s2.shift)] += 1
    elif isinstance(s1, LineBundle):
        out[TorsionComplex(s2.comp, s2.point, s2.length, s1.shift + s2.shift)] += 1
    elif s1.point == s2.point:
        k = min(s1.length, s2.length)
        out[TorsionComplex(s1.comp, s1.point, k, s1.shift + s2.shift)] += 1
        out[TorsionComplex(s1.comp, s1.point, k, s1.shift + s2.shift - 1)] += 1
    return out


def _product_letters(x: Letter, y: Letter, deg: int):
    """Row labels for the product of blocks x and y, as [(letter, kind)].

    kind is "plain" or, for equal-length torsion pairs, "sum"/"head".
    """
    comp, point = x.comp, x.point
    if x.tier == 0 and y.tier == 0:
        return E(comp, point, deg, 0, x.mult + y.mult), "plain"
    if x.tier == 0:
        return E(comp, point, deg, y.tier, y.mult), "plain"
    if y.tier == 0:
        return E(comp, point, deg, x.tier, x.mult), "plain"
    k = min(x.length, y.length)
    if x.tier == y.tier:
        return E(comp, point, deg, x.tier, x.mult if x.length == k else y.mult), "plain"
    h, t = (x, y) if x.tier == 1 else (y, x)
    head_first = x.tier == 1
    if h.length == t.length:
        # h (x) t of the first factor's head with the second's tail stays a head
        return (E(comp, point, deg, 1, -k), "head") if head_first else (E(comp, point, deg, -1, k), "sum")
    if t.length < h.length:
        return E(comp, point, deg, -1, k), "plain"
    return E(comp, point, deg, 1, -k), "plain"


def tensor_representations(X: Representation, Y: Representation, window: int) -> Representation:
    """Degree-graded Kronecker product of two representations, truncated at ``window``."""
    if X.config != Y.config:
        raise ConfigMismatch("representations live on different curves")
    if X.field != Y.field:
        raise ConfigMismatch("representations live over different fields")
    f, config = X.field, X.config
    zero = f.zero()
    offsets, cols = {}, {}
    for (s, k), n1 in sorted(X.cols.items()):
        for (s2, l), n2 in sorted(Y.cols.items()):
            if s2 != s or k + l > window:
                continue
            key = (s, k + l)
            offsets[(s, k, l)] = cols.get(key, 0)
            cols[key] = cols.get(key, 0) + n1 * n2
    blocks = {}
    for sx in X.sites():
        for sy in Y.sites():
            if sx[:2] != sy[:2] or sx[2] + sy[2] > window:
                continue
            comp, point = sx[:2]
            n = sx[2] + sy[2]
            s = config.singular_of(comp, point)
            width = cols[(s, n)]
            off = offsets[(s, sx[2], sy[2])]
            MX, MY = X.matrices[sx], Y.matrices[sy]
            cx, cy = len(MX[0]) if MX else 0, len(MY[0]) if MY else 0
            for x, x0, xn in X.blocks(sx):
                for y, y0, yn in Y.blocks(sy):
                    label, kind = _product_letters(x, y, n)
                    rows = []
                    for i in range(xn):
                        for j in range(yn):
                            row = [zero] * width
                            rx, ry = MX[x0 + i], MY[y0 + j]
                            for a in range(cx):
                                if rx[a] == 0:
                                    continue
                                for b in range(cy):
                                    if ry[b] != 0:
                                        row[off + a * cy + b] = f.mul(rx[a], ry[b])
                            rows.append(row)
                    order = (class_key(x, config).key, class_key(y, config).key)
                    blocks.setdefault((comp, point, n), []).append((label, kind, order, x, y, rows))
    out = {}
    for site, items in blocks.items():
        per = {}
        heads = {}
        for label, kind, order, x, y, rows in items:
            if kind == "head":
                heads[(x.deg, y.deg, class_key(x, config), class_key(y, config))] = rows
        for label, kind, order, x, y, rows in sorted(items, key=lambda t: t[2]):
            if kind == "sum":
                # first factor's tail with second's head, plus the matching head x tail rows
                partner = heads.get((x.deg - 1, y.deg + 1, class_key(x, config),
                                     class_key(y, config)))
                if partner is not None:
                    rows = [[f.add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(rows, partner)]
            per.setdefault(label, []).extend(rows)
        out[site] = per
    return assemble(config, f, window, out, cols)


def _data_field(*data):
    fields = {d.field for d in data if isinstance(d, BandData)}
    if len(fields) > 1:
        raise ConfigMismatch("data over different fields")
    return fields.pop() if fields else QQ


def tensor(d1, d2, window: int | None = None, seed: int = 0) -> DecompositionResult:
    """Derived tensor product of two finite data, decomposed into band and string data."""
    if d1.config != d2.config:
        raise ConfigMismatch("data live on different curves")
    for d in (d1, d2):
        if not isinstance(d, (BandData, StringData)):
            raise InvalidData(f"cannot tensor {type(d).__name__}")
        if not d.word.is_finite:
            raise WindowTooSmall("tailed data have no finite window")
    f = _data_field(d1, d2)
    w1, w2 = max_prefix_degree(d1.word), max_prefix_degree(d2.word)
    need = w1 + w2
    if window is None:
        window = need + 1
    elif window < need:
        raise WindowTooSmall(f"the product reaches degree {need}, window is {window}")
    X, Y = realize(d1, f), realize(d2, f)
    P = tensor_representations(X, Y, window)
    result = decompose(P, seed) if P.cols else DecompositionResult(())
    extra = Counter()
    free1 = d1.free_summands if isinstance(d1, StringData) else ()
    free2 = d2.free_summands if isinstance(d2, StringData) else ()
    if free1 or free2:
        n1, n2 = decode_normalization(d1), decode_normalization(d2)
        for s1, k1 in n1.items():
            for s2, k2 in n2.items():
                if s1 in free1 or s2 in free2:
                    for s, k in normalization_tensor(s1, s2).items():
                        extra[s] += k * k1 * k2
    items = result.expanded() + [s for s, k in extra.items() for _ in range(k)]
    return DecompositionResult(_collect(items), result.witness, result.target)
