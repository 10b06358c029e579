"""Admissible transformations of representations.

A certificate acts on a representation by ``M' = S · M · C^{-1}`` at every
site.  ``C`` is chosen per column space (shared by the two sites over one
singular point).  ``S`` is block lower triangular in the weight order: its
diagonal block for a letter is shared with the conjugate letter, and its
off-diagonal blocks only move rows from lower-weight blocks into
higher-weight blocks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .curves import class_key, conjugate
from .errors import InadmissibleCertificate, ShapeMismatch, SingularBlock, TooLarge
from .realization import Representation, assemble


@dataclass
class Certificate:
    columns: dict  # (singular point, degree) -> C
    rows: dict  # class representative letter -> R
    additions: dict = field(default_factory=dict)  # (site, target letter, source letter) -> A


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _wkey(x):
    return (x.tier, x.mult)


def _class(rep: Representation, x):
    c = conjugate(x, rep.config)
    if c.deg > rep.window:
        return x
    return class_key(x, rep.config)


def row_classes(rep: Representation) -> dict:
    """Class representative -> block size for every row block."""
    out = {}
    for site in rep.sites():
        for x, size in rep.rows[site]:
            out[_class(rep, x)] = size
    return out


def identity_certificate(rep: Representation) -> Certificate:
    f = rep.field
    return Certificate({k: f.identity(n) for k, n in rep.cols.items()},
                       {c: f.identity(n) for c, n in row_classes(rep).items()})


def row_transform(rep: Representation, cert: Certificate, site) -> list[list]:
    """The full row matrix S at ``site``."""
    f = rep.field
    blocks = rep.blocks(site)
    n = sum(size for _, _, size in blocks)
    S = [[f.zero()] * n for _ in range(n)]
    for x, start, size in blocks:
        R = cert.rows.get(_class(rep, x))
        if R is None:
            R = f.identity(size)
        if len(R) != size:
            raise ShapeMismatch(f"row block for {x!r} has size {size}, certificate gives {len(R)}")
        for i in range(size):
            for j in range(size):
                S[start + i][start + j] = R[i][j]
    offsets = {x: (start, size) for x, start, size in blocks}
    for (s, tgt, src), A in cert.additions.items():
        if s != site:
            continue
        if tgt not in offsets or src not in offsets:
            raise ShapeMismatch(f"addition between absent blocks at {site}")
        if _wkey(tgt) <= _wkey(src):
            if any(v != 0 for r in A for v in r):
                raise InadmissibleCertificate("inadmissible addition direction")
            continue
        t0, tn = offsets[tgt]
        s0, sn = offsets[src]
        if len(A) != tn or any(len(r) != sn for r in A):
            raise ShapeMismatch(f"addition block {tgt!r} <- {src!r} has the wrong shape")
        for i in range(tn):
            for j in range(sn):
                S[t0 + i][s0 + j] = A[i][j]
    return S


def apply_certificate(rep: Representation, cert: Certificate) -> Representation:
    """The representation with matrices ``S · M · C^{-1}``."""
    f = rep.field
    for key, n in rep.cols.items():
        C = cert.columns.get(key)
        if C is None or len(C) != n or any(len(r) != n for r in C):
            raise ShapeMismatch(f"column change for {key} missing or of the wrong size")
        if not f.is_invertible(C):
            raise SingularBlock(f"column change for {key} is singular")
    for c, R in cert.rows.items():
        if R and not f.is_invertible(R):
            raise SingularBlock(f"row block for {c!r} is singular")
    cinv = {k: f.inverse(cert.columns[k]) for k in rep.cols}
    blocks = {}
    for site in rep.sites():
        M = rep.matrices[site]
        if not M:
            blocks[site] = {}
            continue
        S = row_transform(rep, cert, site)
        new = f.matmul(f.matmul(tuple(map(tuple, S)), M), cinv[rep.colspace(site)])
        blocks[site] = {x: [list(r) for r in new[start:start + size]]
                        for x, start, size in rep.blocks(site)}
    return assemble(rep.config, f, rep.window, blocks, dict(rep.cols),
                    row_strips=rep.row_strips, col_strips=rep.col_strips,
                    metadata=dict(rep.metadata))


def _shape_mismatch(r1: Representation, r2: Representation) -> str:
    if r1.config != r2.config or r1.field != r2.field:
        return "different curve or field"
    if r1.cols != r2.cols:
        return "column dimensions differ"
    if {s: r for s, r in r1.rows.items() if r} != {s: r for s, r in r2.rows.items() if r}:
        return "row block structures differ"
    return ""


def verify_equivalence(rep1: Representation, rep2: Representation, cert: Certificate) -> Verdict:
    why = _shape_mismatch(rep1, rep2)
    if why:
        return Verdict(False, why)
    for (site, tgt, src), A in cert.additions.items():
        if _wkey(tgt) <= _wkey(src) and any(v != 0 for r in A for v in r):
            return Verdict(False, "inadmissible addition direction")
    for c in cert.rows:
        conj = conjugate(c, rep1.config)
        if conj != c and conj.deg <= rep1.window and c != class_key(c, rep1.config):
            return Verdict(False, f"row block for {c!r} is not keyed by its class")
    try:
        out = apply_certificate(rep1, cert)
    except (ShapeMismatch, SingularBlock, InadmissibleCertificate) as exc:
        return Verdict(False, str(exc))
    if out.matrices != rep2.matrices:
        return Verdict(False, "transformed matrices differ from the target")
    return Verdict(True, "")


def random_certificate(rep: Representation, seed: int, bound: int = 3) -> Certificate:
    """A random admissible certificate; deterministic in the shape and the seed."""
    rng = random.Random(seed)
    f = rep.field
    columns = {k: f.random_invertible(rep.cols[k], rng, bound) for k in sorted(rep.cols)}
    classes = row_classes(rep)
    rows = {c: f.random_invertible(classes[c], rng, bound) for c in sorted(classes, key=lambda x: x.key)}
    additions = {}
    for site in rep.sites():
        blocks = rep.blocks(site)
        for (t, _, tn), (s, _, sn) in itertools.product(blocks, blocks):
            if _wkey(t) > _wkey(s):
                additions[(site, t, s)] = tuple(tuple(f.random(rng, bound=bound) for _ in range(sn))
                                                for _ in range(tn))
    return Certificate(columns, rows, additions)


def certificate_from_transforms(rep: Representation, S: dict, C: dict) -> Certificate:
    """Split full row matrices ``S`` per site into a certificate (no checks)."""
    rows, adds = {}, {}
    for site in rep.sites():
        blocks = rep.blocks(site)
        Ss = S[site]
        for x, start, size in blocks:
            rows[_class(rep, x)] = tuple(tuple(Ss[start + i][start + j] for j in range(size))
                                         for i in range(size))
        for (t, t0, tn), (s, s0, sn) in itertools.product(blocks, blocks):
            if _wkey(t) > _wkey(s):
                adds[(site, t, s)] = tuple(tuple(Ss[t0 + i][s0 + j] for j in range(sn))
                                           for i in range(tn))
    return Certificate(dict(C), rows, adds)


def compose(rep: Representation, first: Certificate, second: Certificate) -> Certificate:
    """The certificate acting as ``first`` followed by ``second``."""
    f = rep.field
    S = {s: f.matmul(tuple(map(tuple, row_transform(rep, second, s))),
                     tuple(map(tuple, row_transform(rep, first, s)))) for s in rep.sites()}
    C = {k: f.matmul(second.columns[k], first.columns[k]) for k in rep.cols}
    return certificate_from_transforms(rep, S, C)


def inverse(rep: Representation, cert: Certificate) -> Certificate:
    f = rep.field
    S = {s: f.inverse(tuple(map(tuple, row_transform(rep, cert, s)))) for s in rep.sites()}
    C = {k: f.inverse(cert.columns[k]) for k in rep.cols}
    return certificate_from_transforms(rep, S, C)


# ---------------------------------------------------------------------------
# morphism spaces

def _to_np(field, mat):
    if field.p is not None:
        return np.array(mat, dtype=np.int64).reshape(len(mat), len(mat[0]) if mat else 0)
    return np.array(mat, dtype=object).reshape(len(mat), len(mat[0]) if mat else 0)


def _integral_inverse(field, mat):
    """An integer matrix proportional to the inverse (rationals) or the inverse itself (F_p)."""
    inv = field.inverse(mat)
    if field.p is not None:
        return np.array(inv, dtype=np.int64), 1
    from math import lcm
    den = 1
    for r in inv:
        for v in r:
            den = lcm(den, v.denominator)
    arr = np.array([[int(v * den) for v in r] for r in inv], dtype=object)
    return arr, den


def _integral(field, mat):
    if field.p is not None:
        return np.array(mat, dtype=np.int64), 1
    from math import lcm
    den = 1
    for r in mat:
        for v in r:
            den = lcm(den, v.denominator)
    return np.array([[int(v * den) for v in r] for r in mat], dtype=object), den


@dataclass
class HomSpace:
    """Solutions (C_k) of the morphism equations from ``source`` to ``target``."""

    source: Representation
    target: Representation
    layout: list  # [(column space, rows, cols, offset)]
    basis: list  # list of flat coefficient vectors
    nvars: int

    def element(self, coeffs) -> dict:
        f = self.source.field
        vec = [f.zero()] * self.nvars
        for c, b in zip(coeffs, self.basis):
            if c == 0:
                continue
            for i, v in enumerate(b):
                if v != 0:
                    vec[i] = f.add(vec[i], f.mul(c, v))
        return self.unflatten(vec)

    def unflatten(self, vec) -> dict:
        out = {}
        for key, r, c, off in self.layout:
            out[key] = tuple(tuple(vec[off + i * c + j] for j in range(c)) for i in range(r))
        return out

    def random_element(self, rng: random.Random, bound: int = 50) -> dict:
        f = self.source.field
        return self.element([f.random(rng, bound=bound) for _ in self.basis])

    def is_iso(self, C: dict) -> bool:
        f = self.source.field
        for key, r, c, _ in self.layout:
            if r != c or not f.is_invertible(C[key]):
                return False
        keys = {k for k, _, _, _ in self.layout}
        return set(self.source.cols) == keys == set(self.target.cols)

    def find_iso(self, rng: random.Random, tries: int = 12):
        if set(self.source.cols) != set(self.target.cols):
            return None
        if any(self.source.cols[k] != self.target.cols[k] for k in self.source.cols):
            return None
        if not self.basis:
            return None
        for _ in range(tries):
            C = self.random_element(rng)
            if self.is_iso(C):
                return C
        return None


def hom_equations(X: Representation, Y: Representation, t_site=None):
    """Linear equations on the column maps C_k for morphisms X -> Y.

    Returns the layout, the number of unknowns and a list of integer (or
    mod-p) equation rows, grouped per site.
    """
    f = X.field
    keys = sorted(set(X.cols) & set(Y.cols))
    layout, off = [], 0
    for k in keys:
        layout.append((k, Y.cols[k], X.cols[k], off))
        off += Y.cols[k] * X.cols[k]
    offs = {k: (o, r, c) for k, r, c, o in layout}
    nvars = off
    # coefficient tensors S[r, c] = sum_{a,b} MY[r,a] C[a,b] MXinv[b,c], per site
    coeff = {}
    for site in sorted(set(X.matrices) | set(Y.matrices), key=lambda s: (s[2], s[0], s[1])):
        key = X.colspace(site)
        if key not in offs:
            continue
        MX, MY = X.matrices.get(site), Y.matrices.get(site)
        if not MX or not MY:
            continue
        A, da = _integral(f, MY)
        B, db = _integral_inverse(f, MX)
        T = np.multiply.outer(A, B)  # [r, a, b, c]
        T = np.transpose(T, (0, 3, 1, 2))  # [r, c, a, b]
        if f.p is not None:
            T = T % f.p
        coeff[site] = (T, key)
    return layout, nvars, coeff


def _equation_rows(X, Y, layout, nvars, coeff):
    f = X.field
    offs = {k: (o, r, c) for k, r, c, o in layout}
    rows = []

    def place(site, r, c, scale=1):
        T, key = coeff[site]
        o, nr, nc = offs[key]
        v = np.zeros(nvars, dtype=T.dtype)
        v[o:o + nr * nc] = T[r, c].reshape(-1) * scale
        return v

    for site, (T, key) in coeff.items():
        yb = Y.blocks(site)
        xb = X.blocks(site)
        for y, y0, yn in yb:
            for x, x0, xn in xb:
                if _wkey(y) < _wkey(x) or (y != x and _wkey(y) == _wkey(x)):
                    for i in range(yn):
                        for j in range(xn):
                            rows.append(place(site, y0 + i, x0 + j))
    # diagonal blocks of conjugate letters agree
    done = set()
    for site in coeff:
        for y, y0, yn in Y.blocks(site):
            xs = [(x0, xn) for x, x0, xn in X.blocks(site) if x == y]
            if not xs:
                continue
            c = conjugate(y, X.config)
            if c == y or c.deg > max(X.window, Y.window):
                continue
            if (c, y) in done:
                continue
            done.add((y, c))
            if c.site not in coeff:
                continue
            cy = [(c0, cn) for z, c0, cn in Y.blocks(c.site) if z == c]
            cx = [(c0, cn) for z, c0, cn in X.blocks(c.site) if z == c]
            if not cy or not cx:
                continue
            x0, xn = xs[0]
            c0y, _ = cy[0]
            c0x, _ = cx[0]
            for i in range(yn):
                for j in range(xn):
                    rows.append(place(site, y0 + i, x0 + j) - place(c.site, c0y + i, c0x + j))
    return rows


def _scale_sites(X, Y, coeff):
    """Bring every site's coefficient tensor to a common denominator (rationals only)."""
    if X.field.p is not None:
        return coeff
    from math import lcm
    dens = {}
    for site in coeff:
        MX, MY = X.matrices[site], Y.matrices[site]
        _, da = _integral(X.field, MY)
        _, db = _integral_inverse(X.field, MX)
        dens[site] = da * db
    common = 1
    for d in dens.values():
        common = lcm(common, d)
    return {s: (T * (common // dens[s]), k) for s, (T, k) in coeff.items()}


def hom_space(X: Representation, Y: Representation) -> HomSpace:
    """All admissible morphisms X -> Y, as a basis of column-map tuples."""
    f = X.field
    layout, nvars, coeff = hom_equations(X, Y)
    coeff = _scale_sites(X, Y, coeff)
    rows = _equation_rows(X, Y, layout, nvars, coeff)
    if not nvars:
        return HomSpace(X, Y, layout, [], 0)
    if rows:
        M = np.array(rows)
        if f.p is not None:
            M = M % f.p
        basis = _nullspace_np(f, M, nvars)
    else:
        basis = [tuple(f.one() if i == j else f.zero() for i in range(nvars)) for j in range(nvars)]
    return HomSpace(X, Y, layout, basis, nvars)


def _nullspace_np(f, M, nvars):
    import flint
    if f.p is not None:
        mat = flint.nmod_mat(M.shape[0], nvars, [int(v) for v in M.reshape(-1)], f.p)
    else:
        mat = flint.fmpq_mat(M.shape[0], nvars, [int(v) for v in M.reshape(-1)])
    rref, rank = mat.rref()
    R = f.from_flint(rref)
    pivots = []
    for i in range(rank):
        for j in range(nvars):
            if R[i][j] != 0:
                pivots.append(j)
                break
    ps = set(pivots)
    basis = []
    for free in range(nvars):
        if free in ps:
            continue
        v = [f.zero()] * nvars
        v[free] = f.one()
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(R[i][free])
        basis.append(tuple(v))
    return basis


def row_maps(X: Representation, Y: Representation, C: dict) -> dict:
    """The row matrices S = M_Y · C · M_X^{-1} induced by column maps C."""
    f = X.field
    out = {}
    for site in X.matrices:
        key = X.colspace(site)
        if key not in C or not X.matrices[site] or site not in Y.matrices:
            continue
        out[site] = f.matmul(f.matmul(Y.matrices[site], C[key]), f.inverse(X.matrices[site]))
    return out


def find_certificate(X: Representation, Y: Representation, seed: int = 0):
    """An admissible certificate carrying X to Y, or None if none was found."""
    if _shape_mismatch(X, Y):
        return None
    hom = hom_space(X, Y)
    C = hom.find_iso(random.Random(seed))
    if C is None:
        return None
    S = row_maps(X, Y, C)
    return certificate_from_transforms(X, S, C)


# ---------------------------------------------------------------------------
# brute force

_GL_CACHE: dict = {}


def _general_linear(n: int, p: int) -> np.ndarray:
    key = (n, p)
    if key not in _GL_CACHE:
        mats = []
        for entries in itertools.product(range(p), repeat=n * n):
            m = np.array(entries, dtype=np.int64).reshape(n, n)
            if _rank_mod(m, p) == n:
                mats.append(m)
        _GL_CACHE[key] = np.array(mats, dtype=np.int64).reshape(len(mats), n, n)
    return _GL_CACHE[key]


def _rank_mod(m: np.ndarray, p: int) -> int:
    a = m.copy() % p
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        r += 1
    return r


def brute_force_equivalent(rep1: Representation, rep2: Representation, limit: int = 3_000_000) -> bool:
    """Exhaustive search over all column changes; the row change is then forced.

    Works over small prime fields only.  Raises TooLarge when the search space
    exceeds ``limit`` elements or a site has dimension above 3.
    """
    f = rep1.field
    if f.p is None or f.p > 7:
        raise TooLarge("brute force needs a small prime field")
    if _shape_mismatch(rep1, rep2):
        return False
    p = f.p
    keys = sorted(rep1.cols)
    if any(n > 3 for n in rep1.cols.values()):
        raise TooLarge("site dimension above 3")
    size = 1
    for k in keys:
        size *= len(_general_linear(rep1.cols[k], p))
    if size > limit:
        raise TooLarge(f"transformation group has {size} column elements")
    sites = [s for s in rep1.sites() if rep1.matrices[s]]
    data = []
    for s in sites:
        M1 = np.array(rep1.matrices[s], dtype=np.int64)
        M2 = np.array(rep2.matrices[s], dtype=np.int64)
        M1inv = np.array(f.inverse(rep1.matrices[s]), dtype=np.int64)
        blocks = rep1.blocks(s)
        zero_mask = np.zeros(M1.shape, dtype=bool)
        for (t, t0, tn), (u, u0, un) in itertools.product(blocks, blocks):
            if _wkey(t) < _wkey(u):
                zero_mask[t0:t0 + tn, u0:u0 + un] = True
        data.append((s, keys.index(rep1.colspace(s)), M2, M1inv, blocks))
    diag_pairs = []
    for i, (s, _, _, _, blocks) in enumerate(data):
        for x, x0, xn in blocks:
            c = conjugate(x, rep1.config)
            if c == x or c.deg > rep1.window or x.key > c.key:
                continue
            for j, (s2, _, _, _, b2) in enumerate(data):
                for y, y0, yn in b2:
                    if y == c:
                        diag_pairs.append((i, x0, xn, j, y0))
    masks = []
    for s, _, M2, _, blocks in data:
        mask = np.zeros(M2.shape, dtype=bool)
        for (t, t0, tn), (u, u0, un) in itertools.product(blocks, blocks):
            if _wkey(t) < _wkey(u):
                mask[t0:t0 + tn, u0:u0 + un] = True
        masks.append(mask)
    groups = [_general_linear(rep1.cols[k], p) for k in keys]
    # vectorise over the first column space, loop over the rest
    for rest in itertools.product(*[range(len(g)) for g in groups[1:]]):
        choice = [None] + [groups[i + 1][r] for i, r in enumerate(rest)]
        ok = np.ones(len(groups[0]), dtype=bool)
        Ss = []
        for idx, (s, ki, M2, M1inv, _) in enumerate(data):
            if ki == 0:
                S = np.einsum("ij,njk,kl->nil", M2, groups[0], M1inv) % p
            else:
                S = np.broadcast_to((M2 @ choice[ki] @ M1inv) % p, (len(groups[0]),) + M2.shape)
            ok &= ~np.any(S[:, masks[idx]] != 0, axis=1) if masks[idx].any() else True
            Ss.append(S)
        for i, x0, xn, j, y0 in diag_pairs:
            a = Ss[i][:, x0:x0 + xn, x0:x0 + xn]
            b = Ss[j][:, y0:y0 + xn, y0:y0 + xn]
            ok &= np.all((a - b).reshape(len(ok), -1) == 0, axis=1)
        if ok.any():
            return True
    return False
