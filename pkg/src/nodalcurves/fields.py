"""Exact fields (rationals and prime fields) and dense matrix helpers.

Elements are plain Python values: ``Fraction`` for the rationals and ``int``
in ``range(p)`` for a prime field.  Matrices are tuples of row tuples.  Heavy
operations (rank, inverse, kernels, characteristic polynomials) are delegated
to python-flint.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

Matrix = tuple  # tuple[tuple[element, ...], ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class ExactField:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    # -- naming ----------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __repr__(self) -> str:
        return f"ExactField({self.name})"

    @classmethod
    def parse(cls, text: str) -> "ExactField":
        """Accepts ``Q``, ``QQ``, ``F101``, ``Fp:101`` or ``101``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ", "RATIONALS"):
            return cls(None)
        for prefix in ("Fp:", "FP:", "F", "f", "GF"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls(int(t[len(prefix):]))
        if t.isdigit():
            return cls(int(t))
        raise FieldError(f"unrecognised field {text!r}")

    # -- scalars ---------------------------------------------------------
    def __call__(self, x) -> object:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        return int(x) % self.p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.p is None else pow(int(a), -1, self.p)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        return a ** e if self.p is None else pow(int(a), e, self.p)

    def format(self, a) -> str:
        return str(a)

    def sort_key(self, a):
        return a if self.p is None else int(a)

    def elements(self) -> list:
        if self.p is None:
            raise FieldError("the rationals are infinite")
        return list(range(self.p))

    def random(self, rng: random.Random, nonzero: bool = False, bound: int = 3):
        """Uniform over F_p; integers in [-bound, bound] over Q."""
        while True:
            x = rng.randrange(self.p) if self.p else Fraction(rng.randint(-bound, bound))
            if x != 0 or not nonzero:
                return x

    # -- flint bridge ----------------------------------------------------
    def to_flint(self, rows: Sequence[Sequence], ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        flat = [x for r in rows for x in r]
        if self.p is None:
            return flint.fmpq_mat(nrows, ncols, [flint.fmpq(x.numerator, x.denominator)
                                                  if isinstance(x, Fraction) else x for x in flat])
        return flint.nmod_mat(nrows, ncols, [int(x) for x in flat], self.p)

    def from_flint(self, m) -> Matrix:
        r, c = m.nrows(), m.ncols()
        if self.p is None:
            return tuple(tuple(Fraction(int(m[i, j].p), int(m[i, j].q)) for j in range(c))
                         for i in range(r))
        return tuple(tuple(int(m[i, j]) for j in range(c)) for i in range(r))

    # -- matrices --------------------------------------------------------
    def matrix(self, rows: Iterable[Iterable]) -> Matrix:
        return tuple(tuple(self(x) for x in r) for r in rows)

    def identity(self, n: int) -> Matrix:
        return tuple(tuple(self.one() if i == j else self.zero() for j in range(n))
                     for i in range(n))

    def zeros(self, r: int, c: int) -> Matrix:
        return tuple(tuple(self.zero() for _ in range(c)) for _ in range(r))

    def matmul(self, a: Matrix, b: Matrix) -> Matrix:
        if not a or not b or not b[0]:
            return self.zeros(len(a), len(b[0]) if b else 0)
        if len(a[0]) != len(b):
            raise FieldError("shape mismatch in product")
        return self.from_flint(self.to_flint(a) * self.to_flint(b))

    def rank(self, a: Matrix) -> int:
        if not a or not a[0]:
            return 0
        return self.to_flint(a).rank()

    def is_invertible(self, a: Matrix) -> bool:
        return len(a) == (len(a[0]) if a else 0) and self.rank(a) == len(a)

    def inverse(self, a: Matrix) -> Matrix:
        if not a:
            return ()
        if not self.is_invertible(a):
            raise ZeroDivisionError("singular matrix")
        return self.from_flint(self.to_flint(a).inv())

    def det(self, a: Matrix):
        if not a:
            return self.one()
        d = self.to_flint(a).det()
        return Fraction(int(d.p), int(d.q)) if self.p is None else int(d)

    def rref(self, a: Matrix):
        """Return (rref rows, pivot columns)."""
        if not a or not a[0]:
            return a, []
        r, rank = self.to_flint(a).rref()
        rows = self.from_flint(r)
        pivots = []
        for i in range(rank):
            for j, x in enumerate(rows[i]):
                if x != 0:
                    pivots.append(j)
                    break
        return rows, pivots

    def nullspace(self, a: Matrix, ncols: int | None = None) -> list[tuple]:
        """Basis of {v : a v = 0}, one vector per free column of the rref."""
        n = ncols if ncols is not None else (len(a[0]) if a else 0)
        if not a:
            return [tuple(self.one() if i == j else self.zero() for i in range(n)) for j in range(n)]
        rows, pivots = self.rref(a)
        pivot_set = set(pivots)
        basis = []
        for f in range(n):
            if f in pivot_set:
                continue
            v = [self.zero()] * n
            v[f] = self.one()
            for i, pc in enumerate(pivots):
                v[pc] = self.neg(rows[i][f])
            basis.append(tuple(v))
        return basis

    def column_space(self, a: Matrix) -> list[int]:
        """Indices of a maximal independent set of columns."""
        return self.rref(a)[1]

    def charpoly_factors(self, a: Matrix) -> list[tuple[tuple, int]]:
        """Monic irreducible factors of the characteristic polynomial.

        Coefficients are listed low degree first.
        """
        if not a:
            return []
        cp = self.to_flint(a).charpoly()
        _, facs = cp.factor()
        out = []
        for poly, e in facs:
            coeffs = [self(Fraction(int(c.p), int(c.q))) if self.p is None else int(c)
                      for c in (flint.fmpq_poly(poly).coeffs() if self.p is None else poly.coeffs())]
            lead = coeffs[-1]
            inv = self.inv(lead)
            out.append((tuple(self.mul(c, inv) for c in coeffs), e))
        out.sort(key=lambda t: (len(t[0]), [self.sort_key(c) for c in t[0]]))
        return out

    def poly_of_matrix(self, coeffs: Sequence, a: Matrix) -> Matrix:
        n = len(a)
        fa = self.to_flint(a)
        acc = self.to_flint(self.zeros(n, n))
        for c in reversed(coeffs):
            acc = acc * fa + self.to_flint(self.identity(n)) * (
                flint.fmpq(c.numerator, c.denominator) if self.p is None else int(c))
        return self.from_flint(acc)

    def roots(self, coeffs: Sequence) -> list:
        """Roots in the field of the polynomial with the given coefficients."""
        if all(c == 0 for c in coeffs):
            raise FieldError("zero polynomial has every root")
        if self.p is None:
            poly = flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in coeffs])
            return sorted(Fraction(int(r.p), int(r.q)) for r, _ in poly.roots())
        poly = flint.nmod_poly([int(c) for c in coeffs], self.p)
        return sorted(int(r) for r, _ in poly.roots())

    def random_invertible(self, n: int, rng: random.Random, bound: int = 3) -> Matrix:
        while True:
            m = tuple(tuple(self.random(rng, bound=bound) for _ in range(n)) for _ in range(n))
            if self.is_invertible(m):
                return m


QQ = ExactField(None)


def companion(field: ExactField, coeffs: Sequence) -> Matrix:
    """Companion matrix of a monic polynomial (coefficients low degree first)."""
    d = len(coeffs) - 1
    rows = [[field.zero()] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = field.one()
    for i in range(d):
        rows[i][d - 1] = field.neg(coeffs[i])
    return tuple(tuple(r) for r in rows)


def block_jordan(field: ExactField, m: int, eigen) -> Matrix:
    """J_m(eigen) for a scalar, or the companion-block analogue for a polynomial."""
    if isinstance(eigen, tuple):
        c = companion(field, eigen)
        d = len(c)
    else:
        c = ((eigen,),)
        d = 1
    n = m * d
    rows = [[field.zero()] * n for _ in range(n)]
    for b in range(m):
        for i in range(d):
            for j in range(d):
                rows[b * d + i][b * d + j] = c[i][j]
        if b + 1 < m:
            for i in range(d):
                rows[b * d + i][(b + 1) * d + i] = field.one()
    return tuple(tuple(r) for r in rows)
