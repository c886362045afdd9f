"""Dense exact linear algebra: rank, kernel, reduced echelon form.

Three rank paths coexist:

* field-generic Gauss-Jordan over QQ or GF(p) (``rref``, ``kernel_basis``),
* fraction-free Bareiss elimination over the integers for exact ranks of
  denominator-cleared matrices,
* a fast probabilistic path that reduces an integer matrix modulo two
  distinct primes near 2**31 (numpy row operations; products of two
  residues fit in int64) and accepts the rank when both agree.

Pivots are always the first nonzero entry in column order, so every
result is deterministic for a fixed input.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .fields import Rationals, is_prime

# The two largest primes below 2**31; defaults for the two-prime fast path.
# A fixed pair keeps repeated invocations byte-identical.
FAST_PRIMES = (2_147_483_647, 2_147_483_629)


def primes_near_31(count: int, seed: int | None = None) -> list[int]:
    """Largest ``count`` primes below 2**31, or a seeded random sample of them."""
    out = []
    n = 2**31 - 1
    while len(out) < max(count, 8):
        if is_prime(n):
            out.append(n)
        n -= 2
    if seed is None:
        return out[:count]
    import random

    return random.Random(seed).sample(out, count)


@dataclass(frozen=True)
class RankPolicy:
    """How integer-matrix ranks are computed.

    mode "fast": reduce mod two primes, accept on agreement (fall back to
    exact Bareiss on the vanishingly unlikely disagreement).
    mode "exact": fraction-free Bareiss over the integers.
    mode "single": one prime field only (explicit --field fp:P requests).
    """

    mode: str = "fast"
    primes: tuple[int, int] = FAST_PRIMES
    prime: int = FAST_PRIMES[0]

    def __post_init__(self):
        if self.mode not in ("fast", "exact", "single"):
            raise ValueError(f"unknown rank mode {self.mode!r}")


DEFAULT_POLICY = RankPolicy()
EXACT_POLICY = RankPolicy(mode="exact")


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix over an exact field."""

    field: object
    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, field, rows) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        ent = tuple(field.coerce(x) for r in rows for x in r)
        return cls(field, len(rows), ncols, ent)

    @classmethod
    def identity(cls, field, n: int) -> "ExactMatrix":
        rows = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
        return cls.from_rows(field, rows)

    def row(self, i: int) -> list:
        return list(self.entries[i * self.ncols : (i + 1) * self.ncols])

    def rows(self) -> list[list]:
        return [self.row(i) for i in range(self.nrows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.ncols + j]


def rref(m: ExactMatrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    F = m.field
    a = m.rows()
    nr, nc = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if not F.is_zero(a[i][c])), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(nr):
            if i != r and not F.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: ExactMatrix) -> int:
    """Dimension of the row space (independent of row/column order)."""
    if isinstance(m.field, Rationals):
        return _rank_bareiss(_cleared_int_rows(m.rows()), m.ncols)
    return len(rref(m)[1])


def kernel_basis(m: ExactMatrix) -> list[list]:
    """Canonical echelon-derived basis of the right kernel.

    Each vector v satisfies m @ v = 0; the count is ncols - rank(m).
    The basis is the standard one read off the RREF free columns, so it
    is deterministic for a fixed input.
    """
    F = m.field
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * m.ncols
        v[fc] = F.one
        for pr, pc in enumerate(pivots):
            v[pc] = F.neg(red[pr][fc])
        basis.append(v)
    return basis


# -- integer-row rank paths ------------------------------------------------


def _cleared_int_rows(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        fr = [x if isinstance(x, Fraction) else Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(x * lcm) for x in fr])
    return out


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    if not rows:
        return 0
    # reduce in Python first: entries may exceed the int64 range
    a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    nr, nc = a.shape
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if r + 1 < nr:
            f = a[r + 1 :, c] * inv % p
            a[r + 1 :, c:] = (a[r + 1 :, c:] - np.outer(f, a[r, c:])) % p
        r += 1
    return r


def _rank_bareiss(rows: list[list[int]], ncols: int) -> int:
    """Fraction-free Bareiss elimination over the integers."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    nr = len(a)
    r = 0
    prev = 1
    for c in range(ncols):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        for i in range(r + 1, nr):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r


def rank_int_rows(rows, ncols: int, policy: RankPolicy = DEFAULT_POLICY) -> int:
    """Rank of an integer (or rational) row list under the given policy."""
    int_rows = _cleared_int_rows(rows)
    if policy.mode == "exact":
        return _rank_bareiss(int_rows, ncols)
    if policy.mode == "single":
        return _rank_mod_p(int_rows, policy.prime)
    p, q = policy.primes
    r1 = _rank_mod_p(int_rows, p)
    r2 = _rank_mod_p(int_rows, q)
    if r1 == r2:
        return r1
    return _rank_bareiss(int_rows, ncols)
