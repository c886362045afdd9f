"""Generic rank of matrices whose entries are affine-linear in parameters.

The rank over the field of rational functions k(a_1, ..., a_s) equals the
maximum rank over all parameter specializations (semicontinuity), so a
symbolic rank below the required value is a proof, not an estimate.  It
is computed by fraction-free Bareiss elimination over the polynomial
ring Z[a_1, ..., a_s]; pivot zero-tests are exact.

Polynomials are dicts from exponent tuples to int coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Poly = dict  # exponent tuple -> int coefficient


def _p_is_zero(p: Poly) -> bool:
    return not p


def _p_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        nc = out.get(e, 0) + c
        if nc:
            out[e] = nc
        else:
            out.pop(e, None)
    return out


def _p_neg(p: Poly) -> Poly:
    return {e: -c for e, c in p.items()}

def _p_sub(p: Poly, q: Poly) -> Poly:
    return _p_add(p, _p_neg(q))


def _p_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            nc = out.get(e, 0) + c1 * c2
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
    return out


def _p_div_exact(num: Poly, den: Poly) -> Poly:
    """Quotient num/den when den divides num in Z[params]."""
    if _p_is_zero(num):
        return {}
    if _p_is_zero(den):
        raise ZeroDivisionError("polynomial division by zero")
    quot: Poly = {}
    rem = dict(num)
    lt_d = max(den)
    cd = den[lt_d]
    while rem:
        lt_n = max(rem)
        e = tuple(a - b for a, b in zip(lt_n, lt_d))
        if any(x < 0 for x in e):
            raise ArithmeticError("inexact polynomial division")
        cn = rem[lt_n]
        if cn % cd:
            raise ArithmeticError("inexact polynomial division")
        c = cn // cd
        quot[e] = c
        rem = _p_sub(rem, _p_mul({e: c}, den))
    return quot


@dataclass(frozen=True)
class ParamMatrix:
    """Matrix whose entries are polynomials of total degree <= 1 in the
    named parameters, with rational coefficients."""

    params: tuple[str, ...]
    nrows: int
    ncols: int
    entries: tuple  # of Poly with Fraction coefficients

    def __post_init__(self):
        if len(self.params) < 1:
            raise ValueError("need at least one parameter")
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entry count does not match shape")
        for p in self.entries:
            for e in p:
                if len(e) != len(self.params) or sum(e) > 1:
                    raise ValueError("entries must be affine-linear in the parameters")

    @classmethod
    def from_affine(cls, params, constant, coeffs) -> "ParamMatrix":
        """Build C0 + sum_i a_i * C_i from a constant matrix and one
        coefficient matrix per parameter (any may be None)."""
        params = tuple(params)
        s = len(params)
        mats = [m for m in [constant, *coeffs] if m is not None]
        nr, nc = len(mats[0]), len(mats[0][0])
        ent = []
        zero = tuple(0 for _ in range(s))
        for i in range(nr):
            for j in range(nc):
                p: Poly = {}
                if constant is not None and constant[i][j]:
                    p[zero] = Fraction(constant[i][j])
                for k in range(s):
                    ck = coeffs[k]
                    if ck is not None and ck[i][j]:
                        e = tuple(1 if t == k else 0 for t in range(s))
                        p[e] = Fraction(ck[i][j])
                ent.append(p)
        return cls(params, nr, nc, tuple(ent))

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i * self.ncols + j]

    def evaluate(self, values) -> list[list[Fraction]]:
        """Specialize the parameters to exact scalars."""
        if len(values) != len(self.params):
            raise ValueError("wrong number of parameter values")
        vals = [Fraction(v) for v in values]
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(self.ncols):
                acc = Fraction(0)
                for e, c in self.entry(i, j).items():
                    term = Fraction(c)
                    for k, ex in enumerate(e):
                        if ex:
                            term *= vals[k] ** ex
                    acc += term
                row.append(acc)
            out.append(row)
        return out


def _cleared_entries(pm: ParamMatrix) -> list[list[Poly]]:
    """Integer-coefficient copy; each row scaled by its denominator lcm."""
    rows = []
    for i in range(pm.nrows):
        lcm = 1
        for j in range(pm.ncols):
            for c in pm.entry(i, j).values():
                d = Fraction(c).denominator
                lcm = lcm // gcd(lcm, d) * d
        rows.append(
            [
                {e: int(Fraction(c) * lcm) for e, c in pm.entry(i, j).items()}
                for j in range(pm.ncols)
            ]
        )
    return rows


def _is_homogeneous_linear(rows) -> bool:
    return all(all(sum(e) == 1 for e in p) for row in rows for p in row)


def _substitute_last_one(rows, s: int) -> list[list[Poly]]:
    """Set the last parameter to 1 (entries become affine in s-1 params)."""
    out = []
    for row in rows:
        nrow = []
        for p in row:
            np_: Poly = {}
            for e, c in p.items():
                ne = e[: s - 1]
                np_[ne] = np_.get(ne, 0) + c
                if not np_[ne]:
                    del np_[ne]
            nrow.append(np_)
        out.append(nrow)
    return out


def symbolic_rank(pm: ParamMatrix) -> int:
    """Rank of pm over the rational function field in its parameters.

    Equals the maximum rank over all parameter specializations.  When
    every entry is homogeneous linear in the parameters, the last
    parameter is first set to 1: every minor is then a homogeneous
    polynomial, which vanishes identically iff its dehomogenization
    does, so the rank is unchanged and the elimination runs in one
    variable less.
    """
    rows = _cleared_entries(pm)
    if rows and _is_homogeneous_linear(rows):
        rows = _substitute_last_one(rows, len(pm.params))
    return _bareiss_poly_rank(rows, pm.ncols)


def _bareiss_poly_rank(rows: list[list[Poly]], ncols: int) -> int:
    a = [row for row in rows if any(not _p_is_zero(p) for p in row)]
    if not a:
        return 0
    nr = len(a)
    r = 0
    arity = next((len(e) for row in a for p in row for e in p), 0)
    prev: Poly = {tuple(0 for _ in range(arity)): 1}
    for c in range(ncols):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if not _p_is_zero(a[i][c])), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        piv = a[r][c]
        for i in range(r + 1, nr):
            aic = a[i][c]
            for j in range(c + 1, ncols):
                num = _p_sub(_p_mul(piv, a[i][j]), _p_mul(aic, a[r][j]))
                a[i][j] = _p_div_exact(num, prev)
            a[i][c] = {}
        prev = piv
        r += 1
    return r
