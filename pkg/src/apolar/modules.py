"""Inverse-system modules, graded derivative spaces, h-vectors, annihilators.

A module M is spanned by forms in k[y_1..y_r] together with all their
partial derivatives.  The degree-i component is the span of the
order-(deg g - i) derivatives of each generator g; its dimension is the
i-th entry of the h-vector of k[x]/Ann(M).

Generators built as powers of linear forms carry a marker: every order-k
derivative of L**e is a scalar multiple of L**(e-k), so one spanning row
per generator replaces a full block of derivative rows.  The row space
is unchanged, hence ranks and reduced echelon bases are identical.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .fields import QQ
from .linalg import (
    DEFAULT_POLICY,
    ExactMatrix,
    RankPolicy,
    _cleared_int_rows,
    _rank_bareiss,
    _rank_mod_p,
    kernel_basis,
    rref,
)
from .forms import (
    Form,
    falling_factorial_coeff,
    form_from_coeff_vector,
    form_from_terms,
    monomial_index,
    monomials_of_degree,
    power_of_linear,
)


@dataclass(frozen=True)
class InverseSystem:
    """Ambient variable count plus the generating forms of the module."""

    ambient: int
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ValueError("need at least one generator")
        for g in self.generators:
            if g.ambient != self.ambient:
                raise ValueError("generator ambient mismatch")
            if g.is_zero():
                raise ValueError("zero generator")

    @property
    def socle_degree(self) -> int:
        return max(g.degree for g in self.generators)

    def with_generator(self, f: Form) -> "InverseSystem":
        return InverseSystem(self.ambient, self.generators + (f,))


@dataclass(frozen=True)
class GradedBasis:
    """Canonical basis (reduced-echelon pivot rows) of a degree component."""

    degree: int
    forms: tuple
    pivots: tuple

    @property
    def dimension(self) -> int:
        return len(self.forms)


@lru_cache(maxsize=None)
def _multinomials(r: int, i: int) -> tuple[int, ...]:
    fe = factorial(i)
    out = []
    for m in monomials_of_degree(r, i):
        den = 1
        for mi in m:
            if mi > 1:
                den *= factorial(mi)
        out.append(fe // den)
    return tuple(out)


def _int_power_row(coeffs, i, monos, mod):
    mults = _multinomials(len(coeffs), i)
    if mod is None:
        pows = [[c**k for k in range(i + 1)] for c in coeffs]
        return [
            mults[j] * _prod(pows[v][m[v]] for v in range(len(coeffs)))
            for j, m in enumerate(monos)
        ]
    pows = []
    for c in coeffs:
        cm = c % mod
        row = [1]
        for _ in range(i):
            row.append(row[-1] * cm % mod)
        pows.append(row)
    out = []
    for j, m in enumerate(monos):
        v = mults[j] % mod
        for k, mk in enumerate(m):
            if mk:
                v = v * pows[k][mk] % mod
        out.append(v)
    return out


def _prod(it):
    out = 1
    for x in it:
        out *= x
    return out


def _power_row(base, i, monos, mod):
    """Coefficient row of L**i, the span of all derivatives of L**e."""
    if all(Fraction(c).denominator == 1 for c in base):
        return _int_power_row([int(c) for c in base], i, monos, mod)
    vec = power_of_linear(base, i).coeff_vector()
    if mod is None:
        return vec
    from .fields import PrimeField

    gf = PrimeField(mod)
    return [gf.coerce(c) for c in vec]


def _catalecticant_rows(g: Form, i: int, mod):
    """Rows of all order-(deg g - i) derivatives of g against S_i monomials."""
    r = g.ambient
    k = g.degree - i
    cols = monomials_of_degree(r, i)
    idx = monomial_index(r, i)
    rows = []
    for m in monomials_of_degree(r, k):
        row = [0] * len(cols)
        for mp in cols:
            u = tuple(a + b for a, b in zip(m, mp))
            c = g.terms.get(u)
            if c is None:
                continue
            ff = falling_factorial_coeff(u, m)
            if mod is None:
                row[idx[mp]] = c * ff
            else:
                num = c.numerator if isinstance(c, Fraction) else int(c)
                den = c.denominator if isinstance(c, Fraction) else 1
                v = num % mod * (ff % mod) % mod
                if den != 1:
                    v = v * pow(den % mod, mod - 2, mod) % mod
                row[idx[mp]] = v
        rows.append(row)
    return rows


def derivative_rows(M: InverseSystem, i: int, mod: int | None = None):
    """Spanning rows of the degree-i component in the canonical monomial order."""
    monos = monomials_of_degree(M.ambient, i)
    rows = []
    for g in M.generators:
        if g.degree < i:
            continue
        if g.power_base is not None:
            rows.append(_power_row(g.power_base, i, monos, mod))
        else:
            rows.extend(_catalecticant_rows(g, i, mod))
    return rows


def _rank_rows(builder, ncols: int, policy: RankPolicy) -> int:
    """Rank of builder(mod) rows; builder is called per required modulus."""
    if policy.mode == "exact":
        return _rank_bareiss(_cleared_int_rows(builder(None)), ncols)
    if policy.mode == "single":
        return _rank_mod_p(builder(policy.prime), policy.prime)
    p, q = policy.primes
    r1 = _rank_mod_p(builder(p), p)
    r2 = _rank_mod_p(builder(q), q)
    if r1 == r2:
        return r1
    return _rank_bareiss(_cleared_int_rows(builder(None)), ncols)


def component_dimension(M: InverseSystem, i: int, policy: RankPolicy = DEFAULT_POLICY) -> int:
    if i < 0:
        raise ValueError("degree must be non-negative")
    if i > M.socle_degree:
        return 0
    ncols = comb(M.ambient - 1 + i, i)
    return _rank_rows(lambda mod: derivative_rows(M, i, mod), ncols, policy)


def h_vector(M: InverseSystem, policy: RankPolicy = DEFAULT_POLICY) -> tuple[int, ...]:
    """(h_0, ..., h_e): dimensions of the graded components of k[x]/Ann(M)."""
    return tuple(component_dimension(M, i, policy) for i in range(M.socle_degree + 1))


def derivative_space(M: InverseSystem, i: int) -> GradedBasis:
    """Canonical basis of the degree-i component, exact over the rationals."""
    if i < 0:
        raise ValueError("degree must be non-negative")
    if i > M.socle_degree:
        return GradedBasis(i, (), ())
    rows = derivative_rows(M, i)
    mat = ExactMatrix.from_rows(QQ, rows)
    red, pivots = rref(mat)
    forms = tuple(form_from_coeff_vector(M.ambient, i, row) for row in red)
    return GradedBasis(i, forms, tuple(pivots))


def catalecticant(F: Form, d: int) -> ExactMatrix:
    """Matrix of g -> g o F from operators of degree d to forms of degree e-d.

    Rows are indexed by the canonical degree-(e-d) monomials, columns by
    the canonical degree-d operator monomials; the entry is the row
    monomial's coefficient in the column operator applied to F.
    """
    e = F.degree
    if not 0 <= d <= e:
        raise ValueError("degree out of range")
    r = F.ambient
    row_monos = monomials_of_degree(r, e - d)
    col_monos = monomials_of_degree(r, d)
    ridx = monomial_index(r, e - d)
    rows = [[Fraction(0)] * len(col_monos) for _ in row_monos]
    for j, m in enumerate(col_monos):
        for mp in row_monos:
            u = tuple(a + b for a, b in zip(m, mp))
            c = F.terms.get(u)
            if c is not None:
                rows[ridx[mp]][j] = c * falling_factorial_coeff(u, m)
    return ExactMatrix.from_rows(QQ, rows)


def annihilator_component(M: InverseSystem, d: int) -> list[Form]:
    """Canonical basis of the degree-d component of Ann(M), as operator forms.

    An operator of degree d kills M iff it kills every generator, so the
    component is the kernel of the stacked catalecticant maps.  Its
    dimension is C(r-1+d, d) - h_d for d <= e and the full operator
    space above the socle degree.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    r = M.ambient
    col_monos = monomials_of_degree(r, d)
    stacked = []
    for g in M.generators:
        if g.degree >= d:
            stacked.extend(catalecticant(g, d).rows())
    if not stacked:
        return [form_from_terms(r, d, {m: 1}) for m in col_monos]
    mat = ExactMatrix.from_rows(QQ, stacked)
    return [form_from_coeff_vector(r, d, v) for v in kernel_basis(mat)]


def level_type(M: InverseSystem, policy: RankPolicy = DEFAULT_POLICY) -> int:
    """Number of minimal generators when all generators share one degree."""
    degrees = {g.degree for g in M.generators}
    if len(degrees) != 1:
        raise ValueError("not a level presentation")
    t = component_dimension(M, M.socle_degree, policy)
    if t < len(M.generators):
        raise ValueError("non-minimal generating set")
    return t


def first_degree_generator_count(M: InverseSystem, d: int) -> int:
    """dim I_d - dim(R_1 * I_{d-1}): minimal annihilator generators in degree d."""
    id_basis = annihilator_component(M, d)
    if d == 0:
        return len(id_basis)
    prev = annihilator_component(M, d - 1)
    r = M.ambient
    idx = monomial_index(r, d)
    ncols = comb(r - 1 + d, d)
    rows = []
    for g in prev:
        for v in range(r):
            row = [Fraction(0)] * ncols
            for m, c in g.terms.items():
                mm = tuple(x + (1 if t == v else 0) for t, x in enumerate(m))
                row[idx[mm]] += c
            rows.append(row)
    grown = _rank_bareiss(_cleared_int_rows(rows), ncols) if rows else 0
    return len(id_basis) - grown


# -- JSON round trip ---------------------------------------------------------


def _coeff_to_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def system_to_dict(M: InverseSystem) -> dict:
    gens = []
    for g in M.generators:
        terms = [
            {"exps": list(m), "coeff": _coeff_to_str(c)}
            for m in monomials_of_degree(M.ambient, g.degree)
            if (c := g.terms.get(m)) is not None
        ]
        gens.append({"degree": g.degree, "terms": terms})
    return {"r": M.ambient, "generators": gens}


def system_from_dict(data: dict) -> InverseSystem:
    r = int(data["r"])
    gens = []
    for gd in data["generators"]:
        terms = {}
        for t in gd["terms"]:
            m = tuple(int(x) for x in t["exps"])
            terms[m] = Fraction(t["coeff"])
        gens.append(form_from_terms(r, int(gd["degree"]), terms))
    return InverseSystem(r, tuple(gens))


def save_system(M: InverseSystem, path) -> None:
    with open(path, "w") as fh:
        json.dump(system_to_dict(M), fh, indent=2)
        fh.write("\n")


def load_system(path) -> InverseSystem:
    with open(path) as fh:
        return system_from_dict(json.load(fh))
