"""Monomials and homogeneous forms with the partial-derivative action.

The operator ring k[x_1..x_r] acts on k[y_1..y_r] by x_i = d/dy_i with
true calculus coefficients (characteristic zero).  The canonical order
on a fixed degree is lex descending with y_1 > y_2 > ... > y_r; every
matrix row/column layout in the package uses it.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

Monomial = tuple  # tuple of r non-negative ints; degree = sum

MONOMIAL_ORDERS = ("lex", "deglex")

RANDOM_COEFF_BOUND = 10_000


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


@lru_cache(maxsize=None)
def monomials_of_degree(r: int, d: int, order: str = "lex") -> tuple[Monomial, ...]:
    """All C(r-1+d, d) degree-d monomials in r variables, descending.

    Within a fixed degree, lex and deglex agree; both keys are accepted.
    """
    if order not in MONOMIAL_ORDERS:
        raise ValueError(f"unknown monomial order {order!r}")
    if r < 1:
        raise ValueError("need at least one variable")
    if d < 0:
        raise ValueError("degree must be non-negative")
    if r == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(r - 1, d - a, order):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(r: int, d: int) -> dict:
    """Position of each degree-d monomial in the canonical order."""
    return {m: i for i, m in enumerate(monomials_of_degree(r, d))}


def falling_factorial_coeff(u: Monomial, m: Monomial) -> int:
    """prod_i u_i! / (u_i - m_i)!, the calculus coefficient of d^m y^u."""
    out = 1
    for ui, mi in zip(u, m):
        for k in range(ui, ui - mi, -1):
            out *= k
    return out


@dataclass(frozen=True)
class Form:
    """Homogeneous polynomial with exact coefficients.

    terms maps monomials (all of the stated degree) to nonzero Fractions;
    the zero form keeps an explicit degree with empty terms.  power_base
    is set when the form was built as L**degree for a linear form L; it
    marks that every order-k derivative is a scalar multiple of L**(degree-k),
    which lets graded computations add one spanning row instead of many.
    """

    ambient: int
    degree: int
    terms: dict
    power_base: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for m, c in self.terms.items():
            if len(m) != self.ambient:
                raise ValueError("monomial arity differs from ambient variable count")
            if monomial_degree(m) != self.degree:
                raise ValueError("inhomogeneous term")
            if c == 0:
                raise ValueError("zero coefficient stored")

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def coeff_vector(self) -> list[Fraction]:
        """Coefficients against the canonical monomial order of the degree."""
        return [self.terms.get(m, Fraction(0)) for m in monomials_of_degree(self.ambient, self.degree)]

    def __str__(self):
        return form_to_str(self)


def form_from_terms(r: int, d: int, terms: dict, power_base=None) -> Form:
    clean = {m: Fraction(c) for m, c in terms.items() if c != 0}
    return Form(r, d, clean, power_base)


def zero_form(r: int, d: int) -> Form:
    return Form(r, d, {})


def form_from_coeff_vector(r: int, d: int, vec) -> Form:
    ms = monomials_of_degree(r, d)
    return form_from_terms(r, d, {m: Fraction(c) for m, c in zip(ms, vec) if c != 0})


def add_forms(f: Form, g: Form) -> Form:
    if (f.ambient, f.degree) != (g.ambient, g.degree):
        raise ValueError("can only add forms of equal ambient and degree")
    terms = dict(f.terms)
    for m, c in g.terms.items():
        nc = terms.get(m, Fraction(0)) + c
        if nc:
            terms[m] = nc
        else:
            terms.pop(m, None)
    return Form(f.ambient, f.degree, terms)


def scale_form(c, f: Form) -> Form:
    c = Fraction(c)
    if c == 0:
        return zero_form(f.ambient, f.degree)
    return Form(f.ambient, f.degree, {m: c * v for m, v in f.terms.items()}, f.power_base)


def differentiate(f: Form, m: Monomial) -> Form:
    """Apply prod_i (d/dy_i)^{m_i} to f with true calculus coefficients."""
    if len(m) != f.ambient:
        raise ValueError("operator arity differs from ambient variable count")
    k = monomial_degree(m)
    if k > f.degree:
        raise ValueError("order exceeds degree")
    out: dict = {}
    for u, c in f.terms.items():
        if all(ui >= mi for ui, mi in zip(u, m)):
            w = tuple(ui - mi for ui, mi in zip(u, m))
            out[w] = out.get(w, Fraction(0)) + c * falling_factorial_coeff(u, m)
    base = None
    if f.power_base is not None and k <= f.degree:
        base = f.power_base
    return form_from_terms(f.ambient, f.degree - k, out, power_base=base if out else None)


def power_of_linear(coeffs, e: int) -> Form:
    """(c_1 y_1 + ... + c_r y_r)**e by multinomial expansion."""
    coeffs = tuple(Fraction(c) for c in coeffs)
    if not any(coeffs):
        raise ValueError("all-zero linear form")
    r = len(coeffs)
    terms = {}
    fe = factorial(e)
    integral = all(c.denominator == 1 for c in coeffs)
    for m in monomials_of_degree(r, e):
        den = 1
        for mi in m:
            if mi > 1:
                den *= factorial(mi)
        if integral:
            c = fe // den
            for ci, mi in zip(coeffs, m):
                if mi:
                    if ci == 0:
                        c = 0
                        break
                    c *= ci.numerator**mi
            c = Fraction(c)
        else:
            c = Fraction(fe, den)
            for ci, mi in zip(coeffs, m):
                if mi:
                    if ci == 0:
                        c = Fraction(0)
                        break
                    c = c * ci**mi
        if c:
            terms[m] = c
    return Form(r, e, terms, power_base=coeffs)


def random_form(r: int, d: int, seed: int) -> Form:
    """Seeded dense form; every coefficient uniform in [-10^4, 10^4] \\ {0}."""
    rng = random.Random(seed)
    terms = {}
    for m in monomials_of_degree(r, d):
        c = 0
        while c == 0:
            c = rng.randint(-RANDOM_COEFF_BOUND, RANDOM_COEFF_BOUND)
        terms[m] = Fraction(c)
    return Form(r, d, terms)


# -- text format -------------------------------------------------------------

_VAR_RE = re.compile(r"([a-z])(\d+)(?:\^(\d+))?")


def form_to_str(f: Form, letter: str = "y") -> str:
    """Render like ``437*y1^7 - 232*y1^6*y2``; round-trips exactly."""
    if f.is_zero():
        return "0"
    parts = []
    for m in monomials_of_degree(f.ambient, f.degree):
        if m not in f.terms:
            continue
        c = f.terms[m]
        factors = []
        for i, ex in enumerate(m):
            if ex == 1:
                factors.append(f"{letter}{i + 1}")
            elif ex > 1:
                factors.append(f"{letter}{i + 1}^{ex}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_form(text: str, ambient: int | None = None, letter: str = "y") -> Form:
    """Parse the text format produced by form_to_str."""
    text = text.strip()
    if text in ("0", ""):
        raise ValueError("zero form needs an explicit degree; use zero_form")
    chunks = re.split(r"(?=[+-])", text.replace(" ", ""))
    chunks = [c for c in chunks if c]
    parsed = []
    max_var = 0
    for chunk in chunks:
        sign = 1
        while chunk and chunk[0] in "+-":
            if chunk[0] == "-":
                sign = -sign
            chunk = chunk[1:]
        factors = chunk.split("*")
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        for fac in factors:
            if not fac:
                continue
            mv = _VAR_RE.fullmatch(fac)
            if mv:
                if mv.group(1) != letter:
                    raise ValueError(f"unexpected variable letter {mv.group(1)!r}")
                idx = int(mv.group(2))
                exps[idx] = exps.get(idx, 0) + int(mv.group(3) or 1)
                max_var = max(max_var, idx)
            else:
                coeff *= Fraction(fac)
        parsed.append((coeff, exps))
    r = ambient if ambient is not None else max_var
    if r < 1:
        raise ValueError("could not infer the variable count")
    terms: dict = {}
    degree = None
    for coeff, exps in parsed:
        if any(i > r for i in exps):
            raise ValueError("variable index exceeds ambient count")
        m = tuple(exps.get(i + 1, 0) for i in range(r))
        d = monomial_degree(m)
        if degree is None:
            degree = d
        elif d != degree:
            raise ValueError("inhomogeneous polynomial")
        nc = terms.get(m, Fraction(0)) + coeff
        if nc:
            terms[m] = nc
        else:
            terms.pop(m, None)
    return Form(r, degree if degree is not None else 0, terms)
