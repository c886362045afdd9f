"""Builders for the level-algebra constructions and their verification.

Every randomized construction follows the same discipline: sample from a
seeded generator, verify the characterizing property exactly (a target
Hilbert function, or agreement with the generic-addition prediction),
resample a bounded number of times, then fail loudly carrying the
observed data.  Verification turns probabilistic genericity into a
checked certificate.

Seeds are partitioned per construction step by hashing the user seed
together with a step tag (see derive_seed), so independent steps draw
from independent streams and every run is reproducible.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .forms import Form, add_forms, form_from_terms, power_of_linear, random_form
from .hvectors import (
    count_maxima,
    first_difference,
    format_hvector,
    is_unimodal,
    lemma1_predict,
)
from .linalg import DEFAULT_POLICY, RankPolicy
from .modules import InverseSystem, h_vector, system_to_dict

MAX_RESAMPLES = 5

LINEAR_COEFF_BOUND = 1_000


class ConstructionError(RuntimeError):
    """A construction could not be completed or verified."""

    def __init__(self, message: str, observed=None, expected=None):
        if observed is not None:
            message += f" (observed {format_hvector(observed)}"
            if expected is not None:
                message += f", expected {format_hvector(expected)}"
            message += ")"
        super().__init__(message)
        self.observed = observed
        self.expected = expected


def derive_seed(seed: int, tag: str) -> int:
    """Deterministic per-step seed: blake2b of "<seed>/<tag>" as an int."""
    digest = hashlib.blake2b(f"{seed}/{tag}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


@dataclass(frozen=True)
class PointSet:
    """Distinct points of the projective plane with exact coordinates."""

    points: tuple

    def __post_init__(self):
        for p in self.points:
            if len(p) != 3:
                raise ValueError("points live in the projective plane")
            if not any(p):
                raise ValueError("zero coordinate triple")
        n = len(self.points)
        for i in range(n):
            for j in range(i + 1, n):
                if _proportional(self.points[i], self.points[j]):
                    raise ValueError("duplicate points (proportional triples)")

    def __len__(self):
        return len(self.points)


def _proportional(p, q) -> bool:
    return (
        p[0] * q[1] == p[1] * q[0]
        and p[0] * q[2] == p[2] * q[0]
        and p[1] * q[2] == p[2] * q[1]
    )


def hilbert_function_of_points(
    pts: PointSet, up_to: int, policy: RankPolicy = DEFAULT_POLICY
) -> tuple[int, ...]:
    """Hilbert function of the point set at degrees 0..up_to.

    The value at i equals the dimension of the span of the i-th powers
    of the dual linear forms of the points, computed as an exact rank.
    """
    from .forms import monomials_of_degree
    from .modules import _power_row, _rank_rows

    out = []
    for i in range(up_to + 1):
        monos = monomials_of_degree(3, i)

        def rows(mod, i=i, monos=monos):
            return [_power_row(p, i, monos, mod) for p in pts.points]

        out.append(_rank_rows(rows, len(monos), policy))
    return tuple(out)


def powers_module(pts: PointSet, e: int) -> InverseSystem:
    """The module spanned by the e-th powers of the points' linear forms."""
    if e < 1:
        raise ValueError("socle degree must be at least 1")
    return InverseSystem(3, tuple(power_of_linear(p, e) for p in pts.points))


# -- point sampling ----------------------------------------------------------


def curve_hilbert_target(s: int, p: int, i: int) -> int:
    """Expected Hilbert value of s generic points on a degree-p plane curve."""
    if i == 0:
        return 1
    on_curve = comb(i + 2, 2) - comb(max(i - p + 2, 0), 2)
    return min(s, on_curve)


def points_on_rational_curve(s: int, p: int, seed: int) -> PointSet:
    """s points sampled on a random rational plane curve of degree p.

    The curve is the image of three random degree-p binary forms; the
    points are images of distinct parameter values.  The resulting
    Hilbert function is verified by rank computation up to its
    stabilization degree, resampling on mismatch.
    """
    if p < 3:
        raise ValueError("curve degree must be at least 3")
    if s < comb(p + 1, 2):
        raise ValueError(f"need at least C(p+1,2) = {comb(p + 1, 2)} points")
    stab = 1
    while curve_hilbert_target(s, p, stab) < s:
        stab += 1
    target = tuple(curve_hilbert_target(s, p, i) for i in range(stab + 1))
    last_hf = None
    for attempt in range(MAX_RESAMPLES + 1):
        rng = random.Random(derive_seed(seed, f"curve:{attempt}"))
        coeffs = [[_nonzero(rng, 9) for _ in range(p + 1)] for _ in range(3)]
        params = rng.sample(range(-(2 * s + 5), 2 * s + 6), s)
        pts = []
        ok = True
        for t in params:
            pt = tuple(sum(c * t**k for k, c in enumerate(cs)) for cs in coeffs)
            if not any(pt) or any(_proportional(pt, q) for q in pts):
                ok = False
                break
            pts.append(pt)
        if not ok:
            continue
        ps = PointSet(tuple(pts))
        hf = hilbert_function_of_points(ps, stab)
        if hf == target:
            return ps
        last_hf = hf
    raise ConstructionError(
        f"curve sampling exhausted {MAX_RESAMPLES} resamples", last_hf, target
    )


def _nonzero(rng: random.Random, bound: int) -> int:
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    return c


def validate_staircase(delta) -> tuple[int, ...]:
    """A valid points first-difference: starts at 1, grows by at most one,
    and is non-increasing after its peak."""
    delta = tuple(int(x) for x in delta)
    if not delta or delta[0] != 1:
        raise ValueError("first difference starts at 1")
    if any(x < 1 for x in delta):
        raise ValueError("first-difference entries are positive")
    for a, b in zip(delta, delta[1:]):
        if b > a + 1:
            raise ValueError("growth exceeds one per degree")
    peak = delta.index(max(delta))
    for i in range(peak, len(delta) - 1):
        if delta[i + 1] > delta[i]:
            raise ValueError("not non-increasing after the peak")
    return delta


def points_from_staircase(delta, seed: int) -> PointSet:
    """A point set whose Hilbert function has the given first difference.

    Uses the conjugate-partition layout: line k carries as many points
    as there are entries of delta that are >= k, with points kept off
    every other line.  The Hilbert function is verified by rank
    computation and the sample is retried on mismatch.
    """
    delta = validate_staircase(delta)
    lam = []
    k = 1
    while True:
        c = sum(1 for d in delta if d >= k)
        if c == 0:
            break
        lam.append(c)
        k += 1
    target = tuple(sum(delta[: i + 1]) for i in range(len(delta)))
    t_span = max(lam[0] + 10, 25)
    last_hf = None
    for attempt in range(MAX_RESAMPLES + 1):
        rng = random.Random(derive_seed(seed, f"staircase:{attempt}"))
        normals: list[tuple] = []
        pts: list[tuple] = []
        ok = True
        for npts in lam:
            base = dirn = None
            for _ in range(50):
                base = tuple(rng.randint(-20, 20) for _ in range(3))
                dirn = tuple(rng.randint(-20, 20) for _ in range(3))
                n = _cross(base, dirn)
                if any(n) and not any(_proportional(n, m) for m in normals):
                    break
            else:
                ok = False
                break
            normals.append(_cross(base, dirn))
            placed = 0
            tried = set()
            while placed < npts and len(tried) < 4 * t_span:
                t = rng.randint(-t_span, t_span)
                if t in tried:
                    continue
                tried.add(t)
                pt = tuple(b + t * d for b, d in zip(base, dirn))
                if not any(pt):
                    continue
                # keep the point off every other line and distinct
                if any(_dot(n, pt) == 0 for n in normals[:-1]):
                    continue
                if any(_proportional(pt, q) for q in pts):
                    continue
                pts.append(pt)
                placed += 1
            if placed < npts:
                ok = False
                break
        if not ok:
            continue
        ps = PointSet(tuple(pts))
        hf = hilbert_function_of_points(ps, len(delta) - 1)
        if hf == target:
            return ps
        last_hf = hf
    raise ConstructionError(
        f"staircase sampling exhausted {MAX_RESAMPLES} resamples", last_hf, target
    )


def _cross(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _dot(p, q):
    return sum(a * b for a, b in zip(p, q))


# -- generic augmentation ----------------------------------------------------


def _require_level(M: InverseSystem) -> int:
    degrees = {g.degree for g in M.generators}
    if len(degrees) != 1:
        raise ValueError("not a level presentation")
    return M.socle_degree


def add_generic_form_report(
    M: InverseSystem,
    seed: int,
    policy: RankPolicy = DEFAULT_POLICY,
    base_h: tuple | None = None,
):
    """(augmented system, verified h-vector, resamples used).

    The h-vector of the augmented module must match the generic-addition
    prediction applied to h(M); a mismatch means the sampled form was
    not generic, and the form is resampled at most MAX_RESAMPLES times.
    """
    e = _require_level(M)
    r = M.ambient
    h0 = tuple(base_h) if base_h is not None else h_vector(M, policy)
    target = lemma1_predict(h0, r)
    last = None
    for attempt in range(MAX_RESAMPLES + 1):
        fseed = seed if attempt == 0 else derive_seed(seed, f"generic:{attempt}")
        F = random_form(r, e, fseed)
        M2 = M.with_generator(F)
        h2 = h_vector(M2, policy)
        if h2 == target:
            return M2, h2, attempt
        last = h2
    raise ConstructionError(
        f"generic form failed verification after {MAX_RESAMPLES} resamples", last, target
    )


def add_generic_form(
    M: InverseSystem,
    seed: int,
    policy: RankPolicy = DEFAULT_POLICY,
) -> InverseSystem:
    """Append one verified generic form of the socle degree."""
    return add_generic_form_report(M, seed, policy)[0]


def add_power_sum(M: InverseSystem, k: int, seed: int) -> InverseSystem:
    """Append a sum of k-th powers of random linear forms, unverified.

    Sums of a few powers are not fully generic, so no prediction is
    asserted; callers inspect the resulting h-vector themselves.
    """
    e = _require_level(M)
    if k < 1:
        raise ValueError("need at least one power")
    rng = random.Random(derive_seed(seed, "powersum"))
    r = M.ambient
    forms = []
    while len(forms) < k:
        L = tuple(_nonzero(rng, LINEAR_COEFF_BOUND) for _ in range(r))
        if any(_proportional_vec(L, prev) for prev in forms):
            continue
        forms.append(L)
    F = power_of_linear(forms[0], e)
    for L in forms[1:]:
        F = add_forms(F, power_of_linear(L, e))
    return M.with_generator(F)


def _proportional_vec(p, q) -> bool:
    n = len(p)
    return all(p[i] * q[j] == p[j] * q[i] for i in range(n) for j in range(i + 1, n))


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class ConstructionReport:
    """Outcome of one seeded construction with its verification verdict."""

    construction: str
    params: dict
    seed: int | None
    retries: int
    target_h: tuple
    computed_h: tuple
    verdict: str
    system: InverseSystem
    extras: dict = field(default_factory=dict)

    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        out = {
            "construction": self.construction,
            "params": dict(self.params),
            "seed": self.seed,
            "retries": self.retries,
            "target_h": list(self.target_h),
            "computed_h": list(self.computed_h),
            "verdict": self.verdict,
            "module": system_to_dict(self.system),
        }
        if self.extras:
            out["extras"] = dict(self.extras)
        return out


def _verdict(computed, target) -> str:
    return "pass" if tuple(computed) == tuple(target) else "fail"


# -- named constructions -----------------------------------------------------


def build_example2(seed: int, policy: RankPolicy = DEFAULT_POLICY) -> ConstructionReport:
    """27 points on a cubic, 9th powers, plus one generic degree-9 form."""
    report = build_arithmetic_tail(3, 9, seed, policy)
    target = (1, 3, 6, 10, 15, 21, 28, 27, 27, 28)
    verdict = _verdict(report.computed_h, target)
    if verdict == "pass" and is_unimodal(report.computed_h):
        verdict = "fail"
    return ConstructionReport(
        "example2",
        {"p": 3, "e": 9, "points": 27},
        seed,
        report.retries,
        target,
        report.computed_h,
        verdict,
        report.system,
        extras=dict(report.extras),
    )


def build_arithmetic_tail(
    p: int, e: int, seed: int, policy: RankPolicy = DEFAULT_POLICY
) -> ConstructionReport:
    """Base h ending in an arithmetic progression of step p, then a generic form.

    The witness of non-unimodality is that the entry at degree e-p
    exceeds the next one by exactly 1.
    """
    if p < 3:
        raise ValueError("progression step must be at least 3")
    if e < 2 * p - 2:
        raise ValueError("socle degree too small for the progression tail")
    t = p * e - p * (p - 3) // 2
    base_target = tuple(curve_hilbert_target(t, p, i) for i in range(e + 1))
    target = lemma1_predict(base_target, 3)
    if not (target[e - p] == target[e - p + 1] + 1 and not is_unimodal(target)):
        raise ConstructionError(
            "parameters do not produce the non-unimodality witness: "
            f"predicted {format_hvector(target)}"
        )
    pts = points_on_rational_curve(t, p, derive_seed(seed, "tail-points"))
    M = powers_module(pts, e)
    base = h_vector(M, policy)
    if base != base_target:
        raise ConstructionError("base module missed its target", base, base_target)
    M2, computed, retries = add_generic_form_report(
        M, derive_seed(seed, "tail-form"), policy, base_h=base
    )
    verdict = _verdict(computed, target)
    if verdict == "pass" and (
        computed[e - p] != computed[e - p + 1] + 1 or is_unimodal(computed)
    ):
        verdict = "fail"
    return ConstructionReport(
        "tail",
        {"p": p, "e": e, "points": t},
        seed,
        retries,
        target,
        computed,
        verdict,
        M2,
        extras={"base_h": list(base)},
    )


def n_maxima_minimal_degree(N: int) -> int:
    """Smallest socle degree the N-maxima target formulas admit."""
    if N < 1:
        raise ValueError("need a positive number of maxima")
    if N == 1:
        return 4
    c = 3 * (N - 2)
    return c + comb(3 * N - 3, 2) + 9 * (N - 1) + 3


def n_maxima_base_target(N: int, e: int) -> tuple[int, ...]:
    """Base h-vector whose generic augmentation has exactly N maxima.

    The tail drops from h_e = t by 3, 3, 3, 6, 6, 6, ... down to the
    degree where the full binomial values take over; t is pinned by
    matching that binomial segment.
    """
    if N < 2:
        raise ValueError("the tail formulas need N >= 2")
    if e < n_maxima_minimal_degree(N):
        raise ValueError(
            f"socle degree {e} below the minimum {n_maxima_minimal_degree(N)} for N = {N}"
        )
    c = 3 * (N - 2)
    t = comb(e - c - 2, 2) + comb(3 * N - 3, 2) + 9 * (N - 1)
    h = [comb(i + 2, 2) for i in range(e + 1)]

    def drop(m: int) -> int:
        return sum(3 * ((q + 2) // 3) for q in range(1, m + 1))

    for m in range(c + 2):
        h[e - m] = t - drop(m)
    h[e - c - 2] = t - comb(c + 3, 2) - 3 * (N - 1)
    h[e - c - 3] = t - comb(c + 3, 2) - 6 * (N - 1)
    return tuple(h)


def build_n_maxima(
    N: int, seed: int, e: int | None = None, policy: RankPolicy = DEFAULT_POLICY
) -> ConstructionReport:
    """A level h-vector with exactly N strict maxima."""
    if N < 1:
        raise ValueError("need a positive number of maxima")
    if e is None:
        e = n_maxima_minimal_degree(N)
    if N == 1:
        if e < 3:
            raise ValueError("socle degree must be at least 3")
        base_target = (1, 3) + (5,) * (e - 1)
        delta = (1, 2, 2)
    else:
        base_target = n_maxima_base_target(N, e)
        delta = first_difference(base_target)
    target = lemma1_predict(base_target, 3)
    if count_maxima(target) != N:
        raise ConstructionError(
            f"parameters do not give {N} maxima: predicted {format_hvector(target)}"
        )
    pts = points_from_staircase(delta, derive_seed(seed, "nmax-points"))
    M = powers_module(pts, e)
    base = h_vector(M, policy)
    if base != base_target:
        raise ConstructionError("base module missed its target", base, base_target)
    M2, computed, retries = add_generic_form_report(
        M, derive_seed(seed, "nmax-form"), policy, base_h=base
    )
    maxima = count_maxima(computed)
    verdict = _verdict(computed, target)
    if maxima != N:
        verdict = "fail"
    return ConstructionReport(
        "nmaxima",
        {"n": N, "e": e, "points": len(pts)},
        seed,
        retries,
        target,
        computed,
        verdict,
        M2,
        extras={"base_h": list(base), "maxima": maxima},
    )


def build_example7(e: int) -> InverseSystem:
    """The monomial module y1^(e-1)y2 together with all y2^j y3^(e-j)."""
    if e < 3:
        raise ValueError("socle degree must be at least 3")
    gens = [form_from_terms(3, e, {(e - 1, 1, 0): 1})]
    for j in range(e + 1):
        gens.append(form_from_terms(3, e, {(0, e - j, j): 1}))
    return InverseSystem(3, tuple(gens))


PROP8_BINARY_COEFFS = (437, -232, -423, -567, -769, 831, -916, -202)


def build_prop8() -> InverseSystem:
    """The explicit type-3 module of socle degree 7."""
    g1 = form_from_terms(3, 7, {(2, 0, 5): 1, (1, 0, 6): -1})
    g2 = form_from_terms(3, 7, {(3, 0, 4): 1, (5, 0, 2): -1})
    F = form_from_terms(
        3, 7, {(7 - j, j, 0): c for j, c in enumerate(PROP8_BINARY_COEFFS)}
    )
    return InverseSystem(3, (g1, g2, F))


def _lex_extreme_module(t: int, e: int, direction: str) -> InverseSystem:
    from .forms import monomials_of_degree

    monos = monomials_of_degree(3, e)  # descending lex
    chosen = monos[:t] if direction == "lex-first" else monos[-t:]
    return InverseSystem(3, tuple(form_from_terms(3, e, {m: 1}) for m in chosen))


def build_remark9(
    t: int,
    e: int,
    seed: int,
    direction: str | None = None,
    policy: RankPolicy = DEFAULT_POLICY,
) -> ConstructionReport:
    """Lex-extreme monomial module plus a sum of two generic power forms.

    The base h-vector must come out as (1,3,4,...,t); which lex end of
    the degree-e monomials achieves it is resolved against that target
    (both ends are tried when no direction is forced).  The final
    h-vector (1,3,6,7,...,t,t+1,t+1) is verified; the WLP probe verdict
    is recorded but never asserted.
    """
    if direction not in (None, "lex-first", "lex-last"):
        raise ValueError(f"unknown direction {direction!r}")
    if e < 3:
        raise ValueError("socle degree must be at least 3")
    if t != e + 2:
        raise ConstructionError(
            f"inadmissible parameters: the base target (1,3,4,...,t) forces t = e + 2, got t = {t}, e = {e}"
        )
    base_target = (1,) + tuple(i + 2 for i in range(1, e + 1))
    candidates = [direction] if direction else ["lex-last", "lex-first"]
    tried = {}
    M = chosen_dir = None
    for d in candidates:
        cand = _lex_extreme_module(t, e, d)
        hb = h_vector(cand, policy)
        tried[d] = hb
        if hb == base_target:
            M, chosen_dir = cand, d
            break
    if M is None:
        if direction is None:
            tried_msg = "; ".join(f"{d}: {format_hvector(h)}" for d, h in tried.items())
            raise ConstructionError(
                f"neither lex direction matches the base target "
                f"{format_hvector(base_target)} ({tried_msg})"
            )
        other = "lex-first" if direction == "lex-last" else "lex-last"
        other_h = h_vector(_lex_extreme_module(t, e, other), policy)
        raise ConstructionError(
            f"base h-vector validation failed for {direction} "
            f"(got {format_hvector(tried[direction])}, "
            f"{other} gives {format_hvector(other_h)})",
            tried[direction],
            base_target,
        )
    target = (1, 3) + tuple(i + 4 for i in range(2, e)) + (t + 1,)
    rng_tag = derive_seed(seed, "remark9")
    last = None
    computed = None
    M2 = None
    retries = 0
    for attempt in range(MAX_RESAMPLES + 1):
        rng = random.Random(derive_seed(rng_tag, f"pair:{attempt}"))
        L1 = tuple(_nonzero(rng, LINEAR_COEFF_BOUND) for _ in range(3))
        L2 = tuple(_nonzero(rng, LINEAR_COEFF_BOUND) for _ in range(3))
        if _proportional_vec(L1, L2):
            continue
        F = add_forms(power_of_linear(L1, e), power_of_linear(L2, e))
        cand = M.with_generator(F)
        h2 = h_vector(cand, policy)
        if h2 == target:
            M2, computed, retries = cand, h2, attempt
            break
        last = h2
    if M2 is None:
        raise ConstructionError(
            f"two-power sum failed verification after {MAX_RESAMPLES} resamples",
            last,
            target,
        )
    from .wlp import wlp_probe

    probe = wlp_probe(M2, derive_seed(seed, "remark9-probe"), policy)
    return ConstructionReport(
        "remark9",
        {"t": t, "e": e, "direction": chosen_dir},
        seed,
        retries,
        target,
        computed,
        _verdict(computed, target),
        M2,
        extras={
            "base_h": list(base_target),
            "wlp_probe": probe.verdict,
            "wlp_status": "reported, unasserted",
        },
    )


def lift_codim(M: InverseSystem, r_new: int) -> InverseSystem:
    """Embed a codimension-3 module and append pure powers of new variables."""
    if M.ambient != 3:
        raise ValueError("lift starts from three variables")
    e = _require_level(M)
    if r_new == 3:
        return M
    if r_new < 3:
        raise ValueError("target variable count must be at least 3")
    pad = r_new - 3
    gens = []
    for g in M.generators:
        terms = {m + (0,) * pad: c for m, c in g.terms.items()}
        base = tuple(g.power_base) + (Fraction(0),) * pad if g.power_base else None
        gens.append(Form(r_new, g.degree, terms, power_base=base))
    for j in range(3, r_new):
        unit = tuple(1 if i == j else 0 for i in range(r_new))
        gens.append(power_of_linear(unit, e))
    return InverseSystem(r_new, tuple(gens))
