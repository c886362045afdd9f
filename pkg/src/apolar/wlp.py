"""Weak Lefschetz testing through the dual contraction action.

Multiplication by a linear form L on the quotient algebra A = R/Ann(M)
is dual to contraction by L on the graded pieces of M, so the rank of
L: A_i -> A_{i+1} equals the rank of the contraction from the (i+1)-st
derivative space to the i-th.  The probe samples one random L; the
certificate computes the generic rank symbolically in every degree.
Semicontinuity makes the generic rank the maximum over all L, so a
symbolic rank below min(h_i, h_{i+1}) proves failure, and (over a field
of characteristic zero) maximality in every degree proves the property:
a single generic L is simultaneously generic for all degrees.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .fields import QQ
from .linalg import DEFAULT_POLICY, ExactMatrix, RankPolicy, rank_int_rows
from .modules import GradedBasis, InverseSystem, derivative_space, h_vector
from .symbolic import ParamMatrix, symbolic_rank

MAX_CERTIFY_VARS = 4


@dataclass(frozen=True)
class DegreeRankReport:
    """Rank of the multiplication map out of one degree."""

    degree: int
    dim_from: int
    dim_to: int
    required: int
    rank: int
    mode: str  # "probe" or "symbolic"

    def __post_init__(self):
        if self.rank > self.required:
            raise ValueError("observed rank exceeds the required maximum")

    def maximal(self) -> bool:
        return self.rank == self.required

    def to_dict(self) -> dict:
        return {
            "i": self.degree,
            "dimA_i": self.dim_from,
            "dimA_next": self.dim_to,
            "required": self.required,
            "rank": self.rank,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class WlpCertificate:
    """Per-degree rank reports plus the overall verdict."""

    verdict: str
    reports: tuple
    failing: tuple

    def holds(self) -> bool:
        return self.verdict in ("holds-certified", "holds-probabilistic")

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "degrees": [r.to_dict() for r in self.reports],
            "failing": list(self.failing),
        }


def _contraction_columns(upper: GradedBasis, lower: GradedBasis, M: InverseSystem):
    """Per-variable coordinate matrices of contraction between the bases.

    Returns one dim_lower x dim_upper rational matrix per variable v,
    holding the lower-basis coordinates of d(b)/dy_v for each upper
    basis form b.  Coordinates are read off the reduced-echelon pivots;
    the residual must vanish because M is closed under differentiation.
    """
    from .forms import differentiate, monomial_index

    r = M.ambient
    i = lower.degree
    low_idx = monomial_index(r, i)
    pivot_rows = {pc: k for k, pc in enumerate(lower.pivots)}
    cols_per_var = []
    for v in range(r):
        unit = tuple(1 if k == v else 0 for k in range(r))
        mat = [[Fraction(0)] * len(upper.forms) for _ in range(len(lower.forms))]
        for j, b in enumerate(upper.forms):
            df = differentiate(b, unit)
            vec = [Fraction(0)] * len(low_idx)
            for m, c in df.terms.items():
                vec[low_idx[m]] = c
            coords = [vec[pc] for pc in lower.pivots]
            # exactness check: the derivative must lie in the lower span
            residual = list(vec)
            for k, bf in enumerate(lower.forms):
                if coords[k] == 0:
                    continue
                for m, c in bf.terms.items():
                    residual[low_idx[m]] -= coords[k] * c
            if any(residual):
                raise ArithmeticError("derivative left the graded component")
            for k in range(len(lower.forms)):
                mat[k][j] = coords[k]
        cols_per_var.append(mat)
    return cols_per_var


def mult_map_matrix(M: InverseSystem, L, i: int) -> ExactMatrix:
    """Matrix of contraction by L from the (i+1)-st to the i-th component.

    Its rank equals the rank of multiplication by L from A_i to A_{i+1}
    on the quotient algebra.
    """
    e = M.socle_degree
    if not 0 <= i < e:
        raise ValueError("degree out of range")
    if len(L) != M.ambient:
        raise ValueError("linear form arity mismatch")
    upper = derivative_space(M, i + 1)
    lower = derivative_space(M, i)
    per_var = _contraction_columns(upper, lower, M)
    rows = []
    for k in range(len(lower.forms)):
        row = [Fraction(0)] * len(upper.forms)
        for v, cv in enumerate(L):
            if cv == 0:
                continue
            mv = per_var[v]
            for j in range(len(upper.forms)):
                row[j] += Fraction(cv) * mv[k][j]
        rows.append(row)
    return ExactMatrix(QQ, len(lower.forms), len(upper.forms), tuple(x for r_ in rows for x in r_))


def _degree_dims(h: tuple[int, ...], i: int) -> tuple[int, int, int]:
    return h[i], h[i + 1], min(h[i], h[i + 1])


def _require_level(M: InverseSystem) -> None:
    if len({g.degree for g in M.generators}) != 1:
        raise ValueError("not a level presentation")


def wlp_probe(
    M: InverseSystem, seed: int, policy: RankPolicy = DEFAULT_POLICY
) -> WlpCertificate:
    """One random linear form, ranks in all degrees, probabilistic verdict."""
    _require_level(M)
    h = h_vector(M, policy)
    e = M.socle_degree
    rng = random.Random(seed)
    L = [0] * M.ambient
    while not any(L):
        L = [rng.randint(-1000, 1000) for _ in range(M.ambient)]
    reports = []
    failing = []
    for i in range(e):
        dim_from, dim_to, required = _degree_dims(h, i)
        mat = mult_map_matrix(M, L, i)
        rk = rank_int_rows(mat.rows(), mat.ncols, policy)
        reports.append(DegreeRankReport(i, dim_from, dim_to, required, rk, "probe"))
        if rk < required:
            failing.append(i)
    verdict = "holds-probabilistic" if not failing else "fails-probable"
    return WlpCertificate(verdict, tuple(reports), tuple(failing))


def wlp_certify(M: InverseSystem, policy: RankPolicy = DEFAULT_POLICY) -> WlpCertificate:
    """Exact verdict from the symbolic generic rank in every degree."""
    if M.ambient > MAX_CERTIFY_VARS:
        raise ValueError(
            f"symbolic certification supports at most {MAX_CERTIFY_VARS} variables"
        )
    _require_level(M)
    h = h_vector(M, policy)
    e = M.socle_degree
    params = tuple(f"a{v + 1}" for v in range(M.ambient))
    reports = []
    failing = []
    for i in range(e):
        dim_from, dim_to, required = _degree_dims(h, i)
        upper = derivative_space(M, i + 1)
        lower = derivative_space(M, i)
        per_var = _contraction_columns(upper, lower, M)
        pm = ParamMatrix.from_affine(params, None, per_var)
        rk = symbolic_rank(pm) if lower.forms and upper.forms else 0
        reports.append(DegreeRankReport(i, dim_from, dim_to, required, rk, "symbolic"))
        if rk < required:
            failing.append(i)
    verdict = "holds-certified" if not failing else "fails-certified"
    return WlpCertificate(verdict, tuple(reports), tuple(failing))
