"""Membership deciders for the four equality classes of the norm bound.

A matrix belongs to E_{1,inf}(p,q), E_{1,1}(p,q), E_{inf,inf}(p,q), or
E_{inf,1}(p,q) when the comparison bound
||A||_{r,s} <= factor * ||A||_{p,q} is attained for every (r,s) in the
corresponding open sign quadrant around (p,q).  Each decider implements the
characterization for its class:

  E_{1,inf}: entries of maximal modulus are isolated and the residual
             matrix has small norm;
  E_{1,1}:   the extremal columns have constant modulus, are orthogonal to
             the rest, and the column bound is tight;
  E_{inf,inf}: the row-wise mirror, decided on the adjoint;
  E_{inf,1}: a unimodular eigenvector of A*A maps to a constant-modulus
             image with the right amplitude.

Verdicts are yes / no / undetermined; undetermined appears only when a
needed norm is available solely as an estimate whose bracket straddles the
decision line, or when a heuristic subspace search is inconclusive.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    ExtIndex,
    INF,
    IndexLike,
    KClassId,
    ONE,
    as_index,
    conjugate,
    index_str,
    k_class_test,
    sign_between,
    vector_norm,
)
from .induced_norms import (
    COMPLEX,
    DimensionError,
    MatrixLike,
    MatrixValue,
    SvdFactors,
    as_matrix,
    svd,
)
from .bounds import (
    ESTIMATED_EQ_TOL,
    NormBracket,
    bound_factor,
    bracket_norm,
    norm_upper_bound,
)
from .generators import extremal_pair_classes

__all__ = [
    "ClassId",
    "Condition",
    "ClassVerdict",
    "ExtremalStats",
    "extremal_stats",
    "check_E1inf",
    "check_E11",
    "check_Einfinf",
    "check_Einf1",
    "check_svd_equality",
    "check_class",
    "sufficient_e1inf",
    "sufficient_e11",
    "sufficient_einfinf",
    "maximizer_eigencheck",
    "PreconditionError",
    "DavReport",
    "dav_normal_form",
]


class ClassId(enum.Enum):
    """The four equality classes, labeled by their extremal index pair."""

    E_1INF = "E_1inf"
    E_11 = "E_11"
    E_INFINF = "E_infinf"
    E_INF1 = "E_inf1"

    @property
    def extremal_pair(self) -> tuple:
        return {
            ClassId.E_1INF: (ONE, INF),
            ClassId.E_11: (ONE, ONE),
            ClassId.E_INFINF: (INF, INF),
            ClassId.E_INF1: (INF, ONE),
        }[self]

    @property
    def sign_signature(self) -> tuple:
        """(sgn(p-r), sgn(q-s)) for (r,s) in the class's open quadrant."""
        return {
            ClassId.E_1INF: (1, -1),
            ClassId.E_11: (1, 1),
            ClassId.E_INFINF: (-1, -1),
            ClassId.E_INF1: (-1, 1),
        }[self]

    @staticmethod
    def from_quadrant(
        p: IndexLike, q: IndexLike, r: IndexLike, s: IndexLike
    ) -> Optional["ClassId"]:
        sig = (
            sign_between(as_index(p), as_index(r)),
            sign_between(as_index(q), as_index(s)),
        )
        for cls in ClassId:
            if cls.sign_signature == sig:
                return cls
        return None

    @staticmethod
    def parse(token: str) -> "ClassId":
        for cls in ClassId:
            if cls.value == token:
                return cls
        raise ValueError(f"unknown class token {token!r}")


@dataclass(frozen=True)
class Condition:
    """One named membership condition with its measured evidence."""

    name: str
    satisfied: Optional[bool]
    measured: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ClassVerdict:
    member: str  # "yes" | "no" | "undetermined"
    conditions: List[Condition]
    certificate: Optional[object]
    certainty: str  # "exact" | "estimate-backed"

    @property
    def is_member(self) -> Optional[bool]:
        if self.member == "yes":
            return True
        if self.member == "no":
            return False
        return None


@dataclass(frozen=True)
class ExtremalStats:
    """The scalar extremal quantities of a matrix.

    rho: largest entry modulus (= ||A||_{1,inf});
    sigma_col: largest column l1 norm (= ||A||_{1,1});
    sigma_row: largest row l1 norm (= ||A||_{inf,inf});
    tau: common modulus of the entries of A v, when a probe vector v with a
    constant-modulus image is supplied.
    """

    rho: float
    sigma_col: float
    sigma_row: float
    tau: Optional[float] = None


def extremal_stats(A: MatrixLike, v=None, tol: float = DEFAULT_TOL) -> ExtremalStats:
    M = as_matrix(A)
    a = np.abs(M.entries)
    rho = float(a.max())
    sigma_col = float(a.sum(axis=0).max())
    sigma_row = float(a.sum(axis=1).max())
    tau = None
    if v is not None:
        w = np.abs(M.entries @ np.asarray(v).reshape(-1))
        peak = float(w.max())
        if peak == 0.0 or w.max() - w.min() <= tol * peak:
            tau = float(w.mean())
    return ExtremalStats(rho, sigma_col, sigma_row, tau)


def _verdict(member, conditions, certificate=None, certainty="exact") -> ClassVerdict:
    return ClassVerdict(member, list(conditions), certificate, certainty)


def _zero_or_trivial(
    M: MatrixValue, p: ExtIndex, q: ExtIndex, cls: ClassId
) -> Optional[ClassVerdict]:
    """Degenerate early outs shared by all four deciders.

    The zero matrix attains 0 = factor * 0 everywhere.  And when (p,q) sits
    on an extreme value that empties the class's quadrant (no (r,s) with the
    required strict inequalities exists), membership is vacuous.
    """
    if not M.entries.any():
        return _verdict(
            "yes",
            [Condition("zero-matrix", True, {"note": "0 = factor * 0 at every (r,s)"})],
        )
    sig_r, sig_s = cls.sign_signature
    r_empty = (sig_r > 0 and p.value == 1.0) or (sig_r < 0 and p.is_inf)
    s_empty = (sig_s > 0 and q.value == 1.0) or (sig_s < 0 and q.is_inf)
    if r_empty or s_empty:
        return _verdict(
            "yes",
            [
                Condition(
                    "class-trivial",
                    True,
                    {
                        "note": "no (r,s) satisfies the quadrant constraints at this (p,q)",
                        "p": index_str(p),
                        "q": index_str(q),
                    },
                )
            ],
        )
    return None


def _bracket_tol(bracket: NormBracket, tol: float) -> float:
    return tol if bracket.is_exact else max(tol, ESTIMATED_EQ_TOL)


# ---------------------------------------------------------------------------
# E_{1,inf}
# ---------------------------------------------------------------------------


def _isolated_extremal_entries(arr: np.ndarray, tol: float):
    """Check that every entry of maximal modulus is the sole entry above
    noise in both its row and its column.  Returns (ok, mask, rho)."""
    a = np.abs(arr)
    rho = float(a.max())
    mask = a >= rho * (1.0 - tol)
    ok = True
    for i, j in zip(*np.nonzero(mask)):
        row = a[i, :].copy()
        row[j] = 0.0
        col = a[:, j].copy()
        col[i] = 0.0
        if row.max(initial=0.0) > tol * rho or col.max(initial=0.0) > tol * rho:
            ok = False
            break
    return ok, mask, rho


def check_E1inf(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
) -> ClassVerdict:
    """Is ||A||_{1,inf} = ||A||_{p,q}, i.e. does the bound hold with
    equality for all r < p, s > q?

    For p <= q: the entries of maximal modulus rho must be isolated in
    their rows and columns, and the matrix C left after zeroing them must
    satisfy ||C||_{p,q} <= rho; under isolation the norm splits as
    ||A||_{p,q} = max(rho, ||C||_{p,q}), so the residual test can also be
    certified directly on ||A||_{p,q}.  For p > q: membership holds exactly
    when at most one entry is nonzero.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    early = _zero_or_trivial(M, pi, qi, ClassId.E_1INF)
    if early is not None:
        return early
    arr = M.entries
    a = np.abs(arr)
    rho = float(a.max())
    if sign_between(pi, qi) > 0:  # p > q
        count = int((a > tol * rho).sum())
        cond = Condition("at-most-one-nonzero-entry", count <= 1, {"count": count, "rho": rho})
        return _verdict("yes" if count <= 1 else "no", [cond])
    ok_i, mask, rho = _isolated_extremal_entries(arr, tol)
    cond_i = Condition(
        "extremal-entries-isolated",
        ok_i,
        {"rho": rho, "extremal_count": int(mask.sum())},
    )
    if not ok_i:
        return _verdict("no", [cond_i])
    C = arr.copy()
    C[mask] = 0.0
    cb = bracket_norm(MatrixValue(C, M.field), pi, qi, seed=seed)
    resolved = cb.le(rho, _bracket_tol(cb, tol))
    used = cb
    if resolved is None:
        ab = bracket_norm(M, pi, qi, seed=seed)
        alt = ab.le(rho, _bracket_tol(ab, tol))
        if alt is not None:
            resolved = alt
            used = ab
    cond_ii = Condition(
        "residual-norm-at-most-rho",
        resolved,
        {
            "rho": rho,
            "residual_bracket": (cb.lower, cb.upper),
            "residual_exact": cb.is_exact,
        },
    )
    certainty = "exact" if used.is_exact else "estimate-backed"
    if resolved is True:
        return _verdict("yes", [cond_i, cond_ii], certainty=certainty)
    if resolved is False:
        return _verdict("no", [cond_i, cond_ii], certainty=certainty)
    return _verdict("undetermined", [cond_i, cond_ii], certainty="estimate-backed")


def sufficient_e1inf(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    details: Optional[dict] = None,
) -> bool:
    """Cheap sufficient test for E_{1,inf}(p,q) membership.

    Requires the isolation property; then p <= q together with
    m^{1-1/p} * n^{1/q} * ||C||_{1,inf} <= rho guarantees membership,
    using only entry arithmetic (no induced-norm computation).
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    arr = M.entries
    if not arr.any():
        if details is not None:
            details["note"] = "zero matrix"
        return True
    ok_i, mask, rho = _isolated_extremal_entries(arr, tol)
    if details is not None:
        details["isolation"] = ok_i
    if not ok_i:
        return False
    if sign_between(pi, qi) > 0:
        if details is not None:
            details["note"] = "requires p <= q"
        return False
    C = np.abs(arr).copy()
    C[mask] = 0.0
    c_rho = float(C.max())
    lhs = float(M.m) ** (1.0 - pi.inv) * float(M.n) ** qi.inv * c_rho
    if details is not None:
        details.update({"rho": rho, "residual_rho": c_rho, "lhs": lhs})
    return lhs <= rho


# ---------------------------------------------------------------------------
# E_{1,1} and its adjoint mirror E_{inf,inf}
# ---------------------------------------------------------------------------


def _column_conditions(arr: np.ndarray, tol: float):
    """Extremal-column structure: (cond_i_ok, cond_ii_ok, sigma, mask)."""
    a = np.abs(arr)
    col_l1 = a.sum(axis=0)
    sigma = float(col_l1.max())
    mask = col_l1 >= sigma * (1.0 - tol)
    ok_i = True
    for j in np.nonzero(mask)[0]:
        col = a[:, j]
        if col.max() - col.min() > tol * max(col.max(), 1e-300):
            ok_i = False
            break
    ok_ii = True
    l2 = np.sqrt((a * a).sum(axis=0))
    gram = arr.conj().T @ arr
    for j in np.nonzero(mask)[0]:
        for k in range(arr.shape[1]):
            if k == j:
                continue
            if abs(gram[j, k]) > tol * max(l2[j] * l2[k], 1e-300):
                ok_ii = False
                break
        if not ok_ii:
            break
    return ok_i, ok_ii, sigma, mask


def _check_11_columns(
    M: MatrixValue, pi: ExtIndex, qi: ExtIndex, tol: float, seed: int
) -> ClassVerdict:
    arr = M.entries
    n, m = arr.shape
    a = np.abs(arr)
    if sign_between(pi, as_index(2)) > 0:  # p > 2: exactly one constant-modulus column
        peak = float(a.max())
        nz_cols = [j for j in range(m) if a[:, j].max() > tol * peak]
        single = len(nz_cols) == 1
        const = False
        if single:
            col = a[:, nz_cols[0]]
            const = col.max() - col.min() <= tol * col.max()
        conds = [
            Condition("single-nonzero-column", single, {"nonzero_columns": nz_cols}),
            Condition("column-constant-modulus", const if single else None, {}),
        ]
        return _verdict("yes" if (single and const) else "no", conds)
    ok_i, ok_ii, sigma, mask = _column_conditions(arr, tol)
    cond_i = Condition(
        "extremal-columns-constant-modulus",
        ok_i,
        {"sigma": sigma, "extremal_columns": [int(j) for j in np.nonzero(mask)[0]]},
    )
    cond_ii = Condition("extremal-columns-orthogonal", ok_ii, {})
    if not ok_i or not ok_ii:
        conds = [cond_i, cond_ii]
        return _verdict("no", conds)
    target = sigma * float(n) ** (qi.inv - 1.0)
    ab = bracket_norm(M, pi, qi, seed=seed)
    resolved = ab.le(target, _bracket_tol(ab, tol))
    cond_iii = Condition(
        "column-bound-tight",
        resolved,
        {
            "sigma": sigma,
            "norm_target": target,
            "norm_bracket": (ab.lower, ab.upper),
            "norm_exact": ab.is_exact,
        },
    )
    conds = [cond_i, cond_ii, cond_iii]
    certainty = "exact" if ab.is_exact else "estimate-backed"
    if resolved is True:
        j = int(np.nonzero(mask)[0][0])
        cert = {"column_index": j, "column": arr[:, j].copy()}
        return _verdict("yes", conds, certificate=cert, certainty=certainty)
    if resolved is False:
        return _verdict("no", conds, certainty=certainty)
    return _verdict("undetermined", conds, certainty="estimate-backed")


def check_E11(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
) -> ClassVerdict:
    """Is ||A||_{1,1} = n^{1-1/q} * ||A||_{p,q} (equality for r < p, s < q)?

    Necessary: every column whose l1 norm equals sigma = ||A||_{1,1} has
    constant entry modulus and is orthogonal to all other columns.  The
    membership equation itself is the tightness of the column bound, which
    is certified through a norm bracket.  For p > 2 the class collapses to
    matrices with exactly one nonzero, constant-modulus column.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    early = _zero_or_trivial(M, pi, qi, ClassId.E_11)
    if early is not None:
        return early
    return _check_11_columns(M, pi, qi, tol, seed)


_ROW_NAMES = {
    "single-nonzero-column": "single-nonzero-row",
    "column-constant-modulus": "row-constant-modulus",
    "extremal-columns-constant-modulus": "extremal-rows-constant-modulus",
    "extremal-columns-orthogonal": "extremal-rows-orthogonal",
    "column-bound-tight": "row-bound-tight",
}


def check_Einfinf(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
) -> ClassVerdict:
    """Is ||A||_{inf,inf} = m^{1/p} * ||A||_{p,q} (equality for r > p, s > q)?

    Decided on the adjoint: A is a member exactly when A* satisfies the
    column criteria at the conjugate pair (q*, p*).  Conditions are
    reported in row form; for q < 2 the class collapses to matrices with
    exactly one nonzero, constant-modulus row.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    dual = check_E11(M.adjoint(), conjugate(qi), conjugate(pi), tol, seed=seed)
    conds = [
        Condition(_ROW_NAMES.get(c.name, c.name), c.satisfied, dict(c.measured))
        for c in dual.conditions
    ]
    return ClassVerdict(dual.member, conds, dual.certificate, dual.certainty)


def _sufficient_11_terms(
    p: float, mm: int, nn: int, sigma: float, c11: float, n_exponent_num: Optional[float] = None
) -> Optional[float]:
    """Left-hand side of the closeness inequality behind the E_{1,1}
    sufficient test, or None where the p = 2 limit diverges.

    n_exponent_num overrides the exponent of n in the second term (used by
    the adjoint mirror to evaluate the alternative printed form).
    """
    t1 = (2.0 * mm * nn) ** (1.0 - 1.0 / p) * (c11 / sigma)
    coef = 2.0 ** (1.0 - 1.0 / p) - 1.0
    if c11 == 0.0 or coef == 0.0:
        return t1
    ratio = c11 / sigma
    if p == 2.0:
        g = -math.log(nn) - 2.0 * math.log(mm) + 2.0 * math.log(ratio)
        if g < 0.0:
            return t1
        return None  # the bracket term diverges (or is indeterminate)
    n_exp = (
        n_exponent_num
        if n_exponent_num is not None
        else (-3.0 * p * p + 2.0 * p + 4.0) / (2.0 * p * (2.0 - p))
    )
    bracket = (
        (p / 2.0) ** (1.0 / (2.0 - p))
        * float(nn) ** n_exp
        * float(mm) ** (-2.0 * (p - 1.0) / (2.0 - p))
        * ratio ** (2.0 / (2.0 - p))
    )
    return t1 + coef * bracket


def sufficient_e11(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    details: Optional[dict] = None,
    *,
    seed: int = 0,
) -> bool:
    """Sufficient test for E_{1,1}(p,q) using only entry arithmetic.

    Requires the two structural column properties, p <= 2 and q <= p.  The
    test compares the relative weight of the non-extremal columns against a
    closeness threshold that tightens as p grows toward 2.  On small
    matrices every positive verdict is cross-checked against a sampled
    norm oracle; a contradiction is reported and the verdict withdrawn.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    arr = M.entries
    if not arr.any():
        return True
    ok_i, ok_ii, sigma, mask = _column_conditions(arr, tol)
    if details is not None:
        details.update({"constant_modulus": ok_i, "orthogonal": ok_ii})
    if not ok_i or not ok_ii:
        return False
    if pi.value > 2.0 or sign_between(qi, pi) > 0:
        if details is not None:
            details["note"] = "requires p <= 2 and q <= p"
        return False
    C = arr.copy()
    C[:, mask] = 0.0
    c11 = float(np.abs(C).sum(axis=0).max())
    lhs = _sufficient_11_terms(pi.value, M.m, M.n, sigma, c11)
    if details is not None:
        details.update({"sigma": sigma, "residual_sigma": c11, "lhs": lhs})
    verdict = lhs is not None and lhs <= 1.0
    if verdict and max(M.m, M.n) <= 4:
        from .induced_norms import norm_bruteforce

        probe = norm_bruteforce(M, pi, qi, budget=2000, seed=seed)
        target = sigma * float(M.n) ** (qi.inv - 1.0)
        if probe.value > target * (1.0 + 1e-6):
            warnings.warn(
                "sufficient E_11 test contradicted by the sampling oracle; "
                "withdrawing the positive verdict",
                RuntimeWarning,
                stacklevel=2,
            )
            return False
    return verdict


def sufficient_einfinf(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    details: Optional[dict] = None,
    *,
    seed: int = 0,
) -> bool:
    """Sufficient test for E_{inf,inf}(p,q): the adjoint mirror of the
    E_{1,1} test, requiring q >= 2 and p >= q.

    The mirrored inequality admits a second printed form whose n-exponent
    differs; both are evaluated and a disagreement triggers a warning, with
    the adjoint-derived verdict returned.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    dual = sufficient_e11(M.adjoint(), conjugate(qi), conjugate(pi), tol, details, seed=seed)
    # Alternative direct form with the n-exponent as printed: -2(q*-1)/(2 q* p)
    arr = M.entries
    if arr.any() and not pi.is_inf:
        qs = conjugate(qi).value
        ok_i, ok_ii, sigma, mask = _column_conditions(arr.conj().T, tol)
        if ok_i and ok_ii and qs <= 2.0 and sign_between(conjugate(pi), conjugate(qi)) <= 0:
            C = arr.copy()
            C[mask, :] = 0.0
            c11 = float(np.abs(C).sum(axis=1).max())
            if qs != 2.0 and c11 > 0.0 and sigma > 0.0:
                alt_exp = -2.0 * (qs - 1.0) / (2.0 * qs * pi.value)
                alt = _sufficient_11_terms(qs, M.n, M.m, sigma, c11, n_exponent_num=alt_exp)
                alt_verdict = alt is not None and alt <= 1.0
                if alt_verdict != dual:
                    warnings.warn(
                        "the two printed forms of the E_infinf sufficient "
                        "inequality disagree; returning the adjoint-derived verdict",
                        RuntimeWarning,
                        stacklevel=2,
                    )
    return dual


# ---------------------------------------------------------------------------
# E_{inf,1}
# ---------------------------------------------------------------------------


def _constant_modulus(w: np.ndarray, tol: float) -> Optional[float]:
    """Common modulus of the entries of w, or None if they differ."""
    a = np.abs(w)
    peak = float(a.max())
    if peak == 0.0:
        return 0.0
    if peak - float(a.min()) <= tol * peak:
        return float(a.mean())
    return None


def _eigen_residual_ok(arr: np.ndarray, v: np.ndarray, tol: float) -> tuple:
    z = arr.conj().T @ (arr @ v)
    nz = float(np.linalg.norm(z))
    if nz == 0.0:
        return True, 0.0
    lam = float((np.vdot(v, z) / np.vdot(v, v)).real)
    resid = float(np.linalg.norm(z - lam * v))
    return resid <= tol * nz, lam

def _resolve_amplitude(
    M: MatrixValue,
    v: np.ndarray,
    pi: ExtIndex,
    qi: ExtIndex,
    ab: NormBracket,
    tol: float,
) -> Optional[bool]:
    """Condition (iv): does the ratio at v reach ||A||_{p,q}?

    The ratio is always a valid lower bound, so the question reduces to
    whether the norm exceeds it.
    """
    ratio = vector_norm(M.entries @ v, qi) / vector_norm(v, pi)
    return ab.le(ratio, _bracket_tol(ab, tol))


def _k1_in_subspace(
    Q: np.ndarray, rng: np.random.Generator, tries: int = 24, iters: int = 400
) -> list:
    """Heuristic search for unit-modulus vectors inside span(Q).

    Alternating projection between the constant-modulus torus and the
    subspace; returns de-duplicated converged candidates (entries of
    modulus 1, in-subspace residual below 1e-8)."""
    m, k = Q.shape
    starts = [Q[:, j] for j in range(k)]
    starts.append(Q @ Q.conj().T @ np.ones(m, dtype=complex))
    for _ in range(tries):
        starts.append(Q @ (rng.standard_normal(k) + 1j * rng.standard_normal(k)))
    if m <= 4:
        g = 8 if m >= 4 else 16
        phases = np.exp(2j * np.pi * np.arange(g) / g)
        mesh = np.meshgrid(*([phases] * (m - 1)), indexing="ij")
        Xg = np.ones((m, mesh[0].size), dtype=complex)
        for t, gt in enumerate(mesh):
            Xg[t + 1, :] = gt.reshape(-1)
        proj = Q @ (Q.conj().T @ Xg)
        fit = np.linalg.norm(proj - Xg, axis=0)
        for idx in np.argsort(fit, kind="stable")[:8]:
            starts.append(Xg[:, idx])
    out = []
    P = Q @ Q.conj().T
    for x0 in starts:
        x = x0.astype(complex)
        if np.linalg.norm(x) == 0:
            continue
        for _ in range(iters):
            a = np.abs(x)
            y = np.where(a > 0, x / np.where(a > 0, a, 1.0), 1.0)
            xn = P @ y
            if np.linalg.norm(xn - x) <= 1e-14 * max(np.linalg.norm(x), 1e-300):
                x = xn
                break
            x = xn
        a = np.abs(x)
        if a.min() <= 1e-8:
            continue
        w = x / a
        if np.linalg.norm(P @ w - w) > 1e-8 * math.sqrt(m):
            continue
        duplicate = any(
            abs(np.vdot(u, w)) >= (1.0 - 1e-8) * m for u in out
        )
        if not duplicate:
            out.append(w)
    return out


def _biunimodular_in_subspace(
    Q: np.ndarray,
    W: np.ndarray,
    rng: np.random.Generator,
    tries: int = 24,
    iters: int = 400,
) -> list:
    """Heuristic search for x in span(Q) with constant-modulus entries whose
    image coordinates W (Q* x) also have constant modulus.

    Q has orthonormal columns; W is an isometry on the same coefficient
    space (the matrix restricted to the eigenspace, divided by its singular
    value).  Alternating phase projection through both tori; returns
    de-duplicated unit-modulus candidates with in-subspace residual below
    1e-8.  The single-torus search cannot see the image constraint, so it
    stalls on fully degenerate eigenspaces where span(Q) is everything."""
    m, k = Q.shape
    starts = [Q[:, j] for j in range(k)]
    starts.append(Q @ (Q.conj().T @ np.ones(m, dtype=complex)))
    for _ in range(tries):
        starts.append(Q @ (rng.standard_normal(k) + 1j * rng.standard_normal(k)))
    if m <= 4:
        # 24 is divisible by 2, 3 and 4, so roots of unity of those orders
        # (the phases of small structured maximizers) sit on the grid
        g = 8 if m >= 4 else 24
        phases = np.exp(2j * np.pi * np.arange(g) / g)
        mesh = np.meshgrid(*([phases] * (m - 1)), indexing="ij")
        Xg = np.ones((m, mesh[0].size), dtype=complex)
        for t, gt in enumerate(mesh):
            Xg[t + 1, :] = gt.reshape(-1)
        proj = Q @ (Q.conj().T @ Xg)
        fit = np.linalg.norm(proj - Xg, axis=0)
        for idx in np.argsort(fit, kind="stable")[:12]:
            starts.append(Xg[:, idx])
    out = []
    for x0 in starts:
        if np.linalg.norm(x0) == 0:
            continue
        c = Q.conj().T @ x0.astype(complex)
        ok = False
        for _ in range(iters):
            x = Q @ c
            a = np.abs(x)
            x = np.where(a > 1e-14, x / np.where(a > 0, a, 1.0), 1.0)
            c = Q.conj().T @ x
            y = W @ c
            b = np.abs(y)
            ty = float(b.mean())
            if ty > 0:
                y = np.where(b > 1e-14, y / np.where(b > 0, b, 1.0), 1.0) * ty
                c = W.conj().T @ y
            x = Q @ c
            a = np.abs(x)
            if a.max() <= 1e-300:
                break
            y = W @ c
            b = np.abs(y)
            x_dev = (a.max() - a.min()) / a.max()
            y_dev = 0.0 if b.max() <= 0 else (b.max() - b.min()) / b.max()
            if x_dev <= 1e-12 and y_dev <= 1e-12:
                ok = True
                break
        if not ok:
            continue
        a = np.abs(x)
        if a.min() <= 1e-8:
            continue
        w = x / a
        if np.linalg.norm(Q @ (Q.conj().T @ w) - w) > 1e-8 * math.sqrt(m):
            continue
        duplicate = any(abs(np.vdot(u, w)) >= (1.0 - 1e-8) * m for u in out)
        if not duplicate:
            out.append(w)
    return out


def check_Einf1(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
    max_real_cols: int = 24,
) -> ClassVerdict:
    """Is ||A||_{inf,1} = m^{1/p} n^{1-1/q} ||A||_{p,q} (equality for
    r > p, s < q)?

    Membership holds exactly when some vector v with unit-modulus entries
    is an eigenvector of A*A, has a constant-modulus image A v, and its
    norm ratio attains ||A||_{p,q}.  Real field: full sign enumeration
    (conclusive).  Complex field: eigen-decomposition of A*A, with each
    amplitude-compatible eigenspace searched for a unit-modulus
    representative; multidimensional eigenspace searches are heuristic, so
    a failed search yields undetermined rather than no.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    early = _zero_or_trivial(M, pi, qi, ClassId.E_INF1)
    if early is not None:
        return early
    arr = M.entries
    n, m = arr.shape
    ab = bracket_norm(M, pi, qi, seed=seed)
    certainty = "exact" if ab.is_exact else "estimate-backed"
    if not M.is_complex:
        if m > max_real_cols:
            raise DimensionError(
                f"sign enumeration capped at {max_real_cols} columns, got {m}"
            )
        candidates = []
        total = 1 << (m - 1)
        chunk = 1 << 14
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
            X = np.ones((m, idx.size))
            for bit in range(m - 1):
                X[bit + 1, :] = 1.0 - 2.0 * (
                    (idx >> np.uint64(bit)) & np.uint64(1)
                ).astype(float)
            W = np.abs(arr @ X)
            peaks = W.max(axis=0)
            spread = peaks - W.min(axis=0)
            ok = (peaks > 0) & (spread <= tol * np.maximum(peaks, 1e-300))
            for j in np.nonzero(ok)[0]:
                candidates.append(X[:, j].copy())
        conds = [
            Condition(
                "unimodular-constant-image-vectors",
                bool(candidates),
                {"count": len(candidates), "searched": int(total)},
            )
        ]
        if not candidates:
            return _verdict("no", conds, certainty="exact")
        unresolved = False
        for v in candidates:
            ok_eig, lam = _eigen_residual_ok(arr, v, tol)
            if not ok_eig:
                continue
            res = _resolve_amplitude(M, v, pi, qi, ab, tol)
            if res is True:
                tau = _constant_modulus(arr @ v, tol)
                conds.append(
                    Condition(
                        "eigenvector-with-matching-amplitude",
                        True,
                        {"lambda": lam, "tau": tau},
                    )
                )
                cert = {"v": v, "tau": tau, "lambda": lam}
                return _verdict("yes", conds, certificate=cert, certainty=certainty)
            if res is None:
                unresolved = True
        conds.append(
            Condition("eigenvector-with-matching-amplitude", None if unresolved else False, {})
        )
        if unresolved:
            return _verdict("undetermined", conds, certainty="estimate-backed")
        return _verdict("no", conds, certainty=certainty)
    # complex field: eigenspaces of A*A are spanned by right singular vectors
    f = svd(M)
    svals = f.s
    scale_amp = float(m) ** (pi.inv - 0.5) * float(n) ** (0.5 - qi.inv)
    lo = scale_amp * ab.lower * (1.0 - _bracket_tol(ab, tol))
    hi = scale_amp * ab.upper * (1.0 + _bracket_tol(ab, tol))
    groups = []
    i = 0
    while i < len(svals):
        j = i
        while j + 1 < len(svals) and abs(svals[j + 1] - svals[i]) <= 1e-8 * max(
            svals[0], 1e-300
        ):
            j += 1
        groups.append((float(svals[i]), list(range(i, j + 1))))
        i = j + 1
    qualifying = [g for g in groups if lo <= g[0] <= hi and g[0] > 0]
    conds = [
        Condition(
            "amplitude-compatible-eigenspaces",
            bool(qualifying),
            {
                "window": (lo, hi),
                "singular_values": [float(x) for x in svals],
            },
        )
    ]
    if not qualifying:
        return _verdict("no", conds, certainty=certainty)
    rng = np.random.default_rng(seed)
    heuristic_miss = False
    unresolved = False
    for sval, idx in qualifying:
        Q = f.v[:, idx].astype(complex)
        if len(idx) == 1:
            v0 = Q[:, 0]
            if _constant_modulus(v0, tol) is None:
                continue  # conclusive for a 1-dimensional eigenspace
            w = v0 / np.abs(v0)
            cand_list = [w]
        else:
            # within one eigengroup the matrix acts as sval times an
            # isometry, so both modulus constraints can be phase-projected
            W = (arr @ Q) / sval if sval > 0 else arr @ Q
            cand_list = _biunimodular_in_subspace(Q, W, rng)
            if not cand_list:
                heuristic_miss = True
                continue
        found_here = False
        for w in cand_list:
            tau = _constant_modulus(arr @ w, tol)
            if tau is None:
                continue
            ok_eig, lam = _eigen_residual_ok(arr, w, max(tol, 1e-7))
            if not ok_eig:
                continue
            res = _resolve_amplitude(M, w, pi, qi, ab, tol)
            if res is True:
                conds.append(
                    Condition(
                        "eigenvector-with-matching-amplitude",
                        True,
                        {"lambda": lam, "tau": tau},
                    )
                )
                cert = {"v": w, "tau": tau, "lambda": lam}
                return _verdict("yes", conds, certificate=cert, certainty=certainty)
            if res is None:
                unresolved = True
            found_here = True
        if len(idx) > 1 and not found_here:
            heuristic_miss = True
    conds.append(
        Condition(
            "eigenvector-with-matching-amplitude",
            None if (heuristic_miss or unresolved) else False,
            {},
        )
    )
    if heuristic_miss or unresolved:
        return _verdict("undetermined", conds, certainty="estimate-backed")
    return _verdict("no", conds, certainty=certainty)


# ---------------------------------------------------------------------------
# SVD characterization at the (2,2) anchor
# ---------------------------------------------------------------------------


def _in_span(Q: np.ndarray, e: np.ndarray, tol: float = 1e-8) -> bool:
    proj = Q @ (Q.conj().T @ e)
    return float(np.linalg.norm(proj - e)) <= tol


def _sign_block(start: int, stop: int, m: int) -> np.ndarray:
    """Columns are the sign vectors (first entry +1) indexed start..stop-1."""
    idx = np.arange(start, stop, dtype=np.uint64)
    X = np.ones((m, idx.size))
    for bit in range(m - 1):
        X[bit + 1, :] = 1.0 - 2.0 * ((idx >> np.uint64(bit)) & np.uint64(1)).astype(float)
    return X


def _sign_vectors_in_span(Q: np.ndarray, cap: int = 24) -> Optional[list]:
    """All unit sign vectors inside span(Q), or None when the dimension
    exceeds the enumeration cap.  For real matrices these are exactly the
    constant-modulus candidates, so the search is exhaustive."""
    m = Q.shape[0]
    if m - 1 > cap:
        return None
    out = []
    P = Q @ Q.T
    total = 1 << (m - 1)
    chunk = 1 << 14
    for start in range(0, total, chunk):
        X = _sign_block(start, min(start + chunk, total), m)
        resid = np.linalg.norm(P @ X - X, axis=0)
        for j in np.nonzero(resid <= 1e-8 * math.sqrt(m))[0]:
            out.append(X[:, j] / math.sqrt(m))
    return out


def _svd_with_first_vector(
    M: MatrixValue, f: SvdFactors, top: Sequence[int], v_new: np.ndarray
) -> Optional[SvdFactors]:
    """Rebuild the factorization so the leading right-singular vector is
    v_new (a unit vector inside the top singular subspace)."""
    arr = M.entries
    s1 = float(f.s[0])
    k = len(top)
    Qv = f.v[:, list(top)]
    dtype = complex if (M.is_complex or np.iscomplexobj(v_new)) else float
    basis = [v_new.astype(dtype)]
    for j in range(k):
        c = Qv[:, j].astype(dtype)
        for b in basis:
            c = c - b * np.vdot(b, c)
        nc = float(np.linalg.norm(c))
        if nc > 1e-10:
            basis.append(c / nc)
        if len(basis) == k:
            break
    if len(basis) != k:
        return None
    Vt = np.stack(basis, axis=1)
    Ut = (arr @ Vt) / s1
    V = f.v.astype(dtype).copy()
    U = f.u.astype(dtype).copy()
    V[:, list(top)] = Vt
    U[:, list(top)] = Ut
    cand = SvdFactors(u=U, s=f.s, v=V)
    err = float(np.abs(cand.reconstruct() - arr).max())
    if err > 1e-8 * max(s1, 1.0):
        return None
    return cand


def check_svd_equality(
    A: MatrixLike,
    r: IndexLike,
    s: IndexLike,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
) -> ClassVerdict:
    """Does ||A||_{r,s} equal m^{[1/2-1/r]_+} n^{[1/s-1/2]_+} ||A||_{2,2}?

    Holds exactly when A admits a singular value decomposition whose
    leading left singular vector lies in K_{sgn(2-s)}, leading right
    singular vector in K_{-sgn(2-r)}, and whose top singular value leads.
    Simple top singular values make the test conclusive; for degenerate top
    subspaces the needed coordinate vectors are enumerated exactly, while
    constant-modulus representatives are searched heuristically (with a
    direct norm-equality fallback), so only those paths can end
    undetermined.  The certificate is a full factorization in the required
    form.
    """
    M = as_matrix(A)
    ri, si = as_index(r), as_index(s)
    f = svd(M)
    if not M.entries.any():
        return _verdict(
            "yes",
            [Condition("zero-matrix", True, {})],
            certificate=f,
        )
    ku, kv = extremal_pair_classes(ri, si)
    arr = M.entries
    n, m = arr.shape
    s1 = float(f.s[0])
    conds = [
        Condition(
            "required-singular-vector-classes",
            None,
            {"left": ku.value, "right": kv.value, "top_singular_value": s1},
        )
    ]

    def u_ok(u: np.ndarray) -> bool:
        return ku is KClassId.K0 or k_class_test(u, ku, tol)

    def v_ok(v: np.ndarray) -> bool:
        return kv is KClassId.K0 or k_class_test(v, kv, tol)

    top = [i for i in range(len(f.s)) if f.s[i] >= s1 * (1.0 - 1e-8)]
    k = len(top)
    # direct test on the computed leading pair
    if u_ok(f.u[:, 0]) and v_ok(f.v[:, 0]):
        conds.append(Condition("leading-pair-in-required-classes", True, {}))
        return _verdict("yes", conds, certificate=f)
    if k == 1:
        ok = u_ok(f.u[:, 0]) and v_ok(f.v[:, 0])
        conds.append(
            Condition(
                "leading-pair-in-required-classes",
                ok,
                {"note": "top singular value is simple; the pair is unique up to phase"},
            )
        )
        return _verdict("yes" if ok else "no", conds, certificate=f if ok else None)
    Qv = f.v[:, top]
    Qu = f.u[:, top]
    rng = np.random.default_rng(seed)
    # candidate vectors for each constrained side; a side is "exhaustive"
    # when every class representative inside the top subspace was tried
    exhaustive = True

    def _k1_candidates(Q: np.ndarray) -> list:
        nonlocal exhaustive
        if not M.is_complex:
            signs = _sign_vectors_in_span(Q.real.astype(float))
            if signs is not None:
                return signs
        exhaustive = False
        cands = []
        for w in _k1_in_subspace(Q.astype(complex), rng):
            x = w / np.linalg.norm(w)
            if not M.is_complex:
                if np.abs(x.imag).max() > 1e-10:
                    continue
                x = x.real.astype(float)
            cands.append(x)
        return cands

    right_candidates: list = []
    left_candidates: list = []
    if kv is KClassId.KMINUS1:
        for j in range(m):
            e = np.zeros(m, dtype=arr.dtype)
            e[j] = 1.0
            if _in_span(Qv, e):
                right_candidates.append(e)
    elif kv is KClassId.K1:
        right_candidates = _k1_candidates(Qv)
    if ku is KClassId.KMINUS1:
        for i in range(n):
            e = np.zeros(n, dtype=arr.dtype)
            e[i] = 1.0
            if _in_span(Qu, e):
                left_candidates.append(e)
    elif ku is KClassId.K1:
        left_candidates = _k1_candidates(Qu)
    for v in right_candidates:
        u = arr @ v / s1
        if u_ok(u):
            cert = _svd_with_first_vector(M, f, top, v)
            conds.append(Condition("right-vector-with-valid-partner", True, {}))
            return _verdict("yes", conds, certificate=cert)
    for u in left_candidates:
        v = arr.conj().T @ u / s1
        if v_ok(v):
            cert = _svd_with_first_vector(M, f, top, v)
            conds.append(Condition("left-vector-with-valid-partner", True, {}))
            return _verdict("yes", conds, certificate=cert)
    # a K_{-1} requirement enumerated exhaustively settles the question even
    # if the other side is heuristic (the partner is determined by it)
    if kv is KClassId.KMINUS1 or ku is KClassId.KMINUS1:
        exhaustive = True
    if exhaustive:
        conds.append(
            Condition(
                "top-subspace-representative",
                False,
                {"note": "all class representatives in the top subspace fail"},
            )
        )
        return _verdict("no", conds)
    # direct equality fallback: the spectral anchor upper bound coincides
    # with the claimed value, so an estimate reaching it certifies equality
    factor = bound_factor(2, 2, ri, si, m, n)
    target = factor * s1
    lb = bracket_norm(M, ri, si, seed=seed)
    if lb.lower >= target * (1.0 - max(tol, ESTIMATED_EQ_TOL)):
        conds.append(
            Condition(
                "norm-attains-spectral-bound",
                True,
                {"target": target, "reached": lb.lower},
            )
        )
        return _verdict("yes", conds, certificate=None, certainty="estimate-backed")
    if lb.upper < target * (1.0 - max(tol, ESTIMATED_EQ_TOL)):
        conds.append(
            Condition(
                "norm-attains-spectral-bound",
                False,
                {"target": target, "upper": lb.upper},
            )
        )
        return _verdict("no", conds, certainty="exact" if lb.is_exact else "estimate-backed")
    conds.append(
        Condition(
            "constant-modulus-search",
            None,
            {"note": "heuristic subspace search inconclusive", "target": target},
        )
    )
    return _verdict("undetermined", conds, certainty="estimate-backed")


def check_class(
    A: MatrixLike,
    cls: ClassId,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
) -> ClassVerdict:
    """Dispatch to the decider for the given equality class."""
    if not isinstance(cls, ClassId):
        cls = ClassId.parse(cls)
    fn: Callable = {
        ClassId.E_1INF: check_E1inf,
        ClassId.E_11: check_E11,
        ClassId.E_INFINF: check_Einfinf,
        ClassId.E_INF1: check_Einf1,
    }[cls]
    return fn(A, p, q, tol, seed=seed)


# ---------------------------------------------------------------------------
# Maximizer eigencheck and the diagonal normal form
# ---------------------------------------------------------------------------


class PreconditionError(ValueError):
    """A hypothesis of the eigencheck is not met by the supplied vector."""


def maximizer_eigencheck(
    A: MatrixLike,
    v,
    p: IndexLike,
    q: IndexLike,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Must a maximizer shaped like v be an eigenvector of A*A?  Test it.

    Hypotheses (raising PreconditionError when violated): the nonzero
    entries of v share a common modulus, likewise the entries of A v, and
    either 1 < p < inf, or p = 1 with v of full constant modulus, or
    p = inf with at most one nonzero entry in v.  Returns whether A*A v is
    proportional to v within tol (residual against the Rayleigh quotient).
    """
    M = as_matrix(A)
    pi = as_index(p)
    vec = np.asarray(v).reshape(-1)
    if vec.shape[0] != M.m:
        raise PreconditionError("vector length does not match the column count")
    a = np.abs(vec)
    peak = float(a.max())
    if peak == 0.0:
        raise PreconditionError("the zero vector cannot be a maximizer")
    nz = a > tol * peak
    if a[nz].max() - a[nz].min() > tol * peak:
        raise PreconditionError("nonzero entries of v must share one modulus")
    w = M.entries @ vec
    aw = np.abs(w)
    wpeak = float(aw.max())
    if wpeak > 0.0:
        wnz = aw > tol * wpeak
        if aw[wnz].max() - aw[wnz].min() > tol * wpeak:
            raise PreconditionError("nonzero entries of A v must share one modulus")
    if pi.value == 1.0:
        if not k_class_test(vec, KClassId.K1, tol):
            raise PreconditionError("p = 1 requires v with all entries of equal modulus")
    elif pi.is_inf:
        if not k_class_test(vec, KClassId.KMINUS1, tol):
            raise PreconditionError("p = inf requires v with at most one nonzero entry")
    z = M.entries.conj().T @ w
    nzn = float(np.linalg.norm(z))
    if nzn == 0.0:
        return True
    lam = np.vdot(vec, z) / np.vdot(vec, vec)
    resid = float(np.linalg.norm(z - lam * vec))
    return resid <= tol * nzn


@dataclass(frozen=True)
class DavReport:
    """Outcome of the diagonal normal-form construction.

    When ok, d and v_diag are diagonal unitary matrices such that every row
    sum of D A V equals tau and every column sum equals n*tau/m; a failure
    retains the measured sums as the refutation.
    """

    ok: bool
    tau: float
    row_sums: np.ndarray
    col_sums: np.ndarray
    d: Optional[np.ndarray] = None
    v_diag: Optional[np.ndarray] = None


def dav_normal_form(A: MatrixLike, v, tol: float = DEFAULT_TOL) -> DavReport:
    """Build D = diag(conj(Av)/tau) and V = diag(v) and test the sum rules.

    Requires v with unit-modulus entries and a constant-modulus image; the
    row sums of D A V then equal tau automatically, while the column-sum
    rule is equivalent to v being an eigenvector of A*A.  Returns the
    report with the diagonals only when every sum matches.
    """
    M = as_matrix(A)
    vec = np.asarray(v).reshape(-1).astype(complex if M.is_complex else float)
    arr = M.entries
    n, m = arr.shape
    if vec.shape[0] != m:
        raise ValueError("vector length does not match the column count")
    w = arr @ vec
    empty = np.zeros(0)
    a = np.abs(vec)
    if a.max() == 0.0 or a.max() - a.min() > tol * a.max():
        return DavReport(False, 0.0, empty, empty)
    aw = np.abs(w)
    tau_common = _constant_modulus(w, tol)
    if tau_common is None or tau_common <= tol * max(aw.max(), 1e-300):
        return DavReport(False, 0.0 if tau_common is None else tau_common, empty, empty)
    tau = tau_common
    D = np.diag(np.conj(w) / tau)
    V = np.diag(vec)
    dav = D @ arr @ V
    row_sums = dav.sum(axis=1)
    col_sums = dav.sum(axis=0)
    col_target = n * tau / m
    ok = bool(
        np.all(np.abs(row_sums - tau) <= tol * max(tau, 1.0))
        and np.all(np.abs(col_sums - col_target) <= tol * max(tau, col_target, 1.0))
    )
    if not ok:
        return DavReport(False, tau, row_sums, col_sums)
    return DavReport(True, tau, row_sums, col_sums, d=D, v_diag=V)
