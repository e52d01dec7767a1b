"""Induced matrix norms ||A||_{p,q} = max ||Ax||_q / ||x||_p.

Exact routes exist for p = 1 (column maximum), q = inf (row maximum via the
dual exponent), (p, q) = (2, 2) (largest singular value) and, over the real
field, (inf, 1) by sign enumeration.  Everything else is estimated from below
by a duality-map ascent with restarts; results carry a certainty tag so
callers can tell exact values from estimates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from .core import (
    DEFAULT_TOL,
    ExtIndex,
    IndexLike,
    as_index,
    conjugate,
    vector_norm,
)

__all__ = [
    "MatrixValue",
    "MatrixLike",
    "Certainty",
    "NormResult",
    "SvdFactors",
    "EstimatorSettings",
    "DimensionError",
    "SvdConvergenceError",
    "as_matrix",
    "svd",
    "norm_closed_form",
    "norm_infty_one_exact",
    "norm_estimate",
    "norm_bruteforce",
    "best_norm",
    "maximizer_set_probe",
    "norm_ratio",
]

REAL = "real"
COMPLEX = "complex"

_TINY = 1e-300


class DimensionError(ValueError):
    """Raised when an exact enumeration would exceed its dimension cap."""


class SvdConvergenceError(RuntimeError):
    """Raised when Jacobi sweeps fail to orthogonalize the columns."""


@dataclass(frozen=True)
class MatrixValue:
    """A dense matrix together with its scalar field.

    The field marker decides which vectors x compete in max ||Ax||_q / ||x||_p:
    a real-entried matrix may still be treated over the complex field, where
    some norms (notably (inf, 1)) are strictly larger.
    """

    entries: np.ndarray
    field: str = REAL

    def __post_init__(self) -> None:
        arr = np.array(self.entries, copy=True)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("matrix must be two-dimensional and nonempty")
        if self.field == REAL:
            if np.iscomplexobj(arr):
                if np.any(arr.imag != 0):
                    raise ValueError("real-field matrix has entries with nonzero imaginary part")
                arr = arr.real
            arr = arr.astype(np.float64)
        elif self.field == COMPLEX:
            arr = arr.astype(np.complex128)
        else:
            raise ValueError(f"field must be 'real' or 'complex', got {self.field!r}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        """Number of rows (the codomain dimension)."""
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        """Number of columns (the domain dimension)."""
        return self.entries.shape[1]

    @property
    def is_complex(self) -> bool:
        return self.field == COMPLEX

    def adjoint(self) -> "MatrixValue":
        return MatrixValue(self.entries.conj().T, self.field)


MatrixLike = Union[MatrixValue, np.ndarray, list]


def as_matrix(A: MatrixLike, field: Optional[str] = None) -> MatrixValue:
    """Coerce to MatrixValue; plain arrays infer the field from their dtype."""
    if isinstance(A, MatrixValue):
        if field is not None and field != A.field:
            return MatrixValue(A.entries, field)
        return A
    arr = np.asarray(A)
    if field is None:
        field = COMPLEX if np.iscomplexobj(arr) else REAL
    return MatrixValue(arr, field)


class Certainty(str, enum.Enum):
    """How trustworthy a reported norm value is."""

    CLOSED_FORM = "exact-closed-form"
    ENUMERATION = "exact-enumeration"
    ESTIMATE = "lower-bound-estimate"

    @property
    def is_exact(self) -> bool:
        return self is not Certainty.ESTIMATE


def weaker_certainty(a: Certainty, b: Certainty) -> Certainty:
    order = [Certainty.CLOSED_FORM, Certainty.ENUMERATION, Certainty.ESTIMATE]
    return max(a, b, key=order.index)


@dataclass(frozen=True)
class NormResult:
    """A norm value with the witness vector that (nearly) attains it.

    The witness always has unit p-norm, so ||A witness||_q reproduces value
    up to rounding for the exact routes and up to convergence tolerance for
    estimates.
    """

    value: float
    witness: np.ndarray
    certainty: Certainty


def norm_ratio(A: MatrixLike, x, p: IndexLike, q: IndexLike) -> float:
    """||Ax||_q / ||x||_p, the quantity every witness certifies."""
    M = as_matrix(A)
    vec = np.asarray(x).reshape(-1)
    den = vector_norm(vec, p)
    if den == 0.0:
        raise ValueError("witness must be nonzero")
    return vector_norm(M.entries @ vec, q) / den


def _phase(w: np.ndarray) -> np.ndarray:
    """w / |w| entrywise, 0 mapped to 0; sign() for real input."""
    if np.iscomplexobj(w):
        a = np.abs(w)
        out = np.zeros_like(w)
        nz = a > 0
        out[nz] = w[nz] / a[nz]
        return out
    return np.sign(w)


def _lp_cols(W: np.ndarray, p: ExtIndex) -> np.ndarray:
    """Column-wise p-norms with overflow-safe rescaling."""
    a = np.abs(W)
    if p.is_inf:
        return a.max(axis=0)
    v = p.value
    if v == 1.0:
        return a.sum(axis=0)
    if v == 2.0:
        return np.sqrt((a * a).sum(axis=0))
    peak = a.max(axis=0)
    safe = np.where(peak > 0, peak, 1.0)
    return safe * ((a / safe) ** v).sum(axis=0) ** (1.0 / v)


def _phi_cols(W: np.ndarray, t: ExtIndex) -> np.ndarray:
    """Column-wise duality map |w|^(t-1) * phase(w).

    At the boundary exponents the map degenerates: t = 1 yields the phase
    vector, t = inf selects the lowest-index entry of maximal modulus.
    """
    if t.value == 1.0:
        return _phase(W)
    if t.is_inf:
        a = np.abs(W)
        idx = a.argmax(axis=0)
        cols = np.arange(W.shape[1])
        out = np.zeros_like(W)
        out[idx, cols] = _phase(W[idx, cols])
        return out
    a = np.abs(W)
    peak = a.max(axis=0)
    safe = np.where(peak > 0, peak, 1.0)
    return ((a / safe) ** (t.value - 1.0)) * _phase(W)


def _normalize_cols(X: np.ndarray, p: ExtIndex) -> np.ndarray:
    norms = _lp_cols(X, p)
    safe = np.where(norms > _TINY, norms, 1.0)
    return X / safe


def _ascent(
    arr: np.ndarray,
    p: ExtIndex,
    q: ExtIndex,
    X0: np.ndarray,
    max_iter: int,
    tol: float,
):
    """Batched duality-map ascent on the columns of X0.

    Each step replaces x by the p-unit maximizer of Re <A* phi_q(Ax), x>,
    which never decreases ||Ax||_q / ||x||_p at the exact fixed points and in
    practice climbs to a local maximum quickly.  Returns the best (value,
    witness) seen plus the terminal iterates of every column.
    """
    pstar = conjugate(p)
    X = _normalize_cols(X0.copy(), p)
    best_val = -math.inf
    best_vec = X[:, 0].copy()
    prev = None
    vals = np.zeros(X.shape[1])
    for it in range(max_iter):
        Y = arr @ X
        vals = _lp_cols(Y, q)
        j = int(vals.argmax())
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_vec = X[:, j].copy()
        if prev is not None:
            if np.all(np.abs(vals - prev) <= tol * np.maximum(vals, _TINY)):
                break
        prev = vals
        U = _phi_cols(Y, q)
        Z = arr.conj().T @ U
        Xn = _phi_cols(Z, pstar)
        norms = _lp_cols(Xn, p)
        dead = norms <= _TINY
        if dead.any():
            Xn[:, dead] = X[:, dead]
            norms = np.where(dead, 1.0, norms)
        X = Xn / norms
    return best_val, best_vec, vals, X


def _random_cols(rng: np.random.Generator, m: int, count: int, field: str) -> np.ndarray:
    if count <= 0:
        return np.zeros((m, 0), dtype=complex if field == COMPLEX else float)
    if field == COMPLEX:
        return rng.standard_normal((m, count)) + 1j * rng.standard_normal((m, count))
    return rng.standard_normal((m, count))


def _default_starts(M: MatrixValue, restarts: int, rng: np.random.Generator) -> np.ndarray:
    m = M.m
    dtype = complex if M.is_complex else float
    fixed = [np.eye(m, dtype=dtype), np.ones((m, 1), dtype=dtype)]
    if M.is_complex:
        # one deterministic non-real constant-modulus start helps at (inf, 1)
        fixed.append(np.exp(2j * np.pi * np.arange(m) / max(m + 1, 3)).reshape(m, 1))
    n_fixed = sum(b.shape[1] for b in fixed)
    fixed.append(_random_cols(rng, m, max(restarts - n_fixed, 2), M.field))
    return np.hstack(fixed)


@dataclass(frozen=True)
class EstimatorSettings:
    """Knobs for the ascent estimator; restarts defaults to 32 + m."""

    restarts: Optional[int] = None
    max_iter: int = 200
    tol: float = 1e-10
    seed: int = 0


def norm_estimate(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    settings: Optional[EstimatorSettings] = None,
) -> NormResult:
    """Lower-bound estimate of ||A||_{p,q} by multistart duality ascent.

    Consults the closed forms first and returns those exactly when they
    apply.  Deterministic for a fixed seed.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    closed = norm_closed_form(M, pi, qi)
    if closed is not None:
        return closed
    cfg = settings or EstimatorSettings()
    restarts = cfg.restarts if cfg.restarts is not None else 32 + M.m
    rng = np.random.default_rng(cfg.seed)
    X0 = _default_starts(M, restarts, rng)
    val, vec, _, _ = _ascent(M.entries, pi, qi, X0, cfg.max_iter, cfg.tol)
    return NormResult(float(val), vec, Certainty.ESTIMATE)


def norm_closed_form(A: MatrixLike, p: IndexLike, q: IndexLike) -> Optional[NormResult]:
    """Exact ||A||_{p,q} where a closed form exists, else None.

    Covered: the zero matrix; p = 1 (largest column q-norm, witness a
    coordinate vector); q = inf (largest row p*-norm, witness the dual
    vector of that row); p = q = 2 (largest singular value, witness the top
    right singular vector).  Ties resolve to the lowest index.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    arr = M.entries
    n, m = arr.shape
    dtype = complex if M.is_complex else float
    if not arr.any():
        e0 = np.zeros(m, dtype=dtype)
        e0[0] = 1.0
        return NormResult(0.0, e0, Certainty.CLOSED_FORM)
    if pi.value == 1.0:
        colnorms = _lp_cols(arr, qi)
        j = int(colnorms.argmax())
        witness = np.zeros(m, dtype=dtype)
        witness[j] = 1.0
        return NormResult(float(colnorms[j]), witness, Certainty.CLOSED_FORM)
    if qi.is_inf:
        pstar = conjugate(pi)
        rownorms = _lp_cols(arr.T, pstar)
        i = int(rownorms.argmax())
        row = arr[i, :]
        if pi.is_inf:
            witness = np.conj(_phase(row))
            witness[np.abs(row) == 0] = 1.0
        else:
            a = np.abs(row)
            peak = a.max()
            witness = np.conj(_phase(row)) * (a / peak) ** (pstar.value - 1.0)
        witness = witness / vector_norm(witness, pi)
        return NormResult(float(rownorms[i]), witness.astype(dtype), Certainty.CLOSED_FORM)
    if pi.value == 2.0 and qi.value == 2.0:
        f = svd(M)
        return NormResult(float(f.s[0]), f.v[:, 0].copy(), Certainty.CLOSED_FORM)
    return None


def norm_infty_one_exact(
    A: MatrixLike,
    *,
    seed: int = 0,
    max_real_cols: int = 24,
    max_complex_cols: int = 6,
    phase_grid: int = 16,
) -> NormResult:
    """||A||_{inf,1} by extreme-point search over the unit inf-ball.

    Real field: the maximum sits at a sign vector, so enumerating
    {-1, +1}^m (first entry fixed to +1) is exact; refuses m beyond
    max_real_cols.  Complex field: a phase grid with ascent polish, reported
    as a lower-bound estimate; refuses m beyond max_complex_cols.
    """
    M = as_matrix(A)
    arr = M.entries
    n, m = arr.shape
    if not M.is_complex:
        if m > max_real_cols:
            raise DimensionError(f"sign enumeration capped at {max_real_cols} columns, got {m}")
        best = -math.inf
        best_x = None
        total = 1 << (m - 1)
        chunk = 1 << 14
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
            X = np.ones((m, idx.size))
            for bit in range(m - 1):
                X[bit + 1, :] = 1.0 - 2.0 * ((idx >> np.uint64(bit)) & np.uint64(1)).astype(float)
            vals = np.abs(arr @ X).sum(axis=0)
            j = int(vals.argmax())
            if vals[j] > best:
                best = float(vals[j])
                best_x = X[:, j].copy()
        return NormResult(best, best_x, Certainty.ENUMERATION)
    if m > max_complex_cols:
        raise DimensionError(f"phase grid capped at {max_complex_cols} columns, got {m}")
    g = phase_grid
    while m > 1 and g ** (m - 1) > (1 << 20):
        g -= 1
    if m == 1:
        x = np.ones(1, dtype=complex)
        return NormResult(float(np.abs(arr @ x).sum()), x, Certainty.ESTIMATE)
    phases = np.exp(2j * np.pi * np.arange(g) / g)
    grids = np.meshgrid(*([phases] * (m - 1)), indexing="ij")
    X = np.ones((m, grids[0].size), dtype=complex)
    for k, gk in enumerate(grids):
        X[k + 1, :] = gk.reshape(-1)
    vals = np.abs(arr @ X).sum(axis=0)
    order = np.argsort(-vals, kind="stable")[:8]
    val, vec, _, _ = _ascent(arr, as_index("inf"), as_index(1), X[:, order], 100, 1e-12)
    if vals[order[0]] >= val:
        val, vec = float(vals[order[0]]), X[:, order[0]].copy()
    return NormResult(float(val), vec, Certainty.ESTIMATE)


def norm_bruteforce(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    budget: int = 10_000,
    seed: int = 0,
) -> NormResult:
    """Sampled lower bound on ||A||_{p,q}, independent of the closed forms.

    Spends the budget on structured candidates (coordinate vectors, sign or
    phase patterns, a coarse lattice) plus random directions, then polishes
    the ten best by ascent.  Deterministic for a fixed seed.
    """
    if budget < 100:
        raise ValueError("budget too small to be meaningful")
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    arr = M.entries
    m = M.m
    dtype = complex if M.is_complex else float
    rng = np.random.default_rng(seed)
    blocks = [np.eye(m, dtype=dtype), np.ones((m, 1), dtype=dtype)]
    if not M.is_complex:
        k = 2
        while (k + 1) ** m <= budget // 2 and k < 9:
            k += 1
        axis = np.linspace(-1.0, 1.0, k)
        mesh = np.meshgrid(*([axis] * m), indexing="ij")
        lattice = np.stack([g.reshape(-1) for g in mesh])
        lattice = lattice[:, np.abs(lattice).sum(axis=0) > 0]
        blocks.append(lattice)
    else:
        if 4 ** m <= budget // 4:
            phases = np.array([1, -1, 1j, -1j], dtype=complex)
            mesh = np.meshgrid(*([phases] * m), indexing="ij")
            blocks.append(np.stack([g.reshape(-1) for g in mesh]))
        count = budget // 8
        moduli = rng.random((m, count))
        angles = np.exp(2j * np.pi * rng.random((m, count)))
        blocks.append(moduli * angles)
    used = sum(b.shape[1] for b in blocks)
    blocks.append(_random_cols(rng, m, budget - used, M.field))
    X = np.hstack(blocks)
    X = X[:, np.abs(X).sum(axis=0) > 0]
    X = _normalize_cols(X, pi)
    vals = _lp_cols(arr @ X, qi)
    order = np.argsort(-vals, kind="stable")[:10]
    best = float(vals[order[0]])
    best_x = X[:, order[0]].copy()
    val, vec, _, _ = _ascent(arr, pi, qi, X[:, order], 100, 1e-12)
    if val > best:
        best, best_x = float(val), vec
    return NormResult(best, best_x, Certainty.ESTIMATE)


def best_norm(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    *,
    seed: int = 0,
    settings: Optional[EstimatorSettings] = None,
    budget: Optional[int] = None,
) -> NormResult:
    """Strongest available route for ||A||_{p,q}.

    Closed form when one exists, sign enumeration for real (inf, 1) within
    the dimension cap, otherwise the ascent estimate (optionally topped up
    with a brute-force pass when a budget is given).
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    res = norm_closed_form(M, pi, qi)
    if res is not None:
        return res
    if pi.is_inf and qi.value == 1.0:
        try:
            return norm_infty_one_exact(M, seed=seed)
        except DimensionError:
            pass
    cfg = settings or EstimatorSettings(seed=seed)
    res = norm_estimate(M, pi, qi, cfg)
    if budget is not None:
        other = norm_bruteforce(M, pi, qi, budget=budget, seed=seed)
        if other.value > res.value:
            res = other
    return res


def maximizer_set_probe(
    A: MatrixLike,
    p: IndexLike,
    q: IndexLike,
    count: int = 6,
    seed: int = 0,
    rel_tol: float = 1e-6,
) -> list:
    """Up to count pairwise non-proportional near-maximizers of the ratio.

    Runs the ascent from many starts, keeps terminal iterates whose ratio is
    within rel_tol (relative) of the best seen, and deduplicates vectors that
    agree up to a scalar.  A closed-form witness, when available, seeds the
    batch so a true maximizer is always present.
    """
    M = as_matrix(A)
    pi, qi = as_index(p), as_index(q)
    rng = np.random.default_rng(seed)
    restarts = max(16, 4 * count) + M.m + 2
    X0 = _default_starts(M, restarts, rng)
    closed = norm_closed_form(M, pi, qi)
    if closed is not None and vector_norm(closed.witness, pi) > 0:
        X0 = np.hstack([closed.witness.reshape(-1, 1).astype(X0.dtype), X0])
    _, _, vals, X = _ascent(M.entries, pi, qi, X0, 300, 1e-12)
    best = float(vals.max())
    if closed is not None:
        best = max(best, closed.value)
    if best <= 0.0:
        return []
    keep: list = []
    order = np.argsort(-vals, kind="stable")
    for j in order:
        if vals[j] < best * (1.0 - rel_tol):
            break
        x = X[:, j]
        nx = float(np.linalg.norm(x))
        if nx <= _TINY:
            continue
        duplicate = False
        for y in keep:
            if abs(np.vdot(y, x)) >= (1.0 - 1e-8) * nx * float(np.linalg.norm(y)):
                duplicate = True
                break
        if not duplicate:
            keep.append(x.copy())
            if len(keep) >= count:
                break
    return keep


@dataclass(frozen=True)
class SvdFactors:
    """A = u @ diag(s) @ v* with unitary u (n x n), v (m x m), s descending."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray

    def sigma_matrix(self) -> np.ndarray:
        n = self.u.shape[0]
        m = self.v.shape[0]
        out = np.zeros((n, m), dtype=float)
        k = min(n, m)
        out[:k, :k] = np.diag(self.s[:k])
        return out

    def reconstruct(self) -> np.ndarray:
        return self.u @ self.sigma_matrix() @ self.v.conj().T


def _complete_unitary(U: np.ndarray, filled: np.ndarray) -> None:
    """Fill the unset columns of U (marked by filled) with an orthonormal
    completion drawn from coordinate directions."""
    n = U.shape[0]
    have = [j for j in range(U.shape[1]) if filled[j]]
    for j in range(U.shape[1]):
        if filled[j]:
            continue
        best_res = None
        best_norm_sq = -1.0
        for i in range(n):
            cand = np.zeros(n, dtype=U.dtype)
            cand[i] = 1.0
            for k in have:
                cand -= U[:, k] * np.vdot(U[:, k], cand)
            nrm = float(np.linalg.norm(cand))
            if nrm > best_norm_sq:
                best_norm_sq = nrm
                best_res = cand
        U[:, j] = best_res / best_norm_sq
        have.append(j)
        filled[j] = True


def svd(A: MatrixLike, *, max_sweeps: int = 30, rel_tol: float = 1e-12) -> SvdFactors:
    """Singular value decomposition by one-sided Jacobi rotations.

    Columns of A are orthogonalized by right multiplications with 2x2
    unitaries until every off-diagonal Gram entry is below rel_tol times the
    geometric mean of the corresponding column norms.  Simple, accurate at
    the sizes this package targets, and complex-capable.
    """
    M = as_matrix(A)
    arr = M.entries
    n, m = arr.shape
    if n < m:
        f = svd(M.adjoint(), max_sweeps=max_sweeps, rel_tol=rel_tol)
        return SvdFactors(u=f.v, s=f.s, v=f.u)
    B = arr.copy()
    dtype = B.dtype
    V = np.eye(m, dtype=dtype)
    for _ in range(max_sweeps):
        rotated = False
        for j in range(m - 1):
            for k in range(j + 1, m):
                bj = B[:, j]
                bk = B[:, k]
                ajj = float(np.vdot(bj, bj).real)
                akk = float(np.vdot(bk, bk).real)
                ajk = np.vdot(bj, bk)
                den = math.sqrt(ajj * akk)
                if den <= _TINY or abs(ajk) <= rel_tol * den:
                    continue
                rotated = True
                gamma = abs(ajk)
                ph = ajk / gamma
                tau = (akk - ajj) / (2.0 * gamma)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                cs = 1.0 / math.sqrt(1.0 + t * t)
                sn = t * cs
                # 2x2 unitary [[cs, sn], [-sn*conj(ph), cs*conj(ph)]] kills the
                # (j, k) Gram entry
                colj = B[:, j].copy()
                colk = B[:, k].copy()
                B[:, j] = cs * colj - sn * np.conj(ph) * colk
                B[:, k] = sn * colj + cs * np.conj(ph) * colk
                vj = V[:, j].copy()
                vk = V[:, k].copy()
                V[:, j] = cs * vj - sn * np.conj(ph) * vk
                V[:, k] = sn * vj + cs * np.conj(ph) * vk
        if not rotated:
            break
    else:
        norms_chk = np.sqrt((np.abs(B) ** 2).sum(axis=0))
        gram = np.abs(B.conj().T @ B)
        np.fill_diagonal(gram, 0.0)
        scale = np.outer(norms_chk, norms_chk)
        if np.any(gram > 1e-8 * np.maximum(scale, _TINY)):
            raise SvdConvergenceError("Jacobi sweeps did not converge")
    norms = np.sqrt((np.abs(B) ** 2).sum(axis=0))
    order = np.argsort(-norms, kind="stable")
    B = B[:, order]
    V = V[:, order]
    s = norms[order]
    cutoff = s[0] * 1e-13 if s[0] > 0 else 0.0
    U = np.zeros((n, n), dtype=dtype)
    filled = np.zeros(n, dtype=bool)
    for j in range(m):
        if s[j] > cutoff:
            U[:, j] = B[:, j] / s[j]
            filled[j] = True
    _complete_unitary(U, filled)
    return SvdFactors(u=U, s=s[: min(n, m)].astype(float), v=V)
