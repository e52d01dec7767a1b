"""Constructors for matrices that attain the norm-comparison bound.

Families: SVD-built matrices whose top singular vectors sit in prescribed
K-classes, Hadamard (Sylvester) and discrete-Fourier matrices, rank-one
tensor products, and single-entry matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import IndexLike, as_index, sign_between, KClassId
from .induced_norms import COMPLEX, REAL, MatrixValue, as_matrix

__all__ = [
    "unitary_with_first_column",
    "gen_svd_extremal",
    "gen_hadamard",
    "gen_dft",
    "gen_tensor_product",
    "gen_single_entry",
    "GeneratorSpec",
    "build_generator",
    "kclass_unit_vector",
    "extremal_pair_classes",
]


def unitary_with_first_column(c) -> np.ndarray:
    """A unitary matrix whose first column is the given unit vector.

    Householder construction: reflect c onto a phase multiple of e1, then
    undo the phase on the first column.  Exact for c = e1.  Rejects vectors
    that are zero or not unit-length (within 1e-12).
    """
    vec = np.asarray(c).reshape(-1)
    nrm = float(np.linalg.norm(vec))
    if nrm == 0.0:
        raise ValueError("zero vector has no unitary completion")
    if abs(nrm - 1.0) > 1e-12:
        raise ValueError(f"first column must be unit length, got |c| = {nrm!r}")
    d = vec.shape[0]
    dtype = complex if np.iscomplexobj(vec) else float
    vec = vec.astype(dtype)
    c0 = vec[0]
    if abs(c0) > 0:
        alpha = -c0 / abs(c0)
    else:
        alpha = dtype(1.0) if dtype is float else 1.0 + 0.0j
    e1 = np.zeros(d, dtype=dtype)
    e1[0] = 1.0
    w = vec - alpha * e1
    wn2 = float(np.vdot(w, w).real)
    if wn2 <= 1e-30:
        H = np.eye(d, dtype=dtype)
    else:
        H = np.eye(d, dtype=dtype) - 2.0 * np.outer(w, w.conj()) / wn2
    U = H.copy()
    U[:, 0] = H[:, 0] * alpha
    return U


def kclass_unit_vector(
    k: KClassId, dim: int, rng: np.random.Generator, field_tag: str
) -> np.ndarray:
    """A deterministic unit-l2 representative of the K-class.

    K1: constant modulus 1/sqrt(dim) with phases (or signs) drawn from rng;
    K-1 (at most one nonzero): the first coordinate vector; K0: a random
    unit vector.
    """
    if k is KClassId.KMINUS1:
        e = np.zeros(dim, dtype=complex if field_tag == COMPLEX else float)
        e[0] = 1.0
        return e
    if k is KClassId.K1:
        if field_tag == COMPLEX:
            phases = np.exp(2j * np.pi * rng.random(dim))
        else:
            phases = np.where(rng.random(dim) < 0.5, -1.0, 1.0)
        return phases / np.sqrt(dim)
    if field_tag == COMPLEX:
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    else:
        v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def extremal_pair_classes(r: IndexLike, s: IndexLike) -> tuple:
    """K-classes required of the top singular vectors for equality at (r,s)
    against the (2,2) anchor: (class of u1, class of v1)."""
    ri, si = as_index(r), as_index(s)
    ku = {1: KClassId.K1, 0: KClassId.K0, -1: KClassId.KMINUS1}[
        sign_between(as_index(2), si)
    ]
    kv = {1: KClassId.K1, 0: KClassId.K0, -1: KClassId.KMINUS1}[
        -sign_between(as_index(2), ri)
    ]
    return ku, kv


def _random_unitary(dim: int, rng: np.random.Generator, field_tag: str) -> np.ndarray:
    if dim <= 0:
        return np.zeros((0, 0), dtype=complex if field_tag == COMPLEX else float)
    if field_tag == COMPLEX:
        Z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    else:
        Z = rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R).copy()
    ph = np.where(np.abs(ph) > 0, ph / np.abs(ph), 1.0)
    return Q * ph.conj()


def _completed_unitary(
    first: np.ndarray, rng: np.random.Generator, field_tag: str
) -> np.ndarray:
    dim = first.shape[0]
    U = unitary_with_first_column(first)
    if dim > 1:
        mix = _random_unitary(dim - 1, rng, field_tag)
        U = U.copy()
        U[:, 1:] = U[:, 1:] @ mix
    return U


def gen_svd_extremal(
    m: int,
    n: int,
    r: IndexLike,
    s: IndexLike,
    sigma: Sequence[float],
    seed: int = 0,
    field_tag: str = COMPLEX,
) -> MatrixValue:
    """An n x m matrix attaining ||A||_{r,s} = factor * ||A||_{2,2}.

    Built as U diag(sigma) V* where the first columns of U and V are placed
    in the K-classes that characterize equality at (r,s) against the (2,2)
    anchor.  sigma must be nonincreasing from a maximal first value; the
    remaining columns of U and V are completed with a seeded random unitary
    mix, so results are reproducible per seed.
    """
    sig = [float(x) for x in sigma]
    if not sig:
        raise ValueError("sigma must be nonempty")
    if any(x < 0 for x in sig):
        raise ValueError("singular values must be nonnegative")
    if any(x > sig[0] for x in sig[1:]):
        raise ValueError("sigma must start with its maximal value")
    if any(sig[i] < sig[i + 1] for i in range(len(sig) - 1)):
        raise ValueError("sigma must be nonincreasing")
    if len(sig) > min(m, n):
        raise ValueError("more singular values than min(m, n)")
    ku, kv = extremal_pair_classes(r, s)
    rng = np.random.default_rng(seed)
    u1 = kclass_unit_vector(ku, n, rng, field_tag)
    v1 = kclass_unit_vector(kv, m, rng, field_tag)
    U = _completed_unitary(u1, rng, field_tag)
    V = _completed_unitary(v1, rng, field_tag)
    S = np.zeros((n, m), dtype=float)
    for i, x in enumerate(sig):
        S[i, i] = x
    A = U @ S @ V.conj().T
    return MatrixValue(A, field_tag)


def gen_hadamard(k: int) -> MatrixValue:
    """Sylvester Hadamard matrix of a power-of-two order: entries are all
    +-1 and the columns are mutually orthogonal (H*H = kI)."""
    if k < 1 or (k & (k - 1)) != 0:
        raise ValueError(f"order must be a power of two, got {k}")
    H = np.array([[1.0]])
    while H.shape[0] < k:
        H = np.block([[H, H], [H, -H]])
    return MatrixValue(H, REAL)


def gen_dft(k: int) -> MatrixValue:
    """Discrete Fourier matrix: entries omega^(j*l) with omega = e^{-2 pi i / k};
    all entry moduli 1 and A*A = kI."""
    if k < 1:
        raise ValueError("order must be positive")
    j = np.arange(k)
    W = np.exp(-2j * np.pi * np.outer(j, j) / k)
    return MatrixValue(W, COMPLEX)


def gen_tensor_product(c, b) -> MatrixValue:
    """Rank-one matrix with entries A_ij = c_i * b_j.

    Its induced norm factorizes: ||A||_{r,s} = ||b||_{r*} * ||c||_s.
    """
    cv = np.asarray(c).reshape(-1)
    bv = np.asarray(b).reshape(-1)
    A = np.outer(cv, bv)
    tag = COMPLEX if np.iscomplexobj(A) else REAL
    return MatrixValue(A, tag)


def gen_single_entry(m: int, n: int, i: int, j: int, rho: float) -> MatrixValue:
    """n x m zero matrix with a single entry rho at 0-based row i, column j.

    Such a matrix has ||A||_{r,s} = rho for every exponent pair.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    if not (0 <= i < n and 0 <= j < m):
        raise ValueError(f"index ({i}, {j}) out of range for a {n}x{m} matrix")
    A = np.zeros((n, m))
    A[i, j] = float(rho)
    return MatrixValue(A, REAL)


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative request for one generated matrix (CLI-facing)."""

    kind: str  # hadamard | dft | tensor | single | svd
    m: int = 2
    n: int = 2
    r: Optional[str] = None
    s: Optional[str] = None
    sigma: Sequence[float] = field(default_factory=lambda: (2.0, 1.0))
    seed: int = 0
    field_tag: str = COMPLEX
    b: Optional[Sequence[complex]] = None
    c: Optional[Sequence[complex]] = None
    i: int = 0
    j: int = 0
    rho: float = 1.0


def build_generator(spec: GeneratorSpec) -> MatrixValue:
    """Materialize the matrix a GeneratorSpec describes."""
    if spec.kind == "hadamard":
        return gen_hadamard(spec.m)
    if spec.kind == "dft":
        return gen_dft(spec.m)
    if spec.kind == "tensor":
        if spec.b is None or spec.c is None:
            raise ValueError("tensor generation requires both vectors b and c")
        return gen_tensor_product(spec.c, spec.b)
    if spec.kind == "single":
        return gen_single_entry(spec.m, spec.n, spec.i, spec.j, spec.rho)
    if spec.kind == "svd":
        if spec.r is None or spec.s is None:
            raise ValueError("svd generation requires the extremal pair (r, s)")
        truncated = list(spec.sigma)[: min(spec.m, spec.n)]
        return gen_svd_extremal(
            spec.m, spec.n, spec.r, spec.s, truncated, spec.seed, spec.field_tag
        )
    raise ValueError(f"unknown generator kind {spec.kind!r}")
