"""
Primitives over complex Hermitian matrices.

All logarithms are base 2. Any matrix that is mathematically Hermitian is
symmetrized as ``(A + A^H) / 2`` before it is factored. Inverses are never
formed explicitly: they are realized as linear solves on assembled systems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NumericError",
    "DomainError",
    "IllConditionedError",
    "HERMITIAN_TOL",
    "PSD_TOL",
    "COND_THRESHOLD",
    "CrossCovariance",
    "as_hermitian",
    "is_psd",
    "logdet2",
    "logdet2_gram",
    "loewner_leq",
    "block_inverse_apply",
    "sample_cross_covariance",
    "L_operator",
    "l_operator_factored",
    "psd_sqrt",
]

HERMITIAN_TOL = 1e-8
PSD_TOL = 1e-9
COND_THRESHOLD = 1e12
RIDGE_SCALE = 1e-10


class NumericError(ArithmeticError):
    """Base class for numerical failures."""


class DomainError(NumericError):
    """Input outside the domain of a function (e.g. logdet of a non-PD matrix)."""


class IllConditionedError(NumericError):
    """A linear system was too ill-conditioned to solve reliably."""

    def __init__(self, message: str, condition: float):
        self.condition = float(condition)
        super().__init__(f"{message} (condition estimate {self.condition:.3e})")


def as_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(A + A^H)/2`` after checking ``A`` is Hermitian within ``tol``.

    The tolerance is relative to the largest entry magnitude.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    asym = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if asym > tol * scale:
        raise ValueError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
    return (a + a.conj().T) / 2


def is_psd(a, tol: float = PSD_TOL) -> bool:
    """True iff ``lambda_min(a) >= -tol * max(1, lambda_max(a))``."""
    a = as_hermitian(a)
    if a.size == 0:
        return True
    w = np.linalg.eigvalsh(a)
    return bool(w[0] >= -tol * max(1.0, float(w[-1])))


def loewner_leq(a, b, tol: float = PSD_TOL) -> bool:
    """Loewner order test ``a <= b``, i.e. ``b - a`` is PSD."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return is_psd(b - a, tol)


def logdet2(a) -> float:
    """Base-2 log-determinant of a Hermitian positive-definite matrix.

    Uses a Cholesky factorization; raises :class:`DomainError` if ``a`` is
    not positive definite.
    """
    a = as_hermitian(a)
    if a.size == 0:
        return 0.0
    try:
        c = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise DomainError("logdet2: matrix is not positive definite") from exc
    d = np.real(np.diag(c))
    if np.any(d <= 0) or not np.all(np.isfinite(d)):
        raise DomainError("logdet2: matrix is not positive definite")
    return float(2.0 * np.sum(np.log2(d)))


def logdet2_gram(g) -> float:
    """``log2 det(I + G G^H)`` from the singular values of ``G``.

    Equals ``sum log2(1 + sigma^2)``. Adding the identity is never done in
    floating point, so tiny eigenvalues of ``G G^H`` are not lost.
    """
    g = np.asarray(g, dtype=complex)
    if g.size == 0:
        return 0.0
    s = np.linalg.svd(g, compute_uv=False)
    return float(np.sum(np.log1p(s * s)) / np.log(2.0))


def block_inverse_apply(a, b, c, d, rhs, threshold: float = COND_THRESHOLD):
    """Solve ``[[A, B], [C, D]] x = rhs`` with one linear solve.

    If the condition number exceeds ``threshold`` a ridge
    ``eps * I`` with ``eps = 1e-10 * trace / n`` is added and the estimate is
    recomputed; if it is still above the threshold
    :class:`IllConditionedError` is raised.
    """
    a, b, c, d = (np.atleast_2d(np.asarray(x, dtype=complex))
                  for x in (a, b, c, d))
    if (a.shape[0] != a.shape[1] or d.shape[0] != d.shape[1]
            or b.shape != (a.shape[0], d.shape[0])
            or c.shape != (d.shape[0], a.shape[0])):
        raise ValueError("block dimensions are not conformal: "
                         f"A{a.shape} B{b.shape} C{c.shape} D{d.shape}")
    m = np.block([[a, b], [c, d]])
    n = m.shape[0]
    rhs = np.asarray(rhs, dtype=complex)
    vector = rhs.ndim == 1
    r = rhs.reshape(n, -1)
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > threshold:
        eps = RIDGE_SCALE * abs(np.trace(m).real) / n
        m = m + eps * np.eye(n)
        cond = np.linalg.cond(m)
        if not np.isfinite(cond) or cond > threshold:
            raise IllConditionedError("block system is ill-conditioned", cond)
    x = np.linalg.solve(m, r)
    return x.ravel() if vector else x


@dataclass(frozen=True, eq=False)
class CrossCovariance:
    """The ``M1 x M2`` cross-covariance ``Q = E[X1 X2^H]`` with ``Q Q^H <= I``."""

    q: np.ndarray

    def __post_init__(self):
        q = np.array(self.q, dtype=complex, copy=True)
        if q.ndim != 2:
            raise ValueError(f"Q must be a matrix, got shape {q.shape}")
        if q.size:
            smax = float(np.linalg.svd(q, compute_uv=False)[0])
            if smax > 1.0 + PSD_TOL:
                raise ValueError(
                    f"Q violates Q Q^H <= I (largest singular value {smax!r})")
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    @property
    def shape(self):
        return self.q.shape

    @classmethod
    def zero(cls, m1: int, m2: int) -> "CrossCovariance":
        return cls(np.zeros((m1, m2), dtype=complex))


def sample_cross_covariance(m1: int, m2: int, seed: int,
                            style: str = "interior") -> CrossCovariance:
    """Draw a feasible cross-covariance.

    A CN(0, 1) matrix is factored by SVD and its singular values replaced:
    all ones for ``"boundary"``, i.i.d. uniform on [0, 1] for
    ``"interior"``. ``"zero"`` returns the zero matrix.
    """
    if m1 < 1 or m2 < 1:
        raise ValueError("m1 and m2 must be >= 1")
    if style == "zero":
        return CrossCovariance.zero(m1, m2)
    if style not in ("boundary", "interior"):
        raise ValueError(f"unknown style {style!r}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((m1, m2))
         + 1j * rng.standard_normal((m1, m2))) / np.sqrt(2.0)
    u, _, vh = np.linalg.svd(g, full_matrices=False)
    k = min(m1, m2)
    s = np.ones(k) if style == "boundary" else rng.uniform(0.0, 1.0, k)
    q = (u * s) @ vh
    # roundoff can push the top singular value a hair above one
    top = np.linalg.svd(q, compute_uv=False)[0]
    if top > 1.0:
        q = q / top
    return CrossCovariance(q)


def L_operator(k, s) -> np.ndarray:
    """``L(K, S) = K - K S (I + S^H K S)^{-1} S^H K``, symmetrized.

    ``K`` is ``M x M`` PSD and ``S`` is ``M x N``. The inverse is applied as a
    linear solve.
    """
    k = as_hermitian(k)
    s = np.asarray(s, dtype=complex)
    if s.ndim != 2 or s.shape[0] != k.shape[0]:
        raise ValueError(f"dimension mismatch: K{k.shape} S{s.shape}")
    ks = k @ s
    inner = np.eye(s.shape[1]) + s.conj().T @ ks
    out = k - ks @ np.linalg.solve(inner, ks.conj().T)
    return (out + out.conj().T) / 2


def psd_sqrt(k) -> np.ndarray:
    """Hermitian square root of a PSD matrix; negative jitter is clipped."""
    w, v = np.linalg.eigh(as_hermitian(k))
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def l_operator_factored(k_half, s) -> np.ndarray:
    """``L(K, S)`` from a square root ``K = K_h K_h^H``.

    Evaluates ``K_h (I + K_h^H S S^H K_h)^{-1} K_h^H``, which is the same
    matrix by the push-through identity but involves no subtraction, so it
    stays PSD to working precision when ``S`` is large.
    """
    k_half = np.asarray(k_half, dtype=complex)
    s = np.asarray(s, dtype=complex)
    a = s.conj().T @ k_half
    _, sig, vh = np.linalg.svd(a, full_matrices=True)
    full = np.zeros(vh.shape[0])
    full[:sig.size] = sig
    w = k_half @ vh.conj().T / np.sqrt(1.0 + full * full)
    out = w @ w.conj().T
    return (out + out.conj().T) / 2
