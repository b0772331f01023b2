"""Dense complex linear-algebra primitives and the verification kernel.

Everything downstream (dilations, representation factories, membership and
positivity tests) is built on the handful of operations here: positive
square roots, commutant computation, support functions of joint numerical
ranges, block constructions, and the order predicate for unitaries.

Matrices are plain ``numpy.ndarray`` objects with ``complex128`` entries.
All operations are pure functions; nothing here carries mutable state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotHermitianError,
    NotIsometryError,
    NotPSDError,
    ShapeMismatchError,
)

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "as_matrix",
    "dagger",
    "hermitize",
    "opnorm",
    "is_hermitian",
    "require_hermitian",
    "psd_sqrt",
    "commutant_dimension",
    "support_value",
    "kron",
    "direct_sum",
    "compress",
    "check_order",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used throughout the package.

    Attributes
    ----------
    alg_tol : float
        Tolerance for identities of exact block constructions.
    spec_tol : float
        Tolerance for identities passing through eigensolvers.
    psd_clamp : float
        Eigenvalues in ``[-psd_clamp, 0)`` are clamped to zero before
        positive square roots; anything below is an error.
    """

    alg_tol: float = 1e-10
    spec_tol: float = 1e-8
    psd_clamp: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.psd_clamp <= self.alg_tol <= self.spec_tol < 1.0):
            raise ValueError(
                "tolerances must satisfy 0 < psd_clamp <= alg_tol <= spec_tol < 1, "
                f"got psd_clamp={self.psd_clamp}, alg_tol={self.alg_tol}, "
                f"spec_tol={self.spec_tol}"
            )


DEFAULT_TOL = ToleranceConfig()


def as_matrix(a) -> np.ndarray:
    """Coerce input to a 2-D complex array with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got array of ndim {m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def hermitize(a: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the Hermitian matrices."""
    return (a + dagger(a)) / 2.0


def opnorm(a: np.ndarray) -> float:
    """Spectral (operator 2-) norm."""
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def is_hermitian(a: np.ndarray, tol: float) -> bool:
    return opnorm(a - dagger(a)) <= tol * max(1.0, opnorm(a))


def require_hermitian(a: np.ndarray, tol: float, what: str = "matrix") -> None:
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"{what} must be square, got shape {a.shape}")
    if not is_hermitian(a, tol):
        raise NotHermitianError(
            f"{what} is not Hermitian: ||A - A*|| = {opnorm(a - dagger(a)):.3e}"
        )


def psd_sqrt(h, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Positive square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-psd_clamp, 0)`` are clamped to zero; an eigenvalue
    below ``-psd_clamp`` raises :class:`NotPSDError`.
    """
    h = as_matrix(h)
    require_hermitian(h, tol.alg_tol, "psd_sqrt input")
    w, u = np.linalg.eigh(hermitize(h))
    if w.min(initial=0.0) < -tol.psd_clamp:
        raise NotPSDError(
            f"matrix has eigenvalue {w.min():.3e} below -psd_clamp={-tol.psd_clamp:.1e}"
        )
    w = np.clip(w, 0.0, None)
    return hermitize((u * np.sqrt(w)) @ dagger(u))


def commutant_dimension(
    mats, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[int, list[np.ndarray]]:
    """Dimension and orthonormal basis of the joint commutant of a set.

    Computes ``{X : XA = AX for all A}`` as the null space of the stacked
    linear maps ``X -> XA - AX``; singular values below ``spec_tol * n`` are
    treated as zero. The basis is orthonormal in the Frobenius inner
    product. Dimension 1 certifies that the set is irreducible.
    """
    mats = [as_matrix(a) for a in mats]
    if not mats:
        raise ShapeMismatchError("commutant of an empty set is undefined")
    n = mats[0].shape[0]
    for a in mats:
        if a.shape != (n, n):
            raise ShapeMismatchError(
                f"all matrices must be square of equal size, got {a.shape} vs ({n}, {n})"
            )
    eye = np.eye(n)
    # Row-major vec: vec(XA) = (I (x) A^T) vec(X), vec(AX) = (A (x) I) vec(X).
    blocks = [np.kron(eye, a.T) - np.kron(a, eye) for a in mats]
    stacked = np.vstack(blocks)
    _, s, vh = np.linalg.svd(stacked)
    cutoff = tol.spec_tol * n
    null_rows = [vh[i] for i in range(vh.shape[0]) if i >= len(s) or s[i] <= cutoff]
    basis = [row.reshape(n, n) for row in null_rows]
    return len(basis), basis


def support_value(mats, direction, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Support function of the joint numerical range in a real direction.

    Returns ``lambda_max(sum_j direction_j a_j)`` for a tuple of Hermitian
    matrices of equal size.
    """
    mats = [as_matrix(a) for a in mats]
    direction = np.asarray(direction, dtype=float)
    if not mats:
        raise ShapeMismatchError("support_value of an empty tuple is undefined")
    if direction.shape != (len(mats),):
        raise ShapeMismatchError(
            f"direction has length {direction.shape}, expected ({len(mats)},)"
        )
    n = mats[0].shape[0]
    acc = np.zeros((n, n), dtype=complex)
    for c, a in zip(direction, mats):
        if a.shape != (n, n):
            raise ShapeMismatchError("tuple entries must all have equal square shape")
        require_hermitian(a, tol.alg_tol, "support_value tuple entry")
        acc += c * a
    return float(np.linalg.eigvalsh(hermitize(acc)).max())


def kron(a, b) -> np.ndarray:
    """Kronecker product."""
    return np.kron(as_matrix(a), as_matrix(b))


def direct_sum(a, b) -> np.ndarray:
    """Block-diagonal sum ``a (+) b``."""
    a, b = as_matrix(a), as_matrix(b)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=complex)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def compress(a, z, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Corner compression ``Z* A Z`` through an isometry ``Z``."""
    a, z = as_matrix(a), as_matrix(z)
    if a.shape[0] != a.shape[1] or z.shape[0] != a.shape[0]:
        raise ShapeMismatchError(
            f"cannot compress {a.shape} through isometry of shape {z.shape}"
        )
    gram = dagger(z) @ z
    if opnorm(gram - np.eye(z.shape[1])) > tol.alg_tol:
        raise NotIsometryError(
            f"Z*Z deviates from identity by {opnorm(gram - np.eye(z.shape[1])):.3e}"
        )
    return dagger(z) @ a @ z


def check_order(u, k: int, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff ``u`` is unitary and ``u**k`` is the identity, within tolerance."""
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise ShapeMismatchError("check_order requires a square matrix")
    n = u.shape[0]
    if opnorm(dagger(u) @ u - np.eye(n)) > tol.spec_tol:
        return False
    return opnorm(np.linalg.matrix_power(u, k) - np.eye(n)) <= tol.spec_tol * k
