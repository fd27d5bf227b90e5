"""Dense quaternion matrices via the complex-adjoint embedding.

Each entry ``q = a + b*j`` (``a``, ``b`` complex) embeds as the 2x2 complex
block ``[[a, b], [-conj(b), conj(a)]]``; a quaternion matrix therefore embeds
as an interleaved complex matrix of twice the size.  The embedding is an
algebra homomorphism that also respects adjoints, so inversion, rank, right
spectra and Stein equations all delegate to standard dense numerics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import NotControllable, NotPSD, NotStable, NumericalError
from .quat import ConjugacyClass, Quaternion

__all__ = [
    "QMatrix",
    "ControllablePair",
    "embed",
    "unembed",
    "right_spectrum",
    "spectral_radius",
    "is_stable",
    "is_unitary",
    "stein_solve",
    "controllability_matrix",
    "companion_matrix",
    "shift_matrix",
    "rank",
    "cond",
    "solve",
    "inv",
    "herm_sqrt",
    "DEFAULT_STABILITY_MARGIN",
    "RANK_REL_TOL",
]

# Constructors reject spectra closer than this to the unit sphere.
DEFAULT_STABILITY_MARGIN = 1e-8

# Singular values below RANK_REL_TOL * sigma_max count as zero.
RANK_REL_TOL = 1e-10


class QMatrix:
    """Rectangular quaternion matrix stored as a complex pair ``A = Xa + Xb*j``."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: np.ndarray, b: np.ndarray):
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if a.ndim != 2 or a.shape != b.shape:
            raise ValueError("component arrays must be 2-d with equal shapes")
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence[Quaternion]) -> "QMatrix":
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        a = np.empty((rows, cols), dtype=complex)
        b = np.empty((rows, cols), dtype=complex)
        for idx, q in enumerate(entries):
            i, jj = divmod(idx, cols)
            a[i, jj], b[i, jj] = q.complex_pair()
        return cls(a, b)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Quaternion]]) -> "QMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = [q for row in rows for q in row]
        return cls.from_entries(r, c, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(np.zeros((rows, cols), dtype=complex), np.zeros((rows, cols), dtype=complex))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex))

    @classmethod
    def from_scalar(cls, q: Quaternion) -> "QMatrix":
        return cls.from_entries(1, 1, [q])

    @classmethod
    def column(cls, entries: Sequence[Quaternion]) -> "QMatrix":
        return cls.from_entries(len(entries), 1, list(entries))

    @classmethod
    def row(cls, entries: Sequence[Quaternion]) -> "QMatrix":
        return cls.from_entries(1, len(entries), list(entries))

    @classmethod
    def basis_column(cls, n: int, k: int) -> "QMatrix":
        a = np.zeros((n, 1), dtype=complex)
        a[k, 0] = 1.0
        return cls(a, np.zeros((n, 1), dtype=complex))

    # -- shape and access ---------------------------------------------------

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, jj: int) -> Quaternion:
        return Quaternion.from_complex_pair(self._a[i, jj], self._b[i, jj])

    def entries(self) -> list[Quaternion]:
        return [Quaternion.from_complex_pair(a, b)
                for a, b in zip(self._a.ravel(), self._b.ravel())]

    def complex_pair(self) -> tuple[np.ndarray, np.ndarray]:
        return self._a.copy(), self._b.copy()

    def scalar(self) -> Quaternion:
        if self.shape != (1, 1):
            raise ValueError(f"not a 1x1 matrix: shape {self.shape}")
        return self.entry(0, 0)

    def submatrix(self, rows: slice, cols: slice) -> "QMatrix":
        return QMatrix(self._a[rows, cols], self._b[rows, cols])

    def __repr__(self) -> str:
        return f"QMatrix(shape={self.shape})"

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self._a + other._a, self._b + other._b)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self._a - other._a, self._b - other._b)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self._a, -self._b)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        a = self._a @ other._a - self._b @ np.conj(other._b)
        b = self._a @ other._b + self._b @ np.conj(other._a)
        return QMatrix(a, b)

    def adjoint(self) -> "QMatrix":
        """Quaternionic conjugate transpose."""
        return QMatrix(np.conj(self._a).T, -self._b.T)

    def lmul(self, q: Quaternion) -> "QMatrix":
        qa, qb = q.complex_pair()
        return QMatrix(qa * self._a - qb * np.conj(self._b),
                       qa * self._b + qb * np.conj(self._a))

    def rmul(self, q: Quaternion) -> "QMatrix":
        qa, qb = q.complex_pair()
        return QMatrix(self._a * qa - self._b * np.conj(qb),
                       self._a * qb + self._b * np.conj(qa))

    def scale(self, t: float) -> "QMatrix":
        return QMatrix(t * self._a, t * self._b)

    def norm_max(self) -> float:
        if self._a.size == 0:
            return 0.0
        return float(np.max(np.sqrt(np.abs(self._a) ** 2 + np.abs(self._b) ** 2)))

    def norm_fro(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self._a) ** 2 + np.abs(self._b) ** 2)))

    def isclose(self, other: "QMatrix", tol: float = 1e-12) -> bool:
        return self.shape == other.shape and (self - other).norm_max() <= tol

    # -- block assembly -------------------------------------------------------

    @staticmethod
    def hstack(blocks: Sequence["QMatrix"]) -> "QMatrix":
        return QMatrix(np.hstack([m._a for m in blocks]), np.hstack([m._b for m in blocks]))

    @staticmethod
    def vstack(blocks: Sequence["QMatrix"]) -> "QMatrix":
        return QMatrix(np.vstack([m._a for m in blocks]), np.vstack([m._b for m in blocks]))

    @staticmethod
    def block(grid: Sequence[Sequence["QMatrix"]]) -> "QMatrix":
        return QMatrix.vstack([QMatrix.hstack(row) for row in grid])

    @staticmethod
    def block_diag(blocks: Sequence["QMatrix"]) -> "QMatrix":
        a = scipy.linalg.block_diag(*[m._a for m in blocks])
        b = scipy.linalg.block_diag(*[m._b for m in blocks])
        return QMatrix(np.atleast_2d(a).astype(complex), np.atleast_2d(b).astype(complex))


def embed(A: QMatrix) -> np.ndarray:
    """Complex-adjoint embedding: per-entry 2x2 blocks, an algebra homomorphism."""
    r, c = A.shape
    a, b = A._a, A._b
    out = np.empty((2 * r, 2 * c), dtype=complex)
    out[0::2, 0::2] = a
    out[0::2, 1::2] = b
    out[1::2, 0::2] = -np.conj(b)
    out[1::2, 1::2] = np.conj(a)
    return out


def unembed(E: np.ndarray) -> QMatrix:
    """Inverse of :func:`embed`; averages the redundant blocks to restore structure."""
    E = np.asarray(E, dtype=complex)
    if E.ndim != 2 or E.shape[0] % 2 or E.shape[1] % 2:
        raise ValueError("embedded matrix must have even dimensions")
    a = 0.5 * (E[0::2, 0::2] + np.conj(E[1::2, 1::2]))
    b = 0.5 * (E[0::2, 1::2] - np.conj(E[1::2, 0::2]))
    return QMatrix(a, b)


def right_spectrum(A: QMatrix, merge_tol: float = 1e-6) -> list[ConjugacyClass]:
    """Distinct conjugacy classes of right eigenvalues, via embedding eigenvalues.

    The embedding's eigenvalues occur in complex-conjugate pairs; each pair
    contributes the class of its real part and imaginary modulus, and nearby
    classes are merged.  The default tolerance absorbs the eps**(1/m) spread
    of defective eigenvalues (Jordan blocks of size m in the embedding).
    """
    if not A.is_square():
        raise ValueError("right spectrum requires a square matrix")
    if A.rows == 0:
        return []
    vals = _eigvals(A)
    points = sorted((float(v.real), abs(float(v.imag))) for v in vals)
    scale = max(1.0, max(abs(v) for v in vals))
    tol = merge_tol * scale
    clusters: list[list[tuple[float, float]]] = []
    for re, im in points:
        for members in clusters:
            cre, cim = members[0]
            if abs(re - cre) <= tol and abs(im - cim) <= tol:
                members.append((re, im))
                break
        else:
            clusters.append([(re, im)])
    centers = sorted(
        (sum(p[0] for p in m) / len(m), sum(p[1] for p in m) / len(m)) for m in clusters)
    return [ConjugacyClass(re, im) for re, im in centers]


def _eigvals(A: QMatrix) -> np.ndarray:
    try:
        return np.linalg.eigvals(embed(A))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc


def spectral_radius(A: QMatrix) -> float:
    """Largest right-eigenvalue modulus, from the raw embedding eigenvalues."""
    if A.rows == 0:
        return 0.0
    return float(np.max(np.abs(_eigvals(A))))


def is_stable(A: QMatrix, margin: float = DEFAULT_STABILITY_MARGIN) -> bool:
    """True when every right eigenvalue has modulus below ``1 - margin``."""
    return spectral_radius(A) < 1.0 - margin


def is_unitary(U: QMatrix, tol: float = 1e-11) -> bool:
    if not U.is_square():
        return False
    n = U.rows
    eye = QMatrix.identity(n)
    return ((U @ U.adjoint() - eye).norm_max() <= tol
            and (U.adjoint() @ U - eye).norm_max() <= tol)


def stein_solve(A: QMatrix, v: QMatrix) -> QMatrix:
    """Unique solution of ``P - A P A* = v v*`` for a stable matrix.

    Solved as a dense linear system on the complex embedding (vectorized),
    so the accuracy does not degrade with spectral radius; the geometric
    series for P is reserved for test oracles.
    """
    n = A.rows
    if not A.is_square() or v.shape != (n, 1):
        raise ValueError(f"incompatible shapes {A.shape} and {v.shape}")
    if n == 0:
        return QMatrix.zeros(0, 0)
    if spectral_radius(A) >= 1.0 - 1e-10:
        raise NotStable("Stein equation requires the right spectrum inside the unit ball")
    q = v @ v.adjoint()
    try:
        sol = scipy.linalg.solve_discrete_lyapunov(embed(A), embed(q))
    except Exception as exc:
        raise NumericalError(f"Stein solve failed: {exc}") from exc
    P = unembed(sol)
    P = P + P.adjoint()
    P = P.scale(0.5)
    residual = (P - A @ P @ A.adjoint() - q).norm_max()
    if residual > 1e-12 * max(1.0, P.norm_max()):
        raise NumericalError(f"Stein residual {residual:.3e} above tolerance")
    return P


def controllability_matrix(A: QMatrix, v: QMatrix) -> QMatrix:
    """Columns ``v, A v, ..., A^(n-1) v``."""
    n = A.rows
    cols = []
    cur = v
    for _ in range(n):
        cols.append(cur)
        cur = A @ cur
    if not cols:
        return QMatrix.zeros(0, 0)
    return QMatrix.hstack(cols)


def companion_matrix(p) -> QMatrix:
    """Companion matrix of a monic polynomial: subdiagonal ones, last column of negated coefficients."""
    if not p.is_monic():
        raise ValueError("companion matrix requires a monic polynomial")
    n = p.degree
    if n < 1:
        raise ValueError("companion matrix requires degree >= 1")
    entries = []
    for i in range(n):
        for jj in range(n):
            if jj == n - 1:
                entries.append(-p.coeff(i))
            elif jj == i - 1:
                entries.append(Quaternion.from_real(1.0))
            else:
                entries.append(Quaternion())
    return QMatrix.from_entries(n, n, entries)


def shift_matrix(n: int) -> QMatrix:
    """Nilpotent down-shift with ones on the subdiagonal."""
    a = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        a[i, i - 1] = 1.0
    return QMatrix(a, np.zeros((n, n), dtype=complex))


def rank(A: QMatrix, rel_tol: float = RANK_REL_TOL) -> int:
    """Quaternionic rank: half the embedding rank (singular values pair up)."""
    if A.rows == 0 or A.cols == 0:
        return 0
    sv = np.linalg.svd(embed(A), compute_uv=False)
    if sv[0] == 0.0:
        return 0
    count = int(np.sum(sv > rel_tol * sv[0]))
    return int(round(count / 2))


def cond(A: QMatrix) -> float:
    sv = np.linalg.svd(embed(A), compute_uv=False)
    if sv[-1] == 0.0:
        return float("inf")
    return float(sv[0] / sv[-1])


def solve(A: QMatrix, B: QMatrix) -> QMatrix:
    """Solve ``A X = B`` through the embedding."""
    try:
        X = np.linalg.solve(embed(A), embed(B))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"linear solve failed: {exc}") from exc
    return unembed(X)


def inv(A: QMatrix) -> QMatrix:
    return solve(A, QMatrix.identity(A.rows))


def herm_sqrt(P: QMatrix, psd_tol: float = 1e-9) -> tuple[QMatrix, QMatrix]:
    """Square root and inverse square root of a Hermitian positive definite matrix.

    Uses the Hermitian eigendecomposition of the embedding; eigenvalues below
    ``-psd_tol`` raise, smaller negatives are clipped to zero.
    """
    E = embed(P)
    E = 0.5 * (E + E.conj().T)
    vals, vecs = np.linalg.eigh(E)
    scale = max(1.0, float(np.max(np.abs(vals))) if vals.size else 1.0)
    if vals.size and float(np.min(vals)) < -psd_tol * scale:
        raise NotPSD(f"matrix has eigenvalue {float(np.min(vals)):.3e}")
    clipped = np.clip(vals, 0.0, None)
    root = (vecs * np.sqrt(clipped)) @ vecs.conj().T
    with np.errstate(divide="ignore"):
        inv_diag = np.where(clipped > 0.0, 1.0 / np.sqrt(clipped), 0.0)
    inv_root = (vecs * inv_diag) @ vecs.conj().T
    return unembed(root), unembed(inv_root)


@dataclass(frozen=True)
class ControllablePair:
    """State matrix and cyclic vector with full-rank controllability matrix."""

    A: QMatrix
    v: QMatrix

    def __post_init__(self):
        n = self.A.rows
        if not self.A.is_square() or self.v.shape != (n, 1):
            raise ValueError(f"incompatible pair shapes {self.A.shape}, {self.v.shape}")
        if n and rank(controllability_matrix(self.A, self.v)) != n:
            raise NotControllable("controllability matrix is rank deficient")

    @property
    def dim(self) -> int:
        return self.A.rows
