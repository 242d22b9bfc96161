"""Dense complex linear algebra for multi-factor quantum systems.

Matrices are plain ``numpy.ndarray`` objects in row-major order with
``complex128`` entries.  Composite systems are described by a :class:`DimSig`,
whose first label names the most significant tensor factor: a matrix with
signature ``DimSig((2, 3), ("R", "A"))`` acts on ``kron(C^2, C^3)`` and the
flat index of basis vector ``|r, a>`` is ``r * 3 + a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-9
DENSITY_TOL = 1e-9

__all__ = [
    "DENSITY_TOL",
    "HERMITICITY_TOL",
    "UNITARITY_TOL",
    "DimSig",
    "ValidationError",
    "eig_hermitian",
    "expm_skew",
    "kron",
    "partial_trace",
    "trace_distance",
    "validate_density",
]


class ValidationError(ValueError):
    """A matrix failed a structural check (hermiticity, trace, positivity, ...)."""


@dataclass(frozen=True)
class DimSig:
    """Ordered dimensions and labels of the tensor factors of a composite system."""

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.dims) != len(self.labels):
            raise ValidationError(
                f"signature has {len(self.dims)} dims but {len(self.labels)} labels"
            )
        if not self.dims:
            raise ValidationError("signature needs at least one factor")
        if any(d < 1 for d in self.dims):
            raise ValidationError(f"factor dimensions must be positive, got {self.dims}")
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError(f"duplicate labels in {self.labels}")

    @property
    def side(self) -> int:
        """Total dimension (product of the factor dimensions)."""
        return prod(self.dims)

    def axis(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no factor labeled {label!r} in {self.labels}") from None

    def dim(self, label: str) -> int:
        return self.dims[self.axis(label)]

    def subset(self, keep: Iterable[str]) -> "DimSig":
        """Signature of the factors in ``keep``, in the order they appear here."""
        keep = set(keep)
        missing = keep - set(self.labels)
        if missing:
            raise KeyError(f"unknown labels {sorted(missing)}; have {self.labels}")
        pairs = [(d, x) for d, x in zip(self.dims, self.labels) if x in keep]
        return DimSig(tuple(d for d, _ in pairs), tuple(x for _, x in pairs))


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    return a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with the left argument as the most significant factor."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(m: np.ndarray, sig: DimSig, keep: Iterable[str]) -> np.ndarray:
    """Trace out every factor of ``m`` not named in ``keep``.

    Parameters
    ----------
    m : ndarray
        Square matrix whose side equals ``sig.side``.
    sig : DimSig
        Factor structure of ``m``.
    keep : iterable of str
        Labels of the factors to retain.  The result is ordered as these
        factors appear in ``sig`` (the induced order), irrespective of the
        order of ``keep``.

    Returns
    -------
    ndarray
        The reduced matrix on the kept factors.
    """
    a = _as_matrix(m)
    if a.shape[0] != sig.side:
        raise ValidationError(
            f"matrix side {a.shape[0]} does not match signature side {sig.side}"
        )
    keep_set = set(keep)
    missing = keep_set - set(sig.labels)
    if missing:
        raise KeyError(f"unknown labels {sorted(missing)}; have {sig.labels}")
    if keep_set == set(sig.labels):
        return a.copy()

    n = len(sig.dims)
    t = a.reshape(sig.dims + sig.dims)
    # Build einsum subscripts: kept axes get independent row/column indices,
    # traced axes share one index on both sides.
    row = list(range(n))
    col = [i + n if sig.labels[i] in keep_set else i for i in range(n)]
    out = [i for i in range(n) if sig.labels[i] in keep_set]
    out += [i + n for i in range(n) if sig.labels[i] in keep_set]
    reduced = np.einsum(t, row + col, out)
    side = prod(d for d, x in zip(sig.dims, sig.labels) if x in keep_set)
    return np.ascontiguousarray(reduced.reshape(side, side))


def eig_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, u)`` with eigenvalues ``w`` ascending and eigenvectors in the
    columns of ``u``, so that ``u @ diag(w) @ u.conj().T`` reconstructs the
    input to within 1e-9 in max-entry norm.  Rejects inputs whose Hermitian
    defect exceeds ``tol``.
    """
    a = _as_matrix(m)
    defect = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if defect > tol:
        raise ValidationError(
            f"matrix is not Hermitian: max |m - m^dag| = {defect:.3e} exceeds {tol:.1e}"
        )
    w, u = np.linalg.eigh(a)
    return w, u


def expm_skew(g: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Exponential of a skew-Hermitian generator; the result is unitary.

    Computed through the eigendecomposition of the Hermitian matrix ``1j * g``:
    if ``1j*g = u diag(w) u^dag`` then ``exp(g) = u diag(exp(-1j*w)) u^dag``.
    """
    a = _as_matrix(g)
    defect = np.max(np.abs(a + a.conj().T)) if a.size else 0.0
    if defect > tol:
        raise ValidationError(
            f"generator is not skew-Hermitian: max |g + g^dag| = {defect:.3e} "
            f"exceeds {tol:.1e}"
        )
    w, u = np.linalg.eigh(1j * a)
    return (u * np.exp(-1j * w)) @ u.conj().T


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance ``0.5 * ||a - b||_1`` between two states of equal shape."""
    ma = _as_matrix(a)
    mb = _as_matrix(b)
    if ma.shape != mb.shape:
        raise ValidationError(f"shape mismatch {ma.shape} vs {mb.shape}")
    diff = ma - mb
    diff = 0.5 * (diff + diff.conj().T)
    w = np.linalg.eigvalsh(diff)
    return float(0.5 * np.sum(np.abs(w)))


def validate_density(m: np.ndarray, tol: float = DENSITY_TOL) -> np.ndarray:
    """Check that ``m`` is a density matrix and return a cleaned copy.

    Rejects, with a diagnostic naming the violated property, any matrix that
    is not Hermitian within ``tol``, whose trace differs from 1 by more than
    ``tol``, or with an eigenvalue below ``-tol``.  Eigenvalues in
    ``[-tol, 0)`` are clamped to zero and the spectrum renormalized.  A matrix
    that is already clean at machine precision is returned unchanged, so that
    reading a serialized state back preserves it bit for bit.
    """
    clean_tol = 1e-12
    a = _as_matrix(m)
    defect = np.max(np.abs(a - a.conj().T))
    if defect > tol:
        raise ValidationError(
            f"density matrix is not Hermitian: defect {defect:.3e} exceeds {tol:.1e}"
        )
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > tol:
        raise ValidationError(
            f"density matrix trace {tr.real:.12g} differs from 1 by more than {tol:.1e}"
        )
    a = 0.5 * (a + a.conj().T)
    w, u = np.linalg.eigh(a)
    if w[0] < -tol:
        raise ValidationError(
            f"density matrix has negative eigenvalue {w[0]:.3e} below -{tol:.1e}"
        )
    if w[0] >= -clean_tol and abs(tr - 1.0) <= clean_tol:
        return a
    w = np.clip(w, 0.0, None)
    w = w / w.sum()
    cleaned = (u * w) @ u.conj().T
    return 0.5 * (cleaned + cleaned.conj().T)
