"""Constructors and containers for the states the package works with.

A :class:`DensityMatrix` couples a validated matrix with its factor
signature; a :class:`PureState` does the same for a unit vector.  All random
constructors take an integer seed and draw from a fresh PCG64 generator, so
identical seeds give identical states; related samplers derive substream
seeds by adding fixed offsets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from . import qmat
from .qmat import DimSig, ValidationError

RANK_TOL = 1e-12

__all__ = [
    "DensityMatrix",
    "PureState",
    "append_maximally_mixed",
    "as_density",
    "classically_correlated",
    "isotropic",
    "load_state",
    "max_entangled",
    "merge_labels",
    "purify",
    "random_density",
    "random_pure",
    "random_separable",
    "random_unitary",
    "save_state",
    "state_from_json",
    "state_to_json",
    "to_density",
]


@dataclass(frozen=True)
class DensityMatrix:
    """A density matrix together with the signature of its tensor factors."""

    matrix: np.ndarray
    sig: DimSig

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != self.sig.side:
            raise ValidationError(
                f"matrix shape {m.shape} does not match signature side {self.sig.side}"
            )
        object.__setattr__(self, "matrix", m)

    def marginal(self, keep: str | Sequence[str]) -> "DensityMatrix":
        """Reduced state on the named factors (induced order)."""
        keep = (keep,) if isinstance(keep, str) else tuple(keep)
        sub = self.sig.subset(keep)
        return DensityMatrix(qmat.partial_trace(self.matrix, self.sig, keep), sub)

    def relabeled(self, mapping: dict[str, str]) -> "DensityMatrix":
        labels = tuple(mapping.get(x, x) for x in self.sig.labels)
        return DensityMatrix(self.matrix, DimSig(self.sig.dims, labels))


@dataclass(frozen=True)
class PureState:
    """A unit vector together with the signature of its tensor factors."""

    vector: np.ndarray
    sig: DimSig

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex).reshape(-1)
        if v.shape[0] != self.sig.side:
            raise ValidationError(
                f"vector length {v.shape[0]} does not match signature side {self.sig.side}"
            )
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-9:
            raise ValidationError(f"state vector norm {norm:.12g} is not 1 within 1e-9")
        object.__setattr__(self, "vector", v)


def as_density(matrix: np.ndarray, sig: DimSig, tol: float = qmat.DENSITY_TOL) -> DensityMatrix:
    """Validate, clean, and wrap a raw matrix as a :class:`DensityMatrix`."""
    return DensityMatrix(qmat.validate_density(matrix, tol), sig)


def to_density(psi: PureState) -> DensityMatrix:
    """Outer-product density matrix of a pure state."""
    v = psi.vector
    m = np.outer(v, v.conj())
    # Dividing by the trace cancels the rounding of |v_i|^2 terms (for the
    # maximally entangled pair it makes the entries exactly 1/d).
    return DensityMatrix(m / np.trace(m).real, psi.sig)


def merge_labels(
    state: DensityMatrix, labels: Sequence[str], new_label: str | None = None
) -> DensityMatrix:
    """Fuse a contiguous run of factors into a single factor.

    The underlying matrix is unchanged; only the signature coarsens.  The run
    must be contiguous in the signature, since fusing non-adjacent factors
    would require a basis permutation.
    """
    labels = tuple(labels)
    axes = [state.sig.axis(x) for x in labels]
    if axes != list(range(axes[0], axes[0] + len(axes))):
        raise ValidationError(
            f"labels {labels} are not a contiguous run in {state.sig.labels}"
        )
    fused_dim = prod(state.sig.dims[a] for a in axes)
    new_label = "".join(labels) if new_label is None else new_label
    dims = (
        state.sig.dims[: axes[0]] + (fused_dim,) + state.sig.dims[axes[-1] + 1 :]
    )
    names = (
        state.sig.labels[: axes[0]] + (new_label,) + state.sig.labels[axes[-1] + 1 :]
    )
    return DensityMatrix(state.matrix, DimSig(dims, names))


def max_entangled(d: int, labels: tuple[str, str] = ("R", "A")) -> PureState:
    """Maximally entangled pure state ``sum_i |ii> / sqrt(d)`` on two d-level factors."""
    if d < 2:
        raise ValidationError(f"need dimension >= 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return PureState(v, DimSig((d, d), labels))


def classically_correlated(
    p: Sequence[float],
    conditionals: Sequence[np.ndarray],
    labels: tuple[str, str] = ("R", "A"),
) -> DensityMatrix:
    """Mixture ``sum_i p_i rho_i (x) |i><i|`` with a classical register second.

    ``p`` must be a probability vector and each conditional a density matrix
    of one common dimension.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size != len(conditionals):
        raise ValidationError(
            f"{p.size} weights for {len(conditionals)} conditional states"
        )
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise ValidationError("weights must be a probability vector summing to 1")
    conds = [qmat.validate_density(c) for c in conditionals]
    d_r = conds[0].shape[0]
    if any(c.shape[0] != d_r for c in conds):
        raise ValidationError("conditional states must share one dimension")
    d_a = p.size
    out = np.zeros((d_r * d_a, d_r * d_a), dtype=complex)
    for i, (w, c) in enumerate(zip(p, conds)):
        flag = np.zeros((d_a, d_a))
        flag[i, i] = 1.0
        out += w * qmat.kron(c, flag)
    return as_density(out, DimSig((d_r, d_a), labels))


def append_maximally_mixed(state: DensityMatrix, m: int, label: str) -> DensityMatrix:
    """Adjoin an uncorrelated maximally mixed m-level factor as the new last factor."""
    if m < 1:
        raise ValidationError(f"need dimension >= 1, got {m}")
    if label in state.sig.labels:
        raise ValidationError(f"label {label!r} already present in {state.sig.labels}")
    out = qmat.kron(state.matrix, np.eye(m) / m)
    sig = DimSig(state.sig.dims + (m,), state.sig.labels + (label,))
    return DensityMatrix(out, sig)


def isotropic(d: int, f: float, labels: tuple[str, str] = ("R", "A")) -> DensityMatrix:
    """Mixture of the maximally entangled projector (weight ``f``) with the
    uniform state on its orthocomplement."""
    if not 0.0 <= f <= 1.0:
        raise ValidationError(f"fidelity weight must lie in [0, 1], got {f}")
    phi = to_density(max_entangled(d, labels)).matrix
    rest = (np.eye(d * d) - phi) / (d * d - 1)
    return as_density(f * phi + (1.0 - f) * rest, DimSig((d, d), labels))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(
    d: int,
    rank: int,
    seed: int,
    labels: Sequence[str] = ("Q",),
    dims: Sequence[int] | None = None,
) -> DensityMatrix:
    """Random density matrix ``G G^dag / tr`` with a d x rank complex Gaussian G.

    By default the state carries a single factor of dimension ``d``; pass
    ``labels`` and ``dims`` to view it as a composite system.
    """
    if not 1 <= rank <= d:
        raise ValidationError(f"rank must lie in [1, {d}], got {rank}")
    dims = (d,) if dims is None else tuple(dims)
    sig = DimSig(dims, tuple(labels))
    if sig.side != d:
        raise ValidationError(f"dims {dims} do not multiply to {d}")
    g = _ginibre(np.random.default_rng(seed), d, rank)
    m = g @ g.conj().T
    return as_density(m / np.trace(m).real, sig)


def random_pure(
    dims: Sequence[int], seed: int, labels: Sequence[str] | None = None
) -> PureState:
    """Haar-distributed pure state on the composite system with the given dims."""
    dims = tuple(int(d) for d in dims)
    labels = tuple(f"Q{i}" for i in range(len(dims))) if labels is None else tuple(labels)
    side = prod(dims)
    v = _ginibre(np.random.default_rng(seed), side, 1).reshape(-1)
    return PureState(v / np.linalg.norm(v), DimSig(dims, labels))


def random_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    g = _ginibre(np.random.default_rng(seed), d, d)
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_separable(
    d_r: int,
    d_a: int,
    terms: int,
    seed: int,
    labels: tuple[str, str] = ("R", "A"),
) -> DensityMatrix:
    """Random convex mixture of product states ``sum_k p_k rho_k (x) tau_k``."""
    if terms < 1:
        raise ValidationError(f"need at least one product term, got {terms}")
    rng = np.random.default_rng(seed)
    p = rng.dirichlet(np.ones(terms))
    out = np.zeros((d_r * d_a, d_r * d_a), dtype=complex)
    for k in range(terms):
        # Substream seeds by fixed offsets from the master seed.
        left = random_density(d_r, d_r, seed + 1 + 2 * k).matrix
        right = random_density(d_a, d_a, seed + 2 + 2 * k).matrix
        out += p[k] * qmat.kron(left, right)
    return as_density(out, DimSig((d_r, d_a), labels))


def purify(state: DensityMatrix, new_label: str = "S") -> PureState:
    """Spectral purification, with the purifying factor first.

    Writes ``rho = sum_i lam_i |v_i><v_i|`` and returns
    ``sum_i sqrt(lam_i) |i> (x) |v_i>`` on the purifying factor (dimension =
    rank of ``rho``) followed by the original factors.  Tracing the purifier
    back out recovers ``rho`` to 1e-10.
    """
    if new_label in state.sig.labels:
        raise ValidationError(f"label {new_label!r} already present in {state.sig.labels}")
    w, u = qmat.eig_hermitian(state.matrix)
    keep = w > RANK_TOL
    w, u = w[keep], u[:, keep]
    order = np.argsort(w)[::-1]
    w, u = w[order], u[:, order]
    rank = int(w.size)
    v = (np.sqrt(w)[:, None] * u.T).reshape(-1)
    sig = DimSig((rank,) + state.sig.dims, (new_label,) + state.sig.labels)
    return PureState(v / np.linalg.norm(v), sig)


# ---------------------------------------------------------------------------
# Serialization: {"labels": [...], "dims": [...], "matrix": [[re, im], ...]}
# with the matrix flattened in row-major order and floats at full precision.


def state_to_json(state: DensityMatrix) -> str:
    flat = state.matrix.reshape(-1)
    payload = {
        "labels": list(state.sig.labels),
        "dims": list(state.sig.dims),
        "matrix": [[float(z.real), float(z.imag)] for z in flat],
    }
    return json.dumps(payload)


def state_from_json(text: str, tol: float = qmat.DENSITY_TOL) -> DensityMatrix:
    try:
        payload = json.loads(text)
        labels = tuple(payload["labels"])
        dims = tuple(payload["dims"])
        entries = payload["matrix"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValidationError(f"malformed state document: {exc}") from exc
    sig = DimSig(dims, labels)
    side = sig.side
    if len(entries) != side * side:
        raise ValidationError(
            f"matrix has {len(entries)} entries, expected {side * side}"
        )
    m = np.array(
        [complex(re, im) for re, im in entries], dtype=complex
    ).reshape(side, side)
    return as_density(m, sig, tol)


def save_state(state: DensityMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(state_to_json(state))
        fh.write("\n")


def load_state(path, tol: float = qmat.DENSITY_TOL) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_json(fh.read(), tol)
