"""Dense complex-matrix helpers: Hilbert-Schmidt geometry, Gram ranks, subspaces.

Operators are plain 2-D ``complex128`` numpy arrays. Families of operators are
handled as Python sequences and stacked internally into ``(n, D*D)`` row
matrices, so the HS inner product becomes an ordinary vector dot product.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class DimensionError(ValueError):
    """Operands have incompatible or non-square shapes."""


class PreconditionError(ValueError):
    """An input violates a documented precondition."""


class DegenerateProjectorError(PreconditionError):
    """A projector of trace zero was supplied where a code space is needed."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds for numerical rank, equality and residual decisions.

    ``rank_rel_eps`` is relative to the largest Gram eigenvalue;
    ``residual_abs_eps`` is an absolute Frobenius-norm cutoff.
    """

    rank_rel_eps: float = 1e-9
    residual_abs_eps: float = 1e-10

    def __post_init__(self):
        for name in ("rank_rel_eps", "residual_abs_eps"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3), got {value!r}")


DEFAULT_TOL = ToleranceConfig()


def as_matrix(a, *, square: bool = True) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def stack(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Stack same-shape square operators into an ``(n, N, N)`` array."""
    if len(ops) == 0:
        return np.zeros((0, 0, 0), dtype=complex)
    mats = [as_matrix(op) for op in ops]
    shape = mats[0].shape
    for m in mats[1:]:
        if m.shape != shape:
            raise DimensionError(f"shape mismatch: {m.shape} vs {shape}")
    return np.stack(mats)


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^dagger b)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def gram_matrix(ops: Sequence[np.ndarray]) -> np.ndarray:
    """``G[i, j] = hs_inner(ops[i], ops[j])``; Hermitian PSD."""
    arr = stack(ops)
    if arr.shape[0] == 0:
        return np.zeros((0, 0), dtype=complex)
    flat = arr.reshape(arr.shape[0], -1)
    g = flat.conj() @ flat.T
    return (g + g.conj().T) / 2


def _spectrum(g: np.ndarray):
    evals, evecs = np.linalg.eigh(g)
    # descending order
    return evals[::-1], evecs[:, ::-1]


def _retained(evals: np.ndarray, tol: ToleranceConfig) -> int:
    if evals.size == 0 or evals[0] <= 0.0:
        return 0
    return int(np.count_nonzero(evals > tol.rank_rel_eps * evals[0]))


def gram_rank(ops: Sequence[np.ndarray], tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Numerical dimension of ``span(ops)`` from the Gram spectrum."""
    evals, _ = _spectrum(gram_matrix(ops))
    return _retained(evals, tol)


def rank_gap(ops: Sequence[np.ndarray], tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Ratio of the smallest retained to the largest discarded Gram eigenvalue.

    Returns ``inf`` when nothing is discarded, and also when the largest
    discarded eigenvalue is not positive.
    """
    evals, _ = _spectrum(gram_matrix(ops))
    r = _retained(evals, tol)
    if r == 0:
        return 0.0
    if r == evals.size:
        return float("inf")
    discarded = max(float(evals[r]), 0.0)
    if discarded == 0.0:
        return float("inf")
    return float(evals[r - 1]) / discarded


def orthonormal_span_basis(
    ops: Sequence[np.ndarray], tol: ToleranceConfig = DEFAULT_TOL
) -> list[np.ndarray]:
    """HS-orthonormal basis of ``span(ops)`` via the Gram eigen-decomposition.

    The basis has exactly ``gram_rank(ops, tol)`` elements; element ``i`` is
    ``sum_j v_ji ops_j / sqrt(lambda_i)`` for the retained eigenpairs.
    """
    arr = stack(ops)
    if arr.shape[0] == 0:
        return []
    flat = arr.reshape(arr.shape[0], -1)
    g = flat.conj() @ flat.T
    evals, evecs = _spectrum((g + g.conj().T) / 2)
    r = _retained(evals, tol)
    coeffs = evecs[:, :r] / np.sqrt(evals[:r])
    basis = (coeffs.T @ flat).reshape((r,) + arr.shape[1:])
    return list(basis)


def _check_orthonormal(flat: np.ndarray, tol: ToleranceConfig, label: str):
    g = flat.conj() @ flat.T
    dev = np.linalg.norm(g - np.eye(flat.shape[0]))
    if dev > tol.residual_abs_eps:
        raise PreconditionError(f"{label} is not HS-orthonormal (Gram deviation {dev:.3g})")


def span_residual(x, basis: Sequence[np.ndarray]) -> float:
    """Frobenius norm of ``x`` minus its HS projection onto ``span(basis)``.

    ``basis`` must be HS-orthonormal.
    """
    x = as_matrix(x)
    if len(basis) == 0:
        return float(np.linalg.norm(x))
    flat = stack(basis).reshape(len(basis), -1)
    if flat.shape[1] != x.size:
        raise DimensionError(f"shape mismatch: {x.shape} vs basis {basis[0].shape}")
    v = x.ravel()
    coeffs = flat.conj() @ v
    return float(np.linalg.norm(v - flat.T @ coeffs))


def projector_distance(rows_a: np.ndarray, rows_b: np.ndarray) -> float:
    """``||Pi_a - Pi_b||_F`` for orthonormal rows, without forming the projectors.

    ``||Pi_a - Pi_b||^2 = ||A - Pi_b A||^2 + ||B - Pi_a B||^2``; the residual
    form keeps full relative accuracy when the subspaces nearly coincide,
    unlike ``dim_a + dim_b - 2 ||A^dagger B||^2``.
    """
    overlap = rows_b.conj() @ rows_a.T
    res_a = rows_a - overlap.T @ rows_b
    res_b = rows_b - overlap.conj() @ rows_a
    return float(np.sqrt(np.sum(np.abs(res_a) ** 2) + np.sum(np.abs(res_b) ** 2)))


def subspace_distance(
    basis_a: Sequence[np.ndarray],
    basis_b: Sequence[np.ndarray],
    tol: ToleranceConfig = DEFAULT_TOL,
) -> float:
    """Frobenius distance between the HS projectors onto two spans."""
    if len(basis_a) == 0 and len(basis_b) == 0:
        return 0.0
    if len(basis_a) == 0 or len(basis_b) == 0:
        return float(np.sqrt(len(basis_a) + len(basis_b)))
    a = stack(basis_a)
    b = stack(basis_b)
    if a.shape[1:] != b.shape[1:]:
        raise DimensionError(f"shape mismatch: {a.shape[1:]} vs {b.shape[1:]}")
    fa = a.reshape(a.shape[0], -1)
    fb = b.reshape(b.shape[0], -1)
    _check_orthonormal(fa, tol, "basis_a")
    _check_orthonormal(fb, tol, "basis_b")
    return projector_distance(fa, fb)


def is_unitary(u, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    u = as_matrix(u)
    return bool(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol.residual_abs_eps)


def projector_residual(p) -> float:
    """``max(||p^2 - p||_F, ||p - p^dagger||_F)``."""
    p = as_matrix(p)
    return float(max(np.linalg.norm(p @ p - p), np.linalg.norm(p - p.conj().T)))


def is_projector(p, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return projector_residual(p) <= tol.residual_abs_eps


def conjugate(u, a) -> np.ndarray:
    """Group action on operators: ``u a u^dagger``."""
    u, a = as_matrix(u), as_matrix(a)
    if u.shape != a.shape:
        raise DimensionError(f"shape mismatch: {u.shape} vs {a.shape}")
    return u @ a @ u.conj().T


def matrix_to_json(m) -> list:
    """Row-major nested lists of ``[re, im]`` pairs."""
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]
