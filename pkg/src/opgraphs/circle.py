"""Circle-group construction on C^d (x) C^d.

Product basis ordering: ``|a b>`` sits at flat index ``a*d + b``. All indices
are 0-based; the circle representation keeps the eigenvalue
``exp(i*phi*(s+1))`` on the block ``H_s`` so that it matches the 1-based
labelling literally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .graph import OperatorGraph, build_graph
from .numerics import (
    DEFAULT_TOL,
    PreconditionError,
    ToleranceConfig,
    conjugate,
    orthonormal_span_basis,
    projector_distance,
)

MAX_DIM = 32
# residual directions below this norm are roundoff, not new subspace content
_FRAME_EPS = 1e-12


def _check_index(name: str, value: int, d: int):
    if not 0 <= value < d:
        raise IndexError(f"{name}={value} out of range 0..{d - 1}")


def _bell_array(d: int) -> np.ndarray:
    """``psi[s, n]`` is the flat state vector for the Bell pair ``(s, n)``."""
    D = d * d
    psi = np.zeros((d, d, D), dtype=complex)
    k = np.arange(d)
    for s in range(d):
        phases = np.exp(2j * np.pi * s * k / d) / np.sqrt(d)
        for n in range(d):
            psi[s, n, k * d + (k - n) % d] = phases
    return psi


def bell_state(d: int, s: int, n: int) -> np.ndarray:
    """``(1/sqrt d) sum_k exp(2 pi i s k/d) |k, k-n mod d>``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    _check_index("s", s, d)
    _check_index("n", n, d)
    D = d * d
    k = np.arange(d)
    v = np.zeros(D, dtype=complex)
    v[k * d + (k - n) % d] = np.exp(2j * np.pi * s * k / d) / np.sqrt(d)
    return v


@dataclass(frozen=True)
class CircleInstance:
    d: int
    bell_states: np.ndarray = field(repr=False)
    p_projectors: tuple[np.ndarray, ...] = field(repr=False)
    q_projectors: tuple[np.ndarray, ...] = field(repr=False)
    w_unitaries: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def space_dim(self) -> int:
        return self.d * self.d

    @classmethod
    def build(cls, d: int) -> "CircleInstance":
        if not 2 <= d <= MAX_DIM:
            raise ValueError(f"d must lie in 2..{MAX_DIM}, got {d}")
        D = d * d
        psi = _bell_array(d)
        psi.setflags(write=False)
        # columns of blocks[s] are psi[s, 0..d-1]
        blocks = psi.transpose(0, 2, 1)
        p = tuple(b @ b.conj().T for b in blocks)
        q = []
        for j in range(d):
            qj = np.zeros((D, D), dtype=complex)
            idx = j * d + (j - np.arange(d)) % d
            qj[idx, idx] = 1.0
            q.append(qj)
        full = np.concatenate(list(blocks), axis=1)
        w = tuple(np.concatenate(list(np.roll(blocks, -n, axis=0)), axis=1) @ full.conj().T
                  for n in range(d))
        return cls(d=d, bell_states=psi, p_projectors=p, q_projectors=tuple(q), w_unitaries=w)


@lru_cache(maxsize=4)
def circle_instance(d: int) -> CircleInstance:
    return CircleInstance.build(d)


def circle_unitary(inst: CircleInstance, phi: float) -> np.ndarray:
    phi = float(phi) % (2 * np.pi)
    u = np.zeros((inst.space_dim, inst.space_dim), dtype=complex)
    for s, p in enumerate(inst.p_projectors):
        u += np.exp(1j * phi * (s + 1)) * p
    return u


def q_projector(inst: CircleInstance, j: int) -> np.ndarray:
    _check_index("j", j, inst.d)
    return inst.q_projectors[j]


def w_unitary(inst: CircleInstance, n: int) -> np.ndarray:
    _check_index("n", n, inst.d)
    return inst.w_unitaries[n]


def default_phases(d: int, j: int) -> list[float]:
    """The d-point sampling ``2 pi (k + j)/d``, ``k = 0..d-1``."""
    return [2 * np.pi * (k + j) / d for k in range(d)]


def uniform_circle_phases(count: int, seed: int = 0) -> list[float]:
    """Seeded uniform samples on [0, 2 pi), for covariance spot checks."""
    rng = np.random.default_rng(seed)
    return [float(x) for x in rng.uniform(0.0, 2 * np.pi, size=count)]


def zd_phases(d: int) -> list[float]:
    """The cyclic subgroup ``2 pi k/d`` of the circle."""
    return [2 * np.pi * k / d for k in range(d)]


def orbit_generators(inst: CircleInstance, j: int, phis: Sequence[float]) -> list[np.ndarray]:
    _check_index("j", j, inst.d)
    if len(phis) == 0:
        raise PreconditionError("need at least one phase")
    q = inst.q_projectors[j]
    return [conjugate(circle_unitary(inst, phi), q) for phi in phis]


def orbit_graph(
    inst: CircleInstance,
    j: int,
    phis: Optional[Sequence[float]] = None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> OperatorGraph:
    if phis is None:
        phis = default_phases(inst.d, j)
    return build_graph(inst.space_dim, orbit_generators(inst, j, phis), tol)


def _inverse_dft(ops: Sequence[np.ndarray], d: int) -> list[np.ndarray]:
    # W_m = sum_k exp(-2 pi i k m / d) A_k
    k = np.arange(d)
    phases = np.exp(-2j * np.pi * np.outer(k, k) / d)
    arr = np.stack(ops)
    return list(np.tensordot(phases, arr, axes=(0, 0)))


def wn_from_orbit_dft(inst: CircleInstance, j: int) -> list[np.ndarray]:
    """Recover every ``W_m`` from the orbit of ``Q_j`` at the default phases."""
    return _inverse_dft(orbit_generators(inst, j, default_phases(inst.d, j)), inst.d)


def w_graph(inst: CircleInstance, tol: ToleranceConfig = DEFAULT_TOL) -> OperatorGraph:
    return build_graph(inst.space_dim, inst.w_unitaries, tol)


@dataclass(frozen=True)
class Theorem1Report:
    d: int
    js: tuple[int, ...]
    pairwise_vj_distances: tuple[tuple[float, ...], ...]
    wn_vs_vj_distance: float
    dft_reconstruction_residual: float
    dims: tuple[int, ...]
    passed: bool


class _SharedFrame:
    """Orthonormal frame grown on demand; subspaces are kept as coordinates in it."""

    def __init__(self, basis: Sequence[np.ndarray]):
        self.rows = np.stack(basis).reshape(len(basis), -1)

    def coordinates(self, basis: Sequence[np.ndarray]) -> np.ndarray:
        flat = np.stack(basis).reshape(len(basis), -1)
        coords = self.rows.conj() @ flat.T
        resid = flat.T - self.rows.T @ coords
        u, sv, _ = np.linalg.svd(resid, full_matrices=False)
        new = u[:, sv > _FRAME_EPS]
        if new.shape[1]:
            new -= self.rows.T @ (self.rows.conj() @ new)
            new, _ = np.linalg.qr(new)
            self.rows = np.concatenate([self.rows, new.T])
            coords = self.rows.conj() @ flat.T
        return coords

    @staticmethod
    def pad(coords: np.ndarray, size: int) -> np.ndarray:
        out = np.zeros((size, coords.shape[1]), dtype=complex)
        out[: coords.shape[0]] = coords
        return out


def verify_theorem1(
    d: int, tol: ToleranceConfig = DEFAULT_TOL, js: Optional[Sequence[int]] = None
) -> Theorem1Report:
    """Compare every orbit graph ``V_j`` with each other and with ``span{W_n}``.

    Each ``V_j`` uses the default d-point phase sampling. Subspaces are
    compared through their coordinates in a shared orthonormal frame, so only
    one graph is held in memory at a time.
    """
    inst = circle_instance(d)
    js = tuple(range(d)) if js is None else tuple(js)
    for j in js:
        _check_index("j", j, d)
    w_basis = orthonormal_span_basis(inst.w_unitaries, tol)
    frame = _SharedFrame(w_basis)
    w_coords = np.eye(len(w_basis), dtype=complex)
    coords, dims = [], []
    dft_resid = 0.0
    for j in js:
        g = orbit_graph(inst, j, tol=tol)
        dims.append(g.dim)
        coords.append(frame.coordinates(g.span_basis))
        for m, w in enumerate(_inverse_dft(g.generators, d)):
            dft_resid = max(dft_resid, float(np.linalg.norm(w - inst.w_unitaries[m])))
        del g
    size = frame.rows.shape[0]
    coords = [_SharedFrame.pad(c, size) for c in coords]
    w_coords = _SharedFrame.pad(w_coords, size)

    def dist(a, b):
        return projector_distance(a.T, b.T)

    pairwise = tuple(tuple(dist(a, b) for b in coords) for a in coords)
    wn_dist = max(dist(c, w_coords) for c in coords)
    eps = tol.residual_abs_eps
    passed = (
        all(x <= eps for row in pairwise for x in row)
        and wn_dist <= eps
        and dft_resid <= eps
        and all(k == d for k in dims)
    )
    return Theorem1Report(
        d=d,
        js=js,
        pairwise_vj_distances=pairwise,
        wn_vs_vj_distance=wn_dist,
        dft_reconstruction_residual=dft_resid,
        dims=tuple(dims),
        passed=bool(passed),
    )


def bell_orthonormality_residual(inst: CircleInstance) -> float:
    flat = inst.bell_states.reshape(inst.space_dim, -1)
    return float(np.max(np.abs(flat.conj() @ flat.T - np.eye(inst.space_dim))))


def w_group_law_residual(inst: CircleInstance) -> float:
    d = inst.d
    w = inst.w_unitaries
    return float(max(np.linalg.norm(w[a] @ w[b] - w[(a + b) % d])
                     for a in range(d) for b in range(d)))


def bell_permutation_residual(inst: CircleInstance) -> float:
    """Worst ``||W_n psi_{l r} - psi_{l+n, r}||`` over all indices."""
    d = inst.d
    psi = inst.bell_states
    return float(max(np.linalg.norm(inst.w_unitaries[n] @ psi[l, r] - psi[(l + n) % d, r])
                     for n in range(d) for l in range(d) for r in range(d)))
