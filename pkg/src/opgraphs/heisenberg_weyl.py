"""Heisenberg-Weyl construction: shift/clock, the entangled basis h_k^j, pi, y_ml, h_p.

Vectors ``h[k, j]`` are stored as flat arrays on C^d (x) C^d with ``|a b>`` at
index ``a*d + b``. The matrix units ``y_ml`` are formed on demand; at d = 32
the full family would need d^2 matrices of size d^2 x d^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .graph import OperatorGraph, build_graph
from .numerics import DEFAULT_TOL, ToleranceConfig, gram_rank, rank_gap

MAX_DIM = 32


def _check_index(name: str, value: int, d: int):
    if not 0 <= value < d:
        raise IndexError(f"{name}={value} out of range 0..{d - 1}")


def shift_clock(d: int) -> tuple[np.ndarray, np.ndarray]:
    """``S|j> = |j+1 mod d>`` and ``M|j> = exp(2 pi i j/d)|j>``."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    j = np.arange(d)
    s = np.zeros((d, d), dtype=complex)
    s[(j + 1) % d, j] = 1.0
    m = np.diag(np.exp(2j * np.pi * j / d))
    return s, m


def dimension_formula(d: int) -> int:
    """Closed-form graph dimension: ``(d-1)/2 + 1`` for odd d, ``d/2 + 1`` for even d."""
    return (d - 1) // 2 + 1 if d % 2 else d // 2 + 1


@dataclass(frozen=True)
class HWInstance:
    d: int
    shift: np.ndarray = field(repr=False)
    clock: np.ndarray = field(repr=False)
    h_vectors: np.ndarray = field(repr=False)

    @property
    def space_dim(self) -> int:
        return self.d * self.d

    @classmethod
    def build(cls, d: int) -> "HWInstance":
        if not 2 <= d <= MAX_DIM:
            raise ValueError(f"d must lie in 2..{MAX_DIM}, got {d}")
        s, m = shift_clock(d)
        h = np.zeros((d, d, d * d), dtype=complex)
        a = np.arange(d)
        for k in range(d):
            amp = np.exp(2j * np.pi * k * a / d) / np.sqrt(d)
            for j in range(d):
                h[k, j, a * d + (a + j) % d] = amp
        h.setflags(write=False)
        return cls(d=d, shift=s, clock=m, h_vectors=h)

    def block(self, m: int) -> np.ndarray:
        """``d^2 x d`` matrix whose columns are ``h_m^0 .. h_m^{d-1}``."""
        return self.h_vectors[m].T

    @cached_property
    def pi_shift(self) -> np.ndarray:
        d = self.d
        rolled = np.concatenate([self.block((k + 1) % d) for k in range(d)], axis=1)
        full = np.concatenate([self.block(k) for k in range(d)], axis=1)
        return rolled @ full.conj().T

    @cached_property
    def pi_clock(self) -> np.ndarray:
        d = self.d
        phases = np.repeat(np.exp(2j * np.pi * np.arange(d) / d), d)
        full = np.concatenate([self.block(k) for k in range(d)], axis=1)
        return (full * phases) @ full.conj().T

    @cached_property
    def h_generators(self) -> tuple[np.ndarray, ...]:
        return tuple(h_generator(self, p) for p in range(self.d))


@lru_cache(maxsize=4)
def hw_instance(d: int) -> HWInstance:
    return HWInstance.build(d)


def h_vector(inst: HWInstance, k: int, j: int) -> np.ndarray:
    _check_index("k", k, inst.d)
    _check_index("j", j, inst.d)
    return inst.h_vectors[k, j]


def pi_generators(inst: HWInstance) -> tuple[np.ndarray, np.ndarray]:
    return inst.pi_shift, inst.pi_clock


def y_unit(inst: HWInstance, m: int, l: int) -> np.ndarray:
    """``y_ml = sum_k |h_m^k><h_l^k|``."""
    _check_index("m", m, inst.d)
    _check_index("l", l, inst.d)
    return inst.block(m) @ inst.block(l).conj().T


def h_generator(inst: HWInstance, p: int) -> np.ndarray:
    d = inst.d
    _check_index("p", p, d)
    if p == 0:
        return np.eye(d * d, dtype=complex)
    left = np.concatenate([inst.block((m + p) % d) for m in range(d)], axis=1)
    right = np.concatenate([inst.block(m) for m in range(d)], axis=1)
    forward = left @ right.conj().T
    return forward + forward.conj().T


def hw_graph(d: int, tol: ToleranceConfig = DEFAULT_TOL) -> OperatorGraph:
    inst = hw_instance(d)
    return build_graph(inst.space_dim, inst.h_generators, tol)


@dataclass(frozen=True)
class Theorem2Report:
    d: int
    computed_dim: int
    formula_dim: int
    minimal_generator_count: int
    equal_pairs: tuple[tuple[int, int], ...]
    rank_gap: float
    passed: bool


def expected_pairs(d: int) -> tuple[tuple[int, int], ...]:
    return tuple((p, d - p) for p in range(1, d) if p < d - p)


def verify_theorem2(d: int, tol: ToleranceConfig = DEFAULT_TOL) -> Theorem2Report:
    inst = hw_instance(d)
    gens = inst.h_generators
    computed = gram_rank(gens, tol)
    prefix = next(m for m in range(1, d + 1) if gram_rank(gens[:m], tol) == computed)
    pairs = tuple(
        (p, q)
        for p in range(d)
        for q in range(p + 1, d)
        if np.linalg.norm(gens[p] - gens[q]) <= tol.residual_abs_eps
    )
    formula = dimension_formula(d)
    return Theorem2Report(
        d=d,
        computed_dim=computed,
        formula_dim=formula,
        minimal_generator_count=prefix,
        equal_pairs=pairs,
        rank_gap=rank_gap(gens, tol),
        passed=computed == formula and pairs == expected_pairs(d),
    )


def h_orthonormality_residual(inst: HWInstance) -> float:
    flat = inst.h_vectors.reshape(inst.space_dim, -1)
    return float(np.max(np.abs(flat.conj() @ flat.T - np.eye(inst.space_dim))))


def commutation_residual(shift: np.ndarray, clock: np.ndarray, d: int) -> float:
    """``||M S - exp(2 pi i/d) S M||_F``."""
    omega = np.exp(2j * np.pi / d)
    return float(np.linalg.norm(clock @ shift - omega * shift @ clock))


def order_residual(u: np.ndarray, d: int) -> float:
    """``||u^d - I||_F``."""
    return float(np.linalg.norm(np.linalg.matrix_power(u, d) - np.eye(u.shape[0])))


def pi_shift_action_residual(inst: HWInstance) -> float:
    d = inst.d
    h = inst.h_vectors
    ps = inst.pi_shift
    return float(max(np.linalg.norm(ps @ h[k, j] - h[(k + 1) % d, j])
                     for k in range(d) for j in range(d)))


def kronecker_shift_residual(inst: HWInstance) -> float:
    """Worst ``||h_k^j - (I (x) S^j) h_k^0||`` over all k, j."""
    d = inst.d
    worst = 0.0
    for j in range(d):
        op = np.kron(np.eye(d), np.linalg.matrix_power(inst.shift, j))
        for k in range(d):
            worst = max(worst, float(np.linalg.norm(inst.h_vectors[k, j] - op @ inst.h_vectors[k, 0])))
    return worst
