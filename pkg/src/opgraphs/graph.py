"""Operator graphs and checkers for their defining properties.

A graph is stored as its generators together with an HS-orthonormal basis of
their span. Nothing is added to the span automatically: the identity and
adjoint closure are verified, never enforced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    DegenerateProjectorError,
    DimensionError,
    PreconditionError,
    ToleranceConfig,
    as_matrix,
    conjugate,
    is_unitary,
    orthonormal_span_basis,
    projector_residual,
)


@dataclass(frozen=True)
class OperatorGraph:
    space_dim: int
    generators: tuple[np.ndarray, ...] = field(repr=False)
    span_basis: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    @cached_property
    def basis_rows(self) -> np.ndarray:
        n = self.space_dim
        return np.stack(self.span_basis).reshape(-1, n * n) if self.span_basis else np.zeros((0, n * n))

    def residual(self, x) -> float:
        """Distance from ``x`` to the span of the graph."""
        x = as_matrix(x)
        if x.shape != (self.space_dim, self.space_dim):
            raise DimensionError(f"operator of shape {x.shape} on a space of dim {self.space_dim}")
        v = x.ravel()
        rows = self.basis_rows
        return float(np.linalg.norm(v - rows.T @ (rows.conj() @ v)))


@dataclass(frozen=True)
class AnticliqueReport:
    projector_label: str
    scalar: complex
    scalars: tuple[complex, ...]
    max_residual: float
    passed: bool


def build_graph(
    space_dim: int, generators: Sequence[np.ndarray], tol: ToleranceConfig = DEFAULT_TOL
) -> OperatorGraph:
    if len(generators) == 0:
        raise PreconditionError("a graph needs at least one generator")
    gens = tuple(as_matrix(g) for g in generators)
    for g in gens:
        if g.shape != (space_dim, space_dim):
            raise DimensionError(f"generator of shape {g.shape} on a space of dim {space_dim}")
    basis = tuple(orthonormal_span_basis(gens, tol))
    return OperatorGraph(space_dim=space_dim, generators=gens, span_basis=basis)


def graph_axiom_residual(g: OperatorGraph) -> float:
    """Worst of the identity-membership and adjoint-closure residuals."""
    worst = g.residual(np.eye(g.space_dim))
    for b in g.span_basis:
        worst = max(worst, g.residual(b.conj().T))
    return float(worst)


def check_graph_axioms(g: OperatorGraph, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return graph_axiom_residual(g) <= tol.residual_abs_eps


def identity_partition_residual(projectors: Sequence[np.ndarray]) -> float:
    """Worst projector defect, or the defect of ``sum P = I``."""
    mats = [as_matrix(p) for p in projectors]
    if not mats:
        raise PreconditionError("empty projector family")
    n = mats[0].shape[0]
    worst = 0.0
    total = np.zeros((n, n), dtype=complex)
    for p in mats:
        if p.shape != (n, n):
            raise DimensionError(f"shape mismatch: {p.shape} vs {(n, n)}")
        worst = max(worst, projector_residual(p))
        total += p
    return float(max(worst, np.linalg.norm(total - np.eye(n))))


def check_identity_partition(
    projectors: Sequence[np.ndarray], tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    return identity_partition_residual(projectors) <= tol.residual_abs_eps


def check_covariance(
    g: OperatorGraph, group_unitaries: Sequence[np.ndarray], tol: ToleranceConfig = DEFAULT_TOL
) -> float:
    """Largest distance of ``u B u^dagger`` from the span, over unitaries and basis elements.

    The group is represented by whatever finite set the caller supplies, so a
    small value certifies invariance only under that set.
    """
    unitaries = [as_matrix(u) for u in group_unitaries]
    for i, u in enumerate(unitaries):
        if not is_unitary(u, tol):
            raise PreconditionError(f"group element {i} is not unitary")
    worst = 0.0
    for u in unitaries:
        for b in g.span_basis:
            worst = max(worst, g.residual(conjugate(u, b)))
    return float(worst)


def check_anticlique(
    p, g: OperatorGraph, tol: ToleranceConfig = DEFAULT_TOL, label: str = "P"
) -> AnticliqueReport:
    """Test ``P A P = lambda_A P`` for every generator ``A`` of ``g``.

    ``lambda_A`` is taken as ``tr(PAP)/tr(P)``, the only possible value, so
    the residual is a direct certificate.
    """
    p = as_matrix(p)
    if p.shape != (g.space_dim, g.space_dim):
        raise DimensionError(f"projector of shape {p.shape} on a space of dim {g.space_dim}")
    if projector_residual(p) > tol.residual_abs_eps:
        raise PreconditionError(f"{label} is not an orthogonal projector")
    rank = np.trace(p).real
    if rank < 0.5:
        raise DegenerateProjectorError(f"{label} has trace {rank:.3g}")
    scalars = []
    worst = 0.0
    for a in g.generators:
        compressed = p @ a @ p
        lam = complex(np.trace(compressed) / rank)
        scalars.append(lam)
        worst = max(worst, float(np.linalg.norm(compressed - lam * p)))
    return AnticliqueReport(
        projector_label=label,
        scalar=scalars[0],
        scalars=tuple(scalars),
        max_residual=worst,
        passed=worst <= tol.residual_abs_eps,
    )
