"""Verification suites and the JSON report schema."""
from __future__ import annotations

import dataclasses
import json
import math
import re
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import circle as C
from . import heisenberg_weyl as HW
from .graph import (
    check_anticlique,
    check_covariance,
    graph_axiom_residual,
    identity_partition_residual,
)
from .numerics import DEFAULT_TOL, ToleranceConfig, gram_rank, matrix_to_json

SCHEMA_VERSION = "1"
COVARIANCE_SAMPLES = 16
SATURATION_OVERSAMPLE = 4


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    metric: float
    detail: str = ""


@dataclass
class VerificationReport:
    instance: str
    d: int
    tolerance: ToleranceConfig
    checks: list[Check] = field(default_factory=list)
    theorem1: Optional[C.Theorem1Report] = None
    theorem2: Optional[HW.Theorem2Report] = None
    wall_time_ms: Optional[int] = None
    schema_version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def dim(self) -> Optional[int]:
        if self.theorem1 is not None:
            return self.theorem1.dims[0] if self.theorem1.dims else None
        if self.theorem2 is not None:
            return self.theorem2.computed_dim
        return None

    @property
    def formula_dim(self) -> Optional[int]:
        if self.instance == "circle":
            return self.d
        return HW.dimension_formula(self.d)

    def add(self, name: str, metric: float, bound: float, detail: str = "") -> Check:
        """Record a check that passes iff ``metric <= bound``."""
        if any(c.name == name for c in self.checks):
            raise ValueError(f"duplicate check name {name!r}")
        check = Check(name, bool(metric <= bound), float(metric), detail)
        self.checks.append(check)
        return check

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "instance": self.instance,
            "d": self.d,
            "passed": self.passed,
            "tolerance": dataclasses.asdict(self.tolerance),
            "checks": [dataclasses.asdict(c) for c in self.checks],
            "theorem1": _clean(dataclasses.asdict(self.theorem1)) if self.theorem1 else None,
            "theorem2": _clean(dataclasses.asdict(self.theorem2)) if self.theorem2 else None,
            "wall_time_ms": self.wall_time_ms,
        }


def _clean(obj):
    """Tuples to lists and non-finite floats to None, for strict JSON."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def dumps(payload) -> str:
    """Deterministic JSON: insertion-ordered keys, shortest round-trip floats."""
    if isinstance(payload, VerificationReport):
        payload = payload.to_dict()
    elif isinstance(payload, list):
        payload = [r.to_dict() if isinstance(r, VerificationReport) else r for r in payload]
    return json.dumps(_clean(payload), indent=2, allow_nan=False) + "\n"


def run_circle(
    d: int,
    j: Optional[int] = None,
    tol: ToleranceConfig = DEFAULT_TOL,
    timing: bool = False,
) -> VerificationReport:
    start = time.perf_counter()
    inst = C.circle_instance(d)
    eps = tol.residual_abs_eps
    js = list(range(d)) if j is None else [j]
    rep = VerificationReport("circle", d, tol)

    rep.add("bell_orthonormality", C.bell_orthonormality_residual(inst), eps)
    rep.add("w_permutes_bell_states", C.bell_permutation_residual(inst), eps)
    rep.add("p_partition", identity_partition_residual(inst.p_projectors), eps)
    rep.add("q_partition", identity_partition_residual(inst.q_projectors), eps)
    w_unit = max(np.linalg.norm(w.conj().T @ w - np.eye(inst.space_dim)) for w in inst.w_unitaries)
    rep.add("w_unitary", w_unit, eps)
    rep.add("w_group_law", C.w_group_law_residual(inst), eps)

    t1 = C.verify_theorem1(d, tol, js=js)
    rep.theorem1 = t1
    worst = max([t1.wn_vs_vj_distance] + [x for row in t1.pairwise_vj_distances for x in row])
    rep.add("theorem1_coincidence", worst if all(k == d for k in t1.dims) else math.inf, eps,
            f"dims={list(t1.dims)}")
    rep.add("dft_recovery", t1.dft_reconstruction_residual, eps)

    rep.add("graph_axioms_W", graph_axiom_residual(C.w_graph(inst, tol)), eps)
    zd = [C.circle_unitary(inst, phi) for phi in C.zd_phases(d)]
    sampled_phis = C.uniform_circle_phases(COVARIANCE_SAMPLES, seed=d)
    sampled = [C.circle_unitary(inst, phi) for phi in sampled_phis]
    for jj in js:
        g = C.orbit_graph(inst, jj, tol=tol)
        rep.add(f"graph_axioms_V{jj}", graph_axiom_residual(g), eps)
        worst_res, worst_lam = 0.0, 0.0
        for s, p in enumerate(inst.p_projectors):
            ac = check_anticlique(p, g, tol, label=f"P{s}")
            worst_res = max(worst_res, ac.max_residual)
            worst_lam = max(worst_lam, max(abs(lam - 1.0 / d) for lam in ac.scalars))
        rep.add(f"anticliques_V{jj}", worst_res, eps, f"all P_s, s=0..{d - 1}")
        rep.add(f"anticlique_lambda_V{jj}", worst_lam, eps, f"lambda=1/d={1.0 / d!r}")
        rep.add(f"covariance_zd_V{jj}", check_covariance(g, zd, tol), eps,
                "phi in 2*pi*k/d")
        rep.add(f"covariance_circle_V{jj}", check_covariance(g, sampled, tol), eps,
                f"{COVARIANCE_SAMPLES} uniform phi, seed={d}")
        rng_phis = C.uniform_circle_phases(SATURATION_OVERSAMPLE * d, seed=1000 + jj)
        over = gram_rank(C.orbit_generators(inst, jj, rng_phis), tol)
        rep.add(f"orbit_saturation_V{jj}", abs(over - g.dim), 0.0,
                f"default dim={g.dim}, {SATURATION_OVERSAMPLE * d} random phi dim={over}")
    if timing:
        rep.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
    return rep


def _y_quadruples(d: int):
    if d <= 5:
        return [(m, l, l2, m2) for m in range(d) for l in range(d)
                for l2 in range(d) for m2 in range(d)]
    rng = np.random.default_rng(d)
    return [tuple(int(x) for x in row) for row in rng.integers(0, d, size=(64, 4))]


def run_hw(d: int, tol: ToleranceConfig = DEFAULT_TOL, timing: bool = False) -> VerificationReport:
    start = time.perf_counter()
    inst = HW.hw_instance(d)
    eps = tol.residual_abs_eps
    n = inst.space_dim
    rep = VerificationReport("hw", d, tol)
    ps, pm = HW.pi_generators(inst)

    rep.add("h_orthonormality", HW.h_orthonormality_residual(inst), eps)
    rep.add("h_kronecker_shift", HW.kronecker_shift_residual(inst), eps)
    rep.add("shift_clock_commutation", HW.commutation_residual(inst.shift, inst.clock, d), eps)
    rep.add("pi_commutation", HW.commutation_residual(ps, pm, d), eps)
    orders = max(HW.order_residual(u, d) for u in (inst.shift, inst.clock, ps, pm))
    rep.add("orders", orders, eps, "S^d, M^d, pi(S)^d, pi(M)^d")
    pi_unit = max(np.linalg.norm(u.conj().T @ u - np.eye(n)) for u in (ps, pm))
    rep.add("pi_unitary", pi_unit, eps)
    rep.add("pi_shift_action", HW.pi_shift_action_residual(inst), eps)
    rep.add("y_partition", identity_partition_residual([HW.y_unit(inst, m, m) for m in range(d)]), eps)
    y_alg = 0.0
    for m, l, l2, m2 in _y_quadruples(d):
        expect = HW.y_unit(inst, m, m2) if l == l2 else 0.0
        y_alg = max(y_alg, float(np.linalg.norm(
            HW.y_unit(inst, m, l) @ HW.y_unit(inst, l2, m2) - expect)))
    rep.add("y_matrix_units", y_alg, eps)
    gens = inst.h_generators
    rep.add("h0_identity", float(np.linalg.norm(gens[0] - np.eye(n))), eps)
    rep.add("h_hermitian", max(float(np.linalg.norm(h - h.conj().T)) for h in gens), eps)

    t2 = HW.verify_theorem2(d, tol)
    rep.theorem2 = t2
    rep.add("theorem2_dimension", abs(t2.computed_dim - t2.formula_dim), 0.0,
            f"computed={t2.computed_dim} formula={t2.formula_dim}")
    rep.add("theorem2_pairing", 0.0 if t2.equal_pairs == HW.expected_pairs(d) else 1.0, 0.0,
            f"equal_pairs={[list(p) for p in t2.equal_pairs]}")

    g = HW.hw_graph(d, tol)
    rep.add("graph_axioms", graph_axiom_residual(g), eps)
    rep.add("covariance_pi", check_covariance(g, [ps, pm], tol), eps, "pi(S), pi(M)")
    rep.add("covariance_pi_shift", check_covariance(g, [ps], tol), eps, "pi(S) only")
    if timing:
        rep.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
    return rep


def run_sweep(instance: str, d_min: int, d_max: int, tol: ToleranceConfig = DEFAULT_TOL,
              timing: bool = False) -> list[VerificationReport]:
    kinds = ["circle", "hw"] if instance == "all" else [instance]
    out = []
    for d in range(d_min, d_max + 1):
        for kind in kinds:
            if kind == "circle":
                out.append(run_circle(d, tol=tol, timing=timing))
            else:
                out.append(run_hw(d, tol=tol, timing=timing))
    return out


CIRCLE_OBJECTS = ("bell_states", "p_projectors", "q_projectors", "w_unitaries")
HW_OBJECTS = ("h_vectors", "y_units", "h_generators", "pi_generators")
Y_UNITS_MAX_DIM = 8


def dump_objects(instance: str, d: int, obj: str) -> dict:
    """Matrices of one named family, with an index manifest."""
    if instance == "circle" and obj in CIRCLE_OBJECTS:
        inst = C.circle_instance(d)
        if obj == "bell_states":
            items = [((s, n), f"psi_{s}_{n}", inst.bell_states[s, n])
                     for s in range(d) for n in range(d)]
        else:
            prefix = {"p_projectors": "P", "q_projectors": "Q", "w_unitaries": "W"}[obj]
            items = [((i,), f"{prefix}_{i}", m) for i, m in enumerate(getattr(inst, obj))]
    elif instance == "hw" and obj in HW_OBJECTS:
        inst = HW.hw_instance(d)
        if obj == "h_vectors":
            items = [((k, j), f"h_{k}^{j}", inst.h_vectors[k, j])
                     for k in range(d) for j in range(d)]
        elif obj == "y_units":
            if d > Y_UNITS_MAX_DIM:
                raise ValueError(f"y_units dump is limited to d <= {Y_UNITS_MAX_DIM}")
            items = [((m, l), f"y_{m}_{l}", HW.y_unit(inst, m, l))
                     for m in range(d) for l in range(d)]
        elif obj == "h_generators":
            items = [((p,), f"h_{p}", h) for p, h in enumerate(inst.h_generators)]
        else:
            ps, pm = HW.pi_generators(inst)
            items = [((0,), "pi(S)", ps), ((1,), "pi(M)", pm)]
    else:
        raise ValueError(f"unknown object {obj!r} for instance {instance!r}")
    return {
        "schema_version": SCHEMA_VERSION,
        "instance": instance,
        "d": d,
        "object": obj,
        "basis_ordering": "|a b> at flat index a*d + b",
        "format": "row-major [re, im] pairs; vectors as columns",
        "manifest": [{"index": list(idx), "label": label} for idx, label, _ in items],
        "matrices": [matrix_to_json(m) for _, _, m in items],
    }


def summary_table(reports: list[VerificationReport]) -> str:
    lines = [f"{'instance':<8} {'d':>3} {'dim':>4} {'formula':>7}  {'pass':<5} failed checks"]
    for r in reports:
        failed = ",".join(dict.fromkeys(re.sub(r"_V\d+$", "_V*", c.name)
                                        for c in r.checks if not c.passed))
        lines.append(f"{r.instance:<8} {r.d:>3} {str(r.dim):>4} {str(r.formula_dim):>7}  "
                     f"{str(r.passed):<5} {failed}")
    return "\n".join(lines)


def checks_table(report: VerificationReport) -> str:
    width = max(len(c.name) for c in report.checks)
    lines = [f"{report.instance} d={report.d}"]
    for c in report.checks:
        mark = "ok  " if c.passed else "FAIL"
        lines.append(f"  {mark} {c.name:<{width}}  {c.metric:.3e}  {c.detail}")
    lines.append(f"  overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)
