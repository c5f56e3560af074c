import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_matrix, random_unitary
from opgraphs.circle import circle_instance, circle_unitary, orbit_graph, uniform_circle_phases, w_graph
from opgraphs.graph import (
    build_graph,
    check_anticlique,
    check_covariance,
    check_graph_axioms,
    check_identity_partition,
    graph_axiom_residual,
)
from opgraphs.heisenberg_weyl import hw_graph, hw_instance, pi_generators
from opgraphs.numerics import DegenerateProjectorError, DimensionError, PreconditionError


class TestBuildGraph:
    def test_identity(self):
        g = build_graph(3, [np.eye(3)])
        assert g.dim == 1
        assert g.residual(np.eye(3)) < 1e-14

    def test_w_generators_d3(self):
        assert w_graph(circle_instance(3)).dim == 3

    def test_h_generators_d4(self):
        assert hw_graph(4).dim == 3

    def test_errors(self):
        with pytest.raises(PreconditionError):
            build_graph(2, [])
        with pytest.raises(DimensionError):
            build_graph(2, [np.eye(3)])

    def test_generators_reconstruct(self):
        g = orbit_graph(circle_instance(4), 1)
        assert max(g.residual(a) for a in g.generators) < 1e-10

    @given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(1, 5))
    def test_dim_invariant_under_scaling_and_permutation(self, seed, n, k):
        rng = np.random.default_rng(seed)
        gens = [random_matrix(n, rng) for _ in range(k)]
        dim = build_graph(n, gens).dim
        perm = rng.permutation(k)
        scaled = [gens[i] * (rng.uniform(0.01, 100) * 1j) for i in perm]
        assert build_graph(n, scaled).dim == dim


class TestGraphAxioms:
    def test_identity_graph(self):
        assert check_graph_axioms(build_graph(2, [np.eye(2)]))

    def test_matrix_unit_fails(self):
        e01 = np.zeros((2, 2))
        e01[0, 1] = 1
        assert not check_graph_axioms(build_graph(2, [e01]))

    @pytest.mark.parametrize("d", range(2, 9))
    def test_circle_graphs(self, d):
        inst = circle_instance(d)
        for j in range(d):
            assert check_graph_axioms(orbit_graph(inst, j))

    def test_residual_is_zero_for_closed_span(self):
        # Pauli X and Z plus identity: closed under adjoints
        x = np.array([[0, 1], [1, 0]])
        z = np.diag([1, -1])
        assert graph_axiom_residual(build_graph(2, [np.eye(2), x, z])) < 1e-14


class TestIdentityPartition:
    def test_p_and_q_d3(self):
        inst = circle_instance(3)
        assert check_identity_partition(inst.p_projectors)
        assert check_identity_partition(inst.q_projectors)

    def test_identity(self):
        assert check_identity_partition([np.eye(2)])

    def test_incomplete_or_non_projector(self):
        assert not check_identity_partition([np.diag([1, 0])])
        assert not check_identity_partition([np.diag([0.5, 0.5]), np.diag([0.5, 0.5])])

    @pytest.mark.parametrize("d", range(2, 17))
    def test_circle_families(self, d):
        inst = circle_instance(d)
        assert check_identity_partition(inst.p_projectors)
        assert check_identity_partition(inst.q_projectors)


class TestCovariance:
    def test_identity_graph(self, rng):
        g = build_graph(3, [np.eye(3)])
        assert check_covariance(g, [random_unitary(3, rng) for _ in range(4)]) < 1e-14

    def test_non_unitary_rejected(self):
        g = build_graph(2, [np.eye(2)])
        with pytest.raises(PreconditionError):
            check_covariance(g, [np.diag([1.0, 2.0])])

    def test_circle_graph_under_zd(self):
        d = 4
        inst = circle_instance(d)
        us = [circle_unitary(inst, 2 * np.pi * k / d) for k in range(d)]
        assert check_covariance(orbit_graph(inst, 1), us) < 1e-10

    def test_hw_graph_under_pi_shift(self):
        ps, _ = pi_generators(hw_instance(5))
        assert check_covariance(hw_graph(5), [ps]) < 1e-10

    @pytest.mark.known_defect
    def test_circle_graph_under_sampled_phases(self):
        d = 4
        inst = circle_instance(d)
        us = [circle_unitary(inst, phi) for phi in uniform_circle_phases(16, seed=0)]
        assert check_covariance(orbit_graph(inst, 1), us) <= 1e-10

    @pytest.mark.known_defect
    def test_hw_graph_under_pi(self):
        assert check_covariance(hw_graph(5), list(pi_generators(hw_instance(5)))) <= 1e-10


class TestAnticlique:
    def test_identity(self):
        rep = check_anticlique(np.eye(2), build_graph(2, [np.eye(2)]), label="I")
        assert rep.passed
        assert rep.scalar == pytest.approx(1)
        assert rep.max_residual == 0
        assert rep.projector_label == "I"

    def test_p0_on_circle_graph_d3(self):
        inst = circle_instance(3)
        for j in range(3):
            rep = check_anticlique(inst.p_projectors[0], orbit_graph(inst, j))
            assert rep.passed
            assert len(rep.scalars) == 3
            np.testing.assert_allclose(rep.scalars, 1 / 3, atol=1e-12)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_all_bell_blocks_are_anticliques(self, d):
        inst = circle_instance(d)
        for j in range(d):
            g = orbit_graph(inst, j)
            assert all(check_anticlique(p, g).passed for p in inst.p_projectors)

    def test_failing_projector(self):
        # span{|00>, |10>}: W_1 = M (x) I compresses to diag(1, omega)
        d = 3
        p = np.zeros((d * d, d * d))
        p[0, 0] = p[d, d] = 1
        rep = check_anticlique(p, orbit_graph(circle_instance(d), 0))
        assert not rep.passed
        assert rep.max_residual > 0.1

    def test_q_projectors_are_also_anticliques(self):
        # every V_j is spanned by M^n (x) I, which acts as a scalar on each Q_j range
        inst = circle_instance(4)
        g = orbit_graph(inst, 0)
        assert all(check_anticlique(q, g).passed for q in inst.q_projectors)

    def test_preconditions(self):
        g = build_graph(2, [np.eye(2)])
        with pytest.raises(PreconditionError):
            check_anticlique(np.diag([1.0, 0.5]), g)
        with pytest.raises(DegenerateProjectorError):
            check_anticlique(np.zeros((2, 2)), g)
        with pytest.raises(DimensionError):
            check_anticlique(np.eye(3), g)

    @given(st.integers(0, 2**32 - 1))
    def test_linearity_of_compression(self, seed):
        rng = np.random.default_rng(seed)
        d = 3
        inst = circle_instance(d)
        g = orbit_graph(inst, int(rng.integers(d)))
        p = inst.p_projectors[int(rng.integers(d))]
        coeffs = rng.normal(size=len(g.span_basis)) + 1j * rng.normal(size=len(g.span_basis))
        a = sum(c * b for c, b in zip(coeffs, g.span_basis))
        lam = np.trace(p @ a @ p) / np.trace(p)
        assert np.linalg.norm(p @ a @ p - lam * p) < 1e-9
