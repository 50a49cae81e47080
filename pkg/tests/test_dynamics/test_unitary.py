import importlib
import math

import numpy as np
import pytest

from ..context import (
    chiral,
    constants,
    dynamics,
    errors,
    fig7_graph,
    fixture_graphs,
    graphs,
    phased_c4,
    phased_passive_graph,
    random_hermitian_graph,
    random_state,
)

build_propagator = dynamics.build_propagator
unitary = dynamics.unitary
unitary_module = importlib.import_module("chiral_qw.dynamics.unitary")
evolve = dynamics.evolve
evolve_amplitudes = dynamics.evolve_amplitudes
trace_probabilities = dynamics.trace_probabilities
check_trs = dynamics.check_trs
taylor_oracle = dynamics.taylor_oracle
matrix_exponential = dynamics.matrix_exponential
site_transfer_probabilities = dynamics.site_transfer_probabilities
basis_state = dynamics.basis_state
uniform_superposition = dynamics.uniform_superposition
time_grid = dynamics.time_grid


class TestBuildPropagator:

    # spectrum of a single edge
    def test_single_edge(self):
        p = build_propagator(graphs.path_graph(2))
        assert np.allclose(p.eigenvalues, [-1, 1], atol=1e-12)

    # spectrum of the unphased four-cycle
    def test_four_cycle(self):
        p = build_propagator(graphs.cycle_graph(4))
        assert np.allclose(p.eigenvalues, [-2, 0, 0, 2], atol=1e-12)

    # a lone vertex has eigenvalue 0
    def test_single_vertex(self):
        p = build_propagator(graphs.new_graph(1, []))
        assert np.array_equal(p.eigenvalues, [0.0])

    # the factorization reproduces the Hamiltonian with unitary eigenvectors
    @pytest.mark.parametrize("name", list(fixture_graphs()))
    def test_reconstruction(self, name):
        g = fixture_graphs()[name]
        p = build_propagator(g)
        V = p.eigenvectors
        assert np.max(np.abs(p.hamiltonian - g.weights)) <= 1e-10
        assert np.max(np.abs(V.conj().T @ V - np.eye(g.n_vertices))) <= 1e-10
        assert np.all(np.diff(p.eigenvalues) >= 0)

    # the pivot is the first component within the tie tolerance of the largest modulus
    def test_phase_fixing(self):
        V = build_propagator(fig7_graph()[0]).eigenvectors
        moduli = np.abs(V)
        rows = np.argmax(moduli >= moduli.max(axis=0) - constants.PIVOT_TIE_TOL, axis=0)
        pivots = V[rows, np.arange(V.shape[1])]
        assert np.all(pivots.real > 0)
        assert np.allclose(pivots.imag, 0, atol=1e-15)

    # near-equal moduli pick the lower index, not the rounding winner
    def test_phase_fixing_ties(self):
        column = np.array([[np.exp(0.7j)], [np.exp(-1.9j) * (1 + 1e-14)]]) / np.sqrt(2)
        fixed = unitary_module._fix_phases(column)
        assert fixed[0, 0].real > 0 and abs(fixed[0, 0].imag) < 1e-15
        assert abs(fixed[1, 0] - np.exp(-2.6j) * (1 + 1e-14) / np.sqrt(2)) < 1e-15

    # equal-modulus eigenvectors of a single edge are fixed on their first component
    def test_phase_fixing_equal_moduli(self):
        V = build_propagator(graphs.path_graph(2)).eigenvectors
        assert np.all(V[0].real > 0)
        assert np.allclose(V[0].imag, 0, atol=1e-15)

    # the graph fingerprint is carried along
    def test_fingerprint(self):
        g = graphs.path_graph(3)
        assert build_propagator(g).fingerprint == g.fingerprint

    # LAPACK failures surface as decomposition failures
    def test_decomposition_failure(self, mocker):
        mocker.patch("scipy.linalg.eigh", side_effect=np.linalg.LinAlgError("no convergence"))
        with pytest.raises(errors.DecompositionFailure):
            build_propagator(graphs.path_graph(3))


class TestEvolve:

    # t = 0 returns the initial state unchanged
    def test_zero_time(self):
        p = build_propagator(graphs.cycle_graph(5))
        psi0 = random_state(5, np.random.default_rng(0))
        assert evolve(p, psi0, 0.0) is psi0
        assert np.array_equal(unitary(p, 0.0), np.eye(5))

    # complete transfer across one edge at t = pi/2
    def test_single_edge_transfer(self):
        p = build_propagator(graphs.path_graph(2))
        psi = evolve(p, basis_state(2, 1), math.pi / 2)
        assert abs(abs(psi.amplitudes[1]) - 1) < 1e-12

    # closed form cos t |1> - i sin t |2> on a single edge
    def test_single_edge_closed_form(self):
        p = build_propagator(graphs.path_graph(2))
        psi = evolve(p, basis_state(2, 1), 0.7)
        assert np.allclose(psi.amplitudes, [math.cos(0.7), -1j * math.sin(0.7)], atol=1e-12)

    # phase pi on the four-cycle suppresses vertex 4
    def test_four_cycle_suppression(self):
        p = build_propagator(phased_c4()[0])
        assert abs(evolve(p, basis_state(4, 1), 1.0).amplitudes[3]) ** 2 < 1e-20

    # states of the wrong dimension are rejected
    def test_dimension_mismatch(self):
        p = build_propagator(graphs.path_graph(3))
        with pytest.raises(errors.DimensionMismatch):
            evolve(p, basis_state(4, 1), 1.0)

    # non-finite times are rejected
    def test_non_finite_time(self):
        p = build_propagator(graphs.path_graph(3))
        with pytest.raises(errors.InvalidTimeGrid):
            evolve(p, basis_state(3, 1), math.nan)

    # norm is preserved
    def test_norm(self):
        p = build_propagator(random_hermitian_graph(7, np.random.default_rng(5)))
        psi = evolve(p, random_state(7, np.random.default_rng(6)), 3.3)
        assert abs(np.linalg.norm(psi.amplitudes) - 1) < 1e-12

    # U(t) is unitary for random graphs and times
    @pytest.mark.parametrize("seed", range(100))
    def test_unitarity(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 11))
        U = unitary(build_propagator(random_hermitian_graph(n, rng)), rng.uniform(-10, 10))
        assert np.max(np.abs(U.conj().T @ U - np.eye(n))) < 1e-10

    # evolving by t1 then t2 equals evolving by t1 + t2
    @pytest.mark.parametrize("seed", range(10))
    def test_composition(self, seed):
        rng = np.random.default_rng(seed)
        p = build_propagator(random_hermitian_graph(6, rng))
        psi0 = random_state(6, rng)
        t1, t2 = rng.uniform(-5, 5, size=2)
        composed = evolve(p, evolve(p, psi0, t1), t2).amplitudes
        assert np.max(np.abs(composed - evolve(p, psi0, t1 + t2).amplitudes)) < 1e-10

    # running the walk backwards restores the initial state
    @pytest.mark.parametrize("name", list(fixture_graphs()))
    def test_time_reversal(self, name):
        g = fixture_graphs()[name]
        p = build_propagator(g)
        psi0 = random_state(g.n_vertices, np.random.default_rng(1))
        restored = evolve(p, evolve(p, psi0, 4.2), -4.2)
        assert np.max(np.abs(restored.amplitudes - psi0.amplitudes)) < 1e-10

    # spectral propagation agrees with scaling and squaring
    @pytest.mark.parametrize("name", list(fixture_graphs()))
    def test_matches_matrix_exponential(self, name):
        g = fixture_graphs()[name]
        U = unitary(build_propagator(g), 2.5)
        assert np.max(np.abs(U - matrix_exponential(g, 2.5))) < 1e-10

    # transfer probabilities from vertex 1 of a single edge
    def test_site_transfer_probabilities(self):
        stp = site_transfer_probabilities(build_propagator(graphs.path_graph(2)), 0.4)
        assert np.allclose(stp.sum(axis=0), 1)
        assert stp[1, 0] == pytest.approx(math.sin(0.4) ** 2)


class TestTaylorOracle:

    # agrees with spectral propagation on a path
    def test_path(self):
        g = graphs.path_graph(5)
        psi0 = random_state(5, np.random.default_rng(2))
        expected = evolve(build_propagator(g), psi0, 2.0)
        result = taylor_oracle(g, psi0, 2.0, terms=80)
        assert np.max(np.abs(result.amplitudes - expected.amplitudes)) < 1e-10

    # t = 0 gives the initial amplitudes
    def test_zero_time(self):
        psi0 = random_state(4, np.random.default_rng(3))
        result = taylor_oracle(graphs.cycle_graph(4), psi0, 0.0, terms=50)
        assert np.array_equal(result.amplitudes, psi0.amplitudes)

    # agrees with spectral propagation on every fixture graph
    @pytest.mark.parametrize("name", list(fixture_graphs()))
    @pytest.mark.parametrize("t", [0.5, 2.0, 5.0])
    def test_fixture_graphs(self, name, t):
        g = fixture_graphs()[name]
        psi0 = random_state(g.n_vertices, np.random.default_rng(4))
        expected = evolve(build_propagator(g), psi0, t)
        result = taylor_oracle(g, psi0, t, terms=150)
        assert np.max(np.abs(result.amplitudes - expected.amplitudes)) < 1e-9

    # too few terms
    def test_too_few_terms(self):
        with pytest.raises(errors.ConvergenceDomain):
            taylor_oracle(graphs.path_graph(3), basis_state(3, 1), 1.0, terms=49)

    # times outside the convergence domain
    def test_outside_domain(self):
        with pytest.raises(errors.ConvergenceDomain):
            taylor_oracle(graphs.complete_graph(6), basis_state(6, 1), 7.0)

    # states of the wrong dimension are rejected
    def test_dimension_mismatch(self):
        with pytest.raises(errors.DimensionMismatch):
            taylor_oracle(graphs.path_graph(3), basis_state(2, 1), 1.0)


class TestTraceProbabilities:

    # times = [0] gives the indicator of the start vertex
    def test_initial_row(self):
        trace = trace_probabilities(
            build_propagator(graphs.cycle_graph(5)), basis_state(5, 3), [0.0]
        )
        assert np.array_equal(trace.probs, [[0, 0, 1, 0, 0]])

    # walker never reaches 9 on the phased star
    def test_star_zero_transfer(self):
        trace = trace_probabilities(
            build_propagator(fig7_graph()[0]),
            uniform_superposition(9, [1, 3, 5, 7]),
            time_grid(0, 5, 0.01),
        )
        assert trace.probs.shape == (501, 9)
        assert trace.vertex(9).max() < 1e-18
        assert np.max(np.abs(trace.probs.sum(axis=1) - 1)) < 1e-10

    # walker never reaches 4 on the phased four-cycle but does move
    def test_four_cycle_zero_transfer(self):
        trace = trace_probabilities(
            build_propagator(phased_c4()[0]), basis_state(4, 1), time_grid(0, 10, 0.01)
        )
        assert trace.vertex(4).max() < 1e-18
        assert trace.vertex(2).max() > 0.1

    # the passive-edge graph stays in its initial state
    def test_passive_edge_frozen(self):
        trace = trace_probabilities(
            build_propagator(phased_passive_graph()[0]),
            uniform_superposition(6, [1, 2]),
            time_grid(0, 10, 0.01),
        )
        assert trace.probs[:, 2:].max() < 1e-18
        assert np.max(np.abs(trace.probs[:, :2] - 0.5)) < 1e-10

    # a row does not depend on the rest of the grid
    def test_rows_independent(self):
        p = build_propagator(fig7_graph()[0])
        psi0 = uniform_superposition(9, [1, 3, 5, 7])
        full = evolve_amplitudes(p, psi0, [0.0, 1.0, 2.5])
        single = evolve_amplitudes(p, psi0, [2.5])
        assert np.max(np.abs(full[2] - single[0])) < 1e-14

    # non-increasing grids are rejected
    def test_invalid_grid(self):
        with pytest.raises(errors.InvalidTimeGrid):
            trace_probabilities(
                build_propagator(graphs.path_graph(2)), basis_state(2, 1), [0.0, 1.0, 1.0]
            )


class TestZeroTransferFamilies:

    # planned phases suppress the merge vertex for every family member
    @pytest.mark.parametrize(
        "family, b, n",
        [("type1", b, n) for b in range(2, 7) for n in range(2, 7)]
        + [("type2", b, n) for b in range(2, 7) for n in range(3, 7)],
    )
    def test_planned_phases(self, family, b, n):
        make = graphs.merged_star_type1 if family == "type1" else graphs.merged_star_type2
        g, d = make(graphs.GraphFamilyParams(b=b, n=n))
        phased = chiral.apply_phases(g, chiral.plan_zero_transfer(d))
        trace = trace_probabilities(
            build_propagator(phased),
            dynamics.branch_initial_state(d, g.n_vertices),
            time_grid(0, 10, 0.01),
        )
        assert trace.vertex(d.merge_vertex).max() < 1e-18

    # phases violating the condition let the walker reach the merge vertex
    @pytest.mark.parametrize(
        "make",
        [
            lambda: graphs.even_cycle(4),
            lambda: graphs.merged_star_type1(graphs.GraphFamilyParams(b=3, n=3)),
        ],
    )
    def test_random_phases_transfer(self, make):
        g, d = make()
        rng = np.random.default_rng(21)
        first_edges = [d.branch_edges(p)[0] for p in range(1, d.n_branches + 1)]
        checked = 0
        for _ in range(10):
            a = chiral.random_phases(first_edges, rng)
            if chiral.zero_transfer_residual(chiral.branch_phase_sums(d, a)) <= 0.1:
                continue
            trace = trace_probabilities(
                build_propagator(chiral.apply_phases(g, a)),
                dynamics.branch_initial_state(d, g.n_vertices),
                time_grid(0, 10, 0.01),
            )
            assert trace.vertex(d.merge_vertex).max() > 1e-6
            checked += 1
        assert checked > 0

    # a single branch has residual exactly 1
    @pytest.mark.parametrize("s", [0.0, math.pi / 2, math.pi])
    def test_single_branch_residual(self, s):
        assert chiral.zero_transfer_residual(chiral.BranchPhaseSums((s,))) == 1.0


class TestCheckTRS:

    # unphased graphs have symmetric transfer probabilities
    @pytest.mark.parametrize(
        "g", [graphs.path_graph(5), graphs.cycle_graph(5), graphs.complete_graph(4)]
    )
    def test_real_graphs(self, g):
        holds, violation = check_trs(build_propagator(g), np.arange(0.5, 5.01, 0.5))
        assert holds
        assert violation < 1e-12

    # bipartite cycles keep the symmetry for any phases
    @pytest.mark.parametrize("n", [4, 6])
    @pytest.mark.parametrize("seed", range(50))
    def test_bipartite_random_phases(self, n, seed):
        g = graphs.cycle_graph(n)
        a = chiral.random_phases(graphs.edge_list(g), np.random.default_rng(seed))
        holds, violation = check_trs(
            build_propagator(chiral.apply_phases(g, a)), np.arange(0.5, 5.01, 0.5)
        )
        assert holds
        assert violation < 1e-10

    # a phased triangle breaks the symmetry
    def test_phased_triangle(self):
        g = chiral.apply_phases(
            graphs.complete_graph(3), chiral.ChiralPhaseAssignment({(1, 2): math.pi / 2})
        )
        holds, violation = check_trs(build_propagator(g), [1.0])
        assert not holds
        assert violation > 0.01

    # no times means no violation
    def test_empty_times(self):
        assert check_trs(build_propagator(graphs.path_graph(2)), []) == (True, 0.0)
