import cmath
import math

import numpy as np
import pytest

from ..context import errors, graphs

new_graph = graphs.new_graph
path_graph = graphs.path_graph
cycle_graph = graphs.cycle_graph
complete_graph = graphs.complete_graph
even_cycle = graphs.even_cycle
passive_edge_graph = graphs.passive_edge_graph
merged_star_type1 = graphs.merged_star_type1
merged_star_type2 = graphs.merged_star_type2
spanning_branch_subgraph = graphs.spanning_branch_subgraph
GraphFamilyParams = graphs.GraphFamilyParams
BranchDecomposition = graphs.BranchDecomposition
HermitianGraph = graphs.HermitianGraph
degrees = graphs.degrees
n_edges = graphs.n_edges
edge_list = graphs.edge_list
is_isomorphic = graphs.is_isomorphic
restrict_to_decomposition = graphs.restrict_to_decomposition


class TestNewGraph:

    # weights are stored as given and mirrored as conjugates
    def test_phased_four_cycle_matrix(self):
        g = new_graph(4, [(1, 2, cmath.exp(1j * math.pi)), (1, 3, 1), (2, 4, 1), (3, 4, 1)])
        expected = np.array(
            [[0, -1, 1, 0], [-1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]], dtype=complex
        )
        assert np.allclose(g.weights, expected, atol=1e-15)
        assert np.array_equal(g.weights, g.weights.conj().T)

    # complex weight lands above the diagonal, its conjugate below
    def test_complex_weight_orientation(self):
        g = new_graph(2, [(1, 2, 1j)])
        assert g.weights[0, 1] == 1j
        assert g.weights[1, 0] == -1j

    # a single vertex without edges is the 1x1 zero matrix
    def test_single_vertex(self):
        g = new_graph(1, [])
        assert g.n_vertices == 1
        assert np.array_equal(g.weights, np.zeros((1, 1)))

    # the probe graph of the estimator
    def test_probe_matrix(self):
        g = new_graph(3, [(1, 2, -1), (2, 3, 1)])
        expected = np.array([[0, -1, 0], [-1, 0, 1], [0, 1, 0]], dtype=complex)
        assert np.array_equal(g.weights, expected)

    # repeated unordered pairs are rejected
    def test_duplicate_edge(self):
        with pytest.raises(errors.DuplicateEdge):
            new_graph(3, [(1, 2, 1), (2, 1, 1)])

    # self-loops are rejected
    def test_self_loop(self):
        with pytest.raises(errors.SelfLoop):
            new_graph(3, [(2, 2, 1)])

    # vertices outside 1..n are rejected
    @pytest.mark.parametrize("edge", [(0, 1, 1), (1, 4, 1), (-1, 2, 1)])
    def test_index_out_of_range(self, edge):
        with pytest.raises(errors.IndexOutOfRange):
            new_graph(3, [edge])

    # zero vertices is out of range
    def test_no_vertices(self):
        with pytest.raises(errors.IndexOutOfRange):
            new_graph(0, [])

    # domain errors carry the domain exit code
    def test_error_exit_code(self):
        with pytest.raises(errors.DomainError) as e:
            new_graph(3, [(1, 1, 1)])
        assert e.value.exit_code == 3

    # stored weights cannot be modified
    def test_read_only(self):
        g = path_graph(3)
        with pytest.raises(ValueError):
            g.weights[0, 1] = 2

    # non-Hermitian matrices are rejected
    def test_non_hermitian(self):
        with pytest.raises(errors.InvalidGraph):
            HermitianGraph(np.array([[0, 1], [2, 0]]))

    # non-zero diagonal is rejected
    def test_non_zero_diagonal(self):
        with pytest.raises(errors.InvalidGraph):
            HermitianGraph(np.eye(2))

    # equal weights give equal graphs and equal fingerprints
    def test_equality_and_fingerprint(self):
        assert path_graph(4) == new_graph(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)])
        assert path_graph(4).fingerprint == path_graph(4).fingerprint
        assert path_graph(4).fingerprint != cycle_graph(4).fingerprint


class TestSimpleFamilies:

    # path of two vertices is a single unit edge
    def test_path_two(self):
        assert np.array_equal(path_graph(2).weights, np.array([[0, 1], [1, 0]]))

    # path of one vertex has no edges
    def test_path_one(self):
        assert n_edges(path_graph(1)) == 0

    # path of five vertices
    def test_path_five(self):
        g = path_graph(5)
        assert edge_list(g) == [(1, 2), (2, 3), (3, 4), (4, 5)]
        assert list(degrees(g)) == [1, 2, 2, 2, 1]

    # rings close back to vertex 1
    def test_cycle(self):
        g = cycle_graph(5)
        assert n_edges(g) == 5
        assert list(degrees(g)) == [2] * 5
        assert g.weights[4, 0] == 1

    # complete graph has every pair
    def test_complete(self):
        assert n_edges(complete_graph(5)) == 10

    # rings need three vertices
    def test_cycle_too_small(self):
        with pytest.raises(errors.InvalidParams):
            cycle_graph(2)

    # the passive-edge graph has seven edges and decomposition {1-3, 2-3}
    def test_passive_edge_graph(self):
        g, d = passive_edge_graph()
        assert g.n_vertices == 6
        assert n_edges(g) == 7
        assert d.branches == ((1, 3), (2, 3))
        assert d.merge_vertex == 3


class TestGraphFamilyParams:

    # vertex counts of both families
    def test_vertex_counts(self):
        params = GraphFamilyParams(b=4, n=3)
        assert params.type1_vertices == 9
        assert params.type2_vertices == 6

    # parameters below the minimum are rejected
    @pytest.mark.parametrize("b, n", [(0, 3), (2, 1), (-1, 5)])
    def test_invalid(self, b, n):
        with pytest.raises(errors.InvalidParams):
            GraphFamilyParams(b=b, n=n)


class TestMergedStarType1:

    # b=4, n=3 is the nine-vertex star with branches meeting at 9
    def test_four_branch_star(self):
        g, d = merged_star_type1(GraphFamilyParams(b=4, n=3))
        assert g.n_vertices == 9
        assert d.branches == ((1, 2, 9), (3, 4, 9), (5, 6, 9), (7, 8, 9))
        assert d.source_vertices == (1, 3, 5, 7)
        assert sorted(np.flatnonzero(g.weights[8]) + 1) == [2, 4, 6, 8]
        assert n_edges(g) == 8

    # a single branch is a path
    def test_single_branch_is_path(self):
        g, _ = merged_star_type1(GraphFamilyParams(b=1, n=4))
        assert g == path_graph(4)

    # two-vertex branches make a star around the merge vertex
    def test_two_vertex_branches(self):
        g, d = merged_star_type1(GraphFamilyParams(b=3, n=2))
        assert g.n_vertices == 4
        assert list(degrees(g)) == [1, 1, 1, 3]
        assert d.branches == ((1, 4), (2, 4), (3, 4))

    # degree and edge count invariants over the family
    @pytest.mark.parametrize("b", range(1, 9))
    @pytest.mark.parametrize("n", range(2, 9))
    def test_invariants(self, b, n):
        g, d = merged_star_type1(GraphFamilyParams(b=b, n=n))
        deg = degrees(g)
        assert g.n_vertices == (n - 1) * b + 1
        assert deg[g.n_vertices - 1] == b
        assert all(deg[s - 1] == 1 for s in d.source_vertices)
        assert n_edges(g) == b * (n - 1)
        assert d.edges == {frozenset(e) for e in edge_list(g)}


class TestMergedStarType2:

    # b=2, n=3 is the four-cycle with 1 opposite 4
    def test_four_cycle(self):
        g, d = merged_star_type2(GraphFamilyParams(b=2, n=3))
        assert edge_list(g) == [(1, 2), (1, 3), (2, 4), (3, 4)]
        assert d.branches == ((1, 2, 4), (1, 3, 4))
        assert d.source_vertices == (1, 1)

    # three branches between 1 and 5
    def test_three_branches(self):
        g, _ = merged_star_type2(GraphFamilyParams(b=3, n=3))
        assert g.n_vertices == 5
        assert list(degrees(g)) == [3, 2, 2, 2, 3]

    # b=2, n=4 is isomorphic to the six-cycle
    def test_six_cycle_isomorphism(self):
        g, _ = merged_star_type2(GraphFamilyParams(b=2, n=4))
        assert is_isomorphic(g, cycle_graph(6))
        assert not is_isomorphic(g, path_graph(6))

    # even_cycle labels C_n as a two-branch doubly merged graph
    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_even_cycle(self, n):
        g, d = even_cycle(n)
        assert is_isomorphic(g, cycle_graph(n))
        assert d.n_branches == 2
        assert d.merge_vertex == n

    # degree and edge count invariants over the family
    @pytest.mark.parametrize("b", range(2, 9))
    @pytest.mark.parametrize("n", range(3, 9))
    def test_invariants(self, b, n):
        g, _ = merged_star_type2(GraphFamilyParams(b=b, n=n))
        deg = degrees(g)
        assert g.n_vertices == (n - 2) * b + 2
        assert deg[0] == b
        assert deg[g.n_vertices - 1] == b
        assert n_edges(g) == b * (n - 1)

    # a single branch or two-vertex branches cannot be doubly merged
    @pytest.mark.parametrize("b, n", [(1, 3), (3, 2)])
    def test_invalid(self, b, n):
        with pytest.raises(errors.InvalidParams):
            merged_star_type2(GraphFamilyParams(b=b, n=n))

    # odd cycles have no even labelling
    def test_odd_even_cycle(self):
        with pytest.raises(errors.InvalidParams):
            even_cycle(5)


class TestBranchDecomposition:

    # branches of different lengths are rejected
    def test_unequal_lengths(self):
        with pytest.raises(errors.InvalidDecomposition):
            BranchDecomposition(branches=((1, 3), (2, 4, 3)), merge_vertex=3)

    # branches must end at the merge vertex
    def test_wrong_merge_vertex(self):
        with pytest.raises(errors.InvalidDecomposition):
            BranchDecomposition(branches=((1, 3), (2, 3)), merge_vertex=2)

    # shared edges are rejected
    def test_shared_edge(self):
        with pytest.raises(errors.InvalidDecomposition):
            BranchDecomposition(branches=((1, 2, 3), (1, 2, 3)), merge_vertex=3)

    # vertex labels below 1 are rejected
    @pytest.mark.parametrize(
        "branches, merge_vertex",
        [(((0, 1, 3), (0, 2, 3)), 3), (((1, 0), (2, 0)), 0), (((-1, 2), (1, 2)), 2)],
    )
    def test_labels_below_one(self, branches, merge_vertex):
        with pytest.raises(errors.InvalidDecomposition):
            BranchDecomposition(branches=branches, merge_vertex=merge_vertex)

    # branch edges follow the traversal order
    def test_branch_edges(self):
        d = BranchDecomposition(branches=((1, 2, 4), (1, 3, 4)), merge_vertex=4)
        assert d.branch_edges(2) == [(1, 3), (3, 4)]
        assert d.branch_length == 3


class TestSpanningBranchSubgraph:

    # branch 1 of the nine-vertex star keeps edges 1-2 and 2-9
    def test_first_branch_of_star(self):
        g, d = merged_star_type1(GraphFamilyParams(b=4, n=3))
        sub = spanning_branch_subgraph(g, d, 1)
        assert sub.n_vertices == 9
        assert edge_list(sub) == [(1, 2), (2, 9)]

    # branch 2 of the four-cycle keeps edges 1-3 and 3-4
    def test_second_branch_of_cycle(self):
        g, d = even_cycle(4)
        assert edge_list(spanning_branch_subgraph(g, d, 2)) == [(1, 3), (3, 4)]

    # partial application waits for the branch index
    def test_curried(self):
        g, d = even_cycle(4)
        per_branch = spanning_branch_subgraph(g, d)
        assert per_branch(1) == spanning_branch_subgraph(g, d, 1)

    # branch Hamiltonians sum to the graph restricted to the decomposition
    @pytest.mark.parametrize("make", [lambda: passive_edge_graph(), lambda: even_cycle(6)])
    def test_subgraphs_sum(self, make):
        g, d = make()
        total = sum(
            spanning_branch_subgraph(g, d, p).weights for p in range(1, d.n_branches + 1)
        )
        assert np.array_equal(total, restrict_to_decomposition(g, d).weights)

    # complex weights are kept with their orientation
    def test_keeps_complex_weights(self):
        g, d = even_cycle(4)
        phased = new_graph(4, [(1, 2, 1j), (1, 3, 1), (2, 4, 1), (3, 4, 1)])
        sub = spanning_branch_subgraph(phased, d, 1)
        assert sub.weights[0, 1] == 1j
        assert sub.weights[1, 0] == -1j

    # branch index outside 1..b
    @pytest.mark.parametrize("p", [0, 3])
    def test_invalid_branch_index(self, p):
        g, d = even_cycle(4)
        with pytest.raises(errors.InvalidBranchIndex):
            spanning_branch_subgraph(g, d, p)

    # decomposition edges missing from the graph
    def test_decomposition_not_in_graph(self):
        _, d = even_cycle(4)
        with pytest.raises(errors.InvalidDecomposition):
            spanning_branch_subgraph(path_graph(4), d, 2)
