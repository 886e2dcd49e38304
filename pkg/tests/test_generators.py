"""Built-in test tensors: hypergraph Laplacians, the transition tensor
family, and the two-dimensional tensor with three positive Z-eigenpairs."""

import math

import numpy as np
import pytest

from teneig import (
    SYMMETRIC,
    DenseTensor,
    HypergraphSpec,
    InputError,
    adjacency_tensor,
    apply,
    cyclic_hypergraph,
    degree_tensor,
    is_irreducible,
    is_weakly_irreducible,
    pagerank_tensor,
    scaled_signless_laplacian,
    signless_laplacian,
    three_z_eigenpair_tensor,
    transition_tensor,
)

from conftest import apply_loops


class TestHypergraph:
    def test_cyclic_edges_m3_n4(self):
        hg = cyclic_hypergraph(3, 4)
        assert sorted(sorted(e) for e in hg.edges) == [[1, 2, 3], [2, 3, 4], [1, 3, 4]] or \
            sorted(tuple(sorted(e)) for e in hg.edges) == [(1, 2, 3), (1, 3, 4), (2, 3, 4)]

    def test_degrees_m3_n4(self):
        hg = cyclic_hypergraph(3, 4)
        assert hg.degrees() == (2, 2, 3, 2)

    def test_edge_count(self):
        for m, n in [(3, 20), (4, 20), (5, 20), (3, 50)]:
            hg = cyclic_hypergraph(m, n)
            assert len(hg.edges) == n - m + 2
            for e in hg.edges:
                assert len(e) == m
                assert all(1 <= v <= n for v in e)

    def test_rejects_small_n(self):
        with pytest.raises(InputError):
            cyclic_hypergraph(4, 3)

    def test_spec_validation(self):
        with pytest.raises(InputError):
            HypergraphSpec(3, 4, (frozenset({1, 2}),))  # wrong edge size
        with pytest.raises(InputError):
            HypergraphSpec(3, 4, (frozenset({1, 2, 9}),))  # vertex range


class TestLaplacian:
    def test_adjacency_row_sums_equal_degrees(self):
        for m, n in [(3, 4), (3, 6), (4, 6)]:
            hg = cyclic_hypergraph(m, n)
            c = adjacency_tensor(hg)
            row_sums = apply(c, np.ones(n))
            assert np.allclose(row_sums, hg.degrees(), atol=1e-12)

    def test_adjacency_entry_count_m3_n4(self):
        hg = cyclic_hypergraph(3, 4)
        c = adjacency_tensor(hg)
        nz = np.nonzero(c.entries)
        # 3 edges x 3! permutations, all of value 1/2
        assert len(nz[0]) == 18
        assert np.allclose(c.entries[nz], 0.5)

    def test_degree_tensor_is_diagonal(self):
        hg = cyclic_hypergraph(3, 4)
        d = degree_tensor(hg)
        e = d.entries.copy()
        for i, deg in enumerate(hg.degrees()):
            assert e[i, i, i] == deg
            e[i, i, i] = 0.0
        assert not e.any()

    def test_signless_laplacian_is_sum(self):
        hg = cyclic_hypergraph(4, 6)
        a = signless_laplacian(4, 6)
        want = degree_tensor(hg).entries + adjacency_tensor(hg).entries
        assert np.array_equal(a.entries, want)
        assert a.symmetry == SYMMETRIC
        assert a.check_symmetry()

    def test_scaled_weight_one_matches_unscaled(self):
        assert np.array_equal(scaled_signless_laplacian(1.0, 3, 20).entries,
                              signless_laplacian(3, 20).entries)

    def test_scaling_only_touches_off_diagonal(self):
        hg = cyclic_hypergraph(3, 6)
        a5 = scaled_signless_laplacian(5.0, 3, 6)
        want = degree_tensor(hg).entries + 5.0 * adjacency_tensor(hg).entries
        assert np.allclose(a5.entries, want)

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(InputError):
            scaled_signless_laplacian(0.0, 3, 20)
        with pytest.raises(InputError):
            scaled_signless_laplacian(-1.0, 3, 20)

    def test_laplacians_are_weakly_but_not_strictly_irreducible(self):
        # {3, 6} hits no edge pairwise for m=3 n=6, so the complement set
        # {1, 2, 4, 5} isolates the tensor under the strict definition;
        # the index digraph is still strongly connected
        for m, n in [(3, 6), (4, 6), (3, 10)]:
            a = signless_laplacian(m, n)
            assert is_weakly_irreducible(a)
            assert not is_irreducible(a)

    def test_positive_perturbation_restores_irreducibility(self):
        a = signless_laplacian(3, 6)
        ah = DenseTensor(a.entries + 1e-5)
        assert is_irreducible(ah)


class TestTransition:
    def test_fibers_sum_to_one(self):
        p = transition_tensor()
        assert p.order == 3 and p.dim == 6
        assert np.allclose(p.entries.sum(axis=0), 1.0, rtol=0, atol=1e-15)

    def test_entries_are_quarter_half_or_one(self):
        p = transition_tensor()
        vals = np.unique(p.entries[p.entries > 0])
        assert set(np.round(vals, 12)) <= {0.25, 0.5, 1.0}

    def test_pagerank_fibers_sum_to_one(self):
        for alpha in (0.9, 0.99, 0.999):
            a = pagerank_tensor(alpha)
            assert np.allclose(a.entries.sum(axis=0), 1.0, rtol=0, atol=1e-14)

    def test_pagerank_small_alpha_is_nearly_uniform(self):
        a = pagerank_tensor(1e-12)
        assert np.allclose(a.entries, 1.0 / 6.0, atol=1e-11)

    def test_pagerank_is_positive_and_irreducible(self):
        a = pagerank_tensor(0.99)
        assert a.entries.min() > 0
        assert is_irreducible(a)

    def test_pagerank_rejects_bad_alpha(self):
        for alpha in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(InputError):
                pagerank_tensor(alpha)


class TestThreeEigenpairTensor:
    def test_diagonal_entries(self):
        a = three_z_eigenpair_tensor()
        d = 4.0 / math.sqrt(3.0)
        assert a.entries[0, 0, 0, 0] == d
        assert a.entries[1, 1, 1, 1] == d

    def test_fully_symmetric(self):
        a = three_z_eigenpair_tensor()
        assert a.symmetry == SYMMETRIC
        assert a.check_symmetry()

    def test_known_eigenpair_uniform(self):
        a = three_z_eigenpair_tensor()
        x = np.array([1.0, 1.0]) / math.sqrt(2)
        lam = 2 + 2 / math.sqrt(3)
        assert np.allclose(apply(a, x), lam * x, atol=1e-12)

    def test_known_eigenpair_tilted(self):
        a = three_z_eigenpair_tensor()
        lam = 11 / (2 * math.sqrt(3))
        for x in (np.array([math.sqrt(3) / 2, 0.5]),
                  np.array([0.5, math.sqrt(3) / 2])):
            assert np.allclose(apply(a, x), lam * x, atol=1e-12)

    def test_polynomial_coefficients(self):
        # (A x^3)_1 = c x1^3 + 3 x1^2 x2 + x2^3 with c = 4/sqrt(3)
        a = three_z_eigenpair_tensor()
        c = 4.0 / math.sqrt(3.0)
        rng = np.random.default_rng(7)
        for _ in range(10):
            x1, x2 = rng.uniform(-1.5, 1.5, size=2)
            y = apply_loops(a.entries, np.array([x1, x2]))
            assert np.isclose(y[0], c * x1 ** 3 + 3 * x1 ** 2 * x2 + x2 ** 3, atol=1e-12)
            assert np.isclose(y[1], x1 ** 3 + 3 * x1 * x2 ** 2 + c * x2 ** 3, atol=1e-12)

    def test_irreducible(self):
        assert is_irreducible(three_z_eigenpair_tensor())
