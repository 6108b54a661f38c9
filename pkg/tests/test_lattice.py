"""
Unit tests for characteristic vectors and d-invariants of plumbings.

This module contains tests for the path operation, nice full-path starts,
the Spin^c partition and the brute-force oracle.
"""

from fractions import Fraction
from math import gcd
from typing import List

import pytest

from hf_surgery.errors import MethodInapplicableError
from hf_surgery.exactmath import form_data
from hf_surgery.lattice import (
    applicable,
    box_size,
    char_box,
    d_bruteforce,
    d_invariants,
    d_plumbing,
    descend,
    in_end_box,
    in_start_box,
    is_characteristic,
    is_nice,
    nice_full_path_starts,
    same_class,
    spinc_partition,
    square,
    step,
)
from hf_surgery.plumbing import (
    PlumbingGraph,
    linear_plumbing,
    star_graph,
    to_plumbing,
)
from hf_surgery.seifert import enumerate_elliptic, parse_seifert, reverse_orientation

E8 = star_graph(-2, [[-2], [-2, -2], [-2, -2, -2, -2]])
E6 = star_graph(-2, [[-2], [-2, -2], [-2, -2]])


def dihedral_graph(n: int) -> PlumbingGraph:
    """Plumbing of -(-1; 1/2, 1/2, 1/n): centre -2, two leaves, an (n-1)-chain."""
    return star_graph(-2, [[-2], [-2], [-2] * (n - 1)])


ORACLE_BOX_MAX = 3 ** 9


def oracle_graphs() -> List[PlumbingGraph]:
    """Lens space chains and elliptic plumbings with a small nice box."""
    graphs = [
        linear_plumbing(p, q)
        for p in range(2, 14) for q in range(1, p) if gcd(p, q) == 1
    ]
    graphs += [to_plumbing(m.data).graph for m in enumerate_elliptic(16, n_bound=9)]
    return [g for g in graphs if box_size(g, "nice") <= ORACLE_BOX_MAX]


PATH_GRAPHS = [E8, E6] + [dihedral_graph(n) for n in range(3, 10)] + [
    to_plumbing(m.data).graph for m in enumerate_elliptic(9, n_bound=7)
]


class TestStep:
    """Test cases for the path operation."""

    def test_e8_step(self):
        """Test a step at the centre of E8."""
        start = (2, 0, 0, 0, 0, 0, 0, 0)
        assert step(start, 0, E8) == (-2, 2, 2, 0, 2, 0, 0, 0)

    def test_step_not_applicable(self):
        with pytest.raises(MethodInapplicableError, match="step not applicable"):
            step((0,) * 8, 0, E8)

    def test_step_preserves_square_and_class(self):
        form = form_data(E8.intersection_form())
        start = (2, 0, 0, 0, 0, 0, 0, 0)
        after = step(start, 0, E8)
        assert square(start, form) == square(after, form)
        assert same_class(start, after, form)

    def test_applicable(self):
        assert applicable((2, 0, 2, 0, 0, 0, 0, 2), E8) == [0, 2, 7]
        assert applicable((0,) * 8, E8) == []


class TestVectorPredicates:
    """Test cases for characteristic and box predicates."""

    def test_predicates(self):
        assert is_characteristic((0,) * 8, E8)
        assert not is_characteristic((1,) + (0,) * 7, E8)
        assert is_nice((-2, 2, 0, 0, 0, 0, 0, 0), E8)
        assert not is_nice((4,) + (0,) * 7, E8)
        assert in_start_box((2,) + (0,) * 7, E8)
        assert not in_start_box((-2,) + (0,) * 7, E8)
        assert in_end_box((-2,) + (0,) * 7, E8)
        assert not in_end_box((2,) + (0,) * 7, E8)

    def test_char_box_sizes(self):
        assert len(list(char_box(E6, "start"))) == 2 ** 6
        assert len(list(char_box(E6, "nice"))) == 3 ** 6


class TestNiceFullPaths:
    """Test cases for the enumeration of nice full-path starts."""

    def test_e8_single_start(self):
        """Test that the zero vector is the only start on E8."""
        assert nice_full_path_starts(E8) == [(0,) * 8]

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_dihedral_graph_starts(self, n):
        """Test the four starts and their squares on the dihedral graph."""
        graph = dihedral_graph(n)
        size = n + 2
        zero = (0,) * size
        leaf_one = tuple(2 if i == 1 else 0 for i in range(size))
        leaf_two = tuple(2 if i == 2 else 0 for i in range(size))
        tip = tuple(2 if i == size - 1 else 0 for i in range(size))
        starts = nice_full_path_starts(graph)
        assert set(starts) == {zero, leaf_one, leaf_two, tip}

        form = form_data(graph.intersection_form())
        assert square(zero, form) == 0
        assert square(leaf_one, form) == -(n + 2)
        assert square(leaf_two, form) == -(n + 2)
        assert square(tip, form) == -4

    @pytest.mark.parametrize("graph", PATH_GRAPHS)
    def test_endpoint_independent_of_order(self, graph):
        """Test that both tie-break policies end at the same vector."""
        for start in nice_full_path_starts(graph):
            low, low_nice = descend(start, graph, "lowest")
            high, high_nice = descend(start, graph, "highest")
            assert low_nice and high_nice
            assert low[-1] == high[-1]

    def test_two_bad_vertices(self):
        """Test that graphs with two bad vertices are refused."""
        graph = PlumbingGraph(
            weights=(-1, -1, -1, -1), edges=((0, 1), (1, 2), (2, 3))
        )
        with pytest.raises(MethodInapplicableError, match="algorithm inapplicable"):
            nice_full_path_starts(graph)


class TestDInvariants:
    """Test cases for d-invariants of plumbed manifolds."""

    def test_e8_boundary(self):
        """Test that the bare E8 boundary gets d = 2."""
        assert d_plumbing(E8).multiset == (Fraction(2),)

    def test_poincare_sphere(self):
        result = d_invariants(to_plumbing(parse_seifert("(-1; 1/2, 1/3, 1/5)")))
        assert result.multiset == (Fraction(-2),)

    def test_t_type_h1_three(self):
        result = d_invariants(to_plumbing(parse_seifert("(-1; 1/2, 1/3, 1/3)")))
        assert result.multiset == (
            Fraction(-3, 2), Fraction(-1, 6), Fraction(-1, 6)
        )

    def test_o_type_h1_two(self):
        result = d_invariants(to_plumbing(parse_seifert("(-1; 1/2, 1/3, 1/4)")))
        assert result.multiset == (Fraction(-7, 4), Fraction(-1, 4))

    def test_i_type_h1_seven(self):
        result = d_invariants(to_plumbing(parse_seifert("(-1; 1/2, 1/3, 2/5)")))
        assert sorted(result.multiset) == sorted([
            Fraction(1, 14), Fraction(-3, 14), Fraction(-19, 14),
            Fraction(-1, 2), Fraction(-19, 14), Fraction(-3, 14),
            Fraction(1, 14),
        ])

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_dihedral_family(self, n):
        """Test the |H1| = 4 family against -(n+2)/4, 0, 0, -(n-2)/4."""
        data = parse_seifert(f"(-1; 1/2, 1/2, 1/{n})")
        result = d_invariants(to_plumbing(data))
        assert result.multiset == tuple(sorted([
            Fraction(-(n + 2), 4), Fraction(0), Fraction(0),
            Fraction(-(n - 2), 4),
        ]))

    def test_orientation_reversal_negates(self):
        data = parse_seifert("(-1; 1/2, 1/3, 2/5)")
        forward = d_invariants(to_plumbing(data)).multiset
        backward = d_invariants(to_plumbing(reverse_orientation(data))).multiset
        assert backward == tuple(sorted(-v for v in forward))

    def test_conjugation_symmetry(self):
        result = d_invariants(to_plumbing(parse_seifert("(-1; 1/2, 1/2, 2/3)")))
        assert len(result) == 8
        assert result.is_conjugation_symmetric()

    def test_class_count_is_determinant(self):
        """Test that the partition has |det Q| classes."""
        assert len(spinc_partition(E8)) == 1
        assert len(spinc_partition(E6)) == 3
        assert len(spinc_partition(dihedral_graph(5))) == 4


class TestOracle:
    """Test cases for the brute-force oracle."""

    @pytest.mark.parametrize("graph", [E8, E6, dihedral_graph(3), dihedral_graph(7)])
    def test_oracle_agrees_with_paths(self, graph):
        assert d_bruteforce(graph).values == d_plumbing(graph).values

    @pytest.mark.slow
    def test_oracle_agrees_on_many_graphs(self):
        """Test chains and star graphs whose nice box fits the oracle."""
        graphs = oracle_graphs()
        assert len(graphs) >= 40
        for graph in graphs:
            oracle = d_bruteforce(graph, limit=ORACLE_BOX_MAX)
            assert oracle.values == d_plumbing(graph).values, graph.weights

    def test_oracle_start_box(self):
        """Test that the start box alone already reaches every maximum."""
        assert d_bruteforce(E6, kind="start").values == d_plumbing(E6).values

    def test_oracle_reversed(self):
        result = d_bruteforce(E6, reversed=True)
        assert result.multiset == (
            Fraction(-3, 2), Fraction(-1, 6), Fraction(-1, 6)
        )

    def test_oracle_limit(self):
        with pytest.raises(MethodInapplicableError, match="oracle too large"):
            d_bruteforce(E8, limit=10)
