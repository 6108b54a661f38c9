"""
Unit tests for the surgery obstruction.

This module contains tests for candidate enumeration, torus knot
realizations, per-manifold matching and the classification scans.
"""

import pytest

from fractions import Fraction

from hf_surgery import obstruct
from hf_surgery.errors import MethodInapplicableError
from hf_surgery.knots import get_polynomial
from hf_surgery.lattice import d_bruteforce, d_invariants
from hf_surgery.obstruct import (
    AS_IS,
    BOTH,
    MIRRORED,
    NON_CYCLIC,
    Candidate,
    ConjectureRow,
    Verdict,
    candidates,
    conjecture_scan,
    dihedral_parameters,
    match_manifold,
    run_classification,
    summarize,
    torus_realizations,
)
from hf_surgery.plumbing import to_plumbing
from hf_surgery.seifert import EllipticType, parse_seifert
from hf_surgery.surgery import Slope, d_surgery


def sfs(text: str):
    return parse_seifert(text)


class TestCandidates:
    """Test cases for candidate enumeration."""

    def test_candidate_count(self):
        """Test the 18 candidate pairs at |H1| = 7."""
        pairs = candidates(7)
        assert len(pairs) == 18
        assert sum(1 for slope, _ in pairs if slope.q == 2) == 3

    def test_trivial_homology(self):
        assert candidates(1) == [(Slope(1), get_polynomial("1"))]

    def test_even_p_has_integral_slopes_only(self):
        assert all(slope.q == 1 for slope, _ in candidates(8))

    def test_invalid_p(self):
        with pytest.raises(MethodInapplicableError):
            candidates(0)


class TestTorusRealizations:
    """Test cases for Moser-based torus knot realizations."""

    def test_h1_seven(self):
        assert torus_realizations(sfs("(-1; 1/2, 1/3, 2/5)")) == [
            (5, 2, Slope(7), AS_IS),
            (3, 2, Slope(7, 2), AS_IS),
        ]

    def test_mirrored(self):
        assert torus_realizations(sfs("(-1; 1/2, 1/2, 2/3)")) == [
            (3, 2, Slope(8), MIRRORED),
        ]

    def test_no_realization(self):
        assert torus_realizations(sfs("(-1; 1/2, 1/2, 8/9)")) == []


class TestMatchManifold:
    """Test cases for match_manifold."""

    def test_poincare_sphere(self):
        report = match_manifold(sfs("(-1; 1/2, 1/3, 1/5)"))
        assert report.h1 == 1
        assert report.type is EllipticType.I
        assert report.candidates == (
            Candidate(Slope(1), get_polynomial("1"), AS_IS, (3, 2),
                      "ghiggini-genus-one"),
        )
        assert report.verdict is Verdict.CANDIDATES_FOUND
        assert report.unique

    def test_h1_seven_has_two_descriptions(self):
        report = match_manifold(sfs("(-1; 1/2, 1/3, 2/5)"))
        assert report.candidates == (
            Candidate(Slope(7, 2), get_polynomial("1"), AS_IS, (3, 2),
                      "ghiggini-genus-one"),
            Candidate(Slope(7), get_polynomial("2"), AS_IS, (5, 2),
                      "ni-zhang-T52"),
        )
        assert report.unique

    def test_mirrored_trefoil_surgery(self):
        """Test -S^3_8(T(3,2)) = (-1; 1/2, 1/2, 2/3)."""
        report = match_manifold(sfs("(-1; 1/2, 1/2, 2/3)"))
        assert [(c.slope, c.orientation, c.torus) for c in report.candidates] == [
            (Slope(8), MIRRORED, (3, 2)),
        ]

    def test_dihedral_four_surgery(self):
        report = match_manifold(sfs("(-1; 1/2, 1/2, 1/3)"))
        assert [(c.slope, c.poly, c.orientation) for c in report.candidates] == [
            (Slope(4), get_polynomial("1"), AS_IS),
        ]

    def test_not_surgery(self):
        report = match_manifold(sfs("(-1; 1/2, 1/2, 2/7)"))
        assert report.candidates == ()
        assert report.verdict is Verdict.NOT_SURGERY
        assert not report.unique

    def test_nonintegral_torus_surgery(self):
        """Test that S^3_{16/3}(T(3,2)) is pinned down by its slope."""
        report = match_manifold(sfs("(-1; 1/2, 1/2, 4/3)"))
        assert [(c.slope, c.torus, c.determined_by) for c in report.candidates] == [
            (Slope(16, 3), (3, 2), "boyer-zhang-nonintegral"),
        ]
        assert report.unique

    def test_non_canonical_input(self):
        """Test that the orientation is relative to the given presentation."""
        report = match_manifold(sfs("(-2; 1/2, 2/3, 4/5)"))
        assert [c.orientation for c in report.candidates] == [MIRRORED]

    def test_eight_ninths_is_not_surgery(self):
        """Test that (-1; 1/2, 1/2, 8/9) fails the obstruction, D8'' included.

        Both the path computation and the exhaustive oracle give -23/32 twice,
        where 32-surgery on D8'' gives 41/32 twice.
        """
        data = sfs("(-1; 1/2, 1/2, 8/9)")
        result = to_plumbing(data)
        paths = d_invariants(result).multiset
        oracle = d_bruteforce(
            result.graph, result.form, result.reversed, limit=10 ** 6
        ).multiset
        assert paths == oracle
        assert paths.count(Fraction(-23, 32)) == 2
        assert Fraction(41, 32) not in paths

        surgery = d_surgery(Slope(32), get_polynomial("8''")).multiset
        assert surgery.count(Fraction(41, 32)) == 2
        assert Fraction(-23, 32) not in surgery
        assert sorted(-v for v in surgery) != list(paths)

        report = match_manifold(data)
        assert report.h1 == 32
        assert report.candidates == ()
        assert report.verdict is Verdict.NOT_SURGERY

    def test_non_cyclic_h1_is_excluded(self):
        """Test that an even b3 dihedral manifold is excluded before matching."""
        report = match_manifold(sfs("(-1; 1/2, 1/2, 1/2)"))
        assert report.h1 == 4
        assert report.excluded == NON_CYCLIC
        assert report.candidates == ()
        assert report.verdict is Verdict.NOT_SURGERY
        assert len(report.target_d.multiset) == 4

    def test_both_orientations_are_recorded(self, monkeypatch):
        """Test that a pair matching as-is and mirrored is tagged as both."""

        class EveryValueMatches:
            def lookup(self, values):
                return [(Slope(1), get_polynomial("1"))]

        monkeypatch.setattr(
            obstruct, "_candidate_table", lambda p: EveryValueMatches()
        )
        report = match_manifold(sfs("(-1; 1/2, 1/3, 1/5)"))
        assert [(c.orientation, c.torus) for c in report.candidates] == [
            (BOTH, (3, 2)),
        ]


class TestClassification:
    """Test cases for the classification scans."""

    def test_dihedral_scan_and_conjecture(self):
        reports = run_classification(8, n_bound=15, types=[EllipticType.D])
        excluded = [r for r in reports if r.excluded]
        assert excluded and all(r.excluded == NON_CYCLIC for r in excluded)
        bearing = [dihedral_parameters(r) for r in reports if r.candidates]
        assert bearing == [(1, 3), (2, 3), (2, 5)]
        assert conjecture_scan(reports, m_max=2) == [
            ConjectureRow(m=1, largest_n=3, holds=True),
            ConjectureRow(m=2, largest_n=5, holds=True),
        ]

    def test_dihedral_parameters_rejects_other_types(self):
        report = match_manifold(sfs("(-1; 1/2, 1/3, 1/5)"))
        with pytest.raises(MethodInapplicableError):
            dihedral_parameters(report)

    @pytest.mark.slow
    def test_small_homology_scan(self):
        """Test the eight surgery descriptions with |H1| <= 9."""
        reports = run_classification(9, n_bound=15)
        assert len(reports) == 26
        summary = summarize(reports)
        assert [str(r.manifold.data) for r in summary.unique] == [
            "(-1; 1/2, 1/3, 1/5)",
            "(-1; 1/2, 1/3, 1/4)",
            "(-1; 1/2, 1/3, 1/3)",
            "(-1; 1/2, 1/2, 1/3)",
            "(-1; 1/2, 1/3, 2/5)",
            "(-1; 1/2, 1/2, 2/3)",
            "(-1; 1/2, 1/2, 2/5)",
            "(-1; 1/2, 1/3, 2/3)",
        ]
        assert summary.candidate_only == []
        assert len(summary.not_surgery) == 18
        odd_only = run_classification(9, n_bound=15, include_even_dihedral=False)
        assert len(odd_only) == 19
        assert len(summarize(odd_only).not_surgery) == 11

    @pytest.mark.slow
    def test_parallel_matches_serial(self):
        serial = run_classification(8, n_bound=9, types=[EllipticType.D])
        parallel = run_classification(
            8, n_bound=9, types=[EllipticType.D], workers=2
        )
        assert [r.candidates for r in serial] == [r.candidates for r in parallel]

    @pytest.mark.slow
    def test_small_homology_scan_full_range(self):
        """Test that b3 up to 101 adds no description with |H1| <= 9."""
        summary = summarize(run_classification(9, n_bound=101))
        assert len(summary.unique) == 8
        assert summary.candidate_only == []

    @pytest.mark.slow
    def test_dihedral_scan_up_to_32(self):
        """Test every dihedral manifold with |H1| <= 32 and b3 <= 101."""
        reports = run_classification(32, n_bound=101, types=[EllipticType.D])
        summary = summarize(reports)
        assert {dihedral_parameters(r) for r in summary.unique} == {
            (1, 3), (2, 3), (2, 5), (4, 3), (5, 3), (7, 3), (8, 3), (8, 5),
        }
        assert {dihedral_parameters(r) for r in summary.candidate_only} == {
            (3, 5), (3, 7), (4, 7), (4, 9), (5, 9), (5, 11), (6, 11),
            (6, 13), (7, 5), (7, 11), (7, 13), (7, 15), (8, 15), (8, 17),
        }
        assert (8, 9) not in {dihedral_parameters(r) for r in reports
                              if r.candidates}
        assert conjecture_scan(reports, m_max=8) == [
            ConjectureRow(m=m, largest_n=2 * m + 1, holds=True)
            for m in range(1, 9)
        ]
