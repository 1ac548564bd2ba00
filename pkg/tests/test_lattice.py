"""Case lattices: target heights, short-vector enumeration, pair reports."""

from fractions import Fraction

import pytest

from contactconics import (
    CASE_I,
    CASE_II,
    CASE_III,
    CASE_IV,
    CASE_NAMES,
    CASES,
    PAIR_NAMES,
    PreconditionError,
    count_by_type,
    enumerate_height_vectors,
    main_theorem_rows,
    smith_invariants,
    target_height,
    vectors_for_type,
    zariski_pair_report,
)
from contactconics.lattice import extends_to_basis, integer_rank

F = Fraction


def test_case_constants_are_audited_on_import():
    assert [case.name for case in (CASE_I, CASE_II, CASE_III, CASE_IV)] == list(CASE_NAMES)
    assert CASE_I.rank == 3
    assert CASE_II.rank == CASE_III.rank == CASE_IV.rank == 2


def test_norms_match_the_gram_data():
    assert CASE_I.norm((1, 0, 0)) == F(1, 3)
    assert CASE_I.norm((1, -1, 0)) == F(1, 3)
    assert CASE_III.norm((1, 3)) == F(1, 5) + 2 * 3 * F(1, 10) + 9 * F(3, 10)
    assert CASE_IV.norm((0, 2)) == F(1, 3)


def test_target_heights():
    assert target_height(CASE_I, 1) == F(4, 3)
    assert target_height(CASE_I, 2) == F(3, 2)
    assert target_height(CASE_I, 3) == F(5, 6)
    assert target_height(CASE_I, 4) == F(1)
    assert target_height(CASE_I, 5) == F(1, 3)
    assert target_height(CASE_I, 6) == F(2)
    # cases without the needed finite fibers have no target at all
    for conic_type in (1, 3, 5):
        assert target_height(CASE_III, conic_type) is None
    for conic_type in (4, 5):
        assert target_height(CASE_IV, conic_type) is None
    with pytest.raises(PreconditionError):
        target_height(CASE_I, 7)


def test_enumeration_is_symmetric_and_canonical():
    vectors = enumerate_height_vectors(CASE_I, F(3, 2))
    for vector in vectors:
        flipped = tuple(-c for c in vector)
        first_nonzero = next(c for c in vector if c)
        assert first_nonzero > 0
        assert flipped not in vectors
        assert CASE_I.norm(vector) == F(3, 2)
    with pytest.raises(PreconditionError):
        enumerate_height_vectors(CASE_I, F(0))


def test_lemma_vector_lists():
    assert vectors_for_type(CASE_I, 1) == [(0, 2, 0), (2, -2, 0), (2, 0, 0)]
    assert vectors_for_type(CASE_I, 2) == [(1, -2, -1), (1, -2, 1), (2, -1, -1), (2, -1, 1)]
    assert vectors_for_type(CASE_I, 3) == [(0, 1, -1), (0, 1, 1), (1, 0, -1), (1, 0, 1)]
    assert vectors_for_type(CASE_I, 4) == [(1, 1, 0)]
    assert vectors_for_type(CASE_I, 5) == [(1, -1, 0)]
    assert vectors_for_type(CASE_I, 6) == [(0, 0, 2)]
    assert vectors_for_type(CASE_II, 1) == [(2, 2)]
    assert vectors_for_type(CASE_II, 2) == [(0, 3), (3, 0)]
    assert vectors_for_type(CASE_II, 3) == [(1, -2), (2, -1)]
    assert vectors_for_type(CASE_II, 5) == [(1, 1)]
    assert vectors_for_type(CASE_III, 2) == [(2, 1), (3, -1)]
    assert vectors_for_type(CASE_III, 4) == [(1, -2)]
    assert vectors_for_type(CASE_IV, 1) == [(0, 4)]
    assert vectors_for_type(CASE_IV, 3) == [(1, -2), (1, 2)]
    assert vectors_for_type(CASE_IV, 6) == [(2, 0)]


def test_main_theorem_table():
    rows = dict(main_theorem_rows())
    assert rows == {
        "I": (3, 4, 4, 1, 1, 1),
        "II": (1, 2, 2, 0, 1, 0),
        "III": (0, 2, 0, 1, 0, 0),
        "IV": (1, 0, 2, 0, 0, 1),
    }
    for name, counts in rows.items():
        assert count_by_type(CASES[name]) == counts


def test_combination_labels():
    assert CASE_I.combination_label((1, -2, 1)) == "[1]P1 + [-2]P2 + [1]P3"
    assert CASE_I.combination_label((0, 0, 0)) == "O"
    assert CASE_IV.combination_label((0, 4)) == "[4]P2"


# -- integer lattice helpers ---------------------------------------------------


def test_smith_invariants():
    assert smith_invariants([[1, 0, 0], [0, 1, 0]]) == [1, 1]
    assert smith_invariants([[2, 0, 0], [0, 1, 0]]) == [1, 2]
    assert smith_invariants([[6, 4], [4, 6]]) == [2, 10]
    assert smith_invariants([[2, 4, 4]]) == [2]
    with pytest.raises(PreconditionError):
        smith_invariants([[1, 2], [3]])


def test_rank_and_basis_extension():
    assert integer_rank([[1, 0, 0], [2, 0, 0]]) == 1
    assert extends_to_basis([[1, 0, 0], [-1, 1, 0]])
    assert not extends_to_basis([[2, 0, 0], [0, 1, 0]])
    assert not extends_to_basis([[1, 0, 0], [2, 0, 0]])


# -- arrangement pair reports ---------------------------------------------------


def test_all_pairs_verify_their_lattice_hypotheses():
    for pair_id in PAIR_NAMES:
        report = zariski_pair_report(pair_id)
        assert report.all_lattice_checks_pass, pair_id
        assert "cited, not re-proved" in report.conclusion


def test_pair_kinds_and_fingerprints():
    companion = {"B11-B21", "B22-B12"}
    for pair_id in PAIR_NAMES:
        report = zariski_pair_report(pair_id)
        if pair_id in companion:
            assert report.swapped == "companion curve"
        else:
            assert report.swapped == "contact conic"
    # the conic-swap pairs around Cbar genuinely differ in this fingerprint
    assert not zariski_pair_report("D0-D1").fingerprints_equal
    assert not zariski_pair_report("D0-D2").fingerprints_equal
    assert zariski_pair_report("B11-B21").fingerprints_equal


def test_unknown_pair_is_rejected():
    with pytest.raises(PreconditionError):
        zariski_pair_report("B11-B99")


def test_report_renders_deterministically():
    first = zariski_pair_report("B11-B10").render()
    second = zariski_pair_report("B11-B10").render()
    assert first == second
    assert first.startswith("pair B11-B10:")
