"""Plane-curve geometry: singularities, intersection numbers, the quadratic
transformation, weak contact certificates, and arrangement fingerprints."""

import pytest

from contactconics import (
    CASE_S,
    CUSP,
    InfiniteMultiplicityError,
    NODE,
    PlaneCurve,
    PlanePoint,
    PreconditionError,
    arrangement_fingerprint,
    classify_tangent_case,
    contact_conic_type,
    cremona_point,
    cremona_transform,
    intersection_multiplicity,
    is_weak_contact,
    parse_point,
    parse_triform,
)


def curve(text: str) -> PlaneCurve:
    return PlaneCurve(parse_triform(text))


def point(text: str) -> PlanePoint:
    return PlanePoint.from_triple(parse_point(text))


CONIC = curve("X*Z - T^2")
ORIGIN = point("[0, 0, 1]")


# -- singular points ---------------------------------------------------------


def test_quartic_singularities(example):
    found = {p: kind for p, kind in example.quartic.singular_points()}
    assert found == {
        example.nodes[0]: NODE,
        example.nodes[1]: NODE,
        example.cusp: CUSP,
    }


def test_cuspidal_cubic_classification():
    cubic = curve("X^2*Z - T^3")
    records = cubic.singular_points()
    assert records == [(ORIGIN, CUSP)]


def test_nodal_cubic_classification():
    cubic = curve("X^2*Z - T^2*Z - T^3")
    records = cubic.singular_points()
    assert records == [(ORIGIN, NODE)]


def test_smooth_conic_has_no_singular_points():
    assert CONIC.singular_points() == []


# -- intersection multiplicity ----------------------------------------------


def test_transverse_lines_meet_once():
    assert intersection_multiplicity(curve("T"), curve("X"), ORIGIN) == 1


def test_tangent_line_meets_conic_twice():
    assert intersection_multiplicity(CONIC, curve("X"), ORIGIN) == 2


def test_multiplicity_is_symmetric():
    assert intersection_multiplicity(CONIC, curve("X"), ORIGIN) == intersection_multiplicity(
        curve("X"), CONIC, ORIGIN
    )


def test_multiplicity_zero_off_the_curves():
    away = point("[1, 1, 1]")
    assert intersection_multiplicity(curve("T"), curve("X"), away) == 0


def test_multiplicity_additive_under_products():
    line = curve("X")
    through = curve("T")
    product = curve("X*T")
    expected = intersection_multiplicity(CONIC, line, ORIGIN) + intersection_multiplicity(
        CONIC, through, ORIGIN
    )
    assert intersection_multiplicity(CONIC, product, ORIGIN) == expected == 3


def test_common_component_is_rejected():
    with_component = curve("(X*Z - T^2)*X")
    with pytest.raises(InfiniteMultiplicityError):
        intersection_multiplicity(CONIC, with_component, ORIGIN)


def test_cusp_counts_with_multiplicity():
    cubic = curve("X^2*Z - T^3")
    assert intersection_multiplicity(cubic, curve("X"), ORIGIN) == 3
    assert intersection_multiplicity(cubic, curve("T"), ORIGIN) == 2


# -- the standard quadratic transformation -----------------------------------


def test_coordinate_triangle_transform_is_an_involution():
    triangle = (curve("T"), curve("X"), curve("Z"))
    original = curve("X*Z - T^2 + T*Z")
    once = cremona_transform(original, triangle)
    twice = cremona_transform(once, triangle)
    assert twice.form.is_proportional(original.form)


def test_worked_example_transform_regressions(example):
    image = cremona_transform(example.conic, example.triangle)
    assert image.form.is_proportional(example.quartic_image.form)
    line_image = cremona_transform(example.tangent_line, example.triangle)
    assert line_image.form.is_proportional(example.conic_image.form)


def test_point_map_matches_curve_map(example):
    assert cremona_point(example.triangle, example.tangency_point) == example.marked_point


def test_concurrent_triangle_is_rejected():
    with pytest.raises(PreconditionError):
        cremona_transform(CONIC, (curve("T"), curve("X"), curve("T + X")))


# -- weak contact ------------------------------------------------------------


def test_contact_conics_have_even_certificates(example):
    for name in ("Cbar", "C0", "C1", "C2"):
        certificate = is_weak_contact(example.quartic, example.curve(name))
        assert certificate.is_weak, name
        assert certificate.bezout_total == 8, name
        for cls in certificate.classes:
            assert cls.multiplicity % 2 == 0, name
        for contact in certificate.infinity:
            assert contact.multiplicity % 2 == 0, name


def test_non_contact_conic_fails_with_odd_class(example):
    from contactconics import parse_bipoly, TriForm

    chart = parse_bipoly("x - t^2 - 1")
    conic = PlaneCurve(TriForm.homogenize(chart, 2))
    certificate = is_weak_contact(example.quartic, conic)
    assert not certificate.is_weak
    assert certificate.bezout_total == 8
    odd = [c for c in certificate.classes if c.multiplicity % 2 == 1]
    odd += [c for c in certificate.infinity if c.multiplicity % 2 == 1]
    assert odd


def test_conic_types_of_the_example_conics(example):
    types = {
        name: contact_conic_type(example.quartic, example.curve(name))
        for name in ("Cbar", "C0", "C1", "C2")
    }
    assert types == {"Cbar": 5, "C0": 1, "C1": 1, "C2": 1}


def test_type_table_needs_the_right_singularities():
    with pytest.raises(PreconditionError):
        contact_conic_type(curve("X^2*Z - T^3"), CONIC)


# -- tangent-line cases -------------------------------------------------------


def test_distinguished_tangency_is_a_simple_case(example):
    assert classify_tangent_case(example.quartic, point("[0, 1, 0]")) == CASE_S


def test_tangent_case_rejects_singular_and_off_curve_points(example):
    with pytest.raises(PreconditionError):
        classify_tangent_case(example.quartic, example.cusp)
    with pytest.raises(PreconditionError):
        classify_tangent_case(example.quartic, point("[17, 1, 1]"))


# -- arrangement fingerprints -------------------------------------------------


def test_fingerprint_is_deterministic(example):
    first = arrangement_fingerprint(example.arrangement("B11"))
    second = arrangement_fingerprint(example.arrangement("B11"))
    assert first == second


def test_companion_swap_pairs_share_fingerprints(example):
    assert arrangement_fingerprint(example.arrangement("B11")) == arrangement_fingerprint(
        example.arrangement("B21")
    )
    assert arrangement_fingerprint(example.arrangement("B22")) == arrangement_fingerprint(
        example.arrangement("B12")
    )


def test_fingerprint_separates_different_local_geometry(example):
    # Cbar meets C0 tangentially at the cusp but meets C1 transversely there,
    # so these two arrangements genuinely differ in this invariant.
    assert arrangement_fingerprint(example.arrangement("D0")) != arrangement_fingerprint(
        example.arrangement("D1")
    )
