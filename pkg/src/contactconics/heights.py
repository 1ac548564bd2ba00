"""Height pairing on sections: chi = 1, intersection numbers, fiber corrections.

The pairing is <P, Q> = chi + P.O + Q.O - P.Q - sum_v contr_v(P, Q), with the
diagonal case <P, P> = 2 chi + 2 P.O - sum_v contr_v(P).  Section-section
intersections are taken on the smooth model: at a singular Weierstrass point
the walk follows strict transforms until the sections separate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IntegrityError, PreconditionError, UnsupportedSectionError
from .field import ZERO
from .poly import BiPoly, Poly, k_rational_roots, poly_gcd, squarefree_decomposition
from .surface import (
    FiberCollection,
    FiberInfo,
    Section,
    WeierstrassModel,
    classify_fibers,
    component_index,
)

_X_DEGREE_LIMIT = 2
_Y_DEGREE_LIMIT = 3
_WALK_LIMIT = 64


def component_contribution(count: int, i: int, j: int) -> Fraction:
    """Correction term for components i and j of a fiber with `count` components."""
    low, high = min(i, j), max(i, j)
    if low < 0 or high >= count:
        raise PreconditionError(
            f"component indices ({i}, {j}) out of range for a {count}-component fiber"
        )
    if low == 0:
        return Fraction(0)
    return Fraction(low * (count - high), count)


def contribution(fiber: FiberInfo, i: int, j: int) -> Fraction:
    """Correction term for sections meeting components i and j of one fiber."""
    return component_contribution(fiber.m_v, i, j)


@dataclass(frozen=True, slots=True)
class HeightContext:
    """Model data shared by every height computation."""

    model: WeierstrassModel
    fibers: FiberCollection
    chi: int = 1

    @classmethod
    def for_model(cls, model: WeierstrassModel) -> "HeightContext":
        return cls(model, classify_fibers(model))


def _stratum_pair(point: Section) -> tuple[Poly, Poly]:
    if not (point.x.is_polynomial() and point.y.is_polynomial()):
        raise UnsupportedSectionError("intersection numbers need polynomial sections")
    x, y = point.x.as_poly(), point.y.as_poly()
    if x.degree > _X_DEGREE_LIMIT or y.degree > _Y_DEGREE_LIMIT:
        raise UnsupportedSectionError(
            "section leaves the stratum (deg x <= 2, deg y <= 3) with P.O = 0"
        )
    return x, y


def _local_order(surface: BiPoly, xp: Poly, yp: Poly, xq: Poly, yq: Poly, depth: int) -> int:
    """Intersection order of two section germs meeting at the origin of the base."""
    if depth > _WALK_LIMIT:
        raise IntegrityError("section intersection walk failed to terminate")
    a = xp.eval(ZERO)
    b = yp.eval(ZERO)
    if not b.is_zero():
        return (xp - xq).ord_at_zero()
    gradient_x = surface.derivative_x().eval_point(ZERO, a)
    if not gradient_x.is_zero():
        return (yp - yq).ord_at_zero()
    if not surface.derivative_t().eval_point(ZERO, a).is_zero():
        raise UnsupportedSectionError(
            "sections meet at the singular point of an irreducible fiber"
        )
    # Singular surface point: pass to strict transforms.
    centered = surface.shift_x(a)
    xi_p = _strict(xp - a)
    xi_q = _strict(xq - a)
    eta_p = _strict(yp)
    eta_q = _strict(yq)
    try:
        blown = centered.subs_x_times_t().divide_t_power(2)
    except ValueError:
        raise IntegrityError("strict-transform walk left the surface") from None
    if xi_p.eval(ZERO) != xi_q.eval(ZERO) or eta_p.eval(ZERO) != eta_q.eval(ZERO):
        return 0
    return _local_order(blown, xi_p, eta_p, xi_q, eta_q, depth + 1)


def _strict(p: Poly) -> Poly:
    if p.is_zero():
        return p
    if not p.coeffs[0].is_zero():
        raise IntegrityError("strict transform of a curve missing the center")
    return Poly(p.coeffs[1:])


def _stripped_order_sum(target: Poly, factor: Poly) -> int:
    """Sum of root orders of target over all roots of the square-free factor."""
    if target.is_zero():
        raise IntegrityError("sections agree to infinite order at a meeting place")
    total = 0
    current = target
    while True:
        common = poly_gcd(current, factor)
        if common.degree < 1:
            return total
        total += common.degree
        current = current.exact_div(common)


def section_intersection(left: Section, right: Section) -> int:
    """P.Q over all places, on the smooth model."""
    if left == right:
        raise PreconditionError("self-intersection is handled through chi, not P.Q")
    if left.is_zero or right.is_zero:
        _stratum_pair(right if left.is_zero else left)
        return 0  # the stratum misses the zero section everywhere
    if left.model != right.model:
        raise PreconditionError("sections live on different models")
    xp, yp = _stratum_pair(left)
    xq, yq = _stratum_pair(right)
    model = left.model
    cubic = model.cubic()

    x_diff = xp - xq
    y_diff = yp - yq
    locus = y_diff.monic() if x_diff.is_zero() else poly_gcd(x_diff, y_diff)
    total = 0
    if locus.degree >= 1:
        roots, residual = k_rational_roots(locus)
        for location, _ in roots:
            total += _local_order(
                cubic.shift_t(location),
                xp.shift_argument(location),
                yp.shift_argument(location),
                xq.shift_argument(location),
                yq.shift_argument(location),
                0,
            )
        if residual.degree >= 1:
            total += _residual_orders(model, residual, yp, x_diff, y_diff)

    # The chart at infinity.
    mirror = model.at_infinity()
    mx_p, my_p = xp.reverse(2), yp.reverse(3)
    mx_q, my_q = xq.reverse(2), yq.reverse(3)
    if mx_p.eval(ZERO) == mx_q.eval(ZERO) and my_p.eval(ZERO) == my_q.eval(ZERO):
        total += _local_order(mirror.cubic(), mx_p, my_p, mx_q, my_q, 0)
    return total


def _residual_orders(
    model: WeierstrassModel,
    residual: Poly,
    y_left: Poly,
    x_diff: Poly,
    y_diff: Poly,
) -> int:
    """Meeting orders over non-K-rational places; only smooth fibers are supported."""
    delta = model.discriminant()
    total = 0
    for part, _ in squarefree_decomposition(residual):
        if poly_gcd(part, delta).degree >= 1:
            raise UnsupportedSectionError(
                "sections meet over a non-K-rational place with a singular fiber"
            )
        vanishing = poly_gcd(part, y_left) if not y_left.is_zero() else part
        if vanishing.degree >= 1:
            total += _stripped_order_sum(y_diff, vanishing)
        separated = part.exact_div(vanishing) if vanishing.degree >= 1 else part
        if separated.degree >= 1:
            total += _stripped_order_sum(x_diff, separated)
    return total


def height(left: Section, right: Section, ctx: HeightContext) -> Fraction:
    """The pairing <P, Q> as an exact rational."""
    if left.is_zero or right.is_zero:
        return Fraction(0)
    chi = Fraction(ctx.chi)
    if left == right:
        value = 2 * chi + 2 * section_intersection(left, Section.zero(ctx.model))
        for fiber in ctx.fibers:
            index = component_index(left, fiber)
            value -= contribution(fiber, index, index)
        return value
    value = (
        chi
        + section_intersection(left, Section.zero(ctx.model))
        + section_intersection(right, Section.zero(ctx.model))
        - section_intersection(left, right)
    )
    for fiber in ctx.fibers:
        value -= contribution(fiber, component_index(left, fiber), component_index(right, fiber))
    return value


def gram_matrix(basis: list[Section], ctx: HeightContext) -> list[list[Fraction]]:
    """Symmetric positive-definite matrix of pairwise heights."""
    size = len(basis)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for row in range(size):
        for col in range(row, size):
            value = height(basis[row], basis[col], ctx)
            matrix[row][col] = value
            matrix[col][row] = value
    for order in range(1, size + 1):
        minor = [[matrix[r][c] for c in range(order)] for r in range(order)]
        if _determinant(minor) <= 0:
            raise IntegrityError(
                "height Gram matrix is not positive definite; "
                "the basis or the model data is inconsistent"
            )
    return matrix


def _determinant(matrix: list[list[Fraction]]) -> Fraction:
    size = len(matrix)
    work = [row[:] for row in matrix]
    sign = Fraction(1)
    result = Fraction(1)
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            sign = -sign
        pivot = work[col][col]
        result *= pivot
        for r in range(col + 1, size):
            scale = work[r][col] / pivot
            if scale:
                work[r] = [work[r][c] - scale * work[col][c] for c in range(size)]
    return sign * result
