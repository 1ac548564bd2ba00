"""Projective plane curves over K: singularities, intersections, contact.

The geometric layer: singular-point detection and node/cusp
classification, Fulton's recursive intersection multiplicity, the
standard quadratic (Cremona) transformation, the weak-contact test with
its shear/subresultant certificate, tangent-line case classification,
and canonical arrangement fingerprints.

Intersection points are handled as square-free factor classes of an
eliminating resultant, never as numerical approximations; evenness of
multiplicities (the weak-contact condition) is a statement about factor
multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    InfiniteMultiplicityError,
    IntegrityError,
    NotKRationalError,
    PreconditionError,
)
from .field import FieldElem, ONE, ZERO, ElemLike
from .poly import (
    BiPoly,
    BinaryForm,
    Poly,
    TriForm,
    k_rational_roots,
    kth_subresultant_coeffs,
    poly_gcd,
    resultant_t,
    resultant_x,
    squarefree_decomposition,
    subresultant_chain,
)

# Singularity kinds.
NODE = "node"
CUSP = "cusp"
SMOOTH = "smooth"
OTHER = "other"

# Tangent-line cases: simple, bitangent-or-4-fold, through-cusp, through-node.
CASE_S = "s"
CASE_B = "b"
CASE_SC = "sc"
CASE_SN = "sn"

_MAX_SHEAR = 8


class PlanePoint:
    """Projective point with the canonical representative (last nonzero coordinate 1)."""

    __slots__ = ("coords",)

    def __init__(self, t: ElemLike, x: ElemLike, z: ElemLike):
        coords = tuple(FieldElem.coerce(v) for v in (t, x, z))
        if all(c.is_zero() for c in coords):
            raise PreconditionError("[0, 0, 0] is not a projective point")
        for k in (2, 1, 0):
            if not coords[k].is_zero():
                inv = coords[k].inv()
                coords = tuple(c * inv for c in coords)
                break
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("PlanePoint is immutable")

    @classmethod
    def from_triple(cls, triple: Sequence[ElemLike]) -> "PlanePoint":
        return cls(triple[0], triple[1], triple[2])

    @property
    def chart(self) -> int:
        """Index of the last nonzero (canonically 1) coordinate."""
        for k in (2, 1, 0):
            if not self.coords[k].is_zero():
                return k
        raise AssertionError

    def is_at_infinity(self) -> bool:
        return self.coords[2].is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, PlanePoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"

    def __repr__(self) -> str:
        return f"PlanePoint({self})"


# Degree-1 coordinate forms, used to build chart permutations.
_T_FORM = TriForm(1, {(1, 0, 0): ONE})
_X_FORM = TriForm(1, {(0, 1, 0): ONE})
_Z_FORM = TriForm(1, {(0, 0, 1): ONE})

# chart index -> substitution images giving G(t, x, 1) = F(point on that chart)
_CHART_IMAGES = {
    2: (_T_FORM, _X_FORM, _Z_FORM),  # (u, v) = (T, X)
    1: (_T_FORM, _Z_FORM, _X_FORM),  # (u, v) = (T, Z)
    0: (_Z_FORM, _T_FORM, _X_FORM),  # (u, v) = (X, Z)
}


def _chart_bipoly(form: TriForm, chart: int) -> BiPoly:
    """Dehomogenize in the chart where the given coordinate equals 1."""
    if chart == 2:
        return form.dehomogenize()
    return form.substitute(_CHART_IMAGES[chart]).dehomogenize()


def _local_coords(point: PlanePoint) -> tuple[int, FieldElem, FieldElem]:
    chart = point.chart
    t0, x0, z0 = point.coords
    if chart == 2:
        return chart, t0, x0
    if chart == 1:
        return chart, t0, z0
    return chart, x0, z0


def _local_at_origin(form: TriForm, point: PlanePoint) -> BiPoly:
    """The curve in an affine chart containing the point, translated to the origin."""
    chart, u0, v0 = _local_coords(point)
    return _chart_bipoly(form, chart).shift_t(u0).shift_x(v0)


def _graded_parts(g: BiPoly) -> dict[int, dict[tuple[int, int], FieldElem]]:
    parts: dict[int, dict[tuple[int, int], FieldElem]] = {}
    for j, col in enumerate(g.coeffs):
        for i, coeff in enumerate(col.coeffs):
            if not coeff.is_zero():
                parts.setdefault(i + j, {})[(i, j)] = coeff
    return parts


class PlaneCurve:
    """Reduced projective plane curve, defined by a square-free TriForm."""

    __slots__ = ("form", "_singular_cache")

    def __init__(self, form: TriForm):
        if form.is_zero() or form.degree < 1:
            raise PreconditionError("a plane curve needs a nonzero form of positive degree")
        if not _form_is_squarefree(form):
            raise PreconditionError("curve form is not square-free (non-reduced curve)")
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "_singular_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("PlaneCurve is immutable")

    @property
    def degree(self) -> int:
        return self.form.degree

    def contains(self, point: PlanePoint) -> bool:
        return self.form.eval(point.coords).is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneCurve) and self.form.is_proportional(other.form)

    def __hash__(self) -> int:
        return hash(self.form.canonical_scaled())

    def multiplicity_at(self, point: PlanePoint) -> int:
        local = _local_at_origin(self.form, point)
        parts = _graded_parts(local)
        return min(parts) if parts else 0

    def tangent_line(self, point: PlanePoint) -> "PlaneCurve":
        """Tangent line at a smooth point, from the gradient."""
        if not self.contains(point):
            raise PreconditionError(f"{point} is not on the curve")
        grads = [self.form.partial(k).eval(point.coords) for k in range(3)]
        if all(g.is_zero() for g in grads):
            raise PreconditionError(f"{point} is a singular point; no unique tangent line")
        line = TriForm(1, {(1, 0, 0): grads[0], (0, 1, 0): grads[1], (0, 0, 1): grads[2]})
        return PlaneCurve(line)

    def singular_points(self) -> list[tuple[PlanePoint, str]]:
        """All singular points with classification; they must all be K-rational."""
        if self._singular_cache is None:
            records = _singular_points(self.form)
            object.__setattr__(self, "_singular_cache", tuple(records))
        return list(self._singular_cache)

    def singularity_kind_at(self, point: PlanePoint) -> str:
        for p, kind in self.singular_points():
            if p == point:
                return kind
        return SMOOTH if self.contains(point) else OTHER

    def __str__(self) -> str:
        return str(self.form)

    def __repr__(self) -> str:
        return f"PlaneCurve({self.form})"


def _form_is_squarefree(form: TriForm) -> bool:
    mins = form.min_exponents()
    if max(mins) >= 2:
        return False
    core = form.divide_monomial(mins)
    if core.degree == 0:
        return True
    g = core.dehomogenize()
    if g.degree_x <= 0:
        # pure polynomial in t: square-free iff its t-part is
        return all(m == 1 for _f, m in squarefree_decomposition(g.coeff_x(0)))
    content = g.content_t()
    if content.degree >= 1 and any(m > 1 for _f, m in squarefree_decomposition(content)):
        return False
    primitive = BiPoly(tuple(c.exact_div(content) for c in g.coeffs))
    if primitive.degree_x == 0:
        return True
    disc = resultant_x(primitive, primitive.derivative_x())
    return not disc.is_zero()


def _line_coefficients(line: PlaneCurve) -> tuple[FieldElem, FieldElem, FieldElem]:
    if line.degree != 1:
        raise PreconditionError("expected a line (degree-1 curve)")
    f = line.form
    return f.coeff((1, 0, 0)), f.coeff((0, 1, 0)), f.coeff((0, 0, 1))


# ---------------------------------------------------------------------------
# Fulton's intersection multiplicity


def _fulton(f: BiPoly, g: BiPoly) -> int:
    """Intersection multiplicity of f and g at the origin (Fulton's recursion)."""
    if f.is_zero() or g.is_zero():
        raise InfiniteMultiplicityError("a zero polynomial meets everything")
    if not f.eval_point(0, 0).is_zero() or not g.eval_point(0, 0).is_zero():
        return 0
    a = f.eval_x(0)  # restriction to the line x = 0
    b = g.eval_x(0)
    if a.is_zero() and b.is_zero():
        raise InfiniteMultiplicityError("both curves contain the line x = 0 through the point")
    if a.is_zero():
        # f = x * h; I(x, g) is the t-order of g on the line x = 0
        h = f.divide_x_power(1)
        return b.ord_at(ZERO) + _fulton(h, g)
    if b.is_zero():
        return _fulton(g, f)
    if a.degree > b.degree:
        return _fulton(g, f)
    # reduce the restriction degree of g using f
    factor = b.lc / a.lc
    shift = b.degree - a.degree
    reducer = BiPoly(tuple(c.shift_up(shift).scale(factor) for c in f.coeffs))
    g_next = g - reducer
    if g_next.is_zero():
        raise InfiniteMultiplicityError("curves share a common component through the point")
    return _fulton(f, g_next)


def intersection_multiplicity(f: PlaneCurve, g: PlaneCurve, point: PlanePoint) -> int:
    """Fulton multiplicity of two curves at a point (0 if the point misses one)."""
    chart = point.chart
    _chart_check, u0, v0 = _local_coords(point)
    lf = _chart_bipoly(f.form, chart).shift_t(u0).shift_x(v0)
    lg = _chart_bipoly(g.form, chart).shift_t(u0).shift_x(v0)
    return _fulton(lf, lg)


# ---------------------------------------------------------------------------
# Singular points


def _singular_points(form: TriForm) -> list[tuple[PlanePoint, str]]:
    records: list[tuple[PlanePoint, str]] = []
    for point in _affine_singular_points(form):
        records.append((point, _classify_singular_point(form, point)))
    for point in _infinity_singular_points(form):
        records.append((point, _classify_singular_point(form, point)))
    records.sort(key=lambda item: item[0].sort_key())
    return records


def _affine_singular_points(form: TriForm) -> list[PlanePoint]:
    f = form.dehomogenize()
    points: set[PlanePoint] = set()
    # split off vertical-line (pure-t) and horizontal-line (pure-x) factors:
    # every point where two of the three pieces meet is singular
    c_t = f.content_t() if not f.is_zero() else Poly.constant(ONE)
    pp = BiPoly(tuple(col.exact_div(c_t) for col in f.coeffs))
    pp_sw = pp.swap_vars()
    c_x = pp_sw.content_t()
    qq = BiPoly(tuple(col.exact_div(c_x) for col in pp_sw.coeffs)).swap_vars()

    t_lines = _component_line_roots(c_t, "vertical")
    x_lines = _component_line_roots(c_x, "horizontal")
    for t0 in t_lines:
        for x0 in x_lines:
            points.add(PlanePoint(t0, x0, ONE))
    for t0 in t_lines:
        slice_q = qq.eval_t(t0)
        if slice_q.degree >= 1:
            roots, residual = k_rational_roots(slice_q)
            if residual.degree >= 1:
                raise NotKRationalError(
                    "singular point with non-K x-coordinate on a line component"
                )
            points.update(PlanePoint(t0, x0, ONE) for x0, _m in roots)
    for x0 in x_lines:
        slice_q = qq.eval_x(x0)
        if slice_q.degree >= 1:
            roots, residual = k_rational_roots(slice_q)
            if residual.degree >= 1:
                raise NotKRationalError(
                    "singular point with non-K t-coordinate on a line component"
                )
            points.update(PlanePoint(t0, x0, ONE) for t0, _m in roots)

    points.update(_core_singular_points(qq))
    return sorted(points, key=PlanePoint.sort_key)


def _component_line_roots(content: Poly, orientation: str) -> list[FieldElem]:
    if content.degree < 1:
        return []
    roots, residual = k_rational_roots(content)
    if residual.degree >= 1:
        raise NotKRationalError(
            f"curve has a {orientation} line component over a non-K value"
        )
    return [r for r, _m in roots]


def _core_singular_points(qq: BiPoly) -> list[PlanePoint]:
    """Singular points of the content-free part via Jacobian elimination."""
    if qq.degree_x < 1 or qq.degree_t < 1:
        return []
    q_t = qq.derivative_t()
    q_x = qq.derivative_x()
    r1 = resultant_x(qq, q_x)
    r2 = resultant_x(qq, q_t)
    if r1.is_zero() or r2.is_zero():
        raise IntegrityError("content-free part still shares a factor with a derivative")
    common = poly_gcd(r1, r2)
    if common.degree < 1:
        return []
    t_roots, residual = k_rational_roots(common)
    points: list[PlanePoint] = []
    for t0, _m in t_roots:
        slices = [p for p in (qq.eval_t(t0), q_x.eval_t(t0), q_t.eval_t(t0)) if not p.is_zero()]
        g = slices[0]
        for piece in slices[1:]:
            g = poly_gcd(g, piece)
            if g.degree < 1:
                break
        if g.degree < 1:
            continue
        x_roots, x_residual = k_rational_roots(g)
        if x_residual.degree >= 1:
            raise NotKRationalError("singular point with non-K x-coordinate detected")
        points.extend(PlanePoint(t0, x0, ONE) for x0, _mx in x_roots)
    if residual.degree >= 1 and _residual_is_singular(qq, q_t, q_x, residual):
        raise NotKRationalError(
            f"possible singular point over the residual factor {residual}"
        )
    return points


def _residual_is_singular(f: BiPoly, f_t: BiPoly, f_x: BiPoly, residual: Poly) -> bool:
    """Whether some root of the residual t-factor can support a singular point.

    For each square-free residual piece rho, the unique common x of f and
    f_x over roots of rho is read off the degree-1 subresultant; the point
    is singular iff f_t also vanishes there.  Degenerate chains are
    reported as possibly-singular (conservative).
    """
    for rho, _m in squarefree_decomposition(residual):
        if (f.lc_x % rho).is_zero():
            return True
        chain = subresultant_chain(f, f_x)
        s1 = kth_subresultant_coeffs(chain, 1)
        if s1 is None:
            return True
        s11 = s1.coeff_x(1)
        s10 = s1.coeff_x(0)
        if poly_gcd(rho, s11).degree >= 1:
            return True
        value = Poly.zero()
        d = f_t.degree_x
        for k in range(d + 1):
            value = value + f_t.coeff_x(k) * (-s10) ** k * s11 ** (d - k)
        reduced = value % rho
        if reduced.is_zero() or poly_gcd(rho, reduced).degree >= 1:
            return True
    return False


def _infinity_singular_points(form: TriForm) -> list[PlanePoint]:
    b = form.infinity_form()
    if b.is_zero():
        raise PreconditionError("curve contains the line at infinity in this frame")
    bt = _binary_partial(b, 0)
    bx = _binary_partial(b, 1)
    cz = _z_coefficient_form(form)
    candidates = [g for g in (bt, bx, cz) if not g.is_zero()]
    if not candidates:
        return []
    common_points, residual_degree = _binary_common_roots(candidates)
    if residual_degree > 0:
        raise NotKRationalError("possible non-K singular point on the line at infinity")
    out = []
    for t0, x0 in common_points:
        point = PlanePoint(t0, x0, ZERO)
        if form.eval(point.coords).is_zero():
            out.append(point)
    return out


def _binary_partial(b: BinaryForm, index: int) -> BinaryForm:
    out: dict[tuple[int, int], FieldElem] = {}
    for key, coeff in b.terms.items():
        e = key[index]
        if e == 0:
            continue
        new_key = (key[0] - 1, key[1]) if index == 0 else (key[0], key[1] - 1)
        out[new_key] = coeff * e
    return BinaryForm(max(b.degree - 1, 0), out)


def _z_coefficient_form(form: TriForm) -> BinaryForm:
    """The binary form dF/dZ restricted to Z = 0."""
    out: dict[tuple[int, int], FieldElem] = {}
    for (a, b, c), coeff in form.terms.items():
        if c == 1:
            out[(a, b)] = coeff
    return BinaryForm(form.degree - 1, out)


def _binary_common_roots(
    forms: Sequence[BinaryForm],
) -> tuple[list[tuple[FieldElem, FieldElem]], int]:
    """Common projective roots [t : x] of binary forms; K-rational ones plus residual degree."""
    polys = [b.dehomogenize_t() for b in forms]
    g: Poly | None = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else poly_gcd(g, p)
    points: list[tuple[FieldElem, FieldElem]] = []
    residual_degree = 0
    if g is not None and g.degree >= 1:
        roots, residual = k_rational_roots(g)
        points.extend((r, ONE) for r, _m in roots)
        residual_degree = residual.degree
    elif g is None:
        raise PreconditionError("all binary forms vanish identically")
    # the point [1 : 0] at X = 0: common iff every form has zero X-free... top T coefficient
    if all(b.is_zero() or b.terms.get((b.degree, 0), ZERO).is_zero() for b in forms):
        points.append((ONE, ZERO))
    return points, residual_degree


def _classify_singular_point(form: TriForm, point: PlanePoint) -> str:
    local = _local_at_origin(form, point)
    parts = _graded_parts(local)
    m = min(parts)
    if m != 2:
        return OTHER if m > 2 else SMOOTH
    quad = parts[2]
    a = quad.get((2, 0), ZERO)
    b = quad.get((1, 1), ZERO)
    c = quad.get((0, 2), ZERO)
    disc = b * b - a * c * 4
    if not disc.is_zero():
        return NODE
    # double tangent direction; line alpha*u + beta*v with the cone = const*(line)^2
    if not a.is_zero():
        alpha, beta = ONE, b / (a * 2)
    else:
        alpha, beta = ZERO, ONE
    direction = (beta, -alpha)
    cubic = parts.get(3, {})
    du, dv = direction
    value = ZERO
    for (i, j), coeff in cubic.items():
        value = value + coeff * du**i * dv**j
    return CUSP if not value.is_zero() else OTHER


def singular_points(curve: PlaneCurve) -> list[tuple[PlanePoint, str]]:
    return curve.singular_points()


# ---------------------------------------------------------------------------
# The standard quadratic transformation


def _matrix_inverse_3x3(n: Sequence[Sequence[FieldElem]]) -> list[list[FieldElem]]:
    det = (
        n[0][0] * (n[1][1] * n[2][2] - n[1][2] * n[2][1])
        - n[0][1] * (n[1][0] * n[2][2] - n[1][2] * n[2][0])
        + n[0][2] * (n[1][0] * n[2][1] - n[1][1] * n[2][0])
    )
    if det.is_zero():
        raise PreconditionError("the three lines are concurrent")
    inv_det = det.inv()
    cof = [
        [
            (n[(i + 1) % 3][(j + 1) % 3] * n[(i + 2) % 3][(j + 2) % 3]
             - n[(i + 1) % 3][(j + 2) % 3] * n[(i + 2) % 3][(j + 1) % 3])
            for j in range(3)
        ]
        for i in range(3)
    ]
    # adjugate = transpose of cofactors
    return [[cof[j][i] * inv_det for j in range(3)] for i in range(3)]


_SIGMA = (
    TriForm(2, {(0, 1, 1): ONE}),  # X*Z
    TriForm(2, {(1, 0, 1): ONE}),  # T*Z
    TriForm(2, {(1, 1, 0): ONE}),  # T*X
)


def cremona_transform(
    curve: PlaneCurve, triangle: tuple[PlaneCurve, PlaneCurve, PlaneCurve]
) -> PlaneCurve:
    """Standard quadratic transformation with the given triangle of fundamental lines.

    The result is expressed in the frame where the triangle is the
    coordinate triangle {T=0, X=0, Z=0}; monomial (fundamental-line)
    factors are divided out to their maximal exponent.
    """
    n = [list(_line_coefficients(line)) for line in triangle]
    m = _matrix_inverse_3x3(n)
    images = []
    for i in range(3):
        acc = TriForm(2, {})
        for j in range(3):
            acc = acc + _SIGMA[j].scale(m[i][j])
        images.append(acc)
    raw = curve.form.substitute(images)
    if raw.is_zero():
        raise PreconditionError("curve collapses under the quadratic transformation")
    mins = raw.min_exponents()
    return PlaneCurve(raw.divide_monomial(mins))


def cremona_point(
    triangle: tuple[PlaneCurve, PlaneCurve, PlaneCurve], point: PlanePoint
) -> PlanePoint:
    """Image of a point off the triangle vertices under the quadratic map."""
    n = [list(_line_coefficients(line)) for line in triangle]
    _matrix_inverse_3x3(n)  # validates non-concurrency
    q = [
        n[i][0] * point.coords[0] + n[i][1] * point.coords[1] + n[i][2] * point.coords[2]
        for i in range(3)
    ]
    image = (q[1] * q[2], q[0] * q[2], q[0] * q[1])
    if all(c.is_zero() for c in image):
        raise PreconditionError("the quadratic map is undefined at a triangle vertex")
    return PlanePoint(image[0], image[1], image[2])


# ---------------------------------------------------------------------------
# Weak contact


@dataclass(frozen=True, slots=True)
class ContactClass:
    """One intersection-point class: a square-free factor of the shear resultant."""

    factor: str
    degree: int
    multiplicity: int


@dataclass(frozen=True, slots=True)
class InfinityContact:
    point: PlanePoint
    multiplicity: int


@dataclass(frozen=True, slots=True)
class ContactCertificate:
    is_weak: bool
    shear: int | None  # None when the per-point fallback decided
    classes: tuple[ContactClass, ...]
    infinity: tuple[InfinityContact, ...]
    bezout_total: int

    def __bool__(self) -> bool:
        return self.is_weak


def _shear_values() -> Iterable[int]:
    yield 0
    for k in range(1, _MAX_SHEAR + 1):
        yield k
        yield -k


def _binary_eval(b: BinaryForm, t_val: FieldElem, x_val: FieldElem) -> FieldElem:
    acc = ZERO
    for (a, bb), coeff in b.terms.items():
        acc = acc + coeff * t_val**a * x_val**bb
    return acc


def _t_on_class(poly_in_t: BiPoly, s10: Poly, s11: Poly, modulus: Poly) -> Poly:
    """Evaluate a (t, x)-polynomial at t = -s10/s11 modulo the class factor.

    The input carries t in the main slot (coefficients are polynomials
    in x).  Returns the numerator s11^deg * value reduced mod the factor.
    """
    d = poly_in_t.degree_x
    acc = Poly.zero()
    for k in range(d + 1):
        term = poly_in_t.coeff_x(k) * (-s10) ** k * s11 ** (d - k)
        acc = acc + term
    return acc % modulus


def _common_infinity_contacts(
    q: PlaneCurve, c: PlaneCurve
) -> tuple[list[InfinityContact], int]:
    bq = q.form.infinity_form()
    bc = c.form.infinity_form()
    points, residual_degree = _binary_common_roots([bq, bc])
    records = []
    for t0, x0 in points:
        point = PlanePoint(t0, x0, ZERO)
        records.append(InfinityContact(point, intersection_multiplicity(q, c, point)))
    records.sort(key=lambda r: r.point.sort_key())
    return records, residual_degree


def is_weak_contact(q: PlaneCurve, c: PlaneCurve) -> ContactCertificate:
    """Decide whether every intersection point of q and c has even multiplicity.

    Affine points are grouped into square-free factor classes of the
    resultant eliminating t after a shear x -> x + k*t; the first shear
    whose subresultant certificate guarantees one intersection point per
    resultant root is used.  Points on the line Z = 0 are handled
    separately through Fulton's algorithm.  Falls back to per-point
    Fulton computations when no shear certifies.
    """
    if q.degree != 4:
        raise PreconditionError("weak contact is defined against a quartic")
    if c.degree != 2:
        raise PreconditionError("the contact curve must be a conic")
    if c.singular_points():
        raise PreconditionError("the conic must be smooth")
    inf_records, residual_degree = _common_infinity_contacts(q, c)
    if residual_degree > 0:
        raise NotKRationalError(
            "the curves meet the line at infinity at a non-K-rational point"
        )
    inf_total = sum(r.multiplicity for r in inf_records)
    f = q.form.dehomogenize()
    g = c.form.dehomogenize()
    bezout = q.degree * c.degree

    for k in _shear_values():
        if _binary_eval(q.form.infinity_form(), ONE, FieldElem.coerce(k)).is_zero():
            continue
        if _binary_eval(c.form.infinity_form(), ONE, FieldElem.coerce(k)).is_zero():
            continue
        ft = f.shear_x(k)
        gt = g.shear_x(k)
        resultant = resultant_t(ft, gt)
        if resultant.is_zero():
            raise PreconditionError("the conic shares a component with the quartic")
        if resultant.degree + inf_total != bezout:
            raise IntegrityError(
                f"intersection count audit failed: {resultant.degree} affine + "
                f"{inf_total} at infinity != {bezout}"
            )
        factors = squarefree_decomposition(resultant)
        if not _shear_certificate_holds(ft, gt, factors):
            continue
        classes = tuple(
            ContactClass(factor.to_str("x"), factor.degree, mult)
            for factor, mult in factors
        )
        is_weak = all(mult % 2 == 0 for _f, mult in factors) and all(
            r.multiplicity % 2 == 0 for r in inf_records
        )
        return ContactCertificate(
            is_weak=is_weak,
            shear=k,
            classes=classes,
            infinity=tuple(inf_records),
            bezout_total=bezout,
        )

    return _weak_contact_fallback(q, c, f, g, inf_records, bezout)


def _shear_certificate_holds(
    ft: BiPoly, gt: BiPoly, factors: list[tuple[Poly, int]]
) -> bool:
    """True when the degree-1 subresultant certifies one point per resultant root."""
    if not factors:
        return True
    chain = subresultant_chain(ft.swap_vars(), gt.swap_vars())
    s1 = kth_subresultant_coeffs(chain, 1)
    if s1 is None:
        return False
    s11 = s1.coeff_x(1)
    if s11.is_zero():
        return False
    for factor, _mult in factors:
        if poly_gcd(factor, s11).degree >= 1:
            return False
    return True


def _weak_contact_fallback(
    q: PlaneCurve,
    c: PlaneCurve,
    f: BiPoly,
    g: BiPoly,
    inf_records: list[InfinityContact],
    bezout: int,
) -> ContactCertificate:
    """Per-point Fulton check at every K-rational affine intersection point."""
    shear = None
    for k in _shear_values():
        if not _binary_eval(q.form.infinity_form(), ONE, FieldElem.coerce(k)).is_zero() and not _binary_eval(
            c.form.infinity_form(), ONE, FieldElem.coerce(k)
        ).is_zero():
            shear = k
            break
    if shear is None:
        raise PreconditionError("no shear avoids the projection center; degenerate input")
    ft = f.shear_x(shear)
    gt = g.shear_x(shear)
    resultant = resultant_t(ft, gt)
    if resultant.is_zero():
        raise PreconditionError("the conic shares a component with the quartic")
    x_roots, x_residual = k_rational_roots(resultant)
    if x_residual.degree >= 1:
        raise NotKRationalError(
            "shear certificate failed and the resultant has non-K-rational roots; "
            "cannot certify parity per point"
        )
    classes = []
    total = 0
    all_even = True
    for x0, _m in x_roots:
        fiber_f = _poly_in_t_at(ft, x0)
        fiber_g = _poly_in_t_at(gt, x0)
        fiber_gcd = poly_gcd(fiber_f, fiber_g)
        t_roots, t_residual = k_rational_roots(fiber_gcd)
        if t_residual.degree >= 1:
            raise NotKRationalError("intersection point with non-K t-coordinate")
        for t0, _mt in t_roots:
            lf = ft.shift_t(t0).shift_x(x0)
            lg = gt.shift_t(t0).shift_x(x0)
            mult = _fulton(lf, lg)
            total += mult
            if mult % 2:
                all_even = False
            marker = Poly((-x0, ONE))
            classes.append(ContactClass(marker.to_str("x"), 1, mult))
    inf_total = sum(r.multiplicity for r in inf_records)
    if total + inf_total != bezout:
        raise IntegrityError(
            f"per-point audit failed: {total} affine + {inf_total} at infinity != {bezout}"
        )
    is_weak = all_even and all(r.multiplicity % 2 == 0 for r in inf_records)
    return ContactCertificate(
        is_weak=is_weak,
        shear=None,
        classes=tuple(classes),
        infinity=tuple(inf_records),
        bezout_total=bezout,
    )


def _poly_in_t_at(p: BiPoly, x0: FieldElem) -> Poly:
    return p.eval_x(x0)


def contact_conic_type(q: PlaneCurve, c: PlaneCurve) -> int:
    """Type 1..6 from which singular points of the quartic lie on the conic."""
    records = q.singular_points()
    nodes = [p for p, kind in records if kind == NODE]
    cusps = [p for p, kind in records if kind == CUSP]
    if len(nodes) != 2 or len(cusps) != 1:
        raise PreconditionError("conic types require a two-node one-cusp quartic")
    nodes_on = sum(1 for p in nodes if c.contains(p))
    cusp_on = c.contains(cusps[0])
    table = {
        (0, True): 1,
        (1, False): 2,
        (1, True): 3,
        (2, False): 4,
        (2, True): 5,
        (0, False): 6,
    }
    return table[(nodes_on, cusp_on)]


# ---------------------------------------------------------------------------
# Tangent-line case classification


def classify_tangent_case(q: PlaneCurve, z: PlanePoint) -> str:
    """Position case of the tangent line at a smooth point: s, b, sc or sn."""
    if not q.contains(z):
        raise PreconditionError(f"{z} is not on the quartic")
    if q.multiplicity_at(z) != 1:
        raise PreconditionError(f"{z} is a singular point of the quartic")
    line = q.tangent_line(z)
    records = q.singular_points()
    for p, kind in records:
        if line.contains(p):
            if kind == CUSP:
                return CASE_SC
            if kind == NODE:
                return CASE_SN
    pullback = _line_pullback(q.form, line)
    s0, u0 = _line_parameter_of(line, z)
    m_z = pullback.ord_at_point(s0, u0)
    if m_z < 2:
        raise IntegrityError("tangent line has contact order below 2")
    if m_z == 4:
        return CASE_B
    if m_z == 2:
        remaining = _binary_divide_root(pullback, s0, u0, 2)
        a = remaining.terms.get((2, 0), ZERO)
        b = remaining.terms.get((1, 1), ZERO)
        c = remaining.terms.get((0, 2), ZERO)
        disc = b * b - a * c * 4
        if disc.is_zero():
            return CASE_B
    return CASE_S


def _line_basis(line: PlaneCurve) -> tuple[tuple[FieldElem, ...], tuple[FieldElem, ...]]:
    a, b, c = _line_coefficients(line)
    if not c.is_zero():
        inv = c.inv()
        return (ONE, ZERO, -a * inv), (ZERO, ONE, -b * inv)
    if not b.is_zero():
        inv = b.inv()
        return (ONE, -a * inv, ZERO), (ZERO, ZERO, ONE)
    return (ZERO, ONE, ZERO), (ZERO, ZERO, ONE)


def _line_pullback(form: TriForm, line: PlaneCurve) -> BinaryForm:
    """Restrict a form to a line: the binary form F(s*p + u*q) in the parameters."""
    p, q = _line_basis(line)
    coords = []
    for k in range(3):
        coords.append(BiPoly((Poly((ZERO, p[k])), Poly.constant(q[k]))))
    acc = BiPoly.zero()
    for (a, b, c), coeff in form.terms.items():
        term = coords[0] ** a * coords[1] ** b * coords[2] ** c
        acc = acc + term.scale(coeff)
    out: dict[tuple[int, int], FieldElem] = {}
    for j, col in enumerate(acc.coeffs):
        for i, value in enumerate(col.coeffs):
            if not value.is_zero():
                out[(i, j)] = value
    return BinaryForm(form.degree, out)


def _line_parameter_of(line: PlaneCurve, z: PlanePoint) -> tuple[FieldElem, FieldElem]:
    """Parameters (s, u) with z = s*p + u*q for the chosen line basis."""
    p, q = _line_basis(line)
    target = z.coords
    for i in range(3):
        for j in range(i + 1, 3):
            det = p[i] * q[j] - p[j] * q[i]
            if not det.is_zero():
                inv = det.inv()
                s = (target[i] * q[j] - target[j] * q[i]) * inv
                u = (p[i] * target[j] - p[j] * target[i]) * inv
                return s, u
    raise IntegrityError("degenerate line basis")


def _binary_divide_root(
    b: BinaryForm, s0: FieldElem, u0: FieldElem, order: int
) -> BinaryForm:
    """Divide out (u0*S - s0*U)^order."""
    # linear form vanishing at [s0 : u0]
    linear = {(1, 0): u0, (0, 1): -s0}
    result = dict(b.terms)
    degree = b.degree
    current = BinaryForm(degree, result)
    for _ in range(order):
        current = _binary_exact_div_linear(current, linear)
    return current


def _binary_exact_div_linear(
    b: BinaryForm, linear: dict[tuple[int, int], FieldElem]
) -> BinaryForm:
    alpha = linear.get((1, 0), ZERO)
    beta = linear.get((0, 1), ZERO)
    # dividing C(S,U) by alpha*S + beta*U via univariate division in the right chart
    if not alpha.is_zero():
        p = b.dehomogenize_t()  # polynomial in S with U = 1
        divisor = Poly((beta, alpha))
        quotient, rem = p.divmod(divisor)
        if not rem.is_zero():
            raise IntegrityError("binary form not divisible by its tangent factor")
        out: dict[tuple[int, int], FieldElem] = {}
        for k, coeff in enumerate(quotient.coeffs):
            out[(k, b.degree - 1 - k)] = coeff
        return BinaryForm(b.degree - 1, out)
    # linear = beta*U
    out = {}
    for (i, j), coeff in b.terms.items():
        if j == 0:
            if not coeff.is_zero():
                raise IntegrityError("binary form not divisible by U")
            continue
        out[(i, j - 1)] = coeff / beta
    return BinaryForm(b.degree - 1, out)


# ---------------------------------------------------------------------------
# Arrangement fingerprints


@dataclass(frozen=True, slots=True)
class _ClassRecord:
    degree: int  # number of points in the class (Galois-orbit size)
    multiplicity: int
    quartic_kind: str
    incidence: tuple[int, ...]

    def render(self) -> str:
        """One line per point; orbit structure is not a topological invariant."""
        inc = ",".join(str(d) for d in self.incidence)
        return (
            f"point mult={self.multiplicity} "
            f"quartic={self.quartic_kind} incidence=[{inc}]"
        )


def arrangement_fingerprint(components: Sequence[PlaneCurve]) -> str:
    """Canonical intersection-combinatorics record of a curve arrangement.

    For every unordered pair of components, every intersection point
    class is recorded as (factor degree, intersection multiplicity,
    singularity kind of the quartic component there, degrees of the
    other components through the class), all sorted into a canonical
    byte-comparable text.  This captures necessary conditions for two
    arrangements to share a combinatorial type, not a proof of it.
    """
    comps = list(components)
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            if comps[a] == comps[b]:
                raise PreconditionError("arrangement components must be distinct")
    quartics = [c for c in comps if c.degree == 4]
    quartic = quartics[0] if len(quartics) == 1 else None
    entries: list[str] = []
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            label = tuple(sorted((comps[a].degree, comps[b].degree)))
            others = [comps[k] for k in range(len(comps)) if k not in (a, b)]
            records = _pair_class_records(comps[a], comps[b], others, quartic)
            lines = sorted(line for r in records for line in [r.render()] * r.degree)
            body = "\n".join(f"  {line}" for line in lines)
            entries.append(f"pair ({label[0]},{label[1]}):\n{body}" if lines else f"pair ({label[0]},{label[1]}): none")
    entries.sort()
    return "\n".join(entries)


def _pair_class_records(
    a: PlaneCurve,
    b: PlaneCurve,
    others: Sequence[PlaneCurve],
    quartic: PlaneCurve | None,
) -> list[_ClassRecord]:
    records: list[_ClassRecord] = []
    inf_records, residual_degree = _common_infinity_contacts_any(a, b)
    if residual_degree > 0:
        raise NotKRationalError(
            "pair meets the line at infinity at a non-K-rational point"
        )
    for contact in inf_records:
        incidence = tuple(sorted(d.degree for d in others if d.contains(contact.point)))
        kind = _quartic_kind_at_point(quartic, a, b, contact.point)
        records.append(
            _ClassRecord(1, contact.multiplicity, kind, incidence)
        )
    inf_total = sum(r.multiplicity for r in inf_records)
    records.extend(_affine_class_records(a, b, others, quartic, inf_total))
    return records


def _common_infinity_contacts_any(
    a: PlaneCurve, b: PlaneCurve
) -> tuple[list[InfinityContact], int]:
    ba = a.form.infinity_form()
    bb = b.form.infinity_form()
    points, residual_degree = _binary_common_roots([ba, bb])
    records = []
    for t0, x0 in points:
        point = PlanePoint(t0, x0, ZERO)
        records.append(InfinityContact(point, intersection_multiplicity(a, b, point)))
    records.sort(key=lambda r: r.point.sort_key())
    return records, residual_degree


def _quartic_kind_at_point(
    quartic: PlaneCurve | None, a: PlaneCurve, b: PlaneCurve, point: PlanePoint
) -> str:
    if quartic is None:
        return "off"
    if not quartic.contains(point):
        return "off"
    return quartic.singularity_kind_at(point)


def _affine_class_records(
    a: PlaneCurve,
    b: PlaneCurve,
    others: Sequence[PlaneCurve],
    quartic: PlaneCurve | None,
    inf_total: int,
) -> list[_ClassRecord]:
    f = a.form.dehomogenize()
    g = b.form.dehomogenize()
    bezout = a.degree * b.degree
    for k in _shear_values():
        if _binary_eval(a.form.infinity_form(), ONE, FieldElem.coerce(k)).is_zero():
            continue
        if _binary_eval(b.form.infinity_form(), ONE, FieldElem.coerce(k)).is_zero():
            continue
        ft = f.shear_x(k)
        gt = g.shear_x(k)
        resultant = resultant_t(ft, gt)
        if resultant.is_zero():
            raise PreconditionError("arrangement components share a component")
        if resultant.degree + inf_total != bezout:
            raise IntegrityError(
                f"pair audit failed: {resultant.degree} + {inf_total} != {bezout}"
            )
        if resultant.degree == 0:
            return []
        factors = squarefree_decomposition(resultant)
        if not _shear_certificate_holds(ft, gt, factors):
            continue
        chain = subresultant_chain(ft.swap_vars(), gt.swap_vars())
        s1 = kth_subresultant_coeffs(chain, 1)
        s11 = s1.coeff_x(1)
        s10 = s1.coeff_x(0)
        return _refine_classes(
            k, factors, s10, s11, others, quartic, a, b
        )
    raise NotKRationalError(
        "no shear certificate for a component pair; cannot build the fingerprint"
    )


def _refine_classes(
    shear: int,
    factors: list[tuple[Poly, int]],
    s10: Poly,
    s11: Poly,
    others: Sequence[PlaneCurve],
    quartic: PlaneCurve | None,
    a: PlaneCurve,
    b: PlaneCurve,
) -> list[_ClassRecord]:
    probes: list[tuple[int, BiPoly]] = []
    for comp in others:
        probes.append((comp.degree, comp.form.dehomogenize().shear_x(shear).swap_vars()))
    quartic_probe: BiPoly | None = None
    quartic_in_pair = quartic is not None and (quartic == a or quartic == b)
    if quartic is not None and not quartic_in_pair:
        quartic_probe = quartic.form.dehomogenize().shear_x(shear).swap_vars()

    # split off K-rational roots so singular points sit in their own class
    pieces: list[tuple[Poly, int]] = []
    for factor, mult in factors:
        roots, residual = k_rational_roots(factor)
        for root, _m in roots:
            pieces.append((Poly((-root, ONE)), mult))
        if residual.degree >= 1:
            pieces.append((residual, mult))

    # refine by gcd against each probe until each class is all-or-nothing
    changed = True
    while changed:
        changed = False
        next_pieces: list[tuple[Poly, int]] = []
        for factor, mult in pieces:
            split = None
            for _deg, probe in probes:
                value = _t_on_class(probe, s10, s11, factor)
                if value.is_zero():
                    continue
                g = poly_gcd(factor, value)
                if 1 <= g.degree < factor.degree:
                    split = g
                    break
            if split is None:
                next_pieces.append((factor, mult))
            else:
                next_pieces.append((split, mult))
                next_pieces.append((factor.exact_div(split), mult))
                changed = True
        pieces = next_pieces

    records: list[_ClassRecord] = []
    for factor, mult in pieces:
        incidence = []
        for deg, probe in probes:
            value = _t_on_class(probe, s10, s11, factor)
            if value.is_zero():
                incidence.append(deg)
        kind = _class_quartic_kind(
            factor, mult, s10, s11, shear, quartic, quartic_in_pair, quartic_probe
        )
        records.append(_ClassRecord(factor.degree, mult, kind, tuple(sorted(incidence))))
    return records


def _class_quartic_kind(
    factor: Poly,
    mult: int,
    s10: Poly,
    s11: Poly,
    shear: int,
    quartic: PlaneCurve | None,
    quartic_in_pair: bool,
    quartic_probe: BiPoly | None,
) -> str:
    if quartic is None:
        return "off"
    on_quartic = quartic_in_pair
    if not on_quartic and quartic_probe is not None:
        on_quartic = _t_on_class(quartic_probe, s10, s11, factor).is_zero()
    if not on_quartic:
        return "off"
    if factor.degree == 1:
        x0 = -factor.coeff(0)
        den = s11.eval(x0)
        if den.is_zero():
            raise IntegrityError("certified class lost its unique t-coordinate")
        t0 = -s10.eval(x0) / den
        point = PlanePoint(t0, x0 + FieldElem.coerce(shear) * t0, ONE)
        return quartic.singularity_kind_at(point)
    # classes of degree >= 2 consist of non-K points; singular points are K-rational
    return SMOOTH
