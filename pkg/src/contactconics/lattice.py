"""Section lattices of the four tangent-line cases and conic counting.

Each case fixes the reducible-fiber configuration of the elliptic surface
attached to a two-node one-cusp quartic with a chosen smooth tangency
point, together with a basis of the section lattice, its Gram matrix, and
the fiber-component indices of the basis sections.  Weak contact conics
of a given type correspond to sections of a prescribed height whose
fiber-component pattern matches the singular points the conic must hit;
counting them is short-vector enumeration in the positive-definite Gram
form followed by the component filter.

Vector conventions: a section is an integer coordinate vector over the
case basis; v and -v give the same conic, so classes are counted once,
represented by the vector whose first nonzero coordinate is positive.

The pair reports re-verify the lattice-side hypotheses of the
non-homeomorphism criterion for the bundled arrangements: that the two
distinguished sections extend to a basis (Smith normal form), the
dependence of a section on its double, the independence of the swapped
pair, and the identification of each arrangement member as a section
image.  The topological conclusion itself is cited, not re-proved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Mapping, Sequence

from .curves import arrangement_fingerprint
from .errors import IntegrityError, PreconditionError
from .fixtures import ARRANGEMENTS, WorkedExample, load_worked_example
from .heights import _determinant, component_contribution
from .surface import Section, mul, section_to_plane_curve

# Fiber roles: the plane-curve feature the fiber sits over.
NODE_FIBER = "node"
CUSP_FIBER = "cusp"
LINE_FIBER = "line"

# Conic types: how many nodes the conic passes through and whether it
# passes through the cusp.
CONIC_TYPES: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
_TYPE_TABLE: Mapping[int, tuple[int, bool]] = {
    1: (0, True),
    2: (1, False),
    3: (1, True),
    4: (2, False),
    5: (2, True),
    6: (0, False),
}


@dataclass(frozen=True)
class CaseFiber:
    """One reducible fiber of a case configuration.

    psi holds the fiber-component indices of the basis sections; it is a
    homomorphism into Z/count componentwise.
    """

    label: str
    role: str
    count: int
    at_infinity: bool
    psi: tuple[int, ...]


@dataclass(frozen=True)
class CaseLattice:
    """Basis, Gram matrix and reducible fibers of one tangent-line case."""

    name: str
    basis: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    fibers: tuple[CaseFiber, ...]

    def __post_init__(self) -> None:
        rank = len(self.basis)
        if len(self.gram) != rank or any(len(row) != rank for row in self.gram):
            raise IntegrityError(f"case {self.name}: Gram matrix is not {rank}x{rank}")
        for r in range(rank):
            for c in range(rank):
                if self.gram[r][c] != self.gram[c][r]:
                    raise IntegrityError(f"case {self.name}: Gram matrix not symmetric")
        for order in range(1, rank + 1):
            minor = [
                [self.gram[r][c] for c in range(order)] for r in range(order)
            ]
            if _determinant(minor) <= 0:
                raise IntegrityError(
                    f"case {self.name}: Gram matrix is not positive definite"
                )
        for fiber in self.fibers:
            if fiber.role not in (NODE_FIBER, CUSP_FIBER, LINE_FIBER):
                raise IntegrityError(
                    f"case {self.name}: unknown fiber role {fiber.role!r}"
                )
            if fiber.count < 2:
                raise IntegrityError(
                    f"case {self.name}: fiber {fiber.label} is not reducible"
                )
            if len(fiber.psi) != rank:
                raise IntegrityError(
                    f"case {self.name}: fiber {fiber.label} has a component row "
                    f"of length {len(fiber.psi)}, expected {rank}"
                )
            if any(index < 0 or index >= fiber.count for index in fiber.psi):
                raise IntegrityError(
                    f"case {self.name}: fiber {fiber.label} component index "
                    f"out of range"
                )
        # The stated diagonal heights must agree with the fiber data under
        # the height formula for sections not meeting the zero section.
        for k in range(rank):
            expected = Fraction(2)
            for fiber in self.fibers:
                expected -= component_contribution(
                    fiber.count, fiber.psi[k], fiber.psi[k]
                )
            if self.gram[k][k] != expected:
                raise IntegrityError(
                    f"case {self.name}: stated height of {self.basis[k]} "
                    f"({self.gram[k][k]}) disagrees with its fiber data "
                    f"({expected})"
                )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def norm(self, vector: Sequence[int]) -> Fraction:
        """The height <v, v> of an integer combination of the basis."""
        if len(vector) != self.rank:
            raise PreconditionError(
                f"case {self.name} expects vectors of length {self.rank}"
            )
        total = Fraction(0)
        for r in range(self.rank):
            for c in range(self.rank):
                total += self.gram[r][c] * vector[r] * vector[c]
        return total

    def combination_label(self, vector: Sequence[int]) -> str:
        """Render a vector as an integer combination of the basis sections."""
        parts = [
            f"[{coefficient}]{name}"
            for coefficient, name in zip(vector, self.basis)
            if coefficient != 0
        ]
        return " + ".join(parts) if parts else "O"


def _fraction(numerator: int, denominator: int = 1) -> Fraction:
    return Fraction(numerator, denominator)


CASE_I = CaseLattice(
    name="I",
    basis=("P1", "P2", "P3"),
    gram=(
        (_fraction(1, 3), _fraction(1, 6), _fraction(0)),
        (_fraction(1, 6), _fraction(1, 3), _fraction(0)),
        (_fraction(0), _fraction(0), _fraction(1, 2)),
    ),
    fibers=(
        CaseFiber("v1", NODE_FIBER, 2, False, (1, 0, 1)),
        CaseFiber("v2", NODE_FIBER, 2, False, (0, 1, 1)),
        CaseFiber("v3", CUSP_FIBER, 3, False, (1, 2, 0)),
        CaseFiber("vinf", LINE_FIBER, 2, True, (1, 1, 1)),
    ),
)

CASE_II = CaseLattice(
    name="II",
    basis=("P1", "P2"),
    gram=(
        (_fraction(1, 6), _fraction(0)),
        (_fraction(0), _fraction(1, 6)),
    ),
    fibers=(
        CaseFiber("v1", NODE_FIBER, 2, False, (1, 0)),
        CaseFiber("v2", NODE_FIBER, 2, False, (0, 1)),
        CaseFiber("v3", CUSP_FIBER, 3, False, (1, 1)),
        CaseFiber("vinf", LINE_FIBER, 3, True, (1, 2)),
    ),
)

CASE_III = CaseLattice(
    name="III",
    basis=("P1", "P2"),
    gram=(
        (_fraction(1, 5), _fraction(1, 10)),
        (_fraction(1, 10), _fraction(3, 10)),
    ),
    fibers=(
        CaseFiber("v1", NODE_FIBER, 2, False, (1, 0)),
        CaseFiber("v2", NODE_FIBER, 2, False, (1, 1)),
        CaseFiber("vinf", CUSP_FIBER, 5, True, (1, 3)),
    ),
)

CASE_IV = CaseLattice(
    name="IV",
    basis=("P3", "P2"),
    gram=(
        (_fraction(1, 2), _fraction(0)),
        (_fraction(0), _fraction(1, 12)),
    ),
    fibers=(
        CaseFiber("v1", NODE_FIBER, 2, False, (1, 1)),
        CaseFiber("v2", CUSP_FIBER, 3, False, (0, 1)),
        CaseFiber("vinf", NODE_FIBER, 4, True, (2, 1)),
    ),
)

CASES: Mapping[str, CaseLattice] = {
    "I": CASE_I,
    "II": CASE_II,
    "III": CASE_III,
    "IV": CASE_IV,
}

CASE_NAMES: tuple[str, ...] = ("I", "II", "III", "IV")


def target_height(case: CaseLattice, conic_type: int) -> Fraction | None:
    """Required section height for a conic of the given type, if attainable.

    A type needs as many node fibers as nodes the conic passes through, and
    a cusp fiber when it passes through the cusp; a fiber sitting over the
    line at infinity cannot be used because the corresponding section would
    not map to a conic.  Returns None when the case lacks the needed
    finite fibers.
    """
    if conic_type not in _TYPE_TABLE:
        raise PreconditionError(
            f"unknown conic type {conic_type}; expected 1..6"
        )
    nodes_needed, cusp_needed = _TYPE_TABLE[conic_type]
    finite_nodes = [
        f for f in case.fibers if f.role == NODE_FIBER and not f.at_infinity
    ]
    finite_cusps = [
        f for f in case.fibers if f.role == CUSP_FIBER and not f.at_infinity
    ]
    if len(finite_nodes) < nodes_needed:
        return None
    if cusp_needed and not finite_cusps:
        return None
    height = Fraction(2) - Fraction(nodes_needed, 2)
    if cusp_needed:
        count = finite_cusps[0].count
        height -= Fraction(count - 1, count)
    return height


def _coordinate_bound(case: CaseLattice, height: Fraction) -> int:
    """Floor of sqrt(height / lambda) for the Gershgorin eigenvalue bound."""
    lower = None
    for r in range(case.rank):
        row_bound = case.gram[r][r] - sum(
            abs(case.gram[r][c]) for c in range(case.rank) if c != r
        )
        if lower is None or row_bound < lower:
            lower = row_bound
    if lower is None or lower <= 0:
        raise IntegrityError(
            f"case {case.name}: Gershgorin bound is not positive; "
            f"cannot bound the enumeration box"
        )
    ratio = height / lower
    return isqrt(ratio.numerator * ratio.denominator) // ratio.denominator


def enumerate_height_vectors(
    case: CaseLattice, height: Fraction
) -> list[tuple[int, ...]]:
    """All classes {v, -v} with <v, v> equal to the given height.

    Returns canonical representatives (first nonzero coordinate positive),
    sorted.
    """
    if height <= 0:
        raise PreconditionError("the target height must be positive")
    bound = _coordinate_bound(case, height)
    classes: set[tuple[int, ...]] = set()
    for vector in product(range(-bound, bound + 1), repeat=case.rank):
        if all(coordinate == 0 for coordinate in vector):
            continue
        if case.norm(vector) != height:
            continue
        classes.add(_canonical_class(vector))
    return sorted(classes)


def _canonical_class(vector: tuple[int, ...]) -> tuple[int, ...]:
    for coordinate in vector:
        if coordinate > 0:
            return vector
        if coordinate < 0:
            return tuple(-c for c in vector)
    return vector


def _psi_value(fiber: CaseFiber, vector: Sequence[int]) -> int:
    return sum(p * v for p, v in zip(fiber.psi, vector)) % fiber.count


def _matches_type(case: CaseLattice, vector: Sequence[int], conic_type: int) -> bool:
    nodes_needed, cusp_needed = _TYPE_TABLE[conic_type]
    nodes_hit = 0
    cusp_hit = False
    for fiber in case.fibers:
        value = _psi_value(fiber, vector)
        if fiber.at_infinity:
            if value != 0:
                return False
            continue
        if fiber.role == NODE_FIBER and value != 0:
            nodes_hit += 1
        if fiber.role == CUSP_FIBER and value != 0:
            cusp_hit = True
    return nodes_hit == nodes_needed and cusp_hit == cusp_needed


def vectors_for_type(case: CaseLattice, conic_type: int) -> list[tuple[int, ...]]:
    """Canonical class representatives giving weak contact conics of a type."""
    height = target_height(case, conic_type)
    if height is None:
        return []
    return [
        vector
        for vector in enumerate_height_vectors(case, height)
        if _matches_type(case, vector, conic_type)
    ]


def count_by_type(case: CaseLattice) -> tuple[int, ...]:
    """Number of weak contact conics of each type 1..6 for one case."""
    return tuple(len(vectors_for_type(case, t)) for t in CONIC_TYPES)


def main_theorem_rows() -> list[tuple[str, tuple[int, ...]]]:
    """The full count table, one row per case, computed by enumeration."""
    return [(name, count_by_type(CASES[name])) for name in CASE_NAMES]


# ---------------------------------------------------------------------------
# Integer-matrix utilities for the basis-extension and independence checks


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    work = [list(map(int, row)) for row in rows]
    if not work or not work[0]:
        return []
    height, width = len(work), len(work[0])
    if any(len(row) != width for row in work):
        raise PreconditionError("ragged integer matrix")
    invariants: list[int] = []
    top = 0
    while top < min(height, width):
        pivot = min(
            (
                (abs(work[r][c]), r, c)
                for r in range(top, height)
                for c in range(top, width)
                if work[r][c] != 0
            ),
            default=None,
        )
        if pivot is None:
            break
        _, r0, c0 = pivot
        work[top], work[r0] = work[r0], work[top]
        for row in work:
            row[top], row[c0] = row[c0], row[top]
        while True:
            for r in range(top + 1, height):
                while work[r][top]:
                    q = work[r][top] // work[top][top]
                    for c in range(top, width):
                        work[r][c] -= q * work[top][c]
                    if work[r][top]:
                        work[top], work[r] = work[r], work[top]
            for c in range(top + 1, width):
                while work[top][c]:
                    q = work[top][c] // work[top][top]
                    for r in range(top, height):
                        work[r][c] -= q * work[r][top]
                    if work[top][c]:
                        for r in range(top, height):
                            work[r][top], work[r][c] = work[r][c], work[r][top]
            column_clean = all(work[r][top] == 0 for r in range(top + 1, height))
            row_clean = all(work[top][c] == 0 for c in range(top + 1, width))
            if column_clean and row_clean:
                break
        invariants.append(abs(work[top][top]))
        top += 1
    # A diagonal form determines the invariant factors after gcd/lcm
    # normalization into a divisibility chain.
    changed = True
    while changed:
        changed = False
        for i in range(len(invariants) - 1):
            a, b = invariants[i], invariants[i + 1]
            if b % a:
                g = gcd(a, b)
                invariants[i], invariants[i + 1] = g, a * b // g
                changed = True
    invariants.sort()
    return invariants


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix."""
    return len(smith_invariants(rows))


def extends_to_basis(rows: Sequence[Sequence[int]]) -> bool:
    """Whether the row vectors extend to a basis of the ambient Z^n.

    True exactly when the rows are independent and all Smith invariant
    factors are 1, i.e. the quotient by the row span is torsion free.
    """
    invariants = smith_invariants(rows)
    return len(invariants) == len(rows) and all(d == 1 for d in invariants)


# ---------------------------------------------------------------------------
# Arrangement pair reports


@dataclass(frozen=True)
class PairCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ZariskiReport:
    """Re-verified lattice hypotheses for one arrangement pair."""

    pair_id: str
    left: str
    right: str
    swapped: str  # "companion curve" or "contact conic"
    section_1: str
    section_2: str
    checks: tuple[PairCheck, ...]
    fingerprints_equal: bool
    conclusion: str

    @property
    def all_lattice_checks_pass(self) -> bool:
        return all(check.passed for check in self.checks)

    def render(self) -> str:
        lines = [
            f"pair {self.pair_id}: {self.left} vs {self.right}",
            f"  differ in: {self.swapped}",
            f"  sections: s1 = {self.section_1}, s2 = {self.section_2}",
        ]
        for check in self.checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(f"  [{status}] {check.name}: {check.detail}")
        agreement = "equal" if self.fingerprints_equal else "different"
        lines.append(f"  fingerprints: {agreement}")
        lines.append(f"  conclusion: {self.conclusion}")
        return "\n".join(lines)


# For each pair: the two arrangement names, the distinguished sections
# (coordinates over the case I basis P1, P2, P3), and which member is
# swapped between the arrangements.
_SECTION_VECTORS: Mapping[str, tuple[int, int, int]] = {
    "P0": (-1, 1, 0),
    "P1": (1, 0, 0),
    "P2": (0, 1, 0),
}

SWAP_COMPANION = "companion curve"
SWAP_CONIC = "contact conic"

_PAIRS: Mapping[str, tuple[str, str, str, str, str]] = {
    "B11-B21": ("B11", "B21", "P1", "P2", SWAP_COMPANION),
    "B22-B12": ("B22", "B12", "P2", "P1", SWAP_COMPANION),
    "B11-B12": ("B11", "B12", "P1", "P2", SWAP_CONIC),
    "B11-B10": ("B11", "B10", "P1", "P0", SWAP_CONIC),
    "B22-B21": ("B22", "B21", "P2", "P1", SWAP_CONIC),
    "B22-B20": ("B22", "B20", "P2", "P0", SWAP_CONIC),
    "D0-D1": ("D0", "D1", "P0", "P1", SWAP_CONIC),
    "D0-D2": ("D0", "D2", "P0", "P2", SWAP_CONIC),
}

PAIR_NAMES: tuple[str, ...] = tuple(sorted(_PAIRS))


def _vector_of(example: WorkedExample, name: str) -> tuple[int, int, int]:
    vector = _SECTION_VECTORS[name]
    combined = Section.zero(example.model)
    for coefficient, basis_name in zip(vector, ("P1", "P2", "P3")):
        combined = combined + mul(coefficient, example.sections[basis_name])
    if combined != example.sections[name]:
        raise IntegrityError(
            f"stated coordinates {vector} of {name} disagree with the group law"
        )
    return vector


def zariski_pair_report(pair_id: str) -> ZariskiReport:
    """Re-verify the lattice hypotheses for one arrangement pair.

    The checks cover: both arrangements decompose as quartic + section
    image + doubled-section image; (s1, s2) extends to a basis of the
    section lattice (Smith normal form); s1 and [2]s1 are dependent; the
    swapped pair is independent.  The fingerprint comparison records
    whether the combinatorial necessary conditions agree.  The
    topological conclusion is cited from the underlying criterion, not
    re-proved here.
    """
    if pair_id not in _PAIRS:
        raise PreconditionError(
            f"unknown pair {pair_id!r}; expected one of {', '.join(PAIR_NAMES)}"
        )
    left_name, right_name, s1_name, s2_name, swapped = _PAIRS[pair_id]
    example = load_worked_example()
    checks: list[PairCheck] = []

    s1_vector = _vector_of(example, s1_name)
    s2_vector = _vector_of(example, s2_name)
    s1 = example.sections[s1_name]
    s2 = example.sections[s2_name]

    left_components = ARRANGEMENTS[left_name]
    right_components = ARRANGEMENTS[right_name]
    shared_ok = (
        left_components[0] == right_components[0] == "Q"
        and (
            left_components[2] == right_components[2]
            if swapped == SWAP_COMPANION
            else left_components[1] == right_components[1]
        )
    )
    checks.append(
        PairCheck(
            "arrangements share the quartic and the unswapped member",
            shared_ok,
            f"{left_name} = Q + {left_components[1]} + {left_components[2]}, "
            f"{right_name} = Q + {right_components[1]} + {right_components[2]}",
        )
    )

    def image_matches(curve_key: str, section: Section) -> bool:
        return section_to_plane_curve(section).form.is_proportional(
            example.curve(curve_key).form
        )

    if swapped == SWAP_COMPANION:
        identities = (
            (left_components[1], s1, f"{left_components[1]} is the image of {s1_name}"),
            (right_components[1], s2, f"{right_components[1]} is the image of {s2_name}"),
            (
                left_components[2],
                mul(2, s1),
                f"{left_components[2]} is the image of [2]{s1_name}",
            ),
        )
    else:
        identities = (
            (left_components[1], s1, f"{left_components[1]} is the image of {s1_name}"),
            (
                left_components[2],
                mul(2, s1),
                f"{left_components[2]} is the image of [2]{s1_name}",
            ),
            (
                right_components[2],
                mul(2, s2),
                f"{right_components[2]} is the image of [2]{s2_name}",
            ),
        )
    for curve_key, section, description in identities:
        checks.append(
            PairCheck(
                "member identified as a section image",
                image_matches(curve_key, section),
                description,
            )
        )

    invariants = smith_invariants([list(s1_vector), list(s2_vector)])
    checks.append(
        PairCheck(
            f"({s1_name}, {s2_name}) extends to a basis of the section lattice",
            extends_to_basis([list(s1_vector), list(s2_vector)]),
            f"Smith invariants {tuple(invariants)}",
        )
    )

    double_vector = tuple(2 * c for c in s1_vector)
    dependence_rank = integer_rank([list(s1_vector), list(double_vector)])
    checks.append(
        PairCheck(
            f"{s1_name} and [2]{s1_name} are linearly dependent",
            dependence_rank == 1,
            f"rank {dependence_rank}",
        )
    )

    if swapped == SWAP_COMPANION:
        independent_pair = (s2_name, f"[2]{s1_name}")
        independence_rank = integer_rank([list(s2_vector), list(double_vector)])
    else:
        independent_pair = (s1_name, s2_name)
        independence_rank = integer_rank([list(s1_vector), list(s2_vector)])
    checks.append(
        PairCheck(
            f"{independent_pair[0]} and {independent_pair[1]} are linearly independent",
            independence_rank == 2,
            f"rank {independence_rank}",
        )
    )

    left_fingerprint = arrangement_fingerprint(example.arrangement(left_name))
    right_fingerprint = arrangement_fingerprint(example.arrangement(right_name))
    fingerprints_equal = left_fingerprint == right_fingerprint

    lattice_ok = all(check.passed for check in checks)
    if lattice_ok:
        conclusion = (
            "lattice hypotheses verified; the arrangements are not "
            "homeomorphic as plane pairs (topological conclusion cited, "
            "not re-proved here)"
        )
        if fingerprints_equal:
            conclusion += (
                "; fingerprints agree, consistent with equal combinatorics "
                "(a necessary condition, not a proof)"
            )
        else:
            conclusion += (
                "; fingerprints differ, so equal combinatorics is not "
                "corroborated by this implementation"
            )
    else:
        conclusion = "lattice hypotheses FAILED; no conclusion"
    return ZariskiReport(
        pair_id=pair_id,
        left=left_name,
        right=right_name,
        swapped=swapped,
        section_1=s1_name,
        section_2=s2_name,
        checks=tuple(checks),
        fingerprints_equal=fingerprints_equal,
        conclusion=conclusion,
    )
