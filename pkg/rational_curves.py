"""
Rational Curves Module - immersed rational curves in P^n

A curve is a tuple phi of n+1 binary forms of degree d. Its normal bundle is
the cokernel of the Jacobian map O(1)^2 -> O(d)^(n+1), (l1, l2) |->
l1*d0(phi) + l2*d1(phi). Tangent vectors to the space of curves are degree-d
tuples modulo that image of linear pairs; the fibre space E of the Kronecker
structure is spanned by pairs (p1, p2) of degree-(d-1) forms divisible by
x1^2 together with constant vectors u.
"""

import logging
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from config import COEFF_BOUND, MAX_REJECTIONS
from errors import InvalidInputError, PropertyViolation
from exact_core import (
    BinaryForm,
    ExactMatrix,
    GaussianRational,
    ONE,
    ZERO,
    Vector,
    form_divrem,
    form_gcd_many,
    gq,
    maximal_minors,
    mat_kernel_basis,
    mat_rank,
    mat_solve,
    rref,
    unit_vector,
    vec_is_zero,
    vector,
)
from kronecker_core import (
    KroneckerModule,
    QuaternionicData,
    SigmaVariant,
    is_quaternionic,
    sigma_matrix,
    structure_factor,
)
from p1_bundles import (
    SteinerResolution,
    generic_section_splitting,
    h0_twist,
    h1_twist,
    splitting_type,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RationalCurve:
    n: int
    d: int
    phi: Tuple[BinaryForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        if self.n < 3:
            raise InvalidInputError(f"Ambient dimension must be at least 3, got {self.n}.")
        if self.d < 3:
            raise InvalidInputError(f"Degree must be at least 3, got {self.d}.")
        if len(self.phi) != self.n + 1:
            raise InvalidInputError(f"A curve in P^{self.n} needs {self.n + 1} forms, got {len(self.phi)}.")
        fixed = []
        for i, form in enumerate(self.phi):
            if not isinstance(form, BinaryForm):
                raise InvalidInputError(f"Component {i} is not a binary form.")
            if form.is_zero:
                form = BinaryForm.zero(self.d)
            elif form.degree != self.d:
                raise InvalidInputError(f"Component {i} has degree {form.degree}, expected {self.d}.")
            fixed.append(form)
        object.__setattr__(self, "phi", tuple(fixed))

    @classmethod
    def from_coefficients(cls, rows: Sequence[Sequence]) -> "RationalCurve":
        d = len(rows[0]) - 1
        return cls(len(rows) - 1, d, tuple(BinaryForm(d, row) for row in rows))

    @cached_property
    def partials(self) -> Tuple[Tuple[BinaryForm, ...], Tuple[BinaryForm, ...]]:
        return (
            tuple(f.derivative(0) for f in self.phi),
            tuple(f.derivative(1) for f in self.phi),
        )

    def hyperplane(self, t: Sequence) -> BinaryForm:
        """f_t = sum t_i phi_i, the pullback of the hyperplane t."""
        t = vector(t)
        if len(t) != self.n + 1:
            raise InvalidInputError(f"Hyperplane vector must have length {self.n + 1}.")
        if vec_is_zero(t):
            raise InvalidInputError("Hyperplane vector must be nonzero.")
        total = BinaryForm.zero(self.d)
        for ti, form in zip(t, self.phi):
            if not ti.is_zero:
                total = total + form * ti
        return total

    @property
    def fibre_dimension(self) -> int:
        return 2 * self.d + self.n - 3


@dataclass(frozen=True)
class CurveDiagnostics:
    basepoint_free: bool
    nondegenerate: bool
    immersed: bool
    basepoint_witness: Optional[BinaryForm]
    coefficient_rank: int
    immersion_witness: Optional[BinaryForm]

    @property
    def valid(self) -> bool:
        return self.basepoint_free and self.nondegenerate and self.immersed

    def failures(self) -> List[str]:
        names = []
        if not self.basepoint_free:
            names.append("basepoint_free")
        if not self.nondegenerate:
            names.append("nondegenerate")
        if not self.immersed:
            names.append("immersed")
        return names


@dataclass(frozen=True)
class CurveTangent:
    rep: Tuple[BinaryForm, ...]
    canonical: Vector


@dataclass(frozen=True)
class EFiberElement:
    p1: BinaryForm
    p2: BinaryForm
    u: Vector


@dataclass(frozen=True)
class NormalSplitting:
    degrees: Tuple[int, ...]
    a: Optional[int] = None
    b: Optional[int] = None


@dataclass(frozen=True)
class DimensionReport:
    h0N: int
    expected_dim: int
    rank: int
    expected_rank: int
    nseq_holds: Optional[bool]
    h1_minus_one: int

    @property
    def consistent(self) -> bool:
        return (
            self.h0N == self.expected_dim
            and self.rank == self.expected_rank
            and self.nseq_holds is not False
            and self.h1_minus_one == 0
        )


@dataclass(frozen=True)
class HyperplaneSection:
    form: BinaryForm
    multiplicity_at_infinity: int
    multiplicity_at_zero: int


@dataclass(frozen=True)
class QuaternionicReport:
    equivariant: bool
    variant: Optional[SigmaVariant]
    factor: Optional[GaussianRational]
    quaternionic: bool
    structure_sign: Optional[int]
    reason: str
    data: Optional[QuaternionicData] = None


# ---------------------------------------------------------------------------
# Validation and the Jacobian resolution
# ---------------------------------------------------------------------------

def _jacobian_rows(curve: RationalCurve) -> List[List[BinaryForm]]:
    d0, d1 = curve.partials
    return [[a, b] for a, b in zip(d0, d1)]


@lru_cache(maxsize=512)
def validate(curve: RationalCurve) -> CurveDiagnostics:
    basepoint = form_gcd_many(curve.phi)
    coeff_rank = mat_rank(ExactMatrix([f.coeffs for f in curve.phi], curve.n + 1, curve.d + 1))
    immersion = form_gcd_many(maximal_minors(_jacobian_rows(curve), 2))
    return CurveDiagnostics(
        basepoint_free=basepoint is not None and basepoint.degree == 0,
        nondegenerate=coeff_rank == curve.n + 1,
        immersed=immersion is not None and immersion.degree == 0,
        basepoint_witness=basepoint,
        coefficient_rank=coeff_rank,
        immersion_witness=immersion,
    )


def require_valid(curve: RationalCurve) -> None:
    diag = validate(curve)
    if not diag.valid:
        raise InvalidInputError(f"Curve fails validation: {', '.join(diag.failures())}.")


@lru_cache(maxsize=512)
def normal_resolution(curve: RationalCurve) -> SteinerResolution:
    """0 -> O(1)^2 -> O(d)^(n+1) -> N -> 0 with matrix D(phi)."""
    d0, d1 = curve.partials
    return SteinerResolution.from_columns((1, 1), (curve.d,) * (curve.n + 1), [d0, d1])


def h0_normal(curve: RationalCurve, i: int) -> int:
    """h0(N(-i)) where the ambient O(1) pulls back to O(d)."""
    require_valid(curve)
    if i < 0:
        raise InvalidInputError("Twist index must be nonnegative.")
    return h0_twist(normal_resolution(curve), -i * curve.d)


def normal_splitting(curve: RationalCurve) -> NormalSplitting:
    require_valid(curve)
    degrees = tuple(splitting_type(normal_resolution(curve)))
    if curve.n != 3:
        return NormalSplitting(degrees)
    a, b = degrees[0] - curve.d, degrees[1] - curve.d
    if a < 2 or b < 2 or a + b != 2 * curve.d - 2:
        raise PropertyViolation(
            f"Normal splitting {list(degrees)} breaks a, b >= 2 with a + b = {2 * curve.d - 2}.",
            "ghione_sacchiero",
            degrees,
        )
    return NormalSplitting(degrees, a, b)


def twistor_h0_list(curve: RationalCurve) -> List[int]:
    """[h0(N(-i)) for i = 0, 1, ...] up to and including the first zero."""
    values = []
    i = 0
    while True:
        h = h0_normal(curve, i)
        values.append(h)
        if h == 0:
            return values
        i += 1


def twistor_generic_splitting(curve: RationalCurve) -> Dict[int, int]:
    """Generic splitting along twistor sections; total rank h0(N) - h0(N(-1)) = (n-1)d."""
    return generic_section_splitting(twistor_h0_list(curve), (curve.n - 1) * curve.d)


def dimension_report(curve: RationalCurve) -> DimensionReport:
    require_valid(curve)
    n, d = curve.n, curve.d
    h0N = h0_normal(curve, 0)
    rank = h0_normal(curve, 1)
    return DimensionReport(
        h0N=h0N,
        expected_dim=(n + 1) * d + n - 3,
        rank=rank,
        expected_rank=2 * d + n - 3,
        nseq_holds=(h0N == rank + 2 * d) if n == 3 else None,
        h1_minus_one=h1_twist(normal_resolution(curve), -d),
    )


def hyperplane_section(curve: RationalCurve, t: Sequence) -> HyperplaneSection:
    f = curve.hyperplane(t)
    return HyperplaneSection(f, f.x1_multiplicity, f.x0_multiplicity)


# ---------------------------------------------------------------------------
# Tangent space: degree-d tuples modulo D(phi)(linear pairs)
# ---------------------------------------------------------------------------

class TangentSpace:
    """Coset space with canonical representatives from the reduced echelon form of the image.

    Flat vectors are in (component, coefficient) order: the d+1 coefficients of
    component 0 (x0^d first), then those of component 1, and so on. This is not
    grlex on the monomials x0^a x1^b e_i. Coset coordinates are the entries at
    the non-pivot columns, taken in increasing column order.
    """

    def __init__(self, curve: RationalCurve):
        self.curve = curve
        self.width = curve.d + 1
        self.size = (curve.n + 1) * self.width
        d0, d1 = curve.partials
        linear = (BinaryForm.x0(), BinaryForm.x1())
        images = [self.flatten([l * g for g in column]) for column in (d0, d1) for l in linear]
        rows, pivots = rref(ExactMatrix(images, 4, self.size))
        if len(pivots) != 4:
            raise InvalidInputError("The image of linear pairs under D(phi) is not 4-dimensional.")
        self._rows = rows
        self._pivots = pivots
        pivot_set = set(pivots)
        self.free = [c for c in range(self.size) if c not in pivot_set]

    @property
    def dimension(self) -> int:
        return len(self.free)

    def flatten(self, forms: Sequence[BinaryForm]) -> Vector:
        out: List[GaussianRational] = []
        for form in forms:
            if form.is_zero:
                out.extend([ZERO] * self.width)
            elif form.degree != self.curve.d:
                raise InvalidInputError(f"Tangent components must have degree {self.curve.d}.")
            else:
                out.extend(form.coeffs)
        return tuple(out)

    def unflatten(self, vec: Sequence) -> Tuple[BinaryForm, ...]:
        w = self.width
        return tuple(BinaryForm(self.curve.d, vec[i * w:(i + 1) * w]) for i in range(self.curve.n + 1))

    def reduce(self, vec: Sequence) -> Vector:
        v = list(vec)
        for row, p in zip(self._rows, self._pivots):
            c = v[p]
            if not c.is_zero:
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(v)

    def coordinates(self, vec: Sequence) -> Vector:
        v = self.reduce(vec)
        return tuple(v[c] for c in self.free)

    def lift(self, coords: Sequence) -> Vector:
        v = [ZERO] * self.size
        for c, x in zip(self.free, coords):
            v[c] = gq(x)
        return tuple(v)

    def tangent(self, rep: Sequence[BinaryForm]) -> CurveTangent:
        flat = self.flatten(rep)
        return CurveTangent(tuple(rep), self.coordinates(flat))


@lru_cache(maxsize=256)
def tangent_space(curve: RationalCurve) -> TangentSpace:
    return TangentSpace(curve)


# ---------------------------------------------------------------------------
# The fibre E and the alpha map
# ---------------------------------------------------------------------------

def make_fibre_element(curve: RationalCurve, p1: BinaryForm, p2: BinaryForm, u: Sequence) -> EFiberElement:
    d = curve.d
    fixed = []
    for name, p in (("p1", p1), ("p2", p2)):
        if p.is_zero:
            p = BinaryForm.zero(d - 1)
        elif p.degree != d - 1:
            raise InvalidInputError(f"{name} must have degree {d - 1}.")
        elif p.x1_multiplicity < 2:
            raise InvalidInputError(f"{name} must be divisible by x1^2.")
        fixed.append(p)
    u = vector(u)
    if len(u) != curve.n + 1:
        raise InvalidInputError(f"u must have length {curve.n + 1}.")
    return EFiberElement(fixed[0], fixed[1], u)


def fibre_basis(curve: RationalCurve) -> List[EFiberElement]:
    """x0^(d-3-m) x1^(m+2) in p1, then in p2, then the unit vectors u = e_i."""
    d, n = curve.d, curve.n
    zero_p = BinaryForm.zero(d - 1)
    zero_u = (ZERO,) * (n + 1)
    basis = []
    for m in range(d - 2):
        basis.append(EFiberElement(BinaryForm.monomial(d - 1, m + 2), zero_p, zero_u))
    for m in range(d - 2):
        basis.append(EFiberElement(zero_p, BinaryForm.monomial(d - 1, m + 2), zero_u))
    for i in range(n + 1):
        basis.append(EFiberElement(zero_p, zero_p, unit_vector(n + 1, i)))
    return basis


def fibre_element(curve: RationalCurve, coords: Sequence) -> EFiberElement:
    """Inverse of fibre_coordinates."""
    d, n = curve.d, curve.n
    coords = vector(coords)
    if len(coords) != curve.fibre_dimension:
        raise InvalidInputError(f"Fibre coordinates must have length {curve.fibre_dimension}.")
    p1 = BinaryForm(d - 1, [ZERO, ZERO] + list(coords[: d - 2]))
    p2 = BinaryForm(d - 1, [ZERO, ZERO] + list(coords[d - 2: 2 * d - 4]))
    return EFiberElement(p1, p2, coords[2 * d - 4:])


def fibre_coordinates(curve: RationalCurve, e: EFiberElement) -> Vector:
    d = curve.d
    return tuple(e.p1.coeffs[2:d]) + tuple(e.p2.coeffs[2:d]) + tuple(e.u)


def alpha_eval(curve: RationalCurve, e: EFiberElement, t: Sequence) -> CurveTangent:
    """Class of (D(phi)(p1, p2) mod f_t) + u*f_t."""
    require_valid(curve)
    f_t = curve.hyperplane(t)
    d0, d1 = curve.partials
    rep = []
    for g0, g1, ui in zip(d0, d1, e.u):
        moved = e.p1 * g0 + e.p2 * g1
        if moved.is_zero:
            remainder = BinaryForm.zero(curve.d)
        else:
            remainder = form_divrem(moved, f_t)[1]
        rep.append(remainder + f_t * ui)
    return tangent_space(curve).tangent(rep)


def alpha_matrix(curve: RationalCurve, t: Sequence) -> ExactMatrix:
    """Coset coordinates of alpha(basis element, t), one column per fibre basis element."""
    columns = [alpha_eval(curve, e, t).canonical for e in fibre_basis(curve)]
    return ExactMatrix.from_columns(columns, tangent_space(curve).dimension)


def alpha_slice_rank(curve: RationalCurve, t: Sequence) -> int:
    return mat_rank(alpha_matrix(curve, t))


def _minor_divisible(minor: BinaryForm, f_t: BinaryForm) -> bool:
    return minor.is_zero or form_divrem(minor, f_t)[1].is_zero


def vanishing_check(curve: RationalCurve, s: CurveTangent, t: Sequence) -> bool:
    """f_t divides every 3x3 minor of [D(phi) | rep(s)]."""
    f_t = curve.hyperplane(t)
    d0, d1 = curve.partials
    rows = [[a, b, q] for a, b, q in zip(d0, d1, s.rep)]
    return all(_minor_divisible(m, f_t) for m in maximal_minors(rows, 3))


def vanishing_subspace(curve: RationalCurve, t: Sequence) -> ExactMatrix:
    """Coset coordinates (as columns) of a basis of the tangents vanishing on {f_t = 0}.

    Computed directly as the kernel of q |-> (3x3 minors of [D(phi)|q] mod f_t),
    without reference to the alpha map.
    """
    require_valid(curve)
    f_t = curve.hyperplane(t)
    d0, d1 = curve.partials
    n1, d = curve.n + 1, curve.d
    # minor over rows (a, b, c) expands as q_a m_bc - q_b m_ac + q_c m_ab
    pair = {(x, y): d0[x] * d1[y] - d1[x] * d0[y] for x, y in combinations(range(n1), 2)}
    triples = list(combinations(range(n1), 3))
    space = tangent_space(curve)
    columns = []
    for comp in range(n1):
        for power in range(d + 1):
            mono = BinaryForm.monomial(d, power)
            column: List[GaussianRational] = []
            for triple in triples:
                if comp not in triple:
                    column.extend([ZERO] * (f_t.degree + 1))
                    continue
                pos = triple.index(comp)
                others = tuple(x for x in triple if x != comp)
                term = mono * pair[others]
                if pos == 1:
                    term = -term
                if term.is_zero:
                    column.extend([ZERO] * (f_t.degree + 1))
                else:
                    column.extend(form_divrem(term, f_t)[1].coeffs)
            columns.append(column)
    conditions = ExactMatrix.from_columns(columns, len(triples) * (f_t.degree + 1))
    kernel = mat_kernel_basis(conditions)
    coords = [space.coordinates(v) for v in kernel]
    independent = _independent_columns(coords, space.dimension)
    logger.debug("vanishing subspace of dimension %d", len(independent))
    return ExactMatrix.from_columns(independent, space.dimension)


def _independent_columns(columns: Sequence[Vector], height: int) -> List[Vector]:
    if not columns:
        return []
    rows, pivots = rref(ExactMatrix.from_columns(list(columns), height))
    return [columns[p] for p in pivots]


def spans_equal(first: ExactMatrix, second: ExactMatrix) -> bool:
    r1, r2 = mat_rank(first), mat_rank(second)
    return r1 == r2 == mat_rank(first.hstack(second))


# ---------------------------------------------------------------------------
# The bilinear curve module (Cech lift of multiplication by f_t)
# ---------------------------------------------------------------------------

Laurent = Dict[Tuple[int, int], GaussianRational]


def _laurent(form: BinaryForm, shift0: int = 0, shift1: int = 0) -> Laurent:
    d = form.degree
    return {(d - i + shift0, i + shift1): c for i, c in enumerate(form.coeffs) if not c.is_zero}


def _laurent_mul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, ZERO) + c1 * c2
    return {k: c for k, c in out.items() if not c.is_zero}


def _laurent_add(p: Laurent, q: Laurent, sign: int = 1) -> Laurent:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, ZERO) + c * sign
    return {k: c for k, c in out.items() if not c.is_zero}


def _regular_part(p: Laurent) -> Laurent:
    """Terms regular on {x0 != 0}: nonnegative x1 exponent."""
    return {k: c for k, c in p.items() if k[1] >= 0}


def _multiplied_section(curve: RationalCurve, e: EFiberElement, f_t: BinaryForm) -> Tuple[BinaryForm, ...]:
    """Degree-d tuple representing f_t times the section of N(-d) given by e.

    (p1, p2)/(x0^(d-2) x1^d) is the connecting class; the lift on {x0 != 0} is
    the regular part of D(phi) applied to it, corrected by D(phi) of the
    regular part of f_t times the class so that the result is polynomial.
    """
    d = curve.d
    d0, d1 = curve.partials
    c1 = _laurent(e.p1, -(d - 2), -d)
    c2 = _laurent(e.p2, -(d - 2), -d)
    ft = _laurent(f_t)
    c1_reg = _regular_part(_laurent_mul(ft, c1))
    c2_reg = _regular_part(_laurent_mul(ft, c2))
    out = []
    for g0, g1, ui in zip(d0, d1, e.u):
        L0, L1 = _laurent(g0), _laurent(g1)
        sigma0 = _regular_part(_laurent_add(_laurent_mul(c1, L0), _laurent_mul(c2, L1)))
        y = _laurent_add(_laurent_mul(ft, sigma0), _laurent_add(_laurent_mul(c1_reg, L0), _laurent_mul(c2_reg, L1)), -1)
        coeffs = [ZERO] * (d + 1)
        for (a, b), c in y.items():
            if a < 0 or b < 0 or a + b != d:
                raise PropertyViolation("Cech lift did not glue to a polynomial tuple.", "curve_module", (a, b))
            coeffs[b] = c
        out.append(BinaryForm(d, coeffs) + f_t * ui)
    return tuple(out)


def multiply_section(curve: RationalCurve, e: EFiberElement, t: Sequence) -> CurveTangent:
    """Tangent f_t * s for the fibre element e, bilinear in (e, t)."""
    require_valid(curve)
    return tangent_space(curve).tangent(_multiplied_section(curve, e, curve.hyperplane(t)))


@lru_cache(maxsize=128)
def curve_module(curve: RationalCurve) -> KroneckerModule:
    """The (n+1)-Kronecker module E (x) C^(n+1) -> T of the curve."""
    require_valid(curve)
    space = tangent_space(curve)
    basis = fibre_basis(curve)
    maps = []
    for i in range(curve.n + 1):
        f_i = curve.phi[i]
        columns = [space.coordinates(space.flatten(_multiplied_section(curve, e, f_i))) for e in basis]
        maps.append(ExactMatrix.from_columns(columns, space.dimension))
    return KroneckerModule(curve.n + 1, len(basis), space.dimension, tuple(maps))



def clear_caches() -> None:
    for cached in (validate, normal_resolution, tangent_space, curve_module):
        cached.cache_clear()


# ---------------------------------------------------------------------------
# Equivariance and quaternionic data (n = 3)
# ---------------------------------------------------------------------------

def _involution(variant: SigmaVariant) -> Tuple[BinaryForm, BinaryForm]:
    """Linear part of the antiholomorphic involution of P^1 (before conjugation)."""
    if variant == SigmaVariant.STANDARD:
        return BinaryForm.linear(0, -1), BinaryForm.linear(1, 0)
    return BinaryForm.linear(0, 1), BinaryForm.linear(1, 0)


def _sigma_permute(forms: Sequence[BinaryForm], variant: SigmaVariant) -> Tuple[BinaryForm, ...]:
    """S(phi) = (-phi1, phi0, -phi3, phi2), or (phi1, phi0, phi3, phi2) for the split structure."""
    sign = -1 if variant == SigmaVariant.STANDARD else 1
    out = []
    for m in range(len(forms) // 2):
        out.extend([forms[2 * m + 1] * sign, forms[2 * m]])
    return tuple(out)


def _sigma_unpermute(forms: Sequence[BinaryForm], variant: SigmaVariant) -> Tuple[BinaryForm, ...]:
    sign = -1 if variant == SigmaVariant.STANDARD else 1
    out = []
    for m in range(len(forms) // 2):
        out.extend([forms[2 * m + 1], forms[2 * m] * sign])
    return tuple(out)


def equivariance_factor(curve: RationalCurve, variant: SigmaVariant) -> Optional[GaussianRational]:
    """mu with conj(phi)(involution) = mu * S(phi), or None."""
    if curve.n != 3:
        raise InvalidInputError("Equivariance is defined for curves in P^3.")
    l0, l1 = _involution(variant)
    pulled = [f.conj().compose(l0, l1) for f in curve.phi]
    target = _sigma_permute(curve.phi, variant)
    mu = None
    for p, q in zip(pulled, target):
        idx = next((i for i, c in enumerate(q.coeffs) if not c.is_zero), None)
        if idx is not None:
            mu = p.coeffs[idx] / q.coeffs[idx]
            break
    if mu is None or mu.is_zero:
        return None
    if all(p == q * mu for p, q in zip(pulled, target)):
        return mu
    return None


def tangent_real_structure(curve: RationalCurve, variant: SigmaVariant, mu: GaussianRational) -> ExactMatrix:
    """Matrix T with tau(v) = T conj(v) on coset coordinates.

    On representatives tau(F) = mu^-1 S^-1(conj(F) composed with the involution).
    """
    space = tangent_space(curve)
    l0, l1 = _involution(variant)
    inv_mu = ONE / mu
    columns = []
    for j in range(space.dimension):
        forms = space.unflatten(space.lift(unit_vector(space.dimension, j)))
        moved = _sigma_unpermute([f.compose(l0, l1) * inv_mu for f in forms], variant)
        columns.append(space.coordinates(space.flatten(moved)))
    return ExactMatrix.from_columns(columns, space.dimension)


def induced_quaternionic_data(curve: RationalCurve, variant: SigmaVariant, mu: GaussianRational) -> Optional[QuaternionicData]:
    """Solve B_0 J0 = T conj(A_0) for the fibre structure J0, B_b = sum_i S[i][b] A_i."""
    km = curve_module(curve)
    T = tangent_real_structure(curve, variant, mu)
    S = sigma_matrix(km.r, variant)
    B0 = km.slice_matrix(S.column(0))
    rhs = T @ km.maps[0].conj()
    columns = []
    for j in range(km.k):
        col = mat_solve(B0, rhs.column(j))
        if col is None:
            logger.info("no fibre structure solves the first basis identity")
            return None
        columns.append(col)
    return QuaternionicData(ExactMatrix.from_columns(columns, km.k), T, variant)


def quaternionic_report(curve: RationalCurve) -> QuaternionicReport:
    if curve.n != 3:
        raise InvalidInputError("Quaternionic reports are defined for curves in P^3.")
    require_valid(curve)
    for variant in (SigmaVariant.STANDARD, SigmaVariant.SPLIT):
        mu = equivariance_factor(curve, variant)
        if mu is None:
            continue
        if variant == SigmaVariant.SPLIT:
            logger.warning("curve is equivariant only for the split involution")
        elif curve_module(curve).k % 2:
            return QuaternionicReport(True, variant, mu, False, None, "odd fibre dimension")
        data = induced_quaternionic_data(curve, variant, mu)
        if data is None:
            return QuaternionicReport(True, variant, mu, False, None, "no induced fibre structure")
        c0 = structure_factor(data.J0)
        sign = None if c0 is None or not c0.is_real else (1 if c0.re > 0 else -1)
        ok = is_quaternionic(curve_module(curve), data)
        return QuaternionicReport(True, variant, mu, ok, sign, "checked on a full basis", data)
    reason = "not equivariant"
    if curve.d % 2 == 0:
        reason = "not equivariant (even degree excludes the standard involution)"
    return QuaternionicReport(False, None, None, False, None, reason)


# ---------------------------------------------------------------------------
# Random curves
# ---------------------------------------------------------------------------

def random_curve(d: int, n: int, rng: random.Random, bound: int = COEFF_BOUND) -> RationalCurve:
    """Integer coefficients in [-bound, bound], rejection-sampled against validate."""
    for attempt in range(MAX_REJECTIONS):
        rows = [[rng.randint(-bound, bound) for _ in range(d + 1)] for _ in range(n + 1)]
        curve = RationalCurve.from_coefficients(rows)
        if validate(curve).valid:
            if attempt:
                logger.debug("random curve accepted after %d rejections", attempt)
            return curve
    raise PropertyViolation(f"No valid curve of degree {d} in P^{n} after {MAX_REJECTIONS} draws.", "random_curve")


def twisted_cubic() -> RationalCurve:
    return RationalCurve.from_coefficients([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def sigma_cubic() -> RationalCurve:
    """(x0^3, x1^3, x0^2 x1, -x0 x1^2), equivariant for the standard involution."""
    return RationalCurve.from_coefficients([[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, -1, 0]])


def split_quartic() -> RationalCurve:
    """(x0^4, x1^4, x0^3 x1, x0 x1^3), equivariant for the split involution."""
    return RationalCurve.from_coefficients(
        [[1, 0, 0, 0, 0], [0, 0, 0, 0, 1], [0, 1, 0, 0, 0], [0, 0, 0, 1, 0]]
    )
