"""
Quadric Twistor Module - lines on the incidence quadric and their real structure

Points of P^3 x P^3 are pairs (x, y) of vectors in Q(i)^4; the quadric is
x.y = 0. A line is zeta |-> ([a + b zeta], [c + d zeta]). The real structure
is tau(x, y) = (sigma(x), sigma(y)) with sigma(z) = (-z1*, z0*, -z3*, z2*).

Real lines are encoded as quaternion tuples (q0, q1, p0, p1); the identification
is chosen from a finite family and certified symbolically.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from errors import InvalidInputError, PropertyViolation
from exact_core import (
    ExactMatrix,
    GaussianRational,
    I_UNIT,
    Polynomial,
    QuaternionValue,
    Vector,
    ZERO,
    dot,
    gq,
    mat_det,
    mat_kernel_basis,
    mat_rank,
    mat_signature,
    mat_solve,
    pair_product,
    polynomial_span_rank,
    rref,
    unit_vector,
    vec_is_zero,
    vector,
)

logger = logging.getLogger(__name__)

CONVENTION_COUNT = 256
PRINTED_CONVENTION = 0
DEGENERATE_LABEL = "O(2)+O+O(1)^2"
GENERIC_LABEL = "O(1)^4"


@dataclass(frozen=True)
class QuadricLine:
    a: Vector
    b: Vector
    c: Vector
    d: Vector

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = vector(getattr(self, name))
            if len(value) != 4:
                raise InvalidInputError(f"Line vector {name} must have length 4.")
            object.__setattr__(self, name, value)

    def point(self, zeta: Sequence) -> Tuple[Vector, Vector]:
        """Point at the homogeneous parameter [zeta0 : zeta1]."""
        z0, z1 = vector(zeta)
        if z0.is_zero and z1.is_zero:
            raise InvalidInputError("Line parameter must be nonzero.")
        first = tuple(z0 * p + z1 * q for p, q in zip(self.a, self.b))
        second = tuple(z0 * p + z1 * q for p, q in zip(self.c, self.d))
        return first, second


@dataclass(frozen=True)
class LineDiagnostics:
    independent_ab: bool
    independent_cd: bool
    ac: GaussianRational
    bd: GaussianRational
    ad_plus_bc: GaussianRational

    @property
    def valid(self) -> bool:
        return (
            self.independent_ab
            and self.independent_cd
            and self.ac.is_zero
            and self.bd.is_zero
            and self.ad_plus_bc.is_zero
        )


@dataclass(frozen=True)
class LineClass:
    degenerate: bool
    splitting: str


@dataclass(frozen=True)
class QuatTuple:
    q0: QuaternionValue
    q1: QuaternionValue
    p0: QuaternionValue
    p1: QuaternionValue

    def product(self) -> QuaternionValue:
        """q0 p0 + q1 p1"""
        return self.q0 * self.p0 + self.q1 * self.p1

    def scaled(self, r) -> "QuatTuple":
        return QuatTuple(r * self.q0, r * self.q1, r * self.p0, r * self.p1)


@dataclass(frozen=True)
class ConventionId:
    index: int
    certified: bool


@dataclass(frozen=True)
class ConventionReport:
    convention: ConventionId
    printed_certified: bool
    certified_count: int


@dataclass(frozen=True)
class OrbitWitness:
    u: QuaternionValue
    r: Fraction


@dataclass(frozen=True)
class ImhReport:
    rank: int
    kernel: Tuple[Vector, ...]
    zero_product_rank: int


@dataclass(frozen=True)
class HxGram:
    gram: ExactMatrix
    determinant: GaussianRational

    @property
    def nondegenerate(self) -> bool:
        return not self.determinant.is_zero


# ---------------------------------------------------------------------------
# Real structure and lines
# ---------------------------------------------------------------------------

def sigma4(z: Sequence):
    """(-conj z1, conj z0, -conj z3, conj z2); works on scalars and symbolic entries."""
    return (-z[1].conj(), z[0].conj(), -z[3].conj(), z[2].conj())


def _independent(u: Vector, v: Vector) -> bool:
    return mat_rank(ExactMatrix([u, v], 2, len(u))) == 2


def line_validate(a: Sequence, b: Sequence, c: Sequence, d: Sequence) -> LineDiagnostics:
    line = QuadricLine(a, b, c, d)
    return LineDiagnostics(
        independent_ab=_independent(line.a, line.b),
        independent_cd=_independent(line.c, line.d),
        ac=dot(line.a, line.c),
        bd=dot(line.b, line.d),
        ad_plus_bc=dot(line.a, line.d) + dot(line.b, line.c),
    )


def classify_line(line: QuadricLine) -> LineClass:
    """Normal bundle in the quadric: degenerate iff a.d = 0 (then b.c = 0 as well)."""
    diag = line_validate(line.a, line.b, line.c, line.d)
    if not diag.valid:
        raise InvalidInputError("Line does not lie on the quadric.")
    degenerate = dot(line.a, line.d).is_zero
    return LineClass(degenerate, DEGENERATE_LABEL if degenerate else GENERIC_LABEL)


def real_line_conditions(x: Sequence, y: Sequence) -> Tuple[GaussianRational, GaussianRational]:
    """(x.y, x.sigma(y) + sigma(x).y); both vanish for real line data."""
    x, y = vector(x), vector(y)
    return dot(x, y), dot(x, sigma4(y)) + dot(sigma4(x), y)


def real_line(x: Sequence, y: Sequence) -> QuadricLine:
    x, y = vector(x), vector(y)
    if len(x) != 4 or len(y) != 4:
        raise InvalidInputError("Real line data needs x and y in C^4.")
    if vec_is_zero(x) or vec_is_zero(y):
        raise InvalidInputError("Real line data needs x and y nonzero.")
    xy, mixed = real_line_conditions(x, y)
    if not xy.is_zero:
        raise InvalidInputError(f"x.y = {xy}, expected 0.")
    if not mixed.is_zero:
        raise InvalidInputError(f"x.sigma(y) + sigma(x).y = {mixed}, expected 0.")
    return QuadricLine(x, sigma4(x), y, sigma4(y))


def projective_equal(u: Sequence, v: Sequence) -> bool:
    u, v = vector(u), vector(v)
    if vec_is_zero(u) or vec_is_zero(v):
        return vec_is_zero(u) and vec_is_zero(v)
    return mat_rank(ExactMatrix([u, v], 2, len(u))) == 1


def tau_point(x: Sequence, y: Sequence) -> Tuple[Vector, Vector]:
    return sigma4(vector(x)), sigma4(vector(y))


def tau_parameter(zeta: Sequence) -> Vector:
    """[zeta0 : zeta1] |-> [-conj zeta1 : conj zeta0], the antipodal map on the line."""
    z0, z1 = vector(zeta)
    return (-z1.conj(), z0.conj())


def real_line_point(x: Sequence, y: Sequence, zeta: Sequence) -> Tuple[Vector, Vector]:
    return real_line(x, y).point(zeta)


def tau_preserves_quadric() -> bool:
    """sigma(x).sigma(y) = conj(x.y) as a polynomial identity in free coordinates."""
    x = [Polynomial.complex_variable(k) for k in range(4)]
    y = [Polynomial.complex_variable(k) for k in range(4, 8)]
    return dot(sigma4(x), sigma4(y)) == dot(x, y).conj()


# ---------------------------------------------------------------------------
# Quaternionic identification
# ---------------------------------------------------------------------------

def _base_pairs(x: Sequence, y: Sequence):
    """q0 = x0 + x1 j, q1 = x2 + x3 j, p0 = y0 - j y1, p1 = y2 - j y3 as complex pairs."""
    return [
        (x[0], x[1]),
        (x[2], x[3]),
        (y[0], -y[1].conj()),
        (y[2], -y[3].conj()),
    ]


def _convention_pairs(x: Sequence, y: Sequence, convention: int):
    """Bit 2e swaps the pair of entity e; bit 2e+1 negates its j-part afterwards.

    Conjugating all four entities at once is conjugation by j on every
    quaternion, which sends the product to its conjugate and leaves both
    certified identities unchanged, so it is not a separate bit. Per-entity
    conjugation and the j-side choice (a + j b against a + b j) would
    enumerate after these 256 ids: the printed id and the first certified id
    are both decided here, so they could only raise the certified count.
    """
    if not 0 <= convention < CONVENTION_COUNT:
        raise InvalidInputError(f"Convention id must lie in [0, {CONVENTION_COUNT}).")
    out = []
    for e, (a, b) in enumerate(_base_pairs(x, y)):
        if convention >> (2 * e) & 1:
            a, b = b, a
        if convention >> (2 * e + 1) & 1:
            b = -b
        out.append((a, b))
    return out


def to_quat_tuple(x: Sequence, y: Sequence, convention: Optional[int] = None) -> QuatTuple:
    x, y = vector(x), vector(y)
    if len(x) != 4 or len(y) != 4:
        raise InvalidInputError("Quaternion tuples are built from x and y in C^4.")
    if convention is None:
        convention = certify_convention().convention.index
    pairs = _convention_pairs(x, y, convention)
    return QuatTuple(*(QuaternionValue(a, b) for a, b in pairs))


def _symbolic_point():
    x = [Polynomial.complex_variable(k) for k in range(4)]
    y = [Polynomial.complex_variable(k) for k in range(4, 8)]
    return x, y


def _check_convention(convention: int) -> bool:
    x, y = _symbolic_point()
    return _check_pairs(x, y, _convention_pairs(x, y, convention))


def _check_pairs(x, y, pairs) -> bool:
    """Both identities for (q0, q1, p0, p1) given as complex pairs over the symbolic point (x, y)."""
    first = pair_product(*pairs[0], *pairs[2])
    second = pair_product(*pairs[1], *pairs[3])
    a, b = first[0] + second[0], first[1] + second[1]
    xy = dot(x, y)
    w = dot(x, sigma4(y))
    imaginary = [a.imag_part(), b.real_part(), b.imag_part()]
    conditions = [xy.real_part(), xy.imag_part(), w.imag_part()]
    if polynomial_span_rank(imaginary) != 3 or polynomial_span_rank(conditions) != 3:
        return False
    if polynomial_span_rank(imaginary + conditions) != 3:
        return False
    scalar, cut = a.real_part(), w.real_part()
    return not scalar.is_zero and polynomial_span_rank([scalar, cut]) == 1


@lru_cache(maxsize=1)
def certify_convention() -> ConventionReport:
    """First identification in the fixed enumeration satisfying both symbolic identities."""
    certified = [c for c in range(CONVENTION_COUNT) if _check_convention(c)]
    if not certified:
        raise PropertyViolation("No quaternionic identification is certified.", "convention")
    printed = PRINTED_CONVENTION in certified
    if not printed:
        logger.warning("printed quaternionic identification is not certified")
    logger.info("certified identification %d (%d of %d pass)", certified[0], len(certified), CONVENTION_COUNT)
    return ConventionReport(ConventionId(certified[0], True), printed, len(certified))



def clear_caches() -> None:
    """Drop the memoised convention, Gram matrix and hypercomplex signs."""
    certify_convention.cache_clear()
    gram_matrix.cache_clear()
    hypercomplex_signs.cache_clear()


# ---------------------------------------------------------------------------
# GL(1,H) action and the fibration
# ---------------------------------------------------------------------------

def h_action(u: QuaternionValue, t: QuatTuple) -> QuatTuple:
    """(u q0, u q1, p0 u^-1, p1 u^-1)"""
    if u.is_zero:
        raise InvalidInputError("GL(1,H) acts by nonzero quaternions only.")
    inv = u.inverse()
    return QuatTuple(u * t.q0, u * t.q1, t.p0 * inv, t.p1 * inv)


def in_x(t: QuatTuple) -> bool:
    """Im_H(q0 p0 + q1 p1) = 0."""
    return t.product().is_real


def is_x_infinity(t: QuatTuple) -> bool:
    return t.product().is_zero


def is_x_infinity_line(x: Sequence, y: Sequence) -> bool:
    x, y = vector(x), vector(y)
    return dot(x, sigma4(y)).is_zero and dot(sigma4(x), y).is_zero


def fibration(t: QuatTuple) -> Tuple[Optional[QuaternionValue], Optional[QuaternionValue]]:
    """(q1^-1 q0, p1 p0^-1); None marks the point at infinity of each chart."""
    if t.q0.is_zero and t.q1.is_zero:
        raise InvalidInputError("(q0, q1) must be nonzero.")
    if t.p0.is_zero and t.p1.is_zero:
        raise InvalidInputError("(p0, p1) must be nonzero.")
    first = None if t.q1.is_zero else t.q1.inverse() * t.q0
    second = None if t.p0.is_zero else t.p1 * t.p0.inverse()
    return first, second


def orbit_equivalent(t1: QuatTuple, t2: QuatTuple) -> Optional[OrbitWitness]:
    """(u, r) with t2 = (u q0, u q1, r p0 u^-1, r p1 u^-1) and r > 0, or None.

    The positive scale is the diagonal action of R+ on the tuple; the sign
    of (p0, p1) is not absorbed, so (q, p) and (q, -p) lie in different orbits.
    """
    for t in (t1, t2):
        if is_x_infinity(t):
            raise InvalidInputError("Orbit comparison is defined off X_infinity.")
    if fibration(t1) != fibration(t2):
        return None
    if not t1.q1.is_zero:
        u = t2.q1 * t1.q1.inverse()
    else:
        u = t2.q0 * t1.q0.inverse()
    if u.is_zero:
        return None
    if not t1.p0.is_zero:
        r = t2.p0 * u * t1.p0.inverse()
    else:
        r = t2.p1 * u * t1.p1.inverse()
    if not r.is_real or r.real_part <= 0:
        logger.debug("orbit candidate has scale %r, not a positive real", r)
        return None
    inv = u.inverse()
    rebuilt = QuatTuple(u * t1.q0, u * t1.q1, r * t1.p0 * inv, r * t1.p1 * inv)
    if rebuilt != t2:
        return None
    return OrbitWitness(u, r.real_part)


def imh_rank(p0: QuaternionValue, p1: QuaternionValue) -> ImhReport:
    """Real-linear system Im_H(q0 p0 + q1 p1) = 0 in (q0, q1) in R^8."""
    if p0.is_zero and p1.is_zero:
        raise InvalidInputError("(p0, p1) must be nonzero.")
    units = [QuaternionValue.from_components(*(1 if j == i else 0 for j in range(4))) for i in range(4)]
    zero = QuaternionValue()
    imaginary_cols, full_cols = [], []
    for slot in range(2):
        for e in units:
            q0, q1 = (e, zero) if slot == 0 else (zero, e)
            s = q0 * p0 + q1 * p1
            imaginary_cols.append(s.imh)
            full_cols.append((s.real_part,) + s.imh)
    imaginary = ExactMatrix.from_columns(imaginary_cols, 3)
    full = ExactMatrix.from_columns(full_cols, 4)
    return ImhReport(mat_rank(imaginary), tuple(mat_kernel_basis(imaginary)), mat_rank(full))


# ---------------------------------------------------------------------------
# The flat (8,8) metric on C^4 x C^4
# ---------------------------------------------------------------------------

# (xi index, upsilon index, sign) of the sesquilinear pairing
_METRIC_TERMS = ((1, 0, 1), (0, 1, -1), (3, 2, 1), (2, 3, -1))


def _split(v: Sequence) -> Tuple[Vector, Vector]:
    v = vector(v)
    if len(v) != 8:
        raise InvalidInputError("Tangent vectors live in C^4 x C^4 (length 8).")
    return v[:4], v[4:]


def _pairing(v: Sequence, w: Sequence):
    """E(v, w) symmetrised over v and w; entries may be scalars or polynomials."""
    xi, ups = v[:4], v[4:]
    xi2, ups2 = w[:4], w[4:]
    total = ZERO
    for i, j, s in _METRIC_TERMS:
        total = total + (xi[i] * ups2[j].conj() + xi2[i] * ups[j].conj()) * s
    return total


def metric_eval(v: Sequence, w: Sequence) -> Fraction:
    """g(v, w) = 1/2 Re[E(v, w)]."""
    xi, ups = _split(v)
    xi2, ups2 = _split(w)
    return _pairing(xi + ups, xi2 + ups2).re / 2


def _real_basis(n: int = 8) -> List[Vector]:
    """Unit and i-unit in each of the n complex coordinates."""
    basis = []
    for k in range(n):
        basis.append(unit_vector(n, k))
        basis.append(tuple(I_UNIT if i == k else ZERO for i in range(n)))
    return basis


def _realify(v: Sequence) -> Vector:
    out = []
    for z in vector(v):
        out.extend([gq(z.re), gq(z.im)])
    return tuple(out)


def _complexify(r: Sequence) -> Vector:
    return tuple(GaussianRational(r[2 * k].re, r[2 * k + 1].re) for k in range(len(r) // 2))


@lru_cache(maxsize=1)
def gram_matrix() -> ExactMatrix:
    basis = _real_basis()
    return ExactMatrix([[gq(metric_eval(u, v)) for v in basis] for u in basis], 16, 16)


def metric_signature() -> Tuple[int, int]:
    return mat_signature(gram_matrix())


def _circle_generator(x: Sequence, y: Sequence):
    weights = (1, -1, 1, -1)
    return tuple(I_UNIT * z * s for z, s in zip(x, weights)) + tuple(-I_UNIT * z * s for z, s in zip(y, weights))


def s1_field(x: Sequence, y: Sequence) -> Vector:
    """Generator of the circle action with weights (+,-,+,-) on x and (-,+,-,+) on y."""
    return _circle_generator(vector(x), vector(y))


def circle_length_identity() -> bool:
    """g(X, X) = Re(x.sigma(y)) at every (x, y), X the circle generator, as a polynomial identity."""
    x = [Polynomial.complex_variable(k) for k in range(4)]
    y = [Polynomial.complex_variable(k) for k in range(4, 8)]
    field = _circle_generator(x, y)
    return _pairing(field, field).real_part() == (dot(x, sigma4(y)) * 2).real_part()


def rotate(x: Sequence, y: Sequence, phase: GaussianRational) -> Tuple[Vector, Vector]:
    """Finite circle action by a unit phase; conj(phase) = phase^-1."""
    inv = phase.conj()
    weights = (phase, inv, phase, inv)
    x, y = vector(x), vector(y)
    return (
        tuple(c * z for c, z in zip(weights, x)),
        tuple(c.conj() * z for c, z in zip(weights, y)),
    )


def moment_functions(x: Sequence, y: Sequence) -> Tuple[GaussianRational, GaussianRational]:
    return real_line_conditions(x, y)


def _apply_i(v: Sequence) -> Vector:
    return tuple(I_UNIT * z for z in v)


def _apply_j(v: Sequence, signs: Sequence[int]) -> Vector:
    """(a, b) |-> (s conj b, -s conj a) on each coordinate block."""
    out = []
    for block, s in enumerate(signs):
        a, b = v[2 * block], v[2 * block + 1]
        out.extend([b.conj() * s, -a.conj() * s])
    return tuple(out)


def _real_operator(op) -> ExactMatrix:
    columns = [_realify(op(_complexify(e))) for e in (unit_vector(16, k) for k in range(16))]
    return ExactMatrix.from_columns(columns, 16)


@lru_cache(maxsize=1)
def hypercomplex_signs() -> Tuple[int, ...]:
    """Block signs of the first J with J^2 = -1, IJ = -JI and g(J., J.) = g."""
    G = gram_matrix()
    I_op = _real_operator(_apply_i)
    identity = ExactMatrix.identity(16)
    for mask in range(16):
        signs = tuple(-1 if mask >> b & 1 else 1 for b in range(4))
        J_op = _real_operator(lambda v, s=signs: _apply_j(v, s))
        if J_op @ J_op != -identity:
            continue
        if I_op @ J_op != -(J_op @ I_op):
            continue
        if J_op.transpose() @ G @ J_op != G:
            continue
        logger.debug("hypercomplex J uses block signs %s", signs)
        return signs
    raise PropertyViolation("No orthogonal J anticommuting with I was found.", "hypercomplex")


def hx_gram(x: Sequence, y: Sequence) -> HxGram:
    """Gram matrix of {X, IX, JX, KX} under g at the point (x, y)."""
    signs = hypercomplex_signs()
    X = s1_field(x, y)
    IX = _apply_i(X)
    JX = _apply_j(X, signs)
    KX = _apply_i(JX)
    frame = [X, IX, JX, KX]
    gram = ExactMatrix([[gq(metric_eval(u, v)) for v in frame] for u in frame], 4, 4)
    return HxGram(gram, mat_det(gram))


def grassmann_alpha(H: Sequence[Sequence], s: Sequence, z: Sequence) -> Vector:
    """Coordinates of s in H tensored with the coset of z modulo span H."""
    rows_in = [vector(h) for h in H]
    if len(rows_in) != 2 or any(len(h) != 4 for h in rows_in):
        raise InvalidInputError("H must be a 2x4 matrix.")
    Hm = ExactMatrix(rows_in, 2, 4)
    if mat_rank(Hm) != 2:
        raise InvalidInputError("H must have rank 2.")
    s, z = vector(s), vector(z)
    coords = _solve_in_span(Hm, s)
    if coords is None:
        raise InvalidInputError("s does not lie in span H.")
    rows, pivots = rref(Hm)
    reduced = list(z)
    for row, p in zip(rows, pivots):
        c = reduced[p]
        if not c.is_zero:
            reduced = [a - c * b for a, b in zip(reduced, row)]
    coset = [reduced[i] for i in range(4) if i not in pivots]
    return tuple(c * e for c in coords for e in coset)


def _solve_in_span(Hm: ExactMatrix, s: Vector) -> Optional[Vector]:
    return mat_solve(Hm.transpose(), s)


# ---------------------------------------------------------------------------
# Random data
# ---------------------------------------------------------------------------

def random_gaussian(rng: random.Random, bound: int = 5) -> GaussianRational:
    return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_vector(rng: random.Random, n: int = 4, bound: int = 5) -> Vector:
    v = (ZERO,) * n
    while vec_is_zero(v):
        v = tuple(random_gaussian(rng, bound) for _ in range(n))
    return v


def random_quaternion(rng: random.Random, bound: int = 5) -> QuaternionValue:
    q = QuaternionValue()
    while q.is_zero:
        q = QuaternionValue(random_gaussian(rng, bound), random_gaussian(rng, bound))
    return q


def _real_line_system(x: Vector, at_infinity: bool) -> ExactMatrix:
    """Real equations on y: Re x.y, Im x.y, Im x.sigma(y) (and Re x.sigma(y))."""
    columns = []
    for e in _real_basis(4):
        xy = dot(x, e)
        w = dot(x, sigma4(e))
        col = [gq(xy.re), gq(xy.im), gq(w.im)]
        if at_infinity:
            col.append(gq(w.re))
        columns.append(col)
    return ExactMatrix.from_columns(columns, 4 if at_infinity else 3)


def random_real_line_data(rng: random.Random, at_infinity: bool = False, bound: int = 5) -> Tuple[Vector, Vector]:
    """Random (x, y) satisfying the real line conditions; on X_infinity if requested."""
    x = random_vector(rng, 4, bound)
    kernel = mat_kernel_basis(_real_line_system(x, at_infinity))
    y_real = (ZERO,) * 8
    while vec_is_zero(y_real):
        weights = [rng.randint(-bound, bound) for _ in kernel]
        y_real = tuple(sum((k[i] * c for k, c in zip(kernel, weights)), ZERO) for i in range(8))
    return x, _complexify(y_real)


def random_quat_tuple(rng: random.Random, bound: int = 5) -> QuatTuple:
    return QuatTuple(*(random_quaternion(rng, bound) for _ in range(4)))


def scalar_part(x: Sequence, y: Sequence, convention: Optional[int] = None) -> Fraction:
    return to_quat_tuple(x, y, convention).product().real_part


def x_dot_sigma_y(x: Sequence, y: Sequence) -> GaussianRational:
    return dot(vector(x), sigma4(vector(y)))

