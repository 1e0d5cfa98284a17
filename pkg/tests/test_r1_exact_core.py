"""
R1 — Exact arithmetic core
Highlights:
- Q(i) scalars print in the exact text encoding and never silently accept floats.
- Matrix rank, kernel, solve, determinant and signature are exact.
- Binary forms: gcd, chart-consistent division, derivatives and composition.
- Symbolic polynomials decide identities in free real coordinates.
"""
from fractions import Fraction

import pytest

from errors import InvalidInputError
from exact_core import (
    BinaryForm,
    ExactMatrix,
    GaussianRational,
    I_UNIT,
    ONE,
    Polynomial,
    Q_I,
    Q_J,
    Q_K,
    QuaternionValue,
    ZERO,
    division_pad,
    form_det,
    form_divrem,
    form_gcd,
    form_gcd_many,
    form_root,
    gaussian_divisors,
    gq,
    mat_det,
    mat_kernel_basis,
    mat_rank,
    mat_signature,
    mat_solve,
    maximal_minors,
    polynomial_span_rank,
)

# --- scalars -----------------------------------------------------------------

@pytest.mark.parametrize(
    "value, text",
    [
        (GaussianRational(Fraction(1, 2)), "1/2"),
        (GaussianRational(1, 2), "1+2i"),
        (GaussianRational(0, 1), "i"),
        (GaussianRational(0, -1), "-i"),
        (GaussianRational(0, Fraction(-3, 4)), "-3/4i"),
        (GaussianRational(Fraction(1, 3), Fraction(-2, 5)), "1/3-2/5i"),
        (GaussianRational(0), "0"),
    ],
)
def test_scalar_text_encoding(value, text):
    assert str(value) == text


def test_scalar_field_operations():
    z = GaussianRational(3, 4)
    assert z * z.conj() == GaussianRational(25)
    assert z * z.inverse() == ONE
    assert I_UNIT ** 2 == -ONE
    assert (z / z) == ONE
    assert 1 - z == GaussianRational(-2, -4)
    assert hash(GaussianRational(2)) == hash(Fraction(2))


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_coerce_rejects_floats():
    with pytest.raises(InvalidInputError):
        GaussianRational.coerce(0.5)
    assert gq(Fraction(1, 3)) == GaussianRational(Fraction(1, 3))

# --- quaternions -------------------------------------------------------------

def test_quaternion_units_multiply_like_hamilton():
    assert Q_I * Q_J == Q_K
    assert Q_J * Q_I == -Q_K
    assert Q_J * Q_J == QuaternionValue(-1, 0)
    assert Q_K * Q_K == QuaternionValue(-1, 0)


def test_j_conjugates_complex_scalars():
    z = QuaternionValue(GaussianRational(2, 3), 0)
    assert Q_J * z == z.conj() * Q_J


def test_quaternion_norm_and_inverse():
    q = QuaternionValue.from_components(1, 2, 3, 4)
    assert q.norm() == 30
    assert q * q.inverse() == QuaternionValue(1, 0)
    assert q.real_part == 1
    assert q.imh == (Fraction(2), Fraction(3), Fraction(4))
    assert (q * q.conj()).is_real

# --- matrices ----------------------------------------------------------------

def test_rank_kernel_and_solve():
    M = ExactMatrix([[1, 2, 3], [2, 4, 6], [0, 1, I_UNIT]], 3, 3)
    assert mat_rank(M) == 2
    kernel = mat_kernel_basis(M)
    assert len(kernel) == 1
    assert all(x.is_zero for x in M.apply(kernel[0]))
    assert mat_solve(M, (1, 2, 0)) is not None
    assert mat_solve(M, (1, 0, 0)) is None


def test_determinant_matches_expansion():
    M = ExactMatrix([[2, 0, 1], [1, 3, 0], [0, I_UNIT, 1]], 3, 3)
    # 2*(3 - 0) - 0 + 1*(i - 0)
    assert mat_det(M) == GaussianRational(6, 1)


def test_signature_of_hyperbolic_plane():
    S = ExactMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 5]], 3, 3)
    assert mat_signature(S) == (2, 1)


def test_matrix_products_and_transpose():
    A = ExactMatrix([[1, 2], [3, 4]], 2, 2)
    assert A @ ExactMatrix.identity(2) == A
    assert A.transpose() == ExactMatrix([[1, 3], [2, 4]], 2, 2)
    assert (A - A).is_zero

# --- binary forms ------------------------------------------------------------

def test_form_gcd_keeps_axis_factors():
    x0, x1 = BinaryForm.x0(), BinaryForm.x1()
    f = x0 * x1 * x1 * (x0 + x1)
    g = x1 * (x0 + x1) * (x0 - x1)
    assert form_gcd(f, g) == (x1 * (x0 + x1)).normalized()


def test_form_gcd_many_skips_zero_forms():
    x0 = BinaryForm.x0()
    assert form_gcd_many([BinaryForm.zero(2), x0 * x0]) == x0 * x0
    assert form_gcd_many([BinaryForm.zero(3)]) is None


@pytest.mark.parametrize("c", [0, 1, 2])
def test_divrem_reconstructs_dividend(rng, c):
    x0, x1 = BinaryForm.x0(), BinaryForm.x1()
    g = (x0 - x1 * c) * (x0 + x1 * 2) * x1  # vanishes at [c : 1] for c > 0
    for _ in range(10):
        f = BinaryForm(5, [rng.randint(-5, 5) for _ in range(6)])
        q, r = form_divrem(f, g)
        assert r.degree == g.degree
        pad = division_pad(g)
        assert q * g + pad ** (f.degree - g.degree) * r == f


def test_divrem_rejects_bad_divisor():
    with pytest.raises(InvalidInputError):
        form_divrem(BinaryForm.x0(), BinaryForm.zero(1))
    with pytest.raises(InvalidInputError):
        form_divrem(BinaryForm.x0(), BinaryForm.monomial(2, 1))


def test_derivative_evaluate_and_compose():
    f = BinaryForm(3, [1, 0, -2, 5])  # x0^3 - 2 x0 x1^2 + 5 x1^3
    assert f.derivative(0) == BinaryForm(2, [3, 0, -2])
    assert f.derivative(1) == BinaryForm(2, [0, -4, 15])
    assert f.evaluate(1, 1) == GaussianRational(4)
    swapped = f.compose(BinaryForm.x1(), BinaryForm.x0())
    assert swapped == BinaryForm(3, [5, -2, 0, 1])


def test_form_det_and_minors():
    x0, x1 = BinaryForm.x0(), BinaryForm.x1()
    matrix = [[x0, x1], [x1, x0], [x0, x0]]
    minors = maximal_minors(matrix, 2)
    assert minors[0] == form_det([[x0, x1], [x1, x0]])
    assert minors[0] == x0 * x0 - x1 * x1
    assert len(minors) == 3

# --- symbolic polynomials ----------------------------------------------------

def test_complex_variable_identity():
    z = Polynomial.complex_variable(0)
    w = Polynomial.complex_variable(1)
    assert (z * w).conj() == z.conj() * w.conj()
    assert (z * z.conj()).imag_part().is_zero
    assert not (z * z).imag_part().is_zero


def test_polynomial_span_rank():
    a, b = Polynomial.variable(0), Polynomial.variable(1)
    assert polynomial_span_rank([a, b, a + b]) == 2
    assert polynomial_span_rank([a * b, a * b * 3]) == 1

# --- roots of binary forms ---------------------------------------------------

def test_gaussian_divisors_of_two():
    divisors = gaussian_divisors(GaussianRational(2))
    assert len(divisors) == 12
    assert GaussianRational(1, 1) in divisors
    assert GaussianRational(0, -2) in divisors
    with pytest.raises(InvalidInputError):
        gaussian_divisors(GaussianRational(Fraction(1, 2)))


@pytest.mark.parametrize(
    "coeffs",
    [
        [1, -3, 2],  # (x0 - x1)(x0 - 2 x1)
        [1, 0, 1],  # x0^2 + x1^2, roots at t = +-i
        [0, 1, 1],  # x1 (x0 + x1)
        [Fraction(1, 2), GaussianRational(0, -1), Fraction(-1, 2)],  # (x0 - i x1)^2 / 2
    ],
)
def test_form_root_finds_gaussian_rational_zero(coeffs):
    f = BinaryForm(len(coeffs) - 1, coeffs)
    root = form_root(f)
    assert root is not None
    assert f.evaluate(*root).is_zero
    assert not (root[0].is_zero and root[1].is_zero)


@pytest.mark.parametrize("coeffs", [[1, 0, -2], [4, 0, 0, -1]])
def test_form_root_without_rational_zero(coeffs):
    assert form_root(BinaryForm(len(coeffs) - 1, coeffs)) is None
    assert form_root(BinaryForm.constant(3)) is None

# --- randomized invariants ---------------------------------------------------

def _random_scalar(rng, bound=3):
    return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))


def _random_form(rng, degree, bound=3):
    coeffs = [rng.randint(-bound, bound) for _ in range(degree + 1)]
    coeffs[0] = coeffs[0] or 1
    return BinaryForm(degree, coeffs)


def test_rank_plus_nullity_is_column_count(rng):
    for _ in range(30):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        entries = [[_random_scalar(rng, 2) for _ in range(cols)] for _ in range(rows)]
        if rows > 1 and rng.random() < 0.5:
            entries[-1] = list(entries[0])
        M = ExactMatrix(entries, rows, cols)
        kernel = mat_kernel_basis(M)
        assert mat_rank(M) + len(kernel) == cols
        for v in kernel:
            assert all(x.is_zero for x in M.apply(v))


def test_form_gcd_divides_both_inputs(rng):
    for _ in range(20):
        common = _random_form(rng, rng.randint(0, 2))
        f = common * _random_form(rng, rng.randint(1, 3))
        g = common * _random_form(rng, rng.randint(1, 3))
        h = form_gcd(f, g)
        assert h.degree >= common.degree
        for form in (f, g):
            assert form_divrem(form, h)[1].is_zero
        if common.degree:
            assert form_divrem(h, common)[1].is_zero


def test_signature_is_a_congruence_invariant(rng):
    for _ in range(15):
        n = rng.randint(2, 5)
        upper = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        A = ExactMatrix([[upper[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)], n, n)
        P = ExactMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n, n)
        if mat_det(P).is_zero:
            continue
        assert mat_signature(P.transpose() @ A @ P) == mat_signature(A)


def test_quaternion_algebra_laws(rng):
    def random_quaternion():
        return QuaternionValue(_random_scalar(rng), _random_scalar(rng))

    for _ in range(30):
        q1, q2, q3 = random_quaternion(), random_quaternion(), random_quaternion()
        assert (q1 * q2) * q3 == q1 * (q2 * q3)
        assert (q1 * q2).norm() == q1.norm() * q2.norm()
        assert (q1 * q2).conj() == q2.conj() * q1.conj()
