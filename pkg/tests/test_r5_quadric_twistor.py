"""
R5 — Lines on the incidence quadric
Highlights:
- Lines on the quadric are validated and classified by a.d = 0.
- Real lines come from (x, y) with x.y = 0 and x.sigma(y) + sigma(x).y = 0.
- The quaternionic identification is certified symbolically; GL(1,H) orbits and the fibration.
- The flat (8,8) metric, the circle field and the hypercomplex Gram matrix.
"""
from fractions import Fraction

import pytest

from errors import InvalidInputError
from exact_core import ExactMatrix, GaussianRational, Q_J, QuaternionValue, gq, unit_vector, vector
from quadric_twistor import (
    CONVENTION_COUNT,
    _check_pairs,
    _convention_pairs,
    _symbolic_point,
    DEGENERATE_LABEL,
    GENERIC_LABEL,
    QuadricLine,
    QuatTuple,
    certify_convention,
    circle_length_identity,
    classify_line,
    fibration,
    grassmann_alpha,
    h_action,
    hx_gram,
    imh_rank,
    in_x,
    is_x_infinity,
    is_x_infinity_line,
    line_validate,
    metric_eval,
    metric_signature,
    moment_functions,
    orbit_equivalent,
    projective_equal,
    random_quat_tuple,
    random_real_line_data,
    real_line,
    real_line_conditions,
    real_line_point,
    rotate,
    s1_field,
    scalar_part,
    sigma4,
    tau_parameter,
    tau_point,
    tau_preserves_quadric,
    to_quat_tuple,
    x_dot_sigma_y,
)

E = [unit_vector(4, i) for i in range(4)]

# --- lines and classification ------------------------------------------------

def test_hand_examples_classify_both_branches():
    degenerate = classify_line(QuadricLine(E[0], E[1], E[2], E[3]))
    assert degenerate.degenerate and degenerate.splitting == DEGENERATE_LABEL
    generic = classify_line(QuadricLine(E[0], E[1], vector((0, -1, 0, 0)), E[0]))
    assert not generic.degenerate and generic.splitting == GENERIC_LABEL


def test_line_off_the_quadric_is_rejected():
    diag = line_validate(E[0], E[1], E[0], E[2])
    assert not diag.valid
    assert diag.ac == 1
    with pytest.raises(InvalidInputError):
        classify_line(QuadricLine(E[0], E[1], E[0], E[2]))


def test_real_line_examples():
    line = real_line(E[0], E[1])
    assert line_validate(line.a, line.b, line.c, line.d).valid
    assert not classify_line(line).degenerate
    assert not is_x_infinity_line(E[0], E[1])
    assert classify_line(real_line(E[0], E[2])).degenerate
    assert is_x_infinity_line(E[0], E[2])


def test_real_line_rejects_non_real_data():
    with pytest.raises(InvalidInputError):
        real_line(E[0], E[0])
    with pytest.raises(InvalidInputError):
        real_line(E[0], (0, 0, 0, 0))


def test_random_real_lines_satisfy_conditions(rng):
    for index in range(10):
        x, y = random_real_line_data(rng, at_infinity=index % 2 == 0)
        xy, mixed = real_line_conditions(x, y)
        assert xy.is_zero and mixed.is_zero
        assert classify_line(real_line(x, y)).degenerate == x_dot_sigma_y(x, y).is_zero
        if index % 2 == 0:
            assert is_x_infinity_line(x, y)


def test_tau_is_antipodal_on_real_lines(rng):
    x, y = random_real_line_data(rng)
    zeta = (GaussianRational(1, 2), 3)
    first, second = real_line_point(x, y, zeta)
    image = tau_point(first, second)
    other = real_line_point(x, y, tau_parameter(zeta))
    assert projective_equal(image[0], other[0])
    assert projective_equal(image[1], other[1])


def test_sigma_is_a_quaternionic_structure():
    z = vector((1, GaussianRational(0, 2), 3, -1))
    assert sigma4(sigma4(z)) == tuple(-c for c in z)
    assert tau_preserves_quadric()

# --- quaternionic identification ---------------------------------------------

def test_convention_is_certified():
    report = certify_convention()
    assert report.convention.certified
    assert 0 <= report.convention.index < CONVENTION_COUNT
    assert report.certified_count >= 1
    assert report.printed_certified is False


def test_conjugating_every_entity_keeps_each_verdict():
    x, y = _symbolic_point()
    certified = certify_convention().convention.index
    verdicts = {}
    for convention in {0, 5, 77, 200, certified}:
        pairs = _convention_pairs(x, y, convention)
        conjugated = [(a.conj(), b.conj()) for a, b in pairs]
        verdicts[convention] = _check_pairs(x, y, pairs)
        assert _check_pairs(x, y, conjugated) == verdicts[convention]
    assert verdicts[certified] is True
    assert verdicts[0] is False


def test_certified_convention_matches_real_conditions(rng):
    for _ in range(10):
        x, y = random_real_line_data(rng)
        t = to_quat_tuple(x, y)
        assert in_x(t)
        assert (scalar_part(x, y) == 0) == (x_dot_sigma_y(x, y).re == 0)
    x, y = random_real_line_data(rng, at_infinity=True)
    assert is_x_infinity(to_quat_tuple(x, y))


def test_h_action_example():
    zero, one = QuaternionValue(), QuaternionValue(1)
    t = QuatTuple(one, zero, one, zero)
    assert h_action(Q_J, t) == QuatTuple(Q_J, zero, -Q_J, zero)
    with pytest.raises(InvalidInputError):
        h_action(QuaternionValue(), t)


def test_fibration_example():
    t = QuatTuple(QuaternionValue(1), QuaternionValue(1), Q_J, -Q_J)
    first, second = fibration(t)
    assert first == QuaternionValue(1)
    assert second == QuaternionValue(-1)


def test_fibration_marks_infinity():
    t = QuatTuple(QuaternionValue(1), QuaternionValue(), QuaternionValue(), QuaternionValue(1))
    assert fibration(t) == (None, None)


def test_orbit_witness_recovers_action(rng):
    t = random_quat_tuple(rng)
    while is_x_infinity(t):
        t = random_quat_tuple(rng)
    u = QuaternionValue.from_components(1, 2, -1, 3)
    moved = h_action(u, t).scaled(2)
    witness = orbit_equivalent(t, moved)
    assert witness is not None
    assert witness.u == QuaternionValue.from_components(2, 4, -2, 6)
    assert witness.r == 4


def test_orbit_does_not_absorb_the_sign_of_p(rng):
    t = random_quat_tuple(rng)
    while is_x_infinity(t):
        t = random_quat_tuple(rng)
    flipped = QuatTuple(t.q0, t.q1, -t.p0, -t.p1)
    assert fibration(flipped) == fibration(t)
    assert orbit_equivalent(t, flipped) is None
    u = QuaternionValue.from_components(0, 1, 1, 0)
    moved = h_action(u, t)
    assert orbit_equivalent(t, QuatTuple(moved.q0, moved.q1, -moved.p0, -moved.p1)) is None


def test_negative_diagonal_scale_stays_in_the_orbit(rng):
    t = random_quat_tuple(rng)
    while is_x_infinity(t):
        t = random_quat_tuple(rng)
    witness = orbit_equivalent(t, t.scaled(-3))
    assert witness is not None
    assert witness.u == QuaternionValue(-3)
    assert witness.r == 9


def test_orbit_rejects_x_infinity():
    one = QuaternionValue(1)
    infinite = QuatTuple(one, one, one, -one)
    assert is_x_infinity(infinite)
    with pytest.raises(InvalidInputError):
        orbit_equivalent(infinite, QuatTuple(one, QuaternionValue(), Q_J, QuaternionValue()))


def test_imh_rank_counts_equations():
    report = imh_rank(QuaternionValue(1), QuaternionValue(GaussianRational(0, 1), 2))
    assert report.rank == 3
    assert len(report.kernel) == 5
    assert report.zero_product_rank == 4
    with pytest.raises(InvalidInputError):
        imh_rank(QuaternionValue(), QuaternionValue())

# --- metric ------------------------------------------------------------------

def test_metric_signature():
    assert metric_signature() == (8, 8)


def test_metric_on_a_null_pair():
    v = unit_vector(4, 1) + unit_vector(4, 0)  # xi = e1, upsilon = e0
    assert metric_eval(v, v) == 1
    w = unit_vector(8, 0)
    assert metric_eval(w, w) == 0


def test_circle_length_is_a_polynomial_identity():
    assert circle_length_identity()


def test_circle_field_length(rng):
    for _ in range(5):
        x, y = random_real_line_data(rng)
        X = s1_field(x, y)
        assert metric_eval(X, X) == x_dot_sigma_y(x, y).re


def test_circle_action_preserves_moment_functions(rng):
    x, y = random_real_line_data(rng)
    phase = GaussianRational(Fraction(3, 5), Fraction(4, 5))
    assert moment_functions(*rotate(x, y, phase)) == moment_functions(x, y)


def test_hx_gram_is_scalar_on_real_lines():
    gram = hx_gram(E[0], E[1])
    length = metric_eval(s1_field(E[0], E[1]), s1_field(E[0], E[1]))
    assert length == -1
    assert gram.gram == ExactMatrix.identity(4).scale(length)
    assert gram.nondegenerate
    assert not hx_gram(E[0], E[2]).nondegenerate


def test_grassmann_alpha_coordinates():
    H = [E[0], E[1]]
    s = vector((2, 3, 0, 0))
    z = E[2]
    value = grassmann_alpha(H, s, z)
    assert value == (gq(2), gq(0), gq(3), gq(0))
    with pytest.raises(InvalidInputError):
        grassmann_alpha(H, E[2], z)
