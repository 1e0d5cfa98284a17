"""
R2 — Bundles on P^1
Highlights:
- h0/h1 of every twist of a Steiner cokernel, checked against known splittings.
- Splitting types are read off the h0 jumps and agree with rank and degree.
- Resolutions that are not locally free or have wrong degrees are rejected.
- The generic-section recursion, including the printed variant as a negative control.
"""
import pytest

from errors import InvalidInputError, PropertyViolation
from exact_core import BinaryForm
from p1_bundles import (
    SteinerResolution,
    cohomology_table,
    default_twist_range,
    direct_sum,
    euler_characteristic,
    evaluate_h0_list,
    generic_section_splitting,
    h0_twist,
    h1_twist,
    predict_h0,
    recursion_terms,
    splitting_type,
    validate_resolution,
)


def _line_bundles(*degrees):
    """Trivial resolution of O(d_1) + ... + O(d_m)."""
    return SteinerResolution((), tuple(degrees), tuple(() for _ in degrees))

# --- cohomology --------------------------------------------------------------

def test_twisted_cubic_normal_bundle_counts(cubic_resolution):
    assert h0_twist(cubic_resolution, 0) == 12
    assert h0_twist(cubic_resolution, -3) == 6
    assert h0_twist(cubic_resolution, -6) == 0
    assert h1_twist(cubic_resolution, 0) == 0


@pytest.mark.parametrize("k", range(-9, 3))
def test_h0_matches_splitting_prediction(cubic_resolution, k):
    assert h0_twist(cubic_resolution, k) == predict_h0([5, 5], k)
    assert h0_twist(cubic_resolution, k) - h1_twist(cubic_resolution, k) == euler_characteristic(cubic_resolution, k)


def test_cohomology_table_default_range(cubic_resolution):
    table = cohomology_table(cubic_resolution)
    lo, hi = default_twist_range(cubic_resolution)
    assert table.twists() == list(range(lo, hi + 1))
    assert table.h0(0) == 12
    assert table.h1(lo) == h1_twist(cubic_resolution, lo)


def test_table_lookup_outside_range_raises(cubic_resolution):
    table = cohomology_table(cubic_resolution, (0, 1))
    with pytest.raises(InvalidInputError):
        table.h0(5)

# --- splitting type ----------------------------------------------------------

def test_splitting_of_twisted_cubic(cubic_resolution):
    assert splitting_type(cubic_resolution) == [5, 5]


def test_splitting_of_line_bundle_sum():
    assert splitting_type(_line_bundles(2, 0, -1)) == [-1, 0, 2]


def test_direct_sum_concatenates_splittings(cubic_resolution):
    total = direct_sum(cubic_resolution, _line_bundles(1))
    assert splitting_type(total) == [1, 5, 5]
    assert total.rank == 3
    assert total.total_degree == 11

# --- validation --------------------------------------------------------------

def test_non_locally_free_cokernel_is_reported():
    x0 = BinaryForm.x0()
    res = SteinerResolution((0,), (1, 1), ((x0,), (x0,)))
    diag = validate_resolution(res)
    assert diag.generically_injective is True
    assert diag.cokernel_locally_free is False
    assert diag.witness == x0
    with pytest.raises(InvalidInputError):
        h0_twist(res, 0)


def test_entry_degree_must_match_twists():
    with pytest.raises(InvalidInputError):
        SteinerResolution((0,), (2, 2), ((BinaryForm.x0(),), (BinaryForm.x1(),)))


def test_needs_more_targets_than_sources():
    with pytest.raises(InvalidInputError):
        SteinerResolution((0, 0), (1, 1), ((BinaryForm.x0(), BinaryForm.x1()), (BinaryForm.x1(), BinaryForm.x0())))

# --- generic-section recursion -----------------------------------------------

def test_corrected_recursion_on_worked_example():
    result = generic_section_splitting([16, 8, 2], 8)
    assert result == {2: 2, 1: 4, 0: 2}
    assert list(result) == [2, 1, 0]


def test_printed_recursion_is_detected():
    assert recursion_terms([16, 8, 2], "printed")[0] == 10
    with pytest.raises(PropertyViolation) as info:
        generic_section_splitting([16, 8, 2], 8, "printed")
    assert info.value.criterion == "generic_splitting"


@pytest.mark.parametrize("h0_list", [[12, 6], [12, 6, 0]])
def test_twisted_cubic_generic_splitting(h0_list):
    assert generic_section_splitting(h0_list, 6) == {1: 6}


def test_rank_mismatch_is_a_violation():
    with pytest.raises(PropertyViolation):
        generic_section_splitting([16, 8, 2], 9)


def test_recursion_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        recursion_terms([3, -1])
    with pytest.raises(InvalidInputError):
        recursion_terms([3, 1], "unknown")


def test_reevaluation_reproduces_h0():
    assert evaluate_h0_list({2: 2, 1: 4, 0: 2}, 3) == [16, 8, 2]

# --- randomized invariants ---------------------------------------------------

def _random_resolution(rng):
    """Random Steiner resolution with a locally free cokernel."""
    while True:
        source = tuple(sorted(rng.choice([0, 0, 1]) for _ in range(rng.randint(1, 2))))
        top = max(source)
        target = tuple(sorted(rng.randint(top, top + 2) for _ in range(len(source) + rng.randint(1, 2))))
        matrix = tuple(
            tuple(BinaryForm(f - e, [rng.randint(-3, 3) for _ in range(f - e + 1)]) for e in source)
            for f in target
        )
        res = SteinerResolution(source, target, matrix)
        if validate_resolution(res).cokernel_locally_free:
            return res


def test_recursion_inverts_reevaluation(rng):
    for _ in range(30):
        length = rng.randint(1, 5)
        multiplicities = {j: rng.randint(0, 4) for j in range(length)}
        h0 = evaluate_h0_list(multiplicities, length)
        assert recursion_terms(h0) == multiplicities
        rank = sum(multiplicities.values())
        if rank:
            expected = {j: m for j, m in multiplicities.items() if m}
            assert generic_section_splitting(h0, rank) == expected


def test_reevaluation_inverts_recursion(rng):
    for _ in range(30):
        h0 = sorted((rng.randint(0, 20) for _ in range(rng.randint(1, 5))), reverse=True)
        assert evaluate_h0_list(recursion_terms(h0), len(h0)) == h0


def test_euler_characteristic_on_random_resolutions(rng):
    for _ in range(8):
        res = _random_resolution(rng)
        lo, hi = default_twist_range(res)
        for k in range(lo, hi + 1):
            assert euler_characteristic(res, k) == h0_twist(res, k) - h1_twist(res, k)


def test_splitting_adds_under_direct_sum(rng):
    for _ in range(5):
        first, second = _random_resolution(rng), _random_resolution(rng)
        total = direct_sum(first, second)
        assert splitting_type(total) == sorted(splitting_type(first) + splitting_type(second))
        assert total.rank == first.rank + second.rank
