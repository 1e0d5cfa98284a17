"""
P1 Bundles Module - bundles on the projective line presented as cokernels

A SteinerResolution is a map of twisted trivial bundles
    0 -> (+)_j O(e_j) --M--> (+)_i O(f_i) -> N -> 0
given by a matrix of binary forms. Cohomology of every twist N(k) is computed
exactly: H^0 from the cokernel of the multiplication map, H^1 by Serre
duality through the transposed multiplication pairing.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from errors import InvalidInputError, PropertyViolation
from exact_core import (
    BinaryForm,
    ExactMatrix,
    ZERO,
    form_gcd_many,
    maximal_minors,
    mat_rank,
)

logger = logging.getLogger(__name__)

RECURSION_VARIANTS = ("corrected", "printed")


@dataclass(frozen=True)
class SteinerResolution:
    source_twists: Tuple[int, ...]
    target_twists: Tuple[int, ...]
    matrix: Tuple[Tuple[BinaryForm, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "source_twists", tuple(int(e) for e in self.source_twists))
        object.__setattr__(self, "target_twists", tuple(int(f) for f in self.target_twists))
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        s, m = len(self.source_twists), len(self.target_twists)
        if not m > s >= 0:
            raise InvalidInputError(f"A resolution needs more target than source twists (got {m} and {s}).")
        if len(self.matrix) != m or any(len(row) != s for row in self.matrix):
            raise InvalidInputError(f"Matrix must be {m}x{s} to match the twist lists.")
        for i, f in enumerate(self.target_twists):
            for j, e in enumerate(self.source_twists):
                entry = self.matrix[i][j]
                if not isinstance(entry, BinaryForm):
                    raise InvalidInputError(f"Entry ({i},{j}) is not a binary form.")
                if entry.is_zero:
                    continue
                if entry.degree != f - e:
                    raise InvalidInputError(
                        f"Entry ({i},{j}) has degree {entry.degree}, expected {f - e}."
                    )

    @property
    def rank(self) -> int:
        return len(self.target_twists) - len(self.source_twists)

    @property
    def total_degree(self) -> int:
        return sum(self.target_twists) - sum(self.source_twists)

    @classmethod
    def from_columns(cls, source_twists, target_twists, columns: Sequence[Sequence[BinaryForm]]):
        """Build from a list of columns, the natural shape for Jacobian matrices."""
        rows = [[col[i] for col in columns] for i in range(len(target_twists))]
        return cls(tuple(source_twists), tuple(target_twists), tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class ResolutionDiagnostics:
    generically_injective: bool
    cokernel_locally_free: bool
    witness: BinaryForm


@dataclass(frozen=True)
class CohomologyTable:
    """Twist k -> (h0, h1) over a contiguous range."""

    entries: Tuple[Tuple[int, int, int], ...]

    def h0(self, k: int) -> int:
        return self._lookup(k)[0]

    def h1(self, k: int) -> int:
        return self._lookup(k)[1]

    def twists(self) -> List[int]:
        return [k for k, _, _ in self.entries]

    def _lookup(self, k: int) -> Tuple[int, int]:
        for twist, h0, h1 in self.entries:
            if twist == k:
                return h0, h1
        raise InvalidInputError(f"Twist {k} is outside the computed table.")

    def as_dict(self) -> Dict[int, Tuple[int, int]]:
        return {k: (h0, h1) for k, h0, h1 in self.entries}


def h0_line(m: int) -> int:
    return max(m + 1, 0)


def h1_line(m: int) -> int:
    return max(-m - 1, 0)


def multiplication_matrix(
    forms: Sequence[Sequence[BinaryForm]],
    source_degrees: Sequence[int],
    target_degrees: Sequence[int],
) -> ExactMatrix:
    """Matrix of (+)_j H0(O(a_j)) -> (+)_i H0(O(b_i)), v |-> forms * v.

    Columns are indexed by (j, monomial p), rows by (i, monomial q); the entry
    is the coefficient of x1^(q-p) in forms[i][j].
    """
    col_offsets, row_offsets = [], []
    ncols = nrows = 0
    for a in source_degrees:
        col_offsets.append(ncols)
        ncols += h0_line(a)
    for b in target_degrees:
        row_offsets.append(nrows)
        nrows += h0_line(b)
    grid = [[ZERO] * ncols for _ in range(nrows)]
    for i, b in enumerate(target_degrees):
        for j, a in enumerate(source_degrees):
            entry = forms[i][j]
            if entry.is_zero or a < 0 or b < 0:
                continue
            for p in range(a + 1):
                for shift, c in enumerate(entry.coeffs):
                    if not c.is_zero:
                        grid[row_offsets[i] + p + shift][col_offsets[j] + p] = c
    return ExactMatrix(grid, nrows, ncols)


@lru_cache(maxsize=1024)
def validate_resolution(res: SteinerResolution) -> ResolutionDiagnostics:
    """Injectivity and local freeness from the gcd of the maximal minors."""
    s = len(res.source_twists)
    if s == 0:
        return ResolutionDiagnostics(True, True, BinaryForm.constant(1))
    witness = form_gcd_many(maximal_minors(res.matrix, s))
    if witness is None:
        return ResolutionDiagnostics(False, False, BinaryForm.zero(0))
    return ResolutionDiagnostics(True, witness.degree == 0, witness)


def _require_locally_free(res: SteinerResolution) -> None:
    diag = validate_resolution(res)
    if not diag.cokernel_locally_free:
        raise InvalidInputError(f"Cokernel is not locally free (minor gcd {diag.witness}).")


@lru_cache(maxsize=4096)
def _connecting_rank(res: SteinerResolution, k: int) -> int:
    """Rank of H1((+)O(e_j+k)) -> H1((+)O(f_i+k)), via its Serre dual."""
    src = [-f - k - 2 for f in res.target_twists]
    tgt = [-e - k - 2 for e in res.source_twists]
    if all(d < 0 for d in src) or all(d < 0 for d in tgt):
        return 0
    transposed = [[res.matrix[i][j] for i in range(len(res.target_twists))] for j in range(len(res.source_twists))]
    return mat_rank(multiplication_matrix(transposed, src, tgt))


def clear_caches() -> None:
    validate_resolution.cache_clear()
    _connecting_rank.cache_clear()


def h0_twist(res: SteinerResolution, k: int) -> int:
    """h0(N(k)) = [h0(B) - h0(A)] + [h1(A) - rank], with A, B the twisted source and target."""
    _require_locally_free(res)
    h0_b = sum(h0_line(f + k) for f in res.target_twists)
    h0_a = sum(h0_line(e + k) for e in res.source_twists)
    h1_a = sum(h1_line(e + k) for e in res.source_twists)
    return h0_b - h0_a + h1_a - _connecting_rank(res, k)


def h1_twist(res: SteinerResolution, k: int) -> int:
    _require_locally_free(res)
    h1_b = sum(h1_line(f + k) for f in res.target_twists)
    return h1_b - _connecting_rank(res, k)


def euler_characteristic(res: SteinerResolution, k: int) -> int:
    return sum(f + k + 1 for f in res.target_twists) - sum(e + k + 1 for e in res.source_twists)


def default_twist_range(res: SteinerResolution) -> Tuple[int, int]:
    return -(max(res.target_twists) + res.rank + 2), 2


def degree_bounds(res: SteinerResolution) -> Tuple[int, int]:
    """Every summand degree lies in [min f, total - (rank-1) * min f]."""
    low = min(res.target_twists)
    return low, res.total_degree - (res.rank - 1) * low


def cohomology_table(res: SteinerResolution, twist_range: Optional[Tuple[int, int]] = None) -> CohomologyTable:
    lo, hi = twist_range or default_twist_range(res)
    _require_locally_free(res)
    return CohomologyTable(tuple((k, h0_twist(res, k), h1_twist(res, k)) for k in range(lo, hi + 1)))


def splitting_type(res: SteinerResolution) -> List[int]:
    """Degrees d_i with N = (+) O(d_i), read off from #{d_i >= -k} = h0(k) - h0(k-1)."""
    _require_locally_free(res)
    low, high = degree_bounds(res)
    counts = {}
    for k in range(-high, -low + 1):
        counts[k] = h0_twist(res, k) - h0_twist(res, k - 1)
    degrees: List[int] = []
    previous = 0
    for k in range(-high, -low + 1):
        degree = -k
        if counts[k] < previous:
            raise PropertyViolation("Section counts decreased with the twist.", "monotone_counting", k)
        degrees.extend([degree] * (counts[k] - previous))
        previous = counts[k]
    degrees.sort()
    if len(degrees) != res.rank or sum(degrees) != res.total_degree:
        raise PropertyViolation(
            f"Recovered degrees {degrees} do not match rank {res.rank} and degree {res.total_degree}.",
            "splitting_consistency",
            degrees,
        )
    logger.debug("splitting type %s", degrees)
    return degrees


def predict_h0(splitting: Sequence[int], k: int) -> int:
    return sum(max(d + k + 1, 0) for d in splitting)


def direct_sum(first: SteinerResolution, second: SteinerResolution) -> SteinerResolution:
    """Block-diagonal resolution of the direct sum of two cokernels."""
    rows = []
    for i, f in enumerate(first.target_twists):
        rows.append(tuple(first.matrix[i]) + tuple(BinaryForm.zero(max(f - e, 0)) for e in second.source_twists))
    for i, f in enumerate(second.target_twists):
        rows.append(tuple(BinaryForm.zero(max(f - e, 0)) for e in first.source_twists) + tuple(second.matrix[i]))
    return SteinerResolution(
        first.source_twists + second.source_twists,
        first.target_twists + second.target_twists,
        tuple(rows),
    )


# ---------------------------------------------------------------------------
# Generic splitting along twistor sections
# ---------------------------------------------------------------------------

def recursion_terms(h0_list: Sequence[int], variant: str = "corrected") -> Dict[int, int]:
    """Top-down multiplicities r_i from h0(N(-i)).

    corrected: r_i = h0[i] - sum_{j>i} (j - i + 1) r_j
    printed:   r_i = h0[i] - (i + 1) sum_{j>i} r_j
    """
    if variant not in RECURSION_VARIANTS:
        raise InvalidInputError(f"Unknown recursion variant {variant!r}.")
    h0 = [int(h) for h in h0_list]
    if any(h < 0 for h in h0):
        raise InvalidInputError("h0 values must be nonnegative.")
    r: Dict[int, int] = {}
    for i in range(len(h0) - 1, -1, -1):
        if variant == "corrected":
            r[i] = h0[i] - sum((j - i + 1) * rj for j, rj in r.items())
        else:
            r[i] = h0[i] - (i + 1) * sum(r.values())
    return dict(sorted(r.items()))


def evaluate_h0_list(multiplicities: Dict[int, int], length: int) -> List[int]:
    """h0[i] = sum_j (j - i + 1)_+ r_j for i < length."""
    return [sum(max(j - i + 1, 0) * rj for j, rj in multiplicities.items()) for i in range(length)]


def generic_section_splitting(h0_list: Sequence[int], rank: int, variant: str = "corrected") -> Dict[int, int]:
    """Multiplicities {i: r_i} of O(i) in the generic splitting; zero entries are omitted.

    Entries past the end of h0_list count as zero.
    """
    r = recursion_terms(h0_list, variant)
    negative = {i: ri for i, ri in r.items() if ri < 0}
    if negative:
        raise PropertyViolation(
            f"Recursion produced negative multiplicities {negative} ({variant}).",
            "generic_splitting",
            negative,
        )
    if sum(r.values()) != rank:
        raise PropertyViolation(
            f"Multiplicities sum to {sum(r.values())}, expected rank {rank} ({variant}).",
            "generic_splitting",
            r,
        )
    if evaluate_h0_list(r, len(h0_list)) != [int(h) for h in h0_list]:
        raise PropertyViolation(
            f"Multiplicities {r} do not reproduce the h0 list {list(h0_list)} ({variant}).",
            "generic_splitting",
            r,
        )
    return {i: ri for i, ri in sorted(r.items(), reverse=True) if ri}
