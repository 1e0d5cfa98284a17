"""
Kronecker Core Module - r-Kronecker modules and their quaternionic data

A module is a list of r matrices A_1..A_r of shape n x k, read as the map
    alpha(v (x) z) = sum_i z_i A_i v.
Slices are the matrices sum_i z_i A_i for fixed z != 0.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from config import DEFAULT_TRIALS, SAMPLE_BOUND
from errors import InvalidInputError
from exact_core import (
    BinaryForm,
    ExactMatrix,
    ONE,
    ZERO,
    Vector,
    form_gcd_many,
    form_root,
    gq,
    mat_rank,
    maximal_minors,
    unit_vector,
    vec_is_zero,
    vector,
)

logger = logging.getLogger(__name__)


class SigmaVariant(str, Enum):
    STANDARD = "standard"
    SPLIT = "split"
    MIXED = "mixed"


class CertificateKind(str, Enum):
    EXACT_PASS = "exact_pass"
    EXACT_FAIL = "exact_fail"
    RANDOMIZED_PASS = "randomized_pass"
    RANDOMIZED_FAIL = "randomized_fail"


@dataclass(frozen=True)
class KroneckerModule:
    r: int
    k: int
    n: int
    maps: Tuple[ExactMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.r < 1 or len(self.maps) != self.r:
            raise InvalidInputError(f"Expected {self.r} >= 1 maps, got {len(self.maps)}.")
        for A in self.maps:
            if (A.rows, A.cols) != (self.n, self.k):
                raise InvalidInputError(f"Every map must be {self.n}x{self.k}, got {A.rows}x{A.cols}.")

    @classmethod
    def from_maps(cls, maps: Sequence[ExactMatrix]) -> "KroneckerModule":
        if not maps:
            raise InvalidInputError("A Kronecker module needs at least one map.")
        return cls(len(maps), maps[0].cols, maps[0].rows, tuple(maps))

    def slice_matrix(self, z: Sequence) -> ExactMatrix:
        z = vector(z)
        if len(z) != self.r:
            raise InvalidInputError(f"Slice vector must have length {self.r}.")
        grid = [[ZERO] * self.k for _ in range(self.n)]
        for zi, A in zip(z, self.maps):
            if zi.is_zero:
                continue
            for a in range(self.n):
                row = A.entries[a]
                for b in range(self.k):
                    if not row[b].is_zero:
                        grid[a][b] = grid[a][b] + zi * row[b]
        return ExactMatrix(grid, self.n, self.k)


@dataclass(frozen=True)
class QuaternionicData:
    """Structure maps v |-> J0 conj(v) on V0 and w |-> T conj(w) on V1."""

    J0: ExactMatrix
    T: ExactMatrix
    variant: SigmaVariant = SigmaVariant.STANDARD
    sign_mask: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.J0.is_square or not self.T.is_square:
            raise InvalidInputError("Structure matrices must be square.")
        # J0 conj(J0) = -c I with c > 0 has no solution in odd dimension
        if self.variant == SigmaVariant.STANDARD and self.J0.rows % 2:
            raise InvalidInputError(f"A quaternionic structure needs even dim V0, got {self.J0.rows}.")


@dataclass(frozen=True)
class SliceCertificate:
    kind: CertificateKind
    witness: Optional[Vector] = None
    trials: int = 0
    gcd: Optional[BinaryForm] = None

    @property
    def passed(self) -> bool:
        return self.kind in (CertificateKind.EXACT_PASS, CertificateKind.RANDOMIZED_PASS)

    @property
    def exact(self) -> bool:
        return self.kind in (CertificateKind.EXACT_PASS, CertificateKind.EXACT_FAIL)


def evaluate(km: KroneckerModule, v: Sequence, z: Sequence) -> Vector:
    if len(v) != km.k or len(z) != km.r:
        raise InvalidInputError(f"Expected v of length {km.k} and z of length {km.r}.")
    return km.slice_matrix(z).apply(vector(v))


def slice_rank(km: KroneckerModule, z: Sequence) -> int:
    z = vector(z)
    if vec_is_zero(z):
        raise InvalidInputError("Slices are defined for z != 0.")
    return mat_rank(km.slice_matrix(z))


def _pencil_certificate(km: KroneckerModule) -> SliceCertificate:
    A1, A2 = km.maps
    if mat_rank(A2) < km.k:
        return SliceCertificate(CertificateKind.EXACT_FAIL, vector((0, 1)))
    # entries z0*A1 + z1*A2 as linear forms in (z0, z1)
    pencil = [[BinaryForm.linear(A1[i, j], A2[i, j]) for j in range(km.k)] for i in range(km.n)]
    g = form_gcd_many(maximal_minors(pencil, km.k))
    if g is None:
        return SliceCertificate(CertificateKind.EXACT_FAIL, vector((1, 0)))
    if g.degree == 0:
        return SliceCertificate(CertificateKind.EXACT_PASS, gcd=g)
    logger.info("pencil minors share the factor %s", g)
    if g.coeffs[0].is_zero:
        return SliceCertificate(CertificateKind.EXACT_FAIL, vector((1, 0)), gcd=g)
    if g.degree == 1:
        a, b = g.coeffs
        return SliceCertificate(CertificateKind.EXACT_FAIL, vector((-b, a)), gcd=g)
    root = form_root(g)
    if root is None:
        logger.info("no root of %s in Q(i); failing slice left without a witness", g)
    return SliceCertificate(CertificateKind.EXACT_FAIL, None if root is None else vector(root), gcd=g)


def slice_injectivity_certificate(
    km: KroneckerModule, seed: int = 0, trials: int = DEFAULT_TRIALS
) -> SliceCertificate:
    """Exact verdict for r <= 2; seeded sampling for r >= 3."""
    if km.k == 0:
        return SliceCertificate(CertificateKind.EXACT_PASS)
    if km.r == 1:
        if mat_rank(km.maps[0]) == km.k:
            return SliceCertificate(CertificateKind.EXACT_PASS)
        return SliceCertificate(CertificateKind.EXACT_FAIL, vector((1,)))
    if km.r == 2:
        return _pencil_certificate(km)
    rng = random.Random(seed)
    for _ in range(trials):
        z = [0] * km.r
        while not any(z):
            z = [rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND) for _ in range(km.r)]
        if slice_rank(km, z) < km.k:
            return SliceCertificate(CertificateKind.RANDOMIZED_FAIL, vector(z), trials)
    return SliceCertificate(CertificateKind.RANDOMIZED_PASS, None, trials)


def restrict(km: KroneckerModule, W: Sequence[Sequence]) -> KroneckerModule:
    """Module on span(W): B_j = sum_i W_j[i] A_i."""
    W = [vector(w) for w in W]
    if not W or any(len(w) != km.r for w in W):
        raise InvalidInputError(f"Restriction needs vectors of length {km.r}.")
    if mat_rank(ExactMatrix(W, len(W), km.r)) < len(W):
        raise InvalidInputError("Restriction vectors are linearly dependent.")
    return KroneckerModule(len(W), km.k, km.n, tuple(km.slice_matrix(w) for w in W))


def pencil_certificates(km: KroneckerModule) -> Dict[Tuple[int, int], SliceCertificate]:
    """Exact certificates on every coordinate pencil span(e_i, e_j)."""
    out = {}
    for i, j in combinations(range(km.r), 2):
        out[(i, j)] = slice_injectivity_certificate(restrict(km, [unit_vector(km.r, i), unit_vector(km.r, j)]))
    return out


# ---------------------------------------------------------------------------
# Quaternionic structures
# ---------------------------------------------------------------------------

def sigma_signs(r: int, variant: SigmaVariant, sign_mask: Sequence[int] = ()) -> Tuple[int, ...]:
    if r % 2:
        raise InvalidInputError(f"Quaternionic structures need r even, got {r}.")
    if variant == SigmaVariant.STANDARD:
        return (-1,) * (r // 2)
    if variant == SigmaVariant.SPLIT:
        return (1,) * (r // 2)
    if len(sign_mask) != r // 2 or any(s not in (1, -1) for s in sign_mask):
        raise InvalidInputError(f"Mixed variant needs {r // 2} signs in {{1, -1}}.")
    return tuple(sign_mask)


def sigma_matrix(r: int, variant: SigmaVariant = SigmaVariant.STANDARD, sign_mask: Sequence[int] = ()) -> ExactMatrix:
    """Real matrix S with sigma(z) = S conj(z).

    Pairwise sigma(z)_{2m} = s_m conj(z_{2m+1}), sigma(z)_{2m+1} = conj(z_{2m});
    s_m = -1 is the standard structure, +1 the split one.
    """
    signs = sigma_signs(r, variant, sign_mask)
    grid = [[ZERO] * r for _ in range(r)]
    for m, s in enumerate(signs):
        grid[2 * m][2 * m + 1] = gq(s)
        grid[2 * m + 1][2 * m] = ONE
    return ExactMatrix(grid, r, r)


def apply_sigma(z: Sequence, variant: SigmaVariant = SigmaVariant.STANDARD, sign_mask: Sequence[int] = ()) -> Vector:
    z = vector(z)
    return sigma_matrix(len(z), variant, sign_mask).apply(tuple(x.conj() for x in z))


def _scalar_identity_factor(M: ExactMatrix):
    """c when M = c*I, else None."""
    if not M.is_square or M.rows == 0:
        return None
    c = M[0, 0]
    if M != ExactMatrix.identity(M.rows).scale(c):
        return None
    return c


def structure_factor(J: ExactMatrix):
    """c with J conj(J) = c I, or None."""
    return _scalar_identity_factor(J @ J.conj())


def is_quaternionic(km: KroneckerModule, qd: QuaternionicData) -> bool:
    """Check alpha(sigma0(v) (x) sigma(z)) = tau(alpha(v (x) z)) on a basis.

    With sigma0(v) = J0 conj(v), tau(w) = T conj(w) and sigma(e_b) = S e_b this
    is sum_i S[i][b] A_i J0 = T conj(A_b) for every b. J0 conj(J0) must be a
    negative multiple of I for the standard variant and a positive one for the
    split variant; T conj(T) a positive multiple of I.
    """
    if (qd.J0.rows, qd.J0.cols) != (km.k, km.k) or (qd.T.rows, qd.T.cols) != (km.n, km.n):
        raise InvalidInputError("Structure matrices do not match the module dimensions.")
    S = sigma_matrix(km.r, qd.variant, qd.sign_mask)
    c0 = structure_factor(qd.J0)
    c1 = structure_factor(qd.T)
    if c0 is None or c1 is None or not c0.is_real or not c1.is_real or c1.re <= 0:
        logger.info("structure maps are not (anti)involutions up to scale")
        return False
    if qd.variant == SigmaVariant.STANDARD and c0.re >= 0:
        return False
    if qd.variant == SigmaVariant.SPLIT and c0.re <= 0:
        return False
    for b in range(km.r):
        lhs = km.slice_matrix(S.column(b)) @ qd.J0
        if lhs != qd.T @ km.maps[b].conj():
            logger.info("quaternionic identity fails for basis slice %d", b)
            return False
    return True


def conjugate_slice(z: Sequence, qd: QuaternionicData) -> Vector:
    return apply_sigma(z, qd.variant, qd.sign_mask)
