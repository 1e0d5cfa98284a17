"""
Blowup Example Module - sections of the blown-up P^3 over P^1

A section is the point [a0, a1, b0, b1, c] of P^4; it sends [x0, x1] to
([a0 x0 + a1 x1, b0 x0 + b1 x1, -c x1, c x0], [x0, x1]). Its Kronecker
module is C^2 (x) C^2 inside C^5, taken modulo the Euler line of the section.
"""

import logging
import random
from dataclasses import dataclass
from typing import Sequence, Tuple

from errors import InvalidInputError
from exact_core import (
    ExactMatrix,
    GaussianRational,
    Polynomial,
    QuaternionValue,
    Vector,
    ZERO,
    gq,
    mat_rank,
    unit_vector,
    vec_is_zero,
    vector,
)
from kronecker_core import KroneckerModule

logger = logging.getLogger(__name__)

ON_DIVISOR = "on_divisor"
OFF_DIVISOR = "off_divisor"
SPLITTINGS = {ON_DIVISOR: "O(2)+O", OFF_DIVISOR: "O(1)+O(1)"}


class BlowupSection:
    """Homogeneous coordinates [a0, a1, b0, b1, c]; equality is projective."""

    __slots__ = ("coords", "pivot")

    def __init__(self, coords: Sequence):
        coords = vector(coords)
        if len(coords) != 5:
            raise InvalidInputError(f"A section has 5 homogeneous coordinates, got {len(coords)}.")
        if vec_is_zero(coords):
            raise InvalidInputError("Section coordinates must not all vanish.")
        a0, a1, b0, b1, c = coords
        if c.is_zero and (a0 * b1 - a1 * b0).is_zero:
            raise InvalidInputError("c = 0 requires a0*b1 - a1*b0 != 0.")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "pivot", next(i for i, x in enumerate(coords) if not x.is_zero))

    def __setattr__(self, name, value):
        raise AttributeError("BlowupSection is immutable")

    @property
    def a(self) -> Tuple[GaussianRational, GaussianRational]:
        return self.coords[0], self.coords[1]

    @property
    def b(self) -> Tuple[GaussianRational, GaussianRational]:
        return self.coords[2], self.coords[3]

    @property
    def c(self) -> GaussianRational:
        return self.coords[4]

    def normalized(self) -> Vector:
        p = self.coords[self.pivot]
        return tuple(x / p for x in self.coords)

    def __eq__(self, other):
        if not isinstance(other, BlowupSection):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __repr__(self):
        return f"BlowupSection([{', '.join(str(x) for x in self.coords)}])"


def section_eval(s: BlowupSection, x: Sequence) -> Tuple[Vector, Vector]:
    x0, x1 = vector(x)
    if x0.is_zero and x1.is_zero:
        raise InvalidInputError("P^1 point must be nonzero.")
    a0, a1, b0, b1, c = s.coords
    return (a0 * x0 + a1 * x1, b0 * x0 + b1 * x1, -c * x1, c * x0), (x0, x1)


def incidence_identity() -> bool:
    """z2 x0 + z3 x1 = 0 for symbolic section coordinates and base point."""
    a0, a1, b0, b1, c, x0, x1 = (Polynomial.complex_variable(k) for k in range(7))
    z2, z3 = -c * x1, c * x0
    return (z2 * x0 + z3 * x1).is_zero


def section_conjugate(s: BlowupSection) -> Vector:
    """The real structure (a0, a1, b0, b1, c) |-> (conj b1, -conj b0, -conj a1, conj a0, conj c)."""
    a0, a1, b0, b1, c = s.coords
    return (b1.conj(), -b0.conj(), -a1.conj(), a0.conj(), c.conj())


def is_real_section(s: BlowupSection) -> bool:
    """b0 = -conj a1, b1 = conj a0, c real, up to the homogeneous scale."""
    image = section_conjugate(s)
    return mat_rank(ExactMatrix([s.coords, image], 2, 5)) == 1


def classify_section(s: BlowupSection) -> str:
    """on_divisor iff c = 0, where the image meets the blown-up line z2 = z3 = 0."""
    return ON_DIVISOR if s.c.is_zero else OFF_DIVISOR


def _euler_projection(s: BlowupSection, v: Sequence) -> Vector:
    """Coset of v modulo the line through s, with the pivot coordinate eliminated."""
    w = s.coords
    p = s.pivot
    ratio = gq(v[p]) / w[p]
    reduced = tuple(gq(x) - ratio * y for x, y in zip(v, w))
    return reduced[:p] + reduced[p + 1:]


def blowup_module(s: BlowupSection) -> KroneckerModule:
    """e_a (x) e_b sits at coordinate 2a + b of C^5; slice z maps e to (e (x) z) mod s."""
    units = [unit_vector(5, i) for i in range(5)]
    maps = []
    for b in range(2):
        columns = [_euler_projection(s, units[2 * a + b]) for a in range(2)]
        maps.append(ExactMatrix.from_columns(columns, 4))
    return KroneckerModule(2, 2, 4, tuple(maps))


def real_chart(s: BlowupSection) -> QuaternionValue:
    """a0 + a1 j for a real section scaled to c = 1."""
    if not is_real_section(s):
        raise InvalidInputError("The quaternionic chart is defined on real sections.")
    if s.c.is_zero:
        raise InvalidInputError("The quaternionic chart needs c != 0.")
    a0, a1 = (x / s.c for x in s.a)
    return QuaternionValue(a0, a1)


def section_from_quaternion(q: QuaternionValue) -> BlowupSection:
    return BlowupSection((q.a, q.b, -q.b.conj(), q.a.conj(), 1))


def random_section(rng: random.Random, real: bool = False, on_divisor: bool = False, bound: int = 5) -> BlowupSection:
    def draw() -> GaussianRational:
        return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))

    while True:
        a0, a1 = draw(), draw()
        if real:
            b0, b1 = -a1.conj(), a0.conj()
            c = ZERO if on_divisor else gq(rng.randint(1, bound))
        else:
            b0, b1 = draw(), draw()
            c = ZERO if on_divisor else draw()
            if not on_divisor and c.is_zero:
                continue
        try:
            return BlowupSection((a0, a1, b0, b1, c))
        except InvalidInputError:
            logger.debug("rejected degenerate section draw")
