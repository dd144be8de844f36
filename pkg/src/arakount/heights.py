"""Heights of projective points and of hypersurfaces over the rationals.

Points over a quadratic field are supported only when their coordinates are
rational integers. The logarithmic height does not change under field
extension, so h is computed over Q and H_K = H^[K:Q].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple

from .errors import InvalidPoint, InvalidPolynomial
from .polynomial import HomogeneousPolynomial

SLACK = 1e-9


def _field_degree(tag):
    from .prime_distribution import number_field

    return number_field(tag).degree


def canonicalize(coords):
    coords = [int(c) for c in coords]
    if not coords or not any(coords):
        raise InvalidPoint("all coordinates are zero")
    g = reduce(math.gcd, coords)
    first = next(c for c in coords if c)
    if first < 0:
        g = -g
    return tuple(c // g for c in coords)


class ProjectivePoint:
    """Primitive integer coordinates, first nonzero coordinate positive."""

    __slots__ = ("coords", "field_tag")

    def __init__(self, coords, field_tag="Q"):
        object.__setattr__(self, "coords", canonicalize(coords))
        object.__setattr__(self, "field_tag", field_tag)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    @property
    def n(self):
        return len(self.coords) - 1

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.coords == other.coords and self.field_tag == other.field_tag

    def __hash__(self):
        return hash((self.coords, self.field_tag))

    def sort_key(self):
        return (max(abs(c) for c in self.coords), self.coords)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


class HeightValue(NamedTuple):
    H: int
    h: float
    h_arakelov: float | None = None


def weil_height(point: ProjectivePoint) -> HeightValue:
    if not isinstance(point, ProjectivePoint):
        point = ProjectivePoint(point)
    deg = _field_degree(point.field_tag)
    H = max(abs(c) for c in point.coords)
    return HeightValue(H ** deg, math.log(H), arakelov_height(point))


def arakelov_height(point: ProjectivePoint) -> float:
    """Half the log of the squared Euclidean norm of primitive coordinates.

    Primitivity makes every finite place contribute zero.
    """
    if not isinstance(point, ProjectivePoint):
        point = ProjectivePoint(point)
    return 0.5 * math.log(sum(c * c for c in point.coords))


def naive_poly_height(f: HomogeneousPolynomial) -> HeightValue:
    if f.is_zero():
        raise InvalidPolynomial("zero polynomial has no height")
    H = max(abs(c) for _, c in f.primitive().items())
    return HeightValue(H, math.log(H))


def harmonic(n):
    return math.fsum(1.0 / k for k in range(1, n + 1))


@dataclass(frozen=True)
class HeightInterval:
    lo: float
    hi: float
    h: float
    n: int
    delta: int

    def __iter__(self):
        return iter((self.lo, self.hi))


def hypersurface_height_interval(f: HomogeneousPolynomial) -> HeightInterval:
    """Interval known to contain the Arakelov height of the hypersurface f = 0.

    lo = h - delta(log 2 + 5 log(n+1) - H_n/2)
    hi = h + log((n+1)(delta+1))/2 + delta H_n / 2
    where h is the naive height and H_n the n-th harmonic number.
    """
    if f.is_zero() or not f.degree:
        raise InvalidPolynomial("need a nonconstant nonzero form")
    n, delta = f.n, f.degree
    h = naive_poly_height(f).h
    Hn = harmonic(n)
    lo = h - delta * (math.log(2) + 5 * math.log(n + 1) - 0.5 * Hn)
    hi = h + 0.5 * math.log((n + 1) * (delta + 1)) + 0.5 * delta * Hn
    return HeightInterval(lo, hi, h, n, delta)


def comparison_gap(point: ProjectivePoint) -> tuple[float, float]:
    """|h - h_arakelov| and the admissible gap log(n+1)/2."""
    if not isinstance(point, ProjectivePoint):
        point = ProjectivePoint(point)
    hv = weil_height(point)
    return abs(hv.h - hv.h_arakelov), 0.5 * math.log(len(point.coords))
