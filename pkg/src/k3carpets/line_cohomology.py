"""Closed-form cohomology of line bundles on P^2 and F_e.

On F_e the computation runs along the ruling pi': F_e -> P^1.  For a >= 0
the pushforward of O(a*C0 + b*f) splits as the sum of O_{P^1}(b - k*e) for
k = 0..a, with vanishing R^1 pushforward, so h^0 and h^1 are sums of the
corresponding P^1 numbers and h^2 comes out of Serre duality.  For a = -1
everything vanishes, and for a <= -2 the class is handled through its
Serre dual K - D (whose C0-coefficient is >= 0 again).

On P^2 the numbers are binomial coefficients plus Serre duality.

These formulas share nothing with the Cech machinery in `cech_oracle`,
which recomputes the same numbers from scratch; agreement of the two
routes is the central correctness property of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import surfaces


@dataclass(frozen=True)
class CohVector:
    """Exact nonnegative (h0, h1, h2) with derived Euler characteristic."""

    h0: int
    h1: int
    h2: int

    def __post_init__(self):
        for h in (self.h0, self.h1, self.h2):
            if not isinstance(h, int) or isinstance(h, bool) or h < 0:
                raise ValueError(f"cohomology dimensions must be integers >= 0, got {h!r}")

    @property
    def chi(self) -> int:
        return self.h0 - self.h1 + self.h2

    def reversed(self) -> "CohVector":
        return CohVector(self.h2, self.h1, self.h0)

    def __add__(self, other: "CohVector") -> "CohVector":
        return CohVector(self.h0 + other.h0, self.h1 + other.h1, self.h2 + other.h2)

    def scaled(self, n: int) -> "CohVector":
        """Cohomology of the n-fold direct sum."""
        if n < 0:
            raise ValueError("direct-sum multiplicity must be >= 0")
        return CohVector(n * self.h0, n * self.h1, n * self.h2)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.h0, self.h1, self.h2)


def pushforward_degrees(e: int, a: int, b: int) -> list[int]:
    """P^1-degrees of the summands of the pushforward of O(a*C0 + b*f).

    Returns [b - k*e for k = 0..a].  Only defined for a >= 0; callers must
    dualize first otherwise.
    """
    if e < 0:
        raise ValueError(f"e must be >= 0, got {e}")
    if a < 0:
        raise ValueError(f"pushforward degrees need a >= 0, got a = {a}; dualize first")
    return [b - k * e for k in range(a + 1)]


def coh_p1(d: int) -> tuple[int, int]:
    """(h0, h1) of O_{P^1}(d): (max(0, d+1), max(0, -d-1))."""
    return (max(0, d + 1), max(0, -d - 1))


def _h0_hirzebruch(e: int, a: int, b: int) -> int:
    # Sections restrict to each fiber with degree a, so a < 0 kills them all.
    if a < 0:
        return 0
    return sum(max(0, d + 1) for d in pushforward_degrees(e, a, b))


def coh(surface: surfaces.SurfaceModel, divisor: surfaces.DivisorClass) -> CohVector:
    """Exact (h0, h1, h2) of the line bundle O(divisor)."""
    surfaces._check_on(surface, divisor)
    if surface.is_plane:
        d = divisor.degree
        h0 = math.comb(d + 2, 2) if d >= 0 else 0
        h2 = math.comb(-d - 1, 2) if -d - 3 >= 0 else 0
        return CohVector(h0, 0, h2)

    a, b = divisor.coeffs
    e = surface.e
    if a >= 0:
        degs = pushforward_degrees(e, a, b)
        h0 = sum(coh_p1(d)[0] for d in degs)
        h1 = sum(coh_p1(d)[1] for d in degs)
        # h2 by Serre duality; the dual side has C0-coefficient <= -2, so
        # its h0 is a computed 0, not an assumed one.
        dual = surfaces.canonical_class(surface) - divisor
        h2 = _h0_hirzebruch(e, *dual.coeffs)
        return CohVector(h0, h1, h2)
    if a == -1:
        # Both pushforwards vanish; spelled out to avoid bouncing through
        # the dual, which has a = -1 as well.
        return CohVector(0, 0, 0)
    dual = surfaces.canonical_class(surface) - divisor
    return coh(surface, dual).reversed()
