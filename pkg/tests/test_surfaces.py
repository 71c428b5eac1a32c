import itertools

import pytest

from k3carpets.line_cohomology import coh
from k3carpets.surfaces import (
    SurfaceMismatchError,
    canonical_class,
    hirzebruch,
    intersect,
    is_base_point_free,
    is_very_ample,
    projective_plane,
    riemann_roch_chi,
)

P2 = projective_plane()


def test_invalid_surfaces():
    with pytest.raises(ValueError):
        hirzebruch(-1)
    with pytest.raises(SurfaceMismatchError):
        hirzebruch(2).divisor(1)
    with pytest.raises(SurfaceMismatchError):
        P2.divisor(1, 2)


def test_picard_rank():
    assert P2.picard_rank == 1
    assert hirzebruch(5).picard_rank == 2


def test_intersection_examples():
    f2 = hirzebruch(2)
    c0 = f2.divisor(1, 0)
    assert intersect(f2, c0, c0) == -2
    assert intersect(f2, c0, f2.divisor(0, 1)) == 1
    assert intersect(f2, f2.divisor(0, 1), f2.divisor(0, 1)) == 0
    assert intersect(P2, P2.divisor(3), P2.divisor(5)) == 15


@pytest.mark.parametrize("e", range(11))
def test_canonical_square_hirzebruch(e):
    s = hirzebruch(e)
    k = canonical_class(s)
    assert k.coeffs == (-2, -(e + 2))
    assert intersect(s, k, k) == 8


def test_canonical_plane():
    k = canonical_class(P2)
    assert k.coeffs == (-3,)
    assert intersect(P2, k, k) == 9


def test_canonical_examples():
    assert canonical_class(hirzebruch(0)).coeffs == (-2, -2)
    assert canonical_class(hirzebruch(3)).coeffs == (-2, -5)


def test_intersection_symmetric_bilinear():
    f3 = hirzebruch(3)
    classes = [f3.divisor(a, b) for a in range(-3, 4) for b in range(-3, 4)]
    for d1, d2 in itertools.product(classes[:14], classes[-14:]):
        assert intersect(f3, d1, d2) == intersect(f3, d2, d1)
    d1, d2, d3 = f3.divisor(2, -1), f3.divisor(-1, 4), f3.divisor(3, 3)
    assert intersect(f3, d1 + 2 * d2, d3) == intersect(f3, d1, d3) + 2 * intersect(f3, d2, d3)


def test_mismatched_surface_errors():
    f1, f2 = hirzebruch(1), hirzebruch(2)
    with pytest.raises(SurfaceMismatchError):
        intersect(f1, f1.divisor(1, 0), f2.divisor(1, 0))
    with pytest.raises(SurfaceMismatchError):
        f1.divisor(1, 0) + f2.divisor(0, 1)
    with pytest.raises(SurfaceMismatchError):
        riemann_roch_chi(f2, f1.divisor(1, 1))


def test_very_ample():
    f2 = hirzebruch(2)
    assert is_very_ample(f2, f2.divisor(1, 3))
    assert not is_very_ample(f2, f2.divisor(1, 2))
    assert not is_very_ample(f2, f2.divisor(0, 1))  # fiber classes never are
    assert not is_very_ample(f2, f2.divisor(-1, 9))
    assert is_very_ample(P2, P2.divisor(1))
    assert not is_very_ample(P2, P2.divisor(0))


def test_base_point_free():
    f2, f3 = hirzebruch(2), hirzebruch(3)
    assert is_base_point_free(f2, -2 * canonical_class(f2))  # (4, 8), boundary case
    assert not is_base_point_free(f3, -2 * canonical_class(f3))  # (4, 10)
    assert is_base_point_free(P2, P2.divisor(6))
    assert is_base_point_free(P2, P2.divisor(0))
    assert not is_base_point_free(P2, P2.divisor(-1))


@pytest.mark.parametrize("e", range(9))
def test_anticanonical_double_bpf_threshold(e):
    s = hirzebruch(e)
    assert is_base_point_free(s, -2 * canonical_class(s)) == (e <= 2)


def test_riemann_roch_values():
    assert riemann_roch_chi(hirzebruch(4), hirzebruch(4).divisor(0, 0)) == 1
    assert riemann_roch_chi(P2, P2.divisor(3)) == 10
    # cross-checked against h0 - h1 + h2 of the closed-form cohomology
    f1 = hirzebruch(1)
    assert riemann_roch_chi(f1, f1.divisor(1, 2)) == 5
    assert coh(f1, f1.divisor(1, 2)).chi == 5


def test_riemann_roch_matches_cohomology_on_grid():
    for e in range(4):
        s = hirzebruch(e)
        for a in range(-5, 6):
            for b in range(-5, 6):
                d = s.divisor(a, b)
                assert riemann_roch_chi(s, d) == coh(s, d).chi
    for deg in range(-9, 10):
        assert riemann_roch_chi(P2, P2.divisor(deg)) == coh(P2, P2.divisor(deg)).chi


def test_serre_dual_chi_relation():
    # Riemann-Roch forces chi(K - D) = chi(D), matching the Serre-dual
    # reversal of the cohomology sums
    for surface in (hirzebruch(0), hirzebruch(3), P2):
        k = canonical_class(surface)
        span = [-4, -1, 0, 2, 5]
        classes = (
            [surface.divisor(a, b) for a in span for b in span]
            if not surface.is_plane
            else [surface.divisor(d) for d in span]
        )
        for d in classes:
            assert riemann_roch_chi(surface, k - d) == riemann_roch_chi(surface, d)
            assert coh(surface, k - d).chi == coh(surface, d).reversed().chi
