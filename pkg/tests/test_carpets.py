import pytest

from k3carpets.carpets import (
    EmbeddingData,
    abstract_carpet_dim,
    carpet_report,
    double_cover_k3_check,
    embedded_carpet_h0,
    hilbert_report,
)
from k3carpets.line_cohomology import coh
from k3carpets.surfaces import canonical_class, hirzebruch, projective_plane

P2 = projective_plane()


def complete(surface, *coeffs, extra=0):
    return EmbeddingData.complete_series(surface, surface.divisor(*coeffs), extra)


def test_embedding_validation():
    f2 = hirzebruch(2)
    with pytest.raises(ValueError):
        EmbeddingData(f2, f2.divisor(1, 2), 20)  # not very ample
    with pytest.raises(ValueError):
        EmbeddingData(f2, f2.divisor(0, 1), 20)  # fiber class
    with pytest.raises(ValueError):
        EmbeddingData(P2, P2.divisor(2), 4)  # N + 1 < h0 = 6
    emb = complete(f2, 1, 3)
    assert emb.n_plus_1 == coh(f2, f2.divisor(1, 3)).h0 == 6


@pytest.mark.parametrize("e", range(8))
def test_abstract_dimension_hirzebruch(e):
    assert abstract_carpet_dim(hirzebruch(e)) == 2


def test_abstract_dimension_plane():
    assert abstract_carpet_dim(P2) == 1


def test_minimal_degree_unique_carpet():
    for e, b in [(0, 1), (1, 2), (2, 4)]:
        s = hirzebruch(e)
        for extra in (0, 7):
            emb = complete(s, 1, b, extra=extra)
            assert embedded_carpet_h0(emb) == 1
    rep = carpet_report(complete(hirzebruch(0), 1, 1))
    assert rep.minimal_degree_case and rep.embedded_moduli_dim == 0
    assert rep.exists_embedded


def test_embedded_counts_frozen_cases():
    f2 = hirzebruch(2)
    assert embedded_carpet_h0(complete(f2, 2, 5)) == 25
    assert embedded_carpet_h0(complete(f2, 2, 5, extra=5)) == 35
    f1 = hirzebruch(1)
    assert embedded_carpet_h0(complete(f1, 2, 4)) == 25
    assert embedded_carpet_h0(complete(P2, 3)) == 10
    assert embedded_carpet_h0(complete(P2, 4)) == 45
    assert embedded_carpet_h0(complete(P2, 1)) == 0
    assert embedded_carpet_h0(complete(P2, 2)) == 0


def test_embedded_count_closed_forms():
    for e in range(5):
        s = hirzebruch(e)
        for a in range(1, 5):
            for b in range(a * e + 1, a * e + 5):
                for extra in (0, 3):
                    emb = complete(s, a, b, extra=extra)
                    np1 = emb.n_plus_1
                    want = np1 * (a - 1) * (2 * b - 2 - a * e) // 2 + 1
                    assert embedded_carpet_h0(emb) == want
                    if extra == 0:
                        quartic = (a * a - 1) * ((2 * b - a * e) ** 2 - 4) // 4 + 1
                        assert want == quartic


def test_embedded_count_plane_closed_forms():
    for d in range(1, 9):
        for extra in (0, 5):
            emb = complete(P2, d, extra=extra)
            got = embedded_carpet_h0(emb)
            assert got == emb.n_plus_1 * (d - 1) * (d - 2) // 2
            assert (got == 0) == (d <= 2)
        # complete-series specialization collapses to one quartic in d
        assert embedded_carpet_h0(complete(P2, d)) == (d + 2) * (d + 1) * (d - 1) * (d - 2) // 4


def test_carpet_report_fields():
    rep = carpet_report(complete(hirzebruch(2), 2, 5))
    assert rep.abstract_family_dim == 2
    assert rep.embedded_h0 == 25
    assert rep.embedded_moduli_dim == 24
    assert rep.exists_embedded and not rep.minimal_degree_case
    assert rep.assumed_splitting
    rep = carpet_report(complete(P2, 2))
    assert rep.abstract_family_dim == 1
    assert not rep.exists_embedded and rep.embedded_h0 == 0
    assert not rep.assumed_splitting


@pytest.mark.parametrize("e", range(7))
def test_double_cover(e):
    rep = double_cover_k3_check(hirzebruch(e))
    assert rep.cover_chi == 2
    assert rep.cover_h1 == 0
    assert rep.branch_bpf == (e <= 2)
    assert rep.is_k3_cover == (e <= 2)
    expected_h1 = coh(hirzebruch(e), -2 * canonical_class(hirzebruch(e))).h1
    assert rep.h1_N_pi == expected_h1
    if rep.is_k3_cover:
        assert rep.h1_N_pi == 0


def test_double_cover_plane():
    rep = double_cover_k3_check(P2)
    assert rep.is_k3_cover
    assert rep.h1_N_pi == 0
    assert rep.cover_K_trivial


def test_hilbert_smooth_cases():
    for e, ab in [(0, (1, 1)), (1, (2, 4)), (2, (2, 5))]:
        rep = hilbert_report(complete(hirzebruch(e), *ab))
        np1 = rep.hilbert_ambient_n + 1
        assert rep.smooth
        assert rep.chi_normal_carpet == rep.expected_smooth_dim == np1 * np1 + 18
        assert rep.h1_normal_carpet == (0, 0)
        assert rep.h0_normal_carpet == (rep.expected_smooth_dim,) * 2


def test_hilbert_ambient_is_carpet_complete():
    # the Hilbert chain runs at N + 1 = h0(L) + h0(L + K), the dimension of
    # the complete series on the carpet; the input ambient is only echoed
    f2 = hirzebruch(2)
    d = f2.divisor(2, 5)
    for extra in (0, 5):
        rep = hilbert_report(complete(f2, 2, 5, extra=extra))
        want = coh(f2, d).h0 + coh(f2, d + canonical_class(f2)).h0
        assert rep.hilbert_ambient_n + 1 == want == 14
        assert rep.chi_normal_carpet == 14 * 14 + 18
        assert rep.embedding.ambient_n == 11 + extra


def test_hilbert_singular_f3():
    rep = hilbert_report(complete(hirzebruch(3), 2, 8))
    assert not rep.smooth
    assert rep.h1_K2inv == 1 and rep.h1_Kinv == 0
    assert rep.h1_normal_carpet == (1, 1)  # forced exactly
    assert rep.chi_normal_carpet == rep.expected_smooth_dim
    assert rep.h0_normal_carpet == (rep.expected_smooth_dim + 1,) * 2


def test_hilbert_interval_for_large_e():
    # both obstruction witnesses are nonzero, so only an interval is honest
    rep = hilbert_report(complete(hirzebruch(4), 2, 9))
    assert not rep.smooth
    assert (rep.h1_Kinv, rep.h1_K2inv) == (1, 3)
    assert rep.h1_normal_carpet == (3, 4)
    rep = hilbert_report(complete(hirzebruch(6), 3, 19))
    assert (rep.h1_Kinv, rep.h1_K2inv) == (3, 8)
    assert rep.h1_normal_carpet == (8, 11)
    assert rep.chi_normal_carpet == rep.expected_smooth_dim


def test_hilbert_plane_always_smooth():
    for d in range(3, 7):
        rep = hilbert_report(complete(P2, d))
        np1 = rep.hilbert_ambient_n + 1
        assert np1 == (d + 2) * (d + 1) // 2 + (d - 1) * (d - 2) // 2
        assert rep.smooth
        assert rep.chi_normal_carpet == np1 * np1 + 18
        assert not rep.assumed_splitting


def test_hilbert_surface_normal_bookkeeping():
    # h0 of the surface normal bundle is (N+1) h0(L) - 7 on F_e, - 9 on P^2
    f2 = hirzebruch(2)
    rep = hilbert_report(complete(f2, 2, 5))
    np1 = rep.hilbert_ambient_n + 1
    assert rep.h0_normal_surface == np1 * coh(f2, f2.divisor(2, 5)).h0 - 7
    rep = hilbert_report(complete(P2, 3))
    np1 = rep.hilbert_ambient_n + 1
    assert rep.h0_normal_surface == np1 * coh(P2, P2.divisor(3)).h0 - 9


def test_hilbert_requires_existing_carpet():
    with pytest.raises(ValueError, match="no embedded carpet"):
        hilbert_report(complete(P2, 2))
    with pytest.raises(ValueError, match="no embedded carpet"):
        hilbert_report(complete(P2, 1))
