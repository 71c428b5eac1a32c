"""One-shot verification battery behind the `verify-paper` command.

Each claim records a checked mathematical statement with the computed and
expected values; sweep-style statements are aggregated into a single claim
whose computed value is a mismatch count.  The battery is deterministic
(fixed grids, fixed RNG seed) and uses only the public module operations,
looked up through their modules so that deliberately corrupting a single
constant (canonical class, intersection form, pushforward degrees) makes
the affected claims fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import carpets, cech_oracle, line_cohomology, surfaces
from .carpets import EmbeddingData
from .exact_seq import CohInterval, LesInstance, propagate

ORACLE_E_RANGE = range(0, 6)
ORACLE_AB_SPAN = 8
ORACLE_P2_SPAN = 12

CARPET_E_RANGE = range(0, 7)
CARPET_A_RANGE = range(1, 7)
CARPET_B_OFFSETS = range(1, 7)
CARPET_EXTRAS = (0, 5)
P2_D_RANGE = range(1, 11)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    subject: str
    computed: str
    expected: str

    @property
    def passed(self) -> bool:
        return self.computed == self.expected


def _claim(claim_id: str, subject: str, computed, expected) -> Claim:
    return Claim(claim_id, subject, str(computed), str(expected))


def _mismatch_claim(claim_id: str, subject: str, checked: int, mismatches: list) -> Claim:
    computed = f"{checked - len(mismatches)}/{checked} agree"
    if mismatches:
        computed += f"; first mismatch {mismatches[0]}"
    return _claim(claim_id, subject, computed, f"{checked}/{checked} agree")


def _oracle_grid():
    for e in ORACLE_E_RANGE:
        s = surfaces.hirzebruch(e)
        for a in range(-ORACLE_AB_SPAN, ORACLE_AB_SPAN + 1):
            for b in range(-ORACLE_AB_SPAN, ORACLE_AB_SPAN + 1):
                yield s, s.divisor(a, b)
    p2 = surfaces.projective_plane()
    for d in range(-ORACLE_P2_SPAN, ORACLE_P2_SPAN + 1):
        yield p2, p2.divisor(d)


def surface_claims() -> list[Claim]:
    out = []
    p2 = surfaces.projective_plane()
    for e in CARPET_E_RANGE:
        s = surfaces.hirzebruch(e)
        k = surfaces.canonical_class(s)
        out.append(_claim(f"canonical-square-F{e}", f"K.K on F_{e}", surfaces.intersect(s, k, k), 8))
    k2 = surfaces.canonical_class(p2)
    out.append(_claim("canonical-square-P2", "K.K on P^2", surfaces.intersect(p2, k2, k2), 9))
    f0, f3 = surfaces.hirzebruch(0), surfaces.hirzebruch(3)
    out.append(_claim("canonical-class-F0", "canonical class of F_0",
                      surfaces.canonical_class(f0).coeffs, (-2, -2)))
    out.append(_claim("canonical-class-F3", "canonical class of F_3",
                      surfaces.canonical_class(f3).coeffs, (-2, -5)))
    out.append(_claim("canonical-class-P2", "canonical class of P^2",
                      surfaces.canonical_class(p2).coeffs, (-3,)))
    f2 = surfaces.hirzebruch(2)
    out.append(_claim("section-self-intersection", "C0.C0 on F_2",
                      surfaces.intersect(f2, f2.divisor(1, 0), f2.divisor(1, 0)), -2))
    out.append(_claim("very-ample-threshold", "very-ampleness of (1,3) and (1,2) on F_2",
                      (surfaces.is_very_ample(f2, f2.divisor(1, 3)),
                       surfaces.is_very_ample(f2, f2.divisor(1, 2))),
                      (True, False)))
    bpf = tuple(
        surfaces.is_base_point_free(
            surfaces.hirzebruch(e), -2 * surfaces.canonical_class(surfaces.hirzebruch(e))
        )
        for e in CARPET_E_RANGE
    )
    out.append(_claim("anticanonical-double-bpf", "|-2K| base point free on F_e, e = 0..6",
                      bpf, tuple(e <= 2 for e in CARPET_E_RANGE)))
    return out


def cohomology_claims() -> list[Claim]:
    out = []
    p2 = surfaces.projective_plane()
    vals = tuple(
        line_cohomology.coh(surfaces.hirzebruch(e), surfaces.hirzebruch(e).divisor(0, -2)).as_tuple()
        for e in CARPET_E_RANGE
    )
    out.append(_claim("fiber-tangent-twist", "cohomology of O(-2f) on F_e, e = 0..6",
                      vals, ((0, 1, 0),) * len(CARPET_E_RANGE)))
    vals = tuple(
        line_cohomology.coh(surfaces.hirzebruch(e), surfaces.hirzebruch(e).divisor(-2, -e)).as_tuple()
        for e in CARPET_E_RANGE
    )
    out.append(_claim("base-tangent-twist", "cohomology of O(-2C0 - ef) on F_e, e = 0..6",
                      vals, ((0, 1, 0),) * len(CARPET_E_RANGE)))
    vals = tuple(
        line_cohomology.coh(surfaces.hirzebruch(e), surfaces.canonical_class(surfaces.hirzebruch(e))).as_tuple()
        for e in CARPET_E_RANGE
    )
    out.append(_claim("canonical-cohomology", "cohomology of K on F_e, e = 0..6",
                      vals, ((0, 0, 1),) * len(CARPET_E_RANGE)))

    mismatches = []
    checked = 0
    for e in CARPET_E_RANGE:
        s = surfaces.hirzebruch(e)
        for a in CARPET_A_RANGE:
            for off in CARPET_B_OFFSETS:
                b = a * e + off
                d = s.divisor(a, b)
                checked += 1
                got = line_cohomology.coh(s, d).as_tuple()
                want = ((a + 1) * (2 * b + 2 - a * e) // 2, 0, 0)
                if got != want:
                    mismatches.append((str(s), (a, b), got, want))
                checked += 1
                got = line_cohomology.coh(s, d + surfaces.canonical_class(s)).h0
                want_adj = (a - 1) * (2 * b - 2 - a * e) // 2
                if got != want_adj:
                    mismatches.append((str(s), (a, b), "adjoint", got, want_adj))
    out.append(_mismatch_claim("very-ample-section-counts",
                               "closed-form h0 for very ample classes and their adjoints",
                               checked, mismatches))
    out.append(_claim("serre-dual-structure-sheaf", "cohomology of O(-3) on P^2",
                      line_cohomology.coh(p2, p2.divisor(-3)).as_tuple(), (0, 0, 1)))
    return out


def oracle_claims() -> list[Claim]:
    agree, duality, rr = [], [], []
    checked = 0
    for s, d in _oracle_grid():
        checked += 1
        closed = line_cohomology.coh(s, d)
        k = surfaces.canonical_class(s)
        try:
            brute = cech_oracle.coh_oracle(s, d)
            if closed.as_tuple() != brute.as_tuple():
                agree.append((str(s), d.coeffs, closed.as_tuple(), brute.as_tuple()))
        except cech_oracle.TruncationError as err:
            agree.append((str(s), d.coeffs, "truncation", str(err)))
        dual = line_cohomology.coh(s, k - d)
        if closed.reversed().as_tuple() != dual.as_tuple():
            duality.append((str(s), d.coeffs))
        if closed.chi != surfaces.riemann_roch_chi(s, d):
            rr.append((str(s), d.coeffs))
    out = [
        _mismatch_claim("oracle-agreement",
                        f"closed forms match the Cech oracle on {checked} bundles",
                        checked, agree),
        _mismatch_claim("serre-duality", "reversal under D -> K - D on the same grid",
                        checked, duality),
        _mismatch_claim("riemann-roch", "chi matches Riemann-Roch on the same grid",
                        checked, rr),
    ]
    return out


def carpet_claims() -> list[Claim]:
    out = []
    p2 = surfaces.projective_plane()
    dims = tuple(carpets.abstract_carpet_dim(surfaces.hirzebruch(e)) for e in CARPET_E_RANGE)
    out.append(_claim("abstract-family-dim-hirzebruch",
                      "abstract carpet family dimension on F_e, e = 0..6",
                      dims, (2,) * len(CARPET_E_RANGE)))
    out.append(_claim("abstract-family-dim-plane", "abstract carpet family dimension on P^2",
                      carpets.abstract_carpet_dim(p2), 1))

    mismatches = []
    checked = 0
    for e in CARPET_E_RANGE:
        s = surfaces.hirzebruch(e)
        for a in CARPET_A_RANGE:
            for off in CARPET_B_OFFSETS:
                b = a * e + off
                d = s.divisor(a, b)
                for extra in CARPET_EXTRAS:
                    emb = EmbeddingData.complete_series(s, d, extra)
                    np1 = emb.n_plus_1
                    checked += 1
                    got = carpets.embedded_carpet_h0(emb)
                    want = np1 * (a - 1) * (2 * b - 2 - a * e) // 2 + 1
                    if got != want:
                        mismatches.append((str(s), (a, b), np1, got, want))
                    if extra == 0:
                        checked += 1
                        quartic = (a * a - 1) * ((2 * b - a * e) ** 2 - 4) // 4 + 1
                        if got != quartic:
                            mismatches.append((str(s), (a, b), "complete", got, quartic))
    out.append(_mismatch_claim("embedded-family-linear-form",
                               "embedded carpet h0 matches the linear and quartic closed forms",
                               checked, mismatches))

    mismatches = []
    checked = 0
    for deg in P2_D_RANGE:
        d = p2.divisor(deg)
        for extra in CARPET_EXTRAS:
            emb = EmbeddingData.complete_series(p2, d, extra)
            np1 = emb.n_plus_1
            checked += 1
            got = carpets.embedded_carpet_h0(emb)
            want = np1 * (deg - 1) * (deg - 2) // 2
            if got != want or (got == 0) != (deg <= 2):
                mismatches.append((deg, np1, got, want))
    out.append(_mismatch_claim("embedded-family-plane",
                               "embedded carpet h0 on d-uple planes; zero exactly for d <= 2",
                               checked, mismatches))

    f0 = surfaces.hirzebruch(0)
    rep = carpets.carpet_report(EmbeddingData.complete_series(f0, f0.divisor(1, 1)))
    out.append(_claim("minimal-degree-unique-carpet",
                      "minimal-degree scroll carries a unique embedded carpet",
                      (rep.embedded_h0, rep.minimal_degree_case, rep.exists_embedded),
                      (1, True, True)))
    return out


def hilbert_claims() -> list[Claim]:
    out = []
    p2 = surfaces.projective_plane()
    chi_bad, verdict_bad = [], []
    checked = 0
    for e in CARPET_E_RANGE:
        s = surfaces.hirzebruch(e)
        for a in CARPET_A_RANGE:
            for off in CARPET_B_OFFSETS:
                d = s.divisor(a, a * e + off)
                for extra in CARPET_EXTRAS:
                    emb = EmbeddingData.complete_series(s, d, extra)
                    checked += 1
                    rep = carpets.hilbert_report(emb)
                    np1 = rep.hilbert_ambient_n + 1
                    if rep.chi_normal_carpet != np1 * np1 + 18:
                        chi_bad.append((str(s), d.coeffs, rep.chi_normal_carpet))
                    if rep.smooth != (e <= 2):
                        verdict_bad.append((str(s), d.coeffs, rep.smooth))
    for deg in P2_D_RANGE:
        if deg <= 2:
            continue
        for extra in CARPET_EXTRAS:
            emb = EmbeddingData.complete_series(p2, p2.divisor(deg), extra)
            checked += 1
            rep = carpets.hilbert_report(emb)
            np1 = rep.hilbert_ambient_n + 1
            if rep.chi_normal_carpet != np1 * np1 + 18:
                chi_bad.append(("P2", deg, rep.chi_normal_carpet))
            if not rep.smooth:
                verdict_bad.append(("P2", deg, rep.smooth))
    out.append(_mismatch_claim("hilbert-tangent-chi",
                               "chi of the carpet normal bundle equals (N+1)^2 + 18",
                               checked, chi_bad))
    out.append(_mismatch_claim("hilbert-smooth-verdict",
                               "Hilbert point smooth iff e <= 2 on F_e and always on P^2",
                               checked, verdict_bad))

    f3 = surfaces.hirzebruch(3)
    rep = carpets.hilbert_report(EmbeddingData.complete_series(f3, f3.divisor(2, 8)))
    out.append(_claim("hilbert-obstruction-e3",
                      "on F_3 the chain forces h1 of the carpet normal bundle to 1",
                      (rep.smooth, rep.h1_normal_carpet), (False, (1, 1))))
    return out


def double_cover_claims() -> list[Claim]:
    out = []
    flags, h1s = [], []
    for e in CARPET_E_RANGE:
        rep = carpets.double_cover_k3_check(surfaces.hirzebruch(e))
        flags.append(rep.is_k3_cover)
        if rep.is_k3_cover:
            h1s.append(rep.h1_N_pi)
    out.append(_claim("double-cover-k3", "branched double cover of F_e is K3 iff e <= 2",
                      tuple(flags), tuple(e <= 2 for e in CARPET_E_RANGE)))
    rep = carpets.double_cover_k3_check(surfaces.projective_plane())
    out.append(_claim("double-cover-k3-plane", "sextic double cover of P^2 is K3",
                      rep.is_k3_cover, True))
    h1s.append(rep.h1_N_pi)
    out.append(_claim("cover-deformation-unobstructed",
                      "h1 of the cover normal sheaf is 0 whenever the cover exists",
                      tuple(h1s), (0,) * len(h1s)))
    return out


def _random_divisor(rng: random.Random, s: surfaces.SurfaceModel) -> surfaces.DivisorClass:
    span = ORACLE_AB_SPAN
    if s.is_plane:
        return s.divisor(rng.randint(-span, span))
    return s.divisor(rng.randint(-span, span), rng.randint(-span, span))


def exact_seq_claims() -> list[Claim]:
    out = []
    f_any = surfaces.hirzebruch(4)
    one = CohInterval.exact(0, 1, 0)
    forced = propagate(LesInstance(one, CohInterval.unknown(), one)).b
    out.append(_claim("les-middle-forcing",
                      "two h1 = 1 endpoints force the middle term to (0, 2, 0)",
                      (forced.is_forced_all(), forced.lo), (True, (0, 2, 0))))

    s, (a, b), np1 = surfaces.hirzebruch(2), (2, 5), 12
    adj = line_cohomology.coh(s, s.divisor(a, b) + surfaces.canonical_class(s))
    seq = LesInstance(
        CohInterval.exact(0, 0, 1),
        CohInterval.from_vector(adj.scaled(np1)),
        CohInterval.unknown(),
        label="twisted-ambient-euler",
    )
    res = propagate(seq).c
    out.append(_claim("les-euler-twist-forcing",
                      "twisted Euler sequence forces the restricted ambient tangent twist",
                      (res.is_forced_all(), res.lo),
                      (True, (np1 * adj.h0, 1, 0))))

    f3 = surfaces.hirzebruch(3)
    seq = LesInstance(
        CohInterval.from_vector(line_cohomology.coh(f3, f3.divisor(2, 3))),
        CohInterval.unknown(),
        CohInterval.from_vector(line_cohomology.coh(f3, f3.divisor(0, 2))),
        label="tangent-fibration-F3",
    )
    res = propagate(seq)
    again = propagate(res)
    out.append(_claim("les-honest-interval",
                      "tangent bundle of F_3 stays an interval with chi forced",
                      (res.b.lo, res.b.hi, res.b.chi), ((6, 0, 0), (8, 2, 0), 6)))
    out.append(_claim("les-idempotence", "propagating twice changes nothing",
                      (again.a, again.b, again.c) == (res.a, res.b, res.c), True))

    rng = random.Random(1789)
    cases = 0
    bad = []
    for s in (surfaces.hirzebruch(0), surfaces.hirzebruch(3), surfaces.projective_plane()):
        for _ in range(200):
            cases += 1
            x = line_cohomology.coh(s, _random_divisor(rng, s))
            y = line_cohomology.coh(s, _random_divisor(rng, s))
            total = x + y
            res = propagate(LesInstance(
                CohInterval.from_vector(x), CohInterval.unknown(), CohInterval.from_vector(y)
            ))
            ok = all(
                res.b.lo[i] <= total.as_tuple()[i]
                and (res.b.hi[i] is None or total.as_tuple()[i] <= res.b.hi[i])
                for i in range(3)
            ) and res.b.chi == total.chi
            # No connecting map can be nonzero when the staggered products
            # vanish, so the middle term must then be pinned to the sum.
            if x.h1 * y.h0 == 0 and x.h2 * y.h1 == 0:
                ok = ok and res.b.is_forced_all() and res.b.forced_values() == total.as_tuple()
            if not ok:
                bad.append((str(s), x.as_tuple(), y.as_tuple()))
    out.append(_mismatch_claim("les-split-additivity",
                               "split direct sums: chi forced, sum contained, pinned when unobstructed",
                               cases, bad))
    return out


GROUPS = (
    ("intersection theory", surface_claims),
    ("line-bundle cohomology", cohomology_claims),
    ("oracle agreement", oracle_claims),
    ("carpet families", carpet_claims),
    ("hilbert points", hilbert_claims),
    ("double covers", double_cover_claims),
    ("sequence calculus", exact_seq_claims),
)


def run_all() -> list[Claim]:
    claims: list[Claim] = []
    for name, group in GROUPS:
        try:
            claims.extend(group())
        except Exception as err:  # a corrupted computation must surface as FAIL
            claims.append(
                _claim(
                    f"{name.replace(' ', '-')}-error",
                    f"{name} checks ran to completion",
                    f"{type(err).__name__}: {err}",
                    "completed",
                )
            )
    return claims
