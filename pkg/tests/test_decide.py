from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cleanmat.brute import strongly_clean_bruteforce
from cleanmat.decide import (
    decide_pi_regular,
    decide_ring_strongly_clean,
    decide_strongly_clean,
    jclean_quadratic_criterion,
    monic_polys,
    pi_regular_audit,
    sqrt_one_plus_radical,
    strong_clean_triangular,
    theorem_main_audit,
    triangular_sweep,
)
from cleanmat.errors import BudgetExceeded, NotInRadical, TwoNotUnit
from cleanmat.factor import SRCCertificate, comaximality
from cleanmat.matrices import SquareMatrix, companion, random_with_charpoly
from cleanmat.polys import Poly
from cleanmat.rings import Element, build_ring
from cleanmat.verify import verify_src, verify_strong_clean


def test_decide_companion_negative(zloc):
    Z2 = zloc(2)
    A = companion(Poly.from_ints(Z2, [2, -1, 1]))
    d = decide_strongly_clean(A)
    assert d.verdict == "no" and d.route == "companion_negation"
    assert d.refutation["companion"] is True


def test_decide_paper_example(zloc2_squared):
    R = zloc2_squared
    h = Poly(
        R,
        [
            Element(R, (Fraction(2), Fraction(3))),
            Element(R, (Fraction(3), Fraction(1))),
            R.one,
        ],
    )
    d = decide_strongly_clean(companion(h))
    assert d.verdict == "yes" and d.route == "gSRC"
    assert len(d.factorization.blocks) == 2
    assert not verify_strong_clean(companion(h), d.certificate)


def test_decide_zero_matrix(zmod, zloc):
    for R in (zmod(6), zloc(2)):
        Z = SquareMatrix.zeros(R, 2)
        d = decide_strongly_clean(Z)
        assert d.verdict == "yes"
        assert d.certificate.E == SquareMatrix.identity(R, 2)
        assert d.certificate.U == -SquareMatrix.identity(R, 2)


def test_decide_unknown_for_non_companion_over_zloc(zloc):
    Z2 = zloc(2)
    h = Poly.from_ints(Z2, [2, -1, 1])
    A = random_with_charpoly(h, seed=3)
    assert A != companion(h)
    d = decide_strongly_clean(A)
    assert d.verdict == "unknown"
    assert d.reason


def test_decide_brute_force_fallback_route(zmod, monkeypatch):
    # force the gSRC search to report absence so a finite non-companion
    # matrix exercises the brute-force fallback
    import cleanmat.decide as decide_mod
    from cleanmat.factor import SearchResult

    R = zmod(4)
    A = SquareMatrix.from_ints(R, [[1, 2], [0, 3]])

    def fake_search(h, ring, mode="SRC"):
        return SearchResult("absent", None, {"mode": "SRC", "stalks": []})

    monkeypatch.setattr(decide_mod, "gsrc_search", fake_search)
    d = decide_mod.decide_strongly_clean(A)
    assert d.verdict == "yes" and d.route == "brute_force"
    assert not verify_strong_clean(A, d.certificate)


def test_decide_pi_regular_examples(zmod, zloc):
    R6 = zmod(6)
    C = companion(Poly.from_ints(R6, [2, 3, 1]))
    d = decide_pi_regular(C)
    assert d.verdict == "yes" and d.route == "gSP"
    assert sorted(b.cert.p0.degree for b in d.factorization.blocks) == [0, 1]

    Z2 = zloc(2)
    d = decide_pi_regular(companion(Poly.from_ints(Z2, [2, 3, 1])))
    assert d.verdict == "no"

    N = SquareMatrix.from_ints(zmod(4), [[0, 1], [0, 0]])
    d = decide_pi_regular(N)
    assert d.verdict == "yes"
    blk = d.factorization.blocks[0]
    assert blk.cert.h0 == Poly.one(blk.cert.h0.ring)
    assert blk.cert.p0.degree == 2


def test_pi_regular_implies_strongly_clean_decisions(zmod):
    R = zmod(6)
    rng = random.Random(5)
    for _ in range(10):
        A = SquareMatrix(
            R, [[R.random_element(rng) for _ in range(2)] for _ in range(2)]
        )
        dp = decide_pi_regular(A)
        if dp.verdict == "yes":
            ds = decide_strongly_clean(A)
            assert ds.verdict == "yes"
            # the SP pair re-verifies as an SRC pair per block
            for b in dp.factorization.blocks:
                u, v = comaximality(b.cert.h0, b.cert.p0)
                upgraded = SRCCertificate(b.cert.h0, b.cert.p0, u, v, "SRC")
                assert not verify_src(b.cert.h0 * b.cert.p0, upgraded)


def test_ring_level_decisions(zloc, zmod):
    d = decide_ring_strongly_clean(zloc(2), 2)
    assert d.verdict == "no"
    assert d.refutation["witness_a"].parts[0] == Fraction(2)
    wh = d.refutation["witness_h"]
    assert [c.parts[0] for c in wh.coeffs] == [Fraction(2), Fraction(-1), Fraction(1)]
    for k in (1, 2, 3):
        R = zmod(2**k)
        d = decide_ring_strongly_clean(R, 2, collect_certs=True)
        assert d.verdict == "yes"
        assert d.details["instances"] == (2**k) ** 2
        assert len(d.collected) == d.details["instances"]
    with pytest.raises(BudgetExceeded):
        decide_ring_strongly_clean(zmod(12), 2, budget=10)
    d = decide_ring_strongly_clean(zloc(2), 3)
    assert d.verdict == "unknown"


def test_jclean_criterion(zloc, zmod):
    d = jclean_quadratic_criterion(zloc(2))
    assert d.verdict == "no"
    assert d.refutation["witness_a"].parts[0] == Fraction(2)
    assert "not a rational square" in d.refutation["stalks"][0]["why"]
    assert jclean_quadratic_criterion(zmod(4)).verdict == "yes"
    assert jclean_quadratic_criterion(zmod(7)).verdict == "yes"
    # witness for products: the failing stalk is glued against zeros
    R = build_ring(
        {"type": "product", "factors": [{"type": "zmod", "n": 4}, {"type": "zloc", "p": 2}]}
    )
    d = jclean_quadratic_criterion(R)
    assert d.verdict == "no"
    assert d.refutation["witness_a"].parts == (0, Fraction(2))


def test_jclean_matches_exhaustive_route(zmod, f4_ring, dual_ring):
    for R in (zmod(2), zmod(3), zmod(4), zmod(6), zmod(8), zmod(9), f4_ring, dual_ring):
        crit = jclean_quadratic_criterion(R)
        full = decide_ring_strongly_clean(R, 2)
        assert crit.verdict == full.verdict == "yes"


def test_sqrt_one_plus_radical(zmod, zloc):
    R9 = zmod(9)
    s = sqrt_one_plus_radical(R9.from_int(4))
    assert R9.to_int(s) == 7
    s = sqrt_one_plus_radical(R9.one)
    assert R9.to_int(s) == 1
    with pytest.raises(TwoNotUnit):
        sqrt_one_plus_radical(zmod(4).from_int(3))
    with pytest.raises(NotInRadical):
        sqrt_one_plus_radical(R9.from_int(2))
    Z3 = zloc(3)
    s = sqrt_one_plus_radical(Z3.from_int(4))
    assert s.parts[0] == Fraction(-2)  # (-2)^2 = 4 and -2 - 1 = -3 in rad
    assert sqrt_one_plus_radical(Z3.from_int(7)) is None


def test_triangular_construction_and_sweep(zmod):
    R4 = zmod(4)
    I = SquareMatrix.identity(R4, 2)
    cert = strong_clean_triangular(I)
    assert cert.E == SquareMatrix.zeros(R4, 2) and cert.U == I

    rep = triangular_sweep(R4, 2)
    assert rep.instances == 64 and rep.agreements == 64
    assert rep.routes["diagonal_split"] == 64

    rep = triangular_sweep(zmod(2), 3)
    assert rep.instances == 64 and rep.agreements == 64


def test_theorem_main_audit_small(zmod):
    for n in (4, 6):
        rep = theorem_main_audit(build_ring({"type": "zmod", "n": n}), 2, samples=2)
        assert rep.instances == n * n
        assert rep.agreements == rep.instances
        assert not rep.disagreements


def test_theorem_main_audit_fields(zmod):
    # over a field the Fitting decomposition guarantees success everywhere
    for n in (5, 7):
        rep = theorem_main_audit(build_ring({"type": "zmod", "n": n}), 2, samples=1)
        assert rep.agreements == rep.instances == n * n
        assert rep.routes["gsrc_found"] == n * n


def test_pi_regular_audit_small(zmod):
    rep = pi_regular_audit(zmod(4), 2)
    assert rep.instances == 16 and not rep.disagreements
    assert rep.routes["strongly_clean_implied"] == rep.routes["gsp_found"]


def test_route_consistency_random(zmod):
    rng = random.Random(77)
    for n in (4, 6, 9):
        R = build_ring({"type": "zmod", "n": n})
        for _ in range(8):
            A = SquareMatrix(
                R, [[R.random_element(rng) for _ in range(2)] for _ in range(2)]
            )
            d = decide_strongly_clean(A)
            bf = strongly_clean_bruteforce(A)
            assert (d.verdict == "yes") == (bf is not None)


def test_decision_block_bounds(zmod):
    for R in (zmod(6), zmod(12)):
        for h in monic_polys(R, 2):
            d = decide_strongly_clean(companion(h))
            if d.factorization is not None:
                assert len(d.factorization.blocks) <= 3
            break  # one polynomial per ring keeps this quick; audits cover the rest
