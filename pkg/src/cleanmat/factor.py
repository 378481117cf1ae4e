"""Factorization searches for monic polynomials over rings with local stalks.

Four searches are exposed:

* ``src_search_local`` / ``src_search``: factor h = f0*f1 with f0(0) and
  f1(1) units; with comaximality of the factors as an extra requirement the
  pair is certified by an explicit Bezout identity u*f0 + v*f1 = 1 extracted
  from the Sylvester resultant.
* ``gsrc_search``: the globalized form; one factorization per idempotent
  block, with blocks grouped by deg(f0) so at most deg(h)+1 blocks appear.
* ``sp_search_local`` / ``sp_search`` / ``gsp_search``: factor h = h0*p0
  with h0(0) a unit and p0 congruent to a power of t modulo nilpotents.

Searches over finite stalks are exhaustive.  Over Z_(p) the degree splits
0, 1, n-1, n are decided completely (trivial unit tests plus rational-root
enumeration; Z_(p) is integrally closed, so monic linear factors come from
rational roots); middle splits of degree >= 4 polynomials fall back to a
bounded-height scan and report ``incomplete`` when they find nothing, which
is distinct from a definitive ``absent``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import VerificationFailed
from .matrices import SquareMatrix, det
from .polys import Poly, glue_polys, monic_divide
from .rings import Element, Ring, block_ring
from .stalks import ZLocStalk

BOUNDED_HEIGHT = 3

FOUND = "found"
ABSENT = "absent"
INCOMPLETE = "incomplete"


@dataclass
class SRCCertificate:
    f0: Poly
    f1: Poly
    bezout_u: Poly | None
    bezout_v: Poly | None
    kind: str  # "SR" or "SRC"


@dataclass
class SPCertificate:
    h0: Poly
    p0: Poly


@dataclass
class Block:
    support: tuple[int, ...]
    idempotent: Element
    cert: object  # SRCCertificate or SPCertificate over the block subring


@dataclass
class GSRCCertificate:
    blocks: list[Block]


@dataclass
class GSPCertificate:
    blocks: list[Block]


@dataclass
class SearchResult:
    status: str  # found | absent | incomplete
    certificate: object | None
    transcript: dict

    @property
    def found(self) -> bool:
        return self.status == FOUND


# -- comaximality via the Sylvester resultant -------------------------------------


def comaximality(f0: Poly, f1: Poly):
    """Bezout pair (u, v) with u*f0 + v*f1 = 1, or None if not comaximal.

    The matrix of (u, v) -> u*f0 + v*f1 on monomial bases (deg u < deg f1,
    deg v < deg f0) is square of size deg f0 + deg f1; its determinant is the
    resultant up to sign.  For monic polynomials over a ring whose stalks are
    local, the resultant is a unit exactly when the pair is comaximal, and
    Cramer's rule turns the unit resultant into the Bezout cofactors.
    """
    if not f0.is_monic or not f1.is_monic:
        raise ValueError("comaximality needs monic polynomials")
    f0._check(f1)
    R = f0.ring
    if f0.degree == 0:
        return Poly.one(R), Poly.zero(R)
    if f1.degree == 0:
        return Poly.zero(R), Poly.one(R)
    d0, d1 = f0.degree, f1.degree
    n = d0 + d1
    cols = []
    for j in range(d1):
        cols.append([f0.coeff(r - j) for r in range(n)])
    for j in range(d0):
        cols.append([f1.coeff(r - j) for r in range(n)])
    M = SquareMatrix(R, [[cols[c][r] for c in range(n)] for r in range(n)])
    res = det(M)
    res_inv = R.inv(res)
    if res_inv is None:
        return None
    e0 = [R.one] + [R.zero] * (n - 1)
    w = []
    for i in range(n):
        rows = [
            [e0[r] if c == i else cols[c][r] for c in range(n)] for r in range(n)
        ]
        w.append(det(SquareMatrix(R, rows)) * res_inv)
    u = Poly(R, w[:d1])
    v = Poly(R, w[d1:])
    if (u * f0 + v * f1) != Poly.one(R):
        raise VerificationFailed(["resultant Bezout pair failed its identity check"])
    return u, v


# -- rational roots over Z_(p) ------------------------------------------------------


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(h: Poly) -> list[Fraction]:
    """All roots of a monic h over Z_(p) (they are rational, and p-integral).

    Clears denominators and enumerates a/b with a | const, b | lead of the
    integer polynomial; Z_(p) is integrally closed, so every rational root of
    a monic polynomial over it already lies in Z_(p).
    """
    ring = h.ring
    stalk = ring.stalks[0]
    assert isinstance(stalk, ZLocStalk)
    coeffs = [c.parts[0] for c in h.coeffs]
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // _gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    roots = set()
    # strip powers of t
    v = 0
    while v < len(ints) - 1 and ints[v] == 0:
        v += 1
    if v > 0:
        roots.add(Fraction(0))
    ints = ints[v:]
    if len(ints) > 1:
        const, lead = ints[0], ints[-1]
        for a in _divisors(const):
            for b in _divisors(lead):
                for num in (a, -a):
                    r = Fraction(num, b)
                    if r in roots:
                        continue
                    acc = Fraction(0)
                    for c in reversed(ints):
                        acc = acc * r + c
                    if acc == 0:
                        roots.add(r)
    for r in roots:
        assert r.denominator % stalk.p != 0, "monic root escaped Z_(p)"
    return sorted(roots)


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# -- per-degree outcome profiles ---------------------------------------------------


@dataclass
class DegreeOutcome:
    cert: object | None
    complete: bool
    note: str


def _attempt_pair(h: Poly, f0: Poly, mode: str):
    """Check one monic candidate f0; return an SRCCertificate or None."""
    R = h.ring
    q, _, exact = monic_divide(h, f0)
    if not exact:
        return None
    f1 = q
    if not R.is_unit(f0(R.zero)) or not R.is_unit(f1(R.one)):
        return None
    if mode == "SR":
        return SRCCertificate(f0, f1, None, None, "SR")
    bez = comaximality(f0, f1)
    if bez is None:
        return None
    return SRCCertificate(f0, f1, bez[0], bez[1], "SRC")


def _monic_candidates(R: Ring, d: int):
    """All monic degree-d polynomials with unit constant term, canonical order."""
    if d == 0:
        yield Poly.one(R)
        return
    elems = list(R.elements())
    units = [x for x in elems if R.is_unit(x)]
    for c0 in units:
        for mids in itertools.product(elems, repeat=d - 1):
            yield Poly(R, [c0, *mids, R.one])


def _src_profile_finite(h: Poly, mode: str) -> dict[int, DegreeOutcome]:
    R = h.ring
    n = h.degree
    profile = {}
    for d in range(n + 1):
        cert = None
        for f0 in _monic_candidates(R, d):
            cert = _attempt_pair(h, f0, mode)
            if cert is not None:
                break
        note = "found" if cert else f"exhausted all monic degree-{d} candidates"
        profile[d] = DegreeOutcome(cert, True, note)
    return profile


def _src_profile_zloc(h: Poly, mode: str) -> dict[int, DegreeOutcome]:
    R = h.ring
    n = h.degree
    one = Poly.one(R)
    profile: dict[int, DegreeOutcome] = {}
    roots = rational_roots(h) if n >= 2 else []

    def linear(r: Fraction) -> Poly:
        return Poly(R, [R.from_parts((-r,)), R.one])

    for d in range(n + 1):
        if d == 0:
            cert = _attempt_pair(h, one, mode)
            note = "found" if cert else f"h(1) = {h(R.one)!r} is not a unit"
            profile[d] = DegreeOutcome(cert, True, note)
        elif d == n:
            cert = _attempt_pair(h, h, mode)
            note = "found" if cert else f"h(0) = {h(R.zero)!r} is not a unit"
            profile[d] = DegreeOutcome(cert, True, note)
        elif d in (1, n - 1):
            cert = None
            for r in roots:
                f0 = linear(r) if d == 1 else monic_divide(h, linear(r))[0]
                cert = _attempt_pair(h, f0, mode)
                if cert is not None:
                    break
            note = (
                "found"
                if cert
                else f"all rational roots {[str(r) for r in roots]} fail the unit tests"
            )
            profile[d] = DegreeOutcome(cert, True, note)
        else:
            cert = None
            span = range(-BOUNDED_HEIGHT, BOUNDED_HEIGHT + 1)
            p = R.stalks[0].p
            for c0 in span:
                if c0 % p == 0:
                    continue
                for mids in itertools.product(span, repeat=d - 1):
                    f0 = Poly.from_ints(R, [c0, *mids, 1])
                    cert = _attempt_pair(h, f0, mode)
                    if cert is not None:
                        break
                if cert is not None:
                    break
            note = (
                "found"
                if cert
                else f"bounded search (height {BOUNDED_HEIGHT}) exhausted; not decisive"
            )
            profile[d] = DegreeOutcome(cert, cert is not None, note)
    return profile


def _src_profile(h: Poly, mode: str) -> dict[int, DegreeOutcome]:
    R = h.ring
    if R.num_stalks != 1:
        raise ValueError("profiles run on single-stalk rings")
    if R.is_finite:
        return _src_profile_finite(h, mode)
    return _src_profile_zloc(h, mode)


def _sp_profile(h: Poly) -> dict[int, DegreeOutcome]:
    """SP outcomes per deg(p0); complete for every in-scope stalk."""
    R = h.ring
    n = h.degree
    profile = {}
    if R.is_finite:
        nils = R.nilpotents()
        for d in range(n + 1):
            cert = None
            for low in itertools.product(nils, repeat=d):
                p0 = Poly(R, [*low, R.one]) if d else Poly.one(R)
                q, _, exact = monic_divide(h, p0)
                if exact and R.is_unit(q(R.zero)):
                    cert = SPCertificate(q, p0)
                    break
            note = "found" if cert else f"no nilpotent-tail divisor of degree {d}"
            profile[d] = DegreeOutcome(cert, True, note)
        return profile
    # Z_(p) is a domain: Nil = 0, so p0 must be exactly t^d and only the
    # t-adic valuation of h can work.
    val = 0
    while val <= n and h.coeff(val) == R.zero:
        val += 1
    for d in range(n + 1):
        cert = None
        note = f"p0 = t^{d} does not divide h"
        if d == val:
            h0 = Poly(R, h.coeffs[d:])
            if R.is_unit(h0(R.zero)):
                cert = SPCertificate(h0, Poly.t_power(R, d))
                note = "found"
            else:
                note = f"h0(0) = {h0(R.zero)!r} is not a unit"
        elif d < val:
            note = f"h0(0) would be 0 (valuation of h is {val})"
        profile[d] = DegreeOutcome(cert, True, note)
    return profile


# -- public searches -----------------------------------------------------------------


def _require_monic(h: Poly):
    if not h.is_monic:
        raise ValueError(f"{h!r} is not monic")


def _profile_transcript(R: Ring, profiles, mode: str) -> dict:
    stalks = []
    for i, prof in enumerate(profiles):
        outcomes = {
            str(d): out.note + ("" if out.complete else " [incomplete]")
            for d, out in sorted(prof.items())
        }
        stalks.append({"stalk": R.stalk_ring(i).label(), "degrees": outcomes})
    return {"mode": mode, "stalks": stalks}


def _local_result(profile, transcript) -> SearchResult:
    hits = [(d, out.cert) for d, out in sorted(profile.items()) if out.cert]
    if hits:
        return SearchResult(FOUND, hits[0][1], transcript)
    if all(out.complete for out in profile.values()):
        return SearchResult(ABSENT, None, transcript)
    return SearchResult(INCOMPLETE, None, transcript)


def src_search_local(h: Poly, mode: str = "SRC") -> SearchResult:
    """SR/SRC factorization over a local (single-stalk) ring."""
    _require_monic(h)
    profile = _src_profile(h, mode)
    return _local_result(profile, _profile_transcript(h.ring, [profile], mode))


def sp_search_local(h: Poly) -> SearchResult:
    _require_monic(h)
    profile = _sp_profile(h)
    return _local_result(profile, _profile_transcript(h.ring, [profile], "SP"))


def _stalk_profiles(h: Poly, R: Ring, kind: str, mode: str = "SRC"):
    out = []
    for i in range(R.num_stalks):
        hx = h.restrict(i)
        out.append(_src_profile(hx, mode) if kind == "src" else _sp_profile(hx))
    return out


def src_search(h: Poly, R: Ring, mode: str = "SRC") -> SearchResult:
    """Single-block SR/SRC factorization over R itself.

    A monic factorization over R is exactly a choice, for every stalk, of a
    factorization with one common degree split, glued by CRT; so the search
    combines the per-stalk degree profiles at each uniform degree.
    """
    _require_monic(h)
    profiles = _stalk_profiles(h, R, "src", mode)
    transcript = _profile_transcript(R, profiles, mode)
    n = h.degree
    undecided = False
    for d in range(n + 1):
        outs = [prof[d] for prof in profiles]
        if all(out.cert for out in outs):
            cert = _glue_src_block(
                R, tuple(range(R.num_stalks)), [o.cert for o in outs]
            )
            return SearchResult(FOUND, cert, transcript)
        if any(out.cert is None and out.complete for out in outs):
            continue  # this degree split is definitively impossible at some stalk
        undecided = True
    if undecided:
        return SearchResult(INCOMPLETE, None, transcript)
    return SearchResult(ABSENT, None, transcript)


def sp_search(h: Poly, R: Ring) -> SearchResult:
    """Single-block SP factorization over R, by direct nilpotent-tail enumeration."""
    _require_monic(h)
    n = h.degree
    nils = R.nilpotents()
    attempts = {}
    for d in range(n + 1):
        found = None
        for low in itertools.product(nils, repeat=d):
            p0 = Poly(R, [*low, R.one]) if d else Poly.one(R)
            q, _, exact = monic_divide(h, p0)
            if exact and R.is_unit(q(R.zero)):
                found = SPCertificate(q, p0)
                break
        attempts[str(d)] = "found" if found else "no nilpotent-tail divisor"
        if found:
            return SearchResult(FOUND, found, {"mode": "SP", "degrees": attempts})
    return SearchResult(ABSENT, None, {"mode": "SP", "degrees": attempts})


def block_target(R: Ring, support: tuple[int, ...]) -> Ring:
    # A block covering every stalk is the idempotent 1, whose subring is R itself.
    if support == tuple(range(R.num_stalks)):
        return R
    return block_ring(R, support)


def _glue_src_block(R: Ring, support: tuple[int, ...], certs) -> SRCCertificate:
    B = block_target(R, support)
    f0 = glue_polys(B, [c.f0 for c in certs])
    f1 = glue_polys(B, [c.f1 for c in certs])
    if any(c.bezout_u is None for c in certs):
        return SRCCertificate(f0, f1, None, None, "SR")
    u = glue_polys(B, [c.bezout_u for c in certs])
    v = glue_polys(B, [c.bezout_v for c in certs])
    return SRCCertificate(f0, f1, u, v, "SRC")


def _glue_sp_block(R: Ring, support: tuple[int, ...], certs) -> SPCertificate:
    B = block_target(R, support)
    return SPCertificate(
        glue_polys(B, [c.h0 for c in certs]), glue_polys(B, [c.p0 for c in certs])
    )


def _assemble_global(R: Ring, choices, glue) -> list[Block]:
    """Group per-stalk certificates by factor degree into <= n+1 blocks."""
    groups: dict[int, list[int]] = {}
    for i, (d, _) in enumerate(choices):
        groups.setdefault(d, []).append(i)
    blocks = []
    prim = R.primitive_idempotents()
    for d in sorted(groups):
        support = tuple(groups[d])
        e = R.zero
        for i in support:
            e = e + prim[i]
        certs = [choices[i][1] for i in support]
        blocks.append(Block(support, e, glue(R, support, certs)))
    return blocks


def gsrc_search(h: Poly, R: Ring, mode: str = "SRC") -> SearchResult:
    """Globalized SR(C) factorization: per-stalk searches grouped by degree."""
    _require_monic(h)
    profiles = _stalk_profiles(h, R, "src", mode)
    transcript = _profile_transcript(R, profiles, mode)
    choices = []
    incomplete = False
    for prof in profiles:
        hit = next(((d, o.cert) for d, o in sorted(prof.items()) if o.cert), None)
        if hit is None:
            if all(o.complete for o in prof.values()):
                return SearchResult(ABSENT, None, transcript)
            incomplete = True
        choices.append(hit)
    if incomplete:
        return SearchResult(INCOMPLETE, None, transcript)
    blocks = _assemble_global(R, choices, _glue_src_block)
    assert len(blocks) <= h.degree + 1
    return SearchResult(FOUND, GSRCCertificate(blocks), transcript)


def gsp_search(h: Poly, R: Ring) -> SearchResult:
    """Globalized SP factorization; complete over every in-scope ring."""
    _require_monic(h)
    profiles = _stalk_profiles(h, R, "sp")
    transcript = _profile_transcript(R, profiles, "SP")
    choices = []
    for prof in profiles:
        hit = next(((d, o.cert) for d, o in sorted(prof.items()) if o.cert), None)
        if hit is None:
            return SearchResult(ABSENT, None, transcript)
        choices.append(hit)
    blocks = _assemble_global(R, choices, _glue_sp_block)
    assert len(blocks) <= h.degree + 1
    return SearchResult(FOUND, GSPCertificate(blocks), transcript)
